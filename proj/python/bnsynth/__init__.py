"""Distributed controller synthesis for Boolean networks."""

import json

from . import _bnsynth
from ._bnsynth import (
    BoolFunc,
    Contract,
    Error,
    InputError,
    Network,
    ParseError,
    brute_force,
    centralized_realizable,
    completeness_certificate,
    distribute,
    load_contract,
    load_network,
    parse_expr,
)

__all__ = [
    "BoolFunc", "Contract", "Error", "InputError", "Network", "ParseError",
    "brute_force", "centralized_realizable", "completeness_certificate",
    "distribute", "eps_compile", "load_contract", "load_network", "network",
    "contract", "parse_expr", "synthesize", "verify",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def network(doc):
    """Network from a dict or JSON text."""
    return _bnsynth.network_from_json(_text(doc))


def contract(doc, net):
    """Contract from a dict or JSON text, checked against `net`."""
    return _bnsynth.contract_from_json(_text(doc), net)


def synthesize(net, con):
    """Distributed synthesis. Returns a dict with success, controllers
    (controller-file document), trace and failed_subsystem."""
    out = _bnsynth.synthesize(net, con)
    out["controllers"] = json.loads(out["controllers"])
    out["trace"] = json.loads(out["trace"])
    return out


def verify(net, con, controllers):
    """Exhaustive closed-loop check of a controller-file document."""
    return _bnsynth.verify(net, con, _text(controllers))


def eps_compile(topology, partition=None):
    """Compile a power topology (dict or JSON text) into (network, contract)."""
    return _bnsynth.eps_compile(_text(topology), None if partition is None else _text(partition))
