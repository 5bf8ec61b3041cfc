#pragma once

// Brute-force references used to cross-check the synthesis engine on small
// instances. Nothing here calls into the engine.

#include <cstddef>
#include <optional>
#include <vector>

#include "bnsynth/contract.hpp"
#include "bnsynth/network.hpp"

namespace bnsynth::oracle {

struct Budget {
  /// Upper bound on sum_i |U_i| * 2^|E_i|.
  std::size_t max_total_controller_bits = 24;
};

/// sum_i |U_i| * 2^|E_i|, saturating.
std::size_t controller_bits(const BooleanNetwork& net);

struct VerificationResult {
  bool holds = true;
  std::optional<Valuation> counterexample;  // over the network's external inputs
};

/// Exhaustively checks A -> G of the closed loop. Reports the first failing
/// external valuation in lexicographic order.
VerificationResult verify_closed_loop(const BooleanNetwork& net, const ControllerSet& controllers,
                                      const ContractPair& contract);

/// Enumerates every tuple of local controller tables (lexicographic over the
/// concatenated tables) and returns the first whose closed loop satisfies the
/// contract. Throws BudgetExceeded above budget.
std::optional<ControllerSet> brute_force_distributed(const BooleanNetwork& net, const ContractPair& contract,
                                                     const Budget& budget = {});

/// Maximal bicliques (both sides nonempty) by testing every subset of the
/// smaller side against its common neighbourhood. Sorted.
std::vector<Biclique> enumerate_bicliques_subset(const DistributionGraph& g);

}  // namespace bnsynth::oracle
