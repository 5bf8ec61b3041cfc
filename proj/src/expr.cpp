// Expression parser (recursive descent) and printer for BoolFunc.
//
//   expr  := iff
//   iff   := impl ("<->" impl)*
//   impl  := or ("->" impl)?          right-associative
//   or    := xor ("|" xor)*
//   xor   := and ("^" and)*
//   and   := unary ("&" unary)*
//   unary := "!" unary | atom
//   atom  := "true" | "false" | IDENT | "(" expr ")"

#include <cctype>

#include "bnsynth/boolfunc.hpp"
#include "bnsynth/errors.hpp"

namespace bnsynth {
namespace {

enum class Tok { Ident, True, False, Not, And, Xor, Or, Arrow, DoubleArrow, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const auto start = pos_;
    if (pos_ >= src_.size()) {
      current_ = {Tok::End, {}, start};
      return;
    }
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      current_ = {k, src_.substr(start, 1), start};
    };
    switch (c) {
      case '!': return single(Tok::Not);
      case '&': return single(Tok::And);
      case '^': return single(Tok::Xor);
      case '|': return single(Tok::Or);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      default: break;
    }
    if (src_.substr(pos_, 2) == "->") {
      pos_ += 2;
      current_ = {Tok::Arrow, src_.substr(start, 2), start};
      return;
    }
    if (src_.substr(pos_, 3) == "<->") {
      pos_ += 3;
      current_ = {Tok::DoubleArrow, src_.substr(start, 3), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      auto word = src_.substr(start, pos_ - start);
      Tok k = word == "true" ? Tok::True : word == "false" ? Tok::False : Tok::Ident;
      current_ = {k, word, start};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_{Tok::End, {}, 0};
};

class Parser {
 public:
  Parser(std::string_view text, const VariableSet& scope) : lex_(text), scope_(scope) {}

  BoolFunc parse() {
    if (lex_.peek().kind == Tok::End) throw ParseError("empty expression", lex_.peek().pos);
    auto f = expr();
    if (lex_.peek().kind != Tok::End)
      throw ParseError("unexpected '" + std::string(lex_.peek().text) + "'", lex_.peek().pos);
    return f.extend(scope_);
  }

 private:
  BoolFunc expr() { return iff_(); }

  BoolFunc iff_() {
    auto f = impl();
    while (lex_.peek().kind == Tok::DoubleArrow) {
      lex_.take();
      f = iff(f, impl());
    }
    return f;
  }

  BoolFunc impl() {
    auto f = or_();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return implies(f, impl());
    }
    return f;
  }

  BoolFunc or_() {
    auto f = xor_();
    while (lex_.peek().kind == Tok::Or) {
      lex_.take();
      f = f | xor_();
    }
    return f;
  }

  BoolFunc xor_() {
    auto f = and_();
    while (lex_.peek().kind == Tok::Xor) {
      lex_.take();
      f = f ^ and_();
    }
    return f;
  }

  BoolFunc and_() {
    auto f = unary();
    while (lex_.peek().kind == Tok::And) {
      lex_.take();
      f = f & unary();
    }
    return f;
  }

  BoolFunc unary() {
    if (lex_.peek().kind == Tok::Not) {
      lex_.take();
      return !unary();
    }
    return atom();
  }

  BoolFunc atom() {
    const Token t = lex_.take();
    switch (t.kind) {
      case Tok::True: return BoolFunc::constant({}, true);
      case Tok::False: return BoolFunc::constant({}, false);
      case Tok::Ident: {
        std::string name(t.text);
        if (!scope_.contains(name)) throw UnknownIdentifier(name);
        return BoolFunc::variable(name);
      }
      case Tok::LParen: {
        auto f = expr();
        if (lex_.peek().kind != Tok::RParen) throw ParseError("expected ')'", lex_.peek().pos);
        lex_.take();
        return f;
      }
      case Tok::End: throw ParseError("unexpected end of expression", t.pos);
      default: throw ParseError("unexpected '" + std::string(t.text) + "'", t.pos);
    }
  }

  Lexer lex_;
  const VariableSet& scope_;
};

// Printer: Shannon expansion over the support, with the usual shortcuts.
struct Printed {
  std::string text;
  bool atomic;
};

std::string operand(const Printed& p) { return p.atomic ? p.text : "(" + p.text + ")"; }

BoolFunc cofactor(const BoolFunc& f, std::size_t var, bool value) {
  const auto& scope = f.scope();
  const auto n = scope.size();
  VariableSet rest;
  for (std::size_t k = 0; k < n; ++k)
    if (k != var) rest.add(scope[k]);
  const auto bit = std::uint64_t{1} << (n - 1 - var);
  const auto low_mask = bit - 1;
  return BoolFunc::from_predicate(rest, [&](std::uint64_t x) {
    const auto full = ((x & ~low_mask) << 1) | (value ? bit : 0) | (x & low_mask);
    return f.eval(full);
  });
}

Printed print(const BoolFunc& f) {
  if (f.is_true()) return {"true", true};
  if (f.is_false()) return {"false", true};
  std::size_t var = 0;
  while (!f.depends_on(var)) ++var;
  const auto& x = f.scope()[var];
  const auto lo = cofactor(f, var, false);
  const auto hi = cofactor(f, var, true);
  if (lo.is_false() && hi.is_true()) return {x, true};
  if (lo.is_true() && hi.is_false()) return {"!" + x, true};
  if (lo.is_false()) return {x + " & " + operand(print(hi)), false};
  if (hi.is_false()) return {"!" + x + " & " + operand(print(lo)), false};
  if (hi.is_true()) return {x + " | " + operand(print(lo)), false};
  if (lo.is_true()) return {"!" + x + " | " + operand(print(hi)), false};
  if (hi == !lo) return {x + " ^ " + operand(print(lo)), false};
  return {"(" + x + " & " + operand(print(hi)) + ") | (!" + x + " & " + operand(print(lo)) + ")",
          false};
}

}  // namespace

BoolFunc parse_expr(std::string_view text, const VariableSet& scope) {
  return Parser(text, scope).parse();
}

std::string to_expr(const BoolFunc& f) { return print(f).text; }

}  // namespace bnsynth
