#pragma once

#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "grlie/error.hpp"

namespace grlie {

/// Parsed Lie expression.
///
///   expr   := ['-'] term (('+' | '-') term)*
///   term   := INT '*' factor | INT | factor
///   factor := IDENT | '[' expr ',' expr ']' | '(' expr ')' | 'P(' expr ')'
///
/// `P(...)` is the p-map and only meaningful in restricted contexts.
struct Expr {
  enum class Kind { Generator, Bracket, Sum, PMap, Integer };

  Kind kind = Kind::Sum;
  std::string name;                                          // Generator
  std::int64_t value = 0;                                    // Integer
  std::vector<std::pair<std::int64_t, std::shared_ptr<const Expr>>> terms;  // Sum
  std::shared_ptr<const Expr> left, right;                   // Bracket; PMap uses left

  bool uses_pmap() const {
    switch (kind) {
      case Kind::PMap: return true;
      case Kind::Bracket: return left->uses_pmap() || right->uses_pmap();
      case Kind::Sum:
        for (auto& [c, t] : terms)
          if (t->uses_pmap()) return true;
        return false;
      default: return false;
    }
  }
};

using ExprPtr = std::shared_ptr<const Expr>;

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    ws();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    ws();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("Lie expression: " + msg + " at position " + std::to_string(i_) + " in \"" + s_ + "\"");
  }

  ExprPtr expr() {
    auto sum = std::make_shared<Expr>();
    sum->kind = Expr::Kind::Sum;
    std::int64_t sign = accept('-') ? -1 : 1;
    for (;;) {
      auto [c, t] = term();
      sum->terms.emplace_back(sign * c, t);
      if (accept('+')) sign = 1;
      else if (accept('-')) sign = -1;
      else break;
    }
    return sum;
  }

  std::pair<std::int64_t, ExprPtr> term() {
    ws();
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      std::int64_t v = std::stoll(s_.substr(i_, j - i_));
      i_ = j;
      if (accept('*')) return {v, factor()};
      auto lit = std::make_shared<Expr>();
      lit->kind = Expr::Kind::Integer;
      lit->value = v;
      return {1, lit};
    }
    return {1, factor()};
  }

  ExprPtr factor() {
    ws();
    if (accept('[')) {
      auto b = std::make_shared<Expr>();
      b->kind = Expr::Kind::Bracket;
      b->left = expr();
      expect(',');
      b->right = expr();
      expect(']');
      return b;
    }
    if (accept('(')) {
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
    if (j == i_) fail("expected generator, bracket or P(...)");
    std::string id = s_.substr(i_, j - i_);
    i_ = j;
    if (id == "P") {
      ws();
      if (i_ < s_.size() && s_[i_] == '(') {
        ++i_;
        auto pm = std::make_shared<Expr>();
        pm->kind = Expr::Kind::PMap;
        pm->left = expr();
        expect(')');
        return pm;
      }
    }
    auto g = std::make_shared<Expr>();
    g->kind = Expr::Kind::Generator;
    g->name = id;
    return g;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline ExprPtr parse_lie_expression(const std::string& text) { return detail::ExprParser(text).parse(); }

}  // namespace grlie
