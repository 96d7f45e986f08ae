#pragma once

#include <cctype>
#include <functional>
#include <string>
#include <vector>

#include "swanlab/errors.hpp"

namespace swanlab {

struct Token {
  enum Kind { Number, Ident, Op, End } kind;
  std::string text;
};

// Splits into numbers, identifiers ([A-Za-z_][A-Za-z0-9_]*) and single-char operators.
// When join_wedges is set, "dxI^dxJ" becomes one identifier.
std::vector<Token> tokenize(const std::string& s, bool join_wedges = false);

// Recursive-descent parser for + - * / ^ ( ) over any value type T with
// arithmetic operators, a unary minus and pow(T, int).
template <class T>
class ExprParser {
 public:
  using Leaf = std::function<T(const Token&)>;
  using Pow = std::function<T(const T&, long long)>;

  ExprParser(std::vector<Token> toks, Leaf leaf, Pow pow)
      : toks_(std::move(toks)), leaf_(std::move(leaf)), pow_(std::move(pow)) {}

  T parse() {
    T v = expr();
    if (peek().kind != Token::End) fail("trailing input near '" + peek().text + "'");
    return v;
  }

 private:
  std::vector<Token> toks_;
  size_t i_ = 0;
  Leaf leaf_;
  Pow pow_;

  const Token& peek() const { return toks_[i_]; }
  bool is_op(char c) const { return peek().kind == Token::Op && peek().text[0] == c; }
  [[noreturn]] void fail(const std::string& m) const { throw Error(Errc::parse_error, m); }

  T expr() {
    T v = term();
    while (is_op('+') || is_op('-')) {
      char c = peek().text[0];
      ++i_;
      T r = term();
      v = (c == '+') ? T(v + r) : T(v - r);
    }
    return v;
  }
  T term() {
    T v = unary();
    while (is_op('*') || is_op('/')) {
      char c = peek().text[0];
      ++i_;
      T r = unary();
      v = (c == '*') ? T(v * r) : T(v / r);
    }
    return v;
  }
  T unary() {
    if (is_op('-')) {
      ++i_;
      return -unary();
    }
    if (is_op('+')) {
      ++i_;
      return unary();
    }
    return power();
  }
  T power() {
    T base = atom();
    if (is_op('^')) {
      ++i_;
      bool neg = false;
      if (is_op('-')) {
        neg = true;
        ++i_;
      }
      if (peek().kind != Token::Number) fail("exponent must be an integer");
      long long k = std::stoll(peek().text);
      ++i_;
      return pow_(base, neg ? -k : k);
    }
    return base;
  }
  T atom() {
    const Token& t = peek();
    if (t.kind == Token::Op && t.text[0] == '(') {
      ++i_;
      T v = expr();
      if (!is_op(')')) fail("missing ')'");
      ++i_;
      return v;
    }
    if (t.kind == Token::Number || t.kind == Token::Ident) {
      ++i_;
      return leaf_(t);
    }
    fail(t.kind == Token::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }
};

}  // namespace swanlab
