#pragma once

// Recursive-descent parser shared by the function and form literal grammars.
//   expr    := ['-'] term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-' unary | chain
//   chain   := primary ('^' (int | '(' ['-'] int ')' | primary))*
//   primary := int | ident | 'd' '(' ident ')' | '(' expr ')'
// '^' followed by an integer is a power, otherwise it is a wedge product.

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <vector>

#include "algd/errors.hpp"

namespace algd::detail {

struct Token {
  enum Kind { Num, Ident, Sym, End } kind;
  std::string text;
  size_t pos;
};

inline std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Num, s.substr(i, j - i), i});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i), i});
      i = j;
    } else if (std::string("+-*/^()").find(c) != std::string::npos) {
      out.push_back({Token::Sym, std::string(1, c), i});
      ++i;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(i) +
                       " in '" + s + "'");
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

template <class Traits>
class ExprParser {
 public:
  using Value = typename Traits::Value;

  ExprParser(const std::string& text, Traits& traits) : text_(text), toks_(tokenize(text)), t_(traits) {}

  Value parse() {
    Value v = expr();
    if (peek().kind != Token::End) fail("trailing input");
    return v;
  }

 private:
  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool is_sym(const Token& tk, char c) const { return tk.kind == Token::Sym && tk.text[0] == c; }
  bool accept(char c) {
    if (is_sym(peek(), c)) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(peek().pos) + " in '" + text_ + "'");
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (accept('+')) v = t_.add(v, term());
      else if (accept('-')) v = t_.sub(v, term());
      else return v;
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (accept('*')) v = t_.mul(v, unary());
      else if (accept('/')) v = t_.div(v, unary());
      else return v;
    }
  }

  Value unary() {
    if (accept('-')) return t_.neg(unary());
    return chain();
  }

  // integer exponent after '^', if present
  bool exponent(long& k) {
    if (peek().kind == Token::Num) {
      k = to_long(peek().text);
      ++pos_;
      return true;
    }
    if (is_sym(peek(), '(')) {
      size_t save = pos_;
      ++pos_;
      bool neg = accept('-');
      if (peek().kind == Token::Num) {
        k = to_long(peek().text);
        ++pos_;
        if (accept(')')) {
          if (neg) k = -k;
          return true;
        }
      }
      pos_ = save;
    }
    return false;
  }

  long to_long(const std::string& s) const {
    if (s.size() > 6) fail("exponent too large");
    return std::stol(s);
  }

  Value chain() {
    Value v = primary();
    while (accept('^')) {
      long k;
      if (exponent(k)) v = t_.power(v, k);
      else v = t_.wedge(v, primary());
    }
    return v;
  }

  Value primary() {
    const Token& tk = peek();
    if (tk.kind == Token::Num) {
      ++pos_;
      return t_.integer(mpz_class(tk.text));
    }
    if (tk.kind == Token::Ident) {
      if (tk.text == "d" && is_sym(peek(1), '(')) {
        pos_ += 2;
        if (peek().kind != Token::Ident) fail("expected variable inside d(...)");
        std::string name = peek().text;
        ++pos_;
        expect(')');
        return t_.differential(name);
      }
      ++pos_;
      return t_.variable(tk.text);
    }
    if (accept('(')) {
      Value v = expr();
      expect(')');
      return v;
    }
    fail(tk.kind == Token::End ? "unexpected end of input" : "unexpected token '" + tk.text + "'");
  }

  std::string text_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
  Traits& t_;
};

}  // namespace algd::detail
