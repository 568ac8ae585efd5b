#pragma once

// Recursive-descent parser for the formula grammar, shared by plain formulas
// and formula patterns (which additionally admit `?Name` metavariables).

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "ptslab/errors.hpp"
#include "ptslab/formula.hpp"

namespace ptslab::detail {

enum class Tok { Ident, Meta, Bot, Tilde, Amp, Bar, Arrow, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class FormulaLexer {
 public:
  FormulaLexer(std::string_view text, bool allow_meta)
      : text_(text), allow_meta_(allow_meta) {}

  Token next() {
    skip_space();
    Token t{Tok::End, "", line_, column_};
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    auto take = [&](std::size_t n, Tok k) {
      t.kind = k;
      t.text = std::string(text_.substr(pos_, n));
      advance(n);
      return t;
    };
    if (starts_with("->")) return take(2, Tok::Arrow);
    if (starts_with("_|_")) return take(3, Tok::Bot);
    if (starts_with("\xE2\x8A\xA5")) return take(3, Tok::Bot);  // ⊥
    switch (c) {
      case '~': return take(1, Tok::Tilde);
      case '&': return take(1, Tok::Amp);
      case '|': return take(1, Tok::Bar);
      case '(': return take(1, Tok::LParen);
      case ')': return take(1, Tok::RParen);
      default: break;
    }
    if (c == '?') {
      if (!allow_meta_) fail("metavariable not allowed here", t);
      std::size_t n = 1;
      while (pos_ + n < text_.size() && ident_char(text_[pos_ + n])) ++n;
      if (n == 1) fail("empty metavariable name", t);
      return take(n, Tok::Meta);
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (pos_ + n < text_.size() && ident_char(text_[pos_ + n])) ++n;
      auto word = text_.substr(pos_, n);
      return take(n, word == "bot" ? Tok::Bot : Tok::Ident);
    }
    fail(std::string("unexpected character '") + c + "'", t);
  }

  [[noreturn]] static void fail(const std::string& what, const Token& at) {
    throw ParseError(what, at.line, at.column);
  }

 private:
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }
  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance(1);
  }
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
        ++column_;
      }
    }
  }

  std::string_view text_;
  bool allow_meta_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// Builder must provide: using value_type; static constexpr bool allow_meta;
// value_type atom(const std::string&), bottom(), meta(const std::string&),
// binary(Connective, value_type, value_type).
template <typename Builder>
class FormulaParser {
 public:
  using V = typename Builder::value_type;

  FormulaParser(std::string_view text, Builder& b) : lex_(text, Builder::allow_meta), b_(b) {
    cur_ = lex_.next();
  }

  V parse_all() {
    V v = implication();
    if (cur_.kind != Tok::End) FormulaLexer::fail("unexpected '" + cur_.text + "'", cur_);
    return v;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  V implication() {
    V l = disjunction();
    if (cur_.kind == Tok::Arrow) {
      advance();
      V r = implication();
      return b_.binary(Connective::Implies, std::move(l), std::move(r));
    }
    return l;
  }
  V disjunction() {
    V l = conjunction();
    while (cur_.kind == Tok::Bar) {
      advance();
      V r = conjunction();
      l = b_.binary(Connective::Or, std::move(l), std::move(r));
    }
    return l;
  }
  V conjunction() {
    V l = unary();
    while (cur_.kind == Tok::Amp) {
      advance();
      V r = unary();
      l = b_.binary(Connective::And, std::move(l), std::move(r));
    }
    return l;
  }
  V unary() {
    if (cur_.kind == Tok::Tilde) {
      advance();
      V inner = unary();
      return b_.binary(Connective::Implies, std::move(inner), b_.bottom());
    }
    return primary();
  }
  V primary() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::Ident:
        advance();
        return b_.atom(t.text);
      case Tok::Bot:
        advance();
        return b_.bottom();
      case Tok::Meta:
        advance();
        return b_.meta(t.text.substr(1));
      case Tok::LParen: {
        advance();
        V v = implication();
        if (cur_.kind != Tok::RParen) FormulaLexer::fail("expected ')'", cur_);
        advance();
        return v;
      }
      case Tok::End:
        FormulaLexer::fail("unexpected end of formula", t);
      default:
        FormulaLexer::fail("unexpected '" + t.text + "'", t);
    }
  }

  FormulaLexer lex_;
  Builder& b_;
  Token cur_;
};

}  // namespace ptslab::detail
