#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ptslab::sexpr {

/// One datum of the s-expression reader. Symbols include `?X` metavariables
/// and `:keyword` tokens; strings are double-quoted with `\"` and `\\`
/// escapes.
struct Value {
  enum class Kind { Symbol, String, Integer, List };

  Kind kind = Kind::List;
  std::string text;
  long long integer = 0;
  std::vector<Value> items;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is_symbol() const { return kind == Kind::Symbol; }
  bool is_symbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
  bool is_keyword() const { return is_symbol() && !text.empty() && text[0] == ':'; }
  bool is_string() const { return kind == Kind::String; }
  bool is_integer() const { return kind == Kind::Integer; }
  bool is_list() const { return kind == Kind::List; }
};

/// Reads every datum in `text`. `#` starts a comment running to end of line.
/// Throws ParseError.
std::vector<Value> read_all(std::string_view text);

/// Reads exactly one datum.
Value read_one(std::string_view text);

std::string quote(std::string_view s);

}  // namespace ptslab::sexpr
