#include "ptslab/sexpr.hpp"

#include <cctype>
#include <charconv>

#include "ptslab/errors.hpp"

namespace ptslab::sexpr {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  Value read() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    Value v;
    v.line = line_;
    v.column = column_;
    char c = text_[pos_];
    if (c == '(') {
      bump();
      v.kind = Value::Kind::List;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw ParseError("unclosed '('", v.line, v.column);
        if (text_[pos_] == ')') {
          bump();
          return v;
        }
        v.items.push_back(read());
      }
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') {
      bump();
      v.kind = Value::Kind::String;
      for (;;) {
        if (pos_ >= text_.size()) throw ParseError("unterminated string", v.line, v.column);
        char d = text_[pos_];
        bump();
        if (d == '"') return v;
        if (d == '\\') {
          if (pos_ >= text_.size()) throw ParseError("unterminated string", v.line, v.column);
          d = text_[pos_];
          bump();
        }
        v.text += d;
      }
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !delimiter(text_[pos_])) bump();
    v.text = std::string(text_.substr(start, pos_ - start));
    long long n = 0;
    auto [p, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), n);
    if (ec == std::errc() && p == v.text.data() + v.text.size()) {
      v.kind = Value::Kind::Integer;
      v.integer = n;
    } else {
      v.kind = Value::Kind::Symbol;
    }
    return v;
  }

 private:
  static bool delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"' ||
           c == '#';
  }
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else {
        break;
      }
    }
  }
  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++column_;
    }
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, line_, column_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

std::vector<Value> read_all(std::string_view text) {
  Reader r(text);
  std::vector<Value> out;
  while (!r.at_end()) out.push_back(r.read());
  return out;
}

Value read_one(std::string_view text) {
  Reader r(text);
  Value v = r.read();
  if (!r.at_end()) {
    auto rest = read_all(text);
    const Value& extra = rest.size() > 1 ? rest[1] : v;
    throw ParseError("trailing input after datum", extra.line, extra.column);
  }
  return v;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace ptslab::sexpr
