#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace ptslab {

/// A propositional atom: a named letter or the absurdity constant.
class Atom {
 public:
  /// Throws Error unless `name` matches [a-z][a-zA-Z0-9_]* and is not the
  /// reserved word "bot".
  explicit Atom(std::string name);

  static Atom bottom() { return Atom(); }

  bool is_bottom() const { return name_.empty(); }
  /// Empty for the absurdity constant.
  const std::string& name() const { return name_; }
  std::string to_string() const { return is_bottom() ? "bot" : name_; }

  static bool valid_name(std::string_view name);

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;

 private:
  Atom() = default;
  std::string name_;
};

enum class Connective { Atom, And, Or, Implies };

/// Immutable formula tree over atoms, absurdity, conjunction, disjunction and
/// implication. Negation is sugar for `A -> bot`. Copies share structure.
class Formula {
 public:
  static Formula atom(Atom a);
  static Formula atom(std::string name) { return atom(Atom(std::move(name))); }
  static Formula bottom();
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula impl(Formula l, Formula r);
  static Formula make(Connective c, Formula l, Formula r);

  Connective kind() const;
  bool is_atom() const { return kind() == Connective::Atom; }
  bool is_bottom() const;
  /// True for `A -> bot`.
  bool is_negation() const;

  /// Precondition: is_atom().
  const Atom& as_atom() const;
  /// Precondition: !is_atom().
  const Formula& left() const;
  const Formula& right() const;

  std::size_t size() const;
  /// Atoms have depth 0.
  std::size_t depth() const;
  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  Formula() = default;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Formula negation(const Formula& f);

/// Parses the concrete grammar: lowercase atoms, `bot` / `_|_` / `⊥`,
/// prefix `~`, infix `&`, `|`, `->` (tightest to loosest), `->` right
/// associative. Throws ParseError.
Formula parse_formula(std::string_view text);

/// Canonical text with minimal parentheses; `A -> bot` prints as `~A`.
std::string render_formula(const Formula& f);

std::ostream& operator<<(std::ostream& os, const Formula& f);

std::set<Atom> atoms_of(const Formula& f);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

}  // namespace ptslab
