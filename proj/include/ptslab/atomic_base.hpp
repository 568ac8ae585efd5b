#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ptslab/formula.hpp"

namespace ptslab {

/// A production rule `A1 ... An -> B`. Premises are kept sorted and
/// duplicate-free; none of them is the absurdity constant.
class AtomicRule {
 public:
  AtomicRule(std::vector<Atom> premises, Atom conclusion);

  const std::vector<Atom>& premises() const { return premises_; }
  const Atom& conclusion() const { return conclusion_; }

  /// "p q -> r", "-> p".
  std::string to_string() const;

  friend bool operator==(const AtomicRule&, const AtomicRule&) = default;
  friend auto operator<=>(const AtomicRule&, const AtomicRule&) = default;

 private:
  std::vector<Atom> premises_;
  Atom conclusion_;
};

/// A finite set of production rules with a stable identifier.
class AtomicBase {
 public:
  AtomicBase() = default;
  /// An empty `id` is replaced by the canonical rule listing.
  explicit AtomicBase(std::set<AtomicRule> rules, std::string id = {});

  const std::set<AtomicRule>& rules() const { return rules_; }
  const std::string& id() const { return id_; }
  bool empty() const { return rules_.empty(); }

  /// "{-> p; p -> q}".
  std::string canonical_text() const;
  std::set<Atom> signature() const;

  friend bool operator==(const AtomicBase& a, const AtomicBase& b) { return a.rules_ == b.rules_; }

 private:
  std::set<AtomicRule> rules_;
  std::string id_ = "{}";
};

/// Parses the base file format: one rule per line, `p q -> r`, `-> p` for
/// axioms, `#` comments. Throws ParseError with the offending line.
AtomicBase parse_base(std::string_view text, std::string id = {});

/// A derivation tree in the base. Leaves are assumptions or applications of
/// zero-premise rules.
struct AtomicDerivation {
  Atom conclusion;
  /// Empty for an assumption leaf.
  std::optional<AtomicRule> rule;
  std::vector<AtomicDerivation> premises;

  bool is_assumption() const { return !rule.has_value(); }
  std::size_t size() const;
};

/// Least set containing `assumptions` and closed under the rules of `base`.
std::set<Atom> atomic_closure(const AtomicBase& base, const std::set<Atom>& assumptions);

bool derives(const AtomicBase& base, const std::set<Atom>& assumptions, const Atom& goal);

/// A witness tree for `derives`, or nullopt when the goal is not derivable.
std::optional<AtomicDerivation> atomic_derivation(const AtomicBase& base,
                                                  const std::set<Atom>& assumptions,
                                                  const Atom& goal);

/// Every internal node is an instance of a rule of `base` and every leaf is
/// either in `assumptions` or a zero-premise rule.
bool check_derivation(const AtomicBase& base, const std::set<Atom>& assumptions,
                      const AtomicDerivation& d);

bool is_consistent(const AtomicBase& base);

/// All rules over `atoms`: every premise subset, every conclusion in
/// atoms ∪ {bot}. Sorted.
std::vector<AtomicRule> all_rules(const std::vector<Atom>& atoms);

struct EnumerationOptions {
  std::size_t max_rules = 2;
  bool consistent_only = true;
  /// Upper bound on the number of candidate bases; exceeded -> ResourceError.
  std::size_t cap = 1'000'000;
};

/// Deterministic, duplicate-free enumeration of bases with at most
/// `max_rules` rules over `atoms`: by size, then lexicographically in the
/// rule order of all_rules(). The callback returns false to stop early.
void enumerate_bases(const std::vector<Atom>& atoms, const EnumerationOptions& opts,
                     const std::function<bool(const AtomicBase&)>& visit);

std::vector<AtomicBase> enumerate_bases(const std::vector<Atom>& atoms,
                                        const EnumerationOptions& opts);

/// Number of bases enumerate_bases would visit before consistency filtering.
std::size_t count_bases(std::size_t atom_count, std::size_t max_rules);

/// The first `k` letters a, b, c, ... as atoms.
std::vector<Atom> letter_atoms(std::size_t k);

}  // namespace ptslab
