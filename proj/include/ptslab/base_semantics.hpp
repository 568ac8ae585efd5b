#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ptslab/atomic_base.hpp"
#include "ptslab/formula.hpp"

namespace ptslab {

/// Base Semantics on a fixed base, non-extension reading. The atomic closure
/// of the base is computed once; formula queries are then structural.
class BaseModel {
 public:
  explicit BaseModel(AtomicBase base);

  const AtomicBase& base() const { return base_; }
  bool derivable(const Atom& a) const { return closure_.count(a) > 0; }

  /// |=_B f with empty context. Atoms (bot included) hold iff derivable.
  bool holds(const Formula& f) const;

  /// Gamma |=_B goal. A nonempty context is read materially: if every member
  /// holds then the goal holds.
  bool entails(const std::vector<Formula>& context, const Formula& goal) const;

 private:
  AtomicBase base_;
  std::set<Atom> closure_;
};

bool models(const AtomicBase& base, const std::vector<Formula>& context, const Formula& goal);

/// Truth assignment for classical evaluation. Atoms missing from the map
/// evaluate to false.
struct Valuation {
  std::map<Atom, bool> values;
  bool operator()(const Atom& a) const {
    auto it = values.find(a);
    return it != values.end() && it->second;
  }
};

bool classical_eval(const Formula& f, const Valuation& v);

/// v(p) = derives(base, {}, p) for each p in `atoms`, v(bot) = false.
Valuation base_valuation(const AtomicBase& base, const std::set<Atom>& atoms);

struct ConsequenceVerdict {
  bool holds = true;
  /// Id of the first failing base in family order.
  std::optional<std::string> counterexample;
};

/// Gamma |=_B goal for every base in `family`.
ConsequenceVerdict logical_consequence(const std::vector<Formula>& context, const Formula& goal,
                                       const std::vector<AtomicBase>& family);

/// |=_B f | ~f.
bool em_valid(const AtomicBase& base, const Formula& f);

/// Experimental monotone reading of the context clause: Gamma |=_B A iff for
/// every C ⊇ B (drawn from all_rules(signature), adding at most
/// `max_extra_rules` rules to the original base), |=_C Gamma implies |=_C A.
/// Not used by any argument-validity check.
struct ExtensionOptions {
  std::vector<Atom> signature;
  std::size_t max_extra_rules = 1;
};

bool models_monotone(const AtomicBase& base, const std::vector<Formula>& context,
                     const Formula& goal, const ExtensionOptions& opts);

}  // namespace ptslab
