#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ptslab/argument.hpp"
#include "ptslab/atomic_base.hpp"
#include "ptslab/formula.hpp"
#include "ptslab/justification.hpp"

namespace testing {

using namespace ptslab;

/// PTSLAB_SEED overrides the default so failures can be replayed.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("PTSLAB_SEED")) return std::strtoull(s, nullptr, 10);
  return 20261016;
}

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(seed() * 1000003 + salt); }

inline std::size_t pick(std::mt19937_64& g, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(g);
}

inline bool coin(std::mt19937_64& g, double p = 0.5) { return std::bernoulli_distribution(p)(g); }

inline Formula random_formula(std::mt19937_64& g, const std::vector<Atom>& atoms, int depth, bool with_bottom = true) {
  if (depth == 0 || coin(g, 0.3)) {
    std::size_t n = atoms.size() + (with_bottom ? 1 : 0);
    std::size_t i = pick(g, n);
    return i == atoms.size() ? Formula::bottom() : Formula::atom(atoms[i]);
  }
  static const Connective cs[] = {Connective::And, Connective::Or, Connective::Implies};
  Connective c = cs[pick(g, 3)];
  return Formula::make(c, random_formula(g, atoms, depth - 1, with_bottom), random_formula(g, atoms, depth - 1, with_bottom));
}

inline AtomicBase random_base(std::mt19937_64& g, const std::vector<Atom>& atoms, std::size_t max_rules,
                              bool consistent = true) {
  auto pool = all_rules(atoms);
  while (true) {
    std::set<AtomicRule> rules;
    std::size_t k = pick(g, max_rules + 1);
    for (std::size_t i = 0; i < k; ++i) rules.insert(pool[pick(g, pool.size())]);
    AtomicBase b(rules);
    if (!consistent || is_consistent(b)) return b;
  }
}

/// Naive closure: apply every rule until nothing changes.
inline std::set<Atom> naive_closure(const AtomicBase& b, std::set<Atom> known = {}) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : b.rules()) {
      bool fire = true;
      for (const auto& p : r.premises()) fire = fire && known.count(p);
      if (fire && known.insert(r.conclusion()).second) changed = true;
    }
  }
  return known;
}

/// Truth-table evaluation, bottom false.
inline bool truth(const Formula& f, const std::set<Atom>& true_atoms) {
  switch (f.kind()) {
    case Connective::Atom: return !f.is_bottom() && true_atoms.count(f.as_atom());
    case Connective::And: return truth(f.left(), true_atoms) && truth(f.right(), true_atoms);
    case Connective::Or: return truth(f.left(), true_atoms) || truth(f.right(), true_atoms);
    case Connective::Implies: return !truth(f.left(), true_atoms) || truth(f.right(), true_atoms);
  }
  return false;
}

/// A closed structure for f that is usually not canonical: an axiom node, or
/// an introduction over such parts.
inline ArgStructure closed_for(std::mt19937_64& g, const Formula& f, int depth = 2) {
  if (depth > 0 && !f.is_atom() && coin(g, 0.6)) {
    switch (f.kind()) {
      case Connective::And:
        return ArgStructure::inference("andI", f, {closed_for(g, f.left(), depth - 1), closed_for(g, f.right(), depth - 1)});
      case Connective::Or:
        return ArgStructure::inference("orI1", f, {closed_for(g, f.left(), depth - 1)});
      case Connective::Implies:
        return ArgStructure::inference("impI", f, {closed_for(g, f.right(), depth - 1)});
      default: break;
    }
  }
  return ArgStructure::inference("axiom", f);
}

/// A structure concluding `goal` whose open assumption leaves are drawn from
/// `opens`, plus leaves for `bound` carrying `label`.
inline ArgStructure open_for(std::mt19937_64& g, const Formula& goal, const std::vector<Formula>& opens,
                             std::optional<std::pair<Formula, int>> bound) {
  std::vector<ArgStructure> leaves;
  std::size_t n = pick(g, 3);
  for (std::size_t i = 0; i < n && !opens.empty(); ++i) leaves.push_back(ArgStructure::assumption(opens[pick(g, opens.size())]));
  if (bound) {
    std::size_t m = pick(g, 3);
    for (std::size_t i = 0; i < m; ++i) leaves.push_back(ArgStructure::assumption(bound->first, bound->second));
  }
  if (leaves.empty()) return ArgStructure::inference("axiom", goal);
  if (leaves.size() == 1 && coin(g) && conclusion(leaves[0]) == goal) return leaves[0];
  std::shuffle(leaves.begin(), leaves.end(), g);
  return ArgStructure::inference("rule", goal, leaves);
}

/// A disjunction detour over random formulas with random open side
/// assumptions, and a substitution for all its open assumptions.
struct DetourSample {
  ArgStructure d;
  InstanceMap sigma;
};

inline DetourSample random_detour(std::mt19937_64& g) {
  const std::vector<Atom> atoms = letter_atoms(3);
  Formula a1 = random_formula(g, atoms, 1, false);
  Formula a2 = random_formula(g, atoms, 1, false);
  Formula b = random_formula(g, atoms, 2, false);
  std::vector<Formula> side{random_formula(g, atoms, 1, false), random_formula(g, atoms, 1, false)};
  Formula disj = Formula::disj(a1, a2);
  static const char* intro[] = {"orI1", "orI2", "orI"};
  std::string tag = intro[pick(g, 3)];
  Formula chosen = tag == "orI2" ? a2 : (tag == "orI" && coin(g) ? a2 : a1);
  if (tag == "orI" && chosen == a2 && a1 == a2) chosen = a1;
  ArgStructure d1 = open_for(g, chosen, side, std::nullopt);
  ArgStructure d2 = open_for(g, b, side, std::make_pair(a1, 1));
  ArgStructure d3 = open_for(g, b, side, std::make_pair(a2, 2));
  ArgStructure major = ArgStructure::inference(tag, disj, {d1});
  ArgStructure d = ArgStructure::inference("orE", b, {major, d2, d3}, {1, 2});
  InstanceMap sigma;
  for (const auto& f : open_assumptions(d)) sigma.emplace(f, closed_for(g, f));
  return {d, sigma};
}

/// Random closed structures with detours for the three detour reductions,
/// concluding `f`.
inline ArgStructure random_closed_with_detours(std::mt19937_64& g, const Formula& f, const std::vector<Atom>& atoms,
                                               int depth) {
  if (depth <= 0) return closed_for(g, f, 1);
  // Sub-structures get binder labels of their own, above those used here.
  int next = 10;
  auto sub = [&](const Formula& x) { return freshen(random_closed_with_detours(g, x, atoms, depth - 1), next); };
  switch (pick(g, 6)) {
    case 0: {  // or-detour with vacuous minor premises
      Formula x = random_formula(g, atoms, 1, false);
      Formula y = random_formula(g, atoms, 1, false);
      ArgStructure major = ArgStructure::inference("orI1", Formula::disj(x, y), {sub(x)});
      ArgStructure m1 = coin(g) ? ArgStructure::inference("vac", f, {ArgStructure::assumption(x, 1)})
                                : sub(f);
      ArgStructure m2 = ArgStructure::inference("vac", f, {ArgStructure::assumption(y, 2)});
      return ArgStructure::inference("orE", f, {major, m1, m2}, {1, 2});
    }
    case 1: {
      Formula y = random_formula(g, atoms, 1, false);
      ArgStructure intro = ArgStructure::inference(
          "andI", Formula::conj(f, y),
          {sub(f), sub(y)});
      return ArgStructure::inference("andE1", f, {intro});
    }
    case 2: {
      Formula x = random_formula(g, atoms, 1, false);
      ArgStructure body = coin(g) ? ArgStructure::inference("vac", f, {ArgStructure::assumption(x, 1)})
                                  : sub(f);
      ArgStructure intro = ArgStructure::inference("impI", Formula::impl(x, f), {body}, {1});
      return ArgStructure::inference("impE", f, {intro, sub(x)});
    }
    case 3:
      if (f.kind() == Connective::And)
        return ArgStructure::inference("andI", f, {sub(f.left()),
                                                   sub(f.right())});
      if (f.kind() == Connective::Or)
        return ArgStructure::inference(coin(g) ? "orI1" : "orI2", f,
                                       {sub(coin(g) ? f.left() : f.right())});
      [[fallthrough]];
    default:
      return closed_for(g, f, 1);
  }
}

}  // namespace testing
