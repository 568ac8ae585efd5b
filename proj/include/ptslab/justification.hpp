#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptslab/argument.hpp"
#include "ptslab/pattern.hpp"

namespace ptslab {

struct RewriteClause {
  StructurePattern pattern;
  StructurePattern templ;
};

using StructurePair = std::pair<ArgStructure, ArgStructure>;

struct ChoiceEntry;

/// A function on argument structures. Three realizations:
/// a schematic rewrite (clauses tried in order, first match wins), a finite
/// table, and a choice function keyed by structure and base id that selects a
/// justification set rather than a structure.
class Justification {
 public:
  enum class Kind { SchematicRewrite, ConstantMap, ChoiceFunction };

  /// Throws Error if a clause pattern is not linear or a template uses a
  /// metavariable the pattern does not bind.
  static Justification schematic(std::string name, std::vector<RewriteClause> clauses);
  static Justification constant_map(std::string name, std::vector<StructurePair> entries);
  static Justification choice(std::string name, std::vector<ChoiceEntry> entries);

  Kind kind() const;
  const std::string& name() const;
  const std::vector<RewriteClause>& clauses() const;
  const std::vector<StructurePair>& entries() const;
  const std::vector<ChoiceEntry>& choices() const;
  /// Table entry whose key is alpha-equal to `d`.
  const StructurePair* entry_for(const ArgStructure& d) const;
  const ChoiceEntry* choice_for(const ArgStructure& d, const std::string& base_id) const;

  /// Full textual form; equal texts mean equal functions.
  const std::string& text() const;

 private:
  struct Impl;
  explicit Justification(std::shared_ptr<const Impl> p) : impl_(std::move(p)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Finite set of justifications with unique names, kept in name order.
class JustificationSet {
 public:
  JustificationSet() = default;
  /// Throws Error on two different justifications with the same name.
  explicit JustificationSet(std::vector<Justification> members);

  const std::vector<Justification>& members() const { return members_; }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  const Justification* find(std::string_view name) const;

  /// Adds `j`; an identical member of the same name is not duplicated.
  void insert(const Justification& j);
  /// Set union under the same name discipline.
  JustificationSet merged(const JustificationSet& other) const;

 private:
  std::vector<Justification> members_;
};

struct ChoiceEntry {
  ArgStructure key;
  std::string base_id;
  JustificationSet selection;
};

/// A set of reductions: pairs whose second component has the same conclusion
/// and no open assumption formula the first lacks.
class RSystem {
 public:
  RSystem() = default;
  /// Throws ContractViolation on a bad pair; alpha-equal duplicates are
  /// dropped.
  explicit RSystem(std::vector<StructurePair> pairs);

  const std::vector<StructurePair>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }
  RSystem merged(const RSystem& other) const;

 private:
  std::vector<StructurePair> pairs_;
};

/// What drives reduction: a justification set or an r-system.
class StepSource {
 public:
  StepSource() : StepSource(JustificationSet{}) {}
  StepSource(JustificationSet set);
  StepSource(RSystem system);

  bool is_rsystem() const { return system_.has_value(); }
  const JustificationSet& set() const;
  const RSystem& rsystem() const;
  /// Stable digest of the contents, used as a memo key.
  const std::string& fingerprint() const { return fingerprint_; }
  std::string describe() const;

 private:
  std::optional<JustificationSet> set_;
  std::optional<RSystem> system_;
  std::string fingerprint_;
};

/// Checks the output contract: same conclusion, open assumption formulas
/// included in those of `input`. Throws ContractViolation.
void check_contract(const ArgStructure& input, const ArgStructure& output, const std::string& who);

/// j(d), or nullopt outside j's domain. ConstantMap keys are compared up to
/// label renaming. A choice function returns d itself when (d, base_id) is a
/// key; its selection is read with choice_selection.
std::optional<ArgStructure> apply_justification(const Justification& j, const ArgStructure& d,
                                                const std::optional<std::string>& base_id = std::nullopt);

const JustificationSet* choice_selection(const Justification& j, const ArgStructure& d,
                                         const std::string& base_id);

/// Replaces every choice function in the set by the union of its
/// selections for `base_id`.
StepSource resolve_for_base(const StepSource& src, const std::string& base_id);

/// For every sample (d, s): j(d^s) and j(d)^s both exist and agree up to
/// label renaming.
bool check_closure(const Justification& j, const std::vector<std::pair<ArgStructure, InstanceMap>>& samples);

/// One-step reducts in search order: positions children-first and left to
/// right, then justification name order. An r-system rewrites only whole
/// structures. Results are distinct up to label renaming.
std::vector<ArgStructure> one_step(const StepSource& src, const ArgStructure& d);

/// Least number of steps from `from` to a structure alpha-equal to `to`,
/// searching at most `max_steps` steps.
std::optional<std::size_t> reduction_distance(const StepSource& src, const ArgStructure& from,
                                              const ArgStructure& to, std::size_t max_steps);
bool reduces(const StepSource& src, const ArgStructure& from, const ArgStructure& to,
             std::size_t max_steps);

/// {(d, j(d))}. Throws Error if some d is outside the domain.
RSystem graph_of(const Justification& j, const std::vector<ArgStructure>& domain);

/// A schematic rewrite is schematic and a choice function is not. A table is
/// schematic iff the generalization of all its pairs is a rewrite rule whose
/// template introduces no variable the pattern lacks and contains no literal
/// atomic-rule inference.
bool is_schematic(const Justification& j);

/// Rule file: one rule per `name: PATTERN => TEMPLATE`, repeated names adding
/// clauses in order, and `const name: STRUCTURE => STRUCTURE` for table
/// entries. Rules may span lines; `#` starts a comment. Throws ParseError.
JustificationSet parse_rules(std::string_view text);
std::string render_rules(const JustificationSet& set);

/// The disjunction detour reduction: an elimination whose major premise is
/// an introduction is replaced by the matching minor premise with the
/// introduced sub-structure grafted onto its discharged assumptions.
Justification phi_or();
/// Conjunction detour: `andE1`/`andE2` directly below `andI`.
Justification phi_and();
/// Implication detour: `impE` whose major premise is `impI`.
Justification phi_imp();

}  // namespace ptslab
