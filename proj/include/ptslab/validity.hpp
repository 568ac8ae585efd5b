#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ptslab/argument.hpp"
#include "ptslab/atomic_base.hpp"
#include "ptslab/base_semantics.hpp"
#include "ptslab/justification.hpp"

namespace ptslab {

struct Argument {
  ArgStructure structure;
  StepSource steps;
};

struct Bounds {
  std::size_t max_reduction_steps = 10;
  /// Reducts larger than this are not explored.
  std::size_t max_structure_size = 400;
  /// Reducts explored per reduction search.
  std::size_t max_reducts = 4000;
  /// Nesting of validity checks (canonical sub-structures, instances).
  std::size_t max_depth = 16;
  /// Instances checked per extension in the open clause.
  std::size_t max_instances = 512;
  /// Closed structures offered as values of substitutions, besides the
  /// synthesized ones.
  std::vector<ArgStructure> sigma_pool;
  /// Extensions tried besides the argument's own steps: each is joined to it.
  std::vector<JustificationSet> extension_pool;
  /// Offer the canonical structures built from the base's valuation.
  bool synthesize_sigma = true;
};

/// Re-checkable evidence for an Invalid verdict: the argument that failed
/// and, for the open clause, the substitution and extension that produced it.
struct Witness {
  enum class Kind { Exhausted, Instance };
  Kind kind = Kind::Exhausted;
  ArgStructure structure;
  StepSource steps;
  std::optional<InstanceMap> sigma;
  std::optional<ArgStructure> instance;
  std::string description;
};

struct Verdict {
  enum class Kind { Valid, Invalid, Unknown };
  Kind kind = Kind::Unknown;
  std::string reason;
  std::optional<Witness> witness;
  /// What a Valid verdict is relative to (pools, readings).
  std::vector<std::string> provenance;

  bool is_valid() const { return kind == Kind::Valid; }
  bool is_invalid() const { return kind == Kind::Invalid; }
  bool is_unknown() const { return kind == Kind::Unknown; }
};

std::string to_string(Verdict::Kind k);

/// Validity on a base, bounded. Closed atomic conclusions must reduce to a
/// closed derivation in the base; closed compound ones to a canonical
/// structure whose immediate sub-structures are valid with the same steps;
/// open ones must stay valid under every pool substitution of valid closed
/// structures, for the steps and each pooled extension.
Verdict valid(const Argument& arg, const AtomicBase& base, const Bounds& bounds = {});

/// Re-runs the failing check recorded in an Invalid verdict's witness and
/// confirms it fails again.
bool recheck(const Verdict& v, const AtomicBase& base, const Bounds& bounds = {});

/// A closed canonical structure for `f` built from the base's valuation, or
/// nullopt when f does not hold there. Atoms get their atomic derivations,
/// an implication with a failing antecedent gets the vacuous inference.
std::optional<ArgStructure> synthesize(const BaseModel& model, const Formula& f);

/// The zero-premise structure concluding `f | ~f`.
ArgStructure em_axiom(const Formula& f);
/// The `~f` branch: the axiom rewritten to the negation introduced over the
/// vacuous inference from f to bot.
Justification kappa1(const Formula& f);
/// The `f` branch: the axiom rewritten to the left disjunct introduced over
/// a fixed closed structure for f. The name carries the base id.
Justification kappa2(const Formula& f, const ArgStructure& closed_for_f, const std::string& base_id);

enum class WitnessMode { Functions, Graph };

/// A closed argument for f | ~f valid on `base`. Throws InconsistentBase.
Argument em_witness(const AtomicBase& base, const Formula& f, WitnessMode mode = WitnessMode::Functions);

/// The justification set em_witness would pair with the axiom on `base`.
JustificationSet em_justifications(const AtomicBase& base, const Formula& f);

/// A choice function selecting, per base of the family, the set em_witness
/// uses there.
Justification choice_justification(const Formula& f, const std::vector<AtomicBase>& family);

enum class ConsequenceVariant { Delta, DeltaStar, DeltaSH, DeltaS };
std::string to_string(ConsequenceVariant v);
std::optional<ConsequenceVariant> parse_variant(const std::string& s);

struct ConsequenceOptions {
  Bounds bounds;
  /// Extra argument candidates tried before the built-in constructions.
  std::vector<Argument> candidates;
};

struct ConsequenceReport {
  Verdict verdict;
  /// Per base, in family order: the verdict of the chosen argument there.
  std::vector<std::pair<std::string, Verdict>> per_base;
  /// The argument the verdict is about, when one was fixed up front.
  std::optional<Argument> argument;
};

/// Delta: some argument per base. DeltaStar: one argument for the whole
/// family, built from the union of the per-base justification sets.
/// DeltaSH: the same with the union of the per-base r-systems. DeltaS: as
/// DeltaStar, restricted to sets of schematic justifications.
ConsequenceReport consequence(ConsequenceVariant variant, const std::vector<Formula>& context, const Formula& goal,
                              const std::vector<AtomicBase>& family, const ConsequenceOptions& opts = {});

/// `f` has the shape `X | ~X`.
std::optional<Formula> excluded_middle_instance(const Formula& f);

}  // namespace ptslab
