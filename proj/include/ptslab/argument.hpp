#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptslab/atomic_base.hpp"
#include "ptslab/formula.hpp"

namespace ptslab {

/// Inference tags with a fixed meaning. Any other tag names an arbitrary
/// inference.
namespace tags {
inline constexpr std::string_view kAndIntro = "andI";
inline constexpr std::string_view kOrIntro1 = "orI1";
inline constexpr std::string_view kOrIntro2 = "orI2";
/// Disjunction introduction without a side index; either disjunct matches.
inline constexpr std::string_view kOrIntro = "orI";
inline constexpr std::string_view kImpIntro = "impI";
inline constexpr std::string_view kOrElim = "orE";
/// Application of a rule of an atomic base.
inline constexpr std::string_view kAtomic = "atomic";
/// The one-inference structure from an assumption to an arbitrary conclusion.
inline constexpr std::string_view kVacuous = "vac";
/// A zero-premise axiom node such as `A | ~A`.
inline constexpr std::string_view kAxiom = "axiom";
}  // namespace tags

enum class NodeKind { Assumption, Empty, Inference };

/// An argument structure: a tree of formula nodes with an assumption
/// discharge. Discharge is encoded by integer labels: an inference node lists
/// the labels it discharges and each discharged assumption leaf carries one
/// of them. Empty nodes only occur as premises of zero-premise inferences.
///
/// Values are immutable and share subtrees.
class ArgStructure {
 public:
  static ArgStructure assumption(Formula f, std::optional<int> label = std::nullopt);
  static ArgStructure empty();
  /// An inference with no premises gets a single empty top node.
  static ArgStructure inference(std::string tag, Formula conclusion,
                                std::vector<ArgStructure> premises = {},
                                std::vector<int> discharges = {});

  NodeKind kind() const;
  bool is_assumption() const { return kind() == NodeKind::Assumption; }
  bool is_empty() const { return kind() == NodeKind::Empty; }
  bool is_inference() const { return kind() == NodeKind::Inference; }

  /// The node formula; throws MalformedStructure on an empty node.
  const Formula& formula() const;
  const std::optional<int>& label() const;
  const std::string& tag() const;
  const std::vector<ArgStructure>& premises() const;
  const std::vector<int>& discharges() const;

  std::size_t size() const;
  /// Exact syntactic identity, labels included.
  friend bool operator==(const ArgStructure& a, const ArgStructure& b);

 private:
  struct Node;
  explicit ArgStructure(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Child indices from the root.
using Position = std::vector<std::size_t>;

struct Analysis {
  Formula conclusion;
  /// Undischarged assumption occurrences, sorted, with multiplicity.
  std::vector<Formula> open_assumptions;
  bool closed = false;
};

/// Checks the discharge discipline: every labelled leaf is discharged by
/// exactly one inference node strictly below it, no node lists a label
/// twice, and the root is not empty. Throws MalformedStructure.
void validate(const ArgStructure& d);

/// Validates, then reports conclusion and open assumptions.
Analysis analyze(const ArgStructure& d);

/// Open assumption occurrences of a possibly detached sub-structure: leaves
/// that are unlabelled or whose label no node inside `d` discharges.
std::vector<Formula> open_assumptions(const ArgStructure& d);
bool is_closed(const ArgStructure& d);
const Formula& conclusion(const ArgStructure& d);

const ArgStructure& subtree_at(const ArgStructure& d, const Position& pos);
/// Positions of all non-empty nodes, children before parents, left to right.
std::vector<Position> postorder_positions(const ArgStructure& d);

/// Drops labels that are not discharged inside `d`, turning them into plain
/// open assumptions.
ArgStructure detach(const ArgStructure& d);

/// Largest label occurring anywhere in `d`, or -1.
int max_label(const ArgStructure& d);

/// Renames every discharge so each binder gets its own label from `next`
/// upward (labels not bound inside `d` are left alone). Advances `next`.
ArgStructure freshen(const ArgStructure& d, int& next);

using InstanceMap = std::map<Formula, ArgStructure>;

/// Replaces every open assumption occurrence B of `d` by a freshly labelled
/// copy of s.at(B). Throws MissingMapping.
ArgStructure instantiate(const ArgStructure& d, const InstanceMap& s);

/// Grafts `replacement` at `pos`. The replacement's open assumptions are
/// re-attached to the discharges in scope at `pos`: each open formula of
/// the replacement must occur open in the target, and all of the target's
/// open occurrences of that formula must share one discharge label (or
/// none). Bound labels of the replacement are renamed fresh.
/// Throws ConclusionMismatch or AssumptionEscape.
ArgStructure substitute(const ArgStructure& d, const Position& pos, const ArgStructure& replacement);

/// Ends with andI, orI1, orI2, orI or impI matching the conclusion's main
/// connective and the premises' conclusions.
bool is_canonical(const ArgStructure& d);

/// Equality up to renaming of discharge labels.
bool structures_equal(const ArgStructure& a, const ArgStructure& b);

/// Representative of the alpha-equivalence class: binders are numbered in
/// preorder, list order within a node.
ArgStructure canonical_labels(const ArgStructure& d);
/// Text of canonical_labels(d); equal keys iff structures_equal.
std::string canonical_key(const ArgStructure& d);

/// The atomic derivation as a structure of `atomic` inferences; assumption
/// leaves stay open.
ArgStructure from_atomic_derivation(const AtomicDerivation& d);

/// Closed, and every inference node is an instance of a rule of `base`:
/// premise conclusions are the rule's premises and zero-premise rules sit on
/// a single empty node. Tags are not consulted.
bool is_base_derivation(const ArgStructure& d, const AtomicBase& base);

/// `(assume "A" :label n)`, `(empty)`,
/// `(inf TAG "C" (PREMISE ...) :discharge (n ...))`.
std::string render_structure(const ArgStructure& d);
/// Same syntax, one node per line, indented.
std::string render_structure_pretty(const ArgStructure& d);
/// Throws ParseError or MalformedStructure.
ArgStructure parse_structure(std::string_view text);

namespace sexpr {
struct Value;
}
ArgStructure structure_from_sexpr(const sexpr::Value& v);

}  // namespace ptslab
