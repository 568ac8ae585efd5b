#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ptslab/argument.hpp"
#include "ptslab/formula.hpp"

namespace ptslab {

namespace sexpr {
struct Value;
}

/// A formula with `?Name` metavariables.
class FormulaPattern {
 public:
  enum class Kind { Meta, Atom, Binary };

  static FormulaPattern meta(std::string name);
  static FormulaPattern literal(const Formula& f);
  static FormulaPattern binary(Connective c, FormulaPattern l, FormulaPattern r);

  Kind kind() const;
  const std::string& meta_name() const;
  const Atom& atom() const;
  Connective connective() const;
  const FormulaPattern& left() const;
  const FormulaPattern& right() const;

  void collect_metas(std::set<std::string>& out) const;
  std::string to_string() const;

 private:
  struct Node;
  FormulaPattern() = default;
  explicit FormulaPattern(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

FormulaPattern parse_formula_pattern(std::string_view text);

/// A structure schema. Metavariables `?D` stand for whole sub-structures
/// and occur at most once in a pattern. `Plug` only appears in templates:
/// it takes the sub-structure bound to a metavariable and replaces the
/// assumption leaves discharged by a pattern label with copies of another
/// template.
class StructurePattern {
 public:
  enum class Kind { Assumption, Empty, Inference, Meta, Plug };

  static StructurePattern assumption(FormulaPattern f, std::optional<int> label = std::nullopt);
  static StructurePattern empty();
  static StructurePattern inference(std::string tag, FormulaPattern conclusion,
                                    std::vector<StructurePattern> premises, std::vector<int> discharges);
  static StructurePattern meta(std::string name, std::optional<FormulaPattern> conclusion = std::nullopt);
  static StructurePattern plug(std::string name, int label, StructurePattern replacement);

  Kind kind() const;
  const FormulaPattern& formula() const;
  bool has_formula() const;
  const std::optional<int>& label() const;
  const std::string& tag() const;
  const std::string& meta_name() const;
  const std::vector<StructurePattern>& premises() const;
  const std::vector<int>& discharges() const;
  /// Replacement template of a Plug.
  const StructurePattern& replacement() const;

  std::string to_string() const;

 private:
  struct Node;
  StructurePattern() = default;
  explicit StructurePattern(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// `?D`, `(meta ?D "F")`, `(plug ?D n TEMPLATE)`, and the plain structure
/// forms with formula patterns in the quoted positions.
StructurePattern pattern_from_sexpr(const sexpr::Value& v);
StructurePattern parse_structure_pattern(std::string_view text);

struct Bindings {
  std::map<std::string, Formula> formulas;
  std::map<std::string, ArgStructure> structures;
  /// Pattern label -> label in the matched structure.
  std::map<int, int> labels;
};

bool match_formula(const FormulaPattern& p, const Formula& f, Bindings& b);
Formula instantiate_formula(const FormulaPattern& p, const Bindings& b);

bool match(const StructurePattern& p, const ArgStructure& d, Bindings& b);

/// Builds the template under `b`. Template labels not bound by the match get
/// fresh labels from `next`. Throws Error on unbound metavariables.
ArgStructure instantiate_template(const StructurePattern& t, const Bindings& b, int& next);

struct PatternVariables {
  std::set<std::string> formulas;
  std::set<std::string> structures;
  /// Atomic-rule inference nodes occurring literally (outside metavariables).
  std::size_t literal_atomic_nodes = 0;
};
PatternVariables variables_of(const StructurePattern& p);

/// Throws Error unless every structure metavariable occurs at most once.
void check_linear(const StructurePattern& p);

/// Least general generalization of several pattern/template pairs. Formula
/// positions that differ become formula metavariables, differing
/// sub-structures become structure metavariables; identical tuples of
/// differing parts share one variable across both sides.
struct Generalization {
  StructurePattern pattern;
  StructurePattern templ;
};
Generalization anti_unify(const std::vector<std::pair<ArgStructure, ArgStructure>>& pairs);

}  // namespace ptslab
