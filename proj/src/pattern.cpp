#include "ptslab/pattern.hpp"

#include <algorithm>
#include <functional>

#include "formula_grammar.hpp"
#include "ptslab/errors.hpp"
#include "ptslab/sexpr.hpp"

namespace ptslab {

struct FormulaPattern::Node {
  Kind kind = Kind::Meta;
  std::string name;
  Atom atom = Atom::bottom();
  Connective connective = Connective::Atom;
  FormulaPattern left, right;
};

FormulaPattern FormulaPattern::meta(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Meta;
  n->name = std::move(name);
  return FormulaPattern(std::move(n));
}

FormulaPattern FormulaPattern::literal(const Formula& f) {
  if (f.is_atom()) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->atom = f.as_atom();
    return FormulaPattern(std::move(n));
  }
  return binary(f.kind(), literal(f.left()), literal(f.right()));
}

FormulaPattern FormulaPattern::binary(Connective c, FormulaPattern l, FormulaPattern r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->connective = c;
  n->left = std::move(l);
  n->right = std::move(r);
  return FormulaPattern(std::move(n));
}

FormulaPattern::Kind FormulaPattern::kind() const { return node_->kind; }
const std::string& FormulaPattern::meta_name() const { return node_->name; }
const Atom& FormulaPattern::atom() const { return node_->atom; }
Connective FormulaPattern::connective() const { return node_->connective; }
const FormulaPattern& FormulaPattern::left() const { return node_->left; }
const FormulaPattern& FormulaPattern::right() const { return node_->right; }

void FormulaPattern::collect_metas(std::set<std::string>& out) const {
  switch (kind()) {
    case Kind::Meta:
      out.insert(meta_name());
      return;
    case Kind::Atom:
      return;
    case Kind::Binary:
      left().collect_metas(out);
      right().collect_metas(out);
      return;
  }
}

namespace {

struct PatternBuilder {
  using value_type = FormulaPattern;
  static constexpr bool allow_meta = true;
  FormulaPattern atom(const std::string& name) { return FormulaPattern::literal(Formula::atom(Atom(name))); }
  FormulaPattern bottom() { return FormulaPattern::literal(Formula::bottom()); }
  FormulaPattern meta(const std::string& name) { return FormulaPattern::meta(name); }
  FormulaPattern binary(Connective c, FormulaPattern l, FormulaPattern r) {
    return FormulaPattern::binary(c, std::move(l), std::move(r));
  }
};

int precedence(const FormulaPattern& p) {
  if (p.kind() != FormulaPattern::Kind::Binary) return 5;
  if (p.connective() == Connective::Implies && p.right().kind() == FormulaPattern::Kind::Atom &&
      p.right().atom().is_bottom())
    return 4;
  switch (p.connective()) {
    case Connective::And: return 3;
    case Connective::Or: return 2;
    default: return 1;
  }
}

void render(const FormulaPattern& p, int required, std::string& out) {
  int own = precedence(p);
  if (own < required) out += '(';
  if (p.kind() == FormulaPattern::Kind::Meta) {
    out += '?' + p.meta_name();
  } else if (p.kind() == FormulaPattern::Kind::Atom) {
    out += p.atom().to_string();
  } else if (own == 4) {
    out += '~';
    render(p.left(), 4, out);
  } else {
    switch (p.connective()) {
      case Connective::And:
        render(p.left(), 3, out);
        out += " & ";
        render(p.right(), 4, out);
        break;
      case Connective::Or:
        render(p.left(), 2, out);
        out += " | ";
        render(p.right(), 3, out);
        break;
      default:
        render(p.left(), 2, out);
        out += " -> ";
        render(p.right(), 1, out);
        break;
    }
  }
  if (own < required) out += ')';
}

}  // namespace

std::string FormulaPattern::to_string() const {
  std::string out;
  render(*this, 0, out);
  return out;
}

FormulaPattern parse_formula_pattern(std::string_view text) {
  PatternBuilder b;
  detail::FormulaParser<PatternBuilder> p(text, b);
  return p.parse_all();
}

struct StructurePattern::Node {
  Kind kind = Kind::Empty;
  std::optional<FormulaPattern> formula;
  std::optional<int> label;
  std::string tag;
  std::string name;
  std::vector<StructurePattern> premises;
  std::vector<int> discharges;
  std::vector<StructurePattern> replacement;  // 0 or 1 element
};

StructurePattern StructurePattern::assumption(FormulaPattern f, std::optional<int> label) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Assumption;
  n->formula = std::move(f);
  n->label = label;
  return StructurePattern(std::move(n));
}

StructurePattern StructurePattern::empty() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Empty;
  return StructurePattern(std::move(n));
}

StructurePattern StructurePattern::inference(std::string tag, FormulaPattern conclusion,
                                             std::vector<StructurePattern> premises,
                                             std::vector<int> discharges) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inference;
  n->tag = std::move(tag);
  n->formula = std::move(conclusion);
  if (premises.empty()) premises.push_back(empty());
  n->premises = std::move(premises);
  n->discharges = std::move(discharges);
  return StructurePattern(std::move(n));
}

StructurePattern StructurePattern::meta(std::string name, std::optional<FormulaPattern> conclusion) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Meta;
  n->name = std::move(name);
  n->formula = std::move(conclusion);
  return StructurePattern(std::move(n));
}

StructurePattern StructurePattern::plug(std::string name, int label, StructurePattern replacement) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Plug;
  n->name = std::move(name);
  n->label = label;
  n->replacement.push_back(std::move(replacement));
  return StructurePattern(std::move(n));
}

StructurePattern::Kind StructurePattern::kind() const { return node_->kind; }
const FormulaPattern& StructurePattern::formula() const {
  if (!node_->formula) throw Error("pattern node has no formula");
  return *node_->formula;
}
bool StructurePattern::has_formula() const { return node_->formula.has_value(); }
const std::optional<int>& StructurePattern::label() const { return node_->label; }
const std::string& StructurePattern::tag() const { return node_->tag; }
const std::string& StructurePattern::meta_name() const { return node_->name; }
const std::vector<StructurePattern>& StructurePattern::premises() const { return node_->premises; }
const std::vector<int>& StructurePattern::discharges() const { return node_->discharges; }
const StructurePattern& StructurePattern::replacement() const { return node_->replacement.at(0); }

std::string StructurePattern::to_string() const {
  switch (kind()) {
    case Kind::Empty:
      return "(empty)";
    case Kind::Assumption: {
      std::string out = "(assume " + sexpr::quote(formula().to_string());
      if (label()) out += " :label " + std::to_string(*label());
      return out + ")";
    }
    case Kind::Meta:
      if (has_formula()) return "(meta ?" + meta_name() + " " + sexpr::quote(formula().to_string()) + ")";
      return "?" + meta_name();
    case Kind::Plug:
      return "(plug ?" + meta_name() + " " + std::to_string(*label()) + " " + replacement().to_string() + ")";
    case Kind::Inference: {
      std::string out = "(inf " + tag() + " " + sexpr::quote(formula().to_string()) + " (";
      for (std::size_t i = 0; i < premises().size(); ++i) {
        if (i) out += ' ';
        out += premises()[i].to_string();
      }
      out += ')';
      if (!discharges().empty()) {
        out += " :discharge (";
        for (std::size_t i = 0; i < discharges().size(); ++i) {
          if (i) out += ' ';
          out += std::to_string(discharges()[i]);
        }
        out += ')';
      }
      return out + ")";
    }
  }
  return {};
}

namespace {

[[noreturn]] void bad(const sexpr::Value& v, const std::string& what) {
  throw ParseError(what, v.line, v.column);
}

FormulaPattern formula_pattern_of(const sexpr::Value& v) {
  if (!v.is_string()) bad(v, "expected a quoted formula pattern");
  try {
    return parse_formula_pattern(v.text);
  } catch (const ParseError& e) {
    throw ParseError(std::string("in formula: ") + e.what(), v.line, v.column);
  }
}

std::string meta_of(const sexpr::Value& v) {
  if (!v.is_symbol() || v.text.size() < 2 || v.text[0] != '?') bad(v, "expected a ?metavariable");
  return v.text.substr(1);
}

int label_of(const sexpr::Value& v) {
  if (!v.is_integer() || v.integer < 0 || v.integer > 1'000'000'000) bad(v, "expected a label");
  return static_cast<int>(v.integer);
}

}  // namespace

StructurePattern pattern_from_sexpr(const sexpr::Value& v) {
  if (v.is_symbol() && !v.text.empty() && v.text[0] == '?') return StructurePattern::meta(meta_of(v));
  if (!v.is_list() || v.items.empty() || !v.items[0].is_symbol()) bad(v, "expected a structure pattern");
  const auto& it = v.items;
  const std::string& head = it[0].text;
  if (head == "empty") {
    if (it.size() != 1) bad(v, "(empty) takes no arguments");
    return StructurePattern::empty();
  }
  if (head == "meta") {
    if (it.size() != 2 && it.size() != 3) bad(v, "expected (meta ?D) or (meta ?D \"F\")");
    std::optional<FormulaPattern> c;
    if (it.size() == 3) c = formula_pattern_of(it[2]);
    return StructurePattern::meta(meta_of(it[1]), c);
  }
  if (head == "plug") {
    if (it.size() != 4) bad(v, "expected (plug ?D n TEMPLATE)");
    return StructurePattern::plug(meta_of(it[1]), label_of(it[2]), pattern_from_sexpr(it[3]));
  }
  if (head == "assume") {
    if (it.size() != 2 && it.size() != 4) bad(v, "expected (assume \"A\") or (assume \"A\" :label n)");
    std::optional<int> label;
    if (it.size() == 4) {
      if (!it[2].is_symbol(":label")) bad(it[2], "expected :label");
      label = label_of(it[3]);
    }
    return StructurePattern::assumption(formula_pattern_of(it[1]), label);
  }
  if (head == "inf") {
    if (it.size() != 4 && it.size() != 6) bad(v, "expected (inf TAG \"C\" (premises...) [:discharge (n...)])");
    if (!it[1].is_symbol() || it[1].is_keyword()) bad(it[1], "expected an inference tag");
    if (!it[3].is_list()) bad(it[3], "expected a premise list");
    std::vector<StructurePattern> ps;
    for (const auto& p : it[3].items) ps.push_back(pattern_from_sexpr(p));
    std::vector<int> ds;
    if (it.size() == 6) {
      if (!it[4].is_symbol(":discharge")) bad(it[4], "expected :discharge");
      if (!it[5].is_list()) bad(it[5], "expected a label list");
      for (const auto& l : it[5].items) ds.push_back(label_of(l));
    }
    return StructurePattern::inference(it[1].text, formula_pattern_of(it[2]), std::move(ps), std::move(ds));
  }
  bad(it[0], "unknown pattern form '" + head + "'");
}

StructurePattern parse_structure_pattern(std::string_view text) {
  return pattern_from_sexpr(sexpr::read_one(text));
}

bool match_formula(const FormulaPattern& p, const Formula& f, Bindings& b) {
  switch (p.kind()) {
    case FormulaPattern::Kind::Meta: {
      auto [it, inserted] = b.formulas.emplace(p.meta_name(), f);
      return inserted || it->second == f;
    }
    case FormulaPattern::Kind::Atom:
      return f.is_atom() && f.as_atom() == p.atom();
    case FormulaPattern::Kind::Binary:
      return !f.is_atom() && f.kind() == p.connective() && match_formula(p.left(), f.left(), b) &&
             match_formula(p.right(), f.right(), b);
  }
  return false;
}

Formula instantiate_formula(const FormulaPattern& p, const Bindings& b) {
  switch (p.kind()) {
    case FormulaPattern::Kind::Meta: {
      auto it = b.formulas.find(p.meta_name());
      if (it == b.formulas.end()) throw Error("unbound formula metavariable ?" + p.meta_name());
      return it->second;
    }
    case FormulaPattern::Kind::Atom:
      return Formula::atom(p.atom());
    case FormulaPattern::Kind::Binary:
      return Formula::make(p.connective(), instantiate_formula(p.left(), b),
                           instantiate_formula(p.right(), b));
  }
  throw Error("bad formula pattern");
}

namespace {

bool bind_label(int pattern_label, int actual, Bindings& b) {
  auto [it, inserted] = b.labels.emplace(pattern_label, actual);
  return inserted || it->second == actual;
}

}  // namespace

bool match(const StructurePattern& p, const ArgStructure& d, Bindings& b) {
  using K = StructurePattern::Kind;
  switch (p.kind()) {
    case K::Empty:
      return d.is_empty();
    case K::Assumption:
      if (!d.is_assumption() || !match_formula(p.formula(), d.formula(), b)) return false;
      if (p.label().has_value() != d.label().has_value()) return false;
      return !p.label() || bind_label(*p.label(), *d.label(), b);
    case K::Inference: {
      if (!d.is_inference() || d.tag() != p.tag()) return false;
      if (d.premises().size() != p.premises().size() || d.discharges().size() != p.discharges().size())
        return false;
      if (!match_formula(p.formula(), d.formula(), b)) return false;
      for (std::size_t i = 0; i < p.discharges().size(); ++i)
        if (!bind_label(p.discharges()[i], d.discharges()[i], b)) return false;
      for (std::size_t i = 0; i < p.premises().size(); ++i)
        if (!match(p.premises()[i], d.premises()[i], b)) return false;
      return true;
    }
    case K::Meta: {
      if (p.has_formula() && (d.is_empty() || !match_formula(p.formula(), d.formula(), b))) return false;
      auto [it, inserted] = b.structures.emplace(p.meta_name(), d);
      return inserted || structures_equal(it->second, d);
    }
    case K::Plug:
      throw Error("plug is only allowed in templates");
  }
  return false;
}

namespace {

class TemplateBuilder {
 public:
  TemplateBuilder(const Bindings& b, int& next) : b_(b), next_(next) {}

  ArgStructure build(const StructurePattern& t) {
    using K = StructurePattern::Kind;
    switch (t.kind()) {
      case K::Empty:
        return ArgStructure::empty();
      case K::Assumption: {
        std::optional<int> label;
        if (t.label()) label = map_label(*t.label());
        return ArgStructure::assumption(instantiate_formula(t.formula(), b_), label);
      }
      case K::Inference: {
        std::vector<int> ds;
        for (int l : t.discharges()) ds.push_back(map_label(l));
        std::vector<ArgStructure> ps;
        for (const auto& p : t.premises()) ps.push_back(build(p));
        return ArgStructure::inference(t.tag(), instantiate_formula(t.formula(), b_), std::move(ps),
                                       std::move(ds));
      }
      case K::Meta:
        return freshen(bound(t.meta_name()), next_);
      case K::Plug: {
        auto lit = b_.labels.find(*t.label());
        if (lit == b_.labels.end())
          throw Error("plug label " + std::to_string(*t.label()) + " is not bound by the pattern");
        return freshen(plug(bound(t.meta_name()), lit->second, t.replacement()), next_);
      }
    }
    throw Error("bad template");
  }

 private:
  const ArgStructure& bound(const std::string& name) const {
    auto it = b_.structures.find(name);
    if (it == b_.structures.end()) throw Error("unbound structure metavariable ?" + name);
    return it->second;
  }

  int map_label(int l) {
    if (auto it = b_.labels.find(l); it != b_.labels.end()) return it->second;
    auto [it, inserted] = fresh_.emplace(l, next_);
    if (inserted) ++next_;
    return it->second;
  }

  // Leaves of `s` carrying the (free) label `label` become copies of `repl`.
  ArgStructure plug(const ArgStructure& s, int label, const StructurePattern& repl) {
    switch (s.kind()) {
      case NodeKind::Empty:
        return s;
      case NodeKind::Assumption:
        if (s.label() && *s.label() == label) return build(repl);
        return s;
      case NodeKind::Inference: {
        std::vector<ArgStructure> ps;
        for (const auto& p : s.premises()) ps.push_back(plug(p, label, repl));
        return ArgStructure::inference(s.tag(), s.formula(), std::move(ps), s.discharges());
      }
    }
    return s;
  }

  const Bindings& b_;
  int& next_;
  std::map<int, int> fresh_;
};

void collect_vars(const StructurePattern& p, PatternVariables& out, std::map<std::string, int>* meta_count) {
  using K = StructurePattern::Kind;
  switch (p.kind()) {
    case K::Empty:
      return;
    case K::Assumption:
      p.formula().collect_metas(out.formulas);
      return;
    case K::Inference:
      p.formula().collect_metas(out.formulas);
      if (p.tag() == tags::kAtomic) ++out.literal_atomic_nodes;
      for (const auto& c : p.premises()) collect_vars(c, out, meta_count);
      return;
    case K::Meta:
      out.structures.insert(p.meta_name());
      if (p.has_formula()) p.formula().collect_metas(out.formulas);
      if (meta_count) ++(*meta_count)[p.meta_name()];
      return;
    case K::Plug:
      out.structures.insert(p.meta_name());
      collect_vars(p.replacement(), out, meta_count);
      return;
  }
}

}  // namespace

ArgStructure instantiate_template(const StructurePattern& t, const Bindings& b, int& next) {
  TemplateBuilder builder(b, next);
  return builder.build(t);
}

PatternVariables variables_of(const StructurePattern& p) {
  PatternVariables out;
  collect_vars(p, out, nullptr);
  return out;
}

void check_linear(const StructurePattern& p) {
  PatternVariables vars;
  std::map<std::string, int> count;
  collect_vars(p, vars, &count);
  for (const auto& [name, n] : count)
    if (n > 1) throw Error("structure metavariable ?" + name + " occurs more than once in a pattern");
  std::function<void(const StructurePattern&)> no_plug = [&](const StructurePattern& q) {
    if (q.kind() == StructurePattern::Kind::Plug) throw Error("plug is only allowed in templates");
    if (q.kind() == StructurePattern::Kind::Inference)
      for (const auto& c : q.premises()) no_plug(c);
  };
  no_plug(p);
}

namespace {

class AntiUnifier {
 public:
  FormulaPattern formula(const std::vector<Formula>& fs) {
    bool same = std::all_of(fs.begin(), fs.end(), [&](const Formula& f) { return f == fs[0]; });
    if (same) return FormulaPattern::literal(fs[0]);
    bool binary = std::all_of(fs.begin(), fs.end(), [&](const Formula& f) {
      return !f.is_atom() && f.kind() == fs[0].kind();
    });
    if (binary) {
      std::vector<Formula> ls, rs;
      for (const auto& f : fs) {
        ls.push_back(f.left());
        rs.push_back(f.right());
      }
      return FormulaPattern::binary(fs[0].kind(), formula(ls), formula(rs));
    }
    auto [it, inserted] = formula_vars_.emplace(fs, "");
    if (inserted) it->second = "X" + std::to_string(formula_vars_.size());
    return FormulaPattern::meta(it->second);
  }

  StructurePattern structure(const std::vector<ArgStructure>& ss) {
    const ArgStructure& a = ss[0];
    bool shape = std::all_of(ss.begin(), ss.end(), [&](const ArgStructure& s) {
      if (s.kind() != a.kind()) return false;
      if (s.is_assumption()) return s.label().has_value() == a.label().has_value();
      if (s.is_inference())
        return s.tag() == a.tag() && s.premises().size() == a.premises().size() &&
               s.discharges().size() == a.discharges().size();
      return true;
    });
    if (!shape) {
      std::vector<std::string> key;
      for (const auto& s : ss) key.push_back(canonical_key(s));
      auto [it, inserted] = structure_vars_.emplace(key, "");
      if (inserted) it->second = "D" + std::to_string(structure_vars_.size());
      return StructurePattern::meta(it->second);
    }
    auto concls = [&] {
      std::vector<Formula> fs;
      for (const auto& s : ss) fs.push_back(s.formula());
      return fs;
    };
    switch (a.kind()) {
      case NodeKind::Empty:
        return StructurePattern::empty();
      case NodeKind::Assumption: {
        std::optional<int> label;
        if (a.label()) {
          std::vector<int> ls;
          for (const auto& s : ss) ls.push_back(*s.label());
          label = label_var(ls);
        }
        return StructurePattern::assumption(formula(concls()), label);
      }
      case NodeKind::Inference: {
        std::vector<int> ds;
        for (std::size_t i = 0; i < a.discharges().size(); ++i) {
          std::vector<int> ls;
          for (const auto& s : ss) ls.push_back(s.discharges()[i]);
          ds.push_back(label_var(ls));
        }
        std::vector<StructurePattern> ps;
        for (std::size_t i = 0; i < a.premises().size(); ++i) {
          std::vector<ArgStructure> col;
          for (const auto& s : ss) col.push_back(s.premises()[i]);
          ps.push_back(structure(col));
        }
        return StructurePattern::inference(a.tag(), formula(concls()), std::move(ps), std::move(ds));
      }
    }
    throw Error("bad structure");
  }

 private:
  int label_var(const std::vector<int>& ls) {
    auto [it, inserted] = label_vars_.emplace(ls, 0);
    if (inserted) it->second = static_cast<int>(label_vars_.size());
    return it->second;
  }

  std::map<std::vector<Formula>, std::string> formula_vars_;
  std::map<std::vector<std::string>, std::string> structure_vars_;
  std::map<std::vector<int>, int> label_vars_;
};

}  // namespace

Generalization anti_unify(const std::vector<std::pair<ArgStructure, ArgStructure>>& pairs) {
  if (pairs.empty()) throw Error("anti_unify needs at least one pair");
  AntiUnifier au;
  std::vector<ArgStructure> lhs, rhs;
  for (const auto& [l, r] : pairs) {
    lhs.push_back(l);
    rhs.push_back(r);
  }
  StructurePattern p = au.structure(lhs);
  StructurePattern t = au.structure(rhs);
  return {p, t};
}

}  // namespace ptslab
