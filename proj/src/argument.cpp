#include "ptslab/argument.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ptslab/errors.hpp"
#include "ptslab/sexpr.hpp"

namespace ptslab {

struct ArgStructure::Node {
  NodeKind kind = NodeKind::Empty;
  std::optional<Formula> formula;
  std::optional<int> label;
  std::string tag;
  std::vector<ArgStructure> premises;
  std::vector<int> discharges;
  std::size_t size = 1;
};

ArgStructure ArgStructure::assumption(Formula f, std::optional<int> label) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Assumption;
  n->formula = std::move(f);
  n->label = label;
  return ArgStructure(std::move(n));
}

ArgStructure ArgStructure::empty() {
  static const ArgStructure e(std::make_shared<Node>());
  return e;
}

ArgStructure ArgStructure::inference(std::string tag, Formula conclusion,
                                     std::vector<ArgStructure> premises, std::vector<int> discharges) {
  if (tag.empty()) throw MalformedStructure("inference tag may not be empty");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Inference;
  n->tag = std::move(tag);
  n->formula = std::move(conclusion);
  if (premises.empty()) premises.push_back(empty());
  for (const auto& p : premises) n->size += p.size();
  n->premises = std::move(premises);
  n->discharges = std::move(discharges);
  return ArgStructure(std::move(n));
}

NodeKind ArgStructure::kind() const { return node_->kind; }

const Formula& ArgStructure::formula() const {
  if (!node_->formula) throw MalformedStructure("empty node has no formula");
  return *node_->formula;
}
const std::optional<int>& ArgStructure::label() const { return node_->label; }
const std::string& ArgStructure::tag() const { return node_->tag; }
const std::vector<ArgStructure>& ArgStructure::premises() const { return node_->premises; }
const std::vector<int>& ArgStructure::discharges() const { return node_->discharges; }
std::size_t ArgStructure::size() const { return node_->size; }

bool operator==(const ArgStructure& a, const ArgStructure& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.size == y.size && x.formula == y.formula && x.label == y.label &&
         x.tag == y.tag && x.discharges == y.discharges && x.premises == y.premises;
}

namespace {

// Labels discharged by ancestors of the node currently visited.
using Scope = std::vector<int>;

bool in_scope(const Scope& s, int label) { return std::find(s.begin(), s.end(), label) != s.end(); }

void validate_rec(const ArgStructure& d, Scope& scope) {
  switch (d.kind()) {
    case NodeKind::Empty:
      return;
    case NodeKind::Assumption:
      if (d.label() && !in_scope(scope, *d.label()))
        throw MalformedStructure("dangling discharge label " + std::to_string(*d.label()) +
                                 " on assumption " + render_formula(d.formula()));
      return;
    case NodeKind::Inference: {
      const auto& ds = d.discharges();
      std::set<int> seen;
      for (int l : ds) {
        if (!seen.insert(l).second)
          throw MalformedStructure("label " + std::to_string(l) + " listed twice at " + d.tag());
        if (in_scope(scope, l))
          throw MalformedStructure("label " + std::to_string(l) + " discharged by two nodes");
      }
      for (const auto& p : d.premises()) {
        if (p.is_empty() && d.premises().size() != 1)
          throw MalformedStructure("empty node must be the only premise of " + d.tag());
      }
      scope.insert(scope.end(), ds.begin(), ds.end());
      for (const auto& p : d.premises()) validate_rec(p, scope);
      scope.resize(scope.size() - ds.size());
      return;
    }
  }
}

void collect_open(const ArgStructure& d, Scope& scope, std::vector<Formula>& out) {
  switch (d.kind()) {
    case NodeKind::Empty:
      return;
    case NodeKind::Assumption:
      if (!d.label() || !in_scope(scope, *d.label())) out.push_back(d.formula());
      return;
    case NodeKind::Inference: {
      const auto& ds = d.discharges();
      scope.insert(scope.end(), ds.begin(), ds.end());
      for (const auto& p : d.premises()) collect_open(p, scope, out);
      scope.resize(scope.size() - ds.size());
      return;
    }
  }
}

// Rebuilds `d` bottom-up; `leaf` decides what each assumption becomes given
// the scope, `binder` renames discharge lists on the way down.
ArgStructure rebuild(const ArgStructure& d, Scope& scope,
                     const std::function<ArgStructure(const ArgStructure&, const Scope&)>& leaf,
                     const std::function<std::vector<int>(const ArgStructure&)>& binder) {
  switch (d.kind()) {
    case NodeKind::Empty:
      return d;
    case NodeKind::Assumption:
      return leaf(d, scope);
    case NodeKind::Inference: {
      std::vector<int> ds = binder(d);
      const auto& old = d.discharges();
      scope.insert(scope.end(), old.begin(), old.end());
      std::vector<ArgStructure> ps;
      ps.reserve(d.premises().size());
      for (const auto& p : d.premises()) ps.push_back(rebuild(p, scope, leaf, binder));
      scope.resize(scope.size() - old.size());
      return ArgStructure::inference(d.tag(), d.formula(), std::move(ps), std::move(ds));
    }
  }
  return d;
}

// Renames bound labels. Each binder node gets labels from `next` upward; the
// leaves follow their binder. Labels free in `d` stay as they are.
ArgStructure relabel(const ArgStructure& d, int& next) {
  std::vector<std::pair<int, int>> env;  // innermost last
  std::function<ArgStructure(const ArgStructure&)> go = [&](const ArgStructure& n) -> ArgStructure {
    switch (n.kind()) {
      case NodeKind::Empty:
        return n;
      case NodeKind::Assumption: {
        if (!n.label()) return n;
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == *n.label()) return ArgStructure::assumption(n.formula(), it->second);
        return n;
      }
      case NodeKind::Inference: {
        std::vector<int> ds;
        for (int l : n.discharges()) {
          ds.push_back(next);
          env.emplace_back(l, next++);
        }
        std::vector<ArgStructure> ps;
        for (const auto& p : n.premises()) ps.push_back(go(p));
        env.resize(env.size() - n.discharges().size());
        return ArgStructure::inference(n.tag(), n.formula(), std::move(ps), std::move(ds));
      }
    }
    return n;
  };
  return go(d);
}

std::vector<int> free_labels(const ArgStructure& d) {
  std::vector<int> out;
  Scope scope;
  std::function<void(const ArgStructure&)> go = [&](const ArgStructure& n) {
    if (n.is_assumption()) {
      if (n.label() && !in_scope(scope, *n.label())) out.push_back(*n.label());
    } else if (n.is_inference()) {
      const auto& ds = n.discharges();
      scope.insert(scope.end(), ds.begin(), ds.end());
      for (const auto& p : n.premises()) go(p);
      scope.resize(scope.size() - ds.size());
    }
  };
  go(d);
  return out;
}

ArgStructure replace_at(const ArgStructure& d, const Position& pos, std::size_t depth,
                        const ArgStructure& replacement) {
  if (depth == pos.size()) return replacement;
  std::vector<ArgStructure> ps = d.premises();
  ps[pos[depth]] = replace_at(ps[pos[depth]], pos, depth + 1, replacement);
  return ArgStructure::inference(d.tag(), d.formula(), std::move(ps), d.discharges());
}

}  // namespace

void validate(const ArgStructure& d) {
  if (d.is_empty()) throw MalformedStructure("an argument structure cannot be a bare empty node");
  Scope scope;
  validate_rec(d, scope);
}

Analysis analyze(const ArgStructure& d) {
  validate(d);
  Analysis a{d.formula(), open_assumptions(d), false};
  a.closed = a.open_assumptions.empty();
  return a;
}

std::vector<Formula> open_assumptions(const ArgStructure& d) {
  std::vector<Formula> out;
  Scope scope;
  collect_open(d, scope, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_closed(const ArgStructure& d) { return open_assumptions(d).empty(); }

const Formula& conclusion(const ArgStructure& d) { return d.formula(); }

const ArgStructure& subtree_at(const ArgStructure& d, const Position& pos) {
  const ArgStructure* cur = &d;
  for (std::size_t i : pos) {
    if (!cur->is_inference() || i >= cur->premises().size())
      throw MalformedStructure("position out of range");
    cur = &cur->premises()[i];
  }
  return *cur;
}

std::vector<Position> postorder_positions(const ArgStructure& d) {
  std::vector<Position> out;
  Position cur;
  std::function<void(const ArgStructure&)> go = [&](const ArgStructure& n) {
    if (n.is_empty()) return;
    if (n.is_inference()) {
      for (std::size_t i = 0; i < n.premises().size(); ++i) {
        cur.push_back(i);
        go(n.premises()[i]);
        cur.pop_back();
      }
    }
    out.push_back(cur);
  };
  go(d);
  return out;
}

ArgStructure detach(const ArgStructure& d) {
  if (free_labels(d).empty()) return d;
  Scope scope;
  return rebuild(
      d, scope,
      [](const ArgStructure& leaf, const Scope& s) {
        if (leaf.label() && !in_scope(s, *leaf.label())) return ArgStructure::assumption(leaf.formula());
        return leaf;
      },
      [](const ArgStructure& n) { return n.discharges(); });
}

int max_label(const ArgStructure& d) {
  int m = -1;
  std::function<void(const ArgStructure&)> go = [&](const ArgStructure& n) {
    if (n.label()) m = std::max(m, *n.label());
    for (int l : n.discharges()) m = std::max(m, l);
    for (const auto& p : n.premises()) go(p);
  };
  go(d);
  return m;
}

ArgStructure freshen(const ArgStructure& d, int& next) { return relabel(d, next); }

ArgStructure instantiate(const ArgStructure& d, const InstanceMap& s) {
  int next = max_label(d) + 1;
  for (const auto& [f, img] : s) next = std::max(next, max_label(img) + 1);
  Scope scope;
  return rebuild(
      d, scope,
      [&](const ArgStructure& leaf, const Scope& sc) {
        if (leaf.label() && in_scope(sc, *leaf.label())) return leaf;
        auto it = s.find(leaf.formula());
        if (it == s.end())
          throw MissingMapping("no instance for open assumption " + render_formula(leaf.formula()));
        return freshen(it->second, next);
      },
      [](const ArgStructure& n) { return n.discharges(); });
}

ArgStructure substitute(const ArgStructure& d, const Position& pos, const ArgStructure& replacement) {
  const ArgStructure& target = subtree_at(d, pos);
  if (target.is_empty() || replacement.is_empty())
    throw ConclusionMismatch("cannot substitute at or with an empty node");
  if (!(target.formula() == replacement.formula()))
    throw ConclusionMismatch("replacement concludes " + render_formula(replacement.formula()) +
                             " but target concludes " + render_formula(target.formula()));

  // Discharge label of each open formula of the target, relative to `d`.
  std::map<Formula, std::set<std::optional<int>>> attach;
  {
    Scope scope;
    std::function<void(const ArgStructure&)> go = [&](const ArgStructure& n) {
      if (n.is_assumption()) {
        if (!n.label() || !in_scope(scope, *n.label())) attach[n.formula()].insert(n.label());
      } else if (n.is_inference()) {
        const auto& ds = n.discharges();
        scope.insert(scope.end(), ds.begin(), ds.end());
        for (const auto& p : n.premises()) go(p);
        scope.resize(scope.size() - ds.size());
      }
    };
    go(target);
  }

  int next = std::max(max_label(d), max_label(replacement)) + 1;
  ArgStructure fresh = freshen(detach(replacement), next);
  Scope scope;
  ArgStructure grafted = rebuild(
      fresh, scope,
      [&](const ArgStructure& leaf, const Scope& sc) {
        if (leaf.label() && in_scope(sc, *leaf.label())) return leaf;
        auto it = attach.find(leaf.formula());
        if (it == attach.end())
          throw AssumptionEscape("replacement introduces open assumption " +
                                 render_formula(leaf.formula()));
        if (it->second.size() != 1)
          throw AssumptionEscape("open assumption " + render_formula(leaf.formula()) +
                                 " has several discharges in the target");
        return ArgStructure::assumption(leaf.formula(), *it->second.begin());
      },
      [](const ArgStructure& n) { return n.discharges(); });
  return replace_at(d, pos, 0, grafted);
}

namespace {

bool concludes(const ArgStructure& p, const Formula& f) { return !p.is_empty() && p.formula() == f; }

// Every leaf discharged by one of `labels` carries formula `f`.
bool discharged_leaves_are(const ArgStructure& d, const std::vector<int>& labels, const Formula& f) {
  if (d.is_assumption())
    return !d.label() || std::find(labels.begin(), labels.end(), *d.label()) == labels.end() ||
           d.formula() == f;
  for (const auto& p : d.premises())
    if (!discharged_leaves_are(p, labels, f)) return false;
  return true;
}

}  // namespace

bool is_canonical(const ArgStructure& d) {
  if (!d.is_inference()) return false;
  const Formula& c = d.formula();
  const auto& ps = d.premises();
  const std::string& t = d.tag();
  switch (c.kind()) {
    case Connective::Atom:
      return false;
    case Connective::And:
      return t == tags::kAndIntro && ps.size() == 2 && concludes(ps[0], c.left()) &&
             concludes(ps[1], c.right());
    case Connective::Or:
      if (ps.size() != 1) return false;
      if (t == tags::kOrIntro1) return concludes(ps[0], c.left());
      if (t == tags::kOrIntro2) return concludes(ps[0], c.right());
      if (t == tags::kOrIntro) return concludes(ps[0], c.left()) || concludes(ps[0], c.right());
      return false;
    case Connective::Implies:
      return t == tags::kImpIntro && ps.size() == 1 && concludes(ps[0], c.right()) &&
             discharged_leaves_are(ps[0], d.discharges(), c.left());
  }
  return false;
}

ArgStructure canonical_labels(const ArgStructure& d) {
  int next = 0;
  for (int l : free_labels(d)) next = std::max(next, l + 1);
  return relabel(d, next);
}

std::string canonical_key(const ArgStructure& d) { return render_structure(canonical_labels(d)); }

bool structures_equal(const ArgStructure& a, const ArgStructure& b) {
  if (a == b) return true;
  if (a.size() != b.size()) return false;
  return canonical_labels(a) == canonical_labels(b);
}

ArgStructure from_atomic_derivation(const AtomicDerivation& d) {
  Formula f = Formula::atom(d.conclusion);
  if (d.is_assumption()) return ArgStructure::assumption(f);
  std::vector<ArgStructure> ps;
  for (const auto& p : d.premises) ps.push_back(from_atomic_derivation(p));
  return ArgStructure::inference(std::string(tags::kAtomic), f, std::move(ps));
}

bool is_base_derivation(const ArgStructure& d, const AtomicBase& base) {
  if (!d.is_inference() || !d.formula().is_atom() || !d.discharges().empty()) return false;
  std::vector<Atom> premises;
  const auto& ps = d.premises();
  if (!(ps.size() == 1 && ps[0].is_empty())) {
    for (const auto& p : ps) {
      if (!is_base_derivation(p, base)) return false;
      premises.push_back(p.formula().as_atom());
    }
  }
  std::vector<Atom> sorted = premises;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (const Atom& a : sorted)
    if (a.is_bottom()) return false;
  return base.rules().count(AtomicRule(sorted, d.formula().as_atom())) > 0;
}

namespace {

void render_into(const ArgStructure& d, std::string& out, int indent) {
  auto newline = [&](int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(level) * 2, ' ');
  };
  switch (d.kind()) {
    case NodeKind::Empty:
      out += "(empty)";
      return;
    case NodeKind::Assumption:
      out += "(assume " + sexpr::quote(render_formula(d.formula()));
      if (d.label()) out += " :label " + std::to_string(*d.label());
      out += ')';
      return;
    case NodeKind::Inference: {
      out += "(inf " + d.tag() + ' ' + sexpr::quote(render_formula(d.formula())) + " (";
      bool first = true;
      for (const auto& p : d.premises()) {
        if (indent >= 0) {
          newline(indent + 1);
        } else if (!first) {
          out += ' ';
        }
        first = false;
        render_into(p, out, indent >= 0 ? indent + 1 : -1);
      }
      out += ')';
      if (!d.discharges().empty()) {
        out += " :discharge (";
        for (std::size_t i = 0; i < d.discharges().size(); ++i) {
          if (i) out += ' ';
          out += std::to_string(d.discharges()[i]);
        }
        out += ')';
      }
      out += ')';
      return;
    }
  }
}

[[noreturn]] void bad(const sexpr::Value& v, const std::string& what) {
  throw ParseError(what, v.line, v.column);
}

Formula formula_of(const sexpr::Value& v) {
  if (!v.is_string()) bad(v, "expected a quoted formula");
  try {
    return parse_formula(v.text);
  } catch (const ParseError& e) {
    throw ParseError(std::string("in formula: ") + e.what(), v.line, v.column);
  }
}

int label_of(const sexpr::Value& v) {
  if (!v.is_integer() || v.integer < 0 || v.integer > 1'000'000'000) bad(v, "expected a label");
  return static_cast<int>(v.integer);
}

}  // namespace

std::string render_structure(const ArgStructure& d) {
  std::string out;
  render_into(d, out, -1);
  return out;
}

std::string render_structure_pretty(const ArgStructure& d) {
  std::string out;
  render_into(d, out, 0);
  return out;
}

ArgStructure structure_from_sexpr(const sexpr::Value& v) {
  if (!v.is_list() || v.items.empty() || !v.items[0].is_symbol())
    bad(v, "expected (assume ...), (empty) or (inf ...)");
  const auto& it = v.items;
  const std::string& head = it[0].text;
  if (head == "empty") {
    if (it.size() != 1) bad(v, "(empty) takes no arguments");
    return ArgStructure::empty();
  }
  if (head == "assume") {
    if (it.size() != 2 && it.size() != 4) bad(v, "expected (assume \"A\") or (assume \"A\" :label n)");
    std::optional<int> label;
    if (it.size() == 4) {
      if (!it[2].is_symbol(":label")) bad(it[2], "expected :label");
      label = label_of(it[3]);
    }
    return ArgStructure::assumption(formula_of(it[1]), label);
  }
  if (head == "inf") {
    if (it.size() != 4 && it.size() != 6) bad(v, "expected (inf TAG \"C\" (premises...) [:discharge (n...)])");
    if (!it[1].is_symbol() || it[1].is_keyword()) bad(it[1], "expected an inference tag");
    if (!it[3].is_list()) bad(it[3], "expected a premise list");
    std::vector<ArgStructure> ps;
    for (const auto& p : it[3].items) ps.push_back(structure_from_sexpr(p));
    std::vector<int> ds;
    if (it.size() == 6) {
      if (!it[4].is_symbol(":discharge")) bad(it[4], "expected :discharge");
      if (!it[5].is_list()) bad(it[5], "expected a label list");
      for (const auto& l : it[5].items) ds.push_back(label_of(l));
    }
    return ArgStructure::inference(it[1].text, formula_of(it[2]), std::move(ps), std::move(ds));
  }
  bad(it[0], "unknown structure form '" + head + "'");
}

ArgStructure parse_structure(std::string_view text) {
  ArgStructure d = structure_from_sexpr(sexpr::read_one(text));
  validate(d);
  return d;
}

}  // namespace ptslab
