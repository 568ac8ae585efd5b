#include "ptslab/formula.hpp"

#include <functional>
#include <ostream>

#include "formula_grammar.hpp"
#include "ptslab/errors.hpp"

namespace ptslab {

Atom::Atom(std::string name) : name_(std::move(name)) {
  if (!valid_name(name_)) throw Error("invalid atom name '" + name_ + "'");
}

bool Atom::valid_name(std::string_view name) {
  if (name.empty() || name == "bot") return false;
  if (!std::islower(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

struct Formula::Node {
  Connective kind;
  Atom atom = Atom::bottom();
  Formula left, right;
  std::size_t size = 1;
  std::size_t depth = 0;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula Formula::atom(Atom a) {
  auto n = std::make_shared<Node>();
  n->kind = Connective::Atom;
  n->hash = mix(17, std::hash<std::string>{}(a.name()));
  n->atom = std::move(a);
  return Formula(std::move(n));
}

Formula Formula::bottom() {
  static const Formula bot = atom(Atom::bottom());
  return bot;
}

Formula Formula::make(Connective c, Formula l, Formula r) {
  if (c == Connective::Atom) throw Error("Formula::make: atom is not a binary connective");
  auto n = std::make_shared<Node>();
  n->kind = c;
  n->size = 1 + l.size() + r.size();
  n->depth = 1 + std::max(l.depth(), r.depth());
  n->hash = mix(mix(static_cast<std::size_t>(c) * 31 + 7, l.hash()), r.hash());
  n->left = std::move(l);
  n->right = std::move(r);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula l, Formula r) { return make(Connective::And, std::move(l), std::move(r)); }
Formula Formula::disj(Formula l, Formula r) { return make(Connective::Or, std::move(l), std::move(r)); }
Formula Formula::impl(Formula l, Formula r) {
  return make(Connective::Implies, std::move(l), std::move(r));
}

Connective Formula::kind() const { return node_->kind; }
bool Formula::is_bottom() const { return is_atom() && node_->atom.is_bottom(); }
bool Formula::is_negation() const { return kind() == Connective::Implies && right().is_bottom(); }
const Atom& Formula::as_atom() const { return node_->atom; }

const Formula& Formula::left() const { return node_->left; }
const Formula& Formula::right() const { return node_->right; }

std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::depth() const { return node_->depth; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  if (a.is_atom()) return a.as_atom() == b.as_atom();
  return a.left() == b.left() && a.right() == b.right();
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.is_atom()) return a.as_atom() <=> b.as_atom();
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  return a.right() <=> b.right();
}

Formula negation(const Formula& f) { return Formula::impl(f, Formula::bottom()); }

namespace {

struct FormulaBuilder {
  using value_type = Formula;
  static constexpr bool allow_meta = false;
  Formula atom(const std::string& name) { return Formula::atom(Atom(name)); }
  Formula bottom() { return Formula::bottom(); }
  Formula meta(const std::string&) { throw Error("metavariable in plain formula"); }
  Formula binary(Connective c, Formula l, Formula r) { return Formula::make(c, std::move(l), std::move(r)); }
};

// Binding strength used by the printer; higher binds tighter.
int precedence(const Formula& f) {
  if (f.is_atom()) return 5;
  if (f.is_negation()) return 4;
  switch (f.kind()) {
    case Connective::And: return 3;
    case Connective::Or: return 2;
    default: return 1;
  }
}

void render(const Formula& f, int required, std::string& out) {
  int own = precedence(f);
  bool parens = own < required;
  if (parens) out += '(';
  if (f.is_atom()) {
    out += f.as_atom().to_string();
  } else if (f.is_negation()) {
    out += '~';
    render(f.left(), 4, out);
  } else {
    switch (f.kind()) {
      case Connective::And:
        render(f.left(), 3, out);
        out += " & ";
        render(f.right(), 4, out);
        break;
      case Connective::Or:
        render(f.left(), 2, out);
        out += " | ";
        render(f.right(), 3, out);
        break;
      default:
        render(f.left(), 2, out);
        out += " -> ";
        render(f.right(), 1, out);
        break;
    }
  }
  if (parens) out += ')';
}

void collect_atoms(const Formula& f, std::set<Atom>& out) {
  if (f.is_atom()) {
    out.insert(f.as_atom());
    return;
  }
  collect_atoms(f.left(), out);
  collect_atoms(f.right(), out);
}

}  // namespace

Formula parse_formula(std::string_view text) {
  FormulaBuilder b;
  detail::FormulaParser<FormulaBuilder> p(text, b);
  return p.parse_all();
}

std::string render_formula(const Formula& f) {
  std::string out;
  render(f, 0, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << render_formula(f); }

std::set<Atom> atoms_of(const Formula& f) {
  std::set<Atom> out;
  collect_atoms(f, out);
  return out;
}

}  // namespace ptslab
