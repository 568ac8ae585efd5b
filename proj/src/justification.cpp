#include "ptslab/justification.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ptslab/errors.hpp"
#include "ptslab/sexpr.hpp"

namespace ptslab {

struct Justification::Impl {
  Kind kind = Kind::SchematicRewrite;
  std::string name;
  std::vector<RewriteClause> clauses;
  std::vector<StructurePair> entries;
  std::vector<ChoiceEntry> choices;
  std::unordered_map<std::string, std::size_t> index;  // canonical key -> entry
  std::string text;
};

namespace {

std::string structure_text(const ArgStructure& d) { return render_structure(canonical_labels(d)); }

std::string selection_text(const JustificationSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.members().size(); ++i) {
    if (i) out += ", ";
    out += s.members()[i].name();
  }
  return out + "}";
}

void check_name(const std::string& name) {
  static const std::regex ok("[A-Za-z_][A-Za-z0-9_\\-]*(@.*)?");
  if (!std::regex_match(name, ok)) throw Error("bad justification name '" + name + "'");
}

}  // namespace

Justification Justification::schematic(std::string name, std::vector<RewriteClause> clauses) {
  check_name(name);
  auto p = std::make_shared<Impl>();
  p->kind = Kind::SchematicRewrite;
  for (const auto& c : clauses) {
    check_linear(c.pattern);
    auto pv = variables_of(c.pattern);
    auto tv = variables_of(c.templ);
    for (const auto& s : tv.structures)
      if (!pv.structures.count(s)) throw Error(name + ": template uses unbound ?" + s);
    for (const auto& f : tv.formulas)
      if (!pv.formulas.count(f)) throw Error(name + ": template uses unbound ?" + f);
    p->text += name + ": " + c.pattern.to_string() + " => " + c.templ.to_string() + "\n";
  }
  p->name = std::move(name);
  p->clauses = std::move(clauses);
  return Justification(std::move(p));
}

Justification Justification::constant_map(std::string name, std::vector<StructurePair> entries) {
  check_name(name);
  auto p = std::make_shared<Impl>();
  p->kind = Kind::ConstantMap;
  std::vector<StructurePair> kept;
  for (const auto& [from, to] : entries) {
    validate(from);
    validate(to);
    std::string key = canonical_key(from);
    auto it = p->index.find(key);
    if (it != p->index.end()) {
      if (!structures_equal(kept[it->second].second, to))
        throw Error(name + ": two different values for " + structure_text(from));
      continue;
    }
    p->index.emplace(key, kept.size());
    kept.push_back({from, to});
  }
  std::vector<std::pair<std::string, std::string>> lines;
  for (const auto& [from, to] : kept) lines.push_back({structure_text(from), structure_text(to)});
  std::sort(lines.begin(), lines.end());
  for (const auto& [a, b] : lines) p->text += "const " + name + ": " + a + " => " + b + "\n";
  p->name = std::move(name);
  p->entries = std::move(kept);
  return Justification(std::move(p));
}

Justification Justification::choice(std::string name, std::vector<ChoiceEntry> entries) {
  check_name(name);
  auto p = std::make_shared<Impl>();
  p->kind = Kind::ChoiceFunction;
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    validate(entries[i].key);
    std::string key = canonical_key(entries[i].key) + "\n" + entries[i].base_id;
    if (!p->index.emplace(key, i).second)
      throw Error(name + ": duplicate choice for base " + entries[i].base_id);
    std::string line = "choice " + name + ": " + structure_text(entries[i].key) + " @ " +
                       sexpr::quote(entries[i].base_id) + " => " + selection_text(entries[i].selection) + "\n";
    for (const auto& m : entries[i].selection.members()) line += "  " + m.text();
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) p->text += l;
  p->name = std::move(name);
  p->choices = std::move(entries);
  return Justification(std::move(p));
}

Justification::Kind Justification::kind() const { return impl_->kind; }
const std::string& Justification::name() const { return impl_->name; }
const std::vector<RewriteClause>& Justification::clauses() const { return impl_->clauses; }
const std::vector<StructurePair>& Justification::entries() const { return impl_->entries; }
const std::vector<ChoiceEntry>& Justification::choices() const { return impl_->choices; }
const std::string& Justification::text() const { return impl_->text; }

const StructurePair* Justification::entry_for(const ArgStructure& d) const {
  if (kind() != Kind::ConstantMap || d.is_empty()) return nullptr;
  auto it = impl_->index.find(canonical_key(d));
  return it == impl_->index.end() ? nullptr : &impl_->entries[it->second];
}

const ChoiceEntry* Justification::choice_for(const ArgStructure& d, const std::string& base_id) const {
  if (kind() != Kind::ChoiceFunction || d.is_empty()) return nullptr;
  auto it = impl_->index.find(canonical_key(d) + "\n" + base_id);
  return it == impl_->index.end() ? nullptr : &impl_->choices[it->second];
}

JustificationSet::JustificationSet(std::vector<Justification> members) {
  for (const auto& j : members) insert(j);
}

const Justification* JustificationSet::find(std::string_view name) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), name,
                             [](const Justification& j, std::string_view n) { return j.name() < n; });
  if (it == members_.end() || it->name() != name) return nullptr;
  return &*it;
}

void JustificationSet::insert(const Justification& j) {
  auto it = std::lower_bound(members_.begin(), members_.end(), j.name(),
                             [](const Justification& m, const std::string& n) { return m.name() < n; });
  if (it != members_.end() && it->name() == j.name()) {
    if (it->text() != j.text()) throw Error("two different justifications named " + j.name());
    return;
  }
  members_.insert(it, j);
}

JustificationSet JustificationSet::merged(const JustificationSet& other) const {
  JustificationSet out = *this;
  for (const auto& j : other.members()) out.insert(j);
  return out;
}

namespace {

std::set<Formula> open_set(const ArgStructure& d) {
  auto v = open_assumptions(d);
  return {v.begin(), v.end()};
}

}  // namespace

void check_contract(const ArgStructure& input, const ArgStructure& output, const std::string& who) {
  if (!(conclusion(input) == conclusion(output)))
    throw ContractViolation(who + ": output concludes " + render_formula(conclusion(output)) + " instead of " +
                            render_formula(conclusion(input)));
  auto in = open_set(input);
  for (const auto& f : open_set(output))
    if (!in.count(f)) throw ContractViolation(who + ": output has new open assumption " + render_formula(f));
}

RSystem::RSystem(std::vector<StructurePair> pairs) {
  std::set<std::pair<std::string, std::string>> seen;
  for (auto& [from, to] : pairs) {
    validate(from);
    validate(to);
    check_contract(from, to, "reduction");
    if (seen.insert({canonical_key(from), canonical_key(to)}).second) pairs_.push_back({from, to});
  }
}

RSystem RSystem::merged(const RSystem& other) const {
  std::vector<StructurePair> all = pairs_;
  all.insert(all.end(), other.pairs().begin(), other.pairs().end());
  return RSystem(std::move(all));
}

namespace {

std::string digest(const std::string& text) {
  std::ostringstream os;
  os << std::hex << std::hash<std::string>{}(text) << '-' << text.size();
  return os.str();
}

}  // namespace

StepSource::StepSource(JustificationSet set) : set_(std::move(set)) {
  std::string all = "J\n";
  for (const auto& j : set_->members()) all += j.text();
  fingerprint_ = digest(all);
}

StepSource::StepSource(RSystem system) : system_(std::move(system)) {
  std::string all = "S\n";
  for (const auto& [a, b] : system_->pairs()) all += canonical_key(a) + " => " + canonical_key(b) + "\n";
  fingerprint_ = digest(all);
}

const JustificationSet& StepSource::set() const {
  if (!set_) throw Error("step source is an r-system");
  return *set_;
}

const RSystem& StepSource::rsystem() const {
  if (!system_) throw Error("step source is a justification set");
  return *system_;
}

std::string StepSource::describe() const {
  if (system_) return "r-system with " + std::to_string(system_->size()) + " reductions";
  return "justifications " + selection_text(*set_);
}

std::optional<ArgStructure> apply_justification(const Justification& j, const ArgStructure& d,
                                                const std::optional<std::string>& base_id) {
  if (d.is_empty()) return std::nullopt;
  switch (j.kind()) {
    case Justification::Kind::SchematicRewrite:
      for (const auto& c : j.clauses()) {
        Bindings b;
        if (!match(c.pattern, d, b)) continue;
        int next = max_label(d) + 1;
        ArgStructure out = instantiate_template(c.templ, b, next);
        validate(out);
        check_contract(d, out, j.name());
        return out;
      }
      return std::nullopt;
    case Justification::Kind::ConstantMap: {
      const StructurePair* it = j.entry_for(d);
      if (!it) return std::nullopt;
      check_contract(d, it->second, j.name());
      return it->second;
    }
    case Justification::Kind::ChoiceFunction:
      if (!base_id) throw Error(j.name() + ": a choice function needs a base");
      if (!choice_selection(j, d, *base_id)) return std::nullopt;
      return d;
  }
  return std::nullopt;
}

const JustificationSet* choice_selection(const Justification& j, const ArgStructure& d,
                                         const std::string& base_id) {
  const ChoiceEntry* e = j.choice_for(d, base_id);
  return e ? &e->selection : nullptr;
}

namespace {

JustificationSet resolve_set(const JustificationSet& set, const std::string& base_id, int depth) {
  if (depth > 8) throw Error("choice functions nested too deeply");
  JustificationSet out;
  for (const auto& j : set.members()) {
    if (j.kind() != Justification::Kind::ChoiceFunction) {
      out.insert(j);
      continue;
    }
    for (const auto& e : j.choices())
      if (e.base_id == base_id) out = out.merged(resolve_set(e.selection, base_id, depth + 1));
  }
  return out;
}

}  // namespace

StepSource resolve_for_base(const StepSource& src, const std::string& base_id) {
  if (src.is_rsystem()) return src;
  bool any = std::any_of(src.set().members().begin(), src.set().members().end(), [](const Justification& j) {
    return j.kind() == Justification::Kind::ChoiceFunction;
  });
  if (!any) return src;
  return StepSource(resolve_set(src.set(), base_id, 0));
}

bool check_closure(const Justification& j, const std::vector<std::pair<ArgStructure, InstanceMap>>& samples) {
  for (const auto& [d, sigma] : samples) {
    auto direct = apply_justification(j, d);
    if (!direct) return false;
    auto lhs = apply_justification(j, instantiate(d, sigma));
    if (!lhs) return false;
    ArgStructure rhs = instantiate(*direct, sigma);
    if (!structures_equal(*lhs, rhs)) return false;
  }
  return true;
}

std::vector<ArgStructure> one_step(const StepSource& src, const ArgStructure& d) {
  std::vector<ArgStructure> out;
  std::unordered_set<std::string> seen;
  auto add = [&](ArgStructure r) {
    if (seen.insert(canonical_key(r)).second) out.push_back(std::move(r));
  };
  if (src.is_rsystem()) {
    for (const auto& [from, to] : src.rsystem().pairs())
      if (structures_equal(from, d)) add(to);
    return out;
  }
  const auto& members = src.set().members();
  if (members.empty()) return out;
  for (const Position& pos : postorder_positions(d)) {
    ArgStructure sub = detach(subtree_at(d, pos));
    for (const auto& j : members) {
      if (j.kind() == Justification::Kind::ChoiceFunction) continue;
      auto r = apply_justification(j, sub);
      if (!r) continue;
      try {
        add(substitute(d, pos, *r));
      } catch (const AssumptionEscape&) {
        // the reduct cannot be re-attached unambiguously at this position
      }
    }
  }
  return out;
}

std::optional<std::size_t> reduction_distance(const StepSource& src, const ArgStructure& from,
                                              const ArgStructure& to, std::size_t max_steps) {
  const std::string target = canonical_key(to);
  std::unordered_set<std::string> seen{canonical_key(from)};
  if (*seen.begin() == target) return 0;
  std::vector<ArgStructure> layer{from};
  for (std::size_t step = 1; step <= max_steps && !layer.empty(); ++step) {
    std::vector<ArgStructure> next;
    for (const auto& d : layer)
      for (auto& r : one_step(src, d)) {
        std::string key = canonical_key(r);
        if (key == target) return step;
        if (seen.insert(key).second) next.push_back(std::move(r));
      }
    layer = std::move(next);
  }
  return std::nullopt;
}

bool reduces(const StepSource& src, const ArgStructure& from, const ArgStructure& to, std::size_t max_steps) {
  return reduction_distance(src, from, to, max_steps).has_value();
}

RSystem graph_of(const Justification& j, const std::vector<ArgStructure>& domain) {
  std::vector<StructurePair> pairs;
  for (const auto& d : domain) {
    auto r = apply_justification(j, d);
    if (!r) throw Error(j.name() + " is not defined on " + render_structure(d));
    pairs.push_back({d, *r});
  }
  return RSystem(std::move(pairs));
}

bool is_schematic(const Justification& j) {
  switch (j.kind()) {
    case Justification::Kind::SchematicRewrite:
      return true;
    case Justification::Kind::ChoiceFunction:
      return false;
    case Justification::Kind::ConstantMap: {
      if (j.entries().empty()) return true;
      Generalization g = anti_unify(j.entries());
      try {
        check_linear(g.pattern);
      } catch (const Error&) {
        return false;
      }
      auto pv = variables_of(g.pattern);
      auto tv = variables_of(g.templ);
      if (tv.literal_atomic_nodes > 0) return false;
      return std::includes(pv.structures.begin(), pv.structures.end(), tv.structures.begin(),
                           tv.structures.end()) &&
             std::includes(pv.formulas.begin(), pv.formulas.end(), tv.formulas.begin(), tv.formulas.end());
    }
  }
  return false;
}

namespace {

struct RuleChunk {
  bool is_const = false;
  std::string name;
  std::size_t line = 0;
  std::string body;  // header blanked out, earlier lines as newlines
};

}  // namespace

JustificationSet parse_rules(std::string_view text) {
  static const std::regex header(R"(^(\s*)(const\s+)?([A-Za-z_][A-Za-z0-9_\-]*)\s*:)");
  std::vector<RuleChunk> chunks;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::smatch m;
    if (std::regex_search(line, m, header)) {
      RuleChunk c;
      c.is_const = m[2].matched;
      c.name = m[3].str();
      c.line = lineno;
      c.body = std::string(lineno - 1, '\n') + std::string(m[0].length(), ' ') + line.substr(m[0].length());
      chunks.push_back(std::move(c));
      continue;
    }
    std::string_view trimmed = line;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
    if (trimmed.empty() || trimmed.front() == '#') {
      if (!chunks.empty()) chunks.back().body += "\n";
      continue;
    }
    if (chunks.empty()) throw ParseError("expected 'name: PATTERN => TEMPLATE'", lineno, 1);
    chunks.back().body += "\n" + line;
  }

  std::map<std::string, std::vector<RewriteClause>> rewrites;
  std::map<std::string, std::vector<StructurePair>> tables;
  std::vector<std::string> order;
  for (const auto& c : chunks) {
    auto values = sexpr::read_all(c.body);
    if (values.size() != 3 || !values[1].is_symbol("=>"))
      throw ParseError("expected 'name: PATTERN => TEMPLATE'", c.line, 1);
    if (c.is_const) {
      if (rewrites.count(c.name)) throw ParseError("'" + c.name + "' is already a rewrite rule", c.line, 1);
      tables[c.name].push_back({structure_from_sexpr(values[0]), structure_from_sexpr(values[2])});
    } else {
      if (tables.count(c.name)) throw ParseError("'" + c.name + "' is already a table", c.line, 1);
      rewrites[c.name].push_back({pattern_from_sexpr(values[0]), pattern_from_sexpr(values[2])});
    }
  }
  JustificationSet out;
  try {
    for (auto& [name, clauses] : rewrites) out.insert(Justification::schematic(name, std::move(clauses)));
    for (auto& [name, entries] : tables) out.insert(Justification::constant_map(name, std::move(entries)));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), chunks.empty() ? 1 : chunks.front().line, 1);
  }
  return out;
}

std::string render_rules(const JustificationSet& set) {
  std::string out;
  for (const auto& j : set.members()) out += j.text();
  return out;
}

namespace {

RewriteClause clause(std::string_view pattern, std::string_view templ) {
  return {parse_structure_pattern(pattern), parse_structure_pattern(templ)};
}

}  // namespace

Justification phi_or() {
  static const Justification j = Justification::schematic(
      "phi_or",
      {clause(R"((inf orE "?B" ((inf orI1 "?A1 | ?A2" ((meta ?D1 "?A1"))) (meta ?D2 "?B") (meta ?D3 "?B")) :discharge (1 2)))",
              "(plug ?D2 1 ?D1)"),
       clause(R"((inf orE "?B" ((inf orI2 "?A1 | ?A2" ((meta ?D1 "?A2"))) (meta ?D2 "?B") (meta ?D3 "?B")) :discharge (1 2)))",
              "(plug ?D3 2 ?D1)"),
       clause(R"((inf orE "?B" ((inf orI "?A1 | ?A2" ((meta ?D1 "?A1"))) (meta ?D2 "?B") (meta ?D3 "?B")) :discharge (1 2)))",
              "(plug ?D2 1 ?D1)"),
       clause(R"((inf orE "?B" ((inf orI "?A1 | ?A2" ((meta ?D1 "?A2"))) (meta ?D2 "?B") (meta ?D3 "?B")) :discharge (1 2)))",
              "(plug ?D3 2 ?D1)")});
  return j;
}

Justification phi_and() {
  static const Justification j = Justification::schematic(
      "phi_and", {clause(R"((inf andE1 "?A" ((inf andI "?A & ?B" ((meta ?D1 "?A") (meta ?D2 "?B"))))))", "?D1"),
                  clause(R"((inf andE2 "?B" ((inf andI "?A & ?B" ((meta ?D1 "?A") (meta ?D2 "?B"))))))", "?D2")});
  return j;
}

Justification phi_imp() {
  static const Justification j = Justification::schematic(
      "phi_imp",
      {clause(R"((inf impE "?B" ((inf impI "?A -> ?B" ((meta ?D1 "?B")) :discharge (1)) (meta ?D2 "?A"))))",
              "(plug ?D1 1 ?D2)")});
  return j;
}

}  // namespace ptslab
