#include "ptslab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "ptslab/base_semantics.hpp"
#include "ptslab/errors.hpp"
#include "ptslab/fixtures.hpp"
#include "ptslab/parallel.hpp"
#include "ptslab/sexpr.hpp"

namespace ptslab::cli {

std::optional<std::string> Record::get(std::string_view key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  return std::nullopt;
}

namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape(std::string_view s, std::size_t column) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (++i == s.size()) throw ParseError("dangling escape", 1, column + i);
    switch (s[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      default: throw ParseError("unknown escape", 1, column + i);
    }
  }
  return out;
}

}  // namespace

std::string format_record(const Record& r) {
  std::string out = r.type;
  for (const auto& [k, v] : r.fields) out += "\t" + k + "=" + escape(v);
  return out;
}

Record parse_record(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  Record r;
  std::size_t start = 0;
  bool first = true;
  while (true) {
    std::size_t tab = line.find('\t', start);
    std::string_view part = line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start);
    if (first) {
      if (part.empty() || part.find('=') != std::string_view::npos) throw ParseError("missing record type", 1, 1);
      r.type = std::string(part);
      first = false;
    } else {
      std::size_t eq = part.find('=');
      if (eq == std::string_view::npos || eq == 0) throw ParseError("expected key=value", 1, start + 1);
      r.fields.emplace_back(std::string(part.substr(0, eq)), unescape(part.substr(eq + 1), start + eq + 2));
    }
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return r;
}

int exit_code(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Valid: return 0;
    case Verdict::Kind::Invalid: return 1;
    case Verdict::Kind::Unknown: return 2;
  }
  return 3;
}

SearchResult search_counterexample(const std::vector<Formula>& context, const Formula& goal,
                                   const std::vector<Atom>& atoms, const EnumerationOptions& opts) {
  SearchResult result;
  try {
    enumerate_bases(atoms, opts, [&](const AtomicBase& b) {
      ++result.examined;
      if (models(b, context, goal)) return true;
      result.status = SearchResult::Status::Found;
      result.base = b;
      return false;
    });
  } catch (const ResourceError&) {
    result.status = SearchResult::Status::CapExceeded;
  }
  return result;
}

namespace {

struct InputError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs a parser over a file's text, turning parse errors into file:line
/// messages.
template <typename Fn>
auto from_file(const std::string& path, Fn parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    std::string suffix = " at " + std::to_string(e.line) + ":" + std::to_string(e.column);
    if (msg.size() >= suffix.size() && msg.compare(msg.size() - suffix.size(), suffix.size(), suffix) == 0)
      msg.resize(msg.size() - suffix.size());
    throw InputError(path + ":" + std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + msg);
  } catch (const MalformedStructure& e) {
    throw InputError(path + ": " + e.what());
  }
}

Formula formula_arg(const std::string& text) {
  try {
    return parse_formula(text);
  } catch (const ParseError& e) {
    throw InputError("formula '" + text + "': " + e.what());
  }
}

AtomicBase load_base(const std::string& path) {
  return from_file(path, [](const std::string& t) { return parse_base(t); });
}

ArgStructure load_structure(const std::string& operand) {
  auto first = operand.find_first_not_of(" \t\n");
  if (first != std::string::npos && operand[first] == '(') {
    try {
      return parse_structure(operand);
    } catch (const ParseError& e) {
      throw InputError(std::string("structure: ") + e.what());
    }
  }
  return from_file(operand, [](const std::string& t) { return parse_structure(t); });
}

std::vector<ArgStructure> load_structures(const std::string& path) {
  return from_file(path, [](const std::string& t) {
    std::vector<ArgStructure> out;
    for (const auto& v : sexpr::read_all(t)) {
      out.push_back(structure_from_sexpr(v));
      validate(out.back());
    }
    return out;
  });
}

JustificationSet load_rules(const std::string& path) {
  if (path == "none") return {};
  return from_file(path, [](const std::string& t) { return parse_rules(t); });
}

Bounds bounds_of(const RunConfig& c) {
  Bounds b;
  if (c.max_steps) b.max_reduction_steps = *c.max_steps;
  for (const auto& p : c.sigma_pool)
    for (auto& s : load_structures(p)) b.sigma_pool.push_back(std::move(s));
  for (const auto& p : c.extensions) b.extension_pool.push_back(load_rules(p));
  return b;
}

class Reporter {
 public:
  Reporter(const RunConfig& c, std::ostream& out) : lines_(c.format == Format::Lines), out_(out) {}

  void emit(const Record& r, const std::string& text) {
    if (lines_)
      out_ << format_record(r) << '\n';
    else
      out_ << text << '\n';
  }

  void text(const std::string& t) {
    if (!lines_) out_ << t << '\n';
  }

  void verdict(const std::string& type, std::vector<std::pair<std::string, std::string>> fields, const Verdict& v,
               const std::string& label) {
    fields.emplace_back("result", to_string(v.kind));
    fields.emplace_back("reason", v.reason);
    for (std::size_t i = 0; i < v.provenance.size(); ++i) fields.emplace_back("relative_to", v.provenance[i]);
    std::string t = label + to_string(v.kind) + ": " + v.reason;
    for (const auto& p : v.provenance) t += "\n    relative to " + p;
    if (v.witness) {
      const Witness& w = *v.witness;
      std::string where = w.instance ? render_structure(*w.instance) : render_structure(w.structure);
      fields.emplace_back("witness", where);
      t += "\n    witness: " + where;
      if (w.sigma)
        for (const auto& [f, s] : *w.sigma) t += "\n    with " + render_formula(f) + " := " + render_structure(s);
    }
    emit({type, std::move(fields)}, t);
  }

 private:
  bool lines_;
  std::ostream& out_;
};

std::vector<Atom> atoms_for_search(const RunConfig& c, const std::vector<Formula>& ctx, const Formula& goal) {
  std::set<Atom> atoms;
  if (c.atoms) {
    std::stringstream ss(*c.atoms);
    std::string name;
    while (std::getline(ss, name, ','))
      if (!name.empty()) atoms.insert(Atom(name));
  } else {
    for (const auto& f : ctx)
      for (const auto& a : atoms_of(f)) atoms.insert(a);
    for (const auto& a : atoms_of(goal)) atoms.insert(a);
  }
  atoms.erase(Atom::bottom());
  return {atoms.begin(), atoms.end()};
}

void need(const RunConfig& c, std::size_t min, std::size_t max, const std::string& usage) {
  if (c.inputs.size() < min || c.inputs.size() > max) throw CLI::ValidationError(c.command, "usage: ptslab " + usage);
}

std::vector<Formula> context_of(const RunConfig& c) {
  std::vector<Formula> ctx;
  for (const auto& f : c.context) ctx.push_back(formula_arg(f));
  return ctx;
}

std::vector<AtomicBase> family_or_default(const RunConfig& c) {
  if (c.family.empty()) return load_family({"enumerate:atoms=2,rules=2"});
  return load_family(c.family);
}

int cmd_derive(const RunConfig& c, Reporter& rep) {
  need(c, 2, 2, "derive BASE GOAL");
  AtomicBase base = load_base(c.inputs[0]);
  Formula goal = formula_arg(c.inputs[1]);
  if (!goal.is_atom()) throw InputError("derive: the goal must be an atom");
  auto der = atomic_derivation(base, {}, goal.as_atom());
  Record r{"derive", {{"base", base.id()}, {"goal", render_formula(goal)}, {"result", der ? "holds" : "fails"}}};
  std::string t = der ? "derivable:\n" + render_structure_pretty(from_atomic_derivation(*der))
                      : "not derivable: " + render_formula(goal);
  if (der) r.fields.emplace_back("derivation", render_structure(from_atomic_derivation(*der)));
  rep.emit(r, t);
  return der ? 0 : 1;
}

int cmd_models(const RunConfig& c, Reporter& rep) {
  need(c, 2, 1000, "models BASE [CONTEXT...] GOAL");
  AtomicBase base = load_base(c.inputs[0]);
  std::vector<Formula> ctx = context_of(c);
  for (std::size_t i = 1; i + 1 < c.inputs.size(); ++i) ctx.push_back(formula_arg(c.inputs[i]));
  Formula goal = formula_arg(c.inputs.back());
  bool holds;
  if (c.extension_rules) {
    ExtensionOptions opts;
    std::set<Atom> sig = base.signature();
    for (const auto& f : ctx)
      for (const auto& a : atoms_of(f)) sig.insert(a);
    for (const auto& a : atoms_of(goal)) sig.insert(a);
    sig.erase(Atom::bottom());
    opts.signature.assign(sig.begin(), sig.end());
    opts.max_extra_rules = *c.extension_rules;
    holds = models_monotone(base, ctx, goal, opts);
  } else {
    holds = models(base, ctx, goal);
  }
  std::string ctx_text;
  for (std::size_t i = 0; i < ctx.size(); ++i) ctx_text += (i ? ", " : "") + render_formula(ctx[i]);
  rep.emit({"models",
            {{"base", base.id()}, {"context", ctx_text}, {"goal", render_formula(goal)}, {"result", holds ? "holds" : "fails"}}},
           std::string(holds ? "holds" : "fails") + ": " + ctx_text + (ctx_text.empty() ? "" : " ") + "|= " +
               render_formula(goal) + " on " + base.id());
  return holds ? 0 : 1;
}

int cmd_consequence(const RunConfig& c, Reporter& rep) {
  need(c, 2, 2, "consequence VARIANT GOAL --family ...");
  std::vector<Formula> ctx = context_of(c);
  Formula goal = formula_arg(c.inputs[1]);
  std::vector<AtomicBase> family = family_or_default(c);
  if (c.inputs[0] == "base") {
    ConsequenceVerdict v = logical_consequence(ctx, goal, family);
    Record r{"consequence", {{"variant", "base"}, {"bases", std::to_string(family.size())}, {"result", v.holds ? "holds" : "fails"}}};
    if (v.counterexample) r.fields.emplace_back("counterexample", *v.counterexample);
    rep.emit(r, std::string(v.holds ? "holds" : "fails") + " on " + std::to_string(family.size()) + " bases" +
                    (v.counterexample ? "; fails on " + *v.counterexample : ""));
    return v.holds ? 0 : 1;
  }
  auto variant = parse_variant(c.inputs[0]);
  if (!variant) throw CLI::ValidationError("consequence", "unknown variant '" + c.inputs[0] + "'");
  ConsequenceOptions opts;
  opts.bounds = bounds_of(c);
  ConsequenceReport report = consequence(*variant, ctx, goal, family, opts);
  for (const auto& [id, v] : report.per_base) rep.verdict("base", {{"id", id}}, v, "  " + id + ": ");
  rep.verdict("consequence", {{"variant", to_string(*variant)}, {"bases", std::to_string(family.size())}}, report.verdict,
              to_string(*variant) + " over " + std::to_string(family.size()) + " bases: ");
  return exit_code(report.verdict.kind);
}

int cmd_reduce(const RunConfig& c, Reporter& rep) {
  need(c, 3, 3, "reduce RULES FROM TO");
  StepSource src(load_rules(c.inputs[0]));
  ArgStructure from = load_structure(c.inputs[1]);
  ArgStructure to = load_structure(c.inputs[2]);
  std::size_t max = c.max_steps.value_or(10);
  auto d = reduction_distance(src, from, to, max);
  Record r{"reduce", {{"result", d ? "holds" : "fails"}, {"max_steps", std::to_string(max)}}};
  if (d) r.fields.emplace_back("steps", std::to_string(*d));
  rep.emit(r, d ? "reduces in " + std::to_string(*d) + " step(s)" : "no reduction within " + std::to_string(max) + " steps");
  return d ? 0 : 1;
}

int cmd_valid(const RunConfig& c, Reporter& rep) {
  need(c, 3, 3, "valid STRUCTURE RULES BASE");
  ArgStructure d = load_structure(c.inputs[0]);
  JustificationSet set = load_rules(c.inputs[1]);
  AtomicBase base = load_base(c.inputs[2]);
  StepSource steps(set);
  if (c.rsystem) {
    std::vector<StructurePair> pairs;
    for (const auto& j : set.members()) {
      if (j.kind() != Justification::Kind::ConstantMap)
        throw InputError(c.inputs[1] + ": --rsystem needs table entries only");
      for (const auto& p : j.entries()) pairs.push_back(p);
    }
    steps = StepSource(RSystem(std::move(pairs)));
  }
  Verdict v = valid({d, steps}, base, bounds_of(c));
  rep.verdict("verdict", {{"base", base.id()}}, v, "");
  return exit_code(v.kind);
}

int cmd_search(const RunConfig& c, Reporter& rep) {
  need(c, 1, 1, "search GOAL [--context F] [--atoms p,q] [--rules M]");
  std::vector<Formula> ctx = context_of(c);
  Formula goal = formula_arg(c.inputs[0]);
  EnumerationOptions opts;
  opts.max_rules = c.rules;
  opts.cap = c.cap;
  SearchResult r = search_counterexample(ctx, goal, atoms_for_search(c, ctx, goal), opts);
  switch (r.status) {
    case SearchResult::Status::Found:
      rep.emit({"search", {{"result", "found"}, {"base", r.base->id()}, {"examined", std::to_string(r.examined)}}},
               "counterexample: " + r.base->id());
      return 1;
    case SearchResult::Status::None:
      rep.emit({"search", {{"result", "none"}, {"examined", std::to_string(r.examined)}}},
               "no counterexample among " + std::to_string(r.examined) + " bases");
      return 0;
    case SearchResult::Status::CapExceeded:
      rep.emit({"search", {{"result", "cap-exceeded"}, {"cap", std::to_string(c.cap)}}},
               "enumeration exceeds the cap of " + std::to_string(c.cap) + " bases");
      return 2;
  }
  return 3;
}

int demo_phi_or(const RunConfig& c, Reporter& rep) {
  auto x = fixtures::disjunction_detour();
  Bounds bounds = bounds_of(c);
  StepSource src(x.steps);
  auto dist = reduction_distance(src, x.detour, x.reduct, bounds.max_reduction_steps);
  bool ok = dist && *dist == 1;
  rep.emit({"reduce", {{"result", dist ? "holds" : "fails"}, {"steps", dist ? std::to_string(*dist) : "-"}}},
           "detour " + render_structure(x.detour) + "\n  reduces to " + render_structure(x.reduct) + " in " +
               (dist ? std::to_string(*dist) : std::string("no")) + " step(s)");
  for (const auto& b : x.bases) {
    Verdict l = valid({x.minor_left, StepSource(x.minor_left_steps)}, b, bounds);
    Verdict r = valid({x.minor_right, StepSource(x.minor_right_steps)}, b, bounds);
    Verdict m = valid({x.open, src}, b, bounds);
    rep.text("base " + b.id());
    rep.verdict("verdict", {{"base", b.id()}, {"argument", "minor-left"}}, l, "  [a] / c: ");
    rep.verdict("verdict", {{"base", b.id()}, {"argument", "minor-right"}}, r, "  [b] / c: ");
    rep.verdict("verdict", {{"base", b.id()}, {"argument", "elimination"}}, m, "  a | b / c: ");
    ok = ok && l.is_valid() && r.is_valid() && m.is_valid();
  }
  return ok ? 0 : 1;
}

int demo_em(const RunConfig& c, Reporter& rep) {
  Formula f = formula_arg(c.formula);
  Bounds bounds = bounds_of(c);
  auto family = family_or_default(c);
  auto results = parallel_map(family.size(), [&](std::size_t i) -> std::pair<std::string, Verdict> {
    if (!is_consistent(family[i])) return {"-", Verdict{Verdict::Kind::Unknown, "inconsistent base", {}, {}}};
    Argument a = em_witness(family[i], f);
    std::string branch = a.steps.set().find("kappa1") ? "kappa1" : "kappa2";
    return {branch, valid(a, family[i], bounds)};
  });
  int worst = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& [branch, v] = results[i];
    rep.verdict("witness", {{"base", family[i].id()}, {"branch", branch}}, v, family[i].id() + " via " + branch + ": ");
    worst = std::max(worst, exit_code(v.kind));
  }
  return worst;
}

int demo_chain(const RunConfig& c, Reporter& rep) {
  auto x = fixtures::chain_example();
  Bounds bounds = bounds_of(c);
  StepSource steps(JustificationSet({x.phi}));
  Verdict on_base = valid({x.open, steps}, x.base, bounds);
  Verdict on_empty = valid({x.open, steps}, x.empty, bounds);
  Verdict closed_empty = valid({x.closed, steps}, x.empty, bounds);
  rep.verdict("verdict", {{"base", x.base.id()}, {"argument", "open-chain"}}, on_base, "p / r / q | s on " + x.base.id() + ": ");
  rep.verdict("verdict", {{"base", x.empty.id()}, {"argument", "open-chain"}}, on_empty,
              "p / r / q | s on " + x.empty.id() + ": ");
  rep.verdict("verdict", {{"base", x.empty.id()}, {"argument", "closed-chain"}}, closed_empty,
              "|- p / r / q | s on " + x.empty.id() + ": ");
  return exit_code(on_base.kind);
}

int demo_sh(const RunConfig& c, Reporter& rep) {
  Formula f = formula_arg(c.formula);
  Bounds bounds = bounds_of(c);
  auto family = family_or_default(c);
  family.erase(std::remove_if(family.begin(), family.end(), [](const AtomicBase& b) { return !is_consistent(b); }),
               family.end());
  std::vector<Argument> witnesses;
  for (const auto& b : family) witnesses.push_back(em_witness(b, f, WitnessMode::Graph));
  auto per = parallel_map(family.size(), [&](std::size_t i) { return valid(witnesses[i], family[i], bounds); });
  bool ok = true;
  RSystem all;
  for (std::size_t i = 0; i < family.size(); ++i) {
    rep.verdict("witness", {{"base", family[i].id()}, {"mode", "graph"}}, per[i], family[i].id() + " own r-system: ");
    ok = ok && per[i].is_valid();
    all = all.merged(witnesses[i].steps.rsystem());
  }
  Argument uni{em_axiom(f), StepSource(all)};
  auto shared = parallel_map(family.size(), [&](std::size_t i) { return valid(uni, family[i], bounds); });
  std::size_t good = std::count_if(shared.begin(), shared.end(), [](const Verdict& v) { return v.is_valid(); });
  ok = ok && good == family.size();
  rep.emit({"union", {{"reductions", std::to_string(all.size())}, {"valid_on", std::to_string(good)},
                      {"bases", std::to_string(family.size())}}},
           "union of " + std::to_string(all.size()) + " reductions valid on " + std::to_string(good) + "/" +
               std::to_string(family.size()) + " bases");
  ConsequenceOptions opts;
  opts.bounds = bounds;
  Formula em = Formula::disj(f, negation(f));
  for (auto v : {ConsequenceVariant::Delta, ConsequenceVariant::DeltaStar, ConsequenceVariant::DeltaSH,
                 ConsequenceVariant::DeltaS}) {
    auto r = consequence(v, {}, em, family, opts);
    rep.verdict("consequence", {{"variant", to_string(v)}}, r.verdict, to_string(v) + ": ");
  }
  return ok ? 0 : 1;
}

int cmd_demo(const RunConfig& c, Reporter& rep) {
  need(c, 1, 1, "demo {phi-or|em|sec6|sh}");
  const std::string& which = c.inputs[0];
  if (which == "phi-or") return demo_phi_or(c, rep);
  if (which == "em") return demo_em(c, rep);
  if (which == "sec6") return demo_chain(c, rep);
  if (which == "sh") return demo_sh(c, rep);
  throw CLI::ValidationError("demo", "unknown demo '" + which + "'");
}

}  // namespace

std::vector<AtomicBase> load_family(const std::vector<std::string>& specs) {
  static const std::regex enumerate(R"(enumerate:atoms=(\d+),rules=(\d+))");
  std::vector<AtomicBase> out;
  for (const auto& s : specs) {
    std::smatch m;
    if (std::regex_match(s, m, enumerate)) {
      EnumerationOptions opts;
      opts.max_rules = std::stoul(m[2].str());
      std::size_t k = std::stoul(m[1].str());
      if (k == 0 || k > 26) throw InputError("enumerate: atoms must be between 1 and 26");
      for (auto& b : enumerate_bases(letter_atoms(k), opts)) out.push_back(std::move(b));
    } else if (s.rfind("enumerate:", 0) == 0) {
      throw InputError("bad family spec '" + s + "', expected enumerate:atoms=K,rules=M");
    } else {
      out.push_back(load_base(s));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const AtomicBase& a, const AtomicBase& b) { return a.id() < b.id(); });
  out.erase(std::unique(out.begin(), out.end(), [](const AtomicBase& a, const AtomicBase& b) { return a.id() == b.id(); }),
            out.end());
  return out;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Reporter rep(c, out);
  try {
    if (c.command == "derive") return cmd_derive(c, rep);
    if (c.command == "models") return cmd_models(c, rep);
    if (c.command == "consequence") return cmd_consequence(c, rep);
    if (c.command == "reduce") return cmd_reduce(c, rep);
    if (c.command == "valid") return cmd_valid(c, rep);
    if (c.command == "search") return cmd_search(c, rep);
    if (c.command == "demo") return cmd_demo(c, rep);
    err << "unknown command '" << c.command << "'\n";
  } catch (const CLI::Error& e) {
    err << e.what() << '\n';
  } catch (const InputError& e) {
    err << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return 3;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded checks for proof-theoretic validity over atomic bases"};
  app.require_subcommand(1);
  RunConfig c;
  std::string format = "text";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text or lines")->check(CLI::IsMember({"text", "lines"}));
    sub->add_option("--max-steps", c.max_steps, "reduction steps per search");
    sub->add_option("--context", c.context, "context formula (repeatable)");
    sub->add_option("--family", c.family, ".base files or enumerate:atoms=K,rules=M");
    sub->add_option("--sigma-pool", c.sigma_pool, "files of closed structures offered to substitutions");
    sub->add_option("--extensions", c.extensions, "rule files, each joined to the steps as an extension");
  };
  struct Spec {
    const char* name;
    const char* help;
    const char* operands;
  };
  const Spec specs[] = {
      {"derive", "atomic derivability of GOAL in BASE", "BASE GOAL"},
      {"models", "base semantics: BASE |= CONTEXT => GOAL", "BASE [CONTEXT...] GOAL"},
      {"consequence", "consequence over a family: base|delta|delta-star|delta-sh|delta-s", "VARIANT GOAL"},
      {"reduce", "whether FROM reduces to TO under RULES", "RULES FROM TO"},
      {"valid", "validity of STRUCTURE with RULES on BASE", "STRUCTURE RULES BASE"},
      {"search", "first enumerated base refuting CONTEXT => GOAL", "GOAL"},
      {"demo", "reproduce a construction: phi-or|em|sec6|sh", "NAME"},
  };
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("operands", c.inputs, s.operands);
    common(sub);
    sub->callback([&c, name = std::string(s.name)] { c.command = name; });
    if (std::string(s.name) == "valid") sub->add_flag("--rsystem", c.rsystem, "read table entries as an r-system");
    if (std::string(s.name) == "models")
      sub->add_option("--extension-rules", c.extension_rules, "monotone reading with up to N extra rules");
    if (std::string(s.name) == "search") {
      sub->add_option("--atoms", c.atoms, "comma-separated signature");
      sub->add_option("--rules", c.rules, "rules per base");
      sub->add_option("--cap", c.cap, "most bases to enumerate");
    }
    if (std::string(s.name) == "demo") sub->add_option("--formula", c.formula, "the formula A in A | ~A");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 3;
  }
  c.format = format == "lines" ? Format::Lines : Format::Text;
  return run(c, out, err);
}

}  // namespace ptslab::cli
