#include "ptslab/validity.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ptslab/errors.hpp"
#include "ptslab/parallel.hpp"

namespace ptslab {

std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Valid: return "Valid";
    case Verdict::Kind::Invalid: return "Invalid";
    case Verdict::Kind::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

Verdict make(Verdict::Kind k, std::string reason) {
  Verdict v;
  v.kind = k;
  v.reason = std::move(reason);
  return v;
}

std::string steps_label(std::size_t n) { return std::to_string(n) + (n == 1 ? " step" : " steps"); }

class Validator {
 public:
  Validator(const AtomicBase& base, const Bounds& bounds) : base_(base), model_(base), bounds_(bounds) {}

  Verdict check(const ArgStructure& d, const StepSource& steps, std::size_t depth) {
    if (depth > bounds_.max_depth) {
      ++context_hits_;
      return make(Verdict::Kind::Unknown, "nesting bound reached");
    }
    std::string key = steps.fingerprint() + "|" + canonical_key(d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (active_.count(key)) {
      ++context_hits_;
      return make(Verdict::Kind::Unknown, "validity of this argument depends on itself");
    }
    std::size_t hits_before = context_hits_;
    active_.insert(key);
    Verdict v;
    try {
      v = is_closed(d) ? closed(d, steps, depth) : open(d, steps, depth);
    } catch (const Error& e) {
      v = make(Verdict::Kind::Unknown, std::string("search aborted: ") + e.what());
    }
    active_.erase(key);
    if (!v.is_unknown() || context_hits_ == hits_before) memo_.emplace(key, v);
    return v;
  }

 private:
  Verdict closed(const ArgStructure& d, const StepSource& steps, std::size_t depth) {
    const Formula& c = conclusion(d);
    const bool atomic = c.is_atom();
    std::unordered_set<std::string> seen{canonical_key(d)};
    std::vector<ArgStructure> layer{d};
    bool bound_hit = false;
    bool uncertain = false;
    std::string uncertain_reason;
    std::size_t explored = 1;
    for (std::size_t step = 0; !layer.empty(); ++step) {
      for (const auto& n : layer) {
        if (atomic) {
          if (is_base_derivation(n, base_)) {
            return make(Verdict::Kind::Valid, "reduces in " + steps_label(step) + " to a closed derivation in the base");
          }
          continue;
        }
        if (!is_canonical(n)) continue;
        bool all = true;
        for (const auto& p : n.premises()) {
          Verdict sub = check(detach(p), steps, depth + 1);
          if (sub.is_valid()) continue;
          all = false;
          if (sub.is_unknown()) {
            uncertain = true;
            uncertain_reason = sub.reason;
          }
          break;
        }
        if (all)
          return make(Verdict::Kind::Valid, "reduces in " + steps_label(step) + " to a canonical " + n.tag() +
                                                " structure with valid immediate sub-structures");
      }
      std::vector<ArgStructure> next;
      for (const auto& n : layer) {
        for (auto& r : one_step(steps, n)) {
          if (!seen.insert(canonical_key(r)).second) continue;
          if (step >= bounds_.max_reduction_steps || r.size() > bounds_.max_structure_size ||
              explored >= bounds_.max_reducts) {
            bound_hit = true;
            continue;
          }
          ++explored;
          next.push_back(std::move(r));
        }
      }
      layer = std::move(next);
    }
    if (bound_hit) return make(Verdict::Kind::Unknown, "reduction search bound reached");
    if (uncertain) return make(Verdict::Kind::Unknown, "a canonical reduct has a sub-structure of unknown validity: " + uncertain_reason);
    Verdict v = make(Verdict::Kind::Invalid,
                     atomic ? "no reduct is a closed derivation in the base (" + std::to_string(explored) +
                                  " reducts, search exhausted)"
                            : "no canonical reduct with valid immediate sub-structures (" +
                                  std::to_string(explored) + " reducts, search exhausted)");
    Witness w{Witness::Kind::Exhausted, d, steps, std::nullopt, std::nullopt, v.reason};
    v.witness = std::move(w);
    return v;
  }

  struct Candidate {
    ArgStructure structure;
    bool certain;
  };

  Verdict open(const ArgStructure& d, const StepSource& steps, std::size_t depth) {
    std::set<Formula> gamma;
    for (const auto& f : open_assumptions(d)) gamma.insert(f);

    std::vector<StepSource> extensions{steps};
    if (!steps.is_rsystem())
      for (const auto& e : bounds_.extension_pool) {
        StepSource plus(steps.set().merged(e));
        if (plus.fingerprint() != steps.fingerprint()) extensions.push_back(std::move(plus));
      }

    bool uncertain = false;
    std::string uncertain_reason;
    std::size_t instances = 0;
    std::size_t vacuous = 0;
    for (const auto& ext : extensions) {
      std::vector<Formula> order(gamma.begin(), gamma.end());
      std::vector<std::vector<Candidate>> choices;
      std::size_t product = 1;
      for (const auto& b : order) {
        std::vector<Candidate> cs;
        for (const auto& c : pool(b)) {
          Verdict v = check(c, ext, depth + 1);
          if (v.is_invalid()) continue;
          cs.push_back({c, v.is_valid()});
        }
        product = cs.empty() ? 0 : std::min<std::size_t>(product * cs.size(), bounds_.max_instances + 1);
        choices.push_back(std::move(cs));
      }
      if (product == 0) {
        ++vacuous;
        continue;
      }
      if (product > bounds_.max_instances) {
        uncertain = true;
        uncertain_reason = "too many substitution instances";
        continue;
      }
      std::vector<std::size_t> pick(order.size(), 0);
      while (true) {
        InstanceMap sigma;
        bool certain = true;
        for (std::size_t i = 0; i < order.size(); ++i) {
          sigma.emplace(order[i], choices[i][pick[i]].structure);
          certain = certain && choices[i][pick[i]].certain;
        }
        ArgStructure inst = instantiate(d, sigma);
        ++instances;
        Verdict v = check(inst, ext, depth + 1);
        if (v.is_invalid() && certain) {
          Verdict out = make(Verdict::Kind::Invalid, "an instance by valid closed arguments is not valid: " + v.reason);
          out.witness = Witness{Witness::Kind::Instance, d, ext, sigma, inst, out.reason};
          return out;
        }
        if (!v.is_valid()) {
          uncertain = true;
          uncertain_reason = v.reason;
        }
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
          if (++pick[i] < choices[i].size()) break;
          pick[i] = 0;
        }
        if (i == pick.size()) break;
      }
    }
    if (uncertain) return make(Verdict::Kind::Unknown, "open clause undecided: " + uncertain_reason);
    Verdict v = make(Verdict::Kind::Valid,
                     instances == 0 ? "vacuously: no pooled closed argument is valid for the open assumptions"
                                    : "every pooled instance (" + std::to_string(instances) + ") is valid");
    v.provenance.push_back("the substitution pool (" +
                           std::string(bounds_.synthesize_sigma ? "synthesized canonical structures, " : "") +
                           std::to_string(bounds_.sigma_pool.size()) + " supplied) and " +
                           std::to_string(extensions.size()) + " extension(s), one extension for all assumptions");
    if (vacuous) v.provenance.push_back(std::to_string(vacuous) + " extension(s) admitted no substitution");
    return v;
  }

  const std::vector<ArgStructure>& pool(const Formula& b) {
    auto it = pools_.find(b);
    if (it != pools_.end()) return it->second;
    std::vector<ArgStructure> out;
    std::unordered_set<std::string> keys;
    auto add = [&](const ArgStructure& s) {
      if (is_closed(s) && conclusion(s) == b && keys.insert(canonical_key(s)).second) out.push_back(s);
    };
    if (bounds_.synthesize_sigma)
      if (auto s = synthesize(model_, b)) add(*s);
    if (auto x = excluded_middle_instance(b)) add(em_axiom(*x));
    for (const auto& s : bounds_.sigma_pool) add(s);
    return pools_.emplace(b, std::move(out)).first->second;
  }

  const AtomicBase& base_;
  BaseModel model_;
  const Bounds& bounds_;
  std::unordered_map<std::string, Verdict> memo_;
  std::unordered_set<std::string> active_;
  std::map<Formula, std::vector<ArgStructure>> pools_;
  std::size_t context_hits_ = 0;
};

}  // namespace

Verdict valid(const Argument& arg, const AtomicBase& base, const Bounds& bounds) {
  validate(arg.structure);
  StepSource steps = resolve_for_base(arg.steps, base.id());
  Validator v(base, bounds);
  return v.check(arg.structure, steps, 0);
}

bool recheck(const Verdict& v, const AtomicBase& base, const Bounds& bounds) {
  if (!v.is_invalid() || !v.witness) return false;
  const Witness& w = *v.witness;
  if (w.kind == Witness::Kind::Exhausted) return valid({w.structure, w.steps}, base, bounds).is_invalid();
  if (!w.sigma || !w.instance) return false;
  if (!structures_equal(instantiate(w.structure, *w.sigma), *w.instance)) return false;
  for (const auto& [f, s] : *w.sigma)
    if (!(conclusion(s) == f) || !valid({s, w.steps}, base, bounds).is_valid()) return false;
  return valid({*w.instance, w.steps}, base, bounds).is_invalid();
}

namespace {

std::optional<ArgStructure> synth(const BaseModel& m, const Formula& f) {
  if (!m.holds(f)) return std::nullopt;
  switch (f.kind()) {
    case Connective::Atom: {
      auto der = atomic_derivation(m.base(), {}, f.as_atom());
      if (!der) return std::nullopt;
      return from_atomic_derivation(*der);
    }
    case Connective::And:
      return ArgStructure::inference(std::string(tags::kAndIntro), f, {*synth(m, f.left()), *synth(m, f.right())});
    case Connective::Or:
      if (m.holds(f.left())) return ArgStructure::inference(std::string(tags::kOrIntro1), f, {*synth(m, f.left())});
      return ArgStructure::inference(std::string(tags::kOrIntro2), f, {*synth(m, f.right())});
    case Connective::Implies:
      if (m.holds(f.left())) return ArgStructure::inference(std::string(tags::kImpIntro), f, {*synth(m, f.right())});
      return ArgStructure::inference(
          std::string(tags::kImpIntro), f,
          {ArgStructure::inference(std::string(tags::kVacuous), f.right(), {ArgStructure::assumption(f.left(), 1)})},
          {1});
  }
  return std::nullopt;
}

}  // namespace

std::optional<ArgStructure> synthesize(const BaseModel& model, const Formula& f) { return synth(model, f); }

std::optional<Formula> excluded_middle_instance(const Formula& f) {
  if (f.kind() == Connective::Or && f.right().is_negation() && f.right().left() == f.left()) return f.left();
  return std::nullopt;
}

ArgStructure em_axiom(const Formula& f) {
  return ArgStructure::inference(std::string(tags::kAxiom), Formula::disj(f, negation(f)));
}

Justification kappa1(const Formula& f) {
  ArgStructure vac = ArgStructure::inference(std::string(tags::kVacuous), Formula::bottom(),
                                             {ArgStructure::assumption(f, 1)});
  ArgStructure neg = ArgStructure::inference(std::string(tags::kImpIntro), negation(f), {vac}, {1});
  ArgStructure out = ArgStructure::inference(std::string(tags::kOrIntro2), Formula::disj(f, negation(f)), {neg});
  return Justification::constant_map("kappa1", {{em_axiom(f), out}});
}

Justification kappa2(const Formula& f, const ArgStructure& closed_for_f, const std::string& base_id) {
  if (!is_closed(closed_for_f) || !(conclusion(closed_for_f) == f))
    throw Error("kappa2 needs a closed structure for " + render_formula(f));
  ArgStructure out = ArgStructure::inference(std::string(tags::kOrIntro1), Formula::disj(f, negation(f)), {closed_for_f});
  return Justification::constant_map("kappa2@" + base_id, {{em_axiom(f), out}});
}

JustificationSet em_justifications(const AtomicBase& base, const Formula& f) {
  if (!is_consistent(base)) throw InconsistentBase("base " + base.id() + " derives bot");
  BaseModel m(base);
  if (auto s = synthesize(m, f)) return JustificationSet({kappa2(f, *s, base.id())});
  return JustificationSet({kappa1(f)});
}

Argument em_witness(const AtomicBase& base, const Formula& f, WitnessMode mode) {
  JustificationSet set = em_justifications(base, f);
  ArgStructure axiom = em_axiom(f);
  if (mode == WitnessMode::Functions) return {axiom, StepSource(set)};
  return {axiom, StepSource(graph_of(set.members().front(), {axiom}))};
}

Justification choice_justification(const Formula& f, const std::vector<AtomicBase>& family) {
  std::vector<ChoiceEntry> entries;
  std::set<std::string> ids;
  for (const auto& b : family)
    if (ids.insert(b.id()).second) entries.push_back({em_axiom(f), b.id(), em_justifications(b, f)});
  return Justification::choice("Ch", std::move(entries));
}

std::string to_string(ConsequenceVariant v) {
  switch (v) {
    case ConsequenceVariant::Delta: return "delta";
    case ConsequenceVariant::DeltaStar: return "delta-star";
    case ConsequenceVariant::DeltaSH: return "delta-sh";
    case ConsequenceVariant::DeltaS: return "delta-s";
  }
  return "?";
}

std::optional<ConsequenceVariant> parse_variant(const std::string& s) {
  for (auto v : {ConsequenceVariant::Delta, ConsequenceVariant::DeltaStar, ConsequenceVariant::DeltaSH,
                 ConsequenceVariant::DeltaS})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

namespace {

bool fits(const Argument& a, const std::set<Formula>& context, const Formula& goal) {
  if (!(conclusion(a.structure) == goal)) return false;
  for (const auto& f : open_assumptions(a.structure))
    if (!context.count(f)) return false;
  return true;
}

bool all_schematic(const StepSource& s) {
  if (s.is_rsystem()) return false;
  return std::all_of(s.set().members().begin(), s.set().members().end(),
                     [](const Justification& j) { return is_schematic(j); });
}

/// Per-base constructions for the existential variant.
std::vector<Argument> local_candidates(const AtomicBase& b, const std::vector<Formula>& context,
                                       const Formula& goal) {
  std::vector<Argument> out;
  if (!is_consistent(b)) return out;
  BaseModel m(b);
  if (context.empty()) {
    if (auto x = excluded_middle_instance(goal)) out.push_back(em_witness(b, *x));
    if (auto s = synthesize(m, goal)) out.push_back({*s, StepSource()});
    return out;
  }
  std::vector<ArgStructure> leaves;
  for (const auto& f : context) leaves.push_back(ArgStructure::assumption(f));
  out.push_back({ArgStructure::inference(std::string(tags::kVacuous), goal, leaves), StepSource()});
  return out;
}

}  // namespace

ConsequenceReport consequence(ConsequenceVariant variant, const std::vector<Formula>& context, const Formula& goal,
                              const std::vector<AtomicBase>& family, const ConsequenceOptions& opts) {
  ConsequenceReport report;
  const std::set<Formula> ctx(context.begin(), context.end());
  const std::string schematic_note = "schematic means: rewrite rule, or a table generalizing to one";

  if (variant == ConsequenceVariant::Delta) {
    auto results = parallel_map(family.size(), [&](std::size_t i) {
      std::vector<Argument> cands;
      for (const auto& a : opts.candidates)
        if (fits(a, ctx, goal)) cands.push_back(a);
      for (auto& a : local_candidates(family[i], context, goal)) cands.push_back(std::move(a));
      Verdict last = make(Verdict::Kind::Unknown, "no candidate argument on this base");
      for (const auto& a : cands) {
        Verdict v = valid(a, family[i], opts.bounds);
        if (v.is_valid()) return v;
        last = make(Verdict::Kind::Unknown, "no candidate is valid here; last: " + v.reason);
      }
      return last;
    });
    for (std::size_t i = 0; i < family.size(); ++i) report.per_base.push_back({family[i].id(), results[i]});
    for (std::size_t i = 0; i < family.size(); ++i)
      if (!results[i].is_valid()) {
        report.verdict = make(Verdict::Kind::Unknown, "no valid argument found on base " + family[i].id());
        return report;
      }
    report.verdict = make(Verdict::Kind::Valid, "a valid argument on each of " + std::to_string(family.size()) + " bases");
    return report;
  }

  // One argument for the whole family.
  std::vector<Argument> cands;
  for (const auto& a : opts.candidates)
    if (fits(a, ctx, goal)) cands.push_back(a);
  if (context.empty()) {
    if (auto x = excluded_middle_instance(goal)) {
      bool consistent = std::all_of(family.begin(), family.end(), [](const AtomicBase& b) { return is_consistent(b); });
      if (consistent) {
        if (variant == ConsequenceVariant::DeltaSH) {
          RSystem sigma;
          for (const auto& b : family) sigma = sigma.merged(em_witness(b, *x, WitnessMode::Graph).steps.rsystem());
          cands.push_back({em_axiom(*x), StepSource(sigma)});
        } else {
          JustificationSet all;
          for (const auto& b : family) all = all.merged(em_justifications(b, *x));
          cands.push_back({em_axiom(*x), StepSource(all)});
        }
      }
    }
    std::optional<ArgStructure> common;
    bool same = !family.empty();
    for (const auto& b : family) {
      auto s = is_consistent(b) ? synthesize(BaseModel(b), goal) : std::nullopt;
      if (!s || (common && !structures_equal(*common, *s))) {
        same = false;
        break;
      }
      common = s;
    }
    if (same && common) cands.push_back({*common, StepSource()});
  }

  std::size_t filtered = 0;
  Verdict fallback = make(Verdict::Kind::Unknown, "no candidate argument");
  for (const auto& a : cands) {
    if (variant == ConsequenceVariant::DeltaSH && !a.steps.is_rsystem()) continue;
    if (variant != ConsequenceVariant::DeltaSH && a.steps.is_rsystem()) continue;
    if (variant == ConsequenceVariant::DeltaS && !all_schematic(a.steps)) {
      ++filtered;
      continue;
    }
    auto results = parallel_map(family.size(), [&](std::size_t i) { return valid(a, family[i], opts.bounds); });
    std::vector<std::pair<std::string, Verdict>> per;
    for (std::size_t i = 0; i < family.size(); ++i) per.push_back({family[i].id(), results[i]});
    auto bad = std::find_if(results.begin(), results.end(), [](const Verdict& v) { return !v.is_valid(); });
    if (bad == results.end()) {
      report.per_base = std::move(per);
      report.argument = a;
      report.verdict = make(Verdict::Kind::Valid, "one argument (" + a.steps.describe() + ") valid on all " +
                                                      std::to_string(family.size()) + " bases");
      if (variant == ConsequenceVariant::DeltaS) report.verdict.provenance.push_back(schematic_note);
      return report;
    }
    std::size_t at = static_cast<std::size_t>(bad - results.begin());
    fallback = make(Verdict::Kind::Unknown, "candidate fails on base " + family[at].id() + ": " + bad->reason);
    report.per_base = std::move(per);
    report.argument = a;
  }
  if (variant == ConsequenceVariant::DeltaS && filtered > 0 && !report.argument) {
    report.verdict = make(Verdict::Kind::Unknown, "no schematic witness found (" + std::to_string(filtered) +
                                                      " candidate(s) use non-schematic justifications)");
    report.verdict.provenance.push_back(schematic_note);
    return report;
  }
  report.verdict = fallback;
  return report;
}

}  // namespace ptslab
