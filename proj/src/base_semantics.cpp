#include "ptslab/base_semantics.hpp"

#include "ptslab/parallel.hpp"

namespace ptslab {

BaseModel::BaseModel(AtomicBase base) : base_(std::move(base)), closure_(atomic_closure(base_, {})) {}

bool BaseModel::holds(const Formula& f) const {
  switch (f.kind()) {
    case Connective::Atom:
      return derivable(f.as_atom());
    case Connective::And:
      return holds(f.left()) && holds(f.right());
    case Connective::Or:
      return holds(f.left()) || holds(f.right());
    case Connective::Implies:
      // B |=_B C, a one-element context.
      return !holds(f.left()) || holds(f.right());
  }
  return false;
}

bool BaseModel::entails(const std::vector<Formula>& context, const Formula& goal) const {
  for (const Formula& g : context)
    if (!holds(g)) return true;
  return holds(goal);
}

bool models(const AtomicBase& base, const std::vector<Formula>& context, const Formula& goal) {
  return BaseModel(base).entails(context, goal);
}

bool classical_eval(const Formula& f, const Valuation& v) {
  switch (f.kind()) {
    case Connective::Atom:
      return v(f.as_atom());
    case Connective::And:
      return classical_eval(f.left(), v) && classical_eval(f.right(), v);
    case Connective::Or:
      return classical_eval(f.left(), v) || classical_eval(f.right(), v);
    case Connective::Implies:
      return !classical_eval(f.left(), v) || classical_eval(f.right(), v);
  }
  return false;
}

Valuation base_valuation(const AtomicBase& base, const std::set<Atom>& atoms) {
  auto closure = atomic_closure(base, {});
  Valuation v;
  for (const Atom& a : atoms) v.values[a] = !a.is_bottom() && closure.count(a) > 0;
  v.values[Atom::bottom()] = false;
  return v;
}

ConsequenceVerdict logical_consequence(const std::vector<Formula>& context, const Formula& goal,
                                       const std::vector<AtomicBase>& family) {
  auto results = parallel_map(family.size(), [&](std::size_t i) {
    return models(family[i], context, goal);
  });
  for (std::size_t i = 0; i < family.size(); ++i)
    if (!results[i]) return {false, family[i].id()};
  return {true, std::nullopt};
}

bool em_valid(const AtomicBase& base, const Formula& f) {
  return models(base, {}, Formula::disj(f, negation(f)));
}

namespace {

class MonotoneEvaluator {
 public:
  MonotoneEvaluator(const AtomicBase& root, const ExtensionOptions& opts)
      : root_size_(root.rules().size()), opts_(opts), pool_(all_rules(opts.signature)) {}

  bool holds(const AtomicBase& b, const Formula& f) const {
    switch (f.kind()) {
      case Connective::Atom:
        return derives(b, {}, f.as_atom());
      case Connective::And:
        return holds(b, f.left()) && holds(b, f.right());
      case Connective::Or:
        return holds(b, f.left()) || holds(b, f.right());
      case Connective::Implies:
        return entails(b, {f.left()}, f.right());
    }
    return false;
  }

  bool entails(const AtomicBase& b, const std::vector<Formula>& ctx, const Formula& goal) const {
    if (ctx.empty()) return holds(b, goal);
    bool ok = true;
    for_each_extension(b, [&](const AtomicBase& c) {
      bool all = true;
      for (const Formula& g : ctx)
        if (!holds(c, g)) {
          all = false;
          break;
        }
      if (all && !holds(c, goal)) ok = false;
      return ok;
    });
    return ok;
  }

 private:
  template <typename Visit>
  void for_each_extension(const AtomicBase& b, Visit visit) const {
    std::size_t used = b.rules().size() - std::min(b.rules().size(), root_size_);
    std::size_t budget = opts_.max_extra_rules > used ? opts_.max_extra_rules - used : 0;
    std::vector<const AtomicRule*> fresh;
    for (const AtomicRule& r : pool_)
      if (!b.rules().count(r)) fresh.push_back(&r);
    std::vector<std::size_t> pick;
    bool go = true;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      if (!go) return;
      std::set<AtomicRule> rules = b.rules();
      for (std::size_t i : pick) rules.insert(*fresh[i]);
      go = visit(AtomicBase(std::move(rules)));
      if (pick.size() == budget) return;
      for (std::size_t i = from; i < fresh.size() && go; ++i) {
        pick.push_back(i);
        self(self, i + 1);
        pick.pop_back();
      }
    };
    rec(rec, 0);
  }

  std::size_t root_size_;
  const ExtensionOptions& opts_;
  std::vector<AtomicRule> pool_;
};

}  // namespace

bool models_monotone(const AtomicBase& base, const std::vector<Formula>& context,
                     const Formula& goal, const ExtensionOptions& opts) {
  MonotoneEvaluator ev(base, opts);
  return ev.entails(base, context, goal);
}

}  // namespace ptslab
