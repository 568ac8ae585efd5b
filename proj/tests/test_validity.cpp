#include <string>
#include <vector>

#include "doctest.h"
#include "ptslab/errors.hpp"
#include "ptslab/fixtures.hpp"
#include "ptslab/validity.hpp"
#include "support.hpp"

using namespace ptslab;

namespace {

std::vector<AtomicBase> family2() { return enumerate_bases(letter_atoms(2), EnumerationOptions{.max_rules = 2}); }

}  // namespace

TEST_CASE("validity: the disjunction elimination example") {
  auto x = fixtures::disjunction_detour();
  for (const auto& b : x.bases) {
    CAPTURE(b.id());
    CHECK(valid({x.minor_left, StepSource(x.minor_left_steps)}, b).is_valid());
    CHECK(valid({x.minor_right, StepSource(x.minor_right_steps)}, b).is_valid());
    Verdict v = valid({x.open, StepSource(x.steps)}, b);
    CHECK(v.is_valid());
    CHECK_FALSE(v.provenance.empty());
  }
}

TEST_CASE("validity: open examples") {
  ArgStructure vac = parse_structure(R"((inf vac "bot" ((assume "a"))))");
  CHECK(valid({vac, {}}, AtomicBase{}).is_valid());
  CHECK(valid({ArgStructure::assumption(parse_formula("p")), {}}, parse_base("-> p\np -> q\n")).is_valid());
  // With `a` derivable the same structure has a valid instance reaching bot.
  Verdict v = valid({vac, {}}, parse_base("-> a\n"));
  CHECK(v.is_invalid());
  REQUIRE(v.witness);
  CHECK(v.witness->kind == Witness::Kind::Instance);
  CHECK(recheck(v, parse_base("-> a\n")));
}

TEST_CASE("validity: the chain example") {
  auto x = fixtures::chain_example();
  StepSource steps(JustificationSet({x.phi}));
  CHECK(valid({x.open, steps}, x.base).is_valid());
  CHECK(valid({x.closed, steps}, x.base).is_valid());
  Verdict closed_empty = valid({x.closed, steps}, x.empty);
  CHECK(closed_empty.is_invalid());
  CHECK(recheck(closed_empty, x.empty));
  CHECK(valid({x.closed, {}}, x.base).is_invalid());
}

TEST_CASE("validity: closed arguments for bot are invalid on consistent bases") {
  auto g = testing::rng(12);
  for (int i = 0; i < 20; ++i) {
    AtomicBase b = testing::random_base(g, letter_atoms(2), 3);
    Verdict v = valid({ArgStructure::inference("axiom", Formula::bottom()), StepSource(JustificationSet({phi_or()}))}, b);
    CHECK(v.is_invalid());
    CHECK(recheck(v, b));
  }
}

TEST_CASE("validity: em_witness examples") {
  Formula p = parse_formula("p");
  Argument w = em_witness(AtomicBase{}, p);
  CHECK(w.steps.set().find("kappa1"));
  CHECK(valid(w, AtomicBase{}).is_valid());

  AtomicBase bp = parse_base("-> p\n");
  Argument w2 = em_witness(bp, p);
  const Justification* k2 = nullptr;
  for (const auto& j : w2.steps.set().members())
    if (j.name().rfind("kappa2", 0) == 0) k2 = &j;
  REQUIRE(k2);
  auto out = apply_justification(*k2, em_axiom(p));
  REQUIRE(out);
  CHECK(structures_equal(*out, parse_structure(R"((inf orI1 "p | ~p" ((inf atomic "p" ()))))")));
  CHECK(valid(w2, bp).is_valid());

  for (const auto& b : {AtomicBase{}, bp}) {
    Argument gw = em_witness(b, p, WitnessMode::Graph);
    REQUIRE(gw.steps.is_rsystem());
    REQUIRE(gw.steps.rsystem().size() == 1);
    const auto& [from, to] = gw.steps.rsystem().pairs()[0];
    CHECK_NOTHROW(check_contract(from, to, "graph"));
    CHECK(valid(gw, b).is_valid());
  }
  CHECK_THROWS_AS(em_witness(parse_base("-> bot\n"), p), InconsistentBase);
}

TEST_CASE("validity: witnesses hold on every enumerated base and function and graph readings agree") {
  auto g = testing::rng(13);
  for (const auto& b : family2()) {
    Formula f = testing::random_formula(g, letter_atoms(2), 2);
    Verdict fv = valid(em_witness(b, f), b);
    Verdict gv = valid(em_witness(b, f, WitnessMode::Graph), b);
    CAPTURE(b.id());
    CAPTURE(render_formula(f));
    CHECK(fv.is_valid());
    CHECK(fv.kind == gv.kind);
  }
}

TEST_CASE("validity: synthesis follows the collapse") {
  auto g = testing::rng(14);
  for (int i = 0; i < 200; ++i) {
    AtomicBase b = testing::random_base(g, letter_atoms(3), 3);
    BaseModel m(b);
    Formula f = testing::random_formula(g, letter_atoms(3), 3);
    auto s = synthesize(m, f);
    CHECK(s.has_value() == m.holds(f));
    if (s) {
      CHECK(is_closed(*s));
      CHECK(conclusion(*s) == f);
      if (!f.is_atom()) CHECK(is_canonical(*s));
    }
  }
}

TEST_CASE("validity: every Invalid verdict re-checks") {
  auto g = testing::rng(15);
  auto atoms = letter_atoms(2);
  std::size_t invalid = 0;
  for (int i = 0; i < 150; ++i) {
    AtomicBase b = testing::random_base(g, atoms, 3);
    Formula f = testing::random_formula(g, atoms, 2);
    ArgStructure d = testing::coin(g) ? testing::random_closed_with_detours(g, f, atoms, 2)
                                      : testing::open_for(g, f, {testing::random_formula(g, atoms, 1)}, std::nullopt);
    StepSource steps(testing::coin(g) ? JustificationSet({phi_or(), phi_and(), phi_imp()}) : JustificationSet{});
    Verdict v = valid({d, steps}, b);
    if (v.is_invalid()) {
      ++invalid;
      REQUIRE(v.witness);
      CHECK(recheck(v, b));
    }
  }
  CHECK(invalid > 10);
}

TEST_CASE("validity: consequence variants") {
  auto family = family2();
  Formula em = parse_formula("a | ~a");
  auto delta = consequence(ConsequenceVariant::Delta, {}, em, family);
  CHECK(delta.verdict.is_valid());
  CHECK(delta.per_base.size() == family.size());
  CHECK(consequence(ConsequenceVariant::DeltaStar, {}, em, family).verdict.is_valid());
  auto sh = consequence(ConsequenceVariant::DeltaSH, {}, em, family);
  CHECK(sh.verdict.is_valid());
  REQUIRE(sh.argument);
  CHECK(sh.argument->steps.is_rsystem());
  auto s = consequence(ConsequenceVariant::DeltaS, {}, em, family);
  CHECK(s.verdict.is_unknown());
  CHECK(s.verdict.reason.find("no schematic witness found") != std::string::npos);

  std::vector<AtomicBase> without_a{AtomicBase{}, parse_base("-> b\n")};
  CHECK(consequence(ConsequenceVariant::DeltaS, {}, em, without_a).verdict.is_valid());
  CHECK(consequence(ConsequenceVariant::Delta, {}, parse_formula("a"), without_a).verdict.is_unknown());

  for (auto v : {ConsequenceVariant::Delta, ConsequenceVariant::DeltaStar, ConsequenceVariant::DeltaSH,
                 ConsequenceVariant::DeltaS})
    CHECK(parse_variant(to_string(v)) == v);
  CHECK_FALSE(parse_variant("gamma"));
}

TEST_CASE("validity: the choice function") {
  Formula a = parse_formula("a");
  AtomicBase empty, ba = parse_base("-> a\n");
  Justification ch = choice_justification(a, {empty, ba});
  CHECK(ch.kind() == Justification::Kind::ChoiceFunction);
  CHECK_FALSE(is_schematic(ch));
  const JustificationSet* s0 = choice_selection(ch, em_axiom(a), empty.id());
  REQUIRE(s0);
  CHECK(s0->size() == 1);
  CHECK(s0->find("kappa1"));
  const JustificationSet* s1 = choice_selection(ch, em_axiom(a), ba.id());
  REQUIRE(s1);
  CHECK(s1->find("kappa2@" + ba.id()));
  CHECK_FALSE(s1->find("kappa1"));
  for (const auto& b : {empty, ba}) CHECK(valid({em_axiom(a), StepSource(JustificationSet({ch}))}, b).is_valid());
  CHECK_THROWS(apply_justification(ch, em_axiom(a)));
}

TEST_CASE("validity: doubling the step budget never flips a decided verdict") {
  auto g = testing::rng(16);
  auto atoms = letter_atoms(2);
  StepSource steps(JustificationSet({phi_or(), phi_and(), phi_imp()}));
  for (int i = 0; i < 60; ++i) {
    AtomicBase b = testing::random_base(g, atoms, 3);
    Formula f = testing::random_formula(g, atoms, 2, false);
    ArgStructure d = testing::random_closed_with_detours(g, f, atoms, 3);
    Bounds small, large;
    small.max_reduction_steps = 1 + testing::pick(g, 3);
    large.max_reduction_steps = 2 * small.max_reduction_steps;
    Verdict v1 = valid({d, steps}, b, small);
    Verdict v2 = valid({d, steps}, b, large);
    if (!v1.is_unknown()) CHECK(v1.kind == v2.kind);
  }
}
