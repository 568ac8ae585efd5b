#include <string>
#include <vector>

#include "doctest.h"
#include "ptslab/errors.hpp"
#include "ptslab/fixtures.hpp"
#include "ptslab/justification.hpp"
#include "ptslab/pattern.hpp"
#include "ptslab/validity.hpp"
#include "support.hpp"

using namespace ptslab;

TEST_CASE("pattern: match and instantiate") {
  auto p = parse_structure_pattern(R"((inf andE1 "?A" ((inf andI "?A & ?B" ((meta ?D1 "?A") ?D2)))))");
  ArgStructure d = parse_structure(R"x((inf andE1 "a" ((inf andI "a & (b | c)" ((inf atomic "a" ()) (assume "b | c"))))))x");
  Bindings b;
  REQUIRE(match(p, d, b));
  CHECK(b.formulas.at("A") == parse_formula("a"));
  CHECK(b.formulas.at("B") == parse_formula("b | c"));
  CHECK(b.structures.at("D2") == ArgStructure::assumption(parse_formula("b | c")));
  int next = 0;
  CHECK(instantiate_template(parse_structure_pattern("?D1"), b, next) == parse_structure(R"((inf atomic "a" ()))"));
  Bindings none;
  CHECK_FALSE(match(p, parse_structure(R"((inf andE1 "b" ((inf andI "a & b" ((assume "a") (assume "b"))))))"), none));
  CHECK_THROWS_AS(check_linear(parse_structure_pattern(R"((inf r "?A" (?D1 ?D1)))")), Error);
  CHECK(parse_formula_pattern("?A -> ?B | c").to_string() == "?A -> ?B | c");
}

TEST_CASE("pattern: anti-unification") {
  auto pair = [](const std::string& atom) {
    return StructurePair{parse_structure("(inf andE1 \"" + atom + "\" ((inf andI \"" + atom + " & b\" ((inf atomic \"" +
                                         atom + "\" ()) (assume \"b\")))))"),
                         parse_structure("(inf atomic \"" + atom + "\" ())")};
  };
  Generalization g = anti_unify({pair("a"), pair("c")});
  auto vars = variables_of(g.pattern);
  CHECK(vars.formulas.size() == 1);
  auto tv = variables_of(g.templ);
  CHECK(tv.literal_atomic_nodes == 1);
  Bindings b;
  CHECK(match(g.pattern, pair("d").first, b));
}

TEST_CASE("justification: phi_or examples") {
  auto x = fixtures::disjunction_detour();
  auto out = apply_justification(phi_or(), x.detour);
  REQUIRE(out);
  CHECK(structures_equal(*out, x.reduct));
  CHECK_FALSE(apply_justification(phi_or(), x.open));
  CHECK_FALSE(apply_justification(phi_or(), x.reduct));

  ArgStructure right = parse_structure(R"(
    (inf orE "c" ((inf orI2 "a | b" ((inf atomic "b" ())))
                  (inf atomic "c" ((assume "a" :label 1)))
                  (inf atomic "c" ((assume "b" :label 2))))
         :discharge (1 2)))");
  auto r = apply_justification(phi_or(), right);
  REQUIRE(r);
  CHECK(structures_equal(*r, parse_structure(R"((inf atomic "c" ((inf atomic "b" ()))))")));
}

TEST_CASE("justification: kappa1 and the contract") {
  Formula a = parse_formula("a");
  auto out = apply_justification(kappa1(a), em_axiom(a));
  REQUIRE(out);
  CHECK(structures_equal(
      *out, parse_structure(
                R"((inf orI2 "a | ~a" ((inf impI "~a" ((inf vac "bot" ((assume "a" :label 1)))) :discharge (1)))))")));
  ArgStructure one = parse_structure(R"((inf atomic "a" ()))");
  Justification bad = Justification::constant_map("bad", {{one, ArgStructure::assumption(a)}});
  CHECK_THROWS_AS(apply_justification(bad, one), ContractViolation);
  Justification wrong = Justification::constant_map("wrong", {{one, parse_structure(R"((inf atomic "b" ()))")}});
  CHECK_THROWS_AS(apply_justification(wrong, one), ContractViolation);
  CHECK_THROWS_AS(RSystem({{one, ArgStructure::assumption(a)}}), ContractViolation);
}

TEST_CASE("justification: outputs respect the contract on random detours") {
  auto g = testing::rng(8);
  for (int i = 0; i < 200; ++i) {
    auto s = testing::random_detour(g);
    auto out = apply_justification(phi_or(), s.d);
    REQUIRE(out);
    CHECK(conclusion(*out) == conclusion(s.d));
    auto in_open = open_assumptions(s.d);
    for (const auto& f : open_assumptions(*out))
      CHECK(std::find(in_open.begin(), in_open.end(), f) != in_open.end());
  }
}

TEST_CASE("justification: closure under substitution") {
  auto g = testing::rng(9);
  std::vector<std::pair<ArgStructure, InstanceMap>> samples;
  for (int i = 0; i < 100; ++i) {
    auto s = testing::random_detour(g);
    samples.emplace_back(s.d, s.sigma);
  }
  CHECK(check_closure(phi_or(), samples));
  // Both sides computed here without check_closure.
  for (const auto& [d, sigma] : samples) {
    auto lhs = apply_justification(phi_or(), instantiate(d, sigma));
    auto rhs = apply_justification(phi_or(), d);
    REQUIRE(lhs);
    REQUIRE(rhs);
    CHECK(structures_equal(*lhs, instantiate(*rhs, sigma)));
  }

  Justification broken = fixtures::broken_table();
  ArgStructure key = broken.entries()[0].first;
  InstanceMap sigma{{parse_formula("a"), parse_structure(R"((inf atomic "a" ()))")},
                    {parse_formula("b"), parse_structure(R"((inf atomic "b" ()))")}};
  CHECK_FALSE(check_closure(broken, {{key, sigma}}));

  Justification identity = Justification::schematic(
      "identity", {RewriteClause{parse_structure_pattern(R"((inf keep "?A" (?D1)))"),
                                 parse_structure_pattern(R"((inf keep "?A" (?D1)))")}});
  ArgStructure k = parse_structure(R"((inf keep "a" ((assume "a"))))");
  CHECK(check_closure(identity, {{k, {{parse_formula("a"), parse_structure(R"((inf atomic "a" ()))")}}}}));
}

TEST_CASE("justification: reduction search") {
  auto x = fixtures::disjunction_detour();
  StepSource src(x.steps);
  CHECK(reduces(src, x.detour, x.reduct, 1));
  CHECK(reduction_distance(src, x.detour, x.reduct, 5) == 1);
  CHECK(reduces(src, x.detour, x.detour, 0));
  CHECK_FALSE(reduces(src, x.detour, x.reduct, 0));
  CHECK_FALSE(reduces(StepSource{}, x.detour, x.reduct, 5));

  // Reflexive, and transitive under budget addition, on random chains.
  auto g = testing::rng(10);
  auto atoms = letter_atoms(2);
  StepSource detours(JustificationSet({phi_or(), phi_and(), phi_imp()}));
  for (int i = 0; i < 60; ++i) {
    ArgStructure a = testing::random_closed_with_detours(g, testing::random_formula(g, atoms, 2, false), atoms, 3);
    CHECK(reduces(detours, a, a, 0));
    auto step1 = one_step(detours, a);
    if (step1.empty()) continue;
    ArgStructure b = step1[testing::pick(g, step1.size())];
    auto step2 = one_step(detours, b);
    if (step2.empty()) continue;
    ArgStructure c = step2[testing::pick(g, step2.size())];
    CHECK(reduces(detours, a, b, 1));
    CHECK(reduces(detours, b, c, 1));
    CHECK(reduces(detours, a, c, 2));
  }
}

TEST_CASE("justification: graphs agree with direct application") {
  Formula a = parse_formula("a");
  RSystem sys = graph_of(kappa1(a), {em_axiom(a)});
  REQUIRE(sys.size() == 1);
  CHECK(structures_equal(sys.pairs()[0].second, *apply_justification(kappa1(a), em_axiom(a))));
  CHECK(graph_of(kappa1(a), {}).empty());
  CHECK_THROWS_AS(graph_of(kappa1(a), {em_axiom(parse_formula("b"))}), Error);

  auto g = testing::rng(11);
  std::vector<ArgStructure> domain;
  for (int i = 0; i < 30; ++i) {
    auto s = testing::random_detour(g);
    domain.push_back(instantiate(s.d, s.sigma));
  }
  RSystem graph = graph_of(phi_or(), domain);
  StepSource by_graph(graph);
  StepSource by_function(JustificationSet({phi_or()}));
  for (const auto& d : domain) {
    ArgStructure direct = *apply_justification(phi_or(), d);
    CHECK(reduces(by_graph, d, direct, 1));
    auto from_graph = one_step(by_graph, d);
    REQUIRE(from_graph.size() >= 1);
    bool found = false;
    for (const auto& r : from_graph) found = found || structures_equal(r, direct);
    CHECK(found);
    CHECK(reduces(by_function, d, direct, 1));
  }
}

TEST_CASE("justification: schematicity") {
  CHECK(is_schematic(phi_or()));
  CHECK(is_schematic(kappa1(parse_formula("a"))));
  AtomicBase b = parse_base("-> a\n");
  auto closed = synthesize(BaseModel(b), parse_formula("a"));
  REQUIRE(closed);
  CHECK_FALSE(is_schematic(kappa2(parse_formula("a"), *closed, b.id())));
  CHECK_FALSE(is_schematic(choice_justification(parse_formula("a"), {AtomicBase{}, b})));

  // A table whose pairs generalize to a rule is schematic; one that drops in
  // a fixed atomic derivation is not.
  auto detour = [](const std::string& x, const std::string& y) {
    return StructurePair{parse_structure("(inf andE1 \"" + x + "\" ((inf andI \"" + x + " & " + y + "\" ((assume \"" +
                                         x + "\") (assume \"" + y + "\")))))"),
                         parse_structure("(assume \"" + x + "\")")};
  };
  CHECK(is_schematic(Justification::constant_map("t1", {detour("a", "b"), detour("c", "d")})));
}

TEST_CASE("justification: sets and names") {
  JustificationSet s({phi_or(), phi_and()});
  CHECK(s.members()[0].name() == "phi_and");
  s.insert(phi_or());
  CHECK(s.size() == 2);
  CHECK(s.find("phi_or"));
  CHECK_THROWS_AS(s.insert(Justification::constant_map("phi_or", {})), Error);
  CHECK_THROWS_AS(Justification::constant_map("1bad", {}), Error);
  CHECK(StepSource(s).fingerprint() == StepSource(JustificationSet({phi_and(), phi_or()})).fingerprint());
  CHECK(StepSource(s).fingerprint() != StepSource(JustificationSet({phi_or()})).fingerprint());
}

TEST_CASE("justification: rule files") {
  auto set = parse_rules(R"(# detours
phi_and: (inf andE1 "?A" ((inf andI "?A & ?B" ((meta ?D1 "?A") (meta ?D2 "?B"))))) => ?D1
phi_and: (inf andE2 "?B" ((inf andI "?A & ?B" ((meta ?D1 "?A") (meta ?D2 "?B")))))
  => ?D2
const tab: (inf r "a" ((inf atomic "a" ()))) => (inf atomic "a" ())
)");
  REQUIRE(set.size() == 2);
  CHECK(set.find("phi_and")->clauses().size() == 2);
  CHECK(set.find("phi_and")->text() == phi_and().text());
  CHECK(set.find("tab")->kind() == Justification::Kind::ConstantMap);
  auto again = parse_rules(render_rules(set));
  REQUIRE(again.size() == set.size());
  for (std::size_t i = 0; i < set.size(); ++i) CHECK(again.members()[i].text() == set.members()[i].text());

  try {
    parse_rules("ok: ?D1 => ?D1\nbad: (inf r \"a &\" ()) => ?D1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse_rules("x: ?D1 ?D2\n"), ParseError);
  CHECK_THROWS_AS(parse_rules("x: ?D1 => ?D2\n"), Error);
}
