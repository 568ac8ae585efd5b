#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "ptslab/argument.hpp"
#include "ptslab/errors.hpp"
#include "ptslab/fixtures.hpp"
#include "support.hpp"

using namespace ptslab;

namespace {

// Renames labels through `perm`, rebuilding the tree node by node.
ArgStructure relabel(const ArgStructure& d, const std::map<int, int>& perm) {
  auto ren = [&](int l) { return perm.count(l) ? perm.at(l) : l; };
  if (d.is_empty()) return d;
  if (d.is_assumption())
    return ArgStructure::assumption(d.formula(), d.label() ? std::optional<int>(ren(*d.label())) : std::nullopt);
  std::vector<ArgStructure> ps;
  bool zero = d.premises().size() == 1 && d.premises()[0].is_empty();
  if (!zero)
    for (const auto& p : d.premises()) ps.push_back(relabel(p, perm));
  std::vector<int> ds;
  for (int l : d.discharges()) ds.push_back(ren(l));
  return ArgStructure::inference(d.tag(), d.formula(), ps, ds);
}

std::vector<int> labels_of(const ArgStructure& d) {
  std::vector<int> out;
  if (d.is_inference()) {
    for (int l : d.discharges()) out.push_back(l);
    for (const auto& p : d.premises()) {
      auto sub = labels_of(p);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  return out;
}

const char* kNotA = R"((inf impI "~a" ((inf vac "bot" ((assume "a" :label 1)))) :discharge (1)))";

}  // namespace

TEST_CASE("argument: analysis examples") {
  auto leaf = analyze(ArgStructure::assumption(parse_formula("a")));
  CHECK(leaf.conclusion == parse_formula("a"));
  CHECK(leaf.open_assumptions == std::vector<Formula>{parse_formula("a")});
  CHECK_FALSE(leaf.closed);

  auto neg = analyze(parse_structure(kNotA));
  CHECK(neg.conclusion == parse_formula("~a"));
  CHECK(neg.open_assumptions.empty());
  CHECK(neg.closed);

  auto x = fixtures::disjunction_detour();
  auto open = analyze(x.open);
  CHECK(open.open_assumptions == std::vector<Formula>{parse_formula("a | b")});
}

TEST_CASE("argument: validate rejects bad discharge") {
  CHECK_THROWS_AS(validate(parse_structure(R"((assume "a" :label 1))")), MalformedStructure);
  CHECK_THROWS_AS(validate(parse_structure(
                      R"((inf impI "a -> a" ((inf impI "a -> a" ((assume "a" :label 1)) :discharge (1))) :discharge (1)))")),
                  MalformedStructure);
  CHECK_THROWS_AS(validate(parse_structure(R"((inf r "a" ((assume "a" :label 1)) :discharge (1 1)))")), MalformedStructure);
  CHECK_THROWS_AS(validate(ArgStructure::empty()), MalformedStructure);
  CHECK_NOTHROW(validate(parse_structure(kNotA)));
}

TEST_CASE("argument: instantiate and substitute examples") {
  ArgStructure closed = parse_structure(kNotA);
  CHECK(instantiate(closed, {}) == closed);

  auto x = fixtures::disjunction_detour();
  ArgStructure intro = parse_structure(R"((inf orI1 "a | b" ((inf atomic "a" ()))))");
  InstanceMap s{{parse_formula("a | b"), intro}};
  CHECK(structures_equal(instantiate(x.open, s), x.detour));
  CHECK_THROWS_AS(instantiate(x.open, {}), MissingMapping);

  CHECK(structures_equal(substitute(x.detour, {}, x.reduct), x.reduct));
  CHECK(structures_equal(substitute(x.open, {0}, intro), x.detour));
  CHECK_THROWS_AS(substitute(x.open, {0}, closed), ConclusionMismatch);
  ArgStructure stray = parse_structure(R"((inf atomic "c" ((assume "d"))))");
  CHECK_THROWS_AS(substitute(x.detour, {1}, stray), AssumptionEscape);
}

TEST_CASE("argument: substitute re-attaches assumptions to the binder in scope") {
  ArgStructure d = parse_structure(
      R"((inf impI "a -> b" ((inf r "b" ((assume "a" :label 1) (assume "c")))) :discharge (1)))");
  ArgStructure repl = parse_structure(R"((inf s "b" ((assume "a"))))");
  ArgStructure out = substitute(d, {0}, repl);
  CHECK(is_closed(detach(subtree_at(out, {0}))) == false);
  CHECK(analyze(out).open_assumptions.empty());
}

TEST_CASE("argument: canonicity") {
  CHECK(is_canonical(parse_structure(R"((inf orI1 "a | b" ((inf atomic "a" ()))))")));
  CHECK(is_canonical(parse_structure(kNotA)));
  CHECK_FALSE(is_canonical(ArgStructure::assumption(parse_formula("a"))));
  CHECK_FALSE(is_canonical(parse_structure(R"((inf atomic "a" ()))")));
  CHECK_FALSE(is_canonical(parse_structure(R"((inf orI2 "a | b" ((inf atomic "a" ()))))")));
  CHECK_FALSE(is_canonical(parse_structure(R"((inf andI "a & b" ((inf atomic "b" ()) (inf atomic "a" ()))))")));
}

TEST_CASE("argument: alpha-equivalence") {
  ArgStructure d = parse_structure(kNotA);
  ArgStructure e = parse_structure(R"((inf impI "~a" ((inf vac "bot" ((assume "a" :label 7)))) :discharge (7)))");
  CHECK(structures_equal(d, e));
  CHECK_FALSE(d == e);
  CHECK(canonical_key(d) == canonical_key(e));
  ArgStructure s = parse_structure(R"((inf atomic "a" ()))");
  CHECK_FALSE(structures_equal(ArgStructure::inference("orI1", parse_formula("a | a"), {s}),
                               ArgStructure::inference("orI2", parse_formula("a | a"), {s})));
}

TEST_CASE("argument: random relabelling round trip") {
  auto g = testing::rng(6);
  for (int i = 0; i < 400; ++i) {
    auto sample = testing::random_detour(g);
    ArgStructure d = sample.d;
    std::vector<int> ls = labels_of(d);
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    std::vector<int> targets(ls.size());
    std::iota(targets.begin(), targets.end(), 40);
    std::shuffle(targets.begin(), targets.end(), g);
    std::map<int, int> perm, back;
    for (std::size_t k = 0; k < ls.size(); ++k) {
      perm[ls[k]] = targets[k];
      back[targets[k]] = ls[k];
    }
    ArgStructure r = relabel(d, perm);
    CHECK(structures_equal(d, r));
    CHECK(canonical_key(d) == canonical_key(r));
    CHECK(relabel(r, back) == d);
    CHECK(structures_equal(canonical_labels(d), d));
    int next = 100;
    ArgStructure f = freshen(d, next);
    CHECK(structures_equal(f, d));
    CHECK(next >= 100);
    CHECK(parse_structure(render_structure(d)) == d);
    CHECK(parse_structure(render_structure_pretty(d)) == d);
    CHECK(analyze(d).open_assumptions == analyze(r).open_assumptions);
  }
}

TEST_CASE("argument: instantiation closes every detour sample") {
  auto g = testing::rng(7);
  for (int i = 0; i < 300; ++i) {
    auto sample = testing::random_detour(g);
    ArgStructure inst = instantiate(sample.d, sample.sigma);
    CHECK(is_closed(inst));
    CHECK(conclusion(inst) == conclusion(sample.d));
    CHECK(inst.size() >= sample.d.size());
  }
}

TEST_CASE("argument: positions and base derivations") {
  ArgStructure d = parse_structure(R"((inf atomic "q" ((inf atomic "p" ()))))");
  auto pos = postorder_positions(d);
  REQUIRE(pos.size() == 2);
  CHECK(pos[0] == Position{0});
  CHECK(pos[1] == Position{});
  AtomicBase b = parse_base("-> p\np -> q\n");
  CHECK(is_base_derivation(d, b));
  CHECK_FALSE(is_base_derivation(d, AtomicBase{}));
  CHECK(structures_equal(from_atomic_derivation(*atomic_derivation(b, {}, Atom("q"))), d));
  CHECK(max_label(parse_structure(kNotA)) == 1);
  CHECK(max_label(d) == -1);
}

TEST_CASE("argument: s-expression errors") {
  try {
    parse_structure("(inf atomic \"p\"\n  ((assume \"q\" :lbl 1)))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse_structure("(inf atomic \"p\""), ParseError);
  CHECK_THROWS_AS(parse_structure("(assume \"p &\")"), ParseError);
}
