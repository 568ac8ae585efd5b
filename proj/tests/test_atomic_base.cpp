#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "ptslab/atomic_base.hpp"
#include "ptslab/errors.hpp"
#include "support.hpp"

using namespace ptslab;

TEST_CASE("atomic_base: closure examples") {
  AtomicBase b = parse_base("-> p\np -> q\n");
  CHECK(atomic_closure(b, {}) == std::set<Atom>{Atom("p"), Atom("q")});
  CHECK(atomic_closure(AtomicBase{}, {Atom("a")}) == std::set<Atom>{Atom("a")});
  CHECK(derives(b, {}, Atom("q")));
  CHECK_FALSE(derives(AtomicBase{}, {}, Atom("p")));
  CHECK(derives(b, {Atom("a")}, Atom("a")));
}

TEST_CASE("atomic_base: closure agrees with the naive fixpoint") {
  auto g = testing::rng(2);
  auto atoms = letter_atoms(4);
  for (int i = 0; i < 2000; ++i) {
    AtomicBase b = testing::random_base(g, atoms, 6, false);
    std::set<Atom> assumptions;
    for (const auto& a : atoms)
      if (testing::coin(g, 0.25)) assumptions.insert(a);
    auto got = atomic_closure(b, assumptions);
    CHECK(got == testing::naive_closure(b, assumptions));
    for (const auto& a : atoms) {
      auto d = atomic_derivation(b, assumptions, a);
      CHECK(d.has_value() == (got.count(a) > 0));
      if (d) CHECK(check_derivation(b, assumptions, *d));
    }
  }
}

TEST_CASE("atomic_base: derivation example") {
  AtomicBase b = parse_base("-> p\np -> q\n");
  auto d = atomic_derivation(b, {}, Atom("q"));
  REQUIRE(d);
  CHECK(d->size() == 2);
  REQUIRE(d->premises.size() == 1);
  CHECK(d->premises[0].conclusion == Atom("p"));
  auto leaf = atomic_derivation(b, {Atom("a")}, Atom("a"));
  REQUIRE(leaf);
  CHECK(leaf->is_assumption());
  CHECK_FALSE(check_derivation(AtomicBase{}, {}, *d));
}

TEST_CASE("atomic_base: consistency") {
  CHECK_FALSE(is_consistent(parse_base("-> p\np -> bot\n")));
  CHECK(is_consistent(AtomicBase{}));
  CHECK(is_consistent(parse_base("-> p\np -> q\n")));
}

TEST_CASE("atomic_base: enumeration") {
  EnumerationOptions all{.max_rules = 1, .consistent_only = false};
  auto bases = enumerate_bases({Atom("p")}, all);
  std::set<std::string> got;
  for (const auto& b : bases) got.insert(b.canonical_text());
  CHECK(got == std::set<std::string>{"{}", "{-> p}", "{p -> p}", "{-> bot}", "{p -> bot}"});
  auto none = enumerate_bases({}, EnumerationOptions{.max_rules = 3});
  REQUIRE(none.size() == 1);
  CHECK(none[0].empty());

  for (std::size_t k = 0; k <= 2; ++k)
    for (std::size_t m = 0; m <= 3; ++m) {
      CAPTURE(k);
      CAPTURE(m);
      auto list = enumerate_bases(letter_atoms(k), EnumerationOptions{.max_rules = m, .consistent_only = false});
      CHECK(list.size() == count_bases(k, m));
      std::set<std::string> ids;
      for (const auto& b : list) ids.insert(b.canonical_text());
      CHECK(ids.size() == list.size());
      auto consistent = enumerate_bases(letter_atoms(k), EnumerationOptions{.max_rules = m});
      for (const auto& b : consistent) CHECK(is_consistent(b));
    }
  CHECK_THROWS_AS(enumerate_bases(letter_atoms(3), EnumerationOptions{.max_rules = 4, .cap = 100}), ResourceError);
}

TEST_CASE("atomic_base: parse errors") {
  try {
    parse_base("-> p\np q\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse_base("bot -> p\n"), ParseError);
  CHECK(parse_base("# comment\n\n  -> p   # trailing\n").rules().size() == 1);
  CHECK(parse_base("q p -> r\n").canonical_text() == "{p q -> r}");
}
