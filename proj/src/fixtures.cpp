#include "ptslab/fixtures.hpp"

namespace ptslab::fixtures {

DisjunctionDetour disjunction_detour() {
  auto steps_left = JustificationSet({phi_and()});
  auto steps_right = JustificationSet({phi_imp()});
  return DisjunctionDetour{
      .open = parse_structure(R"(
    (inf orE "c" ((assume "a | b")
                  (inf atomic "c" ((assume "a" :label 1)))
                  (inf atomic "c" ((assume "b" :label 2))))
         :discharge (1 2)))"),
      .minor_left = parse_structure(R"((inf atomic "c" ((assume "a"))))"),
      .minor_right = parse_structure(R"((inf atomic "c" ((assume "b"))))"),
      .detour = parse_structure(R"(
    (inf orE "c" ((inf orI1 "a | b" ((inf atomic "a" ())))
                  (inf atomic "c" ((assume "a" :label 1)))
                  (inf atomic "c" ((assume "b" :label 2))))
         :discharge (1 2)))"),
      .reduct = parse_structure(R"((inf atomic "c" ((inf atomic "a" ()))))"),
      .steps = JustificationSet({phi_or()}).merged(steps_left).merged(steps_right),
      .minor_left_steps = steps_left,
      .minor_right_steps = steps_right,
      .bases = {parse_base("-> a\na -> c\nb -> c\n"), parse_base("-> b\na -> c\nb -> c\n"),
                parse_base("-> a\n-> b\na -> c\nb -> c\n")},
  };
}

ChainExample chain_example() {
  ArgStructure closed = parse_structure(R"((inf rqs "q | s" ((inf pr "r" ((inf atomic "p" ()))))))");
  ArgStructure target = parse_structure(R"((inf orI1 "q | s" ((inf atomic "q" ((inf atomic "p" ()))))))");
  return ChainExample{
      .open = parse_structure(R"((inf rqs "q | s" ((inf pr "r" ((assume "p"))))))"),
      .closed = closed,
      .phi = Justification::constant_map("phi_chain", {{closed, target}}),
      .base = parse_base("-> p\np -> q\n"),
      .empty = parse_base(""),
  };
}

Justification broken_table() {
  return Justification::constant_map(
      "broken", {{parse_structure(R"((inf andE1 "a" ((inf andI "a & b" ((assume "a") (assume "b"))))))"),
                  parse_structure(R"((assume "a"))")}});
}

}  // namespace ptslab::fixtures
