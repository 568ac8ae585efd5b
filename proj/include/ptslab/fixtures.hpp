#pragma once

#include <vector>

#include "ptslab/argument.hpp"
#include "ptslab/atomic_base.hpp"
#include "ptslab/justification.hpp"

namespace ptslab::fixtures {

/// A disjunction elimination from the open assumption `a | b` to `c`, with
/// minor premises `[a] / c` and `[b] / c` by atomic rules.
struct DisjunctionDetour {
  ArgStructure open;          // orE with the major premise open
  ArgStructure minor_left;    // [a] / c, detached
  ArgStructure minor_right;   // [b] / c, detached
  ArgStructure detour;        // major premise replaced by orI1 over |- a
  ArgStructure reduct;        // |- a grafted onto the left minor premise
  JustificationSet steps;     // phi_or with the minor premises' sets
  JustificationSet minor_left_steps;
  JustificationSet minor_right_steps;
  std::vector<AtomicBase> bases;  // three bases deriving c from a or from b
};
DisjunctionDetour disjunction_detour();

/// The rule from r to q | s justified by a table sending the chain
/// |- p / r / q | s to orI1 over |- p / q.
struct ChainExample {
  ArgStructure open;    // p / r / q | s with p open
  ArgStructure closed;  // the same chain over |- p
  Justification phi;
  AtomicBase base;      // {-> p; p -> q}
  AtomicBase empty;
};
ChainExample chain_example();

/// A table with an entry for an open structure but none for its instances.
Justification broken_table();

}  // namespace ptslab::fixtures
