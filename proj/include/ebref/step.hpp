#ifndef EBREF_STEP_HPP
#define EBREF_STEP_HPP

#include <set>
#include <string>
#include <vector>

#include "ebref/ast.hpp"
#include "ebref/csp.hpp"

namespace ebref {

/// One refinement step: a machine pair with the event map induced by the
/// refines clauses and the status classes of both machines.
struct RefinementStep {
  const Machine* abstract = nullptr;
  const Machine* concrete = nullptr;
  EventMap f;                        // concrete event name -> abstract event name
  std::set<std::string> new_events;  // concrete events without a refines clause

  // status classes: anticipated / convergent / remaining (ordinary)
  std::set<std::string> a0, c0, r0;  // abstract machine
  std::set<std::string> a1, c1, r1;  // concrete machine
};

struct StructuralViolation {
  int rule = 0;  // 1..4
  std::string detail;
};

/// Build the step record from refines annotations and statuses. Throws
/// std::invalid_argument when the machines are not linked or a refines clause
/// names a non-event of the abstract machine.
RefinementStep induced_event_map(const Machine& abstract,
                                 const Machine& concrete);

/// Check the event-class discipline:
///   1. every abstract event is refined by some concrete event
///   2. new events are anticipated or convergent
///   3. refinements of anticipated events are anticipated or convergent
///   4. refinements of convergent or remaining events are exactly the
///      remaining concrete events
/// Violations are data, not errors; empty result means well-formed.
std::vector<StructuralViolation> validate_structure(const RefinementStep& step);

}  // namespace ebref

#endif
