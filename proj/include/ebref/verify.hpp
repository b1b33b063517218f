#ifndef EBREF_VERIFY_HPP
#define EBREF_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "ebref/po.hpp"
#include "ebref/state_space.hpp"
#include "ebref/step.hpp"
#include "ebref/tdi.hpp"

namespace ebref {

/// Everything the checker knows about one refinement step: structural rules,
/// proof obligations, and the semantic certificates they are meant to imply.
struct StepReport {
  RefinementStep step;
  std::vector<StructuralViolation> structure;
  std::vector<PoVerdict> pos;
  ConsistencyReport abstract_consistency;
  ConsistencyReport concrete_consistency;

  // semantic side; absent when rule 1 fails (the inverse rename is undefined)
  std::optional<TdiVerdict> simulation;   // f^-1(M0) ||| RUN_N against M1
  std::optional<CaVerdict> ca_step;       // M1 against (C1, R1)
  std::optional<CaVerdict> ca_collected;  // M1 against (f^-1(C0) u C1, f^-1(R0))

  // POs and structure pass but a semantic certificate fails; must never happen
  bool soundness_alarm = false;

  bool refines() const {
    return structure.empty() && all_pass(pos);
  }
};

struct CheckOptions {
  BuildLimits limits;
  TdiOptions tdi;
  PoScope scope = PoScope::AllStates;
};

/// Full step check: structure, obligations, and the TDI/CA certificates.
StepReport check_step(const Machine& abstract, const Machine& concrete,
                      const CheckOptions& opts = {});

/// Chain-level bookkeeping: composed event maps, the collected sets of new
/// and convergent events over the final alphabet, and the end conditions.
struct ChainAnalysis {
  std::vector<RefinementStep> steps;  // machines owned by the chain
  // g[i] maps final-machine labels down to the alphabet of machine i
  // (partial); g[n] is the identity for an n+1-machine chain
  std::vector<EventMap> g;
  std::vector<std::set<std::string>> new_parts;  // per level, final labels
  std::vector<std::set<std::string>> con_parts;
  std::set<std::string> new_events;  // union of new_parts
  std::set<std::string> con_events;  // union of con_parts
  std::vector<std::string> errors;   // end conditions, partition overlaps
  bool ok() const { return errors.empty(); }
};

ChainAnalysis analyze_chain(const RefinementChain& chain);

struct ChainReport {
  ChainAnalysis analysis;
  std::vector<StepReport> steps;
  // final machine with its new events hidden, renamed to the initial alphabet,
  // against the initial machine
  std::optional<TdiVerdict> collected;
  // iterated inverse-rename/interleave form against the final machine
  std::optional<TdiVerdict> intermediate;
  // no reachable cycle of new events in the final machine
  std::optional<CycleVerdict> convergence;

  bool pass() const;
};

/// End-to-end chain check: every step plus the collected-form refinement of
/// the initial machine by the fully refined one.
ChainReport check_chain(const RefinementChain& chain,
                        const CheckOptions& opts = {});

}  // namespace ebref

#endif
