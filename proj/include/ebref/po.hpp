#ifndef EBREF_PO_HPP
#define EBREF_PO_HPP

#include <optional>
#include <string>
#include <vector>

#include "ebref/eval.hpp"
#include "ebref/step.hpp"

namespace ebref {

enum class Obligation {
  FisRef,
  GrdRef,
  InvRef,
  InvRefInit,
  WfdRefConvergent,
  WfdRefAnticipated,
};

std::string to_string(Obligation o);

/// Obligations quantify over every type-correct linked pair by default; the
/// reachable-only mode is a diagnostic aid and never decides refinement.
enum class PoScope { AllStates, ReachableOnly };

struct PoWitness {
  Valuation abstract_state;                 // v (empty for init obligations)
  Valuation concrete_state;                 // w (the after-state for init)
  std::optional<Valuation> concrete_after;  // w' when the obligation has one
  std::string detail;
};

struct PoVerdict {
  Obligation obligation;
  std::string event;
  bool pass = true;
  std::optional<PoWitness> witness;
};

/// Feasibility: every linked enabled state has an after-state.
PoVerdict check_fis_ref(const RefinementStep& step, const EventDecl& e1,
                        PoScope scope = PoScope::AllStates);

/// Guard strengthening: where the concrete event is enabled, the refined
/// abstract event is enabled too.
PoVerdict check_grd_ref(const RefinementStep& step, const EventDecl& e1,
                        PoScope scope = PoScope::AllStates);

/// Simulation: every concrete transition is matched by an abstract transition
/// (skip, for new events) re-establishing the gluing invariant. Pass the
/// distinguished init event for the initialisation variant.
PoVerdict check_inv_ref(const RefinementStep& step, const EventDecl& e1,
                        PoScope scope = PoScope::AllStates);

/// Variant discipline: convergent events strictly decrease the variant,
/// anticipated events do not increase it; the variant stays non-negative.
PoVerdict check_wfd_ref(const RefinementStep& step, const EventDecl& e1,
                        PoScope scope = PoScope::AllStates);

/// All applicable obligations for every event plus init, sorted by event name
/// then obligation name.
std::vector<PoVerdict> check_all_pos(const RefinementStep& step,
                                     PoScope scope = PoScope::AllStates);

bool all_pass(const std::vector<PoVerdict>& verdicts);

}  // namespace ebref

#endif
