#include "ebref/po.hpp"

#include <algorithm>
#include <stdexcept>

#include "ebref/state_space.hpp"

namespace ebref {
namespace {

bool is_init(const RefinementStep& step, const EventDecl& e1) {
  return &e1 == &step.concrete->init || e1.name == step.concrete->init.name;
}

// before-after predicate of the abstract counterpart; skip for new events
bool abstract_matches(const RefinementStep& step, const EventDecl& e1,
                      const Valuation& v, const Valuation& vp) {
  auto it = step.f.find(e1.name);
  if (it == step.f.end()) return v == vp;  // new event refines skip
  const EventDecl* e0 = step.abstract->find_event(it->second);
  MachineEnv env(*step.abstract, &v, &vp);
  return eval_bool(e0->body, env);
}

// gluing invariant J(v,w): the concrete machine's invariant over both scopes
bool gluing_holds(const RefinementStep& step, const Valuation& v,
                  const Valuation& w) {
  MachineEnv ae(*step.abstract, &v, nullptr);
  MachineEnv ce(*step.concrete, &w, nullptr);
  JointEnv env(ae, ce);
  return eval_bool(step.concrete->invariant, env);
}

// enumeration domains per scope; AllStates is the full cartesian space
struct Domains {
  std::vector<Valuation> abs_states;
  std::vector<Valuation> conc_states;
  std::vector<Valuation> conc_space;  // after-states always range over all
};

Domains domains_for(const RefinementStep& step, PoScope scope) {
  Domains d;
  ValuationSpace as(*step.abstract);
  ValuationSpace cs(*step.concrete);
  for (std::int64_t i = 0; i < cs.size(); ++i) d.conc_space.push_back(cs.at(i));
  if (scope == PoScope::AllStates) {
    for (std::int64_t i = 0; i < as.size(); ++i) d.abs_states.push_back(as.at(i));
    d.conc_states = d.conc_space;
  } else {
    d.abs_states = build_lts(*step.abstract).states;
    d.conc_states = build_lts(*step.concrete).states;
  }
  return d;
}

// The abstract invariant constrains the premise only when it speaks about the
// abstract machine's own variables; in a chain, an intermediate machine's
// invariant is a gluing predicate for the level below and is dropped here
// (which only strengthens the obligations).
bool abstract_inv_holds(const RefinementStep& step, const Valuation& v) {
  if (!step.abstract->invariant_local) return true;
  MachineEnv ae(*step.abstract, &v, nullptr);
  return eval_bool(step.abstract->invariant, ae);
}

// all (v,w) with I(v), J(v,w), H(w)
template <typename Fn>
void for_linked_enabled(const RefinementStep& step, const EventDecl& e1,
                        const Domains& d, Fn&& fn) {
  for (const auto& v : d.abs_states) {
    if (!abstract_inv_holds(step, v)) continue;
    for (const auto& w : d.conc_states) {
      if (!gluing_holds(step, v, w)) continue;
      if (!eval_guard(*step.concrete, e1, w)) continue;
      if (!fn(v, w)) return;
    }
  }
}

}  // namespace

std::string to_string(Obligation o) {
  switch (o) {
    case Obligation::FisRef: return "FIS_REF";
    case Obligation::GrdRef: return "GRD_REF";
    case Obligation::InvRef: return "INV_REF";
    case Obligation::InvRefInit: return "INV_REF_INIT";
    case Obligation::WfdRefConvergent: return "WFD_REF_convergent";
    case Obligation::WfdRefAnticipated: return "WFD_REF_anticipated";
  }
  return "?";
}

PoVerdict check_fis_ref(const RefinementStep& step, const EventDecl& e1,
                        PoScope scope) {
  PoVerdict v{Obligation::FisRef, e1.name, true, std::nullopt};
  Domains d = domains_for(step, scope);
  if (is_init(step, e1)) {
    for (const auto& wp : d.conc_space)
      if (eval_init(*step.concrete, wp)) return v;
    v.pass = false;
    v.witness = PoWitness{{}, {}, std::nullopt, "initialisation has no solution"};
    return v;
  }
  for_linked_enabled(step, e1, d, [&](const Valuation& va, const Valuation& w) {
    for (const auto& wp : d.conc_space)
      if (eval_body(*step.concrete, e1, w, wp)) return true;
    v.pass = false;
    v.witness = PoWitness{va, w, std::nullopt, "no after-state satisfies the "
                                               "before-after predicate"};
    return false;
  });
  return v;
}

PoVerdict check_grd_ref(const RefinementStep& step, const EventDecl& e1,
                        PoScope scope) {
  auto it = step.f.find(e1.name);
  if (it == step.f.end())
    throw std::invalid_argument("GRD_REF: event '" + e1.name +
                                "' refines nothing");
  const EventDecl* e0 = step.abstract->find_event(it->second);
  PoVerdict v{Obligation::GrdRef, e1.name, true, std::nullopt};
  Domains d = domains_for(step, scope);
  for_linked_enabled(step, e1, d, [&](const Valuation& va, const Valuation& w) {
    if (eval_guard(*step.abstract, *e0, va)) return true;
    v.pass = false;
    v.witness = PoWitness{va, w, std::nullopt,
                          "abstract guard of '" + e0->name + "' is false"};
    return false;
  });
  return v;
}

PoVerdict check_inv_ref(const RefinementStep& step, const EventDecl& e1,
                        PoScope scope) {
  Domains d = domains_for(step, scope);
  if (is_init(step, e1)) {
    PoVerdict v{Obligation::InvRefInit, e1.name, true, std::nullopt};
    ValuationSpace as(*step.abstract);
    std::vector<Valuation> abs_inits;
    for (std::int64_t i = 0; i < as.size(); ++i) {
      Valuation vp = as.at(i);
      if (eval_init(*step.abstract, vp)) abs_inits.push_back(vp);
    }
    for (const auto& wp : d.conc_space) {
      if (!eval_init(*step.concrete, wp)) continue;
      bool matched = false;
      for (const auto& vp : abs_inits)
        if (gluing_holds(step, vp, wp)) {
          matched = true;
          break;
        }
      if (!matched) {
        v.pass = false;
        v.witness = PoWitness{{}, wp, std::nullopt,
                              "no abstract initial state is linked to this "
                              "concrete initial state"};
        break;
      }
    }
    return v;
  }

  PoVerdict v{Obligation::InvRef, e1.name, true, std::nullopt};
  ValuationSpace as(*step.abstract);
  std::vector<Valuation> abs_space;
  for (std::int64_t i = 0; i < as.size(); ++i) abs_space.push_back(as.at(i));
  for_linked_enabled(step, e1, d, [&](const Valuation& va, const Valuation& w) {
    for (const auto& wp : d.conc_space) {
      if (!eval_body(*step.concrete, e1, w, wp)) continue;
      bool matched = false;
      for (const auto& vp : abs_space)
        if (abstract_matches(step, e1, va, vp) && gluing_holds(step, vp, wp)) {
          matched = true;
          break;
        }
      if (!matched) {
        v.pass = false;
        v.witness = PoWitness{va, w, wp,
                              "no abstract after-state re-establishes the "
                              "invariant"};
        return false;
      }
    }
    return true;
  });
  return v;
}

PoVerdict check_wfd_ref(const RefinementStep& step, const EventDecl& e1,
                        PoScope scope) {
  if (e1.status == EventStatus::Ordinary)
    throw std::invalid_argument("WFD_REF: event '" + e1.name +
                                "' is neither anticipated nor convergent");
  if (!step.concrete->variant)
    throw std::invalid_argument("WFD_REF: machine '" + step.concrete->name +
                                "' declares no variant");
  bool convergent = e1.status == EventStatus::Convergent;
  PoVerdict v{convergent ? Obligation::WfdRefConvergent
                         : Obligation::WfdRefAnticipated,
              e1.name, true, std::nullopt};
  const Expr& variant = *step.concrete->variant;
  Domains d = domains_for(step, scope);
  for_linked_enabled(step, e1, d, [&](const Valuation& va, const Valuation& w) {
    MachineEnv we(*step.concrete, &w, nullptr);
    std::int64_t before = eval(variant, we);
    if (before < 0) {
      v.pass = false;
      v.witness = PoWitness{va, w, std::nullopt,
                            "variant is negative (" + std::to_string(before) +
                                ")"};
      return false;
    }
    for (const auto& wp : d.conc_space) {
      if (!eval_body(*step.concrete, e1, w, wp)) continue;
      MachineEnv wpe(*step.concrete, &wp, nullptr);
      std::int64_t after = eval(variant, wpe);
      bool ok = convergent ? after < before : after <= before;
      if (!ok) {
        v.pass = false;
        v.witness = PoWitness{
            va, w, wp,
            "variant " + std::string(convergent ? "does not decrease"
                                                : "increases") +
                " (" + std::to_string(before) + " -> " +
                std::to_string(after) + ")"};
        return false;
      }
    }
    return true;
  });
  return v;
}

std::vector<PoVerdict> check_all_pos(const RefinementStep& step,
                                     PoScope scope) {
  std::vector<PoVerdict> out;
  out.push_back(check_fis_ref(step, step.concrete->init, scope));
  out.push_back(check_inv_ref(step, step.concrete->init, scope));
  for (const auto& e : step.concrete->events) {
    out.push_back(check_fis_ref(step, e, scope));
    if (step.f.count(e.name)) out.push_back(check_grd_ref(step, e, scope));
    out.push_back(check_inv_ref(step, e, scope));
    if (e.status != EventStatus::Ordinary)
      out.push_back(check_wfd_ref(step, e, scope));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const PoVerdict& a, const PoVerdict& b) {
                     if (a.event != b.event) return a.event < b.event;
                     return to_string(a.obligation) < to_string(b.obligation);
                   });
  return out;
}

bool all_pass(const std::vector<PoVerdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const PoVerdict& v) { return v.pass; });
}

}  // namespace ebref
