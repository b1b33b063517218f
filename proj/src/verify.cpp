#include "ebref/verify.hpp"

#include <algorithm>
#include <stdexcept>

namespace ebref {
namespace {

std::set<std::string> event_names(const Machine& m) {
  std::set<std::string> out;
  for (const auto& e : m.events) out.insert(e.name);
  return out;
}

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) {
    if (!out.empty()) out += ",";
    out += x;
  }
  return "{" + out + "}";
}

}  // namespace

StepReport check_step(const Machine& abstract, const Machine& concrete,
                      const CheckOptions& opts) {
  StepReport r;
  r.step = induced_event_map(abstract, concrete);
  r.structure = validate_structure(r.step);
  r.pos = check_all_pos(r.step, opts.scope);

  BuiltLts ba = build_lts(abstract, opts.limits);
  BuiltLts bc = build_lts(concrete, opts.limits);
  r.abstract_consistency = ba.consistency;
  r.concrete_consistency = bc.consistency;

  bool rule1_ok =
      std::none_of(r.structure.begin(), r.structure.end(),
                   [](const StructuralViolation& v) { return v.rule == 1; });
  if (rule1_ok) {
    Lts spec = interleave_run(rename_inverse(ba.lts, r.step.f),
                              r.step.new_events);
    r.simulation = tdi_refines(spec, bc.lts, opts.tdi);
  }

  r.ca_step = check_ca(bc.lts, r.step.c1, r.step.r1);

  std::set<std::string> cc = preimage(r.step.f, r.step.c0);
  cc.insert(r.step.c1.begin(), r.step.c1.end());
  std::set<std::string> rr = preimage(r.step.f, r.step.r0);
  bool disjoint = std::none_of(cc.begin(), cc.end(), [&](const std::string& x) {
    return rr.count(x) != 0;
  });
  if (disjoint) r.ca_collected = check_ca(bc.lts, cc, rr);

  r.soundness_alarm =
      r.refines() && ((r.simulation && !r.simulation->pass()) ||
                      (r.ca_step && !r.ca_step->pass) ||
                      (r.ca_collected && !r.ca_collected->pass));
  return r;
}

ChainAnalysis analyze_chain(const RefinementChain& chain) {
  ChainAnalysis an;
  if (chain.machines.empty()) {
    an.errors.push_back("empty chain");
    return an;
  }
  std::size_t n = chain.machines.size() - 1;
  for (std::size_t k = 1; k <= n; ++k)
    an.steps.push_back(
        induced_event_map(chain.machines[k - 1], chain.machines[k]));

  // g[i] maps final-machine labels to machine i's alphabet
  an.g.assign(n + 1, {});
  for (const auto& e : event_names(chain.machines[n])) an.g[n].emplace(e, e);
  for (std::size_t i = n; i-- > 0;) {
    const EventMap& f = an.steps[i].f;  // alphabet i+1 -> alphabet i
    for (const auto& [e, x] : an.g[i + 1]) {
      auto it = f.find(x);
      if (it != f.end()) an.g[i].emplace(e, it->second);
    }
  }

  // per-level status classes over each machine's own alphabet
  auto status_set = [&](std::size_t level, EventStatus st) {
    std::set<std::string> out;
    for (const auto& e : chain.machines[level].events)
      if (e.status == st) out.insert(e.name);
    return out;
  };

  an.new_parts.assign(n + 1, {});
  an.con_parts.assign(n + 1, {});
  for (std::size_t k = 1; k <= n; ++k) {
    const auto& nk = an.steps[k - 1].new_events;
    for (const auto& [e, x] : an.g[k])
      if (nk.count(x)) an.new_parts[k].insert(e);
  }
  for (std::size_t k = 0; k <= n; ++k) {
    auto ck = status_set(k, EventStatus::Convergent);
    for (const auto& [e, x] : an.g[k])
      if (ck.count(x)) an.con_parts[k].insert(e);
  }

  auto collect = [&](const std::vector<std::set<std::string>>& parts,
                     std::set<std::string>& out, const char* what) {
    for (const auto& part : parts)
      for (const auto& e : part) {
        if (!out.insert(e).second)
          an.errors.push_back(std::string(what) + " components overlap at '" +
                              e + "'");
      }
  };
  collect(an.new_parts, an.new_events, "new-event");
  collect(an.con_parts, an.con_events, "convergent-event");

  // end conditions: nothing pending at the start, nothing anticipated left
  if (!status_set(0, EventStatus::Anticipated).empty() ||
      !status_set(0, EventStatus::Convergent).empty())
    an.errors.push_back(
        "initial machine must have only ordinary events (A0 = C0 = {})");
  if (!status_set(n, EventStatus::Anticipated).empty())
    an.errors.push_back(
        "final machine must have no anticipated events (An = {})");

  if (an.new_events != an.con_events)
    an.errors.push_back("new events " + join(an.new_events) +
                        " differ from collected convergent events " +
                        join(an.con_events));

  // the final alphabet must split into the initial machine's preimage plus
  // the collected new events
  std::set<std::string> expected;
  for (const auto& [e, x] : an.g[0]) expected.insert(e);
  expected.insert(an.new_events.begin(), an.new_events.end());
  if (expected != event_names(chain.machines[n]))
    an.errors.push_back(
        "final alphabet is not partitioned by the initial preimage and the "
        "new events");
  return an;
}

bool ChainReport::pass() const {
  if (!analysis.ok()) return false;
  for (const auto& s : steps)
    if (!s.refines() || s.soundness_alarm) return false;
  return collected && collected->pass() && intermediate &&
         intermediate->pass() && convergence && convergence->pass;
}

ChainReport check_chain(const RefinementChain& chain,
                        const CheckOptions& opts) {
  ChainReport r;
  r.analysis = analyze_chain(chain);
  std::size_t n = chain.machines.empty() ? 0 : chain.machines.size() - 1;
  for (std::size_t k = 1; k <= n; ++k)
    r.steps.push_back(
        check_step(chain.machines[k - 1], chain.machines[k], opts));

  bool structure_ok =
      r.analysis.ok() &&
      std::all_of(r.steps.begin(), r.steps.end(),
                  [](const StepReport& s) { return s.structure.empty(); });
  if (!structure_ok || chain.machines.empty()) return r;

  std::vector<Lts> ltss;
  for (const auto& m : chain.machines)
    ltss.push_back(build_lts(m, opts.limits).lts);

  // collected form: hide the new events of the final machine and rename the
  // survivors down to the initial alphabet
  Lts hidden = hide(ltss[n], r.analysis.new_events);
  Lts renamed = rename_forward(hidden, r.analysis.g[0]);
  r.collected = tdi_refines(ltss[0], renamed, opts.tdi);

  // intermediate form: pull the initial machine up through every step,
  // interleaving a run process over each step's new events
  Lts s = ltss[0];
  for (std::size_t k = 1; k <= n; ++k) {
    const auto& step = r.analysis.steps[k - 1];
    s = interleave_run(rename_inverse(s, restrict_into(step.f, s.alphabet_set())),
                       step.new_events);
  }
  r.intermediate = tdi_refines(s, ltss[n], opts.tdi);

  r.convergence = divergence_free_after_hide(ltss[n], r.analysis.new_events);
  return r;
}

}  // namespace ebref
