#include "ebref/step.hpp"

#include <algorithm>
#include <stdexcept>

namespace ebref {
namespace {

void classify(const Machine& m, std::set<std::string>& a,
              std::set<std::string>& c, std::set<std::string>& r) {
  for (const auto& e : m.events) {
    switch (e.status) {
      case EventStatus::Anticipated:
        a.insert(e.name);
        break;
      case EventStatus::Convergent:
        c.insert(e.name);
        break;
      case EventStatus::Ordinary:
        r.insert(e.name);
        break;
    }
  }
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

RefinementStep induced_event_map(const Machine& abstract,
                                 const Machine& concrete) {
  if (!concrete.refines_machine || *concrete.refines_machine != abstract.name)
    throw std::invalid_argument("machine '" + concrete.name +
                                "' does not refine '" + abstract.name + "'");
  RefinementStep step;
  step.abstract = &abstract;
  step.concrete = &concrete;
  for (const auto& e : concrete.events) {
    if (!e.refines) {
      step.new_events.insert(e.name);
      continue;
    }
    if (!abstract.find_event(*e.refines))
      throw std::invalid_argument("event '" + e.name + "' refines unknown '" +
                                  *e.refines + "'");
    step.f.emplace(e.name, *e.refines);
  }
  classify(abstract, step.a0, step.c0, step.r0);
  classify(concrete, step.a1, step.c1, step.r1);
  return step;
}

std::vector<StructuralViolation> validate_structure(const RefinementStep& step) {
  std::vector<StructuralViolation> out;
  const auto& f = step.f;

  std::set<std::string> ran;
  for (const auto& [src, dst] : f) ran.insert(dst);
  std::set<std::string> alpha0;
  alpha0.insert(step.a0.begin(), step.a0.end());
  alpha0.insert(step.c0.begin(), step.c0.end());
  alpha0.insert(step.r0.begin(), step.r0.end());
  for (const auto& e : alpha0)
    if (!ran.count(e))
      out.push_back({1, "abstract event '" + e + "' is refined by no event"});

  for (const auto& e : step.new_events)
    if (step.r1.count(e))
      out.push_back({2, "new event '" + e + "' must be anticipated or "
                        "convergent, not ordinary"});

  for (const auto& [src, dst] : f)
    if (step.a0.count(dst) && step.r1.count(src))
      out.push_back({3, "event '" + src + "' refines anticipated '" + dst +
                        "' but is ordinary"});

  std::set<std::string> pre_cr;  // f1^{-1}(C0 u R0)
  for (const auto& [src, dst] : f)
    if (step.c0.count(dst) || step.r0.count(dst)) pre_cr.insert(src);
  if (pre_cr != step.r1)
    out.push_back({4, "refinements of convergent/remaining events " +
                      join(pre_cr) + " must equal the remaining events " +
                      join(step.r1)});
  return out;
}

}  // namespace ebref
