#include "ebref/report.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

namespace ebref {
namespace {

std::string pass_fail(bool b) { return b ? "pass" : "fail"; }

void witness_json(Json& j, const TdiVerdict& v) {
  if (v.trace_cex) j["trace_counterexample"] = to_json(*v.trace_cex);
  if (v.lasso_cex) j["lasso_counterexample"] = to_json(*v.lasso_cex);
}

std::string join_trace(const Trace& tr) {
  std::string out;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (i) out += ",";
    out += tr[i];
  }
  return "<" + out + ">";
}

}  // namespace

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const Trace& tr) {
  Json j = Json::array();
  for (const auto& x : tr) j.push_back(x);
  return j;
}

Json to_json(const Lasso& l) {
  Json j;
  j["stem"] = to_json(l.stem);
  j["cycle"] = to_json(l.cycle);
  j["rendered"] = l.render();
  return j;
}

Json to_json(const TdiVerdict& v) {
  Json j;
  j["verdict"] = pass_fail(v.pass());
  j["traces"] = pass_fail(v.traces_ok);
  j["divergences"] = pass_fail(v.divergences_ok);
  j["infinites"] = pass_fail(v.infinites_ok);
  witness_json(j, v);
  return j;
}

Json to_json(const CaVerdict& v) {
  Json j;
  j["verdict"] = pass_fail(v.pass);
  if (v.witness) j["lasso_counterexample"] = to_json(*v.witness);
  return j;
}

Json to_json(const CycleVerdict& v) {
  Json j;
  j["verdict"] = pass_fail(v.pass);
  if (v.witness) j["lasso_counterexample"] = to_json(*v.witness);
  return j;
}

Json to_json(const PoVerdict& v, const Machine& abstract,
             const Machine& concrete) {
  Json j;
  j["obligation"] = to_string(v.obligation);
  j["event"] = v.event;
  j["verdict"] = pass_fail(v.pass);
  if (v.witness) {
    Json w;
    if (!v.witness->abstract_state.empty())
      w["abstract"] = render_valuation(abstract, v.witness->abstract_state);
    if (!v.witness->concrete_state.empty())
      w["concrete"] = render_valuation(concrete, v.witness->concrete_state);
    if (v.witness->concrete_after)
      w["concrete_after"] = render_valuation(concrete, *v.witness->concrete_after);
    w["detail"] = v.witness->detail;
    j["witness"] = w;
  }
  return j;
}

Json to_json(const StructuralViolation& v) {
  Json j;
  j["rule"] = v.rule;
  j["detail"] = v.detail;
  return j;
}

Json to_json(const StepReport& r) {
  Json j;
  j["abstract"] = r.step.abstract->name;
  j["concrete"] = r.step.concrete->name;
  j["refines"] = pass_fail(r.refines());
  Json st = Json::array();
  for (const auto& v : r.structure) st.push_back(to_json(v));
  j["structure_violations"] = st;
  Json pos = Json::array();
  for (const auto& v : r.pos)
    pos.push_back(to_json(v, *r.step.abstract, *r.step.concrete));
  j["proof_obligations"] = pos;
  j["abstract_consistent"] = r.abstract_consistency.consistent();
  j["concrete_consistent"] = r.concrete_consistency.consistent();
  if (r.simulation) j["simulation"] = to_json(*r.simulation);
  if (r.ca_step) j["ca_step"] = to_json(*r.ca_step);
  if (r.ca_collected) j["ca_collected"] = to_json(*r.ca_collected);
  j["soundness_alarm"] = r.soundness_alarm;
  return j;
}

Json to_json(const ChainAnalysis& a) {
  Json j;
  Json machines = Json::array();
  for (const auto& s : a.steps) machines.push_back(s.concrete->name);
  Json news = Json::array();
  for (const auto& e : a.new_events) news.push_back(e);
  Json cons = Json::array();
  for (const auto& e : a.con_events) cons.push_back(e);
  j["new_events"] = news;
  j["convergent_events"] = cons;
  Json g = Json::array();
  for (const auto& gi : a.g) {
    Json m;
    for (const auto& [src, dst] : gi) m[src] = dst;
    g.push_back(m);
  }
  j["event_maps"] = g;
  Json errs = Json::array();
  for (const auto& e : a.errors) errs.push_back(e);
  j["errors"] = errs;
  return j;
}

Json to_json(const ChainReport& r) {
  Json j;
  j["verdict"] = pass_fail(r.pass());
  j["analysis"] = to_json(r.analysis);
  Json steps = Json::array();
  for (const auto& s : r.steps) steps.push_back(to_json(s));
  j["steps"] = steps;
  if (r.collected) j["collected_refinement"] = to_json(*r.collected);
  if (r.intermediate) j["intermediate_refinement"] = to_json(*r.intermediate);
  if (r.convergence) j["new_event_convergence"] = to_json(*r.convergence);
  return j;
}

Json make_report(const std::string& command,
                 const std::vector<std::pair<std::string, std::string>>&
                     inputs) {
  Json j;
  j["version"] = kToolVersion;
  j["command"] = command;
  Json in = Json::array();
  for (const auto& [path, contents] : inputs) {
    Json f;
    f["path"] = path;
    f["digest"] = fnv1a_hex(contents);
    in.push_back(f);
  }
  j["inputs"] = in;
  return j;
}

std::string to_text(const StepReport& r, bool include_pos) {
  std::ostringstream os;
  os << "step " << r.step.abstract->name << " -> " << r.step.concrete->name
     << ": " << (r.refines() ? "refines" : "DOES NOT refine") << "\n";
  for (const auto& v : r.structure)
    os << "FAIL structure rule " << v.rule << "\n  " << v.detail << "\n";
  if (include_pos) {
    for (const auto& v : r.pos) {
      os << (v.pass ? "PASS " : "FAIL ") << to_string(v.obligation) << " "
         << v.event << "\n";
      if (v.witness) {
        os << "  witness:";
        if (!v.witness->abstract_state.empty())
          os << " abstract "
             << render_valuation(*r.step.abstract, v.witness->abstract_state);
        if (!v.witness->concrete_state.empty())
          os << " | concrete "
             << render_valuation(*r.step.concrete, v.witness->concrete_state);
        if (v.witness->concrete_after)
          os << " -> "
             << render_valuation(*r.step.concrete, *v.witness->concrete_after);
        os << "\n  " << v.witness->detail << "\n";
      }
    }
  }
  auto tdi_line = [&](const char* name, const TdiVerdict& v) {
    os << (v.pass() ? "PASS " : "FAIL ") << name << "\n";
    if (v.trace_cex) os << "  trace: " << join_trace(*v.trace_cex) << "\n";
    if (v.lasso_cex) os << "  lasso: " << v.lasso_cex->render() << "\n";
  };
  if (r.simulation) tdi_line("simulation", *r.simulation);
  auto ca_line = [&](const char* name, const CaVerdict& v) {
    os << (v.pass ? "PASS " : "FAIL ") << name << "\n";
    if (v.witness) os << "  lasso: " << v.witness->render() << "\n";
  };
  if (r.ca_step) ca_line("ca-step", *r.ca_step);
  if (r.ca_collected) ca_line("ca-collected", *r.ca_collected);
  if (r.soundness_alarm) os << "ALARM proof obligations pass but a semantic "
                               "check fails\n";
  return os.str();
}

std::string to_text(const ChainReport& r) {
  std::ostringstream os;
  for (const auto& e : r.analysis.errors) os << "FAIL chain\n  " << e << "\n";
  for (const auto& s : r.steps) os << to_text(s);
  auto set_line = [&](const char* name, const std::set<std::string>& s) {
    os << name << ":";
    for (const auto& e : s) os << " " << e;
    os << "\n";
  };
  set_line("new events", r.analysis.new_events);
  set_line("convergent events", r.analysis.con_events);
  auto tdi_line = [&](const char* name, const TdiVerdict& v) {
    os << (v.pass() ? "PASS " : "FAIL ") << name << "\n";
    if (v.trace_cex) os << "  trace: " << join_trace(*v.trace_cex) << "\n";
    if (v.lasso_cex) os << "  lasso: " << v.lasso_cex->render() << "\n";
  };
  if (r.collected) tdi_line("collected refinement", *r.collected);
  if (r.intermediate) tdi_line("intermediate refinement", *r.intermediate);
  if (r.convergence) {
    os << (r.convergence->pass ? "PASS " : "FAIL ")
       << "new-event convergence\n";
    if (r.convergence->witness)
      os << "  lasso: " << r.convergence->witness->render() << "\n";
  }
  os << "chain: " << (r.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace ebref
