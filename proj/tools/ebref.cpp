#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebref/parser.hpp"
#include "ebref/report.hpp"
#include "ebref/wp.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLimit = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CommonFlags {
  bool json = false;
  long max_states = 0;
  long max_transitions = 0;
  int depth = 6;
  std::uint64_t seed = 1;
  bool reachable_only = false;

  void attach(CLI::App* cmd) {
    cmd->add_flag("--json", json, "structured report on stdout");
    cmd->add_option("--max-states", max_states, "state-count limit");
    cmd->add_option("--max-transitions", max_transitions,
                    "transition-count limit");
    cmd->add_option("--depth", depth, "trace enumeration depth");
    cmd->add_option("--seed", seed, "seed for sampled checks");
    cmd->add_flag("--reachable-only", reachable_only,
                  "diagnostic: quantify obligations over reachable states");
  }

  ebref::CheckOptions options() const {
    ebref::CheckOptions o;
    if (max_states > 0) o.limits.max_states = max_states;
    if (max_transitions > 0) o.limits.max_transitions = max_transitions;
    o.tdi.seed = seed;
    o.scope = reachable_only ? ebref::PoScope::ReachableOnly
                             : ebref::PoScope::AllStates;
    return o;
  }
};

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  long ms() const {
    return static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start)
            .count());
  }
};

void emit(const ebref::Json& report, const std::string& text, bool json) {
  if (json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text;
}

// parse a list of ancestor machines, abstract first, each in the scope of its
// predecessor; returns the last one (or nothing for an empty list)
const ebref::Machine* parse_context(const std::vector<std::string>& paths,
                                    std::vector<ebref::Machine>& storage) {
  for (const auto& path : paths) {
    const ebref::Machine* prev = storage.empty() ? nullptr : &storage.back();
    storage.push_back(ebref::parse_machine(read_file(path), prev));
  }
  return storage.empty() ? nullptr : &storage.back();
}

int run_step_like(const std::string& command, const std::string& abs_path,
                  const std::string& conc_path,
                  const std::vector<std::string>& context,
                  const CommonFlags& flags, bool semantic_only) {
  Timer timer;
  std::string abs_text = read_file(abs_path);
  std::string conc_text = read_file(conc_path);
  std::vector<ebref::Machine> ctx;
  const ebref::Machine* outer = parse_context(context, ctx);
  ebref::Machine abs = ebref::parse_machine(abs_text, outer);
  ebref::Machine conc = ebref::parse_machine(conc_text, &abs);
  ebref::StepReport report = ebref::check_step(abs, conc, flags.options());

  bool pass;
  if (command == "check-po") {
    pass = report.refines();
  } else if (semantic_only) {
    pass = report.structure.empty() && report.simulation &&
           report.simulation->pass() && report.ca_step &&
           report.ca_step->pass &&
           (!report.ca_collected || report.ca_collected->pass);
  } else {
    pass = report.refines() && !report.soundness_alarm &&
           report.simulation && report.simulation->pass() &&
           report.ca_step && report.ca_step->pass &&
           (!report.ca_collected || report.ca_collected->pass);
  }

  ebref::Json j = ebref::make_report(
      command, {{abs_path, abs_text}, {conc_path, conc_text}});
  ebref::Json body = ebref::to_json(report);
  if (command == "check-po") {
    body.erase("simulation");
    body.erase("ca_step");
    body.erase("ca_collected");
    body.erase("soundness_alarm");
  }
  if (semantic_only) body.erase("proof_obligations");
  j["step"] = body;
  j["verdict"] = pass ? "pass" : "fail";
  j["timing"] = ebref::Json{{"total_ms", timer.ms()}};

  std::string text = ebref::to_text(report, !semantic_only);
  emit(j, text, flags.json);
  return pass ? kExitPass : kExitFail;
}

int run_check_chain(const std::string& manifest_path, const CommonFlags& flags) {
  Timer timer;
  std::string manifest = read_file(manifest_path);
  std::filesystem::path base =
      std::filesystem::path(manifest_path).parent_path();
  std::vector<std::pair<std::string, std::string>> inputs;
  inputs.emplace_back(manifest_path, manifest);
  std::vector<std::pair<std::string, std::string>> named;
  std::istringstream lines(manifest);
  std::string line;
  while (std::getline(lines, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty() || line.rfind("--", 0) == 0) continue;
    std::string path = (base / line).string();
    std::string text = read_file(path);
    inputs.emplace_back(path, text);
    named.emplace_back(line, text);
  }
  if (named.empty()) throw UsageError("manifest lists no machines");
  ebref::RefinementChain chain = ebref::parse_chain(named);
  ebref::ChainReport report = ebref::check_chain(chain, flags.options());

  ebref::Json j = ebref::make_report("check-chain", inputs);
  j["chain"] = ebref::to_json(report);
  j["verdict"] = report.pass() ? "pass" : "fail";
  j["timing"] = ebref::Json{{"total_ms", timer.ms()}};
  emit(j, ebref::to_text(report), flags.json);
  return report.pass() ? kExitPass : kExitFail;
}

int run_dump_lts(const std::string& machine_path,
                 const std::vector<std::string>& context,
                 const CommonFlags& flags, int traces_depth,
                 const std::string& oracle) {
  std::string text = read_file(machine_path);
  std::vector<ebref::Machine> ctx;
  const ebref::Machine* outer = parse_context(context, ctx);
  ebref::Machine m = ebref::parse_machine(text, outer);
  ebref::CheckOptions opts = flags.options();
  ebref::BuiltLts built = ebref::build_lts(m, opts.limits);
  std::cout << ebref::dump_lts(built.lts);
  if (built.consistency.no_initial_state)
    std::cout << "note: no initial state\n";
  if (traces_depth >= 0) {
    std::set<ebref::Trace> traces;
    if (oracle == "wp") {
      traces = ebref::WpContext(m).traces_wp(traces_depth);
    } else {
      traces = ebref::bounded_traces(built.lts, traces_depth);
    }
    std::cout << "traces (depth " << traces_depth << ", oracle " << oracle
              << "):\n";
    for (const auto& tr : traces) {
      std::cout << "<";
      for (std::size_t i = 0; i < tr.size(); ++i) {
        if (i) std::cout << ",";
        std::cout << tr[i];
      }
      std::cout << ">\n";
    }
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-B refinement checker with CSP-style certification"};
  app.require_subcommand(1);

  CommonFlags po_flags, step_flags, chain_flags, dump_flags;
  std::string abs_path, conc_path, manifest_path, machine_path;
  std::vector<std::string> context;
  std::string oracle = "lts";
  bool semantic_only = false;
  int traces_depth = -1;

  auto* po = app.add_subcommand("check-po",
                                "structural rules and proof obligations");
  po->add_option("abstract", abs_path, "abstract machine file")->required();
  po->add_option("concrete", conc_path, "concrete machine file")->required();
  po->add_option("--context", context,
                 "ancestor machine files, most abstract first");
  po_flags.attach(po);

  auto* step = app.add_subcommand(
      "check-step", "one refinement step with semantic certificates");
  step->add_option("abstract", abs_path, "abstract machine file")->required();
  step->add_option("concrete", conc_path, "concrete machine file")->required();
  step->add_option("--context", context,
                   "ancestor machine files, most abstract first");
  step->add_flag("--semantic-only", semantic_only,
                 "skip proof obligations, keep the semantic checks");
  step_flags.attach(step);

  auto* chain = app.add_subcommand("check-chain",
                                   "a whole refinement chain from a manifest");
  chain->add_option("manifest", manifest_path,
                    "file listing machine files, abstract first")
      ->required();
  chain_flags.attach(chain);

  auto* dump = app.add_subcommand("dump-lts", "explicit state space");
  dump->add_option("machine", machine_path, "machine file")->required();
  dump->add_option("--context", context,
                   "ancestor machine files, most abstract first");
  dump->add_option("--traces", traces_depth, "also list traces to this depth");
  dump->add_option("--oracle", oracle, "trace oracle: lts or wp")
      ->check(CLI::IsMember({"lts", "wp"}));
  dump_flags.attach(dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (po->parsed())
      return run_step_like("check-po", abs_path, conc_path, context, po_flags,
                           false);
    if (step->parsed())
      return run_step_like("check-step", abs_path, conc_path, context,
                           step_flags, semantic_only);
    if (chain->parsed()) return run_check_chain(manifest_path, chain_flags);
    if (dump->parsed())
      return run_dump_lts(machine_path, context, dump_flags, traces_depth,
                          oracle);
  } catch (const ebref::LimitExceeded& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitLimit;
  } catch (const ebref::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
