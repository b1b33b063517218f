#ifndef EBREF_REPORT_HPP
#define EBREF_REPORT_HPP

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ebref/verify.hpp"

namespace ebref {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit digest, fixed-width hex; used to fingerprint input files.
std::string fnv1a_hex(std::string_view data);

using Json = nlohmann::ordered_json;

Json to_json(const Trace& tr);
Json to_json(const Lasso& l);
Json to_json(const TdiVerdict& v);
Json to_json(const CaVerdict& v);
Json to_json(const CycleVerdict& v);
Json to_json(const PoVerdict& v, const Machine& abstract,
             const Machine& concrete);
Json to_json(const StructuralViolation& v);
Json to_json(const StepReport& r);
Json to_json(const ChainAnalysis& a);
Json to_json(const ChainReport& r);

/// Canonical report envelope: version, command, inputs (path + digest),
/// then command-specific payload added by the caller.
Json make_report(const std::string& command,
                 const std::vector<std::pair<std::string, std::string>>&
                     inputs /* path, contents */);

std::string to_text(const StepReport& r, bool include_pos = true);
std::string to_text(const ChainReport& r);

}  // namespace ebref

#endif
