// Machine-readable reports: JSON serialization of verdicts, witnesses and
// certificates, plus the named exhaustive verification suites behind the
// `oracle` command.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wordmb/deciders.hpp"

namespace wordmb {

using json = nlohmann::json;

json config_json(const RunConfig& cfg);
json field_json(const FieldDesc& F);
json ctx_json(const GroupCtx& ctx);
json mat_json(const Mat& m);
json aut_json(const AutElem& a);
json witness_json(const WitnessPair& w);
json assignment_result_json(const AssignmentResult& r, const GroupCtx& ctx);
json task_json(const TaskResult& t, const RunConfig& cfg);
json divisibility_json(const DivisibilityFact& d);
json derivation_json(const Derivation& d);
json verdict_json(const Verdict& v, const json& input, const RunConfig& cfg, long long elapsed_ms);
json sweep_line_json(const SweepWordLine& line, const RunConfig& cfg);
json sweep_length_json(const SweepLengthReport& lr);

std::string verdict_text(const Verdict& v);

// --- named verification suites ----------------------------------------------

struct OracleResult {
  std::string name;
  bool pass = false;
  json data;
};

std::vector<std::string> oracle_check_names();
OracleResult run_oracle_check(const std::string& name, const RunConfig& cfg);

}  // namespace wordmb
