#pragma once

#include "config.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sumset::harness {

struct OpInfo {
    std::string name;
    std::string summary;
    std::vector<std::string> required;
    std::vector<std::string> optional;
};

// Keys accepted by every operation.
const std::vector<std::string>& common_keys();
const std::vector<OpInfo>& operations();
const OpInfo* find_op(const std::string& name);

// Outcomes: pass, fail, value, not_found, hypothesis_unmet,
// hypothesis_violation, exhausted, spectrum_empty, precondition_unverified,
// indeterminate, cap, error.
struct Row {
    std::string experiment;
    std::string op;
    std::uint64_t trial = 0;
    std::string inputs_digest;
    std::string outcome;
    bool passed = false;
    bool asserted = false;
    std::string value_num, value_den;
    std::string witness;
    std::string detail;
    double wall_ms = 0;
};

struct RunSummary {
    std::vector<Row> rows;
    std::size_t certificates = 0;
    bool assertion_failed = false;
    bool cap_hit = false;
    bool config_error = false;
    bool over_budget = false;
    double wall_s = 0;
};

struct RunOptions {
    std::string out_dir = "out";
    bool quiet = false;
};

// Executes experiments in order and writes report.csv, certificates.jsonl
// and verdicts.jsonl into out_dir.
RunSummary run_config(const ExperimentConfig& cfg, const RunOptions& opt);

// 2 config error, 3 resource cap, 1 assertion failure, 0 otherwise.
int exit_code(const RunSummary& s);

std::string csv_header();
std::string csv_line(const Row& r);

} // namespace sumset::harness
