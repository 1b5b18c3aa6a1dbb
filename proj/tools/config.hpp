#pragma once

#include "sumset/group.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sumset::harness {

// Line-oriented experiment description:
//
//   # comment
//   group Z
//   budget 300
//   set A = union(blocks_sq(), inverse(blocks_sq()))
//   experiment remark relative_density set=A window=[-1000000,1000000] +
//       expect_min=49/100 expect_max=51/100
//
// A trailing backslash (shown as + above) continues a line. Set expressions may use `$trial`
// or `$trial+N`, replaced by the seed of the running trial.
struct SetDef {
    std::string name;
    std::string expr;
    int line = 0;
    int column = 0;
};

struct ExperimentSpec {
    std::string name;
    std::string op;
    std::map<std::string, std::string> params;
    int line = 0;
};

struct ExperimentConfig {
    GroupSpec group = GroupSpec::line();
    std::optional<double> budget_s;
    std::vector<SetDef> sets;
    std::vector<ExperimentSpec> experiments;

    // Canonical text; parse_config(to_text()) reproduces the config.
    std::string to_text() const;
};

// Throws ParseError (line, column) on malformed input, unknown directives,
// unknown operations or keys, duplicate names and invalid set expressions.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// `$trial` / `$trial+N` replaced by seed (+ N).
std::string substitute_trial(const std::string& expr, std::uint64_t seed);

} // namespace sumset::harness
