#pragma once

#include "config.hpp"
#include "runner.hpp"

#include "sumset/certificate.hpp"
#include "sumset/expr.hpp"
#include "sumset/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sumset::harness {

// Typed access to one experiment's parameters for one trial.
class OpContext {
public:
    OpContext(const ExperimentConfig& cfg, const ExperimentSpec& spec, SetTable sets)
        : cfg_(cfg), spec_(spec), sets_(std::move(sets)) {}

    const GroupSpec& group() const { return cfg_.group; }
    bool has(const std::string& key) const { return spec_.params.count(key) > 0; }
    std::string str(const std::string& key, const std::string& fallback = "") const;
    // A defined set name or an inline expression.
    DescribedSet set(const std::string& key) const;
    Window window(const std::string& key) const;
    std::uint64_t u64(const std::string& key, std::optional<std::uint64_t> fallback = std::nullopt) const;
    Rational rational(const std::string& key, std::optional<Rational> fallback = std::nullopt) const;
    double real(const std::string& key, double fallback) const;

private:
    const std::string& raw(const std::string& key) const;
    const ExperimentConfig& cfg_;
    const ExperimentSpec& spec_;
    SetTable sets_;
};

struct OpResult {
    std::string outcome = "pass";
    std::optional<Rational> value;
    std::string witness;
    std::string detail;
    std::optional<WitnessCertificate> cert;
    std::optional<nlohmann::json> verdict;
};

using OpFn = std::vector<OpResult> (*)(const OpContext&);

struct OpEntry {
    OpInfo info;
    OpFn fn;
};

const std::vector<OpEntry>& op_table();

} // namespace sumset::harness
