#include "runner.hpp"

#include "ops.hpp"

#include "sumset/errors.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace sumset::harness {

const std::vector<std::string>& common_keys() {
    static const std::vector<std::string> keys = {"trials", "seed", "expect", "expect_min", "expect_max", "expect_rate", "replay"};
    return keys;
}

const std::vector<OpInfo>& operations() {
    static const std::vector<OpInfo> infos = [] {
        std::vector<OpInfo> out;
        for (const auto& e : op_table()) out.push_back(e.info);
        return out;
    }();
    return infos;
}

const OpInfo* find_op(const std::string& name) {
    for (const auto& o : operations())
        if (o.name == name) return &o;
    return nullptr;
}

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string inputs_digest(const ExperimentConfig& cfg, const ExperimentSpec& e, std::uint64_t seed) {
    std::string canon = cfg.group.name() + "\n" + e.op + "\n";
    for (const auto& [k, v] : e.params)
        if (k.rfind("expect", 0) != 0) canon += k + "=" + v + "\n";
    for (const auto& s : cfg.sets) canon += s.name + "=" + substitute_trial(s.expr, seed) + "\n";
    return fnv1a_hex(canon);
}

OpResult failure(const std::string& outcome, const std::exception& e) {
    OpResult r;
    r.outcome = outcome;
    r.detail = e.what();
    return r;
}

std::vector<OpResult> run_trial(const OpEntry& op, const ExperimentConfig& cfg, const ExperimentSpec& e, std::uint64_t seed,
                                RunSummary& sum) {
    try {
        SetTable table;
        for (const auto& s : cfg.sets) table.insert_or_assign(s.name, parse_set(substitute_trial(s.expr, seed), cfg.group, &table));
        OpContext ctx(cfg, e, std::move(table));
        return op.fn(ctx);
    } catch (const NotFoundAtScale& x) {
        return {failure("not_found", x)};
    } catch (const HypothesisUnmet& x) {
        return {failure("hypothesis_unmet", x)};
    } catch (const HypothesisViolation& x) {
        return {failure("hypothesis_violation", x)};
    } catch (const BlockFamilyExhausted& x) {
        return {failure("exhausted", x)};
    } catch (const SpectrumEmpty& x) {
        return {failure("spectrum_empty", x)};
    } catch (const PreconditionUnverified& x) {
        return {failure("precondition_unverified", x)};
    } catch (const IndeterminateError& x) {
        return {failure("indeterminate", x)};
    } catch (const ResourceCapError& x) {
        sum.cap_hit = true;
        return {failure("cap", x)};
    } catch (const std::exception& x) {
        sum.config_error = true;
        return {failure("error", x)};
    }
}

bool truthy(const std::string& v) { return v == "1" || v == "true" || v == "yes"; }

} // namespace

std::string csv_header() { return "experiment,op,trial,inputs_digest,outcome,passed,value_num,value_den,witness,detail,wall_ms"; }

std::string csv_line(const Row& r) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
    return csv_field(r.experiment) + "," + csv_field(r.op) + "," + std::to_string(r.trial) + "," + r.inputs_digest + "," +
           r.outcome + "," + (r.passed ? "true" : "false") + "," + r.value_num + "," + r.value_den + "," + csv_field(r.witness) +
           "," + csv_field(r.detail) + "," + ms;
}

RunSummary run_config(const ExperimentConfig& cfg, const RunOptions& opt) {
    RunSummary sum;
    const auto start = Clock::now();
    std::filesystem::create_directories(opt.out_dir);
    std::ofstream csv(std::filesystem::path(opt.out_dir) / "report.csv");
    std::ofstream certs(std::filesystem::path(opt.out_dir) / "certificates.jsonl");
    std::ofstream verdicts(std::filesystem::path(opt.out_dir) / "verdicts.jsonl");
    if (!csv || !certs || !verdicts) throw std::runtime_error("cannot write into output directory '" + opt.out_dir + "'");
    csv << csv_header() << "\n";

    auto emit = [&](Row r) {
        csv << csv_line(r) << "\n";
        if (r.asserted && !r.passed) sum.assertion_failed = true;
        if (!opt.quiet)
            std::cerr << r.experiment << "[" << r.trial << "] " << r.outcome << (r.asserted ? (r.passed ? " ok" : " ASSERTION FAILED") : "")
                      << (r.value_num.empty() ? "" : " value=" + r.value_num + "/" + r.value_den) << "\n";
        sum.rows.push_back(std::move(r));
    };

    for (const auto& e : cfg.experiments) {
        const OpEntry* op = nullptr;
        for (const auto& o : op_table())
            if (o.info.name == e.op) op = &o;
        auto param = [&](const std::string& k) -> std::optional<std::string> {
            auto it = e.params.find(k);
            return it == e.params.end() ? std::nullopt : std::optional<std::string>(it->second);
        };
        std::uint64_t trials = 1, seed0 = 1;
        std::optional<Rational> expect_min, expect_max, expect_rate;
        try {
            if (auto t = param("trials")) trials = std::stoull(*t);
            if (auto s = param("seed")) seed0 = std::stoull(*s);
            if (auto v = param("expect_min")) expect_min = parse_rational(*v);
            if (auto v = param("expect_max")) expect_max = parse_rational(*v);
            if (auto v = param("expect_rate")) expect_rate = parse_rational(*v);
        } catch (const std::exception& x) {
            Row r{e.name, e.op, 0, "", "error", false, true, "", "", "", std::string("bad parameter: ") + x.what(), 0};
            sum.config_error = true;
            emit(std::move(r));
            continue;
        }
        const auto expect = param("expect");
        const bool replay_certs = param("replay") && truthy(*param("replay"));
        const bool row_asserted = !expect_rate && (expect || expect_min || expect_max);
        std::uint64_t successes = 0;

        for (std::uint64_t i = 0; i < trials; ++i) {
            const std::uint64_t seed = seed0 + i;
            const auto t0 = Clock::now();
            std::vector<OpResult> results = run_trial(*op, cfg, e, seed, sum);
            const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
            const std::string digest = inputs_digest(cfg, e, seed);
            bool trial_ok = !results.empty();
            for (auto& res : results) {
                if (res.cert && res.outcome == "pass") {
                    res.cert->witness["inputs_digest"] = digest;
                    if (replay_certs) {
                        const ReplayResult rp = replay(*res.cert);
                        if (!rp.ok) {
                            res.outcome = "fail";
                            res.detail = "replay: " + rp.failure;
                        }
                    }
                    json line = res.cert->to_json();
                    line["experiment"] = e.name;
                    line["trial"] = seed;
                    certs << line.dump() << "\n";
                    ++sum.certificates;
                }
                if (res.verdict) {
                    json v = *res.verdict;
                    v["experiment"] = e.name;
                    v["trial"] = seed;
                    verdicts << v.dump() << "\n";
                }
                Row r;
                r.experiment = e.name;
                r.op = e.op;
                r.trial = seed;
                r.inputs_digest = digest;
                r.outcome = res.outcome;
                if (res.value) {
                    r.value_num = boost::multiprecision::numerator(*res.value).str();
                    r.value_den = boost::multiprecision::denominator(*res.value).str();
                }
                bool ok = true;
                if (expect) ok = ok && res.outcome == *expect;
                else ok = ok && (res.outcome == "pass" || res.outcome == "value");
                if (expect_min) ok = ok && res.value && *res.value >= *expect_min;
                if (expect_max) ok = ok && res.value && *res.value <= *expect_max;
                r.passed = ok;
                r.asserted = row_asserted;
                trial_ok = trial_ok && ok;
                r.witness = res.witness;
                r.detail = res.detail;
                r.wall_ms = ms / static_cast<double>(results.size());
                emit(std::move(r));
            }
            successes += trial_ok;
        }
        if (expect_rate) {
            Row r;
            r.experiment = e.name;
            r.op = e.op;
            r.trial = 0;
            r.outcome = "rate";
            const Rational rate(successes, std::max<std::uint64_t>(trials, 1));
            r.value_num = boost::multiprecision::numerator(rate).str();
            r.value_den = boost::multiprecision::denominator(rate).str();
            r.passed = rate >= *expect_rate;
            r.asserted = true;
            r.witness = std::to_string(successes) + "/" + std::to_string(trials) + " trials";
            emit(std::move(r));
        }
    }
    sum.wall_s = std::chrono::duration<double>(Clock::now() - start).count();
    if (cfg.budget_s && sum.wall_s > *cfg.budget_s) {
        sum.over_budget = true;
        sum.assertion_failed = true;
        std::cerr << "time budget exceeded: " << sum.wall_s << " s > " << *cfg.budget_s << " s\n";
    }
    return sum;
}

int exit_code(const RunSummary& s) {
    if (s.config_error) return 2;
    if (s.cap_hit) return 3;
    if (s.assertion_failed) return 1;
    return 0;
}

} // namespace sumset::harness
