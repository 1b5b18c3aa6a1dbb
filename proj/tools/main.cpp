#include "config.hpp"
#include "runner.hpp"

#include "sumset/caps.hpp"
#include "sumset/certificate.hpp"
#include "sumset/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace sumset;

namespace {

int cmd_list() {
    for (const auto& op : harness::operations()) {
        std::cout << op.name << "\n    " << op.summary << "\n    required:";
        for (const auto& k : op.required) std::cout << " " << k;
        if (!op.optional.empty()) {
            std::cout << "\n    optional:";
            for (const auto& k : op.optional) std::cout << " " << k;
        }
        std::cout << "\n";
    }
    std::cout << "common keys:";
    for (const auto& k : harness::common_keys()) std::cout << " " << k;
    std::cout << "\n";
    return 0;
}

int cmd_run(const std::string& path, const std::string& out, bool quiet) {
    harness::ExperimentConfig cfg;
    try {
        cfg = harness::load_config(path);
    } catch (const ParseError& e) {
        std::cerr << path << ":" << e.what() << "\n";
        return 2;
    }
    try {
        const harness::RunSummary s = harness::run_config(cfg, {out, quiet});
        std::size_t asserted = 0, failed = 0;
        for (const auto& r : s.rows) {
            asserted += r.asserted;
            failed += r.asserted && !r.passed;
        }
        std::cout << s.rows.size() << " rows, " << s.certificates << " certificates, " << asserted - failed << "/" << asserted
                  << " assertions passed, " << s.wall_s << " s; output in " << out << "\n";
        return harness::exit_code(s);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_verify(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open '" << path << "'\n";
        return 2;
    }
    std::string line;
    int n = 0, bad = 0, total = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++total;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const std::exception& e) {
            std::cerr << path << ":" << n << ": malformed JSON: " << e.what() << "\n";
            return 2;
        }
        const ReplayResult r = replay_json(j);
        const std::string lemma = j.value("lemma", "?");
        if (r.ok) {
            std::cout << "line " << n << ": ok (" << lemma << ", " << r.checks << " checks)\n";
        } else {
            ++bad;
            std::cout << "line " << n << ": FAILED (" << lemma << ") at check " << r.checks << ": " << r.failure << "\n";
        }
    }
    std::cout << total - bad << "/" << total << " certificates verified\n";
    return bad ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sumset structure experiments: run configs, verify certificates"};
    app.require_subcommand(1);
    unsigned threads = 1;
    std::uint64_t cap_cells = 0;
    std::string out = "out";
    bool quiet = false;
    app.add_option("--threads", threads, "worker threads for parallel searches")->check(CLI::PositiveNumber);
    app.add_option("--cap-cells", cap_cells, "maximum cells in one enumerated window")->check(CLI::PositiveNumber);
    app.add_option("--out", out, "output directory for report.csv, certificates.jsonl, verdicts.jsonl");
    app.add_flag("--quiet", quiet, "no per-row progress on stderr");

    std::string cfg_path, cert_path;
    auto* run = app.add_subcommand("run", "run the experiments of a config file");
    run->add_option("config", cfg_path, "config file")->required();
    run->fallthrough();
    auto* verify = app.add_subcommand("verify", "replay every certificate of a JSON-lines file");
    verify->add_option("certificates", cert_path, "JSON-lines file")->required();
    verify->fallthrough();
    app.add_subcommand("list-experiments", "list operations and their keys")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    set_worker_threads(threads);
    if (cap_cells) {
        Caps c = caps();
        c.cells = cap_cells;
        set_caps(c);
    }
    if (*run) return cmd_run(cfg_path, out, quiet);
    if (*verify) return cmd_verify(cert_path);
    return cmd_list();
}
