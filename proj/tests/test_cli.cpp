#include "doctest.h"

#include "config.hpp"
#include "runner.hpp"

#include "sumset/errors.hpp"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace sumset;
using namespace sumset::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("sumset_cli_" + std::to_string(::getpid())) / name;
    fs::create_directories(p);
    return p;
}

fs::path write_file(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
    return p;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cli(const std::string& args) {
    const std::string cmd = std::string(SUMSET_CLI) + " --quiet " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

// The CSV without the wall-clock column.
std::string strip_timing(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
    return out;
}

int parse_error_line(const std::string& text, int* col = nullptr) {
    try {
        parse_config(text);
    } catch (const ParseError& e) {
        if (col) *col = e.column();
        return e.line();
    }
    return -1;
}

const char* const kBasic = "group Z\n"
                           "set E = periodic(2, [0])\n"
                           "experiment d relative_density set=E window=[0,999] expect_min=1/2 expect_max=1/2\n";

} // namespace

TEST_CASE("config: directives parse and round trip through to_text") {
    const ExperimentConfig cfg = parse_config("# header\ngroup Z\nbudget 30\n"
                                              "set A = union(blocks_sq(), inverse(blocks_sq()))\n"
                                              "experiment r relative_density set=A window=[-1000, 1000] \\\n"
                                              "   expect_min=49/100   # trailing comment\n");
    CHECK(cfg.group.name() == "Z");
    REQUIRE(cfg.budget_s);
    CHECK(*cfg.budget_s == 30.0);
    REQUIRE(cfg.sets.size() == 1);
    CHECK(cfg.sets[0].line == 4);
    REQUIRE(cfg.experiments.size() == 1);
    CHECK(cfg.experiments[0].params.at("window") == "[-1000, 1000]");
    CHECK(cfg.experiments[0].params.at("expect_min") == "49/100");
    const ExperimentConfig again = parse_config(cfg.to_text());
    CHECK(again.to_text() == cfg.to_text());
}

TEST_CASE("config: errors carry line and column") {
    int col = 0;
    CHECK(parse_error_line("group Z\nexperiment d relative_density set=all() window=[0,9] bogus=1\n", &col) == 2);
    CHECK(col == 54);
    CHECK(parse_error_line("group Z\n\nexperiment d nosuchop set=all()\n", &col) == 3);
    CHECK(col == 14);
    CHECK(parse_error_line("group Z\nexperiment d relative_density set=all()\n") == 2);
    CHECK(parse_error_line("group Z\nset A = all()\nset A = empty()\n") == 3);
    CHECK(parse_error_line("group Z\nfrobnicate\n") == 2);
    CHECK(parse_error_line("group Q\n") == 1);
    CHECK(parse_error_line("group Z\nbudget -4\n") == 2);
    CHECK(parse_error_line("group Z\nset A = union(all(), nosuch)\n") == 2);
    CHECK(parse_error_line("group Z\n\\\nset A = periodic(2,\n") == 3);
    CHECK(parse_error_line(kBasic) == -1);
}

TEST_CASE("config: trial substitution") {
    CHECK(substitute_trial("random(1/10, $trial)", 7) == "random(1/10, 7)");
    CHECK(substitute_trial("union(random(1/3, $trial+100), random(1/3, $trial))", 5) ==
          "union(random(1/3, 105), random(1/3, 5))");
    CHECK(substitute_trial("all()", 9) == "all()");
}

TEST_CASE("run: empty experiment list succeeds") {
    const RunSummary s = run_config(parse_config("group Z\n"), {scratch("empty").string(), true});
    CHECK(s.rows.empty());
    CHECK(exit_code(s) == 0);
    CHECK(strip_timing(read_file(scratch("empty") / "report.csv")) == strip_timing(csv_header() + "\n"));
}

TEST_CASE("run: assertion outcomes and exit codes") {
    const fs::path dir = scratch("codes");
    CHECK(cli("--out " + (dir / "ok").string() + " run " + write_file(dir / "ok.cfg", kBasic).string()) == 0);

    const std::string failing = "group Z\nset E = periodic(2, [0])\n"
                                "experiment d relative_density set=E window=[0,999] expect_min=3/4\n";
    CHECK(cli("--out " + (dir / "f").string() + " run " + write_file(dir / "f.cfg", failing).string()) == 1);

    const std::string wrong_outcome = "group Z\nset E = periodic(2, [0])\n"
                                      "experiment s shifted_window set=empty() shape=[0,9] beta=1/2 search=[0,99] expect=pass\n";
    CHECK(cli("--out " + (dir / "w").string() + " run " + write_file(dir / "w.cfg", wrong_outcome).string()) == 1);
    const std::string expected_failure = "group Z\n"
                                         "experiment s shifted_window set=empty() shape=[0,9] beta=1/2 search=[0,99] expect=not_found\n";
    CHECK(cli("--out " + (dir / "x").string() + " run " + write_file(dir / "x.cfg", expected_failure).string()) == 0);

    CHECK(cli("--out " + (dir / "b").string() + " run " + write_file(dir / "b.cfg", "group Z\nset A = nosuch()\n").string()) == 2);
    CHECK(cli("run " + (dir / "missing.cfg").string()) == 2);
    CHECK(cli("") == 2);

    const std::string big = "group Z\nset E = periodic(2, [0])\n"
                            "experiment d relative_density set=E window=[0,999999]\n";
    CHECK(cli("--cap-cells 1000 --out " + (dir / "c").string() + " run " + write_file(dir / "c.cfg", big).string()) == 3);
    CHECK(read_file(dir / "c" / "report.csv").find(",cap,") != std::string::npos);

    const std::string rate = "group Z\nset R = random(1/2, $trial)\n"
                             "experiment r shifted_window set=R shape=[0,3] beta=1 search=[0,2] trials=20 expect_rate=1\n";
    CHECK(cli("--out " + (dir / "r").string() + " run " + write_file(dir / "r.cfg", rate).string()) == 1);
}

TEST_CASE("verify: certificates replay and tampering is caught") {
    const fs::path dir = scratch("verify");
    const std::string cfg = "group Z\nset E = periodic(2, [0])\nset R = random(1/10, $trial)\n"
                            "experiment h hurray a0=E a0_window=[0,9] b=R beta=1/2 search=[0,10000] trials=3 replay=1 expect=pass\n";
    REQUIRE(cli("--out " + (dir / "o").string() + " run " + write_file(dir / "h.cfg", cfg).string()) == 0);
    const fs::path certs = dir / "o" / "certificates.jsonl";
    CHECK(cli("verify " + certs.string()) == 0);

    std::istringstream in(read_file(certs));
    std::string first;
    std::getline(in, first);
    nlohmann::json j = nlohmann::json::parse(first);
    REQUIRE(j["checks"].size() == 2);
    auto& t = j["checks"][1]["t"];
    t = std::to_string(std::stoll(t.get<std::string>()) + 1);
    CHECK(cli("verify " + write_file(dir / "bad.jsonl", j.dump() + "\n").string()) == 1);

    CHECK(cli("verify " + write_file(dir / "empty.jsonl", "").string()) == 0);
    CHECK(cli("verify " + write_file(dir / "junk.jsonl", "{not json\n").string()) == 2);
    CHECK(cli("verify " + (dir / "nope.jsonl").string()) == 2);
}

TEST_CASE("run: output is deterministic apart from timing") {
    const fs::path dir = scratch("det");
    const std::string cfg = "group Z\nset R = random(1/10, $trial)\nset S = random(1/10, $trial+100)\n"
                            "experiment j jin a=R b=S kK=10 k_thick=10 window=[0,4095] trials=3\n"
                            "experiment u upper_density set=R n_max=200\n";
    const fs::path path = write_file(dir / "d.cfg", cfg);
    REQUIRE(cli("--out " + (dir / "a").string() + " run " + path.string()) == 0);
    REQUIRE(cli("--threads 4 --out " + (dir / "b").string() + " run " + path.string()) == 0);
    const std::string a = read_file(dir / "a" / "report.csv");
    CHECK(a.find("\nj,jin,1,") != std::string::npos);
    CHECK(strip_timing(a) == strip_timing(read_file(dir / "b" / "report.csv")));
    CHECK(read_file(dir / "a" / "certificates.jsonl") == read_file(dir / "b" / "certificates.jsonl"));
}

TEST_CASE("bundled configs parse") {
    int n = 0;
    for (const auto& e : fs::directory_iterator(SUMSET_CONFIGS)) {
        if (e.path().extension() != ".cfg") continue;
        CAPTURE(e.path().string());
        CHECK_NOTHROW(load_config(e.path().string()));
        ++n;
    }
    CHECK(n >= 5);
}
