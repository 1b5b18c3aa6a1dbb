#include "config.hpp"

#include "runner.hpp"

#include "sumset/errors.hpp"
#include "sumset/expr.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace sumset::harness {

namespace {

// A logical line with the physical position of every character.
struct Logical {
    std::string text;
    std::vector<std::pair<int, int>> pos;

    std::pair<int, int> at(std::size_t i) const {
        if (pos.empty()) return {0, 1};
        return i < pos.size() ? pos[i] : std::pair<int, int>{pos.back().first, pos.back().second + 1};
    }
};

std::vector<Logical> logical_lines(const std::string& text) {
    std::vector<Logical> out;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    Logical cur;
    bool continuing = false;
    while (std::getline(in, raw)) {
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        bool cont = false;
        auto end = raw.find_last_not_of(" \t");
        if (end != std::string::npos && raw[end] == '\\') {
            cont = true;
            raw.erase(end);
        }
        if (continuing) {
            cur.text += ' ';
            cur.pos.push_back({line, 1});
        }
        for (std::size_t i = 0; i < raw.size(); ++i) {
            cur.text += raw[i];
            cur.pos.push_back({line, static_cast<int>(i) + 1});
        }
        if (!continuing && cur.pos.empty()) cur.pos.push_back({line, 1});
        continuing = cont;
        if (!cont) {
            out.push_back(std::move(cur));
            cur = Logical{};
        }
    }
    if (continuing) out.push_back(std::move(cur));
    return out;
}

struct Token {
    std::string text;
    std::size_t offset;
};

// Whitespace-separated tokens; whitespace inside brackets does not split.
std::vector<Token> tokenize(const Logical& l, std::size_t from = 0) {
    std::vector<Token> out;
    int depth = 0;
    std::size_t start = std::string::npos;
    for (std::size_t i = from; i <= l.text.size(); ++i) {
        const char c = i < l.text.size() ? l.text[i] : ' ';
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        const bool space = std::isspace(static_cast<unsigned char>(c)) && depth <= 0;
        if (!space && start == std::string::npos) start = i;
        if (space && start != std::string::npos) {
            out.push_back({l.text.substr(start, i - start), start});
            start = std::string::npos;
        }
    }
    return out;
}

[[noreturn]] void fail(const Logical& l, std::size_t offset, const std::string& msg) {
    const auto [line, col] = l.at(offset);
    throw ParseError(msg, line, col);
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

} // namespace

std::string substitute_trial(const std::string& expr, std::uint64_t seed) {
    static const std::regex re(R"(\$trial(\+([0-9]+))?)");
    std::string out;
    auto it = std::sregex_iterator(expr.begin(), expr.end(), re);
    std::size_t last = 0;
    for (; it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        out += expr.substr(last, static_cast<std::size_t>(m.position()) - last);
        std::uint64_t v = seed;
        if (m[2].matched) v += std::stoull(m[2].str());
        out += std::to_string(v);
        last = static_cast<std::size_t>(m.position() + m.length());
    }
    return out + expr.substr(last);
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::set<std::string> set_names, exp_names;
    std::vector<Logical> lines = logical_lines(text);
    bool have_group = false;

    for (std::size_t li = 0; li < lines.size(); ++li) {
        const Logical& l = lines[li];
        const auto toks = tokenize(l);
        if (toks.empty()) continue;
        const std::string& head = toks[0].text;
        if (head == "group") {
            if (toks.size() != 2) fail(l, toks[0].offset, "expected: group <Z | Z^d | H3>");
            if (have_group) fail(l, toks[0].offset, "group declared twice");
            try {
                cfg.group = GroupSpec::parse(toks[1].text);
            } catch (const ContractError& e) {
                fail(l, toks[1].offset, e.what());
            }
            have_group = true;
        } else if (head == "budget") {
            if (toks.size() != 2) fail(l, toks[0].offset, "expected: budget <seconds>");
            try {
                std::size_t used = 0;
                const double v = std::stod(toks[1].text, &used);
                if (used != toks[1].text.size() || !(v > 0)) throw std::invalid_argument("budget");
                cfg.budget_s = v;
            } catch (const std::exception&) {
                fail(l, toks[1].offset, "budget must be a positive number of seconds");
            }
        } else if (head == "set") {
            if (toks.size() < 4 || toks[2].text != "=") fail(l, toks[0].offset, "expected: set <name> = <expression>");
            if (!is_identifier(toks[1].text)) fail(l, toks[1].offset, "invalid set name '" + toks[1].text + "'");
            if (!set_names.insert(toks[1].text).second) fail(l, toks[1].offset, "set '" + toks[1].text + "' defined twice");
            const std::size_t off = toks[3].offset;
            const auto [line, col] = l.at(off);
            cfg.sets.push_back({toks[1].text, l.text.substr(off), line, col});
        } else if (head == "experiment") {
            if (toks.size() < 3) fail(l, toks[0].offset, "expected: experiment <name> <operation> key=value ...");
            ExperimentSpec e;
            e.name = toks[1].text;
            e.op = toks[2].text;
            e.line = l.at(toks[0].offset).first;
            if (!is_identifier(e.name)) fail(l, toks[1].offset, "invalid experiment name '" + e.name + "'");
            if (!exp_names.insert(e.name).second) fail(l, toks[1].offset, "experiment '" + e.name + "' defined twice");
            const OpInfo* op = find_op(e.op);
            if (!op) fail(l, toks[2].offset, "unknown operation '" + e.op + "' (see list-experiments)");
            for (std::size_t i = 3; i < toks.size(); ++i) {
                const auto eq = toks[i].text.find('=');
                if (eq == std::string::npos || eq == 0 || eq + 1 == toks[i].text.size())
                    fail(l, toks[i].offset, "expected key=value, got '" + toks[i].text + "'");
                const std::string key = toks[i].text.substr(0, eq);
                const auto known = [&](const std::vector<std::string>& ks) { return std::find(ks.begin(), ks.end(), key) != ks.end(); };
                if (!known(op->required) && !known(op->optional) && !known(common_keys()))
                    fail(l, toks[i].offset, "unknown key '" + key + "' for operation " + e.op);
                if (!e.params.emplace(key, toks[i].text.substr(eq + 1)).second)
                    fail(l, toks[i].offset, "key '" + key + "' given twice");
            }
            for (const auto& k : op->required)
                if (!e.params.count(k)) fail(l, toks[2].offset, "operation " + e.op + " requires key '" + k + "'");
            cfg.experiments.push_back(std::move(e));
        } else {
            fail(l, toks[0].offset, "unknown directive '" + head + "'");
        }
    }

    // Set expressions are checked once the group is known, in declaration order.
    SetTable table;
    for (std::size_t i = 0; i < cfg.sets.size(); ++i) {
        const SetDef& s = cfg.sets[i];
        try {
            const Ast ast = parse_ast(substitute_trial(s.expr, 1), s.line, s.column);
            table.insert_or_assign(s.name, ast_to_set(ast, cfg.group, &table));
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(e.what(), s.line, s.column);
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config '" + path + "'", 0, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream out;
    out << "group " << group.name() << "\n";
    if (budget_s) out << "budget " << *budget_s << "\n";
    for (const auto& s : sets) out << "set " << s.name << " = " << s.expr << "\n";
    for (const auto& e : experiments) {
        out << "experiment " << e.name << " " << e.op;
        for (const auto& [k, v] : e.params) out << " " << k << "=" << v;
        out << "\n";
    }
    return out.str();
}

} // namespace sumset::harness
