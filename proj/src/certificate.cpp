#include "sumset/certificate.hpp"

#include "sumset/caps.hpp"
#include "sumset/errors.hpp"

#include <cstdio>
#include <set>

namespace sumset {

using nlohmann::json;

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string WitnessCertificate::digest() const {
    std::string canon = group.name() + "\n";
    for (const auto& [k, v] : sets) canon += k + "=" + v + "\n";
    return fnv1a_hex(canon);
}

json WitnessCertificate::to_json() const {
    return json{{"lemma", lemma}, {"group", group.name()}, {"sets", sets}, {"digest", digest()}, {"witness", witness}, {"checks", checks}};
}

WitnessCertificate WitnessCertificate::from_json(const json& j) {
    WitnessCertificate c;
    c.lemma = j.at("lemma").get<std::string>();
    c.group = GroupSpec::parse(j.at("group").get<std::string>());
    c.sets = j.at("sets").get<std::map<std::string, std::string>>();
    if (j.contains("witness")) c.witness = j.at("witness");
    c.checks = j.at("checks");
    if (!c.checks.is_array()) throw ContractError("certificate checks must be an array");
    return c;
}

namespace {

class Replayer {
public:
    explicit Replayer(const WitnessCertificate& c) : c_(c), g_(c.group) {
        for (const auto& [name, expr] : c.sets) sets_.emplace(name, parse_set(expr, g_, &sets_));
    }

    // Empty string on success, else a description of the failing query.
    std::string run(const json& ck) {
        const std::string op = ck.at("op").get<std::string>();
        if (op == "member") {
            const Elem x = elem(ck.at("elem"));
            const bool want = ck.at("expect").get<bool>();
            if (member(set(ck.at("set")), x) != want)
                return "member(" + ck.at("set").get<std::string>() + ", " + to_string(x) + ") != " + (want ? "true" : "false");
            return "";
        }
        if (op == "factor") {
            const Elem target = elem(ck.at("target"));
            Elem prod = identity(g_);
            for (const auto& f : ck.at("factors")) {
                const Elem x = elem(f.at(1));
                if (!member(set(f.at(0)), x)) return to_string(x) + " not in " + f.at(0).get<std::string>();
                prod = mul(g_, prod, x);
            }
            if (prod != target) return "factors multiply to " + to_string(prod) + ", not " + to_string(target);
            return "";
        }
        if (op == "count") {
            const DescribedSet& s = set(ck.at("set"));
            ElemSet xs;
            for (const auto& e : ck.at("elems")) xs.push_back(elem(e));
            normalize(xs);
            std::uint64_t hits = 0;
            for (const auto& x : xs) hits += member(s, x);
            auto need = ck.at("at_least").get<std::uint64_t>();
            if (ck.contains("beta")) {
                // at_least must be ceil(beta · |of|) for an explicit set `of`.
                const ElemSet* of = set(ck.at("of")).explicit_elements();
                if (!of) return "count bound refers to a non-explicit set";
                const Rational bound = parse_rational(ck.at("beta").get<std::string>()) * Rational(of->size());
                Int c = boost::multiprecision::numerator(bound) / boost::multiprecision::denominator(bound);
                if (Rational(c) < bound) ++c;
                if (Int(need) < c) return "at_least " + std::to_string(need) + " is below beta·|" + ck.at("of").get<std::string>() + "| = " + to_fraction_string(bound);
            }
            if (hits < need) return "count " + std::to_string(hits) + " < " + std::to_string(need) + " in " + ck.at("set").get<std::string>();
            return "";
        }
        if (op == "product_pairs") {
            const DescribedSet& l = set(ck.at("left"));
            const DescribedSet& r = set(ck.at("right"));
            const Elem t = elem(ck.at("t"));
            ElemSet cs;
            for (const auto& e : ck.at("C")) cs.push_back(elem(e));
            std::vector<Elem> right_factor;
            for (const auto& y : cs) {
                if (!member(l, y)) return to_string(y) + " not in " + ck.at("left").get<std::string>();
                right_factor.push_back(mul(g_, inv(g_, y), t));
                if (!member(r, right_factor.back()))
                    return "pair (_, " + to_string(y) + "): " + to_string(right_factor.back()) + " not in " + ck.at("right").get<std::string>();
            }
            for (std::size_t i = 0; i < cs.size(); ++i)
                for (std::size_t j = 0; j < cs.size(); ++j) {
                    const Elem target = mul(g_, mul(g_, cs[i], inv(g_, cs[j])), t);
                    if (mul(g_, cs[i], right_factor[j]) != target)
                        return "pair (" + to_string(cs[i]) + ", " + to_string(cs[j]) + ") does not factor";
                }
            return "";
        }
        if (op == "sum_boxes_in") {
            if (!g_.abelian()) return "sum_boxes_in needs an abelian group";
            const DescribedSet& s = set(ck.at("set"));
            const Window w = parse_window(ck.at("window").get<std::string>(), g_);
            auto boxes = [&](const json& list) {
                std::vector<Window> out;
                for (const auto& b : list) {
                    const Window k = parse_window(b.at(0).get<std::string>(), g_);
                    out.push_back(k.translated(elem(b.at(1))));
                }
                return out;
            };
            for (const auto& x : boxes(ck.at("left")))
                for (const auto& y : boxes(ck.at("right"))) {
                    const auto part = minkowski(x, y).intersect(w);
                    if (!part) continue;
                    for (const auto& z : enumerate_window(g_, *part))
                        if (!member(s, z)) return to_string(z) + " in the sum but not in " + ck.at("set").get<std::string>();
                }
            return "";
        }
        if (op == "sumset_cover") {
            if (!g_.abelian()) return "sumset_cover needs an abelian group";
            std::set<Elem> sums{identity(g_)};
            for (const auto& part : ck.at("parts")) {
                const DescribedSet& s = set(part.at(0));
                const Window w = parse_window(part.at(1).get<std::string>(), g_);
                ElemSet xs;
                for (const auto& x : enumerate_window(g_, w))
                    if (member(s, x)) xs.push_back(x);
                if (xs.empty()) return "part " + part.at(0).get<std::string>() + " is empty on " + w.to_string();
                require_work(sums.size() * xs.size(), "sumset_cover");
                std::set<Elem> next;
                for (const auto& y : sums)
                    for (const auto& x : xs) next.insert(mul(g_, y, x));
                sums = std::move(next);
            }
            const DescribedSet& l = set(ck.at("left"));
            const DescribedSet& r = set(ck.at("right"));
            std::map<Elem, std::pair<Elem, Elem>> factors;
            for (const auto& f : ck.at("factors")) factors[elem(f.at(0))] = {elem(f.at(1)), elem(f.at(2))};
            for (const auto& z : sums) {
                auto it = factors.find(z);
                if (it == factors.end()) return to_string(z) + " lies in the sum of the parts but has no listed factorization";
                const auto& [x, y] = it->second;
                if (!member(l, x) || !member(r, y) || mul(g_, x, y) != z) return "factorization of " + to_string(z) + " fails";
            }
            return "";
        }
        if (op == "escape") {
            const Elem a = elem(ck.at("a")), b1 = elem(ck.at("b1")), b2 = elem(ck.at("b2"));
            const Int m(ck.at("m").get<std::string>());
            const Int rhs = boost::multiprecision::abs(Int(b1[2] - b2[2] + a[0] * (b1[1] - b2[1])));
            if (!(2 * m < rhs)) return "2m = " + to_string(Int(2 * m)) + " is not < " + to_string(rhs);
            return "";
        }
        if (op == "difference_cover") {
            const DescribedSet& bohr = set(ck.at("bohr"));
            const DescribedSet& a = set(ck.at("a"));
            const Window core = parse_window(ck.at("core").get<std::string>(), g_);
            const Window source = parse_window(ck.at("source").get<std::string>(), g_);
            std::map<Elem, std::pair<Elem, Elem>> pairs;
            for (const auto& p : ck.at("pairs")) pairs[elem(p.at(0))] = {elem(p.at(1)), elem(p.at(2))};
            std::set<Elem> exceptions;
            for (const auto& e : ck.at("exceptions")) exceptions.insert(elem(e));
            std::uint64_t bohr_count = 0;
            for (const auto& g : enumerate_window(g_, core)) {
                if (!member(bohr, g)) continue;
                ++bohr_count;
                if (exceptions.count(g)) continue;
                auto it = pairs.find(g);
                if (it == pairs.end()) return to_string(g) + " in the Bohr set is neither covered nor listed as exceptional";
                const auto& [a1, a2] = it->second;
                if (!source.contains(a1) || !source.contains(a2) || !member(a, a1) || !member(a, a2) || div_right(g_, a1, a2) != g)
                    return "difference witness for " + to_string(g) + " fails";
            }
            for (const auto& e : exceptions)
                if (!core.contains(e) || !member(bohr, e)) return "exception " + to_string(e) + " is not in the Bohr core";
            if (bohr_count == 0) return "empty Bohr core";
            const Rational density(exceptions.size(), bohr_count);
            if (to_fraction_string(density) != ck.at("density").get<std::string>())
                return "exceptional density " + to_fraction_string(density) + " != claimed " + ck.at("density").get<std::string>();
            return "";
        }
        return "unknown check op '" + op + "'";
    }

private:
    const DescribedSet& set(const json& name) {
        auto it = sets_.find(name.get<std::string>());
        if (it == sets_.end()) throw ContractError("certificate references unknown set '" + name.get<std::string>() + "'");
        return it->second;
    }
    Elem elem(const json& e) { return parse_elem(e.get<std::string>(), g_); }

    const WitnessCertificate& c_;
    GroupSpec g_;
    SetTable sets_;
};

} // namespace

ReplayResult replay(const WitnessCertificate& c) {
    ReplayResult r;
    Replayer rp(c);
    for (const auto& ck : c.checks) {
        ++r.checks;
        std::string why;
        try {
            why = rp.run(ck);
        } catch (const std::exception& e) {
            why = std::string("malformed check: ") + e.what();
        }
        if (!why.empty()) {
            r.ok = false;
            r.failure = "check " + std::to_string(r.checks) + " (" + ck.value("op", std::string("?")) + "): " + why;
            return r;
        }
    }
    return r;
}

ReplayResult replay_json(const json& j) {
    ReplayResult r;
    try {
        const WitnessCertificate c = WitnessCertificate::from_json(j);
        if (j.contains("digest") && j.at("digest").get<std::string>() != c.digest()) {
            r.ok = false;
            r.failure = "inputs digest mismatch";
            return r;
        }
        return replay(c);
    } catch (const std::exception& e) {
        r.ok = false;
        r.failure = std::string("malformed certificate: ") + e.what();
        return r;
    }
}

} // namespace sumset
