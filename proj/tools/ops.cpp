#include "ops.hpp"

#include "sumset/errors.hpp"
#include "sumset/folner.hpp"
#include "sumset/structure.hpp"
#include "sumset/witnesses.hpp"

#include <sstream>

namespace sumset::harness {

const std::string& OpContext::raw(const std::string& key) const {
    auto it = spec_.params.find(key);
    if (it == spec_.params.end()) throw ContractError("experiment " + spec_.name + ": missing key '" + key + "'");
    return it->second;
}

std::string OpContext::str(const std::string& key, const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
}

DescribedSet OpContext::set(const std::string& key) const {
    const std::string& v = raw(key);
    if (auto it = sets_.find(v); it != sets_.end()) return it->second;
    return parse_set(v, cfg_.group, &sets_);
}

Window OpContext::window(const std::string& key) const { return parse_window(raw(key), cfg_.group); }

std::uint64_t OpContext::u64(const std::string& key, std::optional<std::uint64_t> fallback) const {
    if (!has(key) && fallback) return *fallback;
    const std::string& v = raw(key);
    std::size_t used = 0;
    unsigned long long x = 0;
    try {
        x = std::stoull(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || v.empty() || v[0] == '-') throw ContractError("key '" + key + "' expects a non-negative integer, got '" + v + "'");
    return x;
}

Rational OpContext::rational(const std::string& key, std::optional<Rational> fallback) const {
    if (!has(key) && fallback) return *fallback;
    return parse_rational(raw(key));
}

double OpContext::real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const Rational r = parse_rational(raw(key));
    return boost::multiprecision::numerator(r).convert_to<double>() / boost::multiprecision::denominator(r).convert_to<double>();
}

namespace {

using nlohmann::json;

FolnerFamily folner_of(const OpContext& c) {
    const std::string f = c.str("family", "standard");
    if (f == "standard") return FolnerFamily::standard(c.group());
    if (f == "anchored") return FolnerFamily::anchored(c.group());
    if (f == "centered") return FolnerFamily::centered(c.group());
    if (f == "heisenberg") return FolnerFamily::heisenberg();
    throw ContractError("unknown Folner family '" + f + "' (standard, anchored, centered, heisenberg)");
}

OpResult density_row(const DensityReport& d) {
    OpResult r;
    r.outcome = "value";
    r.value = d.value;
    std::ostringstream w;
    if (d.shift) w << "t=" << to_string(*d.shift);
    else if (d.index) w << "n=" << *d.index;
    else if (d.window) w << "window=" << d.window->to_string();
    r.witness = w.str();
    r.detail = d.scale;
    return r;
}

OpResult verdict_row(const StructureVerdict& v) {
    OpResult r;
    r.outcome = v.passed ? "pass" : "fail";
    r.witness = v.witness.dump();
    r.verdict = v.to_json();
    return r;
}

OpResult cert_row(WitnessCertificate cert, std::string witness, std::optional<Rational> value = std::nullopt) {
    OpResult r;
    r.witness = std::move(witness);
    r.value = std::move(value);
    r.cert = std::move(cert);
    return r;
}

std::vector<OpResult> op_relative_density(const OpContext& c) {
    return {density_row(relative_density(c.set("set"), c.window("window")))};
}

std::vector<OpResult> op_upper_density(const OpContext& c) {
    return {density_row(upper_density_estimate(c.set("set"), folner_of(c), c.u64("n_max"), c.u64("n_min", 0)))};
}

std::vector<OpResult> op_banach_density(const OpContext& c) {
    return {density_row(banach_density_estimate(c.set("set"), enumerate_window(c.group(), c.window("shape")), c.window("search")))};
}

std::vector<OpResult> op_growth(const OpContext& c) {
    std::vector<OpResult> rows;
    const auto table = growth_saturation(c.set("set"), c.u64("k_max"), enumerate_window(c.group(), c.window("shape")), c.window("search"));
    for (std::size_t k = 0; k < table.size(); ++k) {
        rows.push_back(density_row(table[k]));
        rows.back().witness = "k=" + std::to_string(k) + (rows.back().witness.empty() ? "" : " " + rows.back().witness);
    }
    return rows;
}

std::vector<OpResult> op_growth_upper(const OpContext& c) {
    std::vector<OpResult> rows;
    const auto table = growth_saturation_upper(c.set("set"), c.u64("k_max"), folner_of(c), c.u64("n_min", 0), c.u64("n_max"));
    for (std::size_t k = 0; k < table.size(); ++k) {
        rows.push_back(density_row(table[k]));
        rows.back().witness = "k=" + std::to_string(k) + (rows.back().witness.empty() ? "" : " " + rows.back().witness);
    }
    return rows;
}

std::vector<OpResult> op_invariance_defect(const OpContext& c) {
    const FolnerFamily f = folner_of(c);
    const std::uint64_t n = c.u64("n");
    OpResult r;
    r.outcome = "value";
    r.value = invariance_defect(f, n, ball(c.group(), c.u64("radius", 1)));
    r.witness = f.name() + " n=" + std::to_string(n) + " window=" + f.window(n).to_string();
    return {r};
}

std::vector<OpResult> op_thick(const OpContext& c) {
    return {verdict_row(check_thick(c.set("set"), c.u64("k"), c.window("search")))};
}

std::vector<OpResult> op_syndetic(const OpContext& c) {
    return {verdict_row(check_syndetic(c.set("set"), c.u64("max_cover"), c.window("window")))};
}

std::vector<OpResult> op_pws(const OpContext& c) {
    return {verdict_row(check_pws(c.set("set"), c.u64("kK"), c.u64("k_thick"), c.window("search")))};
}

std::vector<OpResult> op_piecewise_bohr(const OpContext& c) {
    const DescribedSet b = c.set("bohr");
    if (!b.bohr_spec()) throw ContractError("key 'bohr' must name a bohr(...) set");
    return {verdict_row(check_piecewise_bohr(c.set("set"), *b.bohr_spec(), c.u64("k_thick"), c.window("search"), c.u64("positions", 8)))};
}

std::vector<OpResult> op_shifted_window(const OpContext& c) {
    const ElemSet k = enumerate_window(c.group(), c.window("shape"));
    const ShiftWitness w = shifted_window_witness(c.set("set"), k, c.rational("beta"), c.window("search"));
    return {cert_row(w.cert, "t=" + to_string(w.t) + " count=" + std::to_string(w.count), Rational(w.count, k.size()))};
}

std::vector<OpResult> op_interval(const OpContext& c) {
    std::optional<Rational> ca, cb;
    if (c.has("certified_a")) ca = c.rational("certified_a");
    if (c.has("certified_b")) cb = c.rational("certified_b");
    const IntervalWitness w = interval_in_sumset(c.set("a"), c.set("b"), c.u64("n"), c.window("window_a"), c.window("search"), ca, cb);
    return {cert_row(w.cert, "t=" + to_string(w.t) + (w.via_proof ? " route=proof" : " route=sumset"), w.alpha)};
}

std::vector<OpResult> op_hurray(const OpContext& c) {
    const ElemSet a0 = enumerate(c.set("a0"), c.window("a0_window")).elements();
    if (a0.empty()) throw HypothesisUnmet("A0 is empty on " + c.str("a0_window"));
    const HurrayWitness w = hurray_witness(a0, c.set("b"), c.rational("beta"), c.window("search"));
    return {cert_row(w.cert, "t=" + to_string(w.t) + " |C|=" + std::to_string(w.c.size()), Rational(w.c.size(), a0.size()))};
}

std::vector<OpResult> op_dd(const OpContext& c) {
    const ElemSet h = enumerate_window(c.group(), c.window("h"));
    const DDWitness w = dd_witness(c.set("a"), c.set("b"), h, folner_of(c), c.u64("depth"), c.rational("beta"), c.window("search"));
    return {cert_row(w.cert, "t=" + to_string(w.t) + " n=" + std::to_string(w.n) + " |D0|=" + std::to_string(w.d0.size()),
                     Rational(w.d0.size()))};
}

std::vector<OpResult> op_jin(const OpContext& c) {
    const JinResult j = jin_pipeline(c.set("a"), c.set("b"), c.u64("kK"), c.u64("k_thick"), c.window("window"));
    OpResult r = cert_row(j.cert,
                          "k=" + std::to_string(j.k_radius) + " t=" + to_string(j.t) + " length=" + std::to_string(j.interval_length),
                          Rational(j.k_radius));
    r.verdict = j.verdict.to_json();
    return {r};
}

std::vector<OpResult> op_thick_split(const OpContext& c) {
    const std::string fam = c.str("family");
    std::optional<Int> n_max;
    if (c.has("n_max")) n_max = Int(c.u64("n_max"));
    BlockFamily t = fam == "squares"  ? BlockFamily::squares(n_max)
                    : fam == "dyadic" ? BlockFamily::dyadic(n_max)
                    : fam == "balls"  ? BlockFamily::balls(c.group(), n_max)
                                      : throw ContractError("unknown block family '" + fam + "' (squares, dyadic, balls)");
    const ThickSplit s = thick_split(t, c.u64("steps"), c.window("verify"));
    std::string w;
    for (std::size_t i = 0; i < s.b_index.size(); ++i) w += (i ? " " : "") + std::string("n_b") + std::to_string(i + 1) + "=" + to_string(s.b_index[i]);
    return {cert_row(s.cert, w)};
}

std::vector<OpResult> op_escape(const OpContext& c) {
    const EscapeWitness e = heisenberg_escape_check(c.set("a"), c.set("b"), c.u64("n_max"), c.window("search"));
    return {cert_row(e.cert, "a=" + to_string(e.a) + " b1=" + to_string(e.b1) + " b2=" + to_string(e.b2) + " m=" + to_string(e.m) +
                                 " n0=" + to_string(e.n0),
                     Rational(e.m))};
}

std::vector<OpResult> op_bogolyubov(const OpContext& c) {
    const BogolyubovResult b = bogolyubov_bohr_extract(c.set("set"), c.window("window"), c.real("theta", 0.4), c.u64("max_frequencies", 16));
    std::string w = "frequencies=";
    for (std::size_t i = 0; i < b.frequencies.size(); ++i) w += (i ? ";" : "") + to_fraction_string(b.frequencies[i]);
    return {cert_row(b.cert, w, b.exceptional_density)};
}

std::vector<OpResult> op_k_folded(const OpContext& c) {
    const KFoldResult k = demo_k_folded(c.set("a"), c.set("b"), c.u64("k"), c.window("window"), c.u64("kK", 50), c.u64("k_thick", 999));
    std::string w;
    for (std::size_t i = 0; i < k.intervals.size(); ++i) w += (i ? " " : "") + k.intervals[i].to_string();
    return {cert_row(k.cert, w)};
}

} // namespace

const std::vector<OpEntry>& op_table() {
    static const std::vector<OpEntry> table = {
        {{"relative_density", "|A ∩ E| / |E| over a window", {"set", "window"}, {}}, op_relative_density},
        {{"upper_density", "max over n in [n_min, n_max] of d_{F_n}(A)", {"set", "n_max"}, {"n_min", "family"}}, op_upper_density},
        {{"banach_density", "max over t in search of |A ∩ Kt| / |K|", {"set", "shape", "search"}, {}}, op_banach_density},
        {{"growth", "Banach estimate of [-k,k]^d A for k <= k_max", {"set", "k_max", "shape", "search"}, {}}, op_growth},
        {{"growth_upper", "upper density of [-k,k]^d A for k <= k_max", {"set", "k_max", "n_max"}, {"n_min", "family"}}, op_growth_upper},
        {{"invariance_defect", "max over the radius-r ball of |gF_n △ F_n| / |F_n|", {"n"}, {"radius", "family"}}, op_invariance_defect},
        {{"thick", "some F_k t inside the set", {"set", "k", "search"}, {}}, op_thick},
        {{"syndetic", "smallest box F with FS covering the window collar", {"set", "max_cover", "window"}, {}}, op_syndetic},
        {{"pws", "smallest K with KC thick", {"set", "kK", "k_thick", "search"}, {}}, op_pws},
        {{"piecewise_bohr", "translates t with nonempty Bohr ∩ F t inside C", {"set", "bohr", "k_thick", "search"}, {"positions"}}, op_piecewise_bohr},
        {{"shifted_window", "first t with |B ∩ Kt| >= beta |K|", {"set", "shape", "beta", "search"}, {}}, op_shifted_window},
        {{"interval", "{0..n} + t inside (A ∩ W_A) + B", {"a", "b", "n", "window_a", "search"}, {"certified_a", "certified_b"}}, op_interval},
        {{"hurray", "C C^-1 t inside A0 B with |C| >= beta |A0|", {"a0", "a0_window", "b", "beta", "search"}, {}}, op_hurray},
        {{"dd", "(H ∩ D0 D0^-1) t inside A B", {"a", "b", "h", "depth", "beta", "search"}, {"family"}}, op_dd},
        {{"jin", "K (A ∩ W) + (B ∩ W) contains a long interval", {"a", "b", "kK", "k_thick", "window"}, {}}, op_jin},
        {{"thick_split", "T1 + T2 inside T for a block family", {"family", "steps", "verify"}, {"n_max"}}, op_thick_split},
        {{"escape", "a b1 in a far block of T while a b2 leaves T (H3)", {"a", "b", "n_max", "search"}, {}}, op_escape},
        {{"bogolyubov", "Bohr set from the large spectrum of A", {"set", "window"}, {"theta", "max_frequencies"}}, op_bogolyubov},
        {{"k_folded", "C_1 + ... + C_k inside A + B with piecewise Bohr C_i", {"a", "b", "k", "window"}, {"kK", "k_thick"}}, op_k_folded},
    };
    return table;
}

} // namespace sumset::harness
