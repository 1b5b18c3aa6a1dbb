#include "sumset/witnesses.hpp"

#include "sumset/caps.hpp"
#include "sumset/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

namespace sumset {

namespace {

using nlohmann::json;

std::int64_t lo_of(const Window& w) { return to_i64_or_throw(w[0].lo, "window bound"); }

// First a ∈ A with a + g ∈ A; bits over a window of the line.
std::optional<std::uint64_t> difference_source(const Bitset& a, std::int64_t g) {
    for (auto j = a.find_first(); j != Bitset::npos; j = a.find_next(j + 1)) {
        const auto k = static_cast<std::int64_t>(j) + g;
        if (k >= 0 && k < static_cast<std::int64_t>(a.size()) && a.test(static_cast<std::uint64_t>(k))) return j;
    }
    return std::nullopt;
}

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// |sum_x 1_A(x) e(-xξ/N)| for ξ = 0..N/2.
std::vector<double> spectrum(const Bitset& bits) {
    const auto n = static_cast<int>(bits.size());
    std::vector<double> in(bits.size());
    for (std::uint64_t i = 0; i < bits.size(); ++i) in[i] = bits.test(i) ? 1.0 : 0.0;
    const int half = n / 2 + 1;
    fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(half));
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(n, in.data(), out, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::vector<double> mag(static_cast<std::size_t>(half));
    for (int i = 0; i < half; ++i) mag[static_cast<std::size_t>(i)] = std::hypot(out[i][0], out[i][1]);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(out);
    return mag;
}

} // namespace

ThickSplit thick_split(const BlockFamily& t, std::uint64_t steps, const Window& verify) {
    const GroupSpec& g = t.group();
    if (!g.abelian()) throw ContractError("thick_split needs an abelian group");
    if (steps == 0) throw ContractError("thick_split needs at least one step");
    const Int base = std::max<Int>(t.n_lo(), 1);
    auto shape = [&](std::uint64_t l) { return t.shape(base + l - 1); };
    auto pick = [&](const Window& need, const std::string& what) {
        const auto n = t.first_shape_containing(need, base);
        if (!n) throw BlockFamilyExhausted("no block shape contains " + need.to_string() + " (" + what + ")");
        return *n;
    };

    // Bounding boxes of {0} ∪ T1 and {0} ∪ T2 so far.
    const Window zero = Window::point(identity(g));
    ThickSplit out;
    out.a.push_back(identity(g));
    Window ua = hull(zero, shape(1));
    Window ub = zero;
    for (std::uint64_t j = 1; j <= steps; ++j) {
        const Window kj = shape(j);
        if (j > 1) {
            const Int n = pick(minkowski(kj, minkowski(ua, ub)), "a_" + std::to_string(j));
            out.a.push_back(t.translator(n));
            out.a_index.push_back(n);
            ua = hull(ua, kj.translated(out.a.back()));
        }
        const Int n = pick(minkowski(kj, minkowski(ua, ub)), "b_" + std::to_string(j));
        out.b.push_back(t.translator(n));
        out.b_index.push_back(n);
        ub = hull(ub, kj.translated(out.b.back()));
    }

    json left = json::array(), right = json::array();
    for (std::uint64_t l = 1; l <= steps; ++l) {
        left.push_back({shape(l).to_string(), to_string(out.a[l - 1])});
        right.push_back({shape(l).to_string(), to_string(out.b[l - 1])});
    }
    out.cert.lemma = "ThickSplit";
    out.cert.group = g;
    out.cert.add_set("T", block_set(t));
    out.cert.witness = {{"steps", steps}, {"T1", left}, {"T2", right}};
    out.cert.checks.push_back({{"op", "sum_boxes_in"}, {"set", "T"}, {"left", left}, {"right", right}, {"window", verify.to_string()}});
    return out;
}

DescribedSet heisenberg_thick_T(std::uint64_t n_max) { return block_set(BlockFamily::heisenberg_T(Int(n_max))); }

EscapeWitness heisenberg_escape_check(const DescribedSet& a, const DescribedSet& b, std::uint64_t n_max,
                                      const Window& search) {
    const GroupSpec& g = a.group();
    if (g.kind() != GroupKind::HeisenbergZ) throw ContractError("escape check runs on H3");
    const ElemSet bs = enumerate(b, search).elements();
    if (bs.empty()) throw HypothesisUnmet("B has no element in " + search.to_string());
    const Elem& b1 = bs.front();
    auto b2 = std::find_if(bs.begin(), bs.end(), [&](const Elem& e) { return e[1] != b1[1]; });
    if (b2 == bs.end()) throw HypothesisUnmet("all elements of B in " + search.to_string() + " share one y coordinate");

    Int n0 = 0;
    for (const Elem* e : {&b1, &*b2})
        for (const auto& c : *e) n0 += boost::multiprecision::abs(c);
    n0 *= 10;

    const BlockFamily fam = BlockFamily::heisenberg_T(Int(n_max));
    const DescribedSet tset = block_set(fam);
    for (const auto& av : enumerate(a, search).elements()) {
        const Elem p1 = mul(g, av, b1), p2 = mul(g, av, *b2);
        const Int gap = boost::multiprecision::abs(Int(b1[2] - (*b2)[2] + av[0] * (b1[1] - (*b2)[1])));
        for (const Int& m : fam.blocks_meeting(Window::point(p1))) {
            if (m < n0 || !fam.block_contains(m, p1) || !(2 * m < gap) || member(tset, p2)) continue;
            EscapeWitness out;
            out.a = av;
            out.b1 = b1;
            out.b2 = *b2;
            out.m = m;
            out.n0 = n0;
            out.cert.lemma = "HeisenbergEscape";
            out.cert.group = g;
            out.cert.add_set("A", a);
            out.cert.add_set("B", b);
            out.cert.add_set("T", tset);
            out.cert.witness = {{"a", to_string(av)}, {"b1", to_string(b1)}, {"b2", to_string(*b2)},
                                {"m", to_string(m)}, {"n0", to_string(n0)}};
            auto mem = [&](const char* s, const Elem& e, bool expect) {
                out.cert.checks.push_back({{"op", "member"}, {"set", s}, {"elem", to_string(e)}, {"expect", expect}});
            };
            mem("A", av, true);
            mem("B", b1, true);
            mem("B", *b2, true);
            mem("T", p1, true);
            mem("T", p2, false);
            out.cert.checks.push_back(
                {{"op", "escape"}, {"a", to_string(av)}, {"b1", to_string(b1)}, {"b2", to_string(*b2)}, {"m", to_string(m)}});
            return out;
        }
    }
    throw HypothesisUnmet("no a in A ∩ " + search.to_string() + " puts a·b1 in a block of index >= " + to_string(n0) +
                          " with a·b2 outside T");
}

BogolyubovResult bogolyubov_bohr_extract(const DescribedSet& a, const Window& w, double theta,
                                         std::size_t max_frequencies) {
    const GroupSpec& g = a.group();
    if (g.kind() != GroupKind::IntegerLine) throw ContractError("bogolyubov extraction is implemented on Z only");
    if (max_frequencies == 0) throw ContractError("max_frequencies must be positive");
    const std::uint64_t n = w.cells("bogolyubov window");
    if (n > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) throw ResourceCapError("fft length", std::numeric_limits<int>::max(), n);
    const WindowSet ea = enumerate(a, w);
    const std::uint64_t size = ea.count();
    if (size == 0) throw ContractError("A ∩ " + w.to_string() + " is empty");

    const std::vector<double> mag = spectrum(ea.bits);
    std::vector<std::size_t> keep;
    for (std::size_t xi = 0; xi < mag.size(); ++xi)
        if (mag[xi] >= theta * static_cast<double>(size)) keep.push_back(xi);
    if (keep.empty()) throw SpectrumEmpty("no frequency reaches theta = " + std::to_string(theta));
    std::stable_sort(keep.begin(), keep.end(), [&](std::size_t x, std::size_t y) { return mag[x] > mag[y]; });
    if (keep.size() > max_frequencies) keep.resize(max_frequencies);
    std::sort(keep.begin(), keep.end());

    std::vector<Character> chars;
    std::vector<Rational> freqs;
    std::vector<double> mags;
    for (std::size_t xi : keep) {
        freqs.emplace_back(Int(xi), Int(n));
        mags.push_back(mag[xi] / static_cast<double>(size));
        chars.push_back(Character{{Frequency::exact(freqs.back())}, 0});
    }
    BohrSpec spec(chars, Rational(1, 4 * static_cast<long long>(keep.size())));

    const auto quarter = static_cast<std::int64_t>(n / 4);
    const Window core = Window::interval(-quarter, quarter);
    const ElemSet bohr_core = bohr_enumerate(g, spec, core);
    const WindowSet diff = difference_line(ea);
    const std::int64_t d0 = lo_of(diff.window), src0 = lo_of(w);

    json pairs = json::array(), exceptions = json::array();
    std::uint64_t exc = 0;
    for (const auto& e : bohr_core) {
        const std::int64_t x = to_i64_or_throw(e[0], "core element");
        const std::uint64_t di = static_cast<std::uint64_t>(x - d0);
        if (di >= diff.bits.size() || !diff.bits.test(di)) {
            ++exc;
            exceptions.push_back(to_string(e));
            continue;
        }
        const auto j = difference_source(ea.bits, x);
        const std::int64_t a2 = src0 + static_cast<std::int64_t>(*j);
        pairs.push_back({to_string(e), to_string(make_elem({a2 + x})), to_string(make_elem({a2}))});
    }

    BogolyubovResult out{spec, freqs, mags, Rational(exc, bohr_core.size()), core, {}};
    out.cert.lemma = "BogolyubovBohr";
    out.cert.group = g;
    out.cert.add_set("A", a);
    out.cert.add_set("Bohr", bohr_set(g, spec));
    json fj = json::array();
    for (const auto& f : freqs) fj.push_back(to_fraction_string(f));
    out.cert.witness = {{"frequencies", fj},
                        {"radius", to_fraction_string(spec.radius())},
                        {"theta", theta},
                        {"core", core.to_string()},
                        {"exceptional_density", to_fraction_string(out.exceptional_density)}};
    out.cert.checks.push_back({{"op", "difference_cover"},
                               {"bohr", "Bohr"},
                               {"a", "A"},
                               {"core", core.to_string()},
                               {"source", w.to_string()},
                               {"pairs", pairs},
                               {"exceptions", exceptions},
                               {"density", to_fraction_string(out.exceptional_density)}});
    return out;
}

KFoldResult demo_k_folded(const DescribedSet& a, const DescribedSet& b, std::uint64_t k, const Window& w,
                          std::uint64_t kK, std::uint64_t k_thick) {
    const GroupSpec& g = a.group();
    if (g.kind() != GroupKind::IntegerLine) throw ContractError("demo_k_folded is implemented on Z only");
    if (k == 0 || k > k_thick) throw ContractError("k must lie in [1, k_thick]");

    const JinResult jin = jin_pipeline(a, b, kK, k_thick, w);
    const BogolyubovResult bog = bogolyubov_bohr_extract(a, w);
    const DescribedSet sum = product(a, b, w, w);

    // Shrink the Bohr radius until Bohr ∩ [t, t + k_thick] ⊆ A + B for some t.
    std::optional<BohrSpec> spec;
    std::optional<Elem> t;
    Rational eps = bog.spec.radius();
    for (int attempt = 0; attempt < 8 && !t; ++attempt, eps /= 2) {
        const BohrSpec s = bog.spec.with_radius(eps);
        const StructureVerdict v = check_piecewise_bohr(sum, s, k_thick, w, 1);
        if (v.passed) {
            spec = s;
            t = v.t;
        }
    }
    if (!t) throw NotFoundAtScale("piecewise_bohr", "window " + w.to_string() + ", k_thick " + std::to_string(k_thick));

    // Bohr(ε/k)^k ⊆ Bohr(ε) since every centre is 0.
    const BohrSpec part = spec->with_radius(spec->radius() / Int(k));
    const std::int64_t t0 = to_i64_or_throw((*t)[0], "thick start");
    const auto kt = static_cast<std::int64_t>(k_thick);
    const ElemSet first = bohr_enumerate(g, part, Window::interval(t0, t0 + kt));
    if (first.empty()) throw NotFoundAtScale("k_fold", "Bohr(eps/k) misses [t, t + k_thick]");
    const std::int64_t x0 = to_i64_or_throw(first.front()[0], "piece start");
    const std::int64_t m = (t0 + kt - x0) / static_cast<std::int64_t>(k);

    KFoldResult out;
    out.cert.lemma = "KFolded";
    out.cert.group = g;
    out.cert.add_set("A", a);
    out.cert.add_set("B", b);
    json parts = json::array();
    for (std::uint64_t i = 0; i < k; ++i) {
        const std::int64_t lo = i == 0 ? x0 : 0;
        const Window iv = Window::interval(lo, lo + m);
        out.intervals.push_back(iv);
        out.bohr_parts.push_back(part);
        out.pieces.push_back(set_intersection(
            {bohr_set(g, part), block_set(BlockFamily::explicit_blocks(g, Side::Right, {{iv, identity(g)}}))}));
        const std::string name = "C" + std::to_string(i + 1);
        out.cert.add_set(name, out.pieces.back());
        parts.push_back({name, iv.to_string()});
    }

    const WindowSet ea = enumerate(a, w), eb = enumerate(b, w);
    WindowSet acc = enumerate(out.pieces[0], out.intervals[0]);
    for (std::uint64_t i = 1; i < k; ++i) acc = sumset_line(acc, enumerate(out.pieces[i], out.intervals[i]));
    const std::int64_t acc0 = lo_of(acc.window), w0 = lo_of(w);
    json factors = json::array();
    for (auto j = acc.bits.find_first(); j != Bitset::npos; j = acc.bits.find_next(j + 1)) {
        const std::int64_t z = acc0 + static_cast<std::int64_t>(j);
        bool found = false;
        for (auto i = ea.bits.find_first(); i != Bitset::npos && !found; i = ea.bits.find_next(i + 1)) {
            const std::int64_t av = w0 + static_cast<std::int64_t>(i), bi = z - av - w0;
            if (bi < 0 || bi >= static_cast<std::int64_t>(eb.bits.size()) || !eb.bits.test(static_cast<std::uint64_t>(bi))) continue;
            factors.push_back({std::to_string(z), std::to_string(av), std::to_string(z - av)});
            found = true;
        }
        if (!found) throw NotFoundAtScale("k_fold", std::to_string(z) + " has no factorization in the window");
    }
    json jin_json = jin.verdict.to_json();
    out.cert.witness = {{"k", k},
                        {"t", std::to_string(t0)},
                        {"bohr", spec->to_expr()},
                        {"pieces", parts},
                        {"jin", jin_json}};
    out.cert.checks.push_back({{"op", "sumset_cover"}, {"parts", parts}, {"left", "A"}, {"right", "B"}, {"factors", factors}});
    return out;
}

} // namespace sumset
