#include "sumset/witnesses.hpp"

#include "sumset/errors.hpp"
#include "sumset/parallel.hpp"

#include "shift_scan.hpp"

#include <algorithm>

namespace sumset {

namespace {

using nlohmann::json;

Int ceil_of(const Rational& r) {
    Int q = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
    if (Rational(q) < r) ++q;
    return q;
}

json factor_check(const Elem& target, std::vector<std::pair<std::string, Elem>> factors) {
    json fs = json::array();
    for (const auto& [name, x] : factors) fs.push_back({name, to_string(x)});
    return {{"op", "factor"}, {"target", to_string(target)}, {"factors", fs}};
}

json elem_list(const ElemSet& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(to_string(x));
    return out;
}

void require_line(const GroupSpec& g, const char* what) {
    if (g.kind() != GroupKind::IntegerLine) throw ContractError(std::string(what) + " is implemented on Z only");
}

std::int64_t lo_of(const Window& w) { return to_i64_or_throw(w[0].lo, "window bound"); }
std::int64_t hi_of(const Window& w) { return to_i64_or_throw(w[0].hi, "window bound"); }

DescribedSet restricted(const DescribedSet& a, const Window& w) {
    const GroupSpec& g = a.group();
    return set_intersection({a, block_set(BlockFamily::explicit_blocks(g, Side::Right, {{w, identity(g)}}))});
}

} // namespace

ShiftWitness shifted_window_witness(const DescribedSet& b, const ElemSet& k, const Rational& beta, const Window& search) {
    if (k.empty()) throw ContractError("shifted window witness needs a nonempty K");
    if (beta <= 0 || beta > 1) throw ContractError("beta must lie in (0, 1]");
    const GroupSpec& g = b.group();
    const auto need = static_cast<std::uint64_t>(ceil_of(beta * Rational(k.size())));
    const detail::ShiftScan scan(g, k, search);
    const WindowSet ws = enumerate(b, scan.region());
    const auto hit = first_index(scan.shifts(), [&](std::uint64_t i) { return scan.count(ws.bits, i) >= need; });
    if (!hit) throw NotFoundAtScale("shifted_window", "search " + search.to_string() + ", need " + std::to_string(need));

    ShiftWitness out;
    out.t = scan.shift(*hit);
    out.count = scan.count(ws.bits, *hit);
    ElemSet kt;
    for (const auto& x : k) kt.push_back(mul(g, x, out.t));
    normalize(kt);
    out.cert.lemma = "ByShiftedSet";
    out.cert.group = g;
    out.cert.add_set("B", b);
    out.cert.add_set("K", explicit_set(g, k));
    out.cert.witness = {{"t", to_string(out.t)}, {"count", out.count}, {"beta", to_fraction_string(beta)}};
    out.cert.checks.push_back(
        {{"op", "count"}, {"set", "B"}, {"elems", elem_list(kt)}, {"at_least", need}, {"beta", to_fraction_string(beta)}, {"of", "K"}});
    return out;
}

IntervalWitness interval_in_sumset(const DescribedSet& a, const DescribedSet& b, std::uint64_t n, const Window& wa,
                                   const Window& search, std::optional<Rational> certified_a,
                                   std::optional<Rational> certified_b) {
    const GroupSpec& g = a.group();
    require_line(g, "interval_in_sumset");
    if (certified_a && certified_b && *certified_a + *certified_b <= 1)
        throw PreconditionUnverified("certified densities " + to_fraction_string(*certified_a) + " + " +
                                     to_fraction_string(*certified_b) + " do not exceed 1");
    const std::int64_t p = lo_of(wa), q = hi_of(wa), s0 = lo_of(search), s1 = hi_of(search);
    const auto len = static_cast<std::uint64_t>(q - p + 1);
    const auto ni = static_cast<std::int64_t>(n);

    // α = min_x |A ∩ (I + x)| / |I|
    const WindowSet ea = enumerate(a, Window::interval(p, q + ni));
    std::uint64_t min_c = len;
    for (std::uint64_t x = 0; x <= n; ++x) min_c = std::min(min_c, ea.bits.count_range(x, x + len));

    IntervalWitness out;
    out.alpha = Rational(min_c, len);
    out.cert.lemma = "ThickLemma";
    out.cert.group = g;
    out.cert.add_set("A", a);
    out.cert.add_set("B", b);

    // |B ∩ (t - I)| > (1 - α)|I| forces (t - I) ∩ B to meet every A - x.
    const std::int64_t b0 = s0 - q;
    const WindowSet eb = enumerate(b, Window::interval(b0, s1 - p));
    const auto shifts = static_cast<std::uint64_t>(s1 - s0 + 1);
    const auto hit = first_index(shifts, [&](std::uint64_t i) { return eb.bits.count_range(i, i + len) + min_c > len; });
    if (hit) {
        const std::int64_t t = s0 + static_cast<std::int64_t>(*hit);
        out.t = make_elem({t});
        for (std::int64_t x = 0; x <= ni; ++x) {
            for (std::int64_t i = p; i <= q; ++i) {
                if (!ea.bits.test(static_cast<std::uint64_t>(i - p + x)) || !eb.bits.test(static_cast<std::uint64_t>(t - i - b0)))
                    continue;
                out.cert.checks.push_back(factor_check(make_elem({x + t}), {{"A", make_elem({i + x})}, {"B", make_elem({t - i})}}));
                break;
            }
        }
    } else {
        out.via_proof = false;
        const WindowSet ew = enumerate(a, wa);
        const WindowSet sum = sumset_line(ew, eb);
        const std::int64_t r0 = lo_of(sum.window);
        const auto found = first_index(shifts, [&](std::uint64_t i) {
            const auto from = static_cast<std::uint64_t>(s0 + static_cast<std::int64_t>(i) - r0);
            return from + n < sum.bits.size() && sum.bits.count_range(from, from + n + 1) == n + 1;
        });
        if (!found)
            throw NotFoundAtScale("interval_in_sumset", "W_A " + wa.to_string() + ", search " + search.to_string() +
                                                            ", n " + std::to_string(n));
        const std::int64_t t = s0 + static_cast<std::int64_t>(*found);
        out.t = make_elem({t});
        for (std::int64_t x = 0; x <= ni; ++x) {
            for (auto j = ew.bits.find_first(); j != Bitset::npos; j = ew.bits.find_next(j + 1)) {
                const std::int64_t av = p + static_cast<std::int64_t>(j), bv = x + t - av;
                if (bv < b0 || bv > s1 - p || !eb.bits.test(static_cast<std::uint64_t>(bv - b0))) continue;
                out.cert.checks.push_back(factor_check(make_elem({x + t}), {{"A", make_elem({av})}, {"B", make_elem({bv})}}));
                break;
            }
        }
    }
    out.cert.witness = {{"t", to_string(out.t)},
                        {"n", n},
                        {"alpha", to_fraction_string(out.alpha)},
                        {"via_proof", out.via_proof},
                        {"W_A", wa.to_string()}};
    return out;
}

std::vector<DensityReport> growth_saturation(const DescribedSet& a, std::uint64_t k_max, const ElemSet& k_shape,
                                             const Window& search) {
    std::vector<DensityReport> rows;
    for (std::uint64_t k = 0; k <= k_max; ++k) {
        rows.push_back(banach_density_estimate(dilate(a, ball(a.group(), k)), k_shape, search));
        rows.back().scale = "k=" + std::to_string(k) + ", " + rows.back().scale;
    }
    return rows;
}

std::vector<DensityReport> growth_saturation_upper(const DescribedSet& a, std::uint64_t k_max, const FolnerFamily& f,
                                                   std::uint64_t n_min, std::uint64_t n_max) {
    std::vector<DensityReport> rows;
    for (std::uint64_t k = 0; k <= k_max; ++k) {
        rows.push_back(upper_density_estimate(dilate(a, ball(a.group(), k)), f, n_max, n_min));
        rows.back().scale = "k=" + std::to_string(k) + ", " + rows.back().scale;
    }
    return rows;
}

HurrayWitness hurray_witness(const ElemSet& a0, const DescribedSet& b, const Rational& beta, const Window& search) {
    if (a0.empty()) throw ContractError("hurray witness needs a nonempty A0");
    const GroupSpec& g = b.group();
    ElemSet a0n = a0;
    normalize(a0n);
    ElemSet a0inv;
    for (const auto& x : a0n) a0inv.push_back(inv(g, x));
    normalize(a0inv);
    const ShiftWitness sw = shifted_window_witness(b, a0inv, beta, search);

    HurrayWitness out;
    out.t = sw.t;
    ElemSet right;
    for (const auto& c : a0n) {
        Elem y = mul(g, inv(g, c), out.t);
        if (member(b, y)) {
            out.c.push_back(c);
            right.push_back(std::move(y));
        }
    }
    normalize(right);
    out.cert.lemma = "Hurray";
    out.cert.group = g;
    out.cert.add_set("A0", explicit_set(g, a0n));
    out.cert.add_set("B", b);
    out.cert.witness = {{"t", to_string(out.t)}, {"C", elem_list(out.c)}, {"beta", to_fraction_string(beta)}};
    out.cert.checks.push_back({{"op", "count"},
                               {"set", "B"},
                               {"elems", elem_list(right)},
                               {"at_least", static_cast<std::uint64_t>(ceil_of(beta * Rational(a0n.size())))},
                               {"beta", to_fraction_string(beta)},
                               {"of", "A0"}});
    out.cert.checks.push_back({{"op", "product_pairs"}, {"left", "A0"}, {"right", "B"}, {"C", elem_list(out.c)}, {"t", to_string(out.t)}});
    return out;
}

DDWitness dd_witness(const DescribedSet& a, const DescribedSet& b, const ElemSet& h, const FolnerFamily& f,
                     std::uint64_t depth, const Rational& beta, const Window& search) {
    const GroupSpec& g = a.group();
    ElemSet hs = h;
    normalize(hs);
    auto in_h = [&](const Elem& x) { return std::binary_search(hs.begin(), hs.end(), x); };

    std::optional<HurrayWitness> best;
    std::uint64_t best_n = 0, best_cover = 0;
    for (std::uint64_t n = 1; n <= depth; ++n) {
        const ElemSet a0 = enumerate(a, f.window(n)).elements();
        if (a0.empty()) continue;
        std::optional<HurrayWitness> hw;
        try {
            hw = hurray_witness(a0, b, beta, search);
        } catch (const NotFoundAtScale&) {
            continue;
        }
        ElemSet covered;
        for (const auto& x : hw->c)
            for (const auto& y : hw->c) {
                Elem d = div_right(g, x, y);
                if (in_h(d)) covered.push_back(std::move(d));
            }
        normalize(covered);
        if (!best || covered.size() > best_cover) {
            best = std::move(hw);
            best_n = n;
            best_cover = covered.size();
        }
    }
    if (!best) throw NotFoundAtScale("dd", "depth " + std::to_string(depth) + ", search " + search.to_string());

    // Greedy D0: take elements of C in order while they realise new h.
    DDWitness out;
    out.t = best->t;
    out.n = best_n;
    ElemSet realised;
    auto realise = [&](const Elem& d, bool commit) {
        std::size_t fresh = 0;
        for (const auto& e : out.d0)
            for (const Elem& x : {div_right(g, d, e), div_right(g, e, d)})
                if (in_h(x) && !contains(realised, x)) {
                    ++fresh;
                    if (commit) {
                        realised.push_back(x);
                        normalize(realised);
                    }
                }
        return fresh;
    };
    for (const auto& c : best->c) {
        if (out.d0.empty()) {
            out.d0.push_back(c);
            if (in_h(identity(g))) realised.push_back(identity(g));
            continue;
        }
        if (realise(c, false) == 0) continue;
        realise(c, true);
        out.d0.push_back(c);
    }
    normalize(out.d0);

    out.cert.lemma = "PiecewiseDD";
    out.cert.group = g;
    out.cert.add_set("A", a);
    out.cert.add_set("B", b);
    out.cert.witness = {{"t", to_string(out.t)}, {"n", out.n}, {"D0", elem_list(out.d0)}, {"H", elem_list(hs)}};
    for (const auto& hv : realised) {
        for (const auto& x : out.d0)
            for (const auto& y : out.d0)
                if (div_right(g, x, y) == hv) {
                    const Elem target = mul(g, hv, out.t);
                    out.cert.checks.push_back(factor_check(target, {{"A", x}, {"B", mul(g, inv(g, y), out.t)}}));
                    goto next;
                }
    next:;
    }
    return out;
}

JinResult jin_pipeline(const DescribedSet& a, const DescribedSet& b, std::uint64_t kK, std::uint64_t k_thick,
                       const Window& w) {
    const GroupSpec& g = a.group();
    require_line(g, "jin_pipeline");
    const std::uint64_t len = k_thick + 1;
    const std::int64_t lo = lo_of(w), hi = hi_of(w);
    if (hi - lo + 1 < static_cast<std::int64_t>(len)) throw ContractError("jin window is shorter than the thick interval");
    const Window search = Window::interval(lo, hi - static_cast<std::int64_t>(len) + 1);
    const ElemSet shape = anchored_box(g, k_thick);

    const DescribedSet aw = restricted(a, w), bw = restricted(b, w);
    const Rational db = banach_density_estimate(bw, shape, search).value;
    auto grows = [&](std::uint64_t k) { return banach_density_estimate(dilate(aw, ball(g, k)), shape, search).value + db > 1; };
    if (!grows(kK)) throw NotFoundAtScale("growth", "kK " + std::to_string(kK) + ", window " + w.to_string());
    std::uint64_t klo = 0, khi = kK;
    while (klo < khi) {
        const std::uint64_t mid = klo + (khi - klo) / 2;
        if (grows(mid)) khi = mid;
        else klo = mid + 1;
    }
    const std::uint64_t k = khi;
    const auto ki = static_cast<std::int64_t>(k);

    const WindowSet ea = enumerate(a, w), eb = enumerate(b, w);
    const WindowSet kball(Window::interval(-ki, ki), Bitset(2 * k + 1, true));
    const WindowSet ka = sumset_line(kball, ea);
    const WindowSet sum = sumset_line(ka, eb);
    std::uint64_t run = 0, start = 0;
    std::optional<std::uint64_t> at;
    for (std::uint64_t i = 0; i < sum.bits.size(); ++i) {
        if (!sum.bits.test(i)) {
            if (at) break;
            run = 0;
            continue;
        }
        if (run++ == 0) start = i;
        if (!at && run >= len) at = start;
    }
    if (!at) throw NotFoundAtScale("thickness", "k " + std::to_string(k) + ", window " + w.to_string());

    JinResult out;
    out.k_radius = k;
    out.interval_length = run;
    const std::int64_t s0 = lo_of(sum.window), ka0 = lo_of(ka.window), a0 = lo_of(ea.window);
    const std::int64_t t = s0 + static_cast<std::int64_t>(*at);
    out.t = make_elem({t});

    out.cert.lemma = "JinPipeline";
    out.cert.group = g;
    out.cert.add_set("K", block_set(BlockFamily::balls(g, Int(k))));
    out.cert.add_set("A", a);
    out.cert.add_set("B", b);
    for (std::int64_t x = t; x < t + static_cast<std::int64_t>(len); ++x) {
        bool done = false;
        for (auto j = eb.bits.find_first(); j != Bitset::npos && !done; j = eb.bits.find_next(j + 1)) {
            const std::int64_t bv = lo + static_cast<std::int64_t>(j), y = x - bv;
            if (y < ka0 || y >= ka0 + static_cast<std::int64_t>(ka.bits.size()) || !ka.bits.test(static_cast<std::uint64_t>(y - ka0)))
                continue;
            for (std::int64_t d = -ki; d <= ki; ++d) {
                const std::int64_t av = y - d;
                if (av < a0 || av > hi || !ea.bits.test(static_cast<std::uint64_t>(av - a0))) continue;
                out.cert.checks.push_back(
                    factor_check(make_elem({x}), {{"K", make_elem({d})}, {"A", make_elem({av})}, {"B", make_elem({bv})}}));
                done = true;
                break;
            }
        }
    }

    StructureVerdict& v = out.verdict;
    v.property = StructureVerdict::Property::Pws;
    v.scale = {{"kK", kK}, {"k_thick", k_thick}, {"window", w.to_string()}};
    v.passed = true;
    v.t = out.t;
    v.witness = {{"K", Window::interval(-ki, ki).to_string()},
                 {"radius", k},
                 {"F", Window::interval(0, static_cast<std::int64_t>(k_thick)).to_string()},
                 {"t", to_string(out.t)},
                 {"interval_length", run}};
    out.cert.witness = v.witness;
    return out;
}

} // namespace sumset
