#include "doctest.h"
#include "oracle.hpp"

#include "sumset/errors.hpp"
#include "sumset/structure.hpp"

#include <random>

using namespace sumset;

namespace {

const GroupSpec Z = GroupSpec::line();
const GroupSpec Z2 = GroupSpec::lattice(2);
const GroupSpec H = GroupSpec::heisenberg();

Elem e1(long long x) { return make_elem({x}); }
DescribedSet evens() { return periodic(Z, {Int(2)}, {e1(0)}); }
DescribedSet odds() { return periodic(Z, {Int(2)}, {e1(1)}); }
DescribedSet squares_blocks() { return block_set(BlockFamily::squares()); }

long long pick(std::mt19937_64& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

// First t in lexicographic order with F·t ⊆ T, by member queries.
std::optional<Elem> brute_thick(const DescribedSet& t, std::uint64_t k, const Window& search) {
    const GroupSpec& g = t.group();
    const ElemSet f = enumerate_window(g, shape_box(g, k));
    for (const auto& s : enumerate_window(g, search)) {
        bool ok = true;
        for (const auto& x : f) ok = ok && member(t, mul(g, x, s));
        if (ok) return s;
    }
    return std::nullopt;
}

// Smallest r with shape_box(r) S covering the collar of w, by member queries.
std::optional<std::uint64_t> brute_syndetic(const DescribedSet& s, std::uint64_t max_cover, const Window& w) {
    const GroupSpec& g = s.group();
    for (std::uint64_t r = 0; shape_box(g, r).cardinality() <= max_cover; ++r) {
        const ElemSet f = enumerate_window(g, shape_box(g, r));
        bool ok = true;
        std::uint64_t collar = 0;
        for (const auto& x : enumerate_window(g, w)) {
            bool inside = true, hit = false;
            for (const auto& a : f) {
                const Elem y = mul(g, inv(g, a), x);
                inside = inside && w.contains(y);
                hit = hit || member(s, y);
            }
            if (!inside) continue;
            ++collar;
            ok = ok && hit;
        }
        if (ok && collar > 0) return r;
    }
    return std::nullopt;
}

DescribedSet random_sparse(const GroupSpec& g, std::mt19937_64& rng) {
    const Rational p(pick(rng, 5, 10), 10);
    switch (pick(rng, 0, 2)) {
    case 0: return random_density(g, p, rng());
    case 1: return set_union({random_density(g, p, rng()), block_set(g.kind() == GroupKind::HeisenbergZ ? BlockFamily::heisenberg_T(Int(4)) : BlockFamily::balls(g, Int(3)))});
    default: return complement(random_density(g, Rational(1) - p, rng()));
    }
}

} // namespace

TEST_CASE("thick examples") {
    const auto all = check_thick(universe(Z), 7, Window::interval(-3, 10));
    CHECK(all.passed);
    CHECK(*all.t == e1(-3));
    const auto sq = check_thick(squares_blocks(), 10, Window::interval(0, 20000));
    CHECK(sq.passed);
    CHECK(*sq.t == e1(100));
    CHECK_FALSE(check_thick(evens(), 1, Window::interval(0, 1000)).passed);
    const auto ht = check_thick(block_set(BlockFamily::heisenberg_T(Int(10))), 5, Window({{0, 100}, {-2, 2}, {-2, 2}}));
    CHECK(ht.passed);
    CHECK(*ht.t == make_elem({25, 0, 0}));
    CHECK(recheck_verdict(sq, squares_blocks()));
    CHECK(recheck_verdict(ht, block_set(BlockFamily::heisenberg_T(Int(10)))));
}

TEST_CASE("check_thick agrees with brute force and rechecks") {
    std::mt19937_64 rng(31);
    for (const auto& g : {Z, Z2, H}) {
        for (int i = 0; i < 60; ++i) {
            const auto s = random_sparse(g, rng);
            const std::uint64_t k = pick(rng, 0, g.dim() == 1 ? 6 : 1);
            std::vector<Interval> iv;
            for (std::size_t d = 0; d < g.dim(); ++d) {
                const long long lo = pick(rng, -8, 8);
                iv.push_back({Int(lo), Int(lo + pick(rng, 0, g.dim() == 1 ? 300 : 6))});
            }
            const Window w(iv);
            const auto v = check_thick(s, k, w);
            const auto want = brute_thick(s, k, w);
            REQUIRE(v.passed == want.has_value());
            if (v.passed) {
                CHECK(*v.t == *want);
                CHECK(recheck_verdict(v, s));
                // Monotone in k.
                if (k > 0) CHECK(check_thick(s, k - 1, w).passed);
            }
        }
    }
}

TEST_CASE("syndetic examples") {
    const auto ev = check_syndetic(evens(), 10, Window::interval(0, 10000));
    CHECK(ev.passed);
    CHECK(ev.witness["F"] == "[0,1]");
    CHECK(recheck_verdict(ev, evens()));
    CHECK_FALSE(check_syndetic(squares_blocks(), 50, Window::interval(0, 10000)).passed);
    CHECK_FALSE(check_syndetic(evens(), 1, Window::interval(0, 100)).passed);
}

TEST_CASE("golden bohr set is syndetic with three gaps") {
    const auto spec = BohrSpec::on_line(Frequency::exact(parse_rational("0.6180339887")), Rational(0), Rational(1, 10));
    const auto b = bohr_set(Z, spec);
    const auto v = check_syndetic(b, 1000, Window::interval(0, 1000000));
    CHECK(v.passed);
    // Oracle: ||n alpha|| < 1/10 with alpha = 6180339887 / 10^10, in integers.
    const __int128 den = 10000000000LL, num = 6180339887LL;
    std::set<long long> gaps;
    long long prev = -1, maxgap = 0;
    for (long long n = 0; n <= 1000000; ++n) {
        const __int128 x = (num * n) % den;
        const __int128 dist = std::min(x, den - x);
        if (dist * 10 < den) {
            if (prev >= 0) gaps.insert(n - prev), maxgap = std::max(maxgap, n - prev);
            prev = n;
        }
    }
    CHECK(gaps.size() <= 3);
    CHECK(v.witness["radius"].get<long long>() == maxgap - 1);
}

TEST_CASE("check_syndetic agrees with brute force") {
    std::mt19937_64 rng(32);
    for (const auto& g : {Z, Z2, H}) {
        for (int i = 0; i < 30; ++i) {
            const auto s = random_sparse(g, rng);
            std::vector<Interval> iv;
            for (std::size_t d = 0; d < g.dim(); ++d) {
                const long long lo = pick(rng, -8, 8);
                iv.push_back({Int(lo), Int(lo + pick(rng, 2, g.dim() == 1 ? 200 : (g.dim() == 2 ? 12 : 6)))});
            }
            const Window w(iv);
            const std::uint64_t cap = g.dim() == 1 ? 12 : 27;
            const auto v = check_syndetic(s, cap, w);
            const auto want = brute_syndetic(s, cap, w);
            INFO(s.to_expr(), " ", w.to_string());
            REQUIRE(v.passed == want.has_value());
            if (v.passed) {
                CHECK(v.witness["radius"].get<std::uint64_t>() == *want);
                CHECK(recheck_verdict(v, s));
                CHECK(check_syndetic(s, cap * 4, w).passed);
            }
        }
    }
}

TEST_CASE("bohr sets are syndetic at scale") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 20; ++i) {
        const Rational alpha(pick(rng, 1, 996), 997);
        const Rational eps(pick(rng, 5, 45), 100);
        const auto b = bohr_set(Z, BohrSpec::on_line(Frequency::exact(alpha), Rational(pick(rng, 0, 9), 10), eps));
        CHECK(check_syndetic(b, 2000, Window::interval(0, 1000000)).passed);
    }
}

TEST_CASE("pws examples") {
    const auto ev = check_pws(evens(), 3, 20, Window::interval(0, 1000));
    CHECK(ev.passed);
    CHECK(ev.witness["radius"] == 1);
    CHECK(recheck_verdict(ev, evens()));
    const auto sq = check_pws(squares_blocks(), 3, 10, Window::interval(0, 20000));
    CHECK(sq.passed);
    CHECK(sq.witness["radius"] == 0);
    CHECK(recheck_verdict(sq, squares_blocks()));
    ElemSet pows;
    for (int n = 4; n <= 30; ++n) pows.push_back(e1(1LL << n));
    CHECK_FALSE(check_pws(explicit_set(Z, pows), 5, 10, Window::interval(0, 1000000)).passed);
}

TEST_CASE("pws is monotone and matches the dilation oracle") {
    std::mt19937_64 rng(34);
    for (int i = 0; i < 30; ++i) {
        const auto c = random_density(Z, Rational(pick(rng, 1, 4), 10), rng());
        const std::uint64_t kk = pick(rng, 0, 6), kt = pick(rng, 3, 20);
        const Window s = Window::interval(0, 3000);
        const auto v = check_pws(c, kk, kt, s);
        std::optional<std::uint64_t> want;
        for (std::uint64_t r = 0; r <= kk && !want; ++r) {
            ElemSet k;
            for (std::uint64_t j = 0; j <= r; ++j) k.push_back(e1(static_cast<long long>(j)));
            if (brute_thick(dilate(c, k), kt, s)) want = r;
        }
        REQUIRE(v.passed == want.has_value());
        if (v.passed) {
            CHECK(v.witness["radius"].get<std::uint64_t>() == *want);
            CHECK(recheck_verdict(v, c));
        }
    }
}

TEST_CASE("partition regularity smoke test") {
    std::mt19937_64 rng(35);
    const auto c = squares_blocks();
    for (int i = 0; i < 20; ++i) {
        const auto colour = random_density(Z, Rational(1, 2), rng());
        const auto red = set_intersection({c, colour});
        const auto blue = set_intersection({c, complement(colour)});
        const Window s = Window::interval(0, 100000);
        CHECK((check_pws(red, 8, 5, s).passed || check_pws(blue, 8, 5, s).passed));
    }
}

TEST_CASE("bohr enumeration") {
    const auto half = BohrSpec::on_line(Frequency::exact(Rational(1, 2)), Rational(0), Rational(1, 4));
    CHECK(bohr_enumerate(Z, half, Window::interval(-4, 4)) == enumerate(evens(), Window::interval(-4, 4)).elements());
    const auto triv = BohrSpec::on_line(Frequency::exact(Rational(0)), Rational(0), Rational(1, 4));
    CHECK(bohr_enumerate(Z, triv, Window::interval(0, 50)).size() == 51);
    const auto gold = BohrSpec::on_line(Frequency::golden(), Rational(0), Rational(1, 10));
    const ElemSet got = bohr_enumerate(Z, gold, Window::interval(0, 100));
    // Oracle: alpha = 618033988749894848 / 10^18 in 128-bit integers.
    const __int128 den = static_cast<__int128>(1000000000000000000LL), num = 618033988749894848LL;
    ElemSet want;
    for (long long n = 0; n <= 100; ++n) {
        const __int128 x = (num * n) % den;
        if (std::min(x, den - x) * 10 < den) want.push_back(e1(n));
    }
    CHECK(got == want);
    CHECK(got.size() == 21);
    CHECK(ElemSet(got.begin(), got.begin() + 4) == ElemSet{e1(0), e1(5), e1(8), e1(13)});
    const auto z2 = BohrSpec({Character{{Frequency::exact(Rational(1, 3)), Frequency::exact(Rational(1, 5))}, Rational(0)}}, Rational(1, 10));
    for (const auto& x : bohr_enumerate(Z2, z2, Window::cube(2, -10, 10))) {
        const Rational v = Rational(x[0]) / 3 + Rational(x[1]) / 5;
        const Rational frac = v - Rational(boost::multiprecision::numerator(v) / boost::multiprecision::denominator(v));
        const Rational f = frac < 0 ? frac + 1 : frac;
        CHECK(std::min<Rational>(f, Rational(1 - f)) < Rational(1, 10));
    }
}

TEST_CASE("piecewise bohr") {
    const auto half = BohrSpec::on_line(Frequency::exact(Rational(1, 2)), Rational(0), Rational(1, 4));
    const auto ev = check_piecewise_bohr(evens(), half, 10, Window::interval(0, 100));
    CHECK(ev.passed);
    CHECK(*ev.t == e1(0));
    CHECK(recheck_verdict(ev, evens()));
    const auto c = set_intersection({evens(), squares_blocks()});
    const auto bl = check_piecewise_bohr(c, half, 10, Window::interval(0, 20000));
    CHECK(bl.passed);
    std::optional<long long> first;
    for (long long t = 0; t <= 20000 && !first; ++t) {
        bool ok = true;
        for (long long x = t; x <= t + 10; ++x) ok = ok && (x % 2 != 0 || member(squares_blocks(), e1(x)));
        if (ok) first = t;
    }
    CHECK(*bl.t == e1(*first));
    for (const auto& p : bl.witness["positions"]) {
        const long long t = std::stoll(p.get<std::string>());
        // Every evens element of [t, t+10] must lie in a block.
        for (long long x = t; x <= t + 10; x += 1)
            if (x % 2 == 0) CHECK(member(squares_blocks(), e1(x)));
    }
    CHECK(recheck_verdict(bl, c));
    CHECK_FALSE(check_piecewise_bohr(odds(), half, 3, Window::interval(0, 100)).passed);
}

TEST_CASE("pws transfer") {
    ShiftMap zero;
    zero.uniform = e1(0);
    const auto a = pws_transfer_check(evens(), evens(), zero, 3, 10, Window::interval(0, 100));
    CHECK(a.passed);
    CHECK(recheck_verdict(a, evens()));

    const auto s = squares_blocks();
    const auto t = translate(s, e1(5));
    ShiftMap five;
    five.uniform = e1(5);
    five.entries.push_back({Window::interval(0, 50), e1(5)});
    const auto b = pws_transfer_check(s, t, five, 2, 10, Window::interval(0, 20000));
    CHECK(b.passed);
    CHECK(*b.t == e1(105));
    CHECK(recheck_verdict(b, t));

    std::mt19937_64 rng(36);
    const auto r = random_density(Z, Rational(1, 2), rng());
    ShiftMap bad;
    bad.entries.push_back({Window::interval(0, 200), e1(1)});
    CHECK_THROWS_AS(pws_transfer_check(r, r, bad, 3, 4, Window::interval(0, 100)), HypothesisViolation);

    ShiftMap heis;
    heis.uniform = make_elem({0, 0, 3});
    const auto ht = block_set(BlockFamily::heisenberg_T(Int(8)));
    const auto hv = pws_transfer_check(ht, translate(ht, make_elem({0, 0, 3})), heis, 1, 2, Window({{0, 30}, {-1, 1}, {-1, 1}}));
    CHECK(hv.passed);
    CHECK(recheck_verdict(hv, translate(ht, make_elem({0, 0, 3}))));
}

TEST_CASE("verdicts serialise to stable json lines") {
    const auto v = check_thick(squares_blocks(), 10, Window::interval(0, 20000));
    const auto j = nlohmann::json::parse(v.to_jsonl());
    CHECK(j["property"] == "thick");
    CHECK(j["passed"] == true);
    CHECK(j["witness"]["t"] == "100");
    CHECK(j["scale"]["k"] == 10);
}
