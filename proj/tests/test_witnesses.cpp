#include "doctest.h"
#include "oracle.hpp"

#include "sumset/errors.hpp"
#include "sumset/expr.hpp"
#include "sumset/witnesses.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace sumset;

namespace {

const GroupSpec Z = GroupSpec::line();
const GroupSpec H = GroupSpec::heisenberg();

Elem e1(long long x) { return make_elem({x}); }
DescribedSet evens() { return periodic(Z, {Int(2)}, {e1(0)}); }
DescribedSet squares_blocks() { return block_set(BlockFamily::squares()); }
ElemSet interval(long long lo, long long hi) { return enumerate_window(Z, Window::interval(lo, hi)); }

long long pick(std::mt19937_64& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

// First t in search with |B ∩ Kt| >= need, by member queries.
std::optional<Elem> brute_shift(const DescribedSet& b, const ElemSet& k, std::uint64_t need, const Window& search) {
    const GroupSpec& g = b.group();
    for (const auto& t : enumerate_window(g, search)) {
        std::uint64_t c = 0;
        for (const auto& x : k) c += member(b, mul(g, x, t));
        if (c >= need) return t;
    }
    return std::nullopt;
}

// z ∈ (A ∩ wa) + B on Z, by direct search over wa.
bool in_sum(const DescribedSet& a, const DescribedSet& b, long long lo, long long hi, long long z) {
    for (long long x = lo; x <= hi; ++x)
        if (member(a, e1(x)) && member(b, e1(z - x))) return true;
    return false;
}

void require_replay(const WitnessCertificate& c) {
    const ReplayResult r = replay_json(c.to_json());
    INFO(r.failure);
    REQUIRE(r.ok);
}

} // namespace

TEST_CASE("shifted window witness examples") {
    const auto w1 = shifted_window_witness(evens(), interval(0, 9), Rational(1, 2), Window::interval(0, 100));
    CHECK(w1.t == e1(0));
    CHECK(w1.count == 5);
    require_replay(w1.cert);

    const auto w2 = shifted_window_witness(squares_blocks(), interval(0, 10), 1, Window::interval(0, 1000));
    CHECK(w2.t == e1(100));
    CHECK(w2.count == 11);
    require_replay(w2.cert);

    CHECK_THROWS_AS(shifted_window_witness(empty_set(Z), interval(0, 9), Rational(1, 10), Window::interval(0, 100)),
                    NotFoundAtScale);
    CHECK_THROWS_AS(shifted_window_witness(evens(), interval(0, 9), 0, Window::interval(0, 10)), ContractError);
}

TEST_CASE("shifted window witness matches brute force on Z and H3") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const bool heis = trial % 2 == 1;
        const GroupSpec& g = heis ? H : Z;
        const auto b = random_density(g, Rational(pick(rng, 1, 9), 10), rng());
        ElemSet k;
        const long long r = heis ? 1 : 12;
        for (const auto& x : enumerate_window(g, Window::cube(g.dim(), -r, r)))
            if (pick(rng, 0, 2) == 0) k.push_back(x);
        if (k.empty()) k.push_back(identity(g));
        const Rational beta(pick(rng, 1, 10), 10);
        const Window search = heis ? Window::cube(3, -2, 2) : Window::interval(0, 60);
        std::uint64_t need_exact = 0;
        while (Rational(need_exact) < beta * Rational(k.size())) ++need_exact;
        const auto want = brute_shift(b, k, need_exact, search);
        if (!want) {
            CHECK_THROWS_AS(shifted_window_witness(b, k, beta, search), NotFoundAtScale);
            continue;
        }
        const auto got = shifted_window_witness(b, k, beta, search);
        CHECK(got.t == *want);
        CHECK(got.count >= need_exact);
        require_replay(got.cert);
    }
}

TEST_CASE("interval in sumset examples") {
    const auto mod3 = periodic(Z, {Int(3)}, {e1(0), e1(1)});
    const auto w = interval_in_sumset(evens(), mod3, 10, Window::interval(0, 99), Window::interval(0, 100));
    CHECK(w.t == e1(0));
    CHECK(w.via_proof);
    CHECK(w.alpha == Rational(1, 2));
    for (long long x = 0; x <= 10; ++x) CHECK(in_sum(evens(), mod3, 0, 99, x));
    require_replay(w.cert);

    const auto single = explicit_set(Z, {e1(0)});
    const auto u = interval_in_sumset(universe(Z), single, 7, Window::interval(0, 99), Window::interval(5, 50));
    CHECK(u.t == e1(5));
    require_replay(u.cert);

    CHECK_THROWS_AS(interval_in_sumset(evens(), evens(), 1, Window::interval(0, 99), Window::interval(0, 100)),
                    NotFoundAtScale);
    CHECK_THROWS_AS(interval_in_sumset(evens(), evens(), 1, Window::interval(0, 99), Window::interval(0, 100),
                                       Rational(1, 2), Rational(1, 2)),
                    PreconditionUnverified);
}

TEST_CASE("interval in sumset succeeds whenever the densities certify 1 + delta") {
    std::mt19937_64 rng(2024);
    int certified = 0, failures = 0;
    const long long len = 400, s1 = 2000;
    for (int trial = 0; trial < 100; ++trial) {
        const Rational delta(pick(rng, 5, 30), 100);
        const Rational pa(pick(rng, 45, 85), 100);
        const Rational pb = std::min<Rational>(Rational(95, 100), 1 + delta - pa + Rational(8, 100));
        const auto a = random_density(Z, pa, rng());
        const auto b = random_density(Z, pb, rng());
        const Rational quarter = delta * Rational(len, 4);
        const auto n = static_cast<std::uint64_t>(boost::multiprecision::numerator(quarter) / boost::multiprecision::denominator(quarter));

        // α: worst window density of A - x over x <= n; β: best density of B on t - I.
        long long min_a = len, max_b = 0;
        for (long long x = 0; x <= static_cast<long long>(n); ++x) {
            long long c = 0;
            for (long long i = 0; i < len; ++i) c += member(a, e1(i + x));
            min_a = std::min(min_a, c);
        }
        for (long long t = 0; t <= s1; ++t) {
            long long c = 0;
            for (long long i = 0; i < len; ++i) c += member(b, e1(t - i));
            max_b = std::max(max_b, c);
        }
        if (Rational(min_a + max_b, len) < 1 + delta) continue;
        ++certified;
        try {
            const auto w = interval_in_sumset(a, b, n, Window::interval(0, len - 1), Window::interval(0, s1));
            const long long t = to_i64_or_throw(w.t[0], "t");
            CHECK(w.via_proof);
            for (long long x = 0; x <= static_cast<long long>(n); x += 7) CHECK(in_sum(a, b, 0, len - 1, t + x));
            require_replay(w.cert);
        } catch (const NotFoundAtScale&) {
            ++failures;
        }
    }
    INFO("certified instances: " << certified);
    CHECK(certified >= 30);
    CHECK(failures == 0);
}

TEST_CASE("growth saturation examples") {
    const auto rows = growth_saturation(evens(), 3, interval(0, 9), Window::interval(0, 100));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].value == Rational(1, 2));
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].value == 1);

    const auto thick = growth_saturation(squares_blocks(), 0, interval(0, 100), Window::interval(0, 1000000));
    CHECK(thick[0].value >= Rational(99, 100));
}

TEST_CASE("growth saturation is non-decreasing") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_density(Z, Rational(pick(rng, 1, 20), 100), rng());
        const auto rows = growth_saturation(a, 6, interval(0, 30), Window::interval(0, 3000));
        for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k - 1].value <= rows[k].value);
        const auto up = growth_saturation_upper(a, 4, FolnerFamily::centered(Z), 100, 400);
        for (std::size_t k = 1; k < up.size(); ++k) CHECK(up[k - 1].value <= up[k].value);
    }
}

TEST_CASE("growth along symmetric intervals of the two-sided block set") {
    // A = B ∪ (-B), B = ∪ [n², n² + n]. Row k equals |([-k,k] + A) ∩ [-N,N]| / (2N + 1) at N = n_max.
    const auto b = squares_blocks();
    const auto a = set_union({b, inverse(b)});
    const long long n = 20000;
    const auto rows = growth_saturation_upper(a, 3, FolnerFamily::centered(Z), n, n);
    for (long long k = 0; k <= 3; ++k) {
        std::set<long long> pts;
        for (long long m = 0; m * m <= n + k; ++m)
            for (long long x = m * m - k; x <= m * m + m + k; ++x) {
                if (x >= -n && x <= n) pts.insert(x);
                if (-x >= -n && -x <= n) pts.insert(-x);
            }
        CHECK(rows[static_cast<std::size_t>(k)].value == Rational(static_cast<long long>(pts.size()), 2 * n + 1));
    }
    CHECK(rows[0].value > Rational(49, 100));
    CHECK(rows[0].value < Rational(51, 100));
}

TEST_CASE("hurray witness examples") {
    ElemSet a0 = interval(0, 9);
    const auto w = hurray_witness(a0, evens(), Rational(1, 2), Window::interval(0, 100));
    CHECK(w.t == e1(0));
    CHECK(w.c == ElemSet{e1(0), e1(2), e1(4), e1(6), e1(8)});
    require_replay(w.cert);

    const auto all = hurray_witness(a0, universe(Z), Rational(9, 10), Window::interval(3, 100));
    CHECK(all.c == a0);
    CHECK(all.t == e1(3));

    const Elem g = make_elem({2, -1, 5});
    const auto one = hurray_witness({g}, universe(H), 1, Window::cube(3, 0, 1));
    CHECK(one.c == ElemSet{g});
    require_replay(one.cert);
}

TEST_CASE("hurray witness: |C| >= beta|A0| and CC^-1 t ⊆ A0 B elementwise") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        const bool heis = trial % 3 == 2;
        const GroupSpec& g = heis ? H : Z;
        ElemSet a0;
        const int size = static_cast<int>(pick(rng, 1, heis ? 30 : 200));
        for (int i = 0; i < size; ++i) {
            if (heis) a0.push_back(make_elem({pick(rng, -4, 4), pick(rng, -4, 4), pick(rng, -4, 4)}));
            else a0.push_back(e1(pick(rng, -500, 500)));
        }
        normalize(a0);
        const Rational p(pick(rng, 2, 9), 10);
        const auto b = random_density(g, p, rng());
        const Rational beta = p * Rational(4, 5);
        const Window search = heis ? Window::cube(3, 0, 6) : Window::interval(0, 10000);
        HurrayWitness w;
        try {
            w = hurray_witness(a0, b, beta, search);
        } catch (const NotFoundAtScale&) {
            FAIL("no shift found for density " << to_fraction_string(p));
            continue;
        }
        CHECK(Rational(w.c.size()) >= beta * Rational(a0.size()));
        // Independent check through the int64 group law.
        auto as_v = [](const Elem& e) {
            oracle::V v;
            for (const auto& c : e) v.push_back(to_i64_or_throw(c, "coord"));
            return v;
        };
        const oracle::V tv = as_v(w.t);
        for (const auto& x : w.c)
            for (const auto& y : w.c) {
                oracle::V xv = as_v(x), yv = as_v(y), z;
                if (heis) z = oracle::heis_mul(oracle::heis_mul(xv, oracle::heis_inv(yv)), tv);
                else z = {xv[0] - yv[0] + tv[0]};
                bool found = false;
                for (const auto& a : a0) {
                    oracle::V av = as_v(a), rest;
                    if (heis) rest = oracle::heis_mul(oracle::heis_inv(av), z);
                    else rest = {z[0] - av[0]};
                    Elem r;
                    for (auto c : rest) r.push_back(Int(c));
                    if (member(b, r)) {
                        found = true;
                        break;
                    }
                }
                CHECK(found);
            }
        require_replay(w.cert);
    }
}

TEST_CASE("dd witness examples") {
    const ElemSet h = interval(-4, 4);
    const auto w = dd_witness(evens(), evens(), h, FolnerFamily::standard(Z), 10, Rational(1, 2), Window::interval(0, 100));
    CHECK(w.d0 == ElemSet{e1(0), e1(2), e1(4)});
    CHECK(w.t == e1(0));
    require_replay(w.cert);

    const auto z = dd_witness(universe(Z), universe(Z), h, FolnerFamily::standard(Z), 10, Rational(1, 2), Window::interval(0, 100));
    ElemSet diffs;
    for (const auto& x : z.d0)
        for (const auto& y : z.d0) diffs.push_back(div_right(Z, x, y));
    normalize(diffs);
    for (const auto& x : h) CHECK(contains(diffs, x));
    require_replay(z.cert);
}

TEST_CASE("dd witness on random sets replays") {
    const auto a = random_density(Z, Rational(3, 10), 1);
    const auto b = random_density(Z, Rational(3, 10), 2);
    const ElemSet h = interval(-10, 10);
    const auto w = dd_witness(a, b, h, FolnerFamily::standard(Z), 20, Rational(1, 5), Window::interval(0, 10000));
    CHECK(w.d0.size() >= 3);
    const long long t = to_i64_or_throw(w.t[0], "t");
    for (const auto& x : w.d0)
        for (const auto& y : w.d0) {
            const long long d = to_i64_or_throw(x[0] - y[0], "d");
            if (d < -10 || d > 10) continue;
            CHECK(in_sum(a, b, 0, 20, d + t));
        }
    require_replay(w.cert);
}

TEST_CASE("jin pipeline examples") {
    const auto ev = jin_pipeline(evens(), evens(), 5, 99, Window::interval(0, 2000));
    CHECK(ev.k_radius == 1);
    CHECK(ev.verdict.passed);
    CHECK(ev.interval_length >= 100);
    require_replay(ev.cert);
    CHECK(recheck_verdict(ev.verdict, product(evens(), evens(), Window::interval(0, 2000), Window::interval(0, 2000))));

    const auto zero = explicit_set(Z, {e1(0)});
    try {
        jin_pipeline(zero, zero, 5, 99, Window::interval(0, 2000));
        FAIL("expected NotFoundAtScale");
    } catch (const NotFoundAtScale& e) {
        CHECK(e.stage() == "growth");
    }
}

TEST_CASE("jin pipeline on sparse random sets") {
    const auto a = random_density(Z, Rational(1, 10), 7);
    const auto b = random_density(Z, Rational(1, 10), 11);
    const Window w = Window::interval(0, 100000);
    const auto r = jin_pipeline(a, b, 50, 999, w);
    CHECK(r.verdict.passed);
    CHECK(r.k_radius <= 50);
    CHECK(r.interval_length >= 1000);
    require_replay(r.cert);
    // Brute check of a sample of the thick interval.
    const long long t = to_i64_or_throw(r.t[0], "t"), k = static_cast<long long>(r.k_radius);
    for (long long x = t; x <= t + 999; x += 97) {
        bool hit = false;
        for (long long y = 0; y <= 100000 && !hit; ++y) {
            if (!member(b, e1(y))) continue;
            for (long long d = -k; d <= k && !hit; ++d) {
                const long long av = x - y - d;
                hit = av >= 0 && av <= 100000 && member(a, e1(av));
            }
        }
        CHECK(hit);
    }
}

TEST_CASE("thick split examples") {
    const auto whole = thick_split(BlockFamily::balls(Z), 3, Window::interval(-100, 100));
    for (const auto& x : whole.a) CHECK(x == e1(0));
    for (const auto& x : whole.b) CHECK(x == e1(0));
    require_replay(whole.cert);

    const auto sq = thick_split(BlockFamily::squares(), 2, Window::interval(0, 1000000));
    REQUIRE(sq.a.size() == 2);
    REQUIRE(sq.b.size() == 2);
    require_replay(sq.cert);

    CHECK_THROWS_AS(thick_split(BlockFamily::squares(Int(1)), 1, Window::interval(0, 100)), BlockFamilyExhausted);
}

TEST_CASE("thick split: every pairwise sum lies in T") {
    // Enumerate (T1 + T2) ∩ [0, cap] directly and test each point against the block oracle.
    auto in_squares = [](long long x) {
        for (long long n = 0; n * n <= x; ++n)
            if (x <= n * n + n) return true;
        return false;
    };
    auto in_dyadic = [](long long x) {
        for (long long n = 0; n < 31; ++n) {
            const long long c = 1LL << (2 * n);
            if (c > x) break;
            if (x <= c + (1LL << n)) return true;
        }
        return false;
    };
    const long long cap = 1000000;
    for (int fam = 0; fam < 2; ++fam) {
        const BlockFamily t = fam == 0 ? BlockFamily::squares() : BlockFamily::dyadic();
        for (std::uint64_t steps = 1; steps <= 5; ++steps) {
            const auto s = thick_split(t, steps, Window::interval(0, cap));
            for (std::uint64_t l = 0; l < steps; ++l)
                for (std::uint64_t m = 0; m < steps; ++m) {
                    const Window x = t.shape(Int(l + 1)).translated(s.a[l]);
                    const Window y = t.shape(Int(m + 1)).translated(s.b[m]);
                    const auto part = minkowski(x, y).intersect(Window::interval(0, cap));
                    if (!part) continue;
                    const long long lo = to_i64_or_throw((*part)[0].lo, "lo"), hi = to_i64_or_throw((*part)[0].hi, "hi");
                    for (long long z = lo; z <= hi; ++z) CHECK((fam == 0 ? in_squares(z) : in_dyadic(z)));
                }
            require_replay(s.cert);
        }
        // Large steps still terminate through the closed-form block indices.
        const auto big = thick_split(t, 8, Window::interval(0, cap));
        require_replay(big.cert);
    }
}

TEST_CASE("heisenberg thick T") {
    const auto t = heisenberg_thick_T(20);
    for (long long n = 1; n <= 20; ++n) CHECK(member(t, make_elem({n * n, 0, 0})));
    CHECK(member(t, make_elem({1, 0, 0})));
    CHECK_FALSE(member(t, make_elem({21 * 21, 0, 0})));
    const auto v = check_thick(t, 5, Window({{20, 30}, {0, 0}, {0, 0}}));
    REQUIRE(v.passed);
    CHECK(*v.t == make_elem({25, 0, 0}));
}

TEST_CASE("heisenberg escape check") {
    ElemSet sq;
    for (long long m = 0; m <= 50; ++m) sq.push_back(make_elem({m * m, 0, 0}));
    const auto a = explicit_set(H, sq);
    const auto b = explicit_set(H, {make_elem({0, 0, 0}), make_elem({0, 1, 0})});
    const Window search({{0, 2500}, {-1, 1}, {-1, 1}});
    const auto w = heisenberg_escape_check(a, b, 50, search);
    CHECK(w.a == make_elem({100, 0, 0}));
    CHECK(w.m == 10);
    CHECK(w.n0 == 10);
    // a·b1 ∈ T and a·b2 ∉ T by the int64 group law and the block oracle.
    auto in_t = [](const oracle::V& v) {
        for (long long n = 1; n <= 50; ++n)
            if (std::llabs(v[0] - n * n) <= n && std::llabs(v[1]) <= n && std::llabs(v[2]) <= n) return true;
        return false;
    };
    CHECK(in_t(oracle::heis_mul({100, 0, 0}, {0, 0, 0})));
    CHECK_FALSE(in_t(oracle::heis_mul({100, 0, 0}, {0, 1, 0})));
    require_replay(w.cert);

    const auto flat = explicit_set(H, {make_elem({0, 0, 0}), make_elem({0, 0, 1})});
    CHECK_THROWS_AS(heisenberg_escape_check(a, flat, 50, search), HypothesisUnmet);
    const auto small = explicit_set(H, {make_elem({0, 0, 0}), make_elem({1, 0, 0})});
    CHECK_THROWS_AS(heisenberg_escape_check(small, b, 50, search), HypothesisUnmet);
}

TEST_CASE("bogolyubov extraction examples") {
    const Window w = Window::interval(0, (1 << 16) - 1);
    const auto ev = bogolyubov_bohr_extract(evens(), w);
    CHECK(std::find(ev.frequencies.begin(), ev.frequencies.end(), Rational(1, 2)) != ev.frequencies.end());
    CHECK(ev.exceptional_density == 0);
    require_replay(ev.cert);

    const auto golden = bohr_set(Z, BohrSpec::on_line(Frequency::golden(), 0, Rational(1, 20)));
    const auto gb = bogolyubov_bohr_extract(golden, w);
    const double alpha = 0.6180339887498949, n = 65536.0;
    bool near = false;
    for (const auto& f : gb.frequencies) {
        const double x = boost::multiprecision::numerator(f).convert_to<double>() / boost::multiprecision::denominator(f).convert_to<double>();
        near = near || std::abs(x - alpha) <= 1 / n || std::abs(x - (1 - alpha)) <= 1 / n;
    }
    CHECK(near);

    const auto rnd = bogolyubov_bohr_extract(random_density(Z, Rational(1, 2), 3), w, 0.9);
    REQUIRE(rnd.frequencies.size() == 1);
    CHECK(rnd.frequencies[0] == 0);
    CHECK(rnd.exceptional_density < Rational(1, 100));
    require_replay(rnd.cert);

    CHECK_THROWS_AS(bogolyubov_bohr_extract(evens(), w, 1.5), SpectrumEmpty);
    CHECK_THROWS_AS(bogolyubov_bohr_extract(empty_set(Z), w), ContractError);
}

TEST_CASE("bogolyubov peak matches a direct transform") {
    // Oracle: naive DFT magnitude at every frequency of a short window.
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        const long long n = 256;
        const auto a = periodic(Z, {Int(pick(rng, 3, 9))}, {e1(0)});
        const Window w = Window::interval(0, n - 1);
        const auto r = bogolyubov_bohr_extract(a, w, 0.5, 64);
        std::vector<long long> pts;
        for (long long x = 0; x < n; ++x)
            if (member(a, e1(x))) pts.push_back(x);
        std::vector<Rational> want;
        for (long long xi = 0; xi <= n / 2; ++xi) {
            double re = 0, im = 0;
            for (long long x : pts) {
                re += std::cos(2 * M_PI * static_cast<double>(x * xi) / static_cast<double>(n));
                im -= std::sin(2 * M_PI * static_cast<double>(x * xi) / static_cast<double>(n));
            }
            if (std::hypot(re, im) >= 0.5 * static_cast<double>(pts.size())) want.emplace_back(xi, n);
        }
        CHECK(r.frequencies == want);
    }
}

TEST_CASE("k-folded composition") {
    const Window w = Window::interval(0, 4095);
    const auto r = demo_k_folded(evens(), evens(), 3, w, 5, 299);
    REQUIRE(r.pieces.size() == 3);
    require_replay(r.cert);
    // The sum of the pieces consists of evens only.
    for (const auto& iv : r.intervals)
        for (const auto& x : enumerate(r.pieces[&iv - &r.intervals[0]], iv).elements()) CHECK(member(evens(), x));

    const auto a = random_density(Z, Rational(3, 10), 21);
    const auto b = random_density(Z, Rational(3, 10), 22);
    const auto rr = demo_k_folded(a, b, 2, Window::interval(0, 8191), 20, 199);
    require_replay(rr.cert);
}

TEST_CASE("certificate tampering is detected") {
    const auto w = hurray_witness(interval(0, 9), evens(), Rational(1, 2), Window::interval(0, 100));
    nlohmann::json j = w.cert.to_json();
    CHECK(replay_json(j).ok);

    nlohmann::json bad_set = j;
    bad_set["sets"]["B"] = "periodic(3, {0})";
    CHECK_FALSE(replay_json(bad_set).ok);

    nlohmann::json bad_t = j;
    for (auto& ck : bad_t["checks"])
        if (ck["op"] == "product_pairs") ck["t"] = "1";
    CHECK_FALSE(replay_json(bad_t).ok);

    nlohmann::json bad_bound = j;
    for (auto& ck : bad_bound["checks"])
        if (ck["op"] == "count") ck["at_least"] = 1;
    CHECK_FALSE(replay_json(bad_bound).ok);

    const auto e = heisenberg_escape_check(
        explicit_set(H, {make_elem({100, 0, 0})}), explicit_set(H, {make_elem({0, 0, 0}), make_elem({0, 1, 0})}), 50,
        Window({{0, 200}, {-1, 1}, {-1, 1}}));
    nlohmann::json bad_m = e.cert.to_json();
    for (auto& ck : bad_m["checks"])
        if (ck["op"] == "escape") ck["m"] = "60";
    CHECK_FALSE(replay_json(bad_m).ok);
}
