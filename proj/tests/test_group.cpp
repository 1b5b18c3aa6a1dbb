#include "doctest.h"
#include "oracle.hpp"

#include "sumset/caps.hpp"
#include "sumset/errors.hpp"
#include "sumset/group.hpp"
#include "sumset/rational.hpp"
#include "sumset/window.hpp"

#include <random>

using namespace sumset;

namespace {

const GroupSpec kGroups[] = {GroupSpec::line(), GroupSpec::lattice(2), GroupSpec::lattice(3), GroupSpec::heisenberg()};

Elem random_elem(const GroupSpec& g, std::mt19937_64& rng, long long range = 1000) {
    std::uniform_int_distribution<long long> d(-range, range);
    Elem e;
    for (std::size_t i = 0; i < g.dim(); ++i) e.push_back(Int(d(rng)));
    return e;
}

oracle::V to_v(const Elem& e) {
    oracle::V v;
    for (const auto& c : e) v.push_back(*to_i64(c));
    return v;
}

} // namespace

TEST_CASE("heisenberg multiplication") {
    const auto H = GroupSpec::heisenberg();
    CHECK(mul(H, make_elem({1, 0, 0}), make_elem({0, 1, 0})) == make_elem({1, 1, 1}));
    CHECK(mul(H, make_elem({0, 1, 0}), make_elem({1, 0, 0})) == make_elem({1, 1, 0}));
    CHECK(inv(H, make_elem({1, 1, 0})) == make_elem({-1, -1, 1}));
    CHECK(inv(GroupSpec::line(), make_elem({5})) == make_elem({-5}));
}

TEST_CASE("identity is neutral") {
    std::mt19937_64 rng(1);
    for (const auto& g : kGroups) {
        for (int i = 0; i < 10; ++i) {
            const Elem x = random_elem(g, rng);
            CHECK(mul(g, identity(g), x) == x);
            CHECK(mul(g, x, identity(g)) == x);
        }
    }
}

TEST_CASE("group axioms on random elements") {
    std::mt19937_64 rng(2);
    for (const auto& g : kGroups) {
        for (int i = 0; i < 10000; ++i) {
            const Elem a = random_elem(g, rng), b = random_elem(g, rng), c = random_elem(g, rng);
            REQUIRE(mul(g, mul(g, a, b), c) == mul(g, a, mul(g, b, c)));
            REQUIRE(mul(g, a, inv(g, a)) == identity(g));
            REQUIRE(inv(g, inv(g, a)) == a);
            REQUIRE(div_right(g, a, b) == mul(g, a, inv(g, b)));
            if (g.abelian()) REQUIRE(mul(g, a, b) == mul(g, b, a));
        }
    }
}

TEST_CASE("heisenberg law matches the oracle") {
    const auto H = GroupSpec::heisenberg();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const Elem a = random_elem(H, rng), b = random_elem(H, rng);
        CHECK(to_v(mul(H, a, b)) == oracle::heis_mul(to_v(a), to_v(b)));
        CHECK(to_v(inv(H, a)) == oracle::heis_inv(to_v(a)));
    }
    bool witnessed = false;
    for (int i = 0; i < 100 && !witnessed; ++i) {
        const Elem a = random_elem(H, rng), b = random_elem(H, rng);
        witnessed = mul(H, a, b) != mul(H, b, a);
    }
    CHECK(witnessed);
}

TEST_CASE("coordinates never overflow") {
    const auto H = GroupSpec::heisenberg();
    Elem big = make_elem({1, 1, 0});
    big[0] = Int(1) << 200;
    big[1] = Int(1) << 200;
    const Elem sq = mul(H, big, big);
    CHECK(sq[2] == Int(1) << 400);
    CHECK(mul(H, sq, inv(H, sq)) == identity(H));
    CHECK_FALSE(to_i64(sq[2]).has_value());
}

TEST_CASE("dimension mismatch is a contract error") {
    CHECK_THROWS_AS(mul(GroupSpec::heisenberg(), make_elem({1, 2}), make_elem({1, 2, 3})), ContractError);
    CHECK_THROWS_AS(inv(GroupSpec::lattice(2), make_elem({1})), ContractError);
}

TEST_CASE("group names round trip") {
    for (const auto& g : kGroups) CHECK(GroupSpec::parse(g.name()) == g);
    CHECK_THROWS_AS(GroupSpec::parse("F2"), ContractError);
}

TEST_CASE("words") {
    const auto H = GroupSpec::heisenberg();
    const Elem a = make_elem({1, 0, 0}), b = make_elem({0, 1, 0});
    // Commutator a b a^-1 b^-1 is central.
    const Elem c = eval_word(H, {{a, 1}, {b, 1}, {a, -1}, {b, -1}});
    CHECK(c == make_elem({0, 0, 1}));
}

TEST_CASE("enumerate_window") {
    const auto Z = GroupSpec::line();
    CHECK(enumerate_window(Z, Window::interval(Int(-1), Int(1))) == ElemSet{make_elem({-1}), make_elem({0}), make_elem({1})});
    CHECK(enumerate_window(GroupSpec::lattice(2), Window({{0, 1}, {0, 0}})) == ElemSet{make_elem({0, 0}), make_elem({1, 0})});
    CHECK(enumerate_window(GroupSpec::heisenberg(), Window({{0, 0}, {0, 0}, {0, 0}})) == ElemSet{make_elem({0, 0, 0})});
}

TEST_CASE("enumerate_window is sorted, unique and complete") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long long> lo(-5, 5), len(0, 4);
    for (const auto& g : kGroups) {
        for (int t = 0; t < 50; ++t) {
            oracle::V l, h;
            std::vector<Interval> iv;
            for (std::size_t i = 0; i < g.dim(); ++i) {
                l.push_back(lo(rng));
                h.push_back(l.back() + len(rng));
                iv.push_back({Int(l.back()), Int(h.back())});
            }
            const Window w(iv);
            const ElemSet got = enumerate_window(g, w);
            const auto want = oracle::box(l, h);
            REQUIRE(got.size() == want.size());
            CHECK(Int(got.size()) == w.cardinality());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(to_v(got[i]) == want[i]);
                CHECK(w.index_of(got[i]) == i);
                CHECK(w.elem_at(i) == got[i]);
            }
        }
    }
}

TEST_CASE("enumeration cap") {
    const Caps saved = caps();
    set_caps({1000, saved.work});
    try {
        enumerate_window(GroupSpec::line(), Window::interval(Int(0), Int(5000)));
        FAIL("expected a resource cap error");
    } catch (const ResourceCapError& e) {
        CHECK(std::string(e.what()).find("1000") != std::string::npos);
    }
    set_caps(saved);
}

TEST_CASE("rationals parse exactly") {
    CHECK(parse_rational("1/10") == Rational(1, 10));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-3") == Rational(-3));
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK(parse_rational("2.5e2") == Rational(250));
    CHECK_THROWS_AS(parse_rational("abc"), ContractError);
    CHECK_THROWS_AS(parse_rational("1/0"), ContractError);
    CHECK(to_fraction_string(Rational(6, 4)) == "3/2");
}
