#include "sumset/bohr.hpp"
#include "sumset/errors.hpp"

#include <sstream>

namespace sumset {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

Rational frac_part(const Rational& r) {
    cpp_int q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && Rational(q) != r) q -= 1;
    return r - Rational(q);
}

cpp_int lcm(const cpp_int& a, const cpp_int& b) { return a / boost::multiprecision::gcd(a, b) * b; }

std::int64_t scaled(const Rational& r, const cpp_int& d) {
    const Rational s = r * Rational(d);
    if (denominator(s) != 1) throw ContractError("internal: common denominator does not clear " + r.str());
    return numerator(s).convert_to<std::int64_t>();
}

std::string rational_text(const Rational& r) {
    return denominator(r) == 1 ? numerator(r).str() : to_fraction_string(r);
}

} // namespace

Frequency Frequency::exact(const Rational& v) { return Frequency{v, 0, rational_text(v)}; }

Frequency Frequency::golden() {
    // (sqrt(5) - 1) / 2 = 0.618033988749894848 2045868...
    return Frequency{Rational(cpp_int("618033988749894848"), cpp_int("1000000000000000000")),
                     Rational(1, cpp_int("1000000000000000000")), "golden"};
}

Frequency Frequency::approx(const Rational& v, int digits) {
    if (digits < 1 || digits > 18) throw ContractError("approx precision digits must be in [1,18]");
    cpp_int p = 1;
    for (int i = 0; i < digits; ++i) p *= 10;
    return Frequency{v, Rational(1, p), "approx(" + rational_text(v) + "," + std::to_string(digits) + ")"};
}

BohrSpec::BohrSpec(std::vector<Character> chars, Rational radius) : chars_(std::move(chars)), radius_(std::move(radius)) {
    if (chars_.empty()) throw ContractError("Bohr spec needs at least one character");
    if (radius_ <= 0 || radius_ >= Rational(1, 2)) throw ContractError("Bohr radius must lie in (0, 1/2)");
    const auto d = chars_.front().alpha.size();
    if (d == 0) throw ContractError("character needs at least one frequency");
    static const cpp_int limit = cpp_int(1) << 62;
    for (const auto& ch : chars_) {
        if (ch.alpha.size() != d) throw ContractError("characters must share one dimension");
        cpp_int den = lcm(denominator(radius_), denominator(frac_part(ch.center)));
        for (const auto& f : ch.alpha) {
            if (f.precision < 0) throw ContractError("negative frequency precision");
            den = lcm(den, denominator(frac_part(f.value)));
            den = lcm(den, denominator(f.precision));
        }
        if (den >= limit) throw ContractError("Bohr spec denominators too large (common denominator >= 2^62)");
        Compiled c;
        c.denom = den.convert_to<std::int64_t>();
        for (const auto& f : ch.alpha) {
            c.alpha.push_back(scaled(frac_part(f.value), den));
            c.slack.push_back(scaled(f.precision, den));
        }
        c.center = scaled(frac_part(ch.center), den);
        c.radius = scaled(radius_, den);
        compiled_.push_back(std::move(c));
    }
}

BohrSpec BohrSpec::on_line(const Frequency& alpha, const Rational& center, const Rational& radius) {
    return BohrSpec({Character{{alpha}, center}}, radius);
}

BohrSpec BohrSpec::with_radius(const Rational& r) const { return BohrSpec(chars_, r); }

BohrMembership BohrSpec::classify(const Elem& g) const {
    if (g.size() != dim()) throw ContractError("Bohr spec dimension does not match element " + to_string(g));
    bool undecided = false;
    for (const auto& c : compiled_) {
        const __int128 D = c.denom;
        __int128 x = 0;
        cpp_int slack = 0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            cpp_int r = g[j] % c.denom;
            if (r < 0) r += c.denom;
            x = (x + static_cast<__int128>(r.convert_to<std::int64_t>()) * c.alpha[j]) % D;
            if (c.slack[j] != 0) slack += boost::multiprecision::abs(g[j]) * c.slack[j];
        }
        x = ((x - c.center) % D + D) % D;
        const __int128 dist = x < D - x ? x : D - x;
        const cpp_int dist_i = cpp_int(static_cast<std::int64_t>(dist));
        if (dist_i + slack < c.radius) continue;
        if (dist_i >= slack + c.radius) return BohrMembership::Out;
        undecided = true;
    }
    return undecided ? BohrMembership::Indeterminate : BohrMembership::In;
}

bool BohrSpec::contains(const Elem& g) const {
    switch (classify(g)) {
    case BohrMembership::In: return true;
    case BohrMembership::Out: return false;
    case BohrMembership::Indeterminate: break;
    }
    throw IndeterminateError("Bohr membership of " + to_string(g) + " is undecidable at the declared precision");
}

std::string BohrSpec::to_expr() const {
    std::ostringstream os;
    os << "bohr(" << rational_text(radius_);
    for (const auto& ch : chars_) {
        os << ", char(";
        if (ch.alpha.size() == 1) {
            os << ch.alpha[0].label;
        } else {
            os << '(';
            for (std::size_t j = 0; j < ch.alpha.size(); ++j) os << (j ? "," : "") << ch.alpha[j].label;
            os << ')';
        }
        os << ", " << rational_text(ch.center) << ')';
    }
    os << ')';
    return os.str();
}

} // namespace sumset
