#include "sumset/rational.hpp"
#include "sumset/errors.hpp"

#include <cctype>

namespace sumset {

std::string to_fraction_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw ContractError("zero denominator");
    return Rational(num, den);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational parse_rational(const std::string& text) {
    using boost::multiprecision::cpp_int;
    auto bad = [&] { return ContractError("malformed number '" + text + "'"); };
    if (text.empty()) throw bad();
    if (auto slash = text.find('/'); slash != std::string::npos) {
        const auto num = parse_rational(text.substr(0, slash));
        const auto den = parse_rational(text.substr(slash + 1));
        if (den == 0) throw ContractError("zero denominator in '" + text + "'");
        return num / den;
    }
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') neg = text[i++] == '-';
    cpp_int mant = 0;
    int frac_digits = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mant = mant * 10 + (c - '0');
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw bad();
    long exp10 = -frac_digits;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') throw bad();
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(text.substr(i + 1), &used);
        } catch (const std::exception&) {
            throw bad();
        }
        if (used + i + 1 != text.size() || e > 4000 || e < -4000) throw bad();
        exp10 += e;
    }
    Rational r(mant);
    cpp_int p = 1;
    for (long k = 0; k < (exp10 < 0 ? -exp10 : exp10); ++k) p *= 10;
    r = exp10 < 0 ? r / Rational(p) : r * Rational(p);
    return neg ? Rational(-r) : r;
}

} // namespace sumset
