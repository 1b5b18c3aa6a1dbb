#pragma once

#include "sumset/group.hpp"
#include "sumset/rational.hpp"

#include <string>
#include <vector>

namespace sumset {

// A character frequency. Exact when precision == 0; otherwise the true
// (typically irrational) frequency lies within `precision` of `value`.
struct Frequency {
    Rational value;
    Rational precision = 0;
    std::string label; // printable form for the expression grammar

    static Frequency exact(const Rational& v);
    // phi - 1 stored to 18 decimals, declared precision 1e-18.
    static Frequency golden();
    // Approximate real given by a decimal, declared precision 10^-digits.
    static Frequency approx(const Rational& v, int digits = 12);
};

// g -> sum_j alpha_j g_j (mod 1), compared against `center`.
struct Character {
    std::vector<Frequency> alpha;
    Rational center = 0;
};

enum class BohrMembership { In, Out, Indeterminate };

// { g : ||chi_i(g) - center_i|| < radius for all i }, ||.|| = distance to Z.
class BohrSpec {
public:
    BohrSpec(std::vector<Character> chars, Rational radius);
    // Single character on Z.
    static BohrSpec on_line(const Frequency& alpha, const Rational& center, const Rational& radius);

    const std::vector<Character>& characters() const noexcept { return chars_; }
    const Rational& radius() const noexcept { return radius_; }
    std::size_t dim() const noexcept { return chars_.front().alpha.size(); }

    BohrMembership classify(const Elem& g) const;
    // Throws IndeterminateError naming g if undecidable at declared precision.
    bool contains(const Elem& g) const;
    // Same characters and centres with a new radius.
    BohrSpec with_radius(const Rational& r) const;

    std::string to_expr() const;

private:
    struct Compiled {
        std::int64_t denom;               // D
        std::vector<std::int64_t> alpha;  // alpha_j * D mod D
        std::vector<std::int64_t> slack;  // precision_j * D
        std::int64_t center;              // beta * D mod D
        std::int64_t radius;              // eps * D
    };
    std::vector<Character> chars_;
    Rational radius_;
    std::vector<Compiled> compiled_;
};

} // namespace sumset
