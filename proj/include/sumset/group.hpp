#pragma once

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sumset {

using Int = boost::multiprecision::cpp_int;

// Group element as an integer coordinate vector. Ordering is lexicographic
// on coordinates; every "first witness" search follows this order.
using Elem = boost::container::small_vector<Int, 3>;

// Finite set of elements, kept sorted and duplicate-free.
using ElemSet = std::vector<Elem>;

enum class GroupKind { IntegerLine, IntegerLattice, HeisenbergZ };

class GroupSpec {
public:
    static GroupSpec line() { return GroupSpec(GroupKind::IntegerLine, 1); }
    static GroupSpec lattice(std::size_t d);
    static GroupSpec heisenberg() { return GroupSpec(GroupKind::HeisenbergZ, 3); }

    GroupKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return dim_; }
    bool abelian() const noexcept { return kind_ != GroupKind::HeisenbergZ; }

    // "Z", "Z^3", "H3"
    std::string name() const;
    static GroupSpec parse(const std::string& name);

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

private:
    GroupSpec(GroupKind k, std::size_t d) : kind_(k), dim_(d) {}
    GroupKind kind_;
    std::size_t dim_;
};

Elem identity(const GroupSpec& g);
Elem mul(const GroupSpec& g, const Elem& a, const Elem& b);
Elem inv(const GroupSpec& g, const Elem& a);
// a * b^{-1}
Elem div_right(const GroupSpec& g, const Elem& a, const Elem& b);
// Product of a word of (element, exponent in {+1,-1}) pairs, left to right.
Elem eval_word(const GroupSpec& g, const std::vector<std::pair<Elem, int>>& word);

void check_dim(const GroupSpec& g, const Elem& a);

Elem make_elem(std::initializer_list<long long> coords);
std::string to_string(const Elem& e);
std::string to_string(const Int& v);

// Checked narrowing; nullopt when the value does not fit.
std::optional<std::int64_t> to_i64(const Int& v);
std::int64_t to_i64_or_throw(const Int& v, const char* what);

void normalize(ElemSet& s);
bool contains(const ElemSet& s, const Elem& e);

} // namespace sumset
