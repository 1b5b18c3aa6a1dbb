#include "sumset/group.hpp"
#include "sumset/errors.hpp"

#include <algorithm>
#include <sstream>

namespace sumset {

GroupSpec GroupSpec::lattice(std::size_t d) {
    if (d == 0) throw ContractError("Z^d requires d >= 1");
    return GroupSpec(GroupKind::IntegerLattice, d);
}

std::string GroupSpec::name() const {
    switch (kind_) {
    case GroupKind::IntegerLine: return "Z";
    case GroupKind::IntegerLattice: return "Z^" + std::to_string(dim_);
    case GroupKind::HeisenbergZ: return "H3";
    }
    return "?";
}

GroupSpec GroupSpec::parse(const std::string& name) {
    if (name == "Z") return line();
    if (name == "H3" || name == "Heisenberg") return heisenberg();
    if (name.size() > 2 && name.rfind("Z^", 0) == 0) {
        std::size_t pos = 0;
        const auto d = std::stoul(name.substr(2), &pos);
        if (pos + 2 == name.size()) return lattice(d);
    }
    throw ContractError("unknown group '" + name + "' (expected Z, Z^d or H3)");
}

void check_dim(const GroupSpec& g, const Elem& a) {
    if (a.size() != g.dim())
        throw ContractError("element " + to_string(a) + " has dimension " + std::to_string(a.size()) +
                            ", group " + g.name() + " expects " + std::to_string(g.dim()));
}

Elem identity(const GroupSpec& g) { return Elem(g.dim(), Int(0)); }

Elem mul(const GroupSpec& g, const Elem& a, const Elem& b) {
    check_dim(g, a);
    check_dim(g, b);
    Elem r(g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i) r[i] = a[i] + b[i];
    if (g.kind() == GroupKind::HeisenbergZ) r[2] += a[0] * b[1];
    return r;
}

Elem inv(const GroupSpec& g, const Elem& a) {
    check_dim(g, a);
    Elem r(g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i) r[i] = -a[i];
    // (x,y,z)^{-1} = (-x, -y, xy - z)
    if (g.kind() == GroupKind::HeisenbergZ) r[2] = a[0] * a[1] - a[2];
    return r;
}

Elem div_right(const GroupSpec& g, const Elem& a, const Elem& b) { return mul(g, a, inv(g, b)); }

Elem eval_word(const GroupSpec& g, const std::vector<std::pair<Elem, int>>& word) {
    Elem acc = identity(g);
    for (const auto& [e, exp] : word) {
        if (exp == 1) acc = mul(g, acc, e);
        else if (exp == -1) acc = mul(g, acc, inv(g, e));
        else throw ContractError("word exponents must be +1 or -1");
    }
    return acc;
}

Elem make_elem(std::initializer_list<long long> coords) {
    Elem e;
    for (auto c : coords) e.emplace_back(c);
    return e;
}

std::string to_string(const Int& v) { return v.str(); }

std::string to_string(const Elem& e) {
    if (e.size() == 1) return e[0].str();
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i].str();
    os << ')';
    return os.str();
}

std::optional<std::int64_t> to_i64(const Int& v) {
    static const Int lo(std::numeric_limits<std::int64_t>::min());
    static const Int hi(std::numeric_limits<std::int64_t>::max());
    if (v < lo || v > hi) return std::nullopt;
    return v.convert_to<std::int64_t>();
}

std::int64_t to_i64_or_throw(const Int& v, const char* what) {
    auto r = to_i64(v);
    if (!r) throw ContractError(std::string(what) + ": value " + v.str() + " exceeds 64-bit range");
    return *r;
}

void normalize(ElemSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

bool contains(const ElemSet& s, const Elem& e) { return std::binary_search(s.begin(), s.end(), e); }

} // namespace sumset
