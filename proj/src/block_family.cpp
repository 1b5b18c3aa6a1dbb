#include "sumset/block_family.hpp"
#include "sumset/errors.hpp"

#include <algorithm>
#include <sstream>

namespace sumset {

namespace {

Int isqrt_floor(const Int& v) { return v <= 0 ? Int(0) : Int(boost::multiprecision::sqrt(v)); }

Int pow_int(unsigned base, const Int& e) {
    Int r = 1;
    for (Int i = 0; i < e; ++i) r *= base;
    return r;
}

// ceil(log2(v)) for v >= 1
Int ceil_log2(const Int& v) {
    if (v <= 1) return 0;
    Int n = 0;
    Int p = 1;
    while (p < v) {
        p <<= 1;
        ++n;
    }
    return n;
}

std::string opt_text(const std::optional<Int>& n) { return n ? n->str() : ""; }

} // namespace

BlockFamily BlockFamily::squares(std::optional<Int> n_max) {
    return BlockFamily(Kind::Squares, GroupSpec::line(), Side::Right, 0, std::move(n_max));
}

BlockFamily BlockFamily::dyadic(std::optional<Int> n_max) {
    return BlockFamily(Kind::Dyadic, GroupSpec::line(), Side::Right, 0, std::move(n_max));
}

BlockFamily BlockFamily::balls(const GroupSpec& g, std::optional<Int> n_max) {
    if (!g.abelian()) throw ContractError("ball block family requires an abelian group");
    return BlockFamily(Kind::Balls, g, Side::Right, 0, std::move(n_max));
}

BlockFamily BlockFamily::heisenberg_T(const Int& n_max) {
    if (n_max < 1) throw ContractError("heisenberg_T requires n_max >= 1");
    return BlockFamily(Kind::HeisenbergT, GroupSpec::heisenberg(), Side::Right, 1, n_max);
}

BlockFamily BlockFamily::explicit_blocks(const GroupSpec& g, Side side, std::vector<std::pair<Window, Elem>> blocks) {
    if (blocks.empty()) throw ContractError("explicit block family needs at least one block");
    for (const auto& [w, c] : blocks) {
        if (w.dim() != g.dim()) throw ContractError("block shape " + w.to_string() + " does not match group");
        check_dim(g, c);
    }
    BlockFamily f(Kind::Explicit, g, side, 1, Int(blocks.size()));
    f.explicit_ = std::move(blocks);
    return f;
}

Window BlockFamily::shape(const Int& n) const {
    if (!in_range(n)) throw ContractError("block index " + n.str() + " out of range");
    switch (kind_) {
    case Kind::Squares: return Window::interval(0, n);
    case Kind::Dyadic: return Window::interval(0, pow_int(2, n));
    case Kind::Balls: return Window::cube(group_.dim(), -n, n);
    case Kind::HeisenbergT: return Window::cube(3, -n, n);
    case Kind::Explicit: return explicit_[static_cast<std::size_t>(n - 1)].first;
    }
    throw ContractError("unreachable");
}

Elem BlockFamily::translator(const Int& n) const {
    if (!in_range(n)) throw ContractError("block index " + n.str() + " out of range");
    switch (kind_) {
    case Kind::Squares: return Elem{n * n};
    case Kind::Dyadic: return Elem{pow_int(4, n)};
    case Kind::Balls: return identity(group_);
    case Kind::HeisenbergT: return Elem{n * n, Int(0), Int(0)};
    case Kind::Explicit: return explicit_[static_cast<std::size_t>(n - 1)].second;
    }
    throw ContractError("unreachable");
}

std::optional<Window> BlockFamily::block_box(const Int& n) const {
    const auto k = shape(n);
    const auto c = translator(n);
    if (group_.abelian()) return k.translated(c);
    // (a,b,z)*c shears z by a*c_y; c*(a,b,z) shears z by c_x*b.
    if (side_ == Side::Right && c[1] == 0) return k.translated(c);
    if (side_ == Side::Left && c[0] == 0) return k.translated(c);
    return std::nullopt;
}

Window BlockFamily::block_bbox(const Int& n) const {
    if (auto b = block_box(n)) return *b;
    const auto k = shape(n);
    const auto c = translator(n);
    // Heisenberg shear: z' = z + c_z + s*v with v ranging over one box coordinate.
    const Int s = side_ == Side::Right ? c[1] : c[0];
    const Interval& v = side_ == Side::Right ? k[0] : k[1];
    const Int e1 = s * v.lo, e2 = s * v.hi;
    return Window({{k[0].lo + c[0], k[0].hi + c[0]},
                   {k[1].lo + c[1], k[1].hi + c[1]},
                   {k[2].lo + c[2] + std::min(e1, e2), k[2].hi + c[2] + std::max(e1, e2)}});
}

bool BlockFamily::block_contains(const Int& n, const Elem& g) const {
    const auto c = translator(n);
    const Elem pre = side_ == Side::Right ? mul(group_, g, inv(group_, c)) : mul(group_, inv(group_, c), g);
    return shape(n).contains(pre);
}

std::vector<Int> BlockFamily::blocks_meeting(const Window& w) const {
    if (w.dim() != group_.dim()) throw ContractError("window does not match block family group");
    std::vector<Int> out;
    auto clip_push = [&](const Int& n) {
        if (in_range(n) && block_bbox(n).intersect(w)) out.push_back(n);
    };
    switch (kind_) {
    case Kind::Squares:
    case Kind::HeisenbergT: {
        // x-extent of block n is within [n^2 - n, n^2 + n]
        const Int& L = w[0].lo;
        const Int& H = w[0].hi;
        if (H < 0) break;
        Int first = std::max(isqrt_floor(L) - 2, Int(0));
        Int last = isqrt_floor(H) + 2;
        if (n_max_) last = std::min(last, *n_max_);
        for (Int n = std::max(first, n_lo_); n <= last; ++n) clip_push(n);
        break;
    }
    case Kind::Dyadic: {
        const Int& H = w[0].hi;
        for (Int n = n_lo_; (!n_max_ || n <= *n_max_) && pow_int(4, n) <= H; ++n) clip_push(n);
        break;
    }
    case Kind::Balls: {
        Int need = 0;
        for (const auto& r : w.ranges()) need = std::max<Int>({need, Int(boost::multiprecision::abs(r.lo)), Int(boost::multiprecision::abs(r.hi))});
        Int n = n_max_ ? *n_max_ : std::max(need, n_lo_);
        clip_push(n);
        break;
    }
    case Kind::Explicit:
        for (Int n = 1; n <= Int(explicit_.size()); ++n) clip_push(n);
        break;
    }
    return out;
}

std::optional<Int> BlockFamily::block_of(const Elem& g) const {
    check_dim(group_, g);
    if (kind_ == Kind::Balls) {
        Int need = 0;
        for (const auto& c : g) need = std::max(need, Int(boost::multiprecision::abs(c)));
        need = std::max(need, n_lo_);
        if (n_max_ && need > *n_max_) return std::nullopt;
        return need;
    }
    for (const auto& n : blocks_meeting(Window::point(g)))
        if (block_contains(n, g)) return n;
    return std::nullopt;
}

bool BlockFamily::member(const Elem& g) const { return block_of(g).has_value(); }

std::optional<Int> BlockFamily::first_shape_containing(const Window& box, const Int& from) const {
    Int n = std::max(from, n_lo_);
    auto within = [&](const Int& m) -> std::optional<Int> {
        if (n_max_ && m > *n_max_) return std::nullopt;
        return m;
    };
    switch (kind_) {
    case Kind::Squares:
        if (box[0].lo < 0) return std::nullopt;
        return within(std::max(n, box[0].hi));
    case Kind::Dyadic:
        if (box[0].lo < 0) return std::nullopt;
        return within(std::max(n, ceil_log2(box[0].hi)));
    case Kind::Balls:
    case Kind::HeisenbergT: {
        Int need = 0;
        for (const auto& r : box.ranges()) need = std::max<Int>({need, Int(boost::multiprecision::abs(r.lo)), Int(boost::multiprecision::abs(r.hi))});
        return within(std::max(n, need));
    }
    case Kind::Explicit:
        for (; n <= Int(explicit_.size()); ++n)
            if (shape(n).contains(box)) return n;
        return std::nullopt;
    }
    return std::nullopt;
}

std::string BlockFamily::to_expr() const {
    switch (kind_) {
    case Kind::Squares: return "blocks_sq(" + opt_text(n_max_) + ")";
    case Kind::Dyadic: return "blocks_dyadic(" + opt_text(n_max_) + ")";
    case Kind::Balls: return "blocks_ball(" + opt_text(n_max_) + ")";
    case Kind::HeisenbergT: return "heis_T(" + n_max_->str() + ")";
    case Kind::Explicit: {
        std::ostringstream os;
        os << "blocks(" << (side_ == Side::Left ? "left" : "right");
        for (const auto& [w, c] : explicit_) os << ", " << w.to_string() << ':' << to_string(c);
        os << ')';
        return os.str();
    }
    }
    return "";
}

} // namespace sumset
