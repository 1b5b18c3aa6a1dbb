#include "sumset/set_model.hpp"
#include "sumset/caps.hpp"
#include "sumset/errors.hpp"

#include <algorithm>
#include <sstream>
#include <variant>

namespace sumset {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t coord_key(const Int& c) {
    if (auto v = to_i64(c)) return static_cast<std::uint64_t>(*v);
    std::vector<std::uint64_t> limbs;
    boost::multiprecision::export_bits(Int(boost::multiprecision::abs(c)), std::back_inserter(limbs), 64);
    std::uint64_t h = c < 0 ? 0xA5A5A5A5A5A5A5A5ULL : 0x5A5A5A5A5A5A5A5AULL;
    for (auto l : limbs) h = splitmix64(h ^ l);
    return h;
}

Int floor_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

std::string rational_text(const Rational& r) {
    return boost::multiprecision::denominator(r) == 1 ? boost::multiprecision::numerator(r).str() : to_fraction_string(r);
}

std::string elems_text(const ElemSet& s) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << to_string(s[i]);
    os << '}';
    return os.str();
}

void require_abelian(const GroupSpec& g, const char* what) {
    if (!g.abelian()) throw ContractError(std::string(what) + " requires an abelian group");
}

// Iterate the rows (fixed prefix, full last-coordinate run) of a box.
template <class F>
void for_each_row(const Window& box, F&& f) {
    Elem cur = box.lo_corner();
    const std::size_t d = box.dim();
    while (true) {
        f(cur);
        std::size_t i = d - 1;
        while (i-- > 0) {
            if (cur[i] < box[i].hi) {
                ++cur[i];
                break;
            }
            cur[i] = box[i].lo;
        }
        if (i == static_cast<std::size_t>(-1)) return;
    }
}

void paint_box(Bitset& bits, const Window& w, const Window& box) {
    const auto len = box.extent(box.dim() - 1);
    for_each_row(box, [&](const Elem& row) { bits.set_range(w.index_of(row), len); });
}

// dst[g] |= src[g + offset] for g in dst_w; requires dst_w + offset ⊆ src_w.
void or_shifted_box(Bitset& dst, const Window& dst_w, const Bitset& src, const Window& src_w, const Elem& offset) {
    const auto len = dst_w.extent(dst_w.dim() - 1);
    for_each_row(dst_w, [&](const Elem& row) {
        Elem s = row;
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += offset[i];
        dst.or_range(src, src_w.index_of(s), dst_w.index_of(row), len);
    });
}

template <class Pred>
Bitset enumerate_by_predicate(const Window& w, Pred&& pred) {
    const auto n = w.cells("enumerate");
    Bitset bits(n);
    Elem cur = w.lo_corner();
    for (std::uint64_t k = 0; k < n; ++k) {
        if (pred(cur)) bits.set(k);
        for (std::size_t i = w.dim(); i-- > 0;) {
            if (cur[i] < w[i].hi) {
                ++cur[i];
                break;
            }
            cur[i] = w[i].lo;
        }
    }
    return bits;
}

Bitset paint_elements(const Window& w, const ElemSet& elems) {
    Bitset bits(w.cells("enumerate"));
    auto it = std::lower_bound(elems.begin(), elems.end(), w.lo_corner());
    const Elem hi = w.hi_corner();
    for (; it != elems.end() && !(hi < *it); ++it)
        if (w.contains(*it)) bits.set(w.index_of(*it));
    return bits;
}

} // namespace

// ---------------------------------------------------------------------------

struct DescribedSet::Node {
    struct Explicit { ElemSet elems; };
    struct Universe {};
    struct Periodic { std::vector<Int> moduli; ElemSet residues; };
    struct Blocks { BlockFamily family; };
    struct Random { Rational p; std::uint64_t seed; unsigned __int128 threshold; bool full; };
    struct Bohr { BohrSpec spec; };
    struct IP { std::vector<Elem> gens; ElemSet sums; };
    struct Union { std::vector<DescribedSet> parts; };
    struct Intersection { std::vector<DescribedSet> parts; };
    struct Complement { DescribedSet inner; };
    struct Inverse { DescribedSet inner; };
    struct Translate { DescribedSet inner; Elem t; Elem t_inv; Side side; };
    struct Dilate { DescribedSet inner; ElemSet k; };
    struct Product { DescribedSet a, b; Window wa, wb; ElemSet elems; };

    std::variant<Explicit, Universe, Periodic, Blocks, Random, Bohr, IP, Union, Intersection, Complement, Inverse,
                 Translate, Dilate, Product>
        v;
};

namespace {
template <class T>
DescribedSet make(const GroupSpec& g, T payload) {
    auto n = std::make_shared<DescribedSet::Node>();
    n->v = std::move(payload);
    return DescribedSet(g, std::move(n));
}

using Node = DescribedSet::Node;
template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

void check_same_group(const std::vector<DescribedSet>& parts) {
    if (parts.empty()) throw ContractError("set combination needs at least one operand");
    for (const auto& p : parts)
        if (!(p.group() == parts.front().group())) throw ContractError("set operands live in different groups");
}
} // namespace

DescribedSet::Kind DescribedSet::kind() const noexcept { return static_cast<Kind>(node_->v.index()); }

const BlockFamily* DescribedSet::block_family() const noexcept {
    if (auto* b = std::get_if<Node::Blocks>(&node_->v)) return &b->family;
    return nullptr;
}

const ElemSet* DescribedSet::explicit_elements() const noexcept {
    if (auto* e = std::get_if<Node::Explicit>(&node_->v)) return &e->elems;
    if (auto* e = std::get_if<Node::IP>(&node_->v)) return &e->sums;
    return nullptr;
}

const BohrSpec* DescribedSet::bohr_spec() const noexcept {
    if (auto* b = std::get_if<Node::Bohr>(&node_->v)) return &b->spec;
    return nullptr;
}

bool DescribedSet::contains(const Elem& g) const {
    check_dim(group_, g);
    const auto& G = group_;
    return std::visit(
        overloaded{
            [&](const Node::Explicit& n) { return sumset::contains(n.elems, g); },
            [&](const Node::Universe&) { return true; },
            [&](const Node::Periodic& n) {
                Elem r(g.size());
                for (std::size_t i = 0; i < g.size(); ++i) r[i] = floor_mod(g[i], n.moduli[i]);
                return sumset::contains(n.residues, r);
            },
            [&](const Node::Blocks& n) { return n.family.member(g); },
            [&](const Node::Random& n) {
                if (n.full) return true;
                std::uint64_t h = splitmix64(n.seed ^ 0xD1B54A32D192ED03ULL);
                for (const auto& c : g) h = splitmix64(h ^ splitmix64(coord_key(c)));
                return static_cast<unsigned __int128>(h) < n.threshold;
            },
            [&](const Node::Bohr& n) { return n.spec.contains(g); },
            [&](const Node::IP& n) { return sumset::contains(n.sums, g); },
            [&](const Node::Union& n) {
                return std::any_of(n.parts.begin(), n.parts.end(), [&](const auto& p) { return p.contains(g); });
            },
            [&](const Node::Intersection& n) {
                return std::all_of(n.parts.begin(), n.parts.end(), [&](const auto& p) { return p.contains(g); });
            },
            [&](const Node::Complement& n) { return !n.inner.contains(g); },
            [&](const Node::Inverse& n) { return n.inner.contains(inv(G, g)); },
            [&](const Node::Translate& n) {
                return n.inner.contains(n.side == Side::Right ? mul(G, g, n.t_inv) : mul(G, n.t_inv, g));
            },
            [&](const Node::Dilate& n) {
                return std::any_of(n.k.begin(), n.k.end(),
                                   [&](const Elem& k) { return n.inner.contains(mul(G, inv(G, k), g)); });
            },
            [&](const Node::Product& n) { return sumset::contains(n.elems, g); },
        },
        node_->v);
}

std::string DescribedSet::to_expr() const {
    return std::visit(
        overloaded{
            [&](const Node::Explicit& n) -> std::string {
                return n.elems.empty() ? "empty()" : "explicit(" + elems_text(n.elems) + ")";
            },
            [&](const Node::Universe&) -> std::string { return "all()"; },
            [&](const Node::Periodic& n) -> std::string {
                std::string m = n.moduli.size() == 1 ? n.moduli[0].str() : to_string(Elem(n.moduli.begin(), n.moduli.end()));
                return "periodic(" + m + ", " + elems_text(n.residues) + ")";
            },
            [&](const Node::Blocks& n) { return n.family.to_expr(); },
            [&](const Node::Random& n) -> std::string {
                return "random(" + rational_text(n.p) + ", " + std::to_string(n.seed) + ")";
            },
            [&](const Node::Bohr& n) { return n.spec.to_expr(); },
            [&](const Node::IP& n) -> std::string {
                std::string s = "ip([";
                for (std::size_t i = 0; i < n.gens.size(); ++i) s += (i ? ", " : "") + to_string(n.gens[i]);
                return s + "])";
            },
            [&](const Node::Union& n) -> std::string {
                std::string s = "union(";
                for (std::size_t i = 0; i < n.parts.size(); ++i) s += (i ? ", " : "") + n.parts[i].to_expr();
                return s + ")";
            },
            [&](const Node::Intersection& n) -> std::string {
                std::string s = "intersect(";
                for (std::size_t i = 0; i < n.parts.size(); ++i) s += (i ? ", " : "") + n.parts[i].to_expr();
                return s + ")";
            },
            [&](const Node::Complement& n) { return "complement(" + n.inner.to_expr() + ")"; },
            [&](const Node::Inverse& n) { return "inverse(" + n.inner.to_expr() + ")"; },
            [&](const Node::Translate& n) {
                return "translate(" + n.inner.to_expr() + ", " + to_string(n.t) + (n.side == Side::Left ? ", left)" : ")");
            },
            [&](const Node::Dilate& n) { return "dilate(" + n.inner.to_expr() + ", " + elems_text(n.k) + ")"; },
            [&](const Node::Product& n) {
                return "product(" + n.a.to_expr() + ", " + n.b.to_expr() + ", " + n.wa.to_string() + ", " +
                       n.wb.to_string() + ")";
            },
        },
        node_->v);
}

// ---------------------------------------------------------------------------

DescribedSet empty_set(const GroupSpec& g) { return make(g, Node::Explicit{}); }
DescribedSet universe(const GroupSpec& g) { return make(g, Node::Universe{}); }

DescribedSet explicit_set(const GroupSpec& g, ElemSet elems) {
    for (const auto& e : elems) check_dim(g, e);
    normalize(elems);
    return make(g, Node::Explicit{std::move(elems)});
}

DescribedSet periodic(const GroupSpec& g, std::vector<Int> moduli, ElemSet residues) {
    require_abelian(g, "periodic set");
    if (moduli.size() != g.dim()) throw ContractError("periodic set needs one modulus per coordinate");
    for (const auto& m : moduli)
        if (m < 1) throw ContractError("periodic moduli must be positive");
    for (auto& r : residues) {
        check_dim(g, r);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = floor_mod(r[i], moduli[i]);
    }
    normalize(residues);
    return make(g, Node::Periodic{std::move(moduli), std::move(residues)});
}

DescribedSet block_set(BlockFamily family) {
    const auto g = family.group();
    return make(g, Node::Blocks{std::move(family)});
}

DescribedSet random_density(const GroupSpec& g, const Rational& p, std::uint64_t seed) {
    if (p < 0 || p > 1) throw ContractError("random density p must lie in [0,1]");
    using boost::multiprecision::cpp_int;
    // member iff hash < p * 2^64
    const cpp_int t = boost::multiprecision::numerator(p) * (cpp_int(1) << 64) / boost::multiprecision::denominator(p);
    const bool full = p == 1;
    unsigned __int128 thr = 0;
    if (!full) {
        const auto hi = static_cast<std::uint64_t>(t >> 64);
        const auto lo = static_cast<std::uint64_t>(t & cpp_int(~std::uint64_t{0}));
        thr = (static_cast<unsigned __int128>(hi) << 64) | lo;
        // exact threshold: hash < p*2^64 <=> hash < ceil(p*2^64)
        if (cpp_int(t) * boost::multiprecision::denominator(p) != boost::multiprecision::numerator(p) * (cpp_int(1) << 64))
            thr += 1;
    }
    return make(g, Node::Random{p, seed, thr, full});
}

DescribedSet bohr_set(const GroupSpec& g, BohrSpec spec) {
    require_abelian(g, "Bohr set");
    if (spec.dim() != g.dim()) throw ContractError("Bohr spec dimension does not match group");
    return make(g, Node::Bohr{std::move(spec)});
}

DescribedSet ip_set(const GroupSpec& g, std::vector<Elem> gens) {
    if (gens.size() > 20) throw ContractError("IP set truncation supports at most 20 generators");
    ElemSet sums;
    for (const auto& x : gens) {
        check_dim(g, x);
        const auto prev = sums.size();
        for (std::size_t i = 0; i < prev; ++i) sums.push_back(mul(g, sums[i], x));
        sums.push_back(x);
    }
    normalize(sums);
    return make(g, Node::IP{std::move(gens), std::move(sums)});
}

DescribedSet set_union(std::vector<DescribedSet> parts) {
    check_same_group(parts);
    const auto g = parts.front().group();
    return make(g, Node::Union{std::move(parts)});
}

DescribedSet set_intersection(std::vector<DescribedSet> parts) {
    check_same_group(parts);
    const auto g = parts.front().group();
    return make(g, Node::Intersection{std::move(parts)});
}

DescribedSet complement(const DescribedSet& s) { return make(s.group(), Node::Complement{s}); }
DescribedSet inverse(const DescribedSet& s) { return make(s.group(), Node::Inverse{s}); }

DescribedSet translate(const DescribedSet& s, const Elem& t, Side side) {
    check_dim(s.group(), t);
    return make(s.group(), Node::Translate{s, t, inv(s.group(), t), side});
}

DescribedSet dilate(const DescribedSet& s, ElemSet k) {
    if (k.empty()) throw ContractError("dilation set must be nonempty");
    for (const auto& e : k) check_dim(s.group(), e);
    normalize(k);
    return make(s.group(), Node::Dilate{s, std::move(k)});
}

DescribedSet product(const DescribedSet& a, const DescribedSet& b, const Window& wa, const Window& wb) {
    if (!(a.group() == b.group())) throw ContractError("product operands live in different groups");
    auto elems = product_set(a, b, wa, wb);
    return make(a.group(), Node::Product{a, b, wa, wb, std::move(elems)});
}

bool member(const DescribedSet& s, const Elem& g) { return s.contains(g); }

// ---------------------------------------------------------------------------

ElemSet WindowSet::elements() const {
    ElemSet out;
    out.reserve(bits.count());
    for (auto i = bits.find_first(); i != Bitset::npos; i = bits.find_next(i + 1)) out.push_back(window.elem_at(i));
    return out;
}

WindowSet enumerate(const DescribedSet& s, const Window& w) {
    const auto& G = s.group();
    if (w.dim() != G.dim()) throw ContractError("window " + w.to_string() + " does not match group " + G.name());
    const auto n = w.cells("enumerate");
    const bool line = G.kind() == GroupKind::IntegerLine;
    const auto lo64 = line ? to_i64(w[0].lo) : std::nullopt;
    const auto hi64 = line ? to_i64(w[0].hi) : std::nullopt;
    const bool fast_line = lo64 && hi64;

    Bitset bits = std::visit(
        overloaded{
            [&](const Node::Explicit& x) { return paint_elements(w, x.elems); },
            [&](const Node::IP& x) { return paint_elements(w, x.sums); },
            [&](const Node::Product& x) { return paint_elements(w, x.elems); },
            [&](const Node::Universe&) { return Bitset(n, true); },
            [&](const Node::Periodic& x) {
                if (fast_line && x.moduli[0] <= Int(std::numeric_limits<std::int64_t>::max() / 4)) {
                    const auto m = x.moduli[0].convert_to<std::int64_t>();
                    std::vector<char> hit(static_cast<std::size_t>(std::min<std::int64_t>(m, 1 << 24)), 0);
                    if (m <= (1 << 24)) {
                        for (const auto& r : x.residues) hit[r[0].convert_to<std::size_t>()] = 1;
                        Bitset b(n);
                        std::int64_t r = ((*lo64 % m) + m) % m;
                        for (std::uint64_t k = 0; k < n; ++k) {
                            if (hit[static_cast<std::size_t>(r)]) b.set(k);
                            if (++r == m) r = 0;
                        }
                        return b;
                    }
                }
                return enumerate_by_predicate(w, [&](const Elem& g) { return s.contains(g); });
            },
            [&](const Node::Blocks& x) {
                Bitset b(n);
                for (const auto& idx : x.family.blocks_meeting(w)) {
                    if (auto box = x.family.block_box(idx)) {
                        if (auto part = box->intersect(w)) paint_box(b, w, *part);
                    } else if (auto part = x.family.block_bbox(idx).intersect(w)) {
                        for (const auto& g : enumerate_window(G, *part))
                            if (x.family.block_contains(idx, g)) b.set(w.index_of(g));
                    }
                }
                return b;
            },
            [&](const Node::Random& x) {
                if (fast_line) {
                    Bitset b(n);
                    if (x.full) return Bitset(n, true);
                    std::uint64_t base = splitmix64(x.seed ^ 0xD1B54A32D192ED03ULL);
                    std::int64_t v = *lo64;
                    for (std::uint64_t k = 0; k < n; ++k, ++v) {
                        const auto h = splitmix64(base ^ splitmix64(static_cast<std::uint64_t>(v)));
                        if (static_cast<unsigned __int128>(h) < x.threshold) b.set(k);
                    }
                    return b;
                }
                return enumerate_by_predicate(w, [&](const Elem& g) { return s.contains(g); });
            },
            [&](const Node::Bohr& x) {
                std::vector<Elem> bad;
                Bitset b = enumerate_by_predicate(w, [&](const Elem& g) {
                    const auto m = x.spec.classify(g);
                    if (m == BohrMembership::Indeterminate && bad.size() < 10) bad.push_back(g);
                    return m == BohrMembership::In;
                });
                if (!bad.empty()) {
                    std::string msg = "Bohr membership undecidable at declared precision for:";
                    for (const auto& g : bad) msg += " " + to_string(g);
                    throw IndeterminateError(msg);
                }
                return b;
            },
            [&](const Node::Union& x) {
                Bitset b(n);
                for (const auto& p : x.parts) b |= enumerate(p, w).bits;
                return b;
            },
            [&](const Node::Intersection& x) {
                Bitset b(n, true);
                for (const auto& p : x.parts) {
                    b &= enumerate(p, w).bits;
                    if (!b.any()) break;
                }
                return b;
            },
            [&](const Node::Complement& x) {
                Bitset b = enumerate(x.inner, w).bits;
                b.flip_all();
                return b;
            },
            [&](const Node::Inverse& x) {
                if (G.abelian()) return enumerate(x.inner, w.negated()).bits.reversed();
                return enumerate_by_predicate(w, [&](const Elem& g) { return s.contains(g); });
            },
            [&](const Node::Translate& x) {
                if (G.abelian()) return enumerate(x.inner, w.translated(x.t_inv)).bits;
                return enumerate_by_predicate(w, [&](const Elem& g) { return s.contains(g); });
            },
            [&](const Node::Dilate& x) {
                if (!G.abelian()) return enumerate_by_predicate(w, [&](const Elem& g) { return s.contains(g); });
                // g ∈ K S  <=>  g - k ∈ S for some k
                const Window kb = bounding_box(x.k);
                const Window big = minkowski(w, kb.negated());
                const WindowSet inner = enumerate(x.inner, big);
                Bitset b(n);
                for (const auto& k : x.k) {
                    Elem off = k;
                    for (auto& c : off) c = -c;
                    or_shifted_box(b, w, inner.bits, big, off);
                }
                return b;
            },
        },
        s.node().v);
    return WindowSet(w, std::move(bits));
}

WindowSet sumset_line(const WindowSet& a, const WindowSet& b) {
    const Window rw = minkowski(a.window, b.window);
    const auto na = a.bits.size();
    require_work(b.bits.count() * (na / 64 + 1), "sumset");
    Bitset r(rw.cells("sumset"));
    for (auto j = b.bits.find_first(); j != Bitset::npos; j = b.bits.find_next(j + 1)) r.or_range(a.bits, 0, j, na);
    return WindowSet(rw, std::move(r));
}

WindowSet difference_line(const WindowSet& a) {
    const auto n = a.bits.size();
    const Int span = a.window[0].hi - a.window[0].lo;
    const Window rw = Window::interval(-span, span);
    require_work(a.bits.count() * (n / 64 + 1), "difference set");
    Bitset r(2 * n - 1);
    // x - y sits at index (x - lo) - (y - lo) + (n - 1)
    for (auto i = a.bits.find_first(); i != Bitset::npos; i = a.bits.find_next(i + 1)) r.or_range(a.bits, 0, n - 1 - i, n);
    return WindowSet(rw, std::move(r));
}

ElemSet product_set(const DescribedSet& a, const DescribedSet& b, const Window& wa, const Window& wb) {
    if (!(a.group() == b.group())) throw ContractError("product operands live in different groups");
    const auto& G = a.group();
    const auto ea = enumerate(a, wa);
    const auto eb = enumerate(b, wb);
    if (G.kind() == GroupKind::IntegerLine) return sumset_line(ea, eb).elements();
    require_work(ea.count() * eb.count(), "product_set");
    const auto xs = ea.elements();
    const auto ys = eb.elements();
    ElemSet out;
    out.reserve(xs.size() * ys.size());
    for (const auto& x : xs)
        for (const auto& y : ys) out.push_back(mul(G, x, y));
    normalize(out);
    return out;
}

ElemSet difference_set(const DescribedSet& a, const Window& w) {
    const auto& G = a.group();
    const auto ea = enumerate(a, w);
    if (G.kind() == GroupKind::IntegerLine) {
        if (!ea.bits.any()) return {};
        return difference_line(ea).elements();
    }
    require_work(ea.count() * ea.count(), "difference_set");
    const auto xs = ea.elements();
    ElemSet out;
    out.reserve(xs.size() * xs.size());
    for (const auto& x : xs)
        for (const auto& y : xs) out.push_back(div_right(G, x, y));
    normalize(out);
    return out;
}

ElemSet ball(const GroupSpec& g, std::uint64_t r) {
    return enumerate_window(g, Window::cube(g.dim(), -Int(r), Int(r)));
}

ElemSet anchored_box(const GroupSpec& g, std::uint64_t r) {
    return enumerate_window(g, Window::cube(g.dim(), 0, Int(r)));
}

} // namespace sumset
