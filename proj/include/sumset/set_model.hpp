#pragma once

#include "sumset/bitset.hpp"
#include "sumset/block_family.hpp"
#include "sumset/bohr.hpp"
#include "sumset/group.hpp"
#include "sumset/rational.hpp"
#include "sumset/window.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace sumset {

// S ∩ W as a bitset over the cells of W.
struct WindowSet {
    Window window;
    Bitset bits;

    WindowSet(Window w, Bitset b) : window(std::move(w)), bits(std::move(b)) {}
    std::uint64_t count() const noexcept { return bits.count(); }
    bool test(const Elem& g) const { return window.contains(g) && bits.test(window.index_of(g)); }
    ElemSet elements() const;
};

// A decidable, window-enumerable description of a subset of a group.
// Values are immutable and cheap to copy (shared description tree).
class DescribedSet {
public:
    struct Node;

    enum class Kind {
        Explicit, Universe, Periodic, Blocks, RandomDensity, Bohr, IPSet,
        Union, Intersection, Complement, Inverse, Translate, Dilate, Product
    };

    const GroupSpec& group() const noexcept { return group_; }
    Kind kind() const noexcept;
    bool contains(const Elem& g) const;
    // Re-parseable expression in the set grammar (see expr.hpp).
    std::string to_expr() const;

    // Descriptor payloads, for consumers that specialise on them.
    const BlockFamily* block_family() const noexcept;
    const ElemSet* explicit_elements() const noexcept; // Explicit, IPSet (all sums)
    const BohrSpec* bohr_spec() const noexcept;

    const Node& node() const noexcept { return *node_; }

    DescribedSet(GroupSpec g, std::shared_ptr<const Node> n) : group_(g), node_(std::move(n)) {}

private:
    GroupSpec group_;
    std::shared_ptr<const Node> node_;
};

DescribedSet empty_set(const GroupSpec& g);
DescribedSet universe(const GroupSpec& g);
DescribedSet explicit_set(const GroupSpec& g, ElemSet elems);
// Abelian only. Residues are coordinate vectors reduced into [0, m_i).
DescribedSet periodic(const GroupSpec& g, std::vector<Int> moduli, ElemSet residues);
DescribedSet block_set(BlockFamily family);
// Membership is a pure function of (seed, coordinates).
DescribedSet random_density(const GroupSpec& g, const Rational& p, std::uint64_t seed);
DescribedSet bohr_set(const GroupSpec& g, BohrSpec spec);
// All products x_{n1} ... x_{nk}, n1 < ... < nk, k >= 1. At most 24 generators.
DescribedSet ip_set(const GroupSpec& g, std::vector<Elem> generators);
DescribedSet set_union(std::vector<DescribedSet> parts);
DescribedSet set_intersection(std::vector<DescribedSet> parts);
DescribedSet complement(const DescribedSet& s);
DescribedSet inverse(const DescribedSet& s);
// S t (right) or t S (left).
DescribedSet translate(const DescribedSet& s, const Elem& t, Side side = Side::Right);
// K S for a finite K.
DescribedSet dilate(const DescribedSet& s, ElemSet k);
// (A ∩ W_A)(B ∩ W_B), materialised at construction.
DescribedSet product(const DescribedSet& a, const DescribedSet& b, const Window& wa, const Window& wb);

bool member(const DescribedSet& s, const Elem& g);
// Exactly S ∩ W.
WindowSet enumerate(const DescribedSet& s, const Window& w);
// Exactly (A ∩ W_A)(B ∩ W_B): a certified subset of AB.
ElemSet product_set(const DescribedSet& a, const DescribedSet& b, const Window& wa, const Window& wb);
// Exactly (A ∩ W)(A ∩ W)^{-1}.
ElemSet difference_set(const DescribedSet& a, const Window& w);

// Z fast paths returning bitsets. Result windows are [loA+loB, hiA+hiB]
// and [lo-hi, hi-lo] respectively.
WindowSet sumset_line(const WindowSet& a, const WindowSet& b);
WindowSet difference_line(const WindowSet& a);

// Centred box [-r, r]^d and anchored box [0, r]^d as element sets.
ElemSet ball(const GroupSpec& g, std::uint64_t r);
ElemSet anchored_box(const GroupSpec& g, std::uint64_t r);

} // namespace sumset
