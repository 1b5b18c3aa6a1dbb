#pragma once

#include "sumset/group.hpp"
#include "sumset/window.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sumset {

enum class Side { Left, Right };

// The set U_n K_n c_n (right) or U_n c_n K_n (left), K_n a coordinate box.
// Built-in families have closed forms, so arbitrarily large indices are
// usable; explicit families are finite lists indexed 1..N.
class BlockFamily {
public:
    enum class Kind { Squares, Dyadic, Balls, HeisenbergT, Explicit };

    // Z: K_n = [0,n], c_n = n^2, n >= 0.
    static BlockFamily squares(std::optional<Int> n_max = std::nullopt);
    // Z: K_n = [0,2^n], c_n = 4^n, n >= 0.
    static BlockFamily dyadic(std::optional<Int> n_max = std::nullopt);
    // Abelian: K_n = [-n,n]^d, c_n = 0, n >= 0 (the whole group when unbounded).
    static BlockFamily balls(const GroupSpec& g, std::optional<Int> n_max = std::nullopt);
    // H3: K_n = {-n..n}^3, c_n = (n^2,0,0), right side, 1 <= n <= n_max.
    static BlockFamily heisenberg_T(const Int& n_max);
    static BlockFamily explicit_blocks(const GroupSpec& g, Side side, std::vector<std::pair<Window, Elem>> blocks);

    Kind kind() const noexcept { return kind_; }
    const GroupSpec& group() const noexcept { return group_; }
    Side side() const noexcept { return side_; }
    const Int& n_lo() const noexcept { return n_lo_; }
    const std::optional<Int>& n_max() const noexcept { return n_max_; }
    bool in_range(const Int& n) const { return n >= n_lo_ && (!n_max_ || n <= *n_max_); }

    Window shape(const Int& n) const;
    Elem translator(const Int& n) const;
    // The translated block as a box, when it is one (always for abelian groups).
    std::optional<Window> block_box(const Int& n) const;
    Window block_bbox(const Int& n) const;
    bool block_contains(const Int& n, const Elem& g) const;

    // Ascending indices whose blocks may meet w. For nested families only
    // the largest relevant block is returned (it contains the others).
    std::vector<Int> blocks_meeting(const Window& w) const;
    bool member(const Elem& g) const;
    std::optional<Int> block_of(const Elem& g) const;

    // Smallest n >= from with box ⊆ K_n, if any within range. Requires K_n
    // to be increasing, which holds for every built-in family.
    std::optional<Int> first_shape_containing(const Window& box, const Int& from) const;

    std::string to_expr() const;

private:
    BlockFamily(Kind k, GroupSpec g, Side s, Int lo, std::optional<Int> hi)
        : kind_(k), group_(g), side_(s), n_lo_(std::move(lo)), n_max_(std::move(hi)) {}
    Kind kind_;
    GroupSpec group_;
    Side side_;
    Int n_lo_;
    std::optional<Int> n_max_;
    std::vector<std::pair<Window, Elem>> explicit_;
};

} // namespace sumset
