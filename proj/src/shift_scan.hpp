#pragma once

#include "sumset/set_model.hpp"

#include <cstdint>
#include <vector>

namespace sumset::detail {

// Evaluates bitsets laid out over region ⊇ K·S at every right translate
// K·t, t ∈ S, by index arithmetic: idx(k·t) = idx(t) + off(k) (+ kx·ty on H3).
class ShiftScan {
public:
    ShiftScan(const GroupSpec& g, const ElemSet& k, const Window& search);

    const Window& region() const noexcept { return region_; }
    const Window& search() const noexcept { return search_; }
    std::uint64_t shifts() const noexcept { return ns_; }
    std::size_t shape_size() const noexcept { return off_.size(); }

    std::uint64_t count(const Bitset& bits, std::uint64_t i) const;
    bool all(const Bitset& bits, std::uint64_t i) const;
    bool none(const Bitset& bits, std::uint64_t i) const;
    Elem shift(std::uint64_t i) const { return search_.elem_at(i); }

private:
    template <class Fn>
    bool visit(std::uint64_t i, Fn&& fn) const;

    Window search_;
    Window region_;
    std::uint64_t ns_ = 0;
    bool heis_ = false;
    bool contiguous_ = false;
    std::vector<std::int64_t> off_, kx_, slo_, sext_, sstride_, rlo_, rstride_;
};

// Bounding box of K·S for a finite K and a box S.
Window product_region(const GroupSpec& g, const ElemSet& k, const Window& s);

} // namespace sumset::detail
