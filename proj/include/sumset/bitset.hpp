#pragma once

#include <cstdint>
#include <vector>

namespace sumset {

// Dense bit vector used for window-restricted set arithmetic. The only
// non-trivial primitive is word-level copying at arbitrary bit offsets,
// which backs shifts, sub-box extraction and Z sumsets.
class Bitset {
public:
    static constexpr std::uint64_t npos = ~std::uint64_t{0};

    Bitset() = default;
    explicit Bitset(std::uint64_t n, bool value = false);

    std::uint64_t size() const noexcept { return size_; }
    bool test(std::uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::uint64_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::uint64_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void assign(std::uint64_t i, bool v) noexcept { v ? set(i) : reset(i); }
    void set_range(std::uint64_t from, std::uint64_t len);

    std::uint64_t count() const noexcept;
    std::uint64_t count_range(std::uint64_t from, std::uint64_t to) const; // [from, to)
    bool any() const noexcept;
    bool all() const noexcept;
    std::uint64_t find_first() const noexcept { return find_next(0); }
    std::uint64_t find_next(std::uint64_t from) const noexcept; // first set bit >= from

    Bitset& operator|=(const Bitset& o);
    Bitset& operator&=(const Bitset& o);
    Bitset& and_not(const Bitset& o);
    void flip_all() noexcept;
    Bitset reversed() const;
    // True iff every set bit of *this is also set in o.
    bool subset_of(const Bitset& o) const;

    // 64 bits starting at `pos` (bits beyond size() read as zero).
    std::uint64_t word_at(std::uint64_t pos) const noexcept;
    // this[dst + i] |= src[src_off + i] for i < len.
    void or_range(const Bitset& src, std::uint64_t src_off, std::uint64_t dst, std::uint64_t len);
    // Extends every run of ones to the right by r cells: bit x set iff some
    // source bit in [x - r, x] is set.
    Bitset dilate_right(std::uint64_t r) const;

    friend bool operator==(const Bitset&, const Bitset&) = default;

private:
    void trim() noexcept;
    std::vector<std::uint64_t> words_;
    std::uint64_t size_ = 0;
};

} // namespace sumset
