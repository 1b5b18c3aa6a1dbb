#include "sumset/bitset.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace sumset {

Bitset::Bitset(std::uint64_t n, bool value)
    : words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0), size_(n) {
    trim();
}

void Bitset::trim() noexcept {
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
}

void Bitset::set_range(std::uint64_t from, std::uint64_t len) {
    if (from + len > size_) throw std::out_of_range("Bitset::set_range");
    std::uint64_t pos = from;
    const std::uint64_t end = from + len;
    while (pos < end) {
        const auto sh = pos & 63;
        const auto take = std::min<std::uint64_t>(64 - sh, end - pos);
        const std::uint64_t mask = take == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << take) - 1);
        words_[pos >> 6] |= mask << sh;
        pos += take;
    }
}

std::uint64_t Bitset::count() const noexcept {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

std::uint64_t Bitset::count_range(std::uint64_t from, std::uint64_t to) const {
    if (to > size_ || from > to) throw std::out_of_range("Bitset::count_range");
    std::uint64_t c = 0;
    std::uint64_t pos = from;
    while (pos < to) {
        const auto take = std::min<std::uint64_t>(64, to - pos);
        auto w = word_at(pos);
        if (take < 64) w &= (std::uint64_t{1} << take) - 1;
        c += static_cast<std::uint64_t>(std::popcount(w));
        pos += take;
    }
    return c;
}

bool Bitset::any() const noexcept {
    return std::any_of(words_.begin(), words_.end(), [](auto w) { return w != 0; });
}

bool Bitset::all() const noexcept { return count() == size_; }

std::uint64_t Bitset::find_next(std::uint64_t from) const noexcept {
    if (from >= size_) return npos;
    std::uint64_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
        if (w != 0) {
            const auto idx = (wi << 6) + static_cast<std::uint64_t>(std::countr_zero(w));
            return idx < size_ ? idx : npos;
        }
        if (++wi >= words_.size()) return npos;
        w = words_[wi];
    }
}

Bitset& Bitset::operator|=(const Bitset& o) {
    if (o.size_ != size_) throw std::invalid_argument("Bitset size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

Bitset& Bitset::operator&=(const Bitset& o) {
    if (o.size_ != size_) throw std::invalid_argument("Bitset size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

Bitset& Bitset::and_not(const Bitset& o) {
    if (o.size_ != size_) throw std::invalid_argument("Bitset size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
}

void Bitset::flip_all() noexcept {
    for (auto& w : words_) w = ~w;
    trim();
}

Bitset Bitset::reversed() const {
    Bitset r(size_);
    for (auto i = find_first(); i != npos; i = find_next(i + 1)) r.set(size_ - 1 - i);
    return r;
}

bool Bitset::subset_of(const Bitset& o) const {
    if (o.size_ != size_) throw std::invalid_argument("Bitset size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
}

std::uint64_t Bitset::word_at(std::uint64_t pos) const noexcept {
    if (pos >= size_) return 0;
    const auto wi = pos >> 6;
    const auto sh = pos & 63;
    std::uint64_t lo = words_[wi] >> sh;
    if (sh != 0 && wi + 1 < words_.size()) lo |= words_[wi + 1] << (64 - sh);
    return lo;
}

void Bitset::or_range(const Bitset& src, std::uint64_t src_off, std::uint64_t dst, std::uint64_t len) {
    if (src_off + len > src.size_ || dst + len > size_) throw std::out_of_range("Bitset::or_range");
    std::uint64_t done = 0;
    // Align the destination so each step writes into at most one word.
    while (done < len) {
        const auto d = dst + done;
        const auto room = 64 - (d & 63);
        const auto take = std::min<std::uint64_t>(room, len - done);
        auto w = src.word_at(src_off + done);
        if (take < 64) w &= (std::uint64_t{1} << take) - 1;
        words_[d >> 6] |= w << (d & 63);
        done += take;
    }
}

Bitset Bitset::dilate_right(std::uint64_t r) const {
    Bitset out = *this;
    // Doubling: after covering shifts [0, s], OR with itself shifted by s+1.
    std::uint64_t covered = 0;
    while (covered < r) {
        const auto step = std::min<std::uint64_t>(covered + 1, r - covered);
        if (step >= size_) break;
        Bitset shifted(size_);
        shifted.or_range(out, 0, step, size_ - step);
        out |= shifted;
        covered += step;
    }
    return out;
}

} // namespace sumset
