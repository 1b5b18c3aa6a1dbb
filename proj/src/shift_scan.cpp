#include "shift_scan.hpp"

#include "sumset/errors.hpp"

namespace sumset::detail {

Window product_region(const GroupSpec& g, const ElemSet& k, const Window& s) {
    const Window kb = bounding_box(k);
    if (g.abelian()) return minkowski(kb, s);
    // Each coordinate of x·y is affine in every single coordinate, so the
    // extremes are attained at corners.
    ElemSet corners;
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            Elem x, y;
            for (std::size_t i = 0; i < 3; ++i) {
                x.push_back((a >> i & 1) ? kb[i].hi : kb[i].lo);
                y.push_back((b >> i & 1) ? s[i].hi : s[i].lo);
            }
            corners.push_back(mul(g, x, y));
        }
    return bounding_box(corners);
}

ShiftScan::ShiftScan(const GroupSpec& g, const ElemSet& k, const Window& search)
    : search_(search), region_(product_region(g, k, search)) {
    if (k.empty()) throw ContractError("shift scan: shape is empty");
    if (search.dim() != g.dim()) throw ContractError("shift scan: search window dimension mismatch");
    for (const auto& x : k) check_dim(g, x);
    ns_ = search.cells("shift search window");
    region_.cells("shift scan region");
    heis_ = g.kind() == GroupKind::HeisenbergZ;
    const std::size_t d = g.dim();
    rstride_.assign(d, 0);
    sstride_.assign(d, 0);
    slo_.assign(d, 0);
    sext_.assign(d, 0);
    rlo_.assign(d, 0);
    std::int64_t rs = 1, ss = 1;
    for (std::size_t i = d; i-- > 0;) {
        rstride_[i] = rs;
        rs *= static_cast<std::int64_t>(region_.extent(i));
        sstride_[i] = ss;
        sext_[i] = static_cast<std::int64_t>(search.extent(i));
        ss *= sext_[i];
        slo_[i] = to_i64_or_throw(search[i].lo, "search bound");
        rlo_[i] = to_i64_or_throw(region_[i].lo, "region bound");
    }
    for (const auto& x : k) {
        std::int64_t o = 0;
        for (std::size_t i = 0; i < d; ++i) o += to_i64_or_throw(x[i], "shape coordinate") * rstride_[i];
        off_.push_back(o);
        kx_.push_back(to_i64_or_throw(x[0], "shape coordinate"));
    }
    contiguous_ = d == 1;
    for (std::size_t j = 1; contiguous_ && j < k.size(); ++j) contiguous_ = k[j][0] == k[j - 1][0] + 1;
}

template <class Fn>
bool ShiftScan::visit(std::uint64_t i, Fn&& fn) const {
    std::int64_t base = 0, ty = 0;
    for (std::size_t q = 0; q < slo_.size(); ++q) {
        const std::int64_t t = slo_[q] + static_cast<std::int64_t>(i / sstride_[q]) % sext_[q];
        if (q == 1) ty = t;
        base += (t - rlo_[q]) * rstride_[q];
    }
    for (std::size_t j = 0; j < off_.size(); ++j) {
        const std::int64_t p = base + off_[j] + (heis_ ? kx_[j] * ty : 0);
        if (!fn(static_cast<std::uint64_t>(p))) return false;
    }
    return true;
}

std::uint64_t ShiftScan::count(const Bitset& bits, std::uint64_t i) const {
    if (contiguous_) {
        const auto from = static_cast<std::uint64_t>(slo_[0] + static_cast<std::int64_t>(i) - rlo_[0] + off_.front());
        return bits.count_range(from, from + off_.size());
    }
    std::uint64_t c = 0;
    visit(i, [&](std::uint64_t p) {
        c += bits.test(p);
        return true;
    });
    return c;
}

bool ShiftScan::all(const Bitset& bits, std::uint64_t i) const {
    if (contiguous_) return count(bits, i) == off_.size();
    return visit(i, [&](std::uint64_t p) { return bits.test(p); });
}

bool ShiftScan::none(const Bitset& bits, std::uint64_t i) const {
    if (contiguous_) return count(bits, i) == 0;
    return visit(i, [&](std::uint64_t p) { return !bits.test(p); });
}

} // namespace sumset::detail
