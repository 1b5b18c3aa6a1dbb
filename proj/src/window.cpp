#include "sumset/window.hpp"
#include "sumset/caps.hpp"
#include "sumset/errors.hpp"

#include <sstream>

namespace sumset {

Window::Window(std::vector<Interval> ranges) : ranges_(std::move(ranges)) {
    if (ranges_.empty()) throw ContractError("window must have at least one coordinate");
    for (const auto& r : ranges_)
        if (r.lo > r.hi) throw ContractError("window interval [" + r.lo.str() + "," + r.hi.str() + "] is empty");
}

Window Window::cube(std::size_t dim, const Int& lo, const Int& hi) {
    return Window(std::vector<Interval>(dim, Interval{lo, hi}));
}

Window Window::point(const Elem& e) {
    std::vector<Interval> r;
    for (const auto& c : e) r.push_back({c, c});
    return Window(std::move(r));
}

Int Window::cardinality() const {
    Int n = 1;
    for (const auto& r : ranges_) n *= (r.hi - r.lo + 1);
    return n;
}

std::uint64_t Window::cells(const char* what) const {
    const Int n = cardinality();
    const auto cap = caps().cells;
    if (n > Int(cap)) {
        const auto req = n > Int(std::numeric_limits<std::uint64_t>::max())
                             ? std::numeric_limits<std::uint64_t>::max()
                             : n.convert_to<std::uint64_t>();
        throw ResourceCapError(std::string(what) + " " + to_string() + ": enumeration cap exceeded", cap, req);
    }
    return n.convert_to<std::uint64_t>();
}

std::uint64_t Window::extent(std::size_t i) const {
    return static_cast<std::uint64_t>(ranges_[i].hi - ranges_[i].lo + 1);
}

bool Window::contains(const Elem& e) const {
    if (e.size() != ranges_.size()) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < ranges_[i].lo || e[i] > ranges_[i].hi) return false;
    return true;
}

bool Window::contains(const Window& o) const {
    if (o.dim() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
        if (o.ranges_[i].lo < ranges_[i].lo || o.ranges_[i].hi > ranges_[i].hi) return false;
    return true;
}

std::uint64_t Window::index_of(const Elem& e) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        idx = idx * extent(i) + static_cast<std::uint64_t>(e[i] - ranges_[i].lo);
    return idx;
}

Elem Window::elem_at(std::uint64_t idx) const {
    Elem e(dim());
    for (std::size_t i = dim(); i-- > 0;) {
        const auto ext = extent(i);
        e[i] = ranges_[i].lo + Int(idx % ext);
        idx /= ext;
    }
    return e;
}

Elem Window::lo_corner() const {
    Elem e;
    for (const auto& r : ranges_) e.push_back(r.lo);
    return e;
}

Elem Window::hi_corner() const {
    Elem e;
    for (const auto& r : ranges_) e.push_back(r.hi);
    return e;
}

Window Window::translated(const Elem& t) const {
    if (t.size() != dim()) throw ContractError("translation dimension mismatch");
    auto r = ranges_;
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i].lo += t[i];
        r[i].hi += t[i];
    }
    return Window(std::move(r));
}

Window Window::negated() const {
    auto r = ranges_;
    for (auto& iv : r) iv = {-iv.hi, -iv.lo};
    return Window(std::move(r));
}

std::optional<Window> Window::intersect(const Window& o) const {
    if (o.dim() != dim()) throw ContractError("window dimension mismatch");
    std::vector<Interval> r;
    for (std::size_t i = 0; i < dim(); ++i) {
        Interval iv{std::max(ranges_[i].lo, o.ranges_[i].lo), std::min(ranges_[i].hi, o.ranges_[i].hi)};
        if (iv.lo > iv.hi) return std::nullopt;
        r.push_back(std::move(iv));
    }
    return Window(std::move(r));
}

std::string Window::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < ranges_.size(); ++i)
        os << (i ? "x" : "") << '[' << ranges_[i].lo.str() << ',' << ranges_[i].hi.str() << ']';
    return os.str();
}

Window minkowski(const Window& a, const Window& b) {
    if (a.dim() != b.dim()) throw ContractError("window dimension mismatch");
    std::vector<Interval> r;
    for (std::size_t i = 0; i < a.dim(); ++i) r.push_back({a[i].lo + b[i].lo, a[i].hi + b[i].hi});
    return Window(std::move(r));
}

Window hull(const Window& a, const Window& b) {
    if (a.dim() != b.dim()) throw ContractError("window dimension mismatch");
    std::vector<Interval> r;
    for (std::size_t i = 0; i < a.dim(); ++i)
        r.push_back({std::min(a[i].lo, b[i].lo), std::max(a[i].hi, b[i].hi)});
    return Window(std::move(r));
}

Window bounding_box(const ElemSet& s) {
    if (s.empty()) throw ContractError("bounding box of an empty set");
    Window w = Window::point(s.front());
    for (const auto& e : s) w = hull(w, Window::point(e));
    return w;
}

ElemSet enumerate_window(const GroupSpec& g, const Window& w) {
    if (w.dim() != g.dim()) throw ContractError("window " + w.to_string() + " does not match group " + g.name());
    const auto n = w.cells("enumerate_window");
    ElemSet out;
    out.reserve(n);
    Elem cur = w.lo_corner();
    for (std::uint64_t k = 0; k < n; ++k) {
        out.push_back(cur);
        // odometer increment, last coordinate fastest
        for (std::size_t i = w.dim(); i-- > 0;) {
            if (cur[i] < w[i].hi) {
                ++cur[i];
                break;
            }
            cur[i] = w[i].lo;
        }
    }
    return out;
}

} // namespace sumset
