#pragma once

#include "sumset/group.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sumset {

struct Interval {
    Int lo;
    Int hi;
    friend bool operator==(const Interval&, const Interval&) = default;
};

// Coordinate box prod_i [lo_i, hi_i]. Cells are indexed in lexicographic
// (row-major, last coordinate fastest) order.
class Window {
public:
    Window() = default;
    explicit Window(std::vector<Interval> ranges);
    static Window interval(const Int& lo, const Int& hi) { return Window({{lo, hi}}); }
    static Window cube(std::size_t dim, const Int& lo, const Int& hi);
    static Window point(const Elem& e);

    std::size_t dim() const noexcept { return ranges_.size(); }
    const std::vector<Interval>& ranges() const noexcept { return ranges_; }
    const Interval& operator[](std::size_t i) const { return ranges_[i]; }

    Int cardinality() const;
    // Cardinality as uint64; throws ResourceCapError if above the cell cap.
    std::uint64_t cells(const char* what = "window") const;
    std::uint64_t extent(std::size_t i) const;

    bool contains(const Elem& e) const;
    bool contains(const Window& other) const;
    std::uint64_t index_of(const Elem& e) const; // precondition: contains(e)
    Elem elem_at(std::uint64_t idx) const;
    Elem lo_corner() const;
    Elem hi_corner() const;

    Window translated(const Elem& t) const; // abelian translate
    Window negated() const;
    std::optional<Window> intersect(const Window& other) const;

    std::string to_string() const;
    friend bool operator==(const Window&, const Window&) = default;

private:
    std::vector<Interval> ranges_;
};

// Minkowski sum of boxes (abelian).
Window minkowski(const Window& a, const Window& b);
Window bounding_box(const ElemSet& s);
Window hull(const Window& a, const Window& b);

// Exactly the elements of W in lexicographic order.
ElemSet enumerate_window(const GroupSpec& g, const Window& w);

} // namespace sumset
