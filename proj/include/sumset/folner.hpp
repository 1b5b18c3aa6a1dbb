#pragma once

#include "sumset/rational.hpp"
#include "sumset/set_model.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace sumset {

// Nested boxes F_0 ⊆ F_1 ⊆ ... per group kind:
//   Anchored: [0,n]^d + shift        (abelian kinds)
//   Centered: [-n,n]^d + shift       (abelian kinds)
//   Heisenberg: [-n,n] x [-n,n] x [-n^2,n^2]
class FolnerFamily {
public:
    enum class Shape { Anchored, Centered, Heisenberg };

    static FolnerFamily anchored(const GroupSpec& g, std::optional<Elem> shift = std::nullopt);
    static FolnerFamily centered(const GroupSpec& g, std::optional<Elem> shift = std::nullopt);
    static FolnerFamily heisenberg();
    // Anchored intervals on Z, centred boxes on Z^d, Heisenberg boxes on H3.
    static FolnerFamily standard(const GroupSpec& g);

    const GroupSpec& group() const noexcept { return group_; }
    Shape shape() const noexcept { return shape_; }
    Window window(std::uint64_t n) const;
    std::string name() const;

private:
    FolnerFamily(GroupSpec g, Shape s, Elem shift) : group_(g), shape_(s), shift_(std::move(shift)) {}
    GroupSpec group_;
    Shape shape_;
    Elem shift_;
};

// max over g in K of |gF △ F| / |F|, counted exactly (no enumeration of F).
Rational invariance_defect(const GroupSpec& g, const Window& f, const ElemSet& k);
Rational invariance_defect(const FolnerFamily& f, std::uint64_t n, const ElemSet& k);

struct DensityReport {
    enum class Evidence { Window, FamilyIndex, Shift };

    Rational value;
    Int hits;
    Int size;
    Evidence evidence = Evidence::Window;
    std::optional<Window> window;      // the evidence set when it is a box
    std::optional<std::uint64_t> index; // family index n
    std::optional<Elem> shift;          // translate t of the shape K
    std::string scale;                  // search range or n_max stamp
    // Finite proxies only bound the asymptotic quantity from below.
    bool lower_bound_only = true;

    std::string to_string() const;
};

DensityReport relative_density(const DescribedSet& a, const Window& e);
DensityReport relative_density(const DescribedSet& a, const ElemSet& e);

// max over n in [n_min, n_max] of d_{F_n}(A); first maximising n wins.
DensityReport upper_density_estimate(const DescribedSet& a, const FolnerFamily& f, std::uint64_t n_max,
                                     std::uint64_t n_min = 0);

// max over t in `search` of |A ∩ Kt| / |K|; the lexicographically first
// maximising t is returned.
DensityReport banach_density_estimate(const DescribedSet& a, const ElemSet& k, const Window& search);

} // namespace sumset
