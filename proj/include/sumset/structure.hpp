#pragma once

#include "json.hpp"
#include "sumset/set_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sumset {

struct StructureVerdict {
    enum class Property { Thick, Syndetic, Pws, PwBohr, PwsTransfer };

    Property property;
    nlohmann::json scale;   // parameters the verdict is stamped with
    bool passed = false;
    nlohmann::json witness; // property-specific, re-checkable evidence
    std::optional<Elem> t;  // first witnessing translate, when there is one

    nlohmann::json to_json() const;
    std::string to_jsonl() const { return to_json().dump(); }
};

std::string property_name(StructureVerdict::Property p);

// Shapes used by the detectors: [0,k]^d on abelian kinds, [-k,k]^3 on H3.
Window shape_box(const GroupSpec& g, std::uint64_t k);

// Some t in `search` with F_k·t ⊆ T; the first in lexicographic order.
StructureVerdict check_thick(const DescribedSet& t, std::uint64_t k, const Window& search);

// Smallest box F = shape_box(r) with |F| <= max_cover and FS ⊇ W', where
// W' = {x ∈ W : F^{-1}x ⊆ W} is W minus its boundary collar.
StructureVerdict check_syndetic(const DescribedSet& s, std::uint64_t max_cover, const Window& w);

// Smallest K = shape_box(r), r <= kK, such that K·C passes check_thick.
StructureVerdict check_pws(const DescribedSet& c, std::uint64_t kK, std::uint64_t k_thick, const Window& search);

ElemSet bohr_enumerate(const GroupSpec& g, const BohrSpec& spec, const Window& w);

// Translates t in `search` with ∅ ≠ Bohr ∩ F·t ⊆ C. The first is the
// witness; up to `max_positions` are listed.
StructureVerdict check_piecewise_bohr(const DescribedSet& c, const BohrSpec& spec, std::uint64_t k_thick,
                                      const Window& search, std::size_t max_positions = 8);

// Finite-set-indexed shifts H ↦ t_H; `uniform` answers every H.
struct ShiftMap {
    std::vector<std::pair<Window, Elem>> entries;
    std::optional<Elem> uniform;
};

// Checks (H ∩ S)·t_H ⊆ T for every listed H (HypothesisViolation otherwise),
// takes a pws witness (K, F, f) for S and transfers it: F·f·t_H ⊆ K·T with
// H ⊇ K^{-1}·F·f.
StructureVerdict pws_transfer_check(const DescribedSet& s, const DescribedSet& t, const ShiftMap& shifts,
                                    std::uint64_t kK, std::uint64_t k_thick, const Window& search);

// Re-validates a passed verdict from its JSON witness using member queries
// only. `subject` is the set the verdict is about (T, S, C or, for transfers,
// the target T).
bool recheck_verdict(const StructureVerdict& v, const DescribedSet& subject);

} // namespace sumset
