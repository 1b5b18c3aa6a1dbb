#pragma once

#include "sumset/certificate.hpp"
#include "sumset/folner.hpp"
#include "sumset/structure.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sumset {

struct ShiftWitness {
    Elem t;
    std::uint64_t count = 0; // |B ∩ Kt|
    WitnessCertificate cert;
};

// First t in `search` with |B ∩ Kt| >= β|K|, 0 < β <= 1.
ShiftWitness shifted_window_witness(const DescribedSet& b, const ElemSet& k, const Rational& beta, const Window& search);

struct IntervalWitness {
    Elem t;
    bool via_proof = true; // false when the direct window-sumset search was needed
    Rational alpha;        // min over x <= n of d_I(A - x), I = W_A
    WitnessCertificate cert;
};

// t with {0..n} + t ⊆ (A ∩ W_A) + B, on Z. When both certified densities are
// given and sum to at most 1 the call fails with PreconditionUnverified.
IntervalWitness interval_in_sumset(const DescribedSet& a, const DescribedSet& b, std::uint64_t n, const Window& wa,
                                   const Window& search, std::optional<Rational> certified_a = std::nullopt,
                                   std::optional<Rational> certified_b = std::nullopt);

// Row k: Banach estimate of K_k·A, K_k = [-k,k]^d, over shape `k_shape`
// translated through `search`. Non-decreasing in k.
std::vector<DensityReport> growth_saturation(const DescribedSet& a, std::uint64_t k_max, const ElemSet& k_shape,
                                             const Window& search);
// Row k: relative density of K_k·A on F_n maximised over n in [n_min, n_max].
std::vector<DensityReport> growth_saturation_upper(const DescribedSet& a, std::uint64_t k_max, const FolnerFamily& f,
                                                   std::uint64_t n_min, std::uint64_t n_max);

struct HurrayWitness {
    ElemSet c;
    Elem t;
    WitnessCertificate cert;
};

// t with |B ∩ A0^{-1} t| >= β|A0| and C = {c ∈ A0 : c^{-1} t ∈ B}, so that
// C C^{-1} t ⊆ A0 B.
HurrayWitness hurray_witness(const ElemSet& a0, const DescribedSet& b, const Rational& beta, const Window& search);

struct DDWitness {
    ElemSet d0;
    Elem t;
    std::uint64_t n = 0; // Folner index whose A ∩ F_n produced D0
    WitnessCertificate cert;
};

// For n = 1..depth runs hurray_witness(A ∩ F_n, B, β) and keeps the n whose
// C_n C_n^{-1} meets H most; D0 ⊆ C_n is chosen greedily to realise
// H ∩ C_n C_n^{-1}. Certifies (H ∩ D0 D0^{-1}) t ⊆ A B elementwise.
DDWitness dd_witness(const DescribedSet& a, const DescribedSet& b, const ElemSet& h, const FolnerFamily& f,
                     std::uint64_t depth, const Rational& beta, const Window& search);

struct JinResult {
    StructureVerdict verdict;
    std::uint64_t k_radius = 0;
    Elem t;
    std::uint64_t interval_length = 0;
    WitnessCertificate cert;
};

// K·(A ∩ W) + (B ∩ W) ⊇ [t, t + k_thick] on Z, with K = [-k,k] and k the
// smallest radius <= kK whose Banach estimates push d(KA) + d(B) above 1.
JinResult jin_pipeline(const DescribedSet& a, const DescribedSet& b, std::uint64_t kK, std::uint64_t k_thick,
                       const Window& w);

struct ThickSplit {
    std::vector<Elem> a, b;
    std::vector<Int> a_index, b_index; // block index n chosen at each step (a_1 is the identity, unindexed)
    WitnessCertificate cert;           // sum_boxes_in over the verification window
};

// T1 = ∪_{l<=k} K_l + a_l, T2 = ∪_{m<=k} K_m + b_m with T1 + T2 ⊆ T.
ThickSplit thick_split(const BlockFamily& t, std::uint64_t steps, const Window& verify);

DescribedSet heisenberg_thick_T(std::uint64_t n_max);

struct EscapeWitness {
    Elem a, b1, b2;
    Int m, n0;
    WitnessCertificate cert;
};

// a·b1 lies in the block K_m·(m², 0, 0), m >= n0, while a·b2 escapes T.
EscapeWitness heisenberg_escape_check(const DescribedSet& a, const DescribedSet& b, std::uint64_t n_max,
                                      const Window& search);

struct BogolyubovResult {
    BohrSpec spec;
    std::vector<Rational> frequencies;
    std::vector<double> magnitudes; // |hat 1_A(ξ)| / |A ∩ W|
    Rational exceptional_density;
    Window core;
    WitnessCertificate cert;
};

BogolyubovResult bogolyubov_bohr_extract(const DescribedSet& a, const Window& w, double theta = 0.4,
                                         std::size_t max_frequencies = 16);

struct KFoldResult {
    std::vector<Window> intervals;     // thick parts, one per piece
    std::vector<BohrSpec> bohr_parts;  // Bohr parts, one per piece
    std::vector<DescribedSet> pieces;  // C_i = Bohr_i ∩ interval_i
    WitnessCertificate cert;
};

// C_1 + ... + C_k ⊆ A + B on W, each C_i piecewise Bohr.
KFoldResult demo_k_folded(const DescribedSet& a, const DescribedSet& b, std::uint64_t k, const Window& w,
                          std::uint64_t kK = 50, std::uint64_t k_thick = 999);

} // namespace sumset
