#include "sumset/folner.hpp"

#include "sumset/caps.hpp"
#include "sumset/errors.hpp"
#include "sumset/parallel.hpp"

#include "shift_scan.hpp"

#include <sstream>

namespace sumset {

namespace {

Elem zero_shift(const GroupSpec& g, const std::optional<Elem>& s) {
    if (!s) return identity(g);
    check_dim(g, *s);
    return *s;
}

bool better(const Int& hits, const Int& size, const Int& best_hits, const Int& best_size) {
    return hits * best_size > best_hits * size;
}

DensityReport make_report(Int hits, Int size) {
    DensityReport r;
    r.value = Rational(hits, size);
    r.hits = std::move(hits);
    r.size = std::move(size);
    return r;
}

std::int64_t as_i64(const Int& v, const char* what) { return to_i64_or_throw(v, what); }

} // namespace

FolnerFamily FolnerFamily::anchored(const GroupSpec& g, std::optional<Elem> shift) {
    if (!g.abelian()) throw ContractError("anchored Folner boxes are only built for abelian groups");
    return FolnerFamily(g, Shape::Anchored, zero_shift(g, shift));
}

FolnerFamily FolnerFamily::centered(const GroupSpec& g, std::optional<Elem> shift) {
    if (!g.abelian()) throw ContractError("centred Folner boxes are only built for abelian groups");
    return FolnerFamily(g, Shape::Centered, zero_shift(g, shift));
}

FolnerFamily FolnerFamily::heisenberg() {
    const auto h = GroupSpec::heisenberg();
    return FolnerFamily(h, Shape::Heisenberg, identity(h));
}

FolnerFamily FolnerFamily::standard(const GroupSpec& g) {
    switch (g.kind()) {
    case GroupKind::IntegerLine: return anchored(g);
    case GroupKind::IntegerLattice: return centered(g);
    case GroupKind::HeisenbergZ: return heisenberg();
    }
    throw ContractError("unknown group kind");
}

Window FolnerFamily::window(std::uint64_t n) const {
    const Int m(n);
    std::vector<Interval> iv;
    switch (shape_) {
    case Shape::Anchored:
        for (std::size_t i = 0; i < group_.dim(); ++i) iv.push_back({shift_[i], shift_[i] + m});
        break;
    case Shape::Centered:
        for (std::size_t i = 0; i < group_.dim(); ++i) iv.push_back({shift_[i] - m, shift_[i] + m});
        break;
    case Shape::Heisenberg:
        iv = {{-m, m}, {-m, m}, {-m * m, m * m}};
        break;
    }
    return Window(std::move(iv));
}

std::string FolnerFamily::name() const {
    switch (shape_) {
    case Shape::Anchored: return "anchored" + (shift_ == identity(group_) ? std::string() : "+" + to_string(shift_));
    case Shape::Centered: return "centered" + (shift_ == identity(group_) ? std::string() : "+" + to_string(shift_));
    case Shape::Heisenberg: return "heisenberg";
    }
    return "";
}

Rational invariance_defect(const GroupSpec& g, const Window& f, const ElemSet& k) {
    if (f.dim() != g.dim()) throw ContractError("invariance_defect: window dimension mismatch");
    const Int size = f.cardinality();
    Int worst_overlap = size;
    auto overlap1 = [](const Interval& r, const Int& shift) {
        const Int len = r.hi - r.lo + 1;
        const Int s = boost::multiprecision::abs(shift);
        return s >= len ? Int(0) : Int(len - s);
    };
    for (const Elem& x : k) {
        check_dim(g, x);
        Int overlap;
        if (g.abelian()) {
            overlap = 1;
            for (std::size_t i = 0; i < g.dim(); ++i) overlap *= overlap1(f[i], x[i]);
        } else {
            // x·f = (x0+f0, x1+f1, x2+f2+x0·f1): fibre over f1 in F ∩ (F - x1).
            const Int ox = overlap1(f[0], x[0]);
            Int fibres = 0;
            if (ox != 0) {
                const Int ylo = std::max<Int>(f[1].lo, f[1].lo - x[1]);
                const Int yhi = std::min<Int>(f[1].hi, f[1].hi - x[1]);
                if (ylo <= yhi) {
                    require_work(static_cast<std::uint64_t>(as_i64(yhi - ylo + 1, "fibre count")), "invariance_defect");
                    for (Int y = ylo; y <= yhi; ++y) fibres += overlap1(f[2], x[2] + x[0] * y);
                }
            }
            overlap = ox * fibres;
        }
        if (overlap < worst_overlap) worst_overlap = overlap;
    }
    return Rational(2 * (size - worst_overlap), size);
}

Rational invariance_defect(const FolnerFamily& f, std::uint64_t n, const ElemSet& k) {
    return invariance_defect(f.group(), f.window(n), k);
}

std::string DensityReport::to_string() const {
    std::ostringstream os;
    os << to_fraction_string(value) << " (" << hits << "/" << size << ")";
    switch (evidence) {
    case Evidence::Window: os << " on " << (window ? window->to_string() : std::string("explicit set")); break;
    case Evidence::FamilyIndex: os << " at n=" << *index; break;
    case Evidence::Shift: os << " at t=" << sumset::to_string(*shift); break;
    }
    if (!scale.empty()) os << " [" << scale << "]";
    return os.str();
}

DensityReport relative_density(const DescribedSet& a, const Window& e) {
    const auto ws = enumerate(a, e);
    DensityReport r = make_report(Int(ws.count()), e.cardinality());
    r.window = e;
    r.lower_bound_only = false;
    return r;
}

DensityReport relative_density(const DescribedSet& a, const ElemSet& e) {
    if (e.empty()) throw ContractError("relative_density: evidence set is empty");
    std::uint64_t hits = 0;
    for (const auto& g : e) hits += member(a, g) ? 1 : 0;
    DensityReport r = make_report(Int(hits), Int(e.size()));
    r.lower_bound_only = false;
    return r;
}

DensityReport upper_density_estimate(const DescribedSet& a, const FolnerFamily& f, std::uint64_t n_max,
                                     std::uint64_t n_min) {
    if (n_min > n_max) throw ContractError("upper_density_estimate: n_min > n_max");
    if (!(a.group() == f.group())) throw ContractError("upper_density_estimate: group mismatch");
    const Window big = f.window(n_max);
    const WindowSet ws = enumerate(a, big);
    std::optional<std::uint64_t> best_n;
    Int best_hits = 0, best_size = 1;
    auto consider = [&](std::uint64_t n, const Int& hits, const Int& size) {
        if (!best_n || better(hits, size, best_hits, best_size)) {
            best_n = n;
            best_hits = hits;
            best_size = size;
        }
    };
    if (big.dim() == 1) {
        std::uint64_t lo = 0, hi = 0, hits = 0; // current [lo, hi) in big-window offsets
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            const Window w = f.window(n);
            const std::uint64_t nlo = static_cast<std::uint64_t>(as_i64(w[0].lo - big[0].lo, "offset"));
            const std::uint64_t nhi = static_cast<std::uint64_t>(as_i64(w[0].hi - big[0].lo, "offset")) + 1;
            if (n == 0) {
                hits = ws.bits.count_range(nlo, nhi);
            } else {
                if (nlo > lo || nhi < hi) throw ContractError("Folner family is not nested");
                hits += ws.bits.count_range(nlo, lo) + ws.bits.count_range(hi, nhi);
            }
            lo = nlo;
            hi = nhi;
            if (n >= n_min) consider(n, Int(hits), Int(hi - lo));
        }
    } else {
        for (std::uint64_t n = n_min; n <= n_max; ++n) {
            const Window w = f.window(n);
            const std::uint64_t rowlen = w.extent(w.dim() - 1);
            std::uint64_t hits = 0;
            std::vector<Interval> head(w.ranges().begin(), w.ranges().end() - 1);
            for (const Elem& row : enumerate_window(GroupSpec::lattice(head.size()), Window(head))) {
                Elem start = row;
                start.push_back(w[w.dim() - 1].lo);
                const std::uint64_t base = big.index_of(start);
                hits += ws.bits.count_range(base, base + rowlen);
            }
            consider(n, Int(hits), w.cardinality());
        }
    }
    DensityReport r = make_report(best_hits, best_size);
    r.evidence = DensityReport::Evidence::FamilyIndex;
    r.index = best_n;
    r.window = f.window(*best_n);
    r.scale = "n in [" + std::to_string(n_min) + "," + std::to_string(n_max) + "], " + f.name();
    return r;
}

DensityReport banach_density_estimate(const DescribedSet& a, const ElemSet& k, const Window& search) {
    const detail::ShiftScan scan(a.group(), k, search);
    const std::uint64_t ns = scan.shifts();
    require_work(ns * k.size(), "banach_density_estimate");
    const WindowSet ws = enumerate(a, scan.region());

    struct Best {
        std::uint64_t hits = 0;
        std::uint64_t index = 0;
        bool set = false;
    };
    std::vector<Best> best(parallel_chunk_count(ns));
    parallel_chunks(ns, [&](std::uint64_t lo, std::uint64_t hi, std::size_t c) {
        Best b;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const std::uint64_t hits = scan.count(ws.bits, i);
            if (!b.set || hits > b.hits) b = {hits, i, true};
            if (hits == k.size()) break;
        }
        best[c] = b;
    });
    Best win;
    for (const auto& b : best)
        if (b.set && (!win.set || b.hits > win.hits)) win = b;

    DensityReport r = make_report(Int(win.hits), Int(k.size()));
    r.evidence = DensityReport::Evidence::Shift;
    r.shift = scan.shift(win.index);
    const Window kb = bounding_box(k);
    r.scale = "K=" + kb.to_string() + (Int(k.size()) == kb.cardinality() ? "" : "(sparse)") + ", t in " + search.to_string();
    return r;
}

} // namespace sumset
