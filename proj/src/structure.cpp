#include "sumset/structure.hpp"

#include "sumset/caps.hpp"
#include "sumset/errors.hpp"
#include "sumset/expr.hpp"
#include "sumset/parallel.hpp"

#include "shift_scan.hpp"

#include <atomic>

namespace sumset {

namespace {

using nlohmann::json;

// Calls fn(first_elem_of_row, row_length) for each row of w along its last
// coordinate.
template <class Fn>
void for_rows(const Window& w, Fn&& fn) {
    const std::uint64_t len = w.extent(w.dim() - 1);
    if (w.dim() == 1) {
        fn(w.lo_corner(), len);
        return;
    }
    std::vector<Interval> head(w.ranges().begin(), w.ranges().end() - 1);
    for (Elem e : enumerate_window(GroupSpec::lattice(head.size()), Window(head))) {
        e.push_back(w[w.dim() - 1].lo);
        fn(e, len);
    }
}

// Bits of region set exactly on the cells of w ⊆ region.
Bitset box_bits(const Window& region, const Window& w) {
    Bitset b(region.cells("box bits"));
    for_rows(w, [&](const Elem& start, std::uint64_t len) { b.set_range(region.index_of(start), len); });
    return b;
}

Bitset shifted_up(const Bitset& b, std::uint64_t by) {
    Bitset r(b.size());
    if (by < b.size()) r.or_range(b, 0, by, b.size() - by);
    return r;
}

// S + [0,r]^d on the cells of w (spill across row ends lands inside the
// collar and is never read).
Bitset anchored_dilation(const Bitset& bits, const Window& w, std::uint64_t r) {
    Bitset cur = bits;
    std::uint64_t stride = 1;
    for (std::size_t i = w.dim(); i-- > 0;) {
        std::uint64_t c = 0;
        while (c < r) {
            const std::uint64_t add = std::min(c + 1, r - c);
            cur |= shifted_up(cur, add * stride);
            c += add;
        }
        stride *= w.extent(i);
    }
    return cur;
}

ElemSet shape_elems(const GroupSpec& g, std::uint64_t k) { return enumerate_window(g, shape_box(g, k)); }

ElemSet inverses(const GroupSpec& g, const ElemSet& s) {
    ElemSet out;
    for (const auto& x : s) out.push_back(inv(g, x));
    normalize(out);
    return out;
}

StructureVerdict verdict(StructureVerdict::Property p, json scale) {
    StructureVerdict v;
    v.property = p;
    v.scale = std::move(scale);
    v.witness = json::object();
    return v;
}

} // namespace

std::string property_name(StructureVerdict::Property p) {
    switch (p) {
    case StructureVerdict::Property::Thick: return "thick";
    case StructureVerdict::Property::Syndetic: return "syndetic";
    case StructureVerdict::Property::Pws: return "piecewise_syndetic";
    case StructureVerdict::Property::PwBohr: return "piecewise_bohr";
    case StructureVerdict::Property::PwsTransfer: return "pws_transfer";
    }
    return "";
}

json StructureVerdict::to_json() const {
    return json{{"property", property_name(property)}, {"scale", scale}, {"passed", passed}, {"witness", witness}};
}

Window shape_box(const GroupSpec& g, std::uint64_t k) {
    return g.abelian() ? Window::cube(g.dim(), Int(0), Int(k)) : Window::cube(g.dim(), -Int(k), Int(k));
}

StructureVerdict check_thick(const DescribedSet& t, std::uint64_t k, const Window& search) {
    const GroupSpec& g = t.group();
    const Window f = shape_box(g, k);
    StructureVerdict v = verdict(StructureVerdict::Property::Thick, {{"k", k}, {"shape", f.to_string()}, {"search", search.to_string()}});
    v.witness["shape"] = f.to_string();
    std::optional<std::uint64_t> hit;
    if (g.kind() == GroupKind::IntegerLine) {
        const Window region(std::vector<Interval>{{search[0].lo, search[0].hi + Int(k)}});
        Bitset holes = enumerate(t, region).bits;
        holes.flip_all();
        const std::uint64_t ns = search.cells("thick search");
        std::uint64_t off = 0;
        while (off < ns) {
            const std::uint64_t z = holes.find_next(off);
            if (z == Bitset::npos || z > off + k) {
                hit = off;
                break;
            }
            off = z + 1;
        }
    } else {
        const detail::ShiftScan scan(g, shape_elems(g, k), search);
        require_work(scan.shifts() * scan.shape_size(), "check_thick");
        const WindowSet ws = enumerate(t, scan.region());
        hit = first_index(scan.shifts(), [&](std::uint64_t i) { return scan.all(ws.bits, i); });
    }
    if (hit) {
        v.passed = true;
        v.t = search.elem_at(*hit);
        v.witness["t"] = to_string(*v.t);
    }
    return v;
}

StructureVerdict check_syndetic(const DescribedSet& s, std::uint64_t max_cover, const Window& w) {
    const GroupSpec& g = s.group();
    StructureVerdict v = verdict(StructureVerdict::Property::Syndetic, {{"max_cover", max_cover}, {"window", w.to_string()}});
    std::uint64_t r_max = 0;
    bool any = false;
    while (shape_box(g, r_max).cardinality() <= max_cover) {
        any = true;
        ++r_max;
    }
    if (!any) return v;
    --r_max;

    enum class Cover { NoCollar, Uncovered, Covered };
    std::optional<Window> collar_of_last;
    std::optional<Elem> uncovered;
    std::function<Cover(std::uint64_t)> covers;
    WindowSet ws = enumerate(s, w);
    if (g.abelian()) {
        covers = [&](std::uint64_t r) {
            std::vector<Interval> iv;
            for (const auto& x : w.ranges()) {
                if (x.lo + Int(r) > x.hi) return Cover::NoCollar;
                iv.push_back({x.lo + Int(r), x.hi});
            }
            const Window collar(iv);
            const Bitset cover = anchored_dilation(ws.bits, w, r);
            bool ok = true;
            for_rows(collar, [&](const Elem& start, std::uint64_t len) {
                if (!ok) return;
                const std::uint64_t i = w.index_of(start);
                if (cover.count_range(i, i + len) != len) {
                    ok = false;
                    Bitset miss = cover;
                    miss.flip_all();
                    uncovered = w.elem_at(miss.find_next(i));
                }
            });
            if (ok) collar_of_last = collar;
            return ok ? Cover::Covered : Cover::Uncovered;
        };
    } else {
        covers = [&](std::uint64_t r) {
            const ElemSet finv = inverses(g, shape_elems(g, r));
            const detail::ShiftScan scan(g, finv, w);
            require_work(scan.shifts() * scan.shape_size(), "check_syndetic");
            const Bitset in_w = box_bits(scan.region(), w);
            if (!first_index(scan.shifts(), [&](std::uint64_t i) { return scan.all(in_w, i); })) return Cover::NoCollar;
            const WindowSet sr = enumerate(s, scan.region());
            const auto bad = first_index(scan.shifts(), [&](std::uint64_t i) {
                return scan.all(in_w, i) && scan.none(sr.bits, i);
            });
            if (bad) {
                uncovered = w.elem_at(*bad);
                return Cover::Uncovered;
            }
            return Cover::Covered;
        };
    }
    // Larger radii only shrink the collar; keep to radii where it is nonempty.
    Cover top = covers(r_max);
    while (top == Cover::NoCollar && r_max > 0) top = covers(--r_max);
    if (top != Cover::Covered) {
        if (uncovered) v.witness["uncovered"] = to_string(*uncovered);
        v.witness["radius_tried"] = r_max;
        return v;
    }
    std::uint64_t lo = 0, hi = r_max; // hi passes
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (covers(mid) == Cover::Covered) hi = mid;
        else lo = mid + 1;
    }
    covers(lo);
    v.passed = true;
    v.witness["F"] = shape_box(g, lo).to_string();
    v.witness["radius"] = lo;
    v.witness["cover_size"] = shape_box(g, lo).cardinality().str();
    v.witness["window"] = w.to_string();
    if (g.abelian()) v.witness["collar"] = collar_of_last->to_string();
    return v;
}

StructureVerdict check_pws(const DescribedSet& c, std::uint64_t kK, std::uint64_t k_thick, const Window& search) {
    const GroupSpec& g = c.group();
    StructureVerdict v = verdict(StructureVerdict::Property::Pws,
                                 {{"kK", kK}, {"k_thick", k_thick}, {"search", search.to_string()}});
    auto attempt = [&](std::uint64_t r) { return check_thick(dilate(c, shape_elems(g, r)), k_thick, search); };
    StructureVerdict top = attempt(kK);
    if (!top.passed) return v;
    std::uint64_t lo = 0, hi = kK;
    StructureVerdict best = top;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        StructureVerdict m = attempt(mid);
        if (m.passed) {
            hi = mid;
            best = std::move(m);
        } else {
            lo = mid + 1;
        }
    }
    v.passed = true;
    v.t = best.t;
    v.witness = {{"K", shape_box(g, lo).to_string()}, {"radius", lo}, {"F", shape_box(g, k_thick).to_string()}, {"t", to_string(*best.t)}};
    return v;
}

ElemSet bohr_enumerate(const GroupSpec& g, const BohrSpec& spec, const Window& w) {
    return enumerate(bohr_set(g, spec), w).elements();
}

StructureVerdict check_piecewise_bohr(const DescribedSet& c, const BohrSpec& spec, std::uint64_t k_thick,
                                      const Window& search, std::size_t max_positions) {
    const GroupSpec& g = c.group();
    if (!g.abelian()) throw ContractError("check_piecewise_bohr needs an abelian group");
    const DescribedSet bohr = bohr_set(g, spec);
    StructureVerdict v = verdict(StructureVerdict::Property::PwBohr,
                                 {{"k_thick", k_thick}, {"search", search.to_string()}, {"bohr", bohr.to_expr()}});
    const detail::ShiftScan scan(g, shape_elems(g, k_thick), search);
    require_work(scan.shifts() * scan.shape_size(), "check_piecewise_bohr");
    const Bitset in_bohr = enumerate(bohr, scan.region()).bits;
    Bitset bad = in_bohr;
    bad.and_not(enumerate(c, scan.region()).bits);
    json positions = json::array();
    for (std::uint64_t i = 0; i < scan.shifts() && positions.size() < max_positions; ++i) {
        if (scan.none(bad, i) && !scan.none(in_bohr, i)) {
            const Elem t = scan.shift(i);
            if (!v.t) {
                v.t = t;
                v.witness["bohr_points"] = scan.count(in_bohr, i);
            }
            positions.push_back(to_string(t));
        }
    }
    if (v.t) {
        v.passed = true;
        v.witness["t"] = to_string(*v.t);
        v.witness["positions"] = positions;
        v.witness["F"] = shape_box(g, k_thick).to_string();
        v.witness["bohr"] = bohr.to_expr();
    }
    return v;
}

StructureVerdict pws_transfer_check(const DescribedSet& s, const DescribedSet& t, const ShiftMap& shifts,
                                    std::uint64_t kK, std::uint64_t k_thick, const Window& search) {
    const GroupSpec& g = s.group();
    if (!(t.group() == g)) throw ContractError("pws_transfer_check: group mismatch");
    StructureVerdict v = verdict(StructureVerdict::Property::PwsTransfer,
                                 {{"kK", kK}, {"k_thick", k_thick}, {"search", search.to_string()}});
    auto verify_shift = [&](const Window& h, const Elem& th) {
        for (const Elem& x : enumerate(s, h).elements()) {
            if (!member(t, mul(g, x, th))) {
                throw HypothesisViolation("(H ∩ S)·t_H ⊄ T for H=" + h.to_string() + ", t_H=" + to_string(th) +
                                          ": g=" + to_string(x) + " maps to " + to_string(mul(g, x, th)));
            }
        }
    };
    for (const auto& [h, th] : shifts.entries) verify_shift(h, th);

    const StructureVerdict src = check_pws(s, kK, k_thick, search);
    v.witness["source"] = src.to_json();
    if (!src.passed) return v;
    const std::uint64_t r = src.witness["radius"].get<std::uint64_t>();
    const ElemSet k = shape_elems(g, r), f = shape_elems(g, k_thick);
    const Elem& ff = *src.t;
    require_work(k.size() * f.size(), "pws_transfer_check");
    ElemSet need;
    for (const auto& a : k)
        for (const auto& x : f) need.push_back(mul(g, mul(g, inv(g, a), x), ff));
    const Window h_req = bounding_box(need);

    std::optional<std::pair<Window, Elem>> chosen;
    for (const auto& [h, th] : shifts.entries)
        if (h.contains(h_req)) {
            chosen = {h, th};
            break;
        }
    if (!chosen && shifts.uniform) {
        verify_shift(h_req, *shifts.uniform);
        chosen = {h_req, *shifts.uniform};
    }
    if (!chosen) {
        v.witness["reason"] = "no listed H contains K^-1 F f = " + h_req.to_string();
        return v;
    }
    const Elem t_new = mul(g, ff, chosen->second);
    const DescribedSet kt = dilate(t, k);
    for (const auto& x : f) {
        if (!member(kt, mul(g, x, t_new))) {
            v.witness["reason"] = "F f t_H ⊄ K T at " + to_string(mul(g, x, t_new));
            return v;
        }
    }
    v.passed = true;
    v.t = t_new;
    v.witness["K"] = shape_box(g, r).to_string();
    v.witness["F"] = shape_box(g, k_thick).to_string();
    v.witness["f"] = to_string(ff);
    v.witness["H"] = chosen->first.to_string();
    v.witness["t_H"] = to_string(chosen->second);
    v.witness["t"] = to_string(t_new);
    return v;
}

bool recheck_verdict(const StructureVerdict& v, const DescribedSet& subject) {
    if (!v.passed) return false;
    const GroupSpec& g = subject.group();
    const json& w = v.witness;
    auto elems_of = [&](const std::string& key) { return enumerate_window(g, parse_window(w.at(key).get<std::string>(), g)); };
    auto elem_of = [&](const std::string& text) { return parse_elem(text, g); };
    // F·t ⊆ K·subject, by member queries.
    auto covered = [&](const ElemSet& f, const Elem& t, const ElemSet& k) {
        for (const auto& x : f) {
            const Elem y = mul(g, x, t);
            bool ok = false;
            for (const auto& a : k) {
                if (member(subject, mul(g, inv(g, a), y))) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
        return true;
    };
    switch (v.property) {
    case StructureVerdict::Property::Thick:
        return covered(elems_of("shape"), elem_of(w.at("t")), {identity(g)});
    case StructureVerdict::Property::Pws:
    case StructureVerdict::Property::PwsTransfer:
        return covered(elems_of("F"), elem_of(w.at("t")), elems_of("K"));
    case StructureVerdict::Property::Syndetic: {
        const Window win = parse_window(w.at("window").get<std::string>(), g);
        const ElemSet f = elems_of("F");
        std::uint64_t checked = 0;
        for (const auto& x : enumerate_window(g, win)) {
            bool in_collar = true, hit = false;
            for (const auto& a : f) {
                const Elem y = mul(g, inv(g, a), x);
                if (!win.contains(y)) {
                    in_collar = false;
                    break;
                }
                hit = hit || member(subject, y);
            }
            if (!in_collar) continue;
            ++checked;
            if (!hit) return false;
        }
        return checked > 0;
    }
    case StructureVerdict::Property::PwBohr: {
        const DescribedSet bohr = parse_set(w.at("bohr").get<std::string>(), g);
        const ElemSet f = elems_of("F");
        for (const auto& p : w.at("positions")) {
            const Elem t = elem_of(p.get<std::string>());
            bool nonempty = false;
            for (const auto& x : f) {
                const Elem y = mul(g, x, t);
                if (!member(bohr, y)) continue;
                nonempty = true;
                if (!member(subject, y)) return false;
            }
            if (!nonempty) return false;
        }
        return !w.at("positions").empty();
    }
    }
    return false;
}

} // namespace sumset
