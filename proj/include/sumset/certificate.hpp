#pragma once

#include "json.hpp"
#include "sumset/expr.hpp"

#include <map>
#include <string>

namespace sumset {

// Self-contained, replayable evidence for a witness. Sets are stored as
// expressions in the set grammar; every check in the transcript is replayed
// with member queries against freshly parsed sets.
//
// Check ops:
//   member         {set, elem, expect}
//   factor         {target, factors: [[set, elem], ...]}  target = product, each factor in its set
//   count          {set, elems, at_least[, beta, of]}       #{distinct elems in set} >= at_least (>= beta·|of|)
//   product_pairs  {left, right, C, t}                      x·(y^-1 t) = x·y^-1·t ∈ left·right for all x,y ∈ C
//   sum_boxes_in   {set, left, right, window}               ((∪ left) + (∪ right)) ∩ window ⊆ set; boxes as [window, translator]
//   sumset_cover   {parts, left, right, factors}            every z ∈ C_1 + ... + C_k (parts as [set, window]) is a·b, listed as [z, a, b]
//   escape         {a, b1, b2, m}                           2m < |b1z - b2z + ax(b1y - b2y)|
//   difference_cover {bohr, a, core, source, pairs, exceptions, density}
//                  every g ∈ bohr ∩ core is a1·a2^-1 with a1, a2 ∈ a ∩ source, or listed as an exception
struct WitnessCertificate {
    std::string lemma;
    GroupSpec group = GroupSpec::line();
    std::map<std::string, std::string> sets;
    nlohmann::json witness = nlohmann::json::object();
    nlohmann::json checks = nlohmann::json::array();

    void add_set(const std::string& name, const DescribedSet& s) { sets[name] = s.to_expr(); }
    std::string digest() const;
    nlohmann::json to_json() const;
    static WitnessCertificate from_json(const nlohmann::json& j);
};

struct ReplayResult {
    bool ok = true;
    std::size_t checks = 0;
    std::string failure; // first failing check, human readable
};

ReplayResult replay(const WitnessCertificate& c);
// Parses and replays; a digest mismatch or malformed record is a failure.
ReplayResult replay_json(const nlohmann::json& j);

std::string fnv1a_hex(const std::string& text);

} // namespace sumset
