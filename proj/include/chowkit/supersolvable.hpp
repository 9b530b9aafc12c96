#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chowkit/labeling.hpp"
#include "chowkit/poset.hpp"

namespace chowkit {

// Join and meet tables, computed once per poset. Construction throws
// NotALattice with a witness pair if some join or meet fails to exist.
class LatticeOps {
public:
    explicit LatticeOps(const GradedPoset& p);

    int join(int a, int b) const { return join_[size_t(a) * n_ + b]; }
    int meet(int a, int b) const { return meet_[size_t(a) * n_ + b]; }

private:
    int n_;
    std::vector<int> join_, meet_;
};

// s is modular when (s,t) and (t,s) are modular pairs for every t, i.e.
// u v (s ^ t) = (u v s) ^ t for all u <= t and the same with s, t swapped.
bool is_modular_element(const GradedPoset& p, const LatticeOps& ops, int s);
bool is_modular_element(const GradedPoset& p, int s);

struct ModularChain {
    std::vector<int> elements; // bottom to top, consecutive covers
};

// Depth-first search over covers restricted to modular elements.
std::optional<ModularChain> modular_maximal_chain(const GradedPoset& p);

// The supersolvable labeling along a modular maximal chain:
// label(s, t) = min { i : s v m_i >= t }. Validates the chain and checks
// the EL property of the result.
EdgeLabeling mcnamara_labeling(const GradedPoset& p, const ModularChain& m);

struct SupersolvableResult {
    ModularChain chain;
    EdgeLabeling labeling;
    UmelReport report;     // report.ok is true on return
    bool des_matches_ind;  // des(s,t) == Ind(s,t) - 1 for every cover
};

// Full pipeline: lattice check, rank uniformity, modular chain search,
// labeling, UMEL verification. Throws NotALattice, NotRankUniform or
// NotSupersolvable with an explanation.
SupersolvableResult umel_from_supersolvable(const GradedPoset& p);

} // namespace chowkit
