#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chowkit/labeling.hpp"
#include "chowkit/poset.hpp"

namespace chowkit {

struct LabeledPoset {
    GradedPoset poset;
    EdgeLabeling labeling;
};

// Subsets of [n]; covers add one element and are labeled by it.
LabeledPoset boolean_lattice(int n);

// Lattice of flats of the rank k uniform matroid on [n]: subsets of size
// <= k-1 together with [n]; labels are min T\S.
LabeledPoset uniform_lattice(int k, int n);

// Partition lattice of [n] (rank n-1), built as the Dowling geometry over
// the trivial group on n-1 points, with the Simion labeling.
LabeledPoset partition_lattice(int n);

// Dowling geometry over Z/mZ on {0} u [n] with the Simion labeling.
// m = 1 gives partition lattices, m = 2 the type B intersection lattices.
LabeledPoset dowling(int n, int m, std::uint64_t max_elements = 500000);

// Subspaces of the n-dimensional space over the prime field with q
// elements, labeled along the coordinate subspace chain:
// label(U < V) = min { i : U + <e_1..e_i> contains V }.
LabeledPoset projective(int n, int q, std::uint64_t max_elements = 500000);

// A simple configuration of points over a prime field; realizes geometric
// lattices of flats, including deliberately lopsided ones.
struct PointConfig {
    int q = 2;                            // prime
    int d = 0;                            // ambient dimension
    std::vector<std::vector<int>> points; // nonzero, pairwise non-parallel
};

// Lattice of flats of the configuration; covers are labeled by the minimum
// index (1-based) of a point added by the closure step.
LabeledPoset flats_from_points(const PointConfig& cfg);

// JSON poset documents, schema shared with the command line tool:
// { "elements": [names], "covers": [[lo,hi],...], "labels": [[lo,hi,l],...] }
struct ParsedPoset {
    GradedPoset poset;
    std::optional<EdgeLabeling> labeling;
};

ParsedPoset from_json(const std::string& text);
std::string to_json(const GradedPoset& p, const EdgeLabeling* lam = nullptr);

} // namespace chowkit
