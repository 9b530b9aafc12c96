#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chowkit/intpoly.hpp"

namespace chowkit {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail; // failure witnesses, empty on success
};

struct SuiteReport {
    bool ok = true;
    std::vector<CheckResult> criteria;
};

// Reference coefficients (low to high) for the type-B Dowling Chow
// polynomials, indexed by n. Overridable so a deliberately corrupted table
// can be fed in as a negative control.
using GoldenTable = std::vector<std::pair<int, std::vector<Int>>>;
const GoldenTable& default_golden_table(); // n = 3..7

// The full verification battery. The extended level adds the n = 7 type-B
// golden value on a 28640-element lattice; the seed drives every randomized
// property check deterministically.
SuiteReport run_acceptance_suite(bool extended, std::uint64_t seed = 20240901,
                                 const GoldenTable* golden = nullptr);

} // namespace chowkit
