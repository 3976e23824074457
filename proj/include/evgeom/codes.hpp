#pragma once

// Point sets as parity-check matrices and brute-force minimum distance:
// d is the least number of linearly dependent columns, found by a
// column-subset scan of increasing cardinality.

#include <cstdint>
#include <string>
#include <vector>

#include "evgeom/geometry.hpp"
#include "evgeom/verify.hpp"

namespace evgeom {

struct CheckMatrix {
    std::uint32_t q = 0;
    int rows = 0, cols = 0;
    std::vector<std::uint8_t> data;  // row-major
    std::uint8_t at(int r, int c) const { return data[(std::size_t)r * cols + c]; }
    std::uint8_t& at(int r, int c) { return data[(std::size_t)r * cols + c]; }
    std::vector<std::uint8_t> column(int c) const;
};

// Columns are the intrinsic coordinates of X, in point order. Refuses
// non-spanning sets (the code parameters would be misleading).
CheckMatrix export_check_matrix(const PointSet& set);

// Columns as projective points; they must be nonzero and pairwise
// non-proportional.
PointSet pointset_from_columns(const CheckMatrix& m, const std::string& label);

struct MinDistanceResult {
    int distance = 0;
    std::vector<int> support;  // column indices of a minimum dependency
    u64 work = 0;
};

// Least d such that some d columns are linearly dependent. Throws
// std::invalid_argument for the zero-dimensional code (full column rank).
MinDistanceResult min_distance(const CheckMatrix& m, const VerifyOptions& opts = {});

// Parity-check matrix [I_6 | B] of the [12, 6, 6] extended ternary Golay
// code (self-dual bordered-circulant form).
CheckMatrix ternary_golay_check_matrix();

}  // namespace evgeom
