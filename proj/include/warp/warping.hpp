#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "warp/gauss_code.hpp"
#include "warp/row.hpp"

namespace warp {

/// d(D_b) for every base point: values[j] = warping degree from b_{j+1}.
/// Entries lie in 0..c and cyclically adjacent entries differ by exactly 1.
using WarpingDegreeSequence = Row;

/// The c x 2c 0/1 matrix recording, for each crossing and each base point,
/// whether the crossing is met under before over when traveling from there.
/// rows[i] belongs to crossing i+1; each row is a single cyclic block of 1s
/// followed by a single block of 0s, both non-empty.
struct IncidenceMatrix {
  int crossing_count = 0;
  std::vector<Row> rows;

  bool operator==(const IncidenceMatrix&) const = default;
};

// True iff, traveling from base point b_{base_edge}, the first pass met at
// `crossing` goes under. Both indices are 1-based.
bool is_warping_crossing(const KnotDiagram& d, int base_edge, int crossing);

int warping_degree(const KnotDiagram& d, int base_edge);

WarpingDegreeSequence warping_degree_sequence(const KnotDiagram& d);

IncidenceMatrix incidence_matrix(const KnotDiagram& d);

KnotDiagram crossing_change(const KnotDiagram& d, int crossing);

// Low-level row builder for one assignment over p; out must have size 2c.
// Starts from d(b_1) = c - popcount(assignment) and walks the traversal,
// adding 1 after an over pass and subtracting 1 after an under pass.
void warping_row(const KnotProjection& p, std::uint64_t assignment,
                 std::span<std::int64_t> out);

} // namespace warp
