#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "warp/exact_linalg.hpp"
#include "warp/row.hpp"
#include "warp/warping.hpp"

namespace warp {

// Full matrices are materialized only up to this many crossings (2^c rows);
// streaming consumers go further.
inline constexpr int default_materialize_limit = 20;
inline constexpr int default_streaming_limit = 28;

/// 2^c (or 2^c - 1) warping degree sequences, one per diagram over a shadow.
/// labels[i] is the assignment index of rows[i]; rows are generated in
/// assignment-index order.
struct WarpingMatrix {
  int crossing_count = 0;
  std::vector<std::uint64_t> labels;
  std::vector<Row> rows;

  bool operator==(const WarpingMatrix&) const = default;
};

/// +-1 matrix with entry (i, j) = +1 iff pass j+1 of diagram labels[i] goes
/// over. Equals the warping matrix times the cyclic difference matrix.
struct OuMatrix {
  int crossing_count = 0;
  std::vector<std::uint64_t> labels;
  std::vector<Row> rows;

  bool operator==(const OuMatrix&) const = default;
};

/// A perfect matching on the 2c pass positions: one chord per crossing.
struct ChordDiagram {
  std::vector<std::pair<int, int>> chords; // (min, max), sorted

  bool operator==(const ChordDiagram&) const = default;
};

WarpingMatrix warping_matrix(const KnotProjection& p,
                             int limit = default_materialize_limit,
                             unsigned jobs = 1);

/// warping_matrix(shadow(d)) with the single row of d deleted.
WarpingMatrix warping_matrix_without_signs(const KnotDiagram& d,
                                           int limit = default_materialize_limit,
                                           unsigned jobs = 1);

/// The 2c x 2c cyclic difference matrix: -1 on the diagonal, +1 below it,
/// +1 in the top-right corner.
std::vector<Row> a_matrix(int n);

OuMatrix ou_matrix(const KnotProjection& p,
                   int limit = default_materialize_limit, unsigned jobs = 1);

/// Same matrix computed the long way round, as the product of the warping
/// matrix with a_matrix(2c). Kept as an independent route for verification.
OuMatrix ou_matrix_via_product(const KnotProjection& p,
                               int limit = default_materialize_limit,
                               unsigned jobs = 1);

/// The unique pairing of ou-matrix columns whose sums vanish; the two
/// columns of a pair are the two passes of one crossing.
ChordDiagram column_pairs(const OuMatrix& u);

ChordDiagram gauss_diagram(const KnotProjection& p);
ChordDiagram gauss_diagram(const OuMatrix& u);
ChordDiagram gauss_diagram(const IncidenceMatrix& m);

// Canonical representative under row permutations and cyclic column shifts:
// of all 2c shifts, the lexicographically least row-sorted matrix. Row labels
// do not survive canonicalization.
WarpingMatrix canonical_form(const WarpingMatrix& m);
OuMatrix canonical_form(const OuMatrix& m);
IncidenceMatrix canonical_form(const IncidenceMatrix& m);

/// The row labeled with d's assignment index; RowMissing if deleted.
Row row_for_diagram(const WarpingMatrix& m, const KnotDiagram& d);

/// Feeds the rows of assignments [begin, end) to `fn` without materializing
/// the matrix. The span passed to `fn` is reused between calls.
void stream_warping_rows(
    const KnotProjection& p, std::uint64_t begin, std::uint64_t end,
    const std::function<void(std::uint64_t, std::span<const std::int64_t>)>&
        fn);

/// Exact rank of the full warping matrix via streaming accumulation;
/// memory stays O(c^2) regardless of the 2^c row count.
std::size_t warping_matrix_rank(const KnotProjection& p, unsigned jobs = 1,
                                int limit = default_streaming_limit);

// --- serialization ---------------------------------------------------------

enum class OutputFormat { text, csv, json };

/// Wire form shared by every matrix: a grid plus optional row labels.
struct GenericMatrix {
  std::vector<std::uint64_t> labels; // empty when unlabeled
  std::vector<Row> rows;

  bool operator==(const GenericMatrix&) const = default;
};

GenericMatrix to_generic(const WarpingMatrix& m);
GenericMatrix to_generic(const OuMatrix& m);
GenericMatrix to_generic(const IncidenceMatrix& m);

GenericMatrix canonical_form(const GenericMatrix& m);

std::string format_matrix(const GenericMatrix& m, OutputFormat format);

/// Parses any of the three output formats back (auto-detected).
GenericMatrix parse_matrix(std::string_view text);

std::string format_chords(const ChordDiagram& d, OutputFormat format);

} // namespace warp
