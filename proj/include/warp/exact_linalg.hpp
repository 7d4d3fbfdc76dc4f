#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

#include "warp/error.hpp"
#include "warp/row.hpp"

namespace warp {

/// Incremental exact rank over the rationals.
///
/// Keeps a reduced integer row basis in echelon form, so the memory footprint
/// is bounded by width^2 entries no matter how many rows are inserted. Rows
/// are combined fraction-free (cross-multiplication followed by a content-gcd
/// division), which keeps every intermediate value an exact integer; there is
/// no pivot tolerance anywhere.
///
/// Arithmetic runs on int64 entries with 128-bit intermediates and promotes
/// itself to arbitrary-precision integers the moment a reduced row would not
/// fit, so results are exact for any input. Accumulators over disjoint row
/// shards can be merged; the merged rank equals the rank of serial insertion.
class RankAccumulator {
public:
  enum class Arithmetic { automatic, big };

  explicit RankAccumulator(std::size_t width,
                           Arithmetic mode = Arithmetic::automatic);

  void insert(std::span<const std::int64_t> row); // WidthMismatch
  void merge(const RankAccumulator& other);       // WidthMismatch

  std::size_t rank() const noexcept { return small_.size() + big_.size(); }
  std::size_t width() const noexcept { return width_; }

  /// Reports `big` once the accumulator has promoted itself (or was forced).
  Arithmetic arithmetic() const noexcept {
    return big_mode_ ? Arithmetic::big : Arithmetic::automatic;
  }

private:
  struct SmallRow {
    std::size_t pivot;
    std::vector<std::int64_t> v;
  };
  struct BigRow {
    std::size_t pivot;
    std::vector<mpz_class> v;
  };

  void insert_small(std::span<const std::int64_t> row);
  void insert_big(std::vector<mpz_class> w, std::size_t start_index);
  void promote();

  std::size_t width_;
  bool big_mode_ = false;
  std::vector<SmallRow> small_; // sorted by pivot, used before promotion
  std::vector<BigRow> big_;     // sorted by pivot, used after promotion
};

/// Exact rank of a materialized list of rows of the declared width.
std::size_t rank_exact(const std::vector<Row>& rows, std::size_t width);

/// True iff the rows are linearly independent over the rationals.
bool rows_independent(const std::vector<Row>& rows);

/// Exact determinant by fraction-free (Bareiss) elimination.
mpz_class det_exact(const std::vector<std::vector<mpz_class>>& m); // NotSquare
mpz_class det_exact(const std::vector<Row>& m);

enum class LemmaVariant { plus, minus };

/// The (c+1)x(c+1) test matrix with prescribed column: first column a,
/// rows 1..c carry -1 on the shifted diagonal and +1 elsewhere, the last row
/// is all -1. The minus variant negates the last column. Its determinant has
/// the closed form -/+ 2^(c-1) * (sum a_1..a_c + (c-2) a_{c+1}).
struct LemmaMatrix {
  std::vector<std::int64_t> a; // length c+1
  int c = 0;
  LemmaVariant variant = LemmaVariant::plus;
  std::vector<Row> entries; // (c+1) x (c+1)
};

LemmaMatrix lemma_matrix(std::span<const std::int64_t> a,
                         LemmaVariant variant); // TooShort when c < 2

mpz_class lemma_det_closed_form(std::span<const std::int64_t> a,
                                LemmaVariant variant);

} // namespace warp
