#include "warp/exact_linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace warp {

namespace {

using Wide = __int128;
using UWide = unsigned __int128;

// Largest magnitude a scratch entry may reach before the next combine could
// leave the 128-bit range: |lead|*|w| + |coef|*|b| <= 2^63 * 2^62 * 2 < 2^127.
constexpr Wide kSafeScratchLimit = Wide{1} << 62;

UWide uabs(Wide v) { return v < 0 ? UWide(-(v + 1)) + 1 : UWide(v); }

UWide gcd_wide(UWide a, UWide b) {
  while (b != 0) {
    UWide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Divides the row by its content; returns the resulting max |entry|
// (0 for the zero row).
UWide reduce_content(std::vector<Wide>& w) {
  UWide g = 0;
  for (Wide v : w) {
    if (v == 0)
      continue;
    g = gcd_wide(g, uabs(v));
    if (g == 1)
      break;
  }
  if (g == 0)
    return 0;
  UWide max_abs = 0;
  for (Wide& v : w) {
    if (g > 1)
      v /= Wide(g);
    max_abs = std::max(max_abs, uabs(v));
  }
  return max_abs;
}

void reduce_content_big(std::vector<mpz_class>& w) {
  mpz_class g = 0;
  for (const mpz_class& v : w) {
    if (v == 0)
      continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1)
      return;
  }
  if (g == 0 || g == 1)
    return;
  for (mpz_class& v : w)
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

mpz_class mpz_from_wide(Wide v) {
  const bool negative = v < 0;
  UWide mag = uabs(v);
  mpz_class out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(mag), 0, 0, &mag);
  return negative ? mpz_class(-out) : out;
}

} // namespace

RankAccumulator::RankAccumulator(std::size_t width, Arithmetic mode)
    : width_(width), big_mode_(mode == Arithmetic::big) {}

void RankAccumulator::insert(std::span<const std::int64_t> row) {
  if (row.size() != width_)
    throw Error(ErrorKind::width_mismatch,
                "row has width " + std::to_string(row.size()) + ", expected " +
                    std::to_string(width_));
  if (big_mode_) {
    std::vector<mpz_class> w(row.begin(), row.end());
    insert_big(std::move(w), 0);
    return;
  }
  insert_small(row);
}

void RankAccumulator::insert_small(std::span<const std::int64_t> row) {
  std::vector<Wide> w(row.begin(), row.end());
  UWide max_abs = 0;
  for (Wide v : w)
    max_abs = std::max(max_abs, uabs(v));

  for (std::size_t bi = 0; bi < small_.size(); ++bi) {
    const SmallRow& b = small_[bi];
    const Wide coef = w[b.pivot];
    if (coef == 0)
      continue;
    if (max_abs > UWide(kSafeScratchLimit)) {
      // next combine could overflow 128 bits: continue exactly in bignum
      promote();
      std::vector<mpz_class> wide(w.size());
      for (std::size_t j = 0; j < w.size(); ++j)
        wide[j] = mpz_from_wide(w[j]);
      insert_big(std::move(wide), bi);
      return;
    }
    const Wide lead = b.v[b.pivot];
    for (std::size_t j = 0; j < w.size(); ++j)
      w[j] = lead * w[j] - coef * Wide(b.v[j]);
    max_abs = reduce_content(w);
  }

  std::size_t pivot = w.size();
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] != 0) {
      pivot = j;
      break;
    }
  }
  if (pivot == w.size())
    return; // dependent row

  if (w[pivot] < 0)
    for (Wide& v : w)
      v = -v;

  if (max_abs > UWide(std::numeric_limits<std::int64_t>::max())) {
    promote();
    std::vector<mpz_class> wide(w.size());
    for (std::size_t j = 0; j < w.size(); ++j)
      wide[j] = mpz_from_wide(w[j]);
    BigRow entry{pivot, std::move(wide)};
    big_.insert(std::lower_bound(big_.begin(), big_.end(), pivot,
                                 [](const BigRow& r, std::size_t p) {
                                   return r.pivot < p;
                                 }),
                std::move(entry));
    return;
  }

  SmallRow entry{pivot, std::vector<std::int64_t>(w.size())};
  for (std::size_t j = 0; j < w.size(); ++j)
    entry.v[j] = static_cast<std::int64_t>(w[j]);
  small_.insert(std::lower_bound(small_.begin(), small_.end(), pivot,
                                 [](const SmallRow& r, std::size_t p) {
                                   return r.pivot < p;
                                 }),
                std::move(entry));
}

void RankAccumulator::insert_big(std::vector<mpz_class> w,
                                 std::size_t start_index) {
  mpz_class combined;
  for (std::size_t bi = start_index; bi < big_.size(); ++bi) {
    const BigRow& b = big_[bi];
    if (w[b.pivot] == 0)
      continue;
    const mpz_class coef = w[b.pivot];
    const mpz_class& lead = b.v[b.pivot];
    for (std::size_t j = 0; j < w.size(); ++j) {
      combined = lead * w[j] - coef * b.v[j];
      w[j] = combined;
    }
    reduce_content_big(w);
  }

  std::size_t pivot = w.size();
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] != 0) {
      pivot = j;
      break;
    }
  }
  if (pivot == w.size())
    return;

  if (w[pivot] < 0)
    for (mpz_class& v : w)
      v = -v;

  BigRow entry{pivot, std::move(w)};
  big_.insert(std::lower_bound(big_.begin(), big_.end(), pivot,
                               [](const BigRow& r, std::size_t p) {
                                 return r.pivot < p;
                               }),
              std::move(entry));
}

void RankAccumulator::promote() {
  if (big_mode_)
    return;
  big_mode_ = true;
  big_.reserve(small_.size());
  for (const SmallRow& r : small_) {
    BigRow b{r.pivot, std::vector<mpz_class>(r.v.begin(), r.v.end())};
    big_.push_back(std::move(b));
  }
  small_.clear();
}

void RankAccumulator::merge(const RankAccumulator& other) {
  if (other.width_ != width_)
    throw Error(ErrorKind::width_mismatch,
                "cannot merge accumulator of width " +
                    std::to_string(other.width_) + " into width " +
                    std::to_string(width_));
  for (const SmallRow& r : other.small_)
    insert(r.v);
  if (!other.big_.empty()) {
    promote();
    for (const BigRow& r : other.big_)
      insert_big(r.v, 0);
  }
}

std::size_t rank_exact(const std::vector<Row>& rows, std::size_t width) {
  RankAccumulator acc(width);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width)
      throw Error(ErrorKind::width_mismatch,
                  "row " + std::to_string(i) + " has width " +
                      std::to_string(rows[i].size()) + ", expected " +
                      std::to_string(width));
    acc.insert(rows[i]);
  }
  return acc.rank();
}

bool rows_independent(const std::vector<Row>& rows) {
  if (rows.empty())
    return true;
  return rank_exact(rows, rows.front().size()) == rows.size();
}

mpz_class det_exact(const std::vector<std::vector<mpz_class>>& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n)
      throw Error(ErrorKind::not_square,
                  "determinant of a non-square matrix (" +
                      std::to_string(n) + " row(s), row width " +
                      std::to_string(row.size()) + ")");
  if (n == 0)
    return 1;

  std::vector<std::vector<mpz_class>> a = m;
  int sign = 1;
  mpz_class prev = 1;
  mpz_class t;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot][k] == 0)
      ++pivot;
    if (pivot == n)
      return 0;
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : mpz_class(-a[n - 1][n - 1]);
}

mpz_class det_exact(const std::vector<Row>& m) {
  std::vector<std::vector<mpz_class>> big(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    big[i].assign(m[i].begin(), m[i].end());
  return det_exact(big);
}

LemmaMatrix lemma_matrix(std::span<const std::int64_t> a,
                         LemmaVariant variant) {
  if (a.size() < 3)
    throw Error(ErrorKind::too_short,
                "need at least 3 column entries (c >= 2), got " +
                    std::to_string(a.size()));
  const int c = static_cast<int>(a.size()) - 1;
  LemmaMatrix m;
  m.a.assign(a.begin(), a.end());
  m.c = c;
  m.variant = variant;
  m.entries.assign(c + 1, Row(c + 1, 1));
  for (int i = 0; i <= c; ++i) {
    m.entries[i][0] = a[i];
    if (i < c) {
      m.entries[i][i + 1] = -1; // shifted diagonal in rows 1..c
    } else {
      for (int j = 1; j <= c; ++j)
        m.entries[i][j] = -1; // last row
    }
  }
  if (variant == LemmaVariant::minus)
    for (int i = 0; i <= c; ++i)
      m.entries[i][c] = -m.entries[i][c];
  return m;
}

mpz_class lemma_det_closed_form(std::span<const std::int64_t> a,
                                LemmaVariant variant) {
  if (a.size() < 3)
    throw Error(ErrorKind::too_short,
                "need at least 3 column entries (c >= 2), got " +
                    std::to_string(a.size()));
  const int c = static_cast<int>(a.size()) - 1;
  mpz_class sum = 0;
  for (int i = 0; i < c; ++i)
    sum += a[i];
  sum += mpz_class(c - 2) * a[c];
  mpz_class scale = 1;
  scale <<= c - 1;
  mpz_class result = scale * sum;
  return variant == LemmaVariant::plus ? mpz_class(-result) : result;
}

} // namespace warp
