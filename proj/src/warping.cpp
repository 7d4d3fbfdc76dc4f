#include "warp/warping.hpp"

#include <bit>
#include <cassert>

namespace warp {

bool is_warping_crossing(const KnotDiagram& d, int base_edge, int crossing) {
  const KnotProjection& p = d.shadow();
  const int n = p.pass_count();
  if (base_edge < 1 || base_edge > n)
    throw Error(ErrorKind::index_out_of_range,
                "base edge " + std::to_string(base_edge) +
                    " out of range 1.." + std::to_string(n));
  const int first = p.first_pass_of(crossing); // range-checks crossing
  const int second = p.second_pass_of(crossing);
  const int dist_first = (first - base_edge + n) % n;
  const int dist_second = (second - base_edge + n) % n;
  const int first_met = dist_first < dist_second ? first : second;
  return d.pass_kind(first_met) == PassKind::under;
}

int warping_degree(const KnotDiagram& d, int base_edge) {
  const int c = d.shadow().crossing_count();
  const int n = d.shadow().pass_count();
  if (base_edge < 1 || base_edge > n)
    throw Error(ErrorKind::index_out_of_range,
                "base edge " + std::to_string(base_edge) +
                    " out of range 1.." + std::to_string(n));
  int degree = 0;
  for (int crossing = 1; crossing <= c; ++crossing)
    degree += is_warping_crossing(d, base_edge, crossing) ? 1 : 0;
  return degree;
}

void warping_row(const KnotProjection& p, std::uint64_t assignment,
                 std::span<std::int64_t> out) {
  const int c = p.crossing_count();
  const auto passes = p.passes();
  assert(out.size() == passes.size());
  std::int64_t degree = c - std::popcount(assignment);
  for (std::size_t j = 0; j < passes.size(); ++j) {
    out[j] = degree;
    const int crossing = passes[j];
    bool over = (assignment >> (crossing - 1)) & 1u;
    if (p.first_pass_of(crossing) != static_cast<int>(j) + 1)
      over = !over;
    degree += over ? 1 : -1;
  }
}

WarpingDegreeSequence warping_degree_sequence(const KnotDiagram& d) {
  WarpingDegreeSequence seq(d.shadow().pass_count());
  warping_row(d.shadow(), d.assignment_index(), seq);
  return seq;
}

IncidenceMatrix incidence_matrix(const KnotDiagram& d) {
  const int c = d.shadow().crossing_count();
  const int n = d.shadow().pass_count();
  IncidenceMatrix m;
  m.crossing_count = c;
  m.rows.assign(c, Row(n));
  for (int i = 1; i <= c; ++i)
    for (int j = 1; j <= n; ++j)
      m.rows[i - 1][j - 1] = is_warping_crossing(d, j, i) ? 1 : 0;
  return m;
}

KnotDiagram crossing_change(const KnotDiagram& d, int crossing) {
  d.shadow().first_pass_of(crossing); // range check
  const std::uint64_t toggled =
      d.assignment_index() ^ (std::uint64_t{1} << (crossing - 1));
  return KnotDiagram(d.shadow(), toggled);
}

} // namespace warp
