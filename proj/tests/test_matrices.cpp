#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "support/oracles.hpp"
#include "warp/matrices.hpp"
#include "warp/verify.hpp"

using namespace warp;

namespace {

std::multiset<Row> row_set(const std::vector<Row>& rows) {
  return {rows.begin(), rows.end()};
}

KnotProjection random_projection(int c, std::mt19937_64& rng) {
  std::vector<int> word;
  for (int label = 1; label <= c; ++label) {
    word.push_back(label);
    word.push_back(label);
  }
  for (std::size_t j = word.size() - 1; j > 0; --j)
    std::swap(word[j], word[rng() % (j + 1)]);
  return KnotProjection::from_word(word);
}

} // namespace

TEST_CASE("warping_matrix of the double twist") {
  const WarpingMatrix m = warping_matrix(parse_projection("1 2 2 1"));
  CHECK(m.crossing_count == 2);
  CHECK(m.labels == std::vector<std::uint64_t>{0, 1, 2, 3});
  CHECK(row_set(m.rows) == std::multiset<Row>{{0, 1, 2, 1},
                                              {1, 2, 1, 2},
                                              {1, 0, 1, 0},
                                              {2, 1, 0, 1}});
  CHECK(m.rows[0] == Row{2, 1, 0, 1}); // all first passes under
  CHECK(m.rows[3] == Row{0, 1, 2, 1}); // all first passes over
}

TEST_CASE("warping_matrix of the curl and the trefoil shadow") {
  const WarpingMatrix curl = warping_matrix(parse_projection("1 1"));
  CHECK(row_set(curl.rows) == std::multiset<Row>{{0, 1}, {1, 0}});

  const WarpingMatrix trefoil = warping_matrix(parse_projection("1 2 3 1 2 3"));
  CHECK(trefoil.rows.size() == 8);
  const std::multiset<Row> printed = {
      {0, 1, 2, 3, 2, 1}, {1, 0, 1, 2, 3, 2}, {1, 2, 3, 2, 1, 0},
      {2, 1, 0, 1, 2, 3}, {2, 1, 2, 1, 2, 1}, {2, 3, 2, 1, 0, 1},
      {3, 2, 1, 0, 1, 2}};
  auto expected = printed;
  expected.insert({1, 2, 1, 2, 1, 2});
  CHECK(row_set(trefoil.rows) == expected);
}

TEST_CASE("warping_matrix respects the materialization limit") {
  try {
    warping_matrix(parse_projection("1 2 3 1 2 3"), 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::too_many_crossings);
    CHECK(std::string(e.what()).find("3 crossings") != std::string::npos);
    CHECK(std::string(e.what()).find("limit is 2") != std::string::npos);
  }
}

TEST_CASE("parallel row generation matches serial") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const KnotProjection p = random_projection(2 + rng() % 6, rng);
    CHECK(warping_matrix(p, 20, 4) == warping_matrix(p));
    CHECK(ou_matrix(p, 20, 3) == ou_matrix(p));
  }
}

TEST_CASE("complementary assignments give complementary rows") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int c = 1 + static_cast<int>(rng() % 7);
    const KnotProjection p = random_projection(c, rng);
    const WarpingMatrix m = warping_matrix(p);
    const std::uint64_t total = std::uint64_t{1} << c;
    for (std::uint64_t idx = 0; idx < total; ++idx)
      for (int j = 0; j < p.pass_count(); ++j)
        CHECK(m.rows[idx][j] + m.rows[total - 1 - idx][j] == c);
  }
}

TEST_CASE("warping_matrix_without_signs deletes exactly the diagram's row") {
  const KnotDiagram alternating = parse_diagram("O1 U2 O3 U1 O2 U3");
  const WarpingMatrix without = warping_matrix_without_signs(alternating);
  CHECK(without.rows.size() == 7);
  CHECK(std::find(without.labels.begin(), without.labels.end(), 5) ==
        without.labels.end());
  CHECK(row_set(without.rows) ==
        std::multiset<Row>{{0, 1, 2, 3, 2, 1},
                           {1, 0, 1, 2, 3, 2},
                           {1, 2, 3, 2, 1, 0},
                           {2, 1, 0, 1, 2, 3},
                           {2, 1, 2, 1, 2, 1},
                           {2, 3, 2, 1, 0, 1},
                           {3, 2, 1, 0, 1, 2}});

  const WarpingMatrix twist =
      warping_matrix_without_signs(parse_diagram("O1 O2 U2 U1"));
  auto full = row_set(warping_matrix(parse_projection("1 2 2 1")).rows);
  full.erase(full.find({0, 1, 2, 1}));
  CHECK(row_set(twist.rows) == full);

  CHECK(warping_matrix_without_signs(parse_diagram("O1 U1")).rows ==
        std::vector<Row>{{1, 0}});
}

TEST_CASE("a_matrix layout") {
  CHECK(a_matrix(4) == std::vector<Row>{{-1, 0, 0, 1},
                                        {1, -1, 0, 0},
                                        {0, 1, -1, 0},
                                        {0, 0, 1, -1}});
  CHECK(a_matrix(2) == std::vector<Row>{{-1, 1}, {1, -1}});

  for (int n : {2, 4, 6, 10}) {
    const auto a = a_matrix(n);
    for (int j = 0; j < n; ++j) {
      std::int64_t sum = 0;
      for (int i = 0; i < n; ++i)
        sum += a[i][j];
      CHECK(sum == 0);
    }
  }

  CHECK_THROWS_AS(a_matrix(3), Error);
  CHECK_THROWS_AS(a_matrix(0), Error);
  CHECK_THROWS_AS(a_matrix(-2), Error);
}

TEST_CASE("ou_matrix direct construction on frozen examples") {
  const OuMatrix u = ou_matrix(parse_projection("1 2 2 1"));
  CHECK(row_set(u.rows) == std::multiset<Row>{{1, 1, -1, -1},
                                              {1, -1, 1, -1},
                                              {-1, 1, -1, 1},
                                              {-1, -1, 1, 1}});
  CHECK(row_set(ou_matrix(parse_projection("1 1")).rows) ==
        std::multiset<Row>{{1, -1}, {-1, 1}});
}

TEST_CASE("ou_matrix product route equals direct route") {
  std::mt19937_64 rng(11);
  for (const auto& entry : corpus())
    CHECK(ou_matrix(parse_projection(entry.code)).rows ==
          ou_matrix_via_product(parse_projection(entry.code)).rows);
  for (int trial = 0; trial < 30; ++trial) {
    const KnotProjection p = random_projection(1 + rng() % 8, rng);
    CHECK(ou_matrix(p).rows == ou_matrix_via_product(p).rows);
  }
}

TEST_CASE("ou rows are degree differences and mirror to their complement") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int c = 1 + static_cast<int>(rng() % 6);
    const KnotProjection p = random_projection(c, rng);
    const WarpingMatrix m = warping_matrix(p);
    const OuMatrix u = ou_matrix(p);
    const int n = p.pass_count();
    const std::uint64_t total = std::uint64_t{1} << c;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      for (int j = 0; j < n; ++j) {
        CHECK(u.rows[idx][j] ==
              m.rows[idx][(j + 1) % n] - m.rows[idx][j]);
        CHECK(u.rows[idx][j] == -u.rows[total - 1 - idx][j]);
        CHECK((u.rows[idx][j] == 1 || u.rows[idx][j] == -1));
      }
    }
  }
}

TEST_CASE("column_pairs recovers the crossings") {
  CHECK(column_pairs(ou_matrix(parse_projection("1 2 2 1"))).chords ==
        std::vector<std::pair<int, int>>{{1, 4}, {2, 3}});
  CHECK(column_pairs(ou_matrix(parse_projection("1 2 3 1 2 3"))).chords ==
        std::vector<std::pair<int, int>>{{1, 4}, {2, 5}, {3, 6}});
  CHECK(column_pairs(ou_matrix(parse_projection("1 1"))).chords ==
        std::vector<std::pair<int, int>>{{1, 2}});
}

TEST_CASE("column_pairs rejects matrices that do not pair") {
  OuMatrix bad;
  bad.crossing_count = 1;
  bad.rows = {{1, 1}, {1, -1}};
  try {
    column_pairs(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::pairing_incomplete);
  }

  OuMatrix ambiguous;
  ambiguous.crossing_count = 2;
  ambiguous.rows = {{1, -1, 1, -1}};
  try {
    column_pairs(ambiguous);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::pairing_not_unique);
  }
}

TEST_CASE("gauss_diagram agrees across all three sources") {
  const KnotProjection p = parse_projection("1 2 2 1");
  const ChordDiagram expected{{{1, 4}, {2, 3}}};
  CHECK(gauss_diagram(p) == expected);
  CHECK(gauss_diagram(ou_matrix(p)) == expected);
  CHECK(gauss_diagram(incidence_matrix(parse_diagram("O1 O2 U2 U1"))) ==
        expected);

  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const int c = 1 + static_cast<int>(rng() % 6);
    const KnotProjection q = random_projection(c, rng);
    const ChordDiagram from_projection = gauss_diagram(q);
    CHECK(gauss_diagram(ou_matrix(q)) == from_projection);
    const std::uint64_t total = std::uint64_t{1} << c;
    for (std::uint64_t idx = 0; idx < total; ++idx)
      CHECK(gauss_diagram(incidence_matrix(diagram_from_assignment(q, idx))) ==
            from_projection);
  }
}

TEST_CASE("gauss_diagram rejects malformed incidence rows") {
  IncidenceMatrix m;
  m.crossing_count = 1;
  m.rows = {{1, 1}};
  CHECK_THROWS_AS(gauss_diagram(m), Error);
  m.rows = {{0, 2}};
  CHECK_THROWS_AS(gauss_diagram(m), Error);
}

TEST_CASE("canonical_form is idempotent and shuffle-invariant") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const int c = 1 + static_cast<int>(rng() % 5);
    const KnotProjection p = random_projection(c, rng);
    const WarpingMatrix m = warping_matrix(p);
    const WarpingMatrix canon = canonical_form(m);
    CHECK(canonical_form(canon) == canon);

    WarpingMatrix shuffled = m;
    for (std::size_t j = shuffled.rows.size() - 1; j > 0; --j) {
      const std::size_t k = rng() % (j + 1);
      std::swap(shuffled.rows[j], shuffled.rows[k]);
      std::swap(shuffled.labels[j], shuffled.labels[k]);
    }
    const int n = p.pass_count();
    const int shift = static_cast<int>(rng() % n);
    for (Row& row : shuffled.rows) {
      Row rotated(n);
      for (int j = 0; j < n; ++j)
        rotated[j] = row[(j + shift) % n];
      row = rotated;
    }
    CHECK(canonical_form(shuffled) == canon);
  }
}

TEST_CASE("canonical_form identifies the reference matrix with the built one") {
  const GenericMatrix printed{{},
                              {{0, 1, 2, 1},
                               {1, 2, 1, 2},
                               {1, 0, 1, 0},
                               {2, 1, 0, 1}}};
  const WarpingMatrix built = warping_matrix(parse_projection("1 2 2 1"));
  CHECK(canonical_form(printed).rows == canonical_form(built).rows);
}

TEST_CASE("row_for_diagram looks rows up by assignment label") {
  const WarpingMatrix m = warping_matrix(parse_projection("1 2 2 1"));
  CHECK(row_for_diagram(m, parse_diagram("O1 O2 U2 U1")) == Row{0, 1, 2, 1});

  const WarpingMatrix trefoil = warping_matrix(parse_projection("1 2 3 1 2 3"));
  CHECK(row_for_diagram(trefoil, parse_diagram("O1 U2 O3 U1 O2 U3")) ==
        Row{1, 2, 1, 2, 1, 2});

  const KnotDiagram d = parse_diagram("O1 O2 U2 U1");
  const WarpingMatrix without = warping_matrix_without_signs(d);
  try {
    row_for_diagram(without, d);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::row_missing);
  }
}

TEST_CASE("serialization round trips through every format") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    GenericMatrix m;
    const std::size_t rows = 1 + rng() % 6;
    const std::size_t cols = 1 + rng() % 8;
    const bool labeled = rng() % 2 == 0;
    for (std::size_t i = 0; i < rows; ++i) {
      Row r(cols);
      for (auto& v : r)
        v = static_cast<std::int64_t>(rng() % 41) - 20;
      m.rows.push_back(std::move(r));
      if (labeled)
        m.labels.push_back(rng() % 1000);
    }
    for (OutputFormat format :
         {OutputFormat::text, OutputFormat::csv, OutputFormat::json})
      CHECK(parse_matrix(format_matrix(m, format)) == m);
  }
}

TEST_CASE("json output uses the documented shape") {
  const WarpingMatrix curl = warping_matrix(parse_projection("1 1"));
  CHECK(format_matrix(to_generic(curl), OutputFormat::json) ==
        R"({"c":1,"labels":[0,1],"rows":[[1,0],[0,1]]})");
}

TEST_CASE("parse_matrix rejects garbage") {
  CHECK_THROWS_AS(parse_matrix("{not json"), Error);
  CHECK_THROWS_AS(parse_matrix(R"({"rows": 3})"), Error);
  CHECK_THROWS_AS(parse_matrix(R"({"rows": [[1.5]]})"), Error);
  CHECK_THROWS_AS(parse_matrix(""), Error);
  CHECK_THROWS_AS(parse_matrix("1 a 2"), Error);
}

TEST_CASE("streaming rank agrees with materialized rank") {
  std::mt19937_64 rng(31);
  for (const auto& entry : corpus()) {
    const KnotProjection p = parse_projection(entry.code);
    const WarpingMatrix m = warping_matrix(p);
    CHECK(warping_matrix_rank(p) == rank_exact(m.rows, p.pass_count()));
    CHECK(warping_matrix_rank(p) ==
          testsupport::materialized_rank(m.rows));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const KnotProjection p = random_projection(1 + rng() % 8, rng);
    const std::size_t serial = warping_matrix_rank(p, 1);
    CHECK(serial == warping_matrix_rank(p, 4));
    CHECK(serial ==
          testsupport::materialized_rank(warping_matrix(p).rows));
  }
}

TEST_CASE("chord formatting") {
  const ChordDiagram d{{{1, 4}, {2, 3}}};
  CHECK(format_chords(d, OutputFormat::text) == "{1,4} {2,3}\n");
  CHECK(format_chords(d, OutputFormat::csv) == "1,4\n2,3\n");
  CHECK(format_chords(d, OutputFormat::json) ==
        R"({"pairs":[[1,4],[2,3]]})");
}
