#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "support/oracles.hpp"
#include "warp/warping.hpp"

using namespace warp;

TEST_CASE("is_warping_crossing follows the first-met pass") {
  const KnotDiagram trefoil = parse_diagram("O1 U2 O3 U1 O2 U3");
  CHECK(is_warping_crossing(trefoil, 1, 2));
  CHECK_FALSE(is_warping_crossing(parse_diagram("O1 O2 U2 U1"), 1, 1));

  // the edge just before an under pass whose over pass comes later
  const KnotDiagram d = parse_diagram("O1 U2 O2 U1");
  CHECK(is_warping_crossing(d, 2, 2));

  CHECK_THROWS_AS(is_warping_crossing(trefoil, 0, 1), Error);
  CHECK_THROWS_AS(is_warping_crossing(trefoil, 7, 1), Error);
  CHECK_THROWS_AS(is_warping_crossing(trefoil, 1, 4), Error);
}

TEST_CASE("warping_degree counts warping crossings") {
  const KnotDiagram d = parse_diagram("O1 O2 U2 U1");
  CHECK(warping_degree(d, 1) == 0);
  CHECK(warping_degree(d, 3) == 2);
  CHECK(warping_degree(parse_diagram("O1 U2 O3 U1 O2 U3"), 1) == 1);
  CHECK_THROWS_AS(warping_degree(d, 5), Error);
}

TEST_CASE("warping_degree_sequence on frozen examples") {
  CHECK(warping_degree_sequence(parse_diagram("O1 O2 U2 U1")) ==
        Row{0, 1, 2, 1});
  CHECK(warping_degree_sequence(parse_diagram("O1 U2 O2 U1")) ==
        Row{1, 2, 1, 2});
  CHECK(warping_degree_sequence(parse_diagram("O1 U2 O3 U1 O2 U3")) ==
        Row{1, 2, 1, 2, 1, 2});
  CHECK(warping_degree_sequence(parse_diagram("O1 U1")) == Row{0, 1});
  CHECK(warping_degree_sequence(parse_diagram("U1 O1")) == Row{1, 0});
}

TEST_CASE("incremental sequence equals brute force on the named projections") {
  for (const char* code :
       {"1 1", "1 2 2 1", "1 2 1 2", "1 2 3 1 2 3", "1 2 3 4 2 1 4 3"}) {
    const KnotProjection p = parse_projection(code);
    const std::uint64_t total = std::uint64_t{1} << p.crossing_count();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      const KnotDiagram d = diagram_from_assignment(p, idx);
      CHECK(warping_degree_sequence(d) ==
            testsupport::warping_sequence_brute(d));
    }
  }
}

TEST_CASE("incremental sequence equals brute-force counting") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int c = 1 + static_cast<int>(rng() % 6);
    std::vector<int> word;
    for (int label = 1; label <= c; ++label) {
      word.push_back(label);
      word.push_back(label);
    }
    for (std::size_t j = word.size() - 1; j > 0; --j)
      std::swap(word[j], word[rng() % (j + 1)]);
    const KnotProjection p = KnotProjection::from_word(word);
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << c); ++idx) {
      const KnotDiagram d = diagram_from_assignment(p, idx);
      const Row incremental = warping_degree_sequence(d);
      CHECK(incremental == testsupport::warping_sequence_brute(d));

      // adjacent entries differ by exactly one, cyclically, and stay in 0..c
      const int n = p.pass_count();
      for (int j = 0; j < n; ++j) {
        CHECK(incremental[j] >= 0);
        CHECK(incremental[j] <= c);
        const std::int64_t delta = incremental[(j + 1) % n] - incremental[j];
        CHECK((delta == 1 || delta == -1));
      }
    }
  }
}

TEST_CASE("incidence_matrix on frozen examples") {
  const IncidenceMatrix trefoil =
      incidence_matrix(parse_diagram("O1 U2 O3 U1 O2 U3"));
  CHECK(trefoil.rows == std::vector<Row>{{0, 1, 1, 1, 0, 0},
                                         {1, 1, 0, 0, 0, 1},
                                         {0, 0, 0, 1, 1, 1}});

  const IncidenceMatrix twist = incidence_matrix(parse_diagram("O1 O2 U2 U1"));
  CHECK(twist.rows == std::vector<Row>{{0, 1, 1, 1}, {0, 0, 1, 0}});

  CHECK(incidence_matrix(parse_diagram("O1 U1")).rows ==
        std::vector<Row>{{0, 1}});
}

TEST_CASE("incidence rows are single cyclic blocks and sum to the sequence") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int c = 1 + static_cast<int>(rng() % 6);
    std::vector<int> word;
    for (int label = 1; label <= c; ++label) {
      word.push_back(label);
      word.push_back(label);
    }
    for (std::size_t j = word.size() - 1; j > 0; --j)
      std::swap(word[j], word[rng() % (j + 1)]);
    const KnotProjection p = KnotProjection::from_word(word);
    const std::uint64_t idx = rng() & ((std::uint64_t{1} << c) - 1);
    const KnotDiagram d = diagram_from_assignment(p, idx);
    const IncidenceMatrix m = incidence_matrix(d);
    const int n = p.pass_count();

    Row sums(n, 0);
    for (const Row& row : m.rows) {
      int transitions = 0;
      int ones = 0;
      for (int j = 0; j < n; ++j) {
        transitions += row[j] != row[(j + 1) % n] ? 1 : 0;
        ones += row[j] == 1 ? 1 : 0;
        sums[j] += row[j];
      }
      CHECK(transitions == 2); // one block of 1s, one block of 0s
      CHECK(ones >= 1);
      CHECK(ones <= n - 1);
    }
    CHECK(sums == warping_degree_sequence(d));
  }
}

TEST_CASE("crossing_change toggles one assignment bit") {
  const KnotDiagram d = parse_diagram("O1 O2 U2 U1");
  CHECK(render(crossing_change(d, 1)) == "U1 O2 U2 O1");
  CHECK(crossing_change(crossing_change(d, 2), 2) == d);
  CHECK(crossing_change(crossing_change(d, 1), 2) ==
        crossing_change(crossing_change(d, 2), 1));
  CHECK_THROWS_AS(crossing_change(d, 0), Error);
  CHECK_THROWS_AS(crossing_change(d, 3), Error);
}

TEST_CASE("crossing_change flips exactly its incidence row") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int c = 1 + static_cast<int>(rng() % 5);
    std::vector<int> word;
    for (int label = 1; label <= c; ++label) {
      word.push_back(label);
      word.push_back(label);
    }
    for (std::size_t j = word.size() - 1; j > 0; --j)
      std::swap(word[j], word[rng() % (j + 1)]);
    const KnotProjection p = KnotProjection::from_word(word);
    const KnotDiagram d = diagram_from_assignment(
        p, rng() & ((std::uint64_t{1} << c) - 1));
    const IncidenceMatrix before = incidence_matrix(d);
    const int n = p.pass_count();
    for (int i = 1; i <= c; ++i) {
      const KnotDiagram changed = crossing_change(d, i);
      const IncidenceMatrix after = incidence_matrix(changed);
      for (int k = 0; k < c; ++k)
        for (int j = 0; j < n; ++j)
          CHECK(after.rows[k][j] == (k + 1 == i ? 1 - before.rows[k][j]
                                                : before.rows[k][j]));

      // s(changed) = s(d) - row_i + (1 - row_i)
      const Row base = warping_degree_sequence(d);
      const Row flipped = warping_degree_sequence(changed);
      for (int j = 0; j < n; ++j)
        CHECK(flipped[j] ==
              base[j] - before.rows[i - 1][j] + (1 - before.rows[i - 1][j]));
    }
  }
}
