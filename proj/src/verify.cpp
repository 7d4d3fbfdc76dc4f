#include "warp/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <random>
#include <thread>

#include "json.hpp"

namespace warp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

VerificationReport make_report(std::string claim, std::string instance,
                               std::string expected, std::string actual,
                               Clock::time_point start) {
  VerificationReport r;
  r.claim = std::move(claim);
  r.instance = std::move(instance);
  r.expected = std::move(expected);
  r.actual = std::move(actual);
  r.pass = r.expected == r.actual;
  r.runtime_ms = ms_since(start);
  return r;
}

// C(c, n) fits comfortably in uint64 for every materializable c.
std::uint64_t binomial(int c, int n) {
  if (n < 0 || n > c)
    return 0;
  std::uint64_t result = 1;
  for (int i = 1; i <= n; ++i)
    result = result * static_cast<std::uint64_t>(c - n + i) /
             static_cast<std::uint64_t>(i);
  return result;
}

std::int64_t bounded_draw(std::mt19937_64& rng, std::int64_t n) {
  return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
}

} // namespace

std::vector<VerificationReport> verify_matrix_properties(
    const KnotProjection& p) {
  std::vector<VerificationReport> reports;
  const std::string code = render(p);
  const int c = p.crossing_count();
  const int n = p.pass_count();

  auto start = Clock::now();
  const WarpingMatrix m = warping_matrix(p);

  std::string diff_actual = "ok";
  for (std::size_t i = 0; i < m.rows.size() && diff_actual == "ok"; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::int64_t delta = m.rows[i][(j + 1) % n] - m.rows[i][j];
      if (delta != 1 && delta != -1) {
        diff_actual = "row " + std::to_string(m.labels[i]) + " columns " +
                      std::to_string(j + 1) + "," +
                      std::to_string((j + 1) % n + 1) + " differ by " +
                      std::to_string(delta);
        break;
      }
    }
  }
  reports.push_back(make_report("m.rowdiff", code, "ok", diff_actual, start));

  start = Clock::now();
  std::string count_actual = "ok";
  std::vector<std::uint64_t> counts(c + 1);
  for (int j = 0; j < n && count_actual == "ok"; ++j) {
    std::fill(counts.begin(), counts.end(), 0);
    for (const Row& row : m.rows) {
      const std::int64_t v = row[j];
      if (v < 0 || v > c) {
        count_actual = "column " + std::to_string(j + 1) +
                       " holds out-of-range value " + std::to_string(v);
        break;
      }
      ++counts[v];
    }
    for (int value = 0; value <= c && count_actual == "ok"; ++value) {
      if (counts[value] != binomial(c, value))
        count_actual = "column " + std::to_string(j + 1) + " holds " +
                       std::to_string(value) + " " +
                       std::to_string(counts[value]) + " times, want " +
                       std::to_string(binomial(c, value));
    }
  }
  reports.push_back(make_report("m.colcount", code, "ok", count_actual, start));
  return reports;
}

VerificationReport verify_theorem1(const KnotProjection& p) {
  const auto start = Clock::now();
  const std::size_t rank = warping_matrix_rank(p);
  return make_report("thm1", render(p),
                     "rank " + std::to_string(p.crossing_count() + 1),
                     "rank " + std::to_string(rank), start);
}

VerificationReport verify_theorem2(const KnotDiagram& d) {
  const auto start = Clock::now();
  const KnotProjection& p = d.shadow();
  const std::uint64_t total = std::uint64_t{1} << p.crossing_count();
  RankAccumulator acc(p.pass_count());
  Row buffer(p.pass_count());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (idx == d.assignment_index())
      continue;
    warping_row(p, idx, buffer);
    acc.insert(buffer);
  }
  return make_report("thm2", render(d),
                     "rank " + std::to_string(p.crossing_count() + 1),
                     "rank " + std::to_string(acc.rank()), start);
}

std::vector<VerificationReport> verify_ou_consistency(const KnotProjection& p) {
  std::vector<VerificationReport> reports;
  const std::string code = render(p);
  const int c = p.crossing_count();

  auto start = Clock::now();
  const OuMatrix direct = ou_matrix(p);
  const OuMatrix product = ou_matrix_via_product(p);
  reports.push_back(make_report(
      "ou.product", code, "product route equals direct route",
      direct.rows == product.rows ? "product route equals direct route"
                                  : "routes disagree",
      start));

  start = Clock::now();
  std::string pairs_actual;
  ChordDiagram from_ou;
  try {
    from_ou = column_pairs(direct);
    pairs_actual = std::to_string(from_ou.chords.size()) + " zero-sum pairs";
  } catch (const Error& e) {
    pairs_actual = e.what();
  }
  reports.push_back(make_report("ou.pairs", code,
                                std::to_string(c) + " zero-sum pairs",
                                pairs_actual, start));

  start = Clock::now();
  const ChordDiagram from_projection = gauss_diagram(p);
  const ChordDiagram from_incidence =
      gauss_diagram(incidence_matrix(diagram_from_assignment(p, 0)));
  const bool agree =
      from_projection == from_ou && from_projection == from_incidence;
  reports.push_back(make_report("gauss.agree", code, "all routes agree",
                                agree ? "all routes agree" : "routes disagree",
                                start));
  return reports;
}

std::vector<VerificationReport> verify_incidence_claims(const KnotDiagram& d) {
  std::vector<VerificationReport> reports;
  const std::string code = render(d);
  const KnotProjection& p = d.shadow();
  const int c = p.crossing_count();
  const int n = p.pass_count();
  const IncidenceMatrix m = incidence_matrix(d);

  auto start = Clock::now();
  Row sums(n, 0);
  for (const Row& row : m.rows)
    for (int j = 0; j < n; ++j)
      sums[j] += row[j];
  const bool sums_match = sums == warping_degree_sequence(d);
  reports.push_back(make_report("prop4.1", code,
                                "row sums equal the degree sequence",
                                sums_match
                                    ? "row sums equal the degree sequence"
                                    : "row sums differ",
                                start));

  start = Clock::now();
  std::string step_actual = "ok";
  for (int k = 0; k < c && step_actual == "ok"; ++k) {
    int found = 0;
    for (int l = 0; l < n; ++l) {
      const int prev = (l + n - 1) % n;
      if (m.rows[k][prev] != 0 || m.rows[k][l] != 1)
        continue;
      bool others_flat = true;
      for (int i = 0; i < c; ++i) {
        if (i == k)
          continue;
        if (m.rows[i][prev] != m.rows[i][l]) {
          others_flat = false;
          break;
        }
      }
      if (others_flat)
        ++found;
    }
    if (found != 1)
      step_actual = "crossing " + std::to_string(k + 1) + " has " +
                    std::to_string(found) + " step columns";
  }
  reports.push_back(
      make_report("prop4.2", code, "ok", step_actual, start));

  start = Clock::now();
  std::string flip_actual = "ok";
  for (int i = 1; i <= c && flip_actual == "ok"; ++i) {
    const IncidenceMatrix changed = incidence_matrix(crossing_change(d, i));
    for (int k = 0; k < c && flip_actual == "ok"; ++k) {
      for (int j = 0; j < n; ++j) {
        const std::int64_t expect =
            k + 1 == i ? 1 - m.rows[k][j] : m.rows[k][j];
        if (changed.rows[k][j] != expect) {
          flip_actual = "crossing change at " + std::to_string(i) +
                        " does not flip exactly row " + std::to_string(i);
          break;
        }
      }
    }
  }
  reports.push_back(make_report("cor4.3", code, "ok", flip_actual, start));

  start = Clock::now();
  const std::size_t rank = rank_exact(m.rows, n);
  reports.push_back(make_report("cor4.6", code, "rank " + std::to_string(c),
                                "rank " + std::to_string(rank), start));

  start = Clock::now();
  std::vector<Row> with_ones = m.rows;
  with_ones.emplace_back(n, 1);
  const std::size_t rank_ones = rank_exact(with_ones, n);
  reports.push_back(make_report("lem4.5", code,
                                "rank " + std::to_string(c + 1),
                                "rank " + std::to_string(rank_ones), start));
  return reports;
}

VerificationReport verify_theorem5(const KnotDiagram& d) {
  const auto start = Clock::now();
  const int c = d.shadow().crossing_count();
  std::vector<Row> rows;
  rows.reserve(c + 1);
  rows.push_back(warping_degree_sequence(d));
  for (int i = 1; i <= c; ++i)
    rows.push_back(warping_degree_sequence(crossing_change(d, i)));
  const std::size_t rank = rank_exact(rows, d.shadow().pass_count());
  return make_report("thm5", render(d), "rank " + std::to_string(c + 1),
                     "rank " + std::to_string(rank), start);
}

VerificationReport verify_lemma31(int trials, std::uint64_t seed, int c_min,
                                  int c_max) {
  const auto start = Clock::now();
  std::mt19937_64 rng(seed);
  int matched = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const int c =
        c_min + static_cast<int>(bounded_draw(rng, c_max - c_min + 1));
    std::vector<std::int64_t> a(c + 1);
    for (auto& v : a)
      v = bounded_draw(rng, 101) - 50;
    bool ok = true;
    for (LemmaVariant variant : {LemmaVariant::plus, LemmaVariant::minus}) {
      const LemmaMatrix m = lemma_matrix(a, variant);
      if (det_exact(m.entries) != lemma_det_closed_form(a, variant)) {
        ok = false;
        break;
      }
    }
    if (ok)
      ++matched;
  }
  const std::string instance = "trials=" + std::to_string(trials) +
                               " seed=" + std::to_string(seed) + " c=" +
                               std::to_string(c_min) + ".." +
                               std::to_string(c_max) + " both variants";
  return make_report("lem3.1", instance,
                     std::to_string(trials) + "/" + std::to_string(trials) +
                         " determinants match the closed form",
                     std::to_string(matched) + "/" + std::to_string(trials) +
                         " determinants match the closed form",
                     start);
}

namespace {

const std::vector<CorpusEntry> kCorpus = {
    {"curl", "1 1"},
    {"double-twist", "1 2 2 1"},
    {"interlaced", "1 2 1 2"},
    {"trefoil", "1 2 3 1 2 3"},
    {"figure-eight", "1 2 3 4 2 1 4 3"},
};

void enumerate_matchings(std::vector<int>& word, int next_label,
                         std::vector<KnotProjection>& out) {
  const std::size_t n = word.size();
  std::size_t first = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (word[i] == 0) {
      first = i;
      break;
    }
  }
  if (first == n) {
    out.push_back(KnotProjection::from_word(word));
    return;
  }
  for (std::size_t second = first + 1; second < n; ++second) {
    if (word[second] != 0)
      continue;
    word[first] = word[second] = next_label;
    enumerate_matchings(word, next_label + 1, out);
    word[first] = word[second] = 0;
  }
}

} // namespace

std::span<const CorpusEntry> corpus() { return kCorpus; }

std::vector<KnotProjection> enumerate_words(int c) {
  if (c < 1)
    throw Error(ErrorKind::index_out_of_range,
                "crossing count must be positive, got " + std::to_string(c));
  std::vector<KnotProjection> out;
  std::vector<int> word(2 * c, 0);
  enumerate_matchings(word, 1, out);
  return out;
}

std::vector<KnotProjection> random_words(int n, int c, std::uint64_t seed) {
  if (c < 1)
    throw Error(ErrorKind::index_out_of_range,
                "crossing count must be positive, got " + std::to_string(c));
  std::mt19937_64 rng(seed);
  std::vector<KnotProjection> out;
  out.reserve(n);
  std::vector<int> word;
  for (int i = 0; i < n; ++i) {
    word.clear();
    for (int label = 1; label <= c; ++label) {
      word.push_back(label);
      word.push_back(label);
    }
    // Fisher-Yates with raw engine draws so results do not depend on the
    // standard library's distribution implementation
    for (std::size_t j = word.size() - 1; j > 0; --j) {
      const std::size_t k =
          static_cast<std::size_t>(bounded_draw(rng, static_cast<std::int64_t>(j) + 1));
      std::swap(word[j], word[k]);
    }
    out.push_back(KnotProjection::from_word(word));
  }
  return out;
}

namespace {

using Task = std::function<std::vector<VerificationReport>()>;

std::vector<VerificationReport> run_tasks(std::vector<Task> tasks,
                                          unsigned jobs) {
  std::vector<std::vector<VerificationReport>> slots(tasks.size());
  // a verifier that throws becomes a failed report, never an escaped exception
  const auto run_one = [&](std::size_t i) {
    try {
      slots[i] = tasks[i]();
    } catch (const std::exception& e) {
      VerificationReport r;
      r.claim = "error";
      r.instance = "task " + std::to_string(i);
      r.expected = "no exception";
      r.actual = e.what();
      r.pass = false;
      slots[i] = {std::move(r)};
    }
  };
  if (jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size())
          return;
        run_one(i);
      }
    };
    std::vector<std::thread> workers;
    const unsigned count = std::min<unsigned>(jobs, tasks.size());
    workers.reserve(count);
    for (unsigned t = 0; t < count; ++t)
      workers.emplace_back(worker);
    for (auto& w : workers)
      w.join();
  }
  std::vector<VerificationReport> reports;
  for (auto& slot : slots)
    for (auto& report : slot)
      reports.push_back(std::move(report));
  std::stable_sort(reports.begin(), reports.end(),
                   [](const VerificationReport& a, const VerificationReport& b) {
                     if (a.claim != b.claim)
                       return a.claim < b.claim;
                     return a.instance < b.instance;
                   });
  return reports;
}

void add_projection_tasks(std::vector<Task>& tasks, const KnotProjection& p) {
  tasks.push_back([p] {
    std::vector<VerificationReport> reports = verify_matrix_properties(p);
    reports.push_back(verify_theorem1(p));
    for (auto& r : verify_ou_consistency(p))
      reports.push_back(std::move(r));
    return reports;
  });
}

void add_diagram_tasks(std::vector<Task>& tasks, const KnotProjection& p,
                       std::uint64_t assignment) {
  tasks.push_back([p, assignment] {
    const KnotDiagram d = diagram_from_assignment(p, assignment);
    std::vector<VerificationReport> reports = verify_incidence_claims(d);
    // the deleted-row rank claim needs at least two crossings: with c = 1
    // the matrix is a single row and cannot reach rank c + 1
    if (p.crossing_count() >= 2)
      reports.push_back(verify_theorem2(d));
    reports.push_back(verify_theorem5(d));
    return reports;
  });
}

} // namespace

std::vector<VerificationReport> verify_all(const Scope& scope, unsigned jobs) {
  std::vector<Task> tasks;

  const auto add_full_projection = [&tasks](const KnotProjection& p) {
    add_projection_tasks(tasks, p);
    const std::uint64_t total = std::uint64_t{1} << p.crossing_count();
    for (std::uint64_t idx = 0; idx < total; ++idx)
      add_diagram_tasks(tasks, p, idx);
  };

  switch (scope.kind) {
  case Scope::Kind::corpus:
    for (const CorpusEntry& entry : corpus())
      add_full_projection(parse_projection(entry.code));
    break;
  case Scope::Kind::exhaustive:
    for (int c = 1; c <= scope.c_max; ++c)
      for (const KnotProjection& p : enumerate_words(c))
        add_full_projection(p);
    break;
  case Scope::Kind::random: {
    const auto words = random_words(scope.n, scope.crossings, scope.seed);
    // one sampled diagram per word keeps the diagram-level claims exercised
    // without walking all 2^c assignments
    std::mt19937_64 rng(scope.seed ^ 0x9e3779b97f4a7c15ull);
    for (const KnotProjection& p : words) {
      const std::uint64_t mask =
          (std::uint64_t{1} << p.crossing_count()) - 1;
      const std::uint64_t assignment = rng() & mask;
      add_projection_tasks(tasks, p);
      add_diagram_tasks(tasks, p, assignment);
    }
    break;
  }
  }

  tasks.push_back([scope] {
    return std::vector<VerificationReport>{
        verify_lemma31(scope.lemma_trials, scope.seed, 2, 10)};
  });

  return run_tasks(std::move(tasks), jobs);
}

std::string format_reports_table(std::span<const VerificationReport> reports) {
  std::size_t claim_w = 5, instance_w = 8, expected_w = 8, actual_w = 6;
  for (const auto& r : reports) {
    claim_w = std::max(claim_w, r.claim.size());
    instance_w = std::max(instance_w, r.instance.size());
    expected_w = std::max(expected_w, r.expected.size());
    actual_w = std::max(actual_w, r.actual.size());
  }
  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w - s.size(), ' ');
  };
  std::string out;
  out += pad("claim", claim_w) + "  " + pad("instance", instance_w) + "  " +
         pad("expected", expected_w) + "  " + pad("actual", actual_w) +
         "  result  ms\n";
  char ms[32];
  for (const auto& r : reports) {
    std::snprintf(ms, sizeof(ms), "%.2f", r.runtime_ms);
    out += pad(r.claim, claim_w) + "  " + pad(r.instance, instance_w) + "  " +
           pad(r.expected, expected_w) + "  " + pad(r.actual, actual_w) +
           "  " + (r.pass ? "PASS  " : "FAIL  ") + ms + "\n";
  }
  return out;
}

std::string format_reports_jsonl(std::span<const VerificationReport> reports) {
  std::string out;
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["claim"] = r.claim;
    j["instance"] = r.instance;
    j["expected"] = r.expected;
    j["actual"] = r.actual;
    j["pass"] = r.pass;
    j["runtime_ms"] = r.runtime_ms;
    j["realizability"] = r.realizability;
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

} // namespace warp
