#include "warp/matrices.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace warp {

namespace {

void check_limit(const KnotProjection& p, int limit, const char* what) {
  const int c = p.crossing_count();
  if (c > limit)
    throw Error(ErrorKind::too_many_crossings,
                std::string(what) + ": projection has " + std::to_string(c) +
                    " crossings, limit is " + std::to_string(limit));
}

unsigned clamp_jobs(unsigned jobs, std::uint64_t work_items) {
  if (jobs == 0)
    jobs = 1;
  return static_cast<unsigned>(
      std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(work_items, 1)));
}

// Runs fn(begin, end) over a partition of [0, total) on `jobs` threads.
void parallel_ranges(
    std::uint64_t total, unsigned jobs,
    const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn) {
  jobs = clamp_jobs(jobs, total);
  if (jobs == 1) {
    fn(0, 0, total);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t) {
    const std::uint64_t begin = total / jobs * t;
    const std::uint64_t end = t + 1 == jobs ? total : total / jobs * (t + 1);
    workers.emplace_back([&fn, t, begin, end] { fn(t, begin, end); });
  }
  for (auto& w : workers)
    w.join();
}

std::vector<Row> canonical_rows(std::vector<Row> rows) {
  if (rows.empty())
    return rows;
  const std::size_t w = rows.front().size();
  for (const Row& r : rows)
    if (r.size() != w)
      throw Error(ErrorKind::malformed_source,
                  "ragged matrix cannot be canonicalized");
  if (w == 0) {
    return rows;
  }
  std::sort(rows.begin(), rows.end());
  std::vector<Row> best = rows;
  std::vector<Row> candidate(rows.size(), Row(w));
  for (std::size_t shift = 1; shift < w; ++shift) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < w; ++j)
        candidate[i][j] = rows[i][(j + shift) % w];
    std::sort(candidate.begin(), candidate.end());
    if (candidate < best)
      best = candidate;
  }
  return best;
}

} // namespace

WarpingMatrix warping_matrix(const KnotProjection& p, int limit,
                             unsigned jobs) {
  check_limit(p, limit, "warping matrix");
  const int c = p.crossing_count();
  const std::uint64_t total = std::uint64_t{1} << c;
  WarpingMatrix m;
  m.crossing_count = c;
  m.labels.resize(total);
  m.rows.assign(total, Row(p.pass_count()));
  parallel_ranges(total, jobs,
                  [&](unsigned, std::uint64_t begin, std::uint64_t end) {
                    for (std::uint64_t idx = begin; idx < end; ++idx) {
                      m.labels[idx] = idx;
                      warping_row(p, idx, m.rows[idx]);
                    }
                  });
  return m;
}

WarpingMatrix warping_matrix_without_signs(const KnotDiagram& d, int limit,
                                           unsigned jobs) {
  WarpingMatrix m = warping_matrix(d.shadow(), limit, jobs);
  const std::uint64_t deleted = d.assignment_index();
  m.labels.erase(m.labels.begin() + static_cast<std::ptrdiff_t>(deleted));
  m.rows.erase(m.rows.begin() + static_cast<std::ptrdiff_t>(deleted));
  return m;
}

std::vector<Row> a_matrix(int n) {
  if (n < 2 || n % 2 != 0)
    throw Error(ErrorKind::bad_dimension,
                "dimension must be even and at least 2, got " +
                    std::to_string(n));
  std::vector<Row> a(n, Row(n, 0));
  for (int i = 0; i < n; ++i)
    a[i][i] = -1;
  for (int i = 1; i < n; ++i)
    a[i][i - 1] = 1;
  a[0][n - 1] = 1;
  return a;
}

OuMatrix ou_matrix(const KnotProjection& p, int limit, unsigned jobs) {
  check_limit(p, limit, "ou matrix");
  const int c = p.crossing_count();
  const int n = p.pass_count();
  const std::uint64_t total = std::uint64_t{1} << c;
  OuMatrix u;
  u.crossing_count = c;
  u.labels.resize(total);
  u.rows.assign(total, Row(n));
  const auto passes = p.passes();
  parallel_ranges(
      total, jobs, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t idx = begin; idx < end; ++idx) {
          u.labels[idx] = idx;
          Row& row = u.rows[idx];
          for (int j = 0; j < n; ++j) {
            const int crossing = passes[j];
            bool over = (idx >> (crossing - 1)) & 1u;
            if (p.first_pass_of(crossing) != j + 1)
              over = !over;
            row[j] = over ? 1 : -1;
          }
        }
      });
  return u;
}

OuMatrix ou_matrix_via_product(const KnotProjection& p, int limit,
                               unsigned jobs) {
  const WarpingMatrix m = warping_matrix(p, limit, jobs);
  const std::vector<Row> a = a_matrix(p.pass_count());
  const int n = p.pass_count();
  OuMatrix u;
  u.crossing_count = m.crossing_count;
  u.labels = m.labels;
  u.rows.assign(m.rows.size(), Row(n));
  parallel_ranges(m.rows.size(), jobs,
                  [&](unsigned, std::uint64_t begin, std::uint64_t end) {
                    for (std::uint64_t i = begin; i < end; ++i) {
                      for (int j = 0; j < n; ++j) {
                        std::int64_t sum = 0;
                        for (int k = 0; k < n; ++k)
                          sum += m.rows[i][k] * a[k][j];
                        u.rows[i][j] = sum;
                      }
                    }
                  });
  return u;
}

ChordDiagram column_pairs(const OuMatrix& u) {
  const std::size_t n = u.rows.empty() ? 0 : u.rows.front().size();
  std::vector<int> partner(n, -1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      bool zero_sum = true;
      for (const Row& row : u.rows) {
        if (row[j] + row[k] != 0) {
          zero_sum = false;
          break;
        }
      }
      if (!zero_sum)
        continue;
      if (partner[j] != -1 || partner[k] != -1)
        throw Error(ErrorKind::pairing_not_unique,
                    "column " + std::to_string(j + 1) +
                        " has more than one zero-sum partner");
      partner[j] = static_cast<int>(k);
      partner[k] = static_cast<int>(j);
    }
  }
  ChordDiagram d;
  for (std::size_t j = 0; j < n; ++j) {
    if (partner[j] == -1)
      throw Error(ErrorKind::pairing_incomplete,
                  "column " + std::to_string(j + 1) +
                      " has no zero-sum partner");
    if (static_cast<std::size_t>(partner[j]) > j)
      d.chords.emplace_back(static_cast<int>(j) + 1, partner[j] + 1);
  }
  return d;
}

ChordDiagram gauss_diagram(const KnotProjection& p) {
  ChordDiagram d;
  for (int crossing = 1; crossing <= p.crossing_count(); ++crossing)
    d.chords.emplace_back(p.first_pass_of(crossing),
                          p.second_pass_of(crossing));
  std::sort(d.chords.begin(), d.chords.end());
  return d;
}

ChordDiagram gauss_diagram(const OuMatrix& u) { return column_pairs(u); }

ChordDiagram gauss_diagram(const IncidenceMatrix& m) {
  ChordDiagram d;
  for (const Row& row : m.rows) {
    const std::size_t n = row.size();
    int rise = -1, fall = -1; // 0-based columns of the 0->1 / 1->0 steps
    int transitions = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t prev = row[(j + n - 1) % n];
      const std::int64_t cur = row[j];
      if ((prev != 0 && prev != 1) || (cur != 0 && cur != 1))
        throw Error(ErrorKind::malformed_source,
                    "incidence entries must be 0 or 1");
      if (prev == cur)
        continue;
      ++transitions;
      if (cur == 1)
        rise = static_cast<int>(j);
      else
        fall = static_cast<int>(j);
    }
    if (transitions != 2)
      throw Error(ErrorKind::malformed_source,
                  "incidence row is not a single cyclic block of 1s");
    // the chord joins the passes just before each boundary
    const int over = static_cast<int>((rise + n - 1) % n) + 1;
    const int under = static_cast<int>((fall + n - 1) % n) + 1;
    d.chords.emplace_back(std::min(over, under), std::max(over, under));
  }
  std::sort(d.chords.begin(), d.chords.end());
  return d;
}

WarpingMatrix canonical_form(const WarpingMatrix& m) {
  return WarpingMatrix{m.crossing_count, {}, canonical_rows(m.rows)};
}

OuMatrix canonical_form(const OuMatrix& m) {
  return OuMatrix{m.crossing_count, {}, canonical_rows(m.rows)};
}

IncidenceMatrix canonical_form(const IncidenceMatrix& m) {
  return IncidenceMatrix{m.crossing_count, canonical_rows(m.rows)};
}

GenericMatrix canonical_form(const GenericMatrix& m) {
  return GenericMatrix{{}, canonical_rows(m.rows)};
}

Row row_for_diagram(const WarpingMatrix& m, const KnotDiagram& d) {
  if (m.crossing_count != d.shadow().crossing_count())
    throw Error(ErrorKind::row_missing,
                "matrix has " + std::to_string(m.crossing_count) +
                    " crossings, diagram has " +
                    std::to_string(d.shadow().crossing_count()));
  const std::uint64_t wanted = d.assignment_index();
  for (std::size_t i = 0; i < m.labels.size(); ++i)
    if (m.labels[i] == wanted)
      return m.rows[i];
  throw Error(ErrorKind::row_missing,
              "no row labeled " + std::to_string(wanted));
}

void stream_warping_rows(
    const KnotProjection& p, std::uint64_t begin, std::uint64_t end,
    const std::function<void(std::uint64_t, std::span<const std::int64_t>)>&
        fn) {
  Row buffer(p.pass_count());
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    warping_row(p, idx, buffer);
    fn(idx, buffer);
  }
}

std::size_t warping_matrix_rank(const KnotProjection& p, unsigned jobs,
                                int limit) {
  check_limit(p, limit, "warping matrix rank");
  const int c = p.crossing_count();
  const std::size_t width = static_cast<std::size_t>(p.pass_count());
  const std::uint64_t total = std::uint64_t{1} << c;
  jobs = clamp_jobs(jobs, total);

  std::vector<RankAccumulator> shards(jobs, RankAccumulator(width));
  parallel_ranges(total, jobs,
                  [&](unsigned t, std::uint64_t begin, std::uint64_t end) {
                    RankAccumulator& acc = shards[t];
                    Row buffer(width);
                    for (std::uint64_t idx = begin; idx < end; ++idx) {
                      warping_row(p, idx, buffer);
                      acc.insert(buffer);
                    }
                  });
  for (unsigned t = 1; t < jobs; ++t)
    shards[0].merge(shards[t]);
  return shards[0].rank();
}

// --- serialization ---------------------------------------------------------

GenericMatrix to_generic(const WarpingMatrix& m) {
  return GenericMatrix{m.labels, m.rows};
}

GenericMatrix to_generic(const OuMatrix& m) {
  return GenericMatrix{m.labels, m.rows};
}

GenericMatrix to_generic(const IncidenceMatrix& m) {
  return GenericMatrix{{}, m.rows};
}

namespace {

std::string format_text(const GenericMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    if (!m.labels.empty()) {
      out += std::to_string(m.labels[i]);
      out += ": ";
    }
    for (std::size_t j = 0; j < m.rows[i].size(); ++j) {
      if (j > 0)
        out.push_back(' ');
      out += std::to_string(m.rows[i][j]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string format_csv(const GenericMatrix& m) {
  std::string out;
  const std::size_t width = m.rows.empty() ? 0 : m.rows.front().size();
  if (!m.labels.empty())
    out += "label,";
  for (std::size_t j = 0; j < width; ++j) {
    if (j > 0)
      out.push_back(',');
    out += "b" + std::to_string(j + 1);
  }
  out.push_back('\n');
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    if (!m.labels.empty()) {
      out += std::to_string(m.labels[i]);
      out.push_back(',');
    }
    for (std::size_t j = 0; j < m.rows[i].size(); ++j) {
      if (j > 0)
        out.push_back(',');
      out += std::to_string(m.rows[i][j]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string format_json(const GenericMatrix& m) {
  nlohmann::ordered_json j;
  const std::size_t width = m.rows.empty() ? 0 : m.rows.front().size();
  if (width % 2 == 0 && width > 0)
    j["c"] = width / 2;
  if (!m.labels.empty())
    j["labels"] = m.labels;
  j["rows"] = m.rows;
  return j.dump();
}

std::int64_t parse_int(std::string_view token) {
  std::int64_t value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw Error(ErrorKind::malformed_source,
                "not an integer: '" + std::string(token) + "'");
  return value;
}

std::uint64_t parse_label_value(std::string_view token) {
  std::uint64_t value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw Error(ErrorKind::malformed_source,
                "not a row label: '" + std::string(token) + "'");
  return value;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> cells;
  std::string current;
  for (char ch : line) {
    if (ch == sep) {
      cells.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  cells.push_back(current);
  return cells;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

GenericMatrix parse_json_matrix(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::malformed_source,
                std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
    throw Error(ErrorKind::malformed_source,
                "matrix JSON needs a \"rows\" array");
  GenericMatrix m;
  for (const auto& row : j["rows"]) {
    if (!row.is_array())
      throw Error(ErrorKind::malformed_source, "rows must be arrays");
    Row r;
    for (const auto& v : row) {
      if (!v.is_number_integer())
        throw Error(ErrorKind::malformed_source, "entries must be integers");
      r.push_back(v.get<std::int64_t>());
    }
    m.rows.push_back(std::move(r));
  }
  if (j.contains("labels")) {
    if (!j["labels"].is_array())
      throw Error(ErrorKind::malformed_source, "labels must be an array");
    for (const auto& v : j["labels"]) {
      if (!v.is_number_integer() ||
          (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
        throw Error(ErrorKind::malformed_source,
                    "labels must be non-negative integers");
      m.labels.push_back(v.get<std::uint64_t>());
    }
    if (m.labels.size() != m.rows.size())
      throw Error(ErrorKind::malformed_source,
                  "label count does not match row count");
  }
  return m;
}

GenericMatrix parse_csv_matrix(std::string_view text) {
  GenericMatrix m;
  std::istringstream in{std::string(text)};
  std::string line;
  bool first = true;
  bool labeled = false;
  while (std::getline(in, line)) {
    std::string_view trimmed = trim(line);
    if (trimmed.empty())
      continue;
    auto cells = split(trimmed, ',');
    if (first) {
      first = false;
      const std::string_view head = trim(cells.front());
      const bool header = !head.empty() &&
                          !std::isdigit(static_cast<unsigned char>(head[0])) &&
                          head[0] != '-';
      if (header) {
        labeled = head == "label";
        continue;
      }
    }
    Row r;
    std::size_t start = 0;
    if (labeled) {
      m.labels.push_back(parse_label_value(trim(cells.front())));
      start = 1;
    }
    for (std::size_t i = start; i < cells.size(); ++i)
      r.push_back(parse_int(trim(cells[i])));
    m.rows.push_back(std::move(r));
  }
  return m;
}

GenericMatrix parse_text_matrix(std::string_view text) {
  GenericMatrix m;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string_view trimmed = trim(line);
    if (trimmed.empty())
      continue;
    std::istringstream cells{std::string(trimmed)};
    std::string token;
    Row r;
    bool first_token = true;
    while (cells >> token) {
      if (first_token && token.back() == ':') {
        m.labels.push_back(parse_label_value(
            std::string_view(token).substr(0, token.size() - 1)));
        first_token = false;
        continue;
      }
      first_token = false;
      r.push_back(parse_int(token));
    }
    m.rows.push_back(std::move(r));
  }
  if (!m.labels.empty() && m.labels.size() != m.rows.size())
    throw Error(ErrorKind::malformed_source,
                "label count does not match row count");
  return m;
}

} // namespace

std::string format_matrix(const GenericMatrix& m, OutputFormat format) {
  switch (format) {
  case OutputFormat::text:
    return format_text(m);
  case OutputFormat::csv:
    return format_csv(m);
  case OutputFormat::json:
    return format_json(m);
  }
  return {};
}

GenericMatrix parse_matrix(std::string_view text) {
  const std::string_view body = trim(text);
  if (body.empty())
    throw Error(ErrorKind::empty_input, "empty matrix input");
  if (body.front() == '{')
    return parse_json_matrix(body);
  if (body.find(',') != std::string_view::npos)
    return parse_csv_matrix(body);
  // a single-column CSV has no commas; recognize its header line
  const std::string_view first_line = body.substr(0, body.find('\n'));
  const std::string_view head = trim(first_line);
  if (head == "label" || head == "b1")
    return parse_csv_matrix(body);
  return parse_text_matrix(body);
}

std::string format_chords(const ChordDiagram& d, OutputFormat format) {
  switch (format) {
  case OutputFormat::text: {
    std::string out;
    for (std::size_t i = 0; i < d.chords.size(); ++i) {
      if (i > 0)
        out.push_back(' ');
      out += "{" + std::to_string(d.chords[i].first) + "," +
             std::to_string(d.chords[i].second) + "}";
    }
    out.push_back('\n');
    return out;
  }
  case OutputFormat::csv: {
    std::string out;
    for (const auto& [a, b] : d.chords)
      out += std::to_string(a) + "," + std::to_string(b) + "\n";
    return out;
  }
  case OutputFormat::json: {
    nlohmann::ordered_json j;
    auto& pairs = j["pairs"];
    pairs = nlohmann::json::array();
    for (const auto& [a, b] : d.chords)
      pairs.push_back({a, b});
    return j.dump();
  }
  }
  return {};
}

} // namespace warp
