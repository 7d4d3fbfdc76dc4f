#include "warp/gauss_code.hpp"

#include <charconv>
#include <cctype>
#include <unordered_map>

namespace warp {

namespace {

struct RawToken {
  std::string text;
  int position; // 1-based
};

std::vector<RawToken> tokenize(std::string_view text) {
  std::vector<RawToken> tokens;
  std::string current;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!current.empty()) {
        tokens.push_back({current, static_cast<int>(tokens.size()) + 1});
        current.clear();
      }
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty())
    tokens.push_back({current, static_cast<int>(tokens.size()) + 1});
  return tokens;
}

int parse_label(std::string_view digits, const RawToken& token) {
  int value = 0;
  const char* begin = digits.data();
  const char* end = begin + digits.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || value < 1)
    throw Error(ErrorKind::bad_token, "bad token '" + token.text +
                                          "' at position " +
                                          std::to_string(token.position));
  return value;
}

bool has_kind_prefix(std::string_view text) {
  return !text.empty() &&
         (text[0] == 'O' || text[0] == 'U' || text[0] == 'o' || text[0] == 'u');
}

} // namespace

KnotProjection KnotProjection::from_word(const std::vector<int>& labels) {
  if (labels.empty())
    throw Error(ErrorKind::empty_input, "empty Gauss code");

  std::unordered_map<int, int> counts;
  std::vector<int> first_appearance;
  for (int label : labels) {
    if (++counts[label] == 1)
      first_appearance.push_back(label);
  }
  for (int label : first_appearance) {
    if (counts[label] != 2)
      throw Error(ErrorKind::label_not_twice,
                  "label " + std::to_string(label) + " appears " +
                      std::to_string(counts[label]) + " time(s)");
  }

  KnotProjection p;
  p.crossing_count_ = static_cast<int>(first_appearance.size());
  std::unordered_map<int, int> renumber;
  for (std::size_t i = 0; i < first_appearance.size(); ++i)
    renumber[first_appearance[i]] = static_cast<int>(i) + 1;

  p.passes_.reserve(labels.size());
  p.first_pass_.assign(p.crossing_count_, 0);
  p.second_pass_.assign(p.crossing_count_, 0);
  for (std::size_t j = 0; j < labels.size(); ++j) {
    const int crossing = renumber[labels[j]];
    p.passes_.push_back(crossing);
    if (p.first_pass_[crossing - 1] == 0)
      p.first_pass_[crossing - 1] = static_cast<int>(j) + 1;
    else
      p.second_pass_[crossing - 1] = static_cast<int>(j) + 1;
  }
  return p;
}

int KnotProjection::crossing_at(int pass) const {
  if (pass < 1 || pass > pass_count())
    throw Error(ErrorKind::index_out_of_range,
                "pass " + std::to_string(pass) + " out of range 1.." +
                    std::to_string(pass_count()));
  return passes_[pass - 1];
}

bool KnotProjection::is_first_visit(int pass) const {
  return first_pass_of(crossing_at(pass)) == pass;
}

int KnotProjection::first_pass_of(int crossing) const {
  if (crossing < 1 || crossing > crossing_count_)
    throw Error(ErrorKind::index_out_of_range,
                "crossing " + std::to_string(crossing) + " out of range 1.." +
                    std::to_string(crossing_count_));
  return first_pass_[crossing - 1];
}

int KnotProjection::second_pass_of(int crossing) const {
  first_pass_of(crossing); // range check
  return second_pass_[crossing - 1];
}

KnotDiagram::KnotDiagram(KnotProjection shadow, std::uint64_t assignment_index)
    : shadow_(std::move(shadow)), assignment_(assignment_index) {
  const int c = shadow_.crossing_count();
  if (c < 64 && (assignment_ >> c) != 0)
    throw Error(ErrorKind::index_out_of_range,
                "assignment index " + std::to_string(assignment_) +
                    " out of range for " + std::to_string(c) + " crossing(s)");
}

PassKind KnotDiagram::first_pass_kind(int crossing) const {
  shadow_.first_pass_of(crossing); // range check
  const bool over = (assignment_ >> (crossing - 1)) & 1u;
  return over ? PassKind::over : PassKind::under;
}

PassKind KnotDiagram::pass_kind(int pass) const {
  const int crossing = shadow_.crossing_at(pass);
  const PassKind first = first_pass_kind(crossing);
  return shadow_.is_first_visit(pass) ? first : !first;
}

KnotProjection parse_projection(std::string_view text) {
  const auto tokens = tokenize(text);
  if (tokens.empty())
    throw Error(ErrorKind::empty_input, "empty Gauss code");
  std::vector<int> labels;
  labels.reserve(tokens.size());
  for (const auto& token : tokens) {
    std::string_view digits = token.text;
    if (has_kind_prefix(digits))
      digits.remove_prefix(1);
    labels.push_back(parse_label(digits, token));
  }
  return KnotProjection::from_word(labels);
}

KnotDiagram parse_diagram(std::string_view text) {
  const auto tokens = tokenize(text);
  if (tokens.empty())
    throw Error(ErrorKind::empty_input, "empty Gauss code");

  std::vector<int> labels;
  std::vector<PassKind> kinds;
  labels.reserve(tokens.size());
  kinds.reserve(tokens.size());
  for (const auto& token : tokens) {
    std::string_view body = token.text;
    if (!has_kind_prefix(body))
      throw Error(ErrorKind::missing_kind,
                  "missing O/U prefix at position " +
                      std::to_string(token.position));
    const char prefix = body[0];
    body.remove_prefix(1);
    kinds.push_back(prefix == 'O' || prefix == 'o' ? PassKind::over
                                                   : PassKind::under);
    labels.push_back(parse_label(body, token));
  }

  KnotProjection p = KnotProjection::from_word(labels);
  std::uint64_t assignment = 0;
  for (int crossing = 1; crossing <= p.crossing_count(); ++crossing) {
    const PassKind k1 = kinds[p.first_pass_of(crossing) - 1];
    const PassKind k2 = kinds[p.second_pass_of(crossing) - 1];
    if (k1 == k2) {
      const int original = labels[p.first_pass_of(crossing) - 1];
      throw Error(ErrorKind::inconsistent_kind,
                  "crossing " + std::to_string(original) +
                      " carries the same O/U mark on both passes");
    }
    if (k1 == PassKind::over)
      assignment |= std::uint64_t{1} << (crossing - 1);
  }
  return KnotDiagram(std::move(p), assignment);
}

KnotDiagram diagram_from_assignment(const KnotProjection& p,
                                    std::uint64_t index) {
  return KnotDiagram(p, index);
}

KnotProjection shadow(const KnotDiagram& d) { return d.shadow(); }

std::string render(const KnotProjection& p) {
  std::string out;
  for (int j = 1; j <= p.pass_count(); ++j) {
    if (j > 1)
      out.push_back(' ');
    out += std::to_string(p.crossing_at(j));
  }
  return out;
}

std::string render(const KnotDiagram& d) {
  const KnotProjection& p = d.shadow();
  std::string out;
  for (int j = 1; j <= p.pass_count(); ++j) {
    if (j > 1)
      out.push_back(' ');
    out.push_back(d.pass_kind(j) == PassKind::over ? 'O' : 'U');
    out += std::to_string(p.crossing_at(j));
  }
  return out;
}

} // namespace warp
