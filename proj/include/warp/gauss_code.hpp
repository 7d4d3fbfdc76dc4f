#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "warp/error.hpp"

namespace warp {

enum class PassKind : std::uint8_t { over, under };

constexpr PassKind operator!(PassKind k) noexcept {
  return k == PassKind::over ? PassKind::under : PassKind::over;
}

/// An oriented knot projection stored as a normalized double-occurrence word.
///
/// The word lists the crossing visited at each pass along the traversal;
/// every crossing appears exactly twice and labels are renumbered 1..c in
/// order of first appearance. Passes are 1-based and cyclic. Base point b_j
/// sits on the edge entering pass j, so a traversal started at b_j reads
/// passes j, j+1, ..., j-1.
class KnotProjection {
public:
  // Validates and normalizes an arbitrarily labeled double-occurrence word.
  static KnotProjection from_word(const std::vector<int>& labels);

  int crossing_count() const noexcept { return crossing_count_; }
  int pass_count() const noexcept { return 2 * crossing_count_; }

  /// Crossing labels by pass; passes()[j] is the crossing met at pass j+1.
  std::span<const int> passes() const noexcept { return passes_; }

  int crossing_at(int pass) const;       // pass in 1..2c
  bool is_first_visit(int pass) const;   // pass is the crossing's first visit
  int first_pass_of(int crossing) const; // 1..2c
  int second_pass_of(int crossing) const;

  bool operator==(const KnotProjection& other) const noexcept {
    return passes_ == other.passes_;
  }

private:
  KnotProjection() = default;

  std::vector<int> passes_;      // 0-based storage of the normalized word
  std::vector<int> first_pass_;  // per crossing, 1-based pass positions
  std::vector<int> second_pass_;
  int crossing_count_ = 0;
};

/// A knot diagram: a projection plus over/under information at each crossing.
///
/// The assignment index encodes the kind of the first pass of every crossing:
/// bit i set means crossing i+1 is passed over first. The second pass is
/// forced opposite, so indices 0..2^c-1 enumerate all diagrams over a shadow.
class KnotDiagram {
public:
  KnotDiagram(KnotProjection shadow, std::uint64_t assignment_index);

  const KnotProjection& shadow() const noexcept { return shadow_; }
  std::uint64_t assignment_index() const noexcept { return assignment_; }

  PassKind first_pass_kind(int crossing) const;
  PassKind pass_kind(int pass) const; // 1..2c

  bool operator==(const KnotDiagram& other) const noexcept {
    return assignment_ == other.assignment_ && shadow_ == other.shadow_;
  }

private:
  KnotProjection shadow_;
  std::uint64_t assignment_ = 0;
};

// Gauss-code text format: whitespace-separated positive integer labels,
// optionally prefixed O or U. parse_projection ignores the prefixes;
// parse_diagram requires them.
KnotProjection parse_projection(std::string_view text);
KnotDiagram parse_diagram(std::string_view text);

KnotDiagram diagram_from_assignment(const KnotProjection& p, std::uint64_t index);
KnotProjection shadow(const KnotDiagram& d);

std::string render(const KnotProjection& p);
std::string render(const KnotDiagram& d);

} // namespace warp
