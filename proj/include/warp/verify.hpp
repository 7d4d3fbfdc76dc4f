#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "warp/matrices.hpp"

namespace warp {

/// One executed check of a numbered claim on one instance.
/// Realizability of Gauss words on the sphere is never tested, so every
/// report carries "unchecked" there.
struct VerificationReport {
  std::string claim;    // stable identifier, e.g. "thm1", "prop4.2"
  std::string instance; // Gauss code / diagram / trial description
  std::string expected;
  std::string actual;
  bool pass = false;
  double runtime_ms = 0.0;
  std::string realizability = "unchecked";
};

// Structural properties of the full warping matrix: cyclically adjacent row
// entries differ by exactly 1, and each column holds the value n exactly
// C(c, n) times. Claims "m.rowdiff" and "m.colcount".
std::vector<VerificationReport> verify_matrix_properties(
    const KnotProjection& p);

/// rank M(P) = c + 1. Claim "thm1".
VerificationReport verify_theorem1(const KnotProjection& p);

/// rank of the matrix with d's own row deleted is still c + 1. Claim "thm2".
/// Meaningful for c >= 2 only: with a single crossing the deleted-row matrix
/// has one row and cannot reach rank 2, so verify_all skips it there.
VerificationReport verify_theorem2(const KnotDiagram& d);

// Product route equals the direct ou construction, the column pairing is a
// perfect matching, and the chord diagram recovered from the ou matrix (and
// from an incidence matrix) agrees with the projection's own matching.
// Claims "ou.product", "ou.pairs", "gauss.agree".
std::vector<VerificationReport> verify_ou_consistency(const KnotProjection& p);

// The five incidence-matrix claims: row sums give the warping degree
// sequence ("prop4.1"), each row has its unique step column ("prop4.2"),
// a crossing change complements exactly its row ("cor4.3"), the rows have
// full rank c ("cor4.6"), and stay independent with the all-ones row
// ("lem4.5").
std::vector<VerificationReport> verify_incidence_claims(const KnotDiagram& d);

/// The c+1 sequences of d and its single-crossing-change diagrams are
/// linearly independent. Claim "thm5".
VerificationReport verify_theorem5(const KnotDiagram& d);

/// Random trials of the closed-form determinant identity, both variants.
/// Claim "lem3.1".
VerificationReport verify_lemma31(int trials, std::uint64_t seed, int c_min,
                                  int c_max);

struct CorpusEntry {
  std::string name;
  std::string code;
};

/// The built-in named projections.
std::span<const CorpusEntry> corpus();

/// All double-occurrence words with c crossings up to relabeling, one per
/// perfect matching of the 2c pass positions; (2c-1)!! of them.
std::vector<KnotProjection> enumerate_words(int c);

/// Uniform random double-occurrence words (shuffles of {1,1,...,c,c}).
std::vector<KnotProjection> random_words(int n, int c, std::uint64_t seed);

struct Scope {
  enum class Kind { corpus, exhaustive, random };
  Kind kind = Kind::corpus;
  int c_max = 4;               // exhaustive
  int n = 100;                 // random
  int crossings = 6;           // random
  std::uint64_t seed = 42;     // random sampling and lemma trials
  int lemma_trials = 1000;
};

/// Runs every claim verifier over the scope; reports are sorted by
/// (claim, instance) and deterministic for a fixed seed regardless of jobs.
std::vector<VerificationReport> verify_all(const Scope& scope,
                                           unsigned jobs = 1);

std::string format_reports_table(std::span<const VerificationReport> reports);
std::string format_reports_jsonl(std::span<const VerificationReport> reports);

} // namespace warp
