// warpmat: warping degrees, warping/ou/incidence matrices and exact rank
// checks for knot projections and diagrams given as Gauss codes.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "warp/matrices.hpp"
#include "warp/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailures = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResourceLimit = 3;
constexpr int kExitDataError = 4;

int exit_code_for(const warp::Error& e) {
  switch (e.kind()) {
  case warp::ErrorKind::empty_input:
  case warp::ErrorKind::bad_token:
  case warp::ErrorKind::label_not_twice:
  case warp::ErrorKind::missing_kind:
  case warp::ErrorKind::inconsistent_kind:
  case warp::ErrorKind::index_out_of_range:
  case warp::ErrorKind::malformed_source:
    return kExitInputError;
  case warp::ErrorKind::too_many_crossings:
    return kExitResourceLimit;
  case warp::ErrorKind::bad_dimension:
  case warp::ErrorKind::not_square:
  case warp::ErrorKind::width_mismatch:
  case warp::ErrorKind::row_missing:
  case warp::ErrorKind::pairing_not_unique:
  case warp::ErrorKind::pairing_incomplete:
  case warp::ErrorKind::too_short:
    return kExitDataError;
  }
  return kExitDataError;
}

warp::OutputFormat parse_format(const std::string& name) {
  if (name == "text")
    return warp::OutputFormat::text;
  if (name == "csv")
    return warp::OutputFormat::csv;
  return warp::OutputFormat::json;
}

std::string read_stdin() {
  std::ostringstream buffer;
  buffer << std::cin.rdbuf();
  return buffer.str();
}

// A diagram argument is either an annotated code ("O1 U2 ...") or a plain
// code together with --assignment.
warp::KnotDiagram diagram_from_args(const std::string& code,
                                    const CLI::Option* assignment_opt,
                                    std::uint64_t assignment) {
  if (assignment_opt->count() > 0)
    return warp::diagram_from_assignment(warp::parse_projection(code),
                                         assignment);
  return warp::parse_diagram(code);
}

unsigned default_jobs() { return 1; }

struct MatrixPrintOptions {
  std::string format = "text";
};

void print_matrix(const warp::GenericMatrix& m, const std::string& format) {
  std::cout << warp::format_matrix(m, parse_format(format));
  if (format == "json")
    std::cout << '\n';
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"warping matrix toolkit for knot diagrams"};
  app.require_subcommand(1);

  std::string code;
  std::string format = "text";
  std::uint64_t assignment = 0;
  unsigned jobs = default_jobs();
  int max_crossings = -1; // -1: per-command default
  bool streaming = false;

  auto add_format = [&format](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->default_val("text");
  };
  auto add_jobs = [&jobs](CLI::App* cmd) {
    cmd->add_option("--jobs", jobs, "parallelism degree")
        ->envname("WARPMATRIX_JOBS");
  };
  auto add_limit = [&max_crossings](CLI::App* cmd) {
    cmd->add_option("--max-crossings", max_crossings,
                    "largest crossing number to accept");
  };

  CLI::App* wm = app.add_subcommand("wm", "warping matrix of a projection");
  wm->add_option("code", code, "Gauss code")->required();
  add_format(wm);
  add_jobs(wm);
  add_limit(wm);

  CLI::App* wmbar =
      app.add_subcommand("wmbar", "warping matrix with the diagram's row deleted");
  wmbar->add_option("code", code, "annotated Gauss code or code with --assignment")
      ->required();
  CLI::Option* wmbar_assignment =
      wmbar->add_option("--assignment", assignment, "assignment index");
  add_format(wmbar);
  add_jobs(wmbar);
  add_limit(wmbar);

  CLI::App* ou = app.add_subcommand("ou", "ou matrix of a projection");
  ou->add_option("code", code, "Gauss code")->required();
  add_format(ou);
  add_jobs(ou);
  add_limit(ou);

  CLI::App* incidence =
      app.add_subcommand("incidence", "warping incidence matrix of a diagram");
  incidence->add_option("code", code, "annotated Gauss code")->required();
  CLI::Option* incidence_assignment =
      incidence->add_option("--assignment", assignment, "assignment index");
  add_format(incidence);

  CLI::App* pairs =
      app.add_subcommand("pairs", "zero-sum column pairs of the ou matrix");
  pairs->add_option("code", code, "Gauss code")->required();
  add_format(pairs);
  add_limit(pairs);

  CLI::App* gauss =
      app.add_subcommand("gauss", "chord diagram of a projection or diagram");
  gauss->add_option("code", code, "Gauss code, annotated or plain")->required();
  CLI::Option* gauss_assignment =
      gauss->add_option("--assignment", assignment, "assignment index");
  add_format(gauss);

  CLI::App* canon =
      app.add_subcommand("canon", "canonical form of a matrix read from stdin");
  add_format(canon);

  CLI::App* rank =
      app.add_subcommand("rank", "exact rank of a warping matrix or stdin matrix");
  rank->add_option("code", code, "Gauss code (otherwise reads a matrix from stdin)");
  rank->add_flag("--streaming", streaming,
                 "never materialize the matrix, stream rows into the rank basis");
  add_jobs(rank);
  add_limit(rank);

  CLI::App* verify = app.add_subcommand("verify", "run the claim verifiers");
  std::string scope_name = "corpus";
  int exhaustive_max = 4;
  int random_n = 100;
  int random_c = 6;
  std::uint64_t seed = 42;
  int lemma_trials = 1000;
  std::string verify_format = "text";
  verify->add_option("--scope", scope_name, "corpus, exhaustive or random")
      ->check(CLI::IsMember({"corpus", "exhaustive", "random"}));
  verify->add_option("--max-crossings", exhaustive_max,
                     "largest crossing number for --scope exhaustive");
  verify->add_option("--n", random_n, "word count for --scope random");
  verify->add_option("--crossings", random_c,
                     "crossing number for --scope random");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--trials", lemma_trials,
                     "determinant identity trials");
  verify->add_option("--format", verify_format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  add_jobs(verify);

  CLI::App* corpus_cmd = app.add_subcommand("corpus", "built-in projections");
  bool list = false;
  corpus_cmd->add_flag("--list", list, "list the named corpus entries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code_from_cli = app.exit(e);
    return code_from_cli == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (wm->parsed()) {
      const int limit =
          max_crossings < 0 ? warp::default_materialize_limit : max_crossings;
      const auto m =
          warp::warping_matrix(warp::parse_projection(code), limit, jobs);
      print_matrix(warp::to_generic(m), format);
    } else if (wmbar->parsed()) {
      const int limit =
          max_crossings < 0 ? warp::default_materialize_limit : max_crossings;
      const auto d = diagram_from_args(code, wmbar_assignment, assignment);
      print_matrix(
          warp::to_generic(warp::warping_matrix_without_signs(d, limit, jobs)),
          format);
    } else if (ou->parsed()) {
      const int limit =
          max_crossings < 0 ? warp::default_materialize_limit : max_crossings;
      const auto u =
          warp::ou_matrix(warp::parse_projection(code), limit, jobs);
      print_matrix(warp::to_generic(u), format);
    } else if (incidence->parsed()) {
      const auto d = diagram_from_args(code, incidence_assignment, assignment);
      print_matrix(warp::to_generic(warp::incidence_matrix(d)), format);
    } else if (pairs->parsed()) {
      const int limit =
          max_crossings < 0 ? warp::default_materialize_limit : max_crossings;
      const auto u = warp::ou_matrix(warp::parse_projection(code), limit, 1);
      std::cout << warp::format_chords(warp::column_pairs(u),
                                       parse_format(format));
      if (format == "json")
        std::cout << '\n';
    } else if (gauss->parsed()) {
      warp::ChordDiagram chords;
      if (gauss_assignment->count() > 0 ||
          code.find_first_of("OUou") != std::string::npos) {
        const auto d = diagram_from_args(code, gauss_assignment, assignment);
        chords = warp::gauss_diagram(warp::incidence_matrix(d));
      } else {
        chords = warp::gauss_diagram(warp::parse_projection(code));
      }
      std::cout << warp::format_chords(chords, parse_format(format));
      if (format == "json")
        std::cout << '\n';
    } else if (canon->parsed()) {
      const auto m = warp::parse_matrix(read_stdin());
      print_matrix(warp::canonical_form(m), format);
    } else if (rank->parsed()) {
      const int limit = max_crossings >= 0 ? max_crossings
                        : streaming       ? warp::default_streaming_limit
                                          : warp::default_materialize_limit;
      std::size_t result = 0;
      if (!code.empty()) {
        const auto p = warp::parse_projection(code);
        if (streaming) {
          result = warp::warping_matrix_rank(p, jobs, limit);
        } else {
          const auto m = warp::warping_matrix(p, limit, jobs);
          result = warp::rank_exact(m.rows, p.pass_count());
        }
      } else {
        const auto m = warp::parse_matrix(read_stdin());
        if (m.rows.empty())
          throw warp::Error(warp::ErrorKind::empty_input, "no rows to rank");
        result = warp::rank_exact(m.rows, m.rows.front().size());
      }
      std::cout << result << '\n';
    } else if (verify->parsed()) {
      warp::Scope scope;
      if (scope_name == "corpus")
        scope.kind = warp::Scope::Kind::corpus;
      else if (scope_name == "exhaustive")
        scope.kind = warp::Scope::Kind::exhaustive;
      else
        scope.kind = warp::Scope::Kind::random;
      if (scope.kind == warp::Scope::Kind::exhaustive &&
          (exhaustive_max < 1 ||
           exhaustive_max > warp::default_materialize_limit))
        throw warp::Error(warp::ErrorKind::index_out_of_range,
                          "--max-crossings must be in 1.." +
                              std::to_string(warp::default_materialize_limit));
      if (scope.kind == warp::Scope::Kind::random &&
          (random_c < 1 || random_c > warp::default_materialize_limit))
        throw warp::Error(warp::ErrorKind::index_out_of_range,
                          "--crossings must be in 1.." +
                              std::to_string(warp::default_materialize_limit));
      if (scope.kind == warp::Scope::Kind::random && random_n < 0)
        throw warp::Error(warp::ErrorKind::index_out_of_range,
                          "--n must be non-negative");
      scope.c_max = exhaustive_max;
      scope.n = random_n;
      scope.crossings = random_c;
      scope.seed = seed;
      scope.lemma_trials = lemma_trials;
      const auto reports = warp::verify_all(scope, jobs);
      if (verify_format == "json")
        std::cout << warp::format_reports_jsonl(reports);
      else
        std::cout << warp::format_reports_table(reports);
      std::size_t failures = 0;
      for (const auto& r : reports)
        failures += r.pass ? 0 : 1;
      if (failures > 0) {
        std::cerr << failures << " verification failure(s)\n";
        return kExitVerifyFailures;
      }
    } else if (corpus_cmd->parsed()) {
      for (const auto& entry : warp::corpus())
        std::cout << entry.name << ": " << entry.code << '\n';
      (void)list;
    }
  } catch (const warp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitOk;
}
