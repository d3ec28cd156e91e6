#pragma once

// Command-line driver. run_command takes the arguments after the program
// name and returns the process exit code:
//   0 success, 1 invalid input (schema or SR violation), 2 infeasible request,
//   3 numerical failure.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maxahp/classical.hpp"
#include "maxahp/document.hpp"
#include "maxahp/error.hpp"
#include "maxahp/multi.hpp"
#include "maxahp/pareto.hpp"
#include "maxahp/report.hpp"
#include "maxahp/tropical.hpp"
#include "maxahp/version.hpp"

namespace maxahp::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kInfeasible = 2, kNumerical = 3 };

inline int exit_code_for(ErrorCode code) {
  switch (classify(code)) {
    case ErrorClass::InvalidInput:
    case ErrorClass::SRViolation: return kInvalidInput;
    case ErrorClass::Infeasible: return kInfeasible;
    case ErrorClass::Numerical: return kNumerical;
  }
  return kNumerical;
}

namespace detail {

struct TolFlags {
  std::optional<double> algebraic, global, tie;

  void add_to(CLI::App* app) {
    app->add_option("--tol-algebraic", algebraic, "tolerance for algebraic (in)equalities")->check(CLI::NonNegativeNumber);
    app->add_option("--tol-global", global, "tolerance for the global-optimum test")->check(CLI::NonNegativeNumber);
    app->add_option("--tol-tie", tie, "relative tolerance for ranking ties")->check(CLI::NonNegativeNumber);
  }
  bool any() const { return algebraic || global || tie; }
  Tolerances apply(Tolerances t) const {
    if (algebraic) t.algebraic = *algebraic;
    if (global) t.global = *global;
    if (tie) t.tie = *tie;
    return t;
  }
};

class Printer {
 public:
  explicit Printer(std::ostream& out) : out_(out) {}

  std::string num(double v) const {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
  }
  std::string vec(std::span<const double> v) const {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
    return s + ")";
  }
  std::string vec(const PositiveVector& v) const { return vec(v.span()); }
  std::string edges(const std::vector<Edge>& es) const {
    if (es.empty()) return "none";
    std::string s;
    for (std::size_t k = 0; k < es.size(); ++k)
      s += (k ? " " : "") + std::to_string(es[k].first + 1) + "->" + std::to_string(es[k].second + 1);
    return s;
  }
  void line(const std::string& key, const std::string& value) const { out_ << key << ": " << value << '\n'; }

 private:
  std::ostream& out_;
};

inline Problem load(const std::string& path, const TolFlags& t) {
  const ProblemDocument doc = load_problem_document(path);
  return problem_from_document(doc, t.apply(doc.tolerances.value_or(Tolerances{})));
}

inline void print_tolerances(const Printer& pr, const Tolerances& t) {
  std::ostringstream os;
  os << std::setprecision(3) << "algebraic=" << t.algebraic << " global=" << t.global << " tie=" << t.tie;
  pr.line("tolerances", os.str());
}

inline int cmd_analyze(const std::string& path, const TolFlags& tf, std::ostream& out) {
  const MatrixDocument d = load_matrix_document(path);
  const Tolerances tol = tf.apply({});
  const MaxMatrix a = d.to_matrix();
  const SpectralProfile prof = spectral_profile(a, tol.algebraic);
  const bool irreducible = is_irreducible(a);
  Printer pr(out);
  pr.line("matrix", d.label());
  pr.line("n", std::to_string(a.size()));
  pr.line("mu", pr.num(prof.mu));
  pr.line("irreducible", irreducible ? "yes" : "no");
  pr.line("unique_direction", prof.unique_direction ? "yes" : "no");
  std::string nodes;
  for (std::size_t i : prof.critical.nodes) nodes += (nodes.empty() ? "" : " ") + std::to_string(i + 1);
  pr.line("critical_nodes", nodes);
  pr.line("critical_edges", pr.edges(prof.critical.edges));
  pr.line("anticritical_edges", pr.edges(prof.critical.anticritical));
  if (irreducible) pr.line("max_eigenvector", pr.vec(max_eigenvector(a, tol.algebraic)));
  pr.line("principal_subeigenvector", pr.vec(principal_subeigenvector(a, tol.algebraic)));
  for (std::size_t k = 0; k < prof.basis.size(); ++k)
    pr.line("basis[" + std::to_string(prof.basis_indices[k] + 1) + "]", pr.vec(prof.basis[k]));
  print_tolerances(pr, tol);
  return kOk;
}

inline int cmd_multi(const std::string& path, const TolFlags& tf, bool require_global, std::ostream& out,
                     std::ostream& err) {
  const Problem p = load(path, tf);
  const MultiResult r = minmax_solution(p);
  Printer pr(out);
  pr.line("muHat", pr.num(r.mu_hat));
  pr.line("muHat_normalized", pr.num(r.mu_hat_normalized));
  pr.line("global_optimum", r.global_opt ? pr.vec(*r.global_opt) : "none");
  pr.line("minmax", pr.vec(r.minmax));
  pr.line("minmax_unique", r.unique_minmax ? "yes" : "no");
  pr.line("ranking", rank_alternatives(r.minmax, p.tol.tie).to_string());
  for (std::size_t k = 0; k < p.m(); ++k) pr.line("error[" + p.criteria_names[k] + "]", pr.num(r.errors[k]));
  print_tolerances(pr, p.tol);
  if (require_global && !r.global_opt) {
    err << "error: no global optimum (muHat of the normalised matrices is " << pr.num(r.mu_hat_normalized) << ")\n";
    return kInfeasible;
  }
  return kOk;
}

inline int cmd_pareto(const std::string& path, const TolFlags& tf, const std::vector<double>& alpha,
                      std::optional<std::size_t> starts, std::optional<std::uint64_t> seed, std::ostream& out) {
  const Problem p = load(path, tf);
  ParetoOptions opts;
  if (starts) opts.extra_starts = *starts;
  if (seed) opts.seed = *seed;
  const std::vector<double> used = alpha.empty() ? default_alpha(p) : alpha;
  const auto results = pareto_point(p, used, opts);
  Printer pr(out);
  pr.line("alpha", pr.vec(used));
  pr.line("muHat", pr.num(gen_spectral_radius(p.plain_matrices())));
  pr.line("points", std::to_string(results.size()));
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& r = results[k];
    const std::string tag = "point[" + std::to_string(k + 1) + "]";
    pr.line(tag, pr.vec(r.point));
    pr.line(tag + ".ranking", r.ranking.to_string());
    pr.line(tag + ".errors", pr.vec(r.objective_values));
    pr.line(tag + ".weighted_objective", pr.num(r.weighted_objective));
    pr.line(tag + ".certificate", "samples=" + std::to_string(r.certificate.samples) +
                                      " weakly_dominated=" + std::to_string(r.certificate.weakly_dominated) +
                                      " strictly_dominated=" + std::to_string(r.certificate.strictly_dominated) +
                                      " polish_steps=" + std::to_string(r.certificate.polish_steps));
  }
  print_tolerances(pr, p.tol);
  return kOk;
}

inline int cmd_classical(const std::string& path, const TolFlags& tf, std::ostream& out) {
  const Problem p = load(path, tf);
  const ClassicalResult r = classical_ahp(p);
  Printer pr(out);
  pr.line("criteria_weights", pr.vec(r.criteria_weights));
  for (std::size_t k = 0; k < p.m(); ++k) {
    pr.line("v[" + p.criteria_names[k] + "]", pr.vec(r.per_criterion[k]));
    pr.line("ranking[" + p.criteria_names[k] + "]", r.per_criterion_rankings[k].to_string());
  }
  pr.line("weights", pr.vec(r.weights));
  pr.line("ranking", r.ranking.to_string());
  print_tolerances(pr, p.tol);
  return kOk;
}

inline int cmd_report(const std::string& path, const TolFlags& tf, const std::string& dir, std::uint64_t seed,
                      std::ostream& out) {
  const Problem p = load(path, tf);
  ReportOptions opts;
  opts.seed = seed;
  const ReportTables t = build_report(p, opts);
  for (const auto& f : write_report(t, dir)) out << "wrote " << f << '\n';
  if (t.pareto_corner) {
    Printer pr(out);
    pr.line("pareto_corner", pr.vec(std::vector<double>{t.pareto_corner->e_a, t.pareto_corner->e_b}));
  }
  return kOk;
}

}  // namespace detail

/// Optional hook for `serve`; the tool binary installs the HTTP server here
/// so that the header does not depend on httplib.
using ServeFn = std::function<int(const std::string& host, int port, std::size_t max_n, std::size_t max_m)>;

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                       const ServeFn& serve = {}) {
  CLI::App app{"Max-algebra AHP engine", "maxahp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  detail::TolFlags tf;
  std::string input, problem, out_dir, format = "csv", host = "127.0.0.1";
  bool require_global = false;
  std::vector<double> alpha;
  std::optional<std::size_t> starts;
  std::optional<std::uint64_t> seed;
  std::uint64_t report_seed = 7;
  int port = 8080;
  std::size_t max_n = 64, max_m = 32;

  auto* analyze = app.add_subcommand("analyze", "spectral profile of one matrix");
  analyze->add_option("-i,--input", input, "matrix document (JSON)")->required();
  tf.add_to(analyze);

  auto* multi = app.add_subcommand("multi", "global and min-max optimal weights");
  multi->add_option("-p,--problem", problem, "problem document (JSON)")->required();
  multi->add_flag("--require-global", require_global, "fail with exit code 2 if no global optimum exists");
  tf.add_to(multi);

  auto* pareto = app.add_subcommand("pareto", "Pareto optimal weights");
  pareto->add_option("-p,--problem", problem, "problem document (JSON)")->required();
  pareto->add_option("--alpha", alpha, "criterion weights (space or comma separated)")->delimiter(',');
  pareto->add_option("--starts", starts, "extra random starts");
  pareto->add_option("--seed", seed, "random seed");
  tf.add_to(pareto);

  auto* classical = app.add_subcommand("classical", "classical Perron pipeline");
  classical->add_option("-p,--problem", problem, "problem document (JSON)")->required();
  tf.add_to(classical);

  auto* report = app.add_subcommand("report", "write CSV report tables");
  report->add_option("-p,--problem", problem, "problem document (JSON)")->required();
  report->add_option("-o,--output", out_dir, "output directory")->required();
  report->add_option("--format", format, "output format")->check(CLI::IsMember({"csv"}));
  report->add_option("--seed", report_seed, "seed for the scatter samples");
  tf.add_to(report);

  auto* serve_cmd = app.add_subcommand("serve", "start the HTTP service");
  serve_cmd->add_option("--port", port, "listening port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host, "listening address");
  serve_cmd->add_option("--max-n", max_n, "largest accepted matrix dimension");
  serve_cmd->add_option("--max-m", max_m, "largest accepted number of criteria");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (analyze->parsed()) return detail::cmd_analyze(input, tf, out);
    if (multi->parsed()) return detail::cmd_multi(problem, tf, require_global, out, err);
    if (pareto->parsed()) return detail::cmd_pareto(problem, tf, alpha, starts, seed, out);
    if (classical->parsed()) return detail::cmd_classical(problem, tf, out);
    if (report->parsed()) return detail::cmd_report(problem, tf, out_dir, report_seed, out);
    if (!serve) {
      err << "error: serve is not available in this build\n";
      return kInvalidInput;
    }
    out << "listening on " << host << ':' << port << '\n' << std::flush;
    return serve(host, port, max_n, max_m);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error [io]: " << e.what() << '\n';
    return kInvalidInput;
  }
}

}  // namespace maxahp::cli
