// jsr: joint spectral radius bounds, exact certificates, and certificate
// verification for finite sets of real or complex square matrices.
//
// Subcommands:
//   jsr bounds  <problem.json> [--depth k]        brute-force sandwich bounds
//   jsr compute <problem.json> [flags]            run a certifying algorithm
//   jsr verify  <cert.json> <problem.json>        re-check a certificate
//   jsr lift    <problem.json> [--out file]       dump the lifted operators
//
// Exit codes: 0 success (compute: exact certificate), 1 bounds-only result or
// invalid certificate, 2 input error, 3 work budget exhausted.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "jsr/engine.hpp"
#include "jsr/errors.hpp"
#include "jsr/io.hpp"
#include "jsr/log.hpp"

namespace {

using nlohmann::json;

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw jsr::InputError("cannot open '" + path + "' for writing");
  out << text << '\n';
  if (!out.good()) throw jsr::InputError("failed while writing '" + path + "'");
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  const auto dt = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double, std::milli>(dt).count();
}

int run_bounds(const std::string& problem_path, int depth) {
  const jsr::MatrixSet set = jsr::parse_problem(problem_path);
  const auto start = std::chrono::steady_clock::now();
  const jsr::BoundsResult bf = jsr::brute_force_bounds(set, depth);
  if (bf.budget_exceeded)
    throw jsr::BudgetError("product budget (" +
                           std::to_string(jsr::kProductBudget) +
                           " matrix products) exhausted before depth " +
                           std::to_string(depth));
  jsr::RunResult result;
  result.exact = false;
  result.lower = bf.lower;
  result.upper = bf.upper;
  result.smp = bf.best;
  result.steps = bf.depth_completed;
  result.tolerances = jsr::ToleranceSnapshot::FromOptions(jsr::EngineOptions{});
  result.note = "brute-force enumeration to depth " + std::to_string(depth);
  std::cout << jsr::emit_report(result, elapsed_ms(start)) << '\n';
  return 0;
}

int run_compute(const std::string& problem_path, const std::string& algorithm,
                int max_smp_len, int max_iters, double tol,
                const std::string& out_path, const std::string& cert_path) {
  const jsr::MatrixSet set = jsr::parse_problem(problem_path);

  jsr::EngineOptions opts;
  opts.max_smp_len = max_smp_len;
  opts.max_iters = max_iters;
  opts.tol_B = tol;
  opts.tol_member = tol;
  opts.tol_cert = std::max(10.0 * tol, 1e-7);

  const auto start = std::chrono::steady_clock::now();
  const jsr::RunResult result = algorithm == "dynamic"
                                    ? jsr::algorithm2(set, opts)
                                    : jsr::algorithm1(set, opts);
  const double runtime = elapsed_ms(start);

  if (!cert_path.empty() && result.certificate.has_value())
    write_text_file(cert_path,
                    jsr::emit_certificate(*result.certificate));

  if (!out_path.empty()) {
    json report = json::parse(jsr::emit_report(result, runtime));
    // When the certificate goes to its own file the report refers to it by
    // path instead of embedding it.
    if (!cert_path.empty() && result.certificate.has_value())
      report["certificate"] = cert_path;
    write_text_file(out_path, report.dump(2));
  }

  std::cout << jsr::summary_line(result) << '\n';
  return result.exact ? 0 : 1;
}

int run_verify(const std::string& cert_path, const std::string& problem_path) {
  const jsr::Certificate cert = jsr::parse_certificate(cert_path);
  const jsr::MatrixSet set = jsr::parse_problem(problem_path);
  const jsr::VerifyResult res = jsr::verify_certificate(cert, set);
  if (res.ok) {
    std::cout << "certificate valid\n";
    return 0;
  }
  std::cout << "certificate INVALID (" << res.violations.size()
            << " violation" << (res.violations.size() == 1 ? "" : "s")
            << "):\n";
  for (const auto& v : res.violations) std::cout << "  - " << v << '\n';
  return 1;
}

int run_lift(const std::string& problem_path, const std::string& out_path) {
  const jsr::MatrixSet set = jsr::parse_problem(problem_path);
  const std::string text = jsr::emit_lifted_operators(set);
  if (out_path.empty())
    std::cout << text << '\n';
  else
    write_text_file(out_path, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "jsr: joint spectral radius bounds and exact-value certificates"};
  app.require_subcommand(1);

  std::string problem_path;
  std::string cert_path;

  auto* bounds = app.add_subcommand(
      "bounds", "Brute-force product enumeration bounds (report on stdout)");
  int depth = 4;
  bounds->add_option("file", problem_path, "problem JSON file")->required();
  bounds->add_option("--depth", depth, "maximum product length")
      ->check(CLI::PositiveNumber);

  auto* compute = app.add_subcommand(
      "compute", "Run a certifying algorithm (exact value or bounds)");
  std::string algorithm = "conitope";
  std::string out_path;
  std::string cert_out;
  jsr::EngineOptions defaults;
  int max_smp_len = defaults.max_smp_len;
  int max_iters = defaults.max_iters;
  double tol = defaults.tol_B;
  compute->add_option("file", problem_path, "problem JSON file")->required();
  compute
      ->add_option("--algorithm", algorithm,
                   "conitope (eigenvector start, restarts) or dynamic "
                   "(identity start, rescaling)")
      ->check(CLI::IsMember({"conitope", "dynamic"}));
  compute->add_option("--max-smp-len", max_smp_len,
                      "longest candidate product searched")
      ->check(CLI::PositiveNumber);
  compute->add_option("--max-iters", max_iters, "main-loop iteration cap")
      ->check(CLI::PositiveNumber);
  compute->add_option("--tol", tol,
                      "termination/membership tolerance (default 1e-8)")
      ->check(CLI::PositiveNumber);
  compute->add_option("--out", out_path, "write the run report to this file");
  compute->add_option("--cert", cert_out,
                      "write the certificate to its own file");

  auto* verify = app.add_subcommand(
      "verify", "Re-check a certificate against a problem file");
  verify->add_option("cert", cert_path, "certificate JSON file")->required();
  verify->add_option("problem", problem_path, "problem JSON file")->required();

  auto* lift = app.add_subcommand(
      "lift", "Emit the lifted operators acting on svec coordinates");
  std::string lift_out;
  lift->add_option("file", problem_path, "problem JSON file")->required();
  lift->add_option("--out", lift_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // Help/version requests exit 0; anything else is malformed input.
    return code == 0 ? 0 : 2;
  }

  try {
    if (bounds->parsed()) return run_bounds(problem_path, depth);
    if (compute->parsed())
      return run_compute(problem_path, algorithm, max_smp_len, max_iters, tol,
                         out_path, cert_out);
    if (verify->parsed()) return run_verify(cert_path, problem_path);
    if (lift->parsed()) return run_lift(problem_path, lift_out);
  } catch (const jsr::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const jsr::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
