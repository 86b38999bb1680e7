// pcm: priorities with error bars from pairwise comparison matrices.
//
//   pcm analyze <file> [--method gmm|em|both|transposed] [--no-normalize] [--c C] [--format text|json]
//   pcm rank <file> [--method gmm|em|transposed] [--sigma S] [--format text|json]
//   pcm compare <file> [--sigma S] [--format text|json]
//   pcm consistency <file> [--tol T] [--format text|json]
//   pcm roundtrip <file> [--c C]
//   pcm serve [--host H] [--port N]
//
// Exit codes: 0 success, 1 input or validation error, 2 numerical failure.

#include <atomic>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pcm/http_service.hpp"
#include "pcm/pcm.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;
constexpr const char* kSnapshotEnv = "PCM_SNAPSHOT_PATH";

pcm::ReportFormat parse_format(const std::string& s) {
  return s == "json" ? pcm::ReportFormat::JSON : pcm::ReportFormat::TEXT;
}

pcm::PriorityEstimate estimate_for(const std::string& method, const pcm::ComparisonMatrix& a, double c) {
  if (method == "em") return pcm::em_estimate(a);
  if (method == "transposed") return pcm::transposed_estimate(a, c);
  return pcm::gmm_estimate(a, c);
}

int run_analyze(const std::string& file, const std::string& method, bool no_normalize, double c,
                const std::string& format) {
  const auto doc = pcm::load_matrix_document(file);
  const auto fmt = parse_format(format);
  if (method == "both") {
    auto gmm = pcm::gmm_estimate(doc.matrix, c);
    if (!no_normalize) gmm = pcm::normalize(gmm);
    std::cout << pcm::render_analysis(gmm, pcm::em_estimate(doc.matrix), fmt, doc.labels);
    return 0;
  }
  auto e = estimate_for(method, doc.matrix, c);
  if (!no_normalize) e = pcm::normalize(e);
  std::cout << pcm::render_report(e, fmt, doc.labels);
  return 0;
}

int run_rank(const std::string& file, const std::string& method, double sigma, const std::string& format) {
  const auto doc = pcm::load_matrix_document(file);
  const auto e = pcm::normalize(estimate_for(method, doc.matrix, 1.0));
  std::cout << pcm::render_report(pcm::rank(e, sigma), parse_format(format), doc.labels);
  return 0;
}

int run_compare(const std::string& file, double sigma, const std::string& format) {
  const auto doc = pcm::load_matrix_document(file);
  std::cout << pcm::render_report(pcm::compare_methods(doc.matrix, sigma), parse_format(format), doc.labels);
  return 0;
}

int run_consistency(const std::string& file, double tol, const std::string& format) {
  const auto doc = pcm::load_matrix_document(file);
  const auto& a = doc.matrix;
  const auto names = doc.labels_or_default();
  const bool transitive = pcm::is_transitive(a, tol);
  const auto e = pcm::gmm_estimate(a);
  std::optional<double> gci;
  try {
    gci = pcm::gci(a);
  } catch (const pcm::Error& err) {
    if (err.code() != pcm::ErrorCode::NotApplicable) throw;
  }

  if (parse_format(format) == pcm::ReportFormat::JSON) {
    pcm::json elements = pcm::json::array();
    for (std::size_t i = 0; i < a.size(); ++i)
      elements.push_back({{"index", i},
                          {"label", names[i]},
                          {"delta", e.delta[i]},
                          {"relative_error", e.domega[i] / e.omega[i]}});
    pcm::json out = {{"schema_version", pcm::kSchemaVersion},
                     {"kind", "consistency"},
                     {"transitive", transitive},
                     {"tolerance", tol},
                     {"reciprocal", a.reciprocal()},
                     {"lambda", e.lambda},
                     {"elements", std::move(elements)},
                     {"gci", gci ? pcm::json(*gci) : pcm::json(nullptr)}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  std::printf("transitive: %s (tolerance %g)\n", transitive ? "yes" : "no", tol);
  std::printf("reciprocal: %s\n", a.reciprocal() ? "yes" : "no");
  std::printf("lambda: %.6f\n", e.lambda);
  std::printf("per-element error exponents:\n");
  for (std::size_t i = 0; i < a.size(); ++i)
    std::printf("  %s  Δ = %.4f  Δω/ω = %.4f\n", names[i].c_str(), e.delta[i], e.domega[i] / e.omega[i]);
  if (gci)
    std::printf("GCI: %.4f\n", *gci);
  else
    std::printf("GCI: n/a (needs a reciprocal matrix with n >= 3)\n");
  return 0;
}

int run_roundtrip(const std::string& file, double c) {
  const auto doc = pcm::load_matrix_document(file);
  const auto r = pcm::roundtrip_check(doc.matrix, c);
  std::printf("matrix -> measurements -> matrix   max rel error %.3e\n", r.matrix_error);
  std::printf("measurements -> matrix -> measurements   max rel error %.3e\n", r.samples_error);
  std::printf("lambda construction vs product form   rel error %.3e\n", r.lambda_error);
  std::printf("error exponents, matrix vs samples   max abs error %.3e\n", r.delta_error);
  std::printf("%s\n", r.passed() ? "roundtrip: ok" : "roundtrip: FAILED");
  return r.passed() ? 0 : kExitNumerical;
}

std::atomic<pcm::HttpService*> g_service{nullptr};

void on_signal(int) {
  if (auto* s = g_service.load()) s->stop();
}

int run_serve(const std::string& host, int port) {
  pcm::SessionStore store;
  const char* snapshot = std::getenv(kSnapshotEnv);
  if (snapshot && *snapshot && store.load(snapshot))
    std::cerr << "restored " << store.size() << " session(s) from " << snapshot << "\n";

  pcm::HttpService service(store);
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "listening on " << host << ":" << port << "\n";
  const bool ok = service.listen(host, port);
  g_service = nullptr;

  if (snapshot && *snapshot) {
    store.save(snapshot);
    std::cerr << "saved " << store.size() << " session(s) to " << snapshot << "\n";
  }
  if (!ok) {
    std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
    return kExitInput;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Priorities with error bars from pairwise comparison matrices"};
  app.require_subcommand(1);

  std::string file, method = "gmm", format = "text", host = "0.0.0.0";
  double c = 1.0, sigma = pcm::kDefaultSigma, tol = 1e-9;
  bool no_normalize = false;
  int port = 8080;

  const auto formats = CLI::IsMember({"text", "json"});

  auto* analyze = app.add_subcommand("analyze", "Priorities with error bars");
  analyze->add_option("file", file, "Matrix file (.csv or .json)")->required()->check(CLI::ExistingFile);
  analyze->add_option("--method", method, "gmm, em, both or transposed")
      ->check(CLI::IsMember({"gmm", "em", "both", "transposed"}));
  analyze->add_flag("--no-normalize", no_normalize, "Keep the raw scale of the GMM estimate");
  analyze->add_option("--c", c, "Scale constant C")->check(CLI::PositiveNumber);
  analyze->add_option("--format", format)->check(formats);

  auto* rank = app.add_subcommand("rank", "Ranking with reliability verdicts");
  rank->add_option("file", file)->required()->check(CLI::ExistingFile);
  rank->add_option("--method", method)->check(CLI::IsMember({"gmm", "em", "transposed"}));
  rank->add_option("--sigma", sigma, "Interval multiplier")->check(CLI::NonNegativeNumber);
  rank->add_option("--format", format)->check(formats);

  auto* compare = app.add_subcommand("compare", "GMM versus EM, rank reversal check");
  compare->add_option("file", file)->required()->check(CLI::ExistingFile);
  compare->add_option("--sigma", sigma, "Interval multiplier")->check(CLI::NonNegativeNumber);
  compare->add_option("--format", format)->check(formats);

  auto* consistency = app.add_subcommand("consistency", "Transitivity, error exponents and GCI");
  consistency->add_option("file", file)->required()->check(CLI::ExistingFile);
  consistency->add_option("--tol", tol, "Relative transitivity tolerance")->check(CLI::NonNegativeNumber);
  consistency->add_option("--format", format)->check(formats);

  auto* roundtrip = app.add_subcommand("roundtrip", "Matrix/measurement correspondence self-test");
  roundtrip->add_option("file", file)->required()->check(CLI::ExistingFile);
  roundtrip->add_option("--c", c, "Scale constant C")->check(CLI::PositiveNumber);

  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  serve->add_option("--host", host);
  serve->add_option("--port", port)->check(CLI::Range(1, 65535));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*analyze) return run_analyze(file, method, no_normalize, c, format);
    if (*rank) return run_rank(file, method, sigma, format);
    if (*compare) return run_compare(file, sigma, format);
    if (*consistency) return run_consistency(file, tol, format);
    if (*roundtrip) return run_roundtrip(file, c);
    if (*serve) return run_serve(host, port);
  } catch (const pcm::Error& e) {
    std::cerr << "error: " << pcm::to_string(e.code()) << ": " << e.what() << "\n";
    return pcm::is_numerical(e.code()) ? kExitNumerical : kExitInput;
  }
  return 0;
}
