#include "tmsc/report.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <utility>

namespace tmsc {
namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

ClusteringReport cluster_affinity(const Matrix& affinity, const MultiViewDataset& data,
                                  const PipelineOptions& options) {
  ClusteringReport report;
  report.config = options.solver;
  report.restarts = options.restarts;
  report.seed = options.seed;
  report.clusters = data.clusters;
  const auto start = std::chrono::steady_clock::now();
  SpectralOptions so;
  so.clusters = data.clusters;
  so.seed = options.seed;
  so.restarts = options.restarts;
  report.labels = spectral_cluster(affinity, so).labels;
  report.timings.spectral_seconds = seconds_since(start);
  if (data.labels) report.metrics = evaluate(report.labels, *data.labels);
  return report;
}

ClusteringReport cluster_dataset(const MultiViewDataset& data, const PipelineOptions& options) {
  const SolverResult solved = solve(data, options.solver);
  ClusteringReport report = cluster_affinity(fuse_affinity(solved.Z), data, options);
  report.method = options.solver.rotated ? "t-svd-msc" : "ut-svd-msc";
  report.trace = solved.trace;
  report.converged = solved.converged;
  report.iterations = solved.iterations;
  report.timings.solve_seconds = solved.solve_seconds;
  return report;
}

std::optional<double> dataset_lambda(std::string_view name) {
  static constexpr std::array<std::pair<std::string_view, double>, 8> kTable{{
      {"yale", 1.1},
      {"extended-yaleb", 1.3},
      {"orl", 0.2},
      {"notting-hill", 0.1},
      {"scene-15", 1.5},
      {"mitindoor-67", 0.2},
      {"coil-20", 0.25},
      {"caltech-101", 0.5},
  }};
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return c == '_' ? '-' : static_cast<char>(std::tolower(c)); });
  for (const auto& [k, v] : kTable) {
    if (k == key) return v;
  }
  return std::nullopt;
}

nlohmann::json to_json(const SolverConfig& c) {
  return {{"lambda", c.lambda},   {"mu0", c.mu0},         {"rho0", c.rho0},
          {"eta", c.eta},         {"mu_max", c.mu_max},   {"rho_max", c.rho_max},
          {"epsilon", c.epsilon}, {"max_iters", c.max_iters}, {"rotated", c.rotated}};
}

nlohmann::json to_json(const ConvergenceTrace& trace) {
  auto out = nlohmann::json::array();
  for (const auto& e : trace) {
    out.push_back({{"iteration", e.iteration},
                   {"reconstruction_error", e.reconstruction_error},
                   {"match_error", e.match_error},
                   {"mu", e.mu},
                   {"rho", e.rho}});
  }
  return out;
}

nlohmann::json to_json(const MetricsReport& m) {
  return {{"nmi", m.nmi},         {"acc", m.acc},             {"ar", m.ar},
          {"fscore", m.fscore},   {"precision", m.precision}, {"recall", m.recall}};
}

nlohmann::json to_json(const ClusteringReport& r, bool include_timing) {
  nlohmann::json j;
  j["method"] = r.method;
  j["config"] = to_json(r.config);
  j["config"]["clusters"] = r.clusters;
  j["config"]["restarts"] = r.restarts;
  j["config"]["seed"] = r.seed;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["trace"] = to_json(r.trace);
  j["labels"] = r.labels;
  if (r.metrics) j["metrics"] = to_json(*r.metrics);
  if (include_timing) {
    j["timing"] = {{"load_seconds", r.timings.load_seconds},
                   {"solve_seconds", r.timings.solve_seconds},
                   {"spectral_seconds", r.timings.spectral_seconds}};
  }
  return j;
}

}  // namespace tmsc
