// tmsc: multi-view subspace clustering with a tensor nuclear norm prior.
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tmsc/baselines.hpp"
#include "tmsc/io.hpp"
#include "tmsc/report.hpp"
#include "tmsc/synth.hpp"
#include "tmsc/tsvd.hpp"

namespace {

using nlohmann::json;

struct SolverFlags {
  std::optional<double> lambda;
  std::string dataset;
  bool unrotated = false;
  tmsc::SolverConfig config;
  int restarts = 20;
  std::uint64_t seed = 0;
  std::string out;
  bool omit_timing = false;

  void attach(CLI::App* app) {
    app->add_option("--lambda", lambda, "error-term weight (> 0)");
    app->add_option("--dataset", dataset,
                    "take lambda from a benchmark preset (yale, extended-yaleb, orl, "
                    "notting-hill, scene-15, mitindoor-67, coil-20, caltech-101)");
    app->add_option("--max-iters", config.max_iters, "iteration cap")->capture_default_str();
    app->add_option("--epsilon", config.epsilon, "stopping tolerance")->capture_default_str();
    app->add_option("--mu0", config.mu0)->capture_default_str();
    app->add_option("--rho0", config.rho0)->capture_default_str();
    app->add_option("--eta", config.eta)->capture_default_str();
    app->add_option("--mu-max", config.mu_max)->capture_default_str();
    app->add_option("--rho-max", config.rho_max)->capture_default_str();
    app->add_option("--restarts", restarts, "k-means restarts")->capture_default_str();
    app->add_option("--seed", seed, "k-means seed")->capture_default_str();
    app->add_option("--out", out, "report path (default: stdout)");
    app->add_flag("--omit-timing", omit_timing, "leave wall-clock fields out of the report");
  }

  tmsc::PipelineOptions resolve() {
    if (!lambda && !dataset.empty()) {
      lambda = tmsc::dataset_lambda(dataset);
      if (!lambda) throw std::invalid_argument("unknown dataset preset '" + dataset + "'");
    }
    if (!lambda) throw std::invalid_argument("--lambda or --dataset is required");
    if (!(*lambda > 0.0)) throw std::invalid_argument("--lambda must be positive");
    config.lambda = *lambda;
    config.rotated = !unrotated;
    config.validate();
    if (restarts < 1) throw std::invalid_argument("--restarts must be positive");
    return {config, restarts, seed};
  }
};

void emit(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw tmsc::FormatError(path + ": cannot open for writing");
  out << j.dump(2) << '\n';
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

tmsc::MultiViewDataset load(const std::string& manifest, double* seconds) {
  const auto start = std::chrono::steady_clock::now();
  auto data = tmsc::load_dataset(manifest);
  *seconds = seconds_since(start);
  return data;
}

int run_cluster(const std::string& manifest, SolverFlags& flags) {
  const auto options = flags.resolve();
  double load_seconds = 0.0;
  const auto data = load(manifest, &load_seconds);
  auto report = tmsc::cluster_dataset(data, options);
  report.timings.load_seconds = load_seconds;
  emit(tmsc::to_json(report, !flags.omit_timing), flags.out);
  return 0;
}

json view_report(const tmsc::ClusteringReport& r, std::size_t view, const std::string& name,
                 bool timing) {
  json j = tmsc::to_json(r, timing);
  j["view"] = view + 1;
  j["name"] = name;
  return j;
}

int run_baseline(const std::string& method, const std::string& manifest, int view,
                 std::optional<double> sigma, SolverFlags& flags) {
  const bool needs_lambda = method != "spc";
  tmsc::PipelineOptions options;
  if (needs_lambda) {
    options = flags.resolve();
  } else {
    options = {flags.config, flags.restarts, flags.seed};
  }
  double load_seconds = 0.0;
  const auto data = load(manifest, &load_seconds);
  const bool timing = !flags.omit_timing;

  if (method == "utsvd") {
    options.solver.rotated = false;
    auto report = tmsc::cluster_dataset(data, options);
    report.timings.load_seconds = load_seconds;
    emit(tmsc::to_json(report, timing), flags.out);
    return 0;
  }

  std::vector<std::size_t> views;
  if (view > 0) {
    if (view > static_cast<int>(data.views.size())) throw std::invalid_argument("--view out of range");
    views.push_back(static_cast<std::size_t>(view - 1));
  } else {
    for (std::size_t v = 0; v < data.views.size(); ++v) views.push_back(v);
  }

  json out;
  out["method"] = method;
  out["views"] = json::array();
  if (method == "naive") {
    tmsc::MultiViewDataset subset;
    subset.clusters = data.clusters;
    subset.labels = data.labels;
    for (auto v : views) subset.views.push_back(data.views[v]);
    const std::vector<double> lambdas(views.size(), options.solver.lambda);
    const auto naive = tmsc::naive_multiview(subset, lambdas, options.solver);
    auto report = tmsc::cluster_affinity(naive.affinity, subset, options);
    report.method = "naive";
    report.converged = true;
    for (std::size_t i = 0; i < naive.per_view.size(); ++i) {
      report.converged = report.converged && naive.per_view[i].converged;
      report.iterations = std::max(report.iterations, naive.per_view[i].iterations);
      report.timings.solve_seconds += naive.per_view[i].solve_seconds;
    }
    report.timings.load_seconds = load_seconds;
    out = tmsc::to_json(report, timing);
    out["views_used"] = json::array();
    for (auto v : views) out["views_used"].push_back(v + 1);
  } else if (method == "lrr") {
    for (auto v : views) {
      const auto solved = tmsc::lrr(data.views[v], options.solver.lambda, options.solver);
      auto report = tmsc::cluster_affinity(tmsc::fuse_affinity(solved.Z), data, options);
      report.method = "lrr";
      report.config = options.solver;
      report.config.rotated = false;
      report.trace = solved.trace;
      report.converged = solved.converged;
      report.iterations = solved.iterations;
      report.timings.solve_seconds = solved.solve_seconds;
      report.timings.load_seconds = load_seconds;
      out["views"].push_back(view_report(report, v, data.names[v], timing));
    }
  } else if (method == "spc") {
    for (auto v : views) {
      const auto start = std::chrono::steady_clock::now();
      const auto affinity = tmsc::spc_affinity(data.views[v], sigma);
      const double build = seconds_since(start);
      auto report = tmsc::cluster_affinity(affinity, data, options);
      report.method = "spc";
      report.converged = true;
      report.timings.solve_seconds = build;
      report.timings.load_seconds = load_seconds;
      json j = view_report(report, v, data.names[v], timing);
      j.erase("config");
      j["sigma"] = sigma ? *sigma : tmsc::median_pairwise_distance(data.views[v]);
      j["restarts"] = options.restarts;
      j["seed"] = options.seed;
      out["views"].push_back(j);
    }
  } else {
    throw std::invalid_argument("unknown baseline method '" + method + "'");
  }
  emit(out, flags.out);
  return 0;
}

std::vector<tmsc::Index> parse_dims(const std::string& text) {
  std::vector<tmsc::Index> dims;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string token = text.substr(start, comma - start);
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != token.size() || value < 1) {
      throw std::invalid_argument("--dims: invalid dimension '" + token + "'");
    }
    dims.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return dims;
}

int run_synth(const std::string& out_dir, tmsc::SynthConfig config, const std::string& dims,
              int corrupt_view) {
  config.dims = parse_dims(dims);
  if (corrupt_view > 0) config.corrupt_view = corrupt_view - 1;
  const auto data = tmsc::synth(config);
  const auto manifest = tmsc::save_dataset(out_dir, data);
  emit({{"manifest", manifest.generic_string()},
        {"samples", data.samples()},
        {"views", data.view_count()},
        {"clusters", data.clusters}},
       "");
  return 0;
}

int run_eval(const std::string& pred_path, const std::string& truth_path, const std::string& out) {
  const auto pred = tmsc::read_labels(pred_path);
  const auto truth = tmsc::read_labels(truth_path);
  emit(tmsc::to_json(tmsc::evaluate(pred, truth)), out);
  return 0;
}

json shape(const tmsc::Tensor3& t) { return {t.n1(), t.n2(), t.n3()}; }

int run_tsvd(const std::string& path, std::optional<double> tau, const std::string& shrink_out,
             double rank_tol) {
  const auto t = tmsc::read_tensor(path);
  const auto factors = tmsc::tsvd(t);
  json j;
  j["dims"] = shape(t);
  j["factors"] = {{"U", shape(factors.U)}, {"S", shape(factors.S)}, {"V", shape(factors.V)}};
  j["multirank"] = tmsc::multirank(t, rank_tol).ranks;
  j["ttnn"] = tmsc::ttnn(t);
  if (tau) {
    const auto g = tmsc::tubal_shrink(t, *tau);
    j["shrink"] = {{"tau", *tau},
                   {"threshold", static_cast<double>(t.n3()) * *tau},
                   {"ttnn", tmsc::ttnn(g)},
                   {"multirank", tmsc::multirank(g, rank_tol).ranks}};
    if (!shrink_out.empty()) {
      tmsc::write_tensor(shrink_out, g);
      j["shrink"]["path"] = shrink_out;
    }
  }
  emit(j, "");
  return 0;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-view subspace clustering with a t-SVD tensor nuclear norm"};
  app.require_subcommand(1);

  std::string manifest;
  SolverFlags cluster_flags;
  auto* cluster = app.add_subcommand("cluster", "run the full clustering pipeline");
  cluster->add_option("--manifest", manifest, "dataset manifest (JSON)")->required();
  cluster->add_flag("--unrotated", cluster_flags.unrotated, "use the N x N x V coefficient tensor");
  cluster_flags.attach(cluster);

  std::string method;
  int view = 0;
  std::optional<double> sigma;
  SolverFlags baseline_flags;
  auto* baseline = app.add_subcommand("baseline", "run a comparison method");
  baseline->add_option("--method", method, "lrr | naive | spc | utsvd")
      ->required()
      ->check(CLI::IsMember({"lrr", "naive", "spc", "utsvd"}));
  baseline->add_option("--manifest", manifest, "dataset manifest (JSON)")->required();
  baseline->add_option("--view", view, "restrict to one view (1-based)");
  baseline->add_option("--sigma", sigma, "Gaussian kernel width for spc (default: median distance)");
  baseline_flags.attach(baseline);

  std::string synth_out, synth_dims;
  int corrupt_view = 0;
  tmsc::SynthConfig synth_config;
  auto* synth = app.add_subcommand("synth", "generate a synthetic multi-view dataset");
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--views", synth_config.views)->required();
  synth->add_option("--clusters", synth_config.clusters)->required();
  synth->add_option("--per-cluster", synth_config.per_cluster)->required();
  synth->add_option("--dims", synth_dims, "comma-separated view dimensions")->required();
  synth->add_option("--rank", synth_config.rank)->required();
  synth->add_option("--noise", synth_config.noise)->required();
  synth->add_option("--corrupt-view", corrupt_view, "view to corrupt (1-based)");
  synth->add_option("--corrupt-frac", synth_config.corrupt_fraction, "fraction of columns replaced");
  synth->add_option("--seed", synth_config.seed)->required();

  std::string pred_path, truth_path, eval_out;
  auto* eval = app.add_subcommand("eval", "score predicted labels against ground truth");
  eval->add_option("--pred", pred_path)->required();
  eval->add_option("--truth", truth_path)->required();
  eval->add_option("--out", eval_out, "output path (default: stdout)");

  std::string tensor_path, shrink_out;
  std::optional<double> tau;
  double rank_tol = tmsc::kDefaultRankTolerance;
  auto* tsvd = app.add_subcommand("tsvd", "inspect the t-SVD of a tensor file");
  tsvd->add_option("--tensor", tensor_path)->required();
  tsvd->add_option("--tau", tau, "apply tubal shrinkage with this tau");
  tsvd->add_option("--shrink-out", shrink_out, "write the shrunk tensor here");
  tsvd->add_option("--rank-tol", rank_tol)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    if (*cluster) return run_cluster(manifest, cluster_flags);
    if (*baseline) return run_baseline(method, manifest, view, sigma, baseline_flags);
    if (*synth) {
      if (synth_config.corrupt_fraction > 0.0 && corrupt_view < 1) {
        throw std::invalid_argument("--corrupt-frac requires --corrupt-view");
      }
      return run_synth(synth_out, synth_config, synth_dims, corrupt_view);
    }
    if (*eval) return run_eval(pred_path, truth_path, eval_out);
    if (*tsvd) {
      if (tau && !(*tau > 0.0)) throw std::invalid_argument("--tau must be positive");
      return run_tsvd(tensor_path, tau, shrink_out, rank_tol);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << one_line(e.what()) << '\n';
    return 1;
  }
  return 0;
}
