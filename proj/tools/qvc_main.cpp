// qvc: train, evaluate, and compare single-qubit variational classifier
// ensembles; probe circuit Fourier spectra; emit plot-ready CSV data.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qvc/crossval.hpp"
#include "qvc/dataset.hpp"
#include "qvc/ensemble.hpp"
#include "qvc/errors.hpp"
#include "qvc/model_io.hpp"
#include "qvc/qaum.hpp"
#include "qvc/rng.hpp"
#include "qvc/stats.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Stream id for the subsampling shuffle; fold shuffles use streams 0..4 and
// fold jobs 100..109, all derived from the same master seed.
constexpr std::uint64_t kSubsampleStream = 9000;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QVC_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 42;
}

int default_threads() {
  if (const char* env = std::getenv("QVC_THREADS")) {
    const int value = std::atoi(env);
    if (value >= 1) return value;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct CommonOptions {
  std::string dataset;
  std::string label_col = "label";
  int subsample = 0;  // 0 = use the full dataset
  std::uint64_t seed = default_seed();
  int threads = default_threads();
  std::string out = ".";
};

void add_data_options(CLI::App* cmd, CommonOptions& opts, bool needs_dataset) {
  auto* ds = cmd->add_option("--dataset", opts.dataset, "Path to a CSV dataset");
  if (needs_dataset) ds->required();
  cmd->add_option("--label-col", opts.label_col,
                  "Label column, by header name or zero-based index (default: label)");
  cmd->add_option("--subsample", opts.subsample,
                  "Randomly subsample the dataset to this many rows (0 = all)");
  cmd->add_option("--seed", opts.seed, "Master RNG seed (env QVC_SEED, default 42)");
  cmd->add_option("--threads", opts.threads,
                  "Worker thread count (env QVC_THREADS, default: hardware)");
  cmd->add_option("--out", opts.out, "Output directory (default: .)");
}

struct ModelOptions {
  std::string model = "single";
  int depth = -1;
  int learners = -1;
  int budget = -1;
};

void add_model_options(CLI::App* cmd, ModelOptions& opts, const std::string& suffix) {
  cmd->add_option("--model" + suffix, opts.model, "single | bagging | boosting")
      ->check(CLI::IsMember({"single", "bagging", "boosting"}));
  cmd->add_option("--depth" + suffix, opts.depth,
                  "Encoding repetitions (default: 2, boosting 1)");
  cmd->add_option("--learners" + suffix, opts.learners,
                  "Learner count (bagging, default 7) or round cap (boosting, default 50)");
  cmd->add_option("--budget" + suffix, opts.budget,
                  "Objective evaluations per learner (defaults: single 100, "
                  "bagging 1714, boosting 1)");
}

// Unset fields fall back to the per-kind reference configurations.
qvc::ModelSpec resolve_spec(const ModelOptions& opts) {
  qvc::ModelSpec spec;
  spec.kind = qvc::ensemble_kind_from_string(opts.model);
  switch (spec.kind) {
    case qvc::EnsembleKind::single:
      spec.depth = opts.depth > 0 ? opts.depth : 2;
      spec.learners = 1;
      spec.budget = opts.budget > 0 ? opts.budget : 100;
      break;
    case qvc::EnsembleKind::bagging:
      spec.depth = opts.depth > 0 ? opts.depth : 2;
      spec.learners = opts.learners > 0 ? opts.learners : 7;
      spec.budget = opts.budget > 0 ? opts.budget : 1714;
      break;
    case qvc::EnsembleKind::boosting:
      spec.depth = opts.depth > 0 ? opts.depth : 1;
      spec.learners = opts.learners > 0 ? opts.learners : 50;
      spec.budget = opts.budget > 0 ? opts.budget : 1;
      break;
  }
  if (opts.learners == 0 || opts.depth == 0 || opts.budget == 0 ||
      opts.learners < -1 || opts.depth < -1 || opts.budget < -1) {
    throw std::invalid_argument("model options must be positive");
  }
  return spec;
}

qvc::LabeledDataset load_dataset(const CommonOptions& opts) {
  qvc::LabeledDataset ds = qvc::load_csv(opts.dataset, opts.label_col, true);
  if (opts.subsample < 0) {
    throw std::invalid_argument("--subsample must be nonnegative");
  }
  if (opts.subsample > 0) {
    ds = qvc::subsample(ds, opts.subsample,
                        qvc::derive_seed(opts.seed, kSubsampleStream));
  }
  return ds;
}

fs::path prepare_out(const CommonOptions& opts) {
  const fs::path dir(opts.out);
  fs::create_directories(dir);
  return dir;
}

int pca_components_for(const qvc::LabeledDataset& ds) {
  return std::min<int>(8, static_cast<int>(ds.cols()));
}

int cmd_train(const CommonOptions& common, const ModelOptions& model_opts) {
  const qvc::ModelSpec spec = resolve_spec(model_opts);
  const qvc::LabeledDataset raw = load_dataset(common);
  const fs::path out = prepare_out(common);

  const auto start = std::chrono::steady_clock::now();
  const qvc::LabeledDataset pre = qvc::preprocess_fit(raw, pca_components_for(raw));
  const qvc::EnsembleModel trained =
      qvc::train_model(spec, pre, common.seed, common.threads);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  qvc::save_model(trained, (out / "model.json").string());

  const auto predictions = qvc::ensemble_predict_batch(trained, pre);
  std::vector<int> labels(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) labels[i] = predictions[i].label;

  ordered_json summary;
  summary["schema"] = 1;
  summary["dataset"] = common.dataset;
  summary["model"] = qvc::to_string(spec.kind);
  summary["learners"] = trained.learners.size();
  ordered_json losses = ordered_json::array();
  for (const auto& learner : trained.learners) losses.push_back(learner.final_loss);
  summary["final_losses"] = std::move(losses);
  summary["training_accuracy"] = qvc::accuracy(labels, pre.labels);
  summary["wall_time_seconds"] = seconds;
  std::ofstream fout(out / "train_summary.json");
  fout << summary.dump(2) << "\n";

  std::cout << "trained " << qvc::to_string(spec.kind) << " model with "
            << trained.learners.size() << " learner(s); wrote "
            << (out / "model.json").string() << "\n";
  return 0;
}

int cmd_crossval(const CommonOptions& common, const ModelOptions& model_opts) {
  const qvc::ModelSpec base = resolve_spec(model_opts);
  const qvc::LabeledDataset raw = load_dataset(common);
  const fs::path out = prepare_out(common);

  qvc::ModelSpec spec = base;
  spec.pca_components = pca_components_for(raw);
  qvc::CrossValReport report =
      qvc::run_crossval(spec, raw, common.seed, common.threads);
  report.dataset_name = common.dataset;

  qvc::save_report(report, (out / "report.json").string());
  qvc::write_fold_csv(report, (out / "report_folds.csv").string());
  qvc::save_timing(report, (out / "report_timing.json").string());

  std::cout << "crossval " << qvc::to_string(spec.kind) << ": mean accuracy "
            << report.mean_accuracy << " (std " << report.std_accuracy << "); wrote "
            << (out / "report.json").string() << "\n";
  return 0;
}

int cmd_compare(const CommonOptions& common, const ModelOptions& opts_a,
                const ModelOptions& opts_b) {
  const qvc::ModelSpec base_a = resolve_spec(opts_a);
  const qvc::ModelSpec base_b = resolve_spec(opts_b);
  const qvc::LabeledDataset raw = load_dataset(common);
  const fs::path out = prepare_out(common);

  // Both arms share the master seed, hence identical fold shuffles.
  qvc::ModelSpec spec_a = base_a;
  qvc::ModelSpec spec_b = base_b;
  spec_a.pca_components = spec_b.pca_components = pca_components_for(raw);
  qvc::CrossValReport report_a =
      qvc::run_crossval(spec_a, raw, common.seed, common.threads);
  qvc::CrossValReport report_b =
      qvc::run_crossval(spec_b, raw, common.seed, common.threads);
  report_a.dataset_name = report_b.dataset_name = common.dataset;

  const auto acc_a = report_a.validation_accuracies();
  const auto acc_b = report_b.validation_accuracies();
  const qvc::TTestResult test = qvc::paired_t_test(acc_a, acc_b);

  qvc::save_report(report_a, (out / "report_a.json").string());
  qvc::save_report(report_b, (out / "report_b.json").string());
  qvc::write_fold_csv(report_a, (out / "report_a_folds.csv").string());
  qvc::write_fold_csv(report_b, (out / "report_b_folds.csv").string());
  qvc::save_timing(report_a, (out / "report_a_timing.json").string());
  qvc::save_timing(report_b, (out / "report_b_timing.json").string());
  qvc::save_ttest(test, report_a, report_b, (out / "ttest.json").string());

  std::cout << "compare: mean_a " << report_a.mean_accuracy << ", mean_b "
            << report_b.mean_accuracy << ", t " << test.t_statistic << ", p "
            << test.p_value << (test.significant ? " (significant)" : "") << "\n";
  return 0;
}

int cmd_spectrum(const CommonOptions& common, const std::vector<int>& depths,
                 int grid_size, int draws, bool zero_params) {
  if (depths.empty()) {
    throw std::invalid_argument("--depths requires at least one depth");
  }
  if (draws < 1) {
    throw std::invalid_argument("--draws must be >= 1");
  }
  const fs::path out = prepare_out(common);

  for (const int depth : depths) {
    const qvc::QaumCircuit circuit = qvc::build_circuit(1, depth);
    const int grid = grid_size > 0 ? grid_size : 4 * depth + 1;
    if (grid < 4 * depth + 1) {
      throw std::invalid_argument(
          "--grid-size " + std::to_string(grid) + " would alias depth " +
          std::to_string(depth) + " (need at least " + std::to_string(4 * depth + 1) +
          ")");
    }

    std::mt19937_64 gen(
        qvc::derive_seed(common.seed, static_cast<std::uint64_t>(depth)));
    const int n_draws = zero_params ? 1 : draws;
    std::map<int, double> mean_magnitude;
    double max_out_of_band = 0.0;
    for (int draw = 0; draw < n_draws; ++draw) {
      qvc::ParameterVector params(static_cast<std::size_t>(circuit.param_count()), 0.0);
      if (!zero_params) {
        for (double& angle : params) angle = qvc::uniform_angle(gen);
      }
      const qvc::FrequencySpectrum spectrum =
          qvc::fourier_spectrum(circuit, params, 0, grid);
      max_out_of_band = std::max(max_out_of_band, spectrum.out_of_band_fraction(depth));
      for (const auto& [freq, mag] : spectrum.entries) {
        mean_magnitude[freq] += mag / n_draws;
      }
    }

    const std::string file = "spectrum_d" + std::to_string(depth) + ".csv";
    qvc::write_spectrum_csv(mean_magnitude, max_out_of_band, (out / file).string());
    std::cout << "depth " << depth << ": out-of-band mass " << max_out_of_band
              << "; wrote " << (out / file).string() << "\n";
  }
  return 0;
}

int cmd_tradeoff(const CommonOptions& common, const std::vector<int>& budgets) {
  if (budgets.empty()) {
    throw std::invalid_argument("--budgets requires at least one budget");
  }
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    if (budgets[i] < 1) {
      throw std::invalid_argument("--budgets entries must be positive");
    }
    if (i > 0 && budgets[i] <= budgets[i - 1]) {
      throw std::invalid_argument("--budgets must be strictly ascending");
    }
  }
  const qvc::LabeledDataset raw = load_dataset(common);
  const fs::path out = prepare_out(common);
  const int pca_k = pca_components_for(raw);

  std::vector<qvc::TradeoffRow> rows;
  for (const int budget : budgets) {
    for (const auto kind : {qvc::EnsembleKind::bagging, qvc::EnsembleKind::boosting}) {
      qvc::ModelSpec spec;
      spec.kind = kind;
      spec.depth = kind == qvc::EnsembleKind::bagging ? 2 : 1;
      spec.learners = kind == qvc::EnsembleKind::bagging ? 7 : 50;
      spec.budget = budget;
      spec.pca_components = pca_k;
      const qvc::CrossValReport report =
          qvc::run_crossval(spec, raw, common.seed, common.threads);
      rows.push_back({budget, qvc::to_string(kind), report.mean_accuracy});
      std::cout << "budget " << budget << " " << qvc::to_string(kind) << ": mean "
                << report.mean_accuracy << "\n";
    }
  }
  qvc::write_tradeoff_csv(rows, (out / "tradeoff.csv").string());
  std::cout << "wrote " << (out / "tradeoff.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-qubit variational classifier ensembles"};
  app.require_subcommand(1);

  CommonOptions common;
  ModelOptions model_opts;
  ModelOptions model_a;
  ModelOptions model_b;
  std::vector<int> depths;
  std::vector<int> budgets;
  int grid_size = 0;
  int draws = 100;
  bool zero_params = false;

  auto* train = app.add_subcommand("train", "Train one model on a full dataset");
  add_data_options(train, common, true);
  add_model_options(train, model_opts, "");

  auto* crossval =
      app.add_subcommand("crossval", "5x2 cross-validation of one model");
  add_data_options(crossval, common, true);
  add_model_options(crossval, model_opts, "");

  auto* compare = app.add_subcommand(
      "compare", "Cross-validate two models on shared folds and t-test them");
  add_data_options(compare, common, true);
  add_model_options(compare, model_a, "-a");
  add_model_options(compare, model_b, "-b");

  auto* spectrum = app.add_subcommand(
      "spectrum", "Fourier spectra of random single-feature circuits");
  add_data_options(spectrum, common, false);
  spectrum->add_option("--depths", depths, "Depths to probe, e.g. 1,2,3")
      ->required()
      ->delimiter(',');
  spectrum->add_option("--grid-size", grid_size,
                       "Sample grid size (default: 4*depth+1 per depth)");
  spectrum->add_option("--draws", draws, "Random parameter draws per depth");
  spectrum->add_flag("--zero-params", zero_params,
                     "Probe the all-zero parameter vector instead");

  auto* tradeoff = app.add_subcommand(
      "tradeoff", "Bagging vs boosting accuracy across per-learner budgets");
  add_data_options(tradeoff, common, true);
  tradeoff->add_option("--budgets", budgets, "Ascending budgets, e.g. 1,10,100")
      ->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (common.threads < 1) {
      throw std::invalid_argument("--threads must be >= 1");
    }
    if (app.got_subcommand(train)) return cmd_train(common, model_opts);
    if (app.got_subcommand(crossval)) return cmd_crossval(common, model_opts);
    if (app.got_subcommand(compare)) return cmd_compare(common, model_a, model_b);
    if (app.got_subcommand(spectrum)) {
      return cmd_spectrum(common, depths, grid_size, draws, zero_params);
    }
    if (app.got_subcommand(tradeoff)) return cmd_tradeoff(common, budgets);
    return 2;
  } catch (const qvc::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
