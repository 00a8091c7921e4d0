// Acceptance gate: one criterion per invocation, one [PASS]/[FAIL] line each.
// Usage: qvc_acceptance N   (N in 1..8)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>

#include "qvc/crossval.hpp"
#include "qvc/dataset.hpp"
#include "qvc/ensemble.hpp"
#include "qvc/metalearner.hpp"
#include "qvc/pca.hpp"
#include "qvc/qaum.hpp"
#include "qvc/rng.hpp"
#include "qvc/stats.hpp"
#include "support/oracles.hpp"

namespace {

namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

constexpr std::uint64_t kSubsampleStream = 9000;  // matches the CLI
constexpr int kPulsarSubsample = 2000;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * qvc::uniform_double(gen);
}

int worker_threads() {
  if (const char* env = std::getenv("QVC_THREADS")) {
    const int value = std::atoi(env);
    if (value >= 1) return value;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

qvc::LabeledDataset load_data(const std::string& name, int subsample_rows,
                              std::uint64_t master_seed) {
  auto data = qvc::load_csv(std::string(QVC_DATA_DIR) + "/" + name, "label", true);
  if (subsample_rows > 0 && subsample_rows < static_cast<int>(data.rows())) {
    data = qvc::subsample(data, subsample_rows,
                          qvc::derive_seed(master_seed, kSubsampleStream));
  }
  return data;
}

qvc::ModelSpec make_spec(qvc::EnsembleKind kind, int depth, int learners,
                         int budget) {
  qvc::ModelSpec spec;
  spec.kind = kind;
  spec.depth = depth;
  spec.learners = learners;
  spec.budget = budget;
  spec.pca_components = 8;
  return spec;
}

double crossval_mean(const qvc::ModelSpec& spec, const qvc::LabeledDataset& data,
                     std::uint64_t seed) {
  return qvc::run_crossval(spec, data, seed, worker_threads()).mean_accuracy;
}

// --- criterion 1: spectrum truncation ------------------------------------

bool criterion1(std::string& detail) {
  const auto start = clock_type::now();
  double worst = 0.0;
  for (int depth = 1; depth <= 4; ++depth) {
    const qvc::QaumCircuit circuit = qvc::build_circuit(1, depth);
    std::mt19937_64 gen(qvc::derive_seed(1, static_cast<std::uint64_t>(depth)));
    for (int draw = 0; draw < 100; ++draw) {
      qvc::ParameterVector params(static_cast<std::size_t>(circuit.param_count()));
      for (double& angle : params) angle = qvc::uniform_angle(gen);
      const auto spectrum = qvc::fourier_spectrum(circuit, params, 0, 4 * depth + 1);
      worst = std::max(worst, spectrum.out_of_band_fraction(depth));
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream out;
  out << "max out-of-band mass " << worst << " over depths 1-4 x 100 draws, "
      << elapsed << " s";
  detail = out.str();
  return worst < 1e-8 && elapsed < 10.0;
}

// --- criteria 2 and 3: accuracy reproduction ------------------------------

struct LevelCheck {
  std::string dataset;
  int subsample;
  double threshold;
};

bool accuracy_criterion(const qvc::ModelSpec& spec,
                        const std::vector<LevelCheck>& checks,
                        std::uint64_t seed, std::string& detail) {
  bool pass = true;
  std::ostringstream out;
  for (const auto& check : checks) {
    const auto data = load_data(check.dataset, check.subsample, seed);
    const double mean = crossval_mean(spec, data, seed);
    pass = pass && mean >= check.threshold;
    out << check.dataset << " " << mean << (mean >= check.threshold ? " >= " : " < ")
        << check.threshold << "; ";
  }
  detail = out.str();
  return pass;
}

bool criterion2(std::string& detail) {
  const auto spec = make_spec(qvc::EnsembleKind::boosting, 1, 50, 1);
  return accuracy_criterion(spec,
                            {{"pulsar.csv", kPulsarSubsample, 0.80},
                             {"digits.csv", 0, 0.76},
                             {"cancer.csv", 0, 0.70}},
                            42, detail);
}

bool criterion3(std::string& detail) {
  const auto spec = make_spec(qvc::EnsembleKind::bagging, 2, 7, 1714);
  std::string levels;
  const bool full = accuracy_criterion(spec,
                                       {{"pulsar.csv", kPulsarSubsample, 0.87},
                                        {"digits.csv", 0, 0.92},
                                        {"cancer.csv", 0, 0.91}},
                                       42, levels);

  const auto start = clock_type::now();
  const auto cancer = load_data("cancer.csv", 0, 42);
  const double smoke =
      crossval_mean(make_spec(qvc::EnsembleKind::bagging, 2, 7, 300), cancer, 42);
  const double smoke_time = seconds_since(start);

  std::ostringstream out;
  out << levels << "smoke(budget 300) cancer " << smoke << " in " << smoke_time
      << " s";
  detail = out.str();
  return full && smoke >= 0.85 && smoke_time < 180.0;
}

// --- criterion 4: ordering over shared folds ------------------------------

bool criterion4(std::string& detail) {
  const std::vector<std::pair<std::string, int>> datasets{
      {"pulsar.csv", kPulsarSubsample}, {"digits.csv", 0}, {"cancer.csv", 0}};
  const std::vector<std::uint64_t> seeds{1, 2, 3};

  bool pass = true;
  std::ostringstream out;
  for (const auto& [name, rows] : datasets) {
    int bag_wins = 0;
    int boost_wins = 0;
    for (const std::uint64_t seed : seeds) {
      const auto data = load_data(name, rows, seed);
      const double bag = crossval_mean(
          make_spec(qvc::EnsembleKind::bagging, 2, 7, 1714), data, seed);
      const double single_long = crossval_mean(
          make_spec(qvc::EnsembleKind::single, 2, 1, 12000), data, seed);
      const double boost = crossval_mean(
          make_spec(qvc::EnsembleKind::boosting, 1, 50, 1), data, seed);
      const double single_short = crossval_mean(
          make_spec(qvc::EnsembleKind::single, 2, 1, 100), data, seed);
      bag_wins += bag >= single_long;
      boost_wins += boost >= single_short;
    }
    pass = pass && bag_wins >= 2 && boost_wins >= 2;
    out << name << " bag>=single12000 " << bag_wins << "/3, boost>=single100 "
        << boost_wins << "/3; ";
  }
  detail = out.str();
  return pass;
}

// --- criterion 5: trade-off shape -----------------------------------------

bool criterion5(std::string& detail) {
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  int both_legs = 0;
  std::ostringstream out;
  for (const std::uint64_t seed : seeds) {
    const auto data = load_data("pulsar.csv", 100, seed);
    const double bag1 =
        crossval_mean(make_spec(qvc::EnsembleKind::bagging, 2, 7, 1), data, seed);
    const double boost1 =
        crossval_mean(make_spec(qvc::EnsembleKind::boosting, 1, 50, 1), data, seed);
    const double bag1000 =
        crossval_mean(make_spec(qvc::EnsembleKind::bagging, 2, 7, 1000), data, seed);
    const double boost1000 = crossval_mean(
        make_spec(qvc::EnsembleKind::boosting, 1, 50, 1000), data, seed);
    const bool leg1 = boost1 > bag1;
    const bool leg2 = bag1000 >= boost1000;
    both_legs += leg1 && leg2;
    out << "seed " << seed << ": budget1 boost " << boost1 << (leg1 ? " > " : " !> ")
        << "bag " << bag1 << ", budget1000 bag " << bag1000
        << (leg2 ? " >= " : " !>= ") << "boost " << boost1000 << "; ";
  }
  out << both_legs << "/3 seeds show both legs";
  detail = out.str();
  return both_legs >= 2;
}

// --- criterion 6: AdaBoost reweighting identity ---------------------------

bool criterion6(std::string& detail) {
  std::mt19937_64 gen(qvc::derive_seed(6, 0));
  double worst = 0.0;
  for (int round = 0; round < 50; ++round) {
    const int m = 5 + static_cast<int>(qvc::uniform_index(gen, 196));
    qvc::BoostState state;
    state.weights.values.resize(static_cast<std::size_t>(m));
    double total = 0.0;
    for (double& w : state.weights.values) {
      w = uniform(gen, 0.05, 1.0);
      total += w;
    }
    for (double& w : state.weights.values) w /= total;
    state.round = round;

    // At least one correct and one incorrect point keeps the round
    // non-terminal.
    std::vector<int> correct(static_cast<std::size_t>(m));
    int mistakes = 0;
    for (int& c : correct) {
      c = uniform(gen, 0.0, 1.0) < 0.3 ? 0 : 1;
      mistakes += c == 0;
    }
    if (mistakes == 0) correct[0] = 0;
    if (mistakes == m) correct[0] = 1;

    const auto result = qvc::boost_update_weights(state, correct);
    if (result.terminated) {
      detail = "unexpected termination on a mixed round";
      return false;
    }
    double misclassified_mass = 0.0;
    for (int i = 0; i < m; ++i) {
      if (correct[static_cast<std::size_t>(i)] == 0) {
        misclassified_mass += result.state.weights.values[static_cast<std::size_t>(i)];
      }
    }
    worst = std::max(worst, std::abs(misclassified_mass - 0.5));
  }
  std::ostringstream out;
  out << "max |misclassified mass - 0.5| = " << worst << " over 50 rounds";
  detail = out.str();
  return worst <= 1e-9;
}

// --- criterion 7: oracle equivalences -------------------------------------

bool gates_match_oracle(std::ostringstream& out) {
  std::mt19937_64 gen(qvc::derive_seed(7, 1));
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a = uniform(gen, 0.0, 1.0);
    const double phase0 = qvc::uniform_angle(gen);
    const double phase1 = qvc::uniform_angle(gen);
    qvc::QubitState state{std::polar(std::sqrt(a), phase0),
                          std::polar(std::sqrt(1.0 - a), phase1)};
    Eigen::Vector2cd reference(state.amp0, state.amp1);

    const int chain = 1 + static_cast<int>(qvc::uniform_index(gen, 4));
    std::vector<qvc::RotationGate> gates;
    for (int g = 0; g < chain; ++g) {
      const auto axis = static_cast<qvc::Axis>(qvc::uniform_index(gen, 3));
      gates.push_back({axis, uniform(gen, -8.0, 8.0)});
      state = qvc::apply_gate(state, gates.back());
    }
    reference = oracle::apply_chain(gates, reference);
    worst = std::max({worst, std::abs(reference[0] - state.amp0),
                      std::abs(reference[1] - state.amp1)});
  }
  out << "gates max |diff| " << worst << "; ";
  return worst <= 1e-12;
}

bool metalearner_matches_oracle(std::ostringstream& out) {
  double worst = 0.0;
  for (const std::uint64_t seed : {21u, 22u, 23u}) {
    std::mt19937_64 gen(seed);
    const int m = 60;
    const int n = 2 + static_cast<int>(seed % 2);
    Eigen::MatrixXd inputs(m, n);
    std::vector<int> labels(m);
    for (int i = 0; i < m; ++i) {
      double z = -0.4;
      for (int j = 0; j < n; ++j) {
        inputs(i, j) = uniform(gen, 0.0, 1.0);
        z += (j + 1.0) * (inputs(i, j) - 0.5);
      }
      labels[static_cast<std::size_t>(i)] =
          uniform(gen, 0.0, 1.0) < 1.0 / (1.0 + std::exp(-4.0 * z));
    }
    const auto fast = qvc::fit_logistic(inputs, labels, 1e-4, 1e-6, 10000);
    const auto slow = oracle::logistic_gd(inputs, labels, 1e-4, 300000, 0.5);
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(fast.weights[j] - slow.weights[j]));
    }
    worst = std::max(worst, std::abs(fast.bias - slow.bias));
  }
  out << "metalearner max coefficient diff " << worst << "; ";
  return worst <= 1e-4;
}

bool ttest_matches_oracle(std::ostringstream& out) {
  std::mt19937_64 gen(qvc::derive_seed(7, 3));
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(10), b(10);
    for (int i = 0; i < 10; ++i) {
      a[static_cast<std::size_t>(i)] = uniform(gen, 0.6, 1.0);
      b[static_cast<std::size_t>(i)] =
          a[static_cast<std::size_t>(i)] - uniform(gen, -0.1, 0.1);
    }
    const auto result = qvc::paired_t_test(a, b);
    if (result.degenerate || std::isinf(result.t_statistic)) continue;
    const double reference = oracle::t_two_sided_p(result.t_statistic, 5);
    worst = std::max(worst, std::abs(result.p_value - reference));
  }
  out << "t-test max |p diff| " << worst << "; ";
  return worst <= 1e-6;
}

bool pca_identity_holds(std::ostringstream& out) {
  std::mt19937_64 gen(qvc::derive_seed(7, 4));
  const int m = 40;
  const int n = 10;
  Eigen::MatrixXd samples(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      samples(i, j) = uniform(gen, -1.0, 1.0) +
                      0.5 * uniform(gen, 0.0, 1.0) * j;
    }
  }
  const auto full = qvc::pca_fit(samples, n);
  double worst = 0.0;
  for (const int k : {3, 7}) {
    const auto t = qvc::pca_fit(samples, k);
    const Eigen::MatrixXd projected = qvc::pca_project(samples, t);
    const Eigen::MatrixXd reconstructed =
        (projected * t.components).rowwise() + t.mean.transpose();
    const double rss = (samples - reconstructed).squaredNorm() / (m - 1);
    double discarded = 0.0;
    for (int j = k; j < n; ++j) discarded += full.explained_variance[j];
    worst = std::max(worst, std::abs(rss - discarded));
  }
  out << "pca identity max |diff| " << worst;
  return worst <= 1e-6;
}

bool criterion7(std::string& detail) {
  std::ostringstream out;
  const bool gates = gates_match_oracle(out);
  const bool meta = metalearner_matches_oracle(out);
  const bool ttest = ttest_matches_oracle(out);
  const bool pca = pca_identity_holds(out);
  detail = out.str();
  return gates && meta && ttest && pca;
}

// --- criterion 8: byte-identical reports across thread counts -------------

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool criterion8(std::string& detail) {
  const fs::path base = fs::temp_directory_path() / "qvc_acceptance_c8";
  fs::remove_all(base);
  fs::create_directories(base);

  for (const int threads : {1, 8}) {
    const std::string command =
        std::string(QVC_CLI_PATH) + " crossval --dataset " + QVC_DATA_DIR +
        "/cancer.csv --model bagging --learners 5 --depth 2 --budget 60 --seed 11"
        " --threads " +
        std::to_string(threads) + " --out " +
        (base / ("t" + std::to_string(threads))).string() + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      detail = "crossval run with --threads " + std::to_string(threads) + " failed";
      return false;
    }
  }

  const std::string one = slurp(base / "t1" / "report.json");
  const std::string eight = slurp(base / "t8" / "report.json");
  if (one.empty()) {
    detail = "empty report.json";
    return false;
  }
  detail = one == eight ? "reports byte-identical at threads 1 and 8 ("
                              + std::to_string(one.size()) + " bytes)"
                        : "reports differ between threads 1 and 8";
  return one == eight;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s CRITERION(1-8)\n", argv[0]);
    return 2;
  }
  const int criterion = std::atoi(argv[1]);

  static const struct {
    const char* name;
    bool (*run)(std::string&);
  } table[] = {
      {"spectrum truncation", criterion1},
      {"boosting accuracy reproduction", criterion2},
      {"bagging accuracy reproduction", criterion3},
      {"ensemble vs single ordering", criterion4},
      {"trade-off shape", criterion5},
      {"adaboost reweighting identity", criterion6},
      {"oracle equivalences", criterion7},
      {"thread-count determinism", criterion8},
  };
  if (criterion < 1 || criterion > 8) {
    std::fprintf(stderr, "criterion must be in 1..8\n");
    return 2;
  }

  const auto& entry = table[criterion - 1];
  std::string detail;
  bool pass = false;
  try {
    pass = entry.run(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", criterion,
              entry.name, detail.c_str());
  return pass ? 0 : 1;
}
