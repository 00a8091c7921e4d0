#include "qvc/model_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "qvc/errors.hpp"

namespace qvc {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buffer, ptr);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing output file: " + path);
  }
}

ordered_json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw parse_error("cannot open file: " + path);
  }
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path + ": invalid JSON: " + e.what());
  }
  return doc;
}

void check_schema(const ordered_json& doc, const std::string& path) {
  if (!doc.contains("schema") || !doc["schema"].is_number_integer() ||
      doc["schema"].get<int>() != kSchemaVersion) {
    throw parse_error(path + ": missing or unsupported schema version");
  }
}

ordered_json vector_json(const std::vector<double>& values) {
  return ordered_json(values);
}

ordered_json eigen_vector_json(const Eigen::VectorXd& v) {
  std::vector<double> values(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) values[static_cast<std::size_t>(i)] = v(i);
  return ordered_json(values);
}

Eigen::VectorXd eigen_vector_from(const ordered_json& arr) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  Eigen::Index i = 0;
  for (const auto& x : arr) v(i++) = x.get<double>();
  return v;
}

ordered_json preprocessing_json(const Preprocessing& pre) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < pre.pca.components.rows(); ++r) {
    rows.push_back(eigen_vector_json(pre.pca.components.row(r).transpose()));
  }
  return ordered_json{
      {"pca",
       {{"mean", eigen_vector_json(pre.pca.mean)},
        {"components", rows},
        {"explained_variance", eigen_vector_json(pre.pca.explained_variance)}}},
      {"scale",
       {{"min", eigen_vector_json(pre.scale.min)},
        {"max", eigen_vector_json(pre.scale.max)}}}};
}

Preprocessing preprocessing_from(const ordered_json& doc) {
  Preprocessing pre;
  const auto& pca = doc.at("pca");
  pre.pca.mean = eigen_vector_from(pca.at("mean"));
  const auto& rows = pca.at("components");
  if (rows.empty()) {
    throw parse_error("model preprocessing: empty PCA component list");
  }
  const auto n = static_cast<Eigen::Index>(rows.front().size());
  pre.pca.components.resize(static_cast<Eigen::Index>(rows.size()), n);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw parse_error("model preprocessing: ragged PCA components");
    }
    pre.pca.components.row(r++) = eigen_vector_from(row).transpose();
  }
  pre.pca.explained_variance = eigen_vector_from(pca.at("explained_variance"));
  pre.scale.min = eigen_vector_from(doc.at("scale").at("min"));
  pre.scale.max = eigen_vector_from(doc.at("scale").at("max"));
  return pre;
}

ordered_json model_spec_json(const ModelSpec& spec) {
  return ordered_json{{"kind", to_string(spec.kind)},
                      {"depth", spec.depth},
                      {"learners", spec.learners},
                      {"budget", spec.budget},
                      {"pca_components", spec.pca_components}};
}

ModelSpec model_spec_from(const ordered_json& doc) {
  ModelSpec spec;
  spec.kind = ensemble_kind_from_string(doc.at("kind").get<std::string>());
  spec.depth = doc.at("depth").get<int>();
  spec.learners = doc.at("learners").get<int>();
  spec.budget = doc.at("budget").get<int>();
  spec.pca_components = doc.at("pca_components").get<int>();
  return spec;
}

// Infinite t statistics (degenerate zero-variance case) serialize as strings
// because JSON has no literal for them.
ordered_json t_statistic_json(double t) {
  if (std::isfinite(t)) return t;
  return t > 0 ? "inf" : "-inf";
}

}  // namespace

void save_model(const EnsembleModel& model, const std::string& path) {
  ordered_json doc;
  doc["schema"] = kSchemaVersion;
  doc["kind"] = to_string(model.kind);

  ordered_json learners = ordered_json::array();
  for (const auto& learner : model.learners) {
    learners.push_back(ordered_json{{"num_features", learner.circuit.num_features},
                                    {"depth", learner.circuit.depth},
                                    {"params", vector_json(learner.params)},
                                    {"init_seed", learner.init_seed},
                                    {"budget", learner.budget},
                                    {"final_loss", learner.final_loss}});
  }
  doc["learners"] = std::move(learners);
  doc["metalearner"] = vector_json(model.metalearner);
  if (model.preprocessing) {
    doc["preprocessing"] = preprocessing_json(*model.preprocessing);
  } else {
    doc["preprocessing"] = nullptr;
  }
  write_text(path, doc.dump(2) + "\n");
}

EnsembleModel load_model(const std::string& path) {
  const ordered_json doc = read_json(path);
  check_schema(doc, path);

  EnsembleModel model;
  model.kind = ensemble_kind_from_string(doc.at("kind").get<std::string>());
  for (const auto& item : doc.at("learners")) {
    TrainedLearner learner;
    learner.circuit = build_circuit(item.at("num_features").get<int>(),
                                    item.at("depth").get<int>());
    learner.params = item.at("params").get<std::vector<double>>();
    if (static_cast<int>(learner.params.size()) != learner.circuit.param_count()) {
      throw parse_error(path + ": learner parameter count mismatch");
    }
    learner.init_seed = item.at("init_seed").get<std::uint64_t>();
    learner.budget = item.at("budget").get<int>();
    learner.final_loss = item.at("final_loss").get<double>();
    model.learners.push_back(std::move(learner));
  }
  model.metalearner = doc.at("metalearner").get<std::vector<double>>();
  if (!doc.at("preprocessing").is_null()) {
    model.preprocessing = preprocessing_from(doc.at("preprocessing"));
  }

  if (model.learners.empty()) {
    throw parse_error(path + ": model has no learners");
  }
  if (model.kind != EnsembleKind::single &&
      model.metalearner.size() != model.learners.size() + 1) {
    throw parse_error(path + ": metalearner coefficient count mismatch");
  }
  return model;
}

void save_report(const CrossValReport& report, const std::string& path) {
  ordered_json doc;
  doc["schema"] = kSchemaVersion;
  doc["dataset"] = report.dataset_name;
  doc["master_seed"] = report.master_seed;
  doc["model"] = model_spec_json(report.spec);

  ordered_json folds = ordered_json::array();
  for (const auto& record : report.per_fold) {
    folds.push_back(ordered_json{{"repetition", record.repetition},
                                 {"fold", std::string(1, record.fold)},
                                 {"validation_accuracy", record.validation_accuracy},
                                 {"training_accuracy", record.training_accuracy}});
  }
  doc["per_fold"] = std::move(folds);
  doc["mean_accuracy"] = report.mean_accuracy;
  doc["std_accuracy"] = report.std_accuracy;
  write_text(path, doc.dump(2) + "\n");
}

CrossValReport load_report(const std::string& path) {
  const ordered_json doc = read_json(path);
  check_schema(doc, path);

  CrossValReport report;
  report.dataset_name = doc.at("dataset").get<std::string>();
  report.master_seed = doc.at("master_seed").get<std::uint64_t>();
  report.spec = model_spec_from(doc.at("model"));
  for (const auto& item : doc.at("per_fold")) {
    FoldRecord record;
    record.repetition = item.at("repetition").get<int>();
    const auto fold = item.at("fold").get<std::string>();
    if (fold != "A" && fold != "B") {
      throw parse_error(path + ": fold must be A or B");
    }
    record.fold = fold[0];
    record.validation_accuracy = item.at("validation_accuracy").get<double>();
    record.training_accuracy = item.at("training_accuracy").get<double>();
    report.per_fold.push_back(record);
  }
  report.mean_accuracy = doc.at("mean_accuracy").get<double>();
  report.std_accuracy = doc.at("std_accuracy").get<double>();
  if (report.per_fold.size() != 10) {
    throw parse_error(path + ": report must contain exactly 10 folds");
  }
  return report;
}

void save_timing(const CrossValReport& report, const std::string& path) {
  ordered_json doc;
  doc["schema"] = kSchemaVersion;
  ordered_json times = ordered_json::array();
  double total = 0.0;
  for (const auto& record : report.per_fold) {
    times.push_back(record.wall_time_seconds);
    total += record.wall_time_seconds;
  }
  doc["per_fold_wall_time_seconds"] = std::move(times);
  doc["total_wall_time_seconds"] = total;
  write_text(path, doc.dump(2) + "\n");
}

void save_ttest(const TTestResult& result, const CrossValReport& report_a,
                const CrossValReport& report_b, const std::string& path) {
  ordered_json doc;
  doc["schema"] = kSchemaVersion;
  doc["dataset"] = report_a.dataset_name;
  doc["master_seed"] = report_a.master_seed;
  doc["model_a"] = model_spec_json(report_a.spec);
  doc["model_b"] = model_spec_json(report_b.spec);
  doc["mean_a"] = report_a.mean_accuracy;
  doc["std_a"] = report_a.std_accuracy;
  doc["mean_b"] = report_b.mean_accuracy;
  doc["std_b"] = report_b.std_accuracy;
  doc["t_statistic"] = t_statistic_json(result.t_statistic);
  doc["p_value"] = result.p_value;
  doc["degrees_of_freedom"] = result.degrees_of_freedom;
  doc["significant"] = result.significant;
  doc["degenerate"] = result.degenerate;
  write_text(path, doc.dump(2) + "\n");
}

void write_fold_csv(const CrossValReport& report, const std::string& path) {
  std::string text = "repetition,fold,model,split,accuracy\n";
  const std::string model = to_string(report.spec.kind);
  for (const auto& record : report.per_fold) {
    const std::string base = std::to_string(record.repetition) + "," +
                             std::string(1, record.fold) + "," + model + ",";
    text += base + "train," + format_double(record.training_accuracy) + "\n";
    text += base + "validation," + format_double(record.validation_accuracy) + "\n";
  }
  write_text(path, text);
}

void write_spectrum_csv(const std::map<int, double>& magnitudes,
                        double out_of_band_mass, const std::string& path) {
  std::string text = "frequency,magnitude,out_of_band_mass\n";
  const std::string mass = format_double(out_of_band_mass);
  for (const auto& [frequency, magnitude] : magnitudes) {
    text += std::to_string(frequency) + "," + format_double(magnitude) + "," +
            mass + "\n";
  }
  write_text(path, text);
}

void write_tradeoff_csv(const std::vector<TradeoffRow>& rows,
                        const std::string& path) {
  std::string text = "budget,kind,mean_accuracy\n";
  for (const auto& row : rows) {
    text += std::to_string(row.budget) + "," + row.kind + "," +
            format_double(row.mean_accuracy) + "\n";
  }
  write_text(path, text);
}

}  // namespace qvc
