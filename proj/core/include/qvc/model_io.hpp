#pragma once

#include <map>
#include <string>
#include <vector>

#include "qvc/crossval.hpp"
#include "qvc/ensemble.hpp"
#include "qvc/stats.hpp"

namespace qvc {

void save_model(const EnsembleModel& model, const std::string& path);
EnsembleModel load_model(const std::string& path);

/// Report JSON deliberately excludes wall times so that repeated runs (at any
/// thread count) produce byte-identical files; timings go to save_timing.
void save_report(const CrossValReport& report, const std::string& path);
CrossValReport load_report(const std::string& path);

void save_timing(const CrossValReport& report, const std::string& path);

void save_ttest(const TTestResult& result, const CrossValReport& report_a,
                const CrossValReport& report_b, const std::string& path);

/// Per-fold accuracies as plot-ready CSV with columns
/// repetition,fold,model,split,accuracy (two rows per fold: train/validation).
void write_fold_csv(const CrossValReport& report, const std::string& path);

/// Columns frequency,magnitude,out_of_band_mass; the mass column repeats the
/// summary value on every row.
void write_spectrum_csv(const std::map<int, double>& magnitudes,
                        double out_of_band_mass, const std::string& path);

struct TradeoffRow {
  int budget = 0;
  std::string kind;
  double mean_accuracy = 0.0;
};

/// Columns budget,kind,mean_accuracy.
void write_tradeoff_csv(const std::vector<TradeoffRow>& rows,
                        const std::string& path);

}  // namespace qvc
