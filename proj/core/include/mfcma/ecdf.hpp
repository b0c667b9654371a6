#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mfcma/harness.hpp"

namespace mfcma {

/// Errors at or below zero are raised to this value before building targets.
inline constexpr double kErrorFloor = 1e-12;

/// worst / 10^{0.2 k} for k = 0, 1, ... while the value stays >= best.
/// Requires 0 < best <= worst.
std::vector<double> make_targets(double best, double worst);

struct RunSet {
  std::string algorithm;
  std::vector<RunRecord> runs;
};

/// Targets spanning the smallest and largest final error over all runs.
std::vector<double> targets_for(std::span<const RunSet> sets);

struct EcdfPoint {
  double budget_fraction = 0.0;
  double proportion = 0.0;
};

struct EcdfCurve {
  std::string algorithm;
  std::vector<double> targets;
  std::vector<EcdfPoint> points;
};

/// At each of `checkpoints` evenly spaced budget fractions, the fraction of
/// targets reached by each run's best-so-far error, averaged over runs.
/// Throws std::invalid_argument when runs disagree on objective or budget.
std::vector<EcdfCurve> ecdf(std::span<const RunSet> sets, std::span<const double> targets,
                            std::size_t checkpoints = 100);

/// Best-so-far error of a run after `budget` evaluations; +inf before the
/// first recorded generation.
double error_at_budget(const RunRecord& run, double budget);

struct SummaryCell {
  std::string function;
  std::string algorithm;
  std::vector<double> errors;
};

struct SummaryRow {
  std::string function;
  std::string algorithm;
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t runs = 0;
};

/// Sample mean and (N-1) standard deviation per cell, grouped by function
/// in order of first appearance.
std::vector<SummaryRow> summarize(std::span<const SummaryCell> cells);

/// Cells keyed by (objective, algorithm) from the final errors of runs.
std::vector<SummaryCell> cells_from_runs(std::span<const RunRecord> runs);

/// "%.1e", e.g. 0.0e+00.
std::string format_error(double value);

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);
void write_summary_text(std::ostream& out, std::span<const SummaryRow> rows);
void write_ecdf_csv(std::ostream& out, std::span<const EcdfCurve> curves);

}  // namespace mfcma
