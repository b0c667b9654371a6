#include "mfcma/ecdf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace mfcma {

namespace {

constexpr double kTargetStep = 0.2;  // decades between neighbouring targets

}  // namespace

std::vector<double> make_targets(double best, double worst) {
  if (!(best > 0.0) || !(worst > 0.0)) throw std::invalid_argument("make_targets: bounds must be positive");
  if (best > worst) throw std::invalid_argument("make_targets: best exceeds worst");
  std::vector<double> targets;
  // Relative slack absorbs rounding in worst / 10^{0.2k} near best.
  const double stop = best * (1.0 - 1e-12);
  for (std::size_t k = 0;; ++k) {
    const double target = worst * std::pow(10.0, -kTargetStep * static_cast<double>(k));
    if (target < stop) break;
    targets.push_back(target);
  }
  return targets;
}

std::vector<double> targets_for(std::span<const RunSet> sets) {
  double best = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  bool any = false;
  for (const RunSet& set : sets) {
    for (const RunRecord& run : set.runs) {
      const double e = std::max(run.error, kErrorFloor);
      best = std::min(best, e);
      worst = std::max(worst, e);
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("targets_for: no runs");
  return make_targets(best, worst);
}

double error_at_budget(const RunRecord& run, double budget) {
  double error = std::numeric_limits<double>::infinity();
  for (const TraceRow& row : run.rows) {
    if (static_cast<double>(row.evals) > budget) break;
    error = row.best - run.optimum_value;
  }
  return error;
}

std::vector<EcdfCurve> ecdf(std::span<const RunSet> sets, std::span<const double> targets,
                            std::size_t checkpoints) {
  if (checkpoints == 0) throw std::invalid_argument("ecdf: need at least one checkpoint");
  if (targets.empty()) throw std::invalid_argument("ecdf: no targets");
  const RunRecord* reference = nullptr;
  for (const RunSet& set : sets) {
    if (set.runs.empty()) throw std::invalid_argument("ecdf: algorithm " + set.algorithm + " has no runs");
    for (const RunRecord& run : set.runs) {
      if (reference == nullptr) reference = &run;
      if (run.config.objective != reference->config.objective || run.config.n != reference->config.n) {
        throw std::invalid_argument("ecdf: runs use different objectives");
      }
      if (run.config.budget() != reference->config.budget()) {
        throw std::invalid_argument("ecdf: runs use different budgets");
      }
    }
  }

  std::vector<EcdfCurve> curves;
  for (const RunSet& set : sets) {
    EcdfCurve curve;
    curve.algorithm = set.algorithm;
    curve.targets.assign(targets.begin(), targets.end());
    const double max_fes = static_cast<double>(set.runs.front().config.budget());
    for (std::size_t c = 1; c <= checkpoints; ++c) {
      const double fraction = static_cast<double>(c) / static_cast<double>(checkpoints);
      double total = 0.0;
      for (const RunRecord& run : set.runs) {
        const double error = error_at_budget(run, fraction * max_fes);
        const auto reached = std::count_if(targets.begin(), targets.end(),
                                           [&](double target) { return error <= target; });
        total += static_cast<double>(reached) / static_cast<double>(targets.size());
      }
      curve.points.push_back({fraction, total / static_cast<double>(set.runs.size())});
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<SummaryRow> summarize(std::span<const SummaryCell> cells) {
  std::vector<std::string> functions;
  for (const SummaryCell& cell : cells) {
    if (std::find(functions.begin(), functions.end(), cell.function) == functions.end()) {
      functions.push_back(cell.function);
    }
  }
  std::vector<SummaryRow> rows;
  for (const std::string& function : functions) {
    for (const SummaryCell& cell : cells) {
      if (cell.function != function) continue;
      if (cell.errors.size() < 2) {
        throw std::invalid_argument("summarize: cell " + cell.function + "/" + cell.algorithm +
                                    " needs at least 2 runs");
      }
      const double N = static_cast<double>(cell.errors.size());
      double mean = 0.0;
      for (double e : cell.errors) mean += e;
      mean /= N;
      double ss = 0.0;
      for (double e : cell.errors) ss += (e - mean) * (e - mean);
      rows.push_back({cell.function, cell.algorithm, mean, std::sqrt(ss / (N - 1.0)),
                      cell.errors.size()});
    }
  }
  return rows;
}

std::vector<SummaryCell> cells_from_runs(std::span<const RunRecord> runs) {
  std::vector<SummaryCell> cells;
  for (const RunRecord& run : runs) {
    const std::string algorithm(to_string(run.config.algorithm));
    auto it = std::find_if(cells.begin(), cells.end(), [&](const SummaryCell& c) {
      return c.function == run.config.objective && c.algorithm == algorithm;
    });
    if (it == cells.end()) {
      cells.push_back({run.config.objective, algorithm, {}});
      it = std::prev(cells.end());
    }
    it->errors.push_back(run.error);
  }
  return cells;
}

std::string format_error(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1e", value);
  return buf;
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << "function,algorithm,runs,mean_error,std_error\n";
  for (const SummaryRow& r : rows) {
    out << r.function << ',' << r.algorithm << ',' << r.runs << ',' << format_error(r.mean) << ','
        << format_error(r.stddev) << '\n';
  }
}

void write_summary_text(std::ostream& out, std::span<const SummaryRow> rows) {
  std::size_t fw = 8, aw = 9;
  for (const SummaryRow& r : rows) {
    fw = std::max(fw, r.function.size());
    aw = std::max(aw, r.algorithm.size());
  }
  out << std::left << std::setw(static_cast<int>(fw)) << "function" << "  "
      << std::setw(static_cast<int>(aw)) << "algorithm" << "  " << std::right << std::setw(9)
      << "mean" << "  " << std::setw(9) << "std" << '\n';
  for (const SummaryRow& r : rows) {
    out << std::left << std::setw(static_cast<int>(fw)) << r.function << "  "
        << std::setw(static_cast<int>(aw)) << r.algorithm << "  " << std::right << std::setw(9)
        << format_error(r.mean) << "  " << std::setw(9) << format_error(r.stddev) << '\n';
  }
}

void write_ecdf_csv(std::ostream& out, std::span<const EcdfCurve> curves) {
  out << "algorithm,budget_fraction,proportion\n";
  char buf[64];
  for (const EcdfCurve& curve : curves) {
    for (const EcdfPoint& p : curve.points) {
      std::snprintf(buf, sizeof buf, "%.4f,%.17e", p.budget_fraction, p.proportion);
      out << curve.algorithm << ',' << buf << '\n';
    }
  }
}

}  // namespace mfcma
