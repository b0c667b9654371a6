#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfcma/ecdf.hpp"
#include "mfcma/harness.hpp"
#include "mfcma/trace_io.hpp"
#include "mfcma/verification.hpp"

namespace fs = std::filesystem;
using namespace mfcma;

namespace {

const std::vector<std::string> kValueKeys{
    "algo",  "objective", "n",       "seed",    "max-fes", "sigma0", "init-box", "lambda",
    "mu",    "h",         "c-c",     "c-1",     "c-mu",    "c-sigma", "d-sigma", "theta",
    "spectrum-samples"};
const std::vector<std::string> kBoolKeys{"log-weights", "rank-one-updated-path", "cap-isotropic-exponent",
                                         "record-sigma", "record-spectrum"};

// Flags shared by run and repeat; every key mirrors a config setting.
struct SettingFlags {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, std::string> bools;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "key=value config file, applied before flags")
        ->check(CLI::ExistingFile);
    for (const auto& key : kValueKeys) app->add_option("--" + key, values[key]);
    for (const auto& key : kBoolKeys) {
      app->add_option("--" + key, bools[key], "true|false")->expected(0, 1)->default_str("true");
    }
  }

  RunConfig build(CLI::App* app) const {
    RunConfig config;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      apply_config(config, parse_config(in));
    }
    for (const auto& key : kValueKeys) {
      if (app->count("--" + key) > 0) apply_setting(config, key, values.at(key));
    }
    for (const auto& key : kBoolKeys) {
      if (app->count("--" + key) > 0) {
        const std::string& v = bools.at(key);
        apply_setting(config, key, v.empty() ? "true" : v);
      }
    }
    return config;
  }
};

void write_trace_file(const fs::path& path, const RunRecord& record) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_trace(out, record);
}

void print_result(const RunRecord& r) {
  std::printf("%s %s n=%zu seed=%llu evals=%zu best=%.6e error=%.6e\n", std::string(to_string(r.config.algorithm)).c_str(),
              r.config.objective.c_str(), r.config.n, static_cast<unsigned long long>(r.config.seed), r.evals,
              r.best_fitness, r.error);
}

std::vector<RunRecord> read_traces(const std::vector<std::string>& files) {
  std::vector<RunRecord> runs;
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read " + file);
    try {
      runs.push_back(read_trace(in));
    } catch (const std::exception& e) {
      throw std::runtime_error(file + ": " + e.what());
    }
  }
  return runs;
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  fn(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix-free and matrix-based CMA-ES experiments"};
  app.require_subcommand(1);
  // "-h" would collide with the archive-size flag --h.
  app.set_help_flag("--help", "Print this help message and exit");

  SettingFlags run_flags;
  std::string run_out;
  auto* run = app.add_subcommand("run", "Run one seeded experiment");
  run->set_help_flag("--help", "Print this help message and exit");
  run_flags.attach(run);
  run->add_option("--out", run_out, "trace file (stdout when omitted)");

  SettingFlags repeat_flags;
  std::size_t runs = 5, threads = 1;
  std::optional<std::uint64_t> base_seed;
  std::string repeat_out;
  auto* repeat = app.add_subcommand("repeat", "Run a batch with derived seeds");
  repeat->set_help_flag("--help", "Print this help message and exit");
  repeat_flags.attach(repeat);
  repeat->add_option("--runs", runs)->check(CLI::PositiveNumber);
  repeat->add_option("--threads", threads)->check(CLI::PositiveNumber);
  repeat->add_option("--base-seed", base_seed, "defaults to --seed");
  repeat->add_option("--out", repeat_out, "directory for run_NNN.csv traces")->required();

  auto* verify = app.add_subcommand("verify", "Numerical checks of the sampling identities");
  verify->require_subcommand(1);
  std::size_t obs_instances = 50, obs_n = 6, obs_t = 20;
  std::uint64_t verify_seed = 1;
  auto* obs1 = verify->add_subcommand("obs1", "closed-form vs iterated covariance on random histories");
  obs1->add_option("--instances", obs_instances)->check(CLI::PositiveNumber);
  obs1->add_option("--n", obs_n)->check(CLI::PositiveNumber);
  obs1->add_option("--t", obs_t);
  obs1->add_option("--seed", verify_seed);
  std::size_t thm_n = 5, thm_lambda = 20, thm_generations = 10, thm_samples = 200000;
  std::optional<std::size_t> thm_h;
  auto* thm1 = verify->add_subcommand("thm1", "matrix-free draws vs recorded vanilla covariance");
  thm1->set_help_flag("--help", "Print this help message and exit");
  thm1->add_option("--n", thm_n)->check(CLI::PositiveNumber);
  thm1->add_option("--lambda", thm_lambda);
  thm1->add_option("--generations", thm_generations);
  thm1->add_option("--samples", thm_samples)->check(CLI::Range(2, 100000000));
  thm1->add_option("--h", thm_h, "archive window; shorter than the history truncates it");
  thm1->add_option("--seed", verify_seed);

  std::vector<std::string> ecdf_files;
  std::string ecdf_out;
  std::size_t checkpoints = 100;
  auto* ecdf_cmd = app.add_subcommand("ecdf", "ECDF curves from trace files of one objective");
  ecdf_cmd->add_option("traces", ecdf_files)->required()->check(CLI::ExistingFile);
  ecdf_cmd->add_option("--out", ecdf_out, "CSV file (stdout when omitted)");
  ecdf_cmd->add_option("--checkpoints", checkpoints)->check(CLI::PositiveNumber);

  std::vector<std::string> summary_files;
  std::string summary_csv;
  auto* summarize_cmd = app.add_subcommand("summarize", "Mean and std of final errors per function/algorithm");
  summarize_cmd->add_option("traces", summary_files)->required()->check(CLI::ExistingFile);
  summarize_cmd->add_option("--out", summary_csv, "also write the table as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const RunRecord record = run_experiment(run_flags.build(run));
      if (run_out.empty()) {
        write_trace(std::cout, record);
      } else {
        write_trace_file(run_out, record);
        print_result(record);
      }
    } else if (*repeat) {
      const RunConfig config = repeat_flags.build(repeat);
      const auto records = repeat_runs(config, runs, base_seed.value_or(config.seed), threads);
      char name[32];
      for (std::size_t i = 0; i < records.size(); ++i) {
        std::snprintf(name, sizeof name, "run_%03zu.csv", i);
        write_trace_file(fs::path(repeat_out) / name, records[i]);
        print_result(records[i]);
      }
    } else if (*obs1) {
      Rng rng(verify_seed);
      double worst = 0.0;
      for (std::size_t k = 0; k < obs_instances; ++k) {
        GenerationHistory h;
        h.n = obs_n;
        const auto mu = 1 + static_cast<std::size_t>(rng.uniform(0, 6));
        h.weights.assign(mu, 1.0 / static_cast<double>(mu));
        h.c_1 = rng.uniform(0.0, 1.0);
        h.c_mu = rng.uniform(0.0, 1.0 - h.c_1);
        for (std::size_t g = 1; g <= obs_t; ++g) {
          ArchiveEntry e;
          e.gen = g;
          for (std::size_t j = 0; j < mu; ++j) e.d.push_back(rng.normal_vector(static_cast<Eigen::Index>(obs_n)));
          e.p_c = rng.normal_vector(static_cast<Eigen::Index>(obs_n));
          h.generations.push_back(std::move(e));
        }
        worst = std::max(worst, relative_frobenius(covariance_nonrecursive(h, obs_t),
                                                   covariance_recursive(h, obs_t)));
      }
      const bool pass = worst <= 1e-10;
      std::printf("obs1 instances=%zu n=%zu t=%zu worst_rel_frobenius=%.3e %s\n", obs_instances, obs_n, obs_t,
                  worst, pass ? "PASS" : "FAIL");
      return pass ? 0 : 1;
    } else if (*thm1) {
      ParamOverrides o;
      o.lambda = thm_lambda;
      o.h = thm_h.value_or(std::max<std::size_t>(thm_generations, 1));
      const StrategyParams params = derive_params(thm_n, o);
      Rng rng(verify_seed);
      const auto n = static_cast<Eigen::Index>(thm_n);
      Vector m0(n);
      for (Eigen::Index i = 0; i < n; ++i) m0[i] = rng.uniform(-0.2, 0.8);
      const auto history =
          record_vanilla_history(find_objective("ellipsoid", thm_n), params, m0, 1.0, thm_generations, rng);
      const auto report = theorem1_check(history, thm_generations, params, thm_samples, rng, true);
      std::printf("thm1 n=%zu lambda=%zu generations=%zu h=%zu samples=%zu rel_frobenius=%.4e "
                  "mean_max_abs=%.3e mean_bound=%.3e %s\n",
                  thm_n, params.lambda, thm_generations, params.h, report.sample_count, report.rel_frobenius,
                  report.mean_max_abs, report.mean_bound, report.pass ? "PASS" : "FAIL");
      return report.pass ? 0 : 1;
    } else if (*ecdf_cmd) {
      std::vector<RunSet> sets;
      for (auto& record : read_traces(ecdf_files)) {
        const std::string algorithm(to_string(record.config.algorithm));
        auto it = std::find_if(sets.begin(), sets.end(), [&](const RunSet& s) { return s.algorithm == algorithm; });
        if (it == sets.end()) {
          sets.push_back({algorithm, {}});
          it = std::prev(sets.end());
        }
        it->runs.push_back(std::move(record));
      }
      const auto curves = ecdf(sets, targets_for(sets), checkpoints);
      with_output(ecdf_out, [&](std::ostream& out) { write_ecdf_csv(out, curves); });
    } else if (*summarize_cmd) {
      const auto records = read_traces(summary_files);
      const auto rows = summarize(cells_from_runs(records));
      write_summary_text(std::cout, rows);
      if (!summary_csv.empty()) with_output(summary_csv, [&](std::ostream& out) { write_summary_csv(out, rows); });
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mfcma: error: %s\n", e.what());
    return 1;
  }
  return 0;
}
