#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "espread/analysis.hpp"
#include "espread/io.hpp"
#include "espread/spreading.hpp"

namespace espread::harness {

struct RunConfig {
  int n = 1024;  // minimum matrix dimension; points auto-size upward
  bool n_auto = true;
  int band = 50;
  std::vector<double> s0_list{0.5, 1.0, 1.5};
  std::vector<double> fdot_list{5.0, 12.0};
  std::vector<double> x_list;          // optional: per-s0 drive rates from X targets
  std::vector<double> eps_list{0.75};  // quench strengths
  std::string mode = "all";            // driven | frozen | all (fig1)
  int realizations = 16;
  std::uint64_t master_seed = 1;
  double t_max_factor = 10.0;
  int sample_points = 40;
  std::string output_dir = "out";
  int workers = 0;  // 0 = hardware concurrency
  bool jitter = false;
  double lambda = 1.0;
  double hbar = 1.0;
  double accuracy = 1e-9;
  double fit_lo_factor = 2.0;   // fit window [fit_lo_factor * t_eps, ...]
  double fit_hi_factor = 8.0;   // ... fit_hi_factor * t_eps]
  double quench_t_max = 0.0;    // 0 = auto
  double chi2_threshold = 10.0;

  void validate() const;
  int effective_workers() const;
};

RunConfig config_from_key_values(const io::KeyValues& kv, RunConfig base = {});
io::KeyValues config_to_key_values(const RunConfig& config);

/// One ensemble-averaged curve plus bookkeeping of its members.
struct CurveResult {
  dynamics::SpreadingCurve mean;
  std::vector<dynamics::SpreadingCurve> members;  // realization order
  std::vector<std::uint64_t> seeds;               // successful members
  std::vector<std::uint64_t> excluded_seeds;      // failed after retry
  std::vector<std::string> flags;                 // failure notes
  std::vector<double> survival;                   // quench only (mean)
  int resolved_n = 0;
};

struct ExperimentRecord {
  std::string experiment;  // fig1 | fig2 | quench
  std::string version;
  RunConfig config;
  std::vector<CurveResult> curves;
  std::vector<analysis::DiffusionEstimate> fits;  // fig2
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
};

/// Driven vs frozen spreading for every (s0, fdot); the Wigner-rescaled
/// collapse data is produced by emit_plotdata.
ExperimentRecord run_fig1(const RunConfig& config);

/// Driven runs over the drive sweep with diffusion fits and (X, Y) scaling
/// coordinates per point.
ExperimentRecord run_fig2(const RunConfig& config);

/// Quench (sigma = 0) ensembles for every (s0, eps), with survival data.
ExperimentRecord run_quench_experiment(const RunConfig& config);

void save_record(const ExperimentRecord& record, const std::filesystem::path& dir);
ExperimentRecord load_record(const std::filesystem::path& dir);

/// Writes plot-ready series: fig1 -> (t/t_eps, dE2 * t_eps^2 / hbar^2) per
/// curve; fig2 -> (X, Y) per s0. Deterministic bytes; re-emission is
/// idempotent.
std::vector<std::filesystem::path> emit_plotdata(const ExperimentRecord& record,
                                                 const std::string& which,
                                                 const std::filesystem::path& out_dir);

/// Fixed-order parallel map: runs `task(i)` for i in [0, count) on a worker
/// pool; exceptions are rethrown after all tasks finish (first by index).
void parallel_for(int workers, std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace espread::harness
