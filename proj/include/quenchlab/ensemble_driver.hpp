#pragma once

// Disorder-ensemble orchestration over a ladder of system sizes: the
// variance-of-psi concentration check, the self-averaging trend of the
// order operator, lambda sweeps for the derivative identities, and the
// commutator/Cauchy diagnostics.

#include <cstdint>
#include <string>
#include <vector>

#include "quenchlab/estimators.hpp"
#include "quenchlab/model_family.hpp"

namespace quenchlab {

struct StudyConfig {
  std::vector<int> size_ladder;      // ascending
  double beta = 1.0;
  std::vector<double> lambda_grid;   // study-dependent meaning
  int samples_per_size = 100;
  std::uint64_t master_seed = 1;
  ModelFamilyConfig family;
  int threads = 1;
  double slope_threshold = -0.3;     // pass bound for decay fits
  bool compute_assumption2 = true;   // the double-commutator norm per sample

  void validate() const;
};

struct SizePointReport {
  int n = 0;
  double lambda = 0.0;
  double beta = 0.0;
  EstimateSE mean_psi, var_psi;
  double lemma1_bound = 0.0;  // 2 beta^2 C_phi^2 sigma^2 / N
  bool lemma1_ok = true;      // var_psi.value <= bound + 4 SE
  EstimateSE mean_order;
  EstimateSE var_order_total;   // E<O^2> - (E<O>)^2
  EstimateSE var_order_gibbs;   // E[<O^2> - <O>^2]
  EstimateSE var_order_sample;  // unbiased Var of <O>
  bool decomposition_ok = true;
  double assumption2_mean = 0.0;
  double assumption2_max = 0.0;
  int failed_samples = 0;
};

struct TrendVerdict {
  std::string quantity;
  double lambda = 0.0;
  double slope = 0.0;
  double slope_se = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

std::vector<SizePointReport> run_concentration_study(const StudyConfig& config);

struct TheoremStudyResult {
  std::vector<SizePointReport> reports;
  std::vector<TrendVerdict> verdicts;  // one per lambda
};

// lambda grid must exclude 0 (self-averaging is claimed off the symmetric
// point only).
TheoremStudyResult run_theorem_study(const StudyConfig& config);

struct SweepRow {
  int n = 0;
  double lambda = 0.0;
  EstimateSE mean_order;
  EstimateSE mean_psi;
  EstimateSE duhamel_term;        // N beta E[(O,O) - <O><O>]
  double d_order_fd = 0.0;        // centered difference of E<O> (interior points)
  double d_psi_fd = 0.0;          // centered difference of E psi
  bool has_fd = false;
  bool derivative_ok = true;      // |d_order_fd - duhamel_term| small
  bool psi_slope_ok = true;       // |d_psi_fd - beta E<O>| small
  double min_monotone_step = 0.0; // min over samples/grid of consecutive <O> increments
  double min_convexity = 0.0;     // min second difference of psi per sample
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool derivative_identity_ok = true;
  bool psi_slope_identity_ok = true;
  bool monotone_ok = true;
  bool convex_ok = true;
};

SweepResult run_lambda_sweep(const StudyConfig& config);

struct AssumptionRow {
  int n = 0;
  double a2_mean = 0.0;
  double a2_max = 0.0;
  double a2_mean_times_n = 0.0;
  EstimateSE p_n;            // E psi_N
  double p_increment = 0.0;  // p_n - previous ladder p_n (0 for the first)
};

std::vector<AssumptionRow> run_assumption_diagnostics(const StudyConfig& config);

// Per-sample measurement record shared by the studies and replica lab.
struct SampleMeasurement {
  double psi = 0.0;
  double order_mean = 0.0;
  double order_sq = 0.0;       // <O^2>
  double trunc_duhamel = 0.0;  // (O,O) - <O>^2
  double a2_norm = 0.0;        // ||[O,[H,O]]||
  bool ok = false;
  std::string error;
};

// One disorder sample at one (N, lambda); picks the diagonal fast path
// when the catalog and order operator allow it.
SampleMeasurement measure_sample(const InteractionCatalog& catalog, const DisorderSample& sample,
                                 const ModelFamilyConfig& family, const SiteSet& sites,
                                 double beta, double lambda, bool want_assumption2);

// Seed for sample index s of size point N under a master seed.
std::uint64_t size_sample_seed(std::uint64_t master_seed, int n, int sample_index);

}  // namespace quenchlab
