#pragma once

// n-replica systems sharing one disorder sample: overlap operators, RSB
// perturbations, the variance decomposition over Gibbs and disorder
// fluctuations, the Ghirlanda-Guerra ratio trend, and the probe for
// commuting the lambda -> 0 and N -> infinity limits.

#include <cstdint>
#include <string>
#include <vector>

#include "quenchlab/classical.hpp"
#include "quenchlab/ensemble_driver.hpp"

namespace quenchlab {

struct OverlapSpec {
  char axis = 'z';
  std::vector<std::vector<int>> supports;  // the collection D of site subsets
  int replica_a = 0;                       // overlap measured between these
  int replica_b = 1;                       //   two replica labels
  std::vector<std::pair<int, double>> powers_and_coeffs = {{1, 1.0}};  // RSB polynomial
};

struct ReplicaStudyConfig {
  StudyConfig base;
  int n_replicas = 2;

  enum class Supports { single_sites, catalog_supports } supports = Supports::single_sites;
  enum class Engine { auto_select, dense, classical } engine = Engine::auto_select;
  std::vector<std::pair<int, double>> rsb_terms = {{1, 1.0}};
  char overlap_axis = 'z';

  void validate() const;
  std::string overlap_id() const;  // short tag for reports
};

// Realize the support collection D for one size.
std::vector<std::vector<int>> realize_supports(const ReplicaStudyConfig& config,
                                               const InteractionCatalog& catalog, int n_sites);

// sum_alpha H(replica alpha), all replicas sharing h_base's couplings.
ManyBodyOperator replicate_hamiltonian(const ManyBodyOperator& h_base, int n_replicas);

// replicate(h_base) - N lambda rsb, N the per-replica site count.
ManyBodyOperator build_replica_hamiltonian(const ManyBodyOperator& h_base, int n_replicas,
                                           double lambda, const ManyBodyOperator& rsb);

// R = (1/|D|) sum_X S_X^{p,a} S_X^{p,b} on the n_replicas-fold space.
ManyBodyOperator overlap_operator(const OverlapSpec& spec, const SiteSet& sites, int n_replicas,
                                  SpinMagnitude spin);

// sum_a c_a R^a, with the norm bound sum_a |c_a| (max_X ||S_X^p||^2)^a
// verified against the exact operator norm.
ManyBodyOperator rsb_perturbation(const OverlapSpec& spec, const SiteSet& sites, int n_replicas,
                                  SpinMagnitude spin);

// Permutation of replica labels as a matrix on the replicated basis;
// perm[alpha] is where replica alpha's configuration goes.
ManyBodyOperator replica_permutation_operator(int n_sites, int local_dim, int n_replicas,
                                              const std::vector<int>& perm);

struct RsbPoint {
  int n = 0;
  double lambda = 0.0;
  double beta = 0.0;
  EstimateSE mean_rsb;      // E <R>
  EstimateSE gibbs_term;    // E [<R^2> - <R>^2]
  EstimateSE sample_term;   // Var over samples of <R>
  EstimateSE total;         // E <R^2> - (E <R>)^2
  EstimateSE gg_ratio;      // gibbs / total where defined
  bool ratio_defined = false;
  bool additivity_ok = true;
  int failed_samples = 0;
};

using RSBReport = std::vector<RsbPoint>;

// Per-sample replica measurement at one (N, lambda).
struct ReplicaMeasurement {
  double mean_rsb = 0.0;
  double mean_rsb2 = 0.0;
  bool ok = false;
  std::string error;
};

ReplicaMeasurement measure_replica_sample(const ReplicaStudyConfig& config,
                                          const InteractionCatalog& catalog,
                                          const DisorderSample& sample, const SiteSet& sites,
                                          double lambda);

// Both variance terms and their sum per (N, lambda in base grid).
RSBReport chatterjee_decomposition(const ReplicaStudyConfig& config);

// Classical Gaussian-disorder configuration at lambda = 0 with D matching
// the catalog supports; reports the Gibbs/total ratio per N, no pass flag.
RSBReport gg_ratio_trend(const ReplicaStudyConfig& config);

struct CommutativityPoint {
  int n = 0;
  EstimateSE at_zero;      // E<R> at lambda = 0
  EstimateSE plus_limit;   // extrapolation lambda -> 0+
  EstimateSE minus_limit;  // extrapolation lambda -> 0-
  double gap_plus = 0.0;   // |plus_limit - at_zero|
  double gap_minus = 0.0;
  double gap_plus_se = 0.0;
  double gap_minus_se = 0.0;
};

// base.lambda_grid supplies the positive probe magnitudes; the two
// smallest are used for a two-point extrapolation on each side of 0.
std::vector<CommutativityPoint> limit_commutativity_probe(const ReplicaStudyConfig& config);

}  // namespace quenchlab
