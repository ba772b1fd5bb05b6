#include "quenchlab/replica_lab.hpp"

#include <algorithm>
#include <cmath>

#include "quenchlab/parallel.hpp"
#include "quenchlab/rng.hpp"

namespace quenchlab {

void ReplicaStudyConfig::validate() const {
  base.validate();
  if (n_replicas < 2) throw Error("replica config: need at least 2 replicas");
  for (const auto& [a, c] : rsb_terms)
    if (a < 1) throw Error("replica config: rsb powers must be >= 1");
  if (overlap_axis != 'x' && overlap_axis != 'y' && overlap_axis != 'z')
    throw Error("replica config: overlap axis must be x, y or z");
}

std::string ReplicaStudyConfig::overlap_id() const {
  std::string id(1, overlap_axis);
  id += supports == Supports::single_sites ? "-sites" : "-catalog";
  for (const auto& [a, c] : rsb_terms) id += "-p" + std::to_string(a);
  return id;
}

std::vector<std::vector<int>> realize_supports(const ReplicaStudyConfig& config,
                                               const InteractionCatalog& catalog, int n_sites) {
  std::vector<std::vector<int>> supports;
  if (config.supports == ReplicaStudyConfig::Supports::single_sites) {
    for (int j = 0; j < n_sites; ++j) supports.push_back({j});
  } else {
    for (const auto& term : catalog.terms) supports.push_back(term.support);
    if (supports.empty()) throw Error("catalog_supports overlap needs a nonempty catalog");
  }
  return supports;
}

ManyBodyOperator replicate_hamiltonian(const ManyBodyOperator& h_base, int n_replicas) {
  if (n_replicas < 1) throw Error("replicate_hamiltonian: need at least 1 replica");
  const int n = h_base.n_sites;
  const int d = h_base.local_dim;
  ManyBodyOperator total = many_body_zero(n * n_replicas, d);
  for (int alpha = 0; alpha < n_replicas; ++alpha) {
    std::vector<int> support(n);
    for (int j = 0; j < n; ++j) support[j] = alpha * n + j;
    add_embedded_block(total.entries, 1.0, support, h_base.entries, n * n_replicas, d);
  }
  total.hermitian = h_base.hermitian;
  return total;
}

ManyBodyOperator build_replica_hamiltonian(const ManyBodyOperator& h_base, int n_replicas,
                                           double lambda, const ManyBodyOperator& rsb) {
  ManyBodyOperator total = replicate_hamiltonian(h_base, n_replicas);
  if (lambda != 0.0) {
    if (rsb.dim() != total.dim())
      throw Error("build_replica_hamiltonian: rsb dimension mismatch");
    total = total + (-static_cast<double>(h_base.n_sites) * lambda) * rsb;
  }
  return total;
}

ManyBodyOperator overlap_operator(const OverlapSpec& spec, const SiteSet& sites, int n_replicas,
                                  SpinMagnitude spin) {
  if (spec.supports.empty()) throw Error("overlap_operator: empty support collection");
  if (spec.replica_a == spec.replica_b || spec.replica_a < 0 || spec.replica_b < 0 ||
      spec.replica_a >= n_replicas || spec.replica_b >= n_replicas)
    throw Error("overlap_operator: invalid replica pair");

  const int n = sites.n_sites;
  const int d = spin.local_dim();
  const auto triple = spin_matrices(spin);
  const OpMatrix& local = (spec.axis == 'x')   ? triple.sx.entries
                          : (spec.axis == 'y') ? triple.sy.entries
                                               : triple.sz.entries;
  const int lo = std::min(spec.replica_a, spec.replica_b);
  const int hi = std::max(spec.replica_a, spec.replica_b);

  ManyBodyOperator r = many_body_zero(n * n_replicas, d);
  const double norm = 1.0 / static_cast<double>(spec.supports.size());
  for (const auto& x : spec.supports) {
    if (x.empty()) throw Error("overlap_operator: empty support subset");
    // S_X^p on one replica factor, then the same on the other; combined
    // support stays ascending because the replica blocks are disjoint.
    OpMatrix block_x = local;
    for (std::size_t k = 1; k < x.size(); ++k) block_x = kron(block_x, local);
    std::vector<int> support;
    for (int site : x) support.push_back(lo * n + site);
    for (int site : x) support.push_back(hi * n + site);
    add_embedded_block(r.entries, norm, support, kron(block_x, block_x), n * n_replicas, d);
  }
  r.hermitian = true;
  return r;
}

ManyBodyOperator rsb_perturbation(const OverlapSpec& spec, const SiteSet& sites, int n_replicas,
                                  SpinMagnitude spin) {
  const ManyBodyOperator r = overlap_operator(spec, sites, n_replicas, spin);

  ManyBodyOperator result = many_body_zero(sites.n_sites * n_replicas, spin.local_dim());
  std::size_t max_x = 0;
  for (const auto& x : spec.supports) max_x = std::max(max_x, x.size());
  double bound = 0.0;
  const double base_norm = std::pow(spin.value(), 2.0 * static_cast<double>(max_x));

  for (const auto& [a, c] : spec.powers_and_coeffs) {
    if (a < 1) throw Error("rsb_perturbation: powers must be >= 1");
    if (c == 0.0) continue;
    ManyBodyOperator power = r;
    for (int k = 1; k < a; ++k) power = power * r;
    power.hermitian = true;  // powers of a Hermitian matrix
    result = result + c * power;
    bound += std::abs(c) * std::pow(base_norm, a);
  }
  result.hermitian = true;

  if (operator_norm(result) > bound + 1e-9)
    throw Error("rsb_perturbation: norm exceeds its declared bound");
  return result;
}

ManyBodyOperator replica_permutation_operator(int n_sites, int local_dim, int n_replicas,
                                              const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != n_replicas)
    throw Error("replica permutation has the wrong length");
  std::vector<bool> seen(n_replicas, false);
  for (int p : perm) {
    if (p < 0 || p >= n_replicas || seen[p]) throw Error("invalid replica permutation");
    seen[p] = true;
  }

  ManyBodyOperator op = many_body_zero(n_sites * n_replicas, local_dim);
  const Eigen::Index dim = op.dim();
  const int total_sites = n_sites * n_replicas;

  std::vector<Eigen::Index> stride(total_sites);
  Eigen::Index acc = 1;
  for (int j = total_sites - 1; j >= 0; --j) {
    stride[j] = acc;
    acc *= local_dim;
  }

  for (Eigen::Index s = 0; s < dim; ++s) {
    Eigen::Index target = 0;
    for (int alpha = 0; alpha < n_replicas; ++alpha)
      for (int j = 0; j < n_sites; ++j) {
        const Eigen::Index digit = (s / stride[alpha * n_sites + j]) % local_dim;
        target += digit * stride[perm[alpha] * n_sites + j];
      }
    op.entries(target, s) = 1.0;
  }
  op.hermitian = false;
  return op;
}

namespace {

bool replica_classical_eligible(const ReplicaStudyConfig& config,
                                const InteractionCatalog& catalog) {
  return config.n_replicas == 2 && config.overlap_axis == 'z' &&
         config.base.family.spin.two_s == 1 && catalog_is_classical(catalog);
}

}  // namespace

ReplicaMeasurement measure_replica_sample(const ReplicaStudyConfig& config,
                                          const InteractionCatalog& catalog,
                                          const DisorderSample& sample, const SiteSet& sites,
                                          double lambda) {
  ReplicaMeasurement m;
  try {
    const int n = sites.n_sites;
    const auto supports = realize_supports(config, catalog, n);
    const bool classical = replica_classical_eligible(config, catalog);
    const bool want_classical = config.engine != ReplicaStudyConfig::Engine::dense;

    if (config.engine == ReplicaStudyConfig::Engine::classical && !classical)
      throw Error("classical replica engine requested for a non-classical model");

    if (classical && want_classical) {
      const RealVector h =
          classical_hamiltonian_diagonal(catalog, sample, config.base.family.spin, sites);
      const ClassicalOverlap overlap = overlap_from_supports(supports, n);
      RsbPolynomial rsb;
      rsb.terms = config.rsb_terms;
      const TwoReplicaMoments moments =
          classical_two_replica(h, config.base.beta, n, overlap, rsb, lambda);
      m.mean_rsb = moments.mean_rsb;
      m.mean_rsb2 = moments.mean_rsb2;
    } else {
      OverlapSpec spec;
      spec.axis = config.overlap_axis;
      spec.supports = supports;
      spec.powers_and_coeffs = config.rsb_terms;
      const ManyBodyOperator h_base =
          build_hamiltonian(catalog, sample, config.base.family.spin, sites);
      const ManyBodyOperator rsb =
          rsb_perturbation(spec, sites, config.n_replicas, config.base.family.spin);
      const ManyBodyOperator h_rep =
          build_replica_hamiltonian(h_base, config.n_replicas, lambda, rsb);
      const GibbsState state =
          gibbs_state(diagonalize(h_rep), config.base.beta, n * config.n_replicas);
      m.mean_rsb = expectation(state, rsb);
      m.mean_rsb2 = expectation(state, rsb * rsb);
    }
    m.ok = true;
  } catch (const std::exception& e) {
    m.ok = false;
    m.error = e.what();
  }
  return m;
}

namespace {

struct ReplicaPointData {
  std::vector<std::vector<double>> rows;  // <R>, <R>^2, <R^2>, gibbs
  int failed = 0;
  std::string first_error;
};

ReplicaPointData collect_replica_point(const ReplicaStudyConfig& config,
                                       const InteractionCatalog& catalog, const SiteSet& sites,
                                       double lambda) {
  const int n_samples = config.base.samples_per_size;
  std::vector<ReplicaMeasurement> slots(n_samples);
  parallel_for(n_samples, config.base.threads, [&](int s) {
    const DisorderSample sample = draw_sample_from_seed(
        catalog, size_sample_seed(config.base.master_seed, sites.n_sites, s));
    slots[s] = measure_replica_sample(config, catalog, sample, sites, lambda);
  });

  ReplicaPointData data;
  for (int s = 0; s < n_samples; ++s) {
    const auto& m = slots[s];
    if (!m.ok) {
      ++data.failed;
      if (data.first_error.empty())
        data.first_error = "sample " + std::to_string(s) + ": " + m.error;
      continue;
    }
    data.rows.push_back(
        {m.mean_rsb, m.mean_rsb * m.mean_rsb, m.mean_rsb2, m.mean_rsb2 - m.mean_rsb * m.mean_rsb});
  }
  if (100 * data.failed > n_samples)
    throw Error("more than 1% of replica samples failed at N=" + std::to_string(sites.n_sites) +
                " (first: " + data.first_error + ")");
  return data;
}

RsbPoint aggregate_replica_point(const ReplicaStudyConfig& config, const ReplicaPointData& data,
                                 int n, double lambda) {
  RsbPoint point;
  point.n = n;
  point.lambda = lambda;
  point.beta = config.base.beta;
  point.failed_samples = data.failed;

  point.mean_rsb = jackknife_mean(data.rows, 0);
  point.gibbs_term = jackknife_mean(data.rows, 3);
  point.sample_term = jackknife_variance(data.rows, 0, 1);
  point.total = jackknife(data.rows, [](const std::vector<double>& s, int n_ok) {
    const double mean_r = s[0] / n_ok;
    return s[2] / n_ok - mean_r * mean_r;
  });

  const double gap =
      std::abs(point.total.value - point.gibbs_term.value - point.sample_term.value);
  const double combined = std::sqrt(point.total.se * point.total.se +
                                    point.gibbs_term.se * point.gibbs_term.se +
                                    point.sample_term.se * point.sample_term.se);
  point.additivity_ok = gap <= 4.0 * combined + 1e-12;

  if (point.total.value > 1e-14) {
    point.ratio_defined = true;
    point.gg_ratio = jackknife(data.rows, [](const std::vector<double>& s, int n_ok) {
      const double mean_r = s[0] / n_ok;
      const double total = s[2] / n_ok - mean_r * mean_r;
      if (total <= 0.0) return 0.0;
      return (s[3] / n_ok) / total;
    });
  }
  return point;
}

}  // namespace

RSBReport chatterjee_decomposition(const ReplicaStudyConfig& config) {
  config.validate();
  const std::vector<double> grid =
      config.base.lambda_grid.empty() ? std::vector<double>{0.0} : config.base.lambda_grid;

  RSBReport report;
  for (int n : config.base.size_ladder) {
    const SiteSet sites = family_sites(config.base.family, n);
    const InteractionCatalog catalog = realize_catalog(config.base.family, sites);
    for (double lambda : grid) {
      const ReplicaPointData data = collect_replica_point(config, catalog, sites, lambda);
      report.push_back(aggregate_replica_point(config, data, n, lambda));
    }
  }
  return report;
}

RSBReport gg_ratio_trend(const ReplicaStudyConfig& config) {
  config.validate();
  if (config.base.family.dist.kind != CouplingDistribution::Kind::gaussian)
    throw Error("gg ratio trend requires Gaussian disorder");
  if (config.supports != ReplicaStudyConfig::Supports::catalog_supports)
    throw Error("gg ratio trend requires the overlap supports to match the catalog");

  RSBReport report;
  for (int n : config.base.size_ladder) {
    const SiteSet sites = family_sites(config.base.family, n);
    const InteractionCatalog catalog = realize_catalog(config.base.family, sites);
    if (!catalog_is_classical(catalog)) throw Error("gg ratio trend requires a classical model");
    const ReplicaPointData data = collect_replica_point(config, catalog, sites, 0.0);
    report.push_back(aggregate_replica_point(config, data, n, 0.0));
  }
  return report;
}

std::vector<CommutativityPoint> limit_commutativity_probe(const ReplicaStudyConfig& config) {
  config.validate();
  std::vector<double> magnitudes;
  for (double lambda : config.base.lambda_grid)
    if (lambda > 0.0) magnitudes.push_back(lambda);
  std::sort(magnitudes.begin(), magnitudes.end());
  magnitudes.erase(std::unique(magnitudes.begin(), magnitudes.end()), magnitudes.end());
  if (magnitudes.size() < 2)
    throw Error("commutativity probe: need at least 2 positive lambda magnitudes");
  const double l1 = magnitudes[0];
  const double l2 = magnitudes[1];

  // Two-point extrapolation f(0) ~ (l2 f(l1) - l1 f(l2)) / (l2 - l1),
  // applied separately on each side of 0.
  const double c1 = l2 / (l2 - l1);
  const double c2 = -l1 / (l2 - l1);

  std::vector<CommutativityPoint> points;
  for (int n : config.base.size_ladder) {
    const SiteSet sites = family_sites(config.base.family, n);
    const InteractionCatalog catalog = realize_catalog(config.base.family, sites);

    auto mean_at = [&](double lambda) {
      const ReplicaPointData data = collect_replica_point(config, catalog, sites, lambda);
      return aggregate_replica_point(config, data, n, lambda).mean_rsb;
    };

    const EstimateSE at_zero = mean_at(0.0);
    const EstimateSE p1 = mean_at(l1), p2 = mean_at(l2);
    const EstimateSE m1 = mean_at(-l1), m2 = mean_at(-l2);

    CommutativityPoint point;
    point.n = n;
    point.at_zero = at_zero;
    point.plus_limit = {c1 * p1.value + c2 * p2.value,
                        std::sqrt(c1 * c1 * p1.se * p1.se + c2 * c2 * p2.se * p2.se)};
    point.minus_limit = {c1 * m1.value + c2 * m2.value,
                         std::sqrt(c1 * c1 * m1.se * m1.se + c2 * c2 * m2.se * m2.se)};
    point.gap_plus = std::abs(point.plus_limit.value - at_zero.value);
    point.gap_minus = std::abs(point.minus_limit.value - at_zero.value);
    point.gap_plus_se = std::sqrt(point.plus_limit.se * point.plus_limit.se +
                                  at_zero.se * at_zero.se);
    point.gap_minus_se = std::sqrt(point.minus_limit.se * point.minus_limit.se +
                                   at_zero.se * at_zero.se);
    points.push_back(point);
  }
  return points;
}

}  // namespace quenchlab
