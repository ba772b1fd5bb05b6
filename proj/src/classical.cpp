#include "quenchlab/classical.hpp"

#include <bit>
#include <cmath>

namespace quenchlab {

static bool block_is_diagonal(const OpMatrix& block) {
  for (Eigen::Index r = 0; r < block.rows(); ++r)
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
      if (r == c) {
        if (block(r, c).imag() != 0.0) return false;
      } else if (block(r, c) != cxd(0.0, 0.0)) {
        return false;
      }
    }
  return true;
}

bool catalog_is_classical(const InteractionCatalog& catalog) {
  for (const auto& term : catalog.terms) {
    switch (term.phi.kind) {
      case PhiSpec::Kind::axis_product:
      case PhiSpec::Kind::single_site:
        if (term.axis != 'z') return false;
        break;
      case PhiSpec::Kind::heis_exchange:
        return false;
      case PhiSpec::Kind::custom:
        if (!block_is_diagonal(term.phi.custom_block)) return false;
        break;
    }
  }
  return true;
}

static Eigen::Index power_dim(int local_dim, int n_sites) {
  Eigen::Index dim = 1;
  for (int j = 0; j < n_sites; ++j) {
    dim *= local_dim;
    if (dim > (Eigen::Index{1} << 26)) throw Error("classical enumeration too large");
  }
  return dim;
}

RealVector classical_hamiltonian_diagonal(const InteractionCatalog& catalog,
                                          const DisorderSample& sample, SpinMagnitude spin,
                                          const SiteSet& sites) {
  if (sample.values.size() != catalog.terms.size())
    throw Error("disorder sample not aligned with catalog");
  if (!catalog_is_classical(catalog)) throw Error("catalog is not diagonal in the z basis");
  validate_catalog(catalog, sites.n_sites);

  const int n = sites.n_sites;
  const int d = spin.local_dim();
  const double s_val = spin.value();
  const Eigen::Index dim = power_dim(d, n);

  std::vector<Eigen::Index> stride(n);
  Eigen::Index acc = 1;
  for (int j = n - 1; j >= 0; --j) {
    stride[j] = acc;
    acc *= d;
  }

  RealVector h = RealVector::Zero(dim);
  for (std::size_t t = 0; t < catalog.terms.size(); ++t) {
    const auto& term = catalog.terms[t];
    const double j_val = sample.values[t];
    if (j_val == 0.0) continue;
    for (Eigen::Index s = 0; s < dim; ++s) {
      double phi;
      if (term.phi.kind == PhiSpec::Kind::custom) {
        Eigen::Index idx = 0;
        for (int site : term.support) idx = idx * d + (s / stride[site]) % d;
        phi = term.phi.custom_block(idx, idx).real();
      } else {
        phi = 1.0;
        for (int site : term.support) phi *= s_val - static_cast<double>((s / stride[site]) % d);
      }
      h(s) += j_val * phi;
    }
  }
  return h;
}

RealVector classical_order_diagonal(const std::vector<double>& weights, SpinMagnitude spin,
                                    const SiteSet& sites) {
  const int n = sites.n_sites;
  if (static_cast<int>(weights.size()) != n)
    throw Error("order weights length does not match the site count");
  const int d = spin.local_dim();
  const double s_val = spin.value();
  const Eigen::Index dim = power_dim(d, n);

  RealVector o = RealVector::Zero(dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    double sum = 0.0;
    Eigen::Index rem = s;
    for (int j = n - 1; j >= 0; --j) {
      sum += weights[j] * (s_val - static_cast<double>(rem % d));
      rem /= d;
    }
    o(s) = sum / n;
  }
  return o;
}

ClassicalGibbs classical_gibbs(const RealVector& h_diag, double beta, int n_sites) {
  if (!(beta > 0.0)) throw Error("classical_gibbs: beta must be positive");
  if (h_diag.size() == 0) throw Error("classical_gibbs: empty diagonal");

  ClassicalGibbs state;
  state.beta = beta;
  state.n_sites = n_sites;
  const double e_min = h_diag.minCoeff();
  state.weights = (-beta * (h_diag.array() - e_min)).exp();
  const double z_shift = state.weights.sum();
  state.log_z = -beta * e_min + std::log(z_shift);
  state.weights /= z_shift;
  return state;
}

double classical_expectation(const ClassicalGibbs& state, const RealVector& o_diag) {
  if (o_diag.size() != state.weights.size()) throw Error("classical_expectation: size mismatch");
  return state.weights.dot(o_diag);
}

double classical_duhamel(const ClassicalGibbs& state, const RealVector& o1,
                         const RealVector& o2) {
  if (o1.size() != state.weights.size() || o2.size() != state.weights.size())
    throw Error("classical_duhamel: size mismatch");
  return (state.weights.array() * o1.array() * o2.array()).sum();
}

double classical_truncated_duhamel(const ClassicalGibbs& state, const RealVector& o1,
                                   const RealVector& o2) {
  return classical_duhamel(state, o1, o2) -
         classical_expectation(state, o1) * classical_expectation(state, o2);
}

HarrisBounds classical_harris(const ClassicalGibbs& state, const RealVector& o_diag) {
  const double second = classical_duhamel(state, o_diag, o_diag);
  return {second, second, second};
}

ClassicalFastPathOutput classical_fast_path(const RealVector& h_diag,
                                            const std::vector<RealVector>& observables,
                                            double beta, int n_sites) {
  const ClassicalGibbs state = classical_gibbs(h_diag, beta, n_sites);
  ClassicalFastPathOutput out;
  out.log_z = state.log_z;
  out.psi = state.log_z / n_sites;
  for (const RealVector& o : observables) {
    if (o.size() != h_diag.size())
      throw Error("classical fast path: observable not diagonal over the same basis");
    out.means.push_back(classical_expectation(state, o));
    out.harris.push_back(classical_harris(state, o));
    out.second_moments.push_back(out.harris.back().upper);
  }
  return out;
}

double ClassicalOverlap::value(std::uint64_t x) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < masks.size(); ++k) {
    const int parity = std::popcount(x & masks[k]) & 1;
    sum += parity ? -magnitudes[k] : magnitudes[k];
  }
  return sum * inv_size;
}

ClassicalOverlap overlap_from_supports(const std::vector<std::vector<int>>& supports,
                                       int n_sites) {
  if (supports.empty()) throw Error("overlap support collection is empty");
  if (n_sites > 63) throw Error("overlap mask limited to 63 sites");
  ClassicalOverlap overlap;
  overlap.n_sites = n_sites;
  overlap.inv_size = 1.0 / static_cast<double>(supports.size());
  for (const auto& x : supports) {
    if (x.empty()) throw Error("overlap support subset is empty");
    std::uint64_t mask = 0;
    for (int site : x) {
      if (site < 0 || site >= n_sites) throw Error("overlap support site out of range");
      mask |= std::uint64_t{1} << (n_sites - 1 - site);
    }
    overlap.masks.push_back(mask);
    overlap.magnitudes.push_back(std::pow(0.25, static_cast<double>(x.size())));
  }
  return overlap;
}

double RsbPolynomial::eval(double r) const {
  double sum = 0.0;
  for (const auto& [a, c] : terms) sum += c * std::pow(r, a);
  return sum;
}

TwoReplicaMoments classical_two_replica(const RealVector& h_diag, double beta, int n_sites,
                                        const ClassicalOverlap& overlap, const RsbPolynomial& rsb,
                                        double lambda) {
  const Eigen::Index dim = h_diag.size();
  if (dim != (Eigen::Index{1} << n_sites))
    throw Error("two-replica path requires a spin-1/2 diagonal");
  if (overlap.n_sites != n_sites) throw Error("overlap built for a different site count");
  for (const auto& [a, c] : rsb.terms)
    if (a < 1) throw Error("rsb powers must be >= 1");

  // Per-replica Boltzmann factors, shifted by the single-replica minimum.
  const double e_min = h_diag.minCoeff();
  const RealVector u = (-beta * (h_diag.array() - e_min)).exp();

  // R and the coupling weight depend on x = s1 ^ s2 only.
  RealVector rsb_by_x(dim), couple_by_x(dim);
  double couple_max = -std::numeric_limits<double>::infinity();
  for (Eigen::Index x = 0; x < dim; ++x) {
    const double r = rsb.eval(overlap.value(static_cast<std::uint64_t>(x)));
    rsb_by_x(x) = r;
    const double arg = beta * n_sites * lambda * r;
    couple_by_x(x) = arg;
    couple_max = std::max(couple_max, arg);
  }
  for (Eigen::Index x = 0; x < dim; ++x) couple_by_x(x) = std::exp(couple_by_x(x) - couple_max);

  double z = 0.0, sum_r = 0.0, sum_r2 = 0.0;
  for (Eigen::Index s1 = 0; s1 < dim; ++s1) {
    const double u1 = u(s1);
    if (u1 == 0.0) continue;
    for (Eigen::Index s2 = 0; s2 < dim; ++s2) {
      const Eigen::Index x = s1 ^ s2;
      const double w = u1 * u(s2) * couple_by_x(x);
      const double r = rsb_by_x(x);
      z += w;
      sum_r += w * r;
      sum_r2 += w * r * r;
    }
  }

  TwoReplicaMoments moments;
  moments.log_z2 = -2.0 * beta * e_min + couple_max + std::log(z);
  moments.mean_rsb = sum_r / z;
  moments.mean_rsb2 = sum_r2 / z;
  return moments;
}

}  // namespace quenchlab
