#pragma once

// Diagonal (classical) fast path: Hamiltonians diagonal in the product
// z basis evaluated by direct enumeration of basis states, plus the
// two-replica engine used by the overlap studies. Replica enumeration is
// spin-1/2 only; the single-replica path handles any local dimension.

#include <cstdint>
#include <vector>

#include "quenchlab/disorder.hpp"
#include "quenchlab/gibbs_engine.hpp"
#include "quenchlab/model_builder.hpp"

namespace quenchlab {

// True when every catalog term is diagonal in the product z basis.
bool catalog_is_classical(const InteractionCatalog& catalog);

// h[s] = sum_t J_t phi_t(s) over base-(2S+1) digit strings s; site 0 is
// the most significant digit, digit g means m = S - g.
RealVector classical_hamiltonian_diagonal(const InteractionCatalog& catalog,
                                          const DisorderSample& sample, SpinMagnitude spin,
                                          const SiteSet& sites);

// o[s] = (1/N) sum_j a_j m_j(s) for a z-axis spin density.
RealVector classical_order_diagonal(const std::vector<double>& weights, SpinMagnitude spin,
                                    const SiteSet& sites);

struct ClassicalGibbs {
  double beta = 1.0;
  double log_z = 0.0;
  int n_sites = 1;
  RealVector weights;  // normalized basis-state probabilities
};

ClassicalGibbs classical_gibbs(const RealVector& h_diag, double beta, int n_sites);

double classical_expectation(const ClassicalGibbs& state, const RealVector& o_diag);

// Commuting observables: (o1,o2) = <o1 o2>.
double classical_duhamel(const ClassicalGibbs& state, const RealVector& o1, const RealVector& o2);
double classical_truncated_duhamel(const ClassicalGibbs& state, const RealVector& o1,
                                   const RealVector& o2);

// Everything commutes, so lower = duhamel = upper = <o^2>.
HarrisBounds classical_harris(const ClassicalGibbs& state, const RealVector& o_diag);

struct ClassicalFastPathOutput {
  double log_z = 0.0;
  double psi = 0.0;                   // log_z / n_sites
  std::vector<double> means;          // <o> per observable
  std::vector<double> second_moments; // <o^2> per observable
  std::vector<HarrisBounds> harris;   // degenerate triples, all equal to <o^2>
};

// Bundled single-call evaluation for simultaneously diagonal inputs: Z,
// psi, and per-observable moments by direct weighted sums over basis
// states. Throws when an observable length differs from the Hamiltonian.
ClassicalFastPathOutput classical_fast_path(const RealVector& h_diag,
                                            const std::vector<RealVector>& observables,
                                            double beta, int n_sites);

// Spin-1/2 overlap between two replica configurations, evaluated from the
// XOR of their bit strings: R(s1,s2) = (1/|D|) sum_X (1/4)^{|X|} parity.
struct ClassicalOverlap {
  int n_sites = 0;
  std::vector<std::uint64_t> masks;   // bit mask per support X
  std::vector<double> magnitudes;     // (1/4)^{|X|} per support
  double inv_size = 0.0;              // 1 / |D|

  double value(std::uint64_t x) const;  // x = s1 ^ s2
};

ClassicalOverlap overlap_from_supports(const std::vector<std::vector<int>>& supports, int n_sites);

struct RsbPolynomial {
  std::vector<std::pair<int, double>> terms;  // (power a >= 1, coefficient c_a)

  double eval(double r) const;
};

struct TwoReplicaMoments {
  double log_z2 = 0.0;   // log of the two-replica partition function
  double mean_rsb = 0.0; // <RSB(R)>
  double mean_rsb2 = 0.0;
};

// Two replicas sharing one h_diag, coupled through e^{beta N lambda RSB(R)}.
// Enumerates all 2^{2N} pairs; R depends on s1^s2 only, so the coupling
// factor is precomputed per XOR value.
TwoReplicaMoments classical_two_replica(const RealVector& h_diag, double beta, int n_sites,
                                        const ClassicalOverlap& overlap, const RsbPolynomial& rsb,
                                        double lambda);

}  // namespace quenchlab
