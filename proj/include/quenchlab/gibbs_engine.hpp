#pragma once

// Spectral decomposition and everything downstream: partition functions,
// free energy density, Gibbs expectations, Duhamel products, and the
// Bogolyubov-type sandwich around the Duhamel self-product.

#include "quenchlab/spin_algebra.hpp"
#include "quenchlab/types.hpp"

namespace quenchlab {

struct SpectralDecomposition {
  RealVector eigenvalues;  // ascending
  OpMatrix eigenvectors;   // unitary, column k belongs to eigenvalue k

  Eigen::Index dim() const { return eigenvalues.size(); }
  // max |E_k|, the spectral norm of the decomposed operator
  double norm() const;
};

struct GibbsState {
  double beta = 1.0;
  SpectralDecomposition decomp;
  double log_z = 0.0;
  RealVector weights;  // e^{-beta E_k} / Z, sums to 1
  int n_sites = 1;
};

struct FreeEnergyDensity {
  double psi = 0.0;  // log Z / N
};

struct HarrisBounds {
  double lower = 0.0;    // <o^2> - (beta/12) <[o,[h,o]]>
  double duhamel = 0.0;  // (o,o)
  double upper = 0.0;    // <o^2>
};

// Dense Hermitian eigensolve with a deterministic phase convention: each
// column is rotated so its largest-modulus entry is real positive.
SpectralDecomposition diagonalize(const ManyBodyOperator& h);

// log Z by max-shift log-sum-exp; weights normalized explicitly.
GibbsState gibbs_state(const SpectralDecomposition& decomp, double beta, int n_sites);

FreeEnergyDensity free_energy_density(const GibbsState& state);

// sum_k w_k <v_k| o |v_k>; the imaginary residue must pass the reality
// check before being dropped.
double expectation(const GibbsState& state, const ManyBodyOperator& o);

// (o1, o2), defined by the spectral kernel that makes
// beta^2 (o1,o2) = (1/Z) d^2 Z/dx1 dx2 exact for H(x) = H - x1 o1 - x2 o2.
// Near-degenerate level pairs use the symmetric Taylor limit of the kernel.
double duhamel_pair(const GibbsState& state, const ManyBodyOperator& o1,
                    const ManyBodyOperator& o2);

// (o1,o2) - <o1><o2> = (1/beta^2) d^2 log Z / dx1 dx2.
double truncated_duhamel_pair(const GibbsState& state, const ManyBodyOperator& o1,
                              const ManyBodyOperator& o2);

// h must be the operator the state was built from (checked via its trace).
HarrisBounds harris_bounds(const GibbsState& state, const ManyBodyOperator& h,
                           const ManyBodyOperator& o);

}  // namespace quenchlab
