#pragma once

// Independent reference computations for the numerical tests. Everything
// here is evaluated in long double through plain eigendecompositions, so a
// double-precision production value can be checked at 1e-6 relative without
// the oracle's own noise mattering.

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "quenchlab/rng.hpp"
#include "quenchlab/spin_algebra.hpp"

namespace oracle {

using LongScalar = std::complex<long double>;
using LongMatrix = Eigen::Matrix<LongScalar, Eigen::Dynamic, Eigen::Dynamic>;
using LongVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

// Deterministic dense Hermitian matrix with O(1) Gaussian entries.
inline quenchlab::OpMatrix random_hermitian(int dim, std::uint64_t seed) {
  quenchlab::OpMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      const std::uint64_t idx = static_cast<std::uint64_t>(i) * dim + j;
      const double re = quenchlab::standard_normal(quenchlab::hash_combine(seed, 4 * idx),
                                                   quenchlab::hash_combine(seed, 4 * idx + 1));
      if (i == j) {
        m(i, i) = re;
      } else {
        const double im =
            quenchlab::standard_normal(quenchlab::hash_combine(seed, 4 * idx + 2),
                                       quenchlab::hash_combine(seed, 4 * idx + 3));
        m(i, j) = quenchlab::cxd(re, im) * 0.5;
        m(j, i) = std::conj(m(i, j));
      }
    }
  }
  return m;
}

inline quenchlab::ManyBodyOperator random_hermitian_op(int n_sites, int local_dim,
                                                       std::uint64_t seed) {
  quenchlab::ManyBodyOperator op;
  op.n_sites = n_sites;
  op.local_dim = local_dim;
  op.hermitian = true;
  int dim = 1;
  for (int i = 0; i < n_sites; ++i) dim *= local_dim;
  op.entries = random_hermitian(dim, seed);
  return op;
}

inline LongMatrix widen(const quenchlab::OpMatrix& m) {
  LongMatrix out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      out(i, j) = LongScalar(static_cast<long double>(m(i, j).real()),
                             static_cast<long double>(m(i, j).imag()));
  return out;
}

// log Tr exp(-beta h), shifted by the ground state inside the sum.
inline long double log_partition(const LongMatrix& h, long double beta) {
  Eigen::SelfAdjointEigenSolver<LongMatrix> solver(h, Eigen::EigenvaluesOnly);
  const LongVector e = solver.eigenvalues();
  const long double e_min = e.minCoeff();
  long double sum = 0.0L;
  for (Eigen::Index k = 0; k < e.size(); ++k) sum += std::exp(-beta * (e(k) - e_min));
  return -beta * e_min + std::log(sum);
}

// d log Z / dx at x = 0 for H(x) = h - x o, central difference. Equals
// beta <o> at the unperturbed state.
inline long double logz_first_difference(const quenchlab::OpMatrix& h,
                                         const quenchlab::OpMatrix& o, long double beta,
                                         long double step) {
  const LongMatrix hl = widen(h), ol = widen(o);
  const long double lp = log_partition(hl - step * ol, beta);
  const long double lm = log_partition(hl + step * ol, beta);
  return (lp - lm) / (2.0L * step);
}

// Second central difference of Z(x)/Z(0) for H(x) = h - x o. Equals
// beta^2 (o, o) at the unperturbed state.
inline long double z_second_difference(const quenchlab::OpMatrix& h, const quenchlab::OpMatrix& o,
                                       long double beta, long double step) {
  const LongMatrix hl = widen(h), ol = widen(o);
  const long double l0 = log_partition(hl, beta);
  const long double lp = log_partition(hl - step * ol, beta);
  const long double lm = log_partition(hl + step * ol, beta);
  return (std::exp(lp - l0) - 2.0L + std::exp(lm - l0)) / (step * step);
}

// Mixed second difference of log Z for H(x1,x2) = h - x1 o1 - x2 o2. Equals
// beta^2 [(o1,o2) - <o1><o2>].
inline long double logz_mixed_difference(const quenchlab::OpMatrix& h,
                                         const quenchlab::OpMatrix& o1,
                                         const quenchlab::OpMatrix& o2, long double beta,
                                         long double step) {
  const LongMatrix hl = widen(h), a = widen(o1), b = widen(o2);
  const long double lpp = log_partition(hl - step * a - step * b, beta);
  const long double lpm = log_partition(hl - step * a + step * b, beta);
  const long double lmp = log_partition(hl + step * a - step * b, beta);
  const long double lmm = log_partition(hl + step * a + step * b, beta);
  return (lpp - lpm - lmp + lmm) / (4.0L * step * step);
}

// Long-double <o> at the unperturbed state, via full eigenvectors.
inline long double expectation_reference(const quenchlab::OpMatrix& h,
                                         const quenchlab::OpMatrix& o, long double beta) {
  const LongMatrix hl = widen(h), ol = widen(o);
  Eigen::SelfAdjointEigenSolver<LongMatrix> solver(hl);
  const LongVector e = solver.eigenvalues();
  const LongMatrix t = solver.eigenvectors().adjoint() * ol * solver.eigenvectors();
  const long double e_min = e.minCoeff();
  long double z = 0.0L, acc = 0.0L;
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    const long double w = std::exp(-beta * (e(k) - e_min));
    z += w;
    acc += w * t(k, k).real();
  }
  return acc / z;
}

}  // namespace oracle
