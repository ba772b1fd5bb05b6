#include "quenchlab/gibbs_engine.hpp"

#include <cmath>

namespace quenchlab {

double SpectralDecomposition::norm() const {
  return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
}

SpectralDecomposition diagonalize(const ManyBodyOperator& h) {
  const double scale = std::max(1.0, h.entries.cwiseAbs().maxCoeff());
  if (hermiticity_defect(h.entries) > kHermitianTol * scale)
    throw Error("diagonalize: input is not Hermitian");

  Eigen::SelfAdjointEigenSolver<OpMatrix> solver(h.entries);
  if (solver.info() != Eigen::Success) throw Error("diagonalize: eigensolver failed");

  SpectralDecomposition decomp;
  decomp.eigenvalues = solver.eigenvalues();
  decomp.eigenvectors = solver.eigenvectors();

  // Phase convention: rotate each column so its largest-modulus entry is
  // real positive. Makes repeated runs bit-identical.
  for (Eigen::Index k = 0; k < decomp.dim(); ++k) {
    Eigen::Index argmax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < decomp.dim(); ++i) {
      const double a = std::abs(decomp.eigenvectors(i, k));
      if (a > best) {
        best = a;
        argmax = i;
      }
    }
    const cxd z = decomp.eigenvectors(argmax, k);
    if (std::abs(z) > 0.0) decomp.eigenvectors.col(k) *= std::conj(z) / std::abs(z);
  }

  // Residual check: full for small matrices, randomized probe for large
  // ones (a full H V costs as much as the eigensolve itself).
  const double h_norm = decomp.norm();
  const double tol = 1e-9 * std::max(1.0, h_norm);
  if (decomp.dim() <= 512) {
    const double r = (h.entries * decomp.eigenvectors -
                      decomp.eigenvectors * decomp.eigenvalues.asDiagonal().toDenseMatrix()
                                                .cast<cxd>())
                         .cwiseAbs()
                         .maxCoeff();
    if (r > tol) throw Error("diagonalize: residual check failed");
  } else {
    DenseVector<cxd> probe = DenseVector<cxd>::Zero(decomp.dim());
    for (Eigen::Index i = 0; i < decomp.dim(); ++i)
      probe(i) = cxd(std::cos(0.7 * static_cast<double>(i) + 0.3),
                     std::sin(1.3 * static_cast<double>(i)));
    probe /= probe.norm();
    const DenseVector<cxd> coeff = decomp.eigenvectors.adjoint() * probe;
    const DenseVector<cxd> back =
        decomp.eigenvectors * (decomp.eigenvalues.cast<cxd>().asDiagonal() * coeff);
    if ((h.entries * probe - back).norm() > tol * 32) throw Error("diagonalize: residual check failed");
  }
  return decomp;
}

GibbsState gibbs_state(const SpectralDecomposition& decomp, double beta, int n_sites) {
  if (!(beta > 0.0)) throw Error("gibbs_state: beta must be positive");
  if (n_sites <= 0) throw Error("gibbs_state: n_sites must be positive");
  if (decomp.dim() == 0) throw Error("gibbs_state: empty decomposition");

  GibbsState state;
  state.beta = beta;
  state.decomp = decomp;
  state.n_sites = n_sites;

  const double e_min = decomp.eigenvalues.minCoeff();
  state.weights = (-beta * (decomp.eigenvalues.array() - e_min)).exp();
  const double z_shift = state.weights.sum();
  state.log_z = -beta * e_min + std::log(z_shift);
  state.weights /= z_shift;
  return state;
}

FreeEnergyDensity free_energy_density(const GibbsState& state) {
  return {state.log_z / state.n_sites};
}

static double check_real(cxd value, const char* what) {
  const double scale = std::max(1.0, std::abs(value.real()));
  if (std::abs(value.imag()) > kRealityTol * scale)
    throw Error(std::string(what) + ": imaginary residue exceeds tolerance");
  return value.real();
}

static void check_dims(const GibbsState& state, const ManyBodyOperator& o, const char* what) {
  if (o.dim() != state.decomp.dim()) throw Error(std::string(what) + ": dimension mismatch");
}

double expectation(const GibbsState& state, const ManyBodyOperator& o) {
  check_dims(state, o, "expectation");
  const OpMatrix applied = o.entries * state.decomp.eigenvectors;
  cxd acc = 0.0;
  for (Eigen::Index k = 0; k < state.decomp.dim(); ++k)
    acc += state.weights(k) * state.decomp.eigenvectors.col(k).dot(applied.col(k));
  return check_real(acc, "expectation");
}

// Divided-difference kernel of the exponential on the shifted spectrum:
// kappa(m,n) = (w_m - w_n)/(beta (E_n - E_m)) with w = e^{-beta(E - E_min)},
// evaluated through expm1 so near-cancelling pairs stay accurate, and
// through its symmetric Taylor limit sqrt(w_m w_n)(1 + delta^2/24) once
// |E_m - E_n| drops below the splitting threshold.
static double duhamel_kernel(double em, double en, double e_min, double beta, double split_tol) {
  const double delta = beta * (en - em);
  const double wm = std::exp(-beta * (em - e_min));
  const double wn = std::exp(-beta * (en - e_min));
  if (std::abs(en - em) < split_tol) {
    return std::sqrt(wm * wn) * (1.0 + delta * delta / 24.0);
  }
  if (delta > 0.0) return wm * (-std::expm1(-delta)) / delta;
  return wn * (-std::expm1(delta)) / (-delta);
}

double duhamel_pair(const GibbsState& state, const ManyBodyOperator& o1,
                    const ManyBodyOperator& o2) {
  check_dims(state, o1, "duhamel_pair");
  check_dims(state, o2, "duhamel_pair");

  const auto& v = state.decomp.eigenvectors;
  const auto& e = state.decomp.eigenvalues;
  const Eigen::Index dim = state.decomp.dim();
  const double e_min = e.minCoeff();
  const double beta = state.beta;
  const double split_tol = 1e-8 * std::max(1.0, state.decomp.norm());

  const OpMatrix t1 = v.adjoint() * o1.entries * v;
  const OpMatrix t2 = v.adjoint() * o2.entries * v;

  // Normalizer in the shifted convention: Z-tilde = sum_m w_m.
  double z_shift = 0.0;
  for (Eigen::Index m = 0; m < dim; ++m) z_shift += std::exp(-beta * (e(m) - e_min));

  cxd acc = 0.0;
  for (Eigen::Index m = 0; m < dim; ++m)
    for (Eigen::Index n = 0; n < dim; ++n)
      acc += t1(m, n) * t2(n, m) * duhamel_kernel(e(m), e(n), e_min, beta, split_tol);
  return check_real(acc / z_shift, "duhamel_pair");
}

double truncated_duhamel_pair(const GibbsState& state, const ManyBodyOperator& o1,
                              const ManyBodyOperator& o2) {
  return duhamel_pair(state, o1, o2) - expectation(state, o1) * expectation(state, o2);
}

HarrisBounds harris_bounds(const GibbsState& state, const ManyBodyOperator& h,
                           const ManyBodyOperator& o) {
  check_dims(state, h, "harris_bounds");
  check_dims(state, o, "harris_bounds");

  // The state must describe h itself; the trace is a cheap witness.
  const double trace_h = h.entries.trace().real();
  const double trace_e = state.decomp.eigenvalues.sum();
  if (std::abs(trace_h - trace_e) > 1e-8 * std::max(1.0, std::abs(trace_e)))
    throw Error("harris_bounds: state was not built from this Hamiltonian");

  const auto& v = state.decomp.eigenvectors;
  const auto& e = state.decomp.eigenvalues;
  const Eigen::Index dim = state.decomp.dim();
  const OpMatrix t = v.adjoint() * o.entries * v;

  // In the eigenbasis: <o^2> = sum w_m |t_mn|^2 and
  // <[o,[h,o]]> = sum w_m |t_mn|^2 2(E_n - E_m).
  double upper = 0.0, double_comm = 0.0;
  for (Eigen::Index m = 0; m < dim; ++m) {
    const double wm = state.weights(m);
    for (Eigen::Index n = 0; n < dim; ++n) {
      const double mag2 = std::norm(t(m, n));
      upper += wm * mag2;
      double_comm += wm * mag2 * 2.0 * (e(n) - e(m));
    }
  }

  HarrisBounds bounds;
  bounds.upper = upper;
  bounds.lower = upper - state.beta / 12.0 * double_comm;
  bounds.duhamel = duhamel_pair(state, o, o);
  return bounds;
}

}  // namespace quenchlab
