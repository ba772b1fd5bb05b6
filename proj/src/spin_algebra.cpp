#include "quenchlab/spin_algebra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>

namespace quenchlab {

namespace {

Eigen::Index pow_dim(int local_dim, int n_sites) {
  Eigen::Index d = 1;
  for (int i = 0; i < n_sites; ++i) {
    d *= local_dim;
    if (d > kMaxDenseDim)
      throw Error("Hilbert-space dimension exceeds the dense cap of " +
                  std::to_string(kMaxDenseDim));
  }
  return d;
}

// Cheap entrywise Hermiticity re-check, active outside Release builds only.
void debug_check_hermitian(const ManyBodyOperator& op) {
#ifndef NDEBUG
  if (!op.hermitian) return;
  double scale = std::max(1.0, op.entries.cwiseAbs().maxCoeff());
  if (hermiticity_defect(op.entries) > kHermitianTol * scale)
    throw Error("operator flagged Hermitian fails the entrywise check");
#else
  (void)op;
#endif
}

}  // namespace

SiteSet SiteSet::chain(int n) {
  if (n < 1) throw Error("site set needs at least one site");
  SiteSet s;
  s.n_sites = n;
  s.box_dims = {n};
  return s;
}

SiteSet SiteSet::box(std::vector<int> dims) {
  if (dims.empty()) throw Error("box shape needs at least one dimension");
  long total = 1;
  for (int l : dims) {
    if (l < 1) throw Error("box side lengths must be positive");
    total *= l;
  }
  SiteSet s;
  s.n_sites = static_cast<int>(total);
  s.box_dims = std::move(dims);
  return s;
}

std::vector<int> SiteSet::coordinate(int site) const {
  if (box_dims.empty()) throw Error("site set carries no lattice shape");
  if (site < 0 || site >= n_sites) throw Error("site index out of range");
  std::vector<int> coord(box_dims.size());
  int rest = site;
  for (int d = static_cast<int>(box_dims.size()) - 1; d >= 0; --d) {
    coord[d] = rest % box_dims[d] + 1;
    rest /= box_dims[d];
  }
  return coord;
}

SpinTriple spin_matrices(SpinMagnitude s) {
  const int d = s.local_dim();
  const double sv = s.value();
  DenseMatrix<cxd> sz = DenseMatrix<cxd>::Zero(d, d);
  DenseMatrix<cxd> sp = DenseMatrix<cxd>::Zero(d, d);  // raising operator
  for (int i = 0; i < d; ++i) {
    const double m = sv - i;  // basis ordering S, S-1, ..., -S
    sz(i, i) = m;
    if (i > 0) sp(i - 1, i) = std::sqrt(s.casimir() - m * (m + 1.0));
  }
  DenseMatrix<cxd> sm = sp.adjoint();
  SpinTriple t;
  t.sx = LocalOperator{d, true, 0.5 * (sp + sm)};
  t.sy = LocalOperator{d, true, cxd(0.0, -0.5) * (sp - sm)};
  t.sz = LocalOperator{d, true, sz};
  return t;
}

LocalOperator local_identity(int dim) {
  return LocalOperator{dim, true, DenseMatrix<cxd>::Identity(dim, dim)};
}

double hermiticity_defect(const OpMatrix& m) {
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

DenseMatrix<cxd> kron(const DenseMatrix<cxd>& a, const DenseMatrix<cxd>& b) {
  DenseMatrix<cxd> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ManyBodyOperator many_body_identity(int n_sites, int local_dim) {
  Eigen::Index d = pow_dim(local_dim, n_sites);
  return ManyBodyOperator{n_sites, local_dim, true, OpMatrix::Identity(d, d)};
}

ManyBodyOperator many_body_zero(int n_sites, int local_dim) {
  Eigen::Index d = pow_dim(local_dim, n_sites);
  return ManyBodyOperator{n_sites, local_dim, true, OpMatrix::Zero(d, d)};
}

ManyBodyOperator embed(const std::vector<std::pair<int, LocalOperator>>& locals,
                       const SiteSet& sites, int local_dim) {
  std::set<int> seen;
  bool hermitian = true;
  for (const auto& [site, op] : locals) {
    if (site < 0 || site >= sites.n_sites) throw Error("embed: site index out of range");
    if (!seen.insert(site).second) throw Error("embed: duplicate site index");
    if (op.dim != local_dim) throw Error("embed: local operator dimension mismatch");
    hermitian = hermitian && op.hermitian;
  }
  pow_dim(local_dim, sites.n_sites);

  // Walk sites left to right; identity factors between the acted sites are
  // applied as single blocks.
  DenseMatrix<cxd> acc = DenseMatrix<cxd>::Identity(1, 1);
  int covered = 0;  // sites already folded into acc
  std::vector<std::pair<int, const LocalOperator*>> ordered;
  ordered.reserve(locals.size());
  for (const auto& [site, op] : locals) ordered.emplace_back(site, &op);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  auto fold_identity = [&](int up_to) {
    if (up_to > covered) {
      Eigen::Index gap = pow_dim(local_dim, up_to - covered);
      acc = kron(acc, DenseMatrix<cxd>::Identity(gap, gap));
      covered = up_to;
    }
  };
  for (const auto& [site, op] : ordered) {
    fold_identity(site);
    acc = kron(acc, op->entries);
    covered = site + 1;
  }
  fold_identity(sites.n_sites);

  ManyBodyOperator out{sites.n_sites, local_dim, hermitian, std::move(acc)};
  debug_check_hermitian(out);
  return out;
}

namespace {

void require_same_shape(const ManyBodyOperator& a, const ManyBodyOperator& b) {
  if (a.dim() != b.dim() || a.local_dim != b.local_dim)
    throw Error("operator dimension mismatch");
}

}  // namespace

ManyBodyOperator operator+(const ManyBodyOperator& a, const ManyBodyOperator& b) {
  require_same_shape(a, b);
  ManyBodyOperator out{a.n_sites, a.local_dim, a.hermitian && b.hermitian,
                       a.entries + b.entries};
  debug_check_hermitian(out);
  return out;
}

ManyBodyOperator operator-(const ManyBodyOperator& a, const ManyBodyOperator& b) {
  require_same_shape(a, b);
  ManyBodyOperator out{a.n_sites, a.local_dim, a.hermitian && b.hermitian,
                       a.entries - b.entries};
  debug_check_hermitian(out);
  return out;
}

ManyBodyOperator operator*(double c, const ManyBodyOperator& a) {
  return ManyBodyOperator{a.n_sites, a.local_dim, a.hermitian, c * a.entries};
}

ManyBodyOperator operator*(const ManyBodyOperator& a, const ManyBodyOperator& b) {
  require_same_shape(a, b);
  return ManyBodyOperator{a.n_sites, a.local_dim, false, a.entries * b.entries};
}

ManyBodyOperator commutator(const ManyBodyOperator& a, const ManyBodyOperator& b) {
  require_same_shape(a, b);
  return ManyBodyOperator{a.n_sites, a.local_dim, false,
                          a.entries * b.entries - b.entries * a.entries};
}

double operator_norm(const ManyBodyOperator& a) {
  if (a.dim() == 0) return 0.0;
  if (a.hermitian) {
    Eigen::SelfAdjointEigenSolver<OpMatrix> es(a.entries, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::SelfAdjointEigenSolver<OpMatrix> es(a.entries.adjoint() * a.entries,
                                             Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

ManyBodyOperator su2_rotate(const ManyBodyOperator& a, const Eigen::Vector3d& axis,
                            double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-9) throw Error("su2_rotate: axis is not a unit vector");
  if (!a.hermitian) throw Error("su2_rotate expects a Hermitian operator");

  SpinMagnitude s{a.local_dim - 1};
  SpinTriple t = spin_matrices(s);
  DenseMatrix<cxd> gen =
      axis.x() * t.sx.entries + axis.y() * t.sy.entries + axis.z() * t.sz.entries;
  // exp(-i angle gen) through the spectral decomposition of the Hermitian
  // generator.
  Eigen::SelfAdjointEigenSolver<DenseMatrix<cxd>> es(gen);
  DenseVector<cxd> phase(gen.rows());
  for (Eigen::Index k = 0; k < gen.rows(); ++k)
    phase(k) = std::exp(cxd(0.0, -angle * es.eigenvalues()(k)));
  DenseMatrix<cxd> u_local =
      es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();

  DenseMatrix<cxd> u = DenseMatrix<cxd>::Identity(1, 1);
  for (int j = 0; j < a.n_sites; ++j) u = kron(u, u_local);

  ManyBodyOperator out{a.n_sites, a.local_dim, true,
                       u * a.entries * u.adjoint()};
  debug_check_hermitian(out);
  return out;
}

}  // namespace quenchlab
