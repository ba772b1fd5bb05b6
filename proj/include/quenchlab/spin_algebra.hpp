#pragma once

// Spin-S matrices, tensor embedding onto N-site systems, and operator
// arithmetic on dense complex matrices. Site 0 is the leftmost (most
// significant) tensor factor; every module in this project shares that
// convention.

#include <utility>
#include <vector>

#include "quenchlab/types.hpp"

namespace quenchlab {

// S = two_s / 2, a nonnegative half integer. Local dimension 2S + 1.
struct SpinMagnitude {
  int two_s = 1;

  int local_dim() const { return two_s + 1; }
  double value() const { return 0.5 * two_s; }
  double casimir() const { return value() * (value() + 1.0); }
};

struct LocalOperator {
  int dim = 0;
  bool hermitian = false;
  DenseMatrix<cxd> entries;
};

struct ManyBodyOperator {
  int n_sites = 0;
  int local_dim = 2;
  bool hermitian = false;
  OpMatrix entries;

  Eigen::Index dim() const { return entries.rows(); }
};

// Finite site set V_N, optionally carrying a d-dimensional box shape
// [1,L_1] x ... x [1,L_d] whose coordinates biject with site indices
// (row-major, site 0 at coordinate (1,...,1)).
struct SiteSet {
  int n_sites = 0;
  std::vector<int> box_dims;

  static SiteSet chain(int n);
  static SiteSet box(std::vector<int> dims);

  // 1-based lattice coordinates of a site; requires a box shape.
  std::vector<int> coordinate(int site) const;
};

struct SpinTriple {
  LocalOperator sx, sy, sz;
};

// Spin matrices in the basis where Sz = diag(S, S-1, ..., -S).
// They satisfy [Sx,Sy] = i Sz (cyclically) and sum_p (S^p)^2 = S(S+1) 1.
SpinTriple spin_matrices(SpinMagnitude s);

LocalOperator local_identity(int dim);

// Largest |A - A^dagger| entry; 0 for an exactly Hermitian matrix.
double hermiticity_defect(const OpMatrix& m);

// Kronecker product, left factor most significant.
DenseMatrix<cxd> kron(const DenseMatrix<cxd>& a, const DenseMatrix<cxd>& b);

ManyBodyOperator many_body_identity(int n_sites, int local_dim);
ManyBodyOperator many_body_zero(int n_sites, int local_dim);

// Tensor-embed local operators at the given (distinct) sites, identities
// elsewhere. All local dimensions must agree.
ManyBodyOperator embed(const std::vector<std::pair<int, LocalOperator>>& locals,
                       const SiteSet& sites, int local_dim);

ManyBodyOperator operator+(const ManyBodyOperator& a, const ManyBodyOperator& b);
ManyBodyOperator operator-(const ManyBodyOperator& a, const ManyBodyOperator& b);
ManyBodyOperator operator*(double c, const ManyBodyOperator& a);
ManyBodyOperator operator*(const ManyBodyOperator& a, const ManyBodyOperator& b);

// ab - ba. Anti-Hermitian when both inputs are Hermitian.
ManyBodyOperator commutator(const ManyBodyOperator& a, const ManyBodyOperator& b);

// Spectral norm sup_{|phi|=1} |O phi|; max |eigenvalue| for Hermitian input.
double operator_norm(const ManyBodyOperator& a);

// Conjugate by U = (x)_j exp(-i angle axis.S), the same rotation at every
// site. Rejects a non-unit axis (tolerance 1e-9). Preserves the spectrum.
ManyBodyOperator su2_rotate(const ManyBodyOperator& a,
                            const Eigen::Vector3d& axis, double angle);

}  // namespace quenchlab
