#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace quenchlab {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using cxd = std::complex<double>;
using OpMatrix = DenseMatrix<cxd>;
using RealVector = DenseVector<double>;

// Tolerance for exact algebraic identities on unit-scale matrices.
inline constexpr double kAlgebraTol = 1e-12;
// Hermiticity / reality checks on computed quantities.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kRealityTol = 1e-10;
// Largest dense Hilbert-space dimension we build (N = 12 at S = 1/2).
inline constexpr Eigen::Index kMaxDenseDim = 4096;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace quenchlab
