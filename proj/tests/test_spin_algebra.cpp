#include <doctest.h>

#include "oracle_utils.hpp"
#include "quenchlab/spin_algebra.hpp"

using namespace quenchlab;

namespace {

double max_abs(const OpMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("spin matrices satisfy the su(2) relations entrywise") {
  for (int two_s : {1, 2, 3, 4}) {
    CAPTURE(two_s);
    const SpinMagnitude s{two_s};
    const SpinTriple t = spin_matrices(s);
    const int d = s.local_dim();
    const cxd i_unit(0.0, 1.0);

    CHECK(max_abs(t.sx.entries * t.sy.entries - t.sy.entries * t.sx.entries -
                  i_unit * t.sz.entries) <= 1e-12);
    CHECK(max_abs(t.sy.entries * t.sz.entries - t.sz.entries * t.sy.entries -
                  i_unit * t.sx.entries) <= 1e-12);
    CHECK(max_abs(t.sz.entries * t.sx.entries - t.sx.entries * t.sz.entries -
                  i_unit * t.sy.entries) <= 1e-12);
    CHECK(max_abs(t.sx.entries * t.sx.entries + t.sy.entries * t.sy.entries +
                  t.sz.entries * t.sz.entries -
                  s.casimir() * OpMatrix::Identity(d, d)) <= 1e-12);

    CHECK(hermiticity_defect(t.sx.entries) == 0.0);
    CHECK(hermiticity_defect(t.sy.entries) == 0.0);
    CHECK(hermiticity_defect(t.sz.entries) == 0.0);
  }
}

TEST_CASE("sz is diagonal with magnetic quantum numbers descending") {
  const SpinTriple t = spin_matrices(SpinMagnitude{3});
  CHECK(t.sz.entries(0, 0) == cxd(1.5, 0.0));
  CHECK(t.sz.entries(1, 1) == cxd(0.5, 0.0));
  CHECK(t.sz.entries(2, 2) == cxd(-0.5, 0.0));
  CHECK(t.sz.entries(3, 3) == cxd(-1.5, 0.0));
  CHECK(max_abs(t.sz.entries - t.sz.entries.diagonal().asDiagonal().toDenseMatrix()) == 0.0);
}

TEST_CASE("ladder elements carry the sqrt(S(S+1) - m(m+1)) amplitudes") {
  const SpinTriple t = spin_matrices(SpinMagnitude{2});  // S = 1
  const OpMatrix sp = t.sx.entries + cxd(0.0, 1.0) * t.sy.entries;
  // S+ |m> = sqrt(2 - m(m+1)) |m+1>, basis ordered m = 1, 0, -1.
  CHECK(std::abs(sp(0, 1) - std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(sp(1, 2) - std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(sp(0, 2)) <= 1e-15);
  CHECK(std::abs(sp(1, 0)) + std::abs(sp(2, 0)) + std::abs(sp(2, 1)) <= 1e-15);
}

TEST_CASE("kron puts the left factor in the most significant slot") {
  OpMatrix a(2, 2), b(2, 2);
  a << cxd(1, 0), cxd(2, 0), cxd(3, 0), cxd(4, 0);
  b << cxd(5, 0), cxd(6, 0), cxd(7, 0), cxd(8, 0);
  const OpMatrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          CHECK(k(2 * i + p, 2 * j + q) == a(i, j) * b(p, q));
}

TEST_CASE("embed matches explicit kron products and ignores input order") {
  const SiteSet sites = SiteSet::chain(3);
  const SpinTriple t = spin_matrices(SpinMagnitude{1});
  const OpMatrix id = OpMatrix::Identity(2, 2);

  const auto left = embed({{0, t.sz}}, sites, 2);
  CHECK(max_abs(left.entries - kron(kron(t.sz.entries, id), id)) == 0.0);

  const auto right = embed({{2, t.sz}}, sites, 2);
  CHECK(max_abs(right.entries - kron(kron(id, id), t.sz.entries)) == 0.0);

  const auto pair = embed({{0, t.sx}, {2, t.sz}}, sites, 2);
  CHECK(max_abs(pair.entries - kron(kron(t.sx.entries, id), t.sz.entries)) == 0.0);

  const auto swapped = embed({{2, t.sz}, {0, t.sx}}, sites, 2);
  CHECK(max_abs(swapped.entries - pair.entries) == 0.0);

  CHECK(pair.hermitian);
  CHECK(pair.n_sites == 3);
}

TEST_CASE("embed rejects bad site lists") {
  const SiteSet sites = SiteSet::chain(2);
  const SpinTriple t = spin_matrices(SpinMagnitude{1});
  CHECK_THROWS_AS(embed({{0, t.sz}, {0, t.sx}}, sites, 2), Error);
  CHECK_THROWS_AS(embed({{2, t.sz}}, sites, 2), Error);
  CHECK_THROWS_AS(embed({{-1, t.sz}}, sites, 2), Error);
}

TEST_CASE("operator arithmetic acts entrywise and tracks hermiticity") {
  const auto a = oracle::random_hermitian_op(2, 2, 11);
  const auto b = oracle::random_hermitian_op(2, 2, 22);

  CHECK(max_abs((a + b).entries - (a.entries + b.entries)) == 0.0);
  CHECK(max_abs((a - b).entries - (a.entries - b.entries)) == 0.0);
  CHECK(max_abs((2.5 * a).entries - 2.5 * a.entries) == 0.0);
  CHECK(max_abs((a * b).entries - a.entries * b.entries) == 0.0);
  CHECK((a + b).hermitian);
  CHECK_FALSE((a * b).hermitian);

  const auto c = commutator(a, b);
  // [A,B] is anti-Hermitian for Hermitian A, B.
  CHECK(max_abs(c.entries + c.entries.adjoint().eval()) <= 1e-12);
}

TEST_CASE("operator_norm returns the spectral norm") {
  const SiteSet sites = SiteSet::chain(1);
  const SpinTriple t = spin_matrices(SpinMagnitude{3});
  const auto sz = embed({{0, t.sz}}, sites, 4);
  CHECK(operator_norm(sz) == doctest::Approx(1.5).epsilon(1e-12));
  const auto sx = embed({{0, t.sx}}, sites, 4);
  CHECK(operator_norm(sx) == doctest::Approx(1.5).epsilon(1e-12));

  // Non-Hermitian input goes through the singular-value path.
  ManyBodyOperator up;
  up.n_sites = 1;
  up.local_dim = 2;
  up.hermitian = false;
  up.entries = OpMatrix::Zero(2, 2);
  up.entries(0, 1) = cxd(3.0, 4.0);
  CHECK(operator_norm(up) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("su2_rotate preserves the spectrum and fixes invariant operators") {
  const auto a = oracle::random_hermitian_op(2, 3, 7);
  const auto rotated = su2_rotate(a, Eigen::Vector3d(0.0, 1.0, 0.0), 0.42);
  Eigen::SelfAdjointEigenSolver<OpMatrix> ea(a.entries, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<OpMatrix> eb(rotated.entries, Eigen::EigenvaluesOnly);
  CHECK((ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-9);

  // A z rotation fixes sz and moves sx.
  const SiteSet sites = SiteSet::chain(1);
  const SpinTriple t = spin_matrices(SpinMagnitude{1});
  const auto sz = embed({{0, t.sz}}, sites, 2);
  const auto sz_rot = su2_rotate(sz, Eigen::Vector3d(0.0, 0.0, 1.0), 1.1);
  CHECK(max_abs(sz_rot.entries - sz.entries) <= 1e-12);
  const auto sx = embed({{0, t.sx}}, sites, 2);
  const auto sx_rot = su2_rotate(sx, Eigen::Vector3d(0.0, 0.0, 1.0), 1.1);
  CHECK(max_abs(sx_rot.entries - sx.entries) > 0.1);

  CHECK_THROWS_AS(su2_rotate(sz, Eigen::Vector3d(0.0, 0.0, 2.0), 1.0), Error);
}

TEST_CASE("box site sets expose 1-based row-major coordinates") {
  const SiteSet box = SiteSet::box({2, 3});
  CHECK(box.n_sites == 6);
  CHECK(box.coordinate(0) == std::vector<int>{1, 1});
  CHECK(box.coordinate(2) == std::vector<int>{1, 3});
  CHECK(box.coordinate(3) == std::vector<int>{2, 1});
  CHECK(box.coordinate(5) == std::vector<int>{2, 3});
  CHECK_THROWS_AS(box.coordinate(6), Error);

  const SiteSet chain = SiteSet::chain(4);
  CHECK(chain.coordinate(3) == std::vector<int>{4});
  CHECK_THROWS_AS(SiteSet::chain(0), Error);
  CHECK_THROWS_AS(SiteSet::box({0}), Error);
}

TEST_CASE("dimension cap rejects oversized tensor products") {
  CHECK_THROWS_AS(many_body_identity(13, 2), Error);
  CHECK(many_body_identity(12, 2).dim() == 4096);
}
