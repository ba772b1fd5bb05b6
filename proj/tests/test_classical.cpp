#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracle_utils.hpp"
#include "quenchlab/classical.hpp"
#include "quenchlab/model_family.hpp"

using namespace quenchlab;

namespace {

// m value of `site` in basis state s, most significant digit first.
double m_of(Eigen::Index s, int site, int n_sites, SpinMagnitude spin) {
  const int d = spin.local_dim();
  Eigen::Index stride = 1;
  for (int j = n_sites - 1; j > site; --j) stride *= d;
  return spin.value() - static_cast<double>((s / stride) % d);
}

InteractionCatalog random_ising_catalog(int n_sites, bool with_fields) {
  InteractionCatalog catalog;
  for (int j = 0; j + 1 < n_sites; ++j) {
    InteractionTerm bond;
    bond.axis = 'z';
    bond.support = {j, j + 1};
    bond.dist = CouplingDistribution::gaussian(0.0, 1.0);
    bond.phi = PhiSpec::axis_product();
    catalog.terms.push_back(bond);
  }
  if (with_fields)
    for (int j = 0; j < n_sites; ++j) {
      InteractionTerm field;
      field.axis = 'z';
      field.support = {j};
      field.dist = CouplingDistribution::gaussian(0.3, 0.5);
      field.phi = PhiSpec::single_site();
      catalog.terms.push_back(field);
    }
  return catalog;
}

}  // namespace

TEST_CASE("classicality is decided by the z basis") {
  auto catalog = random_ising_catalog(3, true);
  CHECK(catalog_is_classical(catalog));

  auto x_axis = catalog;
  x_axis.terms[0].axis = 'x';
  CHECK_FALSE(catalog_is_classical(x_axis));

  auto heis = heisenberg_catalog({{0, 1}}, CouplingDistribution::gaussian(0, 1));
  CHECK_FALSE(catalog_is_classical(heis));

  InteractionCatalog custom_diag;
  InteractionTerm term;
  term.axis = 'z';
  term.support = {0};
  OpMatrix block(2, 2);
  block << cxd(0.5, 0), cxd(0, 0), cxd(0, 0), cxd(-1.5, 0);
  term.phi = PhiSpec::custom(block);
  custom_diag.terms.push_back(term);
  CHECK(catalog_is_classical(custom_diag));

  block(0, 1) = cxd(0.25, 0);
  block(1, 0) = cxd(0.25, 0);
  custom_diag.terms[0].phi = PhiSpec::custom(block);
  CHECK_FALSE(catalog_is_classical(custom_diag));
}

TEST_CASE("diagonal assembly agrees with the dense builder entry for entry") {
  for (int two_s : {1, 2}) {
    CAPTURE(two_s);
    const SpinMagnitude spin{two_s};
    const SiteSet sites = SiteSet::chain(3);
    const auto catalog = random_ising_catalog(3, true);
    const auto sample = draw_sample(catalog, 2024, 5);

    const RealVector fast = classical_hamiltonian_diagonal(catalog, sample, spin, sites);
    const auto dense = build_hamiltonian(catalog, sample, spin, sites);
    REQUIRE(fast.size() == dense.dim());
    for (Eigen::Index s = 0; s < fast.size(); ++s) {
      CHECK(std::abs(fast(s) - dense.entries(s, s).real()) <= 1e-14);
    }
    // The dense operator has no off-diagonal weight at all.
    OpMatrix off = dense.entries;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("field-free diagonal picks up custom blocks") {
  const SpinMagnitude spin{1};
  const SiteSet sites = SiteSet::chain(2);
  InteractionCatalog catalog;
  InteractionTerm term;
  term.axis = 'z';
  term.support = {1};
  OpMatrix block(2, 2);
  block << cxd(2.0, 0), cxd(0, 0), cxd(0, 0), cxd(-3.0, 0);
  term.phi = PhiSpec::custom(block);
  term.dist = CouplingDistribution::constant(1.0);
  catalog.terms.push_back(term);

  DisorderSample sample;
  sample.seed = 0;
  sample.values = {1.0};
  const RealVector diag = classical_hamiltonian_diagonal(catalog, sample, spin, sites);
  // Site 1 is the least significant bit; block index = that digit.
  CHECK(diag(0) == 2.0);
  CHECK(diag(1) == -3.0);
  CHECK(diag(2) == 2.0);
  CHECK(diag(3) == -3.0);
}

TEST_CASE("order diagonals match the dense order operator") {
  const SpinMagnitude spin{2};  // S = 1, local dimension 3
  const SiteSet sites = SiteSet::chain(2);
  const std::vector<double> weights = {1.0, -1.0};
  const RealVector fast = classical_order_diagonal(weights, spin, sites);

  auto spec = OrderOperatorSpec::uniform_density('z');
  spec.weights = weights;
  const auto dense = build_order_operator(spec, spin, sites);
  for (Eigen::Index s = 0; s < fast.size(); ++s)
    CHECK(std::abs(fast(s) - dense.entries(s, s).real()) <= 1e-15);

  CHECK_THROWS_AS(classical_order_diagonal({1.0}, spin, sites), Error);
}

TEST_CASE("classical thermodynamics equals the dense path on a classical model") {
  const SpinMagnitude spin{1};
  const SiteSet sites = SiteSet::chain(4);
  const auto catalog = random_ising_catalog(4, true);
  const auto sample = draw_sample(catalog, 77, 0);
  const double beta = 1.3;

  const RealVector h_diag = classical_hamiltonian_diagonal(catalog, sample, spin, sites);
  const RealVector o_diag = classical_order_diagonal({1, 1, 1, 1}, spin, sites);
  const ClassicalGibbs fast = classical_gibbs(h_diag, beta, 4);

  const auto dense_h = build_hamiltonian(catalog, sample, spin, sites);
  const auto dense_o = build_order_operator(OrderOperatorSpec::uniform_density('z'), spin, sites);
  const GibbsState dense = gibbs_state(diagonalize(dense_h), beta, 4);

  CHECK(std::abs(fast.log_z - dense.log_z) <= 1e-11);
  CHECK(std::abs(classical_expectation(fast, o_diag) - expectation(dense, dense_o)) <= 1e-11);
  CHECK(std::abs(classical_duhamel(fast, o_diag, o_diag) - duhamel_pair(dense, dense_o, dense_o)) <=
        1e-10);
  CHECK(std::abs(classical_truncated_duhamel(fast, o_diag, o_diag) -
                 truncated_duhamel_pair(dense, dense_o, dense_o)) <= 1e-10);

  const auto fast_bounds = classical_harris(fast, o_diag);
  const auto dense_bounds = harris_bounds(dense, dense_h, dense_o);
  CHECK(std::abs(fast_bounds.upper - dense_bounds.upper) <= 1e-10);
  CHECK(std::abs(fast_bounds.lower - dense_bounds.lower) <= 1e-10);
  CHECK(std::abs(fast_bounds.duhamel - dense_bounds.duhamel) <= 1e-10);
}

TEST_CASE("overlap values follow the parity rule") {
  const auto site_overlap = overlap_from_supports({{0}, {1}}, 2);
  CHECK(site_overlap.value(0b00) == doctest::Approx(0.25));
  CHECK(site_overlap.value(0b01) == doctest::Approx(0.0));   // site 1 differs
  CHECK(site_overlap.value(0b10) == doctest::Approx(0.0));   // site 0 differs
  CHECK(site_overlap.value(0b11) == doctest::Approx(-0.25));

  const auto bond_overlap = overlap_from_supports({{0, 1}}, 2);
  CHECK(bond_overlap.value(0b00) == doctest::Approx(1.0 / 16.0));
  CHECK(bond_overlap.value(0b01) == doctest::Approx(-1.0 / 16.0));
  CHECK(bond_overlap.value(0b11) == doctest::Approx(1.0 / 16.0));

  CHECK_THROWS_AS(overlap_from_supports({}, 2), Error);
  CHECK_THROWS_AS(overlap_from_supports({{0}}, 64), Error);
  CHECK_THROWS_AS(overlap_from_supports({{2}}, 2), Error);
}

TEST_CASE("rsb polynomials evaluate termwise") {
  RsbPolynomial poly;
  poly.terms = {{1, 1.0}, {2, 0.5}};
  CHECK(poly.eval(0.3) == doctest::Approx(0.345).epsilon(1e-15));
  CHECK(poly.eval(0.0) == 0.0);
}

TEST_CASE("two-replica moments match a direct pair enumeration") {
  const int n = 3;
  const SpinMagnitude spin{1};
  const SiteSet sites = SiteSet::chain(n);
  const auto catalog = random_ising_catalog(n, true);
  const auto sample = draw_sample(catalog, 4242, 1);
  const RealVector h_diag = classical_hamiltonian_diagonal(catalog, sample, spin, sites);
  const double beta = 1.1;
  const double lambda = 0.37;

  const std::vector<std::vector<int>> supports = {{0}, {1}, {2}};
  const auto overlap = overlap_from_supports(supports, n);
  RsbPolynomial rsb;
  rsb.terms = {{1, 1.0}, {2, 0.5}};

  const auto fast = classical_two_replica(h_diag, beta, n, overlap, rsb, lambda);

  // Independent enumeration: overlap from per-site m values, no XOR trick.
  const Eigen::Index dim = h_diag.size();
  long double z = 0.0L, sum_r = 0.0L, sum_r2 = 0.0L;
  for (Eigen::Index s1 = 0; s1 < dim; ++s1)
    for (Eigen::Index s2 = 0; s2 < dim; ++s2) {
      double r_overlap = 0.0;
      for (const auto& x : supports) {
        double prod = 1.0;
        for (int site : x) prod *= m_of(s1, site, n, spin) * m_of(s2, site, n, spin);
        r_overlap += prod;
      }
      r_overlap /= static_cast<double>(supports.size());
      const double r = rsb.eval(r_overlap);
      const long double w = std::exp(static_cast<long double>(
          -beta * (h_diag(s1) + h_diag(s2)) + beta * n * lambda * r));
      z += w;
      sum_r += w * r;
      sum_r2 += w * r * r;
    }

  CHECK(fast.log_z2 == doctest::Approx(static_cast<double>(std::log(z))).epsilon(1e-12));
  CHECK(fast.mean_rsb == doctest::Approx(static_cast<double>(sum_r / z)).epsilon(1e-12));
  CHECK(fast.mean_rsb2 == doctest::Approx(static_cast<double>(sum_r2 / z)).epsilon(1e-12));
}

TEST_CASE("decoupled replicas factorize") {
  const int n = 3;
  const SpinMagnitude spin{1};
  const SiteSet sites = SiteSet::chain(n);
  const auto catalog = random_ising_catalog(n, true);
  const auto sample = draw_sample(catalog, 11, 2);
  const RealVector h_diag = classical_hamiltonian_diagonal(catalog, sample, spin, sites);
  const double beta = 0.9;

  const auto overlap = overlap_from_supports({{0}, {1}, {2}}, n);
  RsbPolynomial rsb;
  rsb.terms = {{1, 1.0}};
  const auto moments = classical_two_replica(h_diag, beta, n, overlap, rsb, 0.0);

  const ClassicalGibbs single = classical_gibbs(h_diag, beta, n);
  CHECK(moments.log_z2 == doctest::Approx(2.0 * single.log_z).epsilon(1e-12));

  // <R> = (1/N) sum_j <Sz_j>^2 for independent replicas.
  double expect = 0.0;
  for (int j = 0; j < n; ++j) {
    std::vector<double> unit(n, 0.0);
    unit[j] = static_cast<double>(n);  // cancels the 1/N inside
    const double sz = classical_expectation(single, classical_order_diagonal(unit, spin, sites));
    expect += sz * sz;
  }
  expect /= n;
  CHECK(moments.mean_rsb == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("bundled fast path reproduces the stepwise outputs and closed forms") {
  // Zero Hamiltonian: Z counts the basis states.
  const auto free_spins = classical_fast_path(RealVector::Zero(8), {}, 1.0, 3);
  CHECK(free_spins.log_z == doctest::Approx(3 * std::log(2.0)).epsilon(1e-14));
  CHECK(free_spins.psi == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  // Single site in a field -lambda S^z: magnetization is the 2-state closed form.
  const double beta = 1.7, lambda = 0.6;
  RealVector h1(2), m1(2);
  h1 << -lambda / 2, lambda / 2;
  m1 << 0.5, -0.5;
  const auto single = classical_fast_path(h1, {m1}, beta, 1);
  CHECK(single.means[0] == doctest::Approx(0.5 * std::tanh(beta * lambda / 2)).epsilon(1e-14));
  CHECK(single.second_moments[0] == doctest::Approx(0.25).epsilon(1e-14));

  // Random classical instance: the bundle equals the stepwise calls, and the
  // degenerate sandwich collapses to <o^2>.
  const SpinMagnitude spin{1};
  const SiteSet sites = SiteSet::chain(3);
  const auto catalog = random_ising_catalog(3, true);
  const auto sample = draw_sample(catalog, 31, 2);
  const RealVector h_diag = classical_hamiltonian_diagonal(catalog, sample, spin, sites);
  const RealVector o_diag = classical_order_diagonal({1, 1, 1}, spin, sites);
  const RealVector ones = RealVector::Ones(h_diag.size());

  const auto bundle = classical_fast_path(h_diag, {o_diag, ones}, 0.9, 3);
  const ClassicalGibbs state = classical_gibbs(h_diag, 0.9, 3);
  CHECK(bundle.log_z == state.log_z);
  CHECK(bundle.means[0] == classical_expectation(state, o_diag));
  CHECK(bundle.second_moments[0] == classical_duhamel(state, o_diag, o_diag));
  CHECK(bundle.harris[0].lower == bundle.harris[0].duhamel);
  CHECK(bundle.harris[0].upper == bundle.harris[0].duhamel);
  CHECK(bundle.means[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bundle.harris[1].upper == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(classical_fast_path(h_diag, {RealVector::Zero(4)}, 1.0, 3), Error);
}

TEST_CASE("guards reject misuse") {
  const SpinMagnitude spin{1};
  const SiteSet sites = SiteSet::chain(2);
  auto catalog = random_ising_catalog(2, false);
  DisorderSample sample;
  sample.values = {1.0, 2.0};  // catalog has one bond only
  CHECK_THROWS_AS(classical_hamiltonian_diagonal(catalog, sample, spin, sites), Error);

  catalog.terms[0].axis = 'x';
  sample.values = {1.0};
  CHECK_THROWS_AS(classical_hamiltonian_diagonal(catalog, sample, spin, sites), Error);

  RealVector h_diag = RealVector::Zero(4);
  CHECK_THROWS_AS(classical_gibbs(h_diag, -1.0, 2), Error);

  const auto overlap = overlap_from_supports({{0}, {1}}, 2);
  RsbPolynomial bad;
  bad.terms = {{0, 1.0}};
  CHECK_THROWS_AS(classical_two_replica(h_diag, 1.0, 2, overlap, bad, 0.1), Error);

  RsbPolynomial ok;
  ok.terms = {{1, 1.0}};
  RealVector wrong = RealVector::Zero(3);
  CHECK_THROWS_AS(classical_two_replica(wrong, 1.0, 2, overlap, ok, 0.1), Error);
  const auto mismatch = overlap_from_supports({{0}}, 3);
  CHECK_THROWS_AS(classical_two_replica(h_diag, 1.0, 2, mismatch, ok, 0.1), Error);
}
