#include <doctest.h>

#include <cmath>
#include <sstream>

#include "quenchlab/disorder.hpp"
#include "quenchlab/rng.hpp"

using namespace quenchlab;

namespace {

InteractionCatalog one_term_catalog(const CouplingDistribution& dist) {
  InteractionCatalog catalog;
  InteractionTerm term;
  term.axis = 'z';
  term.support = {0, 1};
  term.dist = dist;
  term.phi = PhiSpec::axis_product();
  catalog.terms.push_back(term);
  return catalog;
}

}  // namespace

TEST_CASE("distribution moments match the closed forms") {
  CHECK(CouplingDistribution::gaussian(0.3, 2.0).mean() == 0.3);
  CHECK(CouplingDistribution::gaussian(0.3, 2.0).variance() == 4.0);
  CHECK(CouplingDistribution::two_point(1.5, 0.5).mean() == 0.0);
  CHECK(CouplingDistribution::two_point(1.5, 0.5).variance() == doctest::Approx(2.25));
  CHECK(CouplingDistribution::two_point(2.0, 0.75).mean() == doctest::Approx(1.0));
  CHECK(CouplingDistribution::uniform(-1.0, 3.0).mean() == 1.0);
  CHECK(CouplingDistribution::uniform(-1.0, 3.0).variance() == doctest::Approx(16.0 / 12.0));
  CHECK(CouplingDistribution::constant(2.5).mean() == 2.5);
  CHECK(CouplingDistribution::constant(2.5).variance() == 0.0);

  CHECK_THROWS_AS(CouplingDistribution::gaussian(0.0, -1.0), Error);
  CHECK_THROWS_AS(CouplingDistribution::two_point(1.0, 1.5), Error);
  CHECK_THROWS_AS(CouplingDistribution::uniform(1.0, 0.0), Error);
}

TEST_CASE("uniform01 stays inside (0, 1]") {
  CHECK(uniform01(0) > 0.0);
  CHECK(uniform01(~0ULL) == 1.0);
  for (std::uint64_t k = 1; k < 1000; ++k) {
    const double u = uniform01(mix64(k));
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("samples are pure functions of master seed and index") {
  const auto catalog = one_term_catalog(CouplingDistribution::gaussian(0.0, 1.0));
  const auto a = draw_sample(catalog, 42, 7);
  const auto b = draw_sample(catalog, 42, 7);
  REQUIRE(a.values.size() == 1);
  CHECK(a.seed == b.seed);
  CHECK(a.values[0] == b.values[0]);

  const auto c = draw_sample(catalog, 42, 8);
  CHECK(c.values[0] != a.values[0]);
  const auto d = draw_sample(catalog, 43, 7);
  CHECK(d.values[0] != a.values[0]);
}

TEST_CASE("term draws are independent counter streams") {
  InteractionCatalog two = one_term_catalog(CouplingDistribution::gaussian(0.0, 1.0));
  InteractionTerm extra;
  extra.axis = 'z';
  extra.support = {1, 2};
  extra.dist = CouplingDistribution::gaussian(0.0, 1.0);
  extra.phi = PhiSpec::axis_product();
  two.terms.push_back(extra);

  InteractionCatalog three = two;
  extra.support = {2, 3};
  three.terms.push_back(extra);

  // Appending a term must not disturb existing draws.
  const auto s2 = draw_sample(two, 9001, 3);
  const auto s3 = draw_sample(three, 9001, 3);
  CHECK(s2.values[0] == s3.values[0]);
  CHECK(s2.values[1] == s3.values[1]);
}

TEST_CASE("gaussian draws have the declared moments") {
  const auto catalog = one_term_catalog(CouplingDistribution::gaussian(0.5, 2.0));
  const int n = 20000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = draw_sample(catalog, 777, i).values[0];
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean - 0.5) < 0.1);   // 7 standard errors
  CHECK(std::abs(var - 4.0) < 0.35);
}

TEST_CASE("two_point draws take only the two values at the declared rate") {
  const auto catalog = one_term_catalog(CouplingDistribution::two_point(1.5, 0.7));
  const int n = 20000;
  int plus = 0;
  for (int i = 0; i < n; ++i) {
    const double v = draw_sample(catalog, 101, i).values[0];
    REQUIRE((v == 1.5 || v == -1.5));
    if (v > 0) ++plus;
  }
  CHECK(std::abs(static_cast<double>(plus) / n - 0.7) < 0.03);
}

TEST_CASE("uniform draws stay inside the interval with the declared moments") {
  const auto catalog = one_term_catalog(CouplingDistribution::uniform(-1.0, 3.0));
  const int n = 20000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = draw_sample(catalog, 55, i).values[0];
    REQUIRE(v > -1.0);
    REQUIRE(v <= 3.0);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean - 1.0) < 0.06);
  CHECK(std::abs(sum2 / n - mean * mean - 4.0 / 3.0) < 0.1);
}

TEST_CASE("constant draws never vary") {
  const auto catalog = one_term_catalog(CouplingDistribution::constant(-2.0));
  for (int i = 0; i < 50; ++i) CHECK(draw_sample(catalog, 1, i).values[0] == -2.0);
}

TEST_CASE("variance budget sums term variances") {
  InteractionCatalog catalog = one_term_catalog(CouplingDistribution::gaussian(0.0, 2.0));
  InteractionTerm term;
  term.axis = 'z';
  term.support = {2};
  term.dist = CouplingDistribution::two_point(1.0, 0.5);
  term.phi = PhiSpec::single_site();
  catalog.terms.push_back(term);

  const auto budget = variance_budget(catalog, 4);
  CHECK(budget.total == doctest::Approx(5.0));
  CHECK(budget.per_site == doctest::Approx(1.25));
  CHECK_THROWS_AS(variance_budget(catalog, 0), Error);
}

TEST_CASE("catalog validation rejects malformed terms") {
  const int n_sites = 4;
  auto base = one_term_catalog(CouplingDistribution::gaussian(0.0, 1.0));
  CHECK_NOTHROW(validate_catalog(base, n_sites));

  auto bad = base;
  bad.terms[0].support = {};
  CHECK_THROWS_AS(validate_catalog(bad, n_sites), Error);

  bad = base;
  bad.terms[0].support = {0, 4};
  CHECK_THROWS_AS(validate_catalog(bad, n_sites), Error);

  bad = base;
  bad.terms[0].support = {2, 1};
  CHECK_THROWS_AS(validate_catalog(bad, n_sites), Error);

  bad = base;
  bad.terms[0].axis = 'q';
  CHECK_THROWS_AS(validate_catalog(bad, n_sites), Error);

  bad = base;
  bad.terms[0].phi = PhiSpec::single_site();  // |support| = 2 mismatch
  CHECK_THROWS_AS(validate_catalog(bad, n_sites), Error);

  bad = base;
  bad.terms[0].phi = PhiSpec::heis_exchange();
  bad.terms[0].support = {1};
  CHECK_THROWS_AS(validate_catalog(bad, n_sites), Error);

  bad = base;
  OpMatrix block(2, 2);
  block << cxd(0, 0), cxd(1, 0), cxd(0, 0), cxd(0, 0);  // not Hermitian
  bad.terms[0].phi = PhiSpec::custom(block, 1.0);
  bad.terms[0].support = {1};
  CHECK_THROWS_AS(validate_catalog(bad, n_sites), Error);
}

TEST_CASE("catalog text round-trips every field exactly") {
  InteractionCatalog catalog;

  InteractionTerm t1;
  t1.axis = 'x';
  t1.support = {0, 2};
  t1.dist = CouplingDistribution::gaussian(0.125, 1.75);
  t1.phi = PhiSpec::axis_product();
  catalog.terms.push_back(t1);

  InteractionTerm t2;
  t2.axis = 'z';
  t2.support = {1};
  t2.dist = CouplingDistribution::two_point(0.3333333333333333, 0.6);
  t2.phi = PhiSpec::single_site();
  catalog.terms.push_back(t2);

  InteractionTerm t3;
  t3.axis = 'z';
  t3.support = {0, 3};
  t3.dist = CouplingDistribution::uniform(-0.1, 0.7);
  t3.phi = PhiSpec::heis_exchange();
  catalog.terms.push_back(t3);

  InteractionTerm t4;
  t4.axis = 'z';
  t4.support = {2};
  t4.dist = CouplingDistribution::constant(0.9);
  OpMatrix block(2, 2);
  block << cxd(0.5, 0.0), cxd(0.25, -0.125), cxd(0.25, 0.125), cxd(-0.5, 0.0);
  t4.phi = PhiSpec::custom(block, 0.75);
  catalog.terms.push_back(t4);

  std::ostringstream out;
  write_catalog(catalog, out);
  std::istringstream in(out.str());
  const InteractionCatalog loaded = read_catalog(in);

  REQUIRE(loaded.terms.size() == catalog.terms.size());
  for (std::size_t t = 0; t < catalog.terms.size(); ++t) {
    CAPTURE(t);
    const auto& a = catalog.terms[t];
    const auto& b = loaded.terms[t];
    CHECK(a.axis == b.axis);
    CHECK(a.support == b.support);
    CHECK(a.dist.kind == b.dist.kind);
    CHECK(a.dist.p0 == b.dist.p0);
    CHECK(a.dist.p1 == b.dist.p1);
    CHECK(a.phi.kind == b.phi.kind);
    CHECK(a.phi.declared_norm == b.phi.declared_norm);
  }
  const auto& block_in = catalog.terms[3].phi.custom_block;
  const auto& block_out = loaded.terms[3].phi.custom_block;
  REQUIRE(block_out.rows() == 2);
  CHECK((block_in - block_out).cwiseAbs().maxCoeff() == 0.0);

  // Same seed after a round trip means the same couplings.
  const auto before = draw_sample(catalog, 31337, 0);
  const auto after = draw_sample(loaded, 31337, 0);
  CHECK(before.values == after.values);
}
