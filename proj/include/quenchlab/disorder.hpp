#pragma once

// Quenched disorder bookkeeping: which couplings exist, what law each one
// follows, and how a reproducible sample of them is drawn. The catalog's
// term order IS the coupling index; serializing and reloading a catalog must
// reproduce the same bijection or every stored seed loses its meaning.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "quenchlab/phi_spec.hpp"
#include "quenchlab/types.hpp"

namespace quenchlab {

struct CouplingDistribution {
  enum class Kind { gaussian, two_point, uniform, constant };

  Kind kind = Kind::constant;
  double p0 = 0.0;  // gaussian: mean; two_point: magnitude; uniform: lo; constant: value
  double p1 = 0.0;  // gaussian: stddev; two_point: P(+); uniform: hi

  double mean() const;
  double variance() const;

  static CouplingDistribution gaussian(double mean, double stddev);
  static CouplingDistribution two_point(double magnitude, double prob_plus = 0.5);
  static CouplingDistribution uniform(double lo, double hi);
  static CouplingDistribution constant(double value);
};

const char* distribution_kind_name(CouplingDistribution::Kind kind);
CouplingDistribution::Kind distribution_kind_from_name(const std::string& name);

struct InteractionTerm {
  char axis = 'z';           // meaningful for axis_product / single_site
  std::vector<int> support;  // strictly ascending site indices, nonempty
  CouplingDistribution dist;
  PhiSpec phi;
};

struct InteractionCatalog {
  std::vector<InteractionTerm> terms;

  int size() const { return static_cast<int>(terms.size()); }
};

// Validates support ordering and distribution parameters; throws Error.
void validate_catalog(const InteractionCatalog& catalog, int n_sites);

struct DisorderSample {
  std::uint64_t seed = 0;      // per-sample key derived from (master, index)
  std::vector<double> values;  // one coupling per catalog term, same order
};

struct VarianceBudget {
  double total = 0.0;     // sum of per-term variances
  double per_site = 0.0;  // total / n_sites
};

std::uint64_t sample_seed(std::uint64_t master_seed, std::uint64_t sample_index);

// Bit-identical for a fixed (seed, catalog); term draws are independent
// counter streams so evaluation order never matters.
DisorderSample draw_sample_from_seed(const InteractionCatalog& catalog, std::uint64_t seed);
DisorderSample draw_sample(const InteractionCatalog& catalog, std::uint64_t master_seed,
                           std::uint64_t sample_index);

VarianceBudget variance_budget(const InteractionCatalog& catalog, int n_sites);

// One record per line, order preserving. Round-trip is exact for the kinds
// above; custom blocks are written entry by entry.
void write_catalog(const InteractionCatalog& catalog, std::ostream& out);
InteractionCatalog read_catalog(std::istream& in);
void save_catalog(const InteractionCatalog& catalog, const std::string& path);
InteractionCatalog load_catalog(const std::string& path);

}  // namespace quenchlab
