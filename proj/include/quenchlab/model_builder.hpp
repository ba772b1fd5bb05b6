#pragma once

// Assembly of Hamiltonians and order operators from a catalog plus one
// disorder sample, and the commutator diagnostic that controls the Harris
// correction term.

#include <vector>

#include "quenchlab/disorder.hpp"
#include "quenchlab/spin_algebra.hpp"

namespace quenchlab {

struct OrderOperatorSpec {
  enum class Kind { spin_density, custom };

  Kind kind = Kind::spin_density;
  char axis = 'z';
  std::vector<double> weights;  // per-site a_j; empty means all ones
  OpMatrix custom_matrix;       // full many-body matrix, custom only
  double c_o = 1.0;             // declared norm bound, checked at build

  static OrderOperatorSpec uniform_density(char axis = 'z');
  // a_j = (-1)^{sum of lattice coordinates}, checkerboard on boxes.
  static OrderOperatorSpec staggered_density(const SiteSet& sites, char axis = 'z');
  static OrderOperatorSpec custom(OpMatrix matrix, double c_o);
};

struct PerturbedModel {
  ManyBodyOperator h0;
  ManyBodyOperator order_op;
  int n_sites = 0;
  double lambda = 0.0;
};

// One catalog term bound to a spin magnitude: the Hermitian block it embeds
// and the exact spectral norm that feeds the concentration constant.
struct RealizedTerm {
  std::vector<int> support;
  OpMatrix block;
  double exact_norm = 0.0;
};

RealizedTerm realize_phi(const InteractionTerm& term, SpinMagnitude spin);

// result += coeff * (block acting on `support`, identity elsewhere).
// Support must be strictly ascending; block dim = local_dim^{|support|},
// factors ordered by ascending site.
void add_embedded_block(OpMatrix& result, double coeff, const std::vector<int>& support,
                        const OpMatrix& block, int n_sites, int local_dim);

ManyBodyOperator build_hamiltonian(const InteractionCatalog& catalog, const DisorderSample& sample,
                                   SpinMagnitude spin, const SiteSet& sites);

// max over catalog terms of the exact realized norm; sample independent.
double max_phi_norm(const InteractionCatalog& catalog, SpinMagnitude spin);

ManyBodyOperator build_order_operator(const OrderOperatorSpec& spec, SpinMagnitude spin,
                                      const SiteSet& sites);

// h0 - n_sites * lambda * order_op
ManyBodyOperator perturb(const PerturbedModel& model);

// ||[O, [H, O]]||, the double commutator entering the Harris lower bound.
double assumption2_norm(const ManyBodyOperator& h, const ManyBodyOperator& o);

// One term per bond; a single random J multiplies all three axis products,
// realized as the composite exchange block with norm S(S+1).
InteractionCatalog heisenberg_catalog(const std::vector<std::pair<int, int>>& bonds,
                                      const CouplingDistribution& dist);

}  // namespace quenchlab
