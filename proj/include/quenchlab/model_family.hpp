#pragma once

// Named model families a study config can reference: the chain and
// all-to-all catalogs used throughout, plus the matching order operator.
// A family is realized per system size.

#include <string>

#include "quenchlab/model_builder.hpp"

namespace quenchlab {

struct ModelFamilyConfig {
  enum class Kind {
    heisenberg_chain,  // nearest-neighbor bonds, one J per bond on all axes
    xyz_chain,         // nearest-neighbor bonds, independent J per axis
    ising_chain,       // nearest-neighbor z products (classical)
    sk_ising,          // all-to-all z products (classical)
    field_only,        // no couplings (optionally a constant z field)
  };

  Kind kind = Kind::heisenberg_chain;
  SpinMagnitude spin{1};
  CouplingDistribution dist = CouplingDistribution::gaussian(0.0, 1.0);
  bool sk_normalize = true;  // scale the coupling width by 1/sqrt(N)
  char order_axis = 'z';
  bool staggered = false;
  double field = 0.0;  // field_only: constant coupling on every site
};

const char* family_kind_name(ModelFamilyConfig::Kind kind);
ModelFamilyConfig::Kind family_kind_from_name(const std::string& name);

SiteSet family_sites(const ModelFamilyConfig& family, int n_sites);
InteractionCatalog realize_catalog(const ModelFamilyConfig& family, const SiteSet& sites);
OrderOperatorSpec realize_order(const ModelFamilyConfig& family, const SiteSet& sites);

}  // namespace quenchlab
