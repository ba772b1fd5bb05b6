#include "quenchlab/model_family.hpp"

#include <cmath>

namespace quenchlab {

const char* family_kind_name(ModelFamilyConfig::Kind kind) {
  switch (kind) {
    case ModelFamilyConfig::Kind::heisenberg_chain: return "heisenberg_chain";
    case ModelFamilyConfig::Kind::xyz_chain: return "xyz_chain";
    case ModelFamilyConfig::Kind::ising_chain: return "ising_chain";
    case ModelFamilyConfig::Kind::sk_ising: return "sk_ising";
    case ModelFamilyConfig::Kind::field_only: return "field_only";
  }
  throw Error("unknown model family");
}

ModelFamilyConfig::Kind family_kind_from_name(const std::string& name) {
  if (name == "heisenberg_chain") return ModelFamilyConfig::Kind::heisenberg_chain;
  if (name == "xyz_chain") return ModelFamilyConfig::Kind::xyz_chain;
  if (name == "ising_chain") return ModelFamilyConfig::Kind::ising_chain;
  if (name == "sk_ising") return ModelFamilyConfig::Kind::sk_ising;
  if (name == "field_only") return ModelFamilyConfig::Kind::field_only;
  throw Error("unknown model family '" + name + "'");
}

SiteSet family_sites(const ModelFamilyConfig&, int n_sites) {
  return SiteSet::chain(n_sites);
}

static std::vector<std::pair<int, int>> chain_bonds(int n) {
  std::vector<std::pair<int, int>> bonds;
  for (int j = 0; j + 1 < n; ++j) bonds.emplace_back(j, j + 1);
  return bonds;
}

static std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> bonds;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) bonds.emplace_back(i, j);
  return bonds;
}

// Width scaling for mean-field models: J ~ dist / sqrt(N).
static CouplingDistribution scaled(const CouplingDistribution& dist, int n) {
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  CouplingDistribution out = dist;
  switch (dist.kind) {
    case CouplingDistribution::Kind::gaussian:
      out.p0 *= s;
      out.p1 *= s;
      break;
    case CouplingDistribution::Kind::two_point:
      out.p0 *= s;
      break;
    case CouplingDistribution::Kind::uniform:
      out.p0 *= s;
      out.p1 *= s;
      break;
    case CouplingDistribution::Kind::constant:
      out.p0 *= s;
      break;
  }
  return out;
}

static InteractionTerm z_product(int i, int j, const CouplingDistribution& dist) {
  InteractionTerm term;
  term.axis = 'z';
  term.support = {std::min(i, j), std::max(i, j)};
  term.dist = dist;
  term.phi = PhiSpec::axis_product();
  return term;
}

InteractionCatalog realize_catalog(const ModelFamilyConfig& family, const SiteSet& sites) {
  const int n = sites.n_sites;
  InteractionCatalog catalog;
  switch (family.kind) {
    case ModelFamilyConfig::Kind::heisenberg_chain:
      return heisenberg_catalog(chain_bonds(n), family.dist);
    case ModelFamilyConfig::Kind::xyz_chain:
      for (const auto& [i, j] : chain_bonds(n))
        for (char axis : {'x', 'y', 'z'}) {
          InteractionTerm term = z_product(i, j, family.dist);
          term.axis = axis;
          catalog.terms.push_back(std::move(term));
        }
      return catalog;
    case ModelFamilyConfig::Kind::ising_chain:
      for (const auto& [i, j] : chain_bonds(n)) catalog.terms.push_back(z_product(i, j, family.dist));
      return catalog;
    case ModelFamilyConfig::Kind::sk_ising: {
      const CouplingDistribution dist = family.sk_normalize ? scaled(family.dist, n) : family.dist;
      for (const auto& [i, j] : all_pairs(n)) catalog.terms.push_back(z_product(i, j, dist));
      return catalog;
    }
    case ModelFamilyConfig::Kind::field_only:
      if (family.field != 0.0)
        for (int j = 0; j < n; ++j) {
          InteractionTerm term;
          term.axis = 'z';
          term.support = {j};
          term.dist = CouplingDistribution::constant(family.field);
          term.phi = PhiSpec::single_site();
          catalog.terms.push_back(std::move(term));
        }
      return catalog;
  }
  throw Error("unknown model family");
}

OrderOperatorSpec realize_order(const ModelFamilyConfig& family, const SiteSet& sites) {
  OrderOperatorSpec spec = family.staggered
                               ? OrderOperatorSpec::staggered_density(sites, family.order_axis)
                               : OrderOperatorSpec::uniform_density(family.order_axis);
  // Spin densities have norm S, so keep the declared bound honest for S > 1/2.
  spec.c_o = std::max(1.0, family.spin.value());
  return spec;
}

}  // namespace quenchlab
