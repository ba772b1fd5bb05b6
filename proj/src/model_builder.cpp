#include "quenchlab/model_builder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace quenchlab {

OrderOperatorSpec OrderOperatorSpec::uniform_density(char axis) {
  OrderOperatorSpec spec;
  spec.kind = Kind::spin_density;
  spec.axis = axis;
  return spec;
}

OrderOperatorSpec OrderOperatorSpec::staggered_density(const SiteSet& sites, char axis) {
  OrderOperatorSpec spec;
  spec.kind = Kind::spin_density;
  spec.axis = axis;
  spec.weights.resize(sites.n_sites);
  for (int j = 0; j < sites.n_sites; ++j) {
    const auto coord = sites.coordinate(j);
    const int parity = std::accumulate(coord.begin(), coord.end(), 0);
    spec.weights[j] = (parity % 2 == 0) ? 1.0 : -1.0;
  }
  return spec;
}

OrderOperatorSpec OrderOperatorSpec::custom(OpMatrix matrix, double c_o) {
  OrderOperatorSpec spec;
  spec.kind = Kind::custom;
  spec.custom_matrix = std::move(matrix);
  spec.c_o = c_o;
  return spec;
}

static const LocalOperator& axis_matrix(const SpinTriple& triple, char axis) {
  switch (axis) {
    case 'x': return triple.sx;
    case 'y': return triple.sy;
    case 'z': return triple.sz;
  }
  throw Error("axis must be x, y or z");
}

RealizedTerm realize_phi(const InteractionTerm& term, SpinMagnitude spin) {
  if (term.support.size() > 4) throw Error("interaction support larger than 4 sites");
  const int d = spin.local_dim();
  const auto triple = spin_matrices(spin);
  RealizedTerm out;
  out.support = term.support;

  switch (term.phi.kind) {
    case PhiSpec::Kind::single_site:
      if (term.support.size() != 1) throw Error("single_site phi needs one support site");
      out.block = axis_matrix(triple, term.axis).entries;
      break;
    case PhiSpec::Kind::axis_product: {
      const auto& local = axis_matrix(triple, term.axis).entries;
      out.block = local;
      for (std::size_t k = 1; k < term.support.size(); ++k) out.block = kron(out.block, local);
      break;
    }
    case PhiSpec::Kind::heis_exchange: {
      if (term.support.size() != 2) throw Error("heis_exchange phi needs two support sites");
      out.block = kron(triple.sx.entries, triple.sx.entries) +
                  kron(triple.sy.entries, triple.sy.entries) +
                  kron(triple.sz.entries, triple.sz.entries);
      break;
    }
    case PhiSpec::Kind::custom: {
      Eigen::Index want = 1;
      for (std::size_t k = 0; k < term.support.size(); ++k) want *= d;
      if (term.phi.custom_block.rows() != want || term.phi.custom_block.cols() != want)
        throw Error("custom phi block dimension does not match support");
      if (hermiticity_defect(term.phi.custom_block) > kHermitianTol)
        throw Error("custom phi block is not Hermitian");
      out.block = term.phi.custom_block;
      break;
    }
  }

  Eigen::SelfAdjointEigenSolver<OpMatrix> solver(out.block, Eigen::EigenvaluesOnly);
  out.exact_norm = solver.eigenvalues().cwiseAbs().maxCoeff();
  if (term.phi.declared_norm > 0.0 && out.exact_norm > term.phi.declared_norm + 1e-12)
    throw Error("realized phi norm exceeds its declared bound");
  return out;
}

void add_embedded_block(OpMatrix& result, double coeff, const std::vector<int>& support,
                        const OpMatrix& block, int n_sites, int local_dim) {
  const int nx = static_cast<int>(support.size());
  for (int k = 0; k < nx; ++k) {
    if (support[k] < 0 || support[k] >= n_sites) throw Error("embed: site out of range");
    if (k > 0 && support[k - 1] >= support[k]) throw Error("embed: support must be ascending");
  }

  // Physical stride of each site: site 0 is the most significant digit.
  std::vector<Eigen::Index> stride(n_sites);
  Eigen::Index acc = 1;
  for (int j = n_sites - 1; j >= 0; --j) {
    stride[j] = acc;
    acc *= local_dim;
  }
  const Eigen::Index dim = acc;
  if (result.rows() != dim || result.cols() != dim) throw Error("embed: result dimension mismatch");

  Eigen::Index block_dim = 1;
  for (int k = 0; k < nx; ++k) block_dim *= local_dim;
  if (block.rows() != block_dim || block.cols() != block_dim)
    throw Error("embed: block dimension mismatch");

  // Offset of every block index within the full space. Digit k of the block
  // index belongs to support[k], most significant first.
  std::vector<Eigen::Index> place(block_dim);
  for (Eigen::Index a = 0; a < block_dim; ++a) {
    Eigen::Index rem = a, offset = 0;
    for (int k = nx - 1; k >= 0; --k) {
      offset += (rem % local_dim) * stride[support[k]];
      rem /= local_dim;
    }
    place[a] = offset;
  }

  std::vector<int> rest_sites;
  for (int j = 0; j < n_sites; ++j)
    if (std::find(support.begin(), support.end(), j) == support.end()) rest_sites.push_back(j);
  Eigen::Index rest_dim = 1;
  for (std::size_t k = 0; k < rest_sites.size(); ++k) rest_dim *= local_dim;

  for (Eigen::Index r = 0; r < rest_dim; ++r) {
    Eigen::Index rem = r, base = 0;
    for (int k = static_cast<int>(rest_sites.size()) - 1; k >= 0; --k) {
      base += (rem % local_dim) * stride[rest_sites[k]];
      rem /= local_dim;
    }
    for (Eigen::Index a = 0; a < block_dim; ++a)
      for (Eigen::Index b = 0; b < block_dim; ++b)
        result(base + place[a], base + place[b]) += coeff * block(a, b);
  }
}

ManyBodyOperator build_hamiltonian(const InteractionCatalog& catalog, const DisorderSample& sample,
                                   SpinMagnitude spin, const SiteSet& sites) {
  if (sample.values.size() != catalog.terms.size())
    throw Error("disorder sample not aligned with catalog");
  validate_catalog(catalog, sites.n_sites);

  ManyBodyOperator h = many_body_zero(sites.n_sites, spin.local_dim());
  for (std::size_t t = 0; t < catalog.terms.size(); ++t) {
    const auto realized = realize_phi(catalog.terms[t], spin);
    add_embedded_block(h.entries, sample.values[t], realized.support, realized.block,
                       sites.n_sites, spin.local_dim());
  }
  h.hermitian = true;
  if (hermiticity_defect(h.entries) > kHermitianTol * std::max(1.0, h.entries.norm()))
    throw Error("built Hamiltonian failed the hermiticity check");
  return h;
}

double max_phi_norm(const InteractionCatalog& catalog, SpinMagnitude spin) {
  double c_phi = 0.0;
  for (const auto& term : catalog.terms)
    c_phi = std::max(c_phi, realize_phi(term, spin).exact_norm);
  return c_phi;
}

ManyBodyOperator build_order_operator(const OrderOperatorSpec& spec, SpinMagnitude spin,
                                      const SiteSet& sites) {
  const int n = sites.n_sites;
  const int d = spin.local_dim();

  if (spec.kind == OrderOperatorSpec::Kind::custom) {
    ManyBodyOperator o = many_body_zero(n, d);
    if (spec.custom_matrix.rows() != o.dim() || spec.custom_matrix.cols() != o.dim())
      throw Error("custom order operator has the wrong dimension");
    if (hermiticity_defect(spec.custom_matrix) > kHermitianTol)
      throw Error("custom order operator is not Hermitian");
    o.entries = spec.custom_matrix;
    o.hermitian = true;
    if (operator_norm(o) > spec.c_o + 1e-12)
      throw Error("order operator norm exceeds its declared bound");
    return o;
  }

  std::vector<double> weights = spec.weights;
  if (weights.empty()) weights.assign(n, 1.0);
  if (static_cast<int>(weights.size()) != n)
    throw Error("order operator weights length does not match the site count");

  const auto triple = spin_matrices(spin);
  const auto& local = axis_matrix(triple, spec.axis).entries;
  ManyBodyOperator o = many_body_zero(n, d);
  for (int j = 0; j < n; ++j)
    add_embedded_block(o.entries, weights[j] / n, {j}, local, n, d);
  o.hermitian = true;

  // Single-axis densities commute site by site, so the norm is exact:
  // (S/N) * sum_j |a_j|.
  double abs_sum = 0.0;
  for (double w : weights) abs_sum += std::abs(w);
  const double norm = spin.value() * abs_sum / n;
  if (norm > spec.c_o + 1e-12) throw Error("order operator norm exceeds its declared bound");
  return o;
}

ManyBodyOperator perturb(const PerturbedModel& model) {
  if (model.h0.dim() != model.order_op.dim())
    throw Error("perturb: Hamiltonian and order operator dimensions differ");
  return model.h0 + (-static_cast<double>(model.n_sites) * model.lambda) * model.order_op;
}

double assumption2_norm(const ManyBodyOperator& h, const ManyBodyOperator& o) {
  if (h.dim() != o.dim()) throw Error("assumption2_norm: dimension mismatch");
  ManyBodyOperator outer = commutator(o, commutator(h, o));
  // [O, [H, O]] is Hermitian for Hermitian H, O.
  if (h.hermitian && o.hermitian &&
      hermiticity_defect(outer.entries) <=
          kHermitianTol * std::max(1.0, outer.entries.norm()))
    outer.hermitian = true;
  return operator_norm(outer);
}

InteractionCatalog heisenberg_catalog(const std::vector<std::pair<int, int>>& bonds,
                                      const CouplingDistribution& dist) {
  InteractionCatalog catalog;
  catalog.terms.reserve(bonds.size());
  for (const auto& [i, j] : bonds) {
    if (i == j) throw Error("heisenberg_catalog: bond endpoints must differ");
    InteractionTerm term;
    term.axis = 'z';
    term.support = {std::min(i, j), std::max(i, j)};
    term.dist = dist;
    term.phi = PhiSpec::heis_exchange();
    catalog.terms.push_back(std::move(term));
  }
  return catalog;
}

}  // namespace quenchlab
