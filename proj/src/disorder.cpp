#include "quenchlab/disorder.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "quenchlab/rng.hpp"
#include "quenchlab/spin_algebra.hpp"

namespace quenchlab {

double CouplingDistribution::mean() const {
  switch (kind) {
    case Kind::gaussian: return p0;
    case Kind::two_point: return p0 * (2.0 * p1 - 1.0);
    case Kind::uniform: return 0.5 * (p0 + p1);
    case Kind::constant: return p0;
  }
  throw Error("unknown distribution kind");
}

double CouplingDistribution::variance() const {
  switch (kind) {
    case Kind::gaussian: return p1 * p1;
    case Kind::two_point: return p0 * p0 * 4.0 * p1 * (1.0 - p1);
    case Kind::uniform: {
      const double w = p1 - p0;
      return w * w / 12.0;
    }
    case Kind::constant: return 0.0;
  }
  throw Error("unknown distribution kind");
}

CouplingDistribution CouplingDistribution::gaussian(double mean, double stddev) {
  if (stddev < 0.0) throw Error("gaussian stddev must be nonnegative");
  return {Kind::gaussian, mean, stddev};
}

CouplingDistribution CouplingDistribution::two_point(double magnitude, double prob_plus) {
  if (prob_plus < 0.0 || prob_plus > 1.0) throw Error("two_point probability outside [0,1]");
  return {Kind::two_point, magnitude, prob_plus};
}

CouplingDistribution CouplingDistribution::uniform(double lo, double hi) {
  if (!(lo <= hi)) throw Error("uniform bounds out of order");
  return {Kind::uniform, lo, hi};
}

CouplingDistribution CouplingDistribution::constant(double value) {
  return {Kind::constant, value, 0.0};
}

const char* distribution_kind_name(CouplingDistribution::Kind kind) {
  switch (kind) {
    case CouplingDistribution::Kind::gaussian: return "gaussian";
    case CouplingDistribution::Kind::two_point: return "two_point";
    case CouplingDistribution::Kind::uniform: return "uniform";
    case CouplingDistribution::Kind::constant: return "constant";
  }
  throw Error("unknown distribution kind");
}

CouplingDistribution::Kind distribution_kind_from_name(const std::string& name) {
  if (name == "gaussian") return CouplingDistribution::Kind::gaussian;
  if (name == "two_point") return CouplingDistribution::Kind::two_point;
  if (name == "uniform") return CouplingDistribution::Kind::uniform;
  if (name == "constant") return CouplingDistribution::Kind::constant;
  throw Error("unknown distribution kind '" + name + "'");
}

const char* phi_kind_name(PhiSpec::Kind kind) {
  switch (kind) {
    case PhiSpec::Kind::axis_product: return "axis_product";
    case PhiSpec::Kind::single_site: return "single_site";
    case PhiSpec::Kind::heis_exchange: return "heis_exchange";
    case PhiSpec::Kind::custom: return "custom";
  }
  throw Error("unknown phi kind");
}

PhiSpec::Kind phi_kind_from_name(const std::string& name) {
  if (name == "axis_product") return PhiSpec::Kind::axis_product;
  if (name == "single_site") return PhiSpec::Kind::single_site;
  if (name == "heis_exchange") return PhiSpec::Kind::heis_exchange;
  if (name == "custom") return PhiSpec::Kind::custom;
  throw Error("unknown phi kind '" + name + "'");
}

void validate_catalog(const InteractionCatalog& catalog, int n_sites) {
  for (std::size_t t = 0; t < catalog.terms.size(); ++t) {
    const auto& term = catalog.terms[t];
    const auto where = "catalog term " + std::to_string(t);
    if (term.support.empty()) throw Error(where + ": empty support");
    for (std::size_t k = 0; k < term.support.size(); ++k) {
      const int site = term.support[k];
      if (site < 0 || site >= n_sites) throw Error(where + ": site out of range");
      if (k > 0 && term.support[k - 1] >= site)
        throw Error(where + ": support must be strictly ascending");
    }
    if (term.axis != 'x' && term.axis != 'y' && term.axis != 'z')
      throw Error(where + ": axis must be x, y or z");
    if (term.phi.kind == PhiSpec::Kind::single_site && term.support.size() != 1)
      throw Error(where + ": single_site phi needs |support| = 1");
    if (term.phi.kind == PhiSpec::Kind::heis_exchange && term.support.size() != 2)
      throw Error(where + ": heis_exchange phi needs |support| = 2");
    if (term.phi.kind == PhiSpec::Kind::custom) {
      const auto& block = term.phi.custom_block;
      if (block.rows() == 0 || block.rows() != block.cols())
        throw Error(where + ": custom block must be square and nonempty");
      if (hermiticity_defect(block) > kHermitianTol)
        throw Error(where + ": custom block is not Hermitian");
    }
  }
}

std::uint64_t sample_seed(std::uint64_t master_seed, std::uint64_t sample_index) {
  return hash_combine(mix64(master_seed), sample_index);
}

static double draw_one(const CouplingDistribution& dist, std::uint64_t seed, std::uint64_t term) {
  const std::uint64_t k0 = hash_combine(seed, 2 * term);
  const std::uint64_t k1 = hash_combine(seed, 2 * term + 1);
  switch (dist.kind) {
    case CouplingDistribution::Kind::gaussian:
      return dist.p0 + dist.p1 * standard_normal(k0, k1);
    case CouplingDistribution::Kind::two_point:
      return uniform01(k0) <= dist.p1 ? dist.p0 : -dist.p0;
    case CouplingDistribution::Kind::uniform:
      return dist.p0 + (dist.p1 - dist.p0) * uniform01(k0);
    case CouplingDistribution::Kind::constant:
      return dist.p0;
  }
  throw Error("unknown distribution kind");
}

DisorderSample draw_sample_from_seed(const InteractionCatalog& catalog, std::uint64_t seed) {
  DisorderSample sample;
  sample.seed = seed;
  sample.values.resize(catalog.terms.size());
  for (std::size_t t = 0; t < catalog.terms.size(); ++t)
    sample.values[t] = draw_one(catalog.terms[t].dist, seed, t);
  return sample;
}

DisorderSample draw_sample(const InteractionCatalog& catalog, std::uint64_t master_seed,
                           std::uint64_t sample_index) {
  return draw_sample_from_seed(catalog, sample_seed(master_seed, sample_index));
}

VarianceBudget variance_budget(const InteractionCatalog& catalog, int n_sites) {
  if (n_sites <= 0) throw Error("variance_budget: n_sites must be positive");
  VarianceBudget budget;
  for (const auto& term : catalog.terms) budget.total += term.dist.variance();
  budget.per_site = budget.total / n_sites;
  return budget;
}

// Text format: shortest round-trippable decimal for every real number.

static std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_catalog(const InteractionCatalog& catalog, std::ostream& out) {
  out << "# quenchlab catalog v1\n";
  for (const auto& term : catalog.terms) {
    out << "term axis=" << term.axis << " support=";
    for (std::size_t k = 0; k < term.support.size(); ++k) {
      if (k) out << ',';
      out << term.support[k];
    }
    out << " dist=" << distribution_kind_name(term.dist.kind) << " dp0=" << fmt(term.dist.p0)
        << " dp1=" << fmt(term.dist.p1) << " phi=" << phi_kind_name(term.phi.kind)
        << " norm=" << fmt(term.phi.declared_norm);
    if (term.phi.kind == PhiSpec::Kind::custom) {
      const auto& block = term.phi.custom_block;
      out << " dim=" << block.rows() << " block=";
      for (Eigen::Index r = 0; r < block.rows(); ++r)
        for (Eigen::Index c = 0; c < block.cols(); ++c) {
          if (r || c) out << ',';
          out << fmt(block(r, c).real()) << ':' << fmt(block(r, c).imag());
        }
    }
    out << '\n';
  }
}

static std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

InteractionCatalog read_catalog(std::istream& in) {
  InteractionCatalog catalog;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string word;
    fields >> word;
    if (word != "term") throw Error("catalog: expected 'term' record, got '" + word + "'");
    InteractionTerm term;
    int block_dim = 0;
    std::string block_text;
    while (fields >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos) throw Error("catalog: malformed field '" + word + "'");
      const std::string key = word.substr(0, eq);
      const std::string value = word.substr(eq + 1);
      if (key == "axis") {
        if (value.size() != 1) throw Error("catalog: bad axis '" + value + "'");
        term.axis = value[0];
      } else if (key == "support") {
        for (const auto& part : split(value, ',')) term.support.push_back(std::stoi(part));
      } else if (key == "dist") {
        term.dist.kind = distribution_kind_from_name(value);
      } else if (key == "dp0") {
        term.dist.p0 = std::stod(value);
      } else if (key == "dp1") {
        term.dist.p1 = std::stod(value);
      } else if (key == "phi") {
        term.phi.kind = phi_kind_from_name(value);
      } else if (key == "norm") {
        term.phi.declared_norm = std::stod(value);
      } else if (key == "dim") {
        block_dim = std::stoi(value);
      } else if (key == "block") {
        block_text = value;
      } else {
        throw Error("catalog: unknown field '" + key + "'");
      }
    }
    if (term.phi.kind == PhiSpec::Kind::custom) {
      if (block_dim <= 0) throw Error("catalog: custom phi without dim");
      term.phi.custom_block = OpMatrix::Zero(block_dim, block_dim);
      const auto entries = split(block_text, ',');
      if (static_cast<int>(entries.size()) != block_dim * block_dim)
        throw Error("catalog: custom block entry count mismatch");
      for (int idx = 0; idx < block_dim * block_dim; ++idx) {
        const auto parts = split(entries[idx], ':');
        if (parts.size() != 2) throw Error("catalog: malformed block entry");
        term.phi.custom_block(idx / block_dim, idx % block_dim) =
            cxd(std::stod(parts[0]), std::stod(parts[1]));
      }
    }
    catalog.terms.push_back(std::move(term));
  }
  return catalog;
}

void save_catalog(const InteractionCatalog& catalog, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_catalog(catalog, out);
  if (!out.good()) throw Error("write failed for '" + path + "'");
}

InteractionCatalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_catalog(in);
}

}  // namespace quenchlab
