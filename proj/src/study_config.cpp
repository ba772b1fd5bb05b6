#include "quenchlab/study_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace quenchlab {

const char* study_kind_name(StudyKind kind) {
  switch (kind) {
    case StudyKind::concentration: return "concentration";
    case StudyKind::theorem: return "theorem";
    case StudyKind::sweep: return "sweep";
    case StudyKind::assumption: return "assumption";
    case StudyKind::replica_chatterjee: return "replica-chatterjee";
    case StudyKind::replica_gg: return "replica-gg";
    case StudyKind::replica_probe: return "replica-probe";
  }
  throw Error("unknown study kind");
}

StudyKind study_kind_from_name(const std::string& name) {
  if (name == "concentration") return StudyKind::concentration;
  if (name == "theorem") return StudyKind::theorem;
  if (name == "sweep") return StudyKind::sweep;
  if (name == "assumption") return StudyKind::assumption;
  if (name == "replica-chatterjee") return StudyKind::replica_chatterjee;
  if (name == "replica-gg") return StudyKind::replica_gg;
  if (name == "replica-probe") return StudyKind::replica_probe;
  throw Error("unknown study kind '" + name + "'");
}

static std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::map<std::string, std::string>> parse_sections(
    const std::string& text) {
  std::map<std::string, std::map<std::string, std::string>> sections;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error("config line " + std::to_string(line_no) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw Error("config line " + std::to_string(line_no) + ": empty section name");
      sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error("config line " + std::to_string(line_no) + ": empty key");
    if (section.empty())
      throw Error("config line " + std::to_string(line_no) + ": key outside any section");
    sections[section][key] = value;
  }
  return sections;
}

namespace {

class SectionReader {
 public:
  SectionReader(const std::map<std::string, std::map<std::string, std::string>>& sections,
                const std::string& name)
      : name_(name) {
    const auto it = sections.find(name);
    if (it != sections.end()) entries_ = &it->second;
  }

  bool has(const std::string& key) const {
    return entries_ && entries_->find(key) != entries_->end();
  }

  std::string get(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    return entries_->at(key);
  }

  std::string require(const std::string& key) const {
    if (!has(key)) throw Error("config: missing key '" + key + "' in section [" + name_ + "]");
    return entries_->at(key);
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return parse_double(key, entries_->at(key));
  }

  long long integer(const std::string& key, long long fallback) const {
    if (!has(key)) return fallback;
    try {
      return std::stoll(entries_->at(key));
    } catch (...) {
      throw Error("config: field '" + key + "' in [" + name_ + "] is not an integer");
    }
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = entries_->at(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw Error("config: field '" + key + "' in [" + name_ + "] is not a boolean");
  }

  std::vector<double> numbers(const std::string& key) const {
    std::vector<double> out;
    if (!has(key)) return out;
    std::istringstream in(entries_->at(key));
    std::string tok;
    while (in >> tok) out.push_back(parse_double(key, tok));
    return out;
  }

  std::vector<int> integers(const std::string& key) const {
    std::vector<int> out;
    for (double v : numbers(key)) out.push_back(static_cast<int>(v));
    return out;
  }

 private:
  double parse_double(const std::string& key, const std::string& text) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw Error("");
      return v;
    } catch (...) {
      throw Error("config: field '" + key + "' in [" + name_ + "] is not a number");
    }
  }

  std::string name_;
  const std::map<std::string, std::string>* entries_ = nullptr;
};

SpinMagnitude parse_spin(const std::string& text) {
  if (text == "1/2") return SpinMagnitude{1};
  if (text == "3/2") return SpinMagnitude{3};
  if (text == "5/2") return SpinMagnitude{5};
  try {
    std::size_t used = 0;
    const double s = std::stod(text, &used);
    if (used != text.size()) throw Error("");
    const int two_s = static_cast<int>(std::lround(2.0 * s));
    if (two_s < 1 || std::abs(two_s - 2.0 * s) > 1e-9)
      throw Error("");
    return SpinMagnitude{two_s};
  } catch (...) {
    throw Error("config: cannot parse spin '" + text + "'");
  }
}

CouplingDistribution parse_distribution(const std::string& text) {
  std::istringstream in(text);
  std::string kind;
  in >> kind;
  std::vector<double> params;
  double v;
  while (in >> v) params.push_back(v);
  auto param = [&](std::size_t i, double fallback) {
    return i < params.size() ? params[i] : fallback;
  };
  switch (distribution_kind_from_name(kind)) {
    case CouplingDistribution::Kind::gaussian:
      return CouplingDistribution::gaussian(param(0, 0.0), param(1, 1.0));
    case CouplingDistribution::Kind::two_point:
      return CouplingDistribution::two_point(param(0, 1.0), param(1, 0.5));
    case CouplingDistribution::Kind::uniform:
      return CouplingDistribution::uniform(param(0, -1.0), param(1, 1.0));
    case CouplingDistribution::Kind::constant:
      return CouplingDistribution::constant(param(0, 1.0));
  }
  throw Error("config: cannot parse distribution '" + text + "'");
}

std::vector<std::pair<int, double>> parse_rsb_terms(const std::string& text) {
  std::vector<std::pair<int, double>> terms;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw Error("config: rsb term '" + tok + "' must look like power:coefficient");
    try {
      terms.emplace_back(std::stoi(tok.substr(0, colon)), std::stod(tok.substr(colon + 1)));
    } catch (...) {
      throw Error("config: cannot parse rsb term '" + tok + "'");
    }
  }
  if (terms.empty()) throw Error("config: empty rsb term list");
  return terms;
}

}  // namespace

ParsedConfig parse_study_text(const std::string& text) {
  const auto sections = parse_sections(text);
  ParsedConfig parsed;
  parsed.raw_text = text;

  const SectionReader model(sections, "model");
  const SectionReader ensemble(sections, "ensemble");
  const SectionReader study(sections, "study");
  const SectionReader replica(sections, "replica");

  ModelFamilyConfig& family = parsed.base().family;
  family.kind = family_kind_from_name(model.get("family", "heisenberg_chain"));
  family.spin = parse_spin(model.get("spin", "1/2"));
  if (model.has("distribution")) family.dist = parse_distribution(model.require("distribution"));
  family.sk_normalize = model.flag("sk_normalize", true);
  family.field = model.number("field", 0.0);
  {
    std::istringstream in(model.get("order", "uniform z"));
    std::string kind, axis;
    in >> kind >> axis;
    if (kind == "uniform")
      family.staggered = false;
    else if (kind == "staggered")
      family.staggered = true;
    else
      throw Error("config: order must be 'uniform' or 'staggered', got '" + kind + "'");
    if (!axis.empty()) {
      if (axis.size() != 1 || (axis[0] != 'x' && axis[0] != 'y' && axis[0] != 'z'))
        throw Error("config: order axis must be x, y or z");
      family.order_axis = axis[0];
    }
  }

  StudyConfig& base = parsed.base();
  base.size_ladder = ensemble.integers("sizes");
  base.beta = ensemble.number("beta", 1.0);
  base.lambda_grid = ensemble.numbers("lambdas");
  base.samples_per_size = static_cast<int>(ensemble.integer("samples", 100));
  base.master_seed = static_cast<std::uint64_t>(ensemble.integer("seed", 1));
  base.threads = static_cast<int>(ensemble.integer("threads", 1));

  parsed.kind = study_kind_from_name(study.get("kind", "concentration"));
  base.slope_threshold = study.number("slope_threshold", -0.3);
  base.compute_assumption2 = study.flag("assumption2", true);

  parsed.replica.n_replicas = static_cast<int>(replica.integer("n_replicas", 2));
  const std::string supports = replica.get("overlap", "single_sites");
  if (supports == "single_sites")
    parsed.replica.supports = ReplicaStudyConfig::Supports::single_sites;
  else if (supports == "catalog_supports")
    parsed.replica.supports = ReplicaStudyConfig::Supports::catalog_supports;
  else
    throw Error("config: overlap must be single_sites or catalog_supports");
  if (replica.has("rsb")) parsed.replica.rsb_terms = parse_rsb_terms(replica.require("rsb"));
  const std::string engine = replica.get("engine", "auto");
  if (engine == "auto")
    parsed.replica.engine = ReplicaStudyConfig::Engine::auto_select;
  else if (engine == "dense")
    parsed.replica.engine = ReplicaStudyConfig::Engine::dense;
  else if (engine == "classical")
    parsed.replica.engine = ReplicaStudyConfig::Engine::classical;
  else
    throw Error("config: engine must be auto, dense or classical");
  {
    const std::string axis = replica.get("overlap_axis", "z");
    if (axis.size() != 1 || (axis[0] != 'x' && axis[0] != 'y' && axis[0] != 'z'))
      throw Error("config: overlap_axis must be x, y or z");
    parsed.replica.overlap_axis = axis[0];
  }

  return parsed;
}

ParsedConfig load_study_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_study_text(buffer.str());
}

}  // namespace quenchlab
