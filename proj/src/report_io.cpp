#include "quenchlab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "quenchlab/types.hpp"

namespace quenchlab {

std::string format_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

static std::string field(double value) {
  if (std::isnan(value)) return "";
  return format_g17(value);
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp + "' for writing");
    out << text;
    if (!out.good()) throw Error("write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("cannot rename '" + tmp + "' to '" + path + "'");
}

void write_csv_atomic(const std::string& path, const std::vector<CsvRow>& rows,
                      bool replica_schema) {
  std::string text = "study,N,lambda,beta,quantity,estimate,std_error,bound,seed";
  if (replica_schema) text += ",n_replicas,overlap_spec,gap,ratio";
  text += '\n';
  for (const auto& row : rows) {
    text += row.study;
    text += ',' + std::to_string(row.n);
    text += ',' + format_g17(row.lambda);
    text += ',' + format_g17(row.beta);
    text += ',' + row.quantity;
    text += ',' + field(row.estimate);
    text += ',' + field(row.std_error);
    text += ',' + field(row.bound);
    text += ',' + std::to_string(row.seed);
    if (replica_schema) {
      text += ',' + std::to_string(row.n_replicas);
      text += ',' + row.overlap_id;
      text += ',' + field(row.gap);
      text += ',' + field(row.ratio);
    }
    text += '\n';
  }
  write_text_atomic(path, text);
}

std::string config_hash_hex(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char byte : text) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace quenchlab
