#pragma once

// Report output: a long-format CSV with a fixed header plus a JSON summary,
// both written to a temp file and renamed so interrupted runs never leave
// partial reports. Numbers use shortest round-trippable formatting so equal
// runs produce byte-identical files.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace quenchlab {

struct CsvRow {
  std::string study;
  int n = 0;
  double lambda = 0.0;
  double beta = 0.0;
  std::string quantity;
  double estimate = 0.0;
  double std_error = std::numeric_limits<double>::quiet_NaN();  // NaN prints empty
  double bound = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;
  // Replica-schema extras.
  int n_replicas = 0;
  std::string overlap_id;
  double gap = std::numeric_limits<double>::quiet_NaN();
  double ratio = std::numeric_limits<double>::quiet_NaN();
};

std::string format_g17(double value);

// replica_schema appends the n_replicas/overlap_spec/gap/ratio columns.
void write_csv_atomic(const std::string& path, const std::vector<CsvRow>& rows,
                      bool replica_schema);

void write_text_atomic(const std::string& path, const std::string& text);

// FNV-1a over the exact config bytes, as a 16-digit hex tag.
std::string config_hash_hex(const std::string& text);

}  // namespace quenchlab
