#pragma once

// Flat structured-text study configs: [section] headers with key = value
// lines, hand-editable and hashable. One file describes the model family,
// the ensemble, and the study to run on it.

#include <map>
#include <string>

#include "quenchlab/replica_lab.hpp"

namespace quenchlab {

enum class StudyKind {
  concentration,
  theorem,
  sweep,
  assumption,
  replica_chatterjee,
  replica_gg,
  replica_probe,
};

const char* study_kind_name(StudyKind kind);
StudyKind study_kind_from_name(const std::string& name);

struct ParsedConfig {
  StudyKind kind = StudyKind::concentration;
  ReplicaStudyConfig replica;  // .base carries the ensemble settings
  std::string raw_text;        // exact file contents, for hashing

  StudyConfig& base() { return replica.base; }
  const StudyConfig& base() const { return replica.base; }
};

// section -> key -> value; parse errors carry line numbers.
std::map<std::string, std::map<std::string, std::string>> parse_sections(const std::string& text);

ParsedConfig parse_study_text(const std::string& text);
ParsedConfig load_study_file(const std::string& path);

}  // namespace quenchlab
