#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpcalc/qpot.hpp"

namespace qpcalc {

struct CorpusEntry {
  std::string name;
  std::string description;
  std::string source;  // where the data comes from
  QpotDocument document;
  std::optional<std::size_t> jacobi_dimension;
  std::optional<bool> quasi_homogeneous;
};

// QPOT text of a named corpus entry at truncation n; throws DomainError for
// unknown names.
std::string corpus_text(const std::string& name, int n = kDefaultTruncation);
std::vector<std::string> corpus_names();
std::vector<CorpusEntry> load_corpus(int n = kDefaultTruncation);
CorpusEntry corpus_entry(const std::string& name, int n = kDefaultTruncation);

}  // namespace qpcalc
