#include "qpcalc/corpus.hpp"

#include <sstream>

#include "qpcalc/errors.hpp"

namespace qpcalc {

namespace {

std::string header(const std::string& nodes, const std::vector<std::string>& arrows, int n) {
  std::ostringstream out;
  out << "nodes " << nodes << '\n';
  for (const auto& a : arrows) out << "arrow " << a << '\n';
  out << "truncation " << n << "\npotential\n";
  return out.str();
}

std::string brown_wemyss(int n) {
  std::ostringstream out;
  out << "# a^2 b - sum_{r>=4} (-1)^r b^r / r, cut at the truncation order\n";
  out << header("1", {"a 1 1", "b 1 1"}, n);
  out << "  1 a a b\n";
  for (int r = 4; r <= n; ++r) {
    out << "  " << (r % 2 == 0 ? "-1/" : "1/") << r;
    for (int i = 0; i < r; ++i) out << " b";
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

struct Spec {
  std::string name;
  std::string description;
  std::string source;
  std::optional<std::size_t> dimension;
  std::optional<bool> quasi_homogeneous;
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> all = {
      {"laufer", "Laufer flop: two nodes, loops a, b at node 2, c: 1 -> 2, d: 2 -> 1", "Laufer's D4 flop", std::nullopt,
       std::nullopt},
      {"laufer-loops", "contraction algebra of the Laufer flop, a^2 b - 1/4 b^4", "Laufer's D4 flop", 9, true},
      {"brown-wemyss", "Brown-Wemyss flop, a^2 b - sum_{r>=4} (-1)^r b^r / r", "Brown and Wemyss", 9, false},
      {"cusp-loop", "one loop, x^3 / 3", "toy example", 2, true},
      {"quartic-loop", "one loop, x^4 / 4", "toy example", 3, true},
  };
  return all;
}

}  // namespace

std::string corpus_text(const std::string& name, int n) {
  if (name == "laufer") {
    return header("1 2", {"a 2 2", "b 2 2", "c 1 2", "d 2 1"}, n) + "  1 a a b\n  -1/4 b b b b\n  1 c b b d\n  1 c d c d\nend\n";
  }
  if (name == "laufer-loops") return header("1", {"a 1 1", "b 1 1"}, n) + "  1 a a b\n  -1/4 b b b b\nend\n";
  if (name == "brown-wemyss") return brown_wemyss(n);
  if (name == "cusp-loop") return header("1", {"x 1 1"}, n) + "  1/3 x x x\nend\n";
  if (name == "quartic-loop") return header("1", {"x 1 1"}, n) + "  1/4 x x x x\nend\n";
  throw DomainError("unknown corpus entry '" + name + "'");
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& s : specs()) out.push_back(s.name);
  return out;
}

CorpusEntry corpus_entry(const std::string& name, int n) {
  for (const auto& s : specs()) {
    if (s.name == name) return {s.name, s.description, s.source, parse_qpot(corpus_text(name, n)), s.dimension, s.quasi_homogeneous};
  }
  throw DomainError("unknown corpus entry '" + name + "'");
}

std::vector<CorpusEntry> load_corpus(int n) {
  std::vector<CorpusEntry> out;
  for (const auto& s : specs()) out.push_back(corpus_entry(s.name, n));
  return out;
}

}  // namespace qpcalc
