#pragma once

#include <string>

#include "qpcalc/qpcalc.hpp"

namespace qpcalc::testing {

// Two loops a, b at one node.
inline QuiverPtr two_loops() { return make_quiver({"1"}, {{"a", "1", "1"}, {"b", "1", "1"}}); }
inline QuiverPtr one_loop(const std::string& name = "x") { return make_quiver({"1"}, {{name, "1", "1"}}); }
inline QuiverPtr laufer_quiver() {
  return make_quiver({"1", "2"}, {{"a", "2", "2"}, {"b", "2", "2"}, {"c", "1", "2"}, {"d", "2", "1"}});
}

// "<rational> <path>; ..." on q at truncation n.
inline JetElem el(const QuiverPtr& q, int n, const std::string& text) { return parse_element(text, q, n); }
inline Potential pot(const QuiverPtr& q, int n, const std::string& text) { return necklace_canonicalize(el(q, n, text)); }

inline Potential corpus_potential(const std::string& name, int n = kDefaultTruncation) {
  return corpus_entry(name, n).document.potential;
}

}  // namespace qpcalc::testing
