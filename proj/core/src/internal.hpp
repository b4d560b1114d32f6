#pragma once

// Helpers shared by the implementation files; not installed.

#include <map>

#include "qpcalc/calculus.hpp"
#include "qpcalc/jet.hpp"
#include "qpcalc/linalg.hpp"

namespace qpcalc::detail {

using PathVec = std::map<Path, Rational>;

inline PathVec to_vec(const JetElem& f) { return PathVec(f.terms().begin(), f.terms().end()); }

inline JetElem from_vec(const QuiverPtr& q, int n, const PathVec& v) {
  JetElem out(q, n);
  for (const auto& [p, c] : v) out.add_term(p, c);
  return out;
}

// Canonical necklace coefficients of f·w, keeping cycles of length <= max_len.
inline void add_cyclic_product(PathVec& out, const Rational& scale, const JetElem& f, const Path& w, std::size_t max_len) {
  const Quiver& q = f.quiver();
  for (const auto& [t, c] : f.terms()) {
    if (t.length() + w.length() > max_len) break;
    auto prod = concat(q, t, w);
    if (!prod || !is_cycle(q, *prod) || prod->empty()) continue;
    Path canon = max_rotation(q, *prod);
    auto [it, inserted] = out.try_emplace(canon, scale * c);
    if (!inserted) {
      it->second += scale * c;
      if (it->second.is_zero()) out.erase(it);
    }
  }
}

}  // namespace qpcalc::detail
