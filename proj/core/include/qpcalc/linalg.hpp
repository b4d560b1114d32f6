#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <utility>

#include "qpcalc/rational.hpp"

namespace qpcalc {

// Sparse exact row echelon form. Each stored row has a pivot equal to its first
// key (in Compare order) with coefficient 1; pivots are distinct. Rows may
// optionally carry the combination of inserted vectors they came from, which
// turns `reduce` into a solver.
template <typename Key, typename Compare = std::less<Key>>
class Echelon {
 public:
  using Vec = std::map<Key, Rational, Compare>;
  using Combination = std::map<std::size_t, Rational>;

  explicit Echelon(Compare cmp = Compare()) : cmp_(cmp), rows_(cmp) {}

  [[nodiscard]] std::size_t rank() const { return rows_.size(); }
  [[nodiscard]] Vec empty_vec() const { return Vec(cmp_); }

  // Residual of v modulo the span; the residual has no pivot keys. When
  // `used` is given, v = sum(used[j] * input_j) + residual afterwards.
  Vec reduce(Vec v, Combination* used = nullptr) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      const Key key = it->first;
      const Rational c = it->second;
      axpy(v, -c, row->second.vec);
      if (used) axpy(*used, c, row->second.combo);
      it = v.lower_bound(key);
    }
    return v;
  }

  [[nodiscard]] bool contains(const Vec& v) const { return reduce(v).empty(); }

  // Inserts v tagged as input number `tag`; returns false when v is dependent.
  bool insert(Vec v, std::size_t tag = 0) {
    Combination combo;
    combo.emplace(tag, Rational(1));
    Combination used;
    v = reduce(std::move(v), &used);
    if (v.empty()) return false;
    axpy(combo, Rational(-1), used);
    const Rational inv = Rational(1) / v.begin()->second;
    for (auto& [k, c] : v) c *= inv;
    for (auto& [k, c] : combo) c *= inv;
    Key pivot = v.begin()->first;
    rows_.emplace(std::move(pivot), Row{std::move(v), std::move(combo)});
    return true;
  }

  [[nodiscard]] bool has_pivot(const Key& k) const { return rows_.count(k) != 0; }

  template <typename Fn>
  void for_each_row(Fn&& fn) const {
    for (const auto& [pivot, row] : rows_) fn(pivot, row.vec);
  }

  template <typename M>
  static void axpy(M& target, const Rational& c, const M& src) {
    if (c.is_zero()) return;
    for (const auto& [k, v] : src) {
      auto [it, inserted] = target.try_emplace(k, c * v);
      if (!inserted) {
        it->second += c * v;
        if (it->second.is_zero()) target.erase(it);
      }
    }
  }

 private:
  struct Row {
    Vec vec;
    Combination combo;
  };

  Compare cmp_;
  std::map<Key, Row, Compare> rows_;
};

}  // namespace qpcalc
