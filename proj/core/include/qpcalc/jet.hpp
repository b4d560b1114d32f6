#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpcalc/quiver.hpp"
#include "qpcalc/rational.hpp"

namespace qpcalc {

// Element of the complete path algebra modulo paths of length > N.
//
// Every element carries its quiver and truncation order N; binary operations on
// elements with different contexts throw ContextError. Zero coefficients are
// never stored, so equality is a map comparison.
class JetElem {
 public:
  using Terms = std::map<Path, Rational>;

  JetElem(QuiverPtr quiver, int truncation);

  static JetElem zero(const QuiverPtr& q, int n) { return {q, n}; }
  static JetElem idempotent(const QuiverPtr& q, int n, NodeId node);
  static JetElem one(const QuiverPtr& q, int n);
  static JetElem arrow(const QuiverPtr& q, int n, ArrowId a);
  static JetElem path(const QuiverPtr& q, int n, const Path& p, const Rational& c = Rational(1));

  [[nodiscard]] const Quiver& quiver() const { return *quiver_; }
  [[nodiscard]] const QuiverPtr& quiver_ptr() const { return quiver_; }
  [[nodiscard]] int truncation() const { return truncation_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] Rational coeff(const Path& p) const;

  // Adds c·p; paths longer than N are dropped.
  void add_term(const Path& p, const Rational& c);

  // Smallest degree present; nullopt for zero.
  [[nodiscard]] std::optional<int> order() const;
  [[nodiscard]] int max_degree() const;
  // Sum of the terms of exactly this degree (same truncation).
  [[nodiscard]] JetElem homogeneous(int degree) const;
  // Drops terms of degree > r, keeping the truncation order.
  [[nodiscard]] JetElem jet(int r) const;
  // Projection to a coarser truncation M <= N.
  [[nodiscard]] JetElem truncated(int m) const;
  // Re-homes this element at another truncation; terms above the target are dropped.
  [[nodiscard]] JetElem with_truncation(int m) const;
  // e_i · this · e_j
  [[nodiscard]] JetElem corner(NodeId i, NodeId j) const;

  JetElem& operator+=(const JetElem& o);
  JetElem& operator-=(const JetElem& o);
  JetElem& operator*=(const Rational& c);

  friend JetElem operator+(JetElem a, const JetElem& b) { return a += b; }
  friend JetElem operator-(JetElem a, const JetElem& b) { return a -= b; }
  friend JetElem operator-(JetElem a) { return a *= Rational(-1); }
  friend JetElem operator*(const Rational& c, JetElem a) { return a *= c; }
  friend JetElem operator*(const JetElem& a, const JetElem& b);

  friend bool operator==(const JetElem& a, const JetElem& b);

 private:
  QuiverPtr quiver_;
  int truncation_;
  Terms terms_;
};

void require_same_context(const JetElem& a, const JetElem& b);

JetElem add(const JetElem& x, const JetElem& y);
JetElem scale(const Rational& c, const JetElem& x);
JetElem multiply(const JetElem& x, const JetElem& y);
JetElem commutator(const JetElem& x, const JetElem& y);

// Human-readable form, e.g. "a a b - 1/4 b b b b".
std::string to_string(const JetElem& f);

// Finite sum of path ⊗ path, truncated by total length.
class TensorJet {
 public:
  using Key = std::pair<Path, Path>;
  using Terms = std::map<Key, Rational>;

  TensorJet(QuiverPtr quiver, int truncation);

  [[nodiscard]] const Quiver& quiver() const { return *quiver_; }
  [[nodiscard]] const QuiverPtr& quiver_ptr() const { return quiver_; }
  [[nodiscard]] int truncation() const { return truncation_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  void add_term(const Path& left, const Path& right, const Rational& c);

  TensorJet& operator+=(const TensorJet& o);
  TensorJet& operator*=(const Rational& c);
  friend TensorJet operator+(TensorJet a, const TensorJet& b) { return a += b; }
  friend bool operator==(const TensorJet& a, const TensorJet& b);

 private:
  QuiverPtr quiver_;
  int truncation_;
  Terms terms_;
};

// Outer action u(p⊗q)v = up ⊗ qv.
TensorJet outer_mul(const JetElem& u, const TensorJet& t, const JetElem& v);
// Inner action u*(p⊗q)*v = pv ⊗ uq.
TensorJet inner_mul(const JetElem& u, const TensorJet& t, const JetElem& v);
// Concatenate the two factors.
JetElem mu_hat(const TensorJet& t);
// Swap the two factors.
TensorJet tau_hat(const TensorJet& t);

}  // namespace qpcalc
