#pragma once

#include <climits>
#include <vector>

#include "qpcalc/errors.hpp"
#include "qpcalc/jet.hpp"

namespace qpcalc {

class Endo;

inline constexpr int kInfiniteOrder = INT_MAX;

// Class of a jet in the cyclic quotient, stored on standard cycles: every
// supported path is a cycle and the lexicographically maximal rotation in its
// necklace.
class Potential {
 public:
  Potential(QuiverPtr q, int truncation) : rep_(std::move(q), truncation) {}

  [[nodiscard]] const JetElem& rep() const { return rep_; }
  [[nodiscard]] const Quiver& quiver() const { return rep_.quiver(); }
  [[nodiscard]] const QuiverPtr& quiver_ptr() const { return rep_.quiver_ptr(); }
  [[nodiscard]] int truncation() const { return rep_.truncation(); }
  [[nodiscard]] bool is_zero() const { return rep_.is_zero(); }
  // Minimal supported cycle length; kInfiniteOrder for zero.
  [[nodiscard]] int order() const { return rep_.is_zero() ? kInfiniteOrder : *rep_.order(); }

  friend Potential operator+(const Potential& a, const Potential& b);
  friend Potential operator-(const Potential& a, const Potential& b);
  friend Potential operator*(const Rational& c, const Potential& a);
  friend bool operator==(const Potential& a, const Potential& b) { return a.rep_ == b.rep_; }

 private:
  friend Potential necklace_canonicalize(const JetElem& f);
  explicit Potential(JetElem rep) : rep_(std::move(rep)) {}

  JetElem rep_;
};

// Lexicographically maximal rotation of a cycle.
Path max_rotation(const Quiver& q, const Path& cycle);

// Moves each cycle coefficient onto its standard rotation; non-cycles vanish.
Potential necklace_canonicalize(const JetElem& f);

// D_a(p) = sum over p = u a v of v u. Applied to any jet; non-cycles give 0.
JetElem cyclic_derive(const JetElem& f, ArrowId a);
JetElem cyclic_derive(const Potential& phi, ArrowId a);
std::vector<JetElem> cyclic_derivatives(const Potential& phi);

// Double derivation with d(b)/d(a) = delta_{ab} e_{s(a)} ⊗ e_{t(a)}.
TensorJet double_derive(const JetElem& f, ArrowId a);

// sum_a (dh_a/dβ)'' · H(D_a φ) · (dh_a/dβ)'
JetElem chain_rule_rhs(const Endo& h, const JetElem& phi, ArrowId beta);

// sum_a [a, f_a]
JetElem divergence(const std::vector<JetElem>& family);

class DivergenceError : public DomainError {
 public:
  explicit DivergenceError(const JetElem& residual)
      : DomainError("family is not divergence free; residual " + to_string(residual)), residual_(residual) {}
  [[nodiscard]] const JetElem& residual() const { return residual_; }

 private:
  JetElem residual_;
};

// phi = sum_a sum_{r>=1} (1/r) a·f_a[r-1]. `family[a]` is f_a. Throws
// DivergenceError when sum_a [a, f_a] != 0 and DomainError when some f_a has
// a term of degree N (its antiderivative would leave the jet space) or the
// wrong corner.
JetElem antiderivative(const std::vector<JetElem>& family);

// Drops terms of degree > r. Throws DomainError unless 0 <= r <= N.
Potential jet(const Potential& phi, int r);
inline int order(const Potential& phi) { return phi.order(); }

}  // namespace qpcalc
