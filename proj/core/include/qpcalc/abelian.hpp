#pragma once

#include <map>
#include <string>
#include <vector>

#include "qpcalc/jet.hpp"
#include "qpcalc/rewrite.hpp"

namespace qpcalc {

// Truncated commutative power series in the loops at one node.
class CommJet {
 public:
  using Monomial = std::vector<int>;  // exponent per variable
  using Terms = std::map<Monomial, Rational>;

  CommJet(std::vector<std::string> variables, int truncation);

  [[nodiscard]] const std::vector<std::string>& variables() const { return vars_; }
  [[nodiscard]] int truncation() const { return truncation_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] Rational coeff(const Monomial& m) const;
  [[nodiscard]] std::size_t variable_index(std::string_view name) const;

  // Adds c·m; monomials of total degree > N are dropped.
  void add_term(const Monomial& m, const Rational& c);

  CommJet& operator+=(const CommJet& o);
  CommJet& operator-=(const CommJet& o);
  friend CommJet operator+(CommJet a, const CommJet& b) { return a += b; }
  friend CommJet operator-(CommJet a, const CommJet& b) { return a -= b; }
  friend CommJet operator*(const Rational& c, const CommJet& a);
  friend CommJet operator*(const CommJet& a, const CommJet& b);
  friend bool operator==(const CommJet& a, const CommJet& b) = default;

 private:
  void require_same(const CommJet& o) const;

  std::vector<std::string> vars_;
  int truncation_;
  Terms terms_;
};

std::string to_string(const CommJet& f);

// Kills idempotents e_j (j != i), arrows that are not loops at i, and
// commutes the rest. Variables are the loops at i in declaration order.
CommJet abelianize(const JetElem& f, NodeId i);

// Throws DomainError for unknown variables.
CommJet partial(const CommJet& f, std::string_view variable);
CommJet partial(const CommJet& f, std::size_t variable);

// k[[x]]/(partials) via the rewrite engine on a one-node quiver with the
// commutators x_i x_j - x_j x_i added.
RewriteSystem comm_jacobi_system(const CommJet& f);
DimensionReport comm_jacobi_dimension(const CommJet& f);

// f lies in its own Jacobi ideal (its class in the commutative Jacobi
// algebra vanishes).
bool comm_is_quasi_homogeneous(const CommJet& f);

}  // namespace qpcalc
