#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "qpcalc/calculus.hpp"
#include "qpcalc/jet.hpp"

namespace qpcalc {

// Local degree order: a path leads another when it is shorter, or of equal
// length and lexicographically larger. Compatible with multiplication, and each
// rewriting step moves weight to strictly later paths, so reduction modulo
// paths of length > N terminates.
struct LocalOrder {
  bool operator()(const Path& a, const Path& b) const {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.arrows != b.arrows) return b.arrows < a.arrows;
    return a.base < b.base;
  }
};

// Leading path of a nonzero jet under LocalOrder.
Path leading_path(const JetElem& f);

// Confluent, interreduced rewriting system for (generators) + m^{N+1}.
class RewriteSystem {
 public:
  struct Rule {
    Path lead;     // rewrites to lead - poly
    JetElem poly;  // monic: coefficient of lead is 1
  };

  RewriteSystem(QuiverPtr quiver, int truncation);

  [[nodiscard]] const Quiver& quiver() const { return *quiver_; }
  [[nodiscard]] const QuiverPtr& quiver_ptr() const { return quiver_; }
  [[nodiscard]] int truncation() const { return truncation_; }
  [[nodiscard]] const std::vector<Rule>& rules() const { return rules_; }
  [[nodiscard]] const std::vector<JetElem>& generators() const { return generators_; }
  [[nodiscard]] bool is_complete() const { return complete_; }

  // First (leftmost position, then earliest rule) occurrence of a rule lead in p.
  [[nodiscard]] std::optional<std::pair<std::size_t, std::size_t>> find_divisor(const Path& p) const;
  [[nodiscard]] bool is_reducible(const Path& p) const { return find_divisor(p).has_value(); }
  [[nodiscard]] JetElem reduce(const JetElem& f) const;

 private:
  friend RewriteSystem complete(const QuiverPtr& quiver, int truncation, const std::vector<JetElem>& generators);

  void add_rule(Rule rule);
  void remove_rule(std::size_t index);
  void rebuild_index();

  QuiverPtr quiver_;
  int truncation_;
  std::vector<Rule> rules_;
  std::vector<JetElem> generators_;
  bool complete_ = false;
  std::unordered_map<ArrowId, std::vector<std::size_t>> by_first_arrow_;
};

// Bergman-style completion under LocalOrder. Generators are split into their
// e_i·g·e_j corners first. Throws DomainError if the ideal contains a unit.
RewriteSystem complete(const QuiverPtr& quiver, int truncation, const std::vector<JetElem>& generators);

JetElem normal_form(const JetElem& f, const RewriteSystem& rs);

// Completion of the cyclic derivatives. Throws DomainError for order < 2.
RewriteSystem jacobi_system(const Potential& phi);

// Irreducible paths of length <= N, in storage order.
std::vector<Path> irreducible_paths(const RewriteSystem& rs);

struct DimensionReport {
  // Certified dimension of the untruncated quotient; empty when no power of m
  // is certified to lie in the ideal at this truncation.
  std::optional<std::size_t> dimension;
  std::size_t jet_dimension = 0;
  std::vector<Path> basis;
  // Least s with m^s contained in the ideal, when certified.
  std::optional<int> certified_power;
};

DimensionReport lambda_dimension(const RewriteSystem& rs);

// True iff every path of length r-1 has a normal form of order >= r, which
// certifies m^{r-1} ⊆ J by Nakayama. Requires 1 <= r <= N.
bool contains_power(const RewriteSystem& rs, int r);

bool ideal_membership(const JetElem& f, const RewriteSystem& rs);

// Normal forms linearly independent and as many as the certified dimension.
// Throws CertificateError if the dimension is not certified.
bool is_basis(const std::vector<JetElem>& elems, const RewriteSystem& rs);

}  // namespace qpcalc
