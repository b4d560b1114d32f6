#pragma once

#include <vector>

#include "qpcalc/calculus.hpp"
#include "qpcalc/endo.hpp"
#include "qpcalc/rewrite.hpp"

namespace qpcalc {

// Q with an extra arrow theta_a : t(a) -> s(a) of degree -1 per arrow and a
// loop t_i of degree -2 per node. Arrow ids: a, then theta_a, then t_i.
struct GradedQuiver {
  QuiverPtr base;
  QuiverPtr graded;
  std::vector<int> degree;  // per graded arrow

  [[nodiscard]] ArrowId theta(ArrowId a) const { return static_cast<ArrowId>(base->arrow_count() + a); }
  [[nodiscard]] ArrowId loop(NodeId i) const { return static_cast<ArrowId>(2 * base->arrow_count() + i); }
  [[nodiscard]] int degree_of(const Path& p) const;
  [[nodiscard]] bool is_degree_zero(const Path& p) const;
};

GradedQuiver make_graded_quiver(const QuiverPtr& base);

// Elements of the graded path algebra, truncated by arrow count.
using GradedJetElem = JetElem;

// Homogeneous component of the given homological degree.
GradedJetElem degree_component(const GradedQuiver& gq, const GradedJetElem& f, int degree);

GradedJetElem lift(const GradedQuiver& gq, const JetElem& f);
// Inverse of lift; throws DomainError if f involves theta or t arrows.
JetElem project(const GradedQuiver& gq, const GradedJetElem& f);

struct GinzburgJet {
  GradedQuiver quiver;
  Potential potential;
  // d on generators, indexed by graded arrow id. Public so that callers can
  // build modified tables.
  std::vector<GradedJetElem> table;
};

// Throws DomainError for order(phi) < 2.
GinzburgJet build_ginzburg(const Potential& phi);

// Leibniz extension: d(xy) = d(x)y + (-1)^{|x|} x d(y).
GradedJetElem differential(const GinzburgJet& g, const GradedJetElem& f);

bool check_d_squared(const GinzburgJet& g);

// Degree-0 part modulo d(degree -1). Throws Error if the result does not
// define the Jacobi ideal of the potential.
RewriteSystem h0(const GinzburgJet& g);

struct GammaTransfer {
  GinzburgJet source;  // for phi
  GinzburgJet target;  // for H(phi)
  Endo gamma;          // source -> target
  Endo gamma_inverse;  // target -> source
};

// Throws DomainError for non-automorphisms and Error if a verification fails.
// Commutation with d is checked modulo m^N, the inverse property modulo m^{N+1}.
GammaTransfer transfer_gamma(const Endo& h, const Potential& phi);

// The individual checks, usable on arbitrary maps.
bool gamma_commutes(const Endo& gamma, const GinzburgJet& source, const GinzburgJet& target);
bool gamma_inverse_pair(const Endo& gamma, const Endo& gamma_inverse);

}  // namespace qpcalc
