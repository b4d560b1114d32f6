#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qpcalc/calculus.hpp"
#include "qpcalc/endo.hpp"
#include "qpcalc/rewrite.hpp"

namespace qpcalc {

// (h1 ∘ h2)(a) = h1(h2(a)).
Endo compose(const Endo& h1, const Endo& h2);

// Square matrix m[a][b] = coefficient of arrow b in h_a. Only arrows with the
// same endpoints can be nonzero, so the matrix is block diagonal up to order.
std::vector<std::vector<Rational>> linear_part(const Endo& h);

bool is_automorphism(const Endo& h);

// Inverse modulo m^{N+1}; throws DomainError when h is not invertible.
Endo invert(const Endo& h);

// Jacobi ideals of phi and h(phi) correspond under h and its inverse, checked
// modulo m^N (the cyclic derivative of an N-jet is exact only below degree N).
bool transform_ideal_check(const Endo& h, const Potential& phi);

// Variant with arbitrary maps, used to confirm the check can fail.
using JetMap = std::function<JetElem(const JetElem&)>;
bool transform_ideal_check(const JetMap& forward, const JetMap& backward, const Potential& phi);

// Jacobi system of phi modulo m^N.
RewriteSystem jacobi_system_below(const Potential& phi);

// Lift of generator images to an endomorphism inducing Λ(phi) -> Λ(psi).
// Throws DomainError when the linear part is singular or some D_a(phi) is not
// sent into J(psi) (the message names the arrow).
Endo lift_iso(const std::vector<JetElem>& images, const Potential& phi, const Potential& psi);

struct EquivalenceResult {
  enum class Status { Success, CertifiedDifferent, Inconclusive };
  Status status = Status::Inconclusive;
  std::optional<Endo> map;  // on success: apply_potential(*map, phi) == psi
  std::string reason;       // separating invariant, or where the search stopped
  int degree = 0;           // degree of the unresolved discrepancy
  std::optional<Potential> residual;
};

std::string to_string(EquivalenceResult::Status s);

// Searches for an automorphism H with H(phi) = psi degree by degree. Requires
// order >= 3 and a certified Jacobi dimension for at least one side.
// Invariant mismatches (order, m^s ⊆ J, Jacobi dimension, vanishing of the
// HH0 class) are certified differences; a failed linear solve is only
// inconclusive. Throws CertificateError when neither dimension is certified.
EquivalenceResult construct_equivalence(const Potential& phi, const Potential& psi);

}  // namespace qpcalc
