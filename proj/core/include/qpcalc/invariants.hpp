#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qpcalc/calculus.hpp"
#include "qpcalc/rewrite.hpp"

namespace qpcalc {

// Spanning reduced basis of span{NF(uv - vu) : u, v in the basis of the
// Jacobi algebra}. Rows are in echelon form under LocalOrder.
// Throws CertificateError if the dimension is not certified.
std::vector<JetElem> commutator_space(const RewriteSystem& rs);

struct Hh0Class {
  JetElem representative;
  bool zero = true;
};

// Class of f in Λ/[Λ,Λ]: NF(f) reduced against commutator_space(rs).
Hh0Class hh0_reduce(const JetElem& f, const RewriteSystem& rs);
Hh0Class hh0_class(const Potential& phi);
Hh0Class hh0_class(const Potential& phi, const RewriteSystem& rs);
// True for weighted homogeneous potentials; otherwise decided by hh0_class,
// which needs a certified dimension.
bool is_quasi_homogeneous(const Potential& phi);

struct Weights {
  std::vector<Rational> weight;  // per arrow, positive integers after normalization
  Rational degree;
};

// Positive weights making every term of phi homogeneous of one degree.
// Arrows outside the support of phi get weight 1.
std::optional<Weights> find_weights(const Potential& phi);

struct DeterminacyBound {
  int r_min = 0;  // least s with m^s ⊆ J
  int bound = 0;  // r_min + 1: phi is right equivalent to jet(phi, bound)
};

// Throws CertificateError without a certificate.
DeterminacyBound determinacy_bound(const Potential& phi);
DeterminacyBound determinacy_bound(const RewriteSystem& rs);

// Canonical coefficients agree on standard cycles of length <= r.
bool jets_equal(const Potential& phi, const Potential& psi, int r);

struct BootstrapFlags {
  bool in_j = false;        // phi ∈ π(J)
  bool in_mj_jm = false;    // phi ∈ π(mJ + Jm)
};

// Both flags are decided in the cyclic quotient at jet level. A certificate
// m^s ⊆ J with s < N is required so that cycles of length >= N can be
// discarded; otherwise throws CertificateError.
BootstrapFlags bootstrap_check(const Potential& phi);

}  // namespace qpcalc
