#include "qpcalc/invariants.hpp"

#include <algorithm>
#include <numeric>

#include "internal.hpp"
#include "qpcalc/errors.hpp"

namespace qpcalc {

namespace {

using detail::PathVec;
using LocalEchelon = Echelon<Path, LocalOrder>;

LocalEchelon::Vec local_vec(const JetElem& f) {
  LocalEchelon::Vec v;
  for (const auto& [p, c] : f.terms()) v.emplace(p, c);
  return v;
}

JetElem from_local(const QuiverPtr& q, int n, const LocalEchelon::Vec& v) {
  JetElem out(q, n);
  for (const auto& [p, c] : v) out.add_term(p, c);
  return out;
}

const std::vector<Path>& certified_basis(const RewriteSystem& rs, DimensionReport& report) {
  report = lambda_dimension(rs);
  if (!report.dimension) {
    throw CertificateError("Jacobi algebra dimension is not certified at truncation " + std::to_string(rs.truncation()) +
                      "; increase truncation");
  }
  return report.basis;
}

LocalEchelon commutator_echelon(const RewriteSystem& rs) {
  DimensionReport report;
  const auto& basis = certified_basis(rs, report);
  const Quiver& q = rs.quiver();
  const auto& qp = rs.quiver_ptr();
  const int n = rs.truncation();
  LocalEchelon span;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      JetElem c(qp, n);
      if (auto uv = concat(q, basis[i], basis[j])) c.add_term(*uv, Rational(1));
      if (auto vu = concat(q, basis[j], basis[i])) c.add_term(*vu, Rational(-1));
      JetElem nf = rs.reduce(c);
      if (!nf.is_zero()) span.insert(local_vec(nf));
    }
  }
  return span;
}

// Dense exact solve of A x = b; free variables are set to zero.
std::optional<std::vector<Rational>> solve_dense(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& x : a[r]) x *= inv;
    b[r] *= inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || a[k][c].is_zero()) continue;
      const Rational f = a[k][c];
      for (std::size_t j = c; j < cols; ++j) a[k][j] -= f * a[r][j];
      b[k] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t k = r; k < rows; ++k) {
    if (!b[k].is_zero()) return std::nullopt;
  }
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t k = 0; k < r; ++k) x[pivot_col[k]] = b[k];
  return x;
}

// Phase I of the simplex method with Bland's rule: a point x >= 0 with
// A x = b, or nothing when infeasible.
std::optional<std::vector<Rational>> feasible_point(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i].sign() < 0) {
      for (auto& x : a[i]) x = -x;
      b[i] = -b[i];
    }
  }
  // Tableau columns: n originals, m artificials, then the right-hand side.
  const std::size_t width = n + m + 1;
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(width, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = Rational(1);
    t[i][width - 1] = b[i];
    basis[i] = n + i;
  }
  // Objective row: minimize the sum of artificials, expressed in nonbasics.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      if (j < n || j == width - 1) t[m][j] -= t[i][j];
    }
  }
  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (t[m][j].sign() < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter].sign() <= 0) continue;
      Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded cannot happen for Phase I
    const Rational inv = Rational(1) / t[leave][enter];
    for (auto& x : t[leave]) x *= inv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter].is_zero()) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  if (!t[m][width - 1].is_zero()) return std::nullopt;
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = t[i][width - 1];
  }
  return x;
}

std::vector<Rational> to_coprime_integers(const std::vector<Rational>& w) {
  mpz_class l = 1;
  for (const auto& x : w) l = lcm(l, x.denominator());
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& x : w) {
    mpz_class v = x.numerator() * (l / x.denominator());
    g = gcd(g, v);
    ints.push_back(v);
  }
  std::vector<Rational> out;
  for (auto& v : ints) out.emplace_back(mpq_class(v / g));
  return out;
}

}  // namespace

std::vector<JetElem> commutator_space(const RewriteSystem& rs) {
  std::vector<JetElem> out;
  commutator_echelon(rs).for_each_row(
      [&](const Path&, const LocalEchelon::Vec& v) { out.push_back(from_local(rs.quiver_ptr(), rs.truncation(), v)); });
  return out;
}

Hh0Class hh0_reduce(const JetElem& f, const RewriteSystem& rs) {
  LocalEchelon span = commutator_echelon(rs);
  auto residual = span.reduce(local_vec(rs.reduce(f)));
  Hh0Class out{from_local(rs.quiver_ptr(), rs.truncation(), residual), residual.empty()};
  return out;
}

Hh0Class hh0_class(const Potential& phi, const RewriteSystem& rs) { return hh0_reduce(phi.rep(), rs); }

Hh0Class hh0_class(const Potential& phi) {
  if (phi.is_zero()) return {phi.rep(), true};
  return hh0_class(phi, jacobi_system(phi));
}

bool is_quasi_homogeneous(const Potential& phi) {
  // Euler relation: a weighted homogeneous potential lies in its own Jacobi
  // ideal modulo commutators, with no dimension certificate needed.
  if (phi.is_zero() || find_weights(phi)) return true;
  return hh0_class(phi).zero;
}

std::optional<Weights> find_weights(const Potential& phi) {
  if (phi.is_zero()) throw DomainError("find_weights needs a nonzero potential");
  const Quiver& q = phi.quiver();
  std::vector<ArrowId> support;
  for (const auto& [p, c] : phi.rep().terms()) {
    for (ArrowId a : p.arrows) {
      if (std::find(support.begin(), support.end(), a) == support.end()) support.push_back(a);
    }
  }
  std::sort(support.begin(), support.end());
  const std::size_t k = support.size();
  std::vector<std::vector<Rational>> m;
  for (const auto& [p, c] : phi.rep().terms()) {
    std::vector<Rational> row(k, Rational(0));
    for (ArrowId a : p.arrows) {
      row[static_cast<std::size_t>(std::find(support.begin(), support.end(), a) - support.begin())] += Rational(1);
    }
    m.push_back(std::move(row));
  }
  if (k == 0) return std::nullopt;
  const std::size_t rows = m.size();

  // Minimum-norm solution of M w = 1, via M M^T y = 1 and w = M^T y.
  std::vector<std::vector<Rational>> gram(rows, std::vector<Rational>(rows, Rational(0)));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < rows; ++j) {
      for (std::size_t c = 0; c < k; ++c) gram[i][j] += m[i][c] * m[j][c];
    }
  }
  auto y = solve_dense(gram, std::vector<Rational>(rows, Rational(1)));
  if (!y) return std::nullopt;
  std::vector<Rational> w(k, Rational(0));
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < rows; ++i) w[c] += m[i][c] * (*y)[i];
  }
  const bool positive = std::all_of(w.begin(), w.end(), [](const Rational& x) { return x.sign() > 0; });
  if (!positive) {
    // Look for w = u + 1 with u >= 0, M u - d·1 = -M·1, d >= 0.
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(k + 1, Rational(0)));
    std::vector<Rational> b(rows, Rational(0));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t c = 0; c < k; ++c) {
        a[i][c] = m[i][c];
        b[i] -= m[i][c];
      }
      a[i][k] = Rational(-1);
    }
    auto x = feasible_point(a, b);
    if (!x) return std::nullopt;
    for (std::size_t c = 0; c < k; ++c) w[c] = (*x)[c] + Rational(1);
  }
  w = to_coprime_integers(w);
  Weights out;
  out.weight.assign(q.arrow_count(), Rational(1));
  for (std::size_t c = 0; c < k; ++c) out.weight[support[c]] = w[c];
  out.degree = Rational(0);
  for (ArrowId a : phi.rep().terms().begin()->first.arrows) out.degree += out.weight[a];
  return out;
}

DeterminacyBound determinacy_bound(const RewriteSystem& rs) {
  auto report = lambda_dimension(rs);
  if (!report.certified_power) {
    throw CertificateError("no power of the arrow ideal is certified inside J at truncation " +
                      std::to_string(rs.truncation()) + "; increase truncation");
  }
  return {*report.certified_power, *report.certified_power + 1};
}

DeterminacyBound determinacy_bound(const Potential& phi) { return determinacy_bound(jacobi_system(phi)); }

bool jets_equal(const Potential& phi, const Potential& psi, int r) {
  if (!same_quiver(phi.quiver_ptr(), psi.quiver_ptr())) throw ContextError("potentials live on different quivers");
  if (r < 0 || r > std::min(phi.truncation(), psi.truncation())) {
    throw DomainError("jet order " + std::to_string(r) + " outside [0, N]");
  }
  auto low = [r](const Potential& p) {
    std::map<Path, Rational> out;
    for (const auto& [path, c] : p.rep().terms()) {
      if (static_cast<int>(path.length()) <= r) out.emplace(path, c);
    }
    return out;
  };
  return low(phi) == low(psi);
}

BootstrapFlags bootstrap_check(const Potential& phi) {
  if (phi.is_zero()) return {true, true};
  RewriteSystem rs = jacobi_system(phi);
  const auto det = determinacy_bound(rs);
  const int n = phi.truncation();
  if (n < det.r_min + 1) {
    throw CertificateError("truncation " + std::to_string(n) + " too small for the bootstrap check (need >= " +
                      std::to_string(det.r_min + 1) + "); increase truncation");
  }
  const Quiver& q = phi.quiver();
  // Cycles of length >= n lie in m^{r_min+1} ⊆ mJ and are dropped.
  const auto max_len = static_cast<std::size_t>(n - 1);
  const auto paths = all_paths(q, n - 2);
  Echelon<Path> all_j;
  Echelon<Path> m_j;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto arrow = static_cast<ArrowId>(a);
    const JetElem da = cyclic_derive(phi, arrow);
    if (da.is_zero()) continue;
    for (const auto& w : paths) {
      if (path_source(q, w) != q.source(arrow) || path_target(q, w) != q.target(arrow)) continue;
      PathVec v;
      detail::add_cyclic_product(v, Rational(1), da, w, max_len);
      if (v.empty()) continue;
      Echelon<Path>::Vec ev(v.begin(), v.end());
      if (!w.empty()) m_j.insert(ev);
      all_j.insert(std::move(ev));
    }
  }
  Echelon<Path>::Vec target;
  for (const auto& [p, c] : phi.rep().terms()) {
    if (p.length() <= max_len) target.emplace(p, c);
  }
  return {all_j.contains(target), m_j.contains(target)};
}

}  // namespace qpcalc
