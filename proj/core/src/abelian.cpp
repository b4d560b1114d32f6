#include "qpcalc/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qpcalc/errors.hpp"

namespace qpcalc {

namespace {

int total(const CommJet::Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

QuiverPtr loop_quiver(const std::vector<std::string>& vars) {
  std::vector<Quiver::ArrowSpec> specs;
  for (const auto& v : vars) specs.push_back({v, "0", "0"});
  return make_quiver({"0"}, specs);
}

// Sorted noncommutative lift x_1^{m_1} x_2^{m_2} ...
JetElem lift(const QuiverPtr& q, const CommJet& f) {
  JetElem out(q, f.truncation());
  for (const auto& [m, c] : f.terms()) {
    std::vector<ArrowId> arrows;
    for (std::size_t v = 0; v < m.size(); ++v) arrows.insert(arrows.end(), static_cast<std::size_t>(m[v]), static_cast<ArrowId>(v));
    out.add_term(arrows.empty() ? Path::idempotent(0) : make_path(*q, arrows), c);
  }
  return out;
}

}  // namespace

CommJet::CommJet(std::vector<std::string> variables, int truncation) : vars_(std::move(variables)), truncation_(truncation) {
  if (truncation_ < 0) throw DomainError("truncation must be non-negative");
}

Rational CommJet::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::size_t CommJet::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return i;
  }
  throw DomainError("unknown variable '" + std::string(name) + "'");
}

void CommJet::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != vars_.size()) throw DomainError("monomial has the wrong number of exponents");
  if (c.is_zero() || total(m) > truncation_) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void CommJet::require_same(const CommJet& o) const {
  if (vars_ != o.vars_ || truncation_ != o.truncation_) throw ContextError("commutative jets have different contexts");
}

CommJet& CommJet::operator+=(const CommJet& o) {
  require_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CommJet& CommJet::operator-=(const CommJet& o) {
  require_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

CommJet operator*(const Rational& c, const CommJet& a) {
  CommJet out(a.vars_, a.truncation_);
  for (const auto& [m, x] : a.terms_) out.add_term(m, c * x);
  return out;
}

CommJet operator*(const CommJet& a, const CommJet& b) {
  a.require_same(b);
  CommJet out(a.vars_, a.truncation_);
  for (const auto& [m, x] : a.terms_) {
    for (const auto& [k, y] : b.terms_) {
      CommJet::Monomial s(m.size());
      for (std::size_t i = 0; i < m.size(); ++i) s[i] = m[i] + k[i];
      out.add_term(s, x * y);
    }
  }
  return out;
}

std::string to_string(const CommJet& f) {
  if (f.is_zero()) return "0";
  // Lowest total degree first.
  std::vector<std::pair<CommJet::Monomial, Rational>> terms(f.terms().begin(), f.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return total(x.first) < total(y.first); });
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    Rational mag = c.sign() < 0 ? -c : c;
    out << (first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + "));
    first = false;
    const bool constant = total(m) == 0;
    if (constant || !(mag == Rational(1))) out << mag;
    bool need_space = !constant && !(mag == Rational(1));
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      if (need_space) out << ' ';
      out << f.variables()[v];
      if (m[v] > 1) out << '^' << m[v];
      need_space = true;
    }
  }
  return out.str();
}

CommJet abelianize(const JetElem& f, NodeId i) {
  const Quiver& q = f.quiver();
  if (i >= q.node_count()) throw DomainError("unknown node id " + std::to_string(i));
  const auto loops = q.loops_at(i);
  std::vector<std::string> vars;
  for (ArrowId a : loops) vars.push_back(q.arrow(a).name);
  CommJet out(vars, f.truncation());
  for (const auto& [p, c] : f.terms()) {
    if (p.empty()) {
      if (p.base == i) out.add_term(CommJet::Monomial(vars.size(), 0), c);
      continue;
    }
    CommJet::Monomial m(vars.size(), 0);
    bool keep = true;
    for (ArrowId a : p.arrows) {
      auto it = std::find(loops.begin(), loops.end(), a);
      if (it == loops.end()) {
        keep = false;
        break;
      }
      ++m[static_cast<std::size_t>(it - loops.begin())];
    }
    if (keep) out.add_term(m, c);
  }
  return out;
}

CommJet partial(const CommJet& f, std::size_t variable) {
  if (variable >= f.variables().size()) throw DomainError("unknown variable index " + std::to_string(variable));
  CommJet out(f.variables(), f.truncation());
  for (const auto& [m, c] : f.terms()) {
    if (m[variable] == 0) continue;
    CommJet::Monomial k = m;
    --k[variable];
    out.add_term(k, c * Rational(m[variable]));
  }
  return out;
}

CommJet partial(const CommJet& f, std::string_view variable) { return partial(f, f.variable_index(variable)); }

RewriteSystem comm_jacobi_system(const CommJet& f) {
  const QuiverPtr q = loop_quiver(f.variables());
  const int n = f.truncation();
  std::vector<JetElem> gens;
  for (std::size_t v = 0; v < f.variables().size(); ++v) gens.push_back(lift(q, partial(f, v)));
  for (std::size_t x = 0; x < f.variables().size(); ++x) {
    for (std::size_t y = x + 1; y < f.variables().size(); ++y) {
      const auto ax = static_cast<ArrowId>(x);
      const auto ay = static_cast<ArrowId>(y);
      gens.push_back(JetElem::path(q, n, make_path(*q, {ax, ay})) - JetElem::path(q, n, make_path(*q, {ay, ax})));
    }
  }
  return complete(q, n, gens);
}

DimensionReport comm_jacobi_dimension(const CommJet& f) { return lambda_dimension(comm_jacobi_system(f)); }

bool comm_is_quasi_homogeneous(const CommJet& f) {
  const RewriteSystem rs = comm_jacobi_system(f);
  return ideal_membership(lift(rs.quiver_ptr(), f), rs);
}

}  // namespace qpcalc
