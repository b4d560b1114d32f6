#include "qpcalc/rewrite.hpp"

#include <algorithm>
#include <map>

#include "qpcalc/errors.hpp"
#include "qpcalc/linalg.hpp"

namespace qpcalc {

namespace {

using Ordered = std::map<Path, Rational, LocalOrder>;

void accumulate(Ordered& m, const Path& p, const Rational& c) {
  auto [it, inserted] = m.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

bool occurs_at(const Path& word, const Path& pattern, std::size_t pos) {
  if (pos + pattern.length() > word.length()) return false;
  return std::equal(pattern.arrows.begin(), pattern.arrows.end(), word.arrows.begin() + static_cast<std::ptrdiff_t>(pos));
}

bool contains_factor(const Path& word, const Path& pattern) {
  if (pattern.length() > word.length()) return false;
  for (std::size_t pos = 0; pos + pattern.length() <= word.length(); ++pos) {
    if (occurs_at(word, pattern, pos)) return true;
  }
  return false;
}

// u·p·v where u, v are given as arrow ranges of `word`.
Path splice(const Quiver& q, const Path& word, std::size_t pos, std::size_t len, const Path& middle) {
  Path out;
  out.arrows.reserve(word.length() - len + middle.length());
  out.arrows.insert(out.arrows.end(), word.arrows.begin(), word.arrows.begin() + static_cast<std::ptrdiff_t>(pos));
  out.arrows.insert(out.arrows.end(), middle.arrows.begin(), middle.arrows.end());
  out.arrows.insert(out.arrows.end(), word.arrows.begin() + static_cast<std::ptrdiff_t>(pos + len), word.arrows.end());
  if (out.arrows.empty()) {
    out.base = middle.base;
  } else {
    out.base = q.source(out.arrows.front());
  }
  return out;
}

JetElem monic(const JetElem& f) {
  const Path lead = leading_path(f);
  return (Rational(1) / f.coeff(lead)) * f;
}

}  // namespace

Path leading_path(const JetElem& f) {
  if (f.is_zero()) throw DomainError("zero element has no leading path");
  const Path* best = nullptr;
  LocalOrder less;
  for (const auto& [p, c] : f.terms()) {
    if (!best || less(p, *best)) best = &p;
    // Terms are stored by length; only the shortest ones can lead.
    if (p.length() > best->length()) break;
  }
  return *best;
}

RewriteSystem::RewriteSystem(QuiverPtr quiver, int truncation) : quiver_(std::move(quiver)), truncation_(truncation) {}

void RewriteSystem::rebuild_index() {
  by_first_arrow_.clear();
  for (std::size_t i = 0; i < rules_.size(); ++i) by_first_arrow_[rules_[i].lead.arrows.front()].push_back(i);
}

void RewriteSystem::add_rule(Rule rule) {
  rules_.push_back(std::move(rule));
  rebuild_index();
}

void RewriteSystem::remove_rule(std::size_t index) {
  rules_.erase(rules_.begin() + static_cast<std::ptrdiff_t>(index));
  rebuild_index();
}

std::optional<std::pair<std::size_t, std::size_t>> RewriteSystem::find_divisor(const Path& p) const {
  for (std::size_t pos = 0; pos < p.length(); ++pos) {
    auto it = by_first_arrow_.find(p.arrows[pos]);
    if (it == by_first_arrow_.end()) continue;
    for (std::size_t idx : it->second) {
      if (occurs_at(p, rules_[idx].lead, pos)) return std::make_pair(pos, idx);
    }
  }
  return std::nullopt;
}

JetElem RewriteSystem::reduce(const JetElem& f) const {
  if (!same_quiver(f.quiver_ptr(), quiver_) || f.truncation() != truncation_) {
    throw ContextError("element and rewriting system have different contexts");
  }
  const Quiver& q = *quiver_;
  Ordered rem;
  for (const auto& [p, c] : f.terms()) rem.emplace(p, c);
  JetElem out(quiver_, truncation_);
  while (!rem.empty()) {
    auto it = rem.begin();
    const Path p = it->first;
    const Rational c = it->second;
    rem.erase(it);
    auto div = find_divisor(p);
    if (!div) {
      out.add_term(p, c);
      continue;
    }
    const std::size_t pos = div->first;
    const auto& rule = rules_[div->second];
    for (const auto& [t, d] : rule.poly.terms()) {
      if (t == rule.lead) continue;
      if (static_cast<int>(p.length() - rule.lead.length() + t.length()) > truncation_) continue;
      accumulate(rem, splice(q, p, pos, rule.lead.length(), t), -c * d);
    }
  }
  return out;
}

RewriteSystem complete(const QuiverPtr& quiver, int truncation, const std::vector<JetElem>& generators) {
  RewriteSystem rs(quiver, truncation);
  rs.generators_ = generators;
  const Quiver& q = *quiver;
  const int n = truncation;

  // Pending elements, processed by degree of their (unreduced) leading path.
  std::multimap<std::size_t, JetElem> pending;
  auto push = [&](const JetElem& f) {
    if (!f.is_zero()) pending.emplace(leading_path(f).length(), f);
  };
  for (const auto& g : generators) {
    if (!same_quiver(g.quiver_ptr(), quiver) || g.truncation() != n) {
      throw ContextError("generator has a different context");
    }
    for (std::size_t i = 0; i < q.node_count(); ++i) {
      for (std::size_t j = 0; j < q.node_count(); ++j) push(g.corner(static_cast<NodeId>(i), static_cast<NodeId>(j)));
    }
  }

  // S-polynomials of proper overlaps lead(A) = X·Y, lead(B) = Y·Z.
  auto push_overlaps = [&](const RewriteSystem::Rule& a, const RewriteSystem::Rule& b) {
    const std::size_t la = a.lead.length();
    const std::size_t lb = b.lead.length();
    for (std::size_t k = 1; k < la && k < lb; ++k) {
      if (static_cast<int>(la + lb - k) > n) continue;
      if (!std::equal(a.lead.arrows.end() - static_cast<std::ptrdiff_t>(k), a.lead.arrows.end(), b.lead.arrows.begin())) {
        continue;
      }
      JetElem x = JetElem::path(quiver, n, subpath(q, a.lead, 0, la - k));
      JetElem z = JetElem::path(quiver, n, subpath(q, b.lead, k, lb - k));
      push(a.poly * z - x * b.poly);
    }
  };

  auto drain = [&]() {
    while (!pending.empty()) {
      JetElem f = pending.begin()->second;
      pending.erase(pending.begin());
      JetElem h = rs.reduce(f);
      if (h.is_zero()) continue;
      h = monic(h);
      Path lead = leading_path(h);
      if (lead.empty()) throw DomainError("ideal contains a unit (degree-0 leading term)");
      for (std::size_t i = rs.rules_.size(); i-- > 0;) {
        if (contains_factor(rs.rules_[i].lead, lead)) {
          push(rs.rules_[i].poly);
          rs.remove_rule(i);
        }
      }
      rs.add_rule({lead, h});
      const auto& added = rs.rules_.back();
      for (const auto& r : rs.rules_) {
        push_overlaps(added, r);
        if (&r != &added) push_overlaps(r, added);
      }
    }
  };

  for (;;) {
    drain();
    // Interreduce tails.
    for (auto& rule : rs.rules_) {
      JetElem tail = rule.poly - JetElem::path(quiver, n, rule.lead);
      rule.poly = JetElem::path(quiver, n, rule.lead) + rs.reduce(tail);
    }
    // Confluence check on the final rule set.
    for (const auto& a : rs.rules_) {
      for (const auto& b : rs.rules_) push_overlaps(a, b);
    }
    std::multimap<std::size_t, JetElem> unresolved;
    for (auto& [deg, f] : pending) {
      if (!rs.reduce(f).is_zero()) unresolved.emplace(deg, f);
    }
    pending = std::move(unresolved);
    if (pending.empty()) break;
  }
  rs.complete_ = true;
  return rs;
}

JetElem normal_form(const JetElem& f, const RewriteSystem& rs) { return rs.reduce(f); }

RewriteSystem jacobi_system(const Potential& phi) {
  if (phi.order() < 2) {
    throw DomainError("Jacobi system needs a potential of order >= 2 (got " + std::to_string(phi.order()) + ")");
  }
  return complete(phi.quiver_ptr(), phi.truncation(), cyclic_derivatives(phi));
}

std::vector<Path> irreducible_paths(const RewriteSystem& rs) {
  const Quiver& q = rs.quiver();
  std::vector<Path> frontier;
  for (std::size_t i = 0; i < q.node_count(); ++i) frontier.push_back(Path::idempotent(static_cast<NodeId>(i)));
  std::vector<Path> out = frontier;
  for (int len = 1; len <= rs.truncation() && !frontier.empty(); ++len) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto arrow = static_cast<ArrowId>(a);
        if (q.source(arrow) != path_target(q, p)) continue;
        Path r = p.empty() ? Path::single(q, arrow) : p;
        if (!p.empty()) r.arrows.push_back(arrow);
        // Every proper factor of r is irreducible already; test the suffixes.
        bool reducible = false;
        for (std::size_t start = 0; start < r.length() && !reducible; ++start) {
          Path suffix = subpath(q, r, start, r.length() - start);
          for (const auto& rule : rs.rules()) {
            if (rule.lead == suffix) {
              reducible = true;
              break;
            }
          }
        }
        if (!reducible) next.push_back(std::move(r));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool contains_power(const RewriteSystem& rs, int r) {
  if (r < 1 || r > rs.truncation()) {
    throw DomainError("power " + std::to_string(r) + " outside [1, " + std::to_string(rs.truncation()) + "]");
  }
  // Under the local order an irreducible path of length r-1 is its own normal
  // form, and reducible ones reduce to irreducible paths of length >= r-1.
  for (const auto& p : irreducible_paths(rs)) {
    if (static_cast<int>(p.length()) == r - 1) return false;
  }
  return true;
}

DimensionReport lambda_dimension(const RewriteSystem& rs) {
  DimensionReport out;
  out.basis = irreducible_paths(rs);
  out.jet_dimension = out.basis.size();
  int longest = 0;
  for (const auto& p : out.basis) longest = std::max(longest, static_cast<int>(p.length()));
  // contains_power(longest + 2) is the first success.
  if (longest + 2 <= rs.truncation()) {
    out.dimension = out.basis.size();
    out.certified_power = longest + 1;
  }
  return out;
}

bool ideal_membership(const JetElem& f, const RewriteSystem& rs) { return normal_form(f, rs).is_zero(); }

bool is_basis(const std::vector<JetElem>& elems, const RewriteSystem& rs) {
  auto dim = lambda_dimension(rs);
  if (!dim.dimension) throw CertificateError("dimension is not certified at truncation " + std::to_string(rs.truncation()));
  if (elems.size() != *dim.dimension) return false;
  Echelon<Path> span;
  for (const auto& e : elems) {
    JetElem nf = normal_form(e, rs);
    Echelon<Path>::Vec v;
    for (const auto& [p, c] : nf.terms()) v.emplace(p, c);
    if (!span.insert(std::move(v))) return false;
  }
  return true;
}

}  // namespace qpcalc
