#include "qpcalc/quiver.hpp"

#include <algorithm>
#include <set>

#include "qpcalc/errors.hpp"

namespace qpcalc {

Quiver::Quiver(std::vector<std::string> nodes, const std::vector<ArrowSpec>& arrows)
    : nodes_(std::move(nodes)) {
  std::set<std::string, std::less<>> seen;
  for (const auto& n : nodes_) {
    if (n.empty()) throw DomainError("empty node name");
    if (!seen.insert(n).second) throw DomainError("duplicate name '" + n + "'");
  }
  for (const auto& spec : arrows) {
    if (spec.name.empty()) throw DomainError("empty arrow name");
    if (!seen.insert(spec.name).second) throw DomainError("duplicate name '" + spec.name + "'");
    auto s = find_node(spec.source);
    auto t = find_node(spec.target);
    if (!s) throw DomainError("arrow '" + spec.name + "' references undeclared node '" + spec.source + "'");
    if (!t) throw DomainError("arrow '" + spec.name + "' references undeclared node '" + spec.target + "'");
    arrows_.push_back({spec.name, *s, *t});
  }
}

std::optional<NodeId> Quiver::find_node(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i] == name) return static_cast<NodeId>(i);
  }
  return std::nullopt;
}

std::optional<ArrowId> Quiver::find_arrow(std::string_view name) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    if (arrows_[i].name == name) return static_cast<ArrowId>(i);
  }
  return std::nullopt;
}

ArrowId Quiver::arrow_id(std::string_view name) const {
  auto a = find_arrow(name);
  if (!a) throw DomainError("unknown arrow '" + std::string(name) + "'");
  return *a;
}

std::vector<ArrowId> Quiver::loops_at(NodeId n) const { return arrows_between(n, n); }

std::vector<ArrowId> Quiver::arrows_between(NodeId s, NodeId t) const {
  std::vector<ArrowId> out;
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    if (arrows_[i].source == s && arrows_[i].target == t) out.push_back(static_cast<ArrowId>(i));
  }
  return out;
}

QuiverPtr make_quiver(std::vector<std::string> nodes, const std::vector<Quiver::ArrowSpec>& arrows) {
  return std::make_shared<const Quiver>(std::move(nodes), arrows);
}

NodeId path_source(const Quiver& q, const Path& p) {
  return p.empty() ? p.base : q.source(p.arrows.front());
}

NodeId path_target(const Quiver& q, const Path& p) {
  return p.empty() ? p.base : q.target(p.arrows.back());
}

std::optional<Path> concat(const Quiver& q, const Path& p, const Path& r) {
  if (path_target(q, p) != path_source(q, r)) return std::nullopt;
  if (p.empty()) return r;
  if (r.empty()) return p;
  Path out = p;
  out.arrows.insert(out.arrows.end(), r.arrows.begin(), r.arrows.end());
  return out;
}

Path subpath(const Quiver& q, const Path& p, std::size_t from, std::size_t count) {
  Path out;
  if (count == 0) {
    out.base = from < p.length() ? q.source(p.arrows[from]) : path_target(q, p);
    return out;
  }
  out.arrows.assign(p.arrows.begin() + static_cast<std::ptrdiff_t>(from),
                    p.arrows.begin() + static_cast<std::ptrdiff_t>(from + count));
  out.base = q.source(out.arrows.front());
  return out;
}

Path make_path(const Quiver& q, const std::vector<ArrowId>& arrows) {
  if (arrows.empty()) throw DomainError("make_path needs at least one arrow");
  Path p;
  p.base = q.source(arrows.front());
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (arrows[i] >= q.arrow_count()) throw DomainError("arrow id out of range");
    if (i > 0 && q.target(arrows[i - 1]) != q.source(arrows[i])) {
      throw DomainError("arrows '" + q.arrow(arrows[i - 1]).name + "' and '" + q.arrow(arrows[i]).name +
                        "' do not compose");
    }
    p.arrows.push_back(arrows[i]);
  }
  return p;
}

std::vector<std::string> path_to_names(const Quiver& q, const Path& p) {
  std::vector<std::string> out;
  if (p.empty()) {
    out.push_back(q.node_count() == 1 ? std::string("e") : "e_" + q.node_name(p.base));
    return out;
  }
  for (auto a : p.arrows) out.push_back(q.arrow(a).name);
  return out;
}

std::string path_to_string(const Quiver& q, const Path& p) {
  std::string out;
  for (const auto& n : path_to_names(q, p)) {
    if (!out.empty()) out += ' ';
    out += n;
  }
  return out;
}

std::vector<Path> all_paths(const Quiver& q, int max_length) {
  std::vector<Path> out;
  std::vector<Path> frontier;
  for (std::size_t n = 0; n < q.node_count(); ++n) frontier.push_back(Path::idempotent(static_cast<NodeId>(n)));
  out = frontier;
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        if (q.source(static_cast<ArrowId>(a)) != path_target(q, p)) continue;
        Path r = p.empty() ? Path::single(q, static_cast<ArrowId>(a)) : p;
        if (!p.empty()) r.arrows.push_back(static_cast<ArrowId>(a));
        next.push_back(std::move(r));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qpcalc
