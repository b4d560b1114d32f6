#include "qpcalc/qpot.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "qpcalc/errors.hpp"

namespace qpcalc {

namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line, int offset = 0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1 + offset});
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    out.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

Rational parse_rational(const Token& t, int line) {
  try {
    return Rational::parse(t.text);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), line, t.column);
  }
}

int parse_int(const Token& t, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
    throw ParseError("expected an integer, got '" + std::string(t.text) + "'", line, t.column);
  }
  return value;
}

// Arrows (or a single idempotent token) making up a path.
Path parse_path(const Quiver& q, const std::vector<Token>& tokens, std::size_t from, int line, bool allow_idempotent) {
  if (from >= tokens.size()) {
    const int col = tokens.empty() ? 1 : tokens.back().column + static_cast<int>(tokens.back().text.size());
    throw ParseError("expected a path", line, col);
  }
  if (allow_idempotent && from + 1 == tokens.size()) {
    const auto& t = tokens[from];
    if (t.text == "e" && q.node_count() == 1) return Path::idempotent(0);
    if (t.text.size() > 2 && t.text.substr(0, 2) == "e_" && !q.find_arrow(t.text)) {
      if (auto node = q.find_node(t.text.substr(2))) return Path::idempotent(*node);
      throw ParseError("unknown node in '" + std::string(t.text) + "'", line, t.column);
    }
  }
  Path p;
  for (std::size_t i = from; i < tokens.size(); ++i) {
    auto a = q.find_arrow(tokens[i].text);
    if (!a) throw ParseError("unknown arrow '" + std::string(tokens[i].text) + "'", line, tokens[i].column);
    if (!p.empty() && q.target(p.arrows.back()) != q.source(*a)) {
      throw ParseError("arrow '" + std::string(tokens[i].text) + "' does not compose with the preceding path", line,
                       tokens[i].column);
    }
    if (p.empty()) p.base = q.source(*a);
    p.arrows.push_back(*a);
  }
  return p;
}

struct Term {
  Rational coeff;
  Path path;
};

// "<rational> <path>; ..." starting at column offset + 1 of the line.
std::vector<Term> parse_terms(const Quiver& q, std::string_view text, int line, int offset, bool allow_idempotent) {
  std::vector<Term> out;
  std::size_t start = 0;
  for (;;) {
    auto end = text.find(';', start);
    const auto piece = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    auto tokens = tokenize(piece, offset + static_cast<int>(start));
    if (tokens.empty()) {
      if (end != std::string_view::npos || !out.empty()) {
        throw ParseError("empty term", line, offset + static_cast<int>(start) + 1);
      }
    } else {
      Rational c = parse_rational(tokens[0], line);
      out.push_back({c, parse_path(q, tokens, 1, line, allow_idempotent)});
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string term_line(const Quiver& q, const Path& p, const Rational& c) { return c.str() + " " + path_to_string(q, p); }

}  // namespace

QpotDocument parse_qpot(std::string_view text) {
  std::vector<std::string> nodes;
  std::vector<Quiver::ArrowSpec> arrows;
  std::vector<std::pair<int, int>> arrow_pos;  // (line, column) of each arrow statement
  std::optional<int> truncation;
  bool saw_nodes = false;
  bool saw_potential = false;
  bool in_potential = false;
  QuiverPtr quiver;
  std::vector<std::pair<int, std::vector<Token>>> term_lines;
  int potential_line = 0;

  auto build_quiver = [&]() {
    if (quiver) return;
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      for (const auto& end : {arrows[i].source, arrows[i].target}) {
        if (std::find(nodes.begin(), nodes.end(), end) == nodes.end()) {
          throw ParseError("arrow '" + arrows[i].name + "' refers to undeclared node '" + end + "'", arrow_pos[i].first,
                           arrow_pos[i].second);
        }
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (arrows[j].name == arrows[i].name) {
          throw ParseError("duplicate arrow '" + arrows[i].name + "'", arrow_pos[i].first, arrow_pos[i].second);
        }
      }
    }
    try {
      quiver = make_quiver(nodes, arrows);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), 1, 1);
    }
  };

  const auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const int line = static_cast<int>(li) + 1;
    auto tokens = tokenize(lines[li]);
    if (tokens.empty()) continue;
    const auto& head = tokens[0];
    if (in_potential) {
      if (head.text == "end") {
        if (tokens.size() > 1) throw ParseError("unexpected text after 'end'", line, tokens[1].column);
        in_potential = false;
        continue;
      }
      term_lines.emplace_back(line, std::move(tokens));
      continue;
    }
    if (head.text == "nodes") {
      if (saw_nodes) throw ParseError("nodes declared twice", line, head.column);
      if (!arrows.empty()) throw ParseError("nodes must be declared before arrows", line, head.column);
      saw_nodes = true;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        std::string name(tokens[i].text);
        if (std::find(nodes.begin(), nodes.end(), name) != nodes.end()) {
          throw ParseError("duplicate node '" + name + "'", line, tokens[i].column);
        }
        nodes.push_back(std::move(name));
      }
      if (nodes.empty()) throw ParseError("expected at least one node", line, head.column + 5);
    } else if (head.text == "arrow") {
      if (!saw_nodes) throw ParseError("arrow declared before nodes", line, head.column);
      if (saw_potential) throw ParseError("arrow declared after the potential", line, head.column);
      if (tokens.size() != 4) throw ParseError("expected 'arrow <name> <source> <target>'", line, head.column);
      arrows.push_back({std::string(tokens[1].text), std::string(tokens[2].text), std::string(tokens[3].text)});
      arrow_pos.emplace_back(line, tokens[1].column);
      for (int k : {2, 3}) {
        if (std::find(nodes.begin(), nodes.end(), std::string(tokens[static_cast<std::size_t>(k)].text)) == nodes.end()) {
          throw ParseError("undeclared node '" + std::string(tokens[static_cast<std::size_t>(k)].text) + "'", line,
                           tokens[static_cast<std::size_t>(k)].column);
        }
      }
    } else if (head.text == "truncation") {
      if (truncation) throw ParseError("truncation declared twice", line, head.column);
      if (tokens.size() != 2) throw ParseError("expected 'truncation <N>'", line, head.column);
      const int n = parse_int(tokens[1], line);
      if (n < 1) throw ParseError("truncation must be positive", line, tokens[1].column);
      truncation = n;
    } else if (head.text == "potential") {
      if (saw_potential) throw ParseError("potential declared twice", line, head.column);
      if (tokens.size() > 1) throw ParseError("unexpected text after 'potential'", line, tokens[1].column);
      saw_potential = true;
      in_potential = true;
      potential_line = line;
    } else {
      throw ParseError("unknown statement '" + std::string(head.text) + "'", line, head.column);
    }
  }
  if (in_potential) throw ParseError("potential block is not closed with 'end'", potential_line, 1);
  if (!saw_nodes) throw ParseError("missing 'nodes' statement", static_cast<int>(lines.size()), 1);
  build_quiver();

  QpotDocument doc{quiver, truncation.value_or(kDefaultTruncation), Potential(quiver, truncation.value_or(kDefaultTruncation))};
  JetElem rep(quiver, doc.truncation);
  for (const auto& [line, tokens] : term_lines) {
    Rational c = parse_rational(tokens[0], line);
    if (tokens.size() < 2) throw ParseError("potential term needs at least one arrow", line, tokens[0].column);
    Path p = parse_path(*quiver, tokens, 1, line, false);
    if (!is_cycle(*quiver, p)) throw ParseError("potential term is not a cycle", line, tokens[1].column);
    if (static_cast<int>(p.length()) > doc.truncation) {
      throw ParseError("term of length " + std::to_string(p.length()) + " exceeds truncation " +
                           std::to_string(doc.truncation),
                       line, tokens[1].column);
    }
    rep.add_term(p, c);
  }
  doc.potential = necklace_canonicalize(rep);
  return doc;
}

QuiverPtr parse_quiver(std::string_view text) { return parse_qpot(text).quiver; }

std::string print_qpot(const QpotDocument& doc) {
  const Quiver& q = *doc.quiver;
  std::ostringstream out;
  out << "nodes";
  for (const auto& n : q.nodes()) out << ' ' << n;
  out << '\n';
  for (const auto& a : q.arrows()) out << "arrow " << a.name << ' ' << q.node_name(a.source) << ' ' << q.node_name(a.target) << '\n';
  out << "truncation " << doc.truncation << '\n';
  out << "potential\n";
  for (const auto& [p, c] : doc.potential.rep().terms()) out << "  " << term_line(q, p, c) << '\n';
  out << "end\n";
  return out.str();
}

Endo parse_endo(std::string_view text, const QuiverPtr& quiver, int truncation) {
  const Quiver& q = *quiver;
  std::vector<JetElem> images;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) images.push_back(JetElem::arrow(quiver, truncation, static_cast<ArrowId>(a)));
  std::vector<bool> mapped(q.arrow_count(), false);
  const auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const int line = static_cast<int>(li) + 1;
    const auto raw = lines[li];
    auto tokens = tokenize(raw);
    if (tokens.empty()) continue;
    if (tokens[0].text != "map") throw ParseError("expected 'map <arrow>: ...'", line, tokens[0].column);
    const auto colon = raw.find(':');
    if (colon == std::string_view::npos) throw ParseError("missing ':' after the arrow name", line, tokens[0].column);
    auto name_tokens = tokenize(raw.substr(0, colon));
    if (name_tokens.size() != 2) throw ParseError("expected exactly one arrow name before ':'", line, tokens[0].column);
    auto a = q.find_arrow(name_tokens[1].text);
    if (!a) throw ParseError("unknown arrow '" + std::string(name_tokens[1].text) + "'", line, name_tokens[1].column);
    if (mapped[*a]) throw ParseError("arrow '" + q.arrow(*a).name + "' mapped twice", line, name_tokens[1].column);
    mapped[*a] = true;
    JetElem img(quiver, truncation);
    for (const auto& t : parse_terms(q, raw.substr(colon + 1), line, static_cast<int>(colon) + 1, false)) {
      if (path_source(q, t.path) != q.source(*a) || path_target(q, t.path) != q.target(*a)) {
        throw ParseError("image path does not run from s(" + q.arrow(*a).name + ") to t(" + q.arrow(*a).name + ")", line,
                         name_tokens[1].column);
      }
      if (static_cast<int>(t.path.length()) > truncation) continue;
      img.add_term(t.path, t.coeff);
    }
    images[*a] = std::move(img);
  }
  return Endo(quiver, truncation, std::move(images));
}

std::string print_endo(const Endo& h) {
  const Quiver& q = h.quiver();
  std::ostringstream out;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& img = h.image(static_cast<ArrowId>(a));
    out << "map " << q.arrow(static_cast<ArrowId>(a)).name << ':';
    bool first = true;
    for (const auto& [p, c] : img.terms()) {
      out << (first ? " " : "; ") << term_line(q, p, c);
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

JetElem parse_element(std::string_view text, const QuiverPtr& quiver, int truncation) {
  JetElem out(quiver, truncation);
  for (const auto& t : parse_terms(*quiver, text, 1, 0, true)) out.add_term(t.path, t.coeff);
  return out;
}

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open '" + file.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace qpcalc
