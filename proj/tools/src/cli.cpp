#include "qpcalc_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpcalc/qpcalc.hpp"

namespace qpcalc::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "qpcalc-report/1";
constexpr const char* kCorpusPrefix = "corpus:";

std::string not_certified(int n) { return "not-certified-at-" + std::to_string(n); }

Json names_json(const Quiver& q, const Path& p) { return path_to_names(q, p); }

Json terms_json(const JetElem& f) {
  Json out = Json::array();
  for (const auto& [p, c] : f.terms()) out.push_back({{"coeff", c.str()}, {"path", names_json(f.quiver(), p)}});
  return out;
}

Json comm_terms_json(const CommJet& f) {
  Json out = Json::array();
  for (const auto& [m, c] : f.terms()) out.push_back({{"coeff", c.str()}, {"exponents", m}});
  return out;
}

Json endo_json(const Endo& h) {
  Json out = Json::array();
  const Quiver& q = h.quiver();
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    out.push_back({{"arrow", q.arrow(static_cast<ArrowId>(a)).name}, {"image", terms_json(h.image(static_cast<ArrowId>(a)))}});
  }
  return out;
}

std::string basis_string(const Quiver& q, const std::vector<Path>& basis) {
  std::string out;
  for (const auto& p : basis) {
    if (!out.empty()) out += ", ";
    out += path_to_string(q, p);
  }
  return out;
}

// Either a QPOT file or "corpus:<name>" for a built-in entry.
QpotDocument load_input(const std::string& spec, std::optional<int> corpus_truncation) {
  if (spec.rfind(kCorpusPrefix, 0) == 0) {
    const std::string name = spec.substr(std::string(kCorpusPrefix).size());
    return parse_qpot(corpus_text(name, corpus_truncation.value_or(kDefaultTruncation)));
  }
  return parse_qpot(read_text_file(spec));
}

struct Context {
  std::ostream& out;
  bool json = false;
  std::optional<int> truncation;
};

// Collects a report; text output is written as we go, JSON at the end.
class Report {
 public:
  Report(Context& ctx, std::string command) : ctx_(ctx), start_(std::chrono::steady_clock::now()) {
    doc_["schema"] = kSchema;
    doc_["command"] = std::move(command);
    doc_["inputs"] = Json::array();
    doc_["truncation"] = nullptr;
    doc_["results"] = Json::object();
    doc_["certified"] = Json::object();
  }
  void input(const std::string& name) { doc_["inputs"].push_back(name); }
  void truncation(int n) { doc_["truncation"] = n; }
  Json& results() { return doc_["results"]; }
  void certified(const std::string& key, bool value) { doc_["certified"][key] = value; }
  std::ostream& text() { return ctx_.json ? sink_ : ctx_.out; }
  int finish(int code) {
    if (ctx_.json) {
      const auto elapsed = std::chrono::steady_clock::now() - start_;
      doc_["exit_code"] = code;
      doc_["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
      ctx_.out << doc_.dump(2) << '\n';
    }
    return code;
  }

 private:
  Context& ctx_;
  std::chrono::steady_clock::time_point start_;
  Json doc_;
  std::ostringstream sink_;
};

int cmd_derive(Context& ctx, const std::string& file) {
  Report rep(ctx, "derive");
  rep.input(file);
  const auto doc = load_input(file, ctx.truncation);
  rep.truncation(doc.truncation);
  const Quiver& q = *doc.quiver;
  rep.text() << "potential: " << to_string(doc.potential.rep()) << '\n';
  rep.results()["potential"] = terms_json(doc.potential.rep());
  Json derivs = Json::array();
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto d = cyclic_derive(doc.potential, static_cast<ArrowId>(a));
    const auto& name = q.arrow(static_cast<ArrowId>(a)).name;
    rep.text() << "D_" << name << " = " << to_string(d) << '\n';
    derivs.push_back({{"arrow", name}, {"terms", terms_json(d)}});
  }
  rep.results()["derivatives"] = std::move(derivs);
  return rep.finish(kOk);
}

int cmd_jacobi(Context& ctx, const std::string& file) {
  Report rep(ctx, "jacobi");
  rep.input(file);
  const auto doc = load_input(file, ctx.truncation);
  const int n = doc.truncation;
  rep.truncation(n);
  const Quiver& q = *doc.quiver;
  const auto rs = jacobi_system(doc.potential);
  const auto dim = lambda_dimension(rs);

  auto& res = rep.results();
  Json gens = Json::array();
  rep.text() << "generators:\n";
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& name = q.arrow(static_cast<ArrowId>(a)).name;
    const auto d = cyclic_derive(doc.potential, static_cast<ArrowId>(a));
    rep.text() << "  D_" << name << " = " << to_string(d) << '\n';
    gens.push_back({{"arrow", name}, {"terms", terms_json(d)}});
  }
  res["generators"] = std::move(gens);
  res["rules"] = rs.rules().size();
  rep.text() << "rules: " << rs.rules().size() << '\n';
  res["jet_dimension"] = dim.jet_dimension;
  rep.certified("dimension", dim.dimension.has_value());
  if (dim.dimension) {
    res["certified_r"] = *dim.certified_power;
    res["dimension"] = *dim.dimension;
    rep.text() << "certified r: " << *dim.certified_power << " (m^" << *dim.certified_power << " lies in J)\n";
    rep.text() << "dimension: " << *dim.dimension << '\n';
  } else {
    res["certified_r"] = not_certified(n);
    res["dimension"] = not_certified(n);
    rep.text() << "certified r: " << not_certified(n) << '\n';
    rep.text() << "dimension: " << not_certified(n) << " (jet dimension " << dim.jet_dimension << ")\n";
  }
  Json basis = Json::array();
  for (const auto& p : dim.basis) basis.push_back(names_json(q, p));
  res["basis"] = std::move(basis);
  rep.text() << "basis: " << basis_string(q, dim.basis) << '\n';
  return rep.finish(dim.dimension ? kOk : kUncertified);
}

int cmd_invariants(Context& ctx, const std::string& file) {
  Report rep(ctx, "invariants");
  rep.input(file);
  const auto doc = load_input(file, ctx.truncation);
  const int n = doc.truncation;
  rep.truncation(n);
  const auto& phi = doc.potential;
  auto& res = rep.results();

  if (phi.is_zero()) {
    res["order"] = "infinite";
    rep.text() << "order: infinite\n";
  } else {
    res["order"] = phi.order();
    rep.text() << "order: " << phi.order() << '\n';
  }

  const auto weights = phi.is_zero() ? std::nullopt : find_weights(phi);
  if (weights) {
    Json w = Json::object();
    std::string line;
    for (std::size_t a = 0; a < phi.quiver().arrow_count(); ++a) {
      const auto& name = phi.quiver().arrow(static_cast<ArrowId>(a)).name;
      w[name] = weights->weight[a].str();
      line += (line.empty() ? "" : ", ") + name + "=" + weights->weight[a].str();
    }
    res["weights"] = {{"arrows", std::move(w)}, {"degree", weights->degree.str()}};
    rep.text() << "weights: " << line << " (degree " << weights->degree << ")\n";
  } else {
    res["weights"] = nullptr;
    rep.text() << "weights: none\n";
  }

  bool certified = true;
  const auto rs = jacobi_system(phi);
  const auto dim = lambda_dimension(rs);
  if (dim.dimension) {
    const auto cls = hh0_class(phi, rs);
    res["hh0"] = {{"zero", cls.zero}, {"representative", terms_json(cls.representative)}};
    res["quasi_homogeneous"] = cls.zero;
    rep.text() << "hh0 class: " << (cls.zero ? "0" : to_string(cls.representative)) << '\n';
    rep.text() << "quasi-homogeneous: " << (cls.zero ? "yes" : "no") << '\n';
    const auto det = determinacy_bound(rs);
    res["r_min"] = det.r_min;
    res["determinacy_bound"] = det.bound;
    rep.text() << "r_min: " << det.r_min << " (m^" << det.r_min << " lies in J)\n";
    rep.text() << "determinacy bound: " << det.bound << '\n';
  } else if (weights) {
    // Weighted homogeneity decides quasi-homogeneity without a dimension.
    certified = false;
    res["hh0"] = {{"zero", true}, {"representative", Json::array()}};
    res["quasi_homogeneous"] = true;
    res["r_min"] = not_certified(n);
    res["determinacy_bound"] = not_certified(n);
    rep.text() << "hh0 class: 0\nquasi-homogeneous: yes\n";
    rep.text() << "r_min: " << not_certified(n) << "\ndeterminacy bound: " << not_certified(n) << '\n';
  } else {
    certified = false;
    res["hh0"] = not_certified(n);
    res["quasi_homogeneous"] = not_certified(n);
    res["r_min"] = not_certified(n);
    res["determinacy_bound"] = not_certified(n);
    rep.text() << "hh0 class: " << not_certified(n) << "\nquasi-homogeneous: " << not_certified(n) << '\n';
    rep.text() << "r_min: " << not_certified(n) << "\ndeterminacy bound: " << not_certified(n) << '\n';
  }
  rep.certified("determinacy", certified);
  return rep.finish(certified ? kOk : kUncertified);
}

int cmd_equiv(Context& ctx, const std::string& file1, const std::string& file2) {
  Report rep(ctx, "equiv");
  rep.input(file1);
  rep.input(file2);
  const auto d1 = load_input(file1, ctx.truncation);
  const auto d2 = load_input(file2, ctx.truncation);
  if (!same_quiver(d1.quiver, d2.quiver)) throw ContextError("the two files declare different quivers");
  if (d1.truncation != d2.truncation) throw ContextError("the two files use different truncation orders");
  rep.truncation(d1.truncation);
  const auto result = construct_equivalence(d1.potential, d2.potential);
  auto& res = rep.results();
  res["status"] = to_string(result.status);
  rep.text() << to_string(result.status) << '\n';
  if (!result.reason.empty()) {
    res["reason"] = result.reason;
    rep.text() << "reason: " << result.reason << '\n';
  }
  if (result.map) {
    res["map"] = endo_json(*result.map);
    rep.text() << print_endo(*result.map);
  }
  if (result.status == EquivalenceResult::Status::Inconclusive) {
    res["degree"] = result.degree;
    if (result.residual) res["residual"] = terms_json(result.residual->rep());
  }
  rep.certified("status", result.status != EquivalenceResult::Status::Inconclusive);
  return rep.finish(result.status == EquivalenceResult::Status::Inconclusive ? kUncertified : kOk);
}

std::string graded_name(const GradedQuiver& gq, ArrowId a) { return gq.graded->arrow(a).name; }

int cmd_ginzburg(Context& ctx, const std::string& file, bool check, const std::string& transfer) {
  Report rep(ctx, "ginzburg");
  rep.input(file);
  if (!transfer.empty()) rep.input(transfer);
  const auto doc = load_input(file, ctx.truncation);
  const int n = doc.truncation;
  rep.truncation(n);
  const auto g = build_ginzburg(doc.potential);
  const auto& gq = g.quiver;
  auto& res = rep.results();
  int code = kOk;

  Json table = Json::array();
  rep.text() << "differential:\n";
  for (std::size_t a = 0; a < gq.graded->arrow_count(); ++a) {
    const auto id = static_cast<ArrowId>(a);
    const auto& d = g.table[a];
    rep.text() << "  d(" << graded_name(gq, id) << ") = " << to_string(d) << '\n';
    table.push_back({{"generator", graded_name(gq, id)}, {"degree", gq.degree[a]}, {"d", terms_json(d)}});
  }
  res["differential"] = std::move(table);

  if (check) {
    const bool sq = check_d_squared(g);
    res["d_squared_zero"] = sq;
    rep.text() << "d^2 = 0: " << (sq ? "yes" : "no") << '\n';
    rep.certified("d_squared", sq);
    if (!sq) code = kUncertified;
    const auto rs = h0(g);
    const auto dim = lambda_dimension(rs);
    rep.certified("h0_dimension", dim.dimension.has_value());
    if (dim.dimension) {
      res["h0_dimension"] = *dim.dimension;
      rep.text() << "H0 dimension: " << *dim.dimension << '\n';
    } else {
      res["h0_dimension"] = not_certified(n);
      rep.text() << "H0 dimension: " << not_certified(n) << '\n';
      code = kUncertified;
    }
  }

  if (!transfer.empty()) {
    const auto h = parse_endo(read_text_file(transfer), doc.quiver, n);
    const auto tr = transfer_gamma(h, doc.potential);
    Json gamma = Json::array();
    rep.text() << "gamma:\n";
    for (std::size_t a = 0; a < gq.graded->arrow_count(); ++a) {
      const auto id = static_cast<ArrowId>(a);
      const auto& img = tr.gamma.image(id);
      rep.text() << "  " << graded_name(gq, id) << " -> " << to_string(img) << '\n';
      gamma.push_back({{"generator", graded_name(gq, id)}, {"image", terms_json(img)}});
    }
    res["gamma"] = std::move(gamma);
    res["transferred_potential"] = terms_json(tr.target.potential.rep());
    rep.text() << "transferred potential: " << to_string(tr.target.potential.rep()) << '\n';
    rep.certified("gamma", true);
  }
  return rep.finish(code);
}

int cmd_abelianize(Context& ctx, const std::string& file, const std::string& node) {
  Report rep(ctx, "abelianize");
  rep.input(file);
  const auto doc = load_input(file, ctx.truncation);
  const int n = doc.truncation;
  rep.truncation(n);
  const auto id = doc.quiver->find_node(node);
  if (!id) throw DomainError("unknown node '" + node + "'");
  const auto f = abelianize(doc.potential.rep(), *id);
  auto& res = rep.results();
  res["node"] = node;
  res["variables"] = f.variables();
  res["series"] = comm_terms_json(f);
  res["series_text"] = to_string(f);
  rep.text() << "variables: ";
  for (std::size_t i = 0; i < f.variables().size(); ++i) rep.text() << (i ? " " : "") << f.variables()[i];
  rep.text() << "\nseries: " << to_string(f) << '\n';
  if (f.variables().empty() || f.is_zero()) {
    res["dimension"] = not_certified(n);
    rep.text() << "commutative Jacobi dimension: " << not_certified(n) << '\n';
    rep.certified("dimension", false);
    return rep.finish(kUncertified);
  }
  const auto dim = comm_jacobi_dimension(f);
  rep.certified("dimension", dim.dimension.has_value());
  if (dim.dimension) {
    res["dimension"] = *dim.dimension;
    rep.text() << "commutative Jacobi dimension: " << *dim.dimension << '\n';
    const bool qh = comm_is_quasi_homogeneous(f);
    res["quasi_homogeneous"] = qh;
    rep.text() << "quasi-homogeneous: " << (qh ? "yes" : "no") << '\n';
  } else {
    res["dimension"] = not_certified(n);
    rep.text() << "commutative Jacobi dimension: " << not_certified(n) << '\n';
  }
  return rep.finish(dim.dimension ? kOk : kUncertified);
}

int cmd_invert(Context& ctx, const std::string& file, const std::string& endo_file) {
  Report rep(ctx, "invert-endo");
  rep.input(file);
  rep.input(endo_file);
  const auto doc = load_input(file, ctx.truncation);
  rep.truncation(doc.truncation);
  const auto h = parse_endo(read_text_file(endo_file), doc.quiver, doc.truncation);
  const auto inv = invert(h);
  const bool ok = compose(h, inv) == Endo::identity(doc.quiver, doc.truncation) &&
                  compose(inv, h) == Endo::identity(doc.quiver, doc.truncation);
  auto& res = rep.results();
  res["inverse"] = endo_json(inv);
  res["verified"] = ok;
  rep.text() << print_endo(inv);
  rep.certified("inverse", ok);
  return rep.finish(ok ? kOk : kUncertified);
}

struct Check {
  std::string name;
  bool passed;
};

int cmd_selftest(Context& ctx) {
  Report rep(ctx, "selftest");
  const int n = ctx.truncation.value_or(kDefaultTruncation);
  rep.truncation(n);
  std::vector<Check> checks;
  for (const auto& entry : load_corpus(n)) {
    rep.input(kCorpusPrefix + entry.name);
    const auto& phi = entry.document.potential;
    const auto g = build_ginzburg(phi);
    checks.push_back({entry.name + ": d^2 = 0", check_d_squared(g)});
    const auto rs = jacobi_system(phi);
    const auto dim = lambda_dimension(rs);
    if (entry.jacobi_dimension) {
      checks.push_back({entry.name + ": dimension " + std::to_string(*entry.jacobi_dimension),
                        dim.dimension == entry.jacobi_dimension});
      const auto h0_dim = lambda_dimension(h0(g));
      checks.push_back({entry.name + ": H0 dimension", h0_dim.dimension == dim.dimension});
    }
    if (entry.quasi_homogeneous && dim.dimension) {
      checks.push_back({entry.name + ": quasi-homogeneous " + (*entry.quasi_homogeneous ? "yes" : "no"),
                        hh0_class(phi, rs).zero == *entry.quasi_homogeneous});
    }
  }
  Json list = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    rep.text() << (c.passed ? "ok   " : "FAIL ") << c.name << '\n';
    list.push_back({{"check", c.name}, {"passed", c.passed}});
    all = all && c.passed;
  }
  rep.results()["checks"] = std::move(list);
  rep.results()["passed"] = all;
  rep.certified("selftest", all);
  return rep.finish(all ? kOk : kUncertified);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computer algebra for quivers with potentials", "qpcalc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qpcalc 0.1.0");

  Context ctx{out, false, std::nullopt};
  int corpus_n = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", ctx.json, "Write a JSON report");
    sub->add_option("--truncation", corpus_n, "Truncation order for corpus:<name> inputs")->check(CLI::PositiveNumber);
  };

  std::string file, file2, node, transfer;
  bool check = false;
  std::function<int()> action;

  auto* derive = app.add_subcommand("derive", "Print the cyclic derivatives of the potential");
  derive->add_option("file", file, "QPOT file or corpus:<name>")->required();
  add_common(derive);
  derive->callback([&] { action = [&] { return cmd_derive(ctx, file); }; });

  auto* jac = app.add_subcommand("jacobi", "Rewriting system, dimension and basis of the Jacobi algebra");
  jac->add_option("file", file, "QPOT file or corpus:<name>")->required();
  add_common(jac);
  jac->callback([&] { action = [&] { return cmd_jacobi(ctx, file); }; });

  auto* inv = app.add_subcommand("invariants", "Order, HH0 class, weights and determinacy");
  inv->add_option("file", file, "QPOT file or corpus:<name>")->required();
  add_common(inv);
  inv->callback([&] { action = [&] { return cmd_invariants(ctx, file); }; });

  auto* eq = app.add_subcommand("equiv", "Search for a right equivalence between two potentials");
  eq->add_option("first", file, "QPOT file or corpus:<name>")->required();
  eq->add_option("second", file2, "QPOT file or corpus:<name>")->required();
  add_common(eq);
  eq->callback([&] { action = [&] { return cmd_equiv(ctx, file, file2); }; });

  auto* gz = app.add_subcommand("ginzburg", "Ginzburg dg-algebra differential");
  gz->add_option("file", file, "QPOT file or corpus:<name>")->required();
  gz->add_flag("--check", check, "Verify d^2 = 0 and compute the H0 dimension");
  gz->add_option("--transfer", transfer, "Endomorphism file to transfer to the dg-algebra");
  add_common(gz);
  gz->callback([&] { action = [&] { return cmd_ginzburg(ctx, file, check, transfer); }; });

  auto* ab = app.add_subcommand("abelianize", "Commutative series at a node and its Jacobi dimension");
  ab->add_option("file", file, "QPOT file or corpus:<name>")->required();
  ab->add_option("--node", node, "Node name")->required();
  add_common(ab);
  ab->callback([&] { action = [&] { return cmd_abelianize(ctx, file, node); }; });

  auto* ie = app.add_subcommand("invert-endo", "Invert an endomorphism of the completed path algebra");
  ie->add_option("file", file, "QPOT file (supplies quiver and truncation) or corpus:<name>")->required();
  ie->add_option("endo", file2, "Endomorphism file")->required();
  add_common(ie);
  ie->callback([&] { action = [&] { return cmd_invert(ctx, file, file2); }; });

  auto* st = app.add_subcommand("selftest", "Check the built-in corpus against its annotations");
  add_common(st);
  st->callback([&] { action = [&] { return cmd_selftest(ctx); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }
  if (corpus_n > 0) ctx.truncation = corpus_n;

  try {
    return action();
  } catch (const CertificateError& e) {
    err << "not certified: " << e.what() << '\n';
    return kUncertified;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace qpcalc::cli
