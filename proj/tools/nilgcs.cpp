#include <CLI11.hpp>

#include <iostream>

#include "nilgcs/io.hpp"
#include "nilgcs/verification.hpp"

using namespace nilgcs;

namespace {

enum Exit { kOk = 0, kFalse = 1, kInput = 2, kInvariant = 3 };

struct Options {
  std::string algebra, gcs, pool, pair, gamma, form;
  std::optional<std::size_t> degree;
  bool json = false, search = false;
};

void render(std::ostream& os, const Json& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      os << pad << key << ":\n";
      render(os, v, indent + 1);
    } else if (v.is_array()) {
      bool flat = std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
      if (flat) {
        os << pad << key << ": [";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar(v[i]);
        os << "]\n";
      } else {
        os << pad << key << ":\n";
        for (const auto& x : v) {
          if (x.is_object()) {
            os << pad << "  -\n";
            render(os, x, indent + 2);
          } else {
            os << pad << "  - " << x.dump() << "\n";
          }
        }
      }
    } else {
      os << pad << key << ": " << scalar(v) << "\n";
    }
  }
}

/// Text output is rendered from the JSON report.
int emit(const Options& o, const Json& report, int code) {
  if (o.json)
    std::cout << report.dump(2) << "\n";
  else
    render(std::cout, report, 0);
  return code;
}

LieAlgebra require_algebra(const Options& o) {
  if (o.algebra.empty()) throw InputError("--algebra is required");
  return load_algebra(o.algebra);
}

Gcs require_gcs(const Options& o) {
  if (o.gcs.empty()) throw InputError("--gcs is required");
  Json doc = read_json_file(o.gcs);
  if (!o.algebra.empty()) return gcs_from_json(doc, load_algebra(o.algebra));
  return gcs_from_json(doc);
}

std::string vector_text(const Vector& v, const SymbolNamer& names) {
  return format_multivector(Multivector::from_vector(v), names);
}

Json g_subspace(const Subspace& s) {
  Json out = Json::array();
  for (const auto& v : s.basis_vectors()) out.push_back(vector_text(v, vector_namer()));
  return out;
}

Json algebra_summary(const LieAlgebra& g) {
  Json r;
  if (!g.name().empty()) r["name"] = g.name();
  r["salamon"] = g.to_salamon();
  r["dim"] = g.dim();
  return r;
}

DgaPresentation integrable_presentation(const Gcs& g) {
  DgaPresentation p(g);
  if (auto f = p.delta_squared_failure())
    throw PreconditionError("structure is not integrable: δ̄^2 != 0 on degree " + std::to_string(f->degree));
  return p;
}

Json presentation_basis(const Gcs& g, const DgaPresentation& p) {
  Json out;
  for (std::size_t a = 0; a < p.n(); ++a) out[p.names()[a]] = g.courant().format(p.basis()[a]);
  return out;
}

Multivector require_gamma(const Options& o, const DgaPresentation& p) {
  if (o.gamma.empty()) throw InputError("--gamma is required (an expression in L1..L" + std::to_string(p.n()) + ")");
  return parse_expression(o.gamma, p.n(), single_family("L"));
}

// ---------------------------------------------------------------------------
// commands

int cmd_parse(const Options& o) {
  if (o.algebra.empty()) throw InputError("--algebra is required");
  LieAlgebra g = load_algebra(o.algebra);
  Json r = algebra_summary(g);
  auto lcs = g.lower_central_series();
  r["nilpotent"] = lcs.step.has_value();
  if (lcs.step) r["step"] = *lcs.step;
  Json d;
  for (std::size_t k = 0; k < g.dim(); ++k) d["E" + std::to_string(k + 1)] = format_multivector(g.d_generator(k), form_namer());
  r["differentials"] = d;
  return emit(o, r, kOk);
}

int cmd_check_jacobi(const Options& o) {
  if (o.algebra.empty()) throw InputError("--algebra is required");
  LieAlgebra g = parse_salamon(o.algebra, "", false);
  auto v = g.jacobi_violations();
  Json r = algebra_summary(g);
  r["jacobi"] = v.empty();
  Json bad = Json::array();
  for (const auto& x : v)
    bad.push_back({{"triple", {"e" + std::to_string(x.i + 1), "e" + std::to_string(x.j + 1), "e" + std::to_string(x.k + 1)}},
                   {"cyclic_sum", vector_text(x.cyclic_sum, vector_namer())}});
  if (!v.empty()) r["violations"] = bad;
  return emit(o, r, v.empty() ? kOk : kFalse);
}

int cmd_ce_cohomology(const Options& o) {
  LieAlgebra g = require_algebra(o);
  Json r = algebra_summary(g);
  if (o.degree) {
    if (*o.degree > g.dim()) throw InputError("degree exceeds the dimension");
    r["cohomology"] = cohomology_to_json(g.ce_cohomology(*o.degree), form_namer());
  } else {
    r["betti"] = g.betti_numbers();
  }
  return emit(o, r, kOk);
}

int cmd_gcs_validate(const Options& o) {
  Json r;
  try {
    Gcs g = require_gcs(o);
    r = gcs_to_json(g);
    r["valid"] = true;
    r["ell"] = subspace_to_json(g.courant(), g.ell());
  } catch (const NotAlmostGcs& e) {
    r["valid"] = false;
    r["reason"] = e.what();
    return emit(o, r, kFalse);
  }
  return emit(o, r, kOk);
}

int cmd_gcs_integrable(const Options& o) {
  Gcs g = require_gcs(o);
  auto rep = g.integrability();
  Json r;
  r["integrable"] = rep.integrable;
  if (!rep.integrable) {
    auto b = g.ell().basis_vectors();
    const auto& d = g.courant();
    r["failure"] = {{"pair", {d.format(b[rep.a]), d.format(b[rep.b])}},
                    {"bracket", d.format(rep.bracket)},
                    {"ell_bar_component", d.format(rep.lbar_component)}};
  }
  return emit(o, r, rep.integrable ? kOk : kFalse);
}

int cmd_gcs_type(const Options& o) {
  Gcs g = require_gcs(o);
  Json r;
  r["type"] = g.type();
  return emit(o, r, kOk);
}

int cmd_dga_cohomology(const Options& o) {
  Gcs g = require_gcs(o);
  auto p = integrable_presentation(g);
  Json r;
  r["basis"] = presentation_basis(g, p);
  if (o.degree) {
    if (*o.degree > p.n()) throw InputError("degree exceeds the rank of ℓ");
    r["cohomology"] = cohomology_to_json(p.cohomology(*o.degree), p.namer());
  } else {
    r["betti"] = p.betti_numbers();
  }
  return emit(o, r, kOk);
}

int cmd_mc_check(const Options& o) {
  Gcs g = require_gcs(o);
  auto p = integrable_presentation(g);
  Multivector gm = require_gamma(o, p);
  Multivector mc = p.maurer_cartan(gm);
  bool central = true;
  for (std::size_t a = 0; a < p.n(); ++a)
    if (!p.bracket(mc, Multivector::generator(p.n(), a)).is_zero()) central = false;
  Json r;
  r["basis"] = presentation_basis(g, p);
  r["gamma"] = p.format(gm);
  r["maurer_cartan"] = mc.is_zero();
  r["mc_value"] = p.format(mc);
  r["deformed_square_zero"] = p.deformed(gm).delta_squared_zero();
  if (!mc.is_zero()) r["mc_value_central"] = central;
  return emit(o, r, mc.is_zero() ? kOk : kFalse);
}

int cmd_deform(const Options& o) {
  Gcs g = require_gcs(o);
  auto p = integrable_presentation(g);
  Multivector gm = require_gamma(o, p);
  auto def = p.deformed(gm);
  Json r;
  r["basis"] = presentation_basis(g, p);
  r["gamma"] = p.format(gm);
  Json gen;
  for (std::size_t a = 0; a < p.n(); ++a) gen[p.names()[a]] = p.format(def.delta_generators()[a]);
  r["delta"] = gen;
  r["square_zero"] = def.delta_squared_zero();
  r["unchanged"] = def.same_presentation(p);
  return emit(o, r, def.delta_squared_zero() ? kOk : kFalse);
}

int cmd_semi_abelian(const Options& o) {
  if (o.pair.empty() == !o.search) throw InputError("give exactly one of --pair <file> and --search");
  Gcs g = require_gcs(o);
  const auto& d = g.courant();
  if (o.search) {
    auto pool = o.pool.empty() ? default_pool(g) : pool_from_json(d, read_json_file(o.pool));
    auto v = search_semi_abelian(g, pool);
    return emit(o, verdict_to_json(d, v), v.status == Verdict::SemiAbelian ? kOk : kFalse);
  }
  Json doc = read_json_file(o.pair);
  const Json& pj = doc.contains("pair") ? doc["pair"] : doc;
  if (!pj.contains("A") || !pj.contains("K")) throw InputError("pair file needs \"A\" and \"K\"");
  Subspace a = subspace_from_json(d, pj["A"]), k = subspace_from_json(d, pj["K"]);
  if (!g.is_integrable()) throw PreconditionError("structure is not integrable");
  auto adm = check_admissible(d, a, k);
  Json r;
  if (!adm) {
    r["status"] = "NOT_ADMISSIBLE";
    r["reason"] = adm.failure;
    return emit(o, r, kFalse);
  }
  auto chk = check_semi_abelian(g, a, k);
  r["status"] = chk.result ? "SEMI_ABELIAN" : "NOT_SEMI_ABELIAN";
  r["pair"] = {{"A", subspace_to_json(d, a)}, {"K", subspace_to_json(d, k)}};
  if (!chk.result) {
    r["reason"] = chk.result.failure;
    return emit(o, r, kFalse);
  }
  r["ell_decomposition"] = {{"a", subspace_to_json(d, chk.a)}, {"k", subspace_to_json(d, chk.k)}};
  auto rep = semi_abelian_report(g, a, k);
  r["report"] = {{"decomposition", rep.decomposition},   {"a_abelian_subalgebra", rep.a_abelian_subalgebra},
                 {"k_abelian_ideal", rep.k_abelian_ideal}, {"dualities", rep.dualities},
                 {"k_closed", rep.k_closed},               {"a_image", rep.a_image},
                 {"h1", rep.h1},                           {"k_dim", rep.k_dim}};
  if (!rep.holds()) throw InvariantViolation("semi-abelian pair without its structural consequences");
  return emit(o, r, kOk);
}

int cmd_symplectic(const Options& o) {
  LieAlgebra g;
  Multivector w;
  if (!o.form.empty()) {
    g = require_algebra(o);
    w = parse_form(o.form, g.dim());
  } else {
    if (o.gcs.empty()) throw InputError("give --form <2-form> with --algebra, or a symplectic --gcs document");
    Json doc = read_json_file(o.gcs);
    if (!doc.contains("symplectic")) throw InputError("--gcs document has no \"symplectic\" form");
    g = o.algebra.empty() ? parse_salamon(doc.value("algebra", "")) : load_algebra(o.algebra);
    w = detail::two_tensor_from_json(doc["symplectic"], g.dim(), "E");
  }
  if (w.is_zero() || w.degree() != 2) throw InputError("symplectic form must be a 2-form");
  std::vector<Vector> pool;
  auto s = symplectic_semi_abelian(g, w, pool);
  Json r;
  r["status"] = to_string(s.status);
  r["closed"] = g_subspace(s.closed);
  if (s.status == Verdict::SemiAbelian) {
    r["b"] = g_subspace(s.b);
    r["h"] = g_subspace(s.h);
    Gcs gs = Gcs::from_symplectic(g, w);
    r["pair"] = {{"A", subspace_to_json(gs.courant(), s.a_pair)}, {"K", subspace_to_json(gs.courant(), s.k_pair)}};
  }
  if (!s.reason.empty()) r["reason"] = s.reason;
  return emit(o, r, s.status == Verdict::SemiAbelian ? kOk : kFalse);
}

int cmd_verify(const Options& o) {
  Json r, crit = Json::array();
  bool all = true;
  for (const auto& c : run_acceptance()) {
    Json cj{{"id", c.id}, {"title", c.title}, {"pass", c.pass()}};
    if (!c.note.empty()) cj["note"] = c.note;
    auto f = c.failures();
    if (!f.empty()) cj["failures"] = f;
    all = all && c.pass();
    crit.push_back(cj);
  }
  std::size_t ok = 0;
  Json bad = Json::array();
  auto cat = verify_catalog();
  for (const auto& c : cat) {
    if (c.pass) ++ok;
    else bad.push_back(c.name + (c.detail.empty() ? "" : ": " + c.detail));
  }
  all = all && bad.empty();
  r["criteria"] = crit;
  r["catalog"] = {{"checked", cat.size()}, {"passed", ok}};
  if (!bad.empty()) r["catalog"]["failures"] = bad;
  r["all_pass"] = all;
  if (o.json) return emit(o, r, all ? kOk : kFalse);
  for (const auto& c : crit) {
    std::cout << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  " << c["id"].get<int>() << "  "
              << c["title"].get<std::string>() << "\n";
    if (c.contains("failures"))
      for (const auto& f : c["failures"]) std::cout << "        " << f.get<std::string>() << "\n";
  }
  std::cout << (bad.empty() ? "PASS" : "FAIL") << "  catalog  " << ok << "/" << cat.size() << " expectations\n";
  for (const auto& f : bad) std::cout << "        " << f.get<std::string>() << "\n";
  return all ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariant generalized complex geometry on nilpotent Lie algebras"};
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&)> run;

  auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--algebra", o.algebra, "Salamon tuple or algebra file");
    sub->add_option("--gcs", o.gcs, "structure JSON file");
    sub->add_option("--degree", o.degree, "cohomological degree");
    sub->add_option("--pool", o.pool, "JSON list of candidate elements");
    sub->add_flag("--json", o.json, "machine-readable output");
    sub->callback([&run, fn] { run = fn; });
    return sub;
  };
  add("parse", "parse an algebra", cmd_parse);
  add("check-jacobi", "check the Jacobi identity", cmd_check_jacobi);
  add("ce-cohomology", "Chevalley-Eilenberg cohomology", cmd_ce_cohomology);
  add("gcs-validate", "check an almost generalized complex structure", cmd_gcs_validate);
  add("gcs-integrable", "check integrability", cmd_gcs_integrable);
  add("gcs-type", "type of a structure", cmd_gcs_type);
  add("dga-cohomology", "cohomology of the differential Gerstenhaber algebra", cmd_dga_cohomology);
  add("mc-check", "Maurer-Cartan equation for Γ", cmd_mc_check)
      ->add_option("--gamma", o.gamma, "element of Λ²ℓ in L1..Ln");
  add("deform", "deformed differential for Γ", cmd_deform)->add_option("--gamma", o.gamma, "element of Λ²ℓ in L1..Ln");
  auto* sa = add("semi-abelian", "check a pair or search for one", cmd_semi_abelian);
  sa->add_option("--pair", o.pair, "JSON file {\"A\": [...], \"K\": [...]}");
  sa->add_flag("--search", o.search, "search for a pair");
  add("symplectic-semi-abelian", "decomposition for a symplectic form", cmd_symplectic)
      ->add_option("--form", o.form, "2-form such as \"E1^E2 + E3^E4\"");
  add("verify-paper", "run the acceptance suite and the catalog checks", cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }
  try {
    return run(o);
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed document: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariant;
  }
}
