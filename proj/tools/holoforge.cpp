#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "holoforge/conjugacy.hpp"
#include "holoforge/examples.hpp"
#include "holoforge/group.hpp"
#include "holoforge/group_ops.hpp"
#include "holoforge/morphisms.hpp"
#include "holoforge/normal_forms.hpp"
#include "holoforge/verify.hpp"

namespace {

using namespace holoforge;
using nlohmann::json;

json mat_json(const Matrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(a.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

json poly_json(const Polynomial& f) {
  json c = json::array();
  for (u64 v : f.coeffs()) c.push_back(v);
  return c;
}

Matrix load_mat(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::ParseError, "cannot open matrix file: " + path);
  return Matrix::parse(in);
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::ParseError, "cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, path + ": " + e.what());
  }
}

u64 entry_mod(const json& v, u64 modulus) {
  long long raw = v.get<long long>();
  long long mod = static_cast<long long>(modulus);
  return static_cast<u64>(((raw % mod) + mod) % mod);
}

Matrix matrix_from_json(const RingSpec& ring, const json& rows) {
  require(rows.is_array() && !rows.empty(), Errc::ParseError, "matrix must be an array of rows");
  int r = static_cast<int>(rows.size());
  int c = static_cast<int>(rows[0].size());
  Matrix a(ring, r, c);
  for (int i = 0; i < r; ++i) {
    const json& row = rows[i];
    require(row.is_array() && static_cast<int>(row.size()) == c, Errc::ParseError,
            "ragged matrix rows");
    for (int j = 0; j < c; ++j) a.at(i, j) = entry_mod(row[j], ring.modulus);
  }
  return a;
}

/// Group specification files: {"kind": ..., ...}. Kinds: holomorph (ring [p,m],
/// n, H = list of matrices), vector (ring, n), cyclic (order), dihedral
/// (sides), quaternion, direct_product (factors = list of specifications).
GroupPtr build_group(const json& spec, u64 cap) {
  require(spec.is_object() && spec.contains("kind"), Errc::ParseError,
          "group specification needs a \"kind\" field");
  std::string kind = spec["kind"].get<std::string>();
  if (kind == "holomorph" || kind == "vector") {
    require(spec.contains("ring") && spec["ring"].is_array() && spec["ring"].size() == 2,
            Errc::ParseError, "expected \"ring\": [p, m]");
    RingSpec ring(spec["ring"][0].get<u64>(), spec["ring"][1].get<unsigned>());
    int n = spec.at("n").get<int>();
    if (kind == "vector") return vector_group(ring.p, ring.m, n, cap);
    std::vector<Matrix> hgens;
    for (const json& m : spec.value("H", json::array()))
      hgens.push_back(matrix_from_json(ring, m));
    return holomorph(ring, n, hgens, cap);
  }
  if (kind == "cyclic") return cyclic_group(spec.at("order").get<u64>());
  if (kind == "dihedral") return dihedral_group(spec.at("sides").get<u64>());
  if (kind == "quaternion") return quaternion_group();
  if (kind == "direct_product") {
    const json& factors = spec.at("factors");
    require(factors.is_array() && factors.size() >= 2, Errc::ParseError,
            "direct_product needs at least two factors");
    GroupPtr g = build_group(factors[0], cap);
    for (size_t i = 1; i < factors.size(); ++i) g = direct_product(g, build_group(factors[i], cap), cap);
    return g;
  }
  fail(Errc::ParseError, "unknown group kind: " + kind);
}

void emit(const json& j) { std::cout << j.dump(2) << std::endl; }

SuiteReport run_suite(const std::string& name, std::optional<u64> seed, u64 budget) {
  auto s = [&](u64 dflt) { return seed.value_or(dflt); };
  if (name == "orden") return suite_orden(s(1));
  if (name == "psimilar") return suite_psimilar(s(2));
  if (name == "pid") return suite_pid(s(3));
  if (name == "unip") return suite_unip(s(4));
  if (name == "lindo") return suite_lindo(budget);
  if (name == "lindo2") return suite_lindo2(s(5), budget);
  if (name == "derived") return suite_derived_span(s(6));
  if (name == "lcs") return suite_lcs_span(s(7));
  if (name == "ord") return suite_ord(s(8));
  if (name == "nicecase0") return suite_nicecase0(s(9), budget);
  if (name == "suma") return suite_suma(s(10), budget);
  if (name == "abe") return suite_abe(s(11), budget);
  if (name == "conjugados") return suite_conjugados(s(12), budget);
  fail(Errc::UnknownSuite,
       "unknown suite: " + name +
           " (known: lindo psimilar orden unip pid lindo2 derived lcs ord nicecase0 suma abe "
           "conjugados)");
}

json suite_json(const SuiteReport& r) {
  json j;
  j["suite"] = r.suite;
  j["cases"] = r.cases;
  j["failures"] = r.failures;
  j["notes"] = r.notes;
  j["pass"] = r.ok();
  return j;
}

json decision_json(const ConjugacyDecision& d) {
  json j;
  j["verdict"] = to_string(d.verdict);
  if (d.exponent) j["exponent"] = *d.exponent;
  if (d.witness) j["witness"] = mat_json(*d.witness);
  if (d.separating_invariant) j["separating_invariant"] = *d.separating_invariant;
  if (d.budget_note) j["budget_note"] = *d.budget_note;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact decision tools for relative holomorphs of finite modules"};
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable report output");
  u64 seed_value = 0;
  CLI::Option* seed_opt = app.add_option("--seed", seed_value, "seed for randomized searches");
  u64 cap = kDefaultGroupCap;
  if (const char* env = std::getenv("HOLOFORGE_CAP")) cap = std::strtoull(env, nullptr, 10);
  app.add_option("--cap", cap, "group enumeration cap (default HOLOFORGE_CAP or 2^20)");

  std::string file_a, file_b, name;
  u64 flag_p = 0;
  int flag_n = 0, flag_m = 0;
  u64 iso_budget = kDefaultIsoBudget;
  u64 conj_budget = kDefaultConjBudget;

  CLI::App* sc_rcf = app.add_subcommand("rcf", "rational canonical form with verified conjugator");
  sc_rcf->add_option("matrix", file_a)->required();

  CLI::App* sc_similar = app.add_subcommand("similar", "decide similarity of two field matrices");
  sc_similar->add_option("a", file_a)->required();
  sc_similar->add_option("b", file_b)->required();

  CLI::App* sc_minpoly = app.add_subcommand("minpoly", "minimal and characteristic polynomials");
  sc_minpoly->add_option("matrix", file_a)->required();

  CLI::App* sc_partition =
      app.add_subcommand("partition", "Jordan block multiplicities of a unipotent matrix");
  sc_partition->add_option("matrix", file_a)->required();

  CLI::App* sc_holiso = app.add_subcommand(
      "holiso", "decide isomorphism of the holomorphs generated by two field matrices");
  sc_holiso->add_option("a", file_a)->required();
  sc_holiso->add_option("b", file_b)->required();
  sc_holiso->add_option("--p", flag_p, "expected prime of the base field");
  sc_holiso->add_option("--n", flag_n, "expected matrix size");

  CLI::App* sc_conj = app.add_subcommand(
      "conj-ring", "three-valued cyclic-subgroup conjugacy over a residue ring");
  sc_conj->add_option("a", file_a)->required();
  sc_conj->add_option("b", file_b)->required();
  sc_conj->add_option("--budget", conj_budget, "conjugator search budget");

  CLI::App* sc_example = app.add_subcommand("example", "run a scripted worked example");
  sc_example->add_option("name", name, "one of: final e3 e7 e9 e1 e6a e6b e6c e6d")->required();
  sc_example->add_option("--p", flag_p, "prime parameter where the example accepts one");
  sc_example->add_option("--n", flag_n, "rank parameter");
  sc_example->add_option("--m", flag_m, "ring exponent parameter");
  sc_example->add_option("--budget", iso_budget, "oracle search budget");

  CLI::App* sc_verify = app.add_subcommand("verify", "run a property suite");
  sc_verify->add_option("suite", name, "suite name (see verify --help)")->required();
  sc_verify->add_option("--budget", iso_budget, "oracle search budget");

  CLI::App* sc_vl = app.add_subcommand(
      "verify-lindo", "compare the holomorph decision against the oracle over one scope");
  sc_vl->add_option("--p", flag_p, "field prime")->required();
  sc_vl->add_option("--n", flag_n, "matrix size")->required();
  sc_vl->add_option("--budget", iso_budget, "oracle search budget");

  CLI::App* sc_oracle =
      app.add_subcommand("oracle-iso", "brute-force isomorphism test on two group files");
  sc_oracle->add_option("a", file_a)->required();
  sc_oracle->add_option("b", file_b)->required();
  sc_oracle->add_option("--budget", iso_budget, "extension budget for the backtracking search");

  CLI::App* sc_report = app.add_subcommand("group-report", "structure report for a group file");
  sc_report->add_option("group", file_a)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::optional<u64> seed;
  if (seed_opt->count() > 0) seed = seed_value;

  try {
    if (*sc_rcf) {
      Matrix a = load_mat(file_a);
      RcfResult res = rcf(a, seed.value_or(0));
      json out;
      out["invariant_factors"] = json::array();
      for (const Polynomial& f : invariant_factors(a))
        out["invariant_factors"].push_back(poly_json(f));
      out["form"] = mat_json(res.form);
      out["witness"] = mat_json(res.witness);
      emit(out);
      return 0;
    }
    if (*sc_similar) {
      Matrix a = load_mat(file_a), b = load_mat(file_b);
      bool sim = is_similar(a, b);
      json out;
      out["similar"] = sim;
      if (sim) out["witness"] = mat_json(similarity_witness(a, b, seed.value_or(0)));
      emit(out);
      return sim ? 0 : 2;
    }
    if (*sc_minpoly) {
      Matrix a = load_mat(file_a);
      json out;
      out["minpoly"] = poly_json(minpoly(a));
      out["charpoly"] = poly_json(charpoly(a));
      emit(out);
      return 0;
    }
    if (*sc_partition) {
      Matrix a = load_mat(file_a);
      json out;
      out["partition"] = unipotent_partition(a);
      emit(out);
      return 0;
    }
    if (*sc_holiso) {
      Matrix a = load_mat(file_a), b = load_mat(file_b);
      if (flag_p)
        require(a.ring().p == flag_p && a.ring().is_field(), Errc::RingMismatch,
                "matrix is not over the requested prime field");
      if (flag_n)
        require(a.rows() == flag_n && b.rows() == flag_n, Errc::DimensionMismatch,
                "matrix size differs from --n");
      ConjugacyDecision d = cyclic_conjugate_field(a, b, seed.value_or(0));
      json out = decision_json(d);
      out["isomorphic"] = d.verdict == Verdict::Conjugate;
      emit(out);
      return d.verdict == Verdict::Conjugate ? 0 : 2;
    }
    if (*sc_conj) {
      Matrix a = load_mat(file_a), b = load_mat(file_b);
      ConjugacyDecision d = cyclic_conjugate_ring(a, b, conj_budget, seed.value_or(0));
      emit(decision_json(d));
      return d.verdict == Verdict::Conjugate ? 0 : 2;
    }
    if (*sc_example) {
      RunReport r = run_example(name, flag_p, flag_n, flag_m, iso_budget, cap);
      if (as_json)
        emit(r.json());
      else
        std::cout << r.text();
      return r.pass() ? 0 : 2;
    }
    if (*sc_verify) {
      SuiteReport r = run_suite(name, seed, iso_budget);
      if (as_json)
        emit(suite_json(r));
      else
        std::cout << r.str();
      return r.ok() ? 0 : 2;
    }
    if (*sc_vl) {
      LindoScopeReport rep = verify_lindo(flag_p, flag_n, iso_budget);
      if (as_json) {
        json out;
        out["p"] = rep.p;
        out["n"] = rep.n;
        out["scope"] = rep.scope;
        out["pairs"] = rep.pairs;
        out["disagreements"] = rep.disagreements;
        emit(out);
      } else {
        std::cout << "p=" << rep.p << " n=" << rep.n << " (" << rep.scope << "): " << rep.pairs
                  << " pairs, " << rep.disagreements.size() << " disagreements\n";
        for (const std::string& d : rep.disagreements) std::cout << "  " << d << '\n';
      }
      return rep.ok() ? 0 : 2;
    }
    if (*sc_oracle) {
      GroupPtr g1 = build_group(load_json(file_a), cap);
      GroupPtr g2 = build_group(load_json(file_b), cap);
      IsoResult res = are_isomorphic(*g1, *g2, iso_budget);
      json out;
      out["isomorphic"] = res.isomorphic;
      if (res.isomorphic) out["witness"] = json{{"map", res.map}};
      emit(out);
      return res.isomorphic ? 0 : 2;
    }
    if (*sc_report) {
      GroupPtr g = build_group(load_json(file_a), cap);
      Subgroup d = derived_subgroup(*g, cap);
      json out;
      out["order"] = g->order();
      out["derived_order"] = d.order();
      out["derived_invariants"] =
          is_abelian(*g, d) ? json(abelian_invariants(*g, d)) : json(nullptr);
      json lcs = json::array();
      for (const Subgroup& t : lower_central_series(*g, cap)) lcs.push_back(t.order());
      out["lcs_orders"] = lcs;
      out["center_order"] = center(*g).order();
      out["nilpotency_class"] = nilpotency_class(*g, cap);
      emit(out);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
