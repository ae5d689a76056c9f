// Command line surface for the wang-groups library: exact integer
// linear algebra, Heisenberg subgroup calculus, ambient group tools,
// finite quotient verification and the property suites.

#include "wg/error.hpp"
#include "wg/heis.hpp"
#include "wg/json_io.hpp"
#include "wg/matrix.hpp"
#include "wg/numth.hpp"
#include "wg/polynomial.hpp"
#include "wg/quotient.hpp"
#include "wg/verify.hpp"
#include "wg/wang.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

using wg::Int;
using wg::Rat;
using nlohmann::json;

json parse_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return json::parse(arg);
  return wg::io::load_file(arg);
}

Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rat r(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    r.canonicalize();
    return r;
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    Int den = wg::pow_int(10, fp.size());
    bool neg = !ip.empty() && ip[0] == '-';
    Int num = Int(ip.empty() || ip == "-" ? "0" : ip);
    Int frac(fp);
    num = num * den + (neg ? -frac : frac);
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  return Rat(Int(s));
}

void emit(const json& j, bool json_mode) {
  if (json_mode)
    std::cout << j.dump() << "\n";
  else if (j.is_string())
    std::cout << j.get<std::string>() << "\n";
  else
    std::cout << j.dump(2) << "\n";
}

int print_report(const wg::verify::RunReport& rep, bool json_mode) {
  if (json_mode) {
    json out;
    out["suite"] = rep.suite;
    json recs = json::array();
    for (const auto& r : rep.records)
      recs.push_back(json{{"name", r.name},
                          {"inputs_digest", r.inputs_digest},
                          {"observed", r.observed},
                          {"bound", r.bound},
                          {"status", r.status}});
    out["records"] = recs;
    out["passed"] = rep.passed;
    out["failed"] = rep.failed;
    out["skipped"] = rep.skipped;
    std::cout << out.dump() << "\n";
  } else {
    for (const auto& r : rep.records) {
      std::cout << "[" << r.status << "] " << r.name;
      if (!r.observed.empty()) std::cout << "  observed: " << r.observed;
      if (!r.bound.empty()) std::cout << "  bound: " << r.bound;
      std::cout << "\n";
    }
    std::cout << rep.passed << " passed, " << rep.failed << " failed, " << rep.skipped << " skipped\n";
  }
  std::cerr << "wall time: " << rep.wall_seconds << " s\n";
  return rep.failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"wang-groups: exact computations in lattice and Heisenberg group extensions"};
  app.require_subcommand(1);
  bool json_mode = false;
  app.add_flag("--json", json_mode, "machine readable output");

  std::string matrix_arg, x_arg, y_arg, data_arg, word_arg, file_arg, gens_arg, eps_arg, which_arg;
  long r_arg = 1, k_arg = 1, d_arg = 1, degree_arg = 2, digits_arg = 12;
  uint64_t seed_arg = 42;
  long kcap_arg = 512;
  bool include_table = false;

  int rc = 0;
  auto run = [&](auto fn) {
    return [&, fn]() {
      try {
        rc = fn();
      } catch (const wg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 1;
      } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        rc = 2;
      } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        rc = 3;
      }
    };
  };

  // ---- mat ----
  auto* mat = app.add_subcommand("mat", "exact integer matrix operations");
  mat->require_subcommand(1);
  {
    auto* c = mat->add_subcommand("det", "determinant (Bareiss)");
    c->add_option("--matrix", matrix_arg, "matrix file or inline JSON")->required();
    c->callback(run([&]() {
      wg::IntMatrix m = wg::io::matrix_from_json(parse_json_arg(matrix_arg));
      emit(json{{"det", wg::io::int_to_json(wg::det(m))}}, json_mode);
      return 0;
    }));
  }
  {
    auto* c = mat->add_subcommand("charpoly", "characteristic polynomial");
    c->add_option("--matrix", matrix_arg)->required();
    c->callback(run([&]() {
      wg::IntMatrix m = wg::io::matrix_from_json(parse_json_arg(matrix_arg));
      emit(wg::io::poly_to_json(wg::char_poly(m)), json_mode);
      return 0;
    }));
  }
  {
    auto* c = mat->add_subcommand("snf", "Smith normal form");
    c->add_option("--matrix", matrix_arg)->required();
    c->callback(run([&]() {
      wg::IntMatrix m = wg::io::matrix_from_json(parse_json_arg(matrix_arg));
      wg::SmithNormalForm s = wg::smith_normal_form(m);
      emit(json{{"d", wg::io::matrix_to_json(s.d)},
                {"u", wg::io::matrix_to_json(s.u)},
                {"v", wg::io::matrix_to_json(s.v)}},
           json_mode);
      return 0;
    }));
  }
  {
    auto* c = mat->add_subcommand("hnf", "column Hermite normal form");
    c->add_option("--matrix", matrix_arg)->required();
    c->callback(run([&]() {
      wg::IntMatrix m = wg::io::matrix_from_json(parse_json_arg(matrix_arg));
      wg::HermiteNormalForm h = wg::hermite_normal_form(m);
      emit(json{{"h", wg::io::matrix_to_json(h.h)}, {"u", wg::io::matrix_to_json(h.u)}}, json_mode);
      return 0;
    }));
  }
  {
    auto* c = mat->add_subcommand("cyclo", "cyclotomic polynomial");
    c->add_option("--d", d_arg, "order")->required();
    c->callback(run([&]() {
      emit(wg::io::poly_to_json(wg::cyclotomic_poly(d_arg)), json_mode);
      return 0;
    }));
  }
  {
    auto* c = mat->add_subcommand("roots-of-unity", "are all eigenvalues roots of unity");
    c->add_option("--matrix", matrix_arg)->required();
    c->callback(run([&]() {
      wg::IntMatrix m = wg::io::matrix_from_json(parse_json_arg(matrix_arg));
      wg::RootsOfUnityResult res = wg::roots_of_unity_eigenvalues(m);
      json orders = json::array();
      for (long o : res.orders) orders.push_back(o);
      emit(json{{"all", res.all}, {"orders", orders}, {"residual", wg::io::poly_to_json(res.residual)}},
           json_mode);
      return 0;
    }));
  }

  // ---- numth ----
  auto* numth = app.add_subcommand("numth", "effective number theory");
  numth->require_subcommand(1);
  {
    auto* c = numth->add_subcommand("epsilon", "the annulus constant epsilon(n) with certificate");
    c->add_option("--degree", degree_arg, "degree n in 1..3")->required();
    c->add_option("--digits", digits_arg, "rounding digits (default 12)");
    c->callback(run([&]() {
      wg::numth::EpsilonCertificate cert = wg::numth::epsilon(static_cast<int>(degree_arg),
                                                              static_cast<int>(digits_arg));
      json bounds = json::array();
      for (const auto& b : cert.coeff_bounds) bounds.push_back(wg::io::int_to_json(b));
      emit(json{{"n", cert.n},
                {"epsilon", wg::decimal_string(cert.epsilon, static_cast<int>(digits_arg))},
                {"epsilon_rational", cert.epsilon.get_str()},
                {"witness_poly", wg::io::poly_to_json(cert.witness_poly)},
                {"coeff_bounds", bounds},
                {"poly_count", cert.poly_count},
                {"off_circle_count", cert.off_circle_count}},
           json_mode);
      return 0;
    }));
  }
  {
    auto* c = numth->add_subcommand("kmax", "largest k admitting a k-th root of M up to conjugacy");
    c->add_option("--matrix", matrix_arg)->required();
    c->add_option("--epsilon", eps_arg, "rational or decimal; defaults to epsilon(n)");
    c->callback(run([&]() {
      wg::IntMatrix m = wg::io::matrix_from_json(parse_json_arg(matrix_arg));
      Rat eps = eps_arg.empty() ? wg::numth::epsilon(m.rows()).epsilon : parse_rational(eps_arg);
      Int km = wg::numth::k_max(m, eps);
      emit(json{{"k_max", wg::io::int_to_json(km)}, {"epsilon_used", eps.get_str()}}, json_mode);
      return 0;
    }));
  }

  // ---- heis ----
  auto* heis_cmd = app.add_subcommand("heis", "discrete Heisenberg group H(r)");
  heis_cmd->require_subcommand(1);
  {
    auto* c = heis_cmd->add_subcommand("mul", "product of two elements");
    c->add_option("--r", r_arg)->required();
    c->add_option("--x", x_arg)->required();
    c->add_option("--y", y_arg)->required();
    c->callback(run([&]() {
      wg::HeisElement x = wg::io::heis_from_json(parse_json_arg(x_arg));
      wg::HeisElement y = wg::io::heis_from_json(parse_json_arg(y_arg));
      emit(wg::io::heis_to_json(wg::heis::mul(Int(r_arg), x, y)), json_mode);
      return 0;
    }));
  }
  {
    auto* c = heis_cmd->add_subcommand("inv", "inverse");
    c->add_option("--r", r_arg)->required();
    c->add_option("--x", x_arg)->required();
    c->callback(run([&]() {
      emit(wg::io::heis_to_json(wg::heis::inv(Int(r_arg), wg::io::heis_from_json(parse_json_arg(x_arg)))),
           json_mode);
      return 0;
    }));
  }
  {
    auto* c = heis_cmd->add_subcommand("pow", "power");
    c->add_option("--r", r_arg)->required();
    c->add_option("--x", x_arg)->required();
    c->add_option("--k", k_arg)->required();
    c->callback(run([&]() {
      emit(wg::io::heis_to_json(
               wg::heis::pow(Int(r_arg), wg::io::heis_from_json(parse_json_arg(x_arg)), Int(k_arg))),
           json_mode);
      return 0;
    }));
  }
  {
    auto* c = heis_cmd->add_subcommand("word", "evaluate a generator word");
    c->add_option("--r", r_arg)->required();
    c->add_option("--word", word_arg, "e.g. 'd1^2 d2 d3^-1'")->required();
    c->callback(run([&]() {
      emit(wg::io::heis_to_json(wg::heis::eval_word(Int(r_arg), word_arg)), json_mode);
      return 0;
    }));
  }
  {
    auto* c = heis_cmd->add_subcommand("subgroup-index", "index of finite-index subgroup data");
    c->add_option("--data", data_arg)->required();
    c->callback(run([&]() {
      auto s = wg::heis::canonicalize(wg::io::subgroup_from_json(parse_json_arg(data_arg)));
      emit(json{{"index", wg::io::int_to_json(wg::heis::index(s))}}, json_mode);
      return 0;
    }));
  }
  {
    auto* c = heis_cmd->add_subcommand("subgroup-type", "the subgroup is H(r'); print r'");
    c->add_option("--data", data_arg)->required();
    c->callback(run([&]() {
      auto s = wg::heis::canonicalize(wg::io::subgroup_from_json(parse_json_arg(data_arg)));
      emit(json{{"r_prime", wg::io::int_to_json(wg::heis::iso_type(s))}}, json_mode);
      return 0;
    }));
  }
  {
    auto* c = heis_cmd->add_subcommand("is-normal", "normality in H(r)");
    c->add_option("--data", data_arg)->required();
    c->callback(run([&]() {
      auto s = wg::heis::canonicalize(wg::io::subgroup_from_json(parse_json_arg(data_arg)));
      emit(json{{"normal", wg::heis::is_normal(s)}}, json_mode);
      return 0;
    }));
  }
  {
    auto* c = heis_cmd->add_subcommand("contains", "membership with witness");
    c->add_option("--data", data_arg)->required();
    c->add_option("--x", x_arg)->required();
    c->callback(run([&]() {
      auto s = wg::heis::canonicalize(wg::io::subgroup_from_json(parse_json_arg(data_arg)));
      wg::HeisElement x = wg::io::heis_from_json(parse_json_arg(x_arg));
      auto w = wg::heis::contains(s, x);
      if (w)
        emit(json{{"contains", true},
                  {"m", wg::io::int_to_json(w->m)},
                  {"n", wg::io::int_to_json(w->n)},
                  {"j", wg::io::int_to_json(w->j)}},
             json_mode);
      else
        emit(json{{"contains", false}}, json_mode);
      return 0;
    }));
  }

  // ---- wang ----
  auto* wang_cmd = app.add_subcommand("wang", "ambient group shapes");
  wang_cmd->require_subcommand(1);
  {
    auto* c = wang_cmd->add_subcommand("validate", "check descriptor invariants");
    c->add_option("file", file_arg, "descriptor file or inline JSON")->required();
    c->callback(run([&]() {
      wg::WangDescriptor d = wg::io::descriptor_from_json(parse_json_arg(file_arg));
      wg::Validation v = wg::validate(d);
      json diags = json::array();
      for (auto diag : v.diagnostics) diags.push_back(wg::diag_name(diag));
      emit(json{{"ok", v.ok}, {"diagnostics", diags}}, json_mode);
      return v.ok ? 0 : 1;
    }));
  }
  {
    auto* c = wang_cmd->add_subcommand("classify", "Inoue / Kodaira type of the group");
    c->add_option("file", file_arg)->required();
    c->callback(run([&]() {
      wg::WangDescriptor d = wg::io::descriptor_from_json(parse_json_arg(file_arg));
      emit(json(wg::wang_type_name(wg::classify_type(d))), json_mode);
      return 0;
    }));
  }
  {
    auto* c = wang_cmd->add_subcommand("center", "center of the group");
    c->add_option("file", file_arg)->required();
    c->callback(run([&]() {
      wg::WangDescriptor d = wg::io::descriptor_from_json(parse_json_arg(file_arg));
      wg::CenterDescription z = wg::center(d);
      json gens = json::array();
      for (const auto& g : z.generators) gens.push_back(wg::io::element_to_json(g));
      emit(json{{"trivial", z.trivial}, {"generators", gens}}, json_mode);
      return 0;
    }));
  }
  {
    auto* c = wang_cmd->add_subcommand("commutator-lattice", "[Gamma,Gamma] inside Gamma_0");
    c->add_option("file", file_arg)->required();
    c->callback(run([&]() {
      wg::WangDescriptor d = wg::io::descriptor_from_json(parse_json_arg(file_arg));
      wg::CommutatorLattice cl = wg::commutator_lattice(d);
      json out;
      out["index"] = wg::io::int_to_json(cl.index);
      if (cl.basis) out["basis"] = wg::io::matrix_to_json(*cl.basis);
      if (cl.snf_diagonal) out["snf"] = wg::io::matrix_to_json(*cl.snf_diagonal);
      if (cl.sub) out["subgroup"] = wg::io::subgroup_to_json(*cl.sub);
      emit(out, json_mode);
      return 0;
    }));
  }
  {
    auto* c = wang_cmd->add_subcommand("psi-check", "the non-characteristic witness automorphism");
    c->add_option("--r", r_arg)->required();
    c->callback(run([&]() {
      wg::PsiCheck pc = wg::psi_check(Int(r_arg));
      emit(json{{"relations_preserved", pc.relations_preserved},
                {"moves_gamma0", pc.moves_gamma0},
                {"witness", wg::io::element_to_json(pc.witness)}},
           json_mode);
      return pc.relations_preserved && pc.moves_gamma0 ? 0 : 1;
    }));
  }

  // ---- quot ----
  auto* quot_cmd = app.add_subcommand("quot", "finite quotients and index bounds");
  quot_cmd->require_subcommand(1);
  {
    auto* c = quot_cmd->add_subcommand("build", "build the quotient multiplication table");
    c->add_option("spec", file_arg, "normal subgroup spec file or inline JSON")->required();
    c->add_flag("--table", include_table, "include the full multiplication table");
    c->add_option("--order-cap", kcap_arg, "maximum quotient order (default 512)");
    c->callback(run([&]() {
      wg::quot::NormalSubgroupSpec spec = wg::io::spec_from_json(parse_json_arg(file_arg));
      wg::quot::BuiltQuotient bq = wg::quot::build_quotient(spec, static_cast<int>(kcap_arg));
      json out{{"order", bq.group.order},
               {"k", wg::io::int_to_json(bq.k)},
               {"gamma0_index", wg::io::int_to_json(bq.gamma0_index)},
               {"labels", bq.group.labels}};
      if (include_table) {
        json rows = json::array();
        for (int i = 0; i < bq.group.order; ++i) {
          json row = json::array();
          for (int j = 0; j < bq.group.order; ++j) row.push_back(bq.group.mul(i, j));
          rows.push_back(row);
        }
        out["table"] = rows;
      }
      emit(out, json_mode);
      return 0;
    }));
  }
  {
    auto* c = quot_cmd->add_subcommand("bound-check", "verify the normal abelian index bound");
    c->add_option("spec", file_arg,
                  "normal subgroup spec, or bare Heisenberg subgroup data for a pure H(r) quotient")
        ->required();
    c->add_option("--order-cap", kcap_arg);
    c->callback(run([&]() {
      json j = parse_json_arg(file_arg);
      if (!j.contains("ambient")) {
        // pure Heisenberg quotient H(r)/S: check both the gcd(a1,b1)
        // bound and r1, plus the arithmetic chain between them
        wg::quot::HeisBoundCheck hc =
            wg::quot::verify_heis_bounds(wg::io::subgroup_from_json(j), static_cast<int>(kcap_arg));
        emit(json{{"order", wg::io::int_to_json(hc.order)},
                  {"observed", wg::io::int_to_json(hc.observed)},
                  {"gcd_bound", wg::io::int_to_json(hc.gcd_bound)},
                  {"r1_bound", wg::io::int_to_json(hc.r1_bound)},
                  {"chain_ok", hc.chain_ok},
                  {"pass", hc.pass}},
             json_mode);
        return hc.pass ? 0 : 1;
      }
      wg::quot::NormalSubgroupSpec spec = wg::io::spec_from_json(j);
      wg::quot::BoundCheck bc = wg::quot::verify_bound(spec, static_cast<int>(kcap_arg));
      json bounds = json::array();
      for (const auto& [name, b] : bc.bounds)
        bounds.push_back(json{{"name", name}, {"value", wg::io::int_to_json(b)}});
      emit(json{{"order", wg::io::int_to_json(bc.order)},
                {"observed", wg::io::int_to_json(bc.observed)},
                {"bounds", bounds},
                {"pass", bc.pass}},
           json_mode);
      return bc.pass ? 0 : 1;
    }));
  }
  {
    auto* c = quot_cmd->add_subcommand("decompose", "extract (Gamma_0', k, delta') from generators");
    c->add_option("--ambient", file_arg)->required();
    c->add_option("--gens", gens_arg, "JSON array of elements")->required();
    c->callback(run([&]() {
      wg::WangDescriptor ambient = wg::io::descriptor_from_json(parse_json_arg(file_arg));
      json arr = parse_json_arg(gens_arg);
      std::vector<wg::WangElement> gens;
      for (const auto& j : arr) gens.push_back(wg::io::element_from_json(j, ambient.shape));
      wg::quot::NormalSubgroupSpec spec = wg::quot::decompose_normal_subgroup(ambient, gens);
      emit(wg::io::spec_to_json(spec), json_mode);
      return 0;
    }));
  }
  {
    auto* c = quot_cmd->add_subcommand("grid", "line-per-instance verification grids");
    static std::string family;
    static long rmax = 3, cmax = 4, index_cap = 512, order_cap = 256;
    c->add_option("--family", family, "heis|kodaira|sm|spm")->required();
    c->add_option("--r-max", rmax, "largest ambient r (heis family)");
    c->add_option("--coeff-max", cmax, "largest |a_i|, |b_i| (heis family)");
    c->add_option("--index-cap", index_cap, "largest subgroup index (heis family)");
    c->add_option("--order-cap", order_cap, "largest quotient order (kodaira family)");
    c->callback(run([&]() {
      wg::verify::Options opt;
      opt.heis_r_max = rmax;
      opt.heis_coeff_max = cmax;
      opt.heis_index_cap = index_cap;
      opt.kodaira_order_cap = order_cap;
      bool any_fail = false;
      wg::verify::InstanceSink sink = [&](const std::string& line, bool pass) {
        std::cout << line << "\n";
        if (!pass) any_fail = true;
      };
      wg::verify::RunReport rep;
      if (family == "heis")
        rep = wg::verify::heis_subgroup_grid(opt, &sink);
      else if (family == "kodaira")
        rep = wg::verify::kodaira_pair_grid(opt, &sink);
      else if (family == "sm" || family == "spm")
        rep = wg::verify::semidirect_structure_grid(opt, &sink);
      else
        throw wg::Error(wg::Errc::BAD_INPUT, "unknown family '" + family + "'");
      std::cerr << rep.passed << " checks passed, " << rep.failed << " failed\n";
      return (rep.ok() && !any_fail) ? 0 : 1;
    }));
  }

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");
  {
    verify_cmd->add_option("suite", which_arg, "all|heis|quot|numth")->required();
    verify_cmd->add_option("--seed", seed_arg, "random seed (default 42)");
    verify_cmd->callback(run([&]() {
      wg::verify::Options opt;
      opt.seed = seed_arg;
      wg::verify::RunReport rep = wg::verify::run_named(which_arg, opt);
      return print_report(rep, json_mode);
    }));
  }

  // allow global flags like --json after any subcommand
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (auto* s : a->get_subcommands([](const CLI::App*) { return true; })) enable_fallthrough(s);
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return rc;
}
