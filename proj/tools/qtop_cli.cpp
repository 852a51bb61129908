// qtop: command-line front end.  Parses JSON inputs, dispatches to the
// library and prints deterministic JSON reports.
//
// Exit codes: 0 ok, 1 usage, 2 bad input, 3 mathematical precondition
// violated, 4 check failure.

#include <CLI11.hpp>

#include "qtop/compare.hpp"

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace qtop;

namespace {

std::string cplx_json(const std::complex<double> &z) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "{\"re\":%.12g,\"im\":%.12g}", z.real(),
                z.imag());
  return buf;
}

std::string num_json(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string ivec_json(const IVec &v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + v[i].get_str();
  return out + "]";
}

std::string svec_json(const std::vector<int> &v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + std::to_string(v[i]);
  return out + "]";
}

void emit(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f)
    throw std::invalid_argument("cannot open output file: " + path);
  f << text << "\n";
}

Plumbing chain(std::vector<long> fr) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < (int)fr.size(); ++i)
    e.push_back({i, i + 1});
  return make_plumbing(fr, e);
}

// default graph corpus for checks run without --graph
std::vector<Plumbing> corpus() {
  return {chain({-5}), chain({-2, -3}), chain({-2, -5}),
          chain({-2, -2, -3})};
}

OmegaClass generic_omega(const RootParams &par, const Plumbing &p) {
  long m = par.family() == RootFamily::ZeroMod8 ? 1 : 2;
  for (const auto &alpha : enumerate_omegas(p.B, m)) {
    OmegaClass w{m, alpha};
    bool nonzero = false;
    for (const Rat &a : alpha)
      if (a != 0)
        nonzero = true;
    if (nonzero && omega_admissible(par, p, w))
      return w;
  }
  throw std::domain_error("no admissible nonzero omega for this graph");
}

struct CheckOutcome {
  std::string json;
  bool pass = false;
};

CheckOutcome check_identities(long max_n) {
  bool ok = true;
  for (long n = 1; n <= max_n && ok; ++n)
    for (long k = 1; k <= n && ok; ++k) {
      Laurent lhs = super_binomial(n + 1, k);
      long e = n - k + 1;
      Laurent a = Laurent::mono((e % 2) ? Int(-1) : Int(1), e) *
                  super_binomial(n, k - 1);
      Laurent b = Laurent::mono(1, -k) * super_binomial(n, k);
      Laurent c = Laurent::mono(1, k - n - 1) * super_binomial(n, k - 1);
      Laurent d =
          Laurent::mono((k % 2) ? Int(-1) : Int(1), k) * super_binomial(n, k);
      ok = lhs == a + b && lhs == c + d;
    }
  for (long n = 1; n <= max_n && ok; ++n) {
    Laurent s;
    for (long k = 0; k <= n; ++k) {
      long tri = (k * (k + 1) / 2) % 2;
      s += Laurent::mono(tri ? Int(-1) : Int(1), k * (n - 1)) *
           super_binomial(n, k);
    }
    ok = s.is_zero();
  }
  CheckOutcome out;
  out.pass = ok;
  out.json = "{\"check\":\"identities\",\"max_n\":" + std::to_string(max_n) +
             ",\"pass\":" + (ok ? "true" : "false") + "}";
  return out;
}

CheckOutcome check_gauss(long r, long max_dim, long max_entry,
                         double tolerance) {
  long checked = 0;
  bool ok = true;
  auto run = [&](const IMat &B, const IVec &p) {
    if (det_int(B) == 0 || abs(det_int(B)) > 8)
      return;
    ++checked;
    if (!gauss_reciprocity_check(B, p, r, tolerance).pass)
      ok = false;
  };
  for (long a = -max_entry; a <= max_entry; ++a)
    for (long pa = -max_entry; pa <= max_entry; ++pa)
      run({{Int(a)}}, {Int(pa)});
  if (max_dim >= 2)
    for (long a = -max_entry; a <= max_entry; ++a)
      for (long b = -max_entry; b <= max_entry; ++b)
        for (long d = -max_entry; d <= max_entry; ++d)
          run({{Int(a), Int(b)}, {Int(b), Int(d)}}, {Int(1), Int(0)});
  CheckOutcome out;
  out.pass = ok && checked > 0;
  out.json = "{\"check\":\"gauss\",\"r\":" + std::to_string(r) +
             ",\"matrices\":" + std::to_string(checked) +
             ",\"pass\":" + (out.pass ? "true" : "false") + "}";
  return out;
}

CheckOutcome check_sltwo_osp(const std::vector<Plumbing> &graphs,
                             const Rat &order) {
  bool ok = true;
  long sectors = 0;
  for (const auto &g : graphs)
    for (const auto &[b, s] : spinc_reps(g.B)) {
      ++sectors;
      if (!sltwo_osp_relation_check(g, b, s, order).pass)
        ok = false;
    }
  CheckOutcome out;
  out.pass = ok;
  out.json = "{\"check\":\"sltwo-osp\",\"order\":\"" + rat_str(order) +
             "\",\"sectors\":" + std::to_string(sectors) +
             ",\"pass\":" + (ok ? "true" : "false") + "}";
  return out;
}

CheckOutcome check_factorization(const RootParams &par,
                                 const std::vector<Plumbing> &graphs,
                                 double tolerance) {
  bool ok = true;
  long cases = 0;
  for (const auto &g : graphs) {
    OmegaClass w = generic_omega(par, g);
    ++cases;
    if (!factorization_check(par, g, w, tolerance).pass)
      ok = false;
  }
  CheckOutcome out;
  out.pass = ok;
  out.json = "{\"check\":\"factorization\",\"r\":" + std::to_string(par.r) +
             ",\"cases\":" + std::to_string(cases) +
             ",\"pass\":" + (ok ? "true" : "false") + "}";
  return out;
}

CheckOutcome check_cgp_vs_zhat(const RootParams &par,
                               const std::vector<Plumbing> &graphs,
                               const std::string &strategy, double tolerance) {
  bool ok = true;
  std::string reports = "[";
  bool first = true;
  for (const auto &g : graphs) {
    OmegaClass w = generic_omega(par, g);
    CgpZhatReport rep = cgp_vs_zhat_check(par, g, w, strategy, tolerance);
    if (!rep.pass)
      ok = false;
    if (!first)
      reports += ",";
    first = false;
    reports += cgp_zhat_report_json(rep);
  }
  reports += "]";
  CheckOutcome out;
  out.pass = ok;
  out.json = "{\"check\":\"cgp-vs-zhat\",\"r\":" + std::to_string(par.r) +
             ",\"reports\":" + reports +
             ",\"pass\":" + (ok ? "true" : "false") + "}";
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"quantum-topology toolkit: q-series, surgery invariants and "
               "verification checks for plumbed 3-manifolds"};
  app.require_subcommand(1);

  long r = 0;
  std::string graph_path, omega_path, output_path;
  std::string order_str = "20", algebra = "osp", strategy = "abel";
  std::string backend = "float";
  double tolerance = -1; // negative: use the per-check default
  long threads = 0;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--output", output_path, "output file (default stdout)");
    cmd->add_option("--threads", threads, "cap OpenMP worker count");
  };

  CLI::App *zhat = app.add_subcommand("zhat", "q-series of a plumbed manifold");
  zhat->add_option("--graph", graph_path, "plumbing graph JSON")->required();
  zhat->add_option("--order", order_str, "truncation order (rational)");
  zhat->add_option("--algebra", algebra, "sl2 or osp")
      ->check(CLI::IsMember({"sl2", "osp"}));
  add_common(zhat);

  CLI::App *cgp = app.add_subcommand("cgp", "surgery invariant");
  cgp->add_option("--r", r, "order of the root of unity")->required();
  cgp->add_option("--graph", graph_path, "plumbing graph JSON")->required();
  cgp->add_option("--omega", omega_path, "omega class JSON")->required();
  cgp->add_option("--backend", backend, "exact or float")
      ->check(CLI::IsMember({"exact", "float"}));
  add_common(cgp);

  long genus = 1;
  std::string lambda_str;
  CLI::App *verl = app.add_subcommand("verlinde", "mapping-torus partition "
                                                  "function values and limits");
  verl->add_option("--r", r, "order of the root of unity")->required();
  verl->add_option("--genus", genus, "genus of the surface");
  verl->add_option("--lambda", lambda_str,
                   "holonomy parameter (rational); omit for the limit report");
  verl->add_option("--tolerance", tolerance, "limit-report tolerance");
  add_common(verl);

  CLI::App *repdata = app.add_subcommand("repdata", "root-of-unity data");
  repdata->add_option("--r", r, "order of the root of unity")->required();
  add_common(repdata);

  std::string check_name;
  long max_n = 20, max_dim = 2, max_entry = 2;
  CLI::App *check = app.add_subcommand("check", "run a named verification");
  check
      ->add_option("name", check_name,
                   "identities, gauss, sltwo-osp, cgp-vs-zhat, factorization "
                   "or all")
      ->required()
      ->check(CLI::IsMember({"identities", "gauss", "sltwo-osp", "cgp-vs-zhat",
                             "factorization", "all"}));
  check->add_option("--r", r, "order of the root of unity");
  check->add_option("--graph", graph_path, "plumbing graph JSON");
  check->add_option("--order", order_str, "series truncation order");
  check->add_option("--strategy", strategy, "abel or gauss")
      ->check(CLI::IsMember({"abel", "gauss"}));
  check->add_option("--tolerance", tolerance, "override the check tolerance");
  check->add_option("--max-n", max_n, "identity range");
  check->add_option("--max-dim", max_dim, "gauss matrix size cap");
  check->add_option("--max-entry", max_entry, "gauss entry range");
  add_common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 1;
  }

#ifdef _OPENMP
  if (threads > 0)
    omp_set_num_threads((int)threads);
#endif

  try {
    if (zhat->parsed()) {
      Plumbing p = plumbing_from_file(graph_path);
      Rat order = parse_rat(order_str);
      Algebra alg = algebra == "sl2" ? Algebra::Sl2 : Algebra::Osp;
      std::string out = "{\"algebra\":\"" + algebra + "\",\"series\":[";
      bool first = true;
      for (const auto &[b, s] : spinc_reps(p.B)) {
        if (!first)
          out += ",";
        first = false;
        out += "{\"b\":" + ivec_json(b) + ",\"s\":" + svec_json(s) +
               ",\"series\":" + qseries_to_json(zhat_series(alg, p, b, s, order)) +
               "}";
      }
      out += "]}";
      emit(output_path, out);
      return 0;
    }

    if (cgp->parsed()) {
      RootParams par = root_params(r);
      Plumbing p = plumbing_from_file(graph_path);
      OmegaClass w = omega_from_file(omega_path);
      std::string out = "{\"r\":" + std::to_string(r) + ",\"invariant\":";
      if (backend == "exact") {
        Cyclo exact = cgp_invariant_exact(par, cgp_context(par, w), p, w);
        out += cplx_json(exact.eval()) + ",\"exact\":\"" + exact.str() + "\"";
      } else {
        out += cplx_json(cgp_invariant(par, p, w));
      }
      out += "}";
      emit(output_path, out);
      return 0;
    }

    if (verl->parsed()) {
      RootParams par = root_params(r);
      std::string out;
      if (!lambda_str.empty()) {
        auto v = verlinde_value(par, genus, {}, parse_rat(lambda_str));
        out = "{\"r\":" + std::to_string(r) +
              ",\"genus\":" + std::to_string(genus) +
              ",\"value\":" + cplx_json(v) + "}";
      } else {
        VerlindeLimitReport rep = verlinde_limit_check(
            par, genus, tolerance > 0 ? tolerance : 1e-6);
        out = "{\"r\":" + std::to_string(r) +
              ",\"genus\":" + std::to_string(genus) +
              ",\"euler\":" + num_json(rep.euler_numeric) +
              ",\"euler_closed\":\"" + rat_str(rep.euler_closed) +
              "\",\"dim\":" + num_json(rep.dim_numeric) +
              ",\"dim_closed\":\"" + rat_str(rep.dim_closed) +
              "\",\"pass\":" + (rep.pass ? "true" : "false") + "}";
        emit(output_path, out);
        return rep.pass ? 0 : 4;
      }
      emit(output_path, out);
      return 0;
    }

    if (repdata->parsed()) {
      RootParams par = root_params(r);
      std::string out = "{\"r\":" + std::to_string(par.r) +
                        ",\"rbar\":" + std::to_string(par.rbar);
      if (par.family() != RootFamily::FourMod8) {
        CtxPtr ctx = ribbon_context(par);
        ModularData md = modular_data(par, ctx);
        out += ",\"zeta\":" + std::to_string(md.zeta) +
               ",\"delta_plus\":" + cplx_json(md.delta_plus.eval()) +
               ",\"delta_minus\":" + cplx_json(md.delta_minus.eval()) +
               ",\"index_set\":[";
        for (size_t i = 0; i < md.kirby_index_set.size(); ++i)
          out += (i ? "," : "") + std::to_string(md.kirby_index_set[i]);
        out += "]";
      } else {
        out += ",\"ribbon\":false";
      }
      out += "}";
      emit(output_path, out);
      return 0;
    }

    // check
    std::vector<Plumbing> graphs;
    if (!graph_path.empty())
      graphs = {plumbing_from_file(graph_path)};
    else
      graphs = corpus();

    std::vector<CheckOutcome> results;
    auto want = [&](const char *n) {
      return check_name == n || check_name == "all";
    };
    if (want("identities"))
      results.push_back(check_identities(max_n));
    if (want("gauss")) // reciprocity needs even r; fall back for `all`
      results.push_back(check_gauss(r % 2 == 0 && r > 0 ? r : 8, max_dim,
                                    max_entry,
                                    tolerance > 0 ? tolerance : 1e-10));
    if (want("sltwo-osp"))
      results.push_back(check_sltwo_osp(graphs, parse_rat(order_str)));
    if (want("factorization"))
      results.push_back(check_factorization(root_params(r ? r : 7), graphs,
                                            tolerance > 0 ? tolerance : 1e-9));
    if (want("cgp-vs-zhat"))
      results.push_back(check_cgp_vs_zhat(root_params(r ? r : 7), graphs,
                                          strategy,
                                          tolerance > 0 ? tolerance : 1e-5));

    bool all_pass = true;
    std::string out = "{\"results\":[";
    for (size_t i = 0; i < results.size(); ++i) {
      out += (i ? "," : "") + results[i].json;
      all_pass = all_pass && results[i].pass;
    }
    out += std::string("],\"pass\":") + (all_pass ? "true" : "false") + "}";
    emit(output_path, out);
    return all_pass ? 0 : 4;
  } catch (const std::invalid_argument &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error &e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const std::runtime_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
