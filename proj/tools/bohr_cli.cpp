// Command-line surface over the library: frequency-system files, equivalence
// verdicts, Kronecker searches, near-translation pipelines and the zeta demos.
// Machine output is JSON; a plain-text summary goes to stdout. Exit codes:
// 0 success/affirmative, 1 negative verdict, 2 usage or data error.

#include "bohr/config.hpp"
#include "bohr/equivalence.hpp"
#include "bohr/highprec.hpp"
#include "bohr/json_io.hpp"
#include "bohr/kronecker.hpp"
#include "bohr/translate.hpp"
#include "bohr/zeta.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <random>

using namespace bohr;
using bohr::io::json;

namespace {

RunConfig g_config;

void emit(const std::string& path, json j) {
  j["config"] = io::config_to_json(g_config);
  if (!path.empty()) {
    io::write_json_file(path, j);
    std::cout << "report written to " << path << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

Strip parse_strip(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--strip expects \"sigma0,sigma1\"");
  return Strip::make(std::stod(text.substr(0, comma)),
                     std::stod(text.substr(comma + 1)));
}

Vec parse_vec(const std::string& text) {
  std::vector<double> vals;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    vals.push_back(std::stod(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  Vec v(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
  return v;
}

SearchMethod parse_method(const std::string& name) {
  if (name == "grid") return SearchMethod::grid;
  if (name == "lattice") return SearchMethod::lattice;
  throw CLI::ValidationError("--method must be grid or lattice");
}

TranslateOptions translate_options(const std::string& method, bool adaptive) {
  g_config.validate();
  TranslateOptions opts;
  opts.method = parse_method(method);
  opts.adaptive_eps1 = adaptive;
  opts.threads = g_config.threads;
  opts.grid = g_config.grid;
  if (g_config.precision == "high") {
    opts.grid.sigma_points *= 2;
    opts.grid.t_points *= 2;
  }
  opts.equiv_tol = g_config.equiv_tol;
  opts.grid_window = g_config.grid_window;
  opts.lattice_bound = g_config.lattice_bound;
  return opts;
}

// Randomized spot checks of the library invariants; seeded for reproducibility.
int run_property_suite(long cases, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
  };
  long failures = 0;
  for (long i = 0; i < cases; ++i) {
    int m = 1 + static_cast<int>(g() % 4);
    int n = 1 + static_cast<int>(g() % 8);
    std::vector<Generator> gens;
    for (int k = 0; k < m; ++k)
      gens.push_back(Generator::make("g" + std::to_string(k), uniform(0.3, 2.5), "prop"));
    std::vector<QVec> freqs;
    while (static_cast<int>(freqs.size()) < n) {
      QVec r(m);
      bool nz = false;
      for (int k = 0; k < m; ++k) {
        long e = static_cast<long>(g() % 9) - 4;
        r[k] = Rational(e);
        nz = nz || e != 0;
      }
      if (!nz) continue;
      bool dup = false;
      for (const QVec& prev : freqs) dup = dup || prev == r;
      if (!dup) freqs.push_back(std::move(r));
    }
    auto sys = std::make_shared<FrequencySystem>(FrequencySystem::define(
        std::move(gens), std::move(freqs), Independence{true, "prop run"}));
    CVec coeffs(n);
    for (int j = 0; j < n; ++j)
      coeffs[j] = std::polar(uniform(0.1, 2.0), uniform(0.0, num::two_pi));
    ExpSum f(sys, coeffs, Kind::complex_variable);
    Vec x(m);
    for (int k = 0; k < m; ++k) x[k] = uniform(0.0, num::two_pi);
    ExpSum h = class_point(f, x);
    EquivalenceVerdict v = bohr_equivalent(f, h, g_config.equiv_tol);
    if (!v.equivalent || witness_residual(f, h, v.witness->x) > 1e-9) ++failures;
    ExpSum ft = translate(f, uniform(-5.0, 5.0));
    if (!moduli_equal(f, ft, 1e-9)) ++failures;
  }
  std::cout << "property suite: " << cases << " cases, " << failures
            << " failures (seed " << seed << ")\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bohr equivalence of exponential sums: exact frequency systems, "
               "phase-congruence equivalence, Kronecker translation numbers, "
               "and Riemann zeta demos"};
  app.require_subcommand(1);
  app.fallthrough();

  if (const char* env = std::getenv("BOHRAP_PRECISION")) g_config.precision = env;
  app.add_option("--precision", g_config.precision, "standard|high (env BOHRAP_PRECISION)");
  app.add_option("--threads", g_config.threads, "worker threads for window scans");
  app.add_option("--tol", g_config.equiv_tol, "equivalence tolerance");
  app.add_option("--seed", g_config.seed, "seed recorded in every report");

  int exit_code = 0;

  // system ------------------------------------------------------------
  auto* sys_cmd = app.add_subcommand("system", "build/inspect frequency systems");
  sys_cmd->require_subcommand(1);
  auto* sys_build = sys_cmd->add_subcommand("build", "prime-log system for n <= N");
  long build_primes = 0;
  std::string sys_out = "system.json";
  sys_build->add_option("--primes", build_primes, "largest n")->required();
  sys_build->add_option("--out", sys_out, "output file");
  sys_build->callback([&] {
    IntegralSystem s = prime_log_system(build_primes);
    emit(sys_out, io::system_to_json(s));
  });

  auto* sys_inspect = sys_cmd->add_subcommand("inspect", "summarize a system file");
  std::string inspect_in;
  sys_inspect->add_option("--in", inspect_in, "system JSON")->required();
  sys_inspect->callback([&] {
    FrequencySystem s = io::system_from_json(io::read_json_file(inspect_in));
    std::cout << "generators: " << s.generator_count()
              << ", frequencies: " << s.frequency_count()
              << ", integral: " << (s.is_integral() ? "yes" : "no")
              << ", independence declared: "
              << (s.independence().declared ? "yes" : "no") << " ("
              << s.independence().justification << ")\n";
    for (Eigen::Index k = 0; k < s.generator_count(); ++k)
      std::cout << "  " << s.generator(k).label << " = " << s.generator(k).value
                << "  [" << s.generator(k).provenance << "]\n";
  });

  auto* sys_integral = sys_cmd->add_subcommand("to-integral", "rescale to an integral basis");
  std::string integral_in, integral_out = "integral.json";
  sys_integral->add_option("--in", integral_in)->required();
  sys_integral->add_option("--out", integral_out);
  sys_integral->callback([&] {
    FrequencySystem s = io::system_from_json(io::read_json_file(integral_in));
    IntegralSystem t = to_integral(s);
    emit(integral_out, io::system_to_json(t));
  });

  // expsum --------------------------------------------------------------
  auto* exp_cmd = app.add_subcommand("expsum", "write exponential-sum files");
  exp_cmd->require_subcommand(1);
  auto* exp_demo = exp_cmd->add_subcommand("demo", "standing demo pairs");
  std::string pair_name = "sqrt2";
  std::string out1 = "f1.json", out2 = "f2.json";
  long pair_n = 10;
  exp_demo->add_option("--pair", pair_name, "sqrt2 | zeta-liouville");
  exp_demo->add_option("--N", pair_n, "prefix length for zeta-liouville");
  exp_demo->add_option("--out1", out1);
  exp_demo->add_option("--out2", out2);
  exp_demo->callback([&] {
    if (pair_name == "sqrt2") {
      std::vector<Generator> gens{Generator::make("one", 1.0, "unit"),
                                  Generator::make("sqrt2", std::sqrt(2.0), "square root of 2")};
      QVec r1(2), r2(2);
      r1 << Rational(1), Rational(0);
      r2 << Rational(0), Rational(1);
      auto sys = std::make_shared<FrequencySystem>(FrequencySystem::define(
          std::move(gens), {r1, r2}, Independence{true, "sqrt2 is irrational"}));
      CVec a(2), b(2);
      a << Complex(1, 0), Complex(1, 0);
      b << Complex(-1, 0), Complex(-1, 0);
      io::write_json_file(out1, io::expsum_to_json(ExpSum(sys, a, Kind::real_variable)));
      io::write_json_file(out2, io::expsum_to_json(ExpSum(sys, b, Kind::real_variable)));
    } else if (pair_name == "zeta-liouville") {
      LiouvilleSieve sieve(std::max<long>(pair_n, 2));
      auto sys = std::make_shared<FrequencySystem>(prime_log_system(pair_n).system);
      io::write_json_file(out1, io::expsum_to_json(zeta_prefix(pair_n, sys)));
      io::write_json_file(out2, io::expsum_to_json(liouville_prefix(pair_n, sieve, sys)));
    } else {
      throw CLI::ValidationError("--pair must be sqrt2 or zeta-liouville");
    }
    std::cout << "wrote " << out1 << " and " << out2 << "\n";
  });

  // equiv ---------------------------------------------------------------
  auto* equiv_cmd = app.add_subcommand("equiv", "decide equivalence of two sums");
  std::string eq_f1, eq_f2, eq_mode = "bohr", eq_out;
  equiv_cmd->add_option("--f1", eq_f1)->required();
  equiv_cmd->add_option("--f2", eq_f2)->required();
  equiv_cmd->add_option("--mode", eq_mode, "star|bohr");
  equiv_cmd->add_option("--out", eq_out, "verdict JSON path");
  equiv_cmd->callback([&] {
    ExpSum f1 = io::expsum_from_json(io::read_json_file(eq_f1));
    ExpSum f2 = io::expsum_from_json(io::read_json_file(eq_f2));
    json verdict;
    bool equivalent = false;
    if (eq_mode == "bohr") {
      EquivalenceVerdict v = bohr_equivalent(f1, f2, g_config.equiv_tol);
      equivalent = v.equivalent;
      verdict = io::verdict_to_json(v);
    } else if (eq_mode == "star") {
      StarReport rep = star_equivalent(f1, f2, g_config.equiv_tol);
      equivalent = rep.all_equivalent;
      verdict = io::star_to_json(rep);
    } else {
      throw CLI::ValidationError("--mode must be star or bohr");
    }
    emit(eq_out, verdict);
    std::cout << (equivalent ? "equivalent" : "not equivalent") << "\n";
    exit_code = equivalent ? 0 : 1;
  });

  // kronecker -------------------------------------------------------------
  auto* kron_cmd = app.add_subcommand("kronecker", "simultaneous approximation");
  kron_cmd->require_subcommand(1);
  auto* kron_solve = kron_cmd->add_subcommand("solve", "find tau with |tau c_k - e_k - d_k| < eps1");
  long kron_dim = 0;
  std::string kron_c, kron_d, kron_method = "grid", kron_out;
  double kron_eps1 = 0.0, kron_t1 = 1000.0, kron_step = 0.0, kron_bound = 1.0e6;
  kron_solve->add_option("--dim", kron_dim, "dimension (checked against --c)")->required();
  kron_solve->add_option("--c", kron_c, "comma-separated coefficients")->required();
  kron_solve->add_option("--targets", kron_d, "comma-separated targets")->required();
  kron_solve->add_option("--eps1", kron_eps1)->required();
  kron_solve->add_option("--method", kron_method, "grid|lattice");
  kron_solve->add_option("--window", kron_t1, "grid window end (start 0)");
  kron_solve->add_option("--step", kron_step, "grid step (default: step rule)");
  kron_solve->add_option("--bound", kron_bound, "lattice search bound");
  kron_solve->add_option("--out", kron_out, "report JSON path");
  kron_solve->callback([&] {
    Vec c = parse_vec(kron_c), d = parse_vec(kron_d);
    if (c.size() != kron_dim || d.size() != kron_dim)
      throw CLI::ValidationError("--dim does not match the vector lengths");
    KroneckerInstance inst = KroneckerInstance::make(c, d, kron_eps1);
    json rep;
    rep["instance"] = io::instance_to_json(inst);
    json cands = json::array();
    if (parse_method(kron_method) == SearchMethod::grid) {
      GridParams gp;
      gp.step = kron_step;
      gp.threads = g_config.threads;
      for (const TauCandidate& cand : solve_grid(inst, 0.0, kron_t1, gp))
        cands.push_back(io::tau_to_json(cand));
    } else {
      LatticeSearch search = solve_lattice(inst, kron_bound);
      for (const TauCandidate& cand : search.candidates)
        cands.push_back(io::tau_to_json(cand));
      if (!search.note.empty()) rep["note"] = search.note;
      rep["bound_reached"] = search.bound_reached;
    }
    rep["candidates"] = cands;
    emit(kron_out, rep);
    if (cands.empty()) {
      std::cout << "no tau found within budget (existence is guaranteed; "
                   "enlarge the window)\n";
      exit_code = 1;
    } else {
      std::cout << "tau = " << cands.front()["tau"] << "\n";
    }
  });

  // translate -------------------------------------------------------------
  auto* tr_cmd = app.add_subcommand("translate", "near-translation pipeline");
  tr_cmd->require_subcommand(1);
  auto* tr_find = tr_cmd->add_subcommand("find", "tau with |f1(s+i tau) - f2(s)| < eps");
  std::string tr_f1, tr_f2, tr_strip = "0,0", tr_method = "grid", tr_report;
  double tr_eps = 0.1;
  bool tr_adaptive = false;
  tr_find->add_option("--f1", tr_f1)->required();
  tr_find->add_option("--f2", tr_f2)->required();
  tr_find->add_option("--strip", tr_strip, "sigma0,sigma1 (ignored for real kind)");
  tr_find->add_option("--eps", tr_eps)->required();
  tr_find->add_option("--method", tr_method, "grid|lattice");
  tr_find->add_flag("--adaptive", tr_adaptive, "adaptive per-generator tolerances");
  tr_find->add_option("--report", tr_report, "report JSON path");
  tr_find->callback([&] {
    ExpSum f1 = io::expsum_from_json(io::read_json_file(tr_f1));
    ExpSum f2 = io::expsum_from_json(io::read_json_file(tr_f2));
    TranslateResult res = find_translate(f1, f2, parse_strip(tr_strip), tr_eps,
                                         translate_options(tr_method, tr_adaptive));
    emit(tr_report, io::translate_to_json(res));
    if (res.status == "ok" && res.passed) {
      std::cout << "tau = " << res.tau->tau << ", certified bound "
                << res.coeff_bound << " < eps = " << tr_eps << "\n";
    } else {
      std::cout << "failed: " << res.status << " " << res.note << "\n";
      exit_code = 1;
    }
  });

  // zeta --------------------------------------------------------------------
  auto* zeta_cmd = app.add_subcommand("zeta", "Riemann zeta instantiation");
  zeta_cmd->require_subcommand(1);

  auto* zinf = zeta_cmd->add_subcommand("inf", "infimum ratio and Euler product");
  double zi_sigma0 = 2.0;
  long zi_primes = 100000;
  std::string zi_out;
  zinf->add_option("--sigma0", zi_sigma0)->required();
  zinf->add_option("--primes", zi_primes, "Euler product cutoff");
  zinf->add_option("--out", zi_out);
  zinf->callback([&] {
    InfimumReport rep = infimum_report(zi_sigma0, zi_primes);
    emit(zi_out, io::infimum_to_json(rep));
    std::cout << "inf |zeta| on Re s >= " << zi_sigma0 << " equals zeta(2s0)/zeta(s0) = "
              << rep.ratio_value << "\n  partial Euler product (p <= " << zi_primes
              << "): " << rep.euler_partial << "\n  |ratio - partial| <= "
              << rep.tail_bound << "\n";
  });

  auto* zdemo = zeta_cmd->add_subcommand("demo-liouville",
                                         "translate the zeta prefix onto the liouville prefix");
  long zd_n = 100;
  std::string zd_strip = "1.8,2.5", zd_method = "lattice", zd_out;
  double zd_eps = 0.05;
  zdemo->add_option("--N", zd_n)->required();
  zdemo->add_option("--strip", zd_strip);
  zdemo->add_option("--eps", zd_eps);
  zdemo->add_option("--method", zd_method, "grid|lattice");
  zdemo->add_option("--out", zd_out);
  zdemo->callback([&] {
    LiouvilleTranslateReport rep = approximate_liouville_by_translate(
        zd_n, parse_strip(zd_strip), zd_eps, translate_options(zd_method, true));
    emit(zd_out, io::liouville_translate_to_json(rep));
    if (rep.translate.status == "ok" && rep.translate.passed) {
      std::cout << "tau = " << rep.translate.tau->tau << "\n  polynomial bound "
                << rep.translate.coeff_bound << " < " << zd_eps
                << "\n  full-zeta bracket " << rep.full_bracket << "\n";
    } else {
      std::cout << "failed: " << rep.translate.status << "\n";
      exit_code = 1;
    }
  });

  auto* zsmall = zeta_cmd->add_subcommand("small", "directed search for small |zeta|");
  double zs_sigma0 = 1.5, zs_budget = 3.0e7;
  long zs_primes = 13;
  std::string zs_method = "lattice", zs_out;
  zsmall->add_option("--sigma0", zs_sigma0)->required();
  zsmall->add_option("--primes", zs_primes, "align primes <= P near phase pi");
  zsmall->add_option("--budget", zs_budget, "t search budget");
  zsmall->add_option("--method", zs_method, "grid|lattice");
  zsmall->add_option("--out", zs_out);
  zsmall->callback([&] {
    SmallZetaReport rep =
        small_zeta_search(zs_sigma0, zs_budget, zs_primes, parse_method(zs_method));
    emit(zs_out, io::small_zeta_to_json(rep));
    std::cout << "strict floor zeta(2s0)/zeta(s0) = " << rep.floor_value << "\n";
    for (const SmallZetaSample& s : rep.evaluations)
      std::cout << "  t = " << s.t << "  |zeta| = " << s.abs_zeta << " (+- " << s.err
                << ")\n";
    if (rep.evaluations.empty()) {
      std::cout << "no aligned t within budget\n";
      exit_code = 1;
    }
  });

  auto* zprefix = zeta_cmd->add_subcommand("prefix", "write a Dirichlet-polynomial prefix");
  long zp_n = 10;
  std::string zp_kind = "zeta", zp_out = "prefix.json";
  zprefix->add_option("--N", zp_n)->required();
  zprefix->add_option("--kind", zp_kind, "zeta|liouville");
  zprefix->add_option("--out", zp_out);
  zprefix->callback([&] {
    auto sys = std::make_shared<FrequencySystem>(prime_log_system(zp_n).system);
    if (zp_kind == "zeta") {
      io::write_json_file(zp_out, io::expsum_to_json(zeta_prefix(zp_n, sys)));
    } else if (zp_kind == "liouville") {
      LiouvilleSieve sieve(zp_n);
      io::write_json_file(zp_out, io::expsum_to_json(liouville_prefix(zp_n, sieve, sys)));
    } else {
      throw CLI::ValidationError("--kind must be zeta or liouville");
    }
    std::cout << "wrote " << zp_out << "\n";
  });

  // prop ----------------------------------------------------------------------
  auto* prop_cmd = app.add_subcommand("prop", "seeded randomized property run");
  long prop_cases = 200;
  prop_cmd->add_option("--cases", prop_cases);
  prop_cmd->callback([&] { exit_code = run_property_suite(prop_cases, g_config.seed); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
