#include "bohr/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace bohr::io {

namespace {

std::string bigfloat_to_string(const BigFloat& x) {
  mp_exp_t exp;
  std::string mant = x.get_str(exp, 10, 50);
  if (mant.empty()) return "0";
  std::string sign;
  if (mant[0] == '-') {
    sign = "-";
    mant = mant.substr(1);
  }
  return sign + "0." + mant + "e" + std::to_string(exp);
}

BigFloat bigfloat_from_string(const std::string& s) {
  BigFloat x(0, 192);
  if (mpf_set_str(x.get_mpf_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("malformed high-precision value: " + s);
  return x;
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json ivec_to_json(const IVec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i].get_str());
  return a;
}

}  // namespace

json system_to_json(const FrequencySystem& sys) {
  json j;
  j["generators"] = json::array();
  for (const Generator& g : sys.generators()) {
    json jg;
    jg["label"] = g.label;
    jg["value"] = g.value;
    jg["provenance"] = g.provenance;
    jg["value_hp"] = bigfloat_to_string(g.value_hp);
    j["generators"].push_back(jg);
  }
  j["freqs"] = json::array();
  for (Eigen::Index f = 0; f < sys.frequency_count(); ++f) {
    json row = json::array();
    for (Eigen::Index k = 0; k < sys.generator_count(); ++k)
      row.push_back(format_rational(sys.coeff(f)[k]));
    j["freqs"].push_back(row);
  }
  j["independence"] = {{"declared", sys.independence().declared},
                       {"justification", sys.independence().justification}};
  j["allow_zero_frequency"] = sys.allow_zero_frequency();
  return j;
}

json system_to_json(const IntegralSystem& sys) {
  json j = system_to_json(sys.system);
  json scale = json::array();
  for (const Integer& q : sys.scale_record) scale.push_back(q.get_str());
  j["scale_record"] = scale;
  return j;
}

FrequencySystem system_from_json(const json& j) {
  std::vector<Generator> gens;
  for (const json& jg : j.at("generators")) {
    std::string label = jg.at("label").get<std::string>();
    double value = jg.at("value").get<double>();
    std::string prov = jg.value("provenance", std::string{});
    if (jg.contains("value_hp")) {
      gens.push_back(Generator::make_hp(
          label, bigfloat_from_string(jg.at("value_hp").get<std::string>()), prov));
    } else {
      gens.push_back(Generator::make(label, value, prov));
    }
  }
  std::vector<QVec> freqs;
  for (const json& row : j.at("freqs")) {
    QVec r(static_cast<Eigen::Index>(row.size()));
    Eigen::Index k = 0;
    for (const json& cell : row) r[k++] = parse_rational(cell.get<std::string>());
    freqs.push_back(std::move(r));
  }
  Independence indep;
  if (j.contains("independence")) {
    indep.declared = j["independence"].value("declared", false);
    indep.justification = j["independence"].value("justification", std::string{});
  }
  bool allow_zero = j.value("allow_zero_frequency", false);
  return FrequencySystem::define(std::move(gens), std::move(freqs), indep,
                                 allow_zero);
}

json expsum_to_json(const ExpSum& f) {
  json j = system_to_json(f.system());
  json coeffs = json::array();
  for (Eigen::Index i = 0; i < f.size(); ++i)
    coeffs.push_back({{"re", f.coeff(i).real()}, {"im", f.coeff(i).imag()}});
  j["coeffs"] = coeffs;
  j["kind"] = f.kind() == Kind::real_variable ? "real" : "complex";
  return j;
}

ExpSum expsum_from_json(const json& j) {
  auto sys = std::make_shared<FrequencySystem>(system_from_json(j));
  const json& jc = j.at("coeffs");
  CVec coeffs(static_cast<Eigen::Index>(jc.size()));
  Eigen::Index i = 0;
  for (const json& c : jc)
    coeffs[i++] = Complex(c.at("re").get<double>(), c.at("im").get<double>());
  std::string kind = j.at("kind").get<std::string>();
  if (kind != "real" && kind != "complex")
    throw std::invalid_argument("kind must be \"real\" or \"complex\"");
  return ExpSum(sys, std::move(coeffs),
                kind == "real" ? Kind::real_variable : Kind::complex_variable);
}

json verdict_to_json(const EquivalenceVerdict& v) {
  json j;
  j["equivalent"] = v.equivalent;
  if (v.witness) j["witness"] = vec_to_json(v.witness->x);
  if (v.obstruction) j["obstruction"] = ivec_to_json(*v.obstruction);
  j["tol"] = v.tol;
  j["mode"] = v.mode;
  if (!v.detail.empty()) j["detail"] = v.detail;
  j["witness_residual"] = v.witness_residual;
  if (v.nonintegral_caveat)
    j["caveat"] = "system is not integral: the per-prefix (star) verdict is authoritative";
  return j;
}

json star_to_json(const StarReport& rep) {
  json j;
  j["equivalent"] = rep.all_equivalent;
  j["mode"] = "star";
  json pf = json::array();
  for (const EquivalenceVerdict& v : rep.prefixes) pf.push_back(verdict_to_json(v));
  j["prefixes"] = pf;
  return j;
}

json tau_to_json(const TauCandidate& c) {
  json j;
  j["tau"] = c.tau;
  j["tau_exact"] = format_rational(c.tau_exact);
  j["residuals"] = vec_to_json(c.residuals);
  j["method"] = c.method;
  return j;
}

json instance_to_json(const KroneckerInstance& inst) {
  json j;
  j["c"] = vec_to_json(inst.c);
  j["d"] = vec_to_json(inst.d);
  j["eps1"] = inst.eps1;
  j["eps"] = vec_to_json(inst.eps);
  return j;
}

json supnorm_to_json(const SupNormReport& rep) {
  json j;
  j["grid_max"] = rep.grid_max;
  j["coeff_bound"] = rep.coeff_bound;
  j["grid"] = {{"sigma_points", rep.grid.sigma_points},
               {"t_points", rep.grid.t_points},
               {"t0", rep.grid.t0},
               {"t1", rep.grid.t1}};
  return j;
}

json budget_to_json(const TranslateBudget& b) {
  json j;
  j["q"] = b.q.get_str();
  j["a"] = b.a;
  j["r"] = b.r;
  j["E"] = b.E;
  j["m"] = b.m;
  j["n"] = b.n;
  j["eps1"] = b.eps1;
  return j;
}

json translate_to_json(const TranslateResult& r) {
  json j;
  j["status"] = r.status;
  j["passed"] = r.passed;
  j["eps"] = r.eps;
  j["budget"] = budget_to_json(r.budget);
  if (r.tau) j["tau"] = tau_to_json(*r.tau);
  if (r.status == "ok") {
    j["verification"] = supnorm_to_json(r.verification);
    j["coeff_bound"] = r.coeff_bound;
  }
  if (r.equivalence) j["equivalence"] = verdict_to_json(*r.equivalence);
  if (r.instance) j["instance"] = instance_to_json(*r.instance);
  if (!r.note.empty()) j["note"] = r.note;
  if (r.bf_order >= 0) {
    j["bf_order"] = r.bf_order;
    j["bf_term_f"] = r.bf_term_f;
    j["bf_term_target"] = r.bf_term_target;
    j["three_term_bound"] = r.three_term_bound;
  }
  return j;
}

json infimum_to_json(const InfimumReport& r) {
  json j;
  j["sigma0"] = r.sigma0;
  j["ratio_value"] = r.ratio_value;
  j["ratio_err"] = r.ratio_err;
  j["euler_partial"] = r.euler_partial;
  j["P"] = r.P;
  j["tail_bound"] = r.tail_bound;
  return j;
}

json liouville_translate_to_json(const LiouvilleTranslateReport& r) {
  json j;
  j["N"] = r.N;
  j["translate"] = translate_to_json(r.translate);
  j["tail_zeta"] = r.tail_zeta;
  j["tail_liouville"] = r.tail_liouville;
  j["full_bracket"] = r.full_bracket;
  j["note"] =
      "the bracket certifies sup over the strip of |zeta(s+i tau) - "
      "zeta_lambda(s)| <= eps + both truncation tails; limit statements "
      "are not reproducible at this scale and are not claimed";
  return j;
}

json small_zeta_to_json(const SmallZetaReport& r) {
  json j;
  j["sigma0"] = r.sigma0;
  j["prime_cutoff"] = r.prime_cutoff;
  j["floor_value"] = r.floor_value;
  j["floor_err"] = r.floor_err;
  json evals = json::array();
  for (const SmallZetaSample& s : r.evaluations) {
    evals.push_back({{"t", s.t},
                     {"t_exact", format_rational(s.t_exact)},
                     {"abs_zeta", s.abs_zeta},
                     {"err", s.err}});
  }
  j["running_minima"] = evals;
  j["budget_exhausted"] = r.budget_exhausted;
  if (!r.note.empty()) j["note"] = r.note;
  j["disclaimer"] =
      "finite search: minima are exhibited, no convergence rate is claimed; "
      "every evaluation respects the strict floor zeta(2s0)/zeta(s0)";
  return j;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["precision"] = c.precision;
  j["equiv_tol"] = c.equiv_tol;
  j["grid_window"] = c.grid_window;
  j["lattice_bound"] = c.lattice_bound;
  j["grid"] = {{"sigma_points", c.grid.sigma_points},
               {"t_points", c.grid.t_points},
               {"t0", c.grid.t0},
               {"t1", c.grid.t1}};
  j["threads"] = c.threads;
  j["seed"] = c.seed;
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace bohr::io
