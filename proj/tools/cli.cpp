#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "randig/analysis.hpp"
#include "randig/error.hpp"
#include "randig/json_io.hpp"
#include "randig/models.hpp"
#include "randig/parallel.hpp"
#include "randig/rnnd.hpp"

namespace randig::cli {

namespace {

const std::vector<std::string> kOracles = {"tv",       "invariance", "derd-ard", "derd3-vard",
                                           "g-moments", "spectral",   "constancy", "posdep",
                                           "n2",       "rnnd-stats"};

/// Everything a run depends on. Unset optionals fall back to per-command
/// defaults, and the resolved values are echoed into every report.
struct RunConfig {
  std::string command;
  std::string oracle;
  Json model;
  Json model2;
  Json kernel;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<double> tol;
  std::optional<double> pe;
  std::optional<double> pd;
  std::optional<double> p1;
  std::optional<double> p2;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<int> grid;
  std::optional<bool> expect_fail;
  std::optional<bool> arc_freq;
  std::optional<std::string> format;
  std::string out;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
void take(const Json& j, const char* key, std::optional<T>& slot) {
  if (j.contains(key) && !j.at(key).is_null()) slot = j.at(key).get<T>();
}

/// A report's `config` block, or a bare object of flag values.
void merge_config_json(const Json& source, RunConfig& cfg) {
  const Json& j = source.contains("config") ? source.at("config") : source;
  if (!j.is_object()) throw UsageError("--config must be a JSON object");
  try {
    if (j.contains("command")) cfg.command = j.at("command").get<std::string>();
    if (j.contains("oracle")) cfg.oracle = j.at("oracle").get<std::string>();
    if (j.contains("model")) cfg.model = j.at("model");
    if (j.contains("model2")) cfg.model2 = j.at("model2");
    if (j.contains("kernel")) cfg.kernel = j.at("kernel");
    take(j, "seed", cfg.seed);
    take(j, "samples", cfg.samples);
    take(j, "tol", cfg.tol);
    take(j, "pe", cfg.pe);
    take(j, "pd", cfg.pd);
    take(j, "p1", cfg.p1);
    take(j, "p2", cfg.p2);
    take(j, "n", cfg.n);
    take(j, "m", cfg.m);
    take(j, "grid", cfg.grid);
    take(j, "expect_fail", cfg.expect_fail);
    take(j, "arc_freq", cfg.arc_freq);
    take(j, "format", cfg.format);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad --config value: ") + e.what());
  }
}

template <typename T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag --") + flag);
  return *v;
}

const Json& need_json(const Json& j, const char* flag) {
  if (j.is_null()) throw UsageError(std::string("missing required flag --") + flag);
  return j;
}

/// Resolved configuration as embedded in reports; replaying it through
/// --config reproduces the run.
Json config_json(const RunConfig& c) {
  Json j{{"command", c.command}};
  if (!c.oracle.empty()) j["oracle"] = c.oracle;
  if (!c.model.is_null()) j["model"] = c.model;
  if (!c.model2.is_null()) j["model2"] = c.model2;
  if (!c.kernel.is_null()) j["kernel"] = c.kernel;
  auto put = [&](const char* key, const auto& v) {
    if (v) j[key] = *v;
  };
  put("seed", c.seed);
  put("samples", c.samples);
  put("tol", c.tol);
  put("pe", c.pe);
  put("pd", c.pd);
  put("p1", c.p1);
  put("p2", c.p2);
  put("n", c.n);
  put("m", c.m);
  put("grid", c.grid);
  put("expect_fail", c.expect_fail);
  put("arc_freq", c.arc_freq);
  put("format", c.format);
  return j;
}

ModelSpec resolve_model(Json& slot, const char* flag) {
  ModelSpec model = model_from_json(need_json(slot, flag));
  slot = to_json(model);
  return model;
}

KernelSpec resolve_kernel(Json& slot) {
  KernelSpec k = kernel_from_json(need_json(slot, "kernel"));
  slot = to_json(k);
  return k;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + cfg.out + "'");
  f << text;
}

std::string state_text(const Pmf& pmf, std::uint64_t mask) {
  return pmf.kind() == PmfKind::digraph ? to_string(Digraph::from_mask(pmf.n(), mask))
                                        : to_string(Graph::from_mask(pmf.n(), mask));
}

// ---- pmf ----

int cmd_pmf(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelSpec model = resolve_model(cfg.model, "model");
  if (!cfg.format) cfg.format = "csv";
  if (*cfg.format != "csv" && *cfg.format != "json") throw UsageError("--format must be csv or json");
  if (!has_exact_pmf(model)) {
    throw Unsupported("no exact PMF for this model (" + family_name(model) +
                      ", n = " + std::to_string(vertex_count(model)) +
                      "); exact mode needs n(n-1) <= 20, finite kernels, and rnnd only at n = 3, k = 1");
  }
  const Pmf pmf = exact_pmf(model);

  if (*cfg.format == "csv") {
    emit(cfg, pmf_to_csv(pmf), out);
  } else {
    if (!cfg.seed) cfg.seed = 1;
    Json j = pmf_to_json(pmf);
    j["config"] = config_json(cfg);
    emit(cfg, j.dump(2) + "\n", out);
  }

  err << "support " << pmf.support_size() << " of " << pmf.state_count() << " states, entropy "
      << pmf.entropy_bits() << " bits, total " << format_probability(pmf.total()) << "\n";
  if (pmf.kind() == PmfKind::digraph && pmf.n() <= 5) {
    const auto canon = canonical_mask_table(pmf.n());
    std::map<std::uint64_t, std::pair<double, std::uint64_t>> orbits;  // canonical -> (mass, size)
    for (std::uint64_t m = 0; m < pmf.state_count(); ++m) {
      auto& o = orbits[canon[m]];
      o.first += pmf.mass(m);
      ++o.second;
    }
    std::vector<std::pair<std::uint64_t, std::pair<double, std::uint64_t>>> ranked(orbits.begin(), orbits.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second.first > b.second.first; });
    err << "top orbits (canonical, size, mass):\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(5, ranked.size()); ++i) {
      err << "  " << state_text(pmf, ranked[i].first) << "  " << ranked[i].second.second << "  "
          << format_probability(ranked[i].second.first) << "\n";
    }
  }
  return kPass;
}

// ---- sample ----

int cmd_sample(RunConfig& cfg, std::ostream& out) {
  const ModelSpec model = resolve_model(cfg.model, "model");
  if (!cfg.seed) cfg.seed = 1;
  if (!cfg.samples) cfg.samples = 10;
  if (!cfg.format) cfg.format = "csv";
  if (!cfg.arc_freq) cfg.arc_freq = false;
  if (*cfg.format != "csv" && *cfg.format != "json") throw UsageError("--format must be csv or json");
  const std::uint64_t total = *cfg.samples;
  const std::uint64_t seed = *cfg.seed;
  const int n = vertex_count(model);
  const std::size_t slots = arc_slot_count(n);

  constexpr unsigned kChunks = 64;
  std::vector<std::vector<Digraph>> parts(kChunks);
  parallel_chunks(total, kChunks, [&](unsigned c, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) parts[c].push_back(sample(model, replicate_seed(seed, t)));
  });

  std::vector<std::uint64_t> arc_count(slots, 0);
  Json rows = Json::array();
  std::string csv = "index,digraph,n_a,n_e,n_s,n_as\n";
  std::uint64_t index = 0;
  for (const auto& part : parts) {
    for (const auto& d : part) {
      for (std::size_t s = 0; s < slots; ++s) {
        if (d.bits().test(s)) ++arc_count[s];
      }
      if (*cfg.arc_freq) {
        ++index;
        continue;
      }
      const ArcCounts c = arc_counts(d);
      if (*cfg.format == "csv") {
        std::ostringstream line;
        line << index << ',' << to_string(d) << ',' << c.n_a << ',' << c.n_e << ',' << c.n_s << ','
             << c.n_as << '\n';
        csv += line.str();
      } else {
        rows.push_back(Json{{"index", index},
                            {"digraph", to_string(d)},
                            {"n_a", c.n_a},
                            {"n_e", c.n_e},
                            {"n_s", c.n_s},
                            {"n_as", c.n_as}});
      }
      ++index;
    }
  }

  Json freq = Json::array();
  std::string freq_csv = "tail,head,count,frequency\n";
  for (std::size_t s = 0; s < slots; ++s) {
    const Arc a = slot_arc(n, s);
    const double f = static_cast<double>(arc_count[s]) / static_cast<double>(total);
    freq.push_back(Json{{"tail", a.tail}, {"head", a.head}, {"count", arc_count[s]}, {"frequency", f}});
    freq_csv += std::to_string(a.tail) + "," + std::to_string(a.head) + "," + std::to_string(arc_count[s]) +
                "," + format_probability(f) + "\n";
  }

  if (*cfg.format == "csv") {
    emit(cfg, *cfg.arc_freq ? freq_csv : csv, out);
  } else {
    Json j{{"schema_version", kSchemaVersion}, {"config", config_json(cfg)}};
    if (*cfg.arc_freq) {
      j["arc_frequency"] = freq;
    } else {
      j["samples"] = rows;
    }
    emit(cfg, j.dump(2) + "\n", out);
  }
  return kPass;
}

// ---- oracle ----

struct OracleResult {
  Json inputs = Json::object();
  Json computed = Json::object();
  Json expected = Json::object();
  Json tolerance;
  bool pass = false;
};

Json estimate_json(const EstimateWithError& e) { return to_json(e); }

OracleResult oracle_tv(RunConfig& cfg) {
  const ModelSpec a = resolve_model(cfg.model, "model");
  const ModelSpec b = resolve_model(cfg.model2, "model2");
  if (!cfg.tol) cfg.tol = kExactTol;
  const double tv = total_variation(exact_pmf(a), exact_pmf(b));
  OracleResult r;
  r.inputs = {{"model", cfg.model}, {"model2", cfg.model2}};
  r.computed = {{"tv", tv}};
  r.expected = {{"tv", 0.0}};
  r.tolerance = *cfg.tol;
  r.pass = tv <= *cfg.tol;
  return r;
}

Pmf as_digraph_pmf(const Pmf& p) {
  if (p.kind() == PmfKind::digraph) return p;
  // A graph is the symmetric digraph with the same adjacency.
  std::vector<Pmf::Entry> entries;
  const int n = p.n();
  p.for_each_nonzero([&](std::uint64_t m, double v) {
    std::uint64_t d = 0;
    for (const auto& e : Graph::from_mask(n, m).edges()) {
      d |= std::uint64_t{1} << arc_slot(n, e.u, e.v);
      d |= std::uint64_t{1} << arc_slot(n, e.v, e.u);
    }
    entries.emplace_back(d, v);
  });
  return Pmf::from_entries(n, PmfKind::digraph, std::move(entries));
}

OracleResult oracle_invariance(RunConfig& cfg) {
  const ModelSpec model = resolve_model(cfg.model, "model");
  if (!cfg.tol) cfg.tol = kExactTol;
  const Pmf pmf = as_digraph_pmf(exact_pmf(model));
  const InvarianceReport rep = invariance_check(pmf, *cfg.tol);
  Json orbit = Json::array();
  for (const auto& [m, p] : rep.worst_orbit) {
    orbit.push_back(Json{{"digraph", to_string(Digraph::from_mask(pmf.n(), m))}, {"probability", p}});
  }
  OracleResult r;
  r.inputs = {{"model", cfg.model}};
  r.computed = {{"worst_spread", rep.worst_spread},
                {"orbit_count", rep.orbit_count},
                {"worst_orbit", orbit}};
  r.expected = {{"worst_spread", 0.0}};
  r.tolerance = *cfg.tol;
  r.pass = rep.invariant;
  return r;
}

OracleResult oracle_derd_ard(RunConfig& cfg) {
  const double p_e = need(cfg.pe, "pe");
  if (!cfg.n) cfg.n = 4;
  if (!cfg.tol) cfg.tol = kExactTol;
  const DerdArdParams prm = derd_ard_params(p_e);
  OracleResult r;
  r.inputs = {{"p_e", p_e}, {"n", *cfg.n}};
  r.computed = {{"p_d", prm.p_d}, {"p_a", prm.p_a}, {"degenerate", prm.degenerate}};
  r.expected = {{"tv", 0.0}};
  r.tolerance = *cfg.tol;
  if (prm.degenerate) {
    r.computed["note"] = "p_e = 1 forces p_d = 1, outside [1/2,1)";
    r.pass = false;
    return r;
  }
  const double tv = total_variation(exact_pmf(DerdModel{*cfg.n, p_e, prm.p_d}),
                                    exact_pmf(ArdModel{*cfg.n, prm.p_a}));
  r.computed["tv"] = tv;
  r.pass = tv <= *cfg.tol;
  return r;
}

OracleResult oracle_derd3_vard(RunConfig& cfg) {
  const double p_e = need(cfg.pe, "pe");
  const double p_d = need(cfg.pd, "pd");
  if (!cfg.n) cfg.n = 3;
  if (!cfg.samples) cfg.samples = 1'000'000;
  if (!cfg.seed) cfg.seed = 1;
  const ModelSpec vard = VardModel{*cfg.n, derd3_vard_kernel(p_e, p_d, *cfg.n)};
  const Pmf exact = exact_pmf(DerdModel{*cfg.n, p_e, p_d});
  const EmpiricalComparison cmp = compare_to_exact(vard, exact, *cfg.samples, *cfg.seed);

  double worst_z = 0.0;
  const MassComparison* worst = &cmp.masses.front();
  for (const auto& c : cmp.masses) {
    const double z = c.std_error > 0 ? std::abs(c.empirical - c.exact) / c.std_error
                                     : (c.empirical == c.exact ? 0.0 : INFINITY);
    if (z > worst_z) {
      worst_z = z;
      worst = &c;
    }
  }
  OracleResult r;
  r.inputs = {{"p_e", p_e}, {"p_d", p_d}, {"n", *cfg.n}, {"kernel", to_json(std::get<VardModel>(vard).kernel)}};
  r.computed = {{"tv", cmp.tv},
                {"failures", cmp.failures},
                {"states", cmp.masses.size()},
                {"worst", Json{{"digraph", to_string(Digraph::from_mask(*cfg.n, worst->mask))},
                               {"exact", worst->exact},
                               {"empirical", worst->empirical},
                               {"z", worst_z}}}};
  r.expected = {{"failures", 0}};
  r.tolerance = {{"sigma", kSigmaBand}};
  r.pass = cmp.pass();
  return r;
}

OracleResult oracle_g_moments(RunConfig& cfg) {
  const double p_d = need(cfg.pd, "pd");
  if (!cfg.samples) cfg.samples = 1'000'000;
  if (!cfg.seed) cfg.seed = 1;
  if (!cfg.grid) cfg.grid = 1000;
  const auto checks = g_moment_checks(p_d, *cfg.seed, *cfg.samples, *cfg.grid);
  OracleResult r;
  r.inputs = {{"p_d", p_d}};
  r.computed = Json::array();
  r.expected = Json::array();
  r.tolerance = Json::array();
  r.pass = true;
  for (const auto& c : checks) {
    r.computed.push_back(Json{{"name", c.name},
                              {"value", c.computed},
                              {"std_error", c.std_error},
                              {"method", c.monte_carlo ? "monte_carlo" : "grid"},
                              {"points", c.n_points},
                              {"pass", c.pass}});
    r.expected.push_back(c.expected);
    r.tolerance.push_back(c.monte_carlo ? Json{{"sigma", kSigmaBand}} : Json{{"abs", 1e-3}});
    r.pass = r.pass && c.pass;
  }
  return r;
}

OracleResult oracle_spectral(RunConfig& cfg) {
  const KernelSpec k = resolve_kernel(cfg.kernel);
  if (!k.is_finite()) throw UsageError("spectral oracle needs a finite kernel");
  if (!cfg.tol) cfg.tol = 1e-10;
  const SpectralReport s = spectral_cycle_moment(k.finite());
  OracleResult r;
  r.inputs = {{"kernel", cfg.kernel}};
  r.computed = {{"eigenvalues", s.eigenvalues},
                {"lambda4_sum", s.lambda4_sum},
                {"cycle_moment", s.cycle_moment},
                {"abs_diff", s.abs_diff}};
  r.expected = {{"abs_diff", 0.0}};
  r.tolerance = *cfg.tol;
  r.pass = s.abs_diff <= *cfg.tol;
  return r;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

OracleResult oracle_constancy(RunConfig& cfg) {
  const KernelSpec k = resolve_kernel(cfg.kernel);
  if (!cfg.tol) cfg.tol = kExactTol;
  if (!cfg.grid) cfg.grid = 64;
  const ConstancyReport c = kernel_product_constancy(k, *cfg.tol, *cfg.grid);
  OracleResult r;
  r.inputs = {{"kernel", cfg.kernel}};
  r.computed = {{"phi_product", optional_json(c.phi_product)},
                {"complement_product", optional_json(c.complement_product)},
                {"sum", optional_json(c.sum)},
                {"mean_phi_product", c.mean_phi_product},
                {"mean_complement_product", c.mean_complement_product},
                {"mean_sum", c.mean_sum},
                {"pairs_checked", c.pairs_checked},
                {"evidence_only", c.discretized}};
  r.expected = {{"phi_product", "constant"}, {"complement_product", "constant"}};
  r.tolerance = *cfg.tol;
  r.pass = c.phi_product.has_value() && c.complement_product.has_value();
  return r;
}

OracleResult oracle_posdep(RunConfig& cfg) {
  const ModelSpec model = resolve_model(cfg.model, "model");
  if (!cfg.m) cfg.m = 2;
  if (!cfg.samples) cfg.samples = 100'000;
  if (!cfg.seed) cfg.seed = 1;
  const PositiveDependenceReport p = positive_dependence_check(model, *cfg.m, *cfg.samples, *cfg.seed);
  OracleResult r;
  r.inputs = {{"model", cfg.model}, {"m", *cfg.m}};
  r.computed = {{"lhs", estimate_json(p.lhs)},
                {"arc", estimate_json(p.arc)},
                {"rhs", p.rhs},
                {"holds", p.holds},
                {"equality", p.equality}};
  r.expected = {{"relation", "lhs >= rhs"}};
  r.tolerance = p.tolerance;
  r.pass = p.holds;
  return r;
}

OracleResult oracle_n2(RunConfig& cfg) {
  const double p1 = need(cfg.p1, "p1");
  const double p2 = need(cfg.p2, "p2");
  const N2Classification c = n2_classify(p1, p2);
  OracleResult r;
  r.inputs = {{"p1", p1}, {"p2", p2}};
  r.computed = {{"isomorphism_invariant", c.isomorphism_invariant},
                {"ard", optional_json(c.p_a)},
                {"derd", Json{{"p_e", c.p_e}, {"p_d", c.p_d}}},
                {"degenerate", c.degenerate}};
  r.expected = {{"masses", {p1, p1, p2}}};
  r.tolerance = kExactTol;
  if (c.degenerate) {
    r.pass = false;
    return r;
  }
  const Pmf pmf = exact_pmf(DerdModel{2, c.p_e, c.p_d});
  const double got[3] = {pmf.mass(1), pmf.mass(2), pmf.mass(3)};
  const double want[3] = {p1, p1, p2};
  double err = 0.0;
  for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(got[i] - want[i]));
  r.computed["masses"] = {got[0], got[1], got[2]};
  r.computed["max_abs_error"] = err;
  r.pass = err <= kExactTol;
  return r;
}

OracleResult oracle_rnnd_stats(RunConfig& cfg) {
  const ModelSpec model = resolve_model(cfg.model, "model");
  const auto* rn = std::get_if<RnndModel>(&model);
  if (rn == nullptr) throw UsageError("rnnd-stats needs an rnnd model");
  if (!cfg.samples) cfg.samples = 100'000;
  if (!cfg.seed) cfg.seed = 1;
  const RnndStats s = rnnd_stats(*rn, *cfg.samples, *cfg.seed);
  // By exchangeability, vertices 2 and 3 take a uniform pair of ranks among the n-1 others.
  const double sz = rn->rule.out_degree();
  const double n = rn->n;
  const double marginal = sz / (n - 1);
  const double joint = sz * (sz - 1) / ((n - 1) * (n - 2));
  const bool marginal_ok = std::abs(s.arc_marginal_est.value - marginal) <= kSigmaBand * s.arc_marginal_est.std_error;
  const bool joint_ok = joint == 0.0 ? s.joint_pair_est.value == 0.0
                                     : std::abs(s.joint_pair_est.value - joint) <= kSigmaBand * s.joint_pair_est.std_error;
  OracleResult r;
  r.inputs = {{"model", cfg.model}};
  r.computed = to_json(s);
  r.expected = {{"out_degree", rn->rule.out_degree()},
                {"arc_marginal", marginal},
                {"joint_pair", joint},
                {"out_degree_violations", 0},
                {"edge_identity_violations", 0}};
  r.tolerance = {{"sigma", kSigmaBand}};
  r.pass = s.out_degree_violations == 0 && s.edge_identity_violations == 0 && marginal_ok && joint_ok;
  return r;
}

int cmd_oracle(RunConfig& cfg, std::ostream& out) {
  if (cfg.oracle.empty()) throw UsageError("oracle name required; one of: tv, invariance, derd-ard, derd3-vard, g-moments, spectral, constancy, posdep, n2, rnnd-stats");
  if (std::find(kOracles.begin(), kOracles.end(), cfg.oracle) == kOracles.end()) {
    throw UsageError("unknown oracle '" + cfg.oracle + "'");
  }
  if (cfg.format && *cfg.format != "json") throw UsageError("oracle reports are JSON only");
  if (!cfg.expect_fail) cfg.expect_fail = false;
  // Exact oracles ignore it, but every report names its seed.
  if (!cfg.seed) cfg.seed = 1;

  OracleResult r;
  const std::string& o = cfg.oracle;
  if (o == "tv") r = oracle_tv(cfg);
  else if (o == "invariance") r = oracle_invariance(cfg);
  else if (o == "derd-ard") r = oracle_derd_ard(cfg);
  else if (o == "derd3-vard") r = oracle_derd3_vard(cfg);
  else if (o == "g-moments") r = oracle_g_moments(cfg);
  else if (o == "spectral") r = oracle_spectral(cfg);
  else if (o == "constancy") r = oracle_constancy(cfg);
  else if (o == "posdep") r = oracle_posdep(cfg);
  else if (o == "n2") r = oracle_n2(cfg);
  else r = oracle_rnnd_stats(cfg);

  const bool pass = *cfg.expect_fail ? !r.pass : r.pass;
  Json report{{"schema_version", kSchemaVersion},
              {"oracle", o},
              {"config", config_json(cfg)},
              {"inputs", r.inputs},
              {"computed", r.computed},
              {"expected", r.expected},
              {"tolerance", r.tolerance},
              {"condition_holds", r.pass},
              {"expect_fail", *cfg.expect_fail},
              {"pass", pass}};
  emit(cfg, report.dump(2) + "\n", out);
  return pass ? kPass : kOracleFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"randig: exact laws, samplers and oracles for random digraph families", "randig"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  struct Raw {
    std::string model, model2, kernel, config, format, out;
    std::uint64_t seed = 0, samples = 0;
    double tol = 0, pe = 0, pd = 0, p1 = 0, p2 = 0;
    int n = 0, m = 0, grid = 0;
    bool expect_fail = false, arc_freq = false;
    std::string oracle;
  } raw;
  std::map<std::string, CLI::Option*> opts;

  auto common = [&](CLI::App* sub) {
    opts["model"] = sub->add_option("--model", raw.model, "ModelSpec JSON: a file path or inline object");
    opts["config"] = sub->add_option("--config", raw.config, "replay a report's config (path or inline JSON)");
    opts["seed"] = sub->add_option("--seed", raw.seed, "64-bit seed");
    opts["samples"] = sub->add_option("--samples", raw.samples, "Monte Carlo sample count");
    opts["format"] = sub->add_option("--format", raw.format, "json or csv");
    opts["out"] = sub->add_option("--out", raw.out, "output path (default stdout)");
  };
  CLI::App* pmf = app.add_subcommand("pmf", "write the exact PMF of a model");
  CLI::App* smp = app.add_subcommand("sample", "draw digraphs from a model");
  CLI::App* orc = app.add_subcommand("oracle", "run a verification oracle");
  std::map<CLI::App*, std::map<std::string, CLI::Option*>> by_sub;
  for (CLI::App* sub : {pmf, smp, orc}) {
    opts.clear();
    common(sub);
    if (sub == smp) opts["arc_freq"] = sub->add_flag("--arc-freq", raw.arc_freq, "emit the arc-frequency table instead of the stream");
    if (sub == orc) {
      opts["oracle"] = sub->add_option("name", raw.oracle, "oracle name");
      opts["model2"] = sub->add_option("--model2", raw.model2, "second ModelSpec (tv)");
      opts["kernel"] = sub->add_option("--kernel", raw.kernel, "KernelSpec JSON (spectral, constancy)");
      opts["tol"] = sub->add_option("--tol", raw.tol, "tolerance override");
      opts["pe"] = sub->add_option("--pe", raw.pe, "edge probability p_e");
      opts["pd"] = sub->add_option("--pd", raw.pd, "direction probability p_d");
      opts["p1"] = sub->add_option("--p1", raw.p1, "mass of each single-arc digraph (n2)");
      opts["p2"] = sub->add_option("--p2", raw.p2, "mass of the two-arc digraph (n2)");
      opts["n"] = sub->add_option("--n", raw.n, "vertex count");
      opts["m"] = sub->add_option("--m", raw.m, "star size (posdep)");
      opts["grid"] = sub->add_option("--grid", raw.grid, "quadrature or discretization points");
      opts["expect_fail"] = sub->add_flag("--expect-fail", raw.expect_fail, "pass iff the checked condition fails");
    }
    by_sub[sub] = opts;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  CLI::App* sub = pmf->parsed() ? pmf : smp->parsed() ? smp : orc;
  auto given = [&](const char* key) {
    const auto& o = by_sub[sub];
    auto it = o.find(key);
    return it != o.end() && it->second->count() > 0;
  };

  try {
    RunConfig cfg;
    if (given("config")) merge_config_json(load_json(raw.config), cfg);
    const std::string name = sub->get_name();
    if (!cfg.command.empty() && cfg.command != name) {
      throw UsageError("config is for '" + cfg.command + "', not '" + name + "'");
    }
    cfg.command = name;
    if (given("model")) cfg.model = load_json(raw.model);
    if (given("model2")) cfg.model2 = load_json(raw.model2);
    if (given("kernel")) cfg.kernel = load_json(raw.kernel);
    if (given("seed")) cfg.seed = raw.seed;
    if (given("samples")) cfg.samples = raw.samples;
    if (given("format")) cfg.format = raw.format;
    if (given("out")) cfg.out = raw.out;
    if (given("arc_freq")) cfg.arc_freq = raw.arc_freq;
    if (given("oracle")) cfg.oracle = raw.oracle;
    if (given("tol")) cfg.tol = raw.tol;
    if (given("pe")) cfg.pe = raw.pe;
    if (given("pd")) cfg.pd = raw.pd;
    if (given("p1")) cfg.p1 = raw.p1;
    if (given("p2")) cfg.p2 = raw.p2;
    if (given("n")) cfg.n = raw.n;
    if (given("m")) cfg.m = raw.m;
    if (given("grid")) cfg.grid = raw.grid;
    if (given("expect_fail")) cfg.expect_fail = raw.expect_fail;
    if (cfg.samples && *cfg.samples == 0) throw UsageError("--samples must be positive");

    if (name == "pmf") return cmd_pmf(cfg, out, err);
    if (name == "sample") return cmd_sample(cfg, out);
    return cmd_oracle(cfg, out);
  } catch (const UsageError& e) {
    err << "randig: " << e.what() << "\n";
  } catch (const DegenerateModel& e) {
    err << "randig: degenerate model: " << e.what() << "\n";
  } catch (const InvalidArgument& e) {
    err << "randig: invalid argument: " << e.what() << "\n";
  } catch (const Unsupported& e) {
    err << "randig: unsupported: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "randig: bad JSON value: " << e.what() << "\n";
  }
  return kUsageError;
}

}  // namespace randig::cli
