#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>

#include "cli.hpp"
#include "randig/analysis.hpp"
#include "randig/error.hpp"
#include "randig/json_io.hpp"
#include "randig/models.hpp"
#include "randig/rnnd.hpp"

namespace py = pybind11;
using namespace randig;

namespace {

// Models and kernels cross the boundary as JSON text; the Python side
// serializes dicts before calling in.
ModelSpec model_arg(const std::string& text) { return model_from_json(Json::parse(text)); }

std::vector<std::pair<int, int>> arc_pairs(const Digraph& d) {
  std::vector<std::pair<int, int>> v;
  for (const Arc& a : d.arcs()) v.emplace_back(a.tail, a.head);
  return v;
}

std::map<std::uint64_t, double> masses(const Pmf& p) {
  std::map<std::uint64_t, double> m;
  p.for_each_nonzero([&](std::uint64_t mask, double v) { m[mask] = v; });
  return m;
}

py::dict estimate(const EstimateWithError& e) {
  py::dict d;
  d["value"] = e.value;
  d["std_error"] = e.std_error;
  d["n_samples"] = e.n_samples;
  return d;
}

}  // namespace

PYBIND11_MODULE(_randig, m) {
  m.doc() = "Random digraph models, exact laws and sampling";

  py::register_exception<Unsupported>(m, "Unsupported", PyExc_NotImplementedError);
  py::register_exception<DegenerateModel>(m, "DegenerateModel", PyExc_ValueError);

  m.def("validate", [](const std::string& model) { validate(model_arg(model)); });
  m.def("has_exact_pmf", [](const std::string& model) { return has_exact_pmf(model_arg(model)); });
  m.def("exact_pmf", [](const std::string& model) { return masses(exact_pmf(model_arg(model))); },
        "Nonzero masses keyed by arc-slot bitmask.");
  m.def("pmf_csv", [](const std::string& model) { return pmf_to_csv(exact_pmf(model_arg(model))); });
  m.def("sample_arcs", [](const std::string& model, std::uint64_t seed) {
    return arc_pairs(sample(model_arg(model), seed));
  });
  m.def(
      "sample_masks",
      [](const std::string& model, std::uint64_t count, std::uint64_t seed) {
        const ModelSpec spec = model_arg(model);
        std::vector<std::uint64_t> out(count);
        {
          py::gil_scoped_release release;
          for (std::uint64_t t = 0; t < count; ++t) out[t] = sample(spec, replicate_seed(seed, t)).mask();
        }
        return out;
      },
      "Replicate t uses the same seed as the CLI's sample stream.");
  m.def("arc_counts", [](int n, const std::vector<std::pair<int, int>>& arcs) {
    std::vector<Arc> a;
    for (auto [i, j] : arcs) a.push_back({i, j});
    const ArcCounts c = arc_counts(Digraph::from_arcs(n, a));
    return std::map<std::string, std::size_t>{{"n_a", c.n_a}, {"n_e", c.n_e}, {"n_s", c.n_s}, {"n_as", c.n_as}};
  });
  m.def("canonical_mask", [](int n, std::uint64_t mask) {
    return canonical_form(Digraph::from_mask(n, mask)).mask();
  });
  m.def("arc_slot", [](int n, int i, int j) { return arc_slot(n, i, j); });

  m.def("total_variation", [](const std::string& a, const std::string& b) {
    return total_variation(exact_pmf(model_arg(a)), exact_pmf(model_arg(b)));
  });
  m.def("derd_ard_params", [](double p_e) {
    const auto r = derd_ard_params(p_e);
    return py::make_tuple(r.p_d, r.p_a, r.degenerate);
  });
  m.def("n2_classify", [](double p1, double p2) {
    const auto c = n2_classify(p1, p2);
    py::dict d;
    d["p_a"] = c.p_a ? py::cast(*c.p_a) : py::none();
    d["p_e"] = c.p_e;
    d["p_d"] = c.p_d;
    d["degenerate"] = c.degenerate;
    d["isomorphism_invariant"] = c.isomorphism_invariant;
    return d;
  });
  m.def("invariance_check", [](const std::string& model, double tol) {
    const auto r = invariance_check(exact_pmf(model_arg(model)), tol);
    py::dict d;
    d["invariant"] = r.invariant;
    d["worst_spread"] = r.worst_spread;
    d["orbit_count"] = r.orbit_count;
    return d;
  }, py::arg("model"), py::arg("tol") = kExactTol);
  m.def("spectral_cycle_moment", [](std::vector<double> weights, const std::vector<std::vector<double>>& phi) {
    FiniteKernel k;
    k.weights = std::move(weights);
    for (const auto& row : phi) k.phi.insert(k.phi.end(), row.begin(), row.end());
    const auto r = spectral_cycle_moment(k);
    py::dict d;
    d["eigenvalues"] = r.eigenvalues;
    d["lambda4_sum"] = r.lambda4_sum;
    d["cycle_moment"] = r.cycle_moment;
    d["abs_diff"] = r.abs_diff;
    return d;
  });
  m.def("event_probability", [](const std::string& model, const std::vector<std::pair<int, int>>& required,
                                const std::vector<std::pair<int, int>>& forbidden, std::uint64_t n_samples,
                                std::uint64_t seed) {
    std::vector<Arc> r, f;
    for (auto [i, j] : required) r.push_back({i, j});
    for (auto [i, j] : forbidden) f.push_back({i, j});
    py::gil_scoped_release release;
    const auto e = event_probability(model_arg(model), r, f, n_samples, seed);
    py::gil_scoped_acquire acquire;
    return estimate(e);
  }, py::arg("model"), py::arg("required"), py::arg("forbidden") = std::vector<std::pair<int, int>>{},
     py::arg("n_samples") = 0, py::arg("seed") = 0);

  m.def("knn_digraph", [](const std::vector<std::vector<double>>& points, int k, const std::string& norm) {
    if (points.empty()) throw InvalidArgument("knn_digraph: no points");
    std::vector<double> flat;
    for (const auto& p : points) flat.insert(flat.end(), p.begin(), p.end());
    const auto r = knn_digraph(PointCloud(static_cast<int>(points.size()), static_cast<int>(points[0].size()),
                                          flat, parse_norm(norm)),
                               NndRule::all(k));
    return py::make_tuple(arc_pairs(r.digraph), r.ties);
  }, py::arg("points"), py::arg("k") = 1, py::arg("norm") = "l2");
  m.def("rnnd_stats_json", [](const std::string& model, std::uint64_t n_samples, std::uint64_t seed) {
    const ModelSpec spec = model_arg(model);
    if (!std::holds_alternative<RnndModel>(spec)) throw InvalidArgument("rnnd_stats: model must be an rnnd");
    py::gil_scoped_release release;
    return to_json(rnnd_stats(std::get<RnndModel>(spec), n_samples, seed)).dump();
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Runs the randig command line in-process; returns (exit_code, stdout, stderr).");
}
