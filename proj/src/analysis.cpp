#include "randig/analysis.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "randig/error.hpp"
#include "randig/models.hpp"
#include "randig/parallel.hpp"
#include "randig/random.hpp"

namespace randig {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr unsigned kChunks = 64;

std::vector<Pmf::Entry> nonzero_entries(const Pmf& p) {
  std::vector<Pmf::Entry> out;
  p.for_each_nonzero([&](std::uint64_t m, double v) { out.emplace_back(m, v); });
  return out;
}

/// (mask, count) for every sampled digraph, ascending by mask.
std::vector<std::pair<std::uint64_t, std::uint64_t>> sample_counts(const ModelSpec& model,
                                                                   std::uint64_t n_samples,
                                                                   std::uint64_t seed) {
  validate(model);
  if (vertex_count(model) > 8) throw Unsupported("sample histograms need n <= 8");
  std::vector<std::vector<std::uint64_t>> parts(kChunks);
  parallel_chunks(n_samples, kChunks, [&](unsigned c, std::uint64_t begin, std::uint64_t end) {
    auto& out = parts[c];
    out.reserve(end - begin);
    for (std::uint64_t t = begin; t < end; ++t) {
      out.push_back(sample(model, replicate_seed(seed, t)).mask());
    }
  });
  std::vector<std::uint64_t> all;
  all.reserve(n_samples);
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());

  std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    counts.emplace_back(all[i], j - i);
    i = j;
  }
  return counts;
}

void check_arcs(int n, std::span<const Arc> arcs) {
  for (const auto& a : arcs) {
    if (a.tail < 1 || a.tail > n || a.head < 1 || a.head > n || a.tail == a.head) {
      throw InvalidArgument("arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) +
                            ") is not a valid arc on [" + std::to_string(n) + "]");
    }
  }
}

/// Joint law of the arcs (i,j), (j,i) for one vertex pair i < j:
/// {none, (i,j) only, (j,i) only, both}.
using PairLaw = std::array<double, 4>;

PairLaw independent_pair(double p_ij, double p_ji) {
  return {(1 - p_ij) * (1 - p_ji), p_ij * (1 - p_ji), (1 - p_ij) * p_ji, p_ij * p_ji};
}

PairLaw oriented_pair(double p_e, double p_d) {
  return {1 - p_e, p_e * (1 - p_d), p_e * (1 - p_d), p_e * (2 * p_d - 1)};
}

/// The pair law as a function of (i,j) when every vertex pair is
/// independent of the others; nullopt otherwise.
std::optional<std::function<PairLaw(int, int)>> pair_factorization(const ModelSpec& model) {
  using Fn = std::function<PairLaw(int, int)>;
  return std::visit(
      Overloaded{
          [](const ArdModel& m) -> std::optional<Fn> {
            return Fn([p = m.p_a](int, int) { return independent_pair(p, p); });
          },
          [](const GardModel& m) -> std::optional<Fn> {
            return Fn([&p = m.p](int i, int j) {
              return independent_pair(p[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)],
                                      p[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)]);
            });
          },
          [](const ErgModel& m) -> std::optional<Fn> {
            return Fn([p = m.p_e](int, int) { return PairLaw{1 - p, 0.0, 0.0, p}; });
          },
          [](const DerdModel& m) -> std::optional<Fn> {
            return Fn([=](int, int) { return oriented_pair(m.p_e, m.p_d); });
          },
          [](const DrdModel& m) -> std::optional<Fn> {
            const auto* erg = std::get_if<ErgModel>(&m.graph);
            if (erg == nullptr) return std::nullopt;
            return Fn([p_e = erg->p_e, p_d = m.p_d](int, int) { return oriented_pair(p_e, p_d); });
          },
          [](const auto&) -> std::optional<Fn> { return std::nullopt; },
      },
      model);
}

double factorized_event(int n, const std::function<PairLaw(int, int)>& law,
                        std::span<const Arc> required, std::span<const Arc> forbidden) {
  // Per pair: bit 0 is (i,j), bit 1 is (j,i), matching PairLaw's order.
  auto bit = [](const Arc& a) { return a.tail < a.head ? 1 : 2; };
  auto key = [n](const Arc& a) { return edge_slot(n, std::min(a.tail, a.head), std::max(a.tail, a.head)); };
  std::vector<int> req(edge_slot_count(n), 0), forb(edge_slot_count(n), 0);
  for (const auto& a : required) req[key(a)] |= bit(a);
  for (const auto& a : forbidden) forb[key(a)] |= bit(a);

  double p = 1.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const std::size_t s = edge_slot(n, i, j);
      if (req[s] == 0 && forb[s] == 0) continue;
      const PairLaw pl = law(i, j);
      double q = 0.0;
      for (int state = 0; state < 4; ++state) {
        if ((state & req[s]) == req[s] && (state & forb[s]) == 0) q += pl[static_cast<std::size_t>(state)];
      }
      p *= q;
    }
  }
  return p;
}

/// Stratified points for kernels whose mu is uniform on [0,1)^dim: a rank-1
/// lattice, so every coordinate visits each of the `grid` strata once.
bool uniform_unit_cube(const KernelSpec& k) {
  return std::visit(Overloaded{
                        [](const FiniteKernel&) { return false; },
                        [](const IntersectionKernel&) { return false; },
                        [](const UnionKernel& u) { return uniform_unit_cube(*u.base); },
                        [](const auto&) { return true; },
                    },
                    k.variant());
}

std::vector<double> grid_points(const KernelSpec& k, int grid) {
  const std::size_t dim = k.dim();
  const auto g = static_cast<std::size_t>(grid);
  std::vector<double> pts(g * dim);
  if (uniform_unit_cube(k)) {
    std::vector<std::size_t> z(dim, 1);
    for (std::size_t c = 1; c < dim; ++c) {
      double ip;
      auto cand = 1 + static_cast<std::size_t>(static_cast<double>(g) *
                                               std::modf(static_cast<double>(c) * 0.6180339887498949, &ip));
      while (std::gcd(cand, g) != 1) ++cand;
      z[c] = cand;
    }
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t c = 0; c < dim; ++c) {
        pts[i * dim + c] = (static_cast<double>((i * z[c]) % g) + 0.5) / static_cast<double>(g);
      }
    }
  } else {
    for (std::size_t i = 0; i < g; ++i) {
      Stream s = Stream::derive(0, "grid", i);
      k.sample_point(s, std::span<double>(pts).subspan(i * dim, dim));
    }
  }
  return pts;
}

}  // namespace

double total_variation(const Pmf& p1, const Pmf& p2) {
  if (p1.n() != p2.n() || p1.kind() != p2.kind()) {
    throw InvalidArgument("total_variation needs Pmfs over the same space (n = " +
                          std::to_string(p1.n()) + " vs " + std::to_string(p2.n()) + ")");
  }
  const auto a = nonzero_entries(p1);
  const auto b = nonzero_entries(p2);
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      sum += a[i++].second;
    } else if (i == a.size() || b[j].first < a[i].first) {
      sum += b[j++].second;
    } else {
      sum += std::abs(a[i++].second - b[j++].second);
    }
  }
  return std::min(1.0, 0.5 * sum);
}

InvarianceReport invariance_check(const Pmf& p, double tol) {
  if (p.kind() != PmfKind::digraph) throw InvalidArgument("invariance_check expects a digraph Pmf");
  if (p.n() > 5) throw Unsupported("invariance_check needs n <= 5");
  const int n = p.n();
  const auto canon = canonical_mask_table(n);
  const std::uint64_t states = p.state_count();

  std::vector<double> lo(states, std::numeric_limits<double>::infinity());
  std::vector<double> hi(states, -std::numeric_limits<double>::infinity());
  std::vector<double> mass(states, 0.0);
  p.for_each_nonzero([&](std::uint64_t m, double v) { mass[m] = v; });
  for (std::uint64_t m = 0; m < states; ++m) {
    const std::uint64_t c = canon[m];
    lo[c] = std::min(lo[c], mass[m]);
    hi[c] = std::max(hi[c], mass[m]);
  }

  InvarianceReport r;
  for (std::uint64_t c = 0; c < states; ++c) {
    if (canon[c] != c) continue;  // c is canonical iff it is its own image
    ++r.orbit_count;
    if (hi[c] - lo[c] > r.worst_spread) {
      r.worst_spread = hi[c] - lo[c];
      r.worst_canonical = c;
    }
  }
  for (std::uint64_t m = 0; m < states; ++m) {
    if (canon[m] == r.worst_canonical) r.worst_orbit.emplace_back(m, mass[m]);
  }
  r.invariant = r.worst_spread <= tol;
  return r;
}

std::uint64_t count_hits(const ModelSpec& model, std::uint64_t n_samples, std::uint64_t seed,
                         const std::function<bool(const Digraph&)>& hit) {
  validate(model);
  std::vector<std::uint64_t> parts(kChunks, 0);
  parallel_chunks(n_samples, kChunks, [&](unsigned c, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t h = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      if (hit(sample(model, replicate_seed(seed, t)))) ++h;
    }
    parts[c] = h;
  });
  return std::accumulate(parts.begin(), parts.end(), std::uint64_t{0});
}

Pmf empirical_pmf(const ModelSpec& model, std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) throw InvalidArgument("empirical_pmf needs at least one sample");
  std::vector<Pmf::Entry> entries;
  for (const auto& [m, c] : sample_counts(model, n_samples, seed)) {
    entries.emplace_back(m, static_cast<double>(c) / static_cast<double>(n_samples));
  }
  return Pmf::from_entries(vertex_count(model), PmfKind::digraph, std::move(entries));
}

EstimateWithError event_probability(const ModelSpec& model, std::span<const Arc> required,
                                    std::span<const Arc> forbidden, std::uint64_t n_samples,
                                    std::uint64_t seed) {
  validate(model);
  const int n = vertex_count(model);
  check_arcs(n, required);
  check_arcs(n, forbidden);
  const bool graph = is_graph_family(model);
  auto same = [graph](const Arc& a, const Arc& b) {
    return (a.tail == b.tail && a.head == b.head) ||
           (graph && a.tail == b.head && a.head == b.tail);
  };
  for (const auto& r : required) {
    for (const auto& f : forbidden) {
      if (same(r, f)) {
        throw InvalidArgument("arc (" + std::to_string(r.tail) + "," + std::to_string(r.head) +
                              ") is both required and forbidden");
      }
    }
  }

  if (graph) {
    // An arc of a graph family stands for its edge; both orientations agree.
    std::vector<Arc> req, forb;
    for (const auto& a : required) req.push_back({std::min(a.tail, a.head), std::max(a.tail, a.head)});
    for (const auto& a : forbidden) forb.push_back({std::min(a.tail, a.head), std::max(a.tail, a.head)});
    if (const auto law = pair_factorization(model)) {
      return EstimateWithError::exact(factorized_event(n, *law, req, forb));
    }
  } else if (const auto law = pair_factorization(model)) {
    return EstimateWithError::exact(factorized_event(n, *law, required, forbidden));
  }

  if (has_exact_pmf(model)) {
    const Pmf pmf = exact_pmf(model);
    std::uint64_t need = 0, ban = 0;
    auto slot = [&](const Arc& a) {
      return graph ? edge_slot(n, std::min(a.tail, a.head), std::max(a.tail, a.head))
                   : arc_slot(n, a.tail, a.head);
    };
    for (const auto& a : required) need |= std::uint64_t{1} << slot(a);
    for (const auto& a : forbidden) ban |= std::uint64_t{1} << slot(a);
    double p = 0.0;
    pmf.for_each_nonzero([&](std::uint64_t m, double v) {
      if ((m & need) == need && (m & ban) == 0) p += v;
    });
    return EstimateWithError::exact(std::clamp(p, 0.0, 1.0));
  }

  if (n_samples == 0) {
    throw InvalidArgument("family '" + family_name(model) + "' has no exact law here; n_samples must be > 0");
  }
  const std::vector<Arc> req(required.begin(), required.end());
  const std::vector<Arc> forb(forbidden.begin(), forbidden.end());
  const auto hits = count_hits(model, n_samples, seed, [&](const Digraph& d) {
    for (const auto& a : req) {
      if (!d.has_arc(a.tail, a.head)) return false;
    }
    for (const auto& a : forb) {
      if (d.has_arc(a.tail, a.head)) return false;
    }
    return true;
  });
  return EstimateWithError::proportion(hits, n_samples);
}

DerdArdParams derd_ard_params(double p_e) {
  if (!(p_e > 0.0 && p_e <= 1.0)) {
    throw InvalidArgument("p_e must lie in (0,1], got " + std::to_string(p_e));
  }
  const double s = std::sqrt(1.0 - p_e);
  // p_e / (1 + s) = 1 - s without cancellation for small p_e.
  return {1.0 / (1.0 + s), p_e / (1.0 + s), p_e == 1.0};
}

KernelSpec derd3_vard_kernel(double p_e, double p_d, int n) {
  if (n < 2 || n > 3) {
    throw InvalidArgument("the product kernel represents a DERD only for n in {2,3}; n = " +
                          std::to_string(n) + " needs an ARD (p_d = 1/(1+sqrt(1-p_e)))");
  }
  if (!(p_e > 0.0 && p_e < 1.0)) throw InvalidArgument("p_e must lie in (0,1), got " + std::to_string(p_e));
  if (!(p_d >= 0.5 && p_d < 1.0)) throw InvalidArgument("p_d must lie in [1/2,1), got " + std::to_string(p_d));
  return KernelSpec(Derd3ProductKernel{p_e, p_d});
}

std::array<MomentCheck, 3> g_moment_checks(double p_d, std::uint64_t seed, std::uint64_t n_mc,
                                           int grid) {
  if (!(p_d >= 0.5 && p_d < 1.0)) throw InvalidArgument("p_d must lie in [1/2,1), got " + std::to_string(p_d));
  if (grid < 2 || n_mc < 2) throw InvalidArgument("g_moment_checks needs grid >= 2 and n_mc >= 2");
  std::array<MomentCheck, 3> out;

  // Offsets of 1/2 and 1/4 cell keep every x (-) y off the jump at 1/2.
  const double h = 1.0 / grid;
  double acc = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = (i + 0.5) * h;
    double row = 0.0;
    for (int j = 0; j < grid; ++j) row += derd3_g(x, (j + 0.25) * h, p_d);
    acc += row;
  }
  out[0] = {"int g", acc * h * h, p_d, 0.0, static_cast<std::uint64_t>(grid) * static_cast<std::uint64_t>(grid),
            false, false};
  out[0].pass = std::abs(out[0].computed - out[0].expected) <= 1e-3;

  for (int which = 0; which < 2; ++which) {
    Stream s = Stream::derive(seed, "g-moment", static_cast<std::uint64_t>(which));
    double sum = 0.0, sum2 = 0.0;
    for (std::uint64_t t = 0; t < n_mc; ++t) {
      const double x = s.uniform(), y = s.uniform(), z = s.uniform();
      double v = derd3_g(x, y, p_d) * derd3_g(y, z, p_d);
      if (which == 1) v *= derd3_g(z, x, p_d);
      sum += v;
      sum2 += v * v;
    }
    const double nn = static_cast<double>(n_mc);
    const double mean = sum / nn;
    const double var = std::max(0.0, (sum2 - nn * mean * mean) / (nn - 1.0));
    MomentCheck& c = out[static_cast<std::size_t>(which + 1)];
    c.name = which == 0 ? "int g(x,y)g(y,z)" : "int g(x,y)g(y,z)g(z,x)";
    c.computed = mean;
    c.expected = which == 0 ? p_d * p_d : p_d * p_d * p_d;
    c.std_error = std::sqrt(var / nn);
    c.n_points = n_mc;
    c.monte_carlo = true;
    c.pass = std::abs(c.computed - c.expected) <= kSigmaBand * c.std_error + kExactTol;
  }
  return out;
}

SpectralReport spectral_cycle_moment(const FiniteKernel& h) {
  const std::size_t k = h.atoms();
  if (k == 0 || h.phi.size() != k * k) throw InvalidArgument("kernel table must be k x k with k >= 1");
  for (std::size_t a = 0; a < k; ++a) {
    if (!(h.weights[a] >= 0.0)) throw InvalidArgument("kernel weights must be nonnegative");
    for (std::size_t b = 0; b < k; ++b) {
      const double v = h.at(a, b);
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("kernel values must lie in [0,1]");
      if (std::abs(v - h.at(b, a)) > kExactTol) {
        throw InvalidArgument("spectral_cycle_moment needs a symmetric kernel; h(" + std::to_string(a) +
                              "," + std::to_string(b) + ") != h(" + std::to_string(b) + "," +
                              std::to_string(a) + ")");
      }
    }
  }

  const auto kk = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd m(kk, kk);
  for (Eigen::Index a = 0; a < kk; ++a) {
    for (Eigen::Index b = 0; b < kk; ++b) {
      const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
      m(a, b) = std::sqrt(h.weights[ua]) * h.at(ua, ub) * std::sqrt(h.weights[ub]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver did not converge");

  SpectralReport r;
  for (Eigen::Index i = 0; i < kk; ++i) r.eigenvalues.push_back(solver.eigenvalues()(i));
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(),
            [](double x, double y) { return std::abs(x) > std::abs(y); });
  for (double l : r.eigenvalues) r.lambda4_sum += (l * l) * (l * l);

  const auto& w = h.weights;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const double ab = w[a] * w[b] * h.at(a, b);
      if (ab == 0.0) continue;
      for (std::size_t c = 0; c < k; ++c) {
        const double abc = ab * w[c] * h.at(b, c);
        if (abc == 0.0) continue;
        for (std::size_t d = 0; d < k; ++d) r.cycle_moment += abc * w[d] * h.at(c, d) * h.at(d, a);
      }
    }
  }
  r.abs_diff = std::abs(r.lambda4_sum - r.cycle_moment);
  return r;
}

ConstancyReport kernel_product_constancy(const KernelSpec& kernel, double tol, int grid) {
  if (!(tol >= 0.0)) throw InvalidArgument("tolerance must be nonnegative");
  ConstancyReport r;
  std::vector<double> pts;
  std::vector<double> weights;
  const std::size_t dim = kernel.dim();
  if (kernel.is_finite()) {
    weights = kernel.finite().weights;
    for (std::size_t a = 0; a < weights.size(); ++a) pts.push_back(static_cast<double>(a));
  } else {
    if (grid < 2) throw InvalidArgument("discretization grid needs at least 2 points");
    r.discretized = true;
    pts = grid_points(kernel, grid);
    weights.assign(static_cast<std::size_t>(grid), 1.0 / grid);
  }
  const std::size_t count = weights.size();
  std::span<const double> xs(pts);
  auto point = [&](std::size_t i) { return xs.subspan(i * dim, dim); };

  struct Track {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    double first = 0.0;
    double mean = 0.0;
    bool any = false;
    void add(double v, double w) {
      if (!any) first = v;
      any = true;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      mean += w * v;
    }
  } prod, comp, sum;
  double total_w = 0.0;

  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      if (!kernel.is_finite() && a == b) continue;
      const double w = weights[a] * weights[b];
      if (w <= 0.0) continue;
      const double f = kernel.phi(point(a), point(b));
      const double fr = kernel.phi(point(b), point(a));
      prod.add(f * fr, w);
      comp.add((1.0 - f) * (1.0 - fr), w);
      sum.add(f + fr, w);
      total_w += w;
      ++r.pairs_checked;
    }
  }
  if (r.pairs_checked == 0) throw InvalidArgument("kernel has no pair of positive weight");

  auto constant = [tol](const Track& t) -> std::optional<double> {
    if (t.hi - t.lo <= tol) return t.first;
    return std::nullopt;
  };
  r.phi_product = constant(prod);
  r.complement_product = constant(comp);
  r.sum = constant(sum);
  r.mean_phi_product = prod.mean / total_w;
  r.mean_complement_product = comp.mean / total_w;
  r.mean_sum = sum.mean / total_w;
  return r;
}

PositiveDependenceReport positive_dependence_check(const ModelSpec& model, int m,
                                                   std::uint64_t n_samples, std::uint64_t seed) {
  validate(model);
  const int n = vertex_count(model);
  if (m < 2 || m > n) {
    throw InvalidArgument("m must lie in [2, n] = [2, " + std::to_string(n) + "], got " + std::to_string(m));
  }
  std::vector<Arc> star;
  for (int j = 2; j <= m; ++j) star.push_back({1, j});
  const Arc first[] = {{1, 2}};

  PositiveDependenceReport r;
  r.m = m;
  r.lhs = event_probability(model, star, {}, n_samples, Stream::derive_key(seed, tag_hash("posdep"), 0));
  r.arc = event_probability(model, first, {}, n_samples, Stream::derive_key(seed, tag_hash("posdep"), 1));
  r.rhs = std::pow(r.arc.value, m - 1);
  if (r.lhs.is_exact() && r.arc.is_exact()) {
    r.tolerance = kExactTol;
  } else {
    // Delta method for arc^(m-1); the two estimates use independent draws.
    const double d = (m - 1) * std::pow(r.arc.value, m - 2) * r.arc.std_error;
    r.tolerance = kSigmaBand * std::sqrt(r.lhs.std_error * r.lhs.std_error + d * d);
  }
  r.holds = r.lhs.value >= r.rhs - r.tolerance;
  r.equality = std::abs(r.lhs.value - r.rhs) <= r.tolerance;
  return r;
}

N2Classification n2_classify(double p1, double p2) {
  if (!(p1 >= 0.0 && p2 >= 0.0) || 2.0 * p1 + p2 > 1.0 + kExactTol) {
    throw InvalidArgument("need p1, p2 >= 0 and 2 p1 + p2 <= 1");
  }
  if (!(2.0 * p1 + p2 > 0.0)) throw DegenerateModel("p1 = p2 = 0 leaves only the empty digraph");
  N2Classification r;
  r.p_e = 2.0 * p1 + p2;
  r.p_d = (p1 + p2) / r.p_e;
  r.degenerate = p1 == 0.0;
  const double s = std::sqrt(p2);
  if (std::abs(s * (1.0 - s) - p1) <= kExactTol && s > 0.0 && s < 1.0) r.p_a = s;
  return r;
}

EmpiricalComparison compare_to_exact(const ModelSpec& model, const Pmf& exact,
                                     std::uint64_t n_samples, std::uint64_t seed) {
  if (exact.kind() != PmfKind::digraph || exact.n() != vertex_count(model)) {
    throw InvalidArgument("compare_to_exact needs a digraph Pmf on the model's vertex set");
  }
  if (exact.slot_count() > kMaxEnumerationSlots) throw Unsupported("compare_to_exact needs n(n-1) <= 20");
  if (n_samples == 0) throw InvalidArgument("compare_to_exact needs at least one sample");

  std::vector<std::uint64_t> counts(exact.state_count(), 0);
  for (const auto& [m, c] : sample_counts(model, n_samples, seed)) counts[m] = c;

  EmpiricalComparison r;
  r.n_samples = n_samples;
  const double nn = static_cast<double>(n_samples);
  double l1 = 0.0;
  for (std::uint64_t m = 0; m < exact.state_count(); ++m) {
    MassComparison c;
    c.mask = m;
    c.exact = exact.mass(m);
    c.empirical = static_cast<double>(counts[m]) / nn;
    c.std_error = std::sqrt(c.exact * (1.0 - c.exact) / nn);
    c.pass = c.exact == 0.0 ? counts[m] == 0
                            : std::abs(c.empirical - c.exact) <= kSigmaBand * c.std_error;
    if (!c.pass) ++r.failures;
    l1 += std::abs(c.empirical - c.exact);
    r.masses.push_back(c);
  }
  r.tv = 0.5 * l1;
  return r;
}

}  // namespace randig
