#include <bit>
#include <cmath>
#include <string>

#include "randig/error.hpp"
#include "randig/models.hpp"
#include "randig/rnnd.hpp"

namespace randig {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Upper bound on (atom tuples) x (states) for finite-kernel enumeration.
constexpr double kMaxKernelWork = 4e9;

void check_enumerable(std::size_t slots, int n) {
  if (slots > static_cast<std::size_t>(kMaxEnumerationSlots)) {
    throw Unsupported("exact PMF needs at most 2^20 states; n = " + std::to_string(n) +
                      " gives 2^" + std::to_string(slots));
  }
}

/// Distribution of independent slot indicators: out[mask] = prod p or (1-p).
void product_measure(std::span<const double> probs, std::vector<double>& out) {
  out.assign(std::size_t{1} << probs.size(), 0.0);
  out[0] = 1.0;
  std::size_t filled = 1;
  for (double p : probs) {
    for (std::size_t m = 0; m < filled; ++m) {
      out[m + filled] = out[m] * p;
      out[m] *= 1.0 - p;
    }
    filled *= 2;
  }
}

std::vector<double> ard_masses(std::size_t slots, double p) {
  std::vector<double> by_count(slots + 1);
  for (std::size_t a = 0; a <= slots; ++a) {
    by_count[a] = std::pow(p, static_cast<double>(a)) *
                  std::pow(1.0 - p, static_cast<double>(slots - a));
  }
  std::vector<double> masses(std::size_t{1} << slots);
  for (std::uint64_t m = 0; m < masses.size(); ++m) {
    masses[m] = by_count[static_cast<std::size_t>(std::popcount(m))];
  }
  return masses;
}

/*!
 * sum_x prod_i w(x_i) * P_x over atom tuples of a finite kernel, where the
 * slot list is either all ordered pairs (digraph) or all i<j pairs (graph).
 */
std::vector<double> finite_kernel_masses(int n, const FiniteKernel& k, bool directed) {
  const std::size_t slots = directed ? arc_slot_count(n) : edge_slot_count(n);
  const std::size_t atoms = k.atoms();
  if (std::pow(static_cast<double>(atoms), n) * std::ldexp(1.0, static_cast<int>(slots)) >
      kMaxKernelWork) {
    throw Unsupported("finite-kernel enumeration too large: " + std::to_string(atoms) +
                      "^" + std::to_string(n) + " tuples x 2^" + std::to_string(slots) +
                      " states");
  }

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(slots);
  if (directed) {
    for (std::size_t s = 0; s < slots; ++s) {
      const Arc a = slot_arc(n, s);
      pairs.emplace_back(a.tail - 1, a.head - 1);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
  }

  std::vector<double> acc(std::size_t{1} << slots, 0.0);
  std::vector<double> buf;
  std::vector<double> probs(slots);
  std::vector<std::size_t> x(static_cast<std::size_t>(n), 0);
  while (true) {
    double w = 1.0;
    for (auto a : x) w *= k.weights[a];
    if (w > 0.0) {
      for (std::size_t s = 0; s < slots; ++s) {
        probs[s] = k.at(x[static_cast<std::size_t>(pairs[s].first)],
                        x[static_cast<std::size_t>(pairs[s].second)]);
      }
      product_measure(probs, buf);
      for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += w * buf[m];
    }
    std::size_t pos = 0;
    while (pos < x.size() && ++x[pos] == atoms) x[pos++] = 0;
    if (pos == x.size()) break;
  }
  return acc;
}

double binomial(std::uint64_t n, std::uint64_t k) {
  double r = 1.0;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(r);
}

std::vector<double> graph_masses(const GraphModel& model) {
  const int n = vertex_count(model);
  const std::size_t slots = edge_slot_count(n);
  check_enumerable(slots, n);
  return std::visit(Overloaded{
                        [&](const ErgModel& m) { return ard_masses(slots, m.p_e); },
                        [&](const VergModel& m) {
                          if (!m.kernel.is_finite()) {
                            throw Unsupported("exact PMF needs a finite kernel; '" +
                                              m.kernel.name() + "' is continuous (sample instead)");
                          }
                          return finite_kernel_masses(n, m.kernel.finite(), false);
                        },
                    },
                    model);
}

std::vector<double> drd_masses(int n, const std::vector<double>& graph, double p_d) {
  const std::size_t slots = arc_slot_count(n);
  check_enumerable(slots, n);
  const std::size_t pairs = edge_slot_count(n);
  // Orientation weight by (n_as, n_s); 0^0 = 1 handles p_d = 1/2.
  std::vector<double> one_way(pairs + 1), two_way(pairs + 1);
  for (std::size_t c = 0; c <= pairs; ++c) {
    one_way[c] = std::pow(1.0 - p_d, static_cast<double>(c));
    two_way[c] = std::pow(2.0 * p_d - 1.0, static_cast<double>(c));
  }
  std::vector<double> masses(std::size_t{1} << slots);
  for (std::uint64_t m = 0; m < masses.size(); ++m) {
    const ArcCounts c = arc_counts_mask(n, m);
    const double pg = graph[underlying_mask(n, m)];
    masses[m] = pg == 0.0 ? 0.0 : pg * one_way[c.n_as] * two_way[c.n_s];
  }
  return masses;
}

}  // namespace

bool has_exact_pmf(const ModelSpec& model) {
  const int n = vertex_count(model);
  const std::size_t slots = is_graph_family(model) ? edge_slot_count(n) : arc_slot_count(n);
  if (slots > static_cast<std::size_t>(kMaxEnumerationSlots)) return false;
  return std::visit(Overloaded{
                        [](const VardModel& m) { return m.kernel.is_finite(); },
                        [](const VergModel& m) { return m.kernel.is_finite(); },
                        [](const DrdModel& m) {
                          const auto* v = std::get_if<VergModel>(&m.graph);
                          return v == nullptr || v->kernel.is_finite();
                        },
                        [](const RnndModel& m) { return rnnd_has_exact_pmf(m); },
                        [](const auto&) { return true; },
                    },
                    model);
}

Pmf exact_pmf(const GraphModel& model) {
  validate(model);
  const int n = vertex_count(model);
  return Pmf::from_masses(n, PmfKind::graph, graph_masses(model));
}

Pmf exact_pmf(const ModelSpec& model) {
  validate(model);
  const int n = vertex_count(model);
  const std::size_t slots = arc_slot_count(n);

  return std::visit(
      Overloaded{
          [&](const UniformModel& m) {
            check_enumerable(slots, n);
            const double p = 1.0 / binomial(slots, static_cast<std::uint64_t>(m.m));
            std::vector<double> masses(std::size_t{1} << slots, 0.0);
            for (std::uint64_t s = 0; s < masses.size(); ++s) {
              if (std::popcount(s) == m.m) masses[s] = p;
            }
            return Pmf::from_masses(n, PmfKind::digraph, std::move(masses));
          },
          [&](const ArdModel& m) {
            check_enumerable(slots, n);
            return Pmf::from_masses(n, PmfKind::digraph, ard_masses(slots, m.p_a));
          },
          [&](const GardModel& m) {
            check_enumerable(slots, n);
            std::vector<double> probs(slots);
            for (std::size_t s = 0; s < slots; ++s) {
              const Arc a = slot_arc(n, s);
              probs[s] = m.p[static_cast<std::size_t>(a.tail - 1)][static_cast<std::size_t>(a.head - 1)];
            }
            std::vector<double> masses;
            product_measure(probs, masses);
            return Pmf::from_masses(n, PmfKind::digraph, std::move(masses));
          },
          [&](const VardModel& m) {
            check_enumerable(slots, n);
            if (!m.kernel.is_finite()) {
              throw Unsupported("exact PMF needs a finite kernel; '" + m.kernel.name() +
                                "' is continuous (sample instead)");
            }
            return Pmf::from_masses(n, PmfKind::digraph,
                                    finite_kernel_masses(n, m.kernel.finite(), true));
          },
          [&](const ErgModel& m) { return exact_pmf(GraphModel{m}); },
          [&](const VergModel& m) { return exact_pmf(GraphModel{m}); },
          [&](const DrdModel& m) {
            check_enumerable(slots, n);
            return Pmf::from_masses(n, PmfKind::digraph,
                                    drd_masses(n, graph_masses(m.graph), m.p_d));
          },
          [&](const DerdModel& m) {
            check_enumerable(slots, n);
            const auto graph = ard_masses(edge_slot_count(n), m.p_e);
            return Pmf::from_masses(n, PmfKind::digraph, drd_masses(n, graph, m.p_d));
          },
          [&](const RnndModel& m) {
            if (!rnnd_has_exact_pmf(m)) {
              throw Unsupported("exact RNND law is known only for n = 3, k = 1");
            }
            return rnnd_exact_pmf_n3k1();
          },
      },
      model);
}

double conditional_pattern_prob(const KernelSpec& kernel, std::span<const double> points,
                                const Digraph& d) {
  const int n = d.n();
  const std::size_t dim = kernel.dim();
  if (points.size() != static_cast<std::size_t>(n) * dim) {
    throw InvalidArgument("expected " + std::to_string(n) + " points of dimension " +
                          std::to_string(dim));
  }
  auto point = [&](int i) { return points.subspan(static_cast<std::size_t>(i - 1) * dim, dim); };
  double p = 1.0;
  for (std::size_t s = 0; s < d.slot_count(); ++s) {
    const Arc a = slot_arc(n, s);
    const double phi = kernel.phi(point(a.tail), point(a.head));
    p *= d.bits().test(s) ? phi : 1.0 - phi;
  }
  return p;
}

Pmf underlying_pmf(const Pmf& digraph_pmf) {
  if (digraph_pmf.kind() != PmfKind::digraph) {
    throw InvalidArgument("underlying_pmf expects a digraph Pmf");
  }
  const int n = digraph_pmf.n();
  std::vector<Pmf::Entry> entries;
  digraph_pmf.for_each_nonzero(
      [&](std::uint64_t m, double p) { entries.emplace_back(underlying_mask(n, m), p); });
  return Pmf::from_entries(n, PmfKind::graph, std::move(entries));
}

}  // namespace randig
