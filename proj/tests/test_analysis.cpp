#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "randig/analysis.hpp"
#include "randig/error.hpp"
#include "randig/models.hpp"

using namespace randig;

namespace {

Pmf random_pmf(std::mt19937_64& rng, int n, double zero_share) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> m(std::size_t{1} << arc_slot_count(n));
  double total = 0;
  for (auto& v : m) {
    v = u(rng) < zero_share ? 0.0 : u(rng);
    total += v;
  }
  for (auto& v : m) v /= total;
  return Pmf::from_masses(n, PmfKind::digraph, m);
}

FiniteKernel random_symmetric(std::mt19937_64& rng, std::size_t atoms) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FiniteKernel k;
  double total = 0;
  for (std::size_t a = 0; a < atoms; ++a) {
    k.weights.push_back(u(rng) + 0.01);
    total += k.weights.back();
  }
  for (auto& w : k.weights) w /= total;
  k.phi.assign(atoms * atoms, 0);
  for (std::size_t a = 0; a < atoms; ++a) {
    for (std::size_t b = a; b < atoms; ++b) k.phi[a * atoms + b] = k.phi[b * atoms + a] = u(rng);
  }
  return k;
}

double event_mass(const Pmf& p, std::uint64_t need, std::uint64_t ban) {
  double s = 0;
  p.for_each_nonzero([&](std::uint64_t m, double v) {
    if ((m & need) == need && (m & ban) == 0) s += v;
  });
  return s;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("total variation examples") {
    const Pmf a = exact_pmf(ArdModel{2, 0.5});
    CHECK(total_variation(a, a) == 0.0);
    CHECK(total_variation(Pmf::point_mass(Digraph(3)), Pmf::point_mass(Digraph::from_mask(3, 5))) == 1.0);
    CHECK(total_variation(a, exact_pmf(UniformModel{2, 1})) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(total_variation(a, exact_pmf(ArdModel{3, 0.5})), InvalidArgument);
    CHECK_THROWS_AS(total_variation(exact_pmf(GraphModel{ErgModel{3, 0.5}}), exact_pmf(ArdModel{3, 0.5})), InvalidArgument);
  }

  TEST_CASE("total variation is a metric on random triples") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 50; ++t) {
      const int n = 2 + t % 3;
      const Pmf p = random_pmf(rng, n, 0.3), q = random_pmf(rng, n, 0.6), r = random_pmf(rng, n, 0.0);
      const double pq = total_variation(p, q), qp = total_variation(q, p);
      CHECK(pq == doctest::Approx(qp).epsilon(1e-15));
      CHECK(pq >= 0.0);
      CHECK(pq <= 1.0);
      CHECK(total_variation(p, p) <= 1e-12);
      CHECK(total_variation(p, r) <= pq + total_variation(q, r) + 1e-12);
    }
  }

  TEST_CASE("invariance_check") {
    CHECK(invariance_check(exact_pmf(ArdModel{3, 0.4}), 1e-12).invariant);

    const GardModel planted{3, {{0, 0.9, 0.1}, {0.1, 0, 0.1}, {0.1, 0.1, 0}}};
    const auto r = invariance_check(exact_pmf(planted), 1e-12);
    CHECK_FALSE(r.invariant);
    CHECK(r.worst_spread > 0.1);
    CHECK(r.orbit_count == 16);
    // The worst orbit is a single-arc class: {(1,2)} alone carries 0.9 of its arc.
    bool has_12 = false;
    for (const auto& [m, p] : r.worst_orbit) has_12 = has_12 || (m & 1);
    CHECK(has_12);

    std::mt19937_64 rng(32);
    const auto k = random_symmetric(rng, 3);
    FiniteKernel asym = k;
    asym.phi[1] = 0.95;
    CHECK(invariance_check(exact_pmf(VardModel{4, KernelSpec(asym)}), 1e-12).invariant);
    CHECK(invariance_check(exact_pmf(ArdModel{5, 0.3}), 1e-12).orbit_count == 9608);
    CHECK_THROWS_AS(invariance_check(exact_pmf(GraphModel{ErgModel{3, 0.3}}), 1e-12), InvalidArgument);
  }

  TEST_CASE("event probabilities") {
    const Arc a12[] = {{1, 2}};
    CHECK(event_probability(ArdModel{4, 0.3}, a12, {}, 0, 0).value == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(event_probability(ArdModel{4, 0.3}, a12, {}, 0, 0).is_exact());

    for (int n : {2, 3, 7}) {
      const auto e = event_probability(DerdModel{n, 0.45, 0.8}, a12, {}, 0, 0);
      CHECK(e.is_exact());
      CHECK(e.value == doctest::Approx(0.45 * 0.8).epsilon(1e-15));
    }

    const Arc both[] = {{1, 2}, {2, 1}};
    CHECK_THROWS_AS(event_probability(ArdModel{3, 0.3}, both, a12, 0, 0), InvalidArgument);
    const Arc loop[] = {{2, 2}};
    CHECK_THROWS_AS(event_probability(ArdModel{3, 0.3}, loop, {}, 0, 0), InvalidArgument);
    CHECK_THROWS_AS(event_probability(VardModel{3, KernelSpec(HalfLineKernel{})}, a12, {}, 0, 0), InvalidArgument);

    const Arc rev[] = {{2, 1}};
    CHECK_THROWS_AS(event_probability(ErgModel{3, 0.3}, a12, rev, 0, 0), InvalidArgument);
    CHECK(event_probability(ErgModel{3, 0.3}, rev, {}, 0, 0).value == doctest::Approx(0.3));
  }

  TEST_CASE("factorized events agree with PMF sums") {
    const std::vector<ModelSpec> models{ArdModel{3, 0.3}, DerdModel{3, 0.7, 0.65},
                                        DrdModel{ErgModel{3, 0.5}, 0.5},
                                        GardModel{3, {{0, 0.9, 0.2}, {0.1, 0, 0.4}, {0.3, 0.6, 0}}}};
    for (const auto& m : models) {
      const Pmf p = exact_pmf(m);
      for (std::uint64_t need = 0; need < 64; ++need) {
        for (std::uint64_t ban = 0; ban < 64; ban += 7) {
          if (need & ban) continue;
          std::vector<Arc> r, f;
          for (std::size_t s = 0; s < 6; ++s) {
            if ((need >> s) & 1) r.push_back(slot_arc(3, s));
            if ((ban >> s) & 1) f.push_back(slot_arc(3, s));
          }
          CHECK(std::abs(event_probability(m, r, f, 0, 0).value - event_mass(p, need, ban)) < 1e-14);
        }
      }
    }
  }

  TEST_CASE("arc events on disjoint pairs are independent in ARDs and DERDs") {
    const Arc a12[] = {{1, 2}}, a34[] = {{3, 4}}, both[] = {{1, 2}, {3, 4}};
    for (const ModelSpec& m : {ModelSpec{ArdModel{4, 0.37}}, ModelSpec{DerdModel{4, 0.52, 0.83}},
                               ModelSpec{DerdModel{6, 0.3, 0.5}}}) {
      const double p = event_probability(m, a12, {}, 0, 0).value;
      const double q = event_probability(m, a34, {}, 0, 0).value;
      CHECK(std::abs(event_probability(m, both, {}, 0, 0).value - p * q) < 1e-15);
    }
  }

  TEST_CASE("Monte Carlo events") {
    const Arc a12[] = {{1, 2}};
    const auto half = event_probability(VardModel{4, KernelSpec(HalfLineKernel{})}, a12, {}, 50000, 3);
    CHECK(half.n_samples == 50000);
    CHECK(std::abs(half.value - 0.5) <= 4 * half.std_error);

    const Arc star[] = {{1, 2}, {1, 3}};
    const auto r = event_probability(RnndModel{5, NndRule::all(2), 2}, star, {}, 100000, 4);
    CHECK(std::abs(r.value - 1.0 / 6) <= 4 * r.std_error);
  }

  TEST_CASE("derd_ard_params") {
    const auto p = derd_ard_params(0.75);
    CHECK(p.p_d == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(p.p_a == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_FALSE(p.degenerate);
    const auto small = derd_ard_params(1e-12);
    CHECK(small.p_d == doctest::Approx(0.5));
    CHECK(small.p_a == doctest::Approx(5e-13).epsilon(1e-6));
    const auto one = derd_ard_params(1.0);
    CHECK(one.p_d == 1.0);
    CHECK(one.p_a == 1.0);
    CHECK(one.degenerate);
    CHECK_THROWS_AS(derd_ard_params(0.0), InvalidArgument);
    CHECK_THROWS_AS(derd_ard_params(1.2), InvalidArgument);
  }

  TEST_CASE("DERD at p_d* is the ARD at p_a* (20 random p_e, n <= 4)") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(0.001, 0.999);
    for (int t = 0; t < 20; ++t) {
      const double p_e = u(rng);
      const auto prm = derd_ard_params(p_e);
      // Independent check of the parameter algebra: arc marginal and
      // two-way probability both match.
      CHECK(p_e * prm.p_d == doctest::Approx(prm.p_a).epsilon(1e-13));
      CHECK(p_e * (2 * prm.p_d - 1) == doctest::Approx(prm.p_a * prm.p_a).epsilon(1e-12));
      for (int n = 2; n <= 4; ++n) {
        CHECK(total_variation(exact_pmf(DerdModel{n, p_e, prm.p_d}), exact_pmf(ArdModel{n, prm.p_a})) <= 1e-12);
      }
    }
  }

  TEST_CASE("derd3_vard_kernel") {
    CHECK(derd3_vard_kernel(0.4, 0.5, 3).is_binary());
    CHECK_FALSE(derd3_vard_kernel(0.4, 0.75, 3).is_binary());
    CHECK(derd3_g(0.2, 0.9, 0.75) == 1.0);
    CHECK(derd3_g(0.9, 0.2, 0.75) == 0.5);
    CHECK(derd3_g(0.2, 0.9, 0.75) * derd3_g(0.9, 0.2, 0.75) == 2 * 0.75 - 1);
    CHECK_THROWS_AS(derd3_vard_kernel(0.4, 0.7, 4), InvalidArgument);
    CHECK_THROWS_AS(derd3_vard_kernel(1.0, 0.7, 3), InvalidArgument);
    CHECK_THROWS_AS(derd3_vard_kernel(0.4, 1.0, 3), InvalidArgument);

    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
      const double x = u(rng), y = u(rng), pd = 0.5 + 0.5 * u(rng);
      const double g = derd3_g(x, y, pd), h = derd3_g(y, x, pd);
      CHECK(g + h == doctest::Approx(2 * pd).epsilon(1e-14));
      CHECK(g * h == doctest::Approx(2 * pd - 1).epsilon(1e-14));
    }
  }

  TEST_CASE("the product-kernel VARD matches DERD on every arc event (n = 3)") {
    const std::uint64_t N = 200000;
    for (const auto& [pe, pd] : {std::pair{0.6, 0.7}, std::pair{0.3, 0.55}}) {
      const Pmf exact = exact_pmf(DerdModel{3, pe, pd});
      const Pmf mc = empirical_pmf(VardModel{3, derd3_vard_kernel(pe, pd, 3)}, N, 35);
      for (std::uint64_t need = 0; need < 64; ++need) {
        const double p = event_mass(exact, need, 0);
        const double f = event_mass(mc, need, 0);
        CHECK(std::abs(f - p) <= 4 * std::sqrt(std::max(0.0, p * (1 - p)) / N) + 1e-12);
      }
    }
  }

  TEST_CASE("g moments") {
    for (double pd : {0.5, 0.75, 0.9}) {
      const auto m = g_moment_checks(pd, 36);
      CHECK(m[0].expected == pd);
      CHECK(m[1].expected == doctest::Approx(pd * pd));
      CHECK(m[2].expected == doctest::Approx(pd * pd * pd));
      for (const auto& c : m) CHECK(c.pass);
      CHECK(std::abs(m[0].computed - pd) <= 1e-3);
    }
    const auto near_one = g_moment_checks(0.999, 37, 100000, 200);
    for (const auto& c : near_one) CHECK(c.computed == doctest::Approx(1.0).epsilon(0.01));
    CHECK_THROWS_AS(g_moment_checks(0.4, 1), InvalidArgument);
  }

  TEST_CASE("spectral cycle moment") {
    const double p = 0.6;
    FiniteKernel c;
    c.weights = {0.2, 0.3, 0.5};
    c.phi.assign(9, p * p);
    const auto r = spectral_cycle_moment(c);
    CHECK(r.eigenvalues[0] == doctest::Approx(p * p).epsilon(1e-12));
    for (std::size_t i = 1; i < r.eigenvalues.size(); ++i) CHECK(std::abs(r.eigenvalues[i]) < 1e-12);
    CHECK(r.lambda4_sum == doctest::Approx(std::pow(p, 8)).epsilon(1e-12));

    FiniteKernel two;
    two.weights = {0.5, 0.5};
    two.phi = {0.2, 0.4, 0.4, 0.8};
    CHECK(spectral_cycle_moment(two).abs_diff <= 1e-10);

    FiniteKernel rank1;
    rank1.weights = {0.1, 0.2, 0.3, 0.4};
    const double uu[] = {0.9, 0.2, 0.5, 0.7};
    double s = 0;
    for (std::size_t a = 0; a < 4; ++a) {
      s += rank1.weights[a] * uu[a] * uu[a];
      for (std::size_t b = 0; b < 4; ++b) rank1.phi.push_back(uu[a] * uu[b]);
    }
    CHECK(spectral_cycle_moment(rank1).lambda4_sum == doctest::Approx(std::pow(s, 4)).epsilon(1e-12));

    std::mt19937_64 rng(38);
    for (std::size_t atoms : {1, 5, 16, 40, 64}) {
      CHECK(spectral_cycle_moment(random_symmetric(rng, atoms)).abs_diff <= 1e-10);
    }

    FiniteKernel asym = two;
    asym.phi[1] = 0.3;
    CHECK_THROWS_AS(spectral_cycle_moment(asym), InvalidArgument);
  }

  TEST_CASE("product constancy") {
    const auto c = kernel_product_constancy(KernelSpec(ConstantKernel{0.3}), 1e-12);
    REQUIRE(c.phi_product);
    CHECK(*c.phi_product == doctest::Approx(0.09));
    CHECK(*c.complement_product == doctest::Approx(0.49));
    CHECK(*c.sum == doctest::Approx(0.6));

    const auto tv = kernel_product_constancy(KernelSpec(TwoValueKernel{0.3, 0.6}), 1e-12);
    REQUIRE(tv.phi_product);
    REQUIRE(tv.complement_product);
    REQUIRE(tv.sum);
    CHECK(std::abs(*tv.phi_product - 0.18) < 1e-12);
    CHECK(std::abs(*tv.complement_product - 0.28) < 1e-12);
    CHECK(std::abs(*tv.sum - 0.9) < 1e-12);
    CHECK(tv.discretized);

    // Ball kernel on four points of a line: 0-1 and 1-2 close, the rest far.
    FiniteKernel ball;
    ball.weights = {0.25, 0.25, 0.25, 0.25};
    ball.phi = {1, 1, 0, 0, 1, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1};
    const auto b = kernel_product_constancy(KernelSpec(ball), 1e-12);
    CHECK_FALSE(b.phi_product);
    CHECK_FALSE(b.complement_product);
    CHECK_FALSE(b.sum);
    CHECK_FALSE(b.discretized);

    // A zero-weight atom is ignored.
    FiniteKernel ghost;
    ghost.weights = {0.5, 0.5, 0.0};
    ghost.phi = {0.4, 0.4, 1, 0.4, 0.4, 1, 0, 0, 0};
    const auto g = kernel_product_constancy(KernelSpec(ghost), 1e-12);
    REQUIRE(g.phi_product);
    CHECK(*g.phi_product == doctest::Approx(0.16));
  }

  TEST_CASE("product constancy on the DERD product kernel: only the means are constant") {
    const double pe = 0.6, pd = 0.7;
    const auto r = kernel_product_constancy(derd3_vard_kernel(pe, pd, 3), 1e-12, 256);
    CHECK(r.discretized);
    // phi phi' = f (2p_d - 1) and (1-phi)(1-phi') = 1 - f vary with f.
    CHECK_FALSE(r.phi_product);
    CHECK_FALSE(r.complement_product);
    CHECK(r.mean_phi_product == doctest::Approx(pe * (2 * pd - 1)).epsilon(0.02));
    CHECK(r.mean_complement_product == doctest::Approx(1 - pe).epsilon(0.02));
    CHECK(r.mean_sum == doctest::Approx(2 * pe * pd).epsilon(0.02));
  }

  TEST_CASE("positive dependence") {
    std::mt19937_64 rng(39);
    FiniteKernel k = random_symmetric(rng, 3);
    k.phi[1] = 0.05;
    const auto v = positive_dependence_check(VardModel{3, KernelSpec(k)}, 2, 0, 0);
    CHECK(v.lhs.is_exact());
    CHECK(v.holds);

    for (int m = 2; m <= 5; ++m) {
      const auto d = positive_dependence_check(DerdModel{5, 0.4, 0.8}, m, 0, 0);
      CHECK(d.holds);
      CHECK(d.equality);
    }

    const auto r = positive_dependence_check(RnndModel{5, NndRule::all(2), 2}, 3, 100000, 40);
    CHECK_FALSE(r.holds);
    CHECK(std::abs(r.lhs.value - 1.0 / 6) <= 4 * r.lhs.std_error);
    CHECK(std::abs(r.arc.value - 0.5) <= 4 * r.arc.std_error);

    const ModelSpec circle = VardModel{3, KernelSpec(Circle38Kernel{})};
    const auto c = positive_dependence_check(circle, 3, 100000, 41);
    CHECK(c.holds);
    CHECK(c.equality);
    CHECK(std::abs(c.arc.value - 0.25) <= 4 * c.arc.std_error);
    const Arc triangle[] = {{1, 2}, {1, 3}, {2, 3}};
    CHECK(event_probability(circle, triangle, {}, 100000, 42).value == 0.0);

    CHECK_THROWS_AS(positive_dependence_check(ArdModel{3, 0.3}, 4, 0, 0), InvalidArgument);
    CHECK_THROWS_AS(positive_dependence_check(ArdModel{3, 0.3}, 1, 0, 0), InvalidArgument);
  }

  TEST_CASE("n = 2 classification") {
    const auto a = n2_classify(0.25, 0.25);
    REQUIRE(a.p_a);
    CHECK(*a.p_a == doctest::Approx(0.5));
    CHECK(a.p_e == doctest::Approx(0.75));
    CHECK(a.p_d == doctest::Approx(2.0 / 3));

    const auto b = n2_classify(0.2, 0.1);
    CHECK_FALSE(b.p_a);
    CHECK(b.p_e == doctest::Approx(0.5));
    CHECK(b.p_d == doctest::Approx(0.6));

    const auto c = n2_classify(0.0, 1.0);
    CHECK(c.degenerate);
    CHECK_FALSE(c.p_a);

    CHECK_THROWS_AS(n2_classify(0.6, 0.1), InvalidArgument);
    CHECK_THROWS_AS(n2_classify(-0.1, 0.1), InvalidArgument);
    CHECK_THROWS_AS(n2_classify(0.0, 0.0), DegenerateModel);
  }

  TEST_CASE("compare_to_exact flags impossible outcomes") {
    const Pmf exact = exact_pmf(ArdModel{2, 0.5});
    const auto ok = compare_to_exact(ArdModel{2, 0.5}, exact, 20000, 43);
    CHECK(ok.pass());
    CHECK(ok.masses.size() == 4);
    const auto bad = compare_to_exact(ArdModel{2, 0.5}, Pmf::point_mass(Digraph(2)), 1000, 43);
    CHECK_FALSE(bad.pass());
    CHECK(bad.tv > 0.5);
  }
}
