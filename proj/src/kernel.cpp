#include "randig/kernel.hpp"

#include <cmath>
#include <cstdint>
#include <type_traits>

#include "randig/error.hpp"

namespace randig {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument(std::string(what) + " must lie in [0,1], got " + std::to_string(p));
  }
}

bool is_zero_or_one(double v) { return v == 0.0 || v == 1.0; }

std::uint64_t as_set(double v) { return static_cast<std::uint64_t>(v); }

}  // namespace

double add_mod1(double x, double y) noexcept {
  const double s = x + y;
  return s < 1.0 ? s : s - 1.0;
}

double sub_mod1(double x, double y) noexcept {
  const double d = x - y;
  return d >= 0.0 ? d : d + 1.0;
}

double derd3_g(double x, double y, double p_d) noexcept {
  return sub_mod1(x, y) <= 0.5 ? 1.0 : 2.0 * p_d - 1.0;
}

void KernelSpec::validate() const {
  std::visit(
      Overloaded{
          [](const FiniteKernel& k) {
            const std::size_t a = k.atoms();
            if (a == 0) throw InvalidArgument("finite kernel needs at least one atom");
            if (k.phi.size() != a * a) {
              throw InvalidArgument("finite kernel phi must be " + std::to_string(a) + "x" +
                                    std::to_string(a));
            }
            if (!k.labels.empty() && k.labels.size() != a) {
              throw InvalidArgument("finite kernel labels must match the atom count");
            }
            double total = 0.0;
            for (double w : k.weights) {
              if (!(w >= 0.0)) throw InvalidArgument("finite kernel weights must be nonnegative");
              total += w;
            }
            if (std::abs(total - 1.0) > 1e-12) {
              throw InvalidArgument("finite kernel weights must sum to 1, got " +
                                    std::to_string(total));
            }
            for (double v : k.phi) check_probability(v, "kernel value");
          },
          [](const HalfLineKernel&) {},
          [](const BallKernel& k) {
            if (!(k.r > 0.0)) throw InvalidArgument("ball radius must be positive");
            if (k.dim < 1) throw InvalidArgument("ball dimension must be >= 1");
          },
          [](const TwoValueKernel& k) {
            check_probability(k.a, "two_value a");
            check_probability(k.b, "two_value b");
          },
          [](const Circle38Kernel&) {},
          [](const Derd3ProductKernel& k) {
            check_probability(k.p_e, "p_e");
            if (!(k.p_d >= 0.5 && k.p_d <= 1.0)) {
              throw InvalidArgument("p_d must lie in [1/2,1], got " + std::to_string(k.p_d));
            }
          },
          [](const IntersectionKernel& k) {
            if (k.m < 1 || k.m > 32) throw InvalidArgument("intersection ground set size must be in [1,32]");
            check_probability(k.q, "intersection q");
          },
          [](const ConstantKernel& k) { check_probability(k.p, "constant kernel p"); },
          [](const UnionKernel& k) {
            if (!k.base) throw InvalidArgument("union kernel needs a base kernel");
          },
      },
      v_);
}

std::string KernelSpec::name() const {
  return std::visit(Overloaded{
                        [](const FiniteKernel&) { return std::string("finite"); },
                        [](const HalfLineKernel&) { return std::string("half_line"); },
                        [](const BallKernel&) { return std::string("ball"); },
                        [](const TwoValueKernel&) { return std::string("two_value"); },
                        [](const Circle38Kernel&) { return std::string("circle38"); },
                        [](const Derd3ProductKernel&) { return std::string("derd3_product"); },
                        [](const IntersectionKernel&) { return std::string("intersection"); },
                        [](const ConstantKernel&) { return std::string("constant"); },
                        [](const UnionKernel&) { return std::string("union"); },
                    },
                    v_);
}

std::size_t KernelSpec::dim() const {
  return std::visit(Overloaded{
                        [](const FiniteKernel&) -> std::size_t { return 1; },
                        [](const HalfLineKernel&) -> std::size_t { return 1; },
                        [](const BallKernel& k) -> std::size_t { return static_cast<std::size_t>(k.dim); },
                        [](const TwoValueKernel&) -> std::size_t { return 1; },
                        [](const Circle38Kernel&) -> std::size_t { return 1; },
                        [](const Derd3ProductKernel&) -> std::size_t { return 2; },
                        [](const IntersectionKernel&) -> std::size_t { return 2; },
                        [](const ConstantKernel&) -> std::size_t { return 0; },
                        [](const UnionKernel& k) -> std::size_t { return k.base->dim(); },
                    },
                    v_);
}

double KernelSpec::phi(std::span<const double> x, std::span<const double> y) const {
  return std::visit(
      Overloaded{
          [&](const FiniteKernel& k) {
            const auto a = static_cast<std::size_t>(x[0]);
            const auto b = static_cast<std::size_t>(y[0]);
            if (a >= k.atoms() || b >= k.atoms() || x[0] != std::floor(x[0]) ||
                y[0] != std::floor(y[0]) || x[0] < 0 || y[0] < 0) {
              throw InvalidArgument("point outside the finite kernel's atoms");
            }
            return k.at(a, b);
          },
          [&](const HalfLineKernel&) { return x[0] <= y[0] ? 1.0 : 0.0; },
          [&](const BallKernel& k) {
            double s = 0.0;
            for (int i = 0; i < k.dim; ++i) {
              const double d = x[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)];
              s += d * d;
            }
            return s <= k.r * k.r ? 1.0 : 0.0;
          },
          [&](const TwoValueKernel& k) { return x[0] <= y[0] ? k.a : k.b; },
          [&](const Circle38Kernel&) {
            return (sub_mod1(x[0], y[0]) >= 0.375 && sub_mod1(y[0], x[0]) >= 0.375) ? 1.0 : 0.0;
          },
          [&](const Derd3ProductKernel& k) {
            const double f = add_mod1(x[0], y[0]) <= k.p_e ? 1.0 : 0.0;
            return f * derd3_g(x[1], y[1], k.p_d);
          },
          [&](const IntersectionKernel&) {
            return (as_set(x[0]) & as_set(y[1])) != 0 ? 1.0 : 0.0;
          },
          [&](const ConstantKernel& k) { return k.p; },
          [&](const UnionKernel& k) {
            const double a = k.base->phi(x, y);
            const double b = k.base->phi(y, x);
            return a + b - a * b;
          },
      },
      v_);
}

void KernelSpec::sample_point(Stream& stream, std::span<double> out) const {
  std::visit(Overloaded{
                 [&](const FiniteKernel& k) {
                   const double u = stream.uniform();
                   double acc = 0.0;
                   std::size_t atom = k.atoms() - 1;
                   for (std::size_t a = 0; a < k.atoms(); ++a) {
                     acc += k.weights[a];
                     if (u < acc) {
                       atom = a;
                       break;
                     }
                   }
                   // Never land on a zero-weight trailing atom through rounding.
                   while (k.weights[atom] == 0.0 && atom > 0) --atom;
                   out[0] = static_cast<double>(atom);
                 },
                 [&](const IntersectionKernel& k) {
                   std::uint64_t s = 0;
                   std::uint64_t t = 0;
                   for (int e = 0; e < k.m; ++e) {
                     if (stream.uniform() < k.q) s |= std::uint64_t{1} << e;
                     if (stream.uniform() < k.q) t |= std::uint64_t{1} << e;
                   }
                   out[0] = static_cast<double>(s);
                   out[1] = static_cast<double>(t);
                 },
                 [&](const ConstantKernel&) {},
                 [&](const UnionKernel& k) { k.base->sample_point(stream, out); },
                 [&](const auto&) {
                   for (auto& v : out) v = stream.uniform();
                 },
             },
             v_);
}

const FiniteKernel& KernelSpec::finite() const {
  if (const auto* k = std::get_if<FiniteKernel>(&v_)) return *k;
  throw Unsupported("kernel '" + name() + "' is not finite");
}

bool KernelSpec::is_binary() const {
  return std::visit(Overloaded{
                        [](const FiniteKernel& k) {
                          for (double v : k.phi) {
                            if (!is_zero_or_one(v)) return false;
                          }
                          return true;
                        },
                        [](const TwoValueKernel& k) { return is_zero_or_one(k.a) && is_zero_or_one(k.b); },
                        [](const Derd3ProductKernel& k) { return is_zero_or_one(2.0 * k.p_d - 1.0); },
                        [](const ConstantKernel& k) { return is_zero_or_one(k.p); },
                        [](const UnionKernel& k) { return k.base->is_binary(); },
                        [](const auto&) { return true; },
                    },
                    v_);
}

bool KernelSpec::is_symmetric() const {
  return std::visit(Overloaded{
                        [](const FiniteKernel& k) {
                          for (std::size_t a = 0; a < k.atoms(); ++a) {
                            for (std::size_t b = a + 1; b < k.atoms(); ++b) {
                              if (std::abs(k.at(a, b) - k.at(b, a)) > 1e-12) return false;
                            }
                          }
                          return true;
                        },
                        [](const BallKernel&) { return true; },
                        [](const Circle38Kernel&) { return true; },
                        [](const ConstantKernel&) { return true; },
                        [](const UnionKernel&) { return true; },
                        [](const TwoValueKernel& k) { return k.a == k.b; },
                        [](const auto&) { return false; },
                    },
                    v_);
}

KernelSpec KernelSpec::symmetrized() const {
  if (is_symmetric() && is_binary()) return *this;
  if (const auto* c = std::get_if<ConstantKernel>(&v_)) {
    return ConstantKernel{2.0 * c->p - c->p * c->p};
  }
  if (const auto* f = std::get_if<FiniteKernel>(&v_)) {
    FiniteKernel u = *f;
    for (std::size_t a = 0; a < f->atoms(); ++a) {
      for (std::size_t b = 0; b < f->atoms(); ++b) {
        const double x = f->at(a, b);
        const double y = f->at(b, a);
        u.phi[a * f->atoms() + b] = x + y - x * y;
      }
    }
    return u;
  }
  return UnionKernel{std::make_shared<const KernelSpec>(*this)};
}

}  // namespace randig
