#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "randig/random.hpp"

namespace randig {

class KernelSpec;

/// Atoms 0..k-1 with probabilities `weights` and a k x k row-major table of
/// arc probabilities phi(a, b). A sample point is the atom index.
struct FiniteKernel {
  std::vector<double> weights;
  std::vector<double> phi;  // row-major, size k*k
  std::vector<std::string> labels;  // optional, informational only

  std::size_t atoms() const noexcept { return weights.size(); }
  double at(std::size_t a, std::size_t b) const noexcept { return phi[a * weights.size() + b]; }
};

// Built-in catalog. Unless noted, mu is uniform on [0,1).

/// phi(x,y) = 1{x <= y}: the proximity-catch digraph with N(x) = [x, inf).
struct HalfLineKernel {};
/// phi(x,y) = 1{|x-y|_2 <= r}; mu uniform on [0,1]^dim.
struct BallKernel {
  double r = 0.0;
  int dim = 1;
};
/// psi(x,y) = a 1{x <= y} + b 1{y < x}.
struct TwoValueKernel {
  double a = 0.0;
  double b = 0.0;
};
/// phi(x,y) = 1{x (-) y >= 3/8} 1{y (-) x >= 3/8}, (-) subtraction mod 1.
struct Circle38Kernel {};
/// Omega = [0,1)^2; phi((u,u'),(v,v')) = f(u,v) g(u',v') with
/// f = 1{u (+) v <= p_e}, g = 1{u' (-) v' <= 1/2} + (2p_d - 1) 1{u' (-) v' > 1/2}.
struct Derd3ProductKernel {
  double p_e = 0.0;
  double p_d = 0.5;
};
/// Omega = 2^[m] x 2^[m]; each element joins S and T independently w.p. q;
/// phi((S,T),(S',T')) = 1{S cap T' nonempty}.
struct IntersectionKernel {
  int m = 1;
  double q = 0.5;
};
struct ConstantKernel {
  double p = 0.0;
};
/// phi_u(x,y) = phi(x,y) + phi(y,x) - phi(x,y) phi(y,x) over a base kernel.
struct UnionKernel {
  std::shared_ptr<const KernelSpec> base;
};

double add_mod1(double x, double y) noexcept;
double sub_mod1(double x, double y) noexcept;

/// The g factor of Derd3ProductKernel.
double derd3_g(double x, double y, double p_d) noexcept;

/*!
 * Sample space plus arc-probability function phi.
 *
 * Points of Omega are flattened into `dim()` doubles so that tuples of
 * vertex labels are contiguous spans.
 */
class KernelSpec {
 public:
  using Variant = std::variant<FiniteKernel, HalfLineKernel, BallKernel, TwoValueKernel,
                               Circle38Kernel, Derd3ProductKernel, IntersectionKernel,
                               ConstantKernel, UnionKernel>;

  KernelSpec() : v_(ConstantKernel{}) {}
  template <typename T>
    requires std::is_constructible_v<Variant, T>
  KernelSpec(T kernel) : v_(std::move(kernel)) {  // NOLINT(google-explicit-constructor)
    validate();
  }

  const Variant& variant() const noexcept { return v_; }
  std::string name() const;

  std::size_t dim() const;
  double phi(std::span<const double> x, std::span<const double> y) const;
  void sample_point(Stream& stream, std::span<double> out) const;

  bool is_finite() const noexcept { return std::holds_alternative<FiniteKernel>(v_); }
  const FiniteKernel& finite() const;
  /// Range within {0,1}: the model is then a VRD/VRG rather than a VARD/VERG.
  bool is_binary() const;
  /// phi(x,y) = phi(y,x) everywhere, decided structurally (tables within 1e-12).
  bool is_symmetric() const;

  /// phi_u; returns *this unchanged when the kernel is already symmetric and binary.
  KernelSpec symmetrized() const;

 private:
  void validate() const;
  Variant v_;
};

}  // namespace randig
