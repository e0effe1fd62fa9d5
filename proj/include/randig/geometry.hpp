#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace randig {

enum class Norm { l1, l2, linf };
enum class PointDistribution { uniform_cube, standard_normal };

std::string_view to_string(Norm norm);
std::string_view to_string(PointDistribution dist);
Norm parse_norm(std::string_view text);
PointDistribution parse_point_distribution(std::string_view text);

/// Which neighbor ranks receive an arc: all of 1..k, or the ranks in S_k.
class NndRule {
 public:
  static NndRule all(int k);
  /// `ranks` is a nonempty subset of [k]; k defaults to max(ranks).
  static NndRule subset(std::vector<int> ranks, int k = 0);

  int k() const noexcept { return k_; }
  bool is_all() const noexcept { return all_; }
  /// Selected ranks, ascending, 1-based.
  const std::vector<int>& ranks() const noexcept { return ranks_; }
  /// Out-degree of every vertex under this rule.
  int out_degree() const noexcept { return static_cast<int>(ranks_.size()); }

  /// Throws unless k < n - 1.
  void check_for(int n) const;

  friend bool operator==(const NndRule&, const NndRule&) = default;

 private:
  int k_ = 1;
  bool all_ = true;
  std::vector<int> ranks_{1};
};

/// n points in R^d, row-major.
class PointCloud {
 public:
  PointCloud(int n, int d, std::vector<double> coords, Norm norm);

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  Norm norm() const noexcept { return norm_; }
  std::span<const double> point(int i) const {
    return {coords_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(d_),
            static_cast<std::size_t>(d_)};
  }
  const std::vector<double>& coords() const noexcept { return coords_; }
  double distance(int i, int j) const;

 private:
  int n_;
  int d_;
  std::vector<double> coords_;
  Norm norm_;
};

std::string point_cloud_to_csv(const PointCloud& cloud);
PointCloud point_cloud_from_csv(std::string_view text, Norm norm);

}  // namespace randig
