#include "randig/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "randig/error.hpp"

namespace randig {

std::string_view to_string(Norm norm) {
  switch (norm) {
    case Norm::l1: return "l1";
    case Norm::l2: return "l2";
    case Norm::linf: return "linf";
  }
  return "l2";
}

std::string_view to_string(PointDistribution dist) {
  switch (dist) {
    case PointDistribution::uniform_cube: return "uniform";
    case PointDistribution::standard_normal: return "normal";
  }
  return "uniform";
}

Norm parse_norm(std::string_view text) {
  if (text == "l1" || text == "L1") return Norm::l1;
  if (text == "l2" || text == "L2") return Norm::l2;
  if (text == "linf" || text == "Linf" || text == "LINF") return Norm::linf;
  throw InvalidArgument("unknown norm '" + std::string(text) + "' (expected l1, l2, linf)");
}

PointDistribution parse_point_distribution(std::string_view text) {
  if (text == "uniform" || text == "uniform_cube") return PointDistribution::uniform_cube;
  if (text == "normal" || text == "standard_normal") return PointDistribution::standard_normal;
  throw InvalidArgument("unknown point distribution '" + std::string(text) +
                        "' (expected uniform, normal)");
}

NndRule NndRule::all(int k) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  NndRule r;
  r.k_ = k;
  r.all_ = true;
  r.ranks_.resize(static_cast<std::size_t>(k));
  for (int s = 1; s <= k; ++s) r.ranks_[static_cast<std::size_t>(s - 1)] = s;
  return r;
}

NndRule NndRule::subset(std::vector<int> ranks, int k) {
  if (ranks.empty()) throw InvalidArgument("S_k must be nonempty");
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  if (ranks.front() < 1) throw InvalidArgument("neighbor ranks are 1-based");
  if (k == 0) k = ranks.back();
  if (ranks.back() > k) throw InvalidArgument("S_k must be a subset of [k]");
  NndRule r;
  r.k_ = k;
  r.all_ = static_cast<int>(ranks.size()) == k;
  r.ranks_ = std::move(ranks);
  return r;
}

void NndRule::check_for(int n) const {
  if (n < 3) throw InvalidArgument("nearest-neighbor digraphs need n >= 3");
  if (!(k_ < n - 1)) {
    throw InvalidArgument("k must satisfy k < n-1 (k=" + std::to_string(k_) +
                          ", n=" + std::to_string(n) + ")");
  }
}

PointCloud::PointCloud(int n, int d, std::vector<double> coords, Norm norm)
    : n_(n), d_(d), coords_(std::move(coords)), norm_(norm) {
  if (n < 1 || d < 1) throw InvalidArgument("point cloud needs n >= 1 and d >= 1");
  if (coords_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(d)) {
    throw InvalidArgument("point cloud coordinate count does not match n*d");
  }
  for (double v : coords_) {
    if (!std::isfinite(v)) throw InvalidArgument("point coordinates must be finite");
  }
}

double PointCloud::distance(int i, int j) const {
  const auto a = point(i);
  const auto b = point(j);
  double acc = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = std::abs(a[c] - b[c]);
    switch (norm_) {
      case Norm::l1: acc += diff; break;
      case Norm::l2: acc += diff * diff; break;
      case Norm::linf: acc = std::max(acc, diff); break;
    }
  }
  // Squared L2 preserves the neighbor order; skip the sqrt.
  return acc;
}

std::string point_cloud_to_csv(const PointCloud& cloud) {
  std::ostringstream os;
  os.precision(17);
  for (int i = 0; i < cloud.n(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (c) os << ',';
      os << p[c];
    }
    os << '\n';
  }
  return os.str();
}

PointCloud point_cloud_from_csv(std::string_view text, Norm norm) {
  std::vector<double> coords;
  int n = 0;
  int d = -1;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string cell;
    int cols = 0;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        coords.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw InvalidArgument("non-numeric coordinate '" + cell + "'");
      }
      ++cols;
    }
    if (d < 0) d = cols;
    if (cols != d) throw InvalidArgument("ragged point cloud CSV");
    ++n;
  }
  if (n == 0) throw InvalidArgument("empty point cloud CSV");
  return PointCloud(n, d, std::move(coords), norm);
}

}  // namespace randig
