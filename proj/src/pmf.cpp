#include "randig/pmf.hpp"

#include <algorithm>
#include <cmath>

#include "randig/error.hpp"

namespace randig {

Pmf::Pmf(int n, PmfKind kind) : n_(n), kind_(kind) {
  if (n < 1) throw InvalidArgument("Pmf needs n >= 1");
  slots_ = kind == PmfKind::digraph ? arc_slot_count(n) : edge_slot_count(n);
  if (slots_ > 63) throw Unsupported("Pmf supports at most 63 slots");
}

Pmf Pmf::from_masses(int n, PmfKind kind, std::vector<double> masses) {
  Pmf p(n, kind);
  if (masses.size() != p.state_count()) {
    throw InvalidArgument("mass vector must have 2^slots entries");
  }
  if (p.slots_ <= kDenseSlotLimit) {
    p.dense_ = std::move(masses);
  } else {
    for (std::uint64_t m = 0; m < masses.size(); ++m) {
      if (masses[m] != 0.0) p.sparse_.emplace_back(m, masses[m]);
    }
  }
  p.check_masses();
  return p;
}

Pmf Pmf::from_entries(int n, PmfKind kind, std::vector<Entry> entries) {
  Pmf p(n, kind);
  std::sort(entries.begin(), entries.end());
  std::vector<Entry> merged;
  for (const auto& [m, v] : entries) {
    if (m >= p.state_count()) throw InvalidArgument("mask outside the state space");
    if (!merged.empty() && merged.back().first == m) {
      merged.back().second += v;
    } else {
      merged.emplace_back(m, v);
    }
  }
  std::erase_if(merged, [](const Entry& e) { return e.second == 0.0; });
  if (p.slots_ <= kDenseSlotLimit) {
    p.dense_.assign(p.state_count(), 0.0);
    for (const auto& [m, v] : merged) p.dense_[m] = v;
  } else {
    p.sparse_ = std::move(merged);
  }
  p.check_masses();
  return p;
}

Pmf Pmf::point_mass(const Digraph& d) {
  return from_entries(d.n(), PmfKind::digraph, {{d.mask(), 1.0}});
}

Pmf Pmf::point_mass(const Graph& g) {
  return from_entries(g.n(), PmfKind::graph, {{g.mask(), 1.0}});
}

void Pmf::check_masses() const {
  double sum = 0.0;
  bool ok = true;
  for_each_nonzero([&](std::uint64_t, double v) {
    if (!(v >= 0.0 && v <= 1.0 + 1e-12)) ok = false;
    sum += v;
  });
  if (is_dense()) {
    for (double v : dense_) {
      if (v < 0.0 || std::isnan(v)) ok = false;
    }
  }
  if (!ok) throw InvalidArgument("probability masses must lie in [0,1]");
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidArgument("probability masses sum to " + std::to_string(sum) + ", not 1");
  }
}

double Pmf::mass(std::uint64_t mask) const {
  if (mask >= state_count()) return 0.0;
  if (is_dense()) return dense_[mask];
  auto it = std::lower_bound(sparse_.begin(), sparse_.end(), Entry{mask, 0.0},
                             [](const Entry& a, const Entry& b) { return a.first < b.first; });
  return (it != sparse_.end() && it->first == mask) ? it->second : 0.0;
}

double Pmf::mass(const Digraph& d) const {
  if (kind_ != PmfKind::digraph || d.n() != n_) {
    throw InvalidArgument("digraph does not belong to this Pmf's state space");
  }
  return mass(d.mask());
}

double Pmf::mass(const Graph& g) const {
  if (kind_ != PmfKind::graph || g.n() != n_) {
    throw InvalidArgument("graph does not belong to this Pmf's state space");
  }
  return mass(g.mask());
}

std::size_t Pmf::support_size() const {
  std::size_t c = 0;
  for_each_nonzero([&](std::uint64_t, double) { ++c; });
  return c;
}

double Pmf::total() const {
  double s = 0.0;
  for_each_nonzero([&](std::uint64_t, double v) { s += v; });
  return s;
}

double Pmf::entropy_bits() const {
  double h = 0.0;
  for_each_nonzero([&](std::uint64_t, double v) { h -= v * std::log2(v); });
  return h;
}

}  // namespace randig
