#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "randig/digraph.hpp"

namespace randig {

enum class PmfKind { digraph, graph };

/// Dense storage up to this many slots (4096 states); sparse above.
inline constexpr std::size_t kDenseSlotLimit = 12;

/*!
 * Exact (or empirical) probability mass function over all digraphs or all
 * graphs on [n], keyed by slot bitmask. Requires at most 63 slots.
 *
 * Construction enforces masses in [0,1] and a total within 1e-9 of 1.
 */
class Pmf {
 public:
  using Entry = std::pair<std::uint64_t, double>;

  /// `masses[mask]` for every mask; stored dense or sparse by the slot cutoff.
  static Pmf from_masses(int n, PmfKind kind, std::vector<double> masses);
  /// Nonzero entries in any order; duplicate masks are summed.
  static Pmf from_entries(int n, PmfKind kind, std::vector<Entry> entries);
  static Pmf point_mass(const Digraph& d);
  static Pmf point_mass(const Graph& g);

  int n() const noexcept { return n_; }
  PmfKind kind() const noexcept { return kind_; }
  std::size_t slot_count() const noexcept { return slots_; }
  std::uint64_t state_count() const noexcept { return std::uint64_t{1} << slots_; }
  bool is_dense() const noexcept { return !dense_.empty(); }

  double mass(std::uint64_t mask) const;
  double mass(const Digraph& d) const;
  double mass(const Graph& g) const;
  double operator[](std::uint64_t mask) const { return mass(mask); }

  /// Calls f(mask, p) for every mask with p > 0, ascending.
  template <typename F>
  void for_each_nonzero(F&& f) const {
    if (is_dense()) {
      for (std::uint64_t m = 0; m < dense_.size(); ++m) {
        if (dense_[m] > 0.0) f(m, dense_[m]);
      }
    } else {
      for (const auto& [m, p] : sparse_) f(m, p);
    }
  }

  std::size_t support_size() const;
  double total() const;
  /// Shannon entropy in bits.
  double entropy_bits() const;

 private:
  Pmf(int n, PmfKind kind);
  void check_masses() const;

  int n_ = 0;
  PmfKind kind_ = PmfKind::digraph;
  std::size_t slots_ = 0;
  std::vector<double> dense_;
  std::vector<Entry> sparse_;  // sorted by mask, p > 0
};

}  // namespace randig
