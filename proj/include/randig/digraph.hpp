#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace randig {

/// Largest n for which every digraph on [n] fits one 64-bit word (56 slots).
inline constexpr int kMaxMaskVertices = 8;
/// Largest slot count for exhaustive enumeration (2^20 states, n <= 5).
inline constexpr int kMaxEnumerationSlots = 20;

/*!
 * Fixed-length bit vector with inline storage for up to 64 bits.
 *
 * Digraphs on n <= 8 vertices never touch the heap; larger ones (kNN digraphs
 * on thousands of points) spill into a word vector.
 */
class SlotBits {
 public:
  SlotBits() = default;
  explicit SlotBits(std::size_t size);
  static SlotBits from_word(std::size_t size, std::uint64_t word);

  std::size_t size() const noexcept { return size_; }
  std::size_t word_count() const noexcept { return (size_ + 63) / 64; }
  std::uint64_t word(std::size_t w) const noexcept {
    return size_ <= 64 ? inline_ : heap_[w];
  }

  bool test(std::size_t i) const noexcept { return (word(i / 64) >> (i % 64)) & 1u; }
  void set(std::size_t i, bool value = true) noexcept;
  std::size_t count() const noexcept;

  friend bool operator==(const SlotBits&, const SlotBits&) noexcept;
  /// Orders by length, then as an unsigned integer (slot 0 least significant).
  friend std::strong_ordering operator<=>(const SlotBits&, const SlotBits&) noexcept;

 private:
  std::uint64_t& word_ref(std::size_t w) noexcept { return size_ <= 64 ? inline_ : heap_[w]; }

  std::size_t size_ = 0;
  std::uint64_t inline_ = 0;
  std::vector<std::uint64_t> heap_;
};

/// Ordered vertex pair, 1-based.
struct Arc {
  int tail;
  int head;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Unordered vertex pair, stored with u < v, 1-based.
struct Edge {
  int u;
  int v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// slot(i,j) = (i-1)(n-1) + (j-1) - [j>i]; dense over the n(n-1) ordered pairs.
constexpr std::size_t arc_slot(int n, int tail, int head) noexcept {
  return static_cast<std::size_t>((tail - 1) * (n - 1) + (head - 1) - (head > tail ? 1 : 0));
}
constexpr Arc slot_arc(int n, std::size_t slot) noexcept {
  const int tail = static_cast<int>(slot) / (n - 1) + 1;
  int head = static_cast<int>(slot) % (n - 1) + 1;
  if (head >= tail) ++head;
  return {tail, head};
}
constexpr std::size_t arc_slot_count(int n) noexcept {
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1);
}

/// Lexicographic index of {i,j}, i < j.
constexpr std::size_t edge_slot(int n, int i, int j) noexcept {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>((i - 1) * (2 * n - i) / 2 + (j - i - 1));
}
Edge slot_edge(int n, std::size_t slot);
constexpr std::size_t edge_slot_count(int n) noexcept {
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

/// Labeled simple digraph on [n]; arc (i,j) occupies bit arc_slot(n,i,j).
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n);
  static Digraph from_mask(int n, std::uint64_t mask);
  static Digraph from_arcs(int n, std::span<const Arc> arcs);

  int n() const noexcept { return n_; }
  std::size_t slot_count() const noexcept { return bits_.size(); }
  const SlotBits& bits() const noexcept { return bits_; }
  /// Bitmask as one word; requires n <= 8.
  std::uint64_t mask() const;

  bool has_arc(int tail, int head) const;
  void set_arc(int tail, int head, bool present = true);
  std::size_t arc_count() const noexcept { return bits_.count(); }
  /// Arcs in ascending slot order.
  std::vector<Arc> arcs() const;

  friend bool operator==(const Digraph&, const Digraph&) = default;
  friend std::strong_ordering operator<=>(const Digraph& a, const Digraph& b) noexcept {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  int n_ = 0;
  SlotBits bits_;
};

/// Labeled simple graph on [n]; edge {i,j} occupies bit edge_slot(n,i,j).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  static Graph from_mask(int n, std::uint64_t mask);
  static Graph from_edges(int n, std::span<const Edge> edges);

  int n() const noexcept { return n_; }
  std::size_t slot_count() const noexcept { return bits_.size(); }
  const SlotBits& bits() const noexcept { return bits_; }
  std::uint64_t mask() const;

  bool has_edge(int i, int j) const;
  void set_edge(int i, int j, bool present = true);
  std::size_t edge_count() const noexcept { return bits_.count(); }
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  SlotBits bits_;
};

struct ArcCounts {
  std::size_t n_a = 0;   // arcs
  std::size_t n_e = 0;   // edges of the underlying graph
  std::size_t n_s = 0;   // symmetric pairs {(i,j),(j,i)}
  std::size_t n_as = 0;  // arcs whose reverse is absent
  friend bool operator==(const ArcCounts&, const ArcCounts&) = default;
};

Graph underlying_graph(const Digraph& d);
ArcCounts arc_counts(const Digraph& d);

/// Relabels vertex i as sigma[i-1]. sigma must be a permutation of 1..n.
Digraph apply_permutation(const Digraph& d, std::span<const int> sigma);
Graph apply_permutation(const Graph& g, std::span<const int> sigma);

/// Bitmask-minimal relabeling over all n! permutations; n <= 8.
Digraph canonical_form(const Digraph& d);

/// Ascending-mask range over all 2^{n(n-1)} digraphs on [n], n(n-1) <= 20.
class DigraphRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Digraph;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(int n, std::uint64_t mask) : n_(n), mask_(mask) {}
    Digraph operator*() const { return Digraph::from_mask(n_, mask_); }
    iterator& operator++() { ++mask_; return *this; }
    iterator operator++(int) { auto t = *this; ++mask_; return t; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.mask_ == b.mask_; }

   private:
    int n_ = 0;
    std::uint64_t mask_ = 0;
  };

  explicit DigraphRange(int n);
  iterator begin() const { return {n_, 0}; }
  iterator end() const { return {n_, std::uint64_t{1} << arc_slot_count(n_)}; }
  std::uint64_t size() const { return std::uint64_t{1} << arc_slot_count(n_); }

 private:
  int n_;
};

DigraphRange enumerate_digraphs(int n);

// ---- mask-level kernels used by exact enumeration (n <= 8) ----

/// Underlying-graph mask of a digraph mask.
std::uint64_t underlying_mask(int n, std::uint64_t arcs);
ArcCounts arc_counts_mask(int n, std::uint64_t arcs);
std::uint64_t permute_mask(int n, std::uint64_t arcs, std::span<const int> sigma);

/*!
 * Canonical representative of every digraph mask on [n], n <= 5.
 *
 * Uses per-permutation byte lookup tables so the full 2^20 sweep at n = 5
 * stays well under a second.
 */
std::vector<std::uint64_t> canonical_mask_table(int n);

// ---- text form ----

/// `n=<k>;arcs=<hex>`; hex is the bitmask as little-endian bytes in slot order.
std::string to_string(const Digraph& d);
/// `n=<k>;edges=<hex>`.
std::string to_string(const Graph& g);
std::string bits_to_hex(const SlotBits& bits);
SlotBits hex_to_bits(std::string_view hex, std::size_t size);

/// Accepts `n=<k>;arcs=<hex>` or `n=<k>;arcs=(i,j),(k,l),...`.
Digraph parse_digraph(std::string_view text);
std::vector<Arc> parse_arc_list(std::string_view text);

}  // namespace randig
