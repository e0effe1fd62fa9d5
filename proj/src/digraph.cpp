#include "randig/digraph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <numeric>

#include "randig/error.hpp"

namespace randig {

// ---------------------------------------------------------------------------
// SlotBits

SlotBits::SlotBits(std::size_t size) : size_(size) {
  if (size_ > 64) heap_.assign(word_count(), 0);
}

SlotBits SlotBits::from_word(std::size_t size, std::uint64_t word) {
  SlotBits b(size);
  if (size < 64) word &= (std::uint64_t{1} << size) - 1;
  b.word_ref(0) = size == 0 ? 0 : word;
  return b;
}

void SlotBits::set(std::size_t i, bool value) noexcept {
  auto& w = word_ref(i / 64);
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  w = value ? (w | bit) : (w & ~bit);
}

std::size_t SlotBits::count() const noexcept {
  if (size_ <= 64) return static_cast<std::size_t>(std::popcount(inline_));
  std::size_t c = 0;
  for (auto w : heap_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool operator==(const SlotBits& a, const SlotBits& b) noexcept {
  return a.size_ == b.size_ && a.inline_ == b.inline_ && a.heap_ == b.heap_;
}

std::strong_ordering operator<=>(const SlotBits& a, const SlotBits& b) noexcept {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  for (std::size_t w = a.word_count(); w-- > 0;) {
    if (auto c = a.word(w) <=> b.word(w); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Digraph / Graph

namespace {

void check_vertex_count(int n) {
  if (n < 1) throw InvalidArgument("vertex count must be >= 1, got " + std::to_string(n));
}

void check_pair(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n) {
    throw InvalidArgument("vertex out of range [1," + std::to_string(n) + "]: (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
  }
  if (i == j) throw InvalidArgument("loops are not allowed: (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
}

}  // namespace

Edge slot_edge(int n, std::size_t slot) {
  int i = 1;
  std::size_t row = static_cast<std::size_t>(n - 1);
  while (slot >= row) {
    slot -= row;
    --row;
    ++i;
  }
  return {i, i + 1 + static_cast<int>(slot)};
}

Digraph::Digraph(int n) : n_(n) {
  check_vertex_count(n);
  bits_ = SlotBits(arc_slot_count(n));
}

Digraph Digraph::from_mask(int n, std::uint64_t mask) {
  check_vertex_count(n);
  if (n > kMaxMaskVertices) throw InvalidArgument("from_mask requires n <= 8");
  Digraph d;
  d.n_ = n;
  d.bits_ = SlotBits::from_word(arc_slot_count(n), mask);
  return d;
}

Digraph Digraph::from_arcs(int n, std::span<const Arc> arcs) {
  Digraph d(n);
  for (const auto& a : arcs) d.set_arc(a.tail, a.head);
  return d;
}

std::uint64_t Digraph::mask() const {
  if (n_ > kMaxMaskVertices) throw InvalidArgument("mask() requires n <= 8");
  return bits_.word(0);
}

bool Digraph::has_arc(int tail, int head) const {
  check_pair(n_, tail, head);
  return bits_.test(arc_slot(n_, tail, head));
}

void Digraph::set_arc(int tail, int head, bool present) {
  check_pair(n_, tail, head);
  bits_.set(arc_slot(n_, tail, head), present);
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(arc_count());
  for (std::size_t w = 0; w < bits_.word_count(); ++w) {
    for (std::uint64_t word = bits_.word(w); word != 0; word &= word - 1) {
      out.push_back(slot_arc(n_, w * 64 + static_cast<std::size_t>(std::countr_zero(word))));
    }
  }
  return out;
}

Graph::Graph(int n) : n_(n) {
  check_vertex_count(n);
  bits_ = SlotBits(edge_slot_count(n));
}

Graph Graph::from_mask(int n, std::uint64_t mask) {
  check_vertex_count(n);
  if (edge_slot_count(n) > 64) throw InvalidArgument("from_mask requires n(n-1)/2 <= 64");
  Graph g;
  g.n_ = n;
  g.bits_ = SlotBits::from_word(edge_slot_count(n), mask);
  return g;
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (const auto& e : edges) g.set_edge(e.u, e.v);
  return g;
}

std::uint64_t Graph::mask() const {
  if (bits_.size() > 64) throw InvalidArgument("mask() requires n(n-1)/2 <= 64");
  return bits_.word(0);
}

bool Graph::has_edge(int i, int j) const {
  check_pair(n_, i, j);
  return bits_.test(edge_slot(n_, i, j));
}

void Graph::set_edge(int i, int j, bool present) {
  check_pair(n_, i, j);
  bits_.set(edge_slot(n_, i, j), present);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (int i = 1; i <= n_; ++i) {
    for (int j = i + 1; j <= n_; ++j) {
      if (bits_.test(edge_slot(n_, i, j))) out.push_back({i, j});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structural operations

Graph underlying_graph(const Digraph& d) {
  const int n = d.n();
  Graph g(n);
  for (const auto& a : d.arcs()) g.set_edge(a.tail, a.head);
  return g;
}

ArcCounts arc_counts(const Digraph& d) {
  const int n = d.n();
  ArcCounts c;
  c.n_a = d.arc_count();
  for (const auto& a : d.arcs()) {
    if (a.tail < a.head && d.bits().test(arc_slot(n, a.head, a.tail))) ++c.n_s;
  }
  c.n_as = c.n_a - 2 * c.n_s;
  c.n_e = c.n_s + c.n_as;
  return c;
}

namespace {

void check_permutation(int n, std::span<const int> sigma) {
  if (static_cast<int>(sigma.size()) != n) {
    throw InvalidArgument("permutation has length " + std::to_string(sigma.size()) +
                          ", expected " + std::to_string(n));
  }
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : sigma) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw InvalidArgument("not a bijection on [" + std::to_string(n) + "]");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

}  // namespace

Digraph apply_permutation(const Digraph& d, std::span<const int> sigma) {
  check_permutation(d.n(), sigma);
  Digraph out(d.n());
  for (const auto& a : d.arcs()) {
    out.set_arc(sigma[static_cast<std::size_t>(a.tail - 1)],
                sigma[static_cast<std::size_t>(a.head - 1)]);
  }
  return out;
}

Graph apply_permutation(const Graph& g, std::span<const int> sigma) {
  check_permutation(g.n(), sigma);
  Graph out(g.n());
  for (const auto& e : g.edges()) {
    out.set_edge(sigma[static_cast<std::size_t>(e.u - 1)], sigma[static_cast<std::size_t>(e.v - 1)]);
  }
  return out;
}

std::uint64_t permute_mask(int n, std::uint64_t arcs, std::span<const int> sigma) {
  std::uint64_t out = 0;
  for (; arcs != 0; arcs &= arcs - 1) {
    const Arc a = slot_arc(n, static_cast<std::size_t>(std::countr_zero(arcs)));
    out |= std::uint64_t{1} << arc_slot(n, sigma[static_cast<std::size_t>(a.tail - 1)],
                                        sigma[static_cast<std::size_t>(a.head - 1)]);
  }
  return out;
}

Digraph canonical_form(const Digraph& d) {
  const int n = d.n();
  if (n > kMaxMaskVertices) {
    throw Unsupported("canonical_form scans all n! relabelings; n <= 8 required, got " +
                      std::to_string(n));
  }
  const std::uint64_t mask = d.mask();
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 1);
  std::uint64_t best = mask;
  do {
    best = std::min(best, permute_mask(n, mask, sigma));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return Digraph::from_mask(n, best);
}

DigraphRange::DigraphRange(int n) : n_(n) {
  check_vertex_count(n);
  if (arc_slot_count(n) > kMaxEnumerationSlots) {
    throw Unsupported("enumeration requires n(n-1) <= 20, got n = " + std::to_string(n));
  }
}

DigraphRange enumerate_digraphs(int n) { return DigraphRange(n); }

std::uint64_t underlying_mask(int n, std::uint64_t arcs) {
  std::uint64_t out = 0;
  for (; arcs != 0; arcs &= arcs - 1) {
    const Arc a = slot_arc(n, static_cast<std::size_t>(std::countr_zero(arcs)));
    out |= std::uint64_t{1} << edge_slot(n, a.tail, a.head);
  }
  return out;
}

ArcCounts arc_counts_mask(int n, std::uint64_t arcs) {
  ArcCounts c;
  c.n_a = static_cast<std::size_t>(std::popcount(arcs));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const bool ij = (arcs >> arc_slot(n, i, j)) & 1u;
      const bool ji = (arcs >> arc_slot(n, j, i)) & 1u;
      if (ij && ji) ++c.n_s;
      else if (ij || ji) ++c.n_as;
    }
  }
  c.n_e = c.n_s + c.n_as;
  return c;
}

std::vector<std::uint64_t> canonical_mask_table(int n) {
  if (n < 1 || arc_slot_count(n) > kMaxEnumerationSlots) {
    throw Unsupported("canonical_mask_table requires n(n-1) <= 20");
  }
  const std::size_t slots = arc_slot_count(n);
  const std::size_t chunks = (slots + 7) / 8;
  const std::uint64_t states = std::uint64_t{1} << slots;

  // table[p][c][byte] = image of the arcs encoded by `byte` in chunk c.
  std::vector<std::vector<std::uint64_t>> tables;
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 1);
  do {
    std::vector<std::uint64_t> t(chunks * 256);
    for (std::size_t c = 0; c < chunks; ++c) {
      for (std::uint64_t byte = 0; byte < 256; ++byte) {
        const std::uint64_t part = (byte << (8 * c)) & (states - 1);
        t[c * 256 + byte] = permute_mask(n, part, sigma);
      }
    }
    tables.push_back(std::move(t));
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  std::vector<std::uint64_t> canon(states);
  for (std::uint64_t m = 0; m < states; ++m) {
    std::uint64_t best = m;
    for (const auto& t : tables) {
      std::uint64_t img = 0;
      for (std::size_t c = 0; c < chunks; ++c) img |= t[c * 256 + ((m >> (8 * c)) & 0xffu)];
      best = std::min(best, img);
    }
    canon[m] = best;
  }
  return canon;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidArgument("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string bits_to_hex(const SlotBits& bits) {
  const std::size_t bytes = std::max<std::size_t>(1, (bits.size() + 7) / 8);
  std::string out;
  out.reserve(2 * bytes);
  for (std::size_t b = 0; b < bytes; ++b) {
    const auto byte = static_cast<unsigned>((bits.word(b / 8) >> (8 * (b % 8))) & 0xffu);
    out.push_back(kHexDigits[byte >> 4]);
    out.push_back(kHexDigits[byte & 0xfu]);
  }
  return out;
}

SlotBits hex_to_bits(std::string_view hex, std::size_t size) {
  hex = trim(hex);
  if (hex.size() % 2 != 0) throw InvalidArgument("hex bitmask must have an even number of digits");
  SlotBits bits(size);
  for (std::size_t b = 0; b < hex.size() / 2; ++b) {
    const int hi = hex_value(hex[2 * b]);
    const int lo = hex_value(hex[2 * b + 1]);
    if (hi < 0 || lo < 0) throw InvalidArgument("invalid hex digit in '" + std::string(hex) + "'");
    const unsigned byte = static_cast<unsigned>(hi * 16 + lo);
    for (unsigned k = 0; k < 8; ++k) {
      if (!((byte >> k) & 1u)) continue;
      const std::size_t slot = 8 * b + k;
      if (slot >= size) throw InvalidArgument("hex bitmask sets slot beyond n(n-1)");
      bits.set(slot);
    }
  }
  return bits;
}

std::string to_string(const Digraph& d) {
  return "n=" + std::to_string(d.n()) + ";arcs=" + bits_to_hex(d.bits());
}

std::string to_string(const Graph& g) {
  return "n=" + std::to_string(g.n()) + ";edges=" + bits_to_hex(g.bits());
}

std::vector<Arc> parse_arc_list(std::string_view text) {
  std::vector<Arc> arcs;
  text = trim(text);
  while (!text.empty()) {
    if (text.front() != '(') throw InvalidArgument("expected '(' in arc list");
    const auto close = text.find(')');
    const auto comma = text.find(',');
    if (close == std::string_view::npos || comma == std::string_view::npos || comma > close) {
      throw InvalidArgument("malformed arc in arc list");
    }
    arcs.push_back({parse_int(text.substr(1, comma - 1), "arc tail"),
                    parse_int(text.substr(comma + 1, close - comma - 1), "arc head")});
    text = trim(text.substr(close + 1));
    if (!text.empty()) {
      if (text.front() != ',') throw InvalidArgument("expected ',' between arcs");
      text = trim(text.substr(1));
    }
  }
  return arcs;
}

Digraph parse_digraph(std::string_view text) {
  text = trim(text);
  const auto semi = text.find(';');
  if (text.substr(0, 2) != "n=" || semi == std::string_view::npos) {
    throw InvalidArgument("expected 'n=<k>;arcs=...', got '" + std::string(text) + "'");
  }
  const int n = parse_int(text.substr(2, semi - 2), "vertex count");
  check_vertex_count(n);
  auto rest = trim(text.substr(semi + 1));
  if (rest.substr(0, 5) != "arcs=") throw InvalidArgument("expected 'arcs=' after vertex count");
  rest = trim(rest.substr(5));

  if (!rest.empty() && rest.front() == '(') {
    const auto arcs = parse_arc_list(rest);
    return Digraph::from_arcs(n, arcs);
  }
  Digraph d(n);
  const SlotBits bits = hex_to_bits(rest, d.slot_count());
  for (std::size_t s = 0; s < bits.size(); ++s) {
    if (bits.test(s)) {
      const Arc a = slot_arc(n, s);
      d.set_arc(a.tail, a.head);
    }
  }
  return d;
}

}  // namespace randig
