#pragma once

#include <cstdint>
#include <string_view>

namespace randig {

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// FNV-1a over the tag bytes; stream tags are hashed once at compile time
/// wherever they are literals.
constexpr std::uint64_t tag_hash(std::string_view tag) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

/*!
 * Counter-based random stream.
 *
 * A stream is identified by a 64-bit key; output k is mix64(key + k * gamma),
 * so any draw is a pure function of (key, k). Keys are derived from a parent
 * seed plus a (tag, index) name, which makes every vertex draw, arc decision
 * and Monte Carlo replicate independent of evaluation order and thread count.
 */
class Stream {
 public:
  explicit constexpr Stream(std::uint64_t key) noexcept : key_(key) {}

  static constexpr Stream derive(std::uint64_t seed, std::uint64_t tag,
                                 std::uint64_t index) noexcept {
    return Stream(derive_key(seed, tag, index));
  }
  static constexpr Stream derive(std::uint64_t seed, std::string_view tag,
                                 std::uint64_t index) noexcept {
    return derive(seed, tag_hash(tag), index);
  }

  static constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t tag,
                                            std::uint64_t index) noexcept {
    return mix64(seed ^ mix64(tag ^ mix64(index + kGamma)));
  }

  constexpr Stream split(std::string_view tag, std::uint64_t index) const noexcept {
    return derive(key_, tag, index);
  }

  constexpr std::uint64_t key() const noexcept { return key_; }

  constexpr std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound) by Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Standard normal via Box-Muller; consumes two uniforms per call.
  double normal() noexcept;

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

namespace tags {
inline constexpr std::uint64_t kVertex = tag_hash("vertex");
inline constexpr std::uint64_t kArc = tag_hash("arc");
inline constexpr std::uint64_t kEdge = tag_hash("edge");
inline constexpr std::uint64_t kOrient = tag_hash("orient");
inline constexpr std::uint64_t kUniform = tag_hash("uniform");
inline constexpr std::uint64_t kSample = tag_hash("sample");
}  // namespace tags

}  // namespace randig
