#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rcdyn {

// A random-cluster configuration: bit e is 1 iff edge e is open.
class RcConfig {
 public:
  RcConfig() = default;
  explicit RcConfig(int edge_count, bool open = false);

  static RcConfig all_open(int edge_count) { return RcConfig(edge_count, true); }
  static RcConfig from_mask(int edge_count, std::uint64_t mask);

  int edge_count() const { return m_; }
  bool open(int e) const {
    return (words_[e >> 6] >> (e & 63)) & 1ULL;
  }
  void set(int e, bool open_state) {
    const std::uint64_t bit = 1ULL << (e & 63);
    if (open_state)
      words_[e >> 6] |= bit;
    else
      words_[e >> 6] &= ~bit;
  }
  void toggle(int e) { words_[e >> 6] ^= 1ULL << (e & 63); }

  int open_count() const;
  std::uint64_t low_mask() const { return words_.empty() ? 0 : words_[0]; }

  bool operator==(const RcConfig& o) const = default;
  bool subset_of(const RcConfig& o) const;
  int hamming_distance(const RcConfig& o) const;

  // Serialization contract: "<n_bits>:<hex>", hex digit j encodes edges
  // 4j..4j+3 with edge 4j in the most significant bit of the nibble.
  std::string to_hex() const;
  static RcConfig from_hex(const std::string& text);

 private:
  int m_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace rcdyn
