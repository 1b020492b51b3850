#include "rcdyn/config.hpp"

#include <bit>
#include <stdexcept>

namespace rcdyn {

RcConfig::RcConfig(int edge_count, bool open) : m_(edge_count) {
  if (edge_count < 0) throw std::invalid_argument("negative edge count");
  words_.assign((edge_count + 63) / 64, open ? ~0ULL : 0ULL);
  if (open && edge_count % 64 != 0)
    words_.back() = (1ULL << (edge_count % 64)) - 1;
}

RcConfig RcConfig::from_mask(int edge_count, std::uint64_t mask) {
  RcConfig c(edge_count);
  if (!c.words_.empty()) c.words_[0] = mask;
  for (std::size_t i = 1; i < c.words_.size(); ++i) c.words_[i] = 0;
  return c;
}

int RcConfig::open_count() const {
  int total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

bool RcConfig::subset_of(const RcConfig& o) const {
  if (m_ != o.m_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

int RcConfig::hamming_distance(const RcConfig& o) const {
  int d = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    d += std::popcount(words_[i] ^ o.words_[i]);
  return d;
}

std::string RcConfig::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out = std::to_string(m_) + ":";
  for (int base = 0; base < m_; base += 4) {
    int nib = 0;
    for (int k = 0; k < 4 && base + k < m_; ++k)
      if (open(base + k)) nib |= 8 >> k;
    out += digits[nib];
  }
  return out;
}

RcConfig RcConfig::from_hex(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
  const int m = std::stoi(text.substr(0, colon));
  const std::string hex = text.substr(colon + 1);
  if (static_cast<int>(hex.size()) != (m + 3) / 4)
    throw std::invalid_argument("hex length mismatch");
  RcConfig c(m);
  for (int base = 0; base < m; base += 4) {
    const char ch = hex[base / 4];
    int nib;
    if (ch >= '0' && ch <= '9')
      nib = ch - '0';
    else if (ch >= 'a' && ch <= 'f')
      nib = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F')
      nib = ch - 'A' + 10;
    else
      throw std::invalid_argument("bad hex digit");
    for (int k = 0; k < 4 && base + k < m; ++k)
      c.set(base + k, (nib >> (3 - k)) & 1);
  }
  return c;
}

}  // namespace rcdyn
