#pragma once

#include <cstdint>

namespace rcdyn {

// Counter-mode generator: every output is a pure function of (key, counter,
// stream), so draw sequences can be replayed from any index without storing
// history. Used for the identity coupling and for coupling-from-the-past,
// where the draw at absolute time -t must be regenerated on every pass.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t key() const { return key_; }

  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
    return mix(a ^ (mix(b) + 0x9e3779b97f4a7c15ULL));
  }

  std::uint64_t bits(std::uint64_t counter, std::uint64_t stream = 0) const {
    return mix(combine(key_, stream) ^ (counter * 0xd1b54a32d192ed03ULL));
  }

  // uniform in [0,1), 53-bit resolution
  double uniform(std::uint64_t counter, std::uint64_t stream = 0) const {
    return static_cast<double>(bits(counter, stream) >> 11) * 0x1.0p-53;
  }

  // uniform in {0,...,bound-1} without modulo bias
  std::uint32_t uniform_int(std::uint64_t counter, std::uint32_t bound,
                            std::uint64_t stream = 0) const {
    const std::uint64_t r = bits(counter, stream);
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(r) * bound) >> 64);
  }

  // independent sub-generator, e.g. one per replica
  CounterRng derive(std::uint64_t id) const {
    return CounterRng(combine(key_, combine(0x5e71c0de, id)));
  }

 private:
  std::uint64_t key_;
};

}  // namespace rcdyn
