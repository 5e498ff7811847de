#pragma once
#include <cstdint>

namespace coliseum {

// Counter-based stream: the state for (seed, pixel, sample) is a pure hash of
// the three, so draw order never depends on scheduling.
inline uint64_t splitmix64(uint64_t& s) {
  uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t pixel, uint64_t sample) {
    uint64_t s = seed;
    s ^= splitmix64_once(pixel + 0x632be59bd9b4e019ULL);
    s ^= splitmix64_once(sample + 0x9e6c63d0876a9a47ULL) << 1;
    state_ = splitmix64_once(s);
  }

  uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0,1)
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

 private:
  static uint64_t splitmix64_once(uint64_t s) { return splitmix64(s); }
  uint64_t state_;
};

// FNV-1a, used for config/system hashes in report metadata.
inline uint64_t fnv1a(const void* data, size_t len, uint64_t h = 0xcbf29ce484222325ULL) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace coliseum
