#pragma once
// Self-contained PRNG so that seeded runs are reproducible across compilers
// and platforms (the standard <random> distributions are not portable).
//
// Stream scheme: every random decision in the pipeline draws from a stream
// derived as  Rng(stream_seed(root, label))  where `label` names the decision
// point ("fold2/balance-train", "search", ...).  Same root seed + same label
// gives the same draws no matter how many threads run the surrounding code.

#include <cstdint>
#include <string_view>
#include <vector>

namespace volab {

// SplitMix64 (Steele, Lea, Vigna).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Unbiased uniform draw from {0, ..., n-1}, n >= 1.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t reject = (-n) % n;  // 2^64 mod n
    std::uint64_t x = next();
    while (x < reject) x = next();
    return x % n;
  }

  int pick(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    shuffle(p);
    return p;
  }

private:
  std::uint64_t state_;
};

// FNV-1a over the label, mixed into the root seed.
inline std::uint64_t stream_seed(std::uint64_t root, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return root ^ h;
}

inline Rng stream(std::uint64_t root, std::string_view label) {
  return Rng(stream_seed(root, label));
}

}  // namespace volab
