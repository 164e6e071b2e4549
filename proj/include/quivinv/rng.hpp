#ifndef QUIVINV_RNG_HPP
#define QUIVINV_RNG_HPP

#include <quivinv/rational.hpp>

#include <cstdint>
#include <string>

namespace quivinv {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}
}  // namespace detail

// Counter-based generator: the whole run is a pure function of one 64-bit
// seed, and independent streams are forked by label. No global state.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : key_(seed) {}

    std::uint64_t next_u64() { return detail::splitmix64(key_ ^ detail::splitmix64(counter_++)); }

    // Uniform in [lo, hi], inclusive.
    long next_int(long lo, long hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next_u64() % span);
    }

    bool next_bool() { return (next_u64() & 1) != 0; }

    // Small integer-valued rational; |value| <= bound.
    Rat next_entry(long bound) { return Rat(next_int(-bound, bound)); }

    // Nonzero variant for pivot-ish positions.
    Rat next_nonzero_entry(long bound) {
        long v = 0;
        while (v == 0) v = next_int(-bound, bound);
        return Rat(v);
    }

    Rng fork(const std::string& label) const {
        return Rng(detail::splitmix64(key_ ^ detail::fnv1a(label)));
    }
    Rng fork(std::uint64_t index) const {
        return Rng(detail::splitmix64(key_ ^ detail::splitmix64(~index)));
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace quivinv

#endif
