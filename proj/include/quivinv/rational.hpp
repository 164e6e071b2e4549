#ifndef QUIVINV_RATIONAL_HPP
#define QUIVINV_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace quivinv {

// Exact rational scalar used everywhere. No floating point on any
// verification path.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "3/7", "-2", "0". Throws std::invalid_argument on malformed input.
inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("rat_from_string: bad literal '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

}  // namespace quivinv

#endif
