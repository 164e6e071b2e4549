#ifndef QUIVINV_GENERATORS_HPP
#define QUIVINV_GENERATORS_HPP

#include <quivinv/evaluate.hpp>
#include <quivinv/trace_words.hpp>

#include <cstddef>
#include <set>
#include <vector>

namespace quivinv {

// Canonical cycle classes up to max_degree, filtered to words whose trace is
// not identically zero at dimension alpha. The zero test is probabilistic
// (evaluation at a random large-entry representation, confirmed by a second
// sample); a false negative only shrinks the advertised set and is caught by
// the spanning check.
inline std::vector<TraceWord> generators(const SymQuiver& q, const DimVector& alpha,
                                         std::size_t max_degree,
                                         std::uint64_t seed = 0x5eed0000u) {
    validate_dimension(q, alpha);
    const DoubledQuiver dq = build_doubled(q);
    const FormAssignment forms(q, alpha);
    Rng rng(seed);
    // Shared sample points: words with equal value vectors are (with
    // overwhelming probability) equal functions at this dimension, so only
    // the canonically first one is kept. The all-zero vector is the
    // identically-zero filter of the same test.
    std::vector<Representation> points;
    for (int k = 0; k < 3; ++k) points.push_back(random_representation(q, alpha, rng, /*bound=*/1000));

    std::vector<TraceWord> out;
    std::set<std::vector<Rat>> seen;
    std::vector<Rat> zero_key(points.size(), Rat(0));
    seen.insert(zero_key);
    for (const auto& w : enumerate_cycles(dq, max_degree)) {
        std::vector<Rat> key;
        key.reserve(points.size());
        for (const auto& rho : points) key.push_back(evaluate_word(w, rho, q, alpha, dq, forms));
        if (seen.insert(std::move(key)).second) out.push_back(w);
    }
    return out;
}

}  // namespace quivinv

#endif
