#ifndef QUIVINV_SAMPLING_HPP
#define QUIVINV_SAMPLING_HPP

#include <quivinv/linalg.hpp>
#include <quivinv/matrix.hpp>
#include <quivinv/rng.hpp>

#include <cstddef>
#include <stdexcept>

namespace quivinv {

struct DegenerateCayley : std::runtime_error {
    DegenerateCayley() : std::runtime_error("DegenerateCayley: I - X stayed singular after bounded retries") {}
};

namespace detail {

constexpr int kCayleyRetries = 32;
constexpr long kSampleEntryBound = 5;

inline Mat random_antisymmetric(std::size_t n, Rng& rng, long bound) {
    Mat x(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            x(i, j) = rng.next_entry(bound);
            x(j, i) = -x(i, j);
        }
    return x;
}

inline Mat random_symmetric(std::size_t n, Rng& rng, long bound) {
    Mat x(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            x(i, j) = rng.next_entry(bound);
            x(j, i) = x(i, j);
        }
    return x;
}

// Cayley transform (I - X)^{-1}(I + X); lands in the group whenever X is in
// the corresponding Lie algebra and I - X is invertible.
inline Mat cayley(const Mat& x) {
    const Mat id = Mat::identity(x.rows());
    return inverse(id - x) * (id + x);
}

}  // namespace detail

// Exact rational element of SO(n); Q^T Q = I, det Q = 1.
inline Mat sample_special_orthogonal(std::size_t n, Rng& rng) {
    for (int attempt = 0; attempt < detail::kCayleyRetries; ++attempt) {
        const Mat x = detail::random_antisymmetric(n, rng, detail::kSampleEntryBound);
        if (is_zero(det(Mat::identity(n) - x))) continue;
        return detail::cayley(x);
    }
    throw DegenerateCayley();
}

// Element of O(n); the Cayley image never reaches det = -1 (no eigenvalue -1),
// so the second component is covered by an explicit reflection factor.
inline Mat sample_orthogonal(std::size_t n, Rng& rng, bool allow_reflection = true) {
    Mat q = sample_special_orthogonal(n, rng);
    if (allow_reflection && rng.next_bool()) {
        for (std::size_t j = 0; j < n; ++j) q(j, 0) = -q(j, 0);
    }
    return q;
}

// Exact rational element of Sp(n) (n even): S^T J S = J.
inline Mat sample_symplectic(std::size_t n, Rng& rng) {
    if (n % 2 != 0) throw OddSize();
    const Mat j = symplectic_j(n);
    for (int attempt = 0; attempt < detail::kCayleyRetries; ++attempt) {
        // Hamiltonian: X = J S with S symmetric satisfies X^T J + J X = 0.
        const Mat x = j * detail::random_symmetric(n, rng, detail::kSampleEntryBound);
        if (is_zero(det(Mat::identity(n) - x))) continue;
        return detail::cayley(x);
    }
    throw DegenerateCayley();
}

// Random invertible integer matrix.
inline Mat sample_gl(std::size_t n, Rng& rng) {
    for (int attempt = 0; attempt < detail::kCayleyRetries; ++attempt) {
        Mat g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.next_entry(detail::kSampleEntryBound);
        if (!is_zero(det(g))) return g;
    }
    throw DegenerateCayley();
}

}  // namespace quivinv

#endif
