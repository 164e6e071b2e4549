#ifndef QUIVINV_LINALG_HPP
#define QUIVINV_LINALG_HPP

#include <quivinv/matrix.hpp>

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quivinv {

struct NotAntisymmetric : std::runtime_error {
    NotAntisymmetric() : std::runtime_error("NotAntisymmetric: pfaffian needs A^T = -A") {}
};
struct OddSize : std::runtime_error {
    OddSize() : std::runtime_error("OddSize: pfaffian needs even size") {}
};
struct SingularMatrix : std::runtime_error {
    SingularMatrix() : std::runtime_error("SingularMatrix: inverse of singular matrix") {}
};

namespace detail {

// Row echelon via fraction-free (Bareiss) elimination on the integer matrix
// obtained by clearing row denominators. Returns pivot columns.
inline std::vector<std::size_t> bareiss_pivots(const Mat& a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class lcm = 1;
        for (std::size_t j = 0; j < cols; ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) {
            Rat x = a(i, j) * Rat(lcm);
            x.canonicalize();
            m[i][j] = x.get_num();
        }
    }
    std::vector<std::size_t> pivots;
    mpz_class prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[row], m[piv]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                mpz_class t = m[row][col] * m[i][j] - m[i][col] * m[row][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][col] = 0;
        }
        prev = m[row][col];
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t rank(const Mat& a) { return detail::bareiss_pivots(a).size(); }

// Kernel basis as columns of the returned matrix (cols x nullity).
inline Mat kernel(const Mat& a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    // Reduced row echelon form over Q.
    Mat m = a;
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && is_zero(m(piv, col))) ++piv;
        if (piv == rows) continue;
        if (piv != row)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(row, j), m(piv, j));
        const Rat inv = Rat(1) / m(row, col);
        for (std::size_t j = col; j < cols; ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || is_zero(m(i, col))) continue;
            const Rat f = m(i, col);
            for (std::size_t j = col; j < cols; ++j) m(i, j) -= f * m(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat basis(cols, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const std::size_t fc = free_cols[k];
        basis(fc, k) = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) basis(pivot_col[r], k) = -m(r, fc);
    }
    return basis;
}

inline Rat det(const Mat& a) {
    if (!a.square()) throw ShapeMismatch("det of " + a.shape_str());
    const std::size_t n = a.rows();
    Mat m = a;
    Rat d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && is_zero(m(piv, col))) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(piv, j));
            d = -d;
        }
        d *= m(col, col);
        const Rat inv = Rat(1) / m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (is_zero(m(i, col))) continue;
            const Rat f = m(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return d;
}

inline Mat inverse(const Mat& a) {
    if (!a.square()) throw ShapeMismatch("inverse of " + a.shape_str());
    const std::size_t n = a.rows();
    Mat m = a;
    Mat inv = Mat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && is_zero(m(piv, col))) ++piv;
        if (piv == n) throw SingularMatrix();
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(col, j), m(piv, j));
                std::swap(inv(col, j), inv(piv, j));
            }
        const Rat p = Rat(1) / m(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m(col, j) *= p;
            inv(col, j) *= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || is_zero(m(i, col))) continue;
            const Rat f = m(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// Exact pfaffian by skew-symmetric elimination with congruence transforms,
// O(n^3). pfaffian(A)^2 = det(A).
inline Rat pfaffian(const Mat& a) {
    if (!a.square()) throw ShapeMismatch("pfaffian of " + a.shape_str());
    const std::size_t n = a.rows();
    if (n % 2 != 0) throw OddSize();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (a(i, j) != -a(j, i)) throw NotAntisymmetric();
    Mat m = a;
    Rat pf(1);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        std::size_t piv = k + 1;
        while (piv < n && is_zero(m(k, piv))) ++piv;
        if (piv == n) return Rat(0);
        if (piv != k + 1) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k + 1, j), m(piv, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(m(i, k + 1), m(i, piv));
            pf = -pf;
        }
        const Rat p = m(k, k + 1);
        pf *= p;
        for (std::size_t i = k + 2; i < n; ++i) {
            // Zero m(k, i) with row/column k+1, then m(k+1, i) with row/column k.
            if (!is_zero(m(k, i))) {
                const Rat c = -m(k, i) / p;
                for (std::size_t j = 0; j < n; ++j) m(i, j) += c * m(k + 1, j);
                for (std::size_t j = 0; j < n; ++j) m(j, i) += c * m(j, k + 1);
            }
            if (!is_zero(m(k + 1, i))) {
                const Rat c = m(k + 1, i) / p;
                for (std::size_t j = 0; j < n; ++j) m(i, j) += c * m(k, j);
                for (std::size_t j = 0; j < n; ++j) m(j, i) += c * m(j, k);
            }
        }
    }
    return pf;
}

}  // namespace quivinv

#endif
