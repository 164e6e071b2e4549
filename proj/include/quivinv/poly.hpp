#ifndef QUIVINV_POLY_HPP
#define QUIVINV_POLY_HPP

#include <quivinv/linalg.hpp>
#include <quivinv/matrix.hpp>
#include <quivinv/rational.hpp>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

namespace quivinv {

// Exponent vector of fixed length nvars.
using Monomial = std::vector<unsigned>;

inline unsigned monomial_degree(const Monomial& m) {
    unsigned d = 0;
    for (auto e : m) d += e;
    return d;
}

// Sparse multivariate polynomial over Q with a fixed variable count.
class Poly {
  public:
    explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const Rat& c) {
        Poly p(nvars);
        if (!is_zero(c)) p.terms_[Monomial(nvars, 0)] = c;
        return p;
    }
    static Poly variable(std::size_t nvars, std::size_t v) {
        Poly p(nvars);
        Monomial m(nvars, 0);
        m[v] = 1;
        p.terms_[m] = 1;
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero_poly() const { return terms_.empty(); }

    void add_term(const Monomial& m, const Rat& c) {
        if (is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    Poly operator+(const Poly& rhs) const {
        Poly out = *this;
        for (const auto& [m, c] : rhs.terms_) out.add_term(m, c);
        return out;
    }
    Poly operator-(const Poly& rhs) const {
        Poly out = *this;
        for (const auto& [m, c] : rhs.terms_) out.add_term(m, -c);
        return out;
    }
    Poly operator-() const {
        Poly out(nvars_);
        for (const auto& [m, c] : terms_) out.terms_[m] = -c;
        return out;
    }
    Poly operator*(const Poly& rhs) const {
        Poly out(nvars_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : rhs.terms_) {
                Monomial m(nvars_);
                for (std::size_t v = 0; v < nvars_; ++v) m[v] = ma[v] + mb[v];
                out.add_term(m, ca * cb);
            }
        return out;
    }
    Poly scaled(const Rat& c) const {
        Poly out(nvars_);
        if (is_zero(c)) return out;
        for (const auto& [m, coeff] : terms_) out.terms_[m] = c * coeff;
        return out;
    }
    bool operator==(const Poly& rhs) const { return nvars_ == rhs.nvars_ && terms_ == rhs.terms_; }

    Rat evaluate(const std::vector<Rat>& point) const {
        Rat total(0);
        for (const auto& [m, c] : terms_) {
            Rat t = c;
            for (std::size_t v = 0; v < nvars_; ++v)
                for (unsigned e = 0; e < m[v]; ++e) t *= point[v];
            total += t;
        }
        return total;
    }

    // Substitution x_v -> sum_u S(v, u) x_u.
    Poly substitute_linear(const Mat& s) const {
        std::vector<Poly> images;
        images.reserve(nvars_);
        for (std::size_t v = 0; v < nvars_; ++v) {
            Poly img(nvars_);
            for (std::size_t u = 0; u < nvars_; ++u)
                if (!is_zero(s(v, u))) img.add_term(unit_monomial(u), s(v, u));
            images.push_back(std::move(img));
        }
        Poly out(nvars_);
        for (const auto& [m, c] : terms_) {
            Poly term = Poly::constant(nvars_, c);
            for (std::size_t v = 0; v < nvars_; ++v)
                for (unsigned e = 0; e < m[v]; ++e) term = term * images[v];
            out = out + term;
        }
        return out;
    }

    // Derivation D = sum_v (sum_u X(v, u) x_u) d/dx_v; degree-preserving.
    Poly apply_derivation(const Mat& x) const {
        Poly out(nvars_);
        for (const auto& [m, c] : terms_)
            for (std::size_t v = 0; v < nvars_; ++v) {
                if (m[v] == 0) continue;
                for (std::size_t u = 0; u < nvars_; ++u) {
                    if (is_zero(x(v, u))) continue;
                    Monomial mm = m;
                    --mm[v];
                    ++mm[u];
                    out.add_term(mm, c * Rat(static_cast<long>(m[v])) * x(v, u));
                }
            }
        return out;
    }

  private:
    Monomial unit_monomial(std::size_t v) const {
        Monomial m(nvars_, 0);
        m[v] = 1;
        return m;
    }

    std::size_t nvars_;
    std::map<Monomial, Rat> terms_;
};

// All monomials of total degree exactly d, deterministic order.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d) {
    std::vector<Monomial> out;
    Monomial cur(nvars, 0);
    // Lexicographic recursion over remaining degree.
    struct Rec {
        std::size_t nvars;
        std::vector<Monomial>& out;
        Monomial& cur;
        void go(std::size_t v, unsigned rem) {
            if (v + 1 == nvars) {
                cur[v] = rem;
                out.push_back(cur);
                cur[v] = 0;
                return;
            }
            for (unsigned e = 0; e <= rem; ++e) {
                cur[v] = e;
                go(v + 1, rem - e);
            }
            cur[v] = 0;
        }
    } rec{nvars, out, cur};
    if (nvars == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    rec.go(0, d);
    return out;
}

// Matrix with polynomial entries; just enough for word products and
// symbolic pfaffians.
class PolyMat {
  public:
    PolyMat(std::size_t rows, std::size_t cols, std::size_t nvars)
        : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, Poly(nvars)) {}

    static PolyMat identity(std::size_t n, std::size_t nvars) {
        PolyMat m(n, n, nvars);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(nvars, 1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nvars() const { return nvars_; }

    Poly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    PolyMat operator*(const PolyMat& rhs) const {
        if (cols_ != rhs.rows_) throw ShapeMismatch("poly matrix product");
        PolyMat out(rows_, rhs.cols_, nvars_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Poly& a = (*this)(i, k);
                if (a.is_zero_poly()) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j)
                    out(i, j) = out(i, j) + a * rhs(k, j);
            }
        return out;
    }

    PolyMat transpose() const {
        PolyMat out(cols_, rows_, nvars_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    PolyMat scaled(const Rat& c) const {
        PolyMat out(rows_, cols_, nvars_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].scaled(c);
        return out;
    }

    // Left/right multiplication by rational matrices.
    friend PolyMat operator*(const Mat& a, const PolyMat& b) {
        if (a.cols() != b.rows_) throw ShapeMismatch("mat * polymat");
        PolyMat out(a.rows(), b.cols_, b.nvars_);
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (is_zero(a(i, k))) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) = out(i, j) + b(k, j).scaled(a(i, k));
            }
        return out;
    }
    friend PolyMat operator*(const PolyMat& a, const Mat& b) {
        if (a.cols_ != b.rows()) throw ShapeMismatch("polymat * mat");
        PolyMat out(a.rows_, b.cols(), a.nvars_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero_poly()) continue;
                for (std::size_t j = 0; j < b.cols(); ++j)
                    out(i, j) = out(i, j) + a(i, k).scaled(b(k, j));
            }
        return out;
    }

    Poly trace() const {
        if (rows_ != cols_) throw ShapeMismatch("trace of poly matrix");
        Poly t(nvars_);
        for (std::size_t i = 0; i < rows_; ++i) t = t + (*this)(i, i);
        return t;
    }

  private:
    std::size_t rows_, cols_, nvars_;
    std::vector<Poly> data_;
};

// Pfaffian of an antisymmetric polynomial matrix by expansion along the
// first row; fine at the sizes the reports use (n <= 8).
inline Poly symbolic_pfaffian(const PolyMat& a) {
    const std::size_t n = a.rows();
    if (n != a.cols() || n % 2 != 0) throw OddSize();
    if (n == 0) return Poly::constant(a.nvars(), 1);
    std::vector<std::size_t> index(n);
    for (std::size_t i = 0; i < n; ++i) index[i] = i;
    // pf(A) = sum_j (-1)^j a_{0 j} pf(A with rows/cols 0, j removed)
    struct Rec {
        const PolyMat& a;
        Poly go(const std::vector<std::size_t>& idx) {
            if (idx.empty()) return Poly::constant(a.nvars(), 1);
            Poly sum(a.nvars());
            for (std::size_t j = 1; j < idx.size(); ++j) {
                const Poly& entry = a(idx[0], idx[j]);
                if (entry.is_zero_poly()) continue;
                std::vector<std::size_t> rest;
                rest.reserve(idx.size() - 2);
                for (std::size_t k = 1; k < idx.size(); ++k)
                    if (k != j) rest.push_back(idx[k]);
                Poly sub = go(rest);
                Poly term = entry * sub;
                if (j % 2 == 0) term = -term;
                sum = sum + term;
            }
            return sum;
        }
    } rec{a};
    return rec.go(index);
}

}  // namespace quivinv

#endif
