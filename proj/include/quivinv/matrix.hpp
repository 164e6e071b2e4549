#ifndef QUIVINV_MATRIX_HPP
#define QUIVINV_MATRIX_HPP

#include <quivinv/rational.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace quivinv {

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& what) : std::runtime_error("ShapeMismatch: " + what) {}
};

// Dense matrix with exact rational entries, row-major.
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}
    Mat(std::initializer_list<std::initializer_list<Rat>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw ShapeMismatch("ragged initializer");
            for (const auto& x : row) data_.push_back(x);
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& rhs) const {
        if (cols_ != rhs.rows_) throw ShapeMismatch("product " + shape_str() + " * " + rhs.shape_str());
        Mat out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& a = (*this)(i, k);
                if (is_zero(a)) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
            }
        return out;
    }

    Mat operator+(const Mat& rhs) const {
        check_same_shape(rhs, "sum");
        Mat out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
        return out;
    }

    Mat operator-(const Mat& rhs) const {
        check_same_shape(rhs, "difference");
        Mat out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
        return out;
    }

    Mat operator-() const {
        Mat out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = -data_[i];
        return out;
    }

    Mat scaled(const Rat& c) const {
        Mat out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = c * data_[i];
        return out;
    }

    bool operator==(const Mat& rhs) const {
        return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
    }
    bool operator!=(const Mat& rhs) const { return !(*this == rhs); }

    bool is_zero_matrix() const {
        for (const auto& x : data_)
            if (!is_zero(x)) return false;
        return true;
    }

    Rat trace() const {
        if (!square()) throw ShapeMismatch("trace of " + shape_str());
        Rat t(0);
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

  private:
    void check_same_shape(const Mat& rhs, const char* op) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw ShapeMismatch(std::string(op) + " " + shape_str() + " vs " + rhs.shape_str());
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

// Standard symplectic form on k^{2m}: J = [[0, I], [-I, 0]].
inline Mat symplectic_j(std::size_t n) {
    if (n % 2 != 0) throw ShapeMismatch("symplectic form needs even size");
    Mat j(n, n);
    const std::size_t m = n / 2;
    for (std::size_t i = 0; i < m; ++i) {
        j(i, m + i) = 1;
        j(m + i, i) = -1;
    }
    return j;
}

}  // namespace quivinv

#endif
