#pragma once

#include <functional>
#include <vector>

#include "muord/errors.hpp"

namespace muord {

// Dense row-major matrix over a ring value type (WittScalar, WittSeries,
// TruncPoly, FqElem).  Elements carry their ring context; an explicit zero
// sample seeds constructions.
template <class T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols, const T& fill) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Mat identity(int n, const T& zero, const T& one) {
        Mat m(n, n, zero);
        for (int i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& operator()(int i, int j) { return a_[i * cols_ + j]; }
    const T& operator()(int i, int j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    Mat operator+(const Mat& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "Mat: shape mismatch in +");
        Mat c = *this;
        for (size_t k = 0; k < a_.size(); ++k) c.a_[k] = a_[k] + o.a_[k];
        return c;
    }

    Mat operator-(const Mat& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "Mat: shape mismatch in -");
        Mat c = *this;
        for (size_t k = 0; k < a_.size(); ++k) c.a_[k] = a_[k] - o.a_[k];
        return c;
    }

    Mat operator*(const Mat& o) const {
        require(cols_ == o.rows_, "Mat: shape mismatch in *");
        require(rows_ > 0 && o.cols_ > 0 && cols_ > 0, "Mat: empty product");
        Mat c(rows_, o.cols_, a_[0].zero());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < o.cols_; ++j) {
                T acc = a_[0].zero();
                for (int k = 0; k < cols_; ++k) acc = acc + (*this)(i, k) * o(k, j);
                c(i, j) = acc;
            }
        return c;
    }

    Mat scale(const T& s) const {
        Mat c = *this;
        for (auto& x : c.a_) x = x * s;
        return c;
    }

    Mat transpose() const {
        require(rows_ > 0 && cols_ > 0, "Mat: empty transpose");
        Mat c(cols_, rows_, a_[0]);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) c(j, i) = (*this)(i, j);
        return c;
    }

    Mat map(const std::function<T(const T&)>& f) const {
        Mat c = *this;
        for (auto& x : c.a_) x = f(x);
        return c;
    }

    Mat submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
        require(!rows.empty() && !cols.empty(), "Mat: empty submatrix");
        Mat c((int)rows.size(), (int)cols.size(), a_[0]);
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) c((int)i, (int)j) = (*this)(rows[i], cols[j]);
        return c;
    }

  private:
    static void require(bool ok, const char* msg) {
        if (!ok) throw parameter_error(msg);
    }

    int rows_, cols_;
    std::vector<T> a_;
};

// division-free determinant by Laplace expansion; n <= 6 in this code base
template <class T>
T det_small(const Mat<T>& m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw parameter_error("det_small: bad shape");
    int n = m.rows();
    if (n == 1) return m(0, 0);
    std::vector<int> cols(n);
    for (int i = 0; i < n; ++i) cols[i] = i;
    std::function<T(int, std::vector<int>&)> rec = [&](int row, std::vector<int>& cs) -> T {
        if ((int)cs.size() == 1) return m(row, cs[0]);
        T acc = m(0, 0).zero();
        for (size_t k = 0; k < cs.size(); ++k) {
            int c = cs[k];
            std::vector<int> rest;
            rest.reserve(cs.size() - 1);
            for (size_t j = 0; j < cs.size(); ++j)
                if (j != k) rest.push_back(cs[j]);
            T term = m(row, c) * rec(row + 1, rest);
            acc = (k % 2 == 0) ? acc + term : acc - term;
        }
        return acc;
    };
    return rec(0, cols);
}

// all k-subsets of {0..n-1} in lexicographic order (compound matrix indexing)
std::vector<std::vector<int>> subsets_lex(int n, int k);

// q-th compound: entry (S, T) = det of the (S, T) minor
template <class T>
Mat<T> compound(const Mat<T>& m, int q) {
    if (q < 1 || q > m.rows() || q > m.cols()) throw parameter_error("compound: bad order");
    auto rows = subsets_lex(m.rows(), q);
    auto cols = subsets_lex(m.cols(), q);
    Mat<T> c((int)rows.size(), (int)cols.size(), m(0, 0).zero());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) c((int)i, (int)j) = det_small(m.submatrix(rows[i], cols[j]));
    return c;
}

} // namespace muord
