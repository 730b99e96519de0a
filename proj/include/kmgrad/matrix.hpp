#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kmgrad/rational.hpp"

namespace kmgrad {

// Dense matrix of exact rationals. Carrier for realizations, Gram matrices
// and every linear solve in the library.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    RatMatrix(std::initializer_list<std::initializer_list<long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged initializer");
            for (long v : row) data_.emplace_back(v);
        }
    }

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RatVec row(std::size_t i) const {
        return RatVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    RatVec col(std::size_t j) const {
        RatVec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    RatMatrix operator*(const RatMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch in product");
        RatMatrix p(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (at(i, k) == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    p.at(i, j) += at(i, k) * o.at(k, j);
            }
        return p;
    }

    RatVec apply(const RatVec& v) const {
        if (cols_ != v.size()) throw std::invalid_argument("dimension mismatch in apply");
        RatVec r(rows_, Rat(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
        return r;
    }

    RatMatrix operator-(const RatMatrix& o) const {
        RatMatrix d(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) d.data_[i] = data_[i] - o.data_[i];
        return d;
    }

    RatMatrix scaled(const Rat& c) const {
        RatMatrix s(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] * c;
        return s;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    // Reduced row echelon form. Returns the pivot column of each pivot row.
    // Pivoting is deterministic: first nonzero entry in column order.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && at(p, c) == 0) ++p;
            if (p == rows_) continue;
            swap_rows(p, r);
            Rat inv = 1 / at(r, c);
            for (std::size_t j = c; j < cols_; ++j) at(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || at(i, c) == 0) continue;
                Rat f = at(i, c);
                for (std::size_t j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        RatMatrix m = *this;
        return m.rref().size();
    }

    Rat det() const {
        if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
        RatMatrix m = *this;
        Rat d = 1;
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t p = c;
            while (p < rows_ && m.at(p, c) == 0) ++p;
            if (p == rows_) return Rat(0);
            if (p != c) {
                m.swap_rows(p, c);
                d = -d;
            }
            d *= m.at(c, c);
            Rat inv = 1 / m.at(c, c);
            for (std::size_t i = c + 1; i < rows_; ++i) {
                if (m.at(i, c) == 0) continue;
                Rat f = m.at(i, c) * inv;
                for (std::size_t j = c; j < cols_; ++j) m.at(i, j) -= f * m.at(c, j);
            }
        }
        return d;
    }

    // Basis of the kernel {x : Mx = 0}, from the rref free columns. The basis
    // is canonical given the fixed pivoting rule.
    std::vector<RatVec> nullspace() const {
        RatMatrix m = *this;
        std::vector<std::size_t> pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t c : pivots) is_pivot[c] = true;
        std::vector<RatVec> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            RatVec v(cols_, Rat(0));
            v[free] = 1;
            for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // Unique solution of Mx = b; nullopt when the system is singular or
    // inconsistent.
    std::optional<RatVec> solve(const RatVec& b) const {
        if (b.size() != rows_) throw std::invalid_argument("dimension mismatch in solve");
        RatMatrix aug(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        std::vector<std::size_t> pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;  // inconsistent
        if (pivots.size() != cols_) return std::nullopt;                     // underdetermined
        RatVec x(cols_);
        for (std::size_t r = 0; r < cols_; ++r) x[r] = aug.at(r, cols_);
        return x;
    }

    // Monic characteristic polynomial det(t*I - M) by the Faddeev-LeVerrier
    // recurrence; coefficients returned highest degree first.
    RatVec char_poly() const {
        if (rows_ != cols_) throw std::invalid_argument("char_poly of non-square matrix");
        std::size_t n = rows_;
        RatVec coeffs(n + 1);
        coeffs[0] = 1;
        RatMatrix m_k(n, n);  // zero
        for (std::size_t k = 1; k <= n; ++k) {
            for (std::size_t i = 0; i < n; ++i) m_k.at(i, i) += coeffs[k - 1];
            m_k = (*this) * m_k;
            Rat tr = 0;
            for (std::size_t i = 0; i < n; ++i) tr += m_k.at(i, i);
            coeffs[k] = -tr / Rat(static_cast<long>(k));
        }
        return coeffs;
    }

  private:
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

}  // namespace kmgrad
