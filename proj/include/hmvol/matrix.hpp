#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace hmvol {

/// Dense row-major square matrix.
template <typename T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, const T& fill = T(0)) : n_(n), a_(n * n, fill) {}
    SquareMatrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
        a_.reserve(n_ * n_);
        for (const auto& row : rows)
            for (const auto& x : row) a_.push_back(x);
        if (a_.size() != n_ * n_) {
            n_ = 0;
            a_.clear();
        }
    }

    std::size_t size() const noexcept { return n_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    bool is_symmetric() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    /// Block-diagonal sum.
    friend SquareMatrix block_sum(const SquareMatrix& a, const SquareMatrix& b) {
        SquareMatrix r(a.n_ + b.n_);
        for (std::size_t i = 0; i < a.n_; ++i)
            for (std::size_t j = 0; j < a.n_; ++j) r(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.n_; ++i)
            for (std::size_t j = 0; j < b.n_; ++j) r(a.n_ + i, a.n_ + j) = b(i, j);
        return r;
    }

    friend bool operator==(const SquareMatrix& x, const SquareMatrix& y) {
        return x.n_ == y.n_ && x.a_ == y.a_;
    }

private:
    std::size_t n_ = 0;
    std::vector<T> a_;
};

}  // namespace hmvol
