// Copyright 2026 The gbsample Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "gbs/error.hpp"

namespace gbs {

/// Dense row-major matrix. Only storage and indexing; the algorithms that
/// consume it live with the oracles.
template <typename T>
class Matrix {
   public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, const T &fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    }

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : init) {
            require(row.size() == cols_, ErrorKind::Dimension, "ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    bool is_square() const noexcept {
        return rows_ == cols_;
    }

    T &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const T &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    std::span<const T> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

    std::span<const T> data() const noexcept {
        return data_;
    }

    bool operator==(const Matrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Applies `f` elementwise, e.g. to lift a double matrix into exact rationals.
template <typename U, typename T, typename F>
Matrix<U> transform(const Matrix<T> &m, F &&f) {
    Matrix<U> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(r, c) = f(m(r, c));
        }
    }
    return out;
}

}  // namespace gbs
