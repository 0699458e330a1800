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

#include "gbs/permanent.hpp"

#include <cmath>

#include "gbs/hafnian.hpp"

namespace gbs {

bool all_integral(std::span<const double> values) {
    for (double x : values) {
        if (!std::isfinite(x) || std::floor(x) != x || std::abs(x) > 9.0e15) {
            return false;
        }
    }
    return true;
}

namespace {

void check_permanent_size(const Matrix<double> &a, PermanentMethod method, const OracleLimits &limits) {
    require(a.is_square(), ErrorKind::Dimension, "permanent needs a square matrix");
    const int n = static_cast<int>(a.rows());
    const int cap = method == PermanentMethod::Ryser ? limits.ryser_max_n : limits.naive_max_n;
    require(n <= cap, ErrorKind::SizeLimit,
            "permanent of " + std::to_string(n) + "x" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

}  // namespace

double permanent(const Matrix<double> &a, PermanentMethod method, const OracleLimits &limits) {
    check_permanent_size(a, method, limits);
    if (all_integral(a.data())) {
        auto ints = transform<BigInt>(a, [](double x) { return BigInt(static_cast<long long>(x)); });
        return to_double(method == PermanentMethod::Ryser ? permanent_ryser(ints) : permanent_naive(ints));
    }
    return method == PermanentMethod::Ryser ? permanent_ryser(a) : permanent_naive(a);
}

Rational permanent_exact(const Matrix<double> &a, const OracleLimits &limits) {
    check_permanent_size(a, PermanentMethod::Ryser, limits);
    return permanent_ryser(to_rational(a));
}

Matrix<double> row_repeated(const Matrix<double> &a, const std::vector<int> &z) {
    require(z.size() == a.rows(), ErrorKind::Dimension, "occupancy length must equal the number of rows");
    std::size_t total = 0;
    for (int zi : z) {
        require(zi >= 0, ErrorKind::Validation, "occupancies must be non-negative");
        total += static_cast<std::size_t>(zi);
    }
    Matrix<double> out(total, a.cols());
    std::size_t r = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        for (int rep = 0; rep < z[i]; ++rep, ++r) {
            for (std::size_t c = 0; c < a.cols(); ++c) {
                out(r, c) = a(i, c);
            }
        }
    }
    return out;
}

namespace {

void check_hafnian_input(const Matrix<double> &a, const OracleLimits &limits) {
    require(a.is_square(), ErrorKind::Dimension, "hafnian needs a square matrix");
    require(static_cast<int>(a.rows()) <= limits.hafnian_max_dim, ErrorKind::SizeLimit,
            "hafnian dimension " + std::to_string(a.rows()) + " exceeds cap " + std::to_string(limits.hafnian_max_dim));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            require(std::abs(a(i, j) - a(j, i)) <= 1e-12, ErrorKind::NotSymmetric,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs from its transpose");
        }
    }
}

}  // namespace

double hafnian(const Matrix<double> &a, const OracleLimits &limits) {
    check_hafnian_input(a, limits);
    if (a.rows() % 2 == 1) {
        return 0.0;
    }
    const std::size_t full = (std::size_t{1} << a.rows()) - 1;
    if (all_integral(a.data())) {
        auto ints = transform<BigInt>(a, [](double x) { return BigInt(static_cast<long long>(x)); });
        return to_double(subset_hafnians(ints)[full]);
    }
    return subset_hafnians(a)[full];
}

Rational hafnian_exact(const Matrix<double> &a, const OracleLimits &limits) {
    check_hafnian_input(a, limits);
    if (a.rows() % 2 == 1) {
        return Rational(0);
    }
    const std::size_t full = (std::size_t{1} << a.rows()) - 1;
    return subset_hafnians(to_rational(a))[full];
}

}  // namespace gbs
