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
#include <span>

#include <boost/multiprecision/cpp_int.hpp>

#include "gbs/matrix.hpp"

namespace gbs {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Every finite double is a dyadic rational, so this conversion is exact.
inline Rational to_rational(double x) {
    return Rational(x);
}

inline double to_double(const Rational &x) {
    return x.convert_to<double>();
}

inline double to_double(const BigInt &x) {
    return x.convert_to<double>();
}

bool all_integral(std::span<const double> values);

inline Matrix<Rational> to_rational(const Matrix<double> &m) {
    return transform<Rational>(m, [](double x) { return to_rational(x); });
}

/// Size caps for the brute-force oracles. The defaults define "desk scale".
struct OracleLimits {
    int ryser_max_n = 20;
    int naive_max_n = 8;
    int hafnian_max_dim = 16;
    int matching_max_vertices = 16;
    int gbs_max_vertices = 12;
    std::size_t occupancy_max = 100000;
    int gadget_enumeration_max_vertices = 16;
    int hole_weight_max_part = 12;
};

inline const OracleLimits &default_limits() {
    static const OracleLimits limits{};
    return limits;
}

}  // namespace gbs
