// Copyright 2026 The spinchar Authors
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

#include <boost/multiprecision/cpp_int.hpp>

namespace spinchar {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(unsigned n) {
    BigInt result = 1;
    for (unsigned k = 2; k <= n; ++k) {
        result *= k;
    }
    return result;
}

inline BigInt power(BigInt base, unsigned exponent) {
    BigInt result = 1;
    while (exponent != 0) {
        if ((exponent & 1U) != 0) {
            result *= base;
        }
        base *= base;
        exponent >>= 1U;
    }
    return result;
}

inline double to_double(const BigInt& value) { return value.convert_to<double>(); }

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace spinchar
