// Copyright 2026 The ptk Authors
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

#ifndef PTK_RATIONAL_H
#define PTK_RATIONAL_H

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ptk {

/// Arbitrary precision rational. GMP keeps every value gcd-reduced with a
/// positive denominator after each arithmetic operation.
using Rational = mpq_class;

/// Parses `p`, `p/q` or a decimal such as `-0.125` / `2.5e-3` into an exact
/// rational. Throws Error(SyntaxError) on malformed text or q == 0.
Rational parse_rational(std::string_view text);

/// Canonical text: `p` for integers, otherwise `p/q` in lowest terms.
std::string to_string(const Rational &value);

/// Dense row-major matrix of rationals.
class RatMatrix {
   public:
    RatMatrix() = default;
    RatMatrix(size_t rows, size_t cols);

    static RatMatrix identity(size_t n);
    static RatMatrix column(const std::vector<Rational> &entries);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    Rational &operator()(size_t r, size_t c) {
        return data_[r * cols_ + c];
    }
    const Rational &operator()(size_t r, size_t c) const {
        return data_[r * cols_ + c];
    }
    const std::vector<Rational> &data() const {
        return data_;
    }

    bool operator==(const RatMatrix &other) const;

    std::string str() const;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Rational> data_;
};

RatMatrix operator*(const RatMatrix &a, const RatMatrix &b);

/// Kronecker product; the left factor indexes the most significant digit.
RatMatrix kron(const RatMatrix &a, const RatMatrix &b);

}  // namespace ptk

#endif
