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

#include "ptk/error.h"

#include "ptk/rational.h"

#include <cctype>
#include <sstream>

namespace ptk {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::TypeMismatch:
            return "TypeMismatch";
        case ErrorCode::UnboundGenerator:
            return "UnboundGenerator";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::NotCausal:
            return "NotCausal";
        case ErrorCode::CPTPViolation:
            return "CPTPViolation";
        case ErrorCode::NotAProductType:
            return "NotAProductType";
        case ErrorCode::NotDistinguishable:
            return "NotDistinguishable";
        case ErrorCode::IndexMismatch:
            return "IndexMismatch";
        case ErrorCode::MappingMismatch:
            return "MappingMismatch";
        case ErrorCode::MixedBackends:
            return "MixedBackends";
        case ErrorCode::MarginalDisturbed:
            return "MarginalDisturbed";
        case ErrorCode::FactorizationFailure:
            return "FactorizationFailure";
        case ErrorCode::NotPure:
            return "NotPure";
        case ErrorCode::DimensionOverflow:
            return "DimensionOverflow";
        case ErrorCode::DuplicateStates:
            return "DuplicateStates";
        case ErrorCode::InvalidState:
            return "InvalidState";
        case ErrorCode::SyntaxError:
            return "SyntaxError";
        case ErrorCode::ResolutionError:
            return "ResolutionError";
        case ErrorCode::DimensionError:
            return "DimensionError";
        case ErrorCode::InvariantViolation:
            return "InvariantViolation";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code), message_(message) {
}

ParseError::ParseError(ErrorCode code, size_t line, size_t column, const std::string &message)
    : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      plain_(message) {
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

// Exponents beyond this are rejected so hostile input cannot request a
// gigantic power of ten.
constexpr long kMaxDecimalExponent = 400;

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.remove_prefix(1);
    }
    Rational result;
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw Error(ErrorCode::SyntaxError, "malformed rational '" + std::string(text) + "'");
        }
        mpz_class d(std::string(den), 10);
        if (d == 0) {
            throw Error(ErrorCode::SyntaxError, "zero denominator in '" + std::string(text) + "'");
        }
        result = Rational(mpz_class(std::string(num), 10), d);
        result.canonicalize();
    } else {
        std::string_view mantissa = s;
        long exponent = 0;
        auto e = s.find_first_of("eE");
        if (e != std::string_view::npos) {
            mantissa = s.substr(0, e);
            auto exp_text = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text[0] == '-' || exp_text[0] == '+')) {
                exp_negative = exp_text[0] == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 4) {
                throw Error(ErrorCode::SyntaxError, "malformed exponent in '" + std::string(text) + "'");
            }
            exponent = std::stol(std::string(exp_text));
            if (exponent > kMaxDecimalExponent) {
                throw Error(ErrorCode::SyntaxError, "exponent out of range in '" + std::string(text) + "'");
            }
            if (exp_negative) {
                exponent = -exponent;
            }
        }
        auto dot = mantissa.find('.');
        std::string digits;
        if (dot == std::string_view::npos) {
            digits = std::string(mantissa);
        } else {
            auto int_part = mantissa.substr(0, dot);
            auto frac_part = mantissa.substr(dot + 1);
            if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
                (int_part.empty() && frac_part.empty())) {
                throw Error(ErrorCode::SyntaxError, "malformed decimal '" + std::string(text) + "'");
            }
            digits = std::string(int_part) + std::string(frac_part);
            exponent -= static_cast<long>(frac_part.size());
        }
        if (!all_digits(digits)) {
            throw Error(ErrorCode::SyntaxError, "malformed number '" + std::string(text) + "'");
        }
        mpz_class num(digits, 10);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
        if (exponent >= 0) {
            result = Rational(num * scale);
        } else {
            result = Rational(num, scale);
            result.canonicalize();
        }
    }
    if (negative) {
        result = -result;
    }
    return result;
}

std::string to_string(const Rational &value) {
    if (value.get_den() == 1) {
        return value.get_num().get_str();
    }
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

RatMatrix::RatMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
}

RatMatrix RatMatrix::identity(size_t n) {
    RatMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m(i, i) = 1;
    }
    return m;
}

RatMatrix RatMatrix::column(const std::vector<Rational> &entries) {
    RatMatrix m(entries.size(), 1);
    for (size_t i = 0; i < entries.size(); i++) {
        m(i, 0) = entries[i];
    }
    return m;
}

bool RatMatrix::operator==(const RatMatrix &other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

std::string RatMatrix::str() const {
    std::ostringstream out;
    out << "[";
    for (size_t r = 0; r < rows_; r++) {
        out << (r ? ", [" : "[");
        for (size_t c = 0; c < cols_; c++) {
            out << (c ? ", " : "") << to_string((*this)(r, c));
        }
        out << "]";
    }
    out << "]";
    return out.str();
}

RatMatrix operator*(const RatMatrix &a, const RatMatrix &b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix product " + std::to_string(a.rows()) + "x" +
                                                      std::to_string(a.cols()) + " by " + std::to_string(b.rows()) +
                                                      "x" + std::to_string(b.cols()));
    }
    RatMatrix out(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t k = 0; k < a.cols(); k++) {
            const Rational &aik = a(i, k);
            if (aik == 0) {
                continue;
            }
            for (size_t j = 0; j < b.cols(); j++) {
                if (b(k, j) != 0) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
    }
    return out;
}

RatMatrix kron(const RatMatrix &a, const RatMatrix &b) {
    RatMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            const Rational &aij = a(i, j);
            if (aij == 0) {
                continue;
            }
            for (size_t k = 0; k < b.rows(); k++) {
                for (size_t l = 0; l < b.cols(); l++) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

}  // namespace ptk
