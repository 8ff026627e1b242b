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

#ifndef PTK_ASYMPTOTICS_H
#define PTK_ASYMPTOTICS_H

#include <optional>
#include <vector>

#include "ptk/tasks.h"

namespace ptk {

constexpr size_t kDefaultDimensionCap = 4096;

/// The family {rho_x^(x)n} on A^(x)n together with its base family.
template <class Family>
struct IIDFamily {
    Family base;
    size_t n;
    Family power;
};

/// Exact Kronecker powers. Throws DimensionOverflow when dim^n exceeds `cap`.
IIDFamily<StochFamily> iid_power(const StochFamily &s, size_t n, size_t cap = kDefaultDimensionCap);
IIDFamily<QFamily> iid_power(const QFamily &s, size_t n, size_t cap = kDefaultDimensionCap);

/// Number of points of the Chernoff grid s = k / 16.
constexpr size_t kChernoffGridSteps = 16;

/// min over the grid of sum_i p_i^s q_i^(1-s); outcomes outside either
/// support contribute nothing.
double chernoff_coefficient(const StochState &p, const StochState &q);

/// A rational no smaller than `chernoff_coefficient(p, q)`, for exact bound
/// checks.
Rational chernoff_upper(const StochState &p, const StochState &q);

struct MLDiscriminator {
    size_t n = 0;
    /// Deterministic decoder A^n -> X; present when dim^n is within the cap.
    std::optional<StochChannel> flag;
    /// Worst case over labels of the misidentification probability.
    Rational epsilon;
    std::vector<Rational> error_per_label;
    /// Rational upper bound on the grid coefficient, maximized over pairs.
    Rational coefficient;
    /// Bound on epsilon: c^n for two states, (|X| - 1) c^n otherwise.
    Rational bound;
    bool bound_holds = false;
};

/// Maximum-likelihood decoding of n i.i.d. copies; ties go to the
/// lexicographically first label. The error is summed exactly over type
/// classes, so n may be large even when the decoder is not materialized.
/// Throws DuplicateStates when two labels carry the same state.
MLDiscriminator build_ml_discriminator(const StochFamily &s, size_t n, size_t cap = kDefaultDimensionCap);

template <class Scalar>
struct ErrorPoint {
    size_t n;
    Scalar epsilon;
    double bound;
};

template <class Scalar>
struct ErrorCurve {
    std::vector<ErrorPoint<Scalar>> points;
    /// Coefficient c of the bound c^n (or (|X| - 1) c^n).
    double coefficient = 0;
};

/// Minimum equal-prior error for telling alpha0^n from alpha1^n, namely
/// (1 - sqrt(1 - c^(2n))) / 2 with c = |<alpha0|alpha1>|.
/// Throws NotPure.
double helstrom_error(const QState &alpha0, const QState &alpha1, size_t n);
/// Points n = 1..n_max with bound c^(2n) / 2; `coefficient` holds c^2.
ErrorCurve<double> helstrom_curve(const QState &alpha0, const QState &alpha1, size_t n_max);

ErrorCurve<Rational> ml_error_curve(const StochFamily &s, size_t n_max);

enum class DefectNorm { LInf, L1 };

struct MinDefectResult {
    StochChannel programmer;
    /// Optimal worst-case entrywise (or column L1) deviation.
    Rational defect;
    LPStatus status;
};

/// Exact LP: minimize t over stochastic W : A*B -> B' subject to
/// |((rho_x (x) id) ; W - G_x)_ij| <= t for all x, i, j (L-infinity), or
/// sum_i |.| <= t per column (L1). The optimum is attained.
MinDefectResult min_defect_programmer(const StochFamily &s, const StochGateFamily &g,
                                      DefectNorm norm = DefectNorm::LInf);

struct ConsistencyReport {
    ErrorCurve<Rational> curve;
    bool duplicates = false;
    /// Error strictly decreased over the range, or was zero throughout.
    bool error_vanishing = false;
    /// epsilon_n <= bound at every tested n, checked exactly.
    bool bound_holds = true;
    Verdict copiable = Verdict::No;
    Verdict distinguishable = Verdict::No;
    /// Exact distinguishability is claimed only through copiability.
    bool consistent = false;
};

/// Error curve up to n_max cross-referenced against the exact verdicts.
/// Duplicate states are flagged rather than rejected; their error is the
/// worst-case one of the tie-breaking decoder.
ConsistencyReport asymptotic_consistency_check(const StochFamily &s, size_t n_max);

}  // namespace ptk

#endif
