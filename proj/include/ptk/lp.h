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

#ifndef PTK_LP_H
#define PTK_LP_H

#include <optional>
#include <vector>

#include "ptk/finstoch.h"
#include "ptk/rational.h"

namespace ptk {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct LinearTerm {
    size_t var;
    Rational coeff;
};

struct Constraint {
    std::vector<LinearTerm> terms;
    Sense sense;
    Rational rhs;
};

/// maximize c.x subject to the constraints and x >= 0. Every variable is
/// non-negative; a free quantity has to be split by the caller.
class LinearProgram {
   public:
    explicit LinearProgram(size_t num_vars = 0) : num_vars_(num_vars) {
    }

    size_t num_vars() const {
        return num_vars_;
    }
    /// Appends `count` variables and returns the index of the first.
    size_t add_variables(size_t count);
    void add_constraint(std::vector<LinearTerm> terms, Sense sense, Rational rhs);
    void set_objective(std::vector<LinearTerm> terms);

    const std::vector<Constraint> &constraints() const {
        return constraints_;
    }
    const std::vector<LinearTerm> &objective() const {
        return objective_;
    }

    /// Exact substitution of `x` into every constraint and the sign bounds.
    bool is_satisfied_by(const std::vector<Rational> &x) const;
    Rational objective_value(const std::vector<Rational> &x) const;

   private:
    size_t num_vars_;
    std::vector<Constraint> constraints_;
    std::vector<LinearTerm> objective_;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

const char *lp_status_name(LPStatus status);

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    std::vector<Rational> solution;
    Rational objective;
    /// Phase-1 optimum (sum of artificial variables); positive iff infeasible.
    Rational infeasibility;
    size_t pivots = 0;
};

/// Dense two-phase tableau simplex in exact arithmetic with Bland's rule.
/// An Optimal solution is re-checked by substitution before it is returned.
/// Throws Error(DimensionMismatch) if a term references a missing variable.
LPResult solve(const LinearProgram &lp);

/// Variables of a stochastic matrix embedded in a larger program, row-major.
struct ChannelBlock {
    size_t offset = 0;
    size_t out_dim = 0;
    size_t in_dim = 0;
    size_t var(size_t row, size_t col) const {
        return offset + row * in_dim + col;
    }
    size_t size() const {
        return out_dim * in_dim;
    }
};

/// Adds out_dim * in_dim non-negative variables with unit column sums.
ChannelBlock add_channel_block(LinearProgram &lp, size_t out_dim, size_t in_dim);

/// Constrains the block to send `input` to `output` exactly.
void add_maps_to(LinearProgram &lp, const ChannelBlock &block, const std::vector<Rational> &input,
                 const std::vector<Rational> &output);

StochChannel extract_channel(const std::vector<Rational> &solution, const ChannelBlock &block);

/// An affine condition on channel entries; term indices are row-major
/// positions row * in_dim + col within the channel.
struct ChannelCondition {
    std::vector<LinearTerm> terms;
    Sense sense;
    Rational rhs;
};

/// Conditions stating that a channel maps `input` to `output`.
std::vector<ChannelCondition> maps_to(size_t out_dim, size_t in_dim, const std::vector<Rational> &input,
                                      const std::vector<Rational> &output);

struct ChannelLPResult {
    LPResult lp;
    std::optional<StochChannel> channel;
};

/// Is there a stochastic out_dim x in_dim matrix meeting every condition?
/// Optimal carries the channel; Infeasible is an exact no.
ChannelLPResult channel_feasibility(size_t out_dim, size_t in_dim, const std::vector<ChannelCondition> &conditions);

}  // namespace ptk

#endif
