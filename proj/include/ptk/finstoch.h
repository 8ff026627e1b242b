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

#ifndef PTK_FINSTOCH_H
#define PTK_FINSTOCH_H

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptk/circuit.h"
#include "ptk/rational.h"

namespace ptk {

/// Column-stochastic matrix over exact rationals. Column index is the input
/// symbol, row index the output symbol. Every instance satisfies the
/// causality normalization: entries are non-negative and each column sums
/// to exactly one.
class StochChannel {
   public:
    /// Throws Error(NotCausal) if `m` is not column-stochastic.
    static StochChannel from_matrix(RatMatrix m);
    /// Probability vector as a channel from the unit system.
    static StochChannel state(const std::vector<Rational> &probabilities);
    static StochChannel point_mass(size_t dim, size_t index);
    static StochChannel identity(size_t dim);
    /// The unique effect: the 1 x n all-ones row.
    static StochChannel discard(size_t dim);
    /// Wire exchange (a, b) -> (b, a).
    static StochChannel swap(size_t dim_left, size_t dim_right);
    /// Copies the classical symbol: a -> (a, a).
    static StochChannel copy(size_t dim);

    size_t in_dim() const {
        return m_.cols();
    }
    size_t out_dim() const {
        return m_.rows();
    }
    bool is_state() const {
        return m_.cols() == 1;
    }
    const RatMatrix &matrix() const {
        return m_;
    }
    const Rational &operator()(size_t r, size_t c) const {
        return m_(r, c);
    }
    /// Entries of a state as a vector (column 0).
    std::vector<Rational> probabilities() const;

    bool operator==(const StochChannel &other) const {
        return m_ == other.m_;
    }

   private:
    explicit StochChannel(RatMatrix m) : m_(std::move(m)) {
    }
    RatMatrix m_;
};

/// A probability vector; the in-dimension is always 1.
using StochState = StochChannel;

using StochEnv = std::map<std::string, StochChannel>;

bool check_causal_stoch(const RatMatrix &m);

/// `g ; h`, i.e. the matrix product h * g.
StochChannel compose(const StochChannel &g, const StochChannel &h);
StochChannel tensor(const StochChannel &a, const StochChannel &b);
/// Output of `g` on the state `rho`.
StochChannel apply(const StochChannel &g, const StochState &rho);

/// Evaluates a diagram: Seq is the matrix product, Par the Kronecker product,
/// discard the all-ones row, identity the identity matrix.
/// Throws TypeMismatch, UnboundGenerator or DimensionMismatch.
StochChannel eval_stoch(const Diagram &d, const StochEnv &env, const SystemTable &systems);

/// Marginal of a state (or, row-wise, of a channel) whose output is the
/// product of a `dim_first` and a `dim_second` system.
/// Throws Error(NotAProductType) if the output dimension does not factor.
StochChannel marginal_stoch(const StochChannel &sigma, size_t dim_first, size_t dim_second, Keep keep);

struct StochPurityReport {
    bool pure = false;
    /// For an impure state: the correlated diagonal extension on A*A whose
    /// A-marginal is the state but which is not a product with it. For an
    /// impure gate: an extension H with marginal G that is not G (x) beta.
    std::optional<StochChannel> witness;
    size_t context_dim = 0;
};

/// Pure iff `rho` is a point mass.
StochPurityReport is_pure_state_stoch(const StochState &rho);

/// Purity of a gate under the trivial-extension definition. A gate whose
/// input has dimension >= 2 always admits the extension a -> G(a) (x) delta_a,
/// which records the input in the context and so is never a product; such a
/// gate is reported impure with that witness. Gates from the unit system are
/// states and follow `is_pure_state_stoch`.
StochPurityReport is_pure_gate_stoch(const StochChannel &g);

/// True iff every column is a point mass (a deterministic function).
bool is_deterministic_stoch(const StochChannel &g);

/// Half the L1 distance between two channels of equal shape, maximized over
/// input columns. For states this is the total variation distance.
Rational total_variation(const StochChannel &a, const StochChannel &b);

}  // namespace ptk

#endif
