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

#ifndef PTK_GENERATE_H
#define PTK_GENERATE_H

#include <functional>
#include <random>

#include "ptk/circuit.h"
#include "ptk/tasks.h"

namespace ptk {

using Rng = std::mt19937_64;

/// Probability vector on `dim` outcomes supported exactly on `support`, with
/// a common denominator of at most `max_den`.
StochState random_stoch_state(Rng &rng, size_t dim, const std::vector<size_t> &support, size_t max_den = 8);
StochState random_stoch_state(Rng &rng, size_t dim, size_t max_den = 8);
StochChannel random_stoch_channel(Rng &rng, size_t in_dim, size_t out_dim, size_t max_den = 8);

struct StochFamilyOptions {
    size_t min_dim = 2;
    size_t max_dim = 5;
    size_t min_states = 2;
    size_t max_states = 4;
    size_t max_den = 8;
    /// Probability of drawing pairwise disjoint supports when they fit.
    double disjoint_bias = 0.5;
};

/// Pairwise distinct states labelled x0, x1, ...
StochFamily random_stoch_family(Rng &rng, const StochFamilyOptions &opts = {});

/// A distinguishable family with mixed states on pairwise disjoint supports.
StochFamily random_distinguishable_family(Rng &rng, size_t dim, size_t count, size_t max_den = 8);

struct PullbackFixture {
    StochFamily preimage;
    StochChannel channel;
    StochFamily image;
};

/// Preimages on disjoint blocks, and a channel sending each block into its
/// own output block, so the image is distinguishable.
PullbackFixture random_pullback_fixture(Rng &rng, size_t max_dim = 5);

/// A family whose confusability components are known: component k owns a
/// block of outcomes, and all its states share one outcome of that block.
struct ComponentFixture {
    StochFamily family;
    std::vector<std::vector<size_t>> components;
};

ComponentFixture random_component_fixture(Rng &rng, size_t max_components = 3, size_t max_per_component = 3);

CMatrix random_unitary(Rng &rng, size_t dim);
QState random_pure_state(Rng &rng, size_t dim);
QState random_mixed_state(Rng &rng, size_t dim, size_t rank);
QChannel random_quantum_channel(Rng &rng, size_t in_dim, size_t out_dim, size_t kraus_count = 2);

/// Pairwise orthogonal supports when `orthogonal`, generic overlap otherwise.
QFamily random_quantum_family(Rng &rng, size_t dim, size_t count, bool orthogonal);

/// Two pure states of a `dim`-level system with |<a0|a1>| = c.
std::pair<QState, QState> pure_pair_with_overlap(Rng &rng, size_t dim, double c);

/// G : A -> A*E that acts as rho -> rho (x) |0><0| on the span of the two
/// pure states and mixes random isometries of the complement into the
/// environment. It leaves both states undisturbed and learns nothing.
/// Requires dim >= 3 and two linearly independent states.
QChannel random_nodist_channel(Rng &rng, const QState &alpha0, const QState &alpha1, size_t env_dim,
                               size_t mixture = 2);

/// rho -> sum_k <k|rho|k> |k><k| (x) |k><k|: measure, resend and record.
QChannel measure_resend_channel(size_t dim);

/// Builds random well-typed diagrams. `make_generator` supplies a fresh
/// generator of the requested type (and records its semantics).
class DiagramGenerator {
   public:
    using Maker = std::function<Diagram(const SystemType &in, const SystemType &out)>;

    DiagramGenerator(std::vector<std::string> atoms, Maker make_generator, size_t max_factors = 2)
        : atoms_(std::move(atoms)), make_(std::move(make_generator)), max_factors_(max_factors) {
    }

    SystemType random_type(Rng &rng, size_t min_factors = 0) const;
    Diagram random_diagram(Rng &rng, const SystemType &in, const SystemType &out, size_t depth) const;

   private:
    std::vector<std::string> atoms_;
    Maker make_;
    size_t max_factors_;
};

}  // namespace ptk

#endif
