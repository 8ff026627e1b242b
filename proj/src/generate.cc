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

#include "ptk/generate.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ptk/error.h"

namespace ptk {

namespace {

size_t uniform(Rng &rng, size_t lo, size_t hi) {
    return std::uniform_int_distribution<size_t>(lo, hi)(rng);
}

bool coin(Rng &rng, double p) {
    return std::bernoulli_distribution(p)(rng);
}

std::vector<std::string> indexed_labels(size_t n) {
    std::vector<std::string> labels;
    for (size_t i = 0; i < n; i++) {
        labels.push_back("x" + std::to_string(i));
    }
    return labels;
}

bool has_duplicates(const std::vector<StochState> &states) {
    for (size_t x = 0; x < states.size(); x++) {
        for (size_t y = x + 1; y < states.size(); y++) {
            if (states[x] == states[y]) {
                return true;
            }
        }
    }
    return false;
}

/// Splits `items` into `parts` non-empty random blocks; leftover items go to
/// random blocks, or are left out with probability `drop`.
std::vector<std::vector<size_t>> random_blocks(Rng &rng, std::vector<size_t> items, size_t parts, double drop) {
    std::shuffle(items.begin(), items.end(), rng);
    std::vector<std::vector<size_t>> blocks(parts);
    for (size_t i = 0; i < items.size(); i++) {
        if (i < parts) {
            blocks[i].push_back(items[i]);
        } else if (!coin(rng, drop)) {
            blocks[uniform(rng, 0, parts - 1)].push_back(items[i]);
        }
    }
    return blocks;
}

std::vector<size_t> range(size_t n) {
    std::vector<size_t> r(n);
    std::iota(r.begin(), r.end(), 0);
    return r;
}

Complex gaussian(Rng &rng) {
    std::normal_distribution<double> n(0, 1);
    return {n(rng), n(rng)};
}

/// Random isometry with `rows >= cols`.
CMatrix random_isometry(Rng &rng, size_t rows, size_t cols) {
    CMatrix g(rows, cols);
    for (Eigen::Index r = 0; r < g.rows(); r++) {
        for (Eigen::Index c = 0; c < g.cols(); c++) {
            g(r, c) = gaussian(rng);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
    return q;
}

}  // namespace

StochState random_stoch_state(Rng &rng, size_t dim, const std::vector<size_t> &support, size_t max_den) {
    if (support.empty()) {
        throw Error(ErrorCode::InvalidState, "empty support");
    }
    size_t k = support.size();
    size_t q = uniform(rng, k, std::max(k, max_den));
    // Random composition of q into k positive parts.
    std::vector<size_t> cuts = range(q - 1);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(k - 1);
    for (auto &c : cuts) {
        c += 1;
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(q);
    std::vector<Rational> p(dim, 0);
    size_t prev = 0;
    for (size_t i = 0; i < k; i++) {
        p[support[i]] = Rational(static_cast<unsigned long>(cuts[i] - prev), static_cast<unsigned long>(q));
        p[support[i]].canonicalize();
        prev = cuts[i];
    }
    return StochChannel::state(p);
}

StochState random_stoch_state(Rng &rng, size_t dim, size_t max_den) {
    std::vector<size_t> all = range(dim);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(uniform(rng, 1, dim));
    return random_stoch_state(rng, dim, all, max_den);
}

StochChannel random_stoch_channel(Rng &rng, size_t in_dim, size_t out_dim, size_t max_den) {
    RatMatrix m(out_dim, in_dim);
    for (size_t c = 0; c < in_dim; c++) {
        StochState col = random_stoch_state(rng, out_dim, max_den);
        for (size_t r = 0; r < out_dim; r++) {
            m(r, c) = col(r, 0);
        }
    }
    return StochChannel::from_matrix(std::move(m));
}

StochFamily random_distinguishable_family(Rng &rng, size_t dim, size_t count, size_t max_den) {
    if (count > dim || count == 0) {
        throw Error(ErrorCode::DimensionMismatch, "disjoint supports need count <= dim");
    }
    auto blocks = random_blocks(rng, range(dim), count, 0.3);
    std::vector<StochState> states;
    for (const auto &b : blocks) {
        states.push_back(random_stoch_state(rng, dim, b, max_den));
    }
    return StochFamily(indexed_labels(count), std::move(states));
}

StochFamily random_stoch_family(Rng &rng, const StochFamilyOptions &opts) {
    while (true) {
        size_t d = uniform(rng, opts.min_dim, opts.max_dim);
        size_t n = uniform(rng, opts.min_states, opts.max_states);
        std::vector<StochState> states;
        if (n <= d && coin(rng, opts.disjoint_bias)) {
            return random_distinguishable_family(rng, d, n, opts.max_den);
        }
        for (size_t x = 0; x < n; x++) {
            states.push_back(random_stoch_state(rng, d, opts.max_den));
        }
        if (!has_duplicates(states)) {
            return StochFamily(indexed_labels(n), std::move(states));
        }
    }
}

PullbackFixture random_pullback_fixture(Rng &rng, size_t max_dim) {
    size_t d = uniform(rng, 2, max_dim);
    size_t n = uniform(rng, 2, std::min<size_t>(d, 4));
    size_t m = uniform(rng, n, std::max(n, max_dim));
    StochFamily pre = random_distinguishable_family(rng, d, n);
    auto out_blocks = random_blocks(rng, range(m), n, 0.0);
    RatMatrix a(m, d);
    for (size_t i = 0; i < d; i++) {
        size_t owner = n;
        for (size_t x = 0; x < n; x++) {
            if (sgn(pre[x](i, 0)) != 0) {
                owner = x;
            }
        }
        StochState col = [&] {
            if (owner == n) {
                return random_stoch_state(rng, m);
            }
            std::vector<size_t> block = out_blocks[owner];
            std::shuffle(block.begin(), block.end(), rng);
            block.resize(uniform(rng, 1, block.size()));
            return random_stoch_state(rng, m, block);
        }();
        for (size_t r = 0; r < m; r++) {
            a(r, i) = col(r, 0);
        }
    }
    StochChannel channel = StochChannel::from_matrix(std::move(a));
    std::vector<StochState> image;
    for (const auto &rho : pre.items()) {
        image.push_back(apply(channel, rho));
    }
    return {pre, channel, StochFamily(pre.labels(), std::move(image))};
}

ComponentFixture random_component_fixture(Rng &rng, size_t max_components, size_t max_per_component) {
    size_t k_count = uniform(rng, 1, max_components);
    std::vector<size_t> sizes;
    size_t dim = 0;
    size_t total = 0;
    for (size_t k = 0; k < k_count; k++) {
        sizes.push_back(uniform(rng, 1, max_per_component));
        dim += sizes.back() + 1;
        total += sizes.back();
    }
    std::vector<size_t> outcome = range(dim);
    std::shuffle(outcome.begin(), outcome.end(), rng);
    std::vector<size_t> slot = range(total);
    std::shuffle(slot.begin(), slot.end(), rng);

    std::vector<StochState> states(total, StochChannel::point_mass(dim, 0));
    std::vector<size_t> comp_of(total);
    size_t next_outcome = 0;
    size_t next_state = 0;
    for (size_t k = 0; k < k_count; k++) {
        size_t common = outcome[next_outcome++];
        for (size_t j = 0; j < sizes[k]; j++) {
            std::vector<size_t> support = {common, outcome[next_outcome++]};
            size_t x = slot[next_state++];
            states[x] = random_stoch_state(rng, dim, support);
            comp_of[x] = k;
        }
    }
    // Components listed in order of their smallest label.
    std::vector<std::vector<size_t>> components;
    std::vector<size_t> seen(k_count, k_count);
    for (size_t x = 0; x < total; x++) {
        size_t k = comp_of[x];
        if (seen[k] == k_count) {
            seen[k] = components.size();
            components.emplace_back();
        }
        components[seen[k]].push_back(x);
    }
    return {StochFamily(indexed_labels(total), std::move(states)), components};
}

CMatrix random_unitary(Rng &rng, size_t dim) {
    return random_isometry(rng, dim, dim);
}

QState random_pure_state(Rng &rng, size_t dim) {
    CVector v(dim);
    for (Eigen::Index i = 0; i < v.size(); i++) {
        v(i) = gaussian(rng);
    }
    return QState::from_ket(v / v.norm());
}

QState random_mixed_state(Rng &rng, size_t dim, size_t rank) {
    CMatrix rho = CMatrix::Zero(dim, dim);
    std::uniform_real_distribution<double> w(0.1, 1.0);
    for (size_t k = 0; k < rank; k++) {
        rho += w(rng) * random_pure_state(rng, dim).matrix();
    }
    rho /= rho.trace().real();
    return QState::from_density((rho + rho.adjoint()) / 2.0);
}

QChannel random_quantum_channel(Rng &rng, size_t in_dim, size_t out_dim, size_t kraus_count) {
    while (out_dim * kraus_count < in_dim) {
        kraus_count++;
    }
    CMatrix v = random_isometry(rng, out_dim * kraus_count, in_dim);
    std::vector<CMatrix> kraus(kraus_count, CMatrix::Zero(out_dim, in_dim));
    for (size_t o = 0; o < out_dim; o++) {
        for (size_t j = 0; j < kraus_count; j++) {
            kraus[j].row(o) = v.row(o * kraus_count + j);
        }
    }
    return QChannel::from_kraus(in_dim, out_dim, kraus);
}

QFamily random_quantum_family(Rng &rng, size_t dim, size_t count, bool orthogonal) {
    std::vector<QState> states;
    if (orthogonal) {
        if (count > dim) {
            throw Error(ErrorCode::DimensionMismatch, "orthogonal supports need count <= dim");
        }
        CMatrix u = random_unitary(rng, dim);
        std::uniform_real_distribution<double> w(0.1, 1.0);
        for (const auto &block : random_blocks(rng, range(dim), count, 0.3)) {
            CMatrix rho = CMatrix::Zero(dim, dim);
            for (size_t i : block) {
                rho += w(rng) * u.col(i) * u.col(i).adjoint();
            }
            rho /= rho.trace().real();
            states.push_back(QState::from_density((rho + rho.adjoint()) / 2.0));
        }
    } else {
        for (size_t x = 0; x < count; x++) {
            states.push_back(coin(rng, 0.5) ? random_pure_state(rng, dim)
                                            : random_mixed_state(rng, dim, uniform(rng, 1, dim)));
        }
    }
    return QFamily(indexed_labels(count), std::move(states));
}

std::pair<QState, QState> pure_pair_with_overlap(Rng &rng, size_t dim, double c) {
    CMatrix u = random_unitary(rng, dim);
    CVector a0 = u.col(0);
    CVector a1 = c * u.col(0) + std::sqrt(1 - c * c) * u.col(1);
    return {QState::from_ket(a0), QState::from_ket(a1 / a1.norm())};
}

QChannel random_nodist_channel(Rng &rng, const QState &alpha0, const QState &alpha1, size_t env_dim,
                               size_t mixture) {
    size_t d = alpha0.dim();
    if (d < 3) {
        throw Error(ErrorCode::DimensionMismatch, "need a complement of the pair's span");
    }
    CMatrix ps = support_projector(alpha0.matrix() + alpha1.matrix());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(CMatrix::Identity(d, d) - ps);
    std::vector<Eigen::Index> cols;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); k++) {
        if (solver.eigenvalues()(k) > 0.5) {
            cols.push_back(k);
        }
    }
    size_t perp = cols.size();
    if (perp + 2 != d) {
        throw Error(ErrorCode::DimensionMismatch, "states must be pure and linearly independent");
    }
    CMatrix basis(d, perp);
    for (size_t k = 0; k < perp; k++) {
        basis.col(static_cast<Eigen::Index>(k)) = solver.eigenvectors().col(cols[k]);
    }
    CMatrix e0 = CMatrix::Zero(env_dim, 1);
    e0(0, 0) = 1;
    CMatrix keep = kron(ps, e0);
    CMatrix lift = kron(basis, CMatrix::Identity(env_dim, env_dim));
    std::uniform_real_distribution<double> w(0.1, 1.0);
    std::vector<double> weights;
    for (size_t k = 0; k < mixture; k++) {
        weights.push_back(w(rng));
    }
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<CMatrix> kraus;
    for (size_t k = 0; k < mixture; k++) {
        CMatrix m = random_isometry(rng, perp * env_dim, perp);
        CMatrix v = keep + lift * m * basis.adjoint();
        kraus.push_back(std::sqrt(weights[k] / total) * v);
    }
    return QChannel::from_kraus(d, d * env_dim, kraus);
}

QChannel measure_resend_channel(size_t dim) {
    std::vector<CMatrix> kraus;
    for (size_t k = 0; k < dim; k++) {
        CMatrix op = CMatrix::Zero(dim * dim, dim);
        op(static_cast<Eigen::Index>(k * dim + k), static_cast<Eigen::Index>(k)) = 1;
        kraus.push_back(op);
    }
    return QChannel::from_kraus(dim, dim * dim, kraus);
}

SystemType DiagramGenerator::random_type(Rng &rng, size_t min_factors) const {
    size_t n = uniform(rng, min_factors, std::max(min_factors, max_factors_));
    std::vector<std::string> labels;
    for (size_t i = 0; i < n; i++) {
        labels.push_back(atoms_[uniform(rng, 0, atoms_.size() - 1)]);
    }
    return SystemType(std::move(labels));
}

Diagram DiagramGenerator::random_diagram(Rng &rng, const SystemType &in, const SystemType &out,
                                         size_t depth) const {
    size_t choice = depth == 0 ? 2 : uniform(rng, 0, 2);
    if (choice == 0) {
        SystemType mid = random_type(rng);
        return seq_compose(random_diagram(rng, in, mid, depth - 1), random_diagram(rng, mid, out, depth - 1));
    }
    if (choice == 1) {
        auto [in1, in2] = in.split(uniform(rng, 0, in.labels().size()));
        auto [out1, out2] = out.split(uniform(rng, 0, out.labels().size()));
        return par_compose(random_diagram(rng, in1, out1, depth - 1), random_diagram(rng, in2, out2, depth - 1));
    }
    if (coin(rng, 0.3)) {
        if (in == out) {
            return Diagram::identity(in);
        }
        if (out.is_unit()) {
            return Diagram::discard(in);
        }
        for (size_t k = 1; k < in.labels().size(); k++) {
            auto [l, r] = in.split(k);
            if (r * l == out) {
                return Diagram::swap(l, r);
            }
        }
    }
    return make_(in, out);
}

}  // namespace ptk
