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

#include "ptk/finstoch.h"

#include "ptk/error.h"

namespace ptk {

bool check_causal_stoch(const RatMatrix &m) {
    for (size_t c = 0; c < m.cols(); c++) {
        Rational sum = 0;
        for (size_t r = 0; r < m.rows(); r++) {
            if (m(r, c) < 0) {
                return false;
            }
            sum += m(r, c);
        }
        if (sum != 1) {
            return false;
        }
    }
    return true;
}

StochChannel StochChannel::from_matrix(RatMatrix m) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw Error(ErrorCode::NotCausal, "empty matrix is not a channel");
    }
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            m(r, c).canonicalize();
        }
    }
    if (!check_causal_stoch(m)) {
        throw Error(ErrorCode::NotCausal, "matrix " + m.str() + " is not column-stochastic");
    }
    return StochChannel(std::move(m));
}

StochChannel StochChannel::state(const std::vector<Rational> &probabilities) {
    return from_matrix(RatMatrix::column(probabilities));
}

StochChannel StochChannel::point_mass(size_t dim, size_t index) {
    RatMatrix m(dim, 1);
    m(index, 0) = 1;
    return StochChannel(std::move(m));
}

StochChannel StochChannel::identity(size_t dim) {
    return StochChannel(RatMatrix::identity(dim));
}

StochChannel StochChannel::discard(size_t dim) {
    RatMatrix m(1, dim);
    for (size_t c = 0; c < dim; c++) {
        m(0, c) = 1;
    }
    return StochChannel(std::move(m));
}

StochChannel StochChannel::swap(size_t dim_left, size_t dim_right) {
    RatMatrix m(dim_left * dim_right, dim_left * dim_right);
    for (size_t a = 0; a < dim_left; a++) {
        for (size_t b = 0; b < dim_right; b++) {
            m(b * dim_left + a, a * dim_right + b) = 1;
        }
    }
    return StochChannel(std::move(m));
}

StochChannel StochChannel::copy(size_t dim) {
    RatMatrix m(dim * dim, dim);
    for (size_t a = 0; a < dim; a++) {
        m(a * dim + a, a) = 1;
    }
    return StochChannel(std::move(m));
}

std::vector<Rational> StochChannel::probabilities() const {
    std::vector<Rational> out(m_.rows());
    for (size_t r = 0; r < m_.rows(); r++) {
        out[r] = m_(r, 0);
    }
    return out;
}

StochChannel compose(const StochChannel &g, const StochChannel &h) {
    if (g.out_dim() != h.in_dim()) {
        throw Error(ErrorCode::DimensionMismatch, "cannot feed " + std::to_string(g.out_dim()) +
                                                      " outcomes into a channel on " + std::to_string(h.in_dim()));
    }
    return StochChannel::from_matrix(h.matrix() * g.matrix());
}

StochChannel tensor(const StochChannel &a, const StochChannel &b) {
    return StochChannel::from_matrix(kron(a.matrix(), b.matrix()));
}

StochChannel apply(const StochChannel &g, const StochState &rho) {
    return compose(rho, g);
}

StochChannel eval_stoch(const Diagram &d, const StochEnv &env, const SystemTable &systems) {
    switch (d.kind()) {
        case NodeKind::Generator: {
            auto it = env.find(d.name());
            if (it == env.end()) {
                throw Error(ErrorCode::UnboundGenerator, "generator '" + d.name() + "' has no FinStoch payload");
            }
            size_t in = systems.dim(d.in_type());
            size_t out = systems.dim(d.out_type());
            if (it->second.in_dim() != in || it->second.out_dim() != out) {
                throw Error(ErrorCode::DimensionMismatch,
                            "generator '" + d.name() + "' declared " + std::to_string(out) + "x" + std::to_string(in) +
                                " but bound to " + std::to_string(it->second.out_dim()) + "x" +
                                std::to_string(it->second.in_dim()));
            }
            return it->second;
        }
        case NodeKind::Identity:
            return StochChannel::identity(systems.dim(d.in_type()));
        case NodeKind::Discard:
            return StochChannel::discard(systems.dim(d.in_type()));
        case NodeKind::Swap:
            return StochChannel::swap(systems.dim(d.swap_left()), systems.dim(d.swap_right()));
        case NodeKind::Seq:
            if (d.first().out_type() != d.second().in_type()) {
                throw Error(ErrorCode::TypeMismatch, "ill-typed sequential composition " + d.str());
            }
            return compose(eval_stoch(d.first(), env, systems), eval_stoch(d.second(), env, systems));
        case NodeKind::Par:
            return tensor(eval_stoch(d.first(), env, systems), eval_stoch(d.second(), env, systems));
    }
    throw Error(ErrorCode::InvariantViolation, "unknown diagram node");
}

StochChannel marginal_stoch(const StochChannel &sigma, size_t dim_first, size_t dim_second, Keep keep) {
    if (dim_first * dim_second != sigma.out_dim()) {
        throw Error(ErrorCode::NotAProductType, "output dimension " + std::to_string(sigma.out_dim()) +
                                                    " is not " + std::to_string(dim_first) + "x" +
                                                    std::to_string(dim_second));
    }
    size_t kept = keep == Keep::First ? dim_first : dim_second;
    RatMatrix m(kept, sigma.in_dim());
    for (size_t c = 0; c < sigma.in_dim(); c++) {
        for (size_t i = 0; i < dim_first; i++) {
            for (size_t j = 0; j < dim_second; j++) {
                m(keep == Keep::First ? i : j, c) += sigma(i * dim_second + j, c);
            }
        }
    }
    return StochChannel::from_matrix(std::move(m));
}

namespace {

std::optional<size_t> point_mass_index(const StochChannel &g, size_t column) {
    for (size_t r = 0; r < g.out_dim(); r++) {
        if (g(r, column) == 1) {
            return r;
        }
    }
    return std::nullopt;
}

}  // namespace

StochPurityReport is_pure_state_stoch(const StochState &rho) {
    if (!rho.is_state()) {
        throw Error(ErrorCode::InvalidState, "expected a state, got a channel with input dimension " +
                                                 std::to_string(rho.in_dim()));
    }
    StochPurityReport report;
    size_t n = rho.out_dim();
    report.context_dim = n;
    if (point_mass_index(rho, 0)) {
        report.pure = true;
        return report;
    }
    RatMatrix sigma(n * n, 1);
    for (size_t i = 0; i < n; i++) {
        sigma(i * n + i, 0) = rho(i, 0);
    }
    report.witness = StochChannel::from_matrix(std::move(sigma));
    return report;
}

StochPurityReport is_pure_gate_stoch(const StochChannel &g) {
    if (g.in_dim() == 1) {
        return is_pure_state_stoch(g);
    }
    StochPurityReport report;
    size_t n = g.in_dim();
    size_t m = g.out_dim();
    report.context_dim = n;
    RatMatrix h(m * n, n);
    for (size_t a = 0; a < n; a++) {
        for (size_t r = 0; r < m; r++) {
            h(r * n + a, a) = g(r, a);
        }
    }
    report.witness = StochChannel::from_matrix(std::move(h));
    return report;
}

bool is_deterministic_stoch(const StochChannel &g) {
    for (size_t c = 0; c < g.in_dim(); c++) {
        if (!point_mass_index(g, c)) {
            return false;
        }
    }
    return true;
}

Rational total_variation(const StochChannel &a, const StochChannel &b) {
    if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
        throw Error(ErrorCode::DimensionMismatch, "total variation between channels of different shape");
    }
    Rational best = 0;
    for (size_t c = 0; c < a.in_dim(); c++) {
        Rational sum = 0;
        for (size_t r = 0; r < a.out_dim(); r++) {
            sum += abs(a(r, c) - b(r, c));
        }
        if (sum > best) {
            best = sum;
        }
    }
    return best / 2;
}

}  // namespace ptk
