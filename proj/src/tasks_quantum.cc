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

#include <algorithm>
#include <cmath>

#include "ptk/error.h"
#include "ptk/tasks.h"
#include "tasks_internal.h"

namespace ptk {

namespace {

CMatrix basis_projector(size_t dim, size_t index) {
    CMatrix p = CMatrix::Zero(dim, dim);
    p(index, index) = 1;
    return p;
}

QState hermitian_state(const CMatrix &m) {
    return QState::from_density((m + m.adjoint()) / 2.0);
}

/// ||P Q||^2, the largest eigenvalue of P Q P.
double support_overlap(const CMatrix &p, const CMatrix &q) {
    CMatrix m = p * q * p;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    return std::max(0.0, solver.eigenvalues().maxCoeff());
}

/// Exactly orthogonal projectors close to the given nearly orthogonal ones,
/// by symmetric (Loewdin) orthonormalization of their joint basis. The
/// complement of their span is added to entry `first` so that they sum to I.
std::vector<CMatrix> orthogonalize(const std::vector<CMatrix> &projectors, size_t first) {
    size_t d = static_cast<size_t>(projectors.front().rows());
    std::vector<CVector> vectors;
    std::vector<size_t> owner;
    for (size_t k = 0; k < projectors.size(); k++) {
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(projectors[k]);
        for (Eigen::Index c = 0; c < solver.eigenvalues().size(); c++) {
            if (solver.eigenvalues()(c) > 0.5) {
                vectors.push_back(solver.eigenvectors().col(c));
                owner.push_back(k);
            }
        }
    }
    if (vectors.size() > d) {
        throw Error(ErrorCode::InvariantViolation, "supports do not fit into the system");
    }
    CMatrix v(d, vectors.size());
    for (size_t c = 0; c < vectors.size(); c++) {
        v.col(c) = vectors[c];
    }
    CMatrix gram = v.adjoint() * v;
    Eigen::SelfAdjointEigenSolver<CMatrix> gsolver(gram);
    v = v * gsolver.operatorInverseSqrt();
    std::vector<CMatrix> out(projectors.size(), CMatrix::Zero(d, d));
    CMatrix rest = CMatrix::Identity(d, d);
    for (size_t c = 0; c < vectors.size(); c++) {
        CMatrix vv = v.col(c) * v.col(c).adjoint();
        out[owner[c]] += vv;
        rest -= vv;
    }
    out[first] += (rest + rest.adjoint()) / 2.0;
    return out;
}

/// rho -> sum_x Tr(M_x rho) sigma_x, with Choi matrix sum_x M_x^T (x) sigma_x.
QChannel measure_prepare(const std::vector<CMatrix> &povm, const std::vector<CMatrix> &outputs) {
    size_t din = static_cast<size_t>(povm.front().rows());
    size_t dout = static_cast<size_t>(outputs.front().rows());
    CMatrix j = CMatrix::Zero(din * dout, din * dout);
    for (size_t x = 0; x < povm.size(); x++) {
        j += kron(povm[x].transpose(), outputs[x]);
    }
    return QChannel::from_choi(din, dout, std::move(j));
}

std::optional<std::pair<size_t, size_t>> find_duplicate(const QFamily &s, double tol) {
    for (size_t x = 0; x < s.size(); x++) {
        for (size_t y = x + 1; y < s.size(); y++) {
            if (max_abs_diff(s[x].matrix(), s[y].matrix()) <= tol) {
                return std::make_pair(x, y);
            }
        }
    }
    return std::nullopt;
}

std::vector<size_t> distinct_representatives(const QFamily &s, double tol) {
    std::vector<size_t> reps;
    for (size_t x = 0; x < s.size(); x++) {
        bool fresh = std::none_of(reps.begin(), reps.end(), [&](size_t r) {
            return max_abs_diff(s[r].matrix(), s[x].matrix()) <= tol;
        });
        if (fresh) {
            reps.push_back(x);
        }
    }
    return reps;
}

/// Orthogonal support measurement of a family already known to be
/// distinguishable.
std::vector<CMatrix> support_measurement(const QFamily &s) {
    std::vector<CMatrix> projectors;
    for (const auto &rho : s.items()) {
        projectors.push_back(support_projector(rho.matrix()));
    }
    return orthogonalize(projectors, internal::first_label(s.labels()));
}

QGateFamily aligned(const QGateFamily &g, const std::vector<std::string> &labels) {
    auto pos = internal::align_labels(g.labels(), labels);
    std::vector<QChannel> gates;
    for (size_t p : pos) {
        gates.push_back(g[p]);
    }
    return QGateFamily(labels, std::move(gates));
}

void check_flag(const QChannel &flag, const QFamily &s, double tol) {
    for (size_t x = 0; x < s.size(); x++) {
        if (max_abs_diff(flag.apply(s[x].matrix()), basis_projector(s.size(), x)) > tol) {
            throw Error(ErrorCode::InvariantViolation, "flag channel misreads label '" + s.label(x) + "'");
        }
    }
}

}  // namespace

QDecision decide_distinguishable(const QFamily &s, double tol) {
    QDecision result;
    if (auto dup = find_duplicate(s, tol)) {
        result.pair = dup;
        result.overlap = 1;
        result.diagnostic = "labels '" + s.label(dup->first) + "' and '" + s.label(dup->second) +
                            "' carry the same state";
        return result;
    }
    std::vector<CMatrix> projectors;
    for (const auto &rho : s.items()) {
        projectors.push_back(support_projector(rho.matrix()));
    }
    for (size_t x = 0; x < s.size(); x++) {
        for (size_t y = x + 1; y < s.size(); y++) {
            double ov = support_overlap(projectors[x], projectors[y]);
            if (ov > result.overlap) {
                result.overlap = ov;
            }
            if (ov > tol && !result.pair) {
                result.pair = std::make_pair(x, y);
                result.diagnostic = "supports of '" + s.label(x) + "' and '" + s.label(y) +
                                    "' overlap (" + std::to_string(ov) + ")";
            }
        }
    }
    if (result.pair) {
        return result;
    }
    std::vector<CMatrix> flags;
    for (size_t x = 0; x < s.size(); x++) {
        flags.push_back(basis_projector(s.size(), x));
    }
    QChannel flag = measure_prepare(orthogonalize(projectors, internal::first_label(s.labels())), flags);
    check_flag(flag, s, tol);
    result.verdict = Verdict::Yes;
    result.certificate = flag;
    return result;
}

QChannel programmer_from_flag(const QChannel &flag, const QGateFamily &g) {
    size_t n = g.size();
    if (flag.out_dim() != n) {
        throw Error(ErrorCode::IndexMismatch, "flag channel has " + std::to_string(flag.out_dim()) +
                                                  " outcomes for " + std::to_string(n) + " gates");
    }
    size_t db = g.in_dim();
    size_t dout = g.out_dim();
    size_t block = db * dout;
    // Label-controlled gate: its Choi matrix is block diagonal in the label.
    CMatrix j = CMatrix::Zero(n * block, n * block);
    for (size_t x = 0; x < n; x++) {
        j.block(x * block, x * block, block, block) = g[x].choi();
    }
    QChannel controlled = QChannel::from_choi(n * db, dout, std::move(j));
    return compose(tensor(flag, QChannel::identity(db)), controlled);
}

double programmer_defect(const QChannel &w, const QFamily &s, const QGateFamily &g) {
    if (w.in_dim() != s.dim() * g.in_dim() || w.out_dim() != g.out_dim()) {
        throw Error(ErrorCode::DimensionMismatch, "programmer type does not match the families");
    }
    QGateFamily ga = aligned(g, s.labels());
    QChannel id = QChannel::identity(g.in_dim());
    double defect = 0;
    for (size_t x = 0; x < s.size(); x++) {
        QChannel programmed = compose(tensor(QChannel::preparation(s[x]), id), w);
        defect = std::max(defect, max_abs_diff(programmed.choi(), ga[x].choi()));
    }
    return defect;
}

QChannel build_programmer(const QFamily &s, const QGateFamily &g, double tol) {
    QGateFamily ga = aligned(g, s.labels());
    QDecision dist = decide_distinguishable(s, tol);
    if (!dist.yes()) {
        throw Error(ErrorCode::NotDistinguishable, dist.diagnostic);
    }
    QChannel w = programmer_from_flag(*dist.certificate, ga);
    if (programmer_defect(w, s, ga) > tol) {
        throw Error(ErrorCode::InvariantViolation, "programmer fails substitution");
    }
    return w;
}

QDecision pullback_distinguishability(const QFamily &s, const QChannel &a, const QFamily &image, double tol) {
    if (s.labels() != image.labels()) {
        throw Error(ErrorCode::IndexMismatch, "source and image families are indexed differently");
    }
    if (a.in_dim() != s.dim() || a.out_dim() != image.dim()) {
        throw Error(ErrorCode::MappingMismatch, "channel type does not match the two families");
    }
    for (size_t x = 0; x < s.size(); x++) {
        if (max_abs_diff(a.apply(s[x].matrix()), image[x].matrix()) > tol) {
            throw Error(ErrorCode::MappingMismatch, "channel does not send '" + s.label(x) + "' to its image");
        }
    }
    QDecision image_dist = decide_distinguishable(image, tol);
    QDecision result;
    result.overlap = image_dist.overlap;
    if (!image_dist.yes()) {
        result.pair = image_dist.pair;
        result.diagnostic = "image family not distinguishable: " + image_dist.diagnostic;
        return result;
    }
    QChannel flag = compose(a, *image_dist.certificate);
    check_flag(flag, s, tol);
    result.verdict = Verdict::Yes;
    result.certificate = flag;
    return result;
}

QDecision decide_copiable(const QFamily &s, double tol) {
    QFamily reps = s.subfamily(distinct_representatives(s, tol));
    QDecision result = decide_distinguishable(reps, tol);
    result.certificate.reset();
    if (!result.yes()) {
        if (result.pair) {
            // Indices refer to the full family.
            auto idx = distinct_representatives(s, tol);
            result.pair = std::make_pair(idx[result.pair->first], idx[result.pair->second]);
        }
        result.diagnostic = "no channel copies every state of the family; " + result.diagnostic;
        return result;
    }
    std::vector<CMatrix> outputs;
    for (const auto &rho : reps.items()) {
        outputs.push_back(kron(rho.matrix(), rho.matrix()));
    }
    QChannel cloner = measure_prepare(support_measurement(reps), outputs);
    for (size_t x = 0; x < s.size(); x++) {
        const CMatrix &rho = s[x].matrix();
        if (max_abs_diff(cloner.apply(rho), kron(rho, rho)) > tol) {
            throw Error(ErrorCode::InvariantViolation, "cloner fails on '" + s.label(x) + "'");
        }
    }
    result.certificate = cloner;
    return result;
}

QSideInfoReport check_side_info(const QChannel &c, const QFamily &s, size_t env_dim, double tol) {
    size_t d = s.dim();
    if (c.in_dim() != d || c.out_dim() != d * env_dim) {
        throw Error(ErrorCode::DimensionMismatch, "side-information channel must have type A -> A*E");
    }
    QSideInfoReport report;
    for (size_t x = 0; x < s.size(); x++) {
        const CMatrix &rho = s[x].matrix();
        CMatrix out = c.apply(rho);
        if (max_abs_diff(partial_trace(out, d, env_dim, Keep::First), rho) > tol) {
            throw Error(ErrorCode::MarginalDisturbed, "state '" + s.label(x) + "' is disturbed");
        }
        QState eta = hermitian_state(partial_trace(out, d, env_dim, Keep::Second));
        if (max_abs_diff(out, kron(rho, eta.matrix())) > tol) {
            throw Error(ErrorCode::FactorizationFailure,
                        "output for '" + s.label(x) + "' is correlated with the environment");
        }
        report.eta.push_back(eta);
    }
    report.faithful = s.size() >= 2;
    for (size_t x = 0; x < s.size(); x++) {
        for (size_t y = x + 1; y < s.size(); y++) {
            if (max_abs_diff(report.eta[x].matrix(), report.eta[y].matrix()) <= tol) {
                report.faithful = false;
            } else {
                report.generated = true;
            }
        }
    }
    return report;
}

QDecision find_faithful_side_info(const QFamily &s, double tol) {
    QDecision result;
    if (distinct_representatives(s, tol).size() < 2) {
        result.verdict = Verdict::NotApplicable;
        result.diagnostic = "fewer than two distinct states";
        return result;
    }
    result = decide_distinguishable(s, tol);
    result.certificate.reset();
    if (!result.yes()) {
        result.diagnostic = "no faithful side information; " + result.diagnostic;
        return result;
    }
    size_t n = s.size();
    std::vector<CMatrix> outputs;
    for (size_t x = 0; x < n; x++) {
        outputs.push_back(kron(s[x].matrix(), basis_projector(n, x)));
    }
    QChannel c = measure_prepare(support_measurement(s), outputs);
    if (!check_side_info(c, s, n, tol).faithful) {
        throw Error(ErrorCode::InvariantViolation, "side-information channel is not faithful");
    }
    result.certificate = c;
    return result;
}

QChannel iterate_side_info(const QChannel &c, const QFamily &s, size_t env_dim, size_t n, double tol) {
    if (n == 0) {
        return QChannel::identity(s.dim());
    }
    QSideInfoReport base = check_side_info(c, s, env_dim, tol);
    QChannel cn = c;
    size_t env_pow = env_dim;
    for (size_t k = 1; k < n; k++) {
        cn = compose(cn, tensor(c, QChannel::identity(env_pow)));
        env_pow *= env_dim;
    }
    for (size_t x = 0; x < s.size(); x++) {
        CMatrix expected = s[x].matrix();
        for (size_t k = 0; k < n; k++) {
            expected = kron(expected, base.eta[x].matrix());
        }
        if (max_abs_diff(cn.apply(s[x].matrix()), expected) > tol) {
            throw Error(ErrorCode::InvariantViolation, "iterated channel fails on '" + s.label(x) + "'");
        }
    }
    return cn;
}

ConfusabilityGraph confusability(const QFamily &s, double tol) {
    return internal::build_graph(s.labels(), [&](size_t x, size_t y) {
        return !decide_distinguishable(s.subfamily({x, y}), tol).yes();
    });
}

ConstancyReport check_component_constancy(const QChannel &c, const QFamily &s, size_t env_dim, double tol) {
    QSideInfoReport report = check_side_info(c, s, env_dim, tol);
    return check_component_constancy(confusability(s, tol), report.eta, tol);
}

QChannel build_component_side_info(const QFamily &s, const std::vector<QState> &eta_per_component, double tol) {
    ConfusabilityGraph graph = confusability(s, tol);
    size_t k_count = graph.components.size();
    if (eta_per_component.size() != k_count) {
        throw Error(ErrorCode::IndexMismatch,
                    "expected " + std::to_string(k_count) + " environment states, one per component");
    }
    size_t e = eta_per_component.front().dim();
    for (const auto &eta : eta_per_component) {
        if (eta.dim() != e) {
            throw Error(ErrorCode::DimensionMismatch, "environment states live on different systems");
        }
    }
    size_t d = s.dim();
    std::vector<CMatrix> projectors;
    for (const auto &comp : graph.components) {
        CMatrix sum = CMatrix::Zero(d, d);
        for (size_t x : comp) {
            sum += s[x].matrix();
        }
        projectors.push_back(support_projector(sum));
    }
    for (size_t k = 0; k < k_count; k++) {
        for (size_t m = k + 1; m < k_count; m++) {
            if (support_overlap(projectors[k], projectors[m]) > tol) {
                throw Error(ErrorCode::NotDistinguishable, "component supports are not orthogonal");
            }
        }
    }
    projectors = orthogonalize(projectors, graph.component[internal::first_label(s.labels())]);
    // Lueders branch rho -> Q rho Q has Choi matrix vec(Q) vec(Q)^dagger.
    CMatrix j = CMatrix::Zero(d * d * e, d * d * e);
    for (size_t k = 0; k < k_count; k++) {
        CVector v(d * d);
        for (size_t i = 0; i < d; i++) {
            for (size_t a = 0; a < d; a++) {
                v(i * d + a) = projectors[k](a, i);
            }
        }
        j += kron(v * v.adjoint(), eta_per_component[k].matrix());
    }
    QChannel c = QChannel::from_choi(d, d * e, std::move(j));
    check_side_info(c, s, e, tol);
    return c;
}

NoInfoReport<double> verify_no_info(const QChannel &g, const QState &alpha0, const QState &alpha1, size_t env_dim,
                                    double tol) {
    const QState *alpha[2] = {&alpha0, &alpha1};
    size_t d = alpha0.dim();
    if (alpha1.dim() != d) {
        throw Error(ErrorCode::DimensionMismatch, "expected two states of one system");
    }
    if (g.in_dim() != d || g.out_dim() != d * env_dim) {
        throw Error(ErrorCode::DimensionMismatch, "eavesdropper must have type A -> A*E");
    }
    for (const auto *a : alpha) {
        if (!is_pure_state_q(*a)) {
            throw Error(ErrorCode::NotPure, "input state is not pure");
        }
    }
    NoInfoReport<double> report;
    CMatrix eta[2];
    for (int x = 0; x < 2; x++) {
        const CMatrix &rho = alpha[x]->matrix();
        CMatrix out = g.apply(rho);
        report.disturbance[x] = trace_distance(partial_trace(out, d, env_dim, Keep::First), rho);
        eta[x] = partial_trace(out, d, env_dim, Keep::Second);
        if (report.disturbance[x] <= tol) {
            report.factorized[x] = max_abs_diff(out, kron(rho, eta[x])) <= tol;
        }
    }
    report.info = trace_distance(eta[0], eta[1]);
    report.distinguishable = decide_distinguishable(QFamily({"0", "1"}, {alpha0, alpha1}), tol).yes();
    bool undisturbed = report.disturbance[0] <= tol && report.disturbance[1] <= tol;
    report.consistent = !(undisturbed && !report.distinguishable && report.info > tol);
    for (const auto &f : report.factorized) {
        if (f.has_value() && !*f) {
            report.consistent = false;
        }
    }
    return report;
}

}  // namespace ptk
