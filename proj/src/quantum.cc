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

#include "ptk/quantum.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "ptk/error.h"

namespace ptk {

namespace {

Eigen::VectorXd hermitian_eigenvalues(const CMatrix &x) {
    CMatrix h = (x + x.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double hermitian_defect(const CMatrix &x) {
    return x.rows() == 0 ? 0.0 : (x - x.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

QState QState::from_density(CMatrix rho) {
    if (rho.rows() == 0 || rho.rows() != rho.cols()) {
        throw Error(ErrorCode::InvalidState, "density matrix must be square and non-empty");
    }
    if (hermitian_defect(rho) > qtol::kHermitian) {
        throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1.0)) > qtol::kTrace) {
        throw Error(ErrorCode::InvalidState, "density matrix trace differs from 1");
    }
    if (hermitian_eigenvalues(rho).minCoeff() < -qtol::kPositive) {
        throw Error(ErrorCode::InvalidState, "density matrix has a negative eigenvalue");
    }
    return QState(std::move(rho));
}

QState QState::from_ket(const CVector &psi) {
    return from_density(psi * psi.adjoint());
}

bool check_cptp(size_t in_dim, size_t out_dim, const CMatrix &choi, double tol) {
    auto n = static_cast<Eigen::Index>(in_dim * out_dim);
    if (in_dim == 0 || out_dim == 0 || choi.rows() != n || choi.cols() != n) {
        return false;
    }
    if (hermitian_defect(choi) > tol) {
        return false;
    }
    if (hermitian_eigenvalues(choi).minCoeff() < -tol) {
        return false;
    }
    CMatrix reduced = partial_trace(choi, in_dim, out_dim, Keep::First);
    return max_abs_diff(reduced, CMatrix::Identity(reduced.rows(), reduced.cols())) <= tol;
}

QChannel QChannel::from_choi(size_t in_dim, size_t out_dim, CMatrix choi) {
    if (!check_cptp(in_dim, out_dim, choi)) {
        throw Error(ErrorCode::CPTPViolation, "Choi matrix of a " + std::to_string(in_dim) + " -> " +
                                                  std::to_string(out_dim) + " map is not CPTP");
    }
    return QChannel(in_dim, out_dim, std::move(choi));
}

QChannel QChannel::from_kraus(size_t in_dim, size_t out_dim, const std::vector<CMatrix> &kraus) {
    auto n = static_cast<Eigen::Index>(in_dim * out_dim);
    CMatrix choi = CMatrix::Zero(n, n);
    for (const auto &k : kraus) {
        if (static_cast<size_t>(k.rows()) != out_dim || static_cast<size_t>(k.cols()) != in_dim) {
            throw Error(ErrorCode::DimensionMismatch, "Kraus operator has the wrong shape");
        }
        CVector v(n);
        for (size_t i = 0; i < in_dim; i++) {
            for (size_t o = 0; o < out_dim; o++) {
                v(static_cast<Eigen::Index>(i * out_dim + o)) = k(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i));
            }
        }
        choi += v * v.adjoint();
    }
    return from_choi(in_dim, out_dim, std::move(choi));
}

QChannel QChannel::unitary(const CMatrix &u) {
    return from_kraus(static_cast<size_t>(u.cols()), static_cast<size_t>(u.rows()), {u});
}

QChannel QChannel::preparation(const QState &rho) {
    return QChannel(1, rho.dim(), rho.matrix());
}

QChannel QChannel::identity(size_t dim) {
    return unitary(CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

QChannel QChannel::discard(size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return QChannel(dim, 1, CMatrix::Identity(d, d));
}

QChannel QChannel::swap(size_t dim_left, size_t dim_right) {
    auto n = static_cast<Eigen::Index>(dim_left * dim_right);
    CMatrix u = CMatrix::Zero(n, n);
    for (size_t a = 0; a < dim_left; a++) {
        for (size_t b = 0; b < dim_right; b++) {
            u(static_cast<Eigen::Index>(b * dim_left + a), static_cast<Eigen::Index>(a * dim_right + b)) = 1.0;
        }
    }
    return unitary(u);
}

CMatrix QChannel::apply(const CMatrix &x) const {
    auto din = static_cast<Eigen::Index>(in_dim_);
    auto dout = static_cast<Eigen::Index>(out_dim_);
    if (x.rows() != din || x.cols() != din) {
        throw Error(ErrorCode::DimensionMismatch, "operator of size " + std::to_string(x.rows()) +
                                                      " fed to a channel on dimension " + std::to_string(in_dim_));
    }
    CMatrix out = CMatrix::Zero(dout, dout);
    for (Eigen::Index i = 0; i < din; i++) {
        for (Eigen::Index j = 0; j < din; j++) {
            if (x(i, j) != Complex(0.0)) {
                out += x(i, j) * choi_.block(i * dout, j * dout, dout, dout);
            }
        }
    }
    return out;
}

QChannel compose(const QChannel &g, const QChannel &h) {
    if (g.out_dim() != h.in_dim()) {
        throw Error(ErrorCode::DimensionMismatch, "cannot feed dimension " + std::to_string(g.out_dim()) +
                                                      " into a channel on " + std::to_string(h.in_dim()));
    }
    auto din = static_cast<Eigen::Index>(g.in_dim());
    auto dmid = static_cast<Eigen::Index>(g.out_dim());
    auto dout = static_cast<Eigen::Index>(h.out_dim());
    CMatrix choi(din * dout, din * dout);
    for (Eigen::Index i = 0; i < din; i++) {
        for (Eigen::Index j = 0; j < din; j++) {
            CMatrix mid = g.choi().block(i * dmid, j * dmid, dmid, dmid);
            choi.block(i * dout, j * dout, dout, dout) = h.apply(mid);
        }
    }
    return QChannel::from_choi(g.in_dim(), h.out_dim(), std::move(choi));
}

QChannel tensor(const QChannel &a, const QChannel &b) {
    size_t ia = a.in_dim(), oa = a.out_dim(), ib = b.in_dim(), ob = b.out_dim();
    auto n = static_cast<Eigen::Index>(ia * ib * oa * ob);
    CMatrix choi(n, n);
    auto index = [&](size_t i1, size_t i2, size_t k1, size_t k2) {
        return static_cast<Eigen::Index>(((i1 * ib + i2) * oa + k1) * ob + k2);
    };
    for (size_t i1 = 0; i1 < ia; i1++)
        for (size_t k1 = 0; k1 < oa; k1++)
            for (size_t j1 = 0; j1 < ia; j1++)
                for (size_t l1 = 0; l1 < oa; l1++) {
                    Complex x = a.choi()(static_cast<Eigen::Index>(i1 * oa + k1), static_cast<Eigen::Index>(j1 * oa + l1));
                    for (size_t i2 = 0; i2 < ib; i2++)
                        for (size_t k2 = 0; k2 < ob; k2++)
                            for (size_t j2 = 0; j2 < ib; j2++)
                                for (size_t l2 = 0; l2 < ob; l2++) {
                                    choi(index(i1, i2, k1, k2), index(j1, j2, l1, l2)) =
                                        x * b.choi()(static_cast<Eigen::Index>(i2 * ob + k2),
                                                     static_cast<Eigen::Index>(j2 * ob + l2));
                                }
                }
    return QChannel::from_choi(ia * ib, oa * ob, std::move(choi));
}

QChannel eval_quantum(const Diagram &d, const QEnv &env, const SystemTable &systems) {
    switch (d.kind()) {
        case NodeKind::Generator: {
            auto it = env.find(d.name());
            if (it == env.end()) {
                throw Error(ErrorCode::UnboundGenerator, "generator '" + d.name() + "' has no quantum payload");
            }
            if (it->second.in_dim() != systems.dim(d.in_type()) || it->second.out_dim() != systems.dim(d.out_type())) {
                throw Error(ErrorCode::DimensionMismatch, "generator '" + d.name() + "' bound to a payload of the wrong size");
            }
            return it->second;
        }
        case NodeKind::Identity:
            return QChannel::identity(systems.dim(d.in_type()));
        case NodeKind::Discard:
            return QChannel::discard(systems.dim(d.in_type()));
        case NodeKind::Swap:
            return QChannel::swap(systems.dim(d.swap_left()), systems.dim(d.swap_right()));
        case NodeKind::Seq:
            if (d.first().out_type() != d.second().in_type()) {
                throw Error(ErrorCode::TypeMismatch, "ill-typed sequential composition " + d.str());
            }
            return compose(eval_quantum(d.first(), env, systems), eval_quantum(d.second(), env, systems));
        case NodeKind::Par:
            return tensor(eval_quantum(d.first(), env, systems), eval_quantum(d.second(), env, systems));
    }
    throw Error(ErrorCode::InvariantViolation, "unknown diagram node");
}

CMatrix partial_trace(const CMatrix &x, size_t dim_first, size_t dim_second, Keep keep) {
    auto n = static_cast<Eigen::Index>(dim_first * dim_second);
    if (x.rows() != n || x.cols() != n) {
        throw Error(ErrorCode::NotAProductType, "operator of size " + std::to_string(x.rows()) + " is not " +
                                                    std::to_string(dim_first) + "x" + std::to_string(dim_second));
    }
    auto d1 = static_cast<Eigen::Index>(dim_first);
    auto d2 = static_cast<Eigen::Index>(dim_second);
    if (keep == Keep::First) {
        CMatrix out = CMatrix::Zero(d1, d1);
        for (Eigen::Index i = 0; i < d1; i++)
            for (Eigen::Index j = 0; j < d1; j++)
                for (Eigen::Index k = 0; k < d2; k++) out(i, j) += x(i * d2 + k, j * d2 + k);
        return out;
    }
    CMatrix out = CMatrix::Zero(d2, d2);
    for (Eigen::Index k = 0; k < d2; k++)
        for (Eigen::Index l = 0; l < d2; l++)
            for (Eigen::Index i = 0; i < d1; i++) out(k, l) += x(i * d2 + k, i * d2 + l);
    return out;
}

QState marginal_quantum(const QState &rho, size_t dim_first, size_t dim_second, Keep keep) {
    return QState::from_density(partial_trace(rho.matrix(), dim_first, dim_second, keep));
}

size_t numerical_rank(const CMatrix &hermitian) {
    if (hermitian.rows() == 0) {
        return 0;
    }
    Eigen::VectorXd ev = hermitian_eigenvalues(hermitian);
    double threshold = std::max(qtol::kRankRelative * ev.maxCoeff(), qtol::kRankAbsolute);
    return static_cast<size_t>((ev.array() > threshold).count());
}

CMatrix support_projector(const CMatrix &hermitian) {
    CMatrix h = (hermitian + hermitian.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    const Eigen::VectorXd &ev = solver.eigenvalues();
    double threshold = std::max(qtol::kRankRelative * ev.maxCoeff(), qtol::kRankAbsolute);
    CMatrix p = CMatrix::Zero(h.rows(), h.cols());
    for (Eigen::Index k = 0; k < ev.size(); k++) {
        if (ev(k) > threshold) {
            CVector v = solver.eigenvectors().col(k);
            p += v * v.adjoint();
        }
    }
    return p;
}

bool is_pure_state_q(const QState &rho) {
    return numerical_rank(rho.matrix()) == 1;
}

bool is_pure_gate_q(const QChannel &g) {
    return numerical_rank(g.choi()) == 1;
}

double trace_distance(const CMatrix &a, const CMatrix &b) {
    Eigen::VectorXd ev = hermitian_eigenvalues(a - b);
    return ev.cwiseAbs().sum() / 2.0;
}

double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "comparing operators of different shape");
    }
    return a.rows() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

}  // namespace ptk
