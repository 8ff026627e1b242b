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

#ifndef PTK_QUANTUM_H
#define PTK_QUANTUM_H

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "ptk/circuit.h"

namespace ptk {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

namespace qtol {
constexpr double kHermitian = 1e-12;
constexpr double kPositive = 1e-10;
constexpr double kTrace = 1e-12;
constexpr double kTracePreserving = 1e-10;
constexpr double kRankRelative = 1e-9;
constexpr double kRankAbsolute = 1e-12;
}  // namespace qtol

/// Density matrix: Hermitian, positive semidefinite, unit trace.
class QState {
   public:
    /// Throws Error(InvalidState) if an invariant fails.
    static QState from_density(CMatrix rho);
    /// |psi><psi|; the ket must already be normalized.
    static QState from_ket(const CVector &psi);

    size_t dim() const {
        return static_cast<size_t>(rho_.rows());
    }
    const CMatrix &matrix() const {
        return rho_;
    }

   private:
    explicit QState(CMatrix rho) : rho_(std::move(rho)) {
    }
    CMatrix rho_;
};

/// Completely positive trace-preserving map stored by its Choi matrix
///   J = sum_ij E_ij (x) G(E_ij),
/// input factor first, so J((i, k), (j, l)) = G(E_ij)(k, l) with row index
/// i * d_out + k.
class QChannel {
   public:
    /// Throws Error(CPTPViolation) if `choi` fails `check_cptp`.
    static QChannel from_choi(size_t in_dim, size_t out_dim, CMatrix choi);
    static QChannel from_kraus(size_t in_dim, size_t out_dim, const std::vector<CMatrix> &kraus);
    static QChannel unitary(const CMatrix &u);
    static QChannel preparation(const QState &rho);
    static QChannel identity(size_t dim);
    /// The trace.
    static QChannel discard(size_t dim);
    static QChannel swap(size_t dim_left, size_t dim_right);

    size_t in_dim() const {
        return in_dim_;
    }
    size_t out_dim() const {
        return out_dim_;
    }
    const CMatrix &choi() const {
        return choi_;
    }

    /// G(x) for an arbitrary in_dim x in_dim operator x.
    CMatrix apply(const CMatrix &x) const;

   private:
    QChannel(size_t in_dim, size_t out_dim, CMatrix choi) : in_dim_(in_dim), out_dim_(out_dim), choi_(std::move(choi)) {
    }
    size_t in_dim_;
    size_t out_dim_;
    CMatrix choi_;
};

using QEnv = std::map<std::string, QChannel>;

/// Both Choi invariants: positive semidefinite within `tol`, and the partial
/// trace over the output equal to the identity within `tol`.
bool check_cptp(size_t in_dim, size_t out_dim, const CMatrix &choi, double tol = qtol::kTracePreserving);

/// `g ; h` via the link product of the Choi matrices.
QChannel compose(const QChannel &g, const QChannel &h);
QChannel tensor(const QChannel &a, const QChannel &b);

/// Throws TypeMismatch, UnboundGenerator or DimensionMismatch.
QChannel eval_quantum(const Diagram &d, const QEnv &env, const SystemTable &systems);

CMatrix partial_trace(const CMatrix &x, size_t dim_first, size_t dim_second, Keep keep);

/// Throws Error(NotAProductType) if the state does not factor as given.
QState marginal_quantum(const QState &rho, size_t dim_first, size_t dim_second, Keep keep);

/// Eigenvalues above max(1e-9 * lambda_max, 1e-12) of a Hermitian matrix.
size_t numerical_rank(const CMatrix &hermitian);

/// Orthogonal projector onto the numerical support of a Hermitian PSD matrix.
CMatrix support_projector(const CMatrix &hermitian);

bool is_pure_state_q(const QState &rho);
/// Choi rank one, i.e. an isometry channel.
bool is_pure_gate_q(const QChannel &g);

/// (1/2) || a - b ||_1.
double trace_distance(const CMatrix &a, const CMatrix &b);
double max_abs_diff(const CMatrix &a, const CMatrix &b);

CMatrix kron(const CMatrix &a, const CMatrix &b);

}  // namespace ptk

#endif
