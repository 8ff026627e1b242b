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

#ifndef PTK_TASKS_H
#define PTK_TASKS_H

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptk/finstoch.h"
#include "ptk/lp.h"
#include "ptk/quantum.h"

namespace ptk {

/// Default absolute tolerance on distances for quantum verdicts.
constexpr double kDefaultQuantumTol = 1e-9;

/// Labelled list with unique labels, one item per label.
template <class T>
class Labeled {
   public:
    size_t size() const {
        return items_.size();
    }
    const std::vector<std::string> &labels() const {
        return labels_;
    }
    const std::string &label(size_t i) const {
        return labels_[i];
    }
    const std::vector<T> &items() const {
        return items_;
    }
    const T &operator[](size_t i) const {
        return items_[i];
    }

   protected:
    Labeled(std::vector<std::string> labels, std::vector<T> items);
    std::vector<std::string> labels_;
    std::vector<T> items_;
};

/// Indexed set of states of one FinStoch system.
class StochFamily : public Labeled<StochState> {
   public:
    StochFamily(std::vector<std::string> labels, std::vector<StochState> states);
    size_t dim() const {
        return items_.front().out_dim();
    }
    StochFamily subfamily(const std::vector<size_t> &indices) const;
};

class QFamily : public Labeled<QState> {
   public:
    QFamily(std::vector<std::string> labels, std::vector<QState> states);
    size_t dim() const {
        return items_.front().dim();
    }
    QFamily subfamily(const std::vector<size_t> &indices) const;
};

/// Indexed set of causal gates B -> B'.
class StochGateFamily : public Labeled<StochChannel> {
   public:
    StochGateFamily(std::vector<std::string> labels, std::vector<StochChannel> gates);
    size_t in_dim() const {
        return items_.front().in_dim();
    }
    size_t out_dim() const {
        return items_.front().out_dim();
    }
};

class QGateFamily : public Labeled<QChannel> {
   public:
    QGateFamily(std::vector<std::string> labels, std::vector<QChannel> gates);
    size_t in_dim() const {
        return items_.front().in_dim();
    }
    size_t out_dim() const {
        return items_.front().out_dim();
    }
};

/// Gate family preparing the label states delta_x of a |X|-outcome flag
/// system from the unit system. Programming it is the same as holding a flag
/// channel.
StochGateFamily flag_preparations(const std::vector<std::string> &labels);

enum class Verdict { Yes, No, NotApplicable };

const char *verdict_name(Verdict v);

template <class Channel>
struct Decision {
    Verdict verdict = Verdict::No;
    /// Flag channel, programmer, cloner or side-information channel.
    std::optional<Channel> certificate;
    std::string diagnostic;
    /// Duplicate or overlapping pair behind a no.
    std::optional<std::pair<size_t, size_t>> pair;
    /// FinStoch: an outcome carried by both states of `pair`.
    std::optional<size_t> shared_outcome;
    /// Quantum: largest pairwise support overlap ||P_x P_y||^2.
    double overlap = 0;
    /// Set when the verdict came from an exact LP.
    std::optional<LPStatus> lp_status;

    bool yes() const {
        return verdict == Verdict::Yes;
    }
};

using StochDecision = Decision<StochChannel>;
using QDecision = Decision<QChannel>;

/// Distinguishability in the programming sense: the states can program every
/// gate family. This holds iff a flag channel D : A -> X with D(rho_x) =
/// delta_x exists. Given D, `programmer_from_flag` programs any finite gate
/// family; conversely a programmer for `flag_preparations` is such a D. So the
/// flag channel is a complete certificate.
///
/// FinStoch: yes iff the supports are pairwise disjoint; each support outcome
/// goes to its owner and every other outcome to the lexicographically first
/// label. Quantum: yes iff supports are pairwise orthogonal (overlap <= tol);
/// D measures the support projectors with the remainder added to the first
/// label. Duplicate states always give no with the pair named.
StochDecision decide_distinguishable(const StochFamily &s);
QDecision decide_distinguishable(const QFamily &s, double tol = kDefaultQuantumTol);

/// W : A*B -> B' = (D (x) id_B) followed by the label-controlled G_x.
StochChannel programmer_from_flag(const StochChannel &flag, const StochGateFamily &g);
QChannel programmer_from_flag(const QChannel &flag, const QGateFamily &g);

/// Programmer for `g` driven by the states of `s`, verified by substitution
/// (exactly in FinStoch, within tol in quantum).
/// Throws NotDistinguishable or IndexMismatch.
StochChannel build_programmer(const StochFamily &s, const StochGateFamily &g);
QChannel build_programmer(const QFamily &s, const QGateFamily &g, double tol = kDefaultQuantumTol);

/// Does (rho_x (x) id_B) ; W equal G_x for every label?
bool verify_programmer(const StochChannel &w, const StochFamily &s, const StochGateFamily &g);
/// Largest entrywise Choi deviation over all labels.
double programmer_defect(const QChannel &w, const QFamily &s, const QGateFamily &g);

/// If `a` maps s onto `image` and `image` is distinguishable, so is s, with
/// flag channel a ; D'. Throws MappingMismatch or IndexMismatch.
StochDecision pullback_distinguishability(const StochFamily &s, const StochChannel &a, const StochFamily &image);
QDecision pullback_distinguishability(const QFamily &s, const QChannel &a, const QFamily &image,
                                      double tol = kDefaultQuantumTol);

/// Existence of C : A -> A*A with C(rho_x) = rho_x (x) rho_x for every x.
/// FinStoch decides this by exact LP; quantum through distinguishability with
/// a measure-and-prepare cloner. In both cases the verdict is cross-checked
/// against `decide_distinguishable` on the distinct states and a mismatch
/// raises Error(InvariantViolation).
StochDecision decide_copiable(const StochFamily &s);
QDecision decide_copiable(const QFamily &s, double tol = kDefaultQuantumTol);

template <class State>
struct SideInfoReport {
    std::vector<State> eta;
    /// At least two environment states differ.
    bool generated = false;
    /// All environment states differ.
    bool faithful = false;
};

using StochSideInfoReport = SideInfoReport<StochState>;
using QSideInfoReport = SideInfoReport<QState>;

/// Checks C(rho_x) = rho_x (x) eta_x for every x, with eta_x the environment
/// marginal. Throws MarginalDisturbed when the system marginal changes and
/// FactorizationFailure when it is preserved but the joint is correlated.
StochSideInfoReport check_side_info(const StochChannel &c, const StochFamily &s, size_t env_dim);
QSideInfoReport check_side_info(const QChannel &c, const QFamily &s, size_t env_dim,
                                double tol = kDefaultQuantumTol);

/// A channel producing pairwise distinct side information (the flag states).
/// FinStoch: exact LP; quantum: measure-and-prepare when distinguishable.
/// NotApplicable when the family has fewer than two distinct states. The
/// verdict is cross-checked against `decide_distinguishable`.
StochDecision find_faithful_side_info(const StochFamily &s);
QDecision find_faithful_side_info(const QFamily &s, double tol = kDefaultQuantumTol);

/// C_n : A -> A*E^n obtained by feeding the system output of C back into C
/// n times; C_n(rho_x) = rho_x (x) eta_x^n is verified before returning.
StochChannel iterate_side_info(const StochChannel &c, const StochFamily &s, size_t env_dim, size_t n);
QChannel iterate_side_info(const QChannel &c, const QFamily &s, size_t env_dim, size_t n,
                           double tol = kDefaultQuantumTol);

struct ConfusabilityGraph {
    std::vector<std::string> labels;
    /// Pairs (x, y), x < y, whose states are not distinguishable.
    std::vector<std::pair<size_t, size_t>> edges;
    /// Connected components in label order; each sorted ascending.
    std::vector<std::vector<size_t>> components;
    /// component[x] is the index into `components`.
    std::vector<size_t> component;

    bool adjacent(size_t x, size_t y) const;
    std::string to_dot() const;
};

ConfusabilityGraph confusability(const StochFamily &s);
ConfusabilityGraph confusability(const QFamily &s, double tol = kDefaultQuantumTol);

struct ConstancyReport {
    bool constant = true;
    /// First pair found inside one component with different side information.
    std::optional<std::pair<size_t, size_t>> violating_pair;
};

/// Is eta constant on every connected component of `graph`?
ConstancyReport check_component_constancy(const ConfusabilityGraph &graph, const std::vector<StochState> &eta);
ConstancyReport check_component_constancy(const ConfusabilityGraph &graph, const std::vector<QState> &eta,
                                          double tol = kDefaultQuantumTol);
ConstancyReport check_component_constancy(const StochChannel &c, const StochFamily &s, size_t env_dim);
ConstancyReport check_component_constancy(const QChannel &c, const QFamily &s, size_t env_dim,
                                          double tol = kDefaultQuantumTol);

/// Side-information channel that hands out eta_k on component k of the
/// confusability graph. FinStoch: copy followed by the programmer of the
/// component quotient; quantum: the Lueders instrument of the component
/// support projectors tensored with eta_k.
StochChannel build_component_side_info(const StochFamily &s, const std::vector<StochState> &eta_per_component);
QChannel build_component_side_info(const QFamily &s, const std::vector<QState> &eta_per_component,
                                   double tol = kDefaultQuantumTol);

template <class Scalar>
struct NoInfoReport {
    Scalar disturbance[2] = {Scalar(0), Scalar(0)};
    /// Distance between the two environment marginals.
    Scalar info = Scalar(0);
    bool distinguishable = false;
    /// Whether G(alpha_x) = alpha_x (x) eta_x; only checked when undisturbed.
    std::optional<bool> factorized[2];
    /// False iff the pair is undisturbed, non-distinguishable and yet leaks
    /// information, or an undisturbed output fails to factorize.
    bool consistent = true;
};

/// Disturbance and information gain of an eavesdropping channel G : A -> A*E
/// on two pure states. FinStoch distances are exact total variation;
/// quantum distances are trace distances.
/// Throws NotPure if either state is mixed.
NoInfoReport<Rational> verify_no_info(const StochChannel &g, const StochState &alpha0, const StochState &alpha1,
                                      size_t env_dim);
NoInfoReport<double> verify_no_info(const QChannel &g, const QState &alpha0, const QState &alpha1, size_t env_dim,
                                    double tol = kDefaultQuantumTol);

}  // namespace ptk

#endif
