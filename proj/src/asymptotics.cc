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

#include "ptk/asymptotics.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ptk/error.h"

namespace ptk {

namespace {

size_t checked_power(size_t dim, size_t n, size_t cap) {
    size_t total = 1;
    for (size_t k = 0; k < n; k++) {
        if (total > cap / dim) {
            throw Error(ErrorCode::DimensionOverflow, "dimension " + std::to_string(dim) + "^" + std::to_string(n) +
                                                          " exceeds the cap " + std::to_string(cap));
        }
        total *= dim;
    }
    return total;
}

Rational rpow(const Rational &base, size_t e) {
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

mpz_class factorial(size_t n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

/// Labels in lexicographic order, so that a strict-improvement argmax breaks
/// ties towards the first label.
std::vector<size_t> label_order(const std::vector<std::string> &labels) {
    std::vector<size_t> order(labels.size());
    for (size_t i = 0; i < order.size(); i++) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return labels[a] < labels[b];
    });
    return order;
}

struct TypeDecoder {
    const StochFamily &s;
    std::vector<size_t> order;

    /// Likelihood of one outcome sequence with letter counts `t` under rho_x.
    Rational likelihood(size_t x, const std::vector<size_t> &t) const {
        Rational l = 1;
        for (size_t i = 0; i < t.size(); i++) {
            if (t[i] == 0) {
                continue;
            }
            const Rational &p = s[x](i, 0);
            if (sgn(p) == 0) {
                return 0;
            }
            l *= rpow(p, t[i]);
        }
        return l;
    }

    size_t decide(const std::vector<size_t> &t, std::vector<Rational> &likelihoods) const {
        likelihoods.assign(s.size(), 0);
        for (size_t x = 0; x < s.size(); x++) {
            likelihoods[x] = likelihood(x, t);
        }
        size_t best = order.front();
        for (size_t x : order) {
            if (likelihoods[x] > likelihoods[best]) {
                best = x;
            }
        }
        return best;
    }
};

void for_each_type(size_t n, size_t d, const std::function<void(const std::vector<size_t> &)> &visit) {
    std::vector<size_t> t(d, 0);
    std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t left) {
        if (pos + 1 == d) {
            t[pos] = left;
            visit(t);
            return;
        }
        for (size_t k = 0; k <= left; k++) {
            t[pos] = k;
            rec(pos + 1, left - k);
        }
    };
    rec(0, n);
}

MLDiscriminator ml_discriminator(const StochFamily &s, size_t n, size_t cap) {
    if (n == 0) {
        throw Error(ErrorCode::DimensionMismatch, "need at least one copy");
    }
    size_t d = s.dim();
    TypeDecoder decoder{s, label_order(s.labels())};
    MLDiscriminator out;
    out.n = n;
    out.error_per_label.assign(s.size(), 0);
    mpz_class nfact = factorial(n);
    std::vector<Rational> lik;
    for_each_type(n, d, [&](const std::vector<size_t> &t) {
        size_t winner = decoder.decide(t, lik);
        mpz_class count = nfact;
        for (size_t k : t) {
            count /= factorial(k);
        }
        for (size_t x = 0; x < s.size(); x++) {
            if (x != winner && sgn(lik[x]) != 0) {
                out.error_per_label[x] += Rational(count) * lik[x];
            }
        }
    });
    out.epsilon = *std::max_element(out.error_per_label.begin(), out.error_per_label.end());

    size_t total = 0;
    try {
        total = checked_power(d, n, cap);
    } catch (const Error &) {
        total = 0;
    }
    if (total != 0) {
        RatMatrix m(s.size(), total);
        std::vector<size_t> t(d);
        for (size_t outcome = 0; outcome < total; outcome++) {
            std::fill(t.begin(), t.end(), 0);
            for (size_t rest = outcome, k = 0; k < n; k++, rest /= d) {
                t[rest % d]++;
            }
            m(decoder.decide(t, lik), outcome) = 1;
        }
        out.flag = StochChannel::from_matrix(std::move(m));
    }

    for (size_t x = 0; x < s.size(); x++) {
        for (size_t y = x + 1; y < s.size(); y++) {
            out.coefficient = std::max(out.coefficient, chernoff_upper(s[x], s[y]));
        }
    }
    out.bound = rpow(out.coefficient, n);
    if (s.size() > 2) {
        out.bound *= static_cast<unsigned long>(s.size() - 1);
    }
    out.bound_holds = out.epsilon <= out.bound;
    return out;
}

bool has_duplicates(const StochFamily &s) {
    for (size_t x = 0; x < s.size(); x++) {
        for (size_t y = x + 1; y < s.size(); y++) {
            if (s[x] == s[y]) {
                return true;
            }
        }
    }
    return false;
}

ErrorCurve<Rational> curve_of(const StochFamily &s, size_t n_max) {
    ErrorCurve<Rational> curve;
    for (size_t x = 0; x < s.size(); x++) {
        for (size_t y = x + 1; y < s.size(); y++) {
            curve.coefficient = std::max(curve.coefficient, chernoff_coefficient(s[x], s[y]));
        }
    }
    for (size_t n = 1; n <= n_max; n++) {
        MLDiscriminator ml = ml_discriminator(s, n, 0);
        curve.points.push_back({n, ml.epsilon, ml.bound.get_d()});
    }
    return curve;
}

}  // namespace

IIDFamily<StochFamily> iid_power(const StochFamily &s, size_t n, size_t cap) {
    if (n == 0) {
        throw Error(ErrorCode::DimensionMismatch, "need at least one copy");
    }
    checked_power(s.dim(), n, cap);
    std::vector<StochState> states;
    for (const auto &rho : s.items()) {
        StochState p = rho;
        for (size_t k = 1; k < n; k++) {
            p = tensor(p, rho);
        }
        states.push_back(p);
    }
    return {s, n, StochFamily(s.labels(), std::move(states))};
}

IIDFamily<QFamily> iid_power(const QFamily &s, size_t n, size_t cap) {
    if (n == 0) {
        throw Error(ErrorCode::DimensionMismatch, "need at least one copy");
    }
    checked_power(s.dim(), n, cap);
    std::vector<QState> states;
    for (const auto &rho : s.items()) {
        CMatrix p = rho.matrix();
        for (size_t k = 1; k < n; k++) {
            p = kron(p, rho.matrix());
        }
        states.push_back(QState::from_density((p + p.adjoint()) / 2.0));
    }
    return {s, n, QFamily(s.labels(), std::move(states))};
}

double chernoff_coefficient(const StochState &p, const StochState &q) {
    if (p.out_dim() != q.out_dim()) {
        throw Error(ErrorCode::DimensionMismatch, "states of different systems");
    }
    double best = 1;
    for (size_t k = 0; k <= kChernoffGridSteps; k++) {
        double s = static_cast<double>(k) / kChernoffGridSteps;
        double sum = 0;
        for (size_t i = 0; i < p.out_dim(); i++) {
            double pi = p(i, 0).get_d();
            double qi = q(i, 0).get_d();
            if (pi > 0 && qi > 0) {
                sum += std::pow(pi, s) * std::pow(qi, 1 - s);
            }
        }
        best = std::min(best, sum);
    }
    return best;
}

Rational chernoff_upper(const StochState &p, const StochState &q) {
    double c = chernoff_coefficient(p, q);
    if (c == 0) {
        return 0;
    }
    // pow and the sum are accurate to a few ulps; the margin covers them.
    Rational r(std::min(1.0, c * (1 + 1e-12)));
    return r;
}

MLDiscriminator build_ml_discriminator(const StochFamily &s, size_t n, size_t cap) {
    for (size_t x = 0; x < s.size(); x++) {
        for (size_t y = x + 1; y < s.size(); y++) {
            if (s[x] == s[y]) {
                throw Error(ErrorCode::DuplicateStates, "labels '" + s.label(x) + "' and '" + s.label(y) +
                                                            "' carry the same state; the error cannot vanish");
            }
        }
    }
    return ml_discriminator(s, n, cap);
}

double helstrom_error(const QState &alpha0, const QState &alpha1, size_t n) {
    if (!is_pure_state_q(alpha0) || !is_pure_state_q(alpha1)) {
        throw Error(ErrorCode::NotPure, "Helstrom formula needs pure states");
    }
    if (alpha0.dim() != alpha1.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "states of different systems");
    }
    double c2 = std::clamp((alpha0.matrix() * alpha1.matrix()).trace().real(), 0.0, 1.0);
    double u = std::pow(c2, static_cast<double>(n));
    // (1 - sqrt(1 - u)) / 2 without cancellation.
    return u / (2 * (1 + std::sqrt(1 - u)));
}

ErrorCurve<double> helstrom_curve(const QState &alpha0, const QState &alpha1, size_t n_max) {
    ErrorCurve<double> curve;
    curve.coefficient = std::clamp((alpha0.matrix() * alpha1.matrix()).trace().real(), 0.0, 1.0);
    for (size_t n = 1; n <= n_max; n++) {
        double bound = std::pow(curve.coefficient, static_cast<double>(n)) / 2;
        curve.points.push_back({n, helstrom_error(alpha0, alpha1, n), bound});
    }
    return curve;
}

ErrorCurve<Rational> ml_error_curve(const StochFamily &s, size_t n_max) {
    if (has_duplicates(s)) {
        build_ml_discriminator(s, 1);
    }
    return curve_of(s, n_max);
}

MinDefectResult min_defect_programmer(const StochFamily &s, const StochGateFamily &g, DefectNorm norm) {
    auto pos = std::vector<size_t>();
    {
        if (g.size() != s.size()) {
            throw Error(ErrorCode::IndexMismatch, "index sets differ in size");
        }
        for (const auto &l : s.labels()) {
            auto it = std::find(g.labels().begin(), g.labels().end(), l);
            if (it == g.labels().end()) {
                throw Error(ErrorCode::IndexMismatch, "label '" + l + "' missing from the gate family");
            }
            pos.push_back(static_cast<size_t>(it - g.labels().begin()));
        }
    }
    size_t da = s.dim();
    size_t db = g.in_dim();
    size_t dout = g.out_dim();
    LinearProgram lp;
    ChannelBlock w = add_channel_block(lp, dout, da * db);
    size_t t = lp.add_variables(1);

    auto deviation_terms = [&](size_t x, size_t i, size_t j) {
        std::vector<LinearTerm> terms;
        for (size_t a = 0; a < da; a++) {
            const Rational &p = s[x](a, 0);
            if (sgn(p) != 0) {
                terms.push_back({w.var(i, a * db + j), p});
            }
        }
        return terms;
    };
    auto negated = [](std::vector<LinearTerm> terms) {
        for (auto &term : terms) {
            term.coeff = -term.coeff;
        }
        return terms;
    };

    for (size_t x = 0; x < s.size(); x++) {
        const StochChannel &target = g[pos[x]];
        for (size_t j = 0; j < db; j++) {
            std::vector<LinearTerm> column_sum;
            for (size_t i = 0; i < dout; i++) {
                auto terms = deviation_terms(x, i, j);
                size_t bound = t;
                if (norm == DefectNorm::L1) {
                    bound = lp.add_variables(1);
                    column_sum.push_back({bound, 1});
                }
                auto upper = terms;
                upper.push_back({bound, -1});
                lp.add_constraint(upper, Sense::LessEqual, target(i, j));
                auto lower = negated(terms);
                lower.push_back({bound, -1});
                lp.add_constraint(lower, Sense::LessEqual, -target(i, j));
            }
            if (norm == DefectNorm::L1) {
                column_sum.push_back({t, -1});
                lp.add_constraint(column_sum, Sense::LessEqual, 0);
            }
        }
    }
    lp.set_objective({{t, -1}});
    LPResult res = solve(lp);
    if (res.status != LPStatus::Optimal) {
        throw Error(ErrorCode::InvariantViolation,
                    std::string("minimax defect program ended ") + lp_status_name(res.status));
    }
    StochChannel prog = extract_channel(res.solution, w);
    Rational defect = res.solution[t];

    // Substitution: the realized defect must equal the optimum.
    Rational realized = 0;
    StochChannel id = StochChannel::identity(db);
    for (size_t x = 0; x < s.size(); x++) {
        StochChannel got = compose(tensor(s[x], id), prog);
        const StochChannel &target = g[pos[x]];
        for (size_t j = 0; j < db; j++) {
            Rational col = 0;
            for (size_t i = 0; i < dout; i++) {
                Rational dev = abs(got(i, j) - target(i, j));
                if (norm == DefectNorm::LInf) {
                    realized = std::max(realized, dev);
                } else {
                    col += dev;
                }
            }
            realized = std::max(realized, col);
        }
    }
    if (realized != defect) {
        throw Error(ErrorCode::InvariantViolation, "minimax programmer does not realize its defect");
    }
    return {prog, defect, res.status};
}

ConsistencyReport asymptotic_consistency_check(const StochFamily &s, size_t n_max) {
    ConsistencyReport report;
    report.duplicates = has_duplicates(s);
    report.curve = curve_of(s, n_max);
    for (size_t n = 1; n <= n_max; n++) {
        if (!ml_discriminator(s, n, 0).bound_holds) {
            report.bound_holds = false;
        }
    }
    const auto &pts = report.curve.points;
    if (!pts.empty()) {
        bool all_zero = std::all_of(pts.begin(), pts.end(), [](const ErrorPoint<Rational> &p) {
            return sgn(p.epsilon) == 0;
        });
        bool dropped = std::any_of(pts.begin() + 1, pts.end(), [&](const ErrorPoint<Rational> &p) {
            return p.epsilon < pts.front().epsilon;
        });
        report.error_vanishing = !report.duplicates && (all_zero || dropped);
    }
    report.copiable = decide_copiable(s).verdict;
    report.distinguishable = decide_distinguishable(s).verdict;
    // Copying only sees distinct states, so duplicates are compared against
    // the deduplicated family.
    Verdict reference = report.distinguishable;
    if (report.duplicates) {
        std::vector<size_t> reps;
        for (size_t x = 0; x < s.size(); x++) {
            bool fresh = std::none_of(reps.begin(), reps.end(), [&](size_t r) {
                return s[r] == s[x];
            });
            if (fresh) {
                reps.push_back(x);
            }
        }
        reference = decide_distinguishable(s.subfamily(reps)).verdict;
    }
    report.consistent = report.copiable == reference && report.bound_holds;
    return report;
}

}  // namespace ptk
