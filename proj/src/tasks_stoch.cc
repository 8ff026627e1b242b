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

#include "ptk/error.h"
#include "ptk/tasks.h"
#include "tasks_internal.h"

namespace ptk {

namespace {

std::optional<std::pair<size_t, size_t>> find_duplicate(const StochFamily &s) {
    for (size_t x = 0; x < s.size(); x++) {
        for (size_t y = x + 1; y < s.size(); y++) {
            if (s[x] == s[y]) {
                return std::make_pair(x, y);
            }
        }
    }
    return std::nullopt;
}

/// First occurrence of every distinct state.
std::vector<size_t> distinct_representatives(const StochFamily &s) {
    std::vector<size_t> reps;
    for (size_t x = 0; x < s.size(); x++) {
        bool fresh = std::none_of(reps.begin(), reps.end(), [&](size_t r) {
            return s[r] == s[x];
        });
        if (fresh) {
            reps.push_back(x);
        }
    }
    return reps;
}

StochGateFamily aligned(const StochGateFamily &g, const std::vector<std::string> &labels) {
    auto pos = internal::align_labels(g.labels(), labels);
    std::vector<StochChannel> gates;
    for (size_t p : pos) {
        gates.push_back(g[p]);
    }
    return StochGateFamily(labels, std::move(gates));
}

void check_flag(const StochChannel &flag, const StochFamily &s) {
    for (size_t x = 0; x < s.size(); x++) {
        if (!(apply(flag, s[x]) == StochChannel::point_mass(s.size(), x))) {
            throw Error(ErrorCode::InvariantViolation, "flag channel misreads label '" + s.label(x) + "'");
        }
    }
}

}  // namespace

StochDecision decide_distinguishable(const StochFamily &s) {
    StochDecision result;
    if (auto dup = find_duplicate(s)) {
        result.pair = dup;
        result.diagnostic = "labels '" + s.label(dup->first) + "' and '" + s.label(dup->second) +
                            "' carry the same state";
        return result;
    }
    size_t d = s.dim();
    size_t n = s.size();
    const size_t unowned = n;
    std::vector<size_t> owner(d, unowned);
    for (size_t x = 0; x < n; x++) {
        for (size_t i = 0; i < d; i++) {
            if (sgn(s[x](i, 0)) == 0) {
                continue;
            }
            if (owner[i] != unowned) {
                result.pair = std::make_pair(owner[i], x);
                result.shared_outcome = i;
                result.diagnostic = "labels '" + s.label(owner[i]) + "' and '" + s.label(x) +
                                    "' both put weight on outcome " + std::to_string(i);
                return result;
            }
            owner[i] = x;
        }
    }
    size_t fallback = internal::first_label(s.labels());
    RatMatrix m(n, d);
    for (size_t i = 0; i < d; i++) {
        m(owner[i] == unowned ? fallback : owner[i], i) = 1;
    }
    StochChannel flag = StochChannel::from_matrix(std::move(m));
    check_flag(flag, s);
    result.verdict = Verdict::Yes;
    result.certificate = flag;
    return result;
}

StochChannel programmer_from_flag(const StochChannel &flag, const StochGateFamily &g) {
    if (flag.out_dim() != g.size()) {
        throw Error(ErrorCode::IndexMismatch, "flag channel has " + std::to_string(flag.out_dim()) +
                                                  " outcomes for " + std::to_string(g.size()) + " gates");
    }
    size_t da = flag.in_dim();
    size_t db = g.in_dim();
    size_t dout = g.out_dim();
    RatMatrix w(dout, da * db);
    for (size_t a = 0; a < da; a++) {
        for (size_t x = 0; x < g.size(); x++) {
            const Rational &p = flag(x, a);
            if (sgn(p) == 0) {
                continue;
            }
            for (size_t b = 0; b < db; b++) {
                for (size_t o = 0; o < dout; o++) {
                    w(o, a * db + b) += p * g[x](o, b);
                }
            }
        }
    }
    return StochChannel::from_matrix(std::move(w));
}

bool verify_programmer(const StochChannel &w, const StochFamily &s, const StochGateFamily &g) {
    if (w.in_dim() != s.dim() * g.in_dim() || w.out_dim() != g.out_dim()) {
        return false;
    }
    StochGateFamily ga = aligned(g, s.labels());
    StochChannel id = StochChannel::identity(g.in_dim());
    for (size_t x = 0; x < s.size(); x++) {
        if (!(compose(tensor(s[x], id), w) == ga[x])) {
            return false;
        }
    }
    return true;
}

StochChannel build_programmer(const StochFamily &s, const StochGateFamily &g) {
    StochGateFamily ga = aligned(g, s.labels());
    StochDecision dist = decide_distinguishable(s);
    if (!dist.yes()) {
        throw Error(ErrorCode::NotDistinguishable, dist.diagnostic);
    }
    StochChannel w = programmer_from_flag(*dist.certificate, ga);
    if (!verify_programmer(w, s, ga)) {
        throw Error(ErrorCode::InvariantViolation, "programmer fails substitution");
    }
    return w;
}

StochDecision pullback_distinguishability(const StochFamily &s, const StochChannel &a, const StochFamily &image) {
    if (s.labels() != image.labels()) {
        throw Error(ErrorCode::IndexMismatch, "source and image families are indexed differently");
    }
    if (a.in_dim() != s.dim() || a.out_dim() != image.dim()) {
        throw Error(ErrorCode::MappingMismatch, "channel type does not match the two families");
    }
    for (size_t x = 0; x < s.size(); x++) {
        if (!(apply(a, s[x]) == image[x])) {
            throw Error(ErrorCode::MappingMismatch, "channel does not send '" + s.label(x) + "' to its image");
        }
    }
    StochDecision image_dist = decide_distinguishable(image);
    StochDecision result;
    if (!image_dist.yes()) {
        result.pair = image_dist.pair;
        result.diagnostic = "image family not distinguishable: " + image_dist.diagnostic;
        return result;
    }
    StochChannel flag = compose(a, *image_dist.certificate);
    check_flag(flag, s);
    result.verdict = Verdict::Yes;
    result.certificate = flag;
    return result;
}

StochDecision decide_copiable(const StochFamily &s) {
    size_t d = s.dim();
    LinearProgram lp;
    ChannelBlock block = add_channel_block(lp, d * d, d);
    for (const auto &rho : s.items()) {
        add_maps_to(lp, block, rho.probabilities(), tensor(rho, rho).probabilities());
    }
    LPResult res = solve(lp);
    StochDecision result;
    result.lp_status = res.status;
    if (res.status == LPStatus::Optimal) {
        StochChannel c = extract_channel(res.solution, block);
        for (const auto &rho : s.items()) {
            if (!(apply(c, rho) == tensor(rho, rho))) {
                throw Error(ErrorCode::InvariantViolation, "cloner fails substitution");
            }
        }
        result.verdict = Verdict::Yes;
        result.certificate = c;
    } else {
        result.diagnostic = "no channel copies every state of the family";
    }
    StochDecision dist = decide_distinguishable(s.subfamily(distinct_representatives(s)));
    if (dist.yes() != result.yes()) {
        throw Error(ErrorCode::InvariantViolation, "copiability and distinguishability disagree");
    }
    if (!result.yes()) {
        result.pair = dist.pair;
        result.shared_outcome = dist.shared_outcome;
        result.diagnostic += "; " + dist.diagnostic;
    }
    return result;
}

StochSideInfoReport check_side_info(const StochChannel &c, const StochFamily &s, size_t env_dim) {
    if (c.in_dim() != s.dim() || c.out_dim() != s.dim() * env_dim) {
        throw Error(ErrorCode::DimensionMismatch, "side-information channel must have type A -> A*E");
    }
    StochSideInfoReport report;
    for (size_t x = 0; x < s.size(); x++) {
        StochChannel out = apply(c, s[x]);
        if (!(marginal_stoch(out, s.dim(), env_dim, Keep::First) == s[x])) {
            throw Error(ErrorCode::MarginalDisturbed, "state '" + s.label(x) + "' is disturbed");
        }
        StochChannel eta = marginal_stoch(out, s.dim(), env_dim, Keep::Second);
        if (!(tensor(s[x], eta) == out)) {
            throw Error(ErrorCode::FactorizationFailure,
                        "output for '" + s.label(x) + "' is correlated with the environment");
        }
        report.eta.push_back(eta);
    }
    report.faithful = true;
    for (size_t x = 0; x < s.size(); x++) {
        for (size_t y = x + 1; y < s.size(); y++) {
            if (report.eta[x] == report.eta[y]) {
                report.faithful = false;
            } else {
                report.generated = true;
            }
        }
    }
    if (s.size() < 2) {
        report.faithful = false;
    }
    return report;
}

StochDecision find_faithful_side_info(const StochFamily &s) {
    StochDecision result;
    if (distinct_representatives(s).size() < 2) {
        result.verdict = Verdict::NotApplicable;
        result.diagnostic = "fewer than two distinct states";
        return result;
    }
    size_t d = s.dim();
    size_t n = s.size();
    LinearProgram lp;
    ChannelBlock block = add_channel_block(lp, d * n, d);
    for (size_t x = 0; x < n; x++) {
        add_maps_to(lp, block, s[x].probabilities(),
                    tensor(s[x], StochChannel::point_mass(n, x)).probabilities());
    }
    LPResult res = solve(lp);
    result.lp_status = res.status;
    if (res.status == LPStatus::Optimal) {
        StochChannel c = extract_channel(res.solution, block);
        if (!check_side_info(c, s, n).faithful) {
            throw Error(ErrorCode::InvariantViolation, "side-information channel is not faithful");
        }
        result.verdict = Verdict::Yes;
        result.certificate = c;
    } else {
        result.diagnostic = "no channel leaves the states intact while recording the label";
    }
    StochDecision dist = decide_distinguishable(s);
    if (dist.yes() != result.yes()) {
        throw Error(ErrorCode::InvariantViolation, "faithful side information and distinguishability disagree");
    }
    if (!result.yes()) {
        result.pair = dist.pair;
        result.shared_outcome = dist.shared_outcome;
        result.diagnostic += "; " + dist.diagnostic;
    }
    return result;
}

StochChannel iterate_side_info(const StochChannel &c, const StochFamily &s, size_t env_dim, size_t n) {
    if (n == 0) {
        return StochChannel::identity(s.dim());
    }
    StochSideInfoReport base = check_side_info(c, s, env_dim);
    StochChannel cn = c;
    size_t env_pow = env_dim;
    for (size_t k = 1; k < n; k++) {
        cn = compose(cn, tensor(c, StochChannel::identity(env_pow)));
        env_pow *= env_dim;
    }
    for (size_t x = 0; x < s.size(); x++) {
        StochChannel expected = s[x];
        for (size_t k = 0; k < n; k++) {
            expected = tensor(expected, base.eta[x]);
        }
        if (!(apply(cn, s[x]) == expected)) {
            throw Error(ErrorCode::InvariantViolation, "iterated channel fails on '" + s.label(x) + "'");
        }
    }
    return cn;
}

ConfusabilityGraph confusability(const StochFamily &s) {
    return internal::build_graph(s.labels(), [&](size_t x, size_t y) {
        return !decide_distinguishable(s.subfamily({x, y})).yes();
    });
}

ConstancyReport check_component_constancy(const StochChannel &c, const StochFamily &s, size_t env_dim) {
    StochSideInfoReport report = check_side_info(c, s, env_dim);
    return check_component_constancy(confusability(s), report.eta);
}

StochChannel build_component_side_info(const StochFamily &s, const std::vector<StochState> &eta_per_component) {
    ConfusabilityGraph graph = confusability(s);
    if (eta_per_component.size() != graph.components.size()) {
        throw Error(ErrorCode::IndexMismatch, "expected " + std::to_string(graph.components.size()) +
                                                  " environment states, one per component");
    }
    size_t d = s.dim();
    std::vector<std::string> labels;
    std::vector<StochState> quotient;
    for (size_t k = 0; k < graph.components.size(); k++) {
        const auto &comp = graph.components[k];
        std::vector<Rational> mix(d);
        for (size_t x : comp) {
            for (size_t i = 0; i < d; i++) {
                mix[i] += s[x](i, 0);
            }
        }
        for (auto &p : mix) {
            p /= static_cast<unsigned long>(comp.size());
        }
        labels.push_back("component" + std::to_string(k));
        quotient.push_back(StochChannel::state(mix));
    }
    StochFamily quotient_family(labels, quotient);
    StochGateFamily preparations(labels, eta_per_component);
    StochChannel w = build_programmer(quotient_family, preparations);
    StochChannel c = compose(StochChannel::copy(d), tensor(StochChannel::identity(d), w));
    check_side_info(c, s, preparations.out_dim());
    return c;
}

NoInfoReport<Rational> verify_no_info(const StochChannel &g, const StochState &alpha0, const StochState &alpha1,
                                      size_t env_dim) {
    const StochState *alpha[2] = {&alpha0, &alpha1};
    size_t d = alpha0.out_dim();
    if (!alpha0.is_state() || !alpha1.is_state() || alpha1.out_dim() != d) {
        throw Error(ErrorCode::DimensionMismatch, "expected two states of one system");
    }
    if (g.in_dim() != d || g.out_dim() != d * env_dim) {
        throw Error(ErrorCode::DimensionMismatch, "eavesdropper must have type A -> A*E");
    }
    for (const auto *a : alpha) {
        if (!is_pure_state_stoch(*a).pure) {
            throw Error(ErrorCode::NotPure, "input state is not a point mass");
        }
    }
    NoInfoReport<Rational> report;
    StochChannel eta[2] = {alpha0, alpha0};
    for (int x = 0; x < 2; x++) {
        StochChannel out = apply(g, *alpha[x]);
        report.disturbance[x] = total_variation(marginal_stoch(out, d, env_dim, Keep::First), *alpha[x]);
        eta[x] = marginal_stoch(out, d, env_dim, Keep::Second);
        if (sgn(report.disturbance[x]) == 0) {
            report.factorized[x] = tensor(*alpha[x], eta[x]) == out;
        }
    }
    report.info = total_variation(eta[0], eta[1]);
    report.distinguishable = decide_distinguishable(StochFamily({"0", "1"}, {alpha0, alpha1})).yes();
    bool undisturbed = sgn(report.disturbance[0]) == 0 && sgn(report.disturbance[1]) == 0;
    report.consistent = !(undisturbed && !report.distinguishable && sgn(report.info) != 0);
    for (const auto &f : report.factorized) {
        if (f.has_value() && !*f) {
            report.consistent = false;
        }
    }
    return report;
}

}  // namespace ptk
