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

#include <set>

#include "doctest.h"
#include "ptk/asymptotics.h"
#include "ptk/error.h"
#include "ptk/generate.h"
#include "ptk/lp.h"
#include "ptk/tasks.h"
#include "test_util.h"

using namespace ptk;
using test::pvec;
using test::q;
using test::smat;

namespace {

StochFamily fam(std::vector<std::string> labels, std::vector<StochState> states) {
    return StochFamily(std::move(labels), std::move(states));
}

QFamily qfam(std::vector<std::string> labels, std::vector<QState> states) {
    return QFamily(std::move(labels), std::move(states));
}

// Independent NO oracle: is there any stochastic D with D(rho_x) = delta_x?
bool flag_lp_feasible(const StochFamily &s) {
    std::vector<ChannelCondition> conds;
    for (size_t x = 0; x < s.size(); x++) {
        auto c = maps_to(s.size(), s.dim(), s[x].probabilities(), StochChannel::point_mass(s.size(), x).probabilities());
        conds.insert(conds.end(), c.begin(), c.end());
    }
    return channel_feasibility(s.size(), s.dim(), conds).channel.has_value();
}

void require_flag(const StochChannel &d, const StochFamily &s) {
    for (size_t x = 0; x < s.size(); x++) {
        CHECK(apply(d, s[x]) == StochChannel::point_mass(s.size(), x));
    }
}

StochGateFamily random_gate_family(Rng &rng, size_t count, size_t in, size_t out) {
    std::vector<StochChannel> gates;
    for (size_t i = 0; i < count; i++) {
        gates.push_back(random_stoch_channel(rng, in, out));
    }
    return StochGateFamily(test::labels(count), gates);
}

CMatrix joint_of(const QState &a, const QState &b) {
    return kron(a.matrix(), b.matrix());
}

}  // namespace

TEST_CASE("distinguishability: finstoch examples") {
    StochFamily s = fam({"a", "b"}, {pvec({"1", "0", "0"}), pvec({"0", "1", "0"})});
    StochDecision yes = decide_distinguishable(s);
    REQUIRE(yes.yes());
    require_flag(*yes.certificate, s);
    // The unused outcome goes to the first label.
    CHECK((*yes.certificate)(0, 2) == 1);

    StochFamily overlap = fam({"a", "b"}, {pvec({"1/2", "1/2", "0"}), pvec({"0", "1/2", "1/2"})});
    StochDecision no = decide_distinguishable(overlap);
    CHECK(no.verdict == Verdict::No);
    CHECK(*no.shared_outcome == 1);
    CHECK(no.pair == std::make_pair(size_t(0), size_t(1)));
    CHECK_FALSE(flag_lp_feasible(overlap));
    CHECK(flag_lp_feasible(s));

    StochFamily dup = fam({"a", "b", "c"}, {pvec({"1", "0"}), pvec({"0", "1"}), pvec({"1", "0"})});
    StochDecision d = decide_distinguishable(dup);
    CHECK(d.verdict == Verdict::No);
    CHECK(d.pair == std::make_pair(size_t(0), size_t(2)));
}

TEST_CASE("distinguishability: ties go to the lexicographically first label") {
    StochFamily s = fam({"zeta", "alpha"}, {pvec({"1", "0", "0"}), pvec({"0", "1", "0"})});
    StochDecision d = decide_distinguishable(s);
    REQUIRE(d.yes());
    CHECK((*d.certificate)(1, 2) == 1);
}

TEST_CASE("family validation") {
    CHECK_THROWS_AS(fam({"a", "a"}, {pvec({"1", "0"}), pvec({"0", "1"})}), Error);
    CHECK_THROWS_AS(fam({"a"}, {pvec({"1", "0"}), pvec({"0", "1"})}), Error);
    CHECK_THROWS_AS(fam({"a", "b"}, {pvec({"1", "0"}), pvec({"0", "0", "1"})}), Error);
}

TEST_CASE("programmer: controlled flip") {
    StochFamily s = fam({"0", "1"}, {pvec({"1", "0"}), pvec({"0", "1"})});
    StochGateFamily g({"0", "1"}, {StochChannel::identity(2), smat({{"0", "1"}, {"1", "0"}})});
    StochChannel w = build_programmer(s, g);
    CHECK(w == smat({{"1", "0", "0", "1"}, {"0", "1", "1", "0"}}));
    CHECK(verify_programmer(w, s, g));
    CHECK_FALSE(verify_programmer(w, s, StochGateFamily({"0", "1"}, {g[1], g[0]})));
}

TEST_CASE("programmer: preparations from a mixed distinguishable family") {
    StochFamily s = fam({"a", "b", "c"}, {pvec({"1/2", "1/2", "0", "0", "0"}), pvec({"0", "0", "1/3", "2/3", "0"}),
                                          pvec({"0", "0", "0", "0", "1"})});
    std::vector<StochChannel> preps = {pvec({"1", "0", "0"}), pvec({"1/4", "1/4", "1/2"}), pvec({"0", "2/3", "1/3"})};
    StochGateFamily g({"a", "b", "c"}, preps);
    StochChannel w = build_programmer(s, g);
    CHECK(verify_programmer(w, s, g));
    for (size_t x = 0; x < 3; x++) {
        CHECK(apply(w, s[x]) == preps[x]);
    }

    StochFamily overlap = fam({"a", "b"}, {pvec({"1/2", "1/2"}), pvec({"0", "1"})});
    StochGateFamily two({"a", "b"}, {pvec({"1", "0"}), pvec({"0", "1"})});
    try {
        build_programmer(overlap, two);
        FAIL("expected NotDistinguishable");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::NotDistinguishable);
    }
    try {
        build_programmer(s, StochGateFamily({"a", "b"}, {preps[0], preps[1]}));
        FAIL("expected IndexMismatch");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::IndexMismatch);
    }
}

TEST_CASE("programmer: flag preparations recover the flag channel") {
    StochFamily s = fam({"a", "b"}, {pvec({"1/2", "0", "1/2"}), pvec({"0", "1", "0"})});
    StochChannel w = build_programmer(s, flag_preparations(s.labels()));
    CHECK(w.in_dim() == 3);
    require_flag(w, s);
}

TEST_CASE("properties: random gate families are programmed exactly") {
    Rng rng(31);
    for (int i = 0; i < 60; i++) {
        size_t dim = 2 + i % 4;
        size_t count = 2 + i % std::min<size_t>(3, dim - 1);
        StochFamily s = random_distinguishable_family(rng, dim, count);
        StochGateFamily g = random_gate_family(rng, count, 1 + i % 3, 1 + (i / 3) % 3);
        StochChannel w = build_programmer(s, g);
        CHECK(verify_programmer(w, s, g));
    }
}

TEST_CASE("pullback") {
    StochFamily s = fam({"a", "b"}, {pvec({"1", "0"}), pvec({"0", "1"})});
    StochDecision same = pullback_distinguishability(s, StochChannel::identity(2), s);
    CHECK(same.yes());

    // Coarse-graining four outcomes to two; the preimages are mixed.
    StochFamily pre = fam({"a", "b"}, {pvec({"1/2", "1/2", "0", "0"}), pvec({"0", "0", "1/3", "2/3"})});
    StochChannel coarse = smat({{"1", "1", "0", "0"}, {"0", "0", "1", "1"}});
    StochDecision d = pullback_distinguishability(pre, coarse, s);
    REQUIRE(d.yes());
    require_flag(*d.certificate, pre);

    StochChannel lump = smat({{"1", "1", "1", "1"}, {"0", "0", "0", "0"}});
    try {
        pullback_distinguishability(pre, lump, s);
        FAIL("expected MappingMismatch");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::MappingMismatch);
    }
    StochFamily collapsed = fam({"a", "b"}, {pvec({"1", "0"}), pvec({"1", "0"})});
    StochDecision no = pullback_distinguishability(pre, lump, collapsed);
    CHECK(no.verdict == Verdict::No);

    Rng rng(33);
    for (int i = 0; i < 30; i++) {
        PullbackFixture f = random_pullback_fixture(rng);
        StochDecision r = pullback_distinguishability(f.preimage, f.channel, f.image);
        REQUIRE(r.yes());
        require_flag(*r.certificate, f.preimage);
    }
}

TEST_CASE("copiability: finstoch examples") {
    StochFamily s = fam({"a", "b"}, {pvec({"1", "0"}), pvec({"0", "1"})});
    StochDecision yes = decide_copiable(s);
    REQUIRE(yes.yes());
    CHECK(*yes.certificate == StochChannel::copy(2));

    StochFamily overlap = fam({"a", "b"}, {pvec({"1/2", "1/2", "0"}), pvec({"0", "1/2", "1/2"})});
    StochDecision no = decide_copiable(overlap);
    CHECK(no.verdict == Verdict::No);
    CHECK(no.lp_status == LPStatus::Infeasible);

    // A single mixed state is copied by preparing a fresh copy.
    StochFamily single = fam({"a"}, {pvec({"1/2", "1/2"})});
    StochDecision one = decide_copiable(single);
    REQUIRE(one.yes());
    CHECK(apply(*one.certificate, single[0]) == tensor(single[0], single[0]));
}

TEST_CASE("properties: copiability equals distinguishability and is monotone") {
    Rng rng(34);
    for (int i = 0; i < 80; i++) {
        StochFamily s = random_stoch_family(rng);
        StochDecision dist = decide_distinguishable(s);
        StochDecision copy = decide_copiable(s);
        CHECK(dist.verdict == copy.verdict);
        CHECK(dist.yes() == flag_lp_feasible(s));
        if (copy.yes()) {
            for (size_t x = 0; x < s.size(); x++) {
                CHECK(apply(*copy.certificate, s[x]) == tensor(s[x], s[x]));
            }
        }
        if (!dist.yes()) {
            std::vector<std::string> labels = s.labels();
            std::vector<StochState> states = s.items();
            labels.push_back("extra");
            states.push_back(random_stoch_state(rng, s.dim()));
            CHECK_FALSE(decide_distinguishable(fam(labels, states)).yes());
        }
    }
}

TEST_CASE("side information: finstoch") {
    StochFamily s = fam({"a", "b"}, {pvec({"1", "0"}), pvec({"0", "1"})});
    StochSideInfoReport copy = check_side_info(StochChannel::copy(2), s, 2);
    CHECK(copy.faithful);
    CHECK(copy.generated);
    CHECK(copy.eta[0] == s[0]);
    CHECK(copy.eta[1] == s[1]);

    StochState eta = pvec({"1/3", "1/3", "1/3"});
    StochChannel fixed = tensor(StochChannel::identity(2), eta);
    StochSideInfoReport none = check_side_info(fixed, s, 3);
    CHECK_FALSE(none.generated);
    CHECK_FALSE(none.faithful);

    StochFamily mixed = fam({"m"}, {pvec({"1/2", "1/2"})});
    try {
        check_side_info(StochChannel::copy(2), mixed, 2);
        FAIL("expected FactorizationFailure");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::FactorizationFailure);
    }
    StochChannel flip_then_prep = tensor(smat({{"0", "1"}, {"1", "0"}}), eta);
    try {
        check_side_info(flip_then_prep, s, 3);
        FAIL("expected MarginalDisturbed");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::MarginalDisturbed);
    }
}

TEST_CASE("side information: two components") {
    // Components {a, b} on outcomes {0, 1} and {c} on outcome 2.
    StochFamily s = fam({"a", "b", "c"}, {pvec({"1", "0", "0"}), pvec({"1/2", "1/2", "0"}), pvec({"0", "0", "1"})});
    std::vector<StochState> eta = {pvec({"1", "0"}), pvec({"1/4", "3/4"})};
    StochChannel c = build_component_side_info(s, eta);
    StochSideInfoReport r = check_side_info(c, s, 2);
    CHECK(r.generated);
    CHECK_FALSE(r.faithful);
    CHECK(r.eta[0] == eta[0]);
    CHECK(r.eta[1] == eta[0]);
    CHECK(r.eta[2] == eta[1]);
    CHECK(check_component_constancy(c, s, 2).constant);

    ConfusabilityGraph g = confusability(s);
    std::vector<StochState> corrupted = r.eta;
    corrupted[1] = pvec({"0", "1"});
    ConstancyReport bad = check_component_constancy(g, corrupted);
    CHECK_FALSE(bad.constant);
    CHECK(bad.violating_pair == std::make_pair(size_t(0), size_t(1)));
}

TEST_CASE("faithful side information") {
    StochFamily s = fam({"a", "b"}, {pvec({"1/2", "1/2", "0"}), pvec({"0", "0", "1"})});
    StochDecision yes = find_faithful_side_info(s);
    REQUIRE(yes.yes());
    StochSideInfoReport r = check_side_info(*yes.certificate, s, 2);
    CHECK(r.faithful);
    CHECK(r.eta[0] == StochChannel::point_mass(2, 0));

    StochFamily overlap = fam({"a", "b"}, {pvec({"1/2", "1/2", "0"}), pvec({"0", "1/2", "1/2"})});
    StochDecision no = find_faithful_side_info(overlap);
    CHECK(no.verdict == Verdict::No);
    CHECK(no.lp_status == LPStatus::Infeasible);

    StochDecision single = find_faithful_side_info(fam({"a"}, {pvec({"1", "0"})}));
    CHECK(single.verdict == Verdict::NotApplicable);
}

TEST_CASE("iterated side information") {
    StochFamily s = fam({"a", "b"}, {pvec({"1", "0"}), pvec({"0", "1"})});
    StochChannel copy = StochChannel::copy(2);
    CHECK(iterate_side_info(copy, s, 2, 1) == copy);
    StochChannel c2 = iterate_side_info(copy, s, 2, 2);
    for (size_t x = 0; x < 2; x++) {
        CHECK(apply(c2, s[x]) == tensor(s[x], tensor(s[x], s[x])));
    }

    StochFamily t = fam({"a", "b", "c"}, {pvec({"1", "0", "0"}), pvec({"1/2", "1/2", "0"}), pvec({"0", "0", "1"})});
    std::vector<StochState> eta = {pvec({"2/3", "1/3"}), pvec({"0", "1"})};
    StochChannel c = build_component_side_info(t, eta);
    StochChannel c3 = iterate_side_info(c, t, 2, 3);
    StochChannel drop = tensor(StochChannel::discard(3), StochChannel::identity(8));
    for (size_t x = 0; x < 3; x++) {
        const StochState &e = eta[x < 2 ? 0 : 1];
        CHECK(apply(compose(c3, drop), t[x]) == tensor(e, tensor(e, e)));
    }
}

TEST_CASE("confusability graphs") {
    StochFamily disjoint = fam({"a", "b", "c"}, {pvec({"1", "0", "0"}), pvec({"0", "1", "0"}), pvec({"0", "0", "1"})});
    ConfusabilityGraph g0 = confusability(disjoint);
    CHECK(g0.edges.empty());
    CHECK(g0.components.size() == 3);

    StochFamily four = fam({"A", "B", "C", "D"}, {pvec({"1", "0", "0", "0"}), pvec({"1/2", "1/2", "0", "0"}),
                                                  pvec({"0", "0", "1", "0"}), pvec({"0", "0", "1/2", "1/2"})});
    ConfusabilityGraph g = confusability(four);
    using E = std::pair<size_t, size_t>;
    CHECK(g.edges == std::vector<E>{{0, 1}, {2, 3}});
    CHECK(g.components == std::vector<std::vector<size_t>>{{0, 1}, {2, 3}});
    CHECK(g.adjacent(1, 0));
    CHECK_FALSE(g.adjacent(0, 2));
    std::string dot = g.to_dot();
    CHECK(dot.find("\"A\" -- \"B\";") != std::string::npos);
    CHECK(dot.find("\"C\" -- \"D\";") != std::string::npos);

    StochFamily chain = fam({"A", "B", "C"}, {pvec({"1/2", "1/2", "0", "0"}), pvec({"0", "1/2", "1/2", "0"}),
                                              pvec({"0", "0", "1/2", "1/2"})});
    ConfusabilityGraph gc = confusability(chain);
    CHECK(gc.edges == std::vector<E>{{0, 1}, {1, 2}});
    CHECK_FALSE(gc.adjacent(0, 2));
    CHECK(gc.components.size() == 1);

    Rng rng(35);
    for (int i = 0; i < 20; i++) {
        ComponentFixture f = random_component_fixture(rng);
        CHECK(confusability(f.family).components == f.components);
    }
}

TEST_CASE("properties: component constancy on constructed channels") {
    Rng rng(36);
    for (int i = 0; i < 20; i++) {
        ComponentFixture f = random_component_fixture(rng);
        std::vector<StochState> eta;
        for (size_t k = 0; k < f.components.size(); k++) {
            eta.push_back(random_stoch_state(rng, 3));
        }
        StochChannel c = build_component_side_info(f.family, eta);
        CHECK(check_component_constancy(c, f.family, 3).constant);
    }
}

TEST_CASE("no information without disturbance: finstoch") {
    StochState a0 = pvec({"1", "0"});
    StochState a1 = pvec({"0", "1"});
    StochChannel g = tensor(StochChannel::identity(2), pvec({"1/2", "1/2"}));
    NoInfoReport<Rational> r = verify_no_info(g, a0, a1, 2);
    CHECK(r.disturbance[0] == 0);
    CHECK(r.disturbance[1] == 0);
    CHECK(r.info == 0);
    CHECK(r.consistent);

    // Copying two distinguishable point masses leaks everything undisturbed.
    NoInfoReport<Rational> copy = verify_no_info(StochChannel::copy(2), a0, a1, 2);
    CHECK(copy.info == 1);
    CHECK(copy.distinguishable);
    CHECK(copy.consistent);

    CHECK_THROWS_AS(verify_no_info(g, pvec({"1/2", "1/2"}), a1, 2), Error);
}

TEST_CASE("quantum distinguishability and cloning") {
    QFamily s = qfam({"0", "+"}, {test::ket0(), test::ket_plus()});
    QDecision no = decide_distinguishable(s);
    CHECK(no.verdict == Verdict::No);
    CHECK(no.overlap == doctest::Approx(0.5));
    CHECK(helstrom_error(test::ket0(), test::ket_plus(), 1) > 0);
    CHECK(decide_copiable(s).verdict == Verdict::No);

    QFamily z = qfam({"0", "1"}, {test::ket0(), test::ket1()});
    QDecision yes = decide_copiable(z);
    REQUIRE(yes.yes());
    for (size_t x = 0; x < 2; x++) {
        CHECK(max_abs_diff(yes.certificate->apply(z[x].matrix()), joint_of(z[x], z[x])) <= 1e-9);
    }

    Rng rng(37);
    for (int i = 0; i < 20; i++) {
        size_t dim = 2 + i % 3;
        QFamily f = random_quantum_family(rng, dim, 2 + i % (dim - 1), i % 2 == 0);
        QDecision d = decide_distinguishable(f);
        CHECK(d.yes() == (i % 2 == 0));
        CHECK(decide_copiable(f).verdict == d.verdict);
        if (d.yes()) {
            for (size_t x = 0; x < f.size(); x++) {
                CMatrix out = d.certificate->apply(f[x].matrix());
                CMatrix flag = CMatrix::Zero(f.size(), f.size());
                flag(x, x) = 1;
                CHECK(max_abs_diff(out, flag) <= 1e-9);
            }
        }
    }
}

TEST_CASE("quantum cloning residual over a measure-and-prepare grid") {
    // Independent of the decider: measure in a real basis at angle theta,
    // then prepare |phi_k>|phi_k>. No grid point clones |0> and |+>.
    const double pi = std::acos(-1.0);
    const int steps = 32;
    std::vector<CMatrix> products;
    for (int k = 0; k < steps; k++) {
        double phi = pi * k / steps;
        CVector v = test::cvec({std::cos(phi), std::sin(phi)});
        CMatrix p = v * v.adjoint();
        products.push_back(kron(p, p));
    }
    QState states[2] = {test::ket0(), test::ket_plus()};
    CMatrix targets[2] = {joint_of(states[0], states[0]), joint_of(states[1], states[1])};
    double best = 1;
    for (int t = 0; t < steps; t++) {
        double theta = pi * t / steps;
        CVector m0 = test::cvec({std::cos(theta), std::sin(theta)});
        CVector m1 = test::cvec({-std::sin(theta), std::cos(theta)});
        double probs[2][2];
        for (int x = 0; x < 2; x++) {
            probs[x][0] = (m0.adjoint() * states[x].matrix() * m0)(0, 0).real();
            probs[x][1] = (m1.adjoint() * states[x].matrix() * m1)(0, 0).real();
        }
        for (int a = 0; a < steps; a++) {
            for (int b = 0; b < steps; b++) {
                double residual = 0;
                for (int x = 0; x < 2; x++) {
                    CMatrix out = probs[x][0] * products[a] + probs[x][1] * products[b];
                    residual = std::max(residual, trace_distance(out, targets[x]));
                }
                best = std::min(best, residual);
            }
        }
    }
    CHECK(best > 0.01);
}

TEST_CASE("quantum programmer: controlled X") {
    QFamily s = qfam({"0", "1"}, {test::ket0(), test::ket1()});
    QGateFamily g({"0", "1"}, {QChannel::identity(2), QChannel::unitary(test::pauli_x())});
    QChannel w = build_programmer(s, g);
    CHECK(programmer_defect(w, s, g) <= 1e-9);
    Rng rng(38);
    QState rho = random_mixed_state(rng, 2, 2);
    CMatrix x = test::pauli_x();
    CHECK(max_abs_diff(w.apply(kron(test::ket1().matrix(), rho.matrix())), x * rho.matrix() * x) <= 1e-9);
    CHECK(max_abs_diff(w.apply(kron(test::ket0().matrix(), rho.matrix())), rho.matrix()) <= 1e-9);

    QFamily bad = qfam({"0", "1"}, {test::ket0(), test::ket_plus()});
    CHECK_THROWS_AS(build_programmer(bad, g), Error);
}

TEST_CASE("quantum pullback and side information") {
    QFamily z = qfam({"0", "1"}, {test::ket0(), test::ket1()});
    CHECK(pullback_distinguishability(z, QChannel::identity(2), z).yes());

    QDecision faithful = find_faithful_side_info(z);
    REQUIRE(faithful.yes());
    QSideInfoReport r = check_side_info(*faithful.certificate, z, 2);
    CHECK(r.faithful);
    CHECK(find_faithful_side_info(qfam({"0", "+"}, {test::ket0(), test::ket_plus()})).verdict == Verdict::No);

    // Components {|0>, |+>} in span{0, 1} and {|2>}.
    double s = 1 / std::sqrt(2.0);
    QFamily f = qfam({"a", "b", "c"}, {QState::from_ket(test::cvec({1, 0, 0})), QState::from_ket(test::cvec({s, s, 0})),
                                       QState::from_ket(test::cvec({0, 0, 1}))});
    ConfusabilityGraph g = confusability(f);
    CHECK(g.components == std::vector<std::vector<size_t>>{{0, 1}, {2}});
    Rng rng(39);
    std::vector<QState> eta = {random_mixed_state(rng, 2, 2), random_pure_state(rng, 2)};
    QChannel c = build_component_side_info(f, eta);
    QSideInfoReport rep = check_side_info(c, f, 2);
    CHECK(rep.generated);
    CHECK_FALSE(rep.faithful);
    CHECK(check_component_constancy(c, f, 2).constant);
    QChannel c2 = iterate_side_info(c, f, 2, 2);
    CMatrix want = kron(f[2].matrix(), kron(eta[1].matrix(), eta[1].matrix()));
    CHECK(max_abs_diff(c2.apply(f[2].matrix()), want) <= 1e-9);
}

TEST_CASE("quantum: no information without disturbance") {
    QChannel mr = measure_resend_channel(2);
    NoInfoReport<double> r = verify_no_info(mr, test::ket0(), test::ket_plus(), 2);
    CHECK(r.disturbance[0] == doctest::Approx(0).epsilon(1e-9));
    CHECK(std::abs(r.disturbance[1] - 0.5) <= 1e-9);
    CHECK(std::abs(r.info - 0.5) <= 1e-9);
    CHECK(r.consistent);

    Rng rng(40);
    for (double c : {0.1, 0.5, 0.9}) {
        auto [a0, a1] = pure_pair_with_overlap(rng, 3, c);
        QChannel g = random_nodist_channel(rng, a0, a1, 2);
        NoInfoReport<double> n = verify_no_info(g, a0, a1, 2);
        CHECK(n.disturbance[0] <= 1e-9);
        CHECK(n.disturbance[1] <= 1e-9);
        CHECK(n.info <= 1e-9);
        CHECK(n.consistent);
    }
    CHECK_THROWS_AS(verify_no_info(mr, QState::from_density(CMatrix::Identity(2, 2) / 2.0), test::ket0(), 2), Error);
}
