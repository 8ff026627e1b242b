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

#include <cmath>

#include "doctest.h"
#include "ptk/asymptotics.h"
#include "ptk/error.h"
#include "ptk/generate.h"
#include "test_util.h"

using namespace ptk;
using test::pvec;
using test::q;

namespace {

StochFamily pair_family(StochState p, StochState r) {
    return StochFamily({"p", "q"}, {std::move(p), std::move(r)});
}

// Enumerates every length-n outcome sequence, decodes it by maximum
// likelihood (ties to the lexicographically first label) and returns the
// worst per-label error mass.
Rational enumerate_ml_error(const StochFamily &s, size_t n) {
    size_t d = s.dim();
    size_t total = 1;
    for (size_t i = 0; i < n; i++) {
        total *= d;
    }
    std::vector<size_t> order(s.size());
    for (size_t x = 0; x < s.size(); x++) {
        order[x] = x;
    }
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return s.label(a) < s.label(b); });
    std::vector<Rational> error(s.size(), 0);
    for (size_t seq = 0; seq < total; seq++) {
        std::vector<Rational> like(s.size(), 1);
        size_t rest = seq;
        for (size_t i = 0; i < n; i++) {
            size_t outcome = rest % d;
            rest /= d;
            for (size_t x = 0; x < s.size(); x++) {
                like[x] *= s[x](outcome, 0);
            }
        }
        size_t best = order[0];
        for (size_t x : order) {
            if (like[x] > like[best]) {
                best = x;
            }
        }
        for (size_t x = 0; x < s.size(); x++) {
            if (x != best) {
                error[x] += like[x];
            }
        }
    }
    return *std::max_element(error.begin(), error.end());
}

double trace_norm_oracle(const QState &a, const QState &b, size_t n) {
    CMatrix ra = a.matrix(), rb = b.matrix();
    for (size_t i = 1; i < n; i++) {
        ra = kron(ra, a.matrix());
        rb = kron(rb, b.matrix());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(ra - rb);
    double norm = es.eigenvalues().cwiseAbs().sum();
    return 0.5 * (1 - 0.5 * norm);
}

Rational entry_defect(const StochChannel &w, const StochFamily &s, const StochGateFamily &g) {
    Rational worst = 0;
    for (size_t x = 0; x < s.size(); x++) {
        StochChannel got = compose(tensor(s[x], StochChannel::identity(g.in_dim())), w);
        for (size_t r = 0; r < got.out_dim(); r++) {
            for (size_t c = 0; c < got.in_dim(); c++) {
                Rational diff = abs(got(r, c) - g[x](r, c));
                if (diff > worst) {
                    worst = diff;
                }
            }
        }
    }
    return worst;
}

Rational rpow(const Rational &base, size_t n) {
    Rational r = 1;
    for (size_t i = 0; i < n; i++) {
        r *= base;
    }
    return r;
}

}  // namespace

TEST_CASE("iid powers") {
    StochFamily s = StochFamily({"a"}, {pvec({"1/2", "1/2"})});
    CHECK(iid_power(s, 1).power[0] == s[0]);
    CHECK(iid_power(s, 2).power[0] == pvec({"1/4", "1/4", "1/4", "1/4"}));
    CHECK(iid_power(s, 12).power.dim() == 4096);
    try {
        iid_power(s, 13);
        FAIL("expected DimensionOverflow");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::DimensionOverflow);
    }

    QFamily plus({"+"}, {test::ket_plus()});
    QFamily p2 = iid_power(plus, 2).power;
    CMatrix want = kron(test::ket_plus().matrix(), test::ket_plus().matrix());
    CHECK(max_abs_diff(p2[0].matrix(), want) <= 1e-12);
    CHECK(is_pure_state_q(p2[0]));
}

TEST_CASE("ML discriminator goldens") {
    StochFamily s = pair_family(pvec({"3/4", "1/4"}), pvec({"1/4", "3/4"}));
    MLDiscriminator d1 = build_ml_discriminator(s, 1);
    CHECK(d1.epsilon == q("1/4"));
    CHECK(enumerate_ml_error(s, 1) == q("1/4"));
    // Majority of three: 3 (1/4)^2 (3/4) + (1/4)^3 = 10/64.
    MLDiscriminator d3 = build_ml_discriminator(s, 3);
    CHECK(d3.epsilon == q("5/32"));
    CHECK(enumerate_ml_error(s, 3) == q("5/32"));
    REQUIRE(d3.flag.has_value());
    CHECK(d3.flag->in_dim() == 8);
    CHECK(is_deterministic_stoch(*d3.flag));

    StochFamily disjoint = pair_family(pvec({"1", "0"}), pvec({"0", "1"}));
    for (size_t n = 1; n <= 5; n++) {
        CHECK(build_ml_discriminator(disjoint, n).epsilon == 0);
    }

    StochFamily dup = pair_family(pvec({"1/2", "1/2"}), pvec({"1/2", "1/2"}));
    try {
        build_ml_discriminator(dup, 2);
        FAIL("expected DuplicateStates");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::DuplicateStates);
    }
}

TEST_CASE("Chernoff coefficient and exact bound") {
    StochState p = pvec({"3/4", "1/4"});
    StochState r = pvec({"1/4", "3/4"});
    // At s = 1/2: 2 sqrt(3/16) = sqrt(3)/2.
    CHECK(chernoff_coefficient(p, r) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
    Rational upper = chernoff_upper(p, r);
    CHECK(upper.get_d() >= std::sqrt(3.0) / 2);
    CHECK(upper * upper >= q("3/4"));

    StochFamily s = pair_family(p, r);
    for (size_t n = 1; n <= 15; n++) {
        MLDiscriminator d = build_ml_discriminator(s, n);
        CHECK(d.bound_holds);
        CHECK(d.epsilon <= rpow(upper, n));
        // Squared form of eps_n <= (sqrt(3)/2)^n, exact.
        CHECK(d.epsilon * d.epsilon <= rpow(q("3/4"), n));
    }
    CHECK(chernoff_coefficient(pvec({"1", "0"}), pvec({"0", "1"})) == 0);
}

TEST_CASE("ML error agrees with sequence enumeration") {
    Rng rng(41);
    StochFamilyOptions opts;
    opts.max_dim = 3;
    opts.max_states = 3;
    opts.disjoint_bias = 0.2;
    for (int i = 0; i < 40; i++) {
        StochFamily s = random_stoch_family(rng, opts);
        for (size_t n = 1; n <= 4; n++) {
            MLDiscriminator d = build_ml_discriminator(s, n);
            CHECK(d.epsilon == enumerate_ml_error(s, n));
            CHECK(d.bound_holds);
            Rational sum = 0;
            for (const auto &e : d.error_per_label) {
                CHECK(e <= d.epsilon);
                sum += e;
            }
            CHECK(d.epsilon >= 0);
            CHECK(d.epsilon <= 1);
        }
    }
}

TEST_CASE("odd-n majority error is non-increasing") {
    // For (a, 1 - a) against (1 - a, a) the ML decoder is the majority vote.
    for (int num = 0; num <= 16; num++) {
        if (num == 8) {
            continue;
        }
        Rational a(num, 16);
        a.canonicalize();
        StochFamily s = pair_family(StochChannel::state({a, 1 - a}), StochChannel::state({1 - a, a}));
        Rational prev = 1;
        for (size_t n = 1; n <= 13; n += 2) {
            Rational e = build_ml_discriminator(s, n).epsilon;
            CHECK(e <= prev);
            prev = e;
        }
    }
}

TEST_CASE("Helstrom error") {
    Rng rng(43);
    auto [o0, o1] = pure_pair_with_overlap(rng, 2, 0.0);
    CHECK(helstrom_error(o0, o1, 3) == doctest::Approx(0).epsilon(1e-12));
    CHECK(helstrom_error(test::ket0(), test::ket0(), 4) == doctest::Approx(0.5));

    double h1 = helstrom_error(test::ket0(), test::ket_plus(), 1);
    CHECK(std::abs(h1 - (1 - 1 / std::sqrt(2.0)) / 2) <= 1e-12);
    CHECK(std::abs(h1 - 0.1464466094) <= 1e-9);
    CHECK(std::abs(h1 - trace_norm_oracle(test::ket0(), test::ket_plus(), 1)) <= 1e-10);
    CHECK(helstrom_error(test::ket0(), test::ket_plus(), 12) < 1e-3);

    for (int i = 0; i < 20; i++) {
        size_t dim = 2 + i % 2;
        QState a = random_pure_state(rng, dim), b = random_pure_state(rng, dim);
        for (size_t n = 1; n <= 4; n++) {
            CHECK(std::abs(helstrom_error(a, b, n) - trace_norm_oracle(a, b, n)) <= 1e-10);
        }
    }
    CHECK_THROWS_AS(helstrom_error(QState::from_density(CMatrix::Identity(2, 2) / 2.0), test::ket0(), 1), Error);

    ErrorCurve<double> curve = helstrom_curve(test::ket0(), test::ket_plus(), 5);
    REQUIRE(curve.points.size() == 5);
    CHECK(curve.coefficient == doctest::Approx(0.5));
    for (const auto &pt : curve.points) {
        CHECK(pt.epsilon <= pt.bound);
    }
}

TEST_CASE("min-defect programmer goldens") {
    StochFamily s = StochFamily({"a", "b"}, {pvec({"1/2", "1/2", "0"}), pvec({"0", "1/2", "1/2"})});
    StochGateFamily flags = flag_preparations(s.labels());
    MinDefectResult r = min_defect_programmer(s, flags);
    CHECK(r.status == LPStatus::Optimal);
    CHECK(r.defect == q("1/4"));
    CHECK(entry_defect(r.programmer, s, flags) == q("1/4"));

    // Grid oracle: W is fixed by its first row w in [0, 1]^3.
    Rational best = 1;
    for (int a = 0; a <= 8; a++) {
        for (int b = 0; b <= 8; b++) {
            for (int c = 0; c <= 8; c++) {
                RatMatrix m(2, 3);
                Rational w[3] = {Rational(a, 8), Rational(b, 8), Rational(c, 8)};
                for (size_t i = 0; i < 3; i++) {
                    w[i].canonicalize();
                    m(0, i) = w[i];
                    m(1, i) = 1 - w[i];
                }
                Rational e = entry_defect(StochChannel::from_matrix(m), s, flags);
                if (e < best) {
                    best = e;
                }
            }
        }
    }
    CHECK(best == q("1/4"));

    StochFamily dist = StochFamily({"a", "b"}, {pvec({"1/2", "1/2", "0"}), pvec({"0", "0", "1"})});
    MinDefectResult zero = min_defect_programmer(dist, flag_preparations(dist.labels()));
    CHECK(zero.defect == 0);
    CHECK(verify_programmer(zero.programmer, dist, flag_preparations(dist.labels())));

    StochChannel flip = test::smat({{"0", "1"}, {"1", "0"}});
    StochGateFamily constant({"a", "b"}, {flip, flip});
    CHECK(min_defect_programmer(s, constant).defect == 0);

    MinDefectResult l1 = min_defect_programmer(s, flags, DefectNorm::L1);
    CHECK(l1.defect == q("1/2"));
}

TEST_CASE("properties: zero defect iff distinguishable") {
    Rng rng(44);
    for (int i = 0; i < 60; i++) {
        StochFamily s = random_stoch_family(rng);
        MinDefectResult r = min_defect_programmer(s, flag_preparations(s.labels()));
        CHECK((r.defect == 0) == decide_distinguishable(s).yes());
        CHECK(entry_defect(r.programmer, s, flag_preparations(s.labels())) == r.defect);
    }
}

TEST_CASE("asymptotic consistency check") {
    StochFamily disjoint = pair_family(pvec({"1", "0"}), pvec({"0", "1"}));
    ConsistencyReport a = asymptotic_consistency_check(disjoint, 4);
    CHECK(a.curve.points.size() == 4);
    for (const auto &pt : a.curve.points) {
        CHECK(pt.epsilon == 0);
    }
    CHECK(a.copiable == Verdict::Yes);
    CHECK(a.distinguishable == Verdict::Yes);
    CHECK(a.error_vanishing);
    CHECK(a.consistent);

    StochFamily overlap = pair_family(pvec({"3/4", "1/4"}), pvec({"1/4", "3/4"}));
    ConsistencyReport b = asymptotic_consistency_check(overlap, 9);
    CHECK(b.curve.points.back().epsilon * b.curve.points.back().epsilon <= rpow(q("3/4"), 9));
    CHECK(b.bound_holds);
    CHECK(b.error_vanishing);
    CHECK(b.copiable == Verdict::No);
    CHECK(b.distinguishable == Verdict::No);
    CHECK(b.consistent);

    StochFamily dup = pair_family(pvec({"1/2", "1/2"}), pvec({"1/2", "1/2"}));
    ConsistencyReport c = asymptotic_consistency_check(dup, 3);
    CHECK(c.duplicates);
    CHECK_FALSE(c.error_vanishing);
    for (const auto &pt : c.curve.points) {
        CHECK(pt.epsilon == 1);
    }
}
