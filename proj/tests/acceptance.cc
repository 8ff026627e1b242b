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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ptk/asymptotics.h"
#include "ptk/error.h"
#include "ptk/generate.h"
#include "ptk/model.h"
#include "ptk/tasks.h"

using namespace ptk;

namespace {

constexpr uint64_t kSeed = 20260401;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string &detail) {
    std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    failures += pass ? 0 : 1;
}

template <class F>
void run_criterion(int id, F body) {
    try {
        body();
    } catch (const std::exception &e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

std::vector<StochFamily> family_corpus() {
    Rng rng(kSeed);
    StochFamilyOptions opts;  // dim 2..5, 2..4 states, denominators <= 8
    std::vector<StochFamily> out;
    for (int i = 0; i < 200; i++) {
        out.push_back(random_stoch_family(rng, opts));
    }
    return out;
}

std::string counts(size_t yes, size_t total) {
    return std::to_string(total) + " families, " + std::to_string(yes) + " distinguishable";
}

void criterion1(const std::vector<StochFamily> &corpus) {
    auto t0 = Clock::now();
    size_t agree = 0, yes = 0;
    bool certs = true;
    for (const auto &s : corpus) {
        StochDecision dist = decide_distinguishable(s);
        StochDecision copy = decide_copiable(s);
        // The LP status is the LP route's own answer.
        bool lp_yes = copy.lp_status == LPStatus::Optimal;
        if (lp_yes == dist.yes() && copy.verdict == dist.verdict) {
            agree++;
        }
        if (copy.yes()) {
            for (size_t x = 0; x < s.size(); x++) {
                certs = certs && apply(*copy.certificate, s[x]) == tensor(s[x], s[x]);
            }
        }
        yes += dist.yes();
    }
    double t = seconds_since(t0);
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s; copy LP agrees on %zu; cloners exact: %s; %.2f s", counts(yes, corpus.size()).c_str(),
                  agree, certs ? "yes" : "no", t);
    report(1, agree == corpus.size() && certs && t < 60 && corpus.size() >= 200, buf);
}

void criterion2(const std::vector<StochFamily> &corpus) {
    size_t checked = 0, agree = 0;
    bool certs = true;
    for (const auto &s : corpus) {
        // Every generated family has pairwise distinct states.
        StochDecision dist = decide_distinguishable(s);
        StochDecision side = find_faithful_side_info(s);
        checked++;
        agree += side.verdict == dist.verdict;
        if (side.yes()) {
            const StochChannel &c = *side.certificate;
            for (size_t x = 0; x < s.size(); x++) {
                certs = certs && apply(c, s[x]) == tensor(s[x], StochChannel::point_mass(s.size(), x));
            }
            certs = certs && check_side_info(c, s, s.size()).faithful;
        }
    }
    report(2, agree == checked && certs,
           std::to_string(agree) + "/" + std::to_string(checked) + " verdicts agree; certificates exact: " +
               (certs ? "yes" : "no"));
}

void criterion3() {
    Rng rng(kSeed + 3);
    size_t channels = 0, constant = 0, negatives = 0, caught = 0;
    while (channels < 60) {
        ComponentFixture f = random_component_fixture(rng);
        std::vector<StochState> eta;
        for (size_t k = 0; k < f.components.size(); k++) {
            eta.push_back(random_stoch_state(rng, 3));
        }
        StochChannel c = build_component_side_info(f.family, eta);
        StochSideInfoReport r = check_side_info(c, f.family, 3);
        channels++;
        constant += check_component_constancy(c, f.family, 3).constant;

        ConfusabilityGraph g = confusability(f.family);
        for (const auto &comp : g.components) {
            if (comp.size() < 2) {
                continue;
            }
            std::vector<StochState> corrupted = r.eta;
            StochState other = random_stoch_state(rng, 3);
            if (other == corrupted[comp[1]]) {
                continue;
            }
            corrupted[comp[1]] = other;
            negatives++;
            ConstancyReport bad = check_component_constancy(g, corrupted);
            caught += !bad.constant && bad.violating_pair.has_value();
            break;
        }
    }
    report(3, constant == channels && negatives > 0 && caught == negatives,
           std::to_string(constant) + "/" + std::to_string(channels) + " constructed channels constant; " +
               std::to_string(caught) + "/" + std::to_string(negatives) + " corrupted fixtures rejected");
}

void criterion4() {
    Rng rng(kSeed + 4);
    size_t fixtures = 120, ok = 0;
    for (size_t i = 0; i < fixtures; i++) {
        PullbackFixture f = random_pullback_fixture(rng);
        StochDecision d = pullback_distinguishability(f.preimage, f.channel, f.image);
        if (!d.yes()) {
            continue;
        }
        // Programming equation for a random gate family through the certificate.
        size_t in = 1 + i % 3, out = 1 + (i / 3) % 3;
        std::vector<StochChannel> gates;
        for (size_t x = 0; x < f.preimage.size(); x++) {
            gates.push_back(random_stoch_channel(rng, in, out));
        }
        StochGateFamily g(f.preimage.labels(), gates);
        StochChannel w = programmer_from_flag(*d.certificate, g);
        bool flag_ok = true;
        for (size_t x = 0; x < f.preimage.size(); x++) {
            flag_ok = flag_ok && apply(*d.certificate, f.preimage[x]) == StochChannel::point_mass(g.size(), x);
        }
        ok += flag_ok && verify_programmer(w, f.preimage, g);
    }
    report(4, ok == fixtures, std::to_string(ok) + "/" + std::to_string(fixtures) + " pullback certificates exact");
}

QState ket(std::initializer_list<double> v) {
    CVector psi(v.size());
    Eigen::Index i = 0;
    for (double x : v) {
        psi(i++) = x;
    }
    return QState::from_ket(psi);
}

void criterion5() {
    Rng rng(kSeed + 5);
    size_t channels = 0, quiet = 0;
    double worst_info = 0, worst_dist = 0;
    for (double c : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (int i = 0; i < 20; i++) {
            auto [a0, a1] = pure_pair_with_overlap(rng, 3, c);
            QChannel g = random_nodist_channel(rng, a0, a1, 2, 1 + i % 3);
            NoInfoReport<double> r = verify_no_info(g, a0, a1, 2);
            channels++;
            worst_info = std::max(worst_info, r.info);
            worst_dist = std::max({worst_dist, r.disturbance[0], r.disturbance[1]});
            quiet += r.info <= 1e-9 && r.disturbance[0] <= 1e-9 && r.disturbance[1] <= 1e-9 && r.consistent;
        }
    }
    double s = 1 / std::sqrt(2.0);
    NoInfoReport<double> mr = verify_no_info(measure_resend_channel(2), ket({1, 0}), ket({s, s}), 2);
    bool resend = std::abs(mr.disturbance[1] - 0.5) <= 1e-9 && std::abs(mr.info - 0.5) <= 1e-9;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%zu/%zu nodist channels silent (max info %.2e, max disturbance %.2e); "
                  "measure-resend disturbance %.12f info %.12f",
                  quiet, channels, worst_info, worst_dist, mr.disturbance[1], mr.info);
    report(5, quiet == channels && channels >= 100 && resend, buf);
}

double trace_norm_error(const QState &a, const QState &b, size_t n) {
    CMatrix ra = a.matrix(), rb = b.matrix();
    for (size_t i = 1; i < n; i++) {
        ra = kron(ra, a.matrix());
        rb = kron(rb, b.matrix());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(ra - rb);
    return 0.5 * (1 - 0.5 * es.eigenvalues().cwiseAbs().sum());
}

void criterion6() {
    StochFamily s({"p", "q"}, {StochChannel::state({Rational(3, 4), Rational(1, 4)}),
                               StochChannel::state({Rational(1, 4), Rational(3, 4)})});
    Rational e1 = build_ml_discriminator(s, 1).epsilon;
    Rational e3 = build_ml_discriminator(s, 3).epsilon;
    bool goldens = e1 == Rational(1, 4) && e3 == Rational(5, 32);
    // eps_n <= (sqrt(3)/2)^n, squared to stay exact.
    bool bound = true;
    Rational three_quarters(3, 4), power = 1;
    for (size_t n = 1; n <= 15; n++) {
        power *= three_quarters;
        MLDiscriminator d = build_ml_discriminator(s, n);
        bound = bound && d.epsilon * d.epsilon <= power && d.bound_holds;
    }
    double c = chernoff_coefficient(s[0], s[1]);
    bool coeff = c <= std::sqrt(3.0) / 2 + 1e-15;

    double r = 1 / std::sqrt(2.0);
    QState zero = ket({1, 0}), plus = ket({r, r});
    double h1 = helstrom_error(zero, plus, 1);
    double oracle = trace_norm_error(zero, plus, 1);
    double h12 = helstrom_error(zero, plus, 12);
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "eps1=%s eps3=%s; eps_n^2 <= (3/4)^n for n<=15: %s; c_grid=%.15f; "
                  "Helstrom n=1 %.12f vs oracle %.12f; n=12 %.3e",
                  to_string(e1).c_str(), to_string(e3).c_str(), bound ? "yes" : "no", c, h1, oracle, h12);
    report(6, goldens && bound && coeff && std::abs(h1 - oracle) <= 1e-10 && h12 < 1e-3, buf);
}

void criterion7(const std::vector<StochFamily> &corpus) {
    auto t0 = Clock::now();
    size_t agree = 0;
    for (const auto &s : corpus) {
        StochGateFamily flags = flag_preparations(s.labels());
        MinDefectResult r = min_defect_programmer(s, flags);
        bool zero = r.status == LPStatus::Optimal && r.defect == 0;
        bool dist = decide_distinguishable(s).yes();
        if (zero == dist && (!zero || verify_programmer(r.programmer, s, flags))) {
            agree++;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu/%zu families: zero defect iff distinguishable; %.2f s", agree, corpus.size(),
                  seconds_since(t0));
    report(7, agree == corpus.size(), buf);
}

template <class Channel>
struct LawCounts {
    size_t diagrams = 0;
    size_t failures = 0;
};

template <class Channel, class Env, class Eval, class Equal, class Random>
LawCounts<Channel> check_laws(Rng &rng, const SystemTable &table, std::vector<std::string> atoms, Eval eval,
                              Equal equal, Random random_channel, size_t instances) {
    Env env;
    size_t counter = 0;
    DiagramGenerator gen(atoms, [&](const SystemType &in, const SystemType &out) {
        std::string name = "g" + std::to_string(counter++);
        env.emplace(name, random_channel(table.dim(in), table.dim(out)));
        return Diagram::generator(name, in, out);
    });
    LawCounts<Channel> counts;
    for (size_t i = 0; i < instances; i++) {
        SystemType t1 = gen.random_type(rng), t2 = gen.random_type(rng), t3 = gen.random_type(rng);
        SystemType t4 = gen.random_type(rng), t5 = gen.random_type(rng), t6 = gen.random_type(rng);
        Diagram a = gen.random_diagram(rng, t1, t2, 2);
        Diagram b = gen.random_diagram(rng, t3, t4, 2);
        Diagram c = gen.random_diagram(rng, t2, t5, 2);
        Diagram d = gen.random_diagram(rng, t4, t6, 2);
        counts.diagrams += 4;
        auto ev = [&](const Diagram &x) { return eval(x, env, table); };

        bool ok = equal(ev(seq_compose(par_compose(a, b), par_compose(c, d))),
                        ev(par_compose(seq_compose(a, c), seq_compose(b, d))));
        Channel ea = ev(a);
        ok = ok && equal(ev(seq_compose(Diagram::identity(t1), a)), ea);
        ok = ok && equal(ev(seq_compose(a, Diagram::identity(t2))), ea);
        ok = ok && equal(ev(seq_compose(a, Diagram::discard(t2))), ev(Diagram::discard(t1)));
        ok = ok && equal(ev(normalize(a)), ea);
        counts.failures += ok ? 0 : 1;
    }
    return counts;
}

void criterion8() {
    Rng rng(kSeed + 8);
    SystemTable stoch_table;
    stoch_table.declare("A", 2);
    stoch_table.declare("B", 3);
    stoch_table.declare("C", 1);
    auto stoch = check_laws<StochChannel, StochEnv>(
        rng, stoch_table, {"A", "B", "C"}, eval_stoch,
        [](const StochChannel &x, const StochChannel &y) { return x == y; },
        [&](size_t in, size_t out) { return random_stoch_channel(rng, in, out); }, 150);

    SystemTable q_table;
    // Qubit atoms plus a trivial one keep the largest Choi matrix at 256 x 256.
    q_table.declare("P", 2);
    q_table.declare("Q", 2);
    q_table.declare("U", 1);
    double worst = 0;
    auto quantum = check_laws<QChannel, QEnv>(
        rng, q_table, {"P", "Q", "U"}, eval_quantum,
        [&](const QChannel &x, const QChannel &y) {
            double diff = max_abs_diff(x.choi(), y.choi());
            worst = std::max(worst, diff);
            return diff <= 1e-12;
        },
        [&](size_t in, size_t out) { return random_quantum_channel(rng, in, out, 2); }, 150);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "finstoch %zu diagrams, %zu law failures (exact); quantum %zu diagrams, %zu failures, max "
                  "deviation %.2e",
                  stoch.diagrams, stoch.failures, quantum.diagrams, quantum.failures, worst);
    report(8, stoch.diagrams >= 500 && quantum.diagrams >= 500 && stoch.failures == 0 && quantum.failures == 0,
           buf);
}

std::string mutate(Rng &rng, std::string text) {
    static const std::vector<std::string> tokens = {
        "[",      "]",     "{",      "}",     "(",       ")",     ";",     "*",        "->",       ":",
        "=",      ",",     "ket",    "unitary", "kraus", "system", "state", "gate",    "family",   "gates",
        "circuit", "cert", "backend", "quantum", "finstoch", "1/0", "1e999", "-",      "i",        "\n",
        "#",      "99999999999999999999", "dim", "0", "I", "id(", "discard(", "swap(", "sideinfo", "1/3"};
    std::uniform_int_distribution<int> op(0, 6);
    int rounds = 1 + static_cast<int>(rng() % 4);
    for (int r = 0; r < rounds; r++) {
        size_t pos = text.empty() ? 0 : rng() % (text.size() + 1);
        switch (op(rng)) {
            case 0:
                if (!text.empty()) {
                    text[std::min(pos, text.size() - 1)] = static_cast<char>(rng() % 256);
                }
                break;
            case 1:
                text.erase(pos, rng() % 12);
                break;
            case 2:
                text.insert(pos, tokens[rng() % tokens.size()]);
                break;
            case 3:
                text.resize(pos);
                break;
            case 4: {
                size_t len = rng() % 20;
                text.insert(pos, text.substr(pos, len));
                break;
            }
            case 5: {
                std::string junk;
                for (size_t k = rng() % 16; k > 0; k--) {
                    junk += static_cast<char>(rng() % 256);
                }
                text.insert(pos, junk);
                break;
            }
            default:
                for (char &ch : text) {
                    if (ch == '\n' && rng() % 8 == 0) {
                        ch = ' ';
                    }
                }
        }
    }
    return text;
}

// Fuzz the model body, not the license block.
std::string strip_license(const std::string &text) {
    if (text.rfind("# Copyright", 0) != 0) {
        return text;
    }
    size_t end = text.find("\n\n");
    return end == std::string::npos ? text : text.substr(end + 2);
}

void criterion9() {
    std::vector<std::string> texts;
    std::vector<std::string> names;
    for (const auto &entry : std::filesystem::directory_iterator(PTK_CORPUS_DIR)) {
        if (entry.path().extension() != ".ptk") {
            continue;
        }
        std::ifstream in(entry.path());
        std::stringstream buf;
        buf << in.rdbuf();
        texts.push_back(buf.str());
        names.push_back(entry.path().filename().string());
    }
    size_t round_trips = 0;
    std::string broken;
    for (size_t i = 0; i < texts.size(); i++) {
        try {
            Model m = parse_model(texts[i]);
            std::string once = print_model(m);
            Model again = parse_model(once);
            if (again == m && print_model(again) == once) {
                round_trips++;
            } else {
                broken += " " + names[i];
            }
        } catch (const std::exception &e) {
            broken += " " + names[i] + "(" + e.what() + ")";
        }
    }

    Rng rng(kSeed + 9);
    size_t fuzzed = 10000, located = 0, accepted = 0, unlocated = 0, unstable = 0;
    for (size_t i = 0; i < fuzzed; i++) {
        std::string text = mutate(rng, strip_license(texts[i % texts.size()]));
        try {
            Model m = parse_model(text);
            accepted++;
            std::string once = print_model(m);
            if (print_model(parse_model(once)) != once) {
                unstable++;
            }
        } catch (const ParseError &e) {
            if (e.line() >= 1 && e.column() >= 1) {
                located++;
            } else {
                unlocated++;
            }
        } catch (...) {
            unlocated++;
        }
    }
    char buf[300];
    std::snprintf(buf, sizeof buf,
                  "%zu/%zu corpus files round-trip byte-identically%s; %zu fuzzed inputs: %zu located errors, "
                  "%zu accepted, %zu unlocated, %zu unstable prints",
                  round_trips, texts.size(), broken.empty() ? "" : (" [broken:" + broken + "]").c_str(), fuzzed,
                  located, accepted, unlocated, unstable);
    report(9, texts.size() >= 20 && round_trips == texts.size() && unlocated == 0 && unstable == 0 &&
                  located + accepted == fuzzed,
           buf);
}

}  // namespace

int main() {
    auto t0 = Clock::now();
    std::vector<StochFamily> corpus = family_corpus();
    run_criterion(1, [&] { criterion1(corpus); });
    run_criterion(2, [&] { criterion2(corpus); });
    run_criterion(3, criterion3);
    run_criterion(4, criterion4);
    run_criterion(5, criterion5);
    run_criterion(6, criterion6);
    run_criterion(7, [&] { criterion7(corpus); });
    run_criterion(8, criterion8);
    run_criterion(9, criterion9);
    std::printf("acceptance: %d failing, %.2f s\n", failures, seconds_since(t0));
    return failures;
}
