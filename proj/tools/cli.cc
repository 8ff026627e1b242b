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

#include "cli.h"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ptk/asymptotics.h"
#include "ptk/error.h"
#include "ptk/generate.h"
#include "ptk/model.h"
#include "ptk/tasks.h"

namespace ptk {

namespace {

struct Options {
    double tol = kDefaultQuantumTol;
    uint64_t seed = 1;
};

struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FileError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Model load(const std::string &path) {
    std::string text = read_file(path);
    try {
        return parse_model(text);
    } catch (const ParseError &e) {
        throw FileError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                        error_code_name(e.code()) + ": " + e.message());
    }
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw FileError("cannot write '" + path + "'");
    }
}

int exit_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvariantViolation:
            return kExitInvariant;
        case ErrorCode::NotDistinguishable:
        case ErrorCode::MarginalDisturbed:
        case ErrorCode::FactorizationFailure:
            return kExitNo;
        default:
            return kExitInputError;
    }
}

int exit_for(Verdict v) {
    return v == Verdict::Yes ? kExitYes : kExitNo;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string numeric_rows(const CMatrix &m) {
    std::string out;
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        out += "[";
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            out += (c ? ", " : "") + format_complex(m(r, c));
        }
        out += "]\n";
    }
    return out;
}

std::string exact_rows(const RatMatrix &m) {
    std::string out;
    for (size_t r = 0; r < m.rows(); r++) {
        out += "[";
        for (size_t c = 0; c < m.cols(); c++) {
            out += (c ? ", " : "") + to_string(m(r, c));
        }
        out += "]\n";
    }
    return out;
}

bool name_taken(const Model &m, const std::string &n) {
    return m.find_system(n) || m.find_state(n) || m.find_gate(n) || m.find_family(n) || m.find_gate_family(n) ||
           m.find_circuit(n);
}

std::string fresh_name(const Model &m, std::string base) {
    while (name_taken(m, base)) {
        base += "_";
    }
    return base;
}

const FamilyDecl &family_decl(const Model &m, const std::string &name) {
    const FamilyDecl *f = m.find_family(name);
    if (!f) {
        throw Error(ErrorCode::ResolutionError, "no family named '" + name + "'");
    }
    return *f;
}

SystemType family_type(const Model &m, const std::string &name) {
    return m.find_state(family_decl(m, name).members.front())->type;
}

const GateFamilyDecl &gate_family_decl(const Model &m, const std::string &name) {
    const GateFamilyDecl *g = m.find_gate_family(name);
    if (!g) {
        throw Error(ErrorCode::ResolutionError, "no gate family named '" + name + "'");
    }
    return *g;
}

/// Gate families indexed by the same labels are matched by label, otherwise
/// by position.
template <class GateFamily>
GateFamily align_gates(const std::vector<std::string> &labels, const GateFamily &g) {
    if (g.size() != labels.size()) {
        throw Error(ErrorCode::IndexMismatch, "family has " + std::to_string(labels.size()) + " members, gate family " +
                                                  std::to_string(g.size()));
    }
    std::vector<std::string> sorted_a = labels;
    std::vector<std::string> sorted_b = g.labels();
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (sorted_a == sorted_b) {
        return g;
    }
    return GateFamily(labels, g.items());
}

GateDecl gate_from(const std::string &name, SystemType in, SystemType out, const StochChannel &c) {
    GateDecl g;
    g.name = name;
    g.in = std::move(in);
    g.out = std::move(out);
    g.exact = c.matrix();
    return g;
}

GateDecl gate_from(const std::string &name, SystemType in, SystemType out, const QChannel &c) {
    GateDecl g;
    g.name = name;
    g.in = std::move(in);
    g.out = std::move(out);
    g.numeric = {c.choi()};
    return g;
}

/// Certificate file: the input model plus the certified channel and the
/// certificate line.
template <class Channel>
void write_cert(const std::string &path, Model m, CertKind kind, const std::string &family, const Channel &channel,
                const std::string &gates = "") {
    SystemType a = family_type(m, family);
    std::string name = fresh_name(m, kind == CertKind::Programmer ? "W" : "C");
    CertDecl cert;
    cert.kind = kind;
    cert.channel = name;
    cert.family = family;
    size_t labels = family_decl(m, family).members.size();
    switch (kind) {
        case CertKind::Flag: {
            std::string x = fresh_name(m, "X");
            m.systems.push_back({x, labels, {}});
            m.gates.push_back(gate_from(name, a, SystemType(x), channel));
            break;
        }
        case CertKind::Cloner:
            m.gates.push_back(gate_from(name, a, a * a, channel));
            break;
        case CertKind::SideInfo: {
            std::string e = fresh_name(m, "E");
            m.systems.push_back({e, labels, {}});
            m.gates.push_back(gate_from(name, a, a * SystemType(e), channel));
            cert.extra = e;
            break;
        }
        case CertKind::Programmer: {
            const GateFamilyDecl &g = gate_family_decl(m, gates);
            m.gates.push_back(gate_from(name, a * g.in, g.out, channel));
            cert.extra = gates;
            break;
        }
    }
    m.certs.push_back(cert);
    m.canonicalize();
    write_file(path, print_model(m));
}

bool is_stoch(const Model &m) {
    if (!m.backend) {
        throw Error(ErrorCode::ResolutionError, "model declares no backend");
    }
    return *m.backend == Backend::FinStoch;
}

template <class Channel>
void print_decision(std::ostream &out, const Decision<Channel> &d, bool quantum) {
    out << verdict_name(d.verdict) << "\n";
    if (!d.diagnostic.empty()) {
        out << "reason: " << d.diagnostic << "\n";
    }
    if (quantum) {
        out << "overlap: " << fmt(d.overlap) << "\n";
    }
    if (d.lp_status) {
        out << "lp: " << lp_status_name(*d.lp_status) << "\n";
    }
}

// Commands -----------------------------------------------------------------

int cmd_check(const std::string &file, std::ostream &out) {
    Model m = load(file);
    if (!m.backend) {
        out << "empty model\n";
        return kExitYes;
    }
    bool stoch = is_stoch(m);
    bool ok = true;
    out << "backend " << backend_name(*m.backend) << "\n";
    for (const auto &s : m.states) {
        out << "state " << s.name << " : " << s.type.str() << "  ";
        try {
            if (stoch) {
                bool pure = is_pure_state_stoch(stoch_generator(m, s.name)).pure;
                out << "causal  " << (pure ? "pure" : "mixed");
            } else {
                bool pure = is_pure_state_q(quantum_state(m, s.name));
                out << "valid  " << (pure ? "pure" : "mixed");
            }
        } catch (const Error &e) {
            ok = false;
            out << e.what();
        }
        out << "\n";
    }
    for (const auto &g : m.gates) {
        out << "gate " << g.name << " : " << g.in.str() << " -> " << g.out.str() << "  ";
        try {
            if (stoch) {
                StochChannel c = stoch_generator(m, g.name);
                out << "causal  " << (is_deterministic_stoch(c) ? "deterministic" : "random") << "  "
                    << (is_pure_gate_stoch(c).pure ? "pure" : "impure");
            } else {
                bool pure = is_pure_gate_q(quantum_generator(m, g.name));
                out << "cptp  " << (pure ? "pure" : "impure");
            }
        } catch (const Error &e) {
            ok = false;
            out << e.what();
        }
        out << "\n";
    }
    SystemTable table = m.system_table();
    for (const auto &c : m.circuits) {
        TypeReport r = typecheck(c.diagram, &table);
        out << "circuit " << c.name << "  ";
        if (r.ok) {
            out << r.in_type.str() << " -> " << r.out_type.str() << "  well-typed";
        } else {
            ok = false;
            out << "TypeMismatch: " << r.message();
        }
        out << "\n";
    }
    for (const auto &f : m.families) {
        out << "family " << f.name << " : " << f.members.size() << " states on " << family_type(m, f.name).str()
            << "\n";
    }
    out << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kExitYes : kExitNo;
}

int cmd_eval(const std::string &file, const std::string &name, std::ostream &out, std::ostream &err) {
    Model m = load(file);
    bool stoch = is_stoch(m);
    Diagram d = Diagram::identity(SystemType());
    if (const CircuitDecl *c = m.find_circuit(name)) {
        d = c->diagram;
    } else if (const StateDecl *s = m.find_state(name)) {
        d = Diagram::generator(s->name, SystemType(), s->type);
    } else if (const GateDecl *g = m.find_gate(name)) {
        d = Diagram::generator(g->name, g->in, g->out);
    } else {
        throw Error(ErrorCode::ResolutionError, "no circuit, state or gate named '" + name + "'");
    }
    SystemTable table = m.system_table();
    TypeReport r = typecheck(d, &table);
    if (!r.ok) {
        err << "error: TypeMismatch: " << r.message() << "\n";
        return kExitInputError;
    }
    out << name << " : " << r.in_type.str() << " -> " << r.out_type.str() << "\n";
    if (stoch) {
        out << exact_rows(eval_stoch(d, stoch_env(m), table).matrix());
    } else {
        out << numeric_rows(eval_quantum(d, quantum_env(m), table).choi());
    }
    return kExitYes;
}

int cmd_decide(const Options &opts, const std::string &kind, const std::string &file, const std::string &family,
               const std::string &cert_path, std::ostream &out) {
    Model m = load(file);
    CertKind cert_kind = kind == "dist" ? CertKind::Flag : kind == "clone" ? CertKind::Cloner : CertKind::SideInfo;
    if (is_stoch(m)) {
        StochFamily s = stoch_family(m, family);
        StochDecision d = kind == "dist"    ? decide_distinguishable(s)
                          : kind == "clone" ? decide_copiable(s)
                                            : find_faithful_side_info(s);
        print_decision(out, d, false);
        if (d.certificate) {
            out << exact_rows(d.certificate->matrix());
            if (!cert_path.empty()) {
                write_cert(cert_path, m, cert_kind, family, *d.certificate);
            }
        }
        return exit_for(d.verdict);
    }
    QFamily s = quantum_family(m, family);
    QDecision d = kind == "dist"    ? decide_distinguishable(s, opts.tol)
                  : kind == "clone" ? decide_copiable(s, opts.tol)
                                    : find_faithful_side_info(s, opts.tol);
    print_decision(out, d, true);
    if (d.certificate) {
        out << numeric_rows(d.certificate->choi());
        if (!cert_path.empty()) {
            write_cert(cert_path, m, cert_kind, family, *d.certificate);
        }
    }
    return exit_for(d.verdict);
}

int cmd_synth(const Options &opts, const std::string &file, const std::string &family, const std::string &gates,
              const std::string &cert_path, std::ostream &out) {
    Model m = load(file);
    if (is_stoch(m)) {
        StochFamily s = stoch_family(m, family);
        StochChannel w = build_programmer(s, align_gates(s.labels(), stoch_gate_family(m, gates)));
        out << "YES\n" << exact_rows(w.matrix());
        if (!cert_path.empty()) {
            write_cert(cert_path, m, CertKind::Programmer, family, w, gates);
        }
        return kExitYes;
    }
    QFamily s = quantum_family(m, family);
    QGateFamily g = align_gates(s.labels(), quantum_gate_family(m, gates));
    QChannel w = build_programmer(s, g, opts.tol);
    out << "YES\ndefect: " << fmt(programmer_defect(w, s, g)) << "\n" << numeric_rows(w.choi());
    if (!cert_path.empty()) {
        write_cert(cert_path, m, CertKind::Programmer, family, w, gates);
    }
    return kExitYes;
}

int cmd_graph(const Options &opts, const std::string &file, const std::string &family, std::ostream &out) {
    Model m = load(file);
    ConfusabilityGraph g =
        is_stoch(m) ? confusability(stoch_family(m, family)) : confusability(quantum_family(m, family), opts.tol);
    out << g.to_dot();
    return kExitYes;
}

int cmd_iid(const std::string &file, const std::string &family, size_t n_max, std::ostream &out) {
    Model m = load(file);
    out << "n,epsilon,bound\n";
    if (is_stoch(m)) {
        StochFamily s = stoch_family(m, family);
        for (const auto &p : ml_error_curve(s, n_max).points) {
            out << p.n << "," << to_string(p.epsilon) << "," << fmt(p.bound) << "\n";
        }
        return kExitYes;
    }
    QFamily s = quantum_family(m, family);
    if (s.size() != 2) {
        throw Error(ErrorCode::IndexMismatch, "quantum error curves need exactly two states");
    }
    for (const auto &p : helstrom_curve(s[0], s[1], n_max).points) {
        out << p.n << "," << fmt(p.epsilon) << "," << fmt(p.bound) << "\n";
    }
    return kExitYes;
}

template <class Report>
int print_noinfo(const Report &r, std::ostream &out, const std::function<std::string(decltype(r.info))> &show) {
    for (int x = 0; x < 2; x++) {
        out << "disturbance" << x << ": " << show(r.disturbance[x]) << "\n";
    }
    out << "info: " << show(r.info) << "\n";
    out << "distinguishable: " << (r.distinguishable ? "yes" : "no") << "\n";
    for (int x = 0; x < 2; x++) {
        if (r.factorized[x]) {
            out << "factorized" << x << ": " << (*r.factorized[x] ? "yes" : "no") << "\n";
        }
    }
    out << (r.consistent ? "PASS" : "FAIL") << "\n";
    return r.consistent ? kExitYes : kExitNo;
}

size_t env_dim_of(size_t in_dim, size_t out_dim) {
    if (in_dim == 0 || out_dim % in_dim != 0) {
        throw Error(ErrorCode::NotAProductType, "channel output does not factor as A*E");
    }
    return out_dim / in_dim;
}

int cmd_noinfo(const Options &opts, const std::string &file, const std::string &channel, const std::string &s0,
               const std::string &s1, std::ostream &out) {
    Model m = load(file);
    if (is_stoch(m)) {
        StochChannel g = stoch_generator(m, channel);
        auto r = verify_no_info(g, stoch_generator(m, s0), stoch_generator(m, s1),
                                env_dim_of(g.in_dim(), g.out_dim()));
        return print_noinfo(r, out, [](const Rational &v) {
            return to_string(v);
        });
    }
    QChannel g = quantum_generator(m, channel);
    auto r = verify_no_info(g, quantum_state(m, s0), quantum_state(m, s1), env_dim_of(g.in_dim(), g.out_dim()),
                            opts.tol);
    return print_noinfo(r, out, [](double v) {
        return fmt(v);
    });
}

bool verify_stoch_cert(const Model &m, const CertDecl &c, std::string &why) {
    StochChannel ch = stoch_generator(m, c.channel);
    StochFamily s = stoch_family(m, c.family);
    switch (c.kind) {
        case CertKind::Flag:
            if (ch.in_dim() != s.dim() || ch.out_dim() != s.size()) {
                why = "flag channel has the wrong type";
                return false;
            }
            for (size_t x = 0; x < s.size(); x++) {
                if (!(apply(ch, s[x]) == StochChannel::point_mass(s.size(), x))) {
                    why = "label '" + s.label(x) + "' is misread";
                    return false;
                }
            }
            return true;
        case CertKind::Cloner:
            if (ch.in_dim() != s.dim() || ch.out_dim() != s.dim() * s.dim()) {
                why = "cloner has the wrong type";
                return false;
            }
            for (size_t x = 0; x < s.size(); x++) {
                if (!(apply(ch, s[x]) == tensor(s[x], s[x]))) {
                    why = "state '" + s.label(x) + "' is not copied";
                    return false;
                }
            }
            return true;
        case CertKind::SideInfo: {
            try {
                auto r = check_side_info(ch, s, m.find_system(c.extra)->dim);
                why = r.generated ? (r.faithful ? "faithful" : "not faithful") : "no side information generated";
                return r.generated;
            } catch (const Error &e) {
                why = e.what();
                return false;
            }
        }
        case CertKind::Programmer:
            if (!verify_programmer(ch, s, align_gates(s.labels(), stoch_gate_family(m, c.extra)))) {
                why = "programmer fails substitution";
                return false;
            }
            return true;
    }
    return false;
}

bool verify_quantum_cert(const Model &m, const CertDecl &c, double tol, std::string &why) {
    QChannel ch = quantum_generator(m, c.channel);
    QFamily s = quantum_family(m, c.family);
    size_t d = s.dim();
    switch (c.kind) {
        case CertKind::Flag:
            if (ch.in_dim() != d || ch.out_dim() != s.size()) {
                why = "flag channel has the wrong type";
                return false;
            }
            for (size_t x = 0; x < s.size(); x++) {
                CMatrix target = CMatrix::Zero(s.size(), s.size());
                target(x, x) = 1;
                if (max_abs_diff(ch.apply(s[x].matrix()), target) > tol) {
                    why = "label '" + s.label(x) + "' is misread";
                    return false;
                }
            }
            return true;
        case CertKind::Cloner:
            if (ch.in_dim() != d || ch.out_dim() != d * d) {
                why = "cloner has the wrong type";
                return false;
            }
            for (size_t x = 0; x < s.size(); x++) {
                if (max_abs_diff(ch.apply(s[x].matrix()), kron(s[x].matrix(), s[x].matrix())) > tol) {
                    why = "state '" + s.label(x) + "' is not copied";
                    return false;
                }
            }
            return true;
        case CertKind::SideInfo: {
            try {
                auto r = check_side_info(ch, s, m.find_system(c.extra)->dim, tol);
                why = r.generated ? (r.faithful ? "faithful" : "not faithful") : "no side information generated";
                return r.generated;
            } catch (const Error &e) {
                why = e.what();
                return false;
            }
        }
        case CertKind::Programmer: {
            double defect = programmer_defect(ch, s, align_gates(s.labels(), quantum_gate_family(m, c.extra)));
            if (defect > tol) {
                why = "programmer defect " + fmt(defect);
                return false;
            }
            return true;
        }
    }
    return false;
}

/// Does the model's family of the same name hold the same states?
bool same_family(const Model &model, const Model &cert, const std::string &name, double tol) {
    if (!model.find_family(name)) {
        return true;
    }
    if (is_stoch(model)) {
        StochFamily a = stoch_family(model, name);
        StochFamily b = stoch_family(cert, name);
        return a.labels() == b.labels() && a.items() == b.items();
    }
    QFamily a = quantum_family(model, name);
    QFamily b = quantum_family(cert, name);
    if (a.labels() != b.labels() || a.dim() != b.dim()) {
        return false;
    }
    for (size_t x = 0; x < a.size(); x++) {
        if (max_abs_diff(a[x].matrix(), b[x].matrix()) > tol) {
            return false;
        }
    }
    return true;
}

int cmd_verify_cert(const Options &opts, const std::string &file, const std::string &cert_file,
                    std::ostream &out) {
    Model m = load(file);
    Model cm = load(cert_file);
    if (cm.certs.empty()) {
        throw Error(ErrorCode::ResolutionError, "'" + cert_file + "' holds no certificate");
    }
    if (m.backend && m.backend != cm.backend) {
        throw Error(ErrorCode::MixedBackends, "model and certificate use different backends");
    }
    bool all = true;
    for (const auto &c : cm.certs) {
        std::string why;
        bool ok = is_stoch(cm) ? verify_stoch_cert(cm, c, why) : verify_quantum_cert(cm, c, opts.tol, why);
        if (ok && !same_family(m, cm, c.family, opts.tol)) {
            ok = false;
            why = "family '" + c.family + "' differs from the model";
        }
        out << "cert " << cert_kind_name(c.kind) << " " << c.channel << " " << c.family << ": "
            << (ok ? (why.empty() ? "PASS" : "PASS (" + why + ")") : "FAIL " + why) << "\n";
        all = all && ok;
    }
    return all ? kExitYes : kExitNo;
}

int cmd_selftest(const Options &opts, std::ostream &out) {
    Rng rng(opts.seed);
    size_t checks = 0;
    for (int i = 0; i < 40; i++) {
        StochFamily s = random_stoch_family(rng);
        bool dist = decide_distinguishable(s).yes();
        if (decide_copiable(s).yes() != dist || find_faithful_side_info(s).yes() != dist) {
            out << "FAIL family " << i << "\n";
            return kExitInvariant;
        }
        bool zero = sgn(min_defect_programmer(s, flag_preparations(s.labels())).defect) == 0;
        if (zero != dist) {
            out << "FAIL min-defect " << i << "\n";
            return kExitInvariant;
        }
        checks += 3;
    }
    for (int i = 0; i < 20; i++) {
        QFamily s = random_quantum_family(rng, 3, 2, i % 2 == 0);
        if (decide_distinguishable(s, opts.tol).yes() != (i % 2 == 0)) {
            out << "FAIL quantum family " << i << "\n";
            return kExitInvariant;
        }
        checks++;
    }
    out << "selftest: " << checks << " checks passed (seed " << opts.seed << ")\n";
    return kExitYes;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact process-theory toolkit: distinguishability, copying and side information"};
    app.require_subcommand(1);
    Options opts;
    app.add_option("--tol", opts.tol, "Quantum tolerance")->capture_default_str();
    app.add_option("--seed", opts.seed, "Seed for generated suites")->capture_default_str();

    std::string file, name, extra, extra2, kind, cert_path;
    size_t n_max = 8;

    auto *check = app.add_subcommand("check", "Typecheck, causality and purity report");
    check->add_option("file", file)->required();

    auto *eval = app.add_subcommand("eval", "Evaluate a circuit");
    eval->add_option("file", file)->required();
    eval->add_option("circuit", name)->required();

    auto *decide = app.add_subcommand("decide", "Decide distinguishability, copiability or side information");
    decide->add_option("kind", kind)->required()->check(CLI::IsMember({"dist", "clone", "sideinfo"}));
    decide->add_option("file", file)->required();
    decide->add_option("family", name)->required();
    decide->add_option("-o,--output", cert_path, "Certificate file");

    auto *synth = app.add_subcommand("synth", "Synthesize a programmer");
    synth->add_option("what", kind)->required()->check(CLI::IsMember({"programmer"}));
    synth->add_option("file", file)->required();
    synth->add_option("family", name)->required();
    synth->add_option("gates", extra)->required();
    synth->add_option("-o,--output", cert_path, "Certificate file");

    auto *graph = app.add_subcommand("graph", "Emit a graph in DOT");
    graph->add_option("what", kind)->required()->check(CLI::IsMember({"confusability"}));
    graph->add_option("file", file)->required();
    graph->add_option("family", name)->required();

    auto *iid = app.add_subcommand("iid", "Error curve of i.i.d. discrimination as CSV");
    iid->add_option("file", file)->required();
    iid->add_option("family", name)->required();
    iid->add_option("--n-max", n_max, "Largest number of copies")->capture_default_str();

    auto *verify = app.add_subcommand("verify", "Verify a property or a certificate");
    verify->require_subcommand(1);
    auto *noinfo = verify->add_subcommand("noinfo", "Information gain versus disturbance");
    noinfo->add_option("file", file)->required();
    noinfo->add_option("channel", name)->required();
    noinfo->add_option("state0", extra)->required();
    noinfo->add_option("state1", extra2)->required();
    auto *cert = verify->add_subcommand("cert", "Check a certificate file");
    cert->add_option("file", file)->required();
    cert->add_option("cert", extra)->required();

    auto *selftest = app.add_subcommand("selftest", "Run a quick randomized consistency suite");

    for (auto *sub : {check, eval, decide, synth, graph, iid, noinfo, cert, selftest}) {
        sub->fallthrough();
    }
    verify->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitYes : kExitInputError;
    }

    try {
        if (*check) {
            return cmd_check(file, out);
        }
        if (*eval) {
            return cmd_eval(file, name, out, err);
        }
        if (*decide) {
            return cmd_decide(opts, kind, file, name, cert_path, out);
        }
        if (*synth) {
            return cmd_synth(opts, file, name, extra, cert_path, out);
        }
        if (*graph) {
            return cmd_graph(opts, file, name, out);
        }
        if (*iid) {
            return cmd_iid(file, name, n_max, out);
        }
        if (*noinfo) {
            return cmd_noinfo(opts, file, name, extra, extra2, out);
        }
        if (*cert) {
            return cmd_verify_cert(opts, file, extra, out);
        }
        if (*selftest) {
            return cmd_selftest(opts, out);
        }
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_for(e.code());
    } catch (const FileError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace ptk
