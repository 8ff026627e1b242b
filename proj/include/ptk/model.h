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

#ifndef PTK_MODEL_H
#define PTK_MODEL_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptk/circuit.h"
#include "ptk/finstoch.h"
#include "ptk/quantum.h"
#include "ptk/tasks.h"

namespace ptk {

enum class Backend { FinStoch, Quantum };

const char *backend_name(Backend b);

/// Largest dimension of one declared system.
constexpr size_t kMaxStochSystemDim = 64;
constexpr size_t kMaxQuantumSystemDim = 16;
/// Largest dimension of any type written in a model.
constexpr size_t kMaxTypeDim = 4096;

struct Location {
    size_t line = 0;
    size_t column = 0;
};

struct SystemDecl {
    std::string name;
    size_t dim = 0;
    Location loc;
};

enum class StateForm { Vector, Ket, Density };

struct StateDecl {
    std::string name;
    SystemType type;
    StateForm form = StateForm::Vector;
    /// FinStoch probabilities as a column.
    RatMatrix exact;
    /// Quantum ket (a column) or density matrix.
    CMatrix numeric;
    Location loc;
};

/// Matrix: FinStoch stochastic matrix or quantum Choi matrix.
enum class GateForm { Matrix, Unitary, Kraus };

struct GateDecl {
    std::string name;
    SystemType in;
    SystemType out;
    GateForm form = GateForm::Matrix;
    RatMatrix exact;
    /// One matrix, or every Kraus operator.
    std::vector<CMatrix> numeric;
    Location loc;
};

struct FamilyDecl {
    std::string name;
    std::vector<std::string> labels;
    std::vector<std::string> members;
    Location loc;
};

struct GateFamilyDecl {
    std::string name;
    SystemType in;
    SystemType out;
    std::vector<std::string> labels;
    std::vector<std::string> members;
    Location loc;
};

struct CircuitDecl {
    std::string name;
    Diagram diagram;
    Location loc;
};

/// `flag C S`, `cloner C S`, `sideinfo C S E` (environment system E) and
/// `programmer W S Gs`.
enum class CertKind { Flag, Cloner, SideInfo, Programmer };

const char *cert_kind_name(CertKind k);

struct CertDecl {
    CertKind kind = CertKind::Flag;
    std::string channel;
    std::string family;
    std::string extra;
    Location loc;
};

/// A parsed model. Every reference resolves, every literal matches its
/// declared dimensions, and declarations are kept sorted by name. Matrices
/// are not yet checked for causality or complete positivity; the
/// materializing accessors below do that.
struct Model {
    std::optional<Backend> backend;
    std::vector<SystemDecl> systems;
    std::vector<StateDecl> states;
    std::vector<GateDecl> gates;
    std::vector<FamilyDecl> families;
    std::vector<GateFamilyDecl> gate_families;
    std::vector<CircuitDecl> circuits;
    std::vector<CertDecl> certs;

    bool operator==(const Model &other) const;

    SystemTable system_table() const;
    const SystemDecl *find_system(std::string_view name) const;
    const StateDecl *find_state(std::string_view name) const;
    const GateDecl *find_gate(std::string_view name) const;
    const FamilyDecl *find_family(std::string_view name) const;
    const GateFamilyDecl *find_gate_family(std::string_view name) const;
    const CircuitDecl *find_circuit(std::string_view name) const;

    /// Sorts declarations into canonical order.
    void canonicalize();
};

/// Throws ParseError with code SyntaxError, ResolutionError or
/// DimensionError; every error carries a 1-based line and column.
Model parse_model(std::string_view text);

/// Canonical text: header comment, backend, then systems, states, gates,
/// families, gate families, circuits and certificates, each sorted by name.
std::string print_model(const Model &m);

/// Backend objects. Throw MixedBackends when the model has the other backend,
/// ResolutionError for unknown names, and the backend's validation errors
/// (NotCausal, InvalidState, CPTPViolation) naming the declaration.
StochChannel stoch_generator(const Model &m, std::string_view name);
StochEnv stoch_env(const Model &m);
StochFamily stoch_family(const Model &m, std::string_view name);
StochGateFamily stoch_gate_family(const Model &m, std::string_view name);

QState quantum_state(const Model &m, std::string_view name);
QChannel quantum_generator(const Model &m, std::string_view name);
QEnv quantum_env(const Model &m);
QFamily quantum_family(const Model &m, std::string_view name);
QGateFamily quantum_gate_family(const Model &m, std::string_view name);

/// Literal formats shared with certificate writers.
std::string format_complex(Complex z);

}  // namespace ptk

#endif
