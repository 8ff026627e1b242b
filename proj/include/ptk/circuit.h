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

#ifndef PTK_CIRCUIT_H
#define PTK_CIRCUIT_H

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ptk {

/// A system type is a tensor product of declared atomic systems. The empty
/// product is the unit system I. Tensor concatenates labels, so the unit is
/// absorbed automatically and `A*(B*C) == (A*B)*C`.
class SystemType {
   public:
    SystemType() = default;
    explicit SystemType(std::string label);
    explicit SystemType(std::vector<std::string> labels);

    static SystemType unit() {
        return SystemType();
    }

    const std::vector<std::string> &labels() const {
        return labels_;
    }
    bool is_unit() const {
        return labels_.empty();
    }

    /// Splits off the first `n` atoms; `split(n).second` is the remainder.
    std::pair<SystemType, SystemType> split(size_t n) const;

    std::string str() const;

    bool operator==(const SystemType &) const = default;
    bool operator<(const SystemType &other) const {
        return labels_ < other.labels_;
    }

   private:
    std::vector<std::string> labels_;
};

SystemType operator*(const SystemType &a, const SystemType &b);

/// Maps atomic system labels to backend dimensions.
class SystemTable {
   public:
    void declare(const std::string &label, size_t dim);
    bool contains(const std::string &label) const;
    size_t dim(const std::string &label) const;
    size_t dim(const SystemType &type) const;
    const std::map<std::string, size_t> &entries() const {
        return dims_;
    }

   private:
    std::map<std::string, size_t> dims_;
};

/// Which factor of a bipartite system a marginal keeps.
enum class Keep { First, Second };

enum class NodeKind { Generator, Identity, Discard, Swap, Seq, Par };

/// Immutable composition tree. Copies share structure; nothing is mutated
/// after construction so diagrams may be shared freely between threads.
class Diagram {
   public:
    static Diagram generator(std::string name, SystemType in, SystemType out);
    static Diagram identity(SystemType type);
    static Diagram discard(SystemType type);
    static Diagram swap(SystemType left, SystemType right);
    /// Builds a Seq node without checking the middle boundary. Used by the
    /// parser so that `typecheck` can report the offending node.
    static Diagram seq_unchecked(Diagram first, Diagram second);
    static Diagram par(Diagram left, Diagram right);

    NodeKind kind() const;
    const std::string &name() const;
    const SystemType &in_type() const;
    const SystemType &out_type() const;
    /// Children of Seq/Par nodes: first/second in composition order.
    const Diagram &first() const;
    const Diagram &second() const;
    /// Operand types of a Swap node.
    const SystemType &swap_left() const;
    const SystemType &swap_right() const;

    bool is_composite() const {
        return kind() == NodeKind::Seq || kind() == NodeKind::Par;
    }

    /// DSL text; composite children are parenthesized.
    std::string str() const;

    bool operator==(const Diagram &other) const;

   private:
    struct Node;
    explicit Diagram(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

/// `g ; h`. Throws Error(TypeMismatch) naming both boundary types.
Diagram seq_compose(const Diagram &g, const Diagram &h);

/// `g * h`. Always well-typed.
Diagram par_compose(const Diagram &g, const Diagram &h);

struct TypeReport {
    bool ok = true;
    SystemType in_type;
    SystemType out_type;
    std::optional<size_t> in_dim;
    std::optional<size_t> out_dim;
    // Populated on failure.
    std::string offending_node;
    SystemType expected;
    SystemType actual;

    std::string message() const;
};

/// Checks every Seq boundary bottom-up and stops at the first mismatch
/// (post-order, left to right). When `systems` is given, dimensions of the
/// overall boundary are filled in as well; unknown labels make the report fail.
TypeReport typecheck(const Diagram &d, const SystemTable *systems = nullptr);

/// Applies the identity and unit laws, drops scalars `id(I)`/`discard(I)`
/// from tensor products, and re-associates Seq and Par to the right.
/// The result is the canonical representative used for structural equality.
Diagram normalize(const Diagram &d);

}  // namespace ptk

#endif
