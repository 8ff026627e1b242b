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

#include "ptk/circuit.h"

#include "ptk/error.h"

namespace ptk {

SystemType::SystemType(std::string label) : labels_{std::move(label)} {
}

SystemType::SystemType(std::vector<std::string> labels) : labels_(std::move(labels)) {
}

std::pair<SystemType, SystemType> SystemType::split(size_t n) const {
    if (n > labels_.size()) {
        throw Error(ErrorCode::NotAProductType, "cannot split " + str() + " after " + std::to_string(n) + " factors");
    }
    std::vector<std::string> head(labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<std::string> tail(labels_.begin() + static_cast<std::ptrdiff_t>(n), labels_.end());
    return {SystemType(std::move(head)), SystemType(std::move(tail))};
}

std::string SystemType::str() const {
    if (labels_.empty()) {
        return "I";
    }
    std::string out;
    for (size_t i = 0; i < labels_.size(); i++) {
        if (i) {
            out += "*";
        }
        out += labels_[i];
    }
    return out;
}

SystemType operator*(const SystemType &a, const SystemType &b) {
    std::vector<std::string> labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    return SystemType(std::move(labels));
}

void SystemTable::declare(const std::string &label, size_t dim) {
    if (dim == 0) {
        throw Error(ErrorCode::DimensionError, "system " + label + " must have dimension >= 1");
    }
    dims_[label] = dim;
}

bool SystemTable::contains(const std::string &label) const {
    return dims_.count(label) != 0;
}

size_t SystemTable::dim(const std::string &label) const {
    auto it = dims_.find(label);
    if (it == dims_.end()) {
        throw Error(ErrorCode::ResolutionError, "undeclared system " + label);
    }
    return it->second;
}

size_t SystemTable::dim(const SystemType &type) const {
    size_t d = 1;
    for (const auto &label : type.labels()) {
        d *= dim(label);
    }
    return d;
}

struct Diagram::Node {
    NodeKind kind;
    std::string name;
    SystemType in;
    SystemType out;
    SystemType swap_left;
    SystemType swap_right;
    std::optional<Diagram> first;
    std::optional<Diagram> second;
};

Diagram::Diagram(std::shared_ptr<const Node> node) : node_(std::move(node)) {
}

Diagram Diagram::generator(std::string name, SystemType in, SystemType out) {
    return Diagram(std::make_shared<const Node>(
        Node{NodeKind::Generator, std::move(name), std::move(in), std::move(out), {}, {}, {}, {}}));
}

Diagram Diagram::identity(SystemType type) {
    return Diagram(std::make_shared<const Node>(Node{NodeKind::Identity, "id", type, type, {}, {}, {}, {}}));
}

Diagram Diagram::discard(SystemType type) {
    return Diagram(
        std::make_shared<const Node>(Node{NodeKind::Discard, "discard", std::move(type), SystemType(), {}, {}, {}, {}}));
}

Diagram Diagram::swap(SystemType left, SystemType right) {
    return Diagram(
        std::make_shared<const Node>(Node{NodeKind::Swap, "swap", left * right, right * left, left, right, {}, {}}));
}

Diagram Diagram::seq_unchecked(Diagram first, Diagram second) {
    SystemType in = first.in_type();
    SystemType out = second.out_type();
    return Diagram(std::make_shared<const Node>(
        Node{NodeKind::Seq, ";", std::move(in), std::move(out), {}, {}, std::move(first), std::move(second)}));
}

Diagram Diagram::par(Diagram left, Diagram right) {
    SystemType in = left.in_type() * right.in_type();
    SystemType out = left.out_type() * right.out_type();
    return Diagram(std::make_shared<const Node>(
        Node{NodeKind::Par, "*", std::move(in), std::move(out), {}, {}, std::move(left), std::move(right)}));
}

NodeKind Diagram::kind() const {
    return node_->kind;
}
const std::string &Diagram::name() const {
    return node_->name;
}
const SystemType &Diagram::in_type() const {
    return node_->in;
}
const SystemType &Diagram::out_type() const {
    return node_->out;
}
const Diagram &Diagram::first() const {
    return *node_->first;
}
const Diagram &Diagram::second() const {
    return *node_->second;
}
const SystemType &Diagram::swap_left() const {
    return node_->swap_left;
}
const SystemType &Diagram::swap_right() const {
    return node_->swap_right;
}

std::string Diagram::str() const {
    auto child = [](const Diagram &d) {
        return d.is_composite() ? "(" + d.str() + ")" : d.str();
    };
    switch (kind()) {
        case NodeKind::Generator:
            return name();
        case NodeKind::Identity:
            return "id(" + in_type().str() + ")";
        case NodeKind::Discard:
            return "discard(" + in_type().str() + ")";
        case NodeKind::Swap:
            return "swap(" + swap_left().str() + ", " + swap_right().str() + ")";
        case NodeKind::Seq:
            return child(first()) + " ; " + child(second());
        case NodeKind::Par:
            return child(first()) + " * " + child(second());
    }
    return "";
}

bool Diagram::operator==(const Diagram &other) const {
    if (node_ == other.node_) {
        return true;
    }
    const Node &a = *node_;
    const Node &b = *other.node_;
    if (a.kind != b.kind || a.in != b.in || a.out != b.out) {
        return false;
    }
    switch (a.kind) {
        case NodeKind::Generator:
            return a.name == b.name;
        case NodeKind::Identity:
        case NodeKind::Discard:
            return true;
        case NodeKind::Swap:
            return a.swap_left == b.swap_left && a.swap_right == b.swap_right;
        case NodeKind::Seq:
        case NodeKind::Par:
            return *a.first == *b.first && *a.second == *b.second;
    }
    return false;
}

Diagram seq_compose(const Diagram &g, const Diagram &h) {
    if (g.out_type() != h.in_type()) {
        throw Error(ErrorCode::TypeMismatch, "cannot compose " + g.str() + " : " + g.in_type().str() + " -> " +
                                                 g.out_type().str() + " with " + h.str() + " : " + h.in_type().str() +
                                                 " -> " + h.out_type().str());
    }
    return Diagram::seq_unchecked(g, h);
}

Diagram par_compose(const Diagram &g, const Diagram &h) {
    return Diagram::par(g, h);
}

std::string TypeReport::message() const {
    if (ok) {
        std::string msg = "OK " + in_type.str() + " -> " + out_type.str();
        if (in_dim && out_dim) {
            msg += " (dim " + std::to_string(*in_dim) + " -> " + std::to_string(*out_dim) + ")";
        }
        return msg;
    }
    return "type error at '" + offending_node + "': expected " + expected.str() + ", got " + actual.str();
}

namespace {

bool check_node(const Diagram &d, TypeReport &report) {
    if (d.is_composite()) {
        if (!check_node(d.first(), report) || !check_node(d.second(), report)) {
            return false;
        }
        if (d.kind() == NodeKind::Seq && d.first().out_type() != d.second().in_type()) {
            report.ok = false;
            report.offending_node = d.str();
            report.expected = d.first().out_type();
            report.actual = d.second().in_type();
            return false;
        }
    }
    return true;
}

bool is_scalar_identity(const Diagram &d) {
    return (d.kind() == NodeKind::Identity || d.kind() == NodeKind::Discard) && d.in_type().is_unit();
}

Diagram right_nest(NodeKind kind, const Diagram &a, const Diagram &b) {
    // (x . y) . b  ==>  x . (y . b)
    if (a.kind() == kind) {
        return right_nest(kind, a.first(), right_nest(kind, a.second(), b));
    }
    return kind == NodeKind::Seq ? Diagram::seq_unchecked(a, b) : Diagram::par(a, b);
}

}  // namespace

TypeReport typecheck(const Diagram &d, const SystemTable *systems) {
    TypeReport report;
    if (!check_node(d, report)) {
        return report;
    }
    report.in_type = d.in_type();
    report.out_type = d.out_type();
    if (systems != nullptr) {
        for (const auto *t : {&report.in_type, &report.out_type}) {
            for (const auto &label : t->labels()) {
                if (!systems->contains(label)) {
                    report.ok = false;
                    report.offending_node = d.str();
                    report.expected = SystemType(label);
                    report.actual = SystemType("<undeclared>");
                    return report;
                }
            }
        }
        report.in_dim = systems->dim(report.in_type);
        report.out_dim = systems->dim(report.out_type);
    }
    return report;
}

Diagram normalize(const Diagram &d) {
    switch (d.kind()) {
        case NodeKind::Generator:
        case NodeKind::Identity:
        case NodeKind::Swap:
            return d;
        case NodeKind::Discard:
            // discard(I) is the scalar 1.
            return d.in_type().is_unit() ? Diagram::identity(SystemType()) : d;
        case NodeKind::Seq: {
            Diagram a = normalize(d.first());
            Diagram b = normalize(d.second());
            if (a.kind() == NodeKind::Identity && a.out_type() == b.in_type()) {
                return b;
            }
            if (b.kind() == NodeKind::Identity && a.out_type() == b.in_type()) {
                return a;
            }
            return right_nest(NodeKind::Seq, a, b);
        }
        case NodeKind::Par: {
            Diagram a = normalize(d.first());
            Diagram b = normalize(d.second());
            if (is_scalar_identity(a)) {
                return b;
            }
            if (is_scalar_identity(b)) {
                return a;
            }
            return right_nest(NodeKind::Par, a, b);
        }
    }
    return d;
}

}  // namespace ptk
