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
#include <deque>
#include <set>
#include <sstream>

#include "ptk/error.h"
#include "ptk/tasks.h"
#include "tasks_internal.h"

namespace ptk {

template <class T>
Labeled<T>::Labeled(std::vector<std::string> labels, std::vector<T> items)
    : labels_(std::move(labels)), items_(std::move(items)) {
    if (labels_.size() != items_.size()) {
        throw Error(ErrorCode::IndexMismatch, std::to_string(labels_.size()) + " labels for " +
                                                  std::to_string(items_.size()) + " items");
    }
    if (items_.empty()) {
        throw Error(ErrorCode::IndexMismatch, "a family needs at least one member");
    }
    std::set<std::string> seen;
    for (const auto &l : labels_) {
        if (!seen.insert(l).second) {
            throw Error(ErrorCode::IndexMismatch, "duplicate label '" + l + "'");
        }
    }
}

template class Labeled<StochChannel>;
template class Labeled<QState>;
template class Labeled<QChannel>;

StochFamily::StochFamily(std::vector<std::string> labels, std::vector<StochState> states)
    : Labeled(std::move(labels), std::move(states)) {
    for (const auto &s : items_) {
        if (!s.is_state()) {
            throw Error(ErrorCode::InvalidState, "family member is a channel, not a state");
        }
        if (s.out_dim() != dim()) {
            throw Error(ErrorCode::DimensionMismatch, "family members live on different systems");
        }
    }
}

StochFamily StochFamily::subfamily(const std::vector<size_t> &indices) const {
    std::vector<std::string> labels;
    std::vector<StochState> states;
    for (size_t i : indices) {
        labels.push_back(labels_.at(i));
        states.push_back(items_.at(i));
    }
    return StochFamily(std::move(labels), std::move(states));
}

QFamily::QFamily(std::vector<std::string> labels, std::vector<QState> states)
    : Labeled(std::move(labels), std::move(states)) {
    for (const auto &s : items_) {
        if (s.dim() != dim()) {
            throw Error(ErrorCode::DimensionMismatch, "family members live on different systems");
        }
    }
}

QFamily QFamily::subfamily(const std::vector<size_t> &indices) const {
    std::vector<std::string> labels;
    std::vector<QState> states;
    for (size_t i : indices) {
        labels.push_back(labels_.at(i));
        states.push_back(items_.at(i));
    }
    return QFamily(std::move(labels), std::move(states));
}

StochGateFamily::StochGateFamily(std::vector<std::string> labels, std::vector<StochChannel> gates)
    : Labeled(std::move(labels), std::move(gates)) {
    for (const auto &g : items_) {
        if (g.in_dim() != in_dim() || g.out_dim() != out_dim()) {
            throw Error(ErrorCode::DimensionMismatch, "gates of a family must share their type");
        }
    }
}

QGateFamily::QGateFamily(std::vector<std::string> labels, std::vector<QChannel> gates)
    : Labeled(std::move(labels), std::move(gates)) {
    for (const auto &g : items_) {
        if (g.in_dim() != in_dim() || g.out_dim() != out_dim()) {
            throw Error(ErrorCode::DimensionMismatch, "gates of a family must share their type");
        }
    }
}

StochGateFamily flag_preparations(const std::vector<std::string> &labels) {
    std::vector<StochChannel> gates;
    for (size_t x = 0; x < labels.size(); x++) {
        gates.push_back(StochChannel::point_mass(labels.size(), x));
    }
    return StochGateFamily(labels, std::move(gates));
}

const char *verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Yes:
            return "YES";
        case Verdict::No:
            return "NO";
        case Verdict::NotApplicable:
            return "NOT_APPLICABLE";
    }
    return "?";
}

bool ConfusabilityGraph::adjacent(size_t x, size_t y) const {
    auto key = std::minmax(x, y);
    return std::find(edges.begin(), edges.end(), std::pair<size_t, size_t>(key.first, key.second)) != edges.end();
}

std::string ConfusabilityGraph::to_dot() const {
    std::ostringstream out;
    out << "graph confusability {\n";
    for (size_t k = 0; k < components.size(); k++) {
        out << "  subgraph cluster_" << k << " {\n";
        for (size_t x : components[k]) {
            out << "    \"" << labels[x] << "\";\n";
        }
        out << "  }\n";
    }
    for (const auto &[x, y] : edges) {
        out << "  \"" << labels[x] << "\" -- \"" << labels[y] << "\";\n";
    }
    out << "}\n";
    return out.str();
}

ConstancyReport check_component_constancy(const ConfusabilityGraph &graph, const std::vector<StochState> &eta) {
    if (eta.size() != graph.labels.size()) {
        throw Error(ErrorCode::IndexMismatch, "one environment state per label expected");
    }
    ConstancyReport report;
    for (const auto &comp : graph.components) {
        for (size_t y : comp) {
            if (!(eta[y] == eta[comp.front()])) {
                report.constant = false;
                report.violating_pair = std::make_pair(comp.front(), y);
                return report;
            }
        }
    }
    return report;
}

ConstancyReport check_component_constancy(const ConfusabilityGraph &graph, const std::vector<QState> &eta,
                                          double tol) {
    if (eta.size() != graph.labels.size()) {
        throw Error(ErrorCode::IndexMismatch, "one environment state per label expected");
    }
    ConstancyReport report;
    for (const auto &comp : graph.components) {
        for (size_t y : comp) {
            if (max_abs_diff(eta[y].matrix(), eta[comp.front()].matrix()) > tol) {
                report.constant = false;
                report.violating_pair = std::make_pair(comp.front(), y);
                return report;
            }
        }
    }
    return report;
}

namespace internal {

size_t first_label(const std::vector<std::string> &labels) {
    return static_cast<size_t>(std::min_element(labels.begin(), labels.end()) - labels.begin());
}

ConfusabilityGraph build_graph(const std::vector<std::string> &labels,
                               const std::function<bool(size_t, size_t)> &confusable) {
    ConfusabilityGraph g;
    g.labels = labels;
    size_t n = labels.size();
    std::vector<std::vector<size_t>> adj(n);
    for (size_t x = 0; x < n; x++) {
        for (size_t y = x + 1; y < n; y++) {
            if (confusable(x, y)) {
                g.edges.emplace_back(x, y);
                adj[x].push_back(y);
                adj[y].push_back(x);
            }
        }
    }
    const size_t unseen = n;
    g.component.assign(n, unseen);
    for (size_t start = 0; start < n; start++) {
        if (g.component[start] != unseen) {
            continue;
        }
        size_t id = g.components.size();
        g.components.emplace_back();
        std::deque<size_t> queue{start};
        g.component[start] = id;
        while (!queue.empty()) {
            size_t v = queue.front();
            queue.pop_front();
            g.components[id].push_back(v);
            for (size_t w : adj[v]) {
                if (g.component[w] == unseen) {
                    g.component[w] = id;
                    queue.push_back(w);
                }
            }
        }
        std::sort(g.components[id].begin(), g.components[id].end());
    }
    return g;
}

std::vector<size_t> align_labels(const std::vector<std::string> &have, const std::vector<std::string> &wanted) {
    if (have.size() != wanted.size()) {
        throw Error(ErrorCode::IndexMismatch, "index sets differ in size");
    }
    std::vector<size_t> pos;
    for (const auto &w : wanted) {
        auto it = std::find(have.begin(), have.end(), w);
        if (it == have.end()) {
            throw Error(ErrorCode::IndexMismatch, "label '" + w + "' missing from the gate family");
        }
        pos.push_back(static_cast<size_t>(it - have.begin()));
    }
    return pos;
}

}  // namespace internal

}  // namespace ptk
