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

#include "ptk/lp.h"

#include "ptk/error.h"

namespace ptk {

size_t LinearProgram::add_variables(size_t count) {
    size_t first = num_vars_;
    num_vars_ += count;
    return first;
}

namespace {

// mpq_class(num, den) does not reduce; comparisons assume reduced values.
void canonicalize_terms(std::vector<LinearTerm> &terms) {
    for (auto &t : terms) {
        t.coeff.canonicalize();
    }
}

}  // namespace

void LinearProgram::add_constraint(std::vector<LinearTerm> terms, Sense sense, Rational rhs) {
    canonicalize_terms(terms);
    rhs.canonicalize();
    constraints_.push_back(Constraint{std::move(terms), sense, std::move(rhs)});
}

void LinearProgram::set_objective(std::vector<LinearTerm> terms) {
    canonicalize_terms(terms);
    objective_ = std::move(terms);
}

bool LinearProgram::is_satisfied_by(const std::vector<Rational> &x) const {
    if (x.size() != num_vars_) {
        return false;
    }
    for (const auto &v : x) {
        if (v < 0) {
            return false;
        }
    }
    for (const auto &c : constraints_) {
        Rational lhs = 0;
        for (const auto &t : c.terms) {
            lhs += t.coeff * x[t.var];
        }
        bool ok = c.sense == Sense::Equal ? lhs == c.rhs : c.sense == Sense::LessEqual ? lhs <= c.rhs : lhs >= c.rhs;
        if (!ok) {
            return false;
        }
    }
    return true;
}

Rational LinearProgram::objective_value(const std::vector<Rational> &x) const {
    Rational value = 0;
    for (const auto &t : objective_) {
        value += t.coeff * x[t.var];
    }
    return value;
}

const char *lp_status_name(LPStatus status) {
    switch (status) {
        case LPStatus::Optimal:
            return "Optimal";
        case LPStatus::Infeasible:
            return "Infeasible";
        case LPStatus::Unbounded:
            return "Unbounded";
    }
    return "Unknown";
}

namespace {

// Canonical-form tableau. Row i reads  x_basis[i] + sum_j rows[i][j] x_j = rows[i][rhs].
// The objective row holds reduced costs d_j = c_B B^-1 A_j - c_j and, in the
// rhs slot, the current objective value.
class Tableau {
   public:
    Tableau(size_t num_rows, size_t num_cols)
        : cols_(num_cols), rows_(num_rows, std::vector<Rational>(num_cols + 1)), obj_(num_cols + 1), basis_(num_rows) {
    }

    size_t num_rows() const {
        return rows_.size();
    }
    size_t rhs() const {
        return cols_;
    }
    Rational &at(size_t r, size_t c) {
        return rows_[r][c];
    }
    std::vector<Rational> &objective() {
        return obj_;
    }
    std::vector<size_t> &basis() {
        return basis_;
    }
    size_t pivots() const {
        return pivots_;
    }

    /// Recomputes the reduced-cost row for the maximization objective `c`.
    void load_objective(const std::vector<Rational> &c) {
        for (size_t j = 0; j <= cols_; j++) {
            obj_[j] = j < cols_ ? Rational(-c[j]) : Rational(0);
        }
        for (size_t i = 0; i < rows_.size(); i++) {
            const Rational &cb = c[basis_[i]];
            if (cb == 0) {
                continue;
            }
            for (size_t j = 0; j <= cols_; j++) {
                if (rows_[i][j] != 0) {
                    obj_[j] += cb * rows_[i][j];
                }
            }
        }
    }

    void pivot(size_t r, size_t c) {
        pivots_++;
        std::vector<Rational> &prow = rows_[r];
        if (prow[c] != 1) {
            Rational inv = 1 / prow[c];
            for (auto &v : prow) {
                if (v != 0) {
                    v *= inv;
                }
            }
        }
        nonzero_.clear();
        for (size_t j = 0; j <= cols_; j++) {
            if (prow[j] != 0) {
                nonzero_.push_back(j);
            }
        }
        auto eliminate = [&](std::vector<Rational> &row) {
            if (row[c] == 0) {
                return;
            }
            Rational factor = row[c];
            for (size_t j : nonzero_) {
                row[j] -= factor * prow[j];
            }
        };
        for (size_t i = 0; i < rows_.size(); i++) {
            if (i != r) {
                eliminate(rows_[i]);
            }
        }
        eliminate(obj_);
        basis_[r] = c;
    }

    /// Primal simplex with Bland's rule over columns [0, allowed_cols).
    /// Returns false if the objective is unbounded.
    bool optimize(size_t allowed_cols) {
        while (true) {
            size_t enter = allowed_cols;
            for (size_t j = 0; j < allowed_cols; j++) {
                if (obj_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == allowed_cols) {
                return true;
            }
            size_t leave = rows_.size();
            for (size_t i = 0; i < rows_.size(); i++) {
                const Rational &a = rows_[i][enter];
                if (a <= 0) {
                    continue;
                }
                if (leave == rows_.size()) {
                    leave = i;
                    continue;
                }
                // Compare rhs_i / a against rhs_leave / a_leave without dividing.
                int cmp = cmp_ratio(rows_[i][cols_], a, rows_[leave][cols_], rows_[leave][enter]);
                if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[leave])) {
                    leave = i;
                }
            }
            if (leave == rows_.size()) {
                return false;
            }
            pivot(leave, enter);
        }
    }

    void erase_row(size_t r) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    }

    /// Drops columns [first, cols) keeping the rhs column.
    void truncate_columns(size_t first) {
        auto shrink = [&](std::vector<Rational> &row) {
            Rational rhs_value = row[cols_];
            row.resize(first + 1);
            row[first] = rhs_value;
        };
        for (auto &row : rows_) {
            shrink(row);
        }
        shrink(obj_);
        cols_ = first;
    }

   private:
    static int cmp_ratio(const Rational &n1, const Rational &d1, const Rational &n2, const Rational &d2) {
        Rational lhs = n1 * d2;
        Rational rhs = n2 * d1;
        return cmp(lhs, rhs);
    }

    size_t cols_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> obj_;
    std::vector<size_t> basis_;
    std::vector<size_t> nonzero_;
    size_t pivots_ = 0;
};

}  // namespace

LPResult solve(const LinearProgram &lp) {
    const size_t nv = lp.num_vars();
    const auto &cons = lp.constraints();
    for (const auto &c : cons) {
        for (const auto &t : c.terms) {
            if (t.var >= nv) {
                throw Error(ErrorCode::DimensionMismatch, "constraint references variable " + std::to_string(t.var) +
                                                              " of " + std::to_string(nv));
            }
        }
    }
    for (const auto &t : lp.objective()) {
        if (t.var >= nv) {
            throw Error(ErrorCode::DimensionMismatch, "objective references a missing variable");
        }
    }

    const size_t m = cons.size();
    // Normalize to non-negative right-hand sides.
    std::vector<Sense> sense(m);
    std::vector<int> sign(m, 1);
    size_t num_slack = 0;
    size_t num_art = 0;
    for (size_t i = 0; i < m; i++) {
        sense[i] = cons[i].sense;
        if (cons[i].rhs < 0) {
            sign[i] = -1;
            if (sense[i] == Sense::LessEqual) {
                sense[i] = Sense::GreaterEqual;
            } else if (sense[i] == Sense::GreaterEqual) {
                sense[i] = Sense::LessEqual;
            }
        }
        if (sense[i] != Sense::Equal) {
            num_slack++;
        }
        if (sense[i] != Sense::LessEqual) {
            num_art++;
        }
    }
    const size_t slack_start = nv;
    const size_t art_start = nv + num_slack;
    const size_t cols = art_start + num_art;

    Tableau tab(m, cols);
    std::vector<Rational> phase1(cols);
    size_t next_slack = slack_start;
    size_t next_art = art_start;
    for (size_t i = 0; i < m; i++) {
        for (const auto &t : cons[i].terms) {
            tab.at(i, t.var) += sign[i] * t.coeff;
        }
        tab.at(i, tab.rhs()) = sign[i] * cons[i].rhs;
        if (sense[i] == Sense::LessEqual) {
            tab.at(i, next_slack) = 1;
            tab.basis()[i] = next_slack++;
        } else {
            if (sense[i] == Sense::GreaterEqual) {
                tab.at(i, next_slack++) = -1;
            }
            tab.at(i, next_art) = 1;
            phase1[next_art] = -1;
            tab.basis()[i] = next_art++;
        }
    }

    LPResult result;
    if (num_art > 0) {
        tab.load_objective(phase1);
        tab.optimize(cols);
        result.infeasibility = -tab.objective()[tab.rhs()];
        if (result.infeasibility > 0) {
            result.status = LPStatus::Infeasible;
            result.pivots = tab.pivots();
            return result;
        }
        // Artificials still basic sit at level zero; pivot them out or drop
        // the row when it is a linear combination of the others.
        for (size_t i = tab.num_rows(); i-- > 0;) {
            if (tab.basis()[i] < art_start) {
                continue;
            }
            size_t col = art_start;
            for (size_t j = 0; j < art_start; j++) {
                if (tab.at(i, j) != 0) {
                    col = j;
                    break;
                }
            }
            if (col == art_start) {
                tab.erase_row(i);
            } else {
                tab.pivot(i, col);
            }
        }
        tab.truncate_columns(art_start);
    }

    std::vector<Rational> c(art_start);
    for (const auto &t : lp.objective()) {
        c[t.var] += t.coeff;
    }
    tab.load_objective(c);
    bool bounded = tab.optimize(art_start);
    result.pivots = tab.pivots();
    if (!bounded) {
        result.status = LPStatus::Unbounded;
        return result;
    }
    result.status = LPStatus::Optimal;
    result.solution.assign(nv, Rational(0));
    for (size_t i = 0; i < tab.num_rows(); i++) {
        if (tab.basis()[i] < nv) {
            result.solution[tab.basis()[i]] = tab.at(i, tab.rhs());
        }
    }
    if (!lp.is_satisfied_by(result.solution)) {
        throw Error(ErrorCode::InvariantViolation, "simplex returned a point violating its constraints");
    }
    result.objective = lp.objective_value(result.solution);
    return result;
}

ChannelBlock add_channel_block(LinearProgram &lp, size_t out_dim, size_t in_dim) {
    ChannelBlock block{lp.add_variables(out_dim * in_dim), out_dim, in_dim};
    for (size_t c = 0; c < in_dim; c++) {
        std::vector<LinearTerm> terms;
        for (size_t r = 0; r < out_dim; r++) {
            terms.push_back({block.var(r, c), 1});
        }
        lp.add_constraint(std::move(terms), Sense::Equal, 1);
    }
    return block;
}

void add_maps_to(LinearProgram &lp, const ChannelBlock &block, const std::vector<Rational> &input,
                 const std::vector<Rational> &output) {
    if (input.size() != block.in_dim || output.size() != block.out_dim) {
        throw Error(ErrorCode::DimensionMismatch, "maps_to condition does not match the channel shape");
    }
    for (size_t r = 0; r < block.out_dim; r++) {
        std::vector<LinearTerm> terms;
        for (size_t c = 0; c < block.in_dim; c++) {
            if (input[c] != 0) {
                terms.push_back({block.var(r, c), input[c]});
            }
        }
        lp.add_constraint(std::move(terms), Sense::Equal, output[r]);
    }
}

StochChannel extract_channel(const std::vector<Rational> &solution, const ChannelBlock &block) {
    RatMatrix m(block.out_dim, block.in_dim);
    for (size_t r = 0; r < block.out_dim; r++) {
        for (size_t c = 0; c < block.in_dim; c++) {
            m(r, c) = solution[block.var(r, c)];
        }
    }
    return StochChannel::from_matrix(std::move(m));
}

std::vector<ChannelCondition> maps_to(size_t out_dim, size_t in_dim, const std::vector<Rational> &input,
                                      const std::vector<Rational> &output) {
    if (input.size() != in_dim || output.size() != out_dim) {
        throw Error(ErrorCode::DimensionMismatch, "maps_to condition does not match the channel shape");
    }
    std::vector<ChannelCondition> out;
    for (size_t r = 0; r < out_dim; r++) {
        ChannelCondition cond{{}, Sense::Equal, output[r]};
        for (size_t c = 0; c < in_dim; c++) {
            if (input[c] != 0) {
                cond.terms.push_back({r * in_dim + c, input[c]});
            }
        }
        out.push_back(std::move(cond));
    }
    return out;
}

ChannelLPResult channel_feasibility(size_t out_dim, size_t in_dim, const std::vector<ChannelCondition> &conditions) {
    LinearProgram lp;
    ChannelBlock block = add_channel_block(lp, out_dim, in_dim);
    for (const auto &cond : conditions) {
        std::vector<LinearTerm> terms;
        for (const auto &t : cond.terms) {
            if (t.var >= block.size()) {
                throw Error(ErrorCode::DimensionMismatch, "channel condition references a missing entry");
            }
            terms.push_back({block.var(0, 0) + t.var, t.coeff});
        }
        lp.add_constraint(std::move(terms), cond.sense, cond.rhs);
    }
    ChannelLPResult result{solve(lp), std::nullopt};
    if (result.lp.status == LPStatus::Optimal) {
        result.channel = extract_channel(result.lp.solution, block);
    }
    return result;
}

}  // namespace ptk
