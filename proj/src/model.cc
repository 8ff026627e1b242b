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

#include "ptk/model.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <stdexcept>

#include "ptk/error.h"

namespace ptk {

namespace {

constexpr size_t kMaxNesting = 200;

[[noreturn]] void fail(ErrorCode code, Location loc, const std::string &message) {
    throw ParseError(code, loc.line, loc.column, message);
}

bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool ident_char(char c) {
    return ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

bool digit(char c) {
    return c >= '0' && c <= '9';
}

enum class Tok { Ident, Number, Newline, Arrow, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    bool imaginary = false;
    Location loc;
};

std::string describe(const Token &t) {
    switch (t.kind) {
        case Tok::Ident:
            return "'" + t.text + "'";
        case Tok::Number:
            return "number " + t.text + (t.imaginary ? "i" : "");
        case Tok::Newline:
            return "end of line";
        case Tok::Arrow:
            return "'->'";
        case Tok::Punct:
            return "'" + t.text + "'";
        case Tok::End:
            return "end of input";
    }
    return "?";
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::vector<std::pair<char, Location>> open;
    size_t line = 1;
    size_t col = 1;
    size_t i = 0;
    auto advance = [&](size_t k) {
        i += k;
        col += k;
    };
    while (i < src.size()) {
        char c = src[i];
        Location here{line, col};
        if (c == '\n') {
            if (open.empty()) {
                out.push_back({Tok::Newline, "", false, here});
            }
            i++;
            line++;
            col = 1;
        } else if (c == ' ' || c == '\t' || c == '\r') {
            advance(1);
        } else if (c == '#') {
            while (i < src.size() && src[i] != '\n') {
                advance(1);
            }
        } else if (ident_start(c)) {
            size_t j = i;
            while (j < src.size() && ident_char(src[j])) {
                j++;
            }
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), false, here});
            advance(j - i);
        } else if (digit(c)) {
            size_t j = i;
            auto digits = [&] {
                while (j < src.size() && digit(src[j])) {
                    j++;
                }
            };
            digits();
            if (j + 1 < src.size() && src[j] == '/' && digit(src[j + 1])) {
                j++;
                digits();
            } else {
                if (j + 1 < src.size() && src[j] == '.' && digit(src[j + 1])) {
                    j++;
                    digits();
                }
                if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                    size_t k = j + 1;
                    if (k < src.size() && (src[k] == '+' || src[k] == '-')) {
                        k++;
                    }
                    if (k < src.size() && digit(src[k])) {
                        j = k;
                        digits();
                    }
                }
            }
            Token t{Tok::Number, std::string(src.substr(i, j - i)), false, here};
            if (j < src.size() && src[j] == 'i' && (j + 1 == src.size() || !ident_char(src[j + 1]))) {
                t.imaginary = true;
                j++;
            }
            out.push_back(std::move(t));
            advance(j - i);
        } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", false, here});
            advance(2);
        } else if (c == '[' || c == '(' || c == '{') {
            open.emplace_back(c, here);
            out.push_back({Tok::Punct, std::string(1, c), false, here});
            advance(1);
        } else if (c == ']' || c == ')' || c == '}') {
            char want = c == ']' ? '[' : c == ')' ? '(' : '{';
            if (open.empty() || open.back().first != want) {
                fail(ErrorCode::SyntaxError, here, std::string("unmatched '") + c + "'");
            }
            open.pop_back();
            out.push_back({Tok::Punct, std::string(1, c), false, here});
            advance(1);
        } else if (std::string_view(":,;*=+-").find(c) != std::string_view::npos) {
            out.push_back({Tok::Punct, std::string(1, c), false, here});
            advance(1);
        } else {
            char buf[8];
            std::snprintf(buf, sizeof buf, "0x%02x", static_cast<unsigned char>(c));
            fail(ErrorCode::SyntaxError, here, std::string("unexpected character ") + buf);
        }
    }
    if (!open.empty()) {
        fail(ErrorCode::SyntaxError, open.back().second, std::string("unterminated '") + open.back().first + "'");
    }
    out.push_back({Tok::End, "", false, Location{line, col}});
    return out;
}

struct TypeAst {
    std::vector<std::pair<std::string, Location>> labels;
    Location loc;

    SystemType type() const {
        std::vector<std::string> names;
        for (const auto &[n, l] : labels) {
            names.push_back(n);
        }
        return SystemType(std::move(names));
    }
};

struct Expr {
    enum Kind { Name, Id, Discard, Swap, Seq, Par } kind;
    std::string name;
    TypeAst t1;
    TypeAst t2;
    std::unique_ptr<Expr> a;
    std::unique_ptr<Expr> b;
    Location loc;
};

struct Num {
    Rational exact;
    Complex value;
    Location loc;
};

struct Literal {
    bool matrix = false;
    std::vector<std::vector<Num>> rows;
    std::vector<Location> row_locs;
    Location loc;

    size_t height() const {
        return matrix ? rows.size() : rows.front().size();
    }
    size_t width() const {
        return matrix ? rows.front().size() : 1;
    }
    const Num &at(size_t r, size_t c) const {
        return matrix ? rows[r][c] : rows[0][r];
    }
    RatMatrix exact() const {
        RatMatrix m(height(), width());
        for (size_t r = 0; r < height(); r++) {
            for (size_t c = 0; c < width(); c++) {
                m(r, c) = at(r, c).exact;
            }
        }
        return m;
    }
    CMatrix numeric() const {
        CMatrix m(height(), width());
        for (size_t r = 0; r < height(); r++) {
            for (size_t c = 0; c < width(); c++) {
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = at(r, c).value;
            }
        }
        return m;
    }
};

struct PendingState {
    TypeAst type;
    Literal value;
};

struct PendingGate {
    TypeAst in;
    TypeAst out;
    std::vector<Literal> values;
};

struct PendingFamily {
    std::vector<Location> member_locs;
};

const std::vector<std::string> kReserved = {"I", "id", "discard", "swap"};

class Parser {
   public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {
    }

    Model run() {
        while (peek().kind != Tok::End) {
            if (peek().kind == Tok::Newline) {
                pos_++;
                continue;
            }
            statement();
            if (peek().kind != Tok::Newline && peek().kind != Tok::End) {
                unexpected("end of line");
            }
        }
        resolve();
        model_.canonicalize();
        return std::move(model_);
    }

   private:
    const Token &peek(size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token &take() {
        const Token &t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) {
            pos_++;
        }
        return t;
    }
    bool at_punct(char c) const {
        return peek().kind == Tok::Punct && peek().text[0] == c;
    }
    bool at_word(std::string_view w) const {
        return peek().kind == Tok::Ident && peek().text == w;
    }
    [[noreturn]] void unexpected(const std::string &expected) const {
        fail(ErrorCode::SyntaxError, peek().loc, "expected " + expected + ", found " + describe(peek()));
    }
    void expect_punct(char c) {
        if (!at_punct(c)) {
            unexpected(std::string("'") + c + "'");
        }
        take();
    }
    void expect_word(std::string_view w) {
        if (!at_word(w)) {
            unexpected("'" + std::string(w) + "'");
        }
        take();
    }
    std::pair<std::string, Location> name(const char *what) {
        if (peek().kind != Tok::Ident) {
            unexpected(what);
        }
        const Token &t = take();
        if (std::find(kReserved.begin(), kReserved.end(), t.text) != kReserved.end()) {
            fail(ErrorCode::SyntaxError, t.loc, "'" + t.text + "' is reserved");
        }
        return {t.text, t.loc};
    }
    void depth_check(Location loc) const {
        if (depth_ > kMaxNesting) {
            fail(ErrorCode::SyntaxError, loc, "nesting too deep");
        }
    }

    void statement() {
        const Token &kw = peek();
        if (kw.kind != Tok::Ident) {
            unexpected("a declaration keyword");
        }
        if (kw.text == "backend") {
            take();
            if (model_.backend) {
                fail(ErrorCode::SyntaxError, kw.loc, "backend declared twice");
            }
            if (at_word("finstoch")) {
                model_.backend = Backend::FinStoch;
            } else if (at_word("quantum")) {
                model_.backend = Backend::Quantum;
            } else {
                unexpected("'finstoch' or 'quantum'");
            }
            take();
            return;
        }
        static const std::vector<std::string> keywords = {"system", "state", "gate", "family",
                                                          "gates",  "circuit", "cert"};
        if (std::find(keywords.begin(), keywords.end(), kw.text) == keywords.end()) {
            unexpected("one of 'backend', 'system', 'state', 'gate', 'family', 'gates', 'circuit', 'cert'");
        }
        if (!model_.backend) {
            fail(ErrorCode::SyntaxError, kw.loc, "expected 'backend' before the first declaration");
        }
        Location loc = take().loc;
        if (kw.text == "system") {
            system_decl(loc);
        } else if (kw.text == "state") {
            state_decl(loc);
        } else if (kw.text == "gate") {
            gate_decl(loc);
        } else if (kw.text == "family") {
            family_decl(loc);
        } else if (kw.text == "gates") {
            gate_family_decl(loc);
        } else if (kw.text == "circuit") {
            circuit_decl(loc);
        } else {
            cert_decl(loc);
        }
    }

    void system_decl(Location loc) {
        auto [n, nloc] = name("a system name");
        expect_word("dim");
        if (peek().kind != Tok::Number || peek().imaginary) {
            unexpected("a dimension");
        }
        const Token &t = take();
        size_t dim = 0;
        for (char c : t.text) {
            if (!digit(c)) {
                fail(ErrorCode::DimensionError, t.loc, "dimension must be a positive integer");
            }
            dim = dim * 10 + static_cast<size_t>(c - '0');
            if (dim > 1000000) {
                fail(ErrorCode::DimensionError, t.loc, "dimension " + t.text + " is too large");
            }
        }
        model_.systems.push_back({n, dim, nloc});
        system_dim_locs_[n] = t.loc;
        (void)loc;
    }

    TypeAst type() {
        TypeAst t;
        t.loc = peek().loc;
        while (true) {
            if (peek().kind != Tok::Ident) {
                unexpected("a system type");
            }
            const Token &tok = take();
            if (tok.text != "I") {
                t.labels.emplace_back(tok.text, tok.loc);
            }
            if (!at_punct('*')) {
                break;
            }
            take();
        }
        type_uses_.push_back(t);
        return t;
    }

    Num number() {
        Location loc = peek().loc;
        bool negative = false;
        if (at_punct('+') || at_punct('-')) {
            negative = take().text == "-";
        }
        if (peek().kind != Tok::Number) {
            unexpected("a number");
        }
        Num n{0, 0, loc};
        const Token &first = take();
        Complex part = scalar(first, n.exact);
        if (negative) {
            part = -part;
            n.exact = -n.exact;
        }
        if (first.imaginary) {
            n.value = Complex(0, part.real());
        } else {
            n.value = part;
            if ((at_punct('+') || at_punct('-')) && peek(1).kind == Tok::Number && peek(1).imaginary) {
                bool neg_im = take().text == "-";
                Rational ignored;
                Complex im = scalar(take(), ignored);
                n.value += Complex(0, neg_im ? -im.real() : im.real());
            }
        }
        if (*model_.backend == Backend::FinStoch && n.value.imag() != 0) {
            fail(ErrorCode::SyntaxError, loc, "complex entry in a finstoch model");
        }
        if (first.imaginary && *model_.backend == Backend::FinStoch) {
            fail(ErrorCode::SyntaxError, loc, "complex entry in a finstoch model");
        }
        return n;
    }

    Complex scalar(const Token &t, Rational &exact) {
        if (*model_.backend == Backend::FinStoch) {
            try {
                exact = parse_rational(t.text);
            } catch (const Error &e) {
                fail(ErrorCode::SyntaxError, t.loc, e.message());
            }
            return Complex(exact.get_d(), 0);
        }
        double v;
        auto slash = t.text.find('/');
        if (slash != std::string::npos) {
            double num = std::strtod(t.text.substr(0, slash).c_str(), nullptr);
            double den = std::strtod(t.text.substr(slash + 1).c_str(), nullptr);
            if (den == 0) {
                fail(ErrorCode::SyntaxError, t.loc, "zero denominator");
            }
            v = num / den;
        } else {
            v = std::strtod(t.text.c_str(), nullptr);
        }
        if (!std::isfinite(v)) {
            fail(ErrorCode::SyntaxError, t.loc, "number out of range");
        }
        return Complex(v, 0);
    }

    std::vector<Num> row() {
        std::vector<Num> out;
        expect_punct('[');
        out.push_back(number());
        while (at_punct(',')) {
            take();
            out.push_back(number());
        }
        expect_punct(']');
        return out;
    }

    Literal literal() {
        Literal lit;
        lit.loc = peek().loc;
        if (!at_punct('[')) {
            unexpected("'['");
        }
        if (peek(1).kind == Tok::Punct && peek(1).text == "[") {
            lit.matrix = true;
            take();
            while (true) {
                lit.row_locs.push_back(peek().loc);
                lit.rows.push_back(row());
                if (!at_punct(',')) {
                    break;
                }
                take();
            }
            expect_punct(']');
            for (size_t r = 1; r < lit.rows.size(); r++) {
                if (lit.rows[r].size() != lit.rows[0].size()) {
                    fail(ErrorCode::DimensionError, lit.row_locs[r], "ragged matrix row");
                }
            }
        } else {
            lit.row_locs.push_back(peek().loc);
            lit.rows.push_back(row());
        }
        return lit;
    }

    void state_decl(Location) {
        StateDecl d;
        Location nloc;
        std::tie(d.name, nloc) = name("a state name");
        d.loc = nloc;
        expect_punct(':');
        TypeAst t = type();
        d.type = t.type();
        expect_punct('=');
        bool stoch = *model_.backend == Backend::FinStoch;
        bool ket = at_word("ket");
        if (ket) {
            if (stoch) {
                fail(ErrorCode::SyntaxError, peek().loc, "kets belong to quantum models");
            }
            take();
        }
        Literal lit = literal();
        if (ket && lit.matrix) {
            fail(ErrorCode::SyntaxError, lit.loc, "a ket is a vector");
        }
        if (stoch) {
            if (lit.matrix) {
                fail(ErrorCode::SyntaxError, lit.loc, "finstoch states are probability vectors");
            }
            d.form = StateForm::Vector;
            d.exact = lit.exact();
        } else {
            if (!ket && !lit.matrix) {
                fail(ErrorCode::SyntaxError, lit.loc, "quantum states are 'ket [...]' or density matrices");
            }
            d.form = ket ? StateForm::Ket : StateForm::Density;
            d.numeric = lit.numeric();
        }
        pending_states_.push_back({t, lit});
        model_.states.push_back(std::move(d));
    }

    void gate_decl(Location) {
        GateDecl d;
        Location nloc;
        std::tie(d.name, nloc) = name("a gate name");
        d.loc = nloc;
        expect_punct(':');
        TypeAst tin = type();
        if (peek().kind != Tok::Arrow) {
            unexpected("'->'");
        }
        take();
        TypeAst tout = type();
        d.in = tin.type();
        d.out = tout.type();
        expect_punct('=');
        bool stoch = *model_.backend == Backend::FinStoch;
        std::vector<Literal> values;
        if (at_word("unitary") || at_word("kraus")) {
            if (stoch) {
                fail(ErrorCode::SyntaxError, peek().loc, "'" + peek().text + "' belongs to quantum models");
            }
            bool kraus = take().text == "kraus";
            d.form = kraus ? GateForm::Kraus : GateForm::Unitary;
            if (kraus) {
                expect_punct('{');
                values.push_back(matrix_literal());
                while (at_punct(',')) {
                    take();
                    values.push_back(matrix_literal());
                }
                expect_punct('}');
            } else {
                values.push_back(matrix_literal());
            }
        } else {
            d.form = GateForm::Matrix;
            values.push_back(matrix_literal());
        }
        if (stoch) {
            d.exact = values.front().exact();
        } else {
            for (const auto &v : values) {
                d.numeric.push_back(v.numeric());
            }
        }
        pending_gates_.push_back({tin, tout, values});
        model_.gates.push_back(std::move(d));
    }

    Literal matrix_literal() {
        Literal lit = literal();
        if (!lit.matrix) {
            fail(ErrorCode::SyntaxError, lit.loc, "expected a matrix '[[...], ...]'");
        }
        return lit;
    }

    void members(std::vector<std::string> &labels, std::vector<std::string> &items, std::vector<Location> &locs) {
        expect_punct('{');
        while (true) {
            auto [first, floc] = name("a member name");
            if (at_punct(':')) {
                take();
                auto [member, mloc] = name("a member name");
                labels.push_back(first);
                items.push_back(member);
                locs.push_back(mloc);
            } else {
                labels.push_back(first);
                items.push_back(first);
                locs.push_back(floc);
            }
            if (!at_punct(',')) {
                break;
            }
            take();
        }
        expect_punct('}');
    }

    void family_decl(Location) {
        FamilyDecl d;
        std::tie(d.name, d.loc) = name("a family name");
        expect_punct('=');
        PendingFamily p;
        members(d.labels, d.members, p.member_locs);
        pending_families_.push_back(std::move(p));
        model_.families.push_back(std::move(d));
    }

    void gate_family_decl(Location) {
        GateFamilyDecl d;
        std::tie(d.name, d.loc) = name("a gate family name");
        expect_punct(':');
        d.in = type().type();
        if (peek().kind != Tok::Arrow) {
            unexpected("'->'");
        }
        take();
        d.out = type().type();
        expect_punct('=');
        PendingFamily p;
        members(d.labels, d.members, p.member_locs);
        pending_gate_families_.push_back(std::move(p));
        model_.gate_families.push_back(std::move(d));
    }

    std::unique_ptr<Expr> seq_expr() {
        depth_++;
        depth_check(peek().loc);
        auto left = par_expr();
        while (at_punct(';')) {
            Location loc = take().loc;
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Seq;
            node->loc = loc;
            node->a = std::move(left);
            node->b = par_expr();
            left = std::move(node);
        }
        depth_--;
        return left;
    }

    std::unique_ptr<Expr> par_expr() {
        auto left = atom();
        while (at_punct('*')) {
            Location loc = take().loc;
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Par;
            node->loc = loc;
            node->a = std::move(left);
            node->b = atom();
            left = std::move(node);
        }
        return left;
    }

    std::unique_ptr<Expr> atom() {
        auto node = std::make_unique<Expr>();
        node->loc = peek().loc;
        if (at_punct('(')) {
            take();
            auto inner = seq_expr();
            expect_punct(')');
            return inner;
        }
        if (peek().kind != Tok::Ident) {
            unexpected("a generator, 'I', 'id', 'discard', 'swap' or '('");
        }
        if (at_word("I")) {
            take();
            node->kind = Expr::Id;
            return node;
        }
        if (at_word("id") || at_word("discard")) {
            node->kind = take().text == "id" ? Expr::Id : Expr::Discard;
            expect_punct('(');
            node->t1 = type();
            expect_punct(')');
        } else if (at_word("swap")) {
            take();
            node->kind = Expr::Swap;
            expect_punct('(');
            node->t1 = type();
            expect_punct(',');
            node->t2 = type();
            expect_punct(')');
        } else {
            node->kind = Expr::Name;
            std::tie(node->name, node->loc) = name("a generator name");
        }
        return node;
    }

    void circuit_decl(Location) {
        CircuitDecl d{"", Diagram::identity(SystemType()), {}};
        std::tie(d.name, d.loc) = name("a circuit name");
        expect_punct('=');
        pending_circuits_.push_back(seq_expr());
        model_.circuits.push_back(std::move(d));
    }

    void cert_decl(Location) {
        CertDecl d;
        d.loc = peek().loc;
        static const std::map<std::string, CertKind> kinds = {{"flag", CertKind::Flag},
                                                              {"cloner", CertKind::Cloner},
                                                              {"sideinfo", CertKind::SideInfo},
                                                              {"programmer", CertKind::Programmer}};
        if (peek().kind != Tok::Ident || !kinds.count(peek().text)) {
            unexpected("one of 'flag', 'cloner', 'sideinfo', 'programmer'");
        }
        d.kind = kinds.at(take().text);
        std::vector<Location> locs(3);
        std::tie(d.channel, locs[0]) = name("a channel name");
        std::tie(d.family, locs[1]) = name("a family name");
        if (d.kind == CertKind::SideInfo || d.kind == CertKind::Programmer) {
            std::tie(d.extra, locs[2]) = name(d.kind == CertKind::SideInfo ? "an environment system" : "a gate family");
        }
        pending_certs_.push_back(locs);
        model_.certs.push_back(std::move(d));
    }

    // Resolution -------------------------------------------------------------

    size_t type_dim(const TypeAst &t) const {
        size_t total = 1;
        for (const auto &[label, loc] : t.labels) {
            total *= table_.dim(label);
            if (total > kMaxTypeDim) {
                fail(ErrorCode::DimensionError, t.loc, "type dimension exceeds " + std::to_string(kMaxTypeDim));
            }
        }
        return total;
    }

    void expect_shape(const Literal &lit, size_t rows, size_t cols, const std::string &what) const {
        if (lit.height() != rows || lit.width() != cols) {
            fail(ErrorCode::DimensionError, lit.loc,
                 what + " must be " + std::to_string(rows) + " x " + std::to_string(cols) + ", found " +
                     std::to_string(lit.height()) + " x " + std::to_string(lit.width()));
        }
    }

    Diagram build(const Expr &e) const {
        switch (e.kind) {
            case Expr::Name: {
                if (const StateDecl *s = model_.find_state(e.name)) {
                    return Diagram::generator(e.name, SystemType(), s->type);
                }
                if (const GateDecl *g = model_.find_gate(e.name)) {
                    return Diagram::generator(e.name, g->in, g->out);
                }
                fail(ErrorCode::ResolutionError, e.loc, "'" + e.name + "' is not a state or gate");
            }
            case Expr::Id:
                return Diagram::identity(e.t1.type());
            case Expr::Discard:
                return Diagram::discard(e.t1.type());
            case Expr::Swap:
                return Diagram::swap(e.t1.type(), e.t2.type());
            case Expr::Seq:
                return Diagram::seq_unchecked(build(*e.a), build(*e.b));
            case Expr::Par:
                return Diagram::par(build(*e.a), build(*e.b));
        }
        fail(ErrorCode::SyntaxError, e.loc, "malformed expression");
    }

    void resolve() {
        bool stoch = model_.backend == Backend::FinStoch;
        std::vector<std::pair<Location, std::string>> names;
        for (const auto &d : model_.systems) {
            names.emplace_back(d.loc, d.name);
        }
        for (const auto &d : model_.states) {
            names.emplace_back(d.loc, d.name);
        }
        for (const auto &d : model_.gates) {
            names.emplace_back(d.loc, d.name);
        }
        for (const auto &d : model_.families) {
            names.emplace_back(d.loc, d.name);
        }
        for (const auto &d : model_.gate_families) {
            names.emplace_back(d.loc, d.name);
        }
        for (const auto &d : model_.circuits) {
            names.emplace_back(d.loc, d.name);
        }
        std::sort(names.begin(), names.end(), [](const auto &a, const auto &b) {
            return std::tie(a.first.line, a.first.column) < std::tie(b.first.line, b.first.column);
        });
        std::map<std::string, Location> seen;
        for (const auto &[loc, n] : names) {
            auto [it, fresh] = seen.emplace(n, loc);
            if (!fresh) {
                fail(ErrorCode::ResolutionError, loc,
                     "'" + n + "' already declared at line " + std::to_string(it->second.line));
            }
        }

        size_t cap = stoch ? kMaxStochSystemDim : kMaxQuantumSystemDim;
        for (const auto &s : model_.systems) {
            Location dloc = system_dim_locs_.at(s.name);
            if (s.dim == 0 || s.dim > cap) {
                fail(ErrorCode::DimensionError, dloc,
                     "system dimension must lie in 1.." + std::to_string(cap) + " for this backend");
            }
            table_.declare(s.name, s.dim);
        }
        for (const auto &t : type_uses_) {
            for (const auto &[label, loc] : t.labels) {
                if (!table_.contains(label)) {
                    fail(ErrorCode::ResolutionError, loc, "unknown system '" + label + "'");
                }
            }
            type_dim(t);
        }

        for (size_t k = 0; k < model_.states.size(); k++) {
            const auto &p = pending_states_[k];
            size_t d = type_dim(p.type);
            const StateDecl &s = model_.states[k];
            if (s.form == StateForm::Density) {
                expect_shape(p.value, d, d, "density matrix");
            } else {
                expect_shape(p.value, d, 1, "state vector");
            }
        }
        for (size_t k = 0; k < model_.gates.size(); k++) {
            const auto &p = pending_gates_[k];
            size_t din = type_dim(p.in);
            size_t dout = type_dim(p.out);
            const GateDecl &g = model_.gates[k];
            if (stoch) {
                expect_shape(p.values[0], dout, din, "stochastic matrix");
            } else if (g.form == GateForm::Matrix) {
                if (din * dout > kMaxTypeDim) {
                    fail(ErrorCode::DimensionError, p.values[0].loc, "Choi matrix too large");
                }
                expect_shape(p.values[0], din * dout, din * dout, "Choi matrix");
            } else if (g.form == GateForm::Unitary) {
                if (din != dout) {
                    fail(ErrorCode::DimensionError, g.loc, "a unitary gate needs equal input and output dimension");
                }
                expect_shape(p.values[0], dout, din, "unitary");
            } else {
                for (const auto &v : p.values) {
                    expect_shape(v, dout, din, "Kraus operator");
                }
            }
        }

        for (size_t k = 0; k < model_.families.size(); k++) {
            const FamilyDecl &f = model_.families[k];
            const auto &locs = pending_families_[k].member_locs;
            std::map<std::string, size_t> labels;
            for (size_t i = 0; i < f.members.size(); i++) {
                const StateDecl *s = model_.find_state(f.members[i]);
                if (!s) {
                    fail(ErrorCode::ResolutionError, locs[i], "'" + f.members[i] + "' is not a state");
                }
                if (!labels.emplace(f.labels[i], i).second) {
                    fail(ErrorCode::ResolutionError, locs[i], "label '" + f.labels[i] + "' used twice");
                }
                if (!(s->type == model_.find_state(f.members[0])->type)) {
                    fail(ErrorCode::DimensionError, locs[i], "family members must share one system type");
                }
            }
        }
        for (size_t k = 0; k < model_.gate_families.size(); k++) {
            const GateFamilyDecl &f = model_.gate_families[k];
            const auto &locs = pending_gate_families_[k].member_locs;
            std::map<std::string, size_t> labels;
            for (size_t i = 0; i < f.members.size(); i++) {
                const GateDecl *g = model_.find_gate(f.members[i]);
                if (!g) {
                    fail(ErrorCode::ResolutionError, locs[i], "'" + f.members[i] + "' is not a gate");
                }
                if (!labels.emplace(f.labels[i], i).second) {
                    fail(ErrorCode::ResolutionError, locs[i], "label '" + f.labels[i] + "' used twice");
                }
                if (!(g->in == f.in) || !(g->out == f.out)) {
                    fail(ErrorCode::DimensionError, locs[i],
                         "gate '" + g->name + "' has type " + g->in.str() + " -> " + g->out.str());
                }
            }
        }
        for (size_t k = 0; k < model_.circuits.size(); k++) {
            model_.circuits[k].diagram = build(*pending_circuits_[k]);
        }
        for (size_t k = 0; k < model_.certs.size(); k++) {
            const CertDecl &c = model_.certs[k];
            const auto &locs = pending_certs_[k];
            if (!model_.find_gate(c.channel)) {
                fail(ErrorCode::ResolutionError, locs[0], "'" + c.channel + "' is not a gate");
            }
            if (!model_.find_family(c.family)) {
                fail(ErrorCode::ResolutionError, locs[1], "'" + c.family + "' is not a family");
            }
            if (c.kind == CertKind::SideInfo && !model_.find_system(c.extra)) {
                fail(ErrorCode::ResolutionError, locs[2], "'" + c.extra + "' is not a system");
            }
            if (c.kind == CertKind::Programmer && !model_.find_gate_family(c.extra)) {
                fail(ErrorCode::ResolutionError, locs[2], "'" + c.extra + "' is not a gate family");
            }
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    size_t depth_ = 0;
    Model model_;
    SystemTable table_;
    std::map<std::string, Location> system_dim_locs_;
    std::vector<TypeAst> type_uses_;
    std::vector<PendingState> pending_states_;
    std::vector<PendingGate> pending_gates_;
    std::vector<PendingFamily> pending_families_;
    std::vector<PendingFamily> pending_gate_families_;
    std::vector<std::unique_ptr<Expr>> pending_circuits_;
    std::vector<std::vector<Location>> pending_certs_;
};

template <class T>
const T *find_named(const std::vector<T> &items, std::string_view name) {
    for (const auto &item : items) {
        if (item.name == name) {
            return &item;
        }
    }
    return nullptr;
}

template <class T>
void sort_named(std::vector<T> &items) {
    std::stable_sort(items.begin(), items.end(), [](const T &a, const T &b) {
        return a.name < b.name;
    });
}

bool same(const CMatrix &a, const CMatrix &b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool same(const std::vector<CMatrix> &a, const std::vector<CMatrix> &b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (size_t i = 0; i < a.size(); i++) {
        if (!same(a[i], b[i])) {
            return false;
        }
    }
    return true;
}

std::string format_double(double v) {
    if (v == 0) {
        v = 0;  // drops the sign of -0
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_exact(const RatMatrix &m, bool as_vector) {
    std::string out = "[";
    for (size_t r = 0; r < m.rows(); r++) {
        if (r) {
            out += ", ";
        }
        if (as_vector) {
            out += to_string(m(r, 0));
            continue;
        }
        out += "[";
        for (size_t c = 0; c < m.cols(); c++) {
            out += (c ? ", " : "") + to_string(m(r, c));
        }
        out += "]";
    }
    return out + "]";
}

std::string format_numeric(const CMatrix &m, bool as_vector) {
    std::string out = "[";
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        if (r) {
            out += ", ";
        }
        if (as_vector) {
            out += format_complex(m(r, 0));
            continue;
        }
        out += "[";
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            out += (c ? ", " : "") + format_complex(m(r, c));
        }
        out += "]";
    }
    return out + "]";
}

std::string format_members(const std::vector<std::string> &labels, const std::vector<std::string> &members) {
    std::string out = "{";
    for (size_t i = 0; i < members.size(); i++) {
        if (i) {
            out += ", ";
        }
        out += labels[i] == members[i] ? members[i] : labels[i] + ": " + members[i];
    }
    return out + "}";
}

void require_backend(const Model &m, Backend b) {
    if (m.backend != b) {
        throw Error(ErrorCode::MixedBackends, std::string("model is not a ") + backend_name(b) + " model");
    }
}

[[noreturn]] void rethrow_named(const Error &e, const std::string &what) {
    throw Error(e.code(), what + ": " + e.message());
}

}  // namespace

const char *backend_name(Backend b) {
    return b == Backend::FinStoch ? "finstoch" : "quantum";
}

const char *cert_kind_name(CertKind k) {
    switch (k) {
        case CertKind::Flag:
            return "flag";
        case CertKind::Cloner:
            return "cloner";
        case CertKind::SideInfo:
            return "sideinfo";
        case CertKind::Programmer:
            return "programmer";
    }
    return "?";
}

std::string format_complex(Complex z) {
    std::string im = format_double(std::abs(z.imag()));
    return format_double(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
}

bool Model::operator==(const Model &o) const {
    auto sys_eq = [](const SystemDecl &a, const SystemDecl &b) {
        return a.name == b.name && a.dim == b.dim;
    };
    auto state_eq = [](const StateDecl &a, const StateDecl &b) {
        return a.name == b.name && a.type == b.type && a.form == b.form && a.exact == b.exact &&
               same(a.numeric, b.numeric);
    };
    auto gate_eq = [](const GateDecl &a, const GateDecl &b) {
        return a.name == b.name && a.in == b.in && a.out == b.out && a.form == b.form && a.exact == b.exact &&
               same(a.numeric, b.numeric);
    };
    auto fam_eq = [](const FamilyDecl &a, const FamilyDecl &b) {
        return a.name == b.name && a.labels == b.labels && a.members == b.members;
    };
    auto gfam_eq = [](const GateFamilyDecl &a, const GateFamilyDecl &b) {
        return a.name == b.name && a.in == b.in && a.out == b.out && a.labels == b.labels && a.members == b.members;
    };
    auto circ_eq = [](const CircuitDecl &a, const CircuitDecl &b) {
        return a.name == b.name && a.diagram == b.diagram;
    };
    auto cert_eq = [](const CertDecl &a, const CertDecl &b) {
        return a.kind == b.kind && a.channel == b.channel && a.family == b.family && a.extra == b.extra;
    };
    return backend == o.backend &&
           std::equal(systems.begin(), systems.end(), o.systems.begin(), o.systems.end(), sys_eq) &&
           std::equal(states.begin(), states.end(), o.states.begin(), o.states.end(), state_eq) &&
           std::equal(gates.begin(), gates.end(), o.gates.begin(), o.gates.end(), gate_eq) &&
           std::equal(families.begin(), families.end(), o.families.begin(), o.families.end(), fam_eq) &&
           std::equal(gate_families.begin(), gate_families.end(), o.gate_families.begin(), o.gate_families.end(),
                      gfam_eq) &&
           std::equal(circuits.begin(), circuits.end(), o.circuits.begin(), o.circuits.end(), circ_eq) &&
           std::equal(certs.begin(), certs.end(), o.certs.begin(), o.certs.end(), cert_eq);
}

SystemTable Model::system_table() const {
    SystemTable t;
    for (const auto &s : systems) {
        t.declare(s.name, s.dim);
    }
    return t;
}

const SystemDecl *Model::find_system(std::string_view name) const {
    return find_named(systems, name);
}
const StateDecl *Model::find_state(std::string_view name) const {
    return find_named(states, name);
}
const GateDecl *Model::find_gate(std::string_view name) const {
    return find_named(gates, name);
}
const FamilyDecl *Model::find_family(std::string_view name) const {
    return find_named(families, name);
}
const GateFamilyDecl *Model::find_gate_family(std::string_view name) const {
    return find_named(gate_families, name);
}
const CircuitDecl *Model::find_circuit(std::string_view name) const {
    return find_named(circuits, name);
}

void Model::canonicalize() {
    sort_named(systems);
    sort_named(states);
    sort_named(gates);
    sort_named(families);
    sort_named(gate_families);
    sort_named(circuits);
    std::stable_sort(certs.begin(), certs.end(), [](const CertDecl &a, const CertDecl &b) {
        return std::tie(a.channel, a.kind, a.family, a.extra) < std::tie(b.channel, b.kind, b.family, b.extra);
    });
}

Model parse_model(std::string_view text) {
    return Parser(text).run();
}

std::string print_model(const Model &m) {
    std::string out = "# ptk model\n";
    if (!m.backend) {
        return out;
    }
    bool stoch = *m.backend == Backend::FinStoch;
    if (!stoch) {
        out += "# gate matrices are Choi matrices, input factor first\n";
    }
    out += std::string("backend ") + backend_name(*m.backend) + "\n";
    auto section = [&](bool nonempty) {
        if (nonempty) {
            out += "\n";
        }
    };
    section(!m.systems.empty());
    for (const auto &s : m.systems) {
        out += "system " + s.name + " dim " + std::to_string(s.dim) + "\n";
    }
    section(!m.states.empty());
    for (const auto &s : m.states) {
        out += "state " + s.name + " : " + s.type.str() + " = ";
        if (stoch) {
            out += format_exact(s.exact, true);
        } else if (s.form == StateForm::Ket) {
            out += "ket " + format_numeric(s.numeric, true);
        } else {
            out += format_numeric(s.numeric, false);
        }
        out += "\n";
    }
    section(!m.gates.empty());
    for (const auto &g : m.gates) {
        out += "gate " + g.name + " : " + g.in.str() + " -> " + g.out.str() + " = ";
        if (stoch) {
            out += format_exact(g.exact, false);
        } else if (g.form == GateForm::Matrix) {
            out += format_numeric(g.numeric.front(), false);
        } else if (g.form == GateForm::Unitary) {
            out += "unitary " + format_numeric(g.numeric.front(), false);
        } else {
            out += "kraus {";
            for (size_t i = 0; i < g.numeric.size(); i++) {
                out += (i ? ", " : "") + format_numeric(g.numeric[i], false);
            }
            out += "}";
        }
        out += "\n";
    }
    section(!m.families.empty());
    for (const auto &f : m.families) {
        out += "family " + f.name + " = " + format_members(f.labels, f.members) + "\n";
    }
    section(!m.gate_families.empty());
    for (const auto &f : m.gate_families) {
        out += "gates " + f.name + " : " + f.in.str() + " -> " + f.out.str() + " = " +
               format_members(f.labels, f.members) + "\n";
    }
    section(!m.circuits.empty());
    for (const auto &c : m.circuits) {
        out += "circuit " + c.name + " = " + c.diagram.str() + "\n";
    }
    section(!m.certs.empty());
    for (const auto &c : m.certs) {
        out += std::string("cert ") + cert_kind_name(c.kind) + " " + c.channel + " " + c.family;
        if (!c.extra.empty()) {
            out += " " + c.extra;
        }
        out += "\n";
    }
    return out;
}

StochChannel stoch_generator(const Model &m, std::string_view name) {
    require_backend(m, Backend::FinStoch);
    try {
        if (const StateDecl *s = m.find_state(name)) {
            return StochChannel::from_matrix(s->exact);
        }
        if (const GateDecl *g = m.find_gate(name)) {
            return StochChannel::from_matrix(g->exact);
        }
    } catch (const Error &e) {
        rethrow_named(e, "'" + std::string(name) + "'");
    }
    throw Error(ErrorCode::ResolutionError, "no state or gate named '" + std::string(name) + "'");
}

StochEnv stoch_env(const Model &m) {
    StochEnv env;
    for (const auto &s : m.states) {
        env.emplace(s.name, stoch_generator(m, s.name));
    }
    for (const auto &g : m.gates) {
        env.emplace(g.name, stoch_generator(m, g.name));
    }
    return env;
}

StochFamily stoch_family(const Model &m, std::string_view name) {
    require_backend(m, Backend::FinStoch);
    const FamilyDecl *f = m.find_family(name);
    if (!f) {
        throw Error(ErrorCode::ResolutionError, "no family named '" + std::string(name) + "'");
    }
    std::vector<StochState> states;
    for (const auto &member : f->members) {
        states.push_back(stoch_generator(m, member));
    }
    return StochFamily(f->labels, std::move(states));
}

StochGateFamily stoch_gate_family(const Model &m, std::string_view name) {
    require_backend(m, Backend::FinStoch);
    const GateFamilyDecl *f = m.find_gate_family(name);
    if (!f) {
        throw Error(ErrorCode::ResolutionError, "no gate family named '" + std::string(name) + "'");
    }
    std::vector<StochChannel> gates;
    for (const auto &member : f->members) {
        gates.push_back(stoch_generator(m, member));
    }
    return StochGateFamily(f->labels, std::move(gates));
}

QState quantum_state(const Model &m, std::string_view name) {
    require_backend(m, Backend::Quantum);
    const StateDecl *s = m.find_state(name);
    if (!s) {
        throw Error(ErrorCode::ResolutionError, "no state named '" + std::string(name) + "'");
    }
    try {
        if (s->form == StateForm::Ket) {
            return QState::from_ket(s->numeric.col(0));
        }
        return QState::from_density(s->numeric);
    } catch (const Error &e) {
        rethrow_named(e, "state '" + s->name + "'");
    }
}

QChannel quantum_generator(const Model &m, std::string_view name) {
    require_backend(m, Backend::Quantum);
    if (m.find_state(name)) {
        return QChannel::preparation(quantum_state(m, name));
    }
    const GateDecl *g = m.find_gate(name);
    if (!g) {
        throw Error(ErrorCode::ResolutionError, "no state or gate named '" + std::string(name) + "'");
    }
    SystemTable t = m.system_table();
    size_t din = t.dim(g->in);
    size_t dout = t.dim(g->out);
    try {
        QChannel c = [&] {
            switch (g->form) {
                case GateForm::Unitary:
                    return QChannel::unitary(g->numeric.front());
                case GateForm::Kraus:
                    return QChannel::from_kraus(din, dout, g->numeric);
                case GateForm::Matrix:
                    break;
            }
            return QChannel::from_choi(din, dout, g->numeric.front());
        }();
        if (!check_cptp(din, dout, c.choi())) {
            throw Error(ErrorCode::CPTPViolation, "operators do not form a channel");
        }
        return c;
    } catch (const Error &e) {
        rethrow_named(e, "gate '" + g->name + "'");
    }
}

QEnv quantum_env(const Model &m) {
    QEnv env;
    for (const auto &s : m.states) {
        env.emplace(s.name, quantum_generator(m, s.name));
    }
    for (const auto &g : m.gates) {
        env.emplace(g.name, quantum_generator(m, g.name));
    }
    return env;
}

QFamily quantum_family(const Model &m, std::string_view name) {
    require_backend(m, Backend::Quantum);
    const FamilyDecl *f = m.find_family(name);
    if (!f) {
        throw Error(ErrorCode::ResolutionError, "no family named '" + std::string(name) + "'");
    }
    std::vector<QState> states;
    for (const auto &member : f->members) {
        states.push_back(quantum_state(m, member));
    }
    return QFamily(f->labels, std::move(states));
}

QGateFamily quantum_gate_family(const Model &m, std::string_view name) {
    require_backend(m, Backend::Quantum);
    const GateFamilyDecl *f = m.find_gate_family(name);
    if (!f) {
        throw Error(ErrorCode::ResolutionError, "no gate family named '" + std::string(name) + "'");
    }
    std::vector<QChannel> gates;
    for (const auto &member : f->members) {
        gates.push_back(quantum_generator(m, member));
    }
    return QGateFamily(f->labels, std::move(gates));
}

}  // namespace ptk
