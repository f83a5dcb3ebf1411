// Copyright 2026 The qaround Authors
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

/// @file parse.hpp
/// Parser for the .qc circuit language.
///
///     # comment
///     qubits 3
///     ctrl q0, q1 { x q2 }
///     around { h q0; h q1; ctrl q0 { x q1 } } { rz pi/2 q1 }
///     aux t[1] { ctrl q0 { x t }; p -pi/4 t[0] }
///     lib toffoli q0, q1, q2          # library gate; also `lib adj approx NAME ...`
///     ancillas 2                      # flat aux register anc[0..1], no scopes
///
/// Statements end at `;` or a newline. Angles accept decimals, `pi`,
/// parentheses, unary minus and + - * /.

#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qaround/errors.hpp"
#include "qaround/ir.hpp"
#include "qaround/library.hpp"

namespace qaround::frontend {

namespace detail {

enum class Tok { Ident, Number, Punct, Newline, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;
};

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&] {
        if (src[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    while (i < src.size()) {
        const char ch = src[i];
        if (ch == '#') {
            while (i < src.size() && src[i] != '\n') {
                advance();
            }
            continue;
        }
        if (ch == '\n') {
            out.push_back({Tok::Newline, "\n", line, col});
            advance();
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            advance();
            continue;
        }
        Token t{Tok::Punct, "", line, col};
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            t.kind = Tok::Ident;
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
                t.text += src[i];
                advance();
            }
        } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            t.kind = Tok::Number;
            while (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '.')) {
                t.text += src[i];
                advance();
            }
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                t.text += src[i];
                advance();
                if (i < src.size() && (src[i] == '+' || src[i] == '-')) {
                    t.text += src[i];
                    advance();
                }
                while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                    t.text += src[i];
                    advance();
                }
            }
        } else if (std::string_view("{}[](),;+-*/").find(ch) != std::string_view::npos) {
            t.text = ch;
            advance();
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
        }
        out.push_back(std::move(t));
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::string_view src, std::string name, const GateLibrary& lib)
        : toks_(lex(src)), lib_(lib) {
        circuit_.name = std::move(name);
    }

    ir::Circuit run() {
        circuit_.instructions = statements(/*nested=*/false);
        if (!have_qubits_) {
            throw ParseError(peek().line, peek().col, "missing 'qubits' declaration");
        }
        circuit_.num_aux = anc_ ? *anc_ : next_aux_;
        circuit_.layout = anc_ ? ir::AuxLayout::Resolved : ir::AuxLayout::Symbolic;
        ir::validate(circuit_);
        return circuit_;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }

    bool at_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.col, msg); }

    Token expect_punct(const char* p) {
        if (!at_punct(p)) {
            fail(peek(), std::string("expected '") + p + "'" + found());
        }
        return next();
    }

    std::string found() const {
        switch (peek().kind) {
            case Tok::End: return ", found end of input";
            case Tok::Newline: return ", found end of line";
            default: return ", found '" + peek().text + "'";
        }
    }

    void skip_newlines() {
        while (peek().kind == Tok::Newline) {
            ++pos_;
        }
    }

    ir::Block statements(bool nested) {
        ir::Block out;
        while (true) {
            while (peek().kind == Tok::Newline || at_punct(";")) {
                ++pos_;
            }
            if (peek().kind == Tok::End) {
                if (nested) {
                    fail(peek(), "expected '}', found end of input");
                }
                return out;
            }
            if (at_punct("}")) {
                if (!nested) {
                    fail(peek(), "unmatched '}'");
                }
                return out;
            }
            if (auto i = statement()) {
                out.push_back(std::move(*i));
            }
            if (!(peek().kind == Tok::Newline || peek().kind == Tok::End || at_punct(";") || at_punct("}"))) {
                fail(peek(), "expected end of statement" + found());
            }
        }
    }

    ir::Block braced() {
        skip_newlines();
        expect_punct("{");
        auto b = statements(true);
        expect_punct("}");
        return b;
    }

    std::size_t integer() {
        const Token t = next();
        if (t.kind != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos) {
            fail(t, "expected a non-negative integer");
        }
        return std::stoull(t.text);
    }

    std::optional<ir::Instruction> statement() {
        const Token kw = next();
        if (kw.kind != Tok::Ident) {
            fail(kw, "expected a statement, found '" + kw.text + "'");
        }
        if (kw.text == "qubits") {
            if (have_qubits_) {
                fail(kw, "'qubits' declared twice");
            }
            circuit_.num_main = integer();
            have_qubits_ = true;
            return std::nullopt;
        }
        if (kw.text == "ancillas") {
            if (anc_ || next_aux_ > 0) {
                fail(kw, "'ancillas' must come before any aux block and appear once");
            }
            anc_ = integer();
            return std::nullopt;
        }
        if (kw.text == "ctrl") {
            auto cs = qubit_list();
            auto body = braced();
            try {
                return ir::controlled(std::move(cs), std::move(body));
            } catch (const Error& e) {
                fail(kw, e.what());
            }
        }
        if (kw.text == "around") {
            auto outer = braced();
            auto body = braced();
            return ir::around(std::move(outer), std::move(body));
        }
        if (kw.text == "aux") {
            return aux_block(kw);
        }
        if (kw.text == "lib") {
            return library_gate(kw);
        }
        if (auto b = ir::builtin_from_name(kw.text)) {
            std::optional<double> angle;
            if (ir::takes_angle(*b)) {
                angle = expr();
            }
            const auto q = qubit();
            return ir::apply(ir::GateKind::builtin(*b, angle), {q});
        }
        fail(kw, "unknown statement '" + kw.text + "'");
    }

    ir::Instruction aux_block(const Token& kw) {
        if (anc_) {
            fail(kw, "aux blocks cannot be combined with an 'ancillas' register");
        }
        const Token name = next();
        if (name.kind != Tok::Ident) {
            fail(name, "expected aux register name");
        }
        if (name.text == "anc" || is_main_name(name.text)) {
            fail(name, "'" + name.text + "' is reserved");
        }
        expect_punct("[");
        const std::size_t k = integer();
        expect_punct("]");
        if (k == 0) {
            fail(name, "aux register needs at least one qubit");
        }
        std::vector<ir::QubitId> qs;
        for (std::size_t j = 0; j < k; ++j) {
            qs.push_back(ir::QubitId::aux(next_aux_++));
        }
        scopes_[name.text].push_back(qs);
        ever_declared_.insert({name.text, true});
        auto body = braced();
        scopes_[name.text].pop_back();
        return ir::aux_scope(std::move(qs), std::move(body));
    }

    ir::Instruction library_gate(const Token& kw) {
        bool dagger = false;
        auto variant = ir::LibraryVariant::Exact;
        Token name = next();
        while (name.kind == Tok::Ident && (name.text == "adj" || name.text == "approx")) {
            if (name.text == "adj") {
                dagger = !dagger;
            } else {
                variant = ir::LibraryVariant::Approx;
            }
            name = next();
        }
        if (name.kind != Tok::Ident) {
            fail(name, "expected library gate name");
        }
        const auto* e = lib_.find(name.text);
        if (e == nullptr) {
            fail(name, "unknown library gate '" + name.text + "'");
        }
        if (variant == ir::LibraryVariant::Approx && !e->approx) {
            fail(name, "library gate '" + name.text + "' has no approximate variant");
        }
        auto qs = qubit_list();
        if (qs.size() != e->qubits) {
            fail(kw, "library gate '" + name.text + "' takes " + std::to_string(e->qubits) + " qubits, got " +
                         std::to_string(qs.size()));
        }
        try {
            return ir::apply(ir::GateKind::library(name.text, variant, dagger), std::move(qs));
        } catch (const Error& err) {
            fail(kw, err.what());
        }
    }

    std::vector<ir::QubitId> qubit_list() {
        std::vector<ir::QubitId> out{qubit()};
        while (at_punct(",")) {
            ++pos_;
            out.push_back(qubit());
        }
        return out;
    }

    static bool is_main_name(const std::string& s) {
        return s.size() >= 2 && s[0] == 'q' && s.find_first_not_of("0123456789", 1) == std::string::npos;
    }

    ir::QubitId qubit() {
        const Token t = next();
        if (t.kind != Tok::Ident) {
            fail(t, "expected a qubit" + std::string(t.kind == Tok::End ? ", found end of input" : ""));
        }
        if (is_main_name(t.text)) {
            if (!have_qubits_) {
                fail(t, "qubit " + t.text + " used before the 'qubits' declaration");
            }
            const auto idx = std::stoull(t.text.substr(1));
            if (idx >= circuit_.num_main) {
                fail(t, "undeclared qubit " + t.text + " (circuit has " + std::to_string(circuit_.num_main) +
                            " qubits)");
            }
            return ir::QubitId::main(static_cast<std::uint32_t>(idx));
        }
        if (anc_ && t.text == "anc") {
            const std::size_t j = index_suffix(t, true);
            if (j >= *anc_) {
                fail(t, "anc[" + std::to_string(j) + "] exceeds the ancilla register of " + std::to_string(*anc_));
            }
            return ir::QubitId::aux(static_cast<std::uint32_t>(j));
        }
        auto it = scopes_.find(t.text);
        if (it == scopes_.end() || it->second.empty()) {
            if (ever_declared_.contains(t.text)) {
                fail(t, "aux qubit '" + t.text + "' referenced outside its scope");
            }
            fail(t, "undeclared qubit '" + t.text + "'");
        }
        const auto& reg = it->second.back();
        const std::size_t j = index_suffix(t, reg.size() != 1);
        if (j >= reg.size()) {
            fail(t, "index " + std::to_string(j) + " out of range for aux register '" + t.text + "' of size " +
                        std::to_string(reg.size()));
        }
        return reg[j];
    }

    std::size_t index_suffix(const Token& name, bool required) {
        if (!at_punct("[")) {
            if (required) {
                fail(name, "'" + name.text + "' needs an index");
            }
            return 0;
        }
        ++pos_;
        const std::size_t j = integer();
        expect_punct("]");
        return j;
    }

    double expr() {
        double v = term();
        while (at_punct("+") || at_punct("-")) {
            const bool plus = next().text == "+";
            const double r = term();
            v = plus ? v + r : v - r;
        }
        return v;
    }

    double term() {
        double v = unary();
        while (at_punct("*") || at_punct("/")) {
            const Token op = next();
            const double r = unary();
            if (op.text == "/" && r == 0.0) {
                fail(op, "division by zero in angle");
            }
            v = op.text == "*" ? v * r : v / r;
        }
        return v;
    }

    double unary() {
        if (at_punct("-")) {
            ++pos_;
            return -unary();
        }
        if (at_punct("+")) {
            ++pos_;
            return unary();
        }
        return primary();
    }

    double primary() {
        const Token t = next();
        if (t.kind == Tok::Number) {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(t.text, &used);
            } catch (const std::exception&) {
                fail(t, "malformed number '" + t.text + "'");
            }
            if (used != t.text.size()) {
                fail(t, "malformed number '" + t.text + "'");
            }
            return v;
        }
        if (t.kind == Tok::Ident && t.text == "pi") {
            return std::numbers::pi;
        }
        if (t.kind == Tok::Punct && t.text == "(") {
            const double v = expr();
            expect_punct(")");
            return v;
        }
        fail(t, "expected an angle");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const GateLibrary& lib_;
    ir::Circuit circuit_;
    bool have_qubits_ = false;
    std::optional<std::size_t> anc_;
    std::uint32_t next_aux_ = 0;
    std::map<std::string, std::vector<std::vector<ir::QubitId>>> scopes_;
    std::map<std::string, bool> ever_declared_;
};

}  // namespace detail

/// Parses a .qc program. Throws ParseError with line and column on any
/// syntax or qubit-reference problem.
inline ir::Circuit parse(std::string_view src, std::string name = "circuit",
                         const GateLibrary& lib = default_library()) {
    return detail::Parser(src, std::move(name), lib).run();
}

}  // namespace qaround::frontend
