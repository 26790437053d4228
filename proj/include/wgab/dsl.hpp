#ifndef WGAB_DSL_HPP
#define WGAB_DSL_HPP

// Line-oriented text format for algebra presentations.
//
//   # comment
//   algebra NAME
//   param NAME
//   family NAME OFFSET            OFFSET is 0 or 1/2
//   [F(x), G(y)] = 0
//   [F(x), G(y)] = EXPR T(x + y)          also x + y + 1, x + y - 1/2, ...
//
// EXPR is built from +, -, *, /, ^, parentheses, integer literals and the
// rule's two index variables plus declared parameters. Division is only by
// nonzero constants, so coefficients stay polynomial. ';' separates
// statements like a newline.

#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "algebra_spec.hpp"

namespace wgab {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ", col " +
                             std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

namespace dsl_detail {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    int line = 1, col = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return eof() ? '\0' : text[pos]; }
    char get() {
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    void skip_ws_inline() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) get();
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, col, msg); }
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

inline std::string read_ident(Cursor& cur) {
    cur.skip_ws_inline();
    if (!ident_start(cur.peek())) cur.fail("expected identifier");
    std::string s;
    while (!cur.eof() && ident_char(cur.peek())) s += cur.get();
    return s;
}

inline void expect(Cursor& cur, char c) {
    cur.skip_ws_inline();
    if (cur.peek() != c) cur.fail(std::string("expected '") + c + "'");
    cur.get();
}

// expression parser over the current rule's variable environment
struct ExprEnv {
    std::map<std::string, VarId> vars;  // index vars and parameters
};

Poly parse_expr(Cursor& cur, const ExprEnv& env);

inline Poly parse_factor(Cursor& cur, const ExprEnv& env) {
    cur.skip_ws_inline();
    char c = cur.peek();
    if (c == '-') {
        cur.get();
        return -parse_factor(cur, env);
    }
    if (c == '(') {
        cur.get();
        Poly p = parse_expr(cur, env);
        expect(cur, ')');
        return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string digits;
        while (!cur.eof() && std::isdigit(static_cast<unsigned char>(cur.peek())))
            digits += cur.get();
        return Poly::constant(Rational::parse(digits));
    }
    if (ident_start(c)) {
        std::string name = read_ident(cur);
        auto it = env.vars.find(name);
        if (it == env.vars.end()) cur.fail("unknown symbol '" + name + "' in coefficient");
        return Poly::var(it->second);
    }
    cur.fail("expected factor");
}

inline Poly parse_power(Cursor& cur, const ExprEnv& env) {
    Poly base = parse_factor(cur, env);
    cur.skip_ws_inline();
    if (cur.peek() == '^') {
        cur.get();
        cur.skip_ws_inline();
        std::string digits;
        while (!cur.eof() && std::isdigit(static_cast<unsigned char>(cur.peek())))
            digits += cur.get();
        if (digits.empty()) cur.fail("expected integer exponent after '^'");
        return base.pow(std::stoi(digits));
    }
    return base;
}

inline Poly parse_term(Cursor& cur, const ExprEnv& env) {
    Poly p = parse_power(cur, env);
    for (;;) {
        cur.skip_ws_inline();
        char c = cur.peek();
        if (c == '*') {
            cur.get();
            p = p * parse_power(cur, env);
        } else if (c == '/') {
            cur.get();
            Poly d = parse_power(cur, env);
            if (!d.is_constant()) cur.fail("division only by constants");
            Rational dv = d.constant_value();
            if (dv.is_zero()) cur.fail("division by zero");
            p = p.scaled(dv.inverse());
        } else {
            return p;
        }
    }
}

inline Poly parse_expr(Cursor& cur, const ExprEnv& env) {
    Poly p = parse_term(cur, env);
    for (;;) {
        cur.skip_ws_inline();
        char c = cur.peek();
        if (c == '+') {
            cur.get();
            p += parse_term(cur, env);
        } else if (c == '-') {
            cur.get();
            p -= parse_term(cur, env);
        } else {
            return p;
        }
    }
}

}  // namespace dsl_detail

inline AlgebraSpec parse_spec(std::string_view text) {
    using namespace dsl_detail;
    AlgebraSpec spec;
    Cursor cur{text};

    auto at_stmt_end = [&]() {
        cur.skip_ws_inline();
        return cur.eof() || cur.peek() == '\n' || cur.peek() == ';' || cur.peek() == '#';
    };
    auto end_stmt = [&]() {
        cur.skip_ws_inline();
        if (cur.peek() == '#')
            while (!cur.eof() && cur.peek() != '\n') cur.get();
        if (!cur.eof()) {
            if (cur.peek() != '\n' && cur.peek() != ';') cur.fail("trailing input after statement");
            cur.get();
        }
    };

    while (!cur.eof()) {
        cur.skip_ws_inline();
        if (cur.eof()) break;
        char c = cur.peek();
        if (c == '\n' || c == ';') {
            cur.get();
            continue;
        }
        if (c == '#') {
            while (!cur.eof() && cur.peek() != '\n') cur.get();
            continue;
        }
        if (c == '[') {
            // bracket rule
            cur.get();
            std::string lfam = read_ident(cur);
            expect(cur, '(');
            std::string lvar = read_ident(cur);
            expect(cur, ')');
            expect(cur, ',');
            std::string rfam = read_ident(cur);
            expect(cur, '(');
            std::string rvar = read_ident(cur);
            expect(cur, ')');
            expect(cur, ']');
            expect(cur, '=');

            int lf = spec.family_index(lfam);
            if (lf < 0) cur.fail("unknown family '" + lfam + "'");
            int rf = spec.family_index(rfam);
            if (rf < 0) cur.fail("unknown family '" + rfam + "'");
            if (lvar == rvar) cur.fail("index variables must be distinct");

            ExprEnv env;
            env.vars[lvar] = VarPool::M;
            env.vars[rvar] = VarPool::N;
            for (auto& p : spec.parameters) {
                if (p == lvar || p == rvar)
                    cur.fail("index variable shadows parameter '" + p + "'");
                env.vars[p] = VarPool::intern(p);
            }

            BracketRule rule;
            rule.left = lf;
            rule.right = rf;

            cur.skip_ws_inline();
            Poly coeff = parse_expr(cur, env);
            if (at_stmt_end()) {
                // whole right-hand side was an expression: must be zero
                if (!coeff.is_zero()) cur.fail("expected target symbol after coefficient");
                rule.coefficient = Poly();
                rule.target = std::nullopt;
            } else {
                std::string tfam = read_ident(cur);
                int tf = spec.family_index(tfam);
                if (tf < 0) cur.fail("unknown family '" + tfam + "'");
                expect(cur, '(');
                Poly idx = parse_expr(cur, env);
                expect(cur, ')');
                Poly shift = idx - Poly::var(VarPool::M) - Poly::var(VarPool::N);
                if (!shift.is_constant())
                    cur.fail("target index must be m + n plus a constant shift");
                Rational sh = shift.constant_value();
                Rational doubled = sh * Rational(2);
                if (!doubled.is_integer()) cur.fail("target shift must be a half-integer");
                if (coeff.is_zero()) {
                    rule.coefficient = Poly();
                    rule.target = std::nullopt;
                } else {
                    rule.coefficient = std::move(coeff);
                    rule.target = tf;
                    rule.target_shift = HalfInt::of_doubled(doubled.numerator().get_si());
                }
            }
            // duplicate-pair check here so the error carries a position
            for (auto& r : spec.rules) {
                auto a = std::minmax(r.left, r.right);
                auto b = std::minmax(rule.left, rule.right);
                if (a == b) cur.fail("duplicate rule for pair [" + lfam + ", " + rfam + "]");
            }
            spec.rules.push_back(std::move(rule));
            end_stmt();
            continue;
        }
        std::string kw = read_ident(cur);
        if (kw == "algebra") {
            spec.name = read_ident(cur);
        } else if (kw == "param") {
            spec.parameters.push_back(read_ident(cur));
        } else if (kw == "family") {
            FamilyDecl f;
            f.name = read_ident(cur);
            cur.skip_ws_inline();
            std::string off;
            while (!cur.eof() && (std::isdigit(static_cast<unsigned char>(cur.peek())) ||
                                  cur.peek() == '/'))
                off += cur.get();
            if (off == "0")
                f.index_offset = HalfInt::of_int(0);
            else if (off == "1/2")
                f.index_offset = HalfInt::of_doubled(1);
            else
                cur.fail("family offset must be 0 or 1/2");
            spec.families.push_back(std::move(f));
        } else {
            cur.fail("unknown statement '" + kw + "'");
        }
        end_stmt();
    }

    try {
        validate_spec(spec);
    } catch (const std::invalid_argument& e) {
        throw ParseError(cur.line, 1, e.what());
    }
    return spec;
}

// Canonical source; parse_spec(print_spec(s)) is structurally equal to s.
inline std::string print_spec(const AlgebraSpec& spec) {
    std::ostringstream out;
    out << "algebra " << spec.name << "\n";
    for (auto& p : spec.parameters) out << "param " << p << "\n";
    for (auto& f : spec.families)
        out << "family " << f.name << " " << f.index_offset.str() << "\n";
    for (auto& r : spec.rules) {
        out << "[" << spec.families[r.left].name << "(m), " << spec.families[r.right].name
            << "(n)] = ";
        if (r.is_zero()) {
            out << "0\n";
            continue;
        }
        out << "(" << r.coefficient.str() << ") " << spec.families[*r.target].name << "(m + n";
        if (r.target_shift.doubled > 0)
            out << " + " << r.target_shift.str();
        else if (r.target_shift.doubled < 0)
            out << " - " << (-r.target_shift).str();
        out << ")\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// built-in presets

inline constexpr const char* kWittSource = R"(algebra witt
family L 0
[L(m), L(n)] = (m - n) L(m + n)
)";

inline constexpr const char* kWabSource = R"(algebra wab
param a
param b
family L 0
family I 0
[L(m), L(n)] = (m - n) L(m + n)
[L(m), I(n)] = -(n + a + b*m) I(m + n)
[I(m), I(n)] = 0
)";

// Y is indexed directly by half-integers: Y(k) here is Y_{n+1/2} with
// k = n + 1/2, so the usual [L_m, Y_{n+1/2}] coefficient -(n + (1-m+a+bm)/2)
// reads -(k - 1/2 + (1-m+a+bm)/2) in the true index k, and [Y, Y] lands on
// I(k + k') with integer k + k'.
inline constexpr const char* kWgabSource = R"(algebra wgab
param a
param b
family L 0
family I 0
family Y 1/2
[L(m), L(n)] = (m - n) L(m + n)
[L(m), I(n)] = -(n + a + b*m) I(m + n)
[L(m), Y(n)] = -(n - 1/2 + (1 - m + a + b*m)/2) Y(m + n)
[I(m), I(n)] = 0
[I(m), Y(n)] = 0
[Y(m), Y(n)] = (m - n) I(m + n)
)";

inline AlgebraSpec preset(const std::string& name) {
    if (name == "witt") return parse_spec(kWittSource);
    if (name == "wab") return parse_spec(kWabSource);
    if (name == "wgab") return parse_spec(kWgabSource);
    throw std::invalid_argument("unknown preset '" + name + "' (expected witt, wab or wgab)");
}

}  // namespace wgab

#endif
