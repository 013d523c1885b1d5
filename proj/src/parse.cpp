#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "alignlso/errors.hpp"
#include "alignlso/expr.hpp"

// Infix grammar (precedence high to low): ^2/^3, unary minus, * /, + -;
// binary operators associate left. Unary minus on a literal folds into the
// literal; elsewhere it desugars to sub(0, e).

namespace alignlso {

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;

    explicit Lexer(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool done() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            throw SyntaxError(pos, std::string("expected '") + c + "'");
    }
};

struct Parser {
    Lexer lex;

    explicit Parser(const std::string& text) : lex(text) {}

    Expr parse() {
        Expr e = parse_sum();
        if (!lex.done()) throw SyntaxError(lex.pos, "unexpected trailing input");
        return e;
    }

    Expr parse_sum() {
        Expr e = parse_product();
        while (true) {
            if (lex.accept('+'))
                e = Expr::make_op(OpSymbol::Add, {std::move(e), parse_product()});
            else if (lex.accept('-'))
                e = Expr::make_op(OpSymbol::Sub, {std::move(e), parse_product()});
            else
                return e;
        }
    }

    Expr parse_product() {
        Expr e = parse_unary();
        while (true) {
            if (lex.accept('*'))
                e = Expr::make_op(OpSymbol::Mul, {std::move(e), parse_unary()});
            else if (lex.accept('/'))
                e = Expr::make_op(OpSymbol::Div, {std::move(e), parse_unary()});
            else
                return e;
        }
    }

    Expr parse_unary() {
        if (lex.accept('-')) {
            if (std::isdigit(static_cast<unsigned char>(lex.peek())) || lex.peek() == '.') {
                Expr lit = parse_number();
                if (lit.kind == NodeKind::ConstInt) lit.int_value = -lit.int_value;
                else lit.float_value = -lit.float_value;
                return parse_power_suffix(std::move(lit));
            }
            return Expr::make_op(OpSymbol::Sub, {Expr::make_int(0), parse_unary()});
        }
        return parse_power();
    }

    Expr parse_power() { return parse_power_suffix(parse_atom()); }

    Expr parse_power_suffix(Expr base) {
        if (!lex.accept('^')) return base;
        const std::size_t at = lex.pos;
        const char c = lex.peek();
        ++lex.pos;
        if (c == '2') return Expr::make_op(OpSymbol::Sq, {std::move(base)});
        if (c == '3') return Expr::make_op(OpSymbol::Cube, {std::move(base)});
        throw SyntaxError(at, "only exponents 2 and 3 are supported");
    }

    Expr parse_atom() {
        const char c = lex.peek();
        if (c == '(') {
            lex.expect('(');
            Expr e = parse_sum();
            lex.expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
        throw SyntaxError(lex.pos, c == '\0' ? "unexpected end of input"
                                             : std::string("unexpected character '") + c + "'");
    }

    Expr parse_number() {
        lex.skip_ws();
        const std::size_t start = lex.pos;
        bool is_float = false;
        while (lex.pos < lex.text.size()) {
            const char c = lex.text[lex.pos];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                ++lex.pos;
            } else if (c == '.') {
                is_float = true;
                ++lex.pos;
            } else if (c == 'e' || c == 'E') {
                // exponent part, only when followed by digits or a sign
                std::size_t next = lex.pos + 1;
                if (next < lex.text.size() && (lex.text[next] == '+' || lex.text[next] == '-'))
                    ++next;
                if (next < lex.text.size() &&
                    std::isdigit(static_cast<unsigned char>(lex.text[next]))) {
                    is_float = true;
                    lex.pos = next + 1;
                    while (lex.pos < lex.text.size() &&
                           std::isdigit(static_cast<unsigned char>(lex.text[lex.pos])))
                        ++lex.pos;
                }
                break;
            } else {
                break;
            }
        }
        const std::string lit = lex.text.substr(start, lex.pos - start);
        if (lit.empty() || lit == ".") throw SyntaxError(start, "malformed number literal");
        if (!is_float) {
            return Expr::make_int(std::strtoll(lit.c_str(), nullptr, 10));
        }
        char* end = nullptr;
        const double v = std::strtod(lit.c_str(), &end);
        if (end != lit.c_str() + lit.size() || !std::isfinite(v))
            throw SyntaxError(start, "malformed number literal");
        return Expr::make_float(v);
    }

    Expr parse_name() {
        lex.skip_ws();
        const std::size_t start = lex.pos;
        while (lex.pos < lex.text.size() &&
               (std::isalnum(static_cast<unsigned char>(lex.text[lex.pos])) ||
                lex.text[lex.pos] == '_'))
            ++lex.pos;
        const std::string name = lex.text.substr(start, lex.pos - start);
        if (name == "pi") return Expr::make_named(NamedConst::Pi);
        if (name == "e") return Expr::make_named(NamedConst::E);
        if (name.size() >= 2 && name[0] == 'x') {
            bool digits = true;
            for (std::size_t i = 1; i < name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
            if (digits) {
                const long idx = std::strtol(name.c_str() + 1, nullptr, 10);
                if (idx > 9) throw UnknownSymbol(name);
                return Expr::make_var(static_cast<int>(idx));
            }
        }
        if (const OperatorInfo* info = find_operator(name)) {
            if (info->arity != 1 || info->symbol == OpSymbol::Sq || info->symbol == OpSymbol::Cube)
                throw UnknownSymbol(name);
            lex.expect('(');
            Expr arg = parse_sum();
            lex.expect(')');
            return Expr::make_op(info->symbol, {std::move(arg)});
        }
        throw UnknownSymbol(name);
    }
};

int precedence(OpSymbol op) {
    switch (op) {
        case OpSymbol::Add:
        case OpSymbol::Sub: return 1;
        case OpSymbol::Mul:
        case OpSymbol::Div: return 2;
        default: return 3;
    }
}

void print_infix(const Expr& e, std::string& out);

void print_child(const Expr& child, std::string& out, int parent_prec, bool strict) {
    bool parens = false;
    if (child.kind == NodeKind::Op && op_info(child.op).arity == 2) {
        const int prec = precedence(child.op);
        parens = prec < parent_prec || (prec == parent_prec && strict);
    }
    if (parens) {
        out += "(";
        print_infix(child, out);
        out += ")";
    } else {
        print_infix(child, out);
    }
}

void print_infix(const Expr& e, std::string& out) {
    switch (e.kind) {
        case NodeKind::Var:
            out += "x" + std::to_string(e.var_index);
            return;
        case NodeKind::ConstInt:
            if (e.int_value < 0) out += "(" + std::to_string(e.int_value) + ")";
            else out += std::to_string(e.int_value);
            return;
        case NodeKind::ConstFloat:
            if (e.float_value < 0) out += "(" + format_double(e.float_value) + ")";
            else out += format_double(e.float_value);
            return;
        case NodeKind::ConstNamed:
            out += (e.named == NamedConst::Pi) ? "pi" : "e";
            return;
        case NodeKind::Op: break;
    }
    const auto& info = op_info(e.op);
    if (info.arity == 1) {
        if (e.op == OpSymbol::Sq || e.op == OpSymbol::Cube) {
            out += "(";
            print_infix(e.children[0], out);
            out += (e.op == OpSymbol::Sq) ? ")^2" : ")^3";
        } else {
            out += info.name;
            out += "(";
            print_infix(e.children[0], out);
            out += ")";
        }
        return;
    }
    const int prec = precedence(e.op);
    const char* sym = (e.op == OpSymbol::Add)   ? "+"
                      : (e.op == OpSymbol::Sub) ? "-"
                      : (e.op == OpSymbol::Mul) ? "*"
                                                : "/";
    print_child(e.children[0], out, prec, false);
    out += sym;
    print_child(e.children[1], out, prec, e.op == OpSymbol::Sub || e.op == OpSymbol::Div);
}

}  // namespace

Expr parse_infix(const std::string& text) { return Parser(text).parse(); }

std::string to_infix(const Expr& e) {
    std::string out;
    print_infix(e, out);
    return out;
}

}  // namespace alignlso
