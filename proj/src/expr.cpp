#include "alignlso/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "alignlso/errors.hpp"

namespace alignlso {

namespace {

constexpr OperatorInfo kOperators[] = {
    {OpSymbol::Add, 2, OpFamily::Arithmetic, "add"},
    {OpSymbol::Sub, 2, OpFamily::Arithmetic, "sub"},
    {OpSymbol::Mul, 2, OpFamily::Arithmetic, "mul"},
    {OpSymbol::Div, 2, OpFamily::Arithmetic, "div"},
    {OpSymbol::Sin, 1, OpFamily::Trig, "sin"},
    {OpSymbol::Cos, 1, OpFamily::Trig, "cos"},
    {OpSymbol::Tan, 1, OpFamily::Trig, "tan"},
    {OpSymbol::Exp, 1, OpFamily::ExpLog, "exp"},
    {OpSymbol::Log, 1, OpFamily::ExpLog, "log"},
    {OpSymbol::Sqrt, 1, OpFamily::Power, "sqrt"},
    {OpSymbol::Sq, 1, OpFamily::Power, "sq"},
    {OpSymbol::Cube, 1, OpFamily::Power, "cube"},
};

}  // namespace

std::span<const OperatorInfo> operator_table() { return kOperators; }

const OperatorInfo& op_info(OpSymbol s) { return kOperators[static_cast<int>(s)]; }

const OperatorInfo* find_operator(std::string_view name) {
    for (const auto& info : kOperators)
        if (name == info.name) return &info;
    return nullptr;
}

std::vector<OpSymbol> family_members(OpFamily f) {
    std::vector<OpSymbol> out;
    for (const auto& info : kOperators)
        if (info.family == f) out.push_back(info.symbol);
    return out;
}

int unary_family_slot(OpFamily f) {
    switch (f) {
        case OpFamily::Trig: return 0;
        case OpFamily::ExpLog: return 1;
        case OpFamily::Power: return 2;
        case OpFamily::Arithmetic: return -1;
    }
    return -1;
}

Expr Expr::make_op(OpSymbol s, std::vector<Expr> kids) {
    if (static_cast<int>(kids.size()) != op_info(s).arity)
        throw std::invalid_argument("operator arity mismatch");
    Expr e;
    e.kind = NodeKind::Op;
    e.op = s;
    e.children = std::move(kids);
    return e;
}

Expr Expr::make_var(int index) {
    if (index < 0) throw std::invalid_argument("variable index must be >= 0");
    Expr e;
    e.kind = NodeKind::Var;
    e.var_index = index;
    return e;
}

Expr Expr::make_int(long long v) {
    Expr e;
    e.kind = NodeKind::ConstInt;
    e.int_value = v;
    return e;
}

Expr Expr::make_float(double v) {
    Expr e;
    e.kind = NodeKind::ConstFloat;
    e.float_value = v;
    return e;
}

Expr Expr::make_named(NamedConst c) {
    Expr e;
    e.kind = NodeKind::ConstNamed;
    e.named = c;
    return e;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Op:
            if (a.op != b.op || a.children.size() != b.children.size()) return false;
            for (std::size_t i = 0; i < a.children.size(); ++i)
                if (!structurally_equal(a.children[i], b.children[i])) return false;
            return true;
        case NodeKind::Var: return a.var_index == b.var_index;
        case NodeKind::ConstInt: return a.int_value == b.int_value;
        case NodeKind::ConstFloat: return a.float_value == b.float_value;
        case NodeKind::ConstNamed: return a.named == b.named;
    }
    return false;
}

namespace {

bool payload_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Op: return a.op == b.op;
        case NodeKind::Var: return a.var_index == b.var_index;
        case NodeKind::ConstInt: return a.int_value == b.int_value;
        case NodeKind::ConstFloat: return a.float_value == b.float_value;
        case NodeKind::ConstNamed: return a.named == b.named;
    }
    return false;
}

bool count_diffs_impl(const Expr& a, const Expr& b, int& diffs) {
    if (a.children.size() != b.children.size()) return false;
    // a Var leaf swapped for a const (or vice versa) keeps the shape
    if ((a.kind == NodeKind::Op) != (b.kind == NodeKind::Op)) return false;
    if (!payload_equal(a, b)) ++diffs;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!count_diffs_impl(a.children[i], b.children[i], diffs)) return false;
    return true;
}

}  // namespace

int count_node_diffs(const Expr& a, const Expr& b) {
    int diffs = 0;
    if (!count_diffs_impl(a, b, diffs)) return -1;
    return diffs;
}

int node_count(const Expr& e) {
    int n = 1;
    for (const auto& c : e.children) n += node_count(c);
    return n;
}

int tree_depth(const Expr& e) {
    int d = 0;
    for (const auto& c : e.children) d = std::max(d, tree_depth(c));
    return d + 1;
}

int max_var_index(const Expr& e) {
    int m = (e.kind == NodeKind::Var) ? e.var_index : -1;
    for (const auto& c : e.children) m = std::max(m, max_var_index(c));
    return m;
}

namespace {

void collect_vars(const Expr& e, std::set<int>& out) {
    if (e.kind == NodeKind::Var) out.insert(e.var_index);
    for (const auto& c : e.children) collect_vars(c, out);
}

void stats_walk(const Expr& e, ExprStats& s) {
    switch (e.kind) {
        case NodeKind::Op: {
            const auto& info = op_info(e.op);
            if (info.arity == 2)
                ++s.n_binary;
            else
                ++s.n_unary_by_family[unary_family_slot(info.family)];
            break;
        }
        case NodeKind::ConstInt:
        case NodeKind::ConstFloat:
        case NodeKind::ConstNamed: ++s.n_constants; break;
        case NodeKind::Var: break;
    }
    for (const auto& c : e.children) stats_walk(c, s);
}

}  // namespace

std::vector<int> distinct_vars(const Expr& e) {
    std::set<int> vars;
    collect_vars(e, vars);
    return {vars.begin(), vars.end()};
}

ExprStats expr_stats(const Expr& e) {
    ExprStats s;
    stats_walk(e, s);
    s.n_variables = static_cast<int>(distinct_vars(e).size());
    s.depth = tree_depth(e);
    return s;
}

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

double finite_or_nan(double v) { return std::isfinite(v) ? v : kNaN; }

}  // namespace

double eval(const Expr& e, std::span<const double> x) {
    switch (e.kind) {
        case NodeKind::Var:
            if (e.var_index >= static_cast<int>(x.size())) return kNaN;
            return x[e.var_index];
        case NodeKind::ConstInt: return static_cast<double>(e.int_value);
        case NodeKind::ConstFloat: return e.float_value;
        case NodeKind::ConstNamed: return e.named == NamedConst::Pi ? kPi : kEuler;
        case NodeKind::Op: break;
    }
    const double a = eval(e.children[0], x);
    switch (e.op) {
        case OpSymbol::Add: return finite_or_nan(a + eval(e.children[1], x));
        case OpSymbol::Sub: return finite_or_nan(a - eval(e.children[1], x));
        case OpSymbol::Mul: return finite_or_nan(a * eval(e.children[1], x));
        case OpSymbol::Div: {
            const double b = eval(e.children[1], x);
            if (!(std::fabs(b) >= kDivGuard)) return kNaN;
            return finite_or_nan(a / b);
        }
        case OpSymbol::Sin: return finite_or_nan(std::sin(a));
        case OpSymbol::Cos: return finite_or_nan(std::cos(a));
        case OpSymbol::Tan: return finite_or_nan(std::tan(a));
        case OpSymbol::Exp: return finite_or_nan(std::exp(a));
        case OpSymbol::Log:
            if (!(a > 0.0)) return kNaN;
            return finite_or_nan(std::log(a));
        case OpSymbol::Sqrt:
            if (!(a >= 0.0)) return kNaN;
            return finite_or_nan(std::sqrt(a));
        case OpSymbol::Sq: return finite_or_nan(a * a);
        case OpSymbol::Cube: return finite_or_nan(a * a * a);
    }
    return kNaN;
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

void to_prefix_walk(const Expr& e, TokenSeq& out) {
    switch (e.kind) {
        case NodeKind::Op: out.emplace_back(op_info(e.op).name); break;
        case NodeKind::Var: out.push_back("x" + std::to_string(e.var_index)); break;
        case NodeKind::ConstInt: out.push_back(std::to_string(e.int_value)); break;
        case NodeKind::ConstFloat: out.push_back(format_double(e.float_value)); break;
        case NodeKind::ConstNamed: out.emplace_back(e.named == NamedConst::Pi ? "pi" : "e"); break;
    }
    for (const auto& c : e.children) to_prefix_walk(c, out);
}

bool parse_var_token(const std::string& tok, int& index) {
    if (tok.size() < 2 || tok[0] != 'x') return false;
    int value = 0;
    const auto res = std::from_chars(tok.data() + 1, tok.data() + tok.size(), value);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) return false;
    index = value;
    return true;
}

bool parse_int_token(const std::string& tok, long long& value) {
    if (tok.empty()) return false;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

bool parse_float_token(const std::string& tok, double& value) {
    if (tok.empty()) return false;
    char* end = nullptr;
    value = std::strtod(tok.c_str(), &end);
    return end == tok.c_str() + tok.size() && std::isfinite(value);
}

Expr from_prefix_impl(const TokenSeq& tokens, std::size_t& pos) {
    if (pos >= tokens.size()) throw MalformedSequence("unexpected end of token sequence");
    const std::string& tok = tokens[pos++];
    if (const OperatorInfo* info = find_operator(tok)) {
        std::vector<Expr> kids;
        kids.reserve(info->arity);
        for (int i = 0; i < info->arity; ++i) kids.push_back(from_prefix_impl(tokens, pos));
        return Expr::make_op(info->symbol, std::move(kids));
    }
    if (tok == "pi") return Expr::make_named(NamedConst::Pi);
    if (tok == "e") return Expr::make_named(NamedConst::E);
    int vi = 0;
    if (parse_var_token(tok, vi)) return Expr::make_var(vi);
    long long iv = 0;
    if (parse_int_token(tok, iv)) return Expr::make_int(iv);
    double fv = 0.0;
    if (parse_float_token(tok, fv)) return Expr::make_float(fv);
    throw MalformedSequence("unrecognized token '" + tok + "'");
}

}  // namespace

TokenSeq to_prefix(const Expr& e) {
    TokenSeq out;
    to_prefix_walk(e, out);
    return out;
}

Expr from_prefix(const TokenSeq& tokens) {
    std::size_t pos = 0;
    Expr e = from_prefix_impl(tokens, pos);
    if (pos != tokens.size())
        throw MalformedSequence("trailing tokens after complete expression");
    return e;
}

std::string prefix_to_string(const TokenSeq& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

TokenSeq prefix_from_string(const std::string& text) {
    TokenSeq out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) out.push_back(text.substr(start, i - start));
    }
    return out;
}

}  // namespace alignlso
