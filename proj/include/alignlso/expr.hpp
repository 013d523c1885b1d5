#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace alignlso {

inline constexpr double kPi = 3.141592653589793;
inline constexpr double kEuler = 2.718281828459045;
inline constexpr double kDivGuard = 1e-12;

enum class OpSymbol { Add, Sub, Mul, Div, Sin, Cos, Tan, Exp, Log, Sqrt, Sq, Cube };
enum class OpFamily { Arithmetic, Trig, ExpLog, Power };
enum class NamedConst { Pi, E };

struct OperatorInfo {
    OpSymbol symbol;
    int arity;
    OpFamily family;
    const char* name;
};

std::span<const OperatorInfo> operator_table();
const OperatorInfo& op_info(OpSymbol s);
const OperatorInfo* find_operator(std::string_view name);
std::vector<OpSymbol> family_members(OpFamily f);

// slot in ExprStats::n_unary_by_family; Arithmetic has no slot
int unary_family_slot(OpFamily f);

enum class NodeKind { Op, Var, ConstInt, ConstFloat, ConstNamed };

// Value-semantic expression tree. All nodes immutable by convention once
// built; copies are deep.
struct Expr {
    NodeKind kind = NodeKind::ConstInt;
    OpSymbol op = OpSymbol::Add;        // kind == Op
    int var_index = 0;                  // kind == Var
    long long int_value = 0;            // kind == ConstInt
    double float_value = 0.0;           // kind == ConstFloat
    NamedConst named = NamedConst::Pi;  // kind == ConstNamed
    std::vector<Expr> children;

    static Expr make_op(OpSymbol s, std::vector<Expr> kids);
    static Expr make_var(int index);
    static Expr make_int(long long v);
    static Expr make_float(double v);
    static Expr make_named(NamedConst c);

    bool is_constant() const {
        return kind == NodeKind::ConstInt || kind == NodeKind::ConstFloat ||
               kind == NodeKind::ConstNamed;
    }
};

bool structurally_equal(const Expr& a, const Expr& b);

// Number of nodes whose payload differs between two trees of identical
// shape; -1 when the shapes differ.
int count_node_diffs(const Expr& a, const Expr& b);

int node_count(const Expr& e);
int tree_depth(const Expr& e);
int max_var_index(const Expr& e);  // -1 when no variables
std::vector<int> distinct_vars(const Expr& e);

struct ExprStats {
    int n_variables = 0;                       // distinct variable indices
    std::array<int, 3> n_unary_by_family{};    // [trig, explog, power]
    int n_binary = 0;
    int n_constants = 0;
    int depth = 0;

    int n_unary_total() const {
        return n_unary_by_family[0] + n_unary_by_family[1] + n_unary_by_family[2];
    }
};
ExprStats expr_stats(const Expr& e);

// Evaluation over the reals. Domain violations (log of non-positive, sqrt of
// negative, |denominator| < 1e-12) and non-finite intermediates yield NaN,
// which propagates to the root; callers test with std::isfinite.
double eval(const Expr& e, std::span<const double> x);

using TokenSeq = std::vector<std::string>;

TokenSeq to_prefix(const Expr& e);
Expr from_prefix(const TokenSeq& tokens);
std::string prefix_to_string(const TokenSeq& tokens);
TokenSeq prefix_from_string(const std::string& text);

Expr parse_infix(const std::string& text);
std::string to_infix(const Expr& e);

// shortest decimal string that round-trips through strtod
std::string format_double(double v);

}  // namespace alignlso
