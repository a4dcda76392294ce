#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "neutral4/jets.hpp"

namespace neutral4 {

enum class UnaryOp { Neg, Exp, Log, Sin, Cos, Sqrt, Recip };
enum class BinaryOp { Add, Sub, Mul, Div };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

// Immutable expression tree. Shared freely across threads; evaluation is pure.
struct ExprNode {
    enum class Kind { Constant, Coord, Param, Unary, Binary, PowInt };
    Kind kind;
    double constant = 0.0;
    int coord = -1;          // Kind::Coord, 0..3
    std::string param;       // Kind::Param
    UnaryOp uop = UnaryOp::Neg;
    BinaryOp bop = BinaryOp::Add;
    ExprPtr a, b;
    int exponent = 0;        // Kind::PowInt
};

class Expr {
public:
    Expr() = default;
    explicit Expr(ExprPtr node) : node_(std::move(node)) {}

    bool valid() const { return node_ != nullptr; }
    const ExprNode& node() const { return *node_; }
    ExprPtr ptr() const { return node_; }

    static Expr constant(double v);
    static Expr coordinate(int axis);
    static Expr parameter(std::string name);
    static Expr unary(UnaryOp op, Expr x);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
    static Expr pow_int(Expr base, int exponent);

    // free symbols
    void collect_params(std::vector<std::string>& out) const;
    bool depends_on_coord(int axis) const;

private:
    ExprPtr node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

bool structurally_equal(const Expr& a, const Expr& b);

// Exact symbolic partial derivative w.r.t. coordinate `axis`, with zero/one
// folding to limit tree growth. Used where a derived object must itself be a
// field (Lie brackets); pointwise derivatives go through jets instead.
Expr derivative(const Expr& e, int axis);

// Folding constructors: drop additive zeros and multiplicative zeros/ones.
Expr fold_add(const Expr& a, const Expr& b);
Expr fold_sub(const Expr& a, const Expr& b);
Expr fold_mul(const Expr& a, const Expr& b);
bool is_constant_value(const Expr& e, double v);

// Grammar-exact rendering; parse(pretty_print(e)) reproduces the tree.
std::string pretty_print(const Expr& e);
std::string pretty_print_with_coords(const Expr& e, const std::array<std::string, 4>& coords);

struct ExprDomainError : std::runtime_error {
    ExprDomainError(const std::string& what, std::string subexpr_text)
        : std::runtime_error(what + " in subexpression `" + subexpr_text + "`"),
          subexpr(std::move(subexpr_text)) {}
    std::string subexpr;
};

using ParamBindings = std::map<std::string, double>;

namespace detail {

inline void domain_check(bool ok, const char* what, const ExprNode& node);

template <typename T>
T make_coordinate(double value, int axis);
template <> inline double make_coordinate<double>(double value, int) { return value; }
template <> inline Jet1 make_coordinate<Jet1>(double value, int axis) { return Jet1::coordinate(value, axis); }
template <> inline Jet2 make_coordinate<Jet2>(double value, int axis) { return Jet2::coordinate(value, axis); }

template <typename T>
T apply_unary(UnaryOp op, const T& u, const ExprNode& node);

} // namespace detail

// Evaluate over double / Jet1 / Jet2. Params are point-independent constants.
template <typename T>
T evaluate(const Expr& e, const std::array<double, 4>& point, const ParamBindings& params);

// The spec-facing jet evaluation.
inline Jet2 evaluate_jet2(const Expr& e, const std::array<double, 4>& point,
                          const ParamBindings& params) {
    return evaluate<Jet2>(e, point, params);
}

// ---- implementation ----

namespace detail {

inline std::string short_print(const ExprNode& node);

inline void domain_check(bool ok, const char* what, const ExprNode& node) {
    if (!ok) throw ExprDomainError(what, short_print(node));
}

template <>
inline double apply_unary<double>(UnaryOp op, const double& u, const ExprNode& node) {
    switch (op) {
        case UnaryOp::Neg: return -u;
        case UnaryOp::Exp: return std::exp(u);
        case UnaryOp::Log: domain_check(u > 0.0, "log of non-positive value", node); return std::log(u);
        case UnaryOp::Sin: return std::sin(u);
        case UnaryOp::Cos: return std::cos(u);
        case UnaryOp::Sqrt: domain_check(u > 0.0, "sqrt of non-positive value", node); return std::sqrt(u);
        case UnaryOp::Recip: domain_check(u != 0.0, "reciprocal of zero", node); return 1.0 / u;
    }
    return 0.0;
}

template <>
inline Jet1 apply_unary<Jet1>(UnaryOp op, const Jet1& u, const ExprNode& node) {
    const double x = u.v;
    switch (op) {
        case UnaryOp::Neg: return -u;
        case UnaryOp::Exp: { const double e = std::exp(x); return jet_apply(u, e, e); }
        case UnaryOp::Log: domain_check(x > 0.0, "log of non-positive value", node); return jet_apply(u, std::log(x), 1.0 / x);
        case UnaryOp::Sin: return jet_apply(u, std::sin(x), std::cos(x));
        case UnaryOp::Cos: return jet_apply(u, std::cos(x), -std::sin(x));
        case UnaryOp::Sqrt: {
            domain_check(x > 0.0, "sqrt of non-positive value", node);
            const double s = std::sqrt(x);
            return jet_apply(u, s, 0.5 / s);
        }
        case UnaryOp::Recip: domain_check(x != 0.0, "reciprocal of zero", node); return jet_apply(u, 1.0 / x, -1.0 / (x * x));
    }
    return Jet1(0.0);
}

template <>
inline Jet2 apply_unary<Jet2>(UnaryOp op, const Jet2& u, const ExprNode& node) {
    const double x = u.v;
    switch (op) {
        case UnaryOp::Neg: return -u;
        case UnaryOp::Exp: { const double e = std::exp(x); return jet_apply(u, e, e, e); }
        case UnaryOp::Log: domain_check(x > 0.0, "log of non-positive value", node); return jet_apply(u, std::log(x), 1.0 / x, -1.0 / (x * x));
        case UnaryOp::Sin: return jet_apply(u, std::sin(x), std::cos(x), -std::sin(x));
        case UnaryOp::Cos: return jet_apply(u, std::cos(x), -std::sin(x), -std::cos(x));
        case UnaryOp::Sqrt: {
            domain_check(x > 0.0, "sqrt of non-positive value", node);
            const double s = std::sqrt(x);
            return jet_apply(u, s, 0.5 / s, -0.25 / (s * x));
        }
        case UnaryOp::Recip:
            domain_check(x != 0.0, "reciprocal of zero", node);
            return jet_apply(u, 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
    }
    return Jet2(0.0);
}

template <typename T>
T pow_int_eval(const T& base, int n, const ExprNode& node);

template <>
inline double pow_int_eval<double>(const double& u, int n, const ExprNode& node) {
    domain_check(!(u == 0.0 && n < 0), "zero raised to negative power", node);
    return std::pow(u, n);
}

template <>
inline Jet1 pow_int_eval<Jet1>(const Jet1& u, int n, const ExprNode& node) {
    const double x = u.v;
    domain_check(!(x == 0.0 && n < 2), "jet of power at zero base", node);
    return jet_apply(u, std::pow(x, n), n * std::pow(x, n - 1));
}

template <>
inline Jet2 pow_int_eval<Jet2>(const Jet2& u, int n, const ExprNode& node) {
    const double x = u.v;
    domain_check(!(x == 0.0 && n < 3), "jet of power at zero base", node);
    return jet_apply(u, std::pow(x, n), n * std::pow(x, n - 1),
                     static_cast<double>(n) * (n - 1) * std::pow(x, n - 2));
}

template <typename T>
T eval_node(const ExprNode& node, const std::array<double, 4>& point, const ParamBindings& params) {
    switch (node.kind) {
        case ExprNode::Kind::Constant: return T(node.constant);
        case ExprNode::Kind::Coord: return make_coordinate<T>(point[static_cast<size_t>(node.coord)], node.coord);
        case ExprNode::Kind::Param: {
            auto it = params.find(node.param);
            if (it == params.end())
                throw std::runtime_error("unbound parameter `" + node.param + "`");
            return T(it->second);
        }
        case ExprNode::Kind::Unary:
            return apply_unary<T>(node.uop, eval_node<T>(*node.a, point, params), node);
        case ExprNode::Kind::Binary: {
            T lhs = eval_node<T>(*node.a, point, params);
            T rhs = eval_node<T>(*node.b, point, params);
            switch (node.bop) {
                case BinaryOp::Add: return lhs + rhs;
                case BinaryOp::Sub: return lhs - rhs;
                case BinaryOp::Mul: return lhs * rhs;
                case BinaryOp::Div:
                    domain_check(jet_value(rhs) != 0.0, "division by zero", node);
                    return lhs / rhs;
            }
            return T(0.0);
        }
        case ExprNode::Kind::PowInt:
            return pow_int_eval<T>(eval_node<T>(*node.a, point, params), node.exponent, node);
    }
    return T(0.0);
}

} // namespace detail

template <typename T>
T evaluate(const Expr& e, const std::array<double, 4>& point, const ParamBindings& params) {
    T result = detail::eval_node<T>(e.node(), point, params);
    if (!std::isfinite(jet_value(result)))
        throw ExprDomainError("non-finite result", pretty_print(e));
    return result;
}

} // namespace neutral4
