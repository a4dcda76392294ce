#include "neutral4/expr.hpp"

#include <cstdio>

namespace neutral4 {

Expr Expr::constant(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Constant;
    n->constant = v;
    return Expr(n);
}

Expr Expr::coordinate(int axis) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Coord;
    n->coord = axis;
    return Expr(n);
}

Expr Expr::parameter(std::string name) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Param;
    n->param = std::move(name);
    return Expr(n);
}

Expr Expr::unary(UnaryOp op, Expr x) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Unary;
    n->uop = op;
    n->a = x.ptr();
    return Expr(n);
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Binary;
    n->bop = op;
    n->a = lhs.ptr();
    n->b = rhs.ptr();
    return Expr(n);
}

Expr Expr::pow_int(Expr base, int exponent) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::PowInt;
    n->a = base.ptr();
    n->exponent = exponent;
    return Expr(n);
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::unary(UnaryOp::Neg, a); }

static void collect_params_node(const ExprNode& n, std::vector<std::string>& out) {
    switch (n.kind) {
        case ExprNode::Kind::Param:
            out.push_back(n.param);
            break;
        case ExprNode::Kind::Unary:
        case ExprNode::Kind::PowInt:
            collect_params_node(*n.a, out);
            break;
        case ExprNode::Kind::Binary:
            collect_params_node(*n.a, out);
            collect_params_node(*n.b, out);
            break;
        default:
            break;
    }
}

void Expr::collect_params(std::vector<std::string>& out) const {
    if (node_) collect_params_node(*node_, out);
}

static bool depends_node(const ExprNode& n, int axis) {
    switch (n.kind) {
        case ExprNode::Kind::Coord: return n.coord == axis;
        case ExprNode::Kind::Unary:
        case ExprNode::Kind::PowInt: return depends_node(*n.a, axis);
        case ExprNode::Kind::Binary: return depends_node(*n.a, axis) || depends_node(*n.b, axis);
        default: return false;
    }
}

bool Expr::depends_on_coord(int axis) const { return node_ && depends_node(*node_, axis); }

static bool eq_node(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprNode::Kind::Constant: return a.constant == b.constant;
        case ExprNode::Kind::Coord: return a.coord == b.coord;
        case ExprNode::Kind::Param: return a.param == b.param;
        case ExprNode::Kind::Unary: return a.uop == b.uop && eq_node(*a.a, *b.a);
        case ExprNode::Kind::Binary:
            return a.bop == b.bop && eq_node(*a.a, *b.a) && eq_node(*a.b, *b.b);
        case ExprNode::Kind::PowInt: return a.exponent == b.exponent && eq_node(*a.a, *b.a);
    }
    return false;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (!a.valid() || !b.valid()) return a.valid() == b.valid();
    return eq_node(a.node(), b.node());
}

bool is_constant_value(const Expr& e, double v) {
    return e.valid() && e.node().kind == ExprNode::Kind::Constant && e.node().constant == v;
}

Expr fold_add(const Expr& a, const Expr& b) {
    if (is_constant_value(a, 0.0)) return b;
    if (is_constant_value(b, 0.0)) return a;
    return a + b;
}

Expr fold_sub(const Expr& a, const Expr& b) {
    if (is_constant_value(b, 0.0)) return a;
    if (is_constant_value(a, 0.0)) return -b;
    return a - b;
}

Expr fold_mul(const Expr& a, const Expr& b) {
    if (is_constant_value(a, 0.0) || is_constant_value(b, 0.0)) return Expr::constant(0.0);
    if (is_constant_value(a, 1.0)) return b;
    if (is_constant_value(b, 1.0)) return a;
    return a * b;
}

Expr derivative(const Expr& e, int axis) {
    const ExprNode& n = e.node();
    switch (n.kind) {
        case ExprNode::Kind::Constant:
        case ExprNode::Kind::Param:
            return Expr::constant(0.0);
        case ExprNode::Kind::Coord:
            return Expr::constant(n.coord == axis ? 1.0 : 0.0);
        case ExprNode::Kind::Unary: {
            const Expr a(n.a);
            const Expr da = derivative(a, axis);
            if (is_constant_value(da, 0.0)) return Expr::constant(0.0);
            switch (n.uop) {
                case UnaryOp::Neg: return -da;
                case UnaryOp::Exp: return fold_mul(Expr::unary(UnaryOp::Exp, a), da);
                case UnaryOp::Log: return da / a;
                case UnaryOp::Sin: return fold_mul(Expr::unary(UnaryOp::Cos, a), da);
                case UnaryOp::Cos: return -fold_mul(Expr::unary(UnaryOp::Sin, a), da);
                case UnaryOp::Sqrt:
                    return da / (Expr::constant(2.0) * Expr::unary(UnaryOp::Sqrt, a));
                case UnaryOp::Recip: return -(da / fold_mul(a, a));
            }
            return Expr::constant(0.0);
        }
        case ExprNode::Kind::Binary: {
            const Expr a(n.a), b(n.b);
            const Expr da = derivative(a, axis), db = derivative(b, axis);
            switch (n.bop) {
                case BinaryOp::Add: return fold_add(da, db);
                case BinaryOp::Sub: return fold_sub(da, db);
                case BinaryOp::Mul: return fold_add(fold_mul(da, b), fold_mul(a, db));
                case BinaryOp::Div:
                    if (is_constant_value(db, 0.0)) return da / b;
                    return fold_sub(fold_mul(da, b), fold_mul(a, db)) / fold_mul(b, b);
            }
            return Expr::constant(0.0);
        }
        case ExprNode::Kind::PowInt: {
            if (n.exponent == 0) return Expr::constant(0.0);
            const Expr a(n.a);
            const Expr da = derivative(a, axis);
            if (is_constant_value(da, 0.0)) return Expr::constant(0.0);
            const Expr scaled = fold_mul(Expr::constant(static_cast<double>(n.exponent)), da);
            if (n.exponent == 1) return scaled;
            return fold_mul(scaled, Expr::pow_int(a, n.exponent - 1));
        }
    }
    return Expr::constant(0.0);
}

namespace {

// precedence levels: add/sub=1, mul/div=2, unary minus=3, pow=4, atoms=5
int precedence(const ExprNode& n) {
    switch (n.kind) {
        case ExprNode::Kind::Binary:
            return (n.bop == BinaryOp::Add || n.bop == BinaryOp::Sub) ? 1 : 2;
        case ExprNode::Kind::Unary:
            return n.uop == UnaryOp::Neg ? 3 : 5;  // named functions print as calls
        case ExprNode::Kind::PowInt:
            return 4;
        default:
            return 5;
    }
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* coord_names_default[4] = {"x0", "x1", "x2", "x3"};

void print_node(const ExprNode& n, std::string& out, const std::array<std::string, 4>* coords);

void print_child(const ExprNode& child, int parent_prec, bool strict, std::string& out,
                 const std::array<std::string, 4>* coords) {
    const int child_prec = precedence(child);
    const bool need = strict ? (child_prec <= parent_prec) : (child_prec < parent_prec);
    if (need) out += '(';
    print_node(child, out, coords);
    if (need) out += ')';
}

void print_node(const ExprNode& n, std::string& out, const std::array<std::string, 4>* coords) {
    switch (n.kind) {
        case ExprNode::Kind::Constant:
            if (n.constant < 0) {
                out += '(';
                out += fmt_double(n.constant);
                out += ')';
            } else {
                out += fmt_double(n.constant);
            }
            break;
        case ExprNode::Kind::Coord:
            out += coords ? (*coords)[static_cast<size_t>(n.coord)]
                          : coord_names_default[n.coord];
            break;
        case ExprNode::Kind::Param:
            out += n.param;
            break;
        case ExprNode::Kind::Unary:
            switch (n.uop) {
                case UnaryOp::Neg:
                    out += '-';
                    print_child(*n.a, 3, true, out, coords);
                    break;
                case UnaryOp::Exp: out += "exp("; print_node(*n.a, out, coords); out += ')'; break;
                case UnaryOp::Log: out += "log("; print_node(*n.a, out, coords); out += ')'; break;
                case UnaryOp::Sin: out += "sin("; print_node(*n.a, out, coords); out += ')'; break;
                case UnaryOp::Cos: out += "cos("; print_node(*n.a, out, coords); out += ')'; break;
                case UnaryOp::Sqrt: out += "sqrt("; print_node(*n.a, out, coords); out += ')'; break;
                case UnaryOp::Recip: out += "recip("; print_node(*n.a, out, coords); out += ')'; break;
            }
            break;
        case ExprNode::Kind::Binary: {
            const int prec = precedence(n);
            const char* op = nullptr;
            switch (n.bop) {
                case BinaryOp::Add: op = " + "; break;
                case BinaryOp::Sub: op = " - "; break;
                case BinaryOp::Mul: op = "*"; break;
                case BinaryOp::Div: op = "/"; break;
            }
            print_child(*n.a, prec, false, out, coords);
            out += op;
            // right operand of - and / needs strict parens (left associativity)
            const bool strict = n.bop == BinaryOp::Sub || n.bop == BinaryOp::Div;
            print_child(*n.b, prec, strict, out, coords);
            break;
        }
        case ExprNode::Kind::PowInt:
            print_child(*n.a, 4, true, out, coords);
            out += '^';
            if (n.exponent < 0) {
                out += '(';
                out += std::to_string(n.exponent);
                out += ')';
            } else {
                out += std::to_string(n.exponent);
            }
            break;
    }
}

} // namespace

std::string pretty_print(const Expr& e) {
    if (!e.valid()) return "<empty>";
    std::string out;
    print_node(e.node(), out, nullptr);
    return out;
}

std::string pretty_print_with_coords(const Expr& e, const std::array<std::string, 4>& coords) {
    if (!e.valid()) return "<empty>";
    std::string out;
    print_node(e.node(), out, &coords);
    return out;
}

namespace detail {

std::string short_print(const ExprNode& node) {
    std::string out;
    print_node(node, out, nullptr);
    if (out.size() > 120) out = out.substr(0, 117) + "...";
    return out;
}

} // namespace detail

} // namespace neutral4
