// A small expression language for real scalar fields f(z, zbar) on a chart:
// conformal factors and custom metric entries.  Variables are the real
// coordinates x1..xn, y1..yn plus absq = |z|^2.  Functions: sin, cos, exp,
// log, sqrt.  '^' takes an unsigned integer literal exponent only (negative
// powers are spelled with division), which keeps every expression single-valued.
//
// Grammar (EBNF), whitespace insignificant:
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { ("*" | "/") unary } ;
//   unary   = "-" unary | power ;
//   power   = atom [ "^" integer ] ;
//   atom    = number | "(" expr ")" | "absq"
//           | coord | function "(" expr ")" ;
//   coord   = ("x" | "y") integer ;            (* 1-based *)
//   function= "sin" | "cos" | "exp" | "log" | "sqrt" ;
//   number  = digits [ "." digits ] [ ("e"|"E") ["+"|"-"] digits ] ;
// Precedence: ^  >  unary -  >  * /  >  + - ; binary operators associate left.
#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>

#include "hermgeo/chart.hpp"
#include "hermgeo/types.hpp"

namespace hermgeo {

class FieldExpr {
public:
    enum class Kind { Const, Coord, AbsQ, Neg, Add, Sub, Mul, Div, Pow, Fun };
    enum class Axis { X, Y };
    enum class Fn { Sin, Cos, Exp, Log, Sqrt };

    struct Node {
        Kind kind;
        double constant = 0.0;            // Const
        Axis axis = Axis::X;              // Coord
        int index = 0;                    // Coord (1-based)
        int exponent = 0;                 // Pow
        Fn fn = Fn::Sin;                  // Fun
        std::shared_ptr<const Node> a, b; // children
    };
    using NodePtr = std::shared_ptr<const Node>;

    FieldExpr() : root_(constant_node(0.0)) {}
    explicit FieldExpr(NodePtr root) : root_(std::move(root)) {}

    static FieldExpr constant(double v) { return FieldExpr(constant_node(v)); }
    static FieldExpr coord(Axis axis, int index) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Coord;
        n->axis = axis;
        n->index = index;
        return FieldExpr(NodePtr(n));
    }
    static FieldExpr absq() {
        auto n = std::make_shared<Node>();
        n->kind = Kind::AbsQ;
        return FieldExpr(NodePtr(n));
    }
    static FieldExpr unary(Kind k, FieldExpr a) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->a = a.root_;
        return FieldExpr(NodePtr(n));
    }
    static FieldExpr binary(Kind k, FieldExpr a, FieldExpr b) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->a = a.root_;
        n->b = b.root_;
        return FieldExpr(NodePtr(n));
    }
    static FieldExpr power(FieldExpr base, int exponent) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Pow;
        n->a = base.root_;
        n->exponent = exponent;
        return FieldExpr(NodePtr(n));
    }
    static FieldExpr call(Fn fn, FieldExpr a) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Fun;
        n->fn = fn;
        n->a = a.root_;
        return FieldExpr(NodePtr(n));
    }

    const NodePtr& root() const { return root_; }

    bool same_ast(const FieldExpr& o) const { return node_equal(root_, o.root_); }

    double evaluate(const ChartPoint& p) const { return eval_node(root_, p); }

    std::string print() const {
        std::string out;
        print_node(root_, 0, out);
        return out;
    }

    static FieldExpr parse(const std::string& text);

private:
    NodePtr root_;

    static NodePtr constant_node(double v) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Const;
        n->constant = v;
        return NodePtr(n);
    }

    static bool node_equal(const NodePtr& x, const NodePtr& y) {
        if (x->kind != y->kind) return false;
        switch (x->kind) {
            case Kind::Const: return x->constant == y->constant;
            case Kind::Coord: return x->axis == y->axis && x->index == y->index;
            case Kind::AbsQ: return true;
            case Kind::Neg:
            case Kind::Fun:
                if (x->kind == Kind::Fun && x->fn != y->fn) return false;
                return node_equal(x->a, y->a);
            case Kind::Pow:
                return x->exponent == y->exponent && node_equal(x->a, y->a);
            default:
                return node_equal(x->a, y->a) && node_equal(x->b, y->b);
        }
    }

    static double eval_node(const NodePtr& nd, const ChartPoint& p) {
        switch (nd->kind) {
            case Kind::Const: return nd->constant;
            case Kind::Coord: {
                if (nd->index > p.n())
                    throw EvalError("coordinate index " + std::to_string(nd->index) +
                                    " exceeds chart dimension " + std::to_string(p.n()));
                return nd->axis == Axis::X ? p.x(nd->index - 1) : p.y(nd->index - 1);
            }
            case Kind::AbsQ: return p.abs_sq();
            case Kind::Neg: return -eval_node(nd->a, p);
            case Kind::Add: return eval_node(nd->a, p) + eval_node(nd->b, p);
            case Kind::Sub: return eval_node(nd->a, p) - eval_node(nd->b, p);
            case Kind::Mul: return eval_node(nd->a, p) * eval_node(nd->b, p);
            case Kind::Div: {
                const double den = eval_node(nd->b, p);
                if (den == 0.0) throw EvalError("division by zero in '" + subprint(nd) + "'");
                return eval_node(nd->a, p) / den;
            }
            case Kind::Pow: {
                const double base = eval_node(nd->a, p);
                double r = 1.0;
                for (int k = 0; k < nd->exponent; ++k) r *= base;
                return r;
            }
            case Kind::Fun: {
                const double v = eval_node(nd->a, p);
                switch (nd->fn) {
                    case Fn::Sin: return std::sin(v);
                    case Fn::Cos: return std::cos(v);
                    case Fn::Exp: return std::exp(v);
                    case Fn::Log:
                        if (!(v > 0.0))
                            throw EvalError("log of non-positive value in '" + subprint(nd) + "'");
                        return std::log(v);
                    case Fn::Sqrt:
                        if (v < 0.0)
                            throw EvalError("sqrt of negative value in '" + subprint(nd) + "'");
                        return std::sqrt(v);
                }
                return 0.0;
            }
        }
        return 0.0;
    }

    static std::string subprint(const NodePtr& nd) {
        std::string out;
        print_node(nd, 0, out);
        return out;
    }

    // Precedence levels: + - : 1, * / : 2, unary - : 3, ^ : 4, atoms : 5.
    static int level(const NodePtr& nd) {
        switch (nd->kind) {
            case Kind::Add:
            case Kind::Sub: return 1;
            case Kind::Mul:
            case Kind::Div: return 2;
            case Kind::Neg: return 3;
            case Kind::Pow: return 4;
            default: return 5;
        }
    }

    static void print_child(const NodePtr& nd, int min_level, std::string& out) {
        if (level(nd) < min_level) {
            out += '(';
            print_node(nd, 0, out);
            out += ')';
        } else {
            print_node(nd, 0, out);
        }
    }

    static void print_node(const NodePtr& nd, int, std::string& out) {
        switch (nd->kind) {
            case Kind::Const: {
                char buf[40];
                auto res = std::to_chars(buf, buf + sizeof buf, nd->constant);
                out.append(buf, res.ptr);
                break;
            }
            case Kind::Coord:
                out += (nd->axis == Axis::X) ? 'x' : 'y';
                out += std::to_string(nd->index);
                break;
            case Kind::AbsQ: out += "absq"; break;
            case Kind::Neg:
                out += '-';
                print_child(nd->a, 3, out);
                break;
            case Kind::Add:
            case Kind::Sub:
                print_child(nd->a, 1, out);
                out += (nd->kind == Kind::Add) ? '+' : '-';
                print_child(nd->b, 2, out);
                break;
            case Kind::Mul:
            case Kind::Div:
                print_child(nd->a, 2, out);
                out += (nd->kind == Kind::Mul) ? '*' : '/';
                print_child(nd->b, 3, out);
                break;
            case Kind::Pow:
                print_child(nd->a, 5, out);
                out += '^';
                out += std::to_string(nd->exponent);
                break;
            case Kind::Fun:
                switch (nd->fn) {
                    case Fn::Sin: out += "sin"; break;
                    case Fn::Cos: out += "cos"; break;
                    case Fn::Exp: out += "exp"; break;
                    case Fn::Log: out += "log"; break;
                    case Fn::Sqrt: out += "sqrt"; break;
                }
                out += '(';
                print_node(nd->a, 0, out);
                out += ')';
                break;
        }
    }

    // ---- recursive-descent parser ----
    struct Parser {
        const std::string& s;
        std::size_t pos = 0;

        explicit Parser(const std::string& text) : s(text) {}

        [[noreturn]] void fail(std::size_t at, const std::string& msg) {
            throw ParseError(at + 1, msg);  // 1-based byte offset
        }

        void skip_ws() {
            while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' ||
                                      s[pos] == '\r'))
                ++pos;
        }

        bool peek_is(char c) {
            skip_ws();
            return pos < s.size() && s[pos] == c;
        }

        bool accept(char c) {
            if (peek_is(c)) {
                ++pos;
                return true;
            }
            return false;
        }

        void expect(char c, const char* what) {
            skip_ws();
            if (pos >= s.size() || s[pos] != c) fail(pos, std::string("expected '") + c + "' " + what);
            ++pos;
        }

        NodePtr parse_expr() {
            NodePtr lhs = parse_term();
            for (;;) {
                if (accept('+'))
                    lhs = make_binary(Kind::Add, lhs, parse_term());
                else if (accept('-'))
                    lhs = make_binary(Kind::Sub, lhs, parse_term());
                else
                    return lhs;
            }
        }

        NodePtr parse_term() {
            NodePtr lhs = parse_unary();
            for (;;) {
                if (accept('*'))
                    lhs = make_binary(Kind::Mul, lhs, parse_unary());
                else if (accept('/'))
                    lhs = make_binary(Kind::Div, lhs, parse_unary());
                else
                    return lhs;
            }
        }

        NodePtr parse_unary() {
            if (accept('-')) {
                auto n = std::make_shared<Node>();
                n->kind = Kind::Neg;
                n->a = parse_unary();
                return n;
            }
            return parse_power();
        }

        NodePtr parse_power() {
            NodePtr base = parse_atom();
            if (accept('^')) {
                skip_ws();
                const std::size_t at = pos;
                if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                    fail(at, "expected integer exponent after '^'");
                int e = 0;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                    e = e * 10 + (s[pos] - '0');
                    if (e > 64) fail(at, "exponent too large (limit 64)");
                    ++pos;
                }
                auto n = std::make_shared<Node>();
                n->kind = Kind::Pow;
                n->a = base;
                n->exponent = e;
                return n;
            }
            return base;
        }

        NodePtr parse_atom() {
            skip_ws();
            if (pos >= s.size()) fail(pos, "unexpected end of input");
            const char c = s[pos];
            if (c == '(') {
                ++pos;
                NodePtr inner = parse_expr();
                expect(')', "to close '('");
                return inner;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
            if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
            fail(pos, std::string("unexpected character '") + c + "'");
        }

        NodePtr parse_number() {
            const std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos < s.size() && s[pos] == '.') {
                ++pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            }
            if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
                std::size_t mark = pos;
                ++pos;
                if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
                if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                } else {
                    pos = mark;  // 'e' belonged to something else; not part of the number
                }
            }
            double v = 0.0;
            auto res = std::from_chars(s.data() + start, s.data() + pos, v);
            if (res.ec != std::errc() || res.ptr != s.data() + pos)
                fail(start, "malformed number literal");
            return constant_node(v);
        }

        NodePtr parse_ident() {
            const std::size_t start = pos;
            while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
            const std::string id = s.substr(start, pos - start);
            if (id == "absq") {
                auto n = std::make_shared<Node>();
                n->kind = Kind::AbsQ;
                return n;
            }
            Fn fn;
            bool is_fn = true;
            if (id == "sin") fn = Fn::Sin;
            else if (id == "cos") fn = Fn::Cos;
            else if (id == "exp") fn = Fn::Exp;
            else if (id == "log") fn = Fn::Log;
            else if (id == "sqrt") fn = Fn::Sqrt;
            else is_fn = false;
            if (is_fn) {
                expect('(', ("after function name '" + id + "'").c_str());
                NodePtr arg = parse_expr();
                expect(')', ("to close '" + id + "('").c_str());
                auto n = std::make_shared<Node>();
                n->kind = Kind::Fun;
                n->fn = fn;
                n->a = arg;
                return n;
            }
            if ((id[0] == 'x' || id[0] == 'y') && id.size() > 1) {
                bool digits = true;
                for (std::size_t k = 1; k < id.size(); ++k)
                    if (!std::isdigit(static_cast<unsigned char>(id[k]))) digits = false;
                if (digits) {
                    const int idx = std::atoi(id.c_str() + 1);
                    if (idx < 1) fail(start, "coordinate index must be at least 1");
                    auto n = std::make_shared<Node>();
                    n->kind = Kind::Coord;
                    n->axis = (id[0] == 'x') ? Axis::X : Axis::Y;
                    n->index = idx;
                    return n;
                }
            }
            fail(start, "unknown identifier '" + id + "'");
        }

        static NodePtr make_binary(Kind k, NodePtr a, NodePtr b) {
            auto n = std::make_shared<Node>();
            n->kind = k;
            n->a = std::move(a);
            n->b = std::move(b);
            return n;
        }
    };
};

inline FieldExpr FieldExpr::parse(const std::string& text) {
    Parser p(text);
    NodePtr root = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw ParseError(p.pos + 1,
                         std::string("unexpected trailing input starting at '") + text[p.pos] + "'");
    return FieldExpr(root);
}

}  // namespace hermgeo
