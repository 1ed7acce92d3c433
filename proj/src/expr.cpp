#include "geoflow/expr.hpp"

#include "geoflow/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace geoflow {

struct Expression::Node {
    enum class Op { Const, X, Neg, Add, Sub, Mul, Div, Pow, Call } op;
    double value = 0.0;
    double (*fn)(double) = nullptr;
    std::shared_ptr<const Node> lhs, rhs;

    double eval(double x) const {
        switch (op) {
        case Op::Const: return value;
        case Op::X: return x;
        case Op::Neg: return -lhs->eval(x);
        case Op::Add: return lhs->eval(x) + rhs->eval(x);
        case Op::Sub: return lhs->eval(x) - rhs->eval(x);
        case Op::Mul: return lhs->eval(x) * rhs->eval(x);
        case Op::Div: return lhs->eval(x) / rhs->eval(x);
        case Op::Pow: return std::pow(lhs->eval(x), rhs->eval(x));
        case Op::Call: return fn(lhs->eval(x));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

NodePtr constant(double v) {
    auto n = std::make_shared<Expression::Node>();
    n->op = Op::Const;
    n->value = v;
    return n;
}

double sech(double v) { return 1.0 / std::cosh(v); }
double f_sin(double v) { return std::sin(v); }
double f_cos(double v) { return std::cos(v); }
double f_tan(double v) { return std::tan(v); }
double f_exp(double v) { return std::exp(v); }
double f_log(double v) { return std::log(v); }
double f_sqrt(double v) { return std::sqrt(v); }
double f_sinh(double v) { return std::sinh(v); }
double f_cosh(double v) { return std::cosh(v); }
double f_tanh(double v) { return std::tanh(v); }
double f_abs(double v) { return std::abs(v); }

struct Function {
    std::string_view name;
    double (*fn)(double);
};

constexpr Function kFunctions[] = {{"sin", f_sin},   {"cos", f_cos},   {"tan", f_tan},   {"exp", f_exp},
                                   {"log", f_log},   {"sqrt", f_sqrt}, {"sinh", f_sinh}, {"cosh", f_cosh},
                                   {"tanh", f_tanh}, {"sech", sech},   {"abs", f_abs}};

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    NodePtr parse() {
        skip();
        if (i_ == s_.size()) fail("empty expression");
        NodePtr n = sum();
        skip();
        if (i_ != s_.size()) fail(std::string("unexpected '") + s_[i_] + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::Parse, "column " + std::to_string(i_ + 1) + ": " + msg);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool accept(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    NodePtr sum() {
        NodePtr acc = product();
        for (;;) {
            if (accept('+')) acc = make(Op::Add, acc, product());
            else if (accept('-')) acc = make(Op::Sub, acc, product());
            else return acc;
        }
    }
    NodePtr product() {
        NodePtr acc = unary();
        for (;;) {
            if (accept('*')) acc = make(Op::Mul, acc, unary());
            else if (accept('/')) acc = make(Op::Div, acc, unary());
            else return acc;
        }
    }
    NodePtr unary() {
        if (accept('-')) return make(Op::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }
    NodePtr power() {
        NodePtr base = atom();
        if (accept('^')) return make(Op::Pow, base, unary());
        return base;
    }
    NodePtr atom() {
        skip();
        if (i_ == s_.size()) fail("unexpected end of expression");
        const char c = s_[i_];
        if (c == '(') {
            ++i_;
            NodePtr inner = sum();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = 0.0;
            const auto [end, ec] = std::from_chars(s_.data() + i_, s_.data() + s_.size(), v);
            if (ec != std::errc()) fail("malformed number");
            i_ = static_cast<std::size_t>(end - s_.data());
            return constant(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            const std::string_view name = s_.substr(start, i_ - start);
            if (name == "x") return make(Op::X);
            if (name == "pi") return constant(std::numbers::pi);
            if (name == "e") return constant(std::numbers::e);
            for (const auto& f : kFunctions) {
                if (f.name != name) continue;
                if (!accept('(')) fail("expected '(' after " + std::string(name));
                auto n = std::make_shared<Expression::Node>();
                n->op = Op::Call;
                n->fn = f.fn;
                n->lhs = sum();
                if (!accept(')')) fail("expected ')'");
                return n;
            }
            i_ = start;
            fail("unknown name '" + std::string(name) + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) { return Expression(std::string(text), Parser(text).parse()); }

double Expression::operator()(double x) const { return root_->eval(x); }

GridField Expression::sample(const PeriodicGrid& grid) const {
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = (*this)(grid.point(j));
        if (!std::isfinite(v[j]))
            throw Error(ErrorCode::InvalidArgument, "initial condition '" + text_ + "' is not finite at x = " +
                                                        std::to_string(grid.point(j)));
    }
    return GridField(grid, std::move(v));
}

}  // namespace geoflow
