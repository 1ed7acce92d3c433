#pragma once

// Arithmetic expressions in one variable x, used for initial conditions.
//
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := atom ('^' unary)?                 right associative
//   atom    := number | x | pi | e | func '(' sum ')' | '(' sum ')'
//   func    := sin cos tan exp log sqrt sinh cosh tanh sech abs
//
// Numbers accept a decimal exponent (1e-3). Errors are Error(Parse) with
// "column C: ...".

#include "geoflow/spectral.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace geoflow {

class Expression {
public:
    static Expression parse(std::string_view text);

    double operator()(double x) const;
    const std::string& text() const noexcept { return text_; }

    GridField sample(const PeriodicGrid& grid) const;

    struct Node;

private:
    Expression(std::string text, std::shared_ptr<const Node> root) : text_(std::move(text)), root_(std::move(root)) {}

    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace geoflow
