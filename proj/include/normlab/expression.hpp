#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "normlab/errors.hpp"

namespace normlab {

/// Parsed arithmetic expression over a fixed list of variables.
///
/// Grammar: numbers, variables, + - * / ^ (right-associative), parentheses,
/// and the functions ln, log, exp, abs, sqrt, sin, cos, min, max, pow.
/// Evaluation is plain IEEE double arithmetic over the tree.
class Expression {
  public:
    Expression() = default;

    static Expression parse(std::string_view src, std::vector<std::string> variables = {"t"});

    /// Wraps this expression in abs(.) without reparsing.
    Expression abs_wrapped() const;

    double eval(double t) const;
    double eval(std::span<const double> values) const;

    const std::string& source() const { return src_; }
    const std::vector<std::string>& variables() const { return vars_; }
    bool empty() const { return nodes_.empty(); }

  private:
    enum class Op : std::uint8_t {
        Num, Var, Add, Sub, Mul, Div, Pow, Neg,
        Ln, Exp, Abs, Sqrt, Sin, Cos, Min, Max
    };

    struct Node {
        Op op;
        int a = -1;
        int b = -1;
        double num = 0.0;
        int var = 0;
    };

    double eval_node(int idx, std::span<const double> values) const;

    std::vector<Node> nodes_;
    int root_ = -1;
    std::string src_;
    std::vector<std::string> vars_;

    friend class ExpressionParser;
};

} // namespace normlab
