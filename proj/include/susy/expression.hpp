#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "susy/superpotential.hpp"

namespace susy::expr {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at column " + std::to_string(position + 1)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct Node;

/// Parsed arithmetic expression in the variable x. Grammar in docs/expression_grammar.md.
class Expression {
 public:
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  double operator()(double x) const;
  /// Symbolic d/dx.
  Expression derivative() const;
  bool depends_on_x() const;
  std::string str() const;

 private:
  std::shared_ptr<const Node> root_;
};

/// Parameter names resolve to constants from `params`; `pi` and `e` are built in.
Expression parse(std::string_view text, const Params& params = {});

/// Value of an expression that does not contain x.
double evaluate_constant(std::string_view text, const Params& params = {});

}  // namespace susy::expr
