#pragma once

#include <memory>
#include <string>

namespace lrmp::cli {

// Arithmetic in one integer variable, used for `product:<phi>,<psi>`
// builtins. Grammar: + - * / ^, unary minus, parentheses, numbers, the
// variable, and sqrt/exp/log/abs calls.
class Expression {
 public:
  Expression(const std::string& text, char variable);
  double operator()(double value) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace lrmp::cli
