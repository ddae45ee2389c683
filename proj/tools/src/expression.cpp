#include "lrmp_cli/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "lrmp/errors.hpp"

namespace lrmp::cli {

struct Expression::Node {
  enum class Kind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call } kind;
  double number = 0.0;
  std::string function;
  std::vector<std::shared_ptr<const Node>> args;

  double eval(double v) const {
    switch (kind) {
      case Kind::Number: return number;
      case Kind::Variable: return v;
      case Kind::Negate: return -args[0]->eval(v);
      case Kind::Add: return args[0]->eval(v) + args[1]->eval(v);
      case Kind::Sub: return args[0]->eval(v) - args[1]->eval(v);
      case Kind::Mul: return args[0]->eval(v) * args[1]->eval(v);
      case Kind::Div: return args[0]->eval(v) / args[1]->eval(v);
      case Kind::Pow: return std::pow(args[0]->eval(v), args[1]->eval(v));
      case Kind::Call: {
        const double a = args[0]->eval(v);
        if (function == "sqrt") return std::sqrt(a);
        if (function == "exp") return std::exp(a);
        if (function == "log") return std::log(a);
        return std::abs(a);
      }
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make(Kind kind, std::vector<NodePtr> args = {}) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  Parser(const std::string& s, char var) : s_(s), var_(var) {}

  NodePtr parse() {
    NodePtr e = sum();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    throw InvalidInput("bad expression '" + s_ + "': " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr sum() {
    NodePtr left = product();
    while (true) {
      if (eat('+')) left = make(Kind::Add, {left, product()});
      else if (eat('-')) left = make(Kind::Sub, {left, product()});
      else return left;
    }
  }

  NodePtr product() {
    NodePtr left = unary();
    while (true) {
      if (eat('*')) left = make(Kind::Mul, {left, unary()});
      else if (eat('/')) left = make(Kind::Div, {left, unary()});
      else return left;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Kind::Negate, {unary()});
    if (eat('+')) return unary();
    return power();
  }

  // Right associative; binds tighter than unary minus on its left.
  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return make(Kind::Pow, {base, unary()});
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end");
    if (eat('(')) {
      NodePtr e = sum();
      if (!eat(')')) error("missing ')'");
      return e;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) error("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      auto n = std::make_shared<Expression::Node>();
      n->kind = Kind::Number;
      n->number = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
        name += s_[pos_++];
      }
      if (name.size() == 1 && name[0] == var_) return make(Kind::Variable);
      if (name == "sqrt" || name == "exp" || name == "log" || name == "abs") {
        if (!eat('(')) error("expected '(' after " + name);
        NodePtr arg = sum();
        if (!eat(')')) error("missing ')'");
        auto n = std::make_shared<Expression::Node>();
        n->kind = Kind::Call;
        n->function = name;
        n->args = {arg};
        return n;
      }
      error("unknown name '" + name + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  char var_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(const std::string& text, char variable)
    : text_(text), root_(Parser(text_, variable).parse()) {}

double Expression::operator()(double value) const { return root_->eval(value); }

}  // namespace lrmp::cli
