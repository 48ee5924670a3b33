#pragma once

#include <cctype>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace latticewave {

// Minimal arithmetic expression compiler for profile pieces given in config
// files. Grammar: + - * / ^, unary minus, parentheses, the variable x, the
// constants pi and e, and one-argument functions
// sin cos tan exp log sqrt tanh sinh cosh abs.
class Expression {
 public:
  static Expression parse(const std::string& text) {
    Parser p(text);
    Expression e;
    e.root_ = p.parse_expr();
    p.skip_ws();
    if (!p.done())
      throw std::invalid_argument("expression: trailing input at '" +
                                  text.substr(p.pos()) + "'");
    return e;
  }

  double operator()(double x) const { return root_(x); }

 private:
  using Node = std::function<double(double)>;
  Node root_;

  class Parser {
   public:
    explicit Parser(const std::string& s) : s_(s) {}

    Node parse_expr() {  // addition level
      Node lhs = parse_term();
      for (;;) {
        skip_ws();
        if (consume('+')) {
          Node rhs = parse_term();
          lhs = [lhs, rhs](double x) { return lhs(x) + rhs(x); };
        } else if (consume('-')) {
          Node rhs = parse_term();
          lhs = [lhs, rhs](double x) { return lhs(x) - rhs(x); };
        } else {
          return lhs;
        }
      }
    }

    void skip_ws() {
      while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
        ++i_;
    }
    bool done() const { return i_ >= s_.size(); }
    std::size_t pos() const { return i_; }

   private:
    Node parse_term() {  // multiplication level
      Node lhs = parse_power();
      for (;;) {
        skip_ws();
        if (consume('*')) {
          Node rhs = parse_power();
          lhs = [lhs, rhs](double x) { return lhs(x) * rhs(x); };
        } else if (consume('/')) {
          Node rhs = parse_power();
          lhs = [lhs, rhs](double x) { return lhs(x) / rhs(x); };
        } else {
          return lhs;
        }
      }
    }

    Node parse_power() {  // right-associative
      Node base = parse_unary();
      skip_ws();
      if (consume('^')) {
        Node exp = parse_power();
        return [base, exp](double x) { return std::pow(base(x), exp(x)); };
      }
      return base;
    }

    Node parse_unary() {
      skip_ws();
      if (consume('-')) {
        Node inner = parse_unary();
        return [inner](double x) { return -inner(x); };
      }
      consume('+');
      return parse_atom();
    }

    Node parse_atom() {
      skip_ws();
      if (consume('(')) {
        Node inner = parse_expr();
        expect(')');
        return inner;
      }
      if (i_ < s_.size() &&
          (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.'))
        return parse_number();
      if (i_ < s_.size() &&
          std::isalpha(static_cast<unsigned char>(s_[i_]))) {
        std::string name = parse_ident();
        if (name == "x") return [](double x) { return x; };
        if (name == "pi") return [](double) { return M_PI; };
        if (name == "e") return [](double) { return M_E; };
        skip_ws();
        expect('(');
        Node arg = parse_expr();
        expect(')');
        return apply_function(name, arg);
      }
      throw std::invalid_argument("expression: unexpected input at '" +
                                  s_.substr(i_) + "'");
    }

    static Node apply_function(const std::string& name, Node arg) {
      static const struct {
        const char* name;
        double (*fn)(double);
      } table[] = {{"sin", std::sin},   {"cos", std::cos},
                   {"tan", std::tan},   {"exp", std::exp},
                   {"log", std::log},   {"sqrt", std::sqrt},
                   {"tanh", std::tanh}, {"sinh", std::sinh},
                   {"cosh", std::cosh}, {"abs", std::fabs}};
      for (const auto& entry : table)
        if (name == entry.name) {
          auto fn = entry.fn;
          return [fn, arg](double x) { return fn(arg(x)); };
        }
      throw std::invalid_argument("expression: unknown function '" + name +
                                  "'");
    }

    Node parse_number() {
      std::size_t used = 0;
      const double v = std::stod(s_.substr(i_), &used);
      i_ += used;
      return [v](double) { return v; };
    }

    std::string parse_ident() {
      std::size_t j = i_;
      while (j < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      std::string out = s_.substr(i_, j - i_);
      i_ = j;
      return out;
    }

    bool consume(char c) {
      skip_ws();
      if (i_ < s_.size() && s_[i_] == c) {
        ++i_;
        return true;
      }
      return false;
    }

    void expect(char c) {
      if (!consume(c))
        throw std::invalid_argument(std::string("expression: expected '") + c +
                                    "'");
    }

    const std::string& s_;
    std::size_t i_ = 0;
  };
};

}  // namespace latticewave
