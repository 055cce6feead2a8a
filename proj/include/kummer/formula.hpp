#pragma once
// Arithmetic formula grammar used by the catalog files.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' uint)?
//   base   := atom | '(' expr ')' | '-' base
//   atom   := integer | identifier

#include <cctype>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/mpoly.hpp"
#include "kummer/ratfunc.hpp"

namespace kummer {

class FormulaError : public std::runtime_error {
 public:
  FormulaError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  size_t pos() const { return pos_; }

 private:
  size_t pos_;
};

struct Formula {
  enum class Op { Num, Var, Add, Sub, Mul, Div, Pow, Neg };
  Op op = Op::Num;
  Int num;           // Num
  std::string name;  // Var
  unsigned exp = 0;  // Pow
  std::shared_ptr<const Formula> lhs, rhs;

  static std::shared_ptr<const Formula> make_num(const Int& v) {
    auto f = std::make_shared<Formula>();
    f->op = Op::Num;
    f->num = v;
    return f;
  }
  static std::shared_ptr<const Formula> make_var(const std::string& n) {
    auto f = std::make_shared<Formula>();
    f->op = Op::Var;
    f->name = n;
    return f;
  }
  static std::shared_ptr<const Formula> make_bin(Op op, std::shared_ptr<const Formula> a, std::shared_ptr<const Formula> b) {
    auto f = std::make_shared<Formula>();
    f->op = op;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
  }
};
using FormulaPtr = std::shared_ptr<const Formula>;

/// Variables accepted in catalog files.
inline const std::vector<std::string>& catalog_variables() {
  static const std::vector<std::string> v{"a", "b", "c", "t", "x", "y", "I2", "I4", "I5", "I6", "I10", "alpha", "beta", "gamma", "mu"};
  return v;
}

class FormulaParser {
 public:
  /// allowed empty = any identifier accepted.
  FormulaParser(std::string text, std::vector<std::string> allowed = catalog_variables())
      : s_(std::move(text)), allowed_(std::move(allowed)) {}

  FormulaPtr parse() {
    pos_ = 0;
    auto e = expr();
    skip();
    if (pos_ != s_.size()) throw FormulaError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return e;
  }

 private:
  std::string s_;
  std::vector<std::string> allowed_;
  size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  FormulaPtr expr() {
    auto a = term();
    while (true) {
      if (eat('+')) a = Formula::make_bin(Formula::Op::Add, a, term());
      else if (eat('-')) a = Formula::make_bin(Formula::Op::Sub, a, term());
      else return a;
    }
  }
  FormulaPtr term() {
    auto a = factor();
    while (true) {
      if (eat('*')) a = Formula::make_bin(Formula::Op::Mul, a, factor());
      else if (eat('/')) a = Formula::make_bin(Formula::Op::Div, a, factor());
      else return a;
    }
  }
  FormulaPtr factor() {
    auto b = base();
    if (eat('^')) {
      skip();
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (st == pos_) throw FormulaError("exponent must be a nonnegative integer", st);
      auto f = std::make_shared<Formula>();
      f->op = Formula::Op::Pow;
      f->exp = static_cast<unsigned>(std::stoul(s_.substr(st, pos_ - st)));
      f->lhs = b;
      return f;
    }
    return b;
  }
  FormulaPtr base() {
    skip();
    if (pos_ >= s_.size()) throw FormulaError("unexpected end of input", pos_);
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      auto e = expr();
      if (!eat(')')) throw FormulaError("expected ')'", pos_);
      return e;
    }
    if (ch == '-') {
      ++pos_;
      auto f = std::make_shared<Formula>();
      f->op = Formula::Op::Neg;
      f->lhs = base();
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Formula::make_num(Int(s_.substr(st, pos_ - st)));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      size_t st = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(st, pos_ - st);
      if (!allowed_.empty() && std::find(allowed_.begin(), allowed_.end(), name) == allowed_.end())
        throw FormulaError("unknown variable '" + name + "'", st);
      return Formula::make_var(name);
    }
    throw FormulaError("unexpected '" + std::string(1, ch) + "'", pos_);
  }
};

inline FormulaPtr parse_formula(const std::string& text, std::vector<std::string> allowed = catalog_variables()) {
  return FormulaParser(text, std::move(allowed)).parse();
}

namespace detail {
inline int precedence(Formula::Op op) {
  switch (op) {
    case Formula::Op::Add:
    case Formula::Op::Sub: return 1;
    case Formula::Op::Mul:
    case Formula::Op::Div: return 2;
    case Formula::Op::Neg: return 3;
    case Formula::Op::Pow: return 4;
    default: return 5;
  }
}
}  // namespace detail

/// Prints with the minimal parentheses needed to reparse the same tree.
inline std::string print_formula(const FormulaPtr& f) {
  using Op = Formula::Op;
  auto wrap = [](const FormulaPtr& g, bool paren) { return paren ? "(" + print_formula(g) + ")" : print_formula(g); };
  switch (f->op) {
    case Op::Num: return f->num.get_str();
    case Op::Var: return f->name;
    case Op::Neg: return "-" + wrap(f->lhs, detail::precedence(f->lhs->op) < 5);
    case Op::Pow: return wrap(f->lhs, detail::precedence(f->lhs->op) < 5) + "^" + std::to_string(f->exp);
    default: {
      int p = detail::precedence(f->op);
      std::string sym = f->op == Op::Add ? " + " : f->op == Op::Sub ? " - " : f->op == Op::Mul ? "*" : "/";
      bool lp = detail::precedence(f->lhs->op) < p;
      bool rp = detail::precedence(f->rhs->op) <= p && f->rhs->op != Op::Num && f->rhs->op != Op::Var;
      if (f->rhs->op == Op::Neg) rp = true;
      if ((f->op == Op::Add || f->op == Op::Mul) && detail::precedence(f->rhs->op) > p) rp = false;
      if ((f->op == Op::Sub || f->op == Op::Div) && detail::precedence(f->rhs->op) > p) rp = false;
      return wrap(f->lhs, lp) + sym + wrap(f->rhs, rp);
    }
  }
}

inline bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->op != b->op) return false;
  switch (a->op) {
    case Formula::Op::Num: return a->num == b->num;
    case Formula::Op::Var: return a->name == b->name;
    case Formula::Op::Neg: return formula_equal(a->lhs, b->lhs);
    case Formula::Op::Pow: return a->exp == b->exp && formula_equal(a->lhs, b->lhs);
    default: return formula_equal(a->lhs, b->lhs) && formula_equal(a->rhs, b->rhs);
  }
}

/// Evaluates at a full rational assignment.
inline Rat eval_formula(const FormulaPtr& f, const std::map<std::string, Rat>& env) {
  using Op = Formula::Op;
  switch (f->op) {
    case Op::Num: return Rat(f->num);
    case Op::Var: {
      auto it = env.find(f->name);
      if (it == env.end()) throw std::invalid_argument("unbound variable '" + f->name + "'");
      return it->second;
    }
    case Op::Neg: return -eval_formula(f->lhs, env);
    case Op::Pow: return pow(eval_formula(f->lhs, env), static_cast<long>(f->exp));
    case Op::Add: return eval_formula(f->lhs, env) + eval_formula(f->rhs, env);
    case Op::Sub: return eval_formula(f->lhs, env) - eval_formula(f->rhs, env);
    case Op::Mul: return eval_formula(f->lhs, env) * eval_formula(f->rhs, env);
    case Op::Div: {
      Rat d = eval_formula(f->rhs, env);
      if (d == 0) throw std::domain_error("division by zero while evaluating formula");
      return eval_formula(f->lhs, env) / d;
    }
  }
  throw std::logic_error("bad formula node");
}

/// Unreduced fraction of multivariate polynomials.
struct MFrac {
  MPoly num, den;
  MFrac() = default;
  MFrac(MPoly n, MPoly d) : num(std::move(n)), den(std::move(d)) {}
  explicit MFrac(MPoly n) : num(std::move(n)) { den = MPoly(num.nvars, Rat(1)); }
  friend MFrac operator+(const MFrac& a, const MFrac& b) {
    if (a.den == b.den) return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend MFrac operator-(const MFrac& a, const MFrac& b) {
    if (a.den == b.den) return {a.num - b.num, a.den};
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend MFrac operator*(const MFrac& a, const MFrac& b) { return {a.num * b.num, a.den * b.den}; }
  friend MFrac operator/(const MFrac& a, const MFrac& b) {
    if (b.num.zero()) throw std::domain_error("division by zero polynomial");
    return {a.num * b.den, a.den * b.num};
  }
  /// Pulls constant denominators into the numerator.
  MFrac tidy() const {
    if (den.is_constant()) return MFrac(num.scaled(1 / den.constant_value()), MPoly(num.nvars, Rat(1)));
    return *this;
  }
};

/// Evaluates into a fraction of polynomials in the listed variables, with the
/// remaining variables bound to rationals.
inline MFrac eval_formula_poly(const FormulaPtr& f, const std::vector<std::string>& vars,
                               const std::map<std::string, Rat>& env) {
  using Op = Formula::Op;
  int n = static_cast<int>(vars.size());
  switch (f->op) {
    case Op::Num: return MFrac(MPoly(n, Rat(f->num)));
    case Op::Var: {
      for (int i = 0; i < n; ++i)
        if (vars[static_cast<size_t>(i)] == f->name) return MFrac(MPoly::var(n, i));
      auto it = env.find(f->name);
      if (it == env.end()) throw std::invalid_argument("unbound variable '" + f->name + "'");
      return MFrac(MPoly(n, it->second));
    }
    case Op::Neg: {
      auto a = eval_formula_poly(f->lhs, vars, env);
      return {-a.num, a.den};
    }
    case Op::Pow: {
      auto a = eval_formula_poly(f->lhs, vars, env);
      return {a.num.pow(f->exp), a.den.pow(f->exp)};
    }
    case Op::Add: return (eval_formula_poly(f->lhs, vars, env) + eval_formula_poly(f->rhs, vars, env)).tidy();
    case Op::Sub: return (eval_formula_poly(f->lhs, vars, env) - eval_formula_poly(f->rhs, vars, env)).tidy();
    case Op::Mul: return (eval_formula_poly(f->lhs, vars, env) * eval_formula_poly(f->rhs, vars, env)).tidy();
    case Op::Div: return (eval_formula_poly(f->lhs, vars, env) / eval_formula_poly(f->rhs, vars, env)).tidy();
  }
  throw std::logic_error("bad formula node");
}

/// Polynomial value; throws if a non-constant denominator survives.
inline MPoly eval_formula_mpoly(const FormulaPtr& f, const std::vector<std::string>& vars,
                                const std::map<std::string, Rat>& env) {
  MFrac r = eval_formula_poly(f, vars, env).tidy();
  if (!r.den.is_constant()) {
    throw std::domain_error("formula is not a polynomial in the given variables");
  }
  return r.num;
}

/// Rational function of one variable, every other name bound in env.
inline RatFunc eval_formula_ratfunc(const FormulaPtr& f, const std::map<std::string, Rat>& env,
                                    const std::string& var = "t") {
  MFrac r = eval_formula_poly(f, {var}, env).tidy();
  return RatFunc(r.num.to_upoly(0), r.den.to_upoly(0));
}

inline RatFunc eval_formula_ratfunc(const std::string& text, const std::map<std::string, Rat>& env,
                                    const std::string& var = "t") {
  return eval_formula_ratfunc(parse_formula(text), env, var);
}

}  // namespace kummer
