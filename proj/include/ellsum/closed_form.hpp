#ifndef ELLSUM_CLOSED_FORM_HPP
#define ELLSUM_CLOSED_FORM_HPP

// Closed-form expression trees for registry right-hand sides: rational
// literals, surds, pi, Gamma at fixed rationals or at s+shift, Dirichlet
// L-values at affine arguments, pFq at unit argument, log constants, the
// four arithmetic operations, rational powers, and regularized pole-zero
// limits.  Parsed from and serialized to JSON.

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ellsum/lseries.hpp"
#include "ellsum/rational.hpp"
#include "ellsum/specfun.hpp"

namespace ellsum {

using Json = nlohmann::json;

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AffineS {
  Rat c0 = Rat(0), c1 = Rat(0);
  double at(double s) const { return to_double(c0) + to_double(c1) * s; }
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    Rational,   // value
    Pi,
    SqrtRat,    // sqrt(value), value a positive rational
    Log2,
    Log1pSqrt2, // log(1 + sqrt 2)
    Catalan,
    GammaRat,   // Gamma(value)
    GammaS,     // Gamma(s + value)
    LSeries,    // L(char_id, c0 + c1 s)
    PFq,        // pfq(a; b; 1)
    Add,
    Mul,
    Neg,
    Sqrt,       // sqrt(arg)
    Pow,        // args[0] ^ (c0 + c1 s)
    RegLim,     // lim of prod reg_factors at the evaluation point s
  };
  Kind kind;
  Rat value;
  AffineS arg;                         // LSeries argument or Pow exponent
  CharId char_id = CharId::Zeta;
  std::vector<Rat> pfq_a, pfq_b;
  std::vector<ExprPtr> args;
  std::vector<RegFactor> reg_factors;  // for RegLim
  std::string cite;
};

namespace exprs {

inline ExprPtr rational(const Rat& v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Rational;
  e->value = v;
  return e;
}
inline ExprPtr pi() {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Pi;
  return e;
}
inline ExprPtr mul(std::vector<ExprPtr> a) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Mul;
  e->args = std::move(a);
  return e;
}
inline ExprPtr add(std::vector<ExprPtr> a) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Add;
  e->args = std::move(a);
  return e;
}
inline ExprPtr pow(ExprPtr base, const Rat& c0, const Rat& c1 = Rat(0)) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Pow;
  e->args = {std::move(base)};
  e->arg = {c0, c1};
  return e;
}
inline ExprPtr gamma_rat(const Rat& x) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::GammaRat;
  e->value = x;
  return e;
}
inline ExprPtr lseries_at(CharId id, const Rat& c0, const Rat& c1 = Rat(0)) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::LSeries;
  e->char_id = id;
  e->arg = {c0, c1};
  return e;
}

}  // namespace exprs

inline double evaluate_closed_form(const ExprPtr& e, double s) {
  switch (e->kind) {
    case Expr::Kind::Rational:
      return to_double(e->value);
    case Expr::Kind::Pi:
      return kPi;
    case Expr::Kind::SqrtRat:
      return std::sqrt(to_double(e->value));
    case Expr::Kind::Log2:
      return std::log(2.0);
    case Expr::Kind::Log1pSqrt2:
      return std::log(1.0 + std::sqrt(2.0));
    case Expr::Kind::Catalan:
      return catalan();
    case Expr::Kind::GammaRat:
      return gamma_fn(to_double(e->value));
    case Expr::Kind::GammaS:
      return gamma_fn(s + to_double(e->value));
    case Expr::Kind::LSeries:
      return lseries(e->char_id, e->arg.at(s));
    case Expr::Kind::PFq: {
      std::vector<double> a, b;
      for (const auto& x : e->pfq_a) a.push_back(to_double(x));
      for (const auto& x : e->pfq_b) b.push_back(to_double(x));
      return hypergeometric_pfq(a, b, 1.0).value;
    }
    case Expr::Kind::Add: {
      double acc = 0;
      for (const auto& a : e->args) acc += evaluate_closed_form(a, s);
      return acc;
    }
    case Expr::Kind::Mul: {
      double acc = 1;
      for (const auto& a : e->args) acc *= evaluate_closed_form(a, s);
      return acc;
    }
    case Expr::Kind::Neg:
      return -evaluate_closed_form(e->args.at(0), s);
    case Expr::Kind::Sqrt:
      return std::sqrt(evaluate_closed_form(e->args.at(0), s));
    case Expr::Kind::Pow:
      return std::pow(evaluate_closed_form(e->args.at(0), s), e->arg.at(s));
    case Expr::Kind::RegLim:
      return regularized_product(e->reg_factors, s);
  }
  throw std::logic_error("evaluate_closed_form: bad kind");
}

// ---------------------------------------------------------------------------
// JSON parsing / serialization
// ---------------------------------------------------------------------------

namespace detail {

inline Rat json_rat(const Json& j, const char* what) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  throw SchemaError(std::string("expected rational for ") + what);
}

inline AffineS json_affine(const Json& j, const char* what) {
  AffineS a;
  if (j.is_object()) {
    if (j.contains("c0")) a.c0 = json_rat(j.at("c0"), what);
    if (j.contains("c1")) a.c1 = json_rat(j.at("c1"), what);
    return a;
  }
  a.c0 = json_rat(j, what);
  return a;
}

}  // namespace detail

inline ExprPtr parse_expr(const Json& j) {
  auto e = std::make_shared<Expr>();
  if (j.contains("cite")) e->cite = j.at("cite").get<std::string>();
  if (j.contains("rat")) {
    e->kind = Expr::Kind::Rational;
    e->value = detail::json_rat(j.at("rat"), "rat");
    return e;
  }
  if (j.contains("sqrt_rat")) {
    e->kind = Expr::Kind::SqrtRat;
    e->value = detail::json_rat(j.at("sqrt_rat"), "sqrt_rat");
    return e;
  }
  if (j.contains("gamma")) {
    e->kind = Expr::Kind::GammaRat;
    e->value = detail::json_rat(j.at("gamma"), "gamma");
    return e;
  }
  if (j.contains("const")) {
    std::string c = j.at("const").get<std::string>();
    if (c == "pi")
      e->kind = Expr::Kind::Pi;
    else if (c == "log2")
      e->kind = Expr::Kind::Log2;
    else if (c == "log1p_sqrt2")
      e->kind = Expr::Kind::Log1pSqrt2;
    else if (c == "catalan")
      e->kind = Expr::Kind::Catalan;
    else
      throw SchemaError("unknown named constant '" + c + "'");
    return e;
  }
  if (!j.contains("op")) throw SchemaError("expression node without op");
  std::string op = j.at("op").get<std::string>();
  auto parse_args = [&](size_t min_n) {
    if (!j.contains("args") || j.at("args").size() < min_n)
      throw SchemaError("op '" + op + "' needs args");
    for (const auto& a : j.at("args")) e->args.push_back(parse_expr(a));
  };
  if (op == "add") {
    e->kind = Expr::Kind::Add;
    parse_args(1);
  } else if (op == "mul") {
    e->kind = Expr::Kind::Mul;
    parse_args(1);
  } else if (op == "neg") {
    e->kind = Expr::Kind::Neg;
    parse_args(1);
  } else if (op == "sqrt") {
    e->kind = Expr::Kind::Sqrt;
    parse_args(1);
  } else if (op == "pow") {
    e->kind = Expr::Kind::Pow;
    parse_args(1);
    e->arg = detail::json_affine(j.at("exp"), "pow exponent");
  } else if (op == "gamma_s") {
    e->kind = Expr::Kind::GammaS;
    e->value = j.contains("shift") ? detail::json_rat(j.at("shift"), "shift")
                                   : Rat(0);
  } else if (op == "L") {
    e->kind = Expr::Kind::LSeries;
    e->char_id = char_from_label(j.at("id").get<std::string>());
    e->arg = detail::json_affine(j.at("arg"), "L argument");
  } else if (op == "pfq") {
    e->kind = Expr::Kind::PFq;
    for (const auto& a : j.at("a")) e->pfq_a.push_back(detail::json_rat(a, "pfq a"));
    for (const auto& b : j.at("b")) e->pfq_b.push_back(detail::json_rat(b, "pfq b"));
  } else if (op == "reglim") {
    e->kind = Expr::Kind::RegLim;
    for (const auto& f : j.at("factors")) {
      std::string kind = f.at("kind").get<std::string>();
      double shift = to_double(detail::json_rat(f.at("shift"), "reglim shift"));
      if (kind == "gamma")
        e->reg_factors.push_back(gamma_factor(shift));
      else if (kind == "char")
        e->reg_factors.push_back(
            char_factor(char_from_label(f.at("id").get<std::string>()), shift));
      else
        throw SchemaError("reglim factor kind '" + kind + "'");
    }
  } else {
    throw SchemaError("unknown op '" + op + "'");
  }
  return e;
}

}  // namespace ellsum

#endif  // ELLSUM_CLOSED_FORM_HPP
