#include "cutproject/expression.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "cutproject/error.hpp"

namespace cutproject {

namespace mp = boost::multiprecision;

struct Expression::Node {
  enum class Kind { Number, Constant, Literal, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind;
  mpq_class number;
  std::string name;  // constant or function name
  Scalar literal;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidInput("cannot parse expression '" + std::string(s_) + "': " + msg + " at offset " +
                       std::to_string(pos_));
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
    NodePtr e = product();
    for (;;) {
      if (eat('+')) {
        e = make(Node::Kind::Add, e, product());
      } else if (eat('-')) {
        e = make(Node::Kind::Sub, e, product());
      } else {
        return e;
      }
    }
  }

  NodePtr product() {
    NodePtr e = unary();
    for (;;) {
      if (eat('*')) {
        e = make(Node::Kind::Mul, e, unary());
      } else if (eat('/')) {
        e = make(Node::Kind::Div, e, unary());
      } else {
        return e;
      }
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Node::Kind::Neg, unary());
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return make(Node::Kind::Pow, base, unary());
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = sum();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string id;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        id += s_[pos_++];
      if (id == "tau" || id == "phi" || id == "pi" || id == "e") {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Constant;
        n->name = id;
        return n;
      }
      if (id == "sqrt" || id == "cbrt" || id == "exp" || id == "log") {
        if (!eat('(')) fail("expected '(' after " + id);
        NodePtr arg = sum();
        if (!eat(')')) fail("missing ')'");
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Call;
        n->name = id;
        n->lhs = arg;
        return n;
      }
      fail("unknown identifier '" + id + "'");
    }
    fail("unexpected character");
  }

  NodePtr number() {
    std::string digits, frac, expo;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) frac += s_[pos_++];
    }
    if (pos_ < s_.size() && (s_[pos_] == 'E' || (s_[pos_] == 'e' && pos_ + 1 < s_.size() &&
                                                 (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) ||
                                                  s_[pos_ + 1] == '-' || s_[pos_ + 1] == '+')))) {
      ++pos_;
      if (s_[pos_] == '-' || s_[pos_] == '+') expo += s_[pos_++];
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) expo += s_[pos_++];
    }
    if (digits.empty() && frac.empty()) fail("malformed number");
    mpz_class num((digits + frac).empty() ? std::string("0") : digits + frac);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    mpq_class q(num, den);
    if (!expo.empty() && expo != "-" && expo != "+") {
      const long e = std::stol(expo);
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e)));
      if (e >= 0) {
        q *= p;
      } else {
        q /= p;
      }
    }
    q.canonicalize();
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Number;
    n->number = q;
    return n;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

Scalar power_exact(const Scalar& base, long long k) {
  Scalar result(1);
  Scalar b = k < 0 ? base.inverse() : base;
  unsigned long long e = static_cast<unsigned long long>(k < 0 ? -k : k);
  while (e > 0) {
    if (e & 1ULL) result *= b;
    e >>= 1U;
    if (e > 0) b *= b;
  }
  return result;
}

double eval_double(const Node& n);

Scalar eval(const Node& n, double tol) {
  switch (n.kind) {
    case Node::Kind::Number:
      return Scalar(n.number);
    case Node::Kind::Literal:
      return n.literal;
    case Node::Kind::Constant:
      if (n.name == "tau" || n.name == "phi") return (Scalar(1) + Scalar::sqrt(5)) / Scalar(2);
      return Scalar::approx(eval_double(n), tol);
    case Node::Kind::Neg:
      return -eval(*n.lhs, tol);
    case Node::Kind::Add:
      return eval(*n.lhs, tol) + eval(*n.rhs, tol);
    case Node::Kind::Sub:
      return eval(*n.lhs, tol) - eval(*n.rhs, tol);
    case Node::Kind::Mul:
      return eval(*n.lhs, tol) * eval(*n.rhs, tol);
    case Node::Kind::Div: {
      Scalar d = eval(*n.rhs, tol);
      if (d.is_exact() && d.is_zero()) throw InvalidInput("division by zero in expression");
      return eval(*n.lhs, tol) / d;
    }
    case Node::Kind::Pow: {
      const Scalar b = eval(*n.lhs, tol);
      const Scalar e = eval(*n.rhs, tol);
      if (b.is_exact() && e.is_exact() && e.exact().is_rational()) {
        const mpq_class q = e.exact().rational_part();
        if (q.get_den() == 1 && q.get_num().fits_slong_p() && abs(q.get_num()) <= 4096)
          return power_exact(b, q.get_num().get_si());
        if (q.get_den() == 2 && q.get_num().fits_slong_p() && b.exact().is_rational() && b.sign() >= 0) {
          const Scalar root(Surd::sqrt(b.exact().rational_part()));
          return power_exact(root, q.get_num().get_si());
        }
      }
      return Scalar::approx(std::pow(b.to_double(), e.to_double()), tol);
    }
    case Node::Kind::Call: {
      const Scalar a = eval(*n.lhs, tol);
      if (n.name == "sqrt") {
        if (a.sign() < 0) throw InvalidInput("square root of a negative number");
        if (a.is_exact() && a.exact().is_rational()) return Scalar(Surd::sqrt(a.exact().rational_part()));
        return Scalar::approx(std::sqrt(a.to_double()), tol);
      }
      if (n.name == "cbrt") {
        if (a.is_exact() && a.exact().is_rational()) {
          const mpq_class q = a.exact().rational_part();
          mpz_class rn, rd;
          const bool num_cube = mpz_root(rn.get_mpz_t(), q.get_num().get_mpz_t(), 3) != 0;
          const bool den_cube = mpz_root(rd.get_mpz_t(), q.get_den().get_mpz_t(), 3) != 0;
          if (num_cube && den_cube) return Scalar(mpq_class(rn, rd));
        }
        return Scalar::approx(std::cbrt(a.to_double()), tol);
      }
      if (n.name == "exp") {
        if (a.is_exact() && a.is_zero()) return Scalar(1);
        return Scalar::approx(std::exp(a.to_double()), tol);
      }
      if (a.is_exact() && a == Scalar(1)) return Scalar(0);
      if (a.sign() <= 0) throw InvalidInput("logarithm of a non-positive number");
      return Scalar::approx(std::log(a.to_double()), tol);
    }
  }
  throw InvalidInput("bad expression node");
}

double eval_double(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Number:
      return n.number.get_d();
    case Node::Kind::Literal:
      return n.literal.to_double();
    case Node::Kind::Constant:
      if (n.name == "pi") return M_PI;
      if (n.name == "e") return M_E;
      return (1.0 + std::sqrt(5.0)) / 2.0;
    case Node::Kind::Neg:
      return -eval_double(*n.lhs);
    case Node::Kind::Add:
      return eval_double(*n.lhs) + eval_double(*n.rhs);
    case Node::Kind::Sub:
      return eval_double(*n.lhs) - eval_double(*n.rhs);
    case Node::Kind::Mul:
      return eval_double(*n.lhs) * eval_double(*n.rhs);
    case Node::Kind::Div:
      return eval_double(*n.lhs) / eval_double(*n.rhs);
    case Node::Kind::Pow:
      return std::pow(eval_double(*n.lhs), eval_double(*n.rhs));
    case Node::Kind::Call: {
      const double a = eval_double(*n.lhs);
      if (n.name == "sqrt") return std::sqrt(a);
      if (n.name == "cbrt") return std::cbrt(a);
      if (n.name == "exp") return std::exp(a);
      return std::log(a);
    }
  }
  return 0.0;
}

BigFloat eval_mp(const Node& n, unsigned bits) {
  switch (n.kind) {
    case Node::Kind::Number:
      return BigFloat(n.number.get_num().get_str()) / BigFloat(n.number.get_den().get_str());
    case Node::Kind::Literal:
      if (n.literal.is_exact()) return to_bigfloat(n.literal.exact(), bits);
      return BigFloat(n.literal.to_double());
    case Node::Kind::Constant:
      if (n.name == "pi") return mp::mpfr_float(boost::math::constants::pi<BigFloat>());
      if (n.name == "e") return mp::exp(BigFloat(1));
      return (BigFloat(1) + mp::sqrt(BigFloat(5))) / 2;
    case Node::Kind::Neg:
      return -eval_mp(*n.lhs, bits);
    case Node::Kind::Add:
      return eval_mp(*n.lhs, bits) + eval_mp(*n.rhs, bits);
    case Node::Kind::Sub:
      return eval_mp(*n.lhs, bits) - eval_mp(*n.rhs, bits);
    case Node::Kind::Mul:
      return eval_mp(*n.lhs, bits) * eval_mp(*n.rhs, bits);
    case Node::Kind::Div:
      return eval_mp(*n.lhs, bits) / eval_mp(*n.rhs, bits);
    case Node::Kind::Pow:
      return mp::pow(eval_mp(*n.lhs, bits), eval_mp(*n.rhs, bits));
    case Node::Kind::Call: {
      const BigFloat a = eval_mp(*n.lhs, bits);
      if (n.name == "sqrt") return mp::sqrt(a);
      if (n.name == "cbrt") return mp::cbrt(a);
      if (n.name == "exp") return mp::exp(a);
      return mp::log(a);
    }
  }
  return BigFloat(0);
}

// Sets the working precision of newly created BigFloat values.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : saved_(BigFloat::default_precision()) {
    BigFloat::default_precision(static_cast<unsigned>(bits * 0.30103) + 10);
  }
  ~PrecisionScope() { BigFloat::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.root_ = Parser(text).parse();
  e.text_ = std::string(text);
  return e;
}

Expression Expression::constant(const Scalar& value) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Literal;
  n->literal = value;
  Expression e;
  e.root_ = n;
  e.text_ = value.to_string();
  return e;
}

Scalar Expression::evaluate(double tol) const {
  const Scalar v = eval(*root_, tol);
  if (!v.is_exact()) return Scalar::approx(eval_double(*root_), tol);
  return v;
}

BigFloat Expression::evaluate_mp(unsigned bits) const {
  PrecisionScope scope(bits);
  return eval_mp(*root_, bits);
}

BigFloat to_bigfloat(const Surd& s, unsigned bits) {
  PrecisionScope scope(bits);
  BigFloat sum(0);
  for (const auto& t : s.terms()) {
    BigFloat c = BigFloat(t.coef.get_num().get_str()) / BigFloat(t.coef.get_den().get_str());
    sum += c * mp::sqrt(BigFloat(static_cast<unsigned long long>(t.radicand)));
  }
  return sum;
}

}  // namespace cutproject
