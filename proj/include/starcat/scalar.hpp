#pragma once

#include <map>
#include <string>

#include "starcat/poly.hpp"

namespace starcat {

// Element of the fraction field of the polynomial ring.  Fractions are not
// reduced to lowest terms (no multivariate gcd); equality is decided by
// cross-multiplication.  Constant denominators are folded into the numerator,
// so every rational-valued computation stays a plain polynomial constant.
class Scalar {
 public:
  Scalar() : num_(), den_(1) {}
  Scalar(const mpq_class& c) : num_(c), den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}
  explicit Scalar(Polynomial p) : num_(std::move(p)), den_(1) {}
  Scalar(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw error("scalar with zero denominator");
    normalize();
  }

  static Scalar variable(unsigned prime) { return Scalar(Polynomial::variable(prime)); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  mpq_class rational_value() const {
    if (!is_rational()) throw error("scalar is not rational");
    return num_.constant_value() / den_.constant_value();
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
    return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.den_ == b.den_) return Scalar(a.num_ - b.num_, a.den_);
    return Scalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Scalar operator-(const Scalar& a) { return Scalar(-a.num_, a.den_); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return Scalar(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  Scalar inverse() const {
    if (num_.is_zero()) throw error("inverse of zero scalar");
    return Scalar(den_, num_);
  }

  bool operator==(const Scalar& o) const {
    if (den_ == o.den_) return num_ == o.num_;
    return num_ * o.den_ == o.num_ * den_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string text() const {
    if (den_ == Polynomial(1)) return num_.text();
    return "(" + num_.text() + ")/(" + den_.text() + ")";
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    if (den_.is_constant()) {
      if (den_ != Polynomial(1)) {
        num_ = num_ * (mpq_class(1) / den_.constant_value());
        den_ = Polynomial(1);
      }
      return;
    }
    if (auto q = exact_divide(num_, den_)) {
      num_ = *q;
      den_ = Polynomial(1);
      return;
    }
    // make the denominator's grlex-leading coefficient 1 for a stable text form
    mpq_class lead = den_.leading_term().second;
    if (lead != 1) {
      mpq_class inv = 1 / lead;
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }

  Polynomial num_, den_;
};

// --------------------------------------------------------------------------
// The multiplicative weight ell on positive integers, determined by its
// values at primes.

inline std::vector<std::pair<unsigned, unsigned>> factorize(unsigned long n) {
  if (n == 0) throw error("factorize(0)");
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) n /= p, ++e;
      out.emplace_back((unsigned)p, e);
    }
  }
  if (n > 1) out.emplace_back((unsigned)n, 1u);
  return out;
}

// number of prime factors counted with multiplicity
inline int len(unsigned long n) {
  int d = 0;
  for (auto [p, e] : factorize(n)) d += (int)e;
  return d;
}

struct EllSpec {
  enum class Mode { Generic, Power, Unit, Assign };

  Mode mode = Mode::Generic;
  int exponent = 1;                        // Power mode
  std::map<unsigned, mpq_class> values;    // Assign mode; all nonzero

  static EllSpec generic() { return EllSpec{}; }
  static EllSpec unit() { return EllSpec{Mode::Unit, 1, {}}; }
  static EllSpec power(int d) {
    if (d < 1) throw parse_error("power exponent must be >= 1");
    return EllSpec{Mode::Power, d, {}};
  }
  static EllSpec assign(std::map<unsigned, mpq_class> vals) {
    for (const auto& [p, v] : vals)
      if (v == 0) throw parse_error("assigned ell value must be invertible (nonzero)");
    return EllSpec{Mode::Assign, 1, std::move(vals)};
  }

  // "generic" | "unit" | "power:<d>" | "assign:2=1,3=5/2"
  static EllSpec parse(const std::string& s) {
    if (s == "generic") return generic();
    if (s == "unit") return unit();
    if (s.rfind("power:", 0) == 0) {
      try {
        return power(std::stoi(s.substr(6)));
      } catch (const std::invalid_argument&) {
        throw parse_error("bad ell spec: " + s);
      }
    }
    if (s.rfind("assign:", 0) == 0) {
      std::map<unsigned, mpq_class> vals;
      std::string body = s.substr(7);
      std::istringstream in(body);
      std::string item;
      while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw parse_error("bad ell assignment: " + item);
        unsigned p = (unsigned)std::stoul(item.substr(0, eq));
        if (factorize(p).size() != 1 || factorize(p)[0].second != 1)
          throw parse_error("ell is assigned at primes; got " + item.substr(0, eq));
        vals[p] = parse_rational(item.substr(eq + 1));
      }
      if (vals.empty()) throw parse_error("empty ell assignment");
      return assign(std::move(vals));
    }
    throw parse_error("bad ell spec: " + s);
  }

  std::string text() const {
    switch (mode) {
      case Mode::Generic: return "generic";
      case Mode::Unit: return "unit";
      case Mode::Power: return "power:" + std::to_string(exponent);
      case Mode::Assign: {
        std::string out = "assign:";
        bool first = true;
        for (const auto& [p, v] : values) {
          if (!first) out += ",";
          first = false;
          out += std::to_string(p) + "=" + v.get_str();
        }
        return out;
      }
    }
    return "";
  }

  bool is_rational_valued() const { return mode != Mode::Generic; }
};

inline Scalar ell(unsigned long n, const EllSpec& spec) {
  if (n == 0) throw error("ell(0)");
  switch (spec.mode) {
    case EllSpec::Mode::Unit:
      return Scalar(1);
    case EllSpec::Mode::Power: {
      mpq_class q = pow_rational(mpq_class((unsigned long)n), (unsigned)spec.exponent);
      return Scalar(q);
    }
    case EllSpec::Mode::Generic: {
      Polynomial out(1);
      for (auto [p, e] : factorize(n)) out = out * Polynomial::variable(p, e);
      return Scalar(out);
    }
    case EllSpec::Mode::Assign: {
      mpq_class acc = 1;
      for (auto [p, e] : factorize(n)) {
        auto it = spec.values.find(p);
        if (it == spec.values.end())
          throw missing_variable("ell assignment is missing prime " + std::to_string(p));
        acc *= pow_rational(it->second, e);
      }
      return Scalar(acc);
    }
  }
  throw error("unreachable");
}

// Exact evaluation of a scalar at a rational point.  Missing variables and
// vanishing denominators are reported distinctly.
inline mpq_class specialize(const Scalar& s, const std::map<unsigned, mpq_class>& point) {
  for (unsigned p : s.num().variables())
    if (!point.count(p)) throw missing_variable("no value assigned to l" + std::to_string(p));
  for (unsigned p : s.den().variables())
    if (!point.count(p)) throw missing_variable("no value assigned to l" + std::to_string(p));
  mpq_class den = s.den().evaluate(point);
  if (den == 0) throw vanishing_denominator("denominator vanishes at the given point");
  mpq_class num = s.num().evaluate(point);
  return num / den;
}

}  // namespace starcat
