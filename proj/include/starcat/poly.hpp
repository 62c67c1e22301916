#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "starcat/errors.hpp"

namespace starcat {

inline mpq_class rational(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

inline mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw parse_error("bad rational: " + s);
  q.canonicalize();
  return q;
}

inline mpq_class pow_rational(const mpq_class& base, unsigned e) {
  mpq_class out;
  mpz_pow_ui(out.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(out.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
  return out;  // canonical: gcd(n, d) = 1 is preserved by taking powers
}

// Exponent vector over prime-indexed variables l_q, stored as sorted
// (prime, exponent) pairs with positive exponents.
using Monomial = std::vector<std::pair<unsigned, unsigned>>;

inline int monomial_degree(const Monomial& m) {
  int d = 0;
  for (auto [p, e] : m) d += (int)e;
  return d;
}

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
      out.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first)
      out.push_back(b[j++]);
    else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  return out;
}

// true if a divides b; quotient written to q
inline bool monomial_divides(const Monomial& a, const Monomial& b, Monomial& q) {
  q.clear();
  std::size_t i = 0;
  for (auto [p, e] : b) {
    unsigned ea = 0;
    if (i < a.size() && a[i].first == p) ea = a[i++].second;
    if (ea > e) return false;
    if (e > ea) q.emplace_back(p, e - ea);
  }
  return i == a.size();
}

// Graded lexicographic order: total degree first, then lex with the smaller
// prime as the more significant variable.  Compatible with multiplication.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da < db;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].first != b[j].first)
        // the monomial owning the smaller prime has a positive exponent there
        return a[i].first > b[j].first;
      if (a[i].second != b[j].second) return a[i].second < b[j].second;
      ++i, ++j;
    }
    return i == a.size() && j != b.size();
  }
};

// Sparse multivariate polynomial over Q in the variables l_q.
class Polynomial {
 public:
  using Terms = std::map<Monomial, mpq_class, GrlexLess>;

  Polynomial() = default;
  explicit Polynomial(const mpq_class& c) {
    if (c != 0) terms_[Monomial{}] = c;
  }
  explicit Polynomial(long c) : Polynomial(mpq_class(c)) {}

  static Polynomial variable(unsigned prime, unsigned exp = 1) {
    Polynomial p;
    if (exp > 0)
      p.terms_[Monomial{{prime, exp}}] = 1;
    else
      p.terms_[Monomial{}] = 1;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  mpq_class constant_value() const {
    if (terms_.empty()) return mpq_class(0);
    if (!is_constant()) throw error("polynomial is not constant");
    return terms_.begin()->second;
  }

  int degree() const {
    if (terms_.empty()) throw error("degree of the zero polynomial");
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
  }

  // a unique term of maximal total degree, with coefficient 1
  bool is_monic() const {
    int d = degree();
    int count = 0;
    mpq_class lead;
    for (const auto& [m, c] : terms_)
      if (monomial_degree(m) == d) {
        ++count;
        lead = c;
      }
    return count == 1 && lead == 1;
  }

  // leading term in grlex order
  const std::pair<const Monomial, mpq_class>& leading_term() const {
    if (terms_.empty()) throw error("leading term of the zero polynomial");
    return *terms_.rbegin();
  }

  std::set<unsigned> variables() const {
    std::set<unsigned> out;
    for (const auto& [m, c] : terms_)
      for (auto [p, e] : m) out.insert(p);
    return out;
  }

  void add_term(const Monomial& m, const mpq_class& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial out = a;
    for (const auto& [m, c] : b.terms_) {
      mpq_class n = -c;
      out.add_term(m, n);
    }
    return out;
  }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial() - a; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        mpq_class c = ca * cb;
        out.add_term(monomial_mul(ma, mb), c);
      }
    return out;
  }
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  friend Polynomial operator*(const Polynomial& a, const mpq_class& c) {
    Polynomial out;
    if (c == 0) return out;
    for (const auto& [m, v] : a.terms_) {
      mpq_class w = v * c;
      out.terms_.emplace(m, w);
    }
    return out;
  }

  Polynomial pow(unsigned e) const {
    Polynomial out(1);
    for (unsigned i = 0; i < e; ++i) out = out * *this;
    return out;
  }

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  mpq_class evaluate(const std::map<unsigned, mpq_class>& point) const {
    mpq_class acc = 0;
    for (const auto& [m, c] : terms_) {
      mpq_class t = c;
      for (auto [p, e] : m) {
        auto it = point.find(p);
        if (it == point.end())
          throw missing_variable("no value assigned to l" + std::to_string(p));
        t *= pow_rational(it->second, e);
      }
      acc += t;
    }
    return acc;
  }

  std::string text() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      mpq_class a = abs(c);
      bool neg = c < 0;
      if (first) {
        if (neg) out << "-";
        first = false;
      } else {
        out << (neg ? " - " : " + ");
      }
      std::string mono;
      for (auto [p, e] : m) {
        if (!mono.empty()) mono += "*";
        mono += "l" + std::to_string(p);
        if (e > 1) mono += "^" + std::to_string(e);
      }
      if (mono.empty())
        out << a.get_str();
      else if (a == 1)
        out << mono;
      else
        out << a.get_str() << "*" << mono;
    }
    return out.str();
  }

 private:
  Terms terms_;
};

// Exact division: returns the quotient when divisor | dividend, nullopt
// otherwise.  Lead-term peeling in grlex order.
inline std::optional<Polynomial> exact_divide(const Polynomial& dividend,
                                              const Polynomial& divisor) {
  if (divisor.is_zero()) throw error("division by the zero polynomial");
  Polynomial rem = dividend, quot;
  const auto& dlt = divisor.leading_term();
  while (!rem.is_zero()) {
    const auto& rlt = rem.leading_term();
    Monomial q;
    if (!monomial_divides(dlt.first, rlt.first, q)) return std::nullopt;
    mpq_class c = rlt.second / dlt.second;
    Polynomial t;
    t.add_term(q, c);
    quot += t;
    rem -= t * divisor;
  }
  return quot;
}

}  // namespace starcat
