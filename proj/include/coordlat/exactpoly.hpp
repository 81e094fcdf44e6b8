#pragma once

// Dense univariate polynomials over exact rationals.
//
// Rational and Integer are GMP's mpq_class / mpz_class. Every Polynomial
// keeps its coefficient vector trimmed: no trailing zero, and the zero
// polynomial is the empty vector (degree -1).

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coordlat/error.hpp"

namespace coordlat {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InputError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0) {
    throw InputError("not a rational number: '" + text + "'");
  }
  r.canonicalize();
  return r;
}

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  static Polynomial monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return Polynomial(std::move(v));
  }

  static Polynomial from_integers(std::span<const Integer> coeffs) {
    std::vector<Rational> v;
    v.reserve(coeffs.size());
    for (const auto& c : coeffs) v.emplace_back(c);
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  const Rational& leading() const {
    static const Rational zero(0);
    return coeffs_.empty() ? zero : coeffs_.back();
  }

  bool is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
  }

  std::vector<Integer> integer_coeffs() const {
    if (!is_integral()) throw InputError("polynomial has non-integral coefficients");
    std::vector<Integer> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.get_num());
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  Polynomial operator-() const {
    auto v = coeffs_;
    for (auto& c : v) c = -c;
    return Polynomial(std::move(v));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] = a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    if (a.is_integral() && b.is_integral()) {
      // integer fast path: no canonicalisation per product
      std::vector<Integer> acc(v.size());
      for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        const Integer& ai = a.coeffs_[i].get_num();
        if (ai == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
          mpz_addmul(acc[i + j].get_mpz_t(), ai.get_mpz_t(), b.coeffs_[j].get_num_mpz_t());
        }
      }
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = Rational(acc[k]);
    } else {
      for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return Polynomial(std::move(v));
  }

  friend Polynomial operator*(const Rational& s, const Polynomial& p) {
    if (s == 0) return {};
    auto v = p.coeffs_;
    for (auto& c : v) c *= s;
    return Polynomial(std::move(v));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  std::string to_string(const std::string& var = "x") const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const Rational& c = coeffs_[k];
      if (c == 0) continue;
      Rational mag = abs(c);
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      bool unit = mag == 1 && k > 0;
      if (!unit) out += mag.get_str();
      if (k > 0) {
        if (!unit) out += "*";
        out += var;
        if (k > 1) out += "^" + std::to_string(k);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

enum class ArithKind { add, sub, mul };

inline Polynomial arith(const Polynomial& p, const Polynomial& q, ArithKind kind) {
  switch (kind) {
    case ArithKind::add: return p + q;
    case ArithKind::sub: return p - q;
    case ArithKind::mul: return p * q;
  }
  return {};
}

inline Polynomial power(const Polynomial& p, unsigned k) {
  Polynomial result = Polynomial::constant(1);
  Polynomial base = p;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

inline Rational eval(const Polynomial& p, const Rational& r) {
  Rational acc(0);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= r;
    acc += *it;
  }
  return acc;
}

inline Polynomial derivative(const Polynomial& p) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return {};
  std::vector<Rational> v(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) v[k - 1] = c[k] * static_cast<long>(k);
  return Polynomial(std::move(v));
}

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

// Euclidean division over Q.
inline DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InputError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial{}, a};
  std::vector<Rational> rem = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<Rational> quot(rem.size() - db);
  const Rational inv_lead = 1 / b.leading();
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i] == 0) continue;
    Rational factor = rem[i] * inv_lead;
    quot[i - db] = factor;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= factor * bc[j];
  }
  rem.resize(db);
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

inline Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw ConsistencyError("exact polynomial division left a remainder");
  return q;
}

namespace detail {

using IntPoly = std::vector<Integer>;

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Integer content(const IntPoly& p) {
  Integer g(0);
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

// Divides out the (positive) content; the sign of the polynomial is kept.
inline void make_primitive(IntPoly& p) {
  Integer g = content(p);
  if (g > 1) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
}

// Positive rational multiple of p with coprime integer coefficients.
inline IntPoly integer_multiple(const Polynomial& p) {
  Integer lcm(1);
  for (const auto& c : p.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    Integer v = lcm / c.get_den();
    out.push_back(v * c.get_num());
  }
  make_primitive(out);
  return out;
}

// Pseudo-remainder scaled by a positive power of |lc(b)| so the sign of the
// result matches the sign of the true remainder over Q. `scale_power` gets
// the exponent actually applied.
inline IntPoly signed_prem(IntPoly a, const IntPoly& b, unsigned& scale_power) {
  scale_power = 0;
  const std::size_t db = b.size() - 1;
  const Integer lc_abs = abs(b.back());
  const int lc_sign = sgn(b.back());
  Integer t;
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    Integer top = a.back();
    if (lc_abs != 1) {
      for (auto& c : a) c *= lc_abs;
      ++scale_power;
    }
    for (std::size_t j = 0; j <= db; ++j) {
      t = top * b[j];
      if (lc_sign > 0) {
        a[shift + j] -= t;
      } else {
        a[shift + j] += t;
      }
    }
    trim(a);
  }
  return a;
}

inline IntPoly primitive_gcd(IntPoly a, IntPoly b) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) std::swap(a, b);
  make_primitive(a);
  make_primitive(b);
  while (!b.empty()) {
    unsigned k = 0;
    IntPoly r = signed_prem(a, b, k);
    make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() < 0) {
    for (auto& c : a) c = -c;
  }
  return a;
}

// Sign of p(num/den) for den > 0, by homogeneous Horner over the integers.
inline int sign_at(const IntPoly& p, const Rational& r) {
  if (p.empty()) return 0;
  const Integer& num = r.get_num();
  const Integer& den = r.get_den();
  Integer acc = p.back();
  Integer den_pow(1);
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    acc *= num;
    den_pow *= den;
    acc += p[i] * den_pow;
  }
  return sgn(acc);
}

}  // namespace detail

// Content 1, positive leading coefficient, integer coefficients.
inline Polynomial primitive_part(const Polynomial& p) {
  auto ip = detail::integer_multiple(p);
  if (!ip.empty() && ip.back() < 0) {
    for (auto& c : ip) c = -c;
  }
  return Polynomial::from_integers(ip);
}

inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  return Polynomial::from_integers(detail::primitive_gcd(detail::integer_multiple(a), detail::integer_multiple(b)));
}

struct MultiplicityBlock {
  int degree;        // total degree of the squarefree factor
  int multiplicity;  // each root of that factor occurs this many times
  friend bool operator==(const MultiplicityBlock&, const MultiplicityBlock&) = default;
};

struct SquarefreeDecomposition {
  Polynomial squarefree;                 // p / gcd(p, p'), primitive
  std::vector<MultiplicityBlock> profile;  // sorted by multiplicity, highest first
  std::vector<Polynomial> factors;       // factors[i] carries profile[i]
};

// Yun's algorithm over Q.
inline SquarefreeDecomposition squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw InputError("squarefree_part of the zero polynomial");
  SquarefreeDecomposition out;
  if (p.is_constant()) {
    out.squarefree = Polynomial::constant(1);
    return out;
  }
  const Polynomial f = primitive_part(p);
  const Polynomial df = derivative(f);
  const Polynomial a0 = gcd(f, df);
  Polynomial b = exact_divide(f, a0);
  Polynomial c = exact_divide(df, a0);
  Polynomial d = c - derivative(b);
  out.squarefree = primitive_part(b);
  for (int mult = 1; b.degree() > 0; ++mult) {
    Polynomial a = gcd(b, d);
    b = exact_divide(b, a);
    c = exact_divide(d, a);
    d = c - derivative(b);
    if (a.degree() > 0) {
      out.factors.push_back(a);
      out.profile.push_back({a.degree(), mult});
    }
  }
  std::reverse(out.factors.begin(), out.factors.end());
  std::reverse(out.profile.begin(), out.profile.end());
  return out;
}

inline Integer binom(long n, long k) {
  if (n < 0) throw InputError("binom with negative n");
  if (k < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

// n!! for n >= -1, with (-1)!! = 0!! = 1.
inline Integer double_factorial(long n) {
  if (n < -1) throw InputError("double factorial below -1");
  if (n <= 0) return 1;
  Integer out;
  mpz_2fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

enum class CombinatorialKind { binom, double_factorial };

inline Integer combinatorial(CombinatorialKind kind, std::span<const long> args) {
  switch (kind) {
    case CombinatorialKind::binom:
      if (args.size() != 2) throw InputError("binom takes two arguments");
      return binom(args[0], args[1]);
    case CombinatorialKind::double_factorial:
      if (args.size() != 1) throw InputError("double_factorial takes one argument");
      return double_factorial(args[0]);
  }
  return 0;
}

// Coefficients of h(x) / (1 - x)^d up to x^K.
inline std::vector<Rational> series_expand(const Polynomial& h, int d, int K) {
  if (d < 1) throw InputError("series_expand needs d >= 1");
  if (K < 0) throw InputError("series_expand needs K >= 0");
  std::vector<Integer> tail(static_cast<std::size_t>(K) + 1);  // binom(d-1+m, d-1)
  for (int m = 0; m <= K; ++m) tail[m] = binom(d - 1 + m, d - 1);
  std::vector<Rational> out(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    for (int j = 0; j <= std::min(k, h.degree()); ++j) out[k] += h.coeffs()[j] * tail[k - j];
  }
  return out;
}

// Bonnet: (n+1) L_{n+1} = (2n+1) x L_n - n L_{n-1}.
inline Polynomial legendre(int n) {
  if (n < 0) throw InputError("legendre degree must be nonnegative");
  Polynomial prev = Polynomial::constant(1);
  if (n == 0) return prev;
  Polynomial cur = Polynomial::monomial(1, 1);
  const Polynomial x = Polynomial::monomial(1, 1);
  for (int k = 1; k < n; ++k) {
    Polynomial next = Rational(2 * k + 1, k + 1) * (x * cur) - Rational(k, k + 1) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace coordlat
