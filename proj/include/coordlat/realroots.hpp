#pragma once

// Exact real-root counting and isolation (Sturm chains over the
// squarefree part) and the trigonometric bracketing of the roots of
// h_{D_n}: under x = -tan^2(phi/2),
//
//   h_{D_n}(x) = (1 + tan^2(phi/2))^n * g_n(phi),
//   g_n(phi)   = cos(n phi) + (n/2) sin^2(phi) cos^{n-2}(phi),
//
// and g_n alternates in sign at phi = j*pi/n, j = 0..n.

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coordlat/coordinator.hpp"
#include "coordlat/error.hpp"
#include "coordlat/exactpoly.hpp"

namespace coordlat {

struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (!(lo < hi)) throw InputError("interval needs lo < hi");
  }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo < x && x < hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// p, p', then negated remainders. Nonconstant remainders are replaced by
// their primitive parts (a positive rescaling, so sign sequences are
// unchanged); a constant remainder is stored as its exact value over Q.
class SturmChain {
 public:
  explicit SturmChain(const Polynomial& squarefree) {
    if (squarefree.degree() < 1) throw InputError("Sturm chain needs a polynomial of degree >= 1");
    Polynomial d = derivative(squarefree);
    push(squarefree);
    push(d);
    while (ints_.back().size() > 1) {
      unsigned scale = 0;
      auto r = detail::signed_prem(ints_[ints_.size() - 2], ints_.back(), scale);
      if (r.empty()) break;
      for (auto& c : r) c = -c;
      if (r.size() > 1) {
        detail::make_primitive(r);
        chain_.push_back(Polynomial::from_integers(r));
        ints_.push_back(std::move(r));
      } else {
        Integer denom;
        mpz_pow_ui(denom.get_mpz_t(), Integer(abs(ints_.back().back())).get_mpz_t(), scale);
        chain_.push_back(Polynomial::constant(make_rational(r[0], denom)));
        ints_.push_back(std::move(r));
      }
    }
  }

  const std::vector<Polynomial>& chain() const { return chain_; }
  std::size_t size() const { return chain_.size(); }

  // Sign changes at r, zero entries skipped.
  int variations(const Rational& r) const {
    int count = 0;
    int last = 0;
    for (const auto& p : ints_) {
      int s = detail::sign_at(p, r);
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  int variations_at_infinity(bool positive) const {
    int count = 0;
    int last = 0;
    for (const auto& p : ints_) {
      int s = sgn(p.back());
      if (!positive && (p.size() - 1) % 2 == 1) s = -s;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  int sign_of_base(const Rational& r) const { return detail::sign_at(ints_.front(), r); }

  const detail::IntPoly& base_integer_coeffs() const { return ints_.front(); }

 private:
  void push(const Polynomial& p) {
    chain_.push_back(p);
    ints_.push_back(p.is_integral() ? p.integer_coeffs() : detail::integer_multiple(p));
  }

  std::vector<Polynomial> chain_;
  std::vector<detail::IntPoly> ints_;  // positive integer multiples of chain_ (equal when integral)
};

inline SturmChain sturm_chain(const Polynomial& p) {
  if (p.degree() < 1) throw InputError("sturm_chain needs a nonconstant polynomial");
  return SturmChain(squarefree_part(p).squarefree);
}

namespace detail {

// Distinct roots of the chain's base in [lo, hi]. V(lo) - V(hi) counts the
// half-open (lo, hi] even when an endpoint is a root; add lo back in.
inline int count_closed(const SturmChain& chain, const Interval& range) {
  int n = chain.variations(range.lo) - chain.variations(range.hi);
  if (chain.sign_of_base(range.lo) == 0) ++n;
  return n;
}

inline int count_line(const SturmChain& chain) {
  return chain.variations_at_infinity(false) - chain.variations_at_infinity(true);
}

// Power of two strictly above the modulus of every complex root (Fujiwara).
inline Rational root_bound(const IntPoly& p) {
  const std::size_t n = p.size() - 1;
  const Integer lead = abs(p.back());
  long best = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    Integer c = abs(p[n - k]);
    if (c == 0) continue;
    if (k == n) c = c / 2 + 1;
    // smallest e with 2^{e k} * lead >= c
    long e = 0;
    long bits = static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2)) -
                static_cast<long>(mpz_sizeinbase(lead.get_mpz_t(), 2)) + 1;
    if (bits > 0) e = (bits + static_cast<long>(k) - 1) / static_cast<long>(k);
    best = std::max(best, e);
  }
  Integer b(1);
  mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(best + 2));
  return Rational(b);
}

// A point of (lo, hi) where the chain's base does not vanish.
inline Rational split_point(const SturmChain& chain, const Rational& lo, const Rational& hi) {
  for (int denom = 2;; ++denom) {
    for (int k = 1; k < denom; ++k) {
      Rational t = lo + (hi - lo) * Rational(k, denom);
      t.canonicalize();
      if (chain.sign_of_base(t) != 0) return t;
    }
  }
}

}  // namespace detail

// Distinct real roots of p, on the whole line or in the closed `range`.
inline int count_real_roots(const Polynomial& p, const std::optional<Interval>& range = std::nullopt) {
  if (p.is_zero()) throw InputError("count_real_roots of the zero polynomial");
  if (p.is_constant()) return 0;
  SturmChain chain = sturm_chain(p);
  return range ? detail::count_closed(chain, *range) : detail::count_line(chain);
}

inline std::vector<Interval> isolate_in(const SturmChain& chain) {
  std::vector<Interval> out;
  const Rational bound = detail::root_bound(chain.base_integer_coeffs());
  struct Work {
    Rational lo, hi;
    int vlo, vhi;
  };
  std::vector<Work> stack;
  stack.push_back({-bound, bound, chain.variations(-bound), chain.variations(bound)});
  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    int roots = w.vlo - w.vhi;
    if (roots == 0) continue;
    if (roots == 1) {
      out.emplace_back(w.lo, w.hi);
      continue;
    }
    Rational mid = detail::split_point(chain, w.lo, w.hi);
    int vmid = chain.variations(mid);
    stack.push_back({mid, w.hi, vmid, w.vhi});
    stack.push_back({w.lo, mid, w.vlo, vmid});
  }
  return out;
}

// One open interval per distinct real root, ascending, endpoints never roots.
inline std::vector<Interval> isolate_real_roots(const Polynomial& p) {
  if (p.is_zero()) throw InputError("isolate_real_roots of the zero polynomial");
  if (p.is_constant()) return {};
  return isolate_in(sturm_chain(p));
}

struct RootReport {
  int degree = 0;
  int distinct_real = 0;
  int real_with_multiplicity = 0;
  bool is_real_rooted = false;
  std::vector<Interval> isolating_intervals;
};

inline RootReport is_real_rooted(const Polynomial& p, bool with_intervals = true) {
  if (p.is_zero()) throw InputError("is_real_rooted of the zero polynomial");
  RootReport rep;
  rep.degree = p.degree();
  if (p.is_constant()) {
    rep.is_real_rooted = true;
    return rep;
  }
  auto dec = squarefree_part(p);
  SturmChain chain(dec.squarefree);
  rep.distinct_real = detail::count_line(chain);
  if (dec.factors.size() == 1) {
    rep.real_with_multiplicity = rep.distinct_real * dec.profile[0].multiplicity;
  } else {
    for (std::size_t i = 0; i < dec.factors.size(); ++i) {
      rep.real_with_multiplicity += detail::count_line(SturmChain(dec.factors[i])) * dec.profile[i].multiplicity;
    }
  }
  rep.is_real_rooted = rep.real_with_multiplicity == rep.degree;
  if (with_intervals) rep.isolating_intervals = isolate_in(chain);
  return rep;
}

struct TrigValue {
  double g;
  double envelope;
};

inline TrigValue g_eval(int n, double phi) {
  if (n < 2) throw InputError("g_eval needs n >= 2");
  if (!(phi >= 0.0 && phi <= std::numbers::pi)) throw InputError("g_eval needs 0 <= phi <= pi");
  const double s = std::sin(phi);
  const double env = 0.5 * n * s * s * std::pow(std::cos(phi), n - 2);
  return {std::cos(n * phi) + env, env};
}

struct TrigBracket {
  int j = 0;
  double phi_lo = 0, phi_hi = 0;
  double g_lo = 0, g_hi = 0;
  Interval x_interval;
};

class BracketError : public Error {
 public:
  BracketError(int n, int j, double phi, double value, const std::string& what)
      : Error(describe(n, j, phi, value, what)), j_(j), phi_(phi), value_(value) {}

  int j() const { return j_; }
  double phi() const { return phi_; }
  double value() const { return value_; }

 private:
  static std::string describe(int n, int j, double phi, double value, const std::string& what) {
    std::ostringstream os;
    os.precision(17);
    os << "d_type_brackets(n=" << n << "): " << what << " at j=" << j << ", phi=" << phi << ", value=" << value;
    return os.str();
  }
  int j_;
  double phi_;
  double value_;
};

// Operational lower bound on (-1)^j g_n(j pi / n). The true minimum over
// n >= 3 is 7/16, attained at n = 3, j = 1.
inline constexpr double kTrigMargin = 0.25;

namespace detail {

// Nearest k / 2^32 to a finite double.
inline Rational dyadic_near(double x) {
  Integer k;
  mpz_set_d(k.get_mpz_t(), std::nearbyint(std::ldexp(x, 32)));
  Integer den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 32);
  return make_rational(k, den);
}

inline double x_of_phi(double phi) {
  double t = std::tan(phi / 2.0);
  return -t * t;
}

}  // namespace detail

inline std::vector<TrigBracket> d_type_brackets(int n, double margin = kTrigMargin) {
  if (n < 3) throw InputError("d_type_brackets needs n >= 3; h_{D_2} = (1+x)^2 has a double root");
  const Polynomial h = coordinator(Family::D, n).poly;
  const detail::IntPoly hz = h.integer_coeffs();
  const double step = std::numbers::pi / n;

  std::vector<double> phi(n + 1), g(n + 1);
  for (int i = 0; i <= n; ++i) {
    phi[i] = i == n ? std::numbers::pi : i * step;
    g[i] = g_eval(n, phi[i]).g;
    const double signed_g = (i % 2 == 0) ? g[i] : -g[i];
    if (signed_g < margin) throw BracketError(n, i, phi[i], g[i], "interlacing margin violated");
  }

  Integer max_coef(0);
  for (const auto& c : hz) max_coef = std::max(max_coef, Integer(abs(c)));
  std::vector<Rational> x(n + 1);
  x[0] = make_rational(-1, max_coef + 1);
  x[n] = Rational(-(max_coef + 1));
  auto sign_ok = [&](const Rational& r, int i) {
    return detail::sign_at(hz, r) == ((i % 2 == 0) ? 1 : -1);
  };
  for (int i : {0, n}) {
    if (!sign_ok(x[i], i)) throw BracketError(n, i, phi[i], x[i].get_d(), "outer endpoint has the wrong exact sign");
  }
  for (int i = 1; i < n; ++i) {
    Rational r = detail::dyadic_near(detail::x_of_phi(phi[i]));
    if (!sign_ok(r, i)) {
      // walk toward the phi-midpoints of the two neighbouring brackets
      bool found = false;
      for (int t = 1; t < 8 && !found; ++t) {
        for (double dir : {-1.0, 1.0}) {
          Rational cand = detail::dyadic_near(detail::x_of_phi(phi[i] + dir * t * step / 16.0));
          if (sign_ok(cand, i)) {
            r = cand;
            found = true;
            break;
          }
        }
      }
      if (!found) throw BracketError(n, i, phi[i], r.get_d(), "exact sign verification failed");
    }
    x[i] = r;
  }
  for (int i = 0; i < n; ++i) {
    if (!(x[i + 1] < x[i])) throw BracketError(n, i, phi[i], x[i].get_d(), "x endpoints not strictly ordered");
  }

  std::vector<TrigBracket> out;
  out.reserve(n);
  for (int j = 0; j < n; ++j) {
    out.push_back({j, phi[j], phi[j + 1], g[j], g[j + 1], Interval(x[j + 1], x[j])});
  }
  return out;
}

// Bisects b.x_interval with exact signs of p until it is at most `width` wide.
inline Interval refine_bracket(const TrigBracket& b, const Polynomial& p, const Rational& width) {
  const detail::IntPoly pz = detail::integer_multiple(p);
  Rational lo = b.x_interval.lo;
  Rational hi = b.x_interval.hi;
  const int s_lo = detail::sign_at(pz, lo);
  const int s_hi = detail::sign_at(pz, hi);
  if (s_lo == 0 || s_hi == 0 || s_lo == s_hi) throw InputError("refine_bracket needs a strict sign change");
  if (width <= 0) throw InputError("refine_bracket needs a positive width");
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    int s = detail::sign_at(pz, mid);
    if (s == 0) {
      Rational delta = width / 4;
      while (true) {
        int a = detail::sign_at(pz, mid - delta);
        int c = detail::sign_at(pz, mid + delta);
        if (a != 0 && c != 0 && a != c) return Interval(mid - delta, mid + delta);
        delta /= 2;
      }
    }
    if (s == s_lo) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return Interval(lo, hi);
}

}  // namespace coordlat
