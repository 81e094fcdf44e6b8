#pragma once

// Coordinator polynomials h_T(x) of the root lattices A_n, B_n, C_n, D_n
// from their closed forms, products over reducible types, and the two
// identities used to cross-check them (Legendre form of h_A, and the
// normalised B coefficients b'_k = b_k / binom(n, k)).

#include <array>
#include <cctype>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coordlat/error.hpp"
#include "coordlat/exactpoly.hpp"

namespace coordlat {

enum class Family { A, B, C, D, G2, F4, E6, E7, E8 };

inline constexpr std::array<std::pair<Family, const char*>, 9> kFamilyNames{{
    {Family::A, "A"},
    {Family::B, "B"},
    {Family::C, "C"},
    {Family::D, "D"},
    {Family::G2, "G2"},
    {Family::F4, "F4"},
    {Family::E6, "E6"},
    {Family::E7, "E7"},
    {Family::E8, "E8"},
}};

inline std::string family_name(Family f) {
  for (const auto& [fam, name] : kFamilyNames) {
    if (fam == f) return name;
  }
  return "?";
}

// Rank of the exceptional families; nullopt for the classical series.
inline std::optional<int> fixed_rank(Family f) {
  switch (f) {
    case Family::G2: return 2;
    case Family::F4: return 4;
    case Family::E6: return 6;
    case Family::E7: return 7;
    case Family::E8: return 8;
    default: return std::nullopt;
  }
}

inline int min_rank(Family f) {
  if (auto r = fixed_rank(f)) return *r;
  return f == Family::D ? 2 : 1;
}

inline bool is_classical(Family f) { return !fixed_rank(f).has_value(); }

struct LatticeType {
  Family family = Family::A;
  int n = 1;

  static LatticeType make(Family family, int n) {
    if (auto r = fixed_rank(family); r && n != *r) {
      throw InputError(family_name(family) + " has fixed rank " + std::to_string(*r));
    }
    if (n < min_rank(family)) {
      throw InputError(family_name(family) + "_n requires n >= " + std::to_string(min_rank(family)));
    }
    return {family, n};
  }

  // Accepts "A".."D" (n required) or "G2", "F4", "E6".."E8" (n optional).
  static LatticeType parse(const std::string& tag, std::optional<int> n) {
    std::string upper;
    for (char ch : tag) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    for (const auto& [fam, name] : kFamilyNames) {
      if (upper != name) continue;
      if (auto r = fixed_rank(fam)) return make(fam, n.value_or(*r));
      if (!n) throw InputError("type " + upper + " needs a rank n");
      return make(fam, *n);
    }
    throw InputError("unknown lattice type '" + tag + "'");
  }

  std::string name() const {
    return is_classical(family) ? family_name(family) + std::to_string(n) : family_name(family);
  }

  friend bool operator==(const LatticeType&, const LatticeType&) = default;
};

struct CoordinatorPolynomial {
  std::vector<LatticeType> components;
  int rank = 0;
  Polynomial poly;
};

namespace detail {

// sum_k binom(m, 2k) x^k for k = 0..floor(m/2)
inline Polynomial even_binomials(int m) {
  std::vector<Rational> c;
  for (int k = 0; 2 * k <= m; ++k) c.emplace_back(binom(m, 2 * k));
  return Polynomial(std::move(c));
}

inline Polynomial one_plus_x_pow(int e) { return power(Polynomial{1, 1}, static_cast<unsigned>(e)); }

}  // namespace detail

inline CoordinatorPolynomial coordinator(const LatticeType& t) {
  const int n = t.n;
  if (n < min_rank(t.family)) throw InputError(t.name() + ": rank too small");
  Polynomial h;
  switch (t.family) {
    case Family::A: {
      std::vector<Rational> c;
      for (int k = 0; k <= n; ++k) {
        Integer b = binom(n, k);
        c.emplace_back(b * b);
      }
      h = Polynomial(std::move(c));
      break;
    }
    case Family::B:
      h = detail::even_binomials(2 * n + 1) -
          Rational(2 * n) * (Polynomial::monomial(1, 1) * detail::one_plus_x_pow(n - 1));
      break;
    case Family::C:
      h = detail::even_binomials(2 * n);
      break;
    case Family::D:
      // ((1+sqrt x)^{2n} + (1-sqrt x)^{2n}) / 2 keeps only the even binomials
      h = detail::even_binomials(2 * n) -
          Rational(2 * n) * (Polynomial::monomial(1, 1) * detail::one_plus_x_pow(n - 2));
      break;
    default:
      throw InputError("no closed form for " + t.name() + "; use enumeration recovery (recover_coordinator)");
  }
  if (h.degree() != n || h.coeff(0) != 1) {
    throw ConsistencyError("closed form for " + t.name() + " has wrong degree or constant term");
  }
  for (const auto& c : h.coeffs()) {
    if (c <= 0) throw ConsistencyError("closed form for " + t.name() + " has a nonpositive coefficient");
  }
  return {{t}, n, std::move(h)};
}

inline CoordinatorPolynomial coordinator(Family f, int n) { return coordinator(LatticeType::make(f, n)); }

inline CoordinatorPolynomial coordinator_product(std::span<const LatticeType> types) {
  if (types.empty()) throw InputError("coordinator_product needs at least one type");
  CoordinatorPolynomial out{{}, 0, Polynomial::constant(1)};
  for (const auto& t : types) {
    auto part = coordinator(t);
    out.components.push_back(t);
    out.rank += part.rank;
    out.poly *= part.poly;
  }
  return out;
}

// b'_k = (2n+1)!! / ((2k-1)!! (2n-2k+1)!!) - 2k, k = 0..n.
inline std::vector<Rational> b_prime_sequence(int n) {
  if (n < 1) throw InputError("b_prime_sequence needs n >= 1");
  const Integer top = double_factorial(2 * n + 1);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    Rational v = make_rational(top, double_factorial(2 * k - 1) * double_factorial(2 * n - 2 * k + 1));
    v -= 2 * k;
    out.push_back(v);
  }
  const auto hb = coordinator(Family::B, n).poly;
  for (int k = 0; k <= n; ++k) {
    if (Rational(binom(n, k)) * out[k] != hb.coeff(k)) {
      throw ConsistencyError("binom(n,k) * b'_k != [x^k] h_B for n=" + std::to_string(n) +
                             ", k=" + std::to_string(k));
    }
  }
  return out;
}

// Expands (1-x)^n L_n((1+x)/(1-x)) and compares it with h_{A_n}.
inline bool legendre_identity_check(int n) {
  if (n < 1) throw InputError("legendre_identity_check needs n >= 1");
  const Polynomial ln = legendre(n);
  const Polynomial plus{1, 1};
  const Polynomial minus{1, -1};
  std::vector<Polynomial> minus_pow(static_cast<std::size_t>(n) + 1);
  minus_pow[0] = Polynomial::constant(1);
  for (int k = 1; k <= n; ++k) minus_pow[k] = minus_pow[k - 1] * minus;
  Polynomial acc;
  Polynomial plus_pow = Polynomial::constant(1);
  for (int k = 0; k <= n; ++k) {
    if (ln.coeff(k) != 0) acc += ln.coeff(k) * (plus_pow * minus_pow[n - k]);
    plus_pow *= plus;
  }
  return acc == coordinator(Family::A, n).poly;
}

}  // namespace coordlat
