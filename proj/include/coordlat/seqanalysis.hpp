#pragma once

// Coefficient-sequence diagnostics: log-concavity, unimodality, internal
// zeros, and a finite-order Polya-frequency test on the Toeplitz matrix
// (a_{i-j}).

#include <atomic>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "coordlat/error.hpp"
#include "coordlat/exactpoly.hpp"
#include "coordlat/parallel.hpp"

namespace coordlat {

enum class SequenceProperty { log_concave, unimodal, no_internal_zeros, pf_order };

inline std::string property_name(SequenceProperty p) {
  switch (p) {
    case SequenceProperty::log_concave: return "log_concave";
    case SequenceProperty::unimodal: return "unimodal";
    case SequenceProperty::no_internal_zeros: return "no_internal_zeros";
    case SequenceProperty::pf_order: return "pf_order";
  }
  return "?";
}

struct Witness {
  // log_concave: {k}; unimodal: {descent, ascent}; no_internal_zeros: {k};
  // pf_order: row indices, with `cols` the column indices.
  std::vector<std::size_t> index;
  std::vector<std::size_t> cols;
  std::string description;
};

struct SequenceVerdict {
  SequenceProperty property = SequenceProperty::log_concave;
  bool holds = true;
  int order = 0;         // pf_order only: order actually checked
  bool clamped = false;  // pf_order only: requested order exceeded n+1
  std::optional<Witness> witness;
};

namespace detail {

inline void require_nonnegative(std::span<const Rational> seq, const char* who) {
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (seq[k] < 0) throw InputError(std::string(who) + ": negative entry at index " + std::to_string(k));
  }
}

}  // namespace detail

inline SequenceVerdict check_log_concave(std::span<const Rational> seq) {
  detail::require_nonnegative(seq, "check_log_concave");
  SequenceVerdict v;
  v.property = SequenceProperty::log_concave;
  for (std::size_t k = 1; k + 1 < seq.size(); ++k) {
    if (seq[k] * seq[k] < seq[k - 1] * seq[k + 1]) {
      v.holds = false;
      v.witness = Witness{{k}, {}, "a_" + std::to_string(k) + "^2 < a_" + std::to_string(k - 1) + " * a_" +
                                        std::to_string(k + 1)};
      break;
    }
  }
  return v;
}

inline SequenceVerdict check_unimodal(std::span<const Rational> seq) {
  SequenceVerdict v;
  v.property = SequenceProperty::unimodal;
  std::optional<std::size_t> descent;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    if (seq[k] < seq[k - 1]) {
      if (!descent) descent = k;
    } else if (seq[k] > seq[k - 1] && descent) {
      v.holds = false;
      v.witness = Witness{{*descent, k}, {}, "descent at " + std::to_string(*descent) + " then ascent at " +
                                                 std::to_string(k)};
      break;
    }
  }
  return v;
}

inline SequenceVerdict check_no_internal_zeros(std::span<const Rational> seq) {
  SequenceVerdict v;
  v.property = SequenceProperty::no_internal_zeros;
  std::size_t first = 0;
  while (first < seq.size() && seq[first] == 0) ++first;
  std::size_t last = seq.size();
  while (last > first && seq[last - 1] == 0) --last;
  for (std::size_t k = first; k < last; ++k) {
    if (seq[k] == 0) {
      v.holds = false;
      v.witness = Witness{{k}, {}, "internal zero at " + std::to_string(k)};
      break;
    }
  }
  return v;
}

inline bool is_palindromic(std::span<const Rational> seq) {
  for (std::size_t i = 0, j = seq.size(); i < j--; ++i) {
    if (seq[i] != seq[j]) return false;
  }
  return true;
}

// Fraction-free Gaussian elimination; `m` is row-major r x r and is consumed.
inline Integer bareiss_determinant(std::vector<Integer> m, std::size_t r) {
  if (m.size() != r * r) throw InputError("bareiss_determinant: matrix is not r x r");
  if (r == 0) return 1;
  int sign = 1;
  Integer prev(1);
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return m[i * r + j]; };
  for (std::size_t k = 0; k + 1 < r; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < r && at(p, k) == 0) ++p;
      if (p == r) return 0;
      for (std::size_t j = 0; j < r; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < r; ++i) {
      for (std::size_t j = k + 1; j < r; ++j) {
        Integer& e = at(i, j);
        e *= at(k, k);
        mpz_submul(e.get_mpz_t(), at(i, k).get_mpz_t(), at(k, j).get_mpz_t());
        mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = at(k, k);
  }
  Integer d = at(r - 1, r - 1);
  return sign > 0 ? d : Integer(-d);
}

namespace detail {

// Lexicographic r-subsets of {0..n-1}, flattened with stride r.
inline std::vector<int> combinations(int n, int r, bool must_contain_zero) {
  std::vector<int> out;
  if (r > n || r <= 0) return out;
  std::vector<int> c(r);
  for (int i = 0; i < r; ++i) c[i] = i;
  while (true) {
    if (!must_contain_zero || c[0] == 0) out.insert(out.end(), c.begin(), c.end());
    int i = r - 1;
    while (i >= 0 && c[i] == n - r + i) --i;
    if (i < 0) break;
    if (must_contain_zero && i == 0) break;
    ++c[i];
    for (int j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

inline long double to_long_double(const Integer& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::ldexp(static_cast<long double>(mant), static_cast<int>(exp));
}

// Sign of the r x r minor whose entries are coefficient indices (-1 = 0).
class MinorSign {
 public:
  MinorSign(const std::vector<Integer>& a, int r) : a_(a), r_(r), scratch_(static_cast<std::size_t>(r * r)) {
    approx_.reserve(a.size());
    for (const auto& c : a) approx_.push_back(to_long_double(c));
  }

  int operator()(const int* idx) {
    if (r_ == 1) return idx[0] < 0 ? 0 : sgn(a_[idx[0]]);
    if (r_ <= 3) {
      // long-double Leibniz expansion; decided only when far from zero
      long double sum = 0, mag = 0;
      for (const auto& [p, s] : perms()) {
        long double t = s;
        for (int i = 0; i < r_; ++i) {
          int k = idx[i * r_ + p[i]];
          t = k < 0 ? 0 : t * approx_[k];
        }
        sum += t;
        mag += std::fabs(t);
      }
      if (mag == 0) return 0;
      if (std::fabs(sum) > mag * 1e-12L) return sum > 0 ? 1 : -1;
    }
    for (int i = 0; i < r_ * r_; ++i) scratch_[i] = idx[i] < 0 ? Integer(0) : a_[idx[i]];
    return sgn(bareiss_determinant(scratch_, static_cast<std::size_t>(r_)));
  }

 private:
  struct Perm {
    std::vector<int> p;
    int sign;
  };
  const std::vector<Perm>& perms() {
    if (perms_.empty()) {
      std::vector<int> p(r_);
      for (int i = 0; i < r_; ++i) p[i] = i;
      do {
        int inv = 0;
        for (int i = 0; i < r_; ++i)
          for (int j = i + 1; j < r_; ++j) inv += p[i] > p[j];
        perms_.push_back({p, inv % 2 ? -1 : 1});
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return perms_;
  }

  const std::vector<Integer>& a_;
  std::vector<long double> approx_;
  int r_;
  std::vector<Integer> scratch_;
  std::vector<Perm> perms_;
};

}  // namespace detail

// Every r x r minor, r <= max_order, of the (n + r) x (n + r) section of the
// infinite Toeplitz matrix (a_{i-j}). That section holds every solid minor
// of order r up to a diagonal shift, so a negative minor anywhere among them
// is found. A pass is a necessary condition for the Polya frequency property,
// not a decision of it. The reported witness is the lexicographically first
// (order, rows, cols) with a negative determinant.
inline SequenceVerdict pf_minor_check(std::span<const Rational> seq, int max_order) {
  if (max_order < 1) throw InputError("pf_minor_check needs max_order >= 1");
  detail::require_nonnegative(seq, "pf_minor_check");
  SequenceVerdict v;
  v.property = SequenceProperty::pf_order;
  std::vector<Rational> trimmed(seq.begin(), seq.end());
  while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
  if (trimmed.empty()) {
    v.order = max_order;
    return v;
  }
  const int n = static_cast<int>(trimmed.size()) - 1;
  int order = max_order;
  if (order > n + 1) {
    order = n + 1;
    v.clamped = true;
  }
  v.order = order;
  const auto ints = detail::integer_multiple(Polynomial(trimmed));
  std::vector<Integer> a(static_cast<std::size_t>(n) + 1);
  for (std::size_t k = 0; k < ints.size(); ++k) a[k] = ints[k];

  const unsigned threads = thread_count();
  for (int r = 1; r <= order; ++r) {
    const int size = n + r;
    const auto all = detail::combinations(size, r, false);
    const auto zero_led = detail::combinations(size, r, true);
    const std::size_t rows_count = all.size() / r;

    struct Found {
      std::size_t row_idx = SIZE_MAX;
      std::vector<int> rows, cols;
    };
    std::atomic<std::size_t> best{SIZE_MAX};
    auto scan = [&](std::size_t begin, std::size_t end) {
      Found f;
      detail::MinorSign sign(a, r);
      std::vector<int> idx(static_cast<std::size_t>(r * r));
      for (std::size_t ri = begin; ri < end; ++ri) {
        if (ri > best.load(std::memory_order_relaxed)) break;
        const int* rows = &all[ri * r];
        const auto& cols_list = rows[0] == 0 ? all : zero_led;
        for (std::size_t ci = 0; ci < cols_list.size(); ci += r) {
          const int* cols = &cols_list[ci];
          bool zero_row = false;
          for (int i = 0; i < r && !zero_row; ++i) {
            bool any = false;
            for (int j = 0; j < r; ++j) {
              int d = rows[i] - cols[j];
              int k = (d >= 0 && d <= n && a[d] != 0) ? d : -1;
              idx[i * r + j] = k;
              any |= k >= 0;
            }
            zero_row = !any;
          }
          if (zero_row) continue;
          if (sign(idx.data()) < 0) {
            f.row_idx = ri;
            f.rows.assign(rows, rows + r);
            f.cols.assign(cols, cols + r);
            std::size_t cur = best.load();
            while (ri < cur && !best.compare_exchange_weak(cur, ri)) {
            }
            return f;
          }
        }
      }
      return f;
    };
    auto results = parallel_chunks(rows_count, threads, scan);
    for (const auto& f : results) {
      if (f.row_idx == SIZE_MAX) continue;
      v.holds = false;
      Witness w;
      std::ostringstream os;
      os << "order-" << r << " minor rows {";
      for (std::size_t i = 0; i < f.rows.size(); ++i) os << (i ? "," : "") << f.rows[i];
      os << "} cols {";
      for (std::size_t i = 0; i < f.cols.size(); ++i) os << (i ? "," : "") << f.cols[i];
      os << "} is negative";
      w.index.assign(f.rows.begin(), f.rows.end());
      w.cols.assign(f.cols.begin(), f.cols.end());
      w.description = os.str();
      v.witness = std::move(w);
      v.order = r;
      return v;
    }
  }
  return v;
}

}  // namespace coordlat
