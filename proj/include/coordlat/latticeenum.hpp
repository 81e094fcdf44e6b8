#pragma once

// Word-length census of a lattice generated as a monoid by a symmetric set
// of root vectors, and recovery of the coordinator polynomial from it via
//
//   sum_k S(k) x^k = h(x) / (1 - x)^d.
//
// Every generator costs 1 and M = -M, so breadth-first levels are exactly
// the length classes and a neighbour of level k lies in level k-1, k or
// k+1. Only three levels are ever held in memory.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coordlat/coordinator.hpp"
#include "coordlat/error.hpp"
#include "coordlat/exactpoly.hpp"
#include "coordlat/parallel.hpp"

namespace coordlat {

using IntVector = std::vector<int>;

struct LatticeSpec {
  std::string name;  // informational; empty for imported tables
  int ambient_dim = 0;
  int rank = 0;
  int scale = 1;
  std::vector<IntVector> generators;
};

namespace detail {

inline int integer_rank(const std::vector<IntVector>& rows, int dim) {
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  int rank = 0;
  for (int col = 0; col < dim && rank < static_cast<int>(m.size()); ++col) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      if (m[i][col] == 0) continue;
      Rational f = m[i][col] / m[rank][col];
      for (int j = col; j < dim; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline IntVector negate(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

inline IntVector unit(int dim, int i, int value) {
  IntVector v(dim, 0);
  v[i] = value;
  return v;
}

// +-s e_i +- s e_j, i < j
inline void add_pair_roots(std::vector<IntVector>& out, int dim, int s) {
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      for (int si : {1, -1}) {
        for (int sj : {1, -1}) {
          IntVector v(dim, 0);
          v[i] = si * s;
          v[j] = sj * s;
          out.push_back(std::move(v));
        }
      }
    }
  }
}

inline std::vector<IntVector> e8_roots_scaled() {
  std::vector<IntVector> out;
  add_pair_roots(out, 8, 2);
  for (int mask = 0; mask < 256; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
    IntVector v(8);
    for (int i = 0; i < 8; ++i) v[i] = (mask >> i) & 1 ? -1 : 1;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

// Throws InputError unless the table is a valid symmetric generator set of
// the declared rank.
inline void validate_spec(const LatticeSpec& spec) {
  if (spec.ambient_dim < 1) throw InputError("lattice spec: ambient dimension must be positive");
  if (spec.scale < 1) throw InputError("lattice spec: scale must be positive");
  if (spec.generators.empty()) throw InputError("lattice spec: no generators");
  std::set<IntVector> seen;
  for (const auto& g : spec.generators) {
    if (static_cast<int>(g.size()) != spec.ambient_dim) throw InputError("lattice spec: generator of wrong length");
    if (std::all_of(g.begin(), g.end(), [](int x) { return x == 0; })) {
      throw InputError("lattice spec: zero generator");
    }
    if (!seen.insert(g).second) throw InputError("lattice spec: duplicate generator");
  }
  for (const auto& g : spec.generators) {
    if (!seen.count(detail::negate(g))) throw InputError("lattice spec: generator set is not symmetric");
  }
  int r = detail::integer_rank(spec.generators, spec.ambient_dim);
  if (r != spec.rank) {
    throw InputError("lattice spec: declared rank " + std::to_string(spec.rank) + " but generators span " +
                     std::to_string(r));
  }
}

inline bool is_expensive(Family f) { return f == Family::E6 || f == Family::E7 || f == Family::E8; }

inline LatticeSpec lattice_spec(const LatticeType& t, bool allow_expensive = false) {
  if (is_expensive(t.family) && !allow_expensive) {
    throw InputError(t.name() + " enumeration is expensive; pass the explicit override to construct it");
  }
  LatticeSpec s;
  s.name = t.name();
  s.rank = t.n;
  const int n = t.n;
  switch (t.family) {
    case Family::A:
      s.ambient_dim = n + 1;
      for (int i = 0; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          IntVector v(n + 1, 0);
          v[i] = 1;
          v[j] = -1;
          s.generators.push_back(v);
          s.generators.push_back(detail::negate(v));
        }
      }
      break;
    case Family::B:
    case Family::C:
    case Family::D:
      s.ambient_dim = n;
      detail::add_pair_roots(s.generators, n, 1);
      if (t.family != Family::D) {
        const int len = t.family == Family::B ? 1 : 2;
        for (int i = 0; i < n; ++i) {
          s.generators.push_back(detail::unit(n, i, len));
          s.generators.push_back(detail::unit(n, i, -len));
        }
      }
      break;
    case Family::G2:
      s.ambient_dim = 3;
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          IntVector v(3, 0);
          v[i] = 1;
          v[j] = -1;
          s.generators.push_back(v);
          s.generators.push_back(detail::negate(v));
        }
      }
      for (int i = 0; i < 3; ++i) {
        IntVector v(3, -1);
        v[i] = 2;
        s.generators.push_back(v);
        s.generators.push_back(detail::negate(v));
      }
      break;
    case Family::F4:
      s.ambient_dim = 4;
      s.scale = 2;
      detail::add_pair_roots(s.generators, 4, 2);
      for (int i = 0; i < 4; ++i) {
        s.generators.push_back(detail::unit(4, i, 2));
        s.generators.push_back(detail::unit(4, i, -2));
      }
      for (int mask = 0; mask < 16; ++mask) {
        IntVector v(4);
        for (int i = 0; i < 4; ++i) v[i] = (mask >> i) & 1 ? -1 : 1;
        s.generators.push_back(std::move(v));
      }
      break;
    case Family::E6:
    case Family::E7:
    case Family::E8: {
      s.ambient_dim = 8;
      s.scale = 2;
      for (auto& v : detail::e8_roots_scaled()) {
        int sum = 0;
        for (int x : v) sum += x;
        // E7: orthogonal to (1/2)(1,...,1); E6: also to -(e7 + e8)
        if (t.family != Family::E8 && sum != 0) continue;
        if (t.family == Family::E6 && v[6] + v[7] != 0) continue;
        s.generators.push_back(std::move(v));
      }
      break;
    }
  }
  validate_spec(s);
  return s;
}

struct LengthCensus {
  LatticeSpec spec;
  int K = 0;
  std::vector<std::uint64_t> counts;  // S(0..K)
};

class EnumerationBudgetError : public Error {
 public:
  EnumerationBudgetError(LengthCensus partial, std::size_t budget)
      : Error("enumeration exceeded the memory budget of " + std::to_string(budget) +
              " bytes after completing level " + std::to_string(partial.K)),
        partial_(std::move(partial)) {}

  const LengthCensus& partial() const { return partial_; }
  int last_completed_level() const { return partial_.K; }

 private:
  LengthCensus partial_;
};

struct EnumerationOptions {
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
  unsigned threads = thread_count();
};

namespace detail {

template <typename Key>
class PackedLattice {
 public:
  PackedLattice(const LatticeSpec& spec, int K, int bits) : bits_(bits) {
    for (const auto& g : spec.generators) {
      Key d = 0;
      for (int i = 0; i < spec.ambient_dim; ++i) {
        d += static_cast<Key>(static_cast<std::int64_t>(g[i])) << (bits_ * i);
      }
      deltas_.push_back(d);
    }
    const int bound = K * max_abs(spec);
    origin_ = 0;
    for (int i = 0; i < spec.ambient_dim; ++i) origin_ += static_cast<Key>(bound) << (bits_ * i);
  }

  static int max_abs(const LatticeSpec& spec) {
    int m = 0;
    for (const auto& g : spec.generators)
      for (int x : g) m = std::max(m, std::abs(x));
    return m;
  }

  Key origin() const { return origin_; }
  const std::vector<Key>& deltas() const { return deltas_; }

 private:
  int bits_;
  Key origin_;
  std::vector<Key> deltas_;
};

template <typename Key>
LengthCensus bfs_census(const LatticeSpec& spec, int K, int bits, const EnumerationOptions& opt) {
  PackedLattice<Key> lat(spec, K, bits);
  LengthCensus census{spec, 0, {1}};
  std::vector<Key> prev;
  std::vector<Key> cur{lat.origin()};
  const auto& deltas = lat.deltas();
  constexpr std::size_t kChunk = std::size_t{1} << 15;

  for (int level = 1; level <= K; ++level) {
    const std::size_t chunks = (cur.size() + kChunk - 1) / kChunk;
    const std::size_t in_flight = std::min<std::size_t>(chunks, std::max(1U, opt.threads));
    const std::size_t held = (prev.size() + 2 * cur.size()) * sizeof(Key);
    if (held + in_flight * kChunk * deltas.size() * sizeof(Key) > opt.memory_budget_bytes) {
      throw EnumerationBudgetError(census, opt.memory_budget_bytes);
    }
    auto expand = [&](std::size_t begin, std::size_t end) {
      std::vector<Key> local;
      for (std::size_t c = begin; c < end; ++c) {
        std::vector<Key> cand;
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(cur.size(), lo + kChunk);
        cand.reserve((hi - lo) * deltas.size());
        for (std::size_t i = lo; i < hi; ++i)
          for (Key d : deltas) cand.push_back(cur[i] + d);
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        std::vector<Key> tmp;
        std::set_difference(cand.begin(), cand.end(), cur.begin(), cur.end(), std::back_inserter(tmp));
        cand.clear();
        std::set_difference(tmp.begin(), tmp.end(), prev.begin(), prev.end(), std::back_inserter(cand));
        std::vector<Key> merged;
        std::set_union(local.begin(), local.end(), cand.begin(), cand.end(), std::back_inserter(merged));
        local.swap(merged);
      }
      return local;
    };
    auto parts = parallel_chunks(chunks, opt.threads, expand);
    std::vector<Key> next;
    for (auto& p : parts) {
      std::vector<Key> merged;
      merged.reserve(next.size() + p.size());
      std::set_union(next.begin(), next.end(), p.begin(), p.end(), std::back_inserter(merged));
      next.swap(merged);
    }
    census.counts.push_back(next.size());
    census.K = level;
    prev.swap(cur);
    cur.swap(next);
    if ((prev.size() + cur.size()) * sizeof(Key) > opt.memory_budget_bytes && level < K) {
      throw EnumerationBudgetError(census, opt.memory_budget_bytes);
    }
  }
  return census;
}

}  // namespace detail

inline LengthCensus enumerate_lengths(const LatticeSpec& spec, int K, const EnumerationOptions& opt = {}) {
  if (K < 0) throw InputError("enumerate_lengths needs K >= 0");
  validate_spec(spec);
  const int bound = K * detail::PackedLattice<std::uint64_t>::max_abs(spec);
  const int bits = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(2 * bound))));
  const int total = bits * spec.ambient_dim;
  if (total <= 64) return detail::bfs_census<std::uint64_t>(spec, K, bits, opt);
  if (total <= 128) return detail::bfs_census<unsigned __int128>(spec, K, bits, opt);
  throw InputError("enumerate_lengths: " + std::to_string(spec.ambient_dim) + " coordinates of " +
                   std::to_string(bits) + " bits do not fit a 128-bit key");
}

// h_j = sum_i (-1)^i binom(d, i) S(j - i), j = 0..d, then checked against
// the whole census.
inline Polynomial recover_coordinator(const LengthCensus& census) {
  const int d = census.spec.rank;
  if (census.K < d) {
    throw InputError("recover_coordinator needs K >= rank (" + std::to_string(census.K) + " < " +
                     std::to_string(d) + ")");
  }
  std::vector<Rational> h(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) {
    Integer acc(0);
    for (int i = 0; i <= j; ++i) {
      Integer term = binom(d, i) * Integer(static_cast<unsigned long>(census.counts[j - i]));
      if (i % 2) {
        acc -= term;
      } else {
        acc += term;
      }
    }
    if (acc < 0) {
      throw ConsistencyError("recovered coefficient h_" + std::to_string(j) + " = " + acc.get_str() +
                             " is negative (wrong rank or generator table?)");
    }
    h[j] = Rational(acc);
  }
  Polynomial poly(std::move(h));
  auto series = series_expand(poly, d, census.K);
  for (int k = 0; k <= census.K; ++k) {
    if (series[k] != Rational(Integer(static_cast<unsigned long>(census.counts[k])))) {
      throw ConsistencyError("recovered h does not reproduce S(" + std::to_string(k) + ")");
    }
  }
  return poly;
}

struct OracleReport {
  LatticeType type;
  int K = 0;
  bool closed_form = false;  // false: recovery mode
  bool match = false;
  LengthCensus census;
  std::vector<Integer> expected;  // closed-form series; empty in recovery mode
  Polynomial poly;                // closed form, or the recovered h
  std::optional<Polynomial> recovered;
  std::optional<int> first_mismatch;
  Integer expected_value, actual_value;
  std::string message;
};

inline OracleReport oracle_verify(const LatticeType& t, int K, const EnumerationOptions& opt = {},
                                  bool allow_expensive = false) {
  OracleReport rep;
  rep.type = t;
  rep.K = K;
  rep.census = enumerate_lengths(lattice_spec(t, allow_expensive), K, opt);
  const int d = rep.census.spec.rank;
  if (is_classical(t.family)) {
    rep.closed_form = true;
    rep.poly = coordinator(t).poly;
    for (const auto& c : series_expand(rep.poly, d, K)) rep.expected.push_back(c.get_num());
    rep.match = true;
    for (int k = 0; k <= K; ++k) {
      Integer actual(static_cast<unsigned long>(rep.census.counts[k]));
      if (actual != rep.expected[k]) {
        rep.match = false;
        rep.first_mismatch = k;
        rep.expected_value = rep.expected[k];
        rep.actual_value = actual;
        rep.message = "S(" + std::to_string(k) + "): closed form " + rep.expected[k].get_str() + ", enumeration " +
                      actual.get_str();
        return rep;
      }
    }
    if (K >= d) {
      try {
        rep.recovered = recover_coordinator(rep.census);
      } catch (const Error& e) {
        rep.match = false;
        rep.message = e.what();
        return rep;
      }
      if (*rep.recovered != rep.poly) {
        rep.match = false;
        rep.message = "recovered h differs from the closed form";
      }
    }
    return rep;
  }
  try {
    rep.poly = recover_coordinator(rep.census);
    rep.recovered = rep.poly;
    rep.match = true;
  } catch (const Error& e) {
    rep.match = false;
    rep.message = e.what();
  }
  return rep;
}

// Plain-text generator table: header "dim=<m> rank=<d> scale=<s>", then one
// space-separated integer vector per line.
inline void write_generators(std::ostream& os, const LatticeSpec& spec) {
  os << "dim=" << spec.ambient_dim << " rank=" << spec.rank << " scale=" << spec.scale << '\n';
  for (const auto& g : spec.generators) {
    for (std::size_t i = 0; i < g.size(); ++i) os << (i ? " " : "") << g[i];
    os << '\n';
  }
}

inline LatticeSpec read_generators(std::istream& is) {
  LatticeSpec spec;
  std::string line;
  if (!std::getline(is, line)) throw InputError("generator table: missing header");
  {
    std::istringstream hs(line);
    std::string field;
    bool have_dim = false, have_rank = false, have_scale = false;
    while (hs >> field) {
      auto eq = field.find('=');
      if (eq == std::string::npos) throw InputError("generator table: bad header field '" + field + "'");
      std::string key = field.substr(0, eq);
      int value = 0;
      try {
        std::size_t used = 0;
        value = std::stoi(field.substr(eq + 1), &used);
        if (used != field.size() - eq - 1) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        throw InputError("generator table: bad header value in '" + field + "'");
      }
      if (key == "dim") {
        spec.ambient_dim = value;
        have_dim = true;
      } else if (key == "rank") {
        spec.rank = value;
        have_rank = true;
      } else if (key == "scale") {
        spec.scale = value;
        have_scale = true;
      } else {
        throw InputError("generator table: unknown header key '" + key + "'");
      }
    }
    if (!have_dim || !have_rank || !have_scale) throw InputError("generator table: header needs dim, rank and scale");
  }
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    IntVector v;
    long x = 0;
    while (ls >> x) v.push_back(static_cast<int>(x));
    if (!ls.eof()) throw InputError("generator table: non-integer entry in '" + line + "'");
    spec.generators.push_back(std::move(v));
  }
  validate_spec(spec);
  return spec;
}

inline void write_census_csv(std::ostream& os, const LengthCensus& census) {
  os << "k,S(k)\n";
  for (std::size_t k = 0; k < census.counts.size(); ++k) os << k << ',' << census.counts[k] << '\n';
}

inline std::vector<std::uint64_t> read_census_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "k,S(k)") throw InputError("census csv: expected header 'k,S(k)'");
  std::vector<std::uint64_t> counts;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw InputError("census csv: bad row '" + line + "'");
    try {
      if (std::stoul(line.substr(0, comma)) != counts.size()) throw InputError("census csv: rows out of order");
      counts.push_back(std::stoull(line.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw InputError("census csv: bad row '" + line + "'");
    }
  }
  return counts;
}

}  // namespace coordlat
