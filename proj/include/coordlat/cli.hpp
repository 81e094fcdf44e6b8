#pragma once

// Command-line front end. `run` never writes to std::cout/std::cerr
// directly so it can be driven from tests.
//
// Exit codes: 0 success, 1 a checked property failed, 2 usage/input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "coordlat/coordinator.hpp"
#include "coordlat/error.hpp"
#include "coordlat/exactpoly.hpp"
#include "coordlat/latticeenum.hpp"
#include "coordlat/parallel.hpp"
#include "coordlat/realroots.hpp"
#include "coordlat/seqanalysis.hpp"

namespace coordlat::cli {

using Json = nlohmann::ordered_json;

enum class Format { text, json, csv };

struct RunConfig {
  std::string subcommand;
  std::string type_tag;
  std::optional<int> n;
  std::optional<int> K;
  int max_order = 3;
  std::string width = "1/1024";
  Format format = Format::text;
  std::string out_path;
  std::size_t memory_budget_mib = 1024;
  bool allow_expensive = false;
  std::string expect;
  std::string generators_path;
  std::string export_generators_path;
};

// A property asked for with --expect (or checked by verify) did not hold.
class CheckFailed : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

inline Json coeff_strings(const Polynomial& p) {
  Json arr = Json::array();
  for (const auto& c : p.coeffs()) arr.push_back(to_string(c));
  return arr;
}

inline std::string join_coeffs(const Polynomial& p, const char* sep) {
  std::string s;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) s += (k ? sep : "") + to_string(p.coeffs()[k]);
  return s;
}

inline EnumerationOptions enum_options(const RunConfig& cfg) {
  EnumerationOptions opt;
  opt.memory_budget_bytes = cfg.memory_budget_mib * (std::size_t{1} << 20);
  return opt;
}

inline LatticeType parse_type(const RunConfig& cfg) {
  if (cfg.type_tag.empty()) throw InputError("--type is required");
  return LatticeType::parse(cfg.type_tag, cfg.n);
}

struct Resolved {
  LatticeType type;
  int rank;
  Polynomial poly;
  bool from_enumeration = false;
  int K = 0;
};

// Closed form for A-D; enumeration recovery for the exceptional types.
inline Resolved resolve(const RunConfig& cfg) {
  LatticeType t = parse_type(cfg);
  if (is_classical(t.family)) return {t, t.n, coordinator(t).poly};
  if (is_expensive(t.family) && !cfg.allow_expensive) {
    throw InputError(t.name() + " needs --allow-expensive (enumeration recovery)");
  }
  const int K = cfg.K.value_or(t.n + 2);
  auto census = enumerate_lengths(lattice_spec(t, cfg.allow_expensive), K, enum_options(cfg));
  return {t, t.n, recover_coordinator(census), true, K};
}

inline Json type_json(const LatticeType& t) {
  return is_classical(t.family) ? Json(family_name(t.family)) : Json(t.name());
}

struct Analysis {
  RootReport roots;
  SequenceVerdict log_concave, unimodal, no_internal_zeros, pf;
};

inline Analysis analyze_poly(const Polynomial& p, int max_order, bool with_intervals) {
  const auto& c = p.coeffs();
  return {is_real_rooted(p, with_intervals), check_log_concave(c), check_unimodal(c), check_no_internal_zeros(c),
          pf_minor_check(c, max_order)};
}

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline Json interval_json(const Interval& iv) { return Json{{"lo", to_string(iv.lo)}, {"hi", to_string(iv.hi)}}; }

inline int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  Resolved r = resolve(cfg);
  switch (cfg.format) {
    case Format::json: {
      Json j;
      j["type"] = type_json(r.type);
      j["n"] = r.type.n;
      j["coeffs"] = coeff_strings(r.poly);
      if (r.from_enumeration) {
        j["source"] = "enumeration";
        j["K"] = r.K;
      }
      out << j.dump() << '\n';
      break;
    }
    case Format::csv:
      out << "k,coeff\n";
      for (std::size_t k = 0; k < r.poly.coeffs().size(); ++k) out << k << ',' << to_string(r.poly.coeffs()[k]) << '\n';
      break;
    case Format::text:
      out << "h_" << r.type.name() << "(x) = " << r.poly.to_string() << '\n';
      break;
  }
  return 0;
}

inline int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Resolved r = resolve(cfg);
  Analysis a = analyze_poly(r.poly, cfg.max_order, false);
  const std::string pf_key = "pf" + std::to_string(a.pf.order);
  switch (cfg.format) {
    case Format::json: {
      Json j;
      j["type"] = type_json(r.type);
      j["n"] = r.type.n;
      j["degree"] = a.roots.degree;
      j["distinct_real"] = a.roots.distinct_real;
      j["real_with_multiplicity"] = a.roots.real_with_multiplicity;
      j["real_rooted"] = a.roots.is_real_rooted;
      j["log_concave"] = a.log_concave.holds;
      j["unimodal"] = a.unimodal.holds;
      j["no_internal_zeros"] = a.no_internal_zeros.holds;
      j[pf_key] = a.pf.holds;
      if (a.pf.clamped) j["pf_clamped"] = true;
      for (const auto* v : {&a.log_concave, &a.unimodal, &a.no_internal_zeros, &a.pf}) {
        if (v->witness) j["witness"][property_name(v->property)] = v->witness->description;
      }
      out << j.dump() << '\n';
      break;
    }
    case Format::csv:
      out << "type,n,degree,distinct_real,real_with_multiplicity,real_rooted,log_concave,unimodal,no_internal_zeros,"
          << pf_key << '\n';
      out << r.type.name() << ',' << r.type.n << ',' << a.roots.degree << ',' << a.roots.distinct_real << ','
          << a.roots.real_with_multiplicity << ',' << bool_str(a.roots.is_real_rooted) << ','
          << bool_str(a.log_concave.holds) << ',' << bool_str(a.unimodal.holds) << ','
          << bool_str(a.no_internal_zeros.holds) << ',' << bool_str(a.pf.holds) << '\n';
      break;
    case Format::text:
      out << "type: " << r.type.name() << '\n'
          << "degree: " << a.roots.degree << '\n'
          << "distinct_real: " << a.roots.distinct_real << '\n'
          << "real_with_multiplicity: " << a.roots.real_with_multiplicity << '\n'
          << "real-rooted: " << bool_str(a.roots.is_real_rooted) << '\n'
          << "log_concave: " << bool_str(a.log_concave.holds) << '\n'
          << "unimodal: " << bool_str(a.unimodal.holds) << '\n'
          << "no_internal_zeros: " << bool_str(a.no_internal_zeros.holds) << '\n'
          << pf_key << ": " << bool_str(a.pf.holds) << (a.pf.clamped ? " (order clamped)" : "") << '\n';
      for (const auto* v : {&a.log_concave, &a.unimodal, &a.no_internal_zeros, &a.pf}) {
        if (v->witness) out << "witness " << property_name(v->property) << ": " << v->witness->description << '\n';
      }
      break;
  }
  if (!cfg.expect.empty()) {
    bool ok = true;
    std::string detail;
    if (cfg.expect == "real-rooted") {
      ok = a.roots.is_real_rooted;
      detail = std::to_string(a.roots.real_with_multiplicity) + " of " + std::to_string(a.roots.degree) +
               " roots are real";
    } else if (cfg.expect == "log-concave") {
      ok = a.log_concave.holds;
      if (!ok) detail = a.log_concave.witness->description;
    } else if (cfg.expect == "unimodal") {
      ok = a.unimodal.holds;
      if (!ok) detail = a.unimodal.witness->description;
    } else if (cfg.expect == "pf") {
      ok = a.pf.holds;
      if (!ok) detail = a.pf.witness->description;
    }
    if (!ok) {
      err << "expected " << cfg.expect << " failed for " << r.type.name() << ": " << detail << '\n';
      return 1;
    }
  }
  return 0;
}

inline int cmd_roots(const RunConfig& cfg, std::ostream& out) {
  Resolved r = resolve(cfg);
  const Rational width = parse_rational(cfg.width);
  if (width <= 0) throw InputError("--width must be positive");
  auto intervals = isolate_real_roots(r.poly);
  std::vector<TrigBracket> brackets;
  std::vector<Interval> refined;
  if (r.type.family == Family::D && r.type.n >= 3) {
    brackets = d_type_brackets(r.type.n);
    for (const auto& b : brackets) refined.push_back(refine_bracket(b, r.poly, width));
  }
  switch (cfg.format) {
    case Format::json: {
      Json j;
      j["type"] = type_json(r.type);
      j["n"] = r.type.n;
      j["distinct_real"] = intervals.size();
      Json iv = Json::array();
      for (const auto& i : intervals) iv.push_back(interval_json(i));
      j["isolating_intervals"] = iv;
      if (!brackets.empty()) {
        Json bj = Json::array();
        for (std::size_t k = 0; k < brackets.size(); ++k) {
          const auto& b = brackets[k];
          Json e;
          e["j"] = b.j;
          e["phi_lo"] = fmt_double(b.phi_lo);
          e["phi_hi"] = fmt_double(b.phi_hi);
          e["g_lo"] = fmt_double(b.g_lo);
          e["g_hi"] = fmt_double(b.g_hi);
          e["x_interval"] = interval_json(b.x_interval);
          e["refined"] = interval_json(refined[k]);
          bj.push_back(e);
        }
        j["trig_brackets"] = bj;
      }
      out << j.dump() << '\n';
      break;
    }
    case Format::csv:
      out << "kind,j,phi_lo,phi_hi,x_lo,x_hi\n";
      for (std::size_t k = 0; k < intervals.size(); ++k) {
        out << "sturm," << k << ",,," << to_string(intervals[k].lo) << ',' << to_string(intervals[k].hi) << '\n';
      }
      for (std::size_t k = 0; k < brackets.size(); ++k) {
        const auto& b = brackets[k];
        out << "trig," << b.j << ',' << fmt_double(b.phi_lo) << ',' << fmt_double(b.phi_hi) << ','
            << to_string(b.x_interval.lo) << ',' << to_string(b.x_interval.hi) << '\n';
        out << "refined," << b.j << ",,," << to_string(refined[k].lo) << ',' << to_string(refined[k].hi) << '\n';
      }
      break;
    case Format::text:
      out << "h_" << r.type.name() << ": " << intervals.size() << " distinct real roots\n";
      for (std::size_t k = 0; k < intervals.size(); ++k) {
        out << "  root " << k << " in (" << to_string(intervals[k].lo) << ", " << to_string(intervals[k].hi)
            << ")  mid " << fmt_double(Rational((intervals[k].lo + intervals[k].hi) / 2).get_d()) << '\n';
      }
      for (std::size_t k = 0; k < brackets.size(); ++k) {
        const auto& b = brackets[k];
        out << "  j=" << b.j << " phi in (" << fmt_double(b.phi_lo) << ", " << fmt_double(b.phi_hi) << ")"
            << " g: " << fmt_double(b.g_lo) << " -> " << fmt_double(b.g_hi) << "  x in ("
            << to_string(b.x_interval.lo) << ", " << to_string(b.x_interval.hi) << ")  refined ("
            << to_string(refined[k].lo) << ", " << to_string(refined[k].hi) << ")\n";
      }
      break;
  }
  return 0;
}

inline int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.K) throw InputError("enumerate needs --K");
  LatticeSpec spec;
  if (!cfg.generators_path.empty()) {
    std::ifstream in(cfg.generators_path);
    if (!in) throw InputError("cannot open " + cfg.generators_path);
    spec = read_generators(in);
  } else {
    spec = lattice_spec(parse_type(cfg), cfg.allow_expensive);
  }
  if (!cfg.export_generators_path.empty()) {
    std::ofstream g(cfg.export_generators_path);
    if (!g) throw InputError("cannot write " + cfg.export_generators_path);
    write_generators(g, spec);
  }
  auto census = enumerate_lengths(spec, *cfg.K, enum_options(cfg));
  const std::string label = spec.name.empty() ? "table" : spec.name;
  switch (cfg.format) {
    case Format::csv:
      write_census_csv(out, census);
      break;
    case Format::json: {
      Json j;
      j["lattice"] = label;
      j["ambient_dim"] = spec.ambient_dim;
      j["rank"] = spec.rank;
      j["scale"] = spec.scale;
      j["K"] = census.K;
      Json arr = Json::array();
      for (auto c : census.counts) arr.push_back(std::to_string(c));
      j["counts"] = arr;
      out << j.dump() << '\n';
      break;
    }
    case Format::text:
      out << label << " (dim=" << spec.ambient_dim << " rank=" << spec.rank << " scale=" << spec.scale
          << ", " << spec.generators.size() << " generators)\n";
      for (std::size_t k = 0; k < census.counts.size(); ++k) out << "S(" << k << ") = " << census.counts[k] << '\n';
      break;
  }
  return 0;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  LatticeType t = parse_type(cfg);
  if (is_expensive(t.family) && !cfg.allow_expensive) throw InputError(t.name() + " needs --allow-expensive");
  const int K = cfg.K.value_or(t.n + 2);
  OracleReport rep = oracle_verify(t, K, enum_options(cfg), cfg.allow_expensive);
  struct Check {
    std::string name;
    bool ok;
    std::string detail;
  };
  std::vector<Check> checks;
  std::string census;
  for (std::size_t k = 0; k < rep.census.counts.size(); ++k) census += (k ? "," : "") + std::to_string(rep.census.counts[k]);
  census = "[" + census + "]";
  checks.push_back({rep.closed_form ? "census matches closed form" : "census recovers h", rep.match,
                    rep.match ? census : rep.message});
  if (rep.recovered) checks.push_back({"recovered h", rep.match, rep.recovered->to_string()});
  if (t.family == Family::A) checks.push_back({"legendre identity", legendre_identity_check(t.n), ""});
  if (t.family == Family::B) {
    bool ok = true;
    std::string detail;
    try {
      b_prime_sequence(t.n);
    } catch (const ConsistencyError& e) {
      ok = false;
      detail = e.what();
    }
    checks.push_back({"b' relation", ok, detail});
  }
  if (t.family == Family::A || t.family == Family::C || t.family == Family::D) {
    checks.push_back({"palindromic", is_palindromic(rep.poly.coeffs()), ""});
  }
  bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
  switch (cfg.format) {
    case Format::json: {
      Json j;
      j["type"] = type_json(t);
      j["n"] = t.n;
      j["K"] = K;
      Json counts = Json::array();
      for (auto c : rep.census.counts) counts.push_back(std::to_string(c));
      j["census"] = counts;
      j["coeffs"] = coeff_strings(rep.poly);
      Json cj = Json::array();
      for (const auto& c : checks) cj.push_back(Json{{"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
      j["checks"] = cj;
      j["ok"] = all;
      out << j.dump() << '\n';
      break;
    }
    case Format::csv:
      out << "check,ok,detail\n";
      for (const auto& c : checks) out << c.name << ',' << bool_str(c.ok) << ",\"" << c.detail << "\"\n";
      break;
    case Format::text:
      for (const auto& c : checks) {
        out << (c.ok ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
      }
      break;
  }
  if (!all) {
    for (const auto& c : checks) {
      if (!c.ok) err << "verify " << t.name() << ": " << c.name << " failed" << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
    }
    return 1;
  }
  return 0;
}

inline int cmd_report(const RunConfig& cfg, std::ostream& out) {
  if (cfg.type_tag.empty()) throw InputError("--type is required");
  LatticeType probe = LatticeType::parse(cfg.type_tag, cfg.n);
  if (!is_classical(probe.family)) throw InputError("report runs over a range of n; use a classical type A-D");
  if (!cfg.n) throw InputError("report needs --n (upper end of the range)");
  const int lo = min_rank(probe.family);
  const int hi = *cfg.n;
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);
  struct Row {
    int n;
    Analysis a;
  };
  auto rows_parts = parallel_chunks(count, thread_count(), [&](std::size_t b, std::size_t e) {
    std::vector<Row> rows;
    for (std::size_t i = b; i < e; ++i) {
      int n = lo + static_cast<int>(i);
      rows.push_back({n, analyze_poly(coordinator(probe.family, n).poly, cfg.max_order, false)});
    }
    return rows;
  });
  std::vector<Row> rows;
  for (auto& part : rows_parts)
    for (auto& r : part) rows.push_back(std::move(r));
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.n < b.n; });
  const std::string pf_key = "pf" + std::to_string(cfg.max_order);
  switch (cfg.format) {
    case Format::json: {
      Json arr = Json::array();
      for (const auto& r : rows) {
        Json j;
        j["n"] = r.n;
        j["degree"] = r.a.roots.degree;
        j["distinct_real"] = r.a.roots.distinct_real;
        j["real_rooted"] = r.a.roots.is_real_rooted;
        j["log_concave"] = r.a.log_concave.holds;
        j["unimodal"] = r.a.unimodal.holds;
        j[pf_key] = r.a.pf.holds;
        arr.push_back(j);
      }
      out << Json{{"type", family_name(probe.family)}, {"rows", arr}}.dump() << '\n';
      break;
    }
    case Format::csv:
    case Format::text:
      out << "n,degree,distinct_real,real_rooted,log_concave,unimodal," << pf_key << '\n';
      for (const auto& r : rows) {
        out << r.n << ',' << r.a.roots.degree << ',' << r.a.roots.distinct_real << ','
            << bool_str(r.a.roots.is_real_rooted) << ',' << bool_str(r.a.log_concave.holds) << ','
            << bool_str(r.a.unimodal.holds) << ',' << bool_str(r.a.pf.holds) << '\n';
      }
      break;
  }
  return 0;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"coordinator polynomials of root lattices", "coordlat"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--type", cfg.type_tag, "lattice type: A|B|C|D|G2|F4|E6|E7|E8");
  app.add_option("--n", cfg.n, "rank (upper end of the range for report)");
  app.add_option("--K", cfg.K, "maximum word length for enumeration")->check(CLI::NonNegativeNumber);
  app.add_option("--max-order", cfg.max_order, "largest Toeplitz minor order")->check(CLI::PositiveNumber);
  app.add_option("--width", cfg.width, "refinement width for trig brackets (rational)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", cfg.out_path, "output file (default stdout)");
  app.add_option("--memory-budget", cfg.memory_budget_mib, "enumeration memory budget in MiB")
      ->check(CLI::PositiveNumber);
  app.add_flag("--allow-expensive", cfg.allow_expensive, "permit E6/E7/E8 enumeration");
  app.add_subcommand("gen", "print coordinator coefficients");
  app.add_subcommand("analyze", "root report and coefficient diagnostics")
      ->add_option("--expect", cfg.expect, "exit 1 unless this property holds")
      ->check(CLI::IsMember({"real-rooted", "log-concave", "unimodal", "pf"}));
  app.add_subcommand("roots", "isolating intervals (and trig brackets for type D)");
  auto* enumerate = app.add_subcommand("enumerate", "word-length census");
  enumerate->add_option("--generators", cfg.generators_path, "read the generator table from a file");
  enumerate->add_option("--export-generators", cfg.export_generators_path, "write the generator table to a file");
  app.add_subcommand("verify", "enumeration oracle and identity checks");
  app.add_subcommand("report", "batch table over n = min..N");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) {
      err << "cannot write " << cfg.out_path << '\n';
      return 2;
    }
    sink = &file;
  }
  try {
    if (cfg.subcommand == "gen") return detail::cmd_gen(cfg, *sink);
    if (cfg.subcommand == "analyze") return detail::cmd_analyze(cfg, *sink, err);
    if (cfg.subcommand == "roots") return detail::cmd_roots(cfg, *sink);
    if (cfg.subcommand == "enumerate") return detail::cmd_enumerate(cfg, *sink);
    if (cfg.subcommand == "verify") return detail::cmd_verify(cfg, *sink, err);
    if (cfg.subcommand == "report") return detail::cmd_report(cfg, *sink);
  } catch (const EnumerationBudgetError& e) {
    err << e.what() << "; partial census:";
    for (auto c : e.partial().counts) err << ' ' << c;
    err << '\n';
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "check failed: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace coordlat::cli
