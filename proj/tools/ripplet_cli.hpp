#pragma once

// Command-line front end. run_cli() holds all logic so tests can drive it
// with in-memory streams.
//
// Exit codes: 0 ok, 1 numerical failure, 2 bad parameter, 3 I/O, 4 structural
// mismatch, 5 failed --check / --verify-pr.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "reference_tables.hpp"
#include "ripplet/io.hpp"
#include "ripplet/ripplet.hpp"

namespace ripplet::cli {

enum exit_code : int { ok = 0, numeric = 1, usage = 2, io_failure = 3, structural = 4, check_failed = 5 };

struct LevelRange {
  int lo = 0;
  int hi = 0;
};

/// "3" or "0..8".
inline LevelRange parse_level_range(const std::string& s) {
  auto to_int = [&](const std::string& t) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw domain_error("bad level '" + s + "' (expected m or lo..hi)");
    }
  };
  const auto dots = s.find("..");
  LevelRange r;
  if (dots == std::string::npos) {
    r.lo = r.hi = to_int(s);
  } else {
    r.lo = to_int(s.substr(0, dots));
    r.hi = to_int(s.substr(dots + 2));
  }
  if (r.lo < 0 || r.hi < r.lo) throw domain_error("bad level range '" + s + "'");
  return r;
}

struct Options {
  int n = 3;
  std::string m = "0";
  double mu = 1.1;
  int depth = 8;
  std::optional<int> resolution;
  int levels = 3;
  double tau = 1e-8;
  std::string format = "csv";
  std::string out_path;
  std::string in_path;
  bool check = false;
  bool compare_stationary = false;
  bool verify_pr = false;
  bool bspline = false;
  bool stationary = false;
};

namespace detail {

inline int single_level(const Options& o) {
  const LevelRange r = parse_level_range(o.m);
  if (r.lo != r.hi) throw domain_error("this command takes a single level --m");
  return r.lo;
}

inline CascadeConfig cascade_config(const Options& o) {
  CascadeConfig c{o.depth, Seed::hat};
  c.validate();
  return c;
}

inline int resolution_for(const Options& o, int m, const CascadeConfig& c) {
  return o.resolution ? *o.resolution : default_resolution(m, c);
}

inline io::Metadata metadata(const Options& o, std::optional<int> m, bool cascade, bool conv) {
  io::Metadata md;
  md.n = o.n;
  md.m = m;
  md.mu = o.mu;
  if (cascade) {
    md.k = o.depth;
    md.K = m ? std::optional<int>(resolution_for(o, *m, cascade_config(o))) : std::nullopt;
  }
  if (conv) md.convention = Convention{};
  return md;
}

/// Routes artifact text to --out or to `out`.
inline void emit(const Options& o, std::ostream& out, const std::function<void(std::ostream&)>& writer) {
  if (o.out_path.empty()) {
    writer(out);
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw io_error("cannot open '" + o.out_path + "' for writing");
  writer(f);
  if (!f) throw io_error("write to '" + o.out_path + "' failed");
}

inline std::ifstream open_input(const Options& o) {
  if (o.in_path.empty()) throw io_error("--in is required");
  std::ifstream f(o.in_path, std::ios::binary);
  if (!f) throw io_error("cannot open '" + o.in_path + "'");
  return f;
}

inline FilterBankFamily family_for(const Options& o, bool stationary) {
  return stationary ? FilterBankFamily::stationary(o.n) : FilterBankFamily::nonstationary(o.n, o.mu);
}

inline void write_sampled(const Options& o, std::ostream& out, const SampledFunction& f, int m,
                          const std::vector<std::pair<std::string, SampledFunction>>& extra = {}) {
  const io::Format fmt = io::parse_format(o.format);
  emit(o, out, [&](std::ostream& os) {
    if (fmt == io::Format::csv) {
      if (extra.empty()) {
        io::write_sampled_csv(os, f);
      } else {
        std::vector<std::string> names{"value"};
        std::vector<SampledFunction> fs{f};
        for (const auto& [name, g] : extra) {
          names.push_back(name);
          fs.push_back(g);
        }
        io::write_sampled_columns_csv(os, names, fs);
      }
    } else {
      io::json j = io::sampled_json(f, metadata(o, m, true, false));
      for (const auto& [name, g] : extra) j[name] = io::sampled_json(g, metadata(o, m, true, false));
      io::write_json(os, j);
    }
  });
}

}  // namespace detail

// ---------------------------------------------------------------------------
// commands

inline int cmd_mask(const Options& o, std::ostream& out, std::ostream& err) {
  const LevelRange r = parse_level_range(o.m);
  std::map<int, CoeffSeq> table;
  for (int m = r.lo; m <= r.hi; ++m) table[m] = nonstationary_mask({o.n, m, o.mu});
  const io::Format fmt = io::parse_format(o.format);
  detail::emit(o, out, [&](std::ostream& os) {
    if (fmt == io::Format::csv) io::write_level_table_csv(os, table);
    else io::write_json(os, io::level_table_json(table, detail::metadata(o, std::nullopt, false, false)));
  });
  if (!o.check) return ok;
  if (o.n != 3 || o.mu != 1.1) throw domain_error("--check compares against tabulated values for n=3, mu=1.1 only");
  int bad = 0;
  for (int m = r.lo; m <= std::min(r.hi, 8); ++m)
    for (int alpha = 0; alpha < 3; ++alpha) {
      const double want = reference::mask_table[static_cast<std::size_t>(alpha)][static_cast<std::size_t>(m)];
      const double got = table[m][alpha];
      if (std::abs(got - want) > reference::four_digit_tol) {
        err << "mismatch m=" << m << " alpha=" << alpha << ": " << io::num(got) << " vs " << want << '\n';
        ++bad;
      }
    }
  err << (bad ? "check FAILED" : "check passed") << " (" << bad << " mismatches)\n";
  return bad ? check_failed : ok;
}

inline int cmd_phi(const Options& o, std::ostream& out, std::ostream&) {
  const int m = detail::single_level(o);
  const CascadeConfig c = detail::cascade_config(o);
  const int K = detail::resolution_for(o, m, c);
  const SampledFunction phi = cascade_evaluate({o.n, m, o.mu}, c, K);
  std::vector<std::pair<std::string, SampledFunction>> extra;
  if (o.bspline) extra.emplace_back("bspline", sample_bspline(o.n, m, K));
  detail::write_sampled(o, out, phi, m, extra);
  return ok;
}

inline int cmd_psi(const Options& o, std::ostream& out, std::ostream&) {
  const int m = detail::single_level(o);
  const CascadeConfig c = detail::cascade_config(o);
  const int K = o.resolution ? *o.resolution : default_resolution(m + 1, c);
  detail::write_sampled(o, out, sample_prewavelet(o.n, m, o.mu, c, K), m);
  return ok;
}

inline int cmd_phidual(const Options& o, std::ostream& out, std::ostream&) {
  const int m = detail::single_level(o);
  MaskParams{o.n, m, o.mu}.validate();
  const CascadeConfig c = detail::cascade_config(o);
  const int K = detail::resolution_for(o, m, c);
  detail::write_sampled(o, out, cascade(DualMasks{o.n, o.mu}, m, c, K), m);
  return ok;
}

inline int cmd_psidual(const Options& o, std::ostream& out, std::ostream&) {
  const int m = detail::single_level(o);
  MaskParams{o.n, m, o.mu}.validate();
  const CascadeConfig c = detail::cascade_config(o);
  const int K = o.resolution ? *o.resolution : default_resolution(m + 1, c);
  const DualMasks duals{o.n, o.mu};
  const FilterQuartet f = make_quartet(ripplet::detail::ripplet_mask(o.n, m, o.mu), duals.mask(m), m);
  const SampledFunction phid = cascade(duals, m + 1, c, K);
  detail::write_sampled(o, out, sample_prewavelet(f.q_dual, phid, m), m);
  return ok;
}

inline int cmd_biorth(const Options& o, std::ostream& out, std::ostream& err) {
  const LevelRange r = parse_level_range(o.m);
  struct Row {
    int level;
    long index;
    double solver;
    std::optional<double> closed;
    std::optional<double> tabulated;
    std::string notes;
  };
  std::vector<Row> rows;
  double worst_dev = 0.0;
  int mismatches = 0;
  const bool has_table = o.n == 3 && o.mu == 1.1;
  for (int m = r.lo; m <= r.hi; ++m) {
    const Mask a = nonstationary_mask({o.n, m, o.mu});
    const BezoutSolution sol = bezout_solve(a, default_dual_length(o.n, m));
    const bool have_closed = o.n == 3 && m >= 1;
    const CoeffSeq closed = have_closed ? closed_form_dual_n3(m, o.mu) : CoeffSeq{};
    const long shown = o.n == 3 ? std::min<long>(7, sol.coefficients.last()) : sol.coefficients.last();
    for (long alpha = 0; alpha <= shown; ++alpha) {
      Row row{m, alpha, sol.coefficients[alpha], std::nullopt, std::nullopt, {}};
      if (have_closed) {
        row.closed = closed[alpha];
        worst_dev = std::max(worst_dev, std::abs(*row.closed - row.solver));
      }
      if (has_table && m <= 8 && alpha < 8) {
        const double p = reference::dual_table[static_cast<std::size_t>(alpha)][static_cast<std::size_t>(m)];
        row.tabulated = p;
        const bool match = std::abs(p - row.solver) <= reference::four_digit_tol;
        if (!match) {
          if (reference::dual_column_excluded(m)) {
            row.notes = "tabulated value differs (column not compared)";
          } else {
            row.notes = "MISMATCH vs tabulated value";
            ++mismatches;
          }
        }
      }
      rows.push_back(std::move(row));
    }
  }
  const io::Format fmt = io::parse_format(o.format);
  auto opt = [](const std::optional<double>& v) { return v ? io::num(*v) : std::string{}; };
  detail::emit(o, out, [&](std::ostream& os) {
    if (fmt == io::Format::csv) {
      os << "level,index,solver,closed_form,deviation,tabulated,notes\n";
      for (const auto& rw : rows)
        os << rw.level << ',' << rw.index << ',' << io::num(rw.solver) << ',' << opt(rw.closed) << ','
           << (rw.closed ? io::num(std::abs(*rw.closed - rw.solver)) : std::string{}) << ',' << opt(rw.tabulated) << ','
           << rw.notes << '\n';
    } else {
      io::json j{{"metadata", io::to_json(detail::metadata(o, std::nullopt, false, false))},
                 {"max_deviation", worst_dev},
                 {"rows", io::json::array()}};
      for (const auto& rw : rows) {
        io::json e{{"level", rw.level}, {"index", rw.index}, {"solver", rw.solver}};
        e["closed_form"] = rw.closed ? io::json(*rw.closed) : io::json(nullptr);
        e["deviation"] = rw.closed ? io::json(std::abs(*rw.closed - rw.solver)) : io::json(nullptr);
        e["tabulated"] = rw.tabulated ? io::json(*rw.tabulated) : io::json(nullptr);
        e["notes"] = rw.notes;
        j["rows"].push_back(std::move(e));
      }
      io::write_json(os, j);
    }
  });
  if (!o.check) return ok;
  if (!has_table) throw domain_error("--check compares against tabulated values for n=3, mu=1.1 only");
  const bool dev_ok = worst_dev < 1e-9;
  err << "max solver/closed-form deviation " << io::num(worst_dev) << '\n';
  err << (mismatches == 0 && dev_ok ? "check passed" : "check FAILED") << " (" << mismatches
      << " tabulated mismatches)\n";
  return mismatches == 0 && dev_ok ? ok : check_failed;
}

inline int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  const int m0 = detail::single_level(o);
  if (o.levels < 1) throw domain_error("--levels must be >= 1");
  std::ifstream in = detail::open_input(o);
  const Signal x = io::read_signal(in);
  const FilterBankFamily fam = detail::family_for(o, o.stationary);
  const Decomposition d = analyze(x, m0, m0 + o.levels, fam);
  const io::Format fmt = io::parse_format(o.format);
  detail::emit(o, out, [&](std::ostream& os) {
    if (fmt == io::Format::csv) io::write_decomposition_csv(os, d);
    else io::write_json(os, io::decomposition_json(d, detail::metadata(o, m0, false, true)));
  });
  int rc = ok;
  if (o.verify_pr) {
    const Signal y = synthesize(d);
    const double e = max_abs_diff(x, y);
    const double bound = 1e-10 * x.max_abs();
    err << "max round-trip error " << io::num(e) << " (bound " << io::num(bound) << ")\n";
    if (e > bound) rc = check_failed;
  }
  if (o.compare_stationary) {
    const Decomposition ns = analyze(x, m0, m0 + o.levels, detail::family_for(o, false));
    const Decomposition st = analyze(x, m0, m0 + o.levels, detail::family_for(o, true));
    err << "nonzero coefficients (tau " << io::num(o.tau) << "): nonstationary " << count_nonzero(ns, o.tau)
        << ", stationary " << count_nonzero(st, o.tau) << '\n';
  }
  return rc;
}

inline int cmd_synthesize(const Options& o, std::ostream& out, std::ostream&) {
  const int m0 = detail::single_level(o);
  std::ifstream in = detail::open_input(o);
  const io::DecompositionData data = io::read_decomposition(in);
  if (o.levels < 1) throw domain_error("--levels must be >= 1");
  const int base = m0;
  const int top = data.top_level.value_or(m0 + o.levels);
  bool stationary = o.stationary;
  if (data.family) stationary = *data.family == "stationary";
  const Decomposition d = io::to_decomposition(data, base, top, detail::family_for(o, stationary));
  const Signal y = synthesize(d);
  const io::Format fmt = io::parse_format(o.format);
  detail::emit(o, out, [&](std::ostream& os) {
    if (fmt == io::Format::csv) {
      io::write_signal_csv(os, y);
    } else {
      io::json arr = io::json::array();
      for (long i = y.start; i <= y.last(); ++i) arr.push_back({{"index", i}, {"value", y[i]}});
      io::write_json(os, arr);
    }
  });
  return ok;
}

// ---------------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ripplet: nonstationary ripplet masks, prewavelets and biorthogonal filter banks"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sc) {
    sc->add_option("--n", o.n, "degree parameter n (>= 2)");
    sc->add_option("--m", o.m, "level m, or a range lo..hi where accepted");
    sc->add_option("--mu", o.mu, "tension parameter mu (> 1)");
    sc->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sc->add_option("--out", o.out_path, "output file (default stdout)");
  };
  auto sampled = [&](CLI::App* sc) {
    sc->add_option("--depth", o.depth, "cascade depth k");
    sc->add_option("--resolution", o.resolution, "grid level K (step 2^-K)");
  };

  std::map<std::string, std::function<int()>> handlers;
  auto add = [&](const char* name, const char* help, auto fn, bool with_cascade) {
    CLI::App* sc = app.add_subcommand(name, help);
    common(sc);
    if (with_cascade) sampled(sc);
    handlers[name] = [&o, &out, &err, fn] { return fn(o, out, err); };
    return sc;
  };

  CLI::App* mask = add("mask", "mask coefficients per level", cmd_mask, false);
  mask->add_flag("--check", o.check, "compare with the tabulated n=3, mu=1.1 values");
  CLI::App* phi = add("phi", "cascade samples of phi^(n,m)", cmd_phi, true);
  phi->add_flag("--bspline", o.bspline, "add a B^(n,m) column");
  add("psi", "prewavelet samples psi^(n,m)", cmd_psi, true);
  add("phidual", "cascade samples of the dual refinable function", cmd_phidual, true);
  add("psidual", "samples of the dual wavelet", cmd_psidual, true);
  CLI::App* bi = add("biorth", "dual masks: solver, closed form and tabulated values", cmd_biorth, false);
  bi->add_flag("--check", o.check, "fail unless tabulated digits and closed form agree");
  CLI::App* an = add("analyze", "multilevel decomposition of a signal file", cmd_analyze, false);
  an->add_option("--in", o.in_path, "input signal (CSV index,value or JSON)")->required();
  an->add_option("--levels", o.levels, "number of levels");
  an->add_option("--tau", o.tau, "threshold for nonzero counts");
  an->add_flag("--verify-pr", o.verify_pr, "synthesize again and report the round-trip error");
  an->add_flag("--compare-stationary", o.compare_stationary, "report nonzero counts for both families");
  an->add_flag("--stationary", o.stationary, "use the stationary B-spline family");
  CLI::App* sy = add("synthesize", "reconstruct a signal from a decomposition file", cmd_synthesize, false);
  sy->add_option("--in", o.in_path, "decomposition (CSV level,kind,index,value or JSON)")->required();
  sy->add_option("--levels", o.levels, "number of levels when the file does not say");
  sy->add_flag("--stationary", o.stationary, "use the stationary B-spline family");

  // biorth defaults to the full tabulated range
  bi->preparse_callback([&](std::size_t) { o.m = "0..8"; });

  std::vector<const char*> argv{"ripplet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? ok : usage;
  }

  try {
    for (const auto& [name, fn] : handlers)
      if (app.got_subcommand(name)) return fn();
    return usage;
  } catch (const io_error& e) {
    err << "error: " << e.what() << '\n';
    return io_failure;
  } catch (const dimension_error& e) {
    err << "error: " << e.what() << '\n';
    return structural;
  } catch (const iteration_limit_error& e) {
    err << "error: " << e.what() << " (last update " << e.last_residual() << ")\n";
    return numeric;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
}

}  // namespace ripplet::cli
