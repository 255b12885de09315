#pragma once

// Command-line front end. run_cli never exits the process; it returns the
// exit code so tests can drive it in-process.

#include <iostream>
#include <map>
#include <tuple>

#include <CLI11.hpp>

#include "heron/brute.hpp"
#include "heron/report.hpp"

namespace heron {

enum ExitCode { kExitOk = 0, kExitInvalid = 1, kExitUndecided = 2, kExitMismatch = 3 };

struct RunConfig {
  uint64_t seed = 0;
  std::optional<int> depth;
  std::string format = "text";
  unsigned workers = 1;

  SelmerConfig selmer() const {
    SelmerConfig s;
    s.solve.seed = seed;
    s.solve.depth = depth;
    s.workers = workers;
    return s;
  }
};

inline const char* kCsvHeader = "n,q,k,dimension,rank_bound,theorem_applicable,agrees";

namespace detail {

inline std::string csv_row(const HeronCurve& c, const SelmerGroup& g, const Comparison& cmp) {
  std::ostringstream s;
  s << c.n << ',' << c.q << ',' << c.primes.size() << ',' << g.dimension << ',' << g.rank_upper_bound << ','
    << (cmp.applicable ? "true" : "false") << ',' << (cmp.applicable ? (cmp.agrees ? "true" : "false") : "na");
  return s.str();
}

inline void dump(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

inline int cmd_compute(uint64_t n, int m, const RunConfig& rc, std::ostream& out) {
  auto c = new_curve(n, m);
  auto g = compute_selmer(c, rc.selmer());
  auto cmp = compare(c, g, classify_theorem(c));
  if (rc.format == "json") {
    ordered_json verdicts = ordered_json::array();
    for (auto& pv : g.verdicts) verdicts.push_back(pair_verdict_json(pv));
    dump(out, {{"curve", curve_json(c)}, {"verdicts", verdicts}, {"selmer", selmer_json(g, cmp)}});
  } else if (rc.format == "csv") {
    out << kCsvHeader << '\n' << csv_row(c, g, cmp) << '\n';
  } else {
    out << "curve " << c.label() << " q=" << c.q << " discriminant=" << c.discriminant << '\n';
    out << "pairs " << g.verdicts.size() << ", members " << g.members.size() << '\n';
    for (auto& pv : g.verdicts) {
      out << "  " << pv.pair.str() << ' ' << status_name(pv.status);
      if (pv.status == Status::Insolvable) {
        const auto& last = pv.verdicts.back();
        out << " at " << last.place.str();
        if (last.refutation) out << " by " << last.refutation->criterion;
      }
      out << '\n';
    }
    out << "selmer " << pairs_str(g.members) << '\n';
    out << "dimension " << g.dimension << '\n';
    out << "quotient " << pairs_str(g.quotient_generators) << '\n';
    out << "rank_upper_bound " << g.rank_upper_bound << '\n';
    out << "theorem " << (cmp.applicable ? (cmp.agrees ? "agrees" : "disagrees") : "not applicable") << '\n';
  }
  return kExitOk;
}

/// Parses "n=79,m-parity=odd".
inline std::pair<uint64_t, int> parse_row(const std::string& text) {
  uint64_t n = 0;
  int parity = -1;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw Error(Errc::InvalidArgument, "bad --row item '" + part + "'");
    std::string k = part.substr(0, eq), v = part.substr(eq + 1);
    if (k == "n") n = std::stoull(v);
    else if (k == "m-parity") parity = v == "odd" ? 1 : v == "even" ? 0 : -1;
    else throw Error(Errc::InvalidArgument, "unknown --row key '" + k + "'");
  }
  if (n == 0 || parity < 0) throw Error(Errc::InvalidArgument, "--row needs n=<n>,m-parity=odd|even");
  return {n, parity};
}

inline int cmd_verify_tables(const std::string& fixtures, const std::string& row_filter, std::optional<int> only_m,
                             const RunConfig& rc, std::ostream& out) {
  auto rows = load_tables(fixtures);
  if (!row_filter.empty()) {
    auto [n, parity] = parse_row(row_filter);
    std::erase_if(rows, [&](const TableRow& r) { return r.n != n || r.parity != parity; });
    if (rows.empty()) throw Error(Errc::InvalidArgument, "no fixture row " + row_filter);
  }
  bool all = true;
  ordered_json report = ordered_json::array();
  if (rc.format == "csv") out << "table,n,m,dimension,matches\n";
  for (auto& row : rows) {
    for (int m : row.m_values) {
      if (only_m && *only_m != m) continue;
      auto c = new_curve(row.n, m);
      auto g = compute_selmer(c, rc.selmer());
      auto chk = check_row(row, m, g, c);
      all = all && chk.agrees;
      std::vector<DescentPair> table_gens;
      for (auto& [a, b] : row.generators) table_gens.push_back(make_pair(c, a, b));
      if (rc.format == "json") {
        ordered_json j = {{"table", row.table},      {"n", row.n},
                          {"m", m},                  {"matches", chk.agrees},
                          {"engine", pairs_json(g.quotient_generators)}, {"published", pairs_json(table_gens)}};
        if (!chk.agrees) {
          j["missing"] = pairs_json(chk.missing);
          j["extra"] = pairs_json(chk.extra);
        }
        report.push_back(j);
      } else if (rc.format == "csv") {
        out << row.table << ',' << row.n << ',' << m << ',' << g.dimension << ',' << (chk.agrees ? "true" : "false")
            << '\n';
      } else {
        out << "table " << row.table << " n=" << row.n << " m=" << m << ' ' << (chk.agrees ? "match" : "MISMATCH")
            << " engine " << pairs_str(g.quotient_generators) << " published " << pairs_str(table_gens) << '\n';
        if (!chk.agrees) {
          out << "  missing from engine " << pairs_str(chk.missing) << '\n';
          out << "  not in published " << pairs_str(chk.extra) << '\n';
        }
      }
    }
  }
  if (rc.format == "json") dump(out, report);
  return all ? kExitOk : kExitMismatch;
}

inline int cmd_scan(uint64_t n_min, uint64_t n_max, int m, const RunConfig& rc, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (uint64_t n = std::max<uint64_t>(n_min, 3) | 1; n <= n_max; n += 2) {
    HeronCurve c;
    try {
      c = new_curve(n, m);
    } catch (const Error&) {
      continue;
    }
    auto g = compute_selmer(c, rc.selmer());
    out << csv_row(c, g, compare(c, g, classify_theorem(c))) << '\n';
  }
  return kExitOk;
}

inline int cmd_points(uint64_t n, int m, uint64_t num_bound, uint64_t den_bound, const RunConfig& rc,
                      std::ostream& out) {
  auto c = new_curve(n, m);
  auto g = compute_selmer(c, rc.selmer());
  auto pts = search_points(c, num_bound, den_bound, rc.workers);
  auto img = verify_descent_image(c, pts, g);
  bool certified = img.rank_lower_bound == g.rank_upper_bound;
  if (rc.format == "json") {
    ordered_json ps = ordered_json::array();
    for (auto& p : pts) ps.push_back(point_json(p));
    dump(out, {{"curve", curve_json(c)},
               {"points", ps},
               {"image_generators", pairs_json(img.generators)},
               {"rank_lower_bound", img.rank_lower_bound},
               {"rank_upper_bound", g.rank_upper_bound},
               {"certified", certified}});
  } else {
    out << "curve " << c.label() << '\n';
    out << "points " << pts.size() << '\n';
    for (size_t i = 0; i < pts.size(); ++i) out << "  " << point_str(pts[i]) << " -> " << img.images[i].str() << '\n';
    out << "image " << pairs_str(img.generators) << '\n';
    out << img.rank_lower_bound << " <= rank <= " << g.rank_upper_bound << (certified ? " (certified)" : "") << '\n';
  }
  return kExitOk;
}

/// Local square class of b at l, as (valuation parity, unit class).
inline std::pair<int, int> local_class(const BigInt& b, uint64_t l) {
  int v = vl(b, l);
  BigInt u = strip(b, l, v);
  if (l == 2) return {v & 1, int(mod_floor(u, 8).convert_to<int>())};
  return {v & 1, legendre(u, l)};
}

struct OracleTally {
  uint64_t comparisons = 0, mismatches = 0, undecided = 0, brute_runs = 0;
};

/// Solver against brute oracle for every pair at every place l <= max_l.
inline OracleTally oracle_check_curve(const HeronCurve& c, uint64_t max_l, const RunConfig& rc, std::ostream* log) {
  OracleTally t;
  std::map<std::tuple<uint64_t, int, int, int, int>, Status> memo;
  for (auto& pair : all_pairs(c)) {
    auto h = build(c, pair);
    for (auto& pl : places_to_check(c)) {
      if (pl.real || pl.l > max_l) continue;
      int depth = rc.depth ? *rc.depth : default_depth(c, h, pl.l);
      auto mine = pl.l == 2 ? solvable_2adic(h, depth)
                            : solvable_odd(h, pl.l, derive_seed(rc.seed, pair, pl.l), depth);
      auto [v1, u1] = local_class(h.b1, pl.l);
      auto [v2, u2] = local_class(h.b2, pl.l);
      auto key = std::make_tuple(pl.l, v1, u1, v2, u2);
      auto it = memo.find(key);
      if (it == memo.end()) {
        ++t.brute_runs;
        it = memo.emplace(key, brute_oracle(h, pl.l, depth).status).first;
      }
      ++t.comparisons;
      if (mine.status == Status::Undecided || it->second == Status::Undecided) ++t.undecided;
      else if (mine.status != it->second) ++t.mismatches;
      if (log && (mine.status != it->second || mine.status == Status::Undecided))
        *log << "  " << c.label() << ' ' << pair.str() << " at " << pl.l << ": solver " << status_name(mine.status)
             << ", brute " << status_name(it->second) << '\n';
    }
  }
  return t;
}

inline int cmd_oracle_check(std::optional<uint64_t> n, std::optional<int> m, const std::string& fixtures,
                            uint64_t max_l, const RunConfig& rc, std::ostream& out) {
  std::vector<std::pair<uint64_t, int>> curves;
  if (n) {
    if (!m) throw Error(Errc::InvalidArgument, "--n needs --m");
    curves.push_back({*n, *m});
  } else {
    for (auto& row : load_tables(fixtures))
      for (int mm : row.m_values)
        if (!m || *m == mm) curves.push_back({row.n, mm});
  }
  OracleTally total;
  for (auto [nn, mm] : curves) {
    auto c = new_curve(nn, mm);
    auto t = oracle_check_curve(c, max_l, rc, &out);
    out << c.label() << " comparisons " << t.comparisons << " mismatches " << t.mismatches << " undecided "
        << t.undecided << '\n';
    total.comparisons += t.comparisons;
    total.mismatches += t.mismatches;
    total.undecided += t.undecided;
  }
  out << "total comparisons " << total.comparisons << " mismatches " << total.mismatches << " undecided "
      << total.undecided << '\n';
  if (total.mismatches) return kExitMismatch;
  return total.undecided ? kExitUndecided : kExitOk;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"2-Selmer groups of y^2 = x(x - 2^m n^2)(x + 2^m) by explicit 2-descent"};
  app.require_subcommand(1);
  RunConfig rc;
  uint64_t n = 0, n_min = 0, n_max = 0, num_bound = 10000, den_bound = 100, max_l = 50;
  int m = 0, depth = 0;
  std::string row, fixtures = default_tables_path();

  auto common = [&](CLI::App* s) {
    s->add_option("--format", rc.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    s->add_option("--seed", rc.seed, "random seed");
    s->add_option("--depth", depth, "lifting depth for every place")->check(CLI::PositiveNumber);
    s->add_option("--workers", rc.workers, "worker threads")->check(CLI::Range(1u, 256u));
  };
  auto* compute = app.add_subcommand("compute", "Selmer group of one curve");
  compute->add_option("--n", n)->required();
  compute->add_option("--m", m)->required();
  common(compute);

  auto* verify = app.add_subcommand("verify-tables", "recompute the published tables");
  verify->add_option("--row", row, "single row, e.g. n=79,m-parity=odd");
  auto* verify_m = verify->add_option("--m", m, "restrict to one m");
  verify->add_option("--fixtures", fixtures, "table file");
  common(verify);

  auto* scan = app.add_subcommand("scan", "CSV over a range of n");
  scan->add_option("n_min", n_min)->required();
  scan->add_option("n_max", n_max)->required();
  scan->add_option("--m", m)->required();
  common(scan);

  auto* points = app.add_subcommand("points", "point search and rank bounds");
  points->add_option("--n", n)->required();
  points->add_option("--m", m)->required();
  points->add_option("--num-bound", num_bound);
  points->add_option("--den-bound", den_bound)->check(CLI::PositiveNumber);
  common(points);

  auto* oracle = app.add_subcommand("oracle-check", "solver against the brute-force oracle");
  auto* oracle_n = oracle->add_option("--n", n);
  auto* oracle_m = oracle->add_option("--m", m);
  oracle->add_option("--fixtures", fixtures, "table file");
  oracle->add_option("--max-l", max_l, "largest place checked");
  common(oracle);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  }
  if (depth > 0) rc.depth = depth;

  try {
    if (*compute) return detail::cmd_compute(n, m, rc, out);
    if (*verify)
      return detail::cmd_verify_tables(fixtures, row, verify_m->count() ? std::optional<int>(m) : std::nullopt, rc,
                                       out);
    if (*scan) return detail::cmd_scan(n_min, n_max, m, rc, out);
    if (*points) return detail::cmd_points(n, m, num_bound, den_bound, rc, out);
    if (*oracle)
      return detail::cmd_oracle_check(oracle_n->count() ? std::optional<uint64_t>(n) : std::nullopt,
                                      oracle_m->count() ? std::optional<int>(m) : std::nullopt, fixtures, max_l, rc,
                                      out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.code() == Errc::UndecidedVerdict ? kExitUndecided : kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace heron
