#include "latinpat/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "latinpat/cache.hpp"
#include "latinpat/construct.hpp"

namespace latinpat::cli {

namespace {

class cache_mismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format;  // empty: the command's default
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string cache_dir;
  bool no_cache = false;
  bool verify_cache = false;
  std::string progress = "none";
  bool timing = false;
  int max_order = 0;
};

struct AvoidFlags {
  std::vector<std::string> both;
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<std::string> symbols;
};

std::vector<Permutation> parse_pattern_list(const std::vector<std::string>& values) {
  std::vector<Permutation> out;
  for (const auto& value : values) {
    std::stringstream ss(value);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      if (piece.empty()) continue;
      if (piece.size() > 9 || !std::all_of(piece.begin(), piece.end(), [](char c) { return c >= '1' && c <= '9'; })) {
        throw std::invalid_argument("patterns on the command line use the compact digit form (length <= 9): '" +
                                    piece + "'");
      }
      out.push_back(Permutation::parse(piece));
    }
  }
  return out;
}

Permutation parse_one_pattern(const std::string& value) {
  const auto list = parse_pattern_list({value});
  if (list.size() != 1) throw std::invalid_argument("expected exactly one pattern, got '" + value + "'");
  return list.front();
}

AvoidanceSpec build_spec(const AvoidFlags& f) {
  AvoidanceSpec spec;
  const auto both = parse_pattern_list(f.both);
  spec.rows = parse_pattern_list(f.rows);
  spec.cols = parse_pattern_list(f.cols);
  spec.symbols = parse_pattern_list(f.symbols);
  spec.rows.insert(spec.rows.end(), both.begin(), both.end());
  spec.cols.insert(spec.cols.end(), both.begin(), both.end());
  return spec.canonical();
}

void add_avoid_flags(CLI::App* cmd, AvoidFlags& f) {
  cmd->add_option("--avoid", f.both, "Patterns avoided in rows and columns (e.g. 123 or 123,321)");
  cmd->add_option("--avoid-rows", f.rows, "Patterns avoided in rows only");
  cmd->add_option("--avoid-cols", f.cols, "Patterns avoided in columns only");
  cmd->add_option("--avoid-symbols", f.symbols, "Patterns avoided by every symbol permutation");
}

EnumerationOptions make_options(const Globals& g, std::ostream& err) {
  EnumerationOptions o;
  o.jobs = std::max(1, g.jobs);
  if (g.max_order > 0) {
    o.limits.max_unrestricted_order = g.max_order;
    o.limits.max_restricted_order = g.max_order;
  }
  if (g.progress == "json") {
    o.progress = [&err](std::size_t done, std::size_t total) {
      err << json{{"event", "progress"}, {"done", done}, {"total", total}}.dump() << '\n';
    };
  } else if (g.progress == "text") {
    o.progress = [&err](std::size_t done, std::size_t total) { err << "progress " << done << '/' << total << '\n'; };
  }
  return o;
}

std::optional<ResultCache> open_cache(const Globals& g) {
  if (g.no_cache) return std::nullopt;
  std::string dir = g.cache_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv(kCacheDirEnv)) dir = env;
  }
  if (dir.empty()) return std::nullopt;
  return ResultCache(dir);
}

// Serves key from the cache, or computes and records it. With
// --verify-cache a hit is recomputed and must match exactly.
json cached(const Globals& g, const CacheKey& key, const std::function<json()>& compute) {
  const auto cache = open_cache(g);
  if (!cache) return compute();
  const auto hit = cache->lookup(key);
  if (hit && !g.verify_cache) return *hit;
  json value = compute();
  if (hit) {
    if (*hit != value) {
      throw cache_mismatch("cache entry for " + key.operation + " at order " + std::to_string(key.order) + " (" +
                           key.spec_digest + ") differs from recomputation");
    }
  } else {
    cache->store(key, value);
  }
  return value;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string pick_format(const Globals& g, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = g.format.empty() ? fallback : g.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw std::invalid_argument("format '" + f + "' is not supported here (use " + list + ")");
}

void emit_squares(const std::vector<LatinSquare>& squares, const std::string& format, std::ostream& out) {
  for (std::size_t i = 0; i < squares.size(); ++i) {
    if (format == "json") {
      out << to_json(squares[i]).dump() << '\n';
    } else {
      if (i) out << '\n';
      out << serialize_square(squares[i]);
    }
  }
}

std::string list_text(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// ---------------------------------------------------------------------------

int do_count(const Globals& g, int order, const AvoidFlags& flags, std::ostream& out, std::ostream& err) {
  const auto spec = build_spec(flags);
  const auto format = pick_format(g, "json", {"json", "csv", "table"});
  const auto options = make_options(g, err);
  check_feasible(order, spec, options.limits);
  std::optional<CountResult> fresh;
  const json value = cached(g, {order, spec.digest(), "count"}, [&] {
    fresh = count_squares(order, spec, options);
    return to_json(*fresh);
  });
  const CountResult result = count_result_from_json(value);
  if (format == "csv") {
    out << count_csv(result);
  } else if (format == "table") {
    out << "order    " << result.order << "\nspec     " << spec.digest() << "\ncount    " << result.count
        << "\nnodes    " << result.nodes_explored << '\n';
  } else {
    json j = value;
    if (g.timing && fresh) j["elapsed_ms"] = std::chrono::duration<double, std::milli>(fresh->elapsed).count();
    out << j.dump(2) << '\n';
  }
  return kOk;
}

int do_enumerate(const Globals& g, int order, const AvoidFlags& flags, long long limit, std::ostream& out,
                 std::ostream& err) {
  const auto spec = build_spec(flags);
  const auto format = pick_format(g, "json", {"json", "grid"});
  const auto options = make_options(g, err);
  check_feasible(order, spec, options.limits);
  const auto tasks = partition_tasks(order, spec, resolve_split_depth(order, options));
  // Per-task buffers are flushed in task order, which is lexicographic.
  std::vector<std::vector<LatinSquare>> buffers(tasks.size());
  const TaskVisitor visit = [&](std::size_t t, const LatinSquare& s) { buffers[t].push_back(s); };
  run_tasks(tasks, options, &visit);
  long long emitted = 0;
  for (const auto& buffer : buffers) {
    for (const auto& s : buffer) {
      if (limit >= 0 && emitted >= limit) return kOk;
      if (format == "json") {
        out << to_json(s).dump() << '\n';
      } else {
        if (emitted) out << '\n';
        out << serialize_square(s);
      }
      ++emitted;
    }
  }
  return kOk;
}

int do_lambda(const Globals& g, int order, bool exhaustive, bool bounds, std::ostream& out, std::ostream& err) {
  const auto format = pick_format(g, "json", {"json", "csv", "table"});
  if (exhaustive && bounds) throw std::invalid_argument("choose one of --exhaustive and --bounds");
  if (!exhaustive && !bounds) {
    exhaustive = order <= kMaxExhaustiveLambdaOrder;
  }
  json value;
  if (exhaustive) {
    if (order > kMaxExhaustiveLambdaOrder) {
      throw feasibility_error("exhaustive lambda is limited to order " + std::to_string(kMaxExhaustiveLambdaOrder) +
                              "; use --bounds");
    }
    const auto options = make_options(g, err);
    value = cached(g, {order, "", "lambda-exhaustive"}, [&] { return to_json(compute_lambda_exhaustive(order, options)); });
  } else {
    value = to_json(lambda_bounds(order));
  }
  const auto report = lambda_report_from_json(value);
  if (format == "csv") {
    out << lambda_csv(report);
  } else if (format == "table") {
    out << "order        " << report.order << "\nlower bound  " << report.lower_bound << "\nupper bound  "
        << (report.upper_bound ? std::to_string(*report.upper_bound) : "-") << "\nexact        "
        << (report.exact_value ? std::to_string(*report.exact_value) : "-") << "\nmethod       "
        << to_string(report.method) << '\n';
  } else {
    out << value.dump(2) << '\n';
  }
  return kOk;
}

int do_wilf(const Globals& g, int length, int order, const std::string& mode, std::ostream& out, std::ostream& err) {
  const auto format = pick_format(g, "json", {"json", "csv", "table"});
  WilfOptions wilf;
  if (mode == "per-pattern") {
    wilf.mode = WilfMode::per_pattern;
  } else if (mode != "single-pass") {
    throw std::invalid_argument("unknown mode '" + mode + "'");
  }
  const auto options = make_options(g, err);
  if (length < 1 || order < 1) throw std::invalid_argument("length and order must be >= 1");
  if (length > wilf.max_length || order > wilf.max_order) {
    throw feasibility_error("Wilf classes are limited to length " + std::to_string(wilf.max_length) + " and order " +
                            std::to_string(wilf.max_order));
  }
  const json value = cached(g, {order, "length=" + std::to_string(length), "wilf"},
                            [&] { return to_json(wilf_classes(length, order, options, wilf)); });
  const auto report = wilf_report_from_json(value);
  if (format == "csv") {
    out << wilf_csv(report);
  } else if (format == "table") {
    out << "length " << report.pattern_length << ", order " << report.order << ": " << report.classes.size()
        << " classes\n";
    for (std::size_t c = 0; c < report.classes.size(); ++c) {
      const auto& first = report.classes[c].front();
      const auto idx = std::find(report.patterns.begin(), report.patterns.end(), first) - report.patterns.begin();
      out << "  class " << c << "  count " << report.counts[static_cast<std::size_t>(idx)] << "  ";
      for (std::size_t i = 0; i < report.classes[c].size(); ++i) out << (i ? " " : "") << report.classes[c][i].compact();
      out << '\n';
    }
  } else {
    out << value.dump(2) << '\n';
  }
  return kOk;
}

struct CheckArgs {
  std::string square;
  std::string pattern;
  std::string rectangle;
  bool symbols = false;
};

int report_rectangle(const Globals& g, const LatinSquare& s, const LatinRectangle& r, std::ostream& out) {
  const auto format = pick_format(g, "json", {"json", "table"});
  const auto witness = contains_rectangle(s, r);
  if (format == "table") {
    if (witness) {
      out << "contained: rows " << list_text(witness->rows) << " cols " << list_text(witness->cols) << '\n';
    } else {
      out << "avoided\n";
    }
  } else {
    json j = {{"order", s.order()}, {"rectangle", to_json(r)}, {"contained", witness.has_value()}};
    j["witness"] = witness ? to_json(*witness) : json(nullptr);
    out << j.dump(2) << '\n';
  }
  return kOk;
}

int do_check(const Globals& g, const CheckArgs& a, std::ostream& out) {
  if (a.pattern.empty() == a.rectangle.empty()) {
    throw std::invalid_argument("give exactly one of --pattern and --rectangle");
  }
  const auto s = read_square(read_input(a.square));
  if (!a.rectangle.empty()) return report_rectangle(g, s, read_rectangle(read_input(a.rectangle)), out);

  const auto format = pick_format(g, "json", {"json", "table"});
  const auto pattern = parse_one_pattern(a.pattern);
  const PatternMatcher matcher(pattern);
  json witness = nullptr;
  auto probe = [&](const char* kind, int index, std::span<const int> line) {
    if (!witness.is_null()) return;
    if (auto pos = matcher.find(line)) {
      std::vector<int> values;
      for (int p : *pos) values.push_back(line[static_cast<std::size_t>(p - 1)]);
      witness = {{"line", kind}, {"index", index}, {"positions", *pos}, {"values", values}};
    }
  };
  for (int i = 1; i <= s.order(); ++i) probe("row", i, s.row(i));
  for (int i = 1; i <= s.order(); ++i) probe("column", i, s.column(i));
  if (a.symbols) {
    for (int k = 1; k <= s.order(); ++k) probe("symbol", k, s.symbol_positions(k));
  }
  if (format == "table") {
    if (witness.is_null()) {
      out << "avoided\n";
    } else {
      out << "contained: " << witness["line"].get<std::string>() << ' ' << witness["index"].get<int>()
          << " positions " << list_text(witness["positions"].get<std::vector<int>>()) << '\n';
    }
  } else {
    const json j = {{"order", s.order()},
                    {"pattern", to_json(pattern)},
                    {"symbols", a.symbols},
                    {"contained", !witness.is_null()},
                    {"witness", witness}};
    out << j.dump(2) << '\n';
  }
  return kOk;
}

int emit_verdict(const json& report, bool ok, std::ostream& out) {
  out << report.dump(2) << '\n';
  return ok ? kOk : kInternalError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pattern avoidance in Latin squares: enumeration, constructions and analysis", "latinpat"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format: json, csv, table, grid (per command)");
  app.add_option("--jobs", g.jobs, "Worker threads (default: available parallelism)");
  app.add_option("--cache-dir", g.cache_dir, std::string("Result cache directory (default: $") + kCacheDirEnv + ")");
  app.add_flag("--no-cache", g.no_cache, "Disable the result cache");
  app.add_flag("--verify-cache", g.verify_cache, "Recompute cached results and fail on any difference");
  app.add_option("--progress", g.progress, "Progress on stderr: none, text, json")
      ->check(CLI::IsMember({"none", "text", "json"}));
  app.add_flag("--timing", g.timing, "Include elapsed time in count output");
  app.add_option("--max-order", g.max_order, "Override the enumeration order bounds");

  int order = 0;
  AvoidFlags avoid;

  auto* count = app.add_subcommand("count", "Count squares satisfying an avoidance spec");
  count->add_option("--order", order, "Square order n")->required();
  add_avoid_flags(count, avoid);

  long long limit = -1;
  auto* enumerate = app.add_subcommand("enumerate", "Stream satisfying squares as JSON lines");
  enumerate->add_option("--order", order, "Square order n")->required();
  enumerate->add_option("--limit", limit, "Stop after this many squares");
  add_avoid_flags(enumerate, avoid);

  auto* construct = app.add_subcommand("construct", "Explicit constructions");
  construct->require_subcommand(1);
  std::string pattern;
  int start = 0;
  auto* s3 = construct->add_subcommand("s3", "Squares avoiding a length-3 pattern in all rows and columns");
  s3->add_option("--order", order, "Square order n")->required();
  s3->add_option("--pattern", pattern, "Pattern of length 3")->required();
  s3->add_option("--start", start, "Top-left symbol; all n squares when omitted");
  std::string first_row;
  auto* prop2 = construct->add_subcommand(
      "prop2", "Unique square whose columns avoid a length-3 pattern, given its anchor row "
               "(the first row, or the bottom row for 231 and 213)");
  prop2->add_option("--first-row", first_row, "Anchor row, e.g. 2134")->required();
  prop2->add_option("--pattern", pattern, "Pattern of length 3")->required();
  int root = 0;
  auto* connolly = construct->add_subcommand("connolly", "Order root^2 square with short monotone lines");
  connolly->add_option("--root", root, "Root n of the order n^2")->required();

  bool exhaustive = false;
  bool bounds = false;
  auto* lambda = app.add_subcommand("lambda", "Forced monotone length over order-n squares");
  lambda->add_option("--order", order, "Square order n")->required();
  lambda->add_flag("--exhaustive", exhaustive, "Minimise over all squares (n <= 5)");
  lambda->add_flag("--bounds", bounds, "Lower bound and best witness cap");

  int length = 0;
  std::string mode = "single-pass";
  auto* wilf = app.add_subcommand("wilf", "Partition patterns of one length by avoider count");
  wilf->add_option("--length", length, "Pattern length k")->required();
  wilf->add_option("--order", order, "Square order n")->required();
  wilf->add_option("--mode", mode, "single-pass or per-pattern")->check(CLI::IsMember({"single-pass", "per-pattern"}));

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Test a square for a pattern or a rectangular pattern");
  check->add_option("--square", check_args.square, "Square file (text grid or JSON; - for stdin)")->required();
  check->add_option("--pattern", check_args.pattern, "Pattern tested in every row and column");
  check->add_option("--rectangle", check_args.rectangle, "Rectangle file (text grid or JSON)");
  check->add_flag("--symbols", check_args.symbols, "Also test symbol permutations");

  CheckArgs rect_args;
  auto* rect_check = app.add_subcommand("rect-check", "Find a sub-rectangle order-isomorphic to a pattern");
  rect_check->add_option("--square", rect_args.square, "Square file")->required();
  rect_check->add_option("--rectangle", rect_args.rectangle, "Rectangle file")->required();

  auto* verify = app.add_subcommand("verify", "Exhaustive structural checks");
  verify->require_subcommand(1);
  auto* v_full = verify->add_subcommand("theorem6", "Full-length pattern counts against the (n!-n)/n! factor");
  v_full->add_option("--order", order, "Square order n")->required();
  auto* v_triple = verify->add_subcommand("corollary6", "All-or-none containment of {123,231,312} and {132,213,321}");
  v_triple->add_option("--order", order, "Square order n")->required();
  auto* v_cyclic = verify->add_subcommand("remark4", "Cyclic column structure of length-3 column avoiders");
  v_cyclic->add_option("--order", order, "Square order n")->required();
  int es_p = 0;
  int es_q = 0;
  auto* v_es = verify->add_subcommand("es", "Erdos-Szekeres over all permutations of one length");
  v_es->add_option("--length", length, "Permutation length m")->required();
  v_es->add_option("--p", es_p, "Increasing target p+1")->required();
  v_es->add_option("--q", es_q, "Decreasing target q+1")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidInput;
  }

  try {
    if (count->parsed()) return do_count(g, order, avoid, out, err);
    if (enumerate->parsed()) return do_enumerate(g, order, avoid, limit, out, err);
    if (s3->parsed()) {
      const auto format = pick_format(g, "grid", {"grid", "json"});
      const auto p = parse_one_pattern(pattern);
      emit_squares(start ? std::vector<LatinSquare>{construct_s3_avoider(order, p, start)} : all_s3_avoiders(order, p),
                   format, out);
      return kOk;
    }
    if (prop2->parsed()) {
      const auto format = pick_format(g, "grid", {"grid", "json"});
      emit_squares({complete_columns_avoiding(parse_one_pattern(first_row), parse_one_pattern(pattern))}, format, out);
      return kOk;
    }
    if (connolly->parsed()) {
      const auto format = pick_format(g, "grid", {"grid", "json"});
      emit_squares({connolly_square(root)}, format, out);
      return kOk;
    }
    if (lambda->parsed()) return do_lambda(g, order, exhaustive, bounds, out, err);
    if (wilf->parsed()) return do_wilf(g, length, order, mode, out, err);
    if (check->parsed()) return do_check(g, check_args, out);
    if (rect_check->parsed()) {
      const auto s = read_square(read_input(rect_args.square));
      return report_rectangle(g, s, read_rectangle(read_input(rect_args.rectangle)), out);
    }
    const auto options = make_options(g, err);
    if (v_full->parsed()) {
      const auto report = verify_full_length_formula(order, options);
      json j = to_json(report);
      j["formula_count"] = bigint_to_json(full_length_count(order, report.total));
      return emit_verdict(j, report.ok, out);
    }
    if (v_triple->parsed()) {
      const auto c = verify_triple_containment(order, options);
      return emit_verdict(to_json(c), c.ok(), out);
    }
    if (v_cyclic->parsed()) {
      const auto c = verify_cyclic_columns(order, options);
      return emit_verdict(to_json(c), c.ok(), out);
    }
    if (v_es->parsed()) {
      const auto c = verify_erdos_szekeres(length, es_p, es_q);
      return emit_verdict(to_json(c), c.ok(), out);
    }
  } catch (const feasibility_error& e) {
    err << "latinpat: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::invalid_argument& e) {
    err << "latinpat: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const cache_mismatch& e) {
    err << "latinpat: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    err << "latinpat: internal error: " << e.what() << '\n';
    return kInternalError;
  }
  err << "latinpat: no command given\n";
  return kInvalidInput;
}

}  // namespace latinpat::cli
