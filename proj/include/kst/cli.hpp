#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "kst/constructive.hpp"
#include "kst/exact_solver.hpp"
#include "kst/families.hpp"
#include "kst/graph_io.hpp"
#include "kst/hypothesis.hpp"
#include "kst/report.hpp"
#include "kst/thresholds.hpp"
#include "kst/tree_cert.hpp"

namespace kst::cli {

// Exit codes. solve: found/none/budget; construct: ok/hypothesis/internal;
// verify: full/valid tree/invalid. Unreadable input is `bad_input` everywhere.
inline constexpr int exit_ok = 0;
inline constexpr int exit_none = 1;
inline constexpr int exit_not_full = 1;
inline constexpr int exit_bad_input = 2;
inline constexpr int exit_budget = 3;
inline constexpr int exit_hypothesis = 4;
inline constexpr int exit_internal = 5;

/// Outcome of one input file: exit code, JSON report and optional text.
struct FileResult {
  int code = exit_ok;
  json report;
  std::string text;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f)
    throw input_error("cannot write " + path);
  f << content;
}

inline std::string dot_text(const Graph& g, const std::vector<Edge>& highlight = {}) {
  std::ostringstream out;
  write_dot(out, g, highlight);
  return out.str();
}

/// Runs `fn` on each path with up to `jobs` worker threads; results keep input order.
template <class Fn>
std::vector<FileResult> for_each_file(const std::vector<std::string>& paths, int jobs, Fn fn) {
  std::vector<FileResult> results(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < paths.size();)
      results[i] = fn(paths[i]);
  };
  const int threads = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(paths.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(worker);
    for (auto& t : pool)
      t.join();
  }
  return results;
}

inline int emit(const std::vector<FileResult>& results, std::ostream& out) {
  int code = exit_ok;
  for (const auto& r : results) {
    out << r.text;
    code = std::max(code, r.code);
  }
  if (results.size() == 1) {
    out << results.front().report.dump(2) << '\n';
  } else {
    json all = json::array();
    for (const auto& r : results)
      all.push_back(r.report);
    out << all.dump(2) << '\n';
  }
  return code;
}

inline json input_json(const std::string& path, const Graph& g) {
  auto j = to_json(g);
  j["path"] = path;
  return j;
}

inline FileResult bad_input(const std::string& command, const std::string& path, const std::exception& e) {
  FileResult r;
  r.code = exit_bad_input;
  r.report = {{"command", command}, {"input", {{"path", path}}}, {"error", e.what()}, {"exit_code", r.code}};
  return r;
}

/// Where per-file artifacts go: explicit paths for a single input, or
/// `<out_dir>/<stem>.<ext>` when an output directory is given.
struct ArtifactPaths {
  std::string cert;
  std::string trace;
  std::string dot;
  std::string out_dir;

  std::string resolve(const std::string& explicit_path, const std::string& input, const std::string& ext) const {
    if (!explicit_path.empty())
      return explicit_path;
    if (out_dir.empty())
      return "";
    return (std::filesystem::path(out_dir) / (std::filesystem::path(input).stem().string() + ext)).string();
  }
};

// ---- check ------------------------------------------------------------------

inline std::string report_table(const HypothesisReport& r) {
  auto pm = [](const PairMinimum& p) { return p.complete ? std::string("complete") : std::to_string(p.value); };
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::ostringstream out;
  out << "n                 " << r.n << '\n'
      << "k                 " << r.k << '\n'
      << "delta             " << r.delta << '\n'
      << "sigma             " << pm(r.sigma) << '\n'
      << "NC                " << pm(r.nc) << '\n'
      << "connected         " << yn(r.connected) << '\n'
      << "thm1_1            " << yn(r.thm1_1) << '\n'
      << "thm1_2            " << yn(r.thm1_2) << '\n'
      << "thm1_4            " << yn(r.thm1_4) << '\n'
      << "thm1_5_condition  " << yn(r.thm1_5_condition) << '\n'
      << "thm1_6            " << yn(r.thm1_6) << '\n';
  for (const auto& f : r.thm1_6_failures)
    out << "  fails: " << f << '\n';
  return out.str();
}

inline FileResult check_file(const std::string& path, int k) {
  try {
    const auto g = read_edge_list_file(path);
    const auto r = hypothesis_report(g, k);
    FileResult out;
    out.text = report_table(r);
    out.report = {{"command", "check"}, {"input", input_json(path, g)}, {"report", to_json(r)}, {"exit_code", exit_ok}};
    return out;
  } catch (const std::exception& e) {
    return bad_input("check", path, e);
  }
}

inline int cmd_check(const std::vector<std::string>& paths, int k, int jobs, std::ostream& out) {
  return emit(for_each_file(paths, jobs, [&](const std::string& p) { return check_file(p, k); }), out);
}

// ---- solve ------------------------------------------------------------------

struct SolveArgs {
  int k = 2;
  SearchBudget budget;
  bool naive = false;
  ArtifactPaths artifacts;
};

inline FileResult solve_file(const std::string& path, const SolveArgs& args) {
  Graph g;
  try {
    g = read_edge_list_file(path);
  } catch (const std::exception& e) {
    return bad_input("solve", path, e);
  }
  FileResult out;
  SolveOutcome o;
  try {
    o = args.naive ? solve_naive(g, args.k) : solve_exact(g, args.k, args.budget);
  } catch (const input_error& e) {
    return bad_input("solve", path, e);
  }
  out.code = o.status == SolveStatus::found ? exit_ok : o.status == SolveStatus::none ? exit_none : exit_budget;
  out.report = {{"command", "solve"}, {"input", input_json(path, g)}, {"solver", args.naive ? "naive" : "exact"}, {"outcome", to_json(o)}};
  if (o.certificate) {
    if (auto p = args.artifacts.resolve(args.artifacts.cert, path, ".cert"); !p.empty()) {
      write_file(p, to_text(*o.certificate));
      out.report["certificate_path"] = p;
    }
  }
  if (auto p = args.artifacts.resolve(args.artifacts.dot, path, ".dot"); !p.empty()) {
    write_file(p, dot_text(g, o.certificate ? o.certificate->edges : std::vector<Edge>{}));
    out.report["dot_path"] = p;
  }
  out.report["exit_code"] = out.code;
  return out;
}

inline int cmd_solve(const std::vector<std::string>& paths, const SolveArgs& args, int jobs, std::ostream& out) {
  return emit(for_each_file(paths, jobs, [&](const std::string& p) { return solve_file(p, args); }), out);
}

// ---- construct --------------------------------------------------------------

struct ConstructArgs {
  int k = 2;
  bool fallback_exact = false;
  bool unchecked = false;
  ArtifactPaths artifacts;
};

inline FileResult construct_file(const std::string& path, const ConstructArgs& args) {
  Graph g;
  try {
    g = read_edge_list_file(path);
  } catch (const std::exception& e) {
    return bad_input("construct", path, e);
  }
  FileResult out;
  out.report = {{"command", "construct"}, {"input", input_json(path, g)}};
  std::optional<TreeCertificate> cert;
  json trace;
  try {
    ConstructOptions opts;
    opts.check_hypotheses = !args.unchecked;
    auto c = construct_2k_st(g, args.k, opts);
    cert = std::move(c.certificate);
    trace = to_json(c.trace);
    out.report["status"] = "constructed";
  } catch (const construct_error& e) {
    trace = to_json(e.trace());
    out.report["status"] = "failed";
    out.report["failure"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    out.code = e.kind() == FailureKind::hypothesis ? exit_hypothesis : exit_internal;
    if (out.code == exit_internal && args.fallback_exact) {
      auto o = solve_exact(g, args.k);
      out.report["fallback"] = to_json(o);
      if (o.status == SolveStatus::found) {
        cert = o.certificate;
        out.code = exit_ok;
        out.report["status"] = "fallback_exact";
      }
    }
  } catch (const input_error& e) {
    return bad_input("construct", path, e);
  }
  out.report["trace"] = trace;
  if (cert) {
    out.report["classification"] = to_json(classify(g, *cert, args.k));
    if (auto p = args.artifacts.resolve(args.artifacts.cert, path, ".cert"); !p.empty()) {
      write_file(p, to_text(*cert));
      out.report["certificate_path"] = p;
    }
  }
  if (auto p = args.artifacts.resolve(args.artifacts.trace, path, ".trace.json"); !p.empty()) {
    write_file(p, trace.dump(2) + "\n");
    out.report["trace_path"] = p;
  }
  if (auto p = args.artifacts.resolve(args.artifacts.dot, path, ".dot"); !p.empty()) {
    write_file(p, dot_text(g, cert ? cert->edges : std::vector<Edge>{}));
    out.report["dot_path"] = p;
  }
  out.report["exit_code"] = out.code;
  return out;
}

inline int cmd_construct(const std::vector<std::string>& paths, const ConstructArgs& args, int jobs, std::ostream& out) {
  return emit(for_each_file(paths, jobs, [&](const std::string& p) { return construct_file(p, args); }), out);
}

// ---- verify -----------------------------------------------------------------

struct VerifyResult {
  int code = exit_bad_input;
  std::string summary;
  json report;
};

/// Checks a certificate text against `g`. k defaults to the certificate's own.
inline VerifyResult verify_certificate(const Graph& g, const std::string& cert_text, std::optional<int> k = std::nullopt) {
  VerifyResult r;
  TreeCertificate t;
  try {
    t = certificate_from_text(cert_text);
  } catch (const parse_error& e) {
    r.summary = std::string("unreadable certificate: ") + e.what();
    r.report = {{"error", r.summary}, {"exit_code", r.code}};
    return r;
  }
  const int kk = k.value_or(t.k);
  if (kk < 2) {
    r.summary = "class bound k must be at least 2";
    r.report = {{"error", r.summary}, {"exit_code", r.code}};
    return r;
  }
  const auto kind = classify(g, t, kk);
  r.code = kind.is_full() ? exit_ok : kind.is_valid_tree() ? exit_not_full : exit_bad_input;
  r.summary = describe(kind);
  r.report = {{"k", kk}, {"classification", to_json(kind)}, {"exit_code", r.code}};
  return r;
}

inline int cmd_verify(const std::string& graph_path, const std::string& cert_path, std::optional<int> k, bool as_json, std::ostream& out) {
  VerifyResult r;
  Graph g;
  try {
    g = read_edge_list_file(graph_path);
    std::ifstream f(cert_path);
    if (!f)
      throw input_error("cannot open " + cert_path);
    std::ostringstream text;
    text << f.rdbuf();
    r = verify_certificate(g, text.str(), k);
  } catch (const std::exception& e) {
    r.summary = e.what();
    r.report = {{"error", r.summary}, {"exit_code", exit_bad_input}};
    r.code = exit_bad_input;
  }
  r.report["command"] = "verify";
  r.report["graph"] = graph_path;
  r.report["certificate"] = cert_path;
  if (as_json)
    out << r.report.dump(2) << '\n';
  else
    out << r.summary << '\n';
  return r.code;
}

// ---- gen --------------------------------------------------------------------

inline constexpr std::uint64_t default_seed = 20240601;

struct GenArgs {
  std::string family = "random";
  int k = 2;
  int n = 10;
  double p = 0.5;
  std::uint64_t seed = default_seed;
  std::string out;
  std::string dot;
};

inline Graph generate(const GenArgs& a) {
  if (a.family == "h")
    return build_h({a.k, a.n});
  if (a.family == "random")
    return random_graph(a.n, a.p, a.seed);
  if (a.family.rfind("case:", 0) == 0)
    return case_family(a.family.substr(5), a.k, a.n);
  throw input_error("unknown family `" + a.family + "` (expected h, case:<label> or random)");
}

inline int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  Graph g;
  try {
    g = generate(a);
  } catch (const std::exception& e) {
    err << "gen: " << e.what() << '\n';
    return exit_bad_input;
  }
  if (a.out.empty())
    write_edge_list(out, g);
  else
    write_file(a.out, to_edge_list(g));
  if (!a.dot.empty())
    write_file(a.dot, dot_text(g));
  return exit_ok;
}

// ---- thresholds -------------------------------------------------------------

inline int cmd_thresholds(const std::vector<int>& ks, bool as_json, std::ostream& out, std::ostream& err) {
  json all = json::array();
  std::ostringstream table;
  table << std::setw(4) << "k" << std::setw(24) << "c_k" << std::setw(10) << "n0" << std::setw(10) << "n1" << '\n';
  for (int k : ks) {
    if (k < 2) {
      err << "thresholds: k must be at least 2\n";
      return exit_bad_input;
    }
    const auto t = thresholds(k);
    all.push_back(to_json(t));
    table << std::setw(4) << k << std::setw(24) << std::setprecision(18) << static_cast<double>(t.c_k) << std::setw(10) << t.n0 << std::setw(10) << t.n1 << '\n';
  }
  if (as_json)
    out << all.dump(2) << '\n';
  else
    out << table.str();
  return exit_ok;
}

// ---- entry point ------------------------------------------------------------

/// Parses `args` (program name excluded) and runs the chosen subcommand.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"[2,k]-spanning-tree toolkit"};
  app.require_subcommand(1);
  int code = exit_ok;
  int jobs = 1;

  auto* check = app.add_subcommand("check", "Report delta, sigma, NC and the theorem hypotheses");
  std::vector<std::string> check_files;
  int check_k = 2;
  check->add_option("graphs", check_files, "Edge-list files")->required();
  check->add_option("-k,--k", check_k, "Class bound k")->check(CLI::Range(2, 1 << 20));
  check->add_option("--jobs", jobs, "Files processed concurrently")->check(CLI::PositiveNumber);

  auto* solve = app.add_subcommand("solve", "Exact search for a [2,k]-ST");
  std::vector<std::string> solve_files;
  SolveArgs sa;
  double time_limit = 0;
  solve->add_option("graphs", solve_files, "Edge-list files")->required();
  solve->add_option("-k,--k", sa.k, "Class bound k")->check(CLI::Range(2, 1 << 20));
  solve->add_option("--node-limit", sa.budget.node_limit, "Search-node budget")->check(CLI::PositiveNumber);
  solve->add_option("--time-limit", time_limit, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
  solve->add_flag("--naive", sa.naive, "Use the spanning-tree enumerator instead");
  solve->add_option("--cert", sa.artifacts.cert, "Certificate output path (single input)");
  solve->add_option("--dot", sa.artifacts.dot, "DOT output path with the tree highlighted (single input)");
  solve->add_option("--out-dir", sa.artifacts.out_dir, "Directory for per-input artifacts");
  solve->add_option("--jobs", jobs, "Files processed concurrently")->check(CLI::PositiveNumber);

  auto* construct = app.add_subcommand("construct", "Build a [2,k]-ST by the constructive case analysis");
  std::vector<std::string> construct_files;
  ConstructArgs ca;
  construct->add_option("graphs", construct_files, "Edge-list files")->required();
  construct->add_option("-k,--k", ca.k, "Class bound k")->check(CLI::Range(2, 1 << 20));
  construct->add_flag("--fallback-exact", ca.fallback_exact, "Run the exact solver when the construction fails internally");
  construct->add_flag("--unchecked", ca.unchecked, "Skip the up-front hypothesis checks");
  construct->add_option("--cert", ca.artifacts.cert, "Certificate output path (single input)");
  construct->add_option("--trace", ca.artifacts.trace, "Trace JSON output path (single input)");
  construct->add_option("--dot", ca.artifacts.dot, "DOT output path with the tree highlighted (single input)");
  construct->add_option("--out-dir", ca.artifacts.out_dir, "Directory for per-input artifacts");
  construct->add_option("--jobs", jobs, "Files processed concurrently")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Classify a certificate against a graph");
  std::string verify_graph, verify_cert;
  std::optional<int> verify_k;
  bool verify_json = false;
  verify->add_option("graph", verify_graph, "Edge-list file")->required();
  verify->add_option("certificate", verify_cert, "Certificate file")->required();
  verify->add_option("-k,--k", verify_k, "Class bound k (default: the certificate's)");
  verify->add_flag("--json", verify_json, "Print a JSON report");

  auto* gen = app.add_subcommand("gen", "Generate a graph in edge-list format");
  GenArgs ga;
  gen->add_option("--family", ga.family, "h | case:<label> | random");
  gen->add_option("-k,--k", ga.k, "Class bound k");
  gen->add_option("-n,--n", ga.n, "Order")->check(CLI::NonNegativeNumber);
  gen->add_option("--p", ga.p, "Edge probability (random)")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", ga.seed, "Random seed");
  gen->add_option("--out", ga.out, "Output path (default stdout)");
  gen->add_option("--dot", ga.dot, "DOT output path");

  auto* thr = app.add_subcommand("thresholds", "Print c_k, n0(k), n1(k)");
  std::vector<int> thr_ks{2, 3, 4, 5};
  bool thr_json = false;
  thr->add_option("k", thr_ks, "Class bounds");
  thr->add_flag("--json", thr_json, "Print JSON");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_bad_input;
  }

  try {
    if (check->parsed()) {
      code = cmd_check(check_files, check_k, jobs, out);
    } else if (solve->parsed()) {
      if (time_limit > 0)
        sa.budget.time_limit = time_limit;
      code = cmd_solve(solve_files, sa, jobs, out);
    } else if (construct->parsed()) {
      code = cmd_construct(construct_files, ca, jobs, out);
    } else if (verify->parsed()) {
      code = cmd_verify(verify_graph, verify_cert, verify_k, verify_json, out);
    } else if (gen->parsed()) {
      code = cmd_gen(ga, out, err);
    } else if (thr->parsed()) {
      code = cmd_thresholds(thr_ks, thr_json, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_bad_input;
  }
  return code;
}

} // namespace kst::cli
