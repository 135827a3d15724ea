// Command-line front end: solve, eval, kernelize, gen, validate, bench.
// Machine-readable output is JSON lines on stdout, one record per line;
// human diagnostics go to stderr.  Exit codes: 0 success, 1 usage error,
// 2 instance error, 3 cross-method disagreement.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ecmin/brute.hpp"
#include "ecmin/circuit.hpp"
#include "ecmin/dp.hpp"
#include "ecmin/generators.hpp"
#include "ecmin/io.hpp"
#include "ecmin/kernel.hpp"
#include "ecmin/treewidth.hpp"
#include "ecmin/xp.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace ecmin;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error("cannot write " + path);
}

std::string hex64(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

std::string digest_of(const std::string& bytes) {
  return hex64(fnv1a64(bytes));
}

std::string witness_string(const Assignment& x) {
  std::string s(x.size(), '0');
  for (size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? '1' : '0';
  return s;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

// No witness leaves the program unchecked: the claim (exact optimum or
// budget fit) is re-established by a fresh evaluation.
void verify_witness(const Circuit& c, const Assignment& w,
                    std::optional<int32_t> exact, std::optional<int32_t> cap) {
  const auto rep = evaluate_report(c, w);
  if (!rep.satisfied || (exact && rep.ec != *exact) || (cap && rep.ec > *cap)) {
    throw Error("witness failed re-verification");
  }
}

int resolve_jobs(int flag_jobs) {
  if (const char* env = std::getenv("ECMIN_JOBS")) {
    const int j = std::atoi(env);
    if (j > 0) return j;
  }
  return std::max(1, flag_jobs);
}

// Runs work(i) for i in [0, n) on a bounded pool and prints each item's
// JSON lines in input order as soon as all earlier items are out.
void run_ordered(int n, int jobs,
                 const std::function<std::vector<json>(int)>& work) {
  jobs = std::max(1, std::min(jobs, n));
  if (n == 0) return;
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) {
      for (const auto& line : work(i)) std::cout << line.dump() << "\n";
      std::cout.flush();
    }
    return;
  }
  std::vector<std::optional<std::vector<json>>> results(n);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      auto r = work(i);
      {
        std::lock_guard<std::mutex> lock(mu);
        results[i] = std::move(r);
      }
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  {
    std::unique_lock<std::mutex> lock(mu);
    for (int i = 0; i < n; ++i) {
      cv.wait(lock, [&] { return results[i].has_value(); });
      for (const auto& line : *results[i]) std::cout << line.dump() << "\n";
      std::cout.flush();
      results[i].reset();
    }
  }
  for (auto& t : pool) t.join();
}

json dp_state_counts(const DpStats& stats) {
  json j;
  j["nodes"] = stats.nodes;
  j["width"] = stats.width;
  j["max_states"] = stats.max_states;
  j["total_states"] = stats.total_states;
  return j;
}

// ---- solve ---------------------------------------------------------------

struct SolveFlags {
  std::vector<std::string> files;
  std::string method = "auto";
  std::optional<int32_t> k;
  std::string td_path;
  bool want_witness = false;
  int jobs = 1;
};

json solve_one(const std::string& path, const SolveFlags& flags,
               std::atomic<bool>& failed) {
  json rec;
  rec["instance"] = path;
  try {
    const std::string text = read_file(path);
    rec["digest"] = digest_of(text);
    Circuit c = parse_circuit(text);
    validate(c, ValidationMode::AllowExtraSinks);

    std::optional<TreeDecomposition> td;
    if (!flags.td_path.empty()) td = parse_td(read_file(flags.td_path), c);

    std::string method = flags.method;
    if (method == "auto") {
      if (td) {
        method = "dp";
      } else if (c.num_inputs <= 20) {
        method = "brute";
      } else {
        td = heuristic_decomposition(c);
        if (td->width() <= 14) {
          method = "dp";
        } else {
          td.reset();
          method = "xp";
        }
      }
    }
    rec["method"] = method;
    if (method == "xp" && !flags.k) {
      throw Error("method xp answers the decision problem; pass --k");
    }

    std::optional<Assignment> witness;
    std::optional<json> state_counts;
    Timer timer;
    if (flags.k) {
      bool decision = false;
      if (method == "brute") {
        BruteOptions opts;
        opts.cap = *flags.k;
        const auto r = min_ec_brute(c, opts);
        decision = r.capped;  // the cap fires iff some ec <= k exists
        if (decision) witness = r.witness;
      } else if (method == "dp") {
        const auto nice =
            make_extended_nice(td ? *td : heuristic_decomposition(c), c);
        const auto r = dp_solve(
            c, nice, {.want_witness = flags.want_witness, .want_stats = true});
        decision = r.min_ec <= *flags.k;
        if (decision) witness = r.witness;
        state_counts = dp_state_counts(r.stats);
      } else {
        witness = solve_xp(c, *flags.k);
        decision = witness.has_value();
      }
      rec["k"] = *flags.k;
      rec["decision"] = decision;
      if (witness) verify_witness(c, *witness, {}, *flags.k);
    } else {
      if (method == "xp") throw Error("unreachable");
      int32_t best = 0;
      if (method == "brute") {
        const auto r = min_ec_brute(c);
        best = *r.min_ec;
        witness = r.witness;
      } else {
        const auto nice =
            make_extended_nice(td ? *td : heuristic_decomposition(c), c);
        const auto r = dp_solve(c, nice, {.want_witness = true, .want_stats = true});
        best = r.min_ec;
        witness = r.witness;
        state_counts = dp_state_counts(r.stats);
      }
      rec["min_ec"] = best;
      if (witness) verify_witness(c, *witness, best, {});
    }
    const double elapsed = timer.ms();
    if (flags.want_witness && witness) {
      rec["witness"] = witness_string(*witness);
    }
    rec["time_ms"] = elapsed;
    if (state_counts) rec["state_counts"] = *state_counts;
  } catch (const std::exception& e) {
    rec["error"] = e.what();
    failed = true;
  }
  return rec;
}

int run_solve(const SolveFlags& flags) {
  std::atomic<bool> failed{false};
  run_ordered(static_cast<int>(flags.files.size()), resolve_jobs(flags.jobs),
              [&](int i) {
                return std::vector<json>{solve_one(flags.files[i], flags, failed)};
              });
  return failed ? 2 : 0;
}

// ---- eval ----------------------------------------------------------------

int run_eval(const std::string& path, const std::string& bits,
             const std::string& dot_path) {
  json rec;
  rec["instance"] = path;
  try {
    const std::string text = read_file(path);
    rec["digest"] = digest_of(text);
    Circuit c = parse_circuit(text);
    validate(c, ValidationMode::AllowExtraSinks);

    Assignment x;
    x.reserve(bits.size());
    for (char ch : bits) {
      if (ch != '0' && ch != '1') throw Error("--x must be a 0/1 string");
      x.push_back(ch == '1');
    }
    const auto [activation, report] = evaluate(c, x);
    rec["x"] = bits;
    rec["satisfied"] = report.satisfied;
    rec["ec"] = report.ec;
    json active = json::array();
    for (NodeId v = c.num_inputs; v < c.num_nodes(); ++v) {
      if (activation.active[v]) active.push_back(c.name(v));
    }
    rec["active_gates"] = active;
    if (!dot_path.empty()) {
      write_file(dot_path, export_dot(c, activation));
      rec["dot"] = dot_path;
    }
  } catch (const std::exception& e) {
    rec["error"] = e.what();
    std::cout << rec.dump() << "\n";
    return 2;
  }
  std::cout << rec.dump() << "\n";
  return 0;
}

// ---- kernelize -----------------------------------------------------------

int run_kernelize(const std::string& path, int32_t k,
                  const std::string& out_path) {
  json rec;
  rec["instance"] = path;
  try {
    const std::string text = read_file(path);
    rec["digest"] = digest_of(text);
    Circuit c = parse_circuit(text);
    validate(c, ValidationMode::AllowExtraSinks);

    Timer timer;
    const auto outcome = kernelize(c, k);
    rec["k"] = k;
    switch (outcome.verdict) {
      case KernelVerdict::Yes:
        rec["verdict"] = "yes";
        break;
      case KernelVerdict::No:
        rec["verdict"] = "no";
        break;
      case KernelVerdict::Reduced:
        rec["verdict"] = "reduced";
        break;
    }
    json deletions = json::array();
    for (const auto& d : outcome.deletions) {
      deletions.push_back({{"rule", d.rule}, {"name", d.name}});
    }
    rec["deletions"] = deletions;
    rec["nodes_before"] = c.num_nodes();
    if (outcome.circuit) {
      rec["nodes_after"] = outcome.circuit->num_nodes();
      if (!out_path.empty()) {
        write_file(out_path, serialize_circuit(*outcome.circuit));
        rec["output"] = out_path;
      }
    }
    rec["time_ms"] = timer.ms();
  } catch (const std::exception& e) {
    rec["error"] = e.what();
    std::cout << rec.dump() << "\n";
    return 2;
  }
  std::cout << rec.dump() << "\n";
  return 0;
}

// ---- gen -----------------------------------------------------------------

fs::path sidecar_path(const std::string& out_path) {
  fs::path p(out_path);
  p.replace_extension(".json");
  return p;
}

int emit_instance(const GeneratedInstance& inst, const std::string& reduction,
                  const std::string& source, const std::string& out_path) {
  json side;
  side["source"] = source;
  side["source_digest"] = hex64(inst.source_digest);
  side["reduction"] = reduction;
  side["parameter"] = inst.parameter;
  side["k"] = inst.k;
  side["inputs"] = inst.circuit.num_inputs;
  side["gates"] = inst.circuit.num_gates();
  write_file(out_path, serialize_circuit(inst.circuit));
  write_file(sidecar_path(out_path).string(), side.dump(2) + "\n");
  json rec = side;
  rec["output"] = out_path;
  std::cout << rec.dump() << "\n";
  return 0;
}

int run_gen_vc(const std::string& in_path, int cover,
               const std::string& out_path) {
  try {
    const auto g = parse_pg(read_file(in_path));
    return emit_instance(gen_from_planar_vc(g, cover), "vc", in_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "gen vc: " << e.what() << "\n";
    return 2;
  }
}

int run_gen_mcq(const std::string& in_path, std::optional<int> colors,
                const std::string& out_path) {
  try {
    const auto q = parse_col(read_file(in_path));
    if (colors && *colors != q.num_colors) {
      throw Error("--colors " + std::to_string(*colors) + " but the file has " +
                  std::to_string(q.num_colors) + " classes");
    }
    return emit_instance(gen_from_mcq(q), "mcq", in_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "gen mcq: " << e.what() << "\n";
    return 2;
  }
}

// ---- validate ------------------------------------------------------------

int run_validate(const std::vector<std::string>& files, bool strict) {
  bool failed = false;
  for (const auto& path : files) {
    json rec;
    rec["instance"] = path;
    try {
      const std::string text = read_file(path);
      rec["digest"] = digest_of(text);
      Circuit c = parse_circuit(text);
      const auto stats = validate(
          c, strict ? ValidationMode::Strict : ValidationMode::AllowExtraSinks);
      rec["valid"] = true;
      rec["stats"] = {{"inputs", stats.inputs},
                      {"gates", stats.gates},
                      {"and_gates", stats.and_gates},
                      {"or_gates", stats.or_gates},
                      {"edges", stats.edges},
                      {"unreachable_inputs", stats.unreachable_inputs},
                      {"extra_sinks", stats.extra_sinks}};
    } catch (const std::exception& e) {
      rec["valid"] = false;
      rec["error"] = e.what();
      failed = true;
    }
    std::cout << rec.dump() << "\n";
  }
  return failed ? 2 : 0;
}

// ---- bench ---------------------------------------------------------------

struct BenchFlags {
  std::string suite;
  int repeat = 1;
  int jobs = 1;
};

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  return xs.empty() ? 0.0 : xs[xs.size() / 2];
}

struct BenchShared {
  std::mutex mu;
  std::map<std::string, std::vector<double>> times;  // method -> medians
  std::vector<std::string> mismatches;
  bool any_error = false;
};

std::vector<json> bench_one(const std::string& path, const BenchFlags& flags,
                            BenchShared& shared) {
  std::vector<json> lines;
  json base;
  base["instance"] = path;
  try {
    const std::string text = read_file(path);
    base["digest"] = digest_of(text);
    Circuit c = parse_circuit(text);
    validate(c, ValidationMode::AllowExtraSinks);

    std::optional<TreeDecomposition> td;
    const fs::path td_path = fs::path(path).replace_extension(".td");
    if (fs::exists(td_path)) td = parse_td(read_file(td_path.string()), c);

    std::map<std::string, int32_t> min_by_method;
    auto measure = [&](const std::string& method,
                       const std::function<int32_t()>& run) {
      std::vector<double> times;
      std::optional<int32_t> value;
      bool stable = true;
      for (int r = 0; r < flags.repeat; ++r) {
        Timer timer;
        const int32_t got = run();
        times.push_back(timer.ms());
        if (value && *value != got) stable = false;
        value = got;
      }
      json rec = base;
      rec["method"] = method;
      rec["min_ec"] = *value;
      rec["time_ms"] = median(times);
      rec["repeats"] = flags.repeat;
      lines.push_back(rec);
      if (!stable) {
        std::lock_guard<std::mutex> lock(shared.mu);
        shared.mismatches.push_back(path + ": " + method +
                                    " changed its answer between repeats");
      }
      {
        std::lock_guard<std::mutex> lock(shared.mu);
        shared.times[method].push_back(median(times));
      }
      min_by_method[method] = *value;
    };

    measure("dp", [&] {
      const auto nice =
          make_extended_nice(td ? *td : heuristic_decomposition(c), c);
      return dp_solve(c, nice).min_ec;
    });
    if (c.num_inputs <= 20) {
      measure("brute", [&] { return *min_ec_brute(c).min_ec; });
    }

    // The candidate-set solver answers decisions, so bracket the reference
    // optimum; affordable only at tiny budgets.
    const int32_t ref = min_by_method.at("dp");
    if (ref <= 3 && c.num_gates() <= 64) {
      measure("xp", [&] {
        const bool at = decide_xp(c, ref);
        const bool below = ref > 0 && decide_xp(c, ref - 1);
        return at && !below ? ref : -1;
      });
    }

    int32_t agreed = min_by_method.begin()->second;
    for (const auto& [method, value] : min_by_method) {
      if (value != agreed) {
        std::lock_guard<std::mutex> lock(shared.mu);
        shared.mismatches.push_back(path + ": " + method + " disagrees");
      }
    }
  } catch (const std::exception& e) {
    json rec = base;
    rec["error"] = e.what();
    lines.push_back(rec);
    std::lock_guard<std::mutex> lock(shared.mu);
    shared.any_error = true;
  }
  return lines;
}

int run_bench(const BenchFlags& flags) {
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(flags.suite)) {
    if (entry.path().extension() == ".mc") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());

  BenchShared shared;
  run_ordered(static_cast<int>(files.size()), resolve_jobs(flags.jobs),
              [&](int i) { return bench_one(files[i], flags, shared); });

  json agg;
  agg["aggregate"] = true;
  agg["instances"] = files.size();
  json med = json::object();
  for (const auto& [method, times] : shared.times) {
    med[method] = median(times);
  }
  agg["median_ms"] = med;
  agg["agreement"] = shared.mismatches.empty() ? "ok" : "mismatch";
  if (!shared.mismatches.empty()) agg["mismatches"] = shared.mismatches;
  std::cout << agg.dump() << "\n";
  if (!shared.mismatches.empty()) return 3;
  return shared.any_error ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solvers for best-case energy of monotone circuits"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "compute min_ec or decide <= k");
  solve->add_option("files", solve_flags.files, "circuit files (.mc)")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--method", solve_flags.method, "solver")
      ->check(CLI::IsMember({"auto", "brute", "xp", "dp"}))
      ->capture_default_str();
  solve->add_option("--k", solve_flags.k, "decision threshold");
  solve->add_option("--td", solve_flags.td_path, "tree decomposition (.td)")
      ->check(CLI::ExistingFile);
  solve->add_flag("--witness", solve_flags.want_witness,
                  "emit a verified optimal or fitting assignment");
  solve->add_option("--jobs", solve_flags.jobs, "parallel instances")
      ->check(CLI::PositiveNumber);

  std::string eval_file, eval_bits, eval_dot;
  auto* eval = app.add_subcommand("eval", "evaluate one assignment");
  eval->add_option("file", eval_file, "circuit file (.mc)")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--x", eval_bits, "assignment as a 0/1 string")->required();
  eval->add_option("--dot", eval_dot, "write a highlighted graphviz file");

  std::string kern_file, kern_out;
  int32_t kern_k = 0;
  auto* kern = app.add_subcommand("kernelize", "parameter-aware reduction");
  kern->add_option("file", kern_file, "circuit file (.mc)")
      ->required()
      ->check(CLI::ExistingFile);
  kern->add_option("--k", kern_k, "energy budget")->required();
  kern->add_option("-o,--output", kern_out, "write the reduced circuit here");

  auto* gen = app.add_subcommand("gen", "emit reduction instances");
  gen->require_subcommand(1);
  std::string vc_in, vc_out;
  int vc_cover = 0;
  auto* gen_vc = gen->add_subcommand("vc", "from an embedded planar graph");
  gen_vc->add_option("file", vc_in, "planar graph (.pg)")
      ->required()
      ->check(CLI::ExistingFile);
  gen_vc->add_option("--cover", vc_cover, "cover size to encode")
      ->required()
      ->check(CLI::NonNegativeNumber);
  gen_vc->add_option("-o,--output", vc_out, "circuit file to write")->required();
  std::string mcq_in, mcq_out;
  std::optional<int> mcq_colors;
  auto* gen_mcq = gen->add_subcommand("mcq", "from a colored graph");
  gen_mcq->add_option("file", mcq_in, "colored graph (.col)")
      ->required()
      ->check(CLI::ExistingFile);
  gen_mcq->add_option("--colors", mcq_colors, "expected number of classes");
  gen_mcq->add_option("-o,--output", mcq_out, "circuit file to write")
      ->required();

  std::vector<std::string> validate_files;
  bool validate_strict = false;
  auto* val = app.add_subcommand("validate", "check structure, print stats");
  val->add_option("files", validate_files, "circuit files (.mc)")
      ->required()
      ->check(CLI::ExistingFile);
  val->add_flag("--strict", validate_strict,
                "reject non-output sink gates too");

  BenchFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "run all methods over a suite");
  bench->add_option("--suite", bench_flags.suite, "directory of .mc files")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench->add_option("--repeat", bench_flags.repeat, "timing repetitions")
      ->check(CLI::PositiveNumber);
  bench->add_option("--jobs", bench_flags.jobs, "parallel instances")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*solve) return run_solve(solve_flags);
    if (*eval) return run_eval(eval_file, eval_bits, eval_dot);
    if (*kern) return run_kernelize(kern_file, kern_k, kern_out);
    if (*gen_vc) return run_gen_vc(vc_in, vc_cover, vc_out);
    if (*gen_mcq) return run_gen_mcq(mcq_in, mcq_colors, mcq_out);
    if (*val) return run_validate(validate_files, validate_strict);
    if (*bench) return run_bench(bench_flags);
  } catch (const std::exception& e) {
    std::cerr << "ecmin: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
