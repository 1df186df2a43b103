#pragma once

// Benchmark records, CSV, and log-log slope fitting.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "tilefrechet/generators.hpp"
#include "tilefrechet/tiling_frechet.hpp"

namespace tilefrechet {

struct BenchRecord {
  std::string algo;
  std::string kind;
  std::uint64_t n = 0, m = 0;
  double delta = 0;
  double answer = 0;  // decision as 0/1, or the computed value
  double elapsed_s = 0;
  std::uint64_t blocks_separated = 0, blocks_aligned = 0, switching_cells = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

inline constexpr const char* kBenchHeader =
    "algo,kind,n,m,delta,answer,elapsed_s,blocks_separated,blocks_aligned,switching_cells,seed";

namespace detail {

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
T parse_field(const std::string& s) {
  if constexpr (std::is_same_v<T, double>) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
    return v;
  } else {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw std::invalid_argument("bad integer: " + s);
    return v;
  }
}

}  // namespace detail

inline void write_csv_header(std::ostream& out) { out << kBenchHeader << '\n'; }

inline void write_csv_row(std::ostream& out, const BenchRecord& r) {
  for (const auto* s : {&r.algo, &r.kind})
    if (s->find_first_of(",\n\"") != std::string::npos) throw std::invalid_argument("field contains a separator");
  out << r.algo << ',' << r.kind << ',' << r.n << ',' << r.m << ',' << detail::format_double(r.delta) << ','
      << detail::format_double(r.answer) << ',' << detail::format_double(r.elapsed_s) << ','
      << r.blocks_separated << ',' << r.blocks_aligned << ',' << r.switching_cells << ',' << r.seed << '\n';
}

inline void write_csv(std::ostream& out, const std::vector<BenchRecord>& rows) {
  write_csv_header(out);
  for (const auto& r : rows) write_csv_row(out, r);
}

inline std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kBenchHeader) throw std::invalid_argument("unexpected CSV header");
  std::vector<BenchRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 11) throw std::invalid_argument("CSV row needs 11 fields");
    BenchRecord r;
    r.algo = f[0];
    r.kind = f[1];
    r.n = detail::parse_field<std::uint64_t>(f[2]);
    r.m = detail::parse_field<std::uint64_t>(f[3]);
    r.delta = detail::parse_field<double>(f[4]);
    r.answer = detail::parse_field<double>(f[5]);
    r.elapsed_s = detail::parse_field<double>(f[6]);
    r.blocks_separated = detail::parse_field<std::uint64_t>(f[7]);
    r.blocks_aligned = detail::parse_field<std::uint64_t>(f[8]);
    r.switching_cells = detail::parse_field<std::uint64_t>(f[9]);
    r.seed = detail::parse_field<std::uint64_t>(f[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Least-squares slope of log y against log x.
inline double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("log-log fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = k * sxx - sx * sx;
  if (den == 0) throw std::invalid_argument("degenerate x values");
  return (k * sxy - sx * sy) / den;
}

struct BenchConfig {
  std::vector<std::string> algos{"fast", "oracle"};
  TilingKind kind = TilingKind::square;
  std::vector<PathModel> models{PathModel::randomwalk, PathModel::staircase};
  std::vector<std::size_t> sizes{1024, 2048, 4096};
  std::uint64_t seed = 1;
  unsigned threads = 1;  // more than one skews timings
  unsigned repeats = 1;  // best of
};

/// The instance for size n: two independent paths of one model, the second
/// shifted off the first; threshold about sqrt(n).
struct BenchInstance {
  TilingPath p, q;
  std::int64_t delta;
};

inline BenchInstance bench_instance(TilingKind kind, PathModel model, std::size_t n, std::uint64_t seed) {
  return {gen_path(kind, n, model, seed), translate(gen_path(kind, n, model, seed + 1), 3, -3),
          static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)))};
}

inline BenchRecord bench_one(const std::string& algo, TilingKind kind, PathModel model, std::size_t n,
                             std::uint64_t seed, unsigned repeats) {
  const BenchInstance inst = bench_instance(kind, model, n, seed);
  BenchRecord r{algo, std::string(to_string(kind)) + "/" + std::string(to_string(model)), n, n,
                static_cast<double>(inst.delta)};
  r.seed = seed;
  r.elapsed_s = std::numeric_limits<double>::infinity();
  for (unsigned rep = 0; rep < std::max(1u, repeats); ++rep) {
    if (algo == "fast") {
      const DecisionReport d = decide(inst.p, inst.q, inst.delta, {0});
      r.answer = d.answer;
      r.blocks_separated = d.blocks_separated;
      r.blocks_aligned = d.blocks_aligned;
      r.switching_cells = d.switching_cells;
      r.elapsed_s = std::min(r.elapsed_s, d.elapsed);
    } else if (algo == "oracle") {
      const auto start = std::chrono::steady_clock::now();
      r.answer = oracle_decide(inst.p, inst.q, inst.delta);
      r.elapsed_s = std::min(r.elapsed_s,
                             std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    } else {
      throw std::invalid_argument("unknown algorithm: " + algo);
    }
  }
  return r;
}

/// Runs every (algo, model, size) cell; rows come back in that order
/// whatever the number of workers.
inline std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
  struct Job {
    std::string algo;
    PathModel model;
    std::size_t n;
  };
  std::vector<Job> jobs;
  for (const auto& a : cfg.algos)
    for (PathModel model : cfg.models)
      for (std::size_t n : cfg.sizes) jobs.push_back({a, model, n});
  std::vector<BenchRecord> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) {
      try {
        out[i] = bench_one(jobs[i].algo, cfg.kind, jobs[i].model, jobs[i].n, cfg.seed, cfg.repeats);
      } catch (const std::exception&) {
        // a failed cell keeps its place with NaN answer and time
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out[i] = {jobs[i].algo, std::string(to_string(cfg.kind)) + "/" + std::string(to_string(jobs[i].model)),
                  jobs[i].n, jobs[i].n, 0, nan, nan};
        out[i].seed = cfg.seed;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, cfg.threads); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

/// Fitted slope per (algo, kind) over the given rows.
inline std::map<std::pair<std::string, std::string>, double> fit_slopes(const std::vector<BenchRecord>& rows) {
  std::map<std::pair<std::string, std::string>, std::pair<std::vector<double>, std::vector<double>>> pts;
  for (const auto& r : rows) {
    auto& [x, y] = pts[{r.algo, r.kind}];
    x.push_back(static_cast<double>(r.n + r.m));
    y.push_back(std::max(r.elapsed_s, 1e-9));
  }
  std::map<std::pair<std::string, std::string>, double> out;
  for (const auto& [key, xy] : pts)
    if (xy.first.size() >= 2) out[key] = fit_loglog_slope(xy.first, xy.second);
  return out;
}

}  // namespace tilefrechet
