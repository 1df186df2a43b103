// Command-line front end. Every command prints one JSON line on stdout.
// Exit codes: 0 computed (a NO decision included), 2 invalid input,
// 3 internal error.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tilefrechet/bench.hpp"
#include "tilefrechet/generators.hpp"
#include "tilefrechet/io.hpp"
#include "tilefrechet/ovh_gadgets.hpp"
#include "tilefrechet/plane_l1.hpp"
#include "tilefrechet/plane_lc.hpp"
#include "tilefrechet/tiling_frechet.hpp"

using namespace tilefrechet;

namespace {

struct Globals {
  std::vector<std::string> report;  // {"csv", PATH}
};

void append_report(const Globals& g, const BenchRecord& r) {
  if (g.report.empty()) return;
  if (g.report.size() != 2 || g.report[0] != "csv") throw InputError("--report expects: csv PATH");
  const bool fresh = !std::filesystem::exists(g.report[1]) || std::filesystem::file_size(g.report[1]) == 0;
  std::ofstream out(g.report[1], std::ios::app);
  if (!out) throw InputError("cannot write " + g.report[1]);
  if (fresh) write_csv_header(out);
  write_csv_row(out, r);
}

void emit(const json& j, const std::string& out_file = {}) {
  if (out_file.empty()) std::cout << j.dump() << '\n';
  else write_json_file(out_file, j);
}

template <class T>
std::vector<T> split_list(const std::string& s, T (*parse)(std::string_view)) {
  std::vector<T> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(parse(item));
  return out;
}

std::size_t parse_size(std::string_view s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw InputError("bad size: " + std::string(s));
  return v;
}

std::string parse_name(std::string_view s) { return std::string(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Fréchet distance on tilings and in the plane"};
  app.require_subcommand(1);
  app.fallthrough();  // --report may follow any subcommand
  Globals g;
  app.add_option("--report", g.report, "append a CSV record: --report csv PATH")->expected(2);
  std::function<void()> action;

  // ---- tiling ----
  auto* tiling = app.add_subcommand("tiling", "paths on square, triangular and hexagonal tilings");
  tiling->require_subcommand(1);
  std::string p_file, q_file;
  std::int64_t t_delta = 0;
  std::optional<std::int64_t> t_delta_opt;
  std::size_t cutoff = 512;

  auto* t_decide = tiling->add_subcommand("decide", "is the distance at most --delta");
  t_decide->add_option("--delta", t_delta)->required();
  t_decide->add_option("--p", p_file)->required();
  t_decide->add_option("--q", q_file)->required();
  t_decide->add_option("--cutoff", cutoff, "n+m below this uses the quadratic DP");
  t_decide->callback([&] {
    action = [&] {
      const auto p = path_from_json(read_json_file(p_file)), q = path_from_json(read_json_file(q_file));
      const DecisionReport r = decide(p, q, t_delta, {cutoff});
      emit({{"answer", r.answer}, {"blocks_separated", r.blocks_separated}, {"blocks_aligned", r.blocks_aligned},
            {"switching_cells", r.switching_cells}, {"used_baseline", r.used_baseline}, {"elapsed_s", r.elapsed}});
      append_report(g, {"tiling-decide", std::string(to_string(p.kind)), p.size(), q.size(),
                        static_cast<double>(t_delta), static_cast<double>(r.answer), r.elapsed, r.blocks_separated,
                        r.blocks_aligned, r.switching_cells, 0});
    };
  });

  auto* t_value = tiling->add_subcommand("value", "exact distance");
  t_value->add_option("--p", p_file)->required();
  t_value->add_option("--q", q_file)->required();
  t_value->add_option("--cutoff", cutoff);
  t_value->callback([&] {
    action = [&] {
      const auto p = path_from_json(read_json_file(p_file)), q = path_from_json(read_json_file(q_file));
      const auto start = std::chrono::steady_clock::now();
      const std::int64_t v = frechet_value(p, q, {cutoff});
      const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      emit({{"value", v}, {"elapsed_s", el}});
      append_report(g, {"tiling-value", std::string(to_string(p.kind)), p.size(), q.size(), 0,
                        static_cast<double>(v), el, 0, 0, 0, 0});
    };
  });

  auto* t_oracle = tiling->add_subcommand("oracle", "quadratic DP; decides with --delta, else the value");
  t_oracle->add_option("--delta", t_delta_opt);
  t_oracle->add_option("--p", p_file)->required();
  t_oracle->add_option("--q", q_file)->required();
  t_oracle->callback([&] {
    action = [&] {
      const auto p = path_from_json(read_json_file(p_file)), q = path_from_json(read_json_file(q_file));
      const auto start = std::chrono::steady_clock::now();
      json out;
      double ans;
      if (t_delta_opt) {
        const bool a = oracle_decide(p, q, *t_delta_opt);
        out["answer"] = a;
        ans = a;
      } else {
        const std::int64_t v = oracle_frechet(p, q);
        out["value"] = v;
        ans = static_cast<double>(v);
      }
      const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      out["elapsed_s"] = el;
      emit(out);
      append_report(g, {"tiling-oracle", std::string(to_string(p.kind)), p.size(), q.size(),
                        t_delta_opt ? static_cast<double>(*t_delta_opt) : 0.0, ans, el, 0, 0, 0, 0});
    };
  });

  // ---- plane ----
  auto* plane = app.add_subcommand("plane", "curves in the plane");
  plane->require_subcommand(1);
  double eps = 0, delta_value = 0, c_order = 2;
  std::optional<std::int64_t> profile;
  std::string curve_file, out_file;
  std::uint64_t seed = 0;

  auto* l1 = plane->add_subcommand("l1", "L1 metric");
  l1->require_subcommand(1);
  auto* l1_decide_cmd = l1->add_subcommand("decide", "is the L1 distance at most --delta");
  l1_decide_cmd->add_option("--delta", delta_value)->required();
  l1_decide_cmd->add_option("--eps", eps)->required();
  l1_decide_cmd->add_option("--profile", profile, "delta of the (eps, delta) profile; measured when absent");
  l1_decide_cmd->add_option("--p", p_file)->required();
  l1_decide_cmd->add_option("--q", q_file)->required();
  l1_decide_cmd->callback([&] {
    action = [&] {
      const auto p = curve_from_json(read_json_file(p_file)), q = curve_from_json(read_json_file(q_file));
      const std::int64_t dl = profile ? *profile : std::max<std::int64_t>(1, delta_for_epsilon(q, eps));
      const PlaneReport r = l1_decide_report(p, q, delta_value, eps, dl);
      emit({{"answer", r.answer}, {"profile", dl}, {"tile", r.tile}, {"blocks_separated", r.blocks_separated},
            {"blocks_aligned", r.blocks_aligned}, {"switching_cells", r.switching_cells},
            {"used_baseline", r.used_baseline}, {"elapsed_s", r.elapsed}});
      append_report(g, {"l1-decide", "L1", p.size(), q.size(), delta_value, static_cast<double>(r.answer),
                        r.elapsed, r.blocks_separated, r.blocks_aligned, r.switching_cells, 0});
    };
  });

  auto* l1_value_cmd = l1->add_subcommand("value", "exact L1 distance");
  l1_value_cmd->add_option("--eps", eps)->required();
  l1_value_cmd->add_option("--profile", profile);
  l1_value_cmd->add_option("--seed", seed, "pivot seed for the selection");
  l1_value_cmd->add_option("--p", p_file)->required();
  l1_value_cmd->add_option("--q", q_file)->required();
  l1_value_cmd->callback([&] {
    action = [&] {
      const auto p = curve_from_json(read_json_file(p_file)), q = curve_from_json(read_json_file(q_file));
      const auto start = std::chrono::steady_clock::now();
      const double v = l1_frechet(p, q, eps, profile, {}, {seed});
      const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      emit({{"value", v}, {"elapsed_s", el}});
      append_report(g, {"l1-value", "L1", p.size(), q.size(), 0, v, el, 0, 0, 0, seed});
    };
  });

  auto* lc = plane->add_subcommand("lc", "Lc metrics, c >= 1");
  lc->require_subcommand(1);
  auto* lc_approx = lc->add_subcommand("approx", "(1+eps)-approximate distance");
  lc_approx->add_option("--c", c_order)->required();
  lc_approx->add_option("--eps", eps)->required();
  lc_approx->add_option("--profile", profile);
  lc_approx->add_option("--p", p_file)->required();
  lc_approx->add_option("--q", q_file)->required();
  lc_approx->callback([&] {
    action = [&] {
      const auto p = curve_from_json(read_json_file(p_file)), q = curve_from_json(read_json_file(q_file));
      const auto start = std::chrono::steady_clock::now();
      const ApproxReport r = approx_frechet_lc_report(p, q, eps, LcMetric{c_order}, profile);
      const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      emit({{"value", r.value}, {"lower", r.lower}, {"decisions", r.decisions}, {"elapsed_s", el}});
      append_report(g, {"lc-approx", "L" + detail::format_double(c_order), p.size(), q.size(), 0, r.value, el, 0, 0,
                        0, 0});
    };
  });

  auto* prof = plane->add_subcommand("profile", "smallest delta with the curve (eps, delta)-dense");
  prof->add_option("--eps", eps)->required();
  prof->add_option("--curve", curve_file)->required();
  prof->callback([&] {
    action = [&] {
      const auto c = curve_from_json(read_json_file(curve_file));
      if (!(eps > 0)) throw InputError("eps must be positive");
      emit({{"delta", delta_for_epsilon(c, eps)}, {"n", c.size()}});
    };
  });

  auto* res = plane->add_subcommand("resample", "insert vertices so that consecutive ones are within eps/8");
  res->add_option("--eps", eps)->required();
  res->add_option("--curve", curve_file)->required();
  res->add_option("--out", out_file);
  res->callback([&] {
    action = [&] {
      const auto c = curve_from_json(read_json_file(curve_file));
      if (!(eps > 0)) throw InputError("eps must be positive");
      emit(curve_to_json(resample(c, eps)), out_file);
    };
  });

  // ---- ovh ----
  auto* ovh = app.add_subcommand("ovh", "orthogonal-vectors gadget graphs");
  ovh->require_subcommand(1);
  std::size_t n = 1, m = 1, d = 1;
  std::string answer = "random", ov_file, graph_file;

  auto* o_gen = ovh->add_subcommand("gen", "random OV instance");
  o_gen->add_option("--n", n)->required();
  o_gen->add_option("--m", m)->required();
  o_gen->add_option("--d", d)->required();
  o_gen->add_option("--seed", seed)->required();
  o_gen->add_option("--answer", answer, "yes, no or random")->check(CLI::IsMember({"yes", "no", "random"}));
  o_gen->add_option("--out", out_file);
  o_gen->callback([&] {
    action = [&] {
      if (n == 0 || m == 0 || d == 0) throw InputError("n, m and d must be positive");
      const bool yes = answer == "yes" || (answer == "random" && (seed & 1));
      auto [U, W] = random_ov(n, m, d, yes, seed);
      emit(ov_to_json({d, U, W}), out_file);
    };
  });

  auto* o_build = ovh->add_subcommand("build", "gadget graph of an OV instance");
  o_build->add_option("--ov", ov_file)->required();
  o_build->add_option("--out", out_file);
  o_build->callback([&] {
    action = [&] {
      const RawOV ov = ov_from_json(read_json_file(ov_file));
      emit(gadget_to_json(build_gadget_graph(preprocess_ov(ov.U, ov.W))), out_file);
    };
  });

  auto* o_check = ovh->add_subcommand("check", "verify the distance properties of a gadget graph");
  o_check->add_option("--graph", graph_file)->required();
  o_check->callback([&] {
    action = [&] {
      const GadgetGraph gg = gadget_from_json(read_json_file(graph_file));
      const GadgetReport r = verify_gadget(gg);
      json v = json::array();
      for (const auto& x : r.violations)
        v.push_back({{"property", x.property}, {"witness", {x.a, x.b}}, {"expected", x.expected}, {"got", x.got}});
      emit({{"ok", r.ok()}, {"vertices", gg.size()}, {"edges", gg.edges.size()}, {"violations", v}});
    };
  });

  auto* o_frechet = ovh->add_subcommand("frechet", "graph Fréchet distance of P and Q");
  auto* graph_opt = o_frechet->add_option("--graph", graph_file);
  o_frechet->add_option("--ov", ov_file, "build the graph from an OV instance instead")->excludes(graph_opt);
  o_frechet->callback([&] {
    action = [&] {
      if (graph_file.empty() == ov_file.empty()) throw InputError("give exactly one of --graph, --ov");
      json out;
      GadgetGraph gg;
      if (!ov_file.empty()) {
        const RawOV ov = ov_from_json(read_json_file(ov_file));
        gg = build_gadget_graph(preprocess_ov(ov.U, ov.W));
        out["orthogonal_pair"] = brute_force_ov(ov.U, ov.W);
      } else {
        gg = gadget_from_json(read_json_file(graph_file));
      }
      const auto start = std::chrono::steady_clock::now();
      const int v = graph_frechet(gg);
      const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      out["value"] = v;
      out["at_most_4"] = v <= 4;
      out["elapsed_s"] = el;
      emit(out);
      append_report(g, {"ovh-frechet", "graph", gg.P.size(), gg.Q.size(), 4, static_cast<double>(v), el, 0, 0, 0, 0});
    };
  });

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "instance generators");
  gen->require_subcommand(1);
  std::string kind_name = "square", model_name = "randomwalk";
  std::int64_t target = 1;

  auto* g_path = gen->add_subcommand("path", "seeded simple path on a tiling");
  g_path->add_option("--kind", kind_name);
  g_path->add_option("--n", n)->required();
  g_path->add_option("--model", model_name);
  g_path->add_option("--seed", seed);
  g_path->add_option("--out", out_file);
  g_path->callback([&] {
    action = [&] {
      emit(path_to_json(gen_path(parse_tiling_kind(kind_name), n, parse_path_model(model_name), seed)), out_file);
    };
  });

  auto* g_curve = gen->add_subcommand("curve", "seeded plane curve with profile at most --delta");
  g_curve->add_option("--n", n)->required();
  g_curve->add_option("--eps", eps)->required();
  g_curve->add_option("--delta", target)->required();
  g_curve->add_option("--seed", seed);
  g_curve->add_option("--out", out_file);
  g_curve->callback([&] { action = [&] { emit(curve_to_json(gen_eps_delta_curve(n, eps, target, seed)), out_file); }; });

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "time fast and oracle deciders and fit log-log slopes");
  std::string algos = "fast,oracle", models = "randomwalk,staircase", sizes = "1024,2048,4096";
  unsigned threads = 1, repeats = 1;
  bench->add_option("--algos", algos);
  bench->add_option("--kind", kind_name);
  bench->add_option("--models", models);
  bench->add_option("--sizes", sizes);
  bench->add_option("--seed", seed);
  bench->add_option("--threads", threads);
  bench->add_option("--repeats", repeats);
  bench->add_option("--out", out_file, "CSV output");
  bench->callback([&] {
    action = [&] {
      BenchConfig cfg;
      cfg.algos = split_list<std::string>(algos, parse_name);
      cfg.kind = parse_tiling_kind(kind_name);
      cfg.models = split_list<PathModel>(models, parse_path_model);
      cfg.sizes = split_list<std::size_t>(sizes, parse_size);
      cfg.seed = seed;
      cfg.threads = threads;
      cfg.repeats = repeats;
      for (const auto& a : cfg.algos)
        if (a != "fast" && a != "oracle") throw InputError("unknown algorithm: " + a);
      const auto rows = run_bench(cfg);
      if (!out_file.empty()) {
        std::ofstream out(out_file);
        if (!out) throw InputError("cannot write " + out_file);
        write_csv(out, rows);
      }
      for (const auto& r : rows) append_report(g, r);
      json slopes = json::array();
      for (const auto& [key, s] : fit_slopes(rows)) slopes.push_back({{"algo", key.first}, {"kind", key.second}, {"slope", s}});
      emit({{"rows", rows.size()}, {"slopes", slopes}});
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    if (action) action();
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
