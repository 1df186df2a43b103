#pragma once

// JSON files for tiling paths, plane curves, OV instances and gadget graphs.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tilefrechet/lattice.hpp"
#include "tilefrechet/ovh_gadgets.hpp"
#include "tilefrechet/plane.hpp"

namespace tilefrechet {

using json = nlohmann::json;

/// Malformed or semantically invalid input file.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump() << '\n';
}

namespace detail {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

}  // namespace detail

// ---- tiling paths ----

inline json path_to_json(const TilingPath& p) {
  json v = json::array();
  for (const Coord& c : p.vertices) {
    if (p.kind == TilingKind::hexagonal) v.push_back({c.a, c.b, c.parity});
    else v.push_back({c.a, c.b});
  }
  return {{"tiling", std::string(to_string(p.kind))}, {"vertices", v}};
}

/// Parses and validates; a given parity must agree with the coordinates.
inline TilingPath path_from_json(const json& j) {
  return detail::guarded("path file", [&] {
    const TilingKind kind = parse_tiling_kind(j.at("tiling").get<std::string>());
    std::vector<Coord> seq;
    for (const auto& v : j.at("vertices")) {
      if (!v.is_array() || v.size() < 2 || v.size() > 3) throw InputError("vertex must be [a,b] or [a,b,parity]");
      const Coord c = make_coord(kind, v[0].get<std::int64_t>(), v[1].get<std::int64_t>());
      if (v.size() == 3 && v[2].get<int>() != c.parity) throw InputError("parity mismatch");
      seq.push_back(c);
    }
    if (seq.empty()) throw InputError("empty path");
    return validate_path(kind, seq);
  });
}

// ---- plane curves ----

inline json curve_to_json(const PlaneCurve& p) {
  json v = json::array();
  for (const Point2& q : p.vertices) v.push_back({q.x, q.y});
  return {{"vertices", v}, {"gamma", p.gamma}};
}

inline PlaneCurve curve_from_json(const json& j) {
  return detail::guarded("curve file", [&] {
    PlaneCurve c;
    for (const auto& v : j.at("vertices")) {
      if (!v.is_array() || v.size() != 2) throw InputError("vertex must be [x,y]");
      c.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    c.gamma = j.at("gamma").get<double>();
    if (c.vertices.empty()) throw InputError("empty curve");
    if (!(c.gamma > 0)) throw InputError("gamma must be positive");
    check_gamma(c);
    return c;
  });
}

// ---- OV instances (raw, before preprocessing) ----

struct RawOV {
  std::size_t d = 0;
  std::vector<BitVector> U, W;
};

inline json ov_to_json(const RawOV& ov) {
  json u = json::array(), w = json::array();
  for (const auto& v : ov.U) u.push_back(to_bitstring(v));
  for (const auto& v : ov.W) w.push_back(to_bitstring(v));
  return {{"d", ov.d}, {"U", u}, {"W", w}};
}

inline RawOV ov_from_json(const json& j) {
  return detail::guarded("OV file", [&] {
    RawOV ov;
    ov.d = j.at("d").get<std::size_t>();
    for (const auto& s : j.at("U")) ov.U.push_back(parse_bitstring(s.get<std::string>()));
    for (const auto& s : j.at("W")) ov.W.push_back(parse_bitstring(s.get<std::string>()));
    for (const auto* set : {&ov.U, &ov.W})
      for (const auto& v : *set)
        if (v.size() != ov.d) throw InputError("length mismatch");
    return ov;
  });
}

// ---- gadget graphs ----

inline json gadget_to_json(const GadgetGraph& g) {
  json verts = json::array(), edges = json::array();
  for (std::size_t v = 0; v < g.size(); ++v) verts.push_back({{"id", v}, {"label", std::string(to_string(g.labels[v]))}});
  for (auto [a, b] : g.edges) edges.push_back({a, b});
  return {{"vertices", verts}, {"edges", edges}, {"P", g.P}, {"Q", g.Q}};
}

/// Ids must be 0..|V|-1 in order; box bookkeeping is not stored.
inline GadgetGraph gadget_from_json(const json& j) {
  return detail::guarded("gadget file", [&] {
    GadgetGraph g;
    for (const auto& v : j.at("vertices")) {
      if (v.at("id").get<std::size_t>() != g.labels.size()) throw InputError("vertex ids must be 0..n-1 in order");
      g.labels.push_back(parse_gadget_label(v.at("label").get<std::string>()));
    }
    const std::size_t n = g.labels.size();
    for (const auto& e : j.at("edges")) {
      const auto a = e.at(0).get<std::size_t>(), b = e.at(1).get<std::size_t>();
      if (a >= n || b >= n || a == b) throw InputError("bad edge");
      g.edges.push_back({a, b});
    }
    g.P = j.at("P").get<std::vector<std::size_t>>();
    g.Q = j.at("Q").get<std::vector<std::size_t>>();
    for (const auto* path : {&g.P, &g.Q})
      for (std::size_t v : *path)
        if (v >= n) throw InputError("path id out of range");
    if (g.P.empty() || g.Q.empty()) throw InputError("empty instance");
    return g;
  });
}

}  // namespace tilefrechet
