#pragma once

#include "fixtrace/index.hpp"
#include "fixtrace/io.hpp"
#include "fixtrace/lefschetz.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fixtrace {

// A parsed command invocation.
struct JobSpec {
  std::string command;
  std::vector<std::string> inputs;   // file paths, in positional order
  std::optional<std::string> basepoint;
  int tc_bound = 6;
  std::optional<std::string> epsilon;  // rational string
  std::optional<std::string> out;
};

struct RunResult {
  json report;
  int exit_code = 0;
};

namespace cli_detail {

inline long long to_ll(const Int& x) { return x.convert_to<long long>(); }

inline json trace_value_json(const TraceValue& t) {
  json arr = json::array();
  for (const TraceClass& c : t.classes)
    arr.push_back({{"representative", c.representative},
                   {"coefficient", to_ll(c.coefficient)}});
  return arr;
}

inline json shadow_value_json(const ShadowValue& v) {
  json arr = json::array();
  for (const auto& [rep, c] : v.coefficients)
    arr.push_back({{"class", v.ring->group.labels[rep]},
                   {"coefficient", to_ll(c)}});
  return arr;
}

inline const std::string& need_input(const JobSpec& job, std::size_t i,
                                     const char* what) {
  if (i >= job.inputs.size())
    throw CliError("E_USAGE", std::string("missing input file: ") + what);
  return job.inputs[i];
}

inline int need_basepoint(const JobSpec& job, const SimplicialComplex& k) {
  if (!job.basepoint)
    throw CliError("E_BASEPOINT_REQUIRED", "--basepoint <label> is required");
  int v0 = k.vertex_index(*job.basepoint);
  if (v0 < 0)
    throw CliError("E_UNKNOWN_VERTEX", "unknown vertex label: " + *job.basepoint);
  return v0;
}

inline std::optional<Rat> parse_epsilon(const JobSpec& job) {
  if (!job.epsilon) return std::nullopt;
  auto q = parse_rational(*job.epsilon);
  if (!q || *q <= 0)
    throw CliError("E_BAD_RATIONAL", "epsilon must be a positive rational");
  return q;
}

inline void require_connected(const SimplicialComplex& k) {
  if (!is_connected(k))
    throw CliError("E_DISCONNECTED", "complex is not connected");
}

inline void require_basepoint_fixed(const SimplicialComplex& k,
                                    const SimplicialMap& f, int v0) {
  if (f.vertex_map[v0] != v0)
    throw CliError("E_BASEPOINT_NOT_FIXED",
                   "basepoint " + k.vertex_labels[v0] +
                       " is moved by the map (image " +
                       k.vertex_labels[f.vertex_map[v0]] + ")");
}

inline json run_homology(const JobSpec& job) {
  SimplicialComplex k = parse_complex(load_json(need_input(job, 0, "complex")));
  BettiData b = betti_numbers(k);
  json torsion = json::array();
  for (const auto& level : b.torsion) {
    json t = json::array();
    for (const Int& f : level) t.push_back(to_ll(f));
    torsion.push_back(std::move(t));
  }
  return {{"command", "homology"},
          {"betti", b.betti},
          {"torsion", torsion},
          {"euler", euler_characteristic(k)}};
}

inline json run_lefschetz(const JobSpec& job) {
  SimplicialComplex k = parse_complex(load_json(need_input(job, 0, "complex")));
  SimplicialMap f = parse_map(load_json(need_input(job, 1, "map")), k);
  Int hom = lefschetz_homological(f);
  Int chn = lefschetz_chain(f);
  return {{"command", "lefschetz"},
          {"homological", to_ll(hom)},
          {"chain", to_ll(chn)},
          {"agree", hom == chn}};
}

inline json run_reidemeister(const JobSpec& job) {
  SimplicialComplex k = parse_complex(load_json(need_input(job, 0, "complex")));
  SimplicialMap f = parse_map(load_json(need_input(job, 1, "map")), k);
  require_connected(k);
  int v0 = need_basepoint(job, k);
  require_basepoint_fixed(k, f, v0);
  ReidemeisterResult r = reidemeister_trace(k, f, v0, job.tc_bound);
  Int chain = lefschetz_chain(f);
  Int aug = r.trace.augmentation();
  return {{"command", "reidemeister"},
          {"basepoint", k.vertex_labels[v0]},
          {"tier", tier_name(r.trace.tier)},
          {"exact", r.trace.exact},
          {"classes", trace_value_json(r.trace)},
          {"augmentation", to_ll(aug)},
          {"lefschetz_chain", to_ll(chain)},
          {"augmentation_agrees", aug == chain}};
}

inline json run_nielsen(const JobSpec& job) {
  SimplicialComplex k = parse_complex(load_json(need_input(job, 0, "complex")));
  SimplicialMap f = parse_map(load_json(need_input(job, 1, "map")), k);
  require_connected(k);
  int v0 = need_basepoint(job, k);
  require_basepoint_fixed(k, f, v0);
  ReidemeisterResult r = reidemeister_trace(k, f, v0, job.tc_bound);
  NielsenBound n = nielsen_lower_bound(r.trace);
  return {{"command", "nielsen"},
          {"count", n.count},
          {"certified", n.certified},
          {"tier", tier_name(r.trace.tier)}};
}

inline json run_index(const JobSpec& job) {
  SimplicialComplex k = parse_complex(load_json(need_input(job, 0, "complex")));
  SimplicialMap f = parse_map(load_json(need_input(job, 1, "map")), k);
  EmbeddingData e =
      parse_embedding(load_json(need_input(job, 2, "embedding")), k);
  std::optional<Rat> eps = parse_epsilon(job);
  FixedPointScan scan = enumerate_fixed_points(k, e, f);
  if (scan.trouble == FixedPointTrouble::NonVertex)
    throw CliError("E_NONVERTEX_FIXED_POINT",
                   "realized map has a fixed point that is not a vertex");
  if (scan.trouble == FixedPointTrouble::NotIsolated)
    throw CliError("E_NOT_ISOLATED", "realized fixed-point set is not isolated");
  json points = json::array();
  long long sum = 0;
  for (int x : scan.fixed_vertices) {
    FixedPointEntry entry;
    try {
      entry = vertex_index(k, e, f, x, eps);
    } catch (const IndexFailure& fail) {
      throw CliError(fail.kind == IndexFailure::SampleVanishes
                         ? "E_SAMPLE_VANISHES"
                         : "E_CANNOT_REFINE",
                     std::string(fail.what()) + " at vertex " +
                         k.vertex_labels[x]);
    }
    sum += entry.index;
    points.push_back({{"vertex", k.vertex_labels[x]},
                      {"index", entry.index},
                      {"resolution_samples", entry.samples}});
  }
  Int lef = lefschetz_chain(f);
  return {{"command", "index"},
          {"fixed_points", points},
          {"index_sum", sum},
          {"lefschetz", to_ll(lef)},
          {"hopf_agrees", Int(sum) == lef}};
}

inline json run_geomcheck(const JobSpec& job) {
  SimplicialComplex k = parse_complex(load_json(need_input(job, 0, "complex")));
  SimplicialMap f = parse_map(load_json(need_input(job, 1, "map")), k);
  EmbeddingData e =
      parse_embedding(load_json(need_input(job, 2, "embedding")), k);
  require_connected(k);
  int v0 = need_basepoint(job, k);
  require_basepoint_fixed(k, f, v0);
  FixedPointScan scan = enumerate_fixed_points(k, e, f);
  if (scan.trouble == FixedPointTrouble::NonVertex)
    throw CliError("E_NONVERTEX_FIXED_POINT",
                   "realized map has a fixed point that is not a vertex");
  if (scan.trouble == FixedPointTrouble::NotIsolated)
    throw CliError("E_NOT_ISOLATED", "realized fixed-point set is not isolated");
  GeomCheckResult r;
  try {
    r = geomcheck(k, f, v0, e, job.tc_bound, parse_epsilon(job));
  } catch (const IndexFailure& fail) {
    throw CliError(fail.kind == IndexFailure::SampleVanishes
                       ? "E_SAMPLE_VANISHES"
                       : "E_CANNOT_REFINE",
                   fail.what());
  }
  json points = json::array();
  for (const FixedPointEntry& p : r.geometric.fixed_points)
    points.push_back({{"vertex", k.vertex_labels[p.vertex]},
                      {"index", p.index},
                      {"class", p.class_word.str()}});
  return {{"command", "geomcheck"},
          {"algebraic", trace_value_json(r.algebraic)},
          {"geometric", trace_value_json(r.geometric.geometric_trace)},
          {"fixed_points", points},
          {"agree", r.agree}};
}

inline json run_hh0(const JobSpec& job) {
  RingSpec ring(parse_group(load_json(need_input(job, 0, "group"))));
  std::optional<std::vector<int>> twist;
  if (job.inputs.size() > 1)
    twist = parse_twist(load_json(job.inputs[1]), ring.group);
  ShadowProjector p = hh0(ring, twist);
  return {{"command", "hh0"},
          {"rank", p.rank()},
          {"classes", p.class_labels()},
          {"twisted", twist.has_value()}};
}

inline json run_trace(const JobSpec& job) {
  RingSpec ring(parse_group(load_json(need_input(job, 0, "group"))));
  RMat m = parse_ring_matrix(load_json(need_input(job, 1, "matrix")), ring.group);
  if (m.rows() != m.cols())
    throw CliError("E_DIMENSION", "trace needs a square matrix");
  std::optional<std::vector<int>> twist;
  if (job.inputs.size() > 2)
    twist = parse_twist(load_json(job.inputs[2]), ring.group);
  ShadowProjector p = hh0(ring, twist);
  ShadowValue v = shadow_trace(p, m);
  return {{"command", "trace"},
          {"rank", m.rows()},
          {"twisted", twist.has_value()},
          {"trace", shadow_value_json(v)}};
}

}  // namespace cli_detail

// Dispatches a job. The report is a single structured object; the exit
// status is nonzero exactly when it contains an error object.
inline RunResult run(const JobSpec& job) {
  using namespace cli_detail;
  try {
    json report;
    if (job.command == "homology") report = run_homology(job);
    else if (job.command == "lefschetz") report = run_lefschetz(job);
    else if (job.command == "reidemeister") report = run_reidemeister(job);
    else if (job.command == "nielsen") report = run_nielsen(job);
    else if (job.command == "index") report = run_index(job);
    else if (job.command == "geomcheck") report = run_geomcheck(job);
    else if (job.command == "hh0") report = run_hh0(job);
    else if (job.command == "trace") report = run_trace(job);
    else throw CliError("E_USAGE", "unknown command: " + job.command);
    return {report, 0};
  } catch (const CliError& e) {
    return {{{"error", {{"code", e.code}, {"message", e.what()}}}}, 1};
  } catch (const std::exception& e) {
    return {{{"error", {{"code", "E_INTERNAL"}, {"message", e.what()}}}}, 1};
  }
}

}  // namespace fixtrace
