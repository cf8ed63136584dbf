#include "systl/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <ctime>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "systl/errors.hpp"
#include "systl/homology.hpp"
#include "systl/parallel.hpp"
#include "systl/systole.hpp"

namespace systl {
namespace {

using njson = nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::string num(double v) { return fmt("%.12g", v); }

// JSON has no NaN/inf; render them as null.
njson jnum(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

njson jintervals(const IntervalReport& r) {
  njson j = njson::object();
  j["axis"] = r.axis;
  j["lo"] = jnum(r.lo);
  j["hi"] = jnum(r.hi);
  njson bands = njson::array();
  for (const auto& iv : r.intervals) bands.push_back({iv[0], iv[1]});
  j["intervals"] = bands;
  j["measure"] = jnum(r.measure);
  return j;
}

double boundary_length(const EmbeddedMesh& m) {
  double len = 0.0;
  for (int e = 0; e < m.num_edges(); ++e)
    if (m.edge(e).boundary()) len += m.edge_length(e);
  return len;
}

// Generators echo their parameters into the mesh comment; recover them so
// reports on saved meshes stay self-describing.
FamilySpec spec_from_comment(const EmbeddedMesh& m) {
  std::istringstream in(m.comment());
  std::string line;
  while (std::getline(in, line))
    if (line.find("familyspec:") != std::string::npos) {
      try {
        return FamilySpec::parse(line);
      } catch (const Error&) {
        break;
      }
    }
  return {};
}

// Shared metric block for verify_inequality and genus_report.
void fill_metrics(const EmbeddedMesh& m, const HomologyBasis& basis,
                  double constant, InequalityReport* r) {
  r->area = m.area();
  r->boundary_len = boundary_length(m);
  r->delta = 2.0 * kPi - r->boundary_len;
  r->defect = r->area - kPi + r->delta;
  r->ell = shortest_nonseparating(m, basis).length;
  r->constant = constant;
  r->genus = m.genus();
  if (r->defect <= 0.0) {
    r->anomalous = true;
    r->ratio = std::numeric_limits<double>::quiet_NaN();
    r->pass = false;
  } else {
    r->ratio = r->ell * r->ell / r->defect;
    r->pass = r->ratio <= constant;
  }
  r->spec = spec_from_comment(m);
  if (!r->spec.family.empty()) {
    r->instance = instance_label(r->spec);
    r->refine = r->spec.refine;
  }
}

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string instance_label(const FamilySpec& spec) {
  std::string args;
  auto add = [&](const std::string& part) {
    if (!args.empty()) args += ',';
    args += part;
  };
  if (spec.family == "handle-disk" || spec.family == "genus2-disk")
    add(fmt("eps=%g", spec.eps));
  if (spec.family == "revolution") {
    add(fmt("R=%g", spec.R));
    add(fmt("r=%g", spec.r));
  }
  if (spec.family == "clifford") add(fmt("n=%d", spec.n));
  if (spec.family != "clifford" && spec.family != "csaszar")
    add(fmt("refine=%d", spec.refine));
  if (spec.seed != 0) add(fmt("seed=%llu", (unsigned long long)spec.seed));
  if (args.empty()) return spec.family;
  return spec.family + "(" + args + ")";
}

InequalityReport verify_inequality(const EmbeddedMesh& m, double M) {
  auto info = m.info();
  if (info.genus < 1)
    throw PreconditionError(
        fmt("inequality needs genus >= 1, got genus %d", info.genus));
  if (info.boundary_loops != 1)
    throw PreconditionError(fmt("inequality needs exactly 1 boundary loop, got %d",
                                info.boundary_loops));
  if (!info.unit_circle_boundary)
    throw PreconditionError("boundary loop does not lie on the unit circle");

  InequalityReport r;
  auto basis = build_basis(m);
  fill_metrics(m, basis, M, &r);
  if (info.genus == 1) r.proof_case = trace_proof(m, basis).case_fired;
  return r;
}

InequalityReport genus_report(const EmbeddedMesh& m, double C) {
  auto info = m.info();
  if (info.genus == 1)
    throw PreconditionError(
        "genus-1 surface: use verify_inequality for the torus case");
  if (info.genus < 2)
    throw PreconditionError(
        fmt("genus report needs genus >= 2, got genus %d", info.genus));
  if (info.boundary_loops != 1)
    throw PreconditionError(fmt("genus report needs exactly 1 boundary loop, got %d",
                                info.boundary_loops));

  InequalityReport r;
  auto basis = build_basis(m);
  fill_metrics(m, basis, C, &r);
  for (int axis = 0; axis < 2; ++axis) {
    r.census.push_back(nonsep_interval(m, basis, axis));
    r.census_sum += r.census.back().measure;
  }
  r.census_small = r.census_sum <= r.ell / 10.0;
  return r;
}

std::string csv_header() {
  return "instance,family,params,area,boundary_len,delta,ell,defect,ratio,"
         "case,pass,refine,seconds";
}

std::string csv_row(const InequalityReport& r) {
  const auto& s = r.spec;
  std::string params =
      s.family.empty()
          ? std::string()
          : fmt("eps=%.12g R=%.12g r=%.12g n=%d refine=%d seed=%llu", s.eps,
                s.R, s.r, s.n, s.refine, (unsigned long long)s.seed);
  std::string verdict = !r.error.empty() ? "error" : (r.pass ? "true" : "false");
  std::string row = r.instance + "," + s.family + "," + params;
  if (!r.error.empty()) {
    // Metrics were never computed; leave the numeric cells empty.
    row += ",,,,,,," + std::string(1, r.proof_case) + "," + verdict + "," +
           fmt("%d", r.refine) + ",";
    return row;
  }
  row += "," + num(r.area) + "," + num(r.boundary_len) + "," + num(r.delta) +
         "," + num(r.ell) + "," + num(r.defect) + "," + num(r.ratio) + "," +
         std::string(1, r.proof_case) + "," + verdict + "," +
         fmt("%d", r.refine) + "," + num(r.seconds);
  return row;
}

FamilyRun run_family(const std::vector<FamilySpec>& grid,
                     const FamilyOptions& opts) {
  FamilyRun out;
  const int n = int(grid.size());
  out.rows.resize(n);

  parallel_for(n, opts.threads, [&](int, int i) {
    InequalityReport& row = out.rows[i];
    row.spec = grid[i];
    row.instance = instance_label(grid[i]);
    row.refine = grid[i].refine;
    row.constant = opts.constant;
    auto t0 = std::chrono::steady_clock::now();
    try {
      auto m = gen_from_spec(grid[i]);
      InequalityReport r = m.genus() >= 2 ? genus_report(m, opts.constant)
                                          : verify_inequality(m, opts.constant);
      r.instance = row.instance;
      r.spec = grid[i];
      r.refine = grid[i].refine;
      row = std::move(r);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    if (opts.measure_seconds) {
      std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      row.seconds = dt.count();
    }
  });

  out.any_error = false;
  out.all_pass = true;
  out.max_ratio = 0.0;
  out.argmax = -1;
  for (int i = 0; i < n; ++i) {
    const auto& r = out.rows[i];
    if (!r.error.empty()) {
      out.any_error = true;
      out.all_pass = false;
      continue;
    }
    if (!r.pass) out.all_pass = false;
    if (std::isfinite(r.ratio) &&
        (out.argmax < 0 || r.ratio > out.max_ratio)) {
      out.max_ratio = r.ratio;
      out.argmax = i;
    }
  }

  std::string csv = "# generated " + timestamp_utc() + "\n" + csv_header() + "\n";
  for (const auto& r : out.rows) csv += csv_row(r) + "\n";
  out.csv = std::move(csv);

  njson j = njson::object();
  j["instances"] = n;
  j["constant"] = opts.constant;
  j["max_ratio"] = out.argmax >= 0 ? jnum(out.max_ratio) : njson(nullptr);
  j["argmax_instance"] =
      out.argmax >= 0 ? njson(out.rows[out.argmax].instance) : njson(nullptr);
  j["all_pass"] = out.all_pass;
  std::map<std::string, int> case_counts;
  for (const auto& r : out.rows)
    if (r.error.empty()) ++case_counts[std::string(1, r.proof_case)];
  njson cases = njson::object();
  for (const auto& [k, v] : case_counts) cases[k] = v;
  j["cases"] = cases;
  njson rows = njson::array();
  for (const auto& r : out.rows) {
    njson jr = njson::object();
    jr["instance"] = r.instance;
    jr["ratio"] = r.error.empty() ? jnum(r.ratio) : njson(nullptr);
    jr["case"] = std::string(1, r.proof_case);
    jr["pass"] = r.pass;
    if (!r.error.empty()) jr["error"] = r.error;
    rows.push_back(jr);
  }
  j["rows"] = rows;
  out.summary_json = j.dump(2) + "\n";
  return out;
}

std::string report_json(const InequalityReport& r) {
  njson j = njson::object();
  j["instance"] = r.instance;
  j["family"] = r.spec.family;
  j["area"] = jnum(r.area);
  j["boundary_len"] = jnum(r.boundary_len);
  j["delta"] = jnum(r.delta);
  j["ell"] = jnum(r.ell);
  j["defect"] = jnum(r.defect);
  j["ratio"] = jnum(r.ratio);
  j["constant"] = jnum(r.constant);
  j["pass"] = r.pass;
  j["anomalous"] = r.anomalous;
  j["case"] = std::string(1, r.proof_case);
  j["genus"] = r.genus;
  j["refine"] = r.refine;
  j["seconds"] = jnum(r.seconds);
  if (!r.error.empty()) j["error"] = r.error;
  if (!r.census.empty()) {
    njson census = njson::array();
    for (const auto& c : r.census) census.push_back(jintervals(c));
    j["census"] = census;
    j["census_sum"] = jnum(r.census_sum);
    j["census_small"] = r.census_small;
  }
  return j.dump(2) + "\n";
}

std::string sweep_json(const SweepReport& s) {
  njson j = njson::object();
  j["axis"] = s.axis;
  j["samples"] = s.samples;
  j["lo"] = jnum(s.lo);
  j["hi"] = jnum(s.hi);
  j["interval"] = jintervals(s.interval);
  j["coarea"] = {{"area_lhs", jnum(s.coarea.area_lhs)},
                 {"integral_rhs", jnum(s.coarea.integral_rhs)}};
  j["ell"] = jnum(s.ell);
  j["adj_lo"] = jnum(s.adj_lo);
  j["adj_hi"] = jnum(s.adj_hi);
  njson arcs = njson::array();
  for (const auto& a : s.arc_table)
    arcs.push_back({{"level", jnum(a.level)},
                    {"arc", jnum(a.arc_length)},
                    {"geodesic", jnum(a.geodesic_length)},
                    {"gap", jnum(a.gap)},
                    {"tol", jnum(a.tol)}});
  j["arc_table"] = arcs;
  njson rows = njson::array();
  for (const auto& r : s.rows)
    rows.push_back({{"t", jnum(r.t)},
                    {"arcs", r.arcs},
                    {"loops", r.loops},
                    {"total_length", jnum(r.total_length)},
                    {"nonsep", r.nonsep}});
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string certificate_json(const ProofCertificate& c) {
  njson j = njson::object();
  j["case"] = std::string(1, c.case_fired);
  j["ell"] = jnum(c.ell);
  j["tol"] = jnum(c.tol);
  j["area"] = jnum(c.area);
  j["interval_x"] = jintervals(c.interval_x);
  j["interval_y"] = jintervals(c.interval_y);
  j["nonsep_measure_x"] = jnum(c.nonsep_measure_x);
  j["nonsep_measure_y"] = jnum(c.nonsep_measure_y);
  j["gap_measure_x"] = jnum(c.gap_measure_x);
  j["gap_measure_y"] = jnum(c.gap_measure_y);
  j["band"] = {{"a1", jnum(c.a1)}, {"b1", jnum(c.b1)},
               {"c1", jnum(c.c1)}, {"d1", jnum(c.d1)}};
  j["adjusted"] = {{"a", jnum(c.a)}, {"b", jnum(c.b)},
                   {"c", jnum(c.c)}, {"d", jnum(c.d)}};
  j["w_length"] = jnum(c.w_length);
  j["w_simple"] = c.w_simple;
  j["area_t1"] = jnum(c.area_t1);
  j["area_t2"] = jnum(c.area_t2);
  j["ell1"] = jnum(c.ell1);
  j["cap_area"] = jnum(c.cap_area);
  j["bound"] = jnum(c.bound);
  j["diagnostics"] = c.diagnostics;
  return j.dump(2) + "\n";
}

}  // namespace systl
