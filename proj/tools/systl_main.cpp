// Command-line front end: generate instances, measure systoles, sweep level
// sets, trace the area-excess argument, and batch-verify families.
//
// Exit codes: 0 all checks pass, 2 a theorem check failed, 3 an instance or
// input error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "systl/errors.hpp"
#include "systl/generators.hpp"
#include "systl/harness.hpp"
#include "systl/homology.hpp"
#include "systl/smesh_io.hpp"
#include "systl/sweep.hpp"
#include "systl/systole.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 2;
constexpr int kExitError = 3;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw systl::ParseError("cannot open " + path + " for writing");
  out << text;
}

std::vector<systl::FamilySpec> parse_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw systl::ParseError("cannot open grid file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw systl::ParseError(std::string("bad grid JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("instances")) j = j["instances"];
  if (!j.is_array())
    throw systl::ParseError("grid must be a JSON array of family specs");
  std::vector<systl::FamilySpec> grid;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("family"))
      throw systl::ParseError("each grid entry needs a \"family\" key");
    systl::FamilySpec s;
    s.family = item.at("family").get<std::string>();
    s.eps = item.value("eps", 0.0);
    s.R = item.value("R", 0.0);
    s.r = item.value("r", 0.0);
    s.n = item.value("n", 0);
    s.refine = item.value("refine", 0);
    s.seed = item.value("seed", std::uint64_t{0});
    grid.push_back(s);
  }
  return grid;
}

int cmd_gen(const systl::FamilySpec& spec, const std::string& out) {
  auto m = systl::gen_from_spec(spec);
  systl::save_smesh_file(m, out);
  auto info = m.info();
  std::printf("%s -> %s  V=%d E=%d F=%d genus=%d boundary=%d area=%.12g\n",
              systl::instance_label(spec).c_str(), out.c_str(),
              info.num_vertices, info.num_edges, info.num_faces, info.genus,
              info.boundary_loops, m.area());
  return kExitPass;
}

int cmd_systole(const std::string& file, bool oracle) {
  auto m = systl::load_mesh_file(file);
  auto basis = systl::build_basis(m);
  auto fast = systl::shortest_nonseparating(m, basis);
  std::printf("systole %.12g  witness=%zu vertices  exact=%d\n", fast.length,
              fast.witness.vertices.size(), int(fast.exact));
  if (oracle) {
    auto slow = systl::brute_force_systole(m);
    std::printf("oracle  %.12g\n", slow.length);
    if (std::abs(fast.length - slow.length) > 1e-12) {
      std::fprintf(stderr, "MISMATCH: fast %.17g vs oracle %.17g\n",
                   fast.length, slow.length);
      return kExitCheckFailed;
    }
    std::printf("oracle agreement within 1e-12\n");
  }
  return kExitPass;
}

int cmd_sweep(const std::string& file, const std::string& axis_name,
              int samples, const std::string& out) {
  auto m = systl::load_mesh_file(file);
  auto basis = systl::build_basis(m);
  int axis = axis_name == "x" ? 0 : 1;
  double ell = std::numeric_limits<double>::quiet_NaN();
  if (m.genus() >= 1) ell = systl::shortest_nonseparating(m, basis).length;
  auto s = systl::sweep_axis(m, basis, axis, samples, ell);
  std::printf("axis %s  range [%.12g, %.12g]  samples %d\n",
              axis_name.c_str(), s.lo, s.hi, s.samples);
  std::printf("non-separating band measure %.12g over %zu interval(s)\n",
              s.interval.measure, s.interval.intervals.size());
  for (const auto& iv : s.interval.intervals)
    std::printf("  band [%.12g, %.12g]\n", iv[0], iv[1]);
  std::printf("co-area  integral %.12g <= area %.12g\n", s.coarea.integral_rhs,
              s.coarea.area_lhs);
  if (!s.arc_table.empty()) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& a : s.arc_table) worst = std::min(worst, a.gap);
    std::printf("arc-vs-geodesic min gap %.12g (tol %.12g)\n", worst,
                s.arc_table.front().tol);
  }
  if (std::isfinite(s.adj_lo))
    std::printf("adjusted band endpoints [%.12g, %.12g]\n", s.adj_lo, s.adj_hi);
  if (!out.empty()) write_text(out, systl::sweep_json(s));
  return kExitPass;
}

int cmd_trace(const std::string& file, const std::string& out) {
  auto m = systl::load_mesh_file(file);
  auto basis = systl::build_basis(m);
  auto cert = systl::trace_proof(m, basis);
  std::printf("case %c  ell %.12g  bound %.12g  tol %.12g\n", cert.case_fired,
              cert.ell, cert.bound, cert.tol);
  if (!cert.diagnostics.empty())
    std::printf("diagnostics: %s\n", cert.diagnostics.c_str());
  std::string text = systl::certificate_json(cert);
  if (!out.empty())
    write_text(out, text);
  else
    std::fputs(text.c_str(), stdout);
  return kExitPass;
}

int cmd_verify(const std::string& file, double constant,
               const std::string& out) {
  auto m = systl::load_mesh_file(file);
  auto r = m.genus() >= 2 ? systl::genus_report(m, constant)
                          : systl::verify_inequality(m, constant);
  std::printf("area %.12g  ell %.12g  defect %.12g  ratio %.12g  %s\n", r.area,
              r.ell, r.defect, r.ratio,
              r.anomalous ? "ANOMALOUS" : (r.pass ? "pass" : "FAIL"));
  std::string text = systl::report_json(r);
  if (!out.empty())
    write_text(out, text);
  else
    std::fputs(text.c_str(), stdout);
  return r.pass ? kExitPass : kExitCheckFailed;
}

int cmd_family(const std::string& grid_path, double constant,
               const std::string& out, const std::string& summary_path,
               int threads) {
  auto grid = parse_grid(grid_path);
  systl::FamilyOptions opts;
  opts.constant = constant;
  opts.threads = threads;
  auto run = systl::run_family(grid, opts);
  write_text(out, run.csv);
  if (!summary_path.empty())
    write_text(summary_path, run.summary_json);
  else
    std::fputs(run.summary_json.c_str(), stdout);
  std::printf("%zu instance(s) -> %s  max ratio %.12g  %s\n", run.rows.size(),
              out.c_str(), run.max_ratio,
              run.any_error ? "ERRORS" : (run.all_pass ? "all pass" : "FAIL"));
  if (run.any_error) return kExitError;
  return run.all_pass ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"systolic inequality toolkit for triangulated surfaces"};
  app.require_subcommand(1);

  systl::FamilySpec spec;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a family instance");
  gen->add_option("--family", spec.family, "family name")
      ->required()
      ->check(CLI::IsMember({"disk", "handle-disk", "clifford", "revolution",
                             "genus2-disk", "csaszar"}));
  gen->add_option("--eps", spec.eps, "tube girth (handle families)");
  gen->add_option("--R", spec.R, "major radius (revolution)");
  gen->add_option("--r", spec.r, "minor radius (revolution)");
  gen->add_option("--n", spec.n, "grid size (clifford)");
  gen->add_option("--refine", spec.refine, "refinement rounds");
  gen->add_option("--seed", spec.seed, "interior jitter seed (0 = pristine)");
  gen->add_option("-o,--output", gen_out, "output .smesh path")->required();

  std::string sys_file;
  bool sys_oracle = false;
  auto* sys = app.add_subcommand("systole", "shortest non-separating cycle");
  sys->add_option("file", sys_file, "input mesh")->required();
  sys->add_flag("--oracle", sys_oracle, "cross-check against brute force");

  std::string sw_file, sw_axis = "x", sw_out;
  int sw_samples = 512;
  auto* sw = app.add_subcommand("sweep", "level-set sweep along an axis");
  sw->add_option("file", sw_file, "input mesh")->required();
  sw->add_option("--axis", sw_axis, "sweep axis")
      ->required()
      ->check(CLI::IsMember({"x", "y"}));
  sw->add_option("--samples", sw_samples, "number of levels");
  sw->add_option("-o,--output", sw_out, "write the full report as JSON");

  std::string tr_file, tr_out;
  auto* tr = app.add_subcommand("trace", "replay the area-excess argument");
  tr->add_option("file", tr_file, "input mesh")->required();
  tr->add_option("-o,--output", tr_out, "certificate JSON path");

  std::string vf_file, vf_out;
  double vf_constant = 1000.0;
  auto* vf = app.add_subcommand("verify", "check ell^2 <= M*(area - pi)");
  vf->add_option("file", vf_file, "input mesh")->required();
  vf->add_option("--constant", vf_constant, "constant M");
  vf->add_option("-o,--output", vf_out, "report JSON path");

  std::string fam_grid, fam_out, fam_summary;
  double fam_constant = 1000.0;
  int fam_threads = 0;
  auto* fam = app.add_subcommand("family", "verify a grid of instances");
  fam->add_option("--grid", fam_grid, "grid JSON file")->required();
  fam->add_option("-o,--output", fam_out, "results CSV path")->required();
  fam->add_option("--summary", fam_summary, "summary JSON path");
  fam->add_option("--constant", fam_constant, "constant M");
  fam->add_option("--threads", fam_threads, "worker threads (0 = auto)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(spec, gen_out);
    if (sys->parsed()) return cmd_systole(sys_file, sys_oracle);
    if (sw->parsed()) return cmd_sweep(sw_file, sw_axis, sw_samples, sw_out);
    if (tr->parsed()) return cmd_trace(tr_file, tr_out);
    if (vf->parsed()) return cmd_verify(vf_file, vf_constant, vf_out);
    if (fam->parsed())
      return cmd_family(fam_grid, fam_constant, fam_out, fam_summary,
                        fam_threads);
  } catch (const systl::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
