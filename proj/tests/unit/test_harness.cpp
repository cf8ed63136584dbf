#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "systl/errors.hpp"
#include "systl/generators.hpp"
#include "systl/harness.hpp"
#include "systl/homology.hpp"
#include "systl/sweep.hpp"

using namespace systl;
using doctest::Approx;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("inequality verdict on the reference handle instance") {
  auto m = gen_handle_disk(0.1, 3);
  auto r = verify_inequality(m, 1000.0);

  CHECK(r.pass);
  CHECK_FALSE(r.anomalous);
  CHECK(r.genus == 1);
  CHECK(r.proof_case == 'A');
  CHECK(r.area == Approx(3.5370039455).epsilon(1e-9));
  CHECK(r.boundary_len == Approx(6.28312123849).epsilon(1e-9));
  CHECK(r.ell == Approx(0.386822912645).epsilon(1e-9));
  CHECK(r.defect == Approx(0.3954753606).epsilon(1e-9));
  CHECK(r.ratio == Approx(0.378359768154).epsilon(1e-9));
  CHECK(r.constant == 1000.0);

  // The inscribed polygonal boundary under-shoots the circle, so the
  // deficit is small and positive.
  CHECK(r.boundary_len < 2.0 * kPi);
  CHECK(r.delta > 0.0);
  CHECK(r.delta < 1e-3);
  CHECK(r.delta == Approx(2.0 * kPi - r.boundary_len).epsilon(1e-12));
  CHECK(r.defect == Approx(r.area - kPi + r.delta).epsilon(1e-12));
  CHECK(r.ratio * r.defect >= r.ell * r.ell - 1e-9);

  // Generator provenance is recovered from the mesh comment.
  CHECK(r.spec.family == "handle-disk");
  CHECK(r.refine == 3);
  CHECK(r.instance == "handle-disk(eps=0.1,refine=3)");
}

TEST_CASE("revolution patch passes with a small ratio") {
  auto m = gen_revolution_torus_patch(2.0, 0.5, 2);
  auto r = verify_inequality(m, 1000.0);
  CHECK(r.pass);
  CHECK(r.ratio == Approx(0.21575460314).epsilon(1e-9));
  CHECK(r.ratio < 100.0);
  CHECK(r.proof_case == 'A');
  CHECK(r.delta == Approx(0.00112140539856).epsilon(1e-6));
}

TEST_CASE("inequality hypotheses are enforced") {
  CHECK_THROWS_AS(verify_inequality(gen_unit_disk(1), 1000.0),
                  PreconditionError);
  // Closed torus: no boundary loop at all.
  CHECK_THROWS_AS(verify_inequality(gen_clifford_torus(8), 1000.0),
                  PreconditionError);
}

TEST_CASE("higher genus is accepted by the basic check without a trace") {
  auto m = gen_genus2_disk(0.2, 1);
  auto r = verify_inequality(m, 1000.0);
  CHECK(r.genus == 2);
  CHECK(r.proof_case == '-');
  CHECK(std::isfinite(r.ratio));
}

TEST_CASE("genus report attaches the band census") {
  auto m = gen_genus2_disk(0.2, 2);
  auto r = genus_report(m, 1e6);

  CHECK(r.pass);
  CHECK(r.constant == 1e6);
  CHECK(r.genus == 2);
  CHECK(r.ell == Approx(0.758109696596).epsilon(1e-9));
  CHECK(r.ratio == Approx(0.541417260059).epsilon(1e-9));
  CHECK(std::isfinite(r.ratio));

  REQUIRE(r.census.size() == 2);
  CHECK(r.census[0].intervals.size() == 2);
  CHECK(r.census[1].intervals.size() == 1);
  CHECK(r.census_sum ==
        Approx(r.census[0].measure + r.census[1].measure).epsilon(1e-12));
  CHECK(r.census_sum == Approx(0.862121582031).epsilon(1e-9));
  // The bands here are much wider than ell/10; the flag reports that
  // honestly rather than enforcing it.
  CHECK(r.census_small == (r.census_sum <= r.ell / 10.0));
  CHECK_FALSE(r.census_small);
}

TEST_CASE("genus report hypotheses") {
  CHECK_THROWS_AS(genus_report(gen_handle_disk(0.2, 1), 1e6),
                  PreconditionError);
  CHECK_THROWS_AS(genus_report(gen_unit_disk(1), 1e6), PreconditionError);
}

TEST_CASE("instance labels are compact and deterministic") {
  FamilySpec s;
  s.family = "handle-disk";
  s.eps = 0.1;
  s.refine = 3;
  CHECK(instance_label(s) == "handle-disk(eps=0.1,refine=3)");
  s.seed = 7;
  CHECK(instance_label(s) == "handle-disk(eps=0.1,refine=3,seed=7)");

  FamilySpec rev;
  rev.family = "revolution";
  rev.R = 2.0;
  rev.r = 0.5;
  rev.refine = 1;
  CHECK(instance_label(rev) == "revolution(R=2,r=0.5,refine=1)");

  FamilySpec cl;
  cl.family = "clifford";
  cl.n = 8;
  CHECK(instance_label(cl) == "clifford(n=8)");

  FamilySpec cz;
  cz.family = "csaszar";
  CHECK(instance_label(cz) == "csaszar");
}

TEST_CASE("family run over a grid with one bad instance") {
  std::vector<FamilySpec> grid;
  FamilySpec h;
  h.family = "handle-disk";
  h.refine = 1;
  h.eps = 0.4;
  grid.push_back(h);
  h.eps = 0.2;
  grid.push_back(h);
  FamilySpec d;
  d.family = "disk";
  grid.push_back(d);

  auto run = run_family(grid);
  REQUIRE(run.rows.size() == 3);
  CHECK(run.rows[0].pass);
  CHECK(run.rows[1].pass);
  CHECK(run.rows[0].error.empty());
  CHECK_FALSE(run.rows[2].error.empty());
  CHECK(run.any_error);
  CHECK_FALSE(run.all_pass);
  CHECK(run.max_ratio == Approx(1.12901097618).epsilon(1e-9));
  CHECK(run.argmax == 0);
  CHECK(run.rows[0].ratio == Approx(1.12901097618).epsilon(1e-9));
  CHECK(run.rows[1].ratio == Approx(0.688321083008).epsilon(1e-9));

  for (const auto& r : run.rows)
    if (r.error.empty() && r.pass)
      CHECK(r.ratio * r.defect >= r.ell * r.ell - 1e-9);

  auto csv = lines_of(run.csv);
  REQUIRE(csv.size() == 5);
  CHECK(csv[0].rfind("# generated ", 0) == 0);
  CHECK(csv[1] == csv_header());
  CHECK(csv[1] ==
        "instance,family,params,area,boundary_len,delta,ell,defect,ratio,"
        "case,pass,refine,seconds");
  CHECK(csv[2].find(",true,") != std::string::npos);
  CHECK(csv[2].find(",A,") != std::string::npos);
  CHECK(csv[4].find(",error,") != std::string::npos);
  CHECK(csv[4].rfind("disk(refine=0),disk,", 0) == 0);

  // Deterministic modulo the timestamp comment.
  auto again = run_family(grid);
  auto csv2 = lines_of(again.csv);
  REQUIRE(csv2.size() == csv.size());
  for (size_t i = 1; i < csv.size(); ++i) CHECK(csv2[i] == csv[i]);

  // Summary agrees with the rows.
  auto j = nlohmann::json::parse(run.summary_json);
  double best = 0.0;
  for (const auto& r : run.rows)
    if (r.error.empty() && std::isfinite(r.ratio))
      best = std::max(best, r.ratio);
  CHECK(std::abs(j["max_ratio"].get<double>() - best) <= 1e-12);
  CHECK(j["argmax_instance"] == "handle-disk(eps=0.4,refine=1)");
  CHECK(j["cases"]["A"] == 2);
  CHECK(j["instances"] == 3);
  CHECK(j["all_pass"] == false);
  CHECK(j["rows"].size() == 3);
  CHECK(j["rows"][2]["error"].is_string());
  CHECK(j["rows"][2]["ratio"].is_null());
}

TEST_CASE("empty grid yields a header-only report") {
  auto run = run_family({});
  CHECK(run.rows.empty());
  auto csv = lines_of(run.csv);
  REQUIRE(csv.size() == 2);
  CHECK(csv[1] == csv_header());
  CHECK(run.all_pass);
  CHECK_FALSE(run.any_error);
  auto j = nlohmann::json::parse(run.summary_json);
  CHECK(j["max_ratio"].is_null());
  CHECK(j["argmax_instance"].is_null());
}

TEST_CASE("report and certificate serialize to parseable JSON") {
  auto m = gen_handle_disk(0.2, 2);
  auto basis = build_basis(m);

  auto r = verify_inequality(m, 1000.0);
  auto jr = nlohmann::json::parse(report_json(r));
  CHECK(jr["pass"] == true);
  CHECK(jr["case"] == "A");
  CHECK(jr["genus"] == 1);
  CHECK(jr["ratio"].get<double>() == Approx(r.ratio).epsilon(1e-12));

  auto cert = trace_proof(m, basis);
  auto jc = nlohmann::json::parse(certificate_json(cert));
  CHECK(jc["case"] == "A");
  CHECK(jc["bound"].get<double>() == Approx(cert.bound).epsilon(1e-12));
  // NaN fields (the skipped later-case sweeps) render as null.
  CHECK(jc["gap_measure_x"].is_null());
  CHECK(jc["w_length"].is_null());
  CHECK(jc["interval_x"]["intervals"].size() == 1);
  CHECK(jc["diagnostics"] == "");
}

TEST_CASE("genus census appears in the JSON report") {
  auto m = gen_genus2_disk(0.2, 1);
  auto r = genus_report(m, 1e6);
  auto j = nlohmann::json::parse(report_json(r));
  REQUIRE(j.contains("census"));
  CHECK(j["census"].size() == 2);
  CHECK(j["census"][0]["axis"] == 0);
  CHECK(j["census_small"].is_boolean());
}
