#pragma once

#include <string>
#include <vector>

#include "systl/generators.hpp"
#include "systl/mesh.hpp"
#include "systl/sweep.hpp"

namespace systl {

// Verdict of the area-excess inequality  ell^2 <= M * (area - pi + delta)
// on a single instance.  delta = 2*pi - boundary_length is the inscription
// deficit of the polygonal boundary: an inscribed polygon under-fills the
// smooth disk by delta-order area, so adding it to the defect keeps the
// discrete check conservative without weakening passes.
struct InequalityReport {
  std::string instance;  // compact id, e.g. "handle-disk(eps=0.1,refine=3)"
  FamilySpec spec;       // echo of the generating parameters (family may be
                         // empty for meshes loaded from files)
  double area = 0.0;
  double boundary_len = 0.0;
  double delta = 0.0;   // 2*pi - boundary_len
  double ell = 0.0;     // shortest non-separating cycle length
  double defect = 0.0;  // area - pi + delta
  double ratio = 0.0;   // ell^2 / defect; NaN when anomalous
  double constant = 0.0;
  bool pass = false;
  bool anomalous = false;  // defect <= 0 on a positive-genus surface
  char proof_case = '-';   // trace_proof case on genus-1 instances
  int genus = 0;
  int refine = 0;
  double seconds = 0.0;  // stays 0 unless timing was requested
  std::string error;     // nonempty when the instance could not be verified

  // Genus >= 2 extras: per-axis non-separating band census and the
  // diagnostic "total band measure <= ell/10" flag.
  std::vector<IntervalReport> census;
  double census_sum = 0.0;
  bool census_small = false;
};

// Checks the inequality on a genus >= 1 surface whose single boundary loop
// lies on the unit circle.  On genus-1 instances the proof tracer runs too
// and its case tag is recorded.  Throws PreconditionError when the
// hypotheses fail; a non-positive defect is flagged anomalous instead of
// thrown (it would contradict the theorem beyond tolerance).
InequalityReport verify_inequality(const EmbeddedMesh& m, double M = 1000.0);

// Same check for genus >= 2 with a configurable constant, plus the
// non-separating interval census for both axes.  Genus-1 meshes are routed
// to verify_inequality via a PreconditionError.
InequalityReport genus_report(const EmbeddedMesh& m, double C);

struct FamilyOptions {
  double constant = 1000.0;
  int threads = 0;          // 0 = hardware default
  bool measure_seconds = false;  // off by default so reports are byte-stable
};

// Batch result for a grid of family specs.  rows is index-aligned with the
// grid; failed instances carry a nonempty error and count as rows.  csv and
// summary_json are ready-to-write artifacts; everything after the leading
// "# generated" comment line is deterministic for a fixed grid.
struct FamilyRun {
  std::vector<InequalityReport> rows;
  std::string csv;
  std::string summary_json;
  double max_ratio = 0.0;  // over non-error rows; 0 when there are none
  int argmax = -1;
  bool all_pass = false;
  bool any_error = false;
};

FamilyRun run_family(const std::vector<FamilySpec>& grid,
                     const FamilyOptions& opts = {});

// Compact deterministic instance label, e.g. "revolution(R=2,r=0.5,refine=1)".
std::string instance_label(const FamilySpec& spec);

// CSV helpers shared with the CLI: header line and one data row.
std::string csv_header();
std::string csv_row(const InequalityReport& r);

// JSON renderings (nlohmann, 2-space indent, insertion-ordered keys).
// Non-finite numbers serialize as null.
std::string report_json(const InequalityReport& r);
std::string certificate_json(const ProofCertificate& c);
std::string sweep_json(const SweepReport& s);

}  // namespace systl
