// Python module exposing the main operations: generators, mesh accessors,
// SMESH io, homology basis, systole search, level-set sweeps, and the
// inequality / proof-trace reports (returned as JSON strings).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <vector>

#include "systl/errors.hpp"
#include "systl/generators.hpp"
#include "systl/harness.hpp"
#include "systl/homology.hpp"
#include "systl/mesh.hpp"
#include "systl/smesh_io.hpp"
#include "systl/sweep.hpp"
#include "systl/systole.hpp"

namespace py = pybind11;
using namespace systl;

namespace {

py::dict systole_dict(const SystoleReport& r) {
  py::dict d;
  d["length"] = r.length;
  d["vertices"] = r.witness.vertices;
  d["exact"] = r.exact;
  return d;
}

py::list interval_list(const IntervalReport& r) {
  py::list bands;
  for (const auto& iv : r.intervals)
    bands.append(py::make_tuple(iv[0], iv[1]));
  return bands;
}

}  // namespace

PYBIND11_MODULE(_systl, m) {
  m.doc() = "systolic geometry on triangulated surfaces";
  m.attr("__version__") = "0.1.0";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParamError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  py::class_<EmbeddedMesh>(m, "EmbeddedMesh")
      .def_property_readonly("num_vertices", &EmbeddedMesh::num_vertices)
      .def_property_readonly("num_edges", &EmbeddedMesh::num_edges)
      .def_property_readonly("num_faces", &EmbeddedMesh::num_faces)
      .def_property_readonly("area", &EmbeddedMesh::area)
      .def_property_readonly("genus", &EmbeddedMesh::genus)
      .def_property_readonly("boundary_count", &EmbeddedMesh::boundary_count)
      .def_property_readonly("ambient_dim", &EmbeddedMesh::ambient_dim)
      .def("vertex",
           [](const EmbeddedMesh& mm, int v) {
             auto p = mm.vertex(v);
             return std::vector<double>(p.begin(), p.end());
           })
      .def("__repr__", [](const EmbeddedMesh& mm) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "EmbeddedMesh(V=%d, E=%d, F=%d, genus=%d, boundary=%d)",
                      mm.num_vertices(), mm.num_edges(), mm.num_faces(),
                      mm.genus(), mm.boundary_count());
        return std::string(buf);
      });

  py::class_<HomologyBasis>(m, "HomologyBasis")
      .def_property_readonly("rank", [](const HomologyBasis& b) {
        return int(b.generators().size());
      });

  // Generators.
  m.def("gen_unit_disk", &gen_unit_disk, py::arg("refine") = 0);
  m.def("gen_handle_disk", &gen_handle_disk, py::arg("eps"),
        py::arg("refine") = 0);
  m.def("gen_clifford_torus", &gen_clifford_torus, py::arg("n"));
  m.def("gen_revolution_torus_patch", &gen_revolution_torus_patch,
        py::arg("R"), py::arg("r"), py::arg("refine") = 0);
  m.def("gen_genus2_disk", &gen_genus2_disk, py::arg("eps"),
        py::arg("refine") = 0);
  m.def("gen_csaszar", &gen_csaszar);
  m.def("jitter_interior", &jitter_interior, py::arg("mesh"),
        py::arg("amplitude"), py::arg("seed"));
  m.def("refine", &refine, py::arg("mesh"), py::arg("rounds") = 1);

  // IO.
  m.def("load_smesh", &load_smesh_file, py::arg("path"));
  m.def("save_smesh", &save_smesh_file, py::arg("mesh"), py::arg("path"));

  // Homology and systole.
  m.def("build_basis", &build_basis, py::arg("mesh"));
  m.def(
      "systole",
      [](const EmbeddedMesh& mesh, const HomologyBasis& basis) {
        return systole_dict(shortest_nonseparating(mesh, basis));
      },
      py::arg("mesh"), py::arg("basis"));
  m.def(
      "brute_systole",
      [](const EmbeddedMesh& mesh, int max_edges) {
        return systole_dict(brute_force_systole(mesh, max_edges));
      },
      py::arg("mesh"), py::arg("max_edges") = 30);

  // Sweep.
  m.def(
      "extract_level",
      [](const EmbeddedMesh& mesh, const HomologyBasis& basis, int axis,
         double t) {
        auto s = extract_level(mesh, basis, axis, t);
        py::dict d;
        d["level"] = s.level;
        d["arcs"] = s.num_arcs;
        d["loops"] = s.num_loops;
        d["total_length"] = s.total_length;
        d["has_nonsep_loop"] = s.has_nonsep_loop;
        py::list comps;
        for (const auto& c : s.components) {
          py::dict cd;
          cd["is_loop"] = c.is_loop;
          cd["length"] = c.length;
          cd["cls"] = c.cls;
          comps.append(cd);
        }
        d["components"] = comps;
        return d;
      },
      py::arg("mesh"), py::arg("basis"), py::arg("axis"), py::arg("t"));
  m.def(
      "coarea",
      [](const EmbeddedMesh& mesh, int axis) {
        auto r = coarea_check(mesh, axis);
        return py::make_tuple(r.area_lhs, r.integral_rhs);
      },
      py::arg("mesh"), py::arg("axis"));
  m.def(
      "nonsep_interval",
      [](const EmbeddedMesh& mesh, const HomologyBasis& basis, int axis,
         int samples) {
        auto r = nonsep_interval(mesh, basis, axis, samples);
        py::dict d;
        d["lo"] = r.lo;
        d["hi"] = r.hi;
        d["intervals"] = interval_list(r);
        d["measure"] = r.measure;
        return d;
      },
      py::arg("mesh"), py::arg("basis"), py::arg("axis"),
      py::arg("samples") = 512);
  m.def(
      "sweep_json",
      [](const EmbeddedMesh& mesh, const HomologyBasis& basis, int axis,
         int samples, double ell) {
        return sweep_json(sweep_axis(mesh, basis, axis, samples, ell));
      },
      py::arg("mesh"), py::arg("basis"), py::arg("axis"),
      py::arg("samples") = 512,
      py::arg("ell") = std::numeric_limits<double>::quiet_NaN());

  // Inequality checks and the proof trace.
  m.def(
      "trace_json",
      [](const EmbeddedMesh& mesh) {
        auto basis = build_basis(mesh);
        return certificate_json(trace_proof(mesh, basis));
      },
      py::arg("mesh"));
  m.def(
      "verify_json",
      [](const EmbeddedMesh& mesh, double constant) {
        auto r = mesh.genus() >= 2 ? genus_report(mesh, constant)
                                   : verify_inequality(mesh, constant);
        return report_json(r);
      },
      py::arg("mesh"), py::arg("constant") = 1000.0);
  m.def(
      "run_family",
      [](const std::vector<std::string>& families,
         const std::vector<double>& eps_values, int refine, double constant) {
        std::vector<FamilySpec> grid;
        for (size_t i = 0; i < families.size(); ++i) {
          FamilySpec s;
          s.family = families[i];
          if (i < eps_values.size()) s.eps = eps_values[i];
          s.refine = refine;
          grid.push_back(s);
        }
        FamilyOptions opts;
        opts.constant = constant;
        auto run = systl::run_family(grid, opts);
        return py::make_tuple(run.csv, run.summary_json);
      },
      py::arg("families"), py::arg("eps_values"), py::arg("refine") = 1,
      py::arg("constant") = 1000.0);
}
