"""End-to-end smoke test for the python bindings."""

import json
import math
import os
import tempfile

import systl


def main():
    # Generators and basic mesh accessors.
    d = systl.gen_unit_disk(1)
    assert d.genus == 0 and d.boundary_count == 1
    assert abs(d.area - math.pi) < 0.01 * math.pi
    assert "EmbeddedMesh" in repr(d)

    m = systl.gen_handle_disk(0.2, 2)
    assert m.genus == 1 and m.boundary_count == 1
    assert len(m.vertex(0)) == m.ambient_dim

    # Homology + systole.
    basis = systl.build_basis(m)
    assert basis.rank == 2
    s = systl.systole(m, basis)
    assert abs(s["length"] - 0.730026534071) < 1e-9
    assert s["exact"] and len(s["vertices"]) >= 3

    cz = systl.gen_csaszar()
    fast = systl.systole(cz, systl.build_basis(cz))
    slow = systl.brute_systole(cz)
    assert abs(fast["length"] - slow["length"]) <= 1e-12

    # Sweep operations.
    lhs, rhs = systl.coarea(m, 0)
    assert rhs <= lhs + 1e-9
    iv = systl.nonsep_interval(m, basis, 0)
    assert len(iv["intervals"]) == 1
    assert abs(iv["measure"] - 0.798034667969) < 1e-9
    slice0 = systl.extract_level(m, basis, 0, 0.0)
    assert slice0["arcs"] == 1 and slice0["loops"] == 1
    sweep = json.loads(systl.sweep_json(m, basis, 0, 64))
    assert sweep["samples"] == 64 and len(sweep["rows"]) == 64

    # Inequality reports and the proof trace.
    cert = json.loads(systl.trace_json(m))
    assert cert["case"] == "A"
    assert cert["bound"] == cert["ell"] * cert["ell"] / 10.0 - cert["tol"]
    rep = json.loads(systl.verify_json(m, 1000.0))
    assert rep["pass"] is True and rep["case"] == "A"

    csv, summary = systl.run_family(
        ["handle-disk", "handle-disk"], [0.4, 0.2], refine=1
    )
    lines = csv.strip().split("\n")
    assert lines[1].startswith("instance,family,params")
    assert len(lines) == 4
    assert json.loads(summary)["all_pass"] is True

    # IO round trip.
    with tempfile.TemporaryDirectory() as td:
        path = os.path.join(td, "m.smesh")
        systl.save_smesh(m, path)
        m2 = systl.load_smesh(path)
        assert m2.num_vertices == m.num_vertices
        assert abs(m2.area - m.area) < 1e-12

    # Error mapping.
    try:
        systl.extract_level(m, basis, 7, 0.0)
        raise AssertionError("expected ValueError for a bad axis")
    except ValueError:
        pass
    try:
        systl.verify_json(cz)  # closed surface: no boundary loop
        raise AssertionError("expected RuntimeError for a closed mesh")
    except RuntimeError:
        pass

    print("smoke test ok")


if __name__ == "__main__":
    main()
