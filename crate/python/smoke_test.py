#!/usr/bin/env python3
"""Smoke test for the corrpoly_py extension module.

Builds the cdylib with cargo, stages it as an importable module under
build/python/, and exercises the main types and operations end to end.
Exact values cross the boundary as fraction strings, which
fractions.Fraction parses directly.

Run from the repository root (or anywhere):  python3 python/smoke_test.py
"""

import shutil
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
STAGE = REPO / "build" / "python"


def build_module() -> Path:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "corrpoly-python"],
        cwd=REPO,
        check=True,
    )
    suffix = ".dylib" if sys.platform == "darwin" else ".so"
    lib = REPO / "target" / "release" / f"libcorrpoly_py{suffix}"
    STAGE.mkdir(parents=True, exist_ok=True)
    staged = STAGE / "corrpoly_py.so"
    shutil.copy2(lib, staged)
    return STAGE


def main() -> None:
    sys.path.insert(0, str(build_module()))
    import corrpoly_py as cp

    # Exact decimal parsing.
    assert cp.parse_exact("0.9744") == "609/625"
    assert cp.parse_exact("1") == "1"

    # The two-concept polytope and its published vertices.
    system = cp.ConceptSystem(2)
    assert system.n == 2 and system.pairs == [(1, 2)] and system.dimension == 3
    vertices = system.vertices()
    assert [v["fractions"] for v in vertices] == [
        ["0", "0", "0"],
        ["1", "0", "0"],
        ["0", "1", "0"],
        ["1", "1", "1"],
    ]

    # Overextended item (Cuckoo): outside, witness is the violated
    # conjunct inequality.
    verdict = cp.check_concept_pair("1", "0.575", "0.8421")
    assert not verdict.inside
    witness = verdict.witness
    assert witness["inequality"] == "p12 <= p2"
    assert Fraction(witness["violation"]) == Fraction(2671, 10_000)
    assert cp.overextension_degree("1", "0.575", "0.8421") == "2671/10000"

    # Independent fair coins: inside, strictly, with the product
    # decomposition and its measure space.
    verdict = system.membership(["0.5", "0.5", "0.25"])
    assert verdict.inside and verdict.on_boundary is False
    assert verdict.decomposition == {"00": "1/4", "10": "1/4", "01": "1/4", "11": "1/4"}
    assert verdict.measure_space == {"singles": ["1/2", "1/2"], "pairs": ["1/4"]}

    # A vertex sits on the boundary and decomposes onto itself.
    assert system.decompose(["1", "1", "1"]) == {"11": "1"}
    assert system.membership(["1", "1", "1"]).on_boundary is True

    # The four boundary inequalities.
    facets = system.facets()
    assert len(facets) == 4
    assert "p1 + p2 - p12 <= 1" in {f["rendered"] for f in facets}

    # Chebyshev distance to the polytope, exact.
    assert system.violation_magnitude(["0.9744", "0.3077", "0.5263"]) == "1093/10000"
    assert system.violation_magnitude(["0.5", "0.5", "0.25"]) == "0"

    # Floats are rejected: they cannot represent the decimal data exactly.
    try:
        cp.check_concept_pair(0.5, 0.5, 0.25)
    except TypeError:
        pass
    else:
        raise AssertionError("floats must be rejected")

    # The bundled reference dataset reproduces every published label.
    rows = cp.classify_bundled()
    assert len(rows) == 96
    assert sum(r["inside"] for r in rows) == 21
    assert all(r["matched_expected"] for r in rows)
    overextended = [r for r in rows if Fraction(r["overextension"]) > 0]
    assert overextended and all(not r["inside"] for r in overextended)

    # Three concepts, all pairs measured.
    n3 = cp.ConceptSystem(3, [(1, 2), (1, 3), (2, 3)])
    assert len(n3.vertices()) == 8
    inside = n3.membership(["1", "1", "1", "1", "1", "1"])
    assert inside.inside and inside.decomposition == {"111": "1"}

    print("corrpoly_py smoke test: OK")


if __name__ == "__main__":
    main()
