#!/usr/bin/env python3
"""Smoke test for the klform_py extension module.

Build the extension first:

    cargo build -p klform-py --release

The script locates the compiled cdylib in target/, stages it under an
importable name, and exercises the main types and operations end to end.
"""

import fractions
import json
import pathlib
import shutil
import sys
import sysconfig
import tempfile

REPO = pathlib.Path(__file__).resolve().parent.parent


def stage_module() -> None:
    names = ["libklform_py.so", "klform_py.so", "libklform_py.dylib", "klform_py.pyd"]
    candidates = [
        REPO / "target" / profile / name
        for profile in ("release", "debug")
        for name in names
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("extension not found; run `cargo build -p klform-py --release` first")
    stage = pathlib.Path(tempfile.mkdtemp(prefix="klform-py-"))
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy2(built, stage / f"klform_py{suffix}")
    sys.path.insert(0, str(stage))


stage_module()

import klform_py  # noqa: E402


def check(condition: bool, message: str) -> None:
    if not condition:
        sys.exit(f"FAIL: {message}")
    print(f"ok: {message}")


# Root data and Weyl combinatorics.
a2 = klform_py.RootDatum("A2-sc")
check(a2.rank == 2 and a2.dim_flag == 3, "A2-sc has 3 positive roots")
check(a2.weyl_order() == 6, "Weyl group of A2 has order 6")
check(a2.poincare_polynomial([0, 1]) == [1, 2, 2, 1], "Poincare polynomial of W")
check(a2.weight_stabilizer([1, 0]) == [1], "omega_1 is stabilized by alpha_2")

gl2 = klform_py.RootDatum('{"type": "A", "rank": 1, "lattice": "gl"}')
check(not gl2.is_semisimple, "GL2 is not semisimple")

# Parameters: Jacobson-Morozov data, validity, discreteness.
check(klform_py.jm_cocharacter([2, 1]) == ["1/2", "-1/2", "0/1"], "JM weight strings")
steinberg = klform_py.Parameter(2, [2], ["0/1", "0/1"])
check(steinberg.valid and steinberg.is_essentially_discrete(), "Steinberg is discrete")
bad = klform_py.Parameter(2, [2], ["1/2", "0/1"])
check(not bad.valid and bad.violation == (1, 2), "broken torsion is certified invalid")

params = klform_py.enumerate_parameters(2, 2)
check(len(params) == 5, "GL2 level-2 enumeration has 5 classes")
split = klform_py.Parameter(2, [1, 1], ["0/1", "0/1"])
check(split.centralizer_dimension() == 4, "central s with N = 0 centralizes gl_2")

# Galois twisting.
p5 = klform_py.Parameter(2, [1, 1], ["1/5", "4/5"])
twisted, flags = p5.galois_twist(5, 2)
check(twisted.torsion == ["2/5", "3/5"], "torsion multiplies by k mod 1")
check(all(flags.values()), "twist preserves validity, discreteness, central character")

# Formal degrees: the SL2 Steinberg value 1/6 at q = 2 and 1/4 at q = 3.
a1 = klform_py.RootDatum("A1-sc")
report = klform_py.steinberg_degree(a1, "2", 40)
check(abs(report["degree_numeric"] - 1 / 6) < 1e-6, "Steinberg degree 1/6 at q=2")
report3 = klform_py.steinberg_degree(a1, "3", 40)
check(abs(report3["degree_numeric"] - 1 / 4) < 1e-6, "Steinberg degree 1/4 at q=3")

# Exact partial sum at bound 10 equals 12279/2048 (inverse degree at q=2).
partial = klform_py.steinberg_degree(a1, "2", 10)
check(
    fractions.Fraction(partial["degree_exact"]) == fractions.Fraction(2048, 12279),
    "bound-10 truncation is exactly 2048/12279",
)

# Central zeta_3 twist of the SL3 Steinberg parameter: same degree, exact
# termwise Galois identity.
central = klform_py.steinberg_degree(a2, "2", 20, central_twist=1, gamma=(3, 2))
verdict = central["galois_verdicts"][0]
check(verdict["termwise_exact_equal"], "termwise Galois identity holds exactly")
check(verdict["numeric_degree_diff"] < 1e-8, "twisted degree is unchanged")

# Exact engine versus the independent float oracle.
deg = steinberg.degree_report("4", 12)
check(
    abs(deg["degree_numeric"] - klform_py.oracle_degree(steinberg, "4", 12))
    < 1e-9 * deg["degree_numeric"],
    "exact engine matches the float oracle at q = 4",
)

# M-function exact form: v^{-1} + v^{-3} for lambda = alpha at the adjoint
# Steinberg point of GL2.
m = klform_py.m_function_exact(steinberg, [1])
check("v^2" in m["display"], "M(alpha, s) has an exact rational-function form")

# Campaign surfaces.
table = klform_py.enumerate_table(2, 1)
check([row["discrete"] for row in table["rows"]] == [True, False], "discreteness column")
campaign = klform_py.galois_check([2], [5], 20, ["2"])
check(campaign["all_ok"] and len(campaign["rows"]) == 80, "galois-check campaign passes")
relations = klform_py.hecke_verify(a2, 3)
check(relations["all_ok"], "Hecke relation suite passes for A2")

print("smoke test passed")
