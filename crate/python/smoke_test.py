#!/usr/bin/env python3
"""Smoke test for the zetaq extension module.

Build the module first, then run this script from anywhere:

    cargo build -p zetaq-py --release
    python3 python/smoke_test.py

The script stages the compiled cdylib under a temp directory as
``zetaq.so`` so no installation step is needed.
"""

import cmath
import math
import shutil
import sys
import tempfile
from pathlib import Path


def stage_module() -> None:
    repo = Path(__file__).resolve().parent.parent
    candidates = [
        repo / "target" / "release" / "libzetaq.so",
        repo / "target" / "debug" / "libzetaq.so",
        repo / "target" / "release" / "libzetaq.dylib",
        repo / "target" / "debug" / "libzetaq.dylib",
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p zetaq-py --release")
    stage = Path(tempfile.mkdtemp(prefix="zetaq-py-"))
    shutil.copy2(built, stage / "zetaq.so")
    sys.path.insert(0, str(stage))


stage_module()

import zetaq  # noqa: E402


def close(a, b, tol=1e-9):
    return abs(a - b) < tol


# Field arithmetic in F_5 and F_4.
f5 = zetaq.Field(5, 1)
assert f5.q == 5 and f5.generator == 2
assert f5.inv(2) == 3
assert f5.dlog(4) == 2
f4 = zetaq.Field(2, 2)
assert f4.modulus == [1, 1, 1]
t = f4.from_coeffs([0, 1])
assert f4.coeffs(f4.mul(t, t)) == [1, 1]
assert f4.trace(t) == 1

# Gauss sums: g(chi^0) = -1 and |g(chi)| = sqrt(q).
assert close(zetaq.gauss_sum(f5, 0), -1)
assert close(zetaq.gauss_sum(f5, 2), math.sqrt(5))
f9 = zetaq.Field(3, 2)
for alpha in range(1, 8):
    assert close(abs(zetaq.gauss_sum(f9, alpha)), 3.0)

# Quartic curve over F_5: roots 1 +/- 2i with multiplicity 3, N_1 = 0.
quartic = zetaq.Surface(f5, 4, [1, 1, 1])
roots = zetaq.fermat_roots(quartic)
assert len(roots) == 6
assert sum(1 for a in roots if close(a, 1 + 2j)) == 3
assert sum(1 for a in roots if close(a, 1 - 2j)) == 3
assert zetaq.count_from_roots(quartic, 1) == 0
form = zetaq.rational_form(quartic)
assert form["p_coeffs"] == [1, -6, 27, -68, 135, -150, 125]
assert form["p_in_numerator"] is True
assert zetaq.weil_report(quartic)["pass"] is True

# Brute-force counting agrees, both for the diagonal form and a text system.
assert zetaq.count_points_diag(quartic, 1) == 0
assert zetaq.count_points("5 1 projective\nX1 + X2\n", 1) == 6
assert zetaq.projective_point_count(3, 7) == 400

# Series and orbit counts: X^2 + 1 over F_3 has N = (0, 2, 0, 2).
counts = [zetaq.count_points("3 1 affine\nX1^2 + 1\n", s) for s in (1, 2, 3, 4)]
assert counts == [0, 2, 0, 2]
assert zetaq.orbit_counts(counts) == [0, 1, 0, 0]
assert zetaq.zeta_series(counts) == zetaq.euler_product_series([0, 1, 0, 0], 4)

# The simulated circuit reproduces the classical phases.
f7 = zetaq.Field(7, 1)
quadric = zetaq.Surface(f7, 2, [-1, 1, 1, 1])
phase, overlap = zetaq.run_root_circuit(quadric, [1, 1, 1, 1])
assert overlap > 1 - 1e-9
assert close(phase, -1)
for b in quartic.valid_tuples():
    sim, ov = zetaq.run_root_circuit(quartic, b)
    oracle = zetaq.normalized_root_phase(quartic, b)
    assert ov > 1 - 1e-9
    assert abs(sim - oracle) < 1e-6

# Phase estimation reads the aligned eigenphase pi exactly.
est = zetaq.phase_estimation(quadric, [1, 1, 1, 1], t_bits=8, shots=50, seed=7)
assert close(est["theta_hat"], math.pi, tol=1e-12)

# Approximate counting recovers the exact N_1 = 50.
approx = zetaq.approx_count(quadric, s=1, t_bits=8, seed=3)
assert approx["estimate"] == 50
assert approx["plane"] == 57
trace = zetaq.estimate_trace(quadric, t_bits=8, seed=3)
assert close(trace["mean"], -1, tol=1e-6)

print("zetaq python smoke test: OK")
