"""Named verification checks behind `specmon verify` and the acceptance tests.

Each check returns a CheckResult and is cheap enough that the whole battery
runs in well under five minutes; the oracle checks dominate (a few
tridiagonal eigensolves at the default 3001-point grid and one at the
halved step).
"""

from __future__ import annotations

import io
import math
import time
from dataclasses import dataclass

import numpy as np

from .continuation import Arc, Line, PathSpec, continue_path, monodromy
from .hermite import HermiteFamily, hermite_coefficients, hermite_poly, phi
from .oracle import (
    GridSpec,
    SampledSpinor,
    apply_dirac_operator,
    eigen_residual,
    oracle_squared_spectrum,
    sample_spinor,
)
from .spectrum import (
    BranchSigns,
    OscillatorParams,
    SpectralFamily,
    family_polynomial,
    pt_block,
    pt_is_broken,
    sheet_values,
)
from .surface import read_mesh_rows, mesh_to_text, sample_surface

F = SpectralFamily
SIGN_PAIRS = tuple(
    BranchSigns(outer, inner) for outer in (1, -1) for inner in (1, -1)
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def _result(name, passed, detail) -> CheckResult:
    return CheckResult(name, bool(passed), detail)


# --- hermite -------------------------------------------------------------

def check_continuation_identity() -> CheckResult:
    worst = 0.0
    grid = [complex(a, b) for a in (-2, -1, 0, 1, 2) for b in (-2, -1, 0, 1, 2)]
    for n in range(11):
        for xi in grid:
            lhs = phi(HermiteFamily.CONVENTIONAL, n, 1j * xi)
            rhs = (1j) ** n * phi(HermiteFamily.UNCONVENTIONAL, n, xi)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return _result(
        "hermite/continuation-identity",
        worst <= 1e-12,
        f"max rel dev {worst:.2e} (tol 1e-12, n <= 10, 5x5 grid)",
    )


def check_rodrigues_cross() -> CheckResult:
    worst = 0.0
    pts = [0.3, -1.2, 0.8 + 0.5j, -0.4 - 1.1j, 2.0]
    for n in range(16):
        for xi in pts:
            lhs = (1j) ** (-n) * hermite_poly(HermiteFamily.CONVENTIONAL, n, 1j * xi)
            rhs = hermite_poly(HermiteFamily.UNCONVENTIONAL, n, xi)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return _result(
        "hermite/rodrigues-cross-check",
        worst <= 1e-12,
        f"max rel dev {worst:.2e} (tol 1e-12, n <= 15)",
    )


def check_ode_coefficients() -> CheckResult:
    bad = 0
    for fam, s in ((HermiteFamily.CONVENTIONAL, 1), (HermiteFamily.UNCONVENTIONAL, -1)):
        for n in range(0, 31):
            c = hermite_coefficients(fam, n)
            d1 = [k * a for k, a in enumerate(c)][1:] or [0]
            d2 = [k * a for k, a in enumerate(d1)][1:] or [0]
            res = [0] * (len(c) + 1)
            for i, a in enumerate(d2):
                res[i] += a
            for i, a in enumerate(d1):
                res[i + 1] -= s * 2 * a
            for i, a in enumerate(c):
                res[i] += s * 2 * n * a
            bad += any(r != 0 for r in res)
    return _result(
        "hermite/ode-coefficients",
        bad == 0,
        f"{bad} families/orders with nonzero exact residual (must be 0)",
    )


# --- oracle --------------------------------------------------------------

def check_oracle_clusters() -> CheckResult:
    worst = 0.0
    for w in (0.1, 0.2, 0.5):
        p = OscillatorParams(1.0, 1)
        clusters = oracle_squared_spectrum(p, w, count=5)
        for k, (val, _) in enumerate(clusters):
            exact = 1.0 + 2.0 * k * w
            worst = max(worst, abs(val - exact) / exact)
    return _result(
        "oracle/cluster-match",
        worst < 1e-4,
        f"max rel err {worst:.2e} over w in {{0.1, 0.2, 0.5}}, 5 clusters (tol 1e-4)",
    )


def check_oracle_degeneracy() -> CheckResult:
    ok = True
    pattern = None
    for w in (0.1, 0.2, 0.5):
        clusters = oracle_squared_spectrum(OscillatorParams(1.0, 1), w, count=5)
        pattern = [d for _, d in clusters]
        ok = ok and pattern[0] == 1 and all(d == 2 for d in pattern[1:])
    return _result(
        "oracle/degeneracy",
        ok,
        f"multiplicities {pattern} (want [1, 2, 2, 2, 2]); the n=0 level is alone",
    )


def check_oracle_convergence() -> CheckResult:
    p = OscillatorParams(1.0, 1)
    w = 0.2
    grid = GridSpec.default(p, w)
    exact = [1.0 + 2.0 * k * w for k in range(5)]

    def err(g):
        cl = oracle_squared_spectrum(p, w, g, count=5)
        return max(abs(v - e) / e for (v, _), e in zip(cl, exact))

    e1, e2 = err(grid), err(grid.refined())
    ratio = e1 / e2 if e2 > 0 else math.inf
    return _result(
        "oracle/convergence",
        ratio >= 3.0,
        f"halving dx shrinks error {e1:.2e} -> {e2:.2e} (x{ratio:.2f}, want >= 3)",
    )


# --- residual ------------------------------------------------------------

def check_residual_conventional() -> CheckResult:
    worst = 0.0
    for n in (1, 2, 3):
        for w in (0.1, 0.5):
            for outer in (1, -1):
                r = eigen_residual(OscillatorParams(1.0, n), BranchSigns(outer, 1), w)
                worst = max(worst, r)
    return _result(
        "residual/conventional",
        worst < 1e-5,
        f"max residual {worst:.2e} over n in {{1,2,3}}, w in {{0.1,0.5}} (tol 1e-5)",
    )


def check_residual_unconventional() -> CheckResult:
    worst = 0.0
    for n in (1, 2, 3):
        for w in (0.1, 0.5):
            for outer in (1, -1):
                r = eigen_residual(OscillatorParams(1.0, n), BranchSigns(outer, -1), w)
                worst = max(worst, r)
    return _result(
        "residual/unconventional",
        worst < 1e-4,
        f"max windowed residual {worst:.2e} (tol 1e-4, central 50%)",
    )


def check_residual_n0() -> CheckResult:
    p = OscillatorParams(1.0, 0)
    r1 = eigen_residual(p, BranchSigns(1, 1), 0.2)
    r2 = eigen_residual(p, BranchSigns(-1, -1), 0.2)
    vanish_ok = 0
    for signs in (BranchSigns(-1, 1), BranchSigns(1, -1)):
        try:
            eigen_residual(p, signs, 0.2)
        except ValueError:
            vanish_ok += 1
    return _result(
        "residual/n0-states",
        r1 < 1e-5 and r2 < 1e-4 and vanish_ok == 2,
        f"surviving residuals {r1:.2e}/{r2:.2e}; {vanish_ok}/2 vanishing states rejected",
    )


def check_charge_conjugation() -> CheckResult:
    worst = 0.0
    for n in (1, 2):
        p = OscillatorParams(1.0, n)
        w = 0.2
        g = GridSpec.default(p, w)
        s = sample_spinor(p, BranchSigns(-1, 1), w, g)
        conj = SampledSpinor(g, np.conj(s.lower), np.conj(s.upper))
        out = apply_dirac_operator(conj, p, w, conjugated=True)
        e = math.sqrt(1.0 + 2.0 * n * w)
        win = slice(2, -2)
        num = np.sqrt(
            np.sum(np.abs(out.upper[win] - e * conj.upper[win]) ** 2)
            + np.sum(np.abs(out.lower[win] - e * conj.lower[win]) ** 2)
        )
        den = e * np.sqrt(
            np.sum(np.abs(conj.upper[win]) ** 2) + np.sum(np.abs(conj.lower[win]) ** 2)
        )
        worst = max(worst, float(num / den))
    return _result(
        "residual/charge-conjugation",
        worst < 1e-5,
        f"max residual {worst:.2e} for sigma_x conj states under the antiparticle "
        f"operator at +sqrt(m^2 + 2 n m w) (tol 1e-5)",
    )


# --- pt ------------------------------------------------------------------

def check_pt_agreement() -> CheckResult:
    # scan avoids landing exactly on the exceptional point, where ANY
    # entry-rounded route is sqrt(eps)-conditioned (covered separately)
    worst = 0.0
    p = OscillatorParams(1.0, 1)
    for w in np.linspace(0.05, 2.0, 41):
        a = sorted(pt_block(p, w).eigenvalues(), key=lambda z: (z.real, z.imag))
        b = sorted(pt_block(p, w, transformed=True).eigenvalues(), key=lambda z: (z.real, z.imag))
        worst = max(worst, max(abs(x - y) for x, y in zip(a, b)))
    return _result(
        "pt/block-agreement",
        worst <= 1e-12,
        f"max eigenvalue deviation {worst:.2e} between the two block forms (tol 1e-12)",
    )


def check_pt_reality() -> CheckResult:
    ok = True
    for n in (1, 2, 3):
        p = OscillatorParams(1.0, n)
        for w in (0.01, 0.3, 0.49999, 0.50001, 0.8, 2.0, 10.0):
            vals = pt_block(p, w).eigenvalues()
            real = all(abs(v.imag) <= 1e-10 * max(1.0, abs(v)) for v in vals)
            ok = ok and (real == (2 * n * w <= 1.0))
    return _result(
        "pt/reality-threshold",
        ok,
        "spectrum real exactly while 2 n |w| <= m, complex pair beyond",
    )


def check_pt_exceptional_point() -> CheckResult:
    p = OscillatorParams(1.0, 1)
    ev = pt_block(p, 0.5, transformed=True).eigenvalues()
    gap = abs(ev[0] - ev[1])
    raw = pt_block(p, 0.5).eigenvalues()
    raw_gap = abs(raw[0] - raw[1])
    return _result(
        "pt/exceptional-point",
        gap < 1e-8 and raw_gap < 1e-7,
        f"gap {gap:.2e} at |w| = m/(2n) (tol 1e-8); entry-rounded raw form {raw_gap:.2e}",
    )


def check_pt_n0() -> CheckResult:
    p = OscillatorParams(1.0, 0)
    ok = all(not pt_is_broken(p, w) for w in (1e-3, 1.0, 1e3, 1e6))
    return _result("pt/n0-unbroken", ok, "breaking bound is infinite at n = 0 (up to |w| = 1e6)")


# --- monodromy -----------------------------------------------------------

def check_monodromy_conventional() -> CheckResult:
    p = OscillatorParams(1.0, 1)
    small = monodromy(F.DIRAC_CONVENTIONAL, p, 0, 0.3)
    big = monodromy(F.DIRAC_CONVENTIONAL, p, 0, 1.0)
    twice = monodromy(F.DIRAC_CONVENTIONAL, p, 0, 1.0, turns=2)
    ok = small.is_identity() and big.mapping == (1, 0) and twice.is_identity()
    return _result(
        "monodromy/conventional-loops",
        ok,
        f"r=0.3 {small.cycles()}, r=1.0 {big.cycles()}, two turns {twice.cycles()}",
    )


def check_monodromy_n0() -> CheckResult:
    p = OscillatorParams(1.0, 0)
    perms = [monodromy(F.DIRAC_CONVENTIONAL, p, 0, r) for r in (0.1, 1.0, 10.0)]
    ok = all(perm.is_identity() for perm in perms)
    return _result(
        "monodromy/n0-identity",
        ok,
        "all loops trivial at n = 0 (radii 0.1, 1, 10); no branch point to encircle",
    )


def check_monodromy_harmonic() -> CheckResult:
    p = OscillatorParams(1.0, 0)
    half = continue_path(F.HARMONIC_TWO_SHEET, p, PathSpec((Arc(0, 1.0, 0.0, math.pi),)), 0)
    one = monodromy(F.HARMONIC_TWO_SHEET, p, 0, 1.0)
    two = monodromy(F.HARMONIC_TWO_SHEET, p, 0, 1.0, turns=2)
    # each pi of phase moves branch; the sheet sets at omega and -omega agree
    swapped = half.end_sheet == 1 and abs(half.final_value + 0.5) < 1e-9
    ok = swapped and one.is_identity() and two.is_identity()
    return _result(
        "monodromy/harmonic-branch-exchange",
        ok,
        f"pi-arc 0 -> {half.end_sheet} (branch exchange), full turn {one.cycles()}, "
        f"double turn {two.cycles()}",
    )


def _diamond(reach):
    r = reach
    return PathSpec(
        (
            Line(complex(r, 0), complex(0, r)),
            Line(complex(0, r), complex(-r, 0)),
            Line(complex(-r, 0), complex(0, -r)),
            Line(complex(0, -r), complex(r, 0)),
        )
    )


def check_monodromy_nested() -> CheckResult:
    p = OscillatorParams(1.0, 1)
    small = monodromy(F.DIRAC_NESTED_FOUR, p, 0, 0.3)
    sq = [small.mapping[i] for i in small.mapping]
    big = monodromy(F.DIRAC_NESTED_FOUR, p, 0, 2.0)
    diamond_ends = tuple(
        continue_path(F.DIRAC_NESTED_FOUR, p, _diamond(2.0), s).end_sheet for s in range(4)
    )
    endpoint_dev = 0.0
    for s in range(4):
        res = continue_path(F.DIRAC_NESTED_FOUR, p, PathSpec.circle(0, 2.0), s)
        vals = sheet_values(F.DIRAC_NESTED_FOUR, p, res.samples[-1][0])
        endpoint_dev = max(endpoint_dev, min(abs(res.final_value - v) for v in vals))
    ok = (
        all(i == j for i, j in enumerate(sq))
        and big.mapping == diamond_ends
        and endpoint_dev < 1e-9
    )
    return _result(
        "monodromy/nested-loops",
        ok,
        f"small loop {small.cycles()} squares to identity; circle perm {big.cycles()} "
        f"matches square path; endpoint dev {endpoint_dev:.1e} (tol 1e-9)",
    )


# --- surface -------------------------------------------------------------

_DEFAULT_MESHES = (
    (F.HARMONIC_TWO_SHEET, OscillatorParams(1.0, 0)),
    (F.DIRAC_CONVENTIONAL, OscillatorParams(1.0, 1)),
    (F.DIRAC_NESTED_FOUR, OscillatorParams(1.0, 1)),
)


def check_surface_rows() -> CheckResult:
    worst = 0.0
    for fam, p in _DEFAULT_MESHES:
        mesh = sample_surface(fam, p)
        for re_w, im_w, _, re_e, im_e in mesh.rows:
            res = family_polynomial(fam, p, complex(re_w, im_w), complex(re_e, im_e))
            scale = max(1.0, abs(complex(re_e, im_e)) ** 4)
            worst = max(worst, abs(res) / scale)
    return _result(
        "surface/defining-polynomial",
        worst <= 1e-10,
        f"max row residual {worst:.2e} over default meshes (tol 1e-10)",
    )


def check_surface_round_trip() -> CheckResult:
    mesh = sample_surface(F.DIRAC_NESTED_FOUR, OscillatorParams(1.0, 1), resolution=41)
    text = mesh_to_text(mesh)
    rows = read_mesh_rows(io.StringIO(text))
    ok = tuple(rows) == mesh.rows
    return _result(
        "surface/round-trip",
        ok,
        "CSV re-read reproduces every row bit-exactly (17 significant digits)",
    )


def check_surface_timing() -> CheckResult:
    worst = 0.0
    for fam, p in _DEFAULT_MESHES:
        t0 = time.monotonic()
        mesh = sample_surface(fam, p)
        mesh_to_text(mesh)
        worst = max(worst, time.monotonic() - t0)
    return _result(
        "surface/generation-time",
        worst < 5.0,
        f"slowest default 201x201 mesh took {worst:.2f}s (budget 5s)",
    )


SUITES: dict[str, tuple] = {
    "hermite": (check_continuation_identity, check_rodrigues_cross, check_ode_coefficients),
    "oracle": (check_oracle_clusters, check_oracle_degeneracy, check_oracle_convergence),
    "residual": (
        check_residual_conventional,
        check_residual_unconventional,
        check_residual_n0,
        check_charge_conjugation,
    ),
    "pt": (check_pt_agreement, check_pt_reality, check_pt_exceptional_point, check_pt_n0),
    "monodromy": (
        check_monodromy_conventional,
        check_monodromy_n0,
        check_monodromy_harmonic,
        check_monodromy_nested,
    ),
    "surface": (check_surface_rows, check_surface_round_trip, check_surface_timing),
}


def suite_names() -> list[str]:
    return [*SUITES, "all"]


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        checks = [fn for fns in SUITES.values() for fn in fns]
    elif name in SUITES:
        checks = list(SUITES[name])
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(suite_names())}")
    return [fn() for fn in checks]
