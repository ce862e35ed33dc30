"""Closed-form Dirac-oscillator spectrum on the complex frequency plane.

The Hamiltonian sigma_y (p - i sigma_z m omega x) + sigma_z m has, per
quantum number n, the four energies

    +- sqrt(m^2 + 2 n m omega)    (conventional pair, particle/antiparticle)
    +- sqrt(m^2 - 2 n m omega)    (unconventional pair)

which assemble into a nested two-root multifunction of sqrt(omega^2).  Each
two-valued function lives on its own two-sheet Riemann surface; the nested
form glues four sheets.  This module provides the sheet values in a fixed
canonical order, the branch points, the eigen-spinors, charge conjugation,
and the 2x2 blocks whose PT symmetry breaks on the negative real axis.

Units: hbar = c = 1, mass and frequency in energy units.  Eigenfunctions
use the unnormalized convention of `hermite` (the printed spinor
coefficients solve the eigenvalue equation only in that convention; the
grid-oracle residual tests pin it).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .hermite import HermiteFamily, phi
from .numerics import principal_sqrt, quadratic_roots


@dataclass(frozen=True)
class OscillatorParams:
    """Mass m > 0 (energy units) and oscillator quantum number n >= 0."""

    m: float
    n: int

    def __post_init__(self):
        if not (self.m > 0):
            raise ValueError(f"mass must be positive, got {self.m}")
        if self.n < 0 or self.n != int(self.n):
            raise ValueError(f"quantum number must be a nonnegative integer, got {self.n}")


class SpectralFamily(enum.Enum):
    """Which multivalued eigenvalue function of complex omega."""

    HARMONIC_TWO_SHEET = "harmonic"
    DIRAC_CONVENTIONAL = "dirac-conv"
    DIRAC_UNCONVENTIONAL = "dirac-unconv"
    DIRAC_NESTED_FOUR = "dirac-nested"

    @property
    def sheet_count(self) -> int:
        return 4 if self is SpectralFamily.DIRAC_NESTED_FOUR else 2


@dataclass(frozen=True)
class BranchSigns:
    """Signs of the nested square roots: outer is the sign in front,
    inner the sign inside the radicand m^2 +- 2 n m omega."""

    outer: int
    inner: int

    def __post_init__(self):
        if self.outer not in (1, -1) or self.inner not in (1, -1):
            raise ValueError(f"signs must be +1 or -1, got {self}")

    @classmethod
    def parse(cls, text: str) -> "BranchSigns":
        """Parse 'outer,inner' given as '+'/'-' pairs, e.g. '+,-'."""
        table = {"+": 1, "-": -1}
        try:
            outer, inner = (table[t.strip()] for t in text.split(","))
        except (KeyError, ValueError):
            raise ValueError(f"expected signs like '+,+' or '-,+', got {text!r}") from None
        return cls(outer, inner)


@dataclass(frozen=True)
class BranchPoint:
    location: complex
    multiplicity: int


@dataclass(frozen=True)
class DiracSpinor:
    """Two-component wavefunction value at one point x."""

    upper: complex
    lower: complex


@dataclass(frozen=True)
class PTBlock:
    """2x2 complex matrix on a degenerate subspace, row-major entries."""

    a11: complex
    a12: complex
    a21: complex
    a22: complex

    def trace(self) -> complex:
        return self.a11 + self.a22

    def det(self) -> complex:
        return self.a11 * self.a22 - self.a12 * self.a21

    def eigenvalues(self) -> tuple[complex, complex]:
        """Roots of lambda^2 - tr lambda + det, from this block's entries."""
        return quadratic_roots(-self.trace(), self.det())


def dirac_energy(params: OscillatorParams, signs: BranchSigns, omega: complex) -> complex:
    """outer * sqrt(m^2 + inner * 2 n m omega), principal branch."""
    m, n = params.m, params.n
    return signs.outer * principal_sqrt(m * m + signs.inner * 2.0 * n * m * complex(omega))


# Canonical sheet order: two-sheet families are (+, -) of their single root;
# the nested family is ordered by (outer, inner) sign pairs at a positive
# real reference frequency below any real branch point.
_NESTED_SIGN_ORDER = (
    BranchSigns(+1, +1),
    BranchSigns(+1, -1),
    BranchSigns(-1, -1),
    BranchSigns(-1, +1),
)


def branch_points(family: SpectralFamily, params: OscillatorParams) -> list[BranchPoint]:
    """Square-root branch points of the family, with multiplicities.

    The harmonic function keeps its coalescing double point at omega = 0;
    the Dirac families lose their branch points entirely at n = 0 (their
    sheets decouple into globally single-valued +-m), which is the surface
    picture behind the missing n = 0 negative-energy state.
    """
    m, n = params.m, params.n
    if family is SpectralFamily.HARMONIC_TWO_SHEET:
        return [BranchPoint(0j, 2)]
    if n == 0:
        return []
    w = m / (2.0 * n)
    if family is SpectralFamily.DIRAC_CONVENTIONAL:
        return [BranchPoint(complex(-w), 1)]
    if family is SpectralFamily.DIRAC_UNCONVENTIONAL:
        return [BranchPoint(complex(+w), 1)]
    return [BranchPoint(0j, 4), BranchPoint(complex(+w), 1), BranchPoint(complex(-w), 1)]


def _reject_branch_point(family, params, omega):
    for bp in branch_points(family, params):
        if omega == bp.location:
            raise ValueError(
                f"omega = {omega} is a branch point of {family.value} "
                f"(multiplicity {bp.multiplicity})"
            )


def sheet_values(
    family: SpectralFamily, params: OscillatorParams, omega: complex
) -> list[complex]:
    """All sheet values at omega, in canonical order.

    These are the closed-form roots with every square root on its
    principal branch, so the cuts sit where the radicands go negative
    real: on the imaginary axis for the sqrt(omega^2) factors and on the
    real axis beyond +-m/(2n) for the outer roots.  Continuity along
    paths is the job of `continuation`.
    """
    omega = complex(omega)
    _reject_branch_point(family, params, omega)
    m, n = params.m, params.n
    if family is SpectralFamily.HARMONIC_TWO_SHEET:
        top = (n + 0.5) * principal_sqrt(omega * omega)
        return [top, -top]
    if family is SpectralFamily.DIRAC_CONVENTIONAL:
        top = principal_sqrt(m * m + 2.0 * n * m * omega)
        return [top, -top]
    if family is SpectralFamily.DIRAC_UNCONVENTIONAL:
        top = principal_sqrt(m * m - 2.0 * n * m * omega)
        return [top, -top]
    s = principal_sqrt(omega * omega)
    return [
        signs.outer * principal_sqrt(m * m + signs.inner * 2.0 * n * m * s)
        for signs in _NESTED_SIGN_ORDER
    ]


def family_polynomial(
    family: SpectralFamily, params: OscillatorParams, omega: complex, energy: complex
) -> complex:
    """Defining polynomial of the family evaluated at (omega, E).

    Zero (to rounding) on every sheet; used by the surface exporter and
    the tests as a sheet-independent membership check.
    """
    m, n = params.m, params.n
    omega = complex(omega)
    e = complex(energy)
    if family is SpectralFamily.HARMONIC_TWO_SHEET:
        return e * e - (n + 0.5) ** 2 * omega * omega
    if family is SpectralFamily.DIRAC_CONVENTIONAL:
        return e * e - m * m - 2.0 * n * m * omega
    if family is SpectralFamily.DIRAC_UNCONVENTIONAL:
        return e * e - m * m + 2.0 * n * m * omega
    return e ** 4 - 2.0 * m * m * e * e + m ** 4 - 4.0 * n * n * m * m * omega * omega


def dirac_spinor(
    params: OscillatorParams, signs: BranchSigns, omega: float, x: float
) -> DiracSpinor:
    """Eigen-spinor value at position x for real omega > 0.

    Conventional tower (inner = +):
        ( (m +- sqrt(m^2 + 2 n m omega)) phi_n^+ , 2 n sqrt(m omega) phi_{n-1}^+ )
    Unconventional tower (inner = -):
        ( 2 n sqrt(m omega) phi_{n-1}^- , (m -+ sqrt(m^2 - 2 n m omega)) phi_n^- )

    with xi = sqrt(m omega) x and phi_{-1}^{+-} = phi_0^{-+}.  The n = 0
    combinations with outer sign opposite to inner vanish identically and
    are rejected.
    """
    m, n = params.m, params.n
    omega = float(omega)
    if not (omega > 0):
        raise ValueError(f"spinor evaluation needs real omega > 0, got {omega}")
    if n == 0 and signs.outer != signs.inner:
        which = "Psi_{-0}^+" if signs.inner == 1 else "Psi_{+0}^-"
        raise ValueError(f"{which} vanishes identically (no such eigenstate)")
    xi = (m * omega) ** 0.5 * x
    energy = dirac_energy(params, signs, omega)
    ladder = 2.0 * n * (m * omega) ** 0.5
    if signs.inner == 1:
        upper = (m + energy) * phi(HermiteFamily.CONVENTIONAL, n, xi)
        lower = ladder * _phi_shifted(HermiteFamily.CONVENTIONAL, n - 1, xi)
        return DiracSpinor(upper, lower)
    upper = ladder * _phi_shifted(HermiteFamily.UNCONVENTIONAL, n - 1, xi)
    lower = (m - energy) * phi(HermiteFamily.UNCONVENTIONAL, n, xi)
    return DiracSpinor(upper, lower)


def _phi_shifted(family: HermiteFamily, k: int, xi: complex) -> complex:
    # phi_{-1} of one family is phi_0 of the other (only reachable at n = 0,
    # where its prefactor 2n vanishes anyway).
    if k == -1:
        other = (
            HermiteFamily.UNCONVENTIONAL
            if family is HermiteFamily.CONVENTIONAL
            else HermiteFamily.CONVENTIONAL
        )
        return phi(other, 0, xi)
    return phi(family, k, xi)


def charge_conjugate(s: DiracSpinor) -> DiracSpinor:
    """sigma_x composed with complex conjugation; an involution."""
    return DiracSpinor(complex(s.lower).conjugate(), complex(s.upper).conjugate())


def pt_block(params: OscillatorParams, omega_abs: float, transformed: bool = False) -> PTBlock:
    """Hamiltonian block on a conventional degenerate subspace at
    omega = -|omega| on the negative real axis.

    Untransformed form: [[m, i sqrt(m |omega|)], [i 2n sqrt(m |omega|), -m]].
    The similarity-transformed form is the standard traceless PT-symmetric
    matrix [[i sqrt(2 n m |omega|), m], [m, -i sqrt(2 n m |omega|)]]; both
    share the characteristic polynomial lambda^2 - (m^2 - 2 n m |omega|).
    n = 0 degenerates to the diagonal embedding diag(m, -m).
    """
    m, n = params.m, params.n
    omega_abs = float(omega_abs)
    if not (omega_abs > 0):
        raise ValueError(f"|omega| must be positive, got {omega_abs}")
    if n == 0:
        return PTBlock(complex(m), 0j, 0j, complex(-m))
    if transformed:
        g = 1j * (2.0 * n * m * omega_abs) ** 0.5
        return PTBlock(g, complex(m), complex(m), -g)
    r = (m * omega_abs) ** 0.5
    return PTBlock(complex(m), 1j * r, 1j * 2.0 * n * r, complex(-m))


def pt_is_broken(params: OscillatorParams, omega_abs: float) -> bool:
    """True iff 2 n |omega| > m, the kinetic-energy threshold where the
    block eigenvalues leave the real axis.  For n = 0 the bound is
    infinite, so the symmetry never breaks."""
    omega_abs = float(omega_abs)
    if omega_abs < 0:
        raise ValueError(f"|omega| must be nonnegative, got {omega_abs}")
    return 2.0 * params.n * omega_abs > params.m
