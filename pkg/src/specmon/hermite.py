"""Conventional and unconventional Hermite polynomials and oscillator states.

Two polynomial families share the quantum number n.  The conventional one
is the standard physicists' H_n; the unconventional one is its analytic
continuation i^{-n} H_n(i xi), generated by the same three-term recurrence
with the sign of the (n-1) term flipped.  Pairing them with the decaying
resp. growing Gaussian gives the two towers of oscillator eigenfunctions:

    phi_n^+ = H_n(xi) exp(-xi^2/2)        (normalizable)
    phi_n^- = h_{-n}(xi) exp(+xi^2/2)     (non-normalizable)

with energies +-(n + 1/2) omega.  Everything is unnormalized; the Dirac
spinor coefficients in `spectrum` depend on that choice.
"""

from __future__ import annotations

import cmath
import enum

from .numerics import principal_sqrt

# Beyond this the recurrence magnitudes (~ 2^n n!) eat the relative
# accuracy needed by the downstream residual tests at |xi| ~ 5.
N_MAX = 30


class HermiteFamily(enum.Enum):
    CONVENTIONAL = "conventional"
    UNCONVENTIONAL = "unconventional"

    @property
    def sign(self) -> int:
        """+1 for the conventional family, -1 for the unconventional one."""
        return 1 if self is HermiteFamily.CONVENTIONAL else -1


def _check_n(n: int) -> int:
    if n < 0 or n != int(n):
        raise ValueError(f"quantum number must be a nonnegative integer, got {n}")
    if n > N_MAX:
        raise ValueError(f"n = {n} exceeds n_max = {N_MAX} (recurrence accuracy budget)")
    return int(n)


def hermite_poly(family: HermiteFamily, n: int, xi: complex) -> complex:
    """h_{+n}(xi) = H_n(xi) or h_{-n}(xi) = i^{-n} H_n(i xi), by recurrence.

    Conventional: H_n = 2 xi H_{n-1} - 2(n-1) H_{n-2}.
    Unconventional: h_{-n} = 2 xi h_{-(n-1)} + 2(n-1) h_{-(n-2)}.
    """
    n = _check_n(n)
    xi = complex(xi)
    if n == 0:
        return 1.0 + 0.0j
    sign = family.sign
    prev, cur = 1.0 + 0.0j, 2.0 * xi
    for k in range(2, n + 1):
        prev, cur = cur, 2.0 * xi * cur - sign * 2.0 * (k - 1) * prev
    return cur


def hermite_coefficients(family: HermiteFamily, n: int) -> list[int]:
    """Exact integer coefficients of h_{+-n}, ascending powers of xi."""
    n = _check_n(n)
    sign = family.sign
    prev, cur = [1], [0, 2]
    if n == 0:
        return prev
    for k in range(2, n + 1):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= sign * 2 * (k - 1) * c
        prev, cur = cur, nxt
    return cur


def phi(family: HermiteFamily, n: int, xi: complex) -> complex:
    """Oscillator eigenfunction h_{+-n}(xi) exp(-+ xi^2 / 2), unnormalized."""
    xi = complex(xi)
    h = hermite_poly(family, n, xi)
    try:
        gauss = cmath.exp(-family.sign * xi * xi / 2.0)
    except OverflowError as exc:
        raise OverflowError(
            f"exp({'-' if family.sign > 0 else '+'}xi^2/2) overflows at xi = {xi}"
        ) from exc
    return h * gauss


def ho_eigenvalue(family: HermiteFamily, n: int, omega: complex) -> complex:
    """Harmonic-oscillator energy +-(n + 1/2) omega."""
    if n < 0:
        raise ValueError(f"quantum number must be nonnegative, got {n}")
    return family.sign * (n + 0.5) * complex(omega)


def ho_sheet_value(sheet: int, n: int, omega: complex) -> complex:
    """One branch of the two-valued (n + 1/2) exp(log(omega^2)/2).

    Sheet 0 carries the branch that is +(n + 1/2) omega on the positive
    real axis; sheet 1 is its negative.  The principal log puts the cuts
    on the imaginary omega axis, meeting at the coalescing branch point
    omega = 0, which is rejected.
    """
    if sheet not in (0, 1):
        raise ValueError(f"sheet must be 0 or 1, got {sheet}")
    if n < 0:
        raise ValueError(f"quantum number must be nonnegative, got {n}")
    omega = complex(omega)
    if omega == 0:
        raise ValueError("omega = 0 is the branch point of the two-sheet function")
    value = (n + 0.5) * principal_sqrt(omega * omega)
    return value if sheet == 0 else -value
