"""Photon envelope profiles and their polar/axial gauge-field decomposition.

Profiles store the step-function coefficients of the right/left-moving mode
amplitudes on an x grid (lengths in units of c/omega, k = omega/c defaults
to 1).  The step at the surface is represented by a mandatory pair of
one-sided samples at 0- and 0+, which sidesteps any theta(0) convention.

The polar component is the coefficient of A_R + A_L, the axial (pseudo)
component that of A_R - A_L; polar is parity-odd, axial parity-even.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import AsymmetricGrid, ContinuityViolation

SIDE_MINUS = "minus"
SIDE_PLUS = "plus"
SIDE_BULK = "bulk"

_CONTINUITY_TOL = 1e-10


def make_grid(x_max: float = 5.0, n_bulk: int = 200) -> tuple[np.ndarray, np.ndarray]:
    """Mirror-symmetric grid on [-x_max, x_max] with the 0-/0+ pair included.

    Returns (x, side) arrays; n_bulk points are split evenly between the two
    half lines, excluding x = 0 itself.
    """
    if x_max <= 0:
        raise ValueError("x_max must be positive")
    half = max(1, n_bulk // 2)
    right = np.linspace(0.0, x_max, half + 1)[1:]
    x = np.concatenate([-right[::-1], [0.0, 0.0], right])
    side = np.array(
        [SIDE_BULK] * half + [SIDE_MINUS, SIDE_PLUS] + [SIDE_BULK] * half
    )
    return x, side


def _normalize_grid(grid) -> tuple[np.ndarray, np.ndarray]:
    """Accept a bare x array (0-/0+ pair added) or an (x, side) pair."""
    if grid is None:
        return make_grid()
    if isinstance(grid, tuple) and len(grid) == 2 and not np.isscalar(grid[0]):
        x, side = np.asarray(grid[0], dtype=float), np.asarray(grid[1])
        if not (np.any((x == 0.0) & (side == SIDE_MINUS)) and
                np.any((x == 0.0) & (side == SIDE_PLUS))):
            raise ValueError("grid must contain both 0- and 0+ samples")
        return x, side
    x = np.asarray(grid, dtype=float)
    if x.ndim != 1 or np.any(np.diff(x) <= 0):
        raise ValueError("grid must be a strictly increasing 1-D array")
    x = x[x != 0.0]
    neg = x[x < 0.0]
    pos = x[x > 0.0]
    full = np.concatenate([neg, [0.0, 0.0], pos])
    side = np.array(
        [SIDE_BULK] * neg.size + [SIDE_MINUS, SIDE_PLUS] + [SIDE_BULK] * pos.size
    )
    return full, side


@dataclass(frozen=True)
class FieldProfile:
    """Sampled right/left-moving envelope coefficients with one-sided samples.

    ``right_env``/``left_env`` hold the step coefficients only; the plane-wave
    factors e^{+-ikx} are applied by :meth:`total` and :func:`decompose`.
    """

    x: np.ndarray
    side: np.ndarray
    right_env: np.ndarray
    left_env: np.ndarray
    k: float = 1.0

    def __post_init__(self):
        if not (self.x.shape == self.side.shape == self.right_env.shape
                == self.left_env.shape):
            raise ValueError("profile arrays must share one shape")
        if not (np.any((self.x == 0.0) & (self.side == SIDE_MINUS)) and
                np.any((self.x == 0.0) & (self.side == SIDE_PLUS))):
            raise ValueError("profile must contain both 0- and 0+ samples")

    def total(self) -> np.ndarray:
        """Total coefficient right_env e^{ikx} + left_env e^{-ikx}."""
        phase = np.exp(1j * self.k * self.x)
        return self.right_env * phase + self.left_env / phase

    def _at_zero(self, values: np.ndarray) -> tuple[complex, complex]:
        minus = values[(self.x == 0.0) & (self.side == SIDE_MINUS)][0]
        plus = values[(self.x == 0.0) & (self.side == SIDE_PLUS)][0]
        return minus, plus

    def continuity_gap(self) -> complex:
        """Total-coefficient jump across the surface, value(0+) - value(0-)."""
        minus, plus = self._at_zero(self.total())
        return plus - minus

    def is_continuous(self, tol: float = 1e-12) -> bool:
        return abs(self.continuity_gap()) <= tol


def eval_a(t: complex, r: complex, grid=None, k: float = 1.0) -> FieldProfile:
    """Scattering-state envelope: incident + reflected left of the surface,
    transmitted right of it.

    Requires the continuity condition 1 + r = t.
    """
    if abs(1.0 + r - t) > _CONTINUITY_TOL:
        raise ContinuityViolation(f"1 + r - t = {1.0 + r - t!r} exceeds tolerance")
    x, side = _normalize_grid(grid)
    left_region = (x < 0.0) | (side == SIDE_MINUS)
    right_env = np.where(left_region, 1.0 + 0.0j, complex(t))
    left_env = np.where(left_region, complex(r), 0.0 + 0.0j)
    return FieldProfile(x=x, side=side, right_env=right_env, left_env=left_env, k=k)


def eval_b(b_r: complex, b_l: complex, grid=None, k: float = 1.0) -> FieldProfile:
    """Emission-state envelope: outgoing waves on both sides of the surface.

    Asymmetric amplitudes are allowed; the profile is continuous at the
    surface iff b_r = b_l (reported, not enforced).
    """
    x, side = _normalize_grid(grid)
    left_region = (x < 0.0) | (side == SIDE_MINUS)
    right_env = np.where(left_region, 0.0 + 0.0j, complex(b_r))
    left_env = np.where(left_region, complex(b_l), 0.0 + 0.0j)
    return FieldProfile(x=x, side=side, right_env=right_env, left_env=left_env, k=k)


@dataclass(frozen=True)
class GaugeDecomposition:
    """Polar/axial coefficients per sample, plus the through-going uniform
    amplitudes used to isolate the surface-induced axial content."""

    x: np.ndarray
    side: np.ndarray
    polar_env: np.ndarray
    axial_env: np.ndarray
    k: float
    incident_right: complex
    incident_left: complex


@dataclass(frozen=True)
class SurfaceAxial:
    """Surface-induced axial coefficient at x = 0 and its one-sided jump."""

    value: complex
    jump: complex


def decompose(profile: FieldProfile) -> GaugeDecomposition:
    """Split a profile into polar (A_R + A_L) and axial (A_R - A_L) coefficients.

    polar = (right e^{ikx} + left e^{-ikx}) / 2 and
    axial = (right e^{ikx} - left e^{-ikx}) / 2, so the phased right/left
    coefficients recombine exactly as polar +- axial.
    """
    phase = np.exp(1j * profile.k * profile.x)
    right = profile.right_env * phase
    left = profile.left_env / phase
    inc_r, _ = profile._at_zero(profile.right_env)
    _, inc_l = profile._at_zero(profile.left_env)
    return GaugeDecomposition(
        x=profile.x,
        side=profile.side,
        polar_env=(right + left) / 2.0,
        axial_env=(right - left) / 2.0,
        k=profile.k,
        incident_right=inc_r,
        incident_left=inc_l,
    )


def axial_at_surface(dec: GaugeDecomposition) -> SurfaceAxial:
    """Surface value of the axial coefficient, averaged over 0- and 0+.

    The through-going uniform waves (incident right-mover entering from the
    left, incident left-mover entering from the right) carry axial content
    of their own; their contribution is subtracted so that only the
    surface-induced axial component remains.  For every continuous
    scattering profile this vanishes; an emission profile carries a nonzero
    value exactly when b_r != b_l.
    """
    at_zero = (dec.x == 0.0)
    minus = dec.axial_env[at_zero & (dec.side == SIDE_MINUS)][0]
    plus = dec.axial_env[at_zero & (dec.side == SIDE_PLUS)][0]
    uniform = (dec.incident_right - dec.incident_left) / 2.0
    return SurfaceAxial(value=(plus + minus) / 2.0 - uniform, jump=plus - minus)


def parity_transform(profile: FieldProfile) -> FieldProfile:
    """Parity image f(x) -> -f(-x) of the total envelope.

    Applying it twice is the identity; the polar component is parity-odd and
    the axial component parity-even.  Requires a mirror-symmetric grid.
    """
    x, side = profile.x, profile.side
    if not np.allclose(x, -x[::-1], atol=0.0):
        raise AsymmetricGrid("grid is not mirror symmetric about x = 0")
    swap = {SIDE_MINUS: SIDE_PLUS, SIDE_PLUS: SIDE_MINUS, SIDE_BULK: SIDE_BULK}
    if not all(swap[s] == m for s, m in zip(side[::-1], side)):
        raise AsymmetricGrid("side tags are not mirror symmetric about x = 0")
    # f(x) = R(x) e^{ikx} + L(x) e^{-ikx}  =>
    # -f(-x) = [-L(-x)] e^{ikx} + [-R(-x)] e^{-ikx}
    return FieldProfile(
        x=x,
        side=side,
        right_env=-profile.left_env[::-1].copy(),
        left_env=-profile.right_env[::-1].copy(),
        k=profile.k,
    )


def write_profile_csv(profile: FieldProfile, fh) -> None:
    """Emit a profile and its decomposition, one row per grid point."""
    dec = decompose(profile)
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(
        ["x", "re_right", "im_right", "re_left", "im_left",
         "re_polar", "im_polar", "re_axial", "im_axial", "side"]
    )
    for i in range(profile.x.size):
        row = [profile.x[i],
               profile.right_env[i].real, profile.right_env[i].imag,
               profile.left_env[i].real, profile.left_env[i].imag,
               dec.polar_env[i].real, dec.polar_env[i].imag,
               dec.axial_env[i].real, dec.axial_env[i].imag]
        writer.writerow([f"{v:.17g}" for v in row] + [profile.side[i]])
