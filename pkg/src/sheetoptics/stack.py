"""Transfer-matrix optics for stacks of conducting sheets and dielectric slabs.

Normal incidence only; amplitudes are E-field coefficients of the
(right-moving, left-moving) pair.  Inside the stack pipeline every 2x2 factor
maps the amplitudes on the exit (right) side of an element to the amplitudes
on its entry (left) side, so the stack matrix is the ordered product of the
per-element matrices in stack order and (1, r) = M (t, 0).

Slab thicknesses are measured in units of the reference vacuum wavelength;
``wavelength_scale`` rescales them for wavelength sweeps (scale = lambda /
lambda_ref, frequency-independent sheet conductance assumed).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from functools import reduce
from importlib import resources

import numpy as np

from .errors import LedgerMismatch, SingularStack
from .surface import ScatterCoeffs, SheetParams, solve_single_sheet

_DEGENERATE_TOL = 1e-14
_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Sheet:
    """Conducting-sheet layer plus its emission branch sign (+1 or -1).

    The default sign -1 selects the lower-energy superposition, the branch
    substrates are known to stabilize.
    """

    params: SheetParams
    sign: int = -1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sheet emission sign must be +1 or -1")


@dataclass(frozen=True)
class Slab:
    """Homogeneous dielectric slab: complex index n, thickness d (wavelengths)."""

    n: complex
    d: float

    def __post_init__(self):
        n = complex(self.n)
        if self.d < 0:
            raise ValueError("slab thickness must be >= 0")
        if n.imag < 0:
            raise ValueError("Im(n) must be >= 0 (absorbing or lossless only)")
        if n.real <= 0:
            raise ValueError("Re(n) must be > 0")


Layer = Sheet | Slab


@dataclass(frozen=True)
class LayerStack:
    """Ordered layer sequence between two semi-infinite ambient media."""

    layers: tuple[Layer, ...] = ()
    ambient_in: complex = 1.0
    ambient_out: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        for n in (self.ambient_in, self.ambient_out):
            if complex(n).real <= 0:
                raise ValueError("ambient indices must have Re(n) > 0")

    def sheets(self) -> list[Sheet]:
        return [layer for layer in self.layers if isinstance(layer, Sheet)]


@dataclass(frozen=True)
class EmissionEntry:
    """Per-sheet emission amplitude, total phase and branch sign."""

    b: complex
    theta: float
    sign: int


@dataclass(frozen=True)
class EmissionLedger:
    entries: tuple[EmissionEntry, ...] = ()


@dataclass(frozen=True)
class DecouplingSearch:
    """Result of the t + r = 0 layer-number search."""

    n_exact: float
    n_int: int
    residual: float


def sheet_matrix(params: SheetParams) -> np.ndarray:
    """Interface matrix of one sheet: E continuity plus the B-field jump.

    Maps exit-side to entry-side amplitudes; cond = 0 gives the identity.
    """
    g = complex(params.cond)
    return np.array(
        [[1.0 + g / 2.0, g / 2.0], [-g / 2.0, 1.0 - g / 2.0]], dtype=complex
    )


def propagation_matrix(n: complex, d: float, wavelength_scale: float = 1.0) -> np.ndarray:
    """Phase accumulation diag(e^{i phi}, e^{-i phi}) across a slab.

    phi = 2*pi*n*d / wavelength_scale, mapping entry-side to exit-side
    amplitudes (the inverse of this matrix is the exit-to-entry factor used
    in the stack pipeline).
    """
    if d < 0:
        raise ValueError("propagation distance must be >= 0")
    if wavelength_scale <= 0:
        raise ValueError("wavelength_scale must be positive")
    phi = _TWO_PI * complex(n) * d / wavelength_scale
    return np.array(
        [[np.exp(1j * phi), 0.0], [0.0, np.exp(-1j * phi)]], dtype=complex
    )


def interface_matrix(n1: complex, n2: complex) -> np.ndarray:
    """Fresnel index step at normal incidence, medium n1 side to medium n2 side."""
    n1, n2 = complex(n1), complex(n2)
    if n1.real <= 0 or n2.real <= 0:
        raise ValueError("interface indices must have Re(n) > 0")
    return (1.0 / (2.0 * n2)) * np.array(
        [[n2 + n1, n2 - n1], [n2 - n1, n2 + n1]], dtype=complex
    )


def _tagged_elements(
    stack: LayerStack, wavelength_scale: float
) -> list[tuple[Layer | None, np.ndarray]]:
    """Exit-to-entry matrix factors in stack order, tagged with their layer."""
    elements: list[tuple[Layer | None, np.ndarray]] = []
    current = complex(stack.ambient_in)
    for layer in stack.layers:
        if isinstance(layer, Sheet):
            elements.append((layer, sheet_matrix(layer.params)))
        else:
            if layer.n != current:
                # interface_matrix(a, b) maps a-side to b-side; the slab is
                # on the right of this boundary.
                elements.append((layer, interface_matrix(layer.n, current)))
            phi = _TWO_PI * complex(layer.n) * layer.d / wavelength_scale
            back = np.array(
                [[np.exp(-1j * phi), 0.0], [0.0, np.exp(1j * phi)]], dtype=complex
            )
            elements.append((layer, back))
            current = complex(layer.n)
    if complex(stack.ambient_out) != current:
        elements.append((None, interface_matrix(stack.ambient_out, current)))
    return elements


def element_matrices(stack: LayerStack, wavelength_scale: float = 1.0) -> list[np.ndarray]:
    """Exit-to-entry matrices whose ordered product is :func:`stack_matrix`."""
    return [m for _, m in _tagged_elements(stack, wavelength_scale)]


def stack_matrix(stack: LayerStack, wavelength_scale: float = 1.0) -> np.ndarray:
    mats = element_matrices(stack, wavelength_scale)
    return reduce(np.matmul, mats, np.eye(2, dtype=complex))


def stack_coeffs(stack: LayerStack, wavelength_scale: float = 1.0) -> ScatterCoeffs:
    """Scattering amplitudes of the whole stack, (1, r) = M (t, 0)."""
    m = stack_matrix(stack, wavelength_scale)
    if abs(m[0, 0]) < _DEGENERATE_TOL or not np.all(np.isfinite(m)):
        raise SingularStack("stack transfer matrix is numerically singular")
    t = 1.0 / m[0, 0]
    r = m[1, 0] / m[0, 0]
    return ScatterCoeffs(t=t, r=r)


def stack_absorbance(stack: LayerStack, wavelength_scale: float = 1.0) -> float:
    """Absorbed fraction 1 - |r|^2 - (Re n_out / Re n_in) |t|^2."""
    coeffs = stack_coeffs(stack, wavelength_scale)
    ratio = complex(stack.ambient_out).real / complex(stack.ambient_in).real
    return 1.0 - abs(coeffs.r) ** 2 - ratio * abs(coeffs.t) ** 2


def nlayer_replacement(n_layers: int, cond: complex) -> ScatterCoeffs:
    """Closed form for N zero-spacing sheets: the single sheet at N * cond."""
    if n_layers < 1:
        raise ValueError("n_layers must be >= 1")
    return solve_single_sheet(SheetParams(cond=n_layers * cond))


def decoupling_layer_number(cond: float) -> DecouplingSearch:
    """Layer count with t + r = 0: exact value 2/cond plus the integer minimizer.

    The integer minimizer of |t_N + r_N| is found by exhaustive scan over
    N in [1, ceil(2 * n_exact)], ties broken toward smaller N.
    """
    if not cond > 0:
        raise ValueError("cond must be positive")
    n_exact = 2.0 / cond
    n_max = max(2, int(np.ceil(2.0 * n_exact)))
    best_n, best = 1, np.inf
    for n in range(1, n_max + 1):
        c = nlayer_replacement(n, cond)
        residual = abs(c.t + c.r)
        if residual < best:
            best_n, best = n, residual
    return DecouplingSearch(n_exact=n_exact, n_int=best_n, residual=float(best))


def local_fields(stack: LayerStack, wavelength_scale: float = 1.0) -> np.ndarray:
    """Total E-field amplitude at each sheet, normalized to incident amplitude 1.

    For a single sheet in vacuum this equals t.
    """
    coeffs = stack_coeffs(stack, wavelength_scale)
    v = np.array([coeffs.t, 0.0], dtype=complex)
    fields: list[complex] = []
    for layer, m in reversed(_tagged_elements(stack, wavelength_scale)):
        if isinstance(layer, Sheet):
            # v currently holds the amplitudes just to the right of the
            # sheet; the field is continuous across it.
            fields.append(v[0] + v[1])
        v = m @ v
    return np.array(fields[::-1], dtype=complex)


def _front_phases(stack: LayerStack, wavelength_scale: float) -> np.ndarray:
    """One-way propagation phase from the front surface to each sheet."""
    phases: list[complex] = []
    acc = 0.0 + 0.0j
    for layer in stack.layers:
        if isinstance(layer, Sheet):
            phases.append(acc)
        else:
            acc = acc + _TWO_PI * complex(layer.n) * layer.d / wavelength_scale
    return np.array(phases, dtype=complex)


def build_emission_ledger(
    stack: LayerStack,
    wavelength_scale: float = 1.0,
    signs: list[int] | None = None,
) -> EmissionLedger:
    """Assemble per-sheet emission amplitudes and return-trip phases.

    b_j generalizes the single-sheet formula with the local field at sheet j
    (return-trip attenuation through lossy slabs folded into |b_j|); theta_j
    is the doubled front-surface propagation phase plus the decoupling branch
    phase of sign_j referenced to the stack-level t + r.  When t + r vanishes
    at the stack level the branch phase is taken in quadrature, which makes
    the reflectance independent of the (then degenerate) branch choice.
    """
    sheets = stack.sheets()
    if signs is None:
        signs = [sheet.sign for sheet in sheets]
    if len(signs) != len(sheets):
        raise LedgerMismatch(
            f"{len(signs)} signs supplied for {len(sheets)} sheets"
        )
    coeffs = stack_coeffs(stack, wavelength_scale)
    fields = local_fields(stack, wavelength_scale)
    phases = _front_phases(stack, wavelength_scale)
    s = coeffs.t + coeffs.r
    unit = s / abs(s) if abs(s) >= _DEGENERATE_TOL else 1j

    entries = []
    for sheet, sign, field_amp, phi in zip(sheets, signs, fields, phases):
        p = sheet.params
        a_abs = complex(p.cond).real * abs(field_amp) ** 2
        amp = np.sqrt((p.branching / 2.0) * a_abs)
        damping = float(np.exp(-2.0 * phi.imag))  # return trip through lossy slabs
        b = -p.f_sign * amp * field_amp * damping
        if abs(b) < _DEGENERATE_TOL:
            entries.append(EmissionEntry(b=b, theta=0.0, sign=sign))
            continue
        target = sign * unit * amp * abs(field_amp) * damping * np.exp(2j * phi.real)
        theta = float(np.angle(target / b) % _TWO_PI)
        entries.append(EmissionEntry(b=b, theta=theta, sign=sign))
    return EmissionLedger(entries=tuple(entries))


def reflectance_with_emission(
    stack: LayerStack,
    ledger: EmissionLedger | None = None,
    wavelength_scale: float = 1.0,
) -> float:
    """Reflectance R = |r_N + sum_j e^{i theta_j} b_j|^2 including emission.

    The emission sum is referenced to the front surface.  The additive
    formula is approximate in its energy bookkeeping, so values above 1 are
    clamped with a warning.
    """
    if ledger is None:
        ledger = build_emission_ledger(stack, wavelength_scale)
    if len(ledger.entries) != len(stack.sheets()):
        raise LedgerMismatch(
            f"ledger has {len(ledger.entries)} entries for "
            f"{len(stack.sheets())} sheets"
        )
    coeffs = stack_coeffs(stack, wavelength_scale)
    total = coeffs.r + sum(
        np.exp(1j * e.theta) * e.b for e in ledger.entries
    )
    reflectance = float(abs(total) ** 2)
    if reflectance > 1.0:
        warnings.warn(
            f"emission-corrected reflectance {reflectance} > 1 clamped; the "
            "additive emission formula is only approximately energy-conserving",
            stacklevel=2,
        )
        reflectance = 1.0
    return reflectance


# ---------------------------------------------------------------------------
# Stack description files


def _as_complex(value, what: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ValueError(f"{what} must be a number or an [re, im] pair")


def stack_from_dict(data: dict) -> tuple[LayerStack, float | None]:
    """Build a stack from its JSON-compatible description.

    Returns the stack and the optional reference wavelength in nm.
    """
    if not isinstance(data, dict):
        raise ValueError("stack description must be a JSON object")
    layers: list[Layer] = []
    for i, entry in enumerate(data.get("layers", [])):
        kind = entry.get("type")
        if kind == "sheet":
            params = SheetParams(
                cond=_as_complex(entry.get("cond", 0.0), f"layers[{i}].cond"),
                branching=float(entry.get("branching", 1.0)),
                f_sign=int(entry.get("f_sign", 1)),
            )
            layers.append(Sheet(params=params, sign=int(entry.get("sign", -1))))
        elif kind == "slab":
            layers.append(
                Slab(
                    n=complex(float(entry.get("n_re", 1.0)), float(entry.get("n_im", 0.0))),
                    d=float(entry["d"]),
                )
            )
        else:
            raise ValueError(f"layers[{i}].type must be 'sheet' or 'slab', got {kind!r}")
    stack = LayerStack(
        layers=tuple(layers),
        ambient_in=_as_complex(data.get("ambient_in", 1.0), "ambient_in"),
        ambient_out=_as_complex(data.get("ambient_out", 1.0), "ambient_out"),
    )
    wavelength_nm = data.get("wavelength_nm")
    return stack, (float(wavelength_nm) if wavelength_nm is not None else None)


def stack_to_dict(stack: LayerStack, wavelength_nm: float | None = None) -> dict:
    def num(z: complex):
        z = complex(z)
        return z.real if z.imag == 0.0 else [z.real, z.imag]

    layers = []
    for layer in stack.layers:
        if isinstance(layer, Sheet):
            layers.append(
                {
                    "type": "sheet",
                    "cond": num(layer.params.cond),
                    "branching": layer.params.branching,
                    "f_sign": layer.params.f_sign,
                    "sign": layer.sign,
                }
            )
        else:
            n = complex(layer.n)
            layers.append({"type": "slab", "n_re": n.real, "n_im": n.imag, "d": layer.d})
    data = {
        "ambient_in": num(stack.ambient_in),
        "ambient_out": num(stack.ambient_out),
        "layers": layers,
    }
    if wavelength_nm is not None:
        data["wavelength_nm"] = wavelength_nm
    return data


def load_stack(path) -> tuple[LayerStack, float | None]:
    with open(path, "r", encoding="utf-8") as fh:
        return stack_from_dict(json.load(fh))


def substrate_presets() -> dict[str, dict]:
    """Conventional handbook substrate indices shipped as package data."""
    text = resources.files("sheetoptics").joinpath("data/substrates.json").read_text()
    return json.loads(text)


def substrate_index(name: str) -> complex:
    presets = substrate_presets()
    if name not in presets:
        raise ValueError(f"unknown substrate {name!r}; have {sorted(presets)}")
    entry = presets[name]
    return complex(entry["n_re"], entry["n_im"])
