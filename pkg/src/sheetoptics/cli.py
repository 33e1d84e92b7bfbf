"""Batch command-line front end.

Subcommands: coeffs, twostate, stack, sweep, decouple, profile.
Exit codes: 0 success, 1 configuration error, 2 file I/O error,
3 numerical error.  Outputs are deterministic: CSV floats use fixed
17-significant-digit formatting and JSON carries a provenance header.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import DegenerateDecoupling, SheetOpticsError, SingularStack
from . import fields as fields_mod
from . import stack as stack_mod
from . import surface, twostate

_FMT = "{:.17g}"


class CliConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # config errors must map to exit code 1
        raise CliConfigError(message)


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    steps: int

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.steps)


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    output_path: str | None = None
    fmt: str = "json"
    sweep: SweepSpec | None = None
    options: dict = field(default_factory=dict)


def _parse_sweep(text: str) -> SweepSpec:
    parts = text.split(":")
    if len(parts) != 4:
        raise CliConfigError("--sweep expects var:start:stop:steps")
    variable, start, stop, steps = parts
    if variable not in ("cond", "n_layers", "wavelength_nm", "thickness"):
        raise CliConfigError(f"unknown sweep variable {variable!r}")
    try:
        spec = SweepSpec(variable, float(start), float(stop), int(steps))
    except ValueError as exc:
        raise CliConfigError(f"bad sweep spec {text!r}: {exc}") from exc
    if spec.steps < 1:
        raise CliConfigError("sweep steps must be >= 1")
    if spec.start > spec.stop:
        raise CliConfigError("sweep start must be <= stop")
    return spec


def build_parser() -> _Parser:
    parser = _Parser(prog="sheetoptics", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_sheet=True):
        if with_sheet:
            p.add_argument("--cond", type=float, default=surface.GRAPHENE_COND,
                           help="dimensionless sheet conductance (default: pi*alpha)")
            p.add_argument("--branching", type=float, default=1.0)
            p.add_argument("--f-sign", type=int, choices=(1, -1), default=1)
        p.add_argument("--out", dest="out", default=None,
                       help="output file (default: stdout)")
        p.add_argument("--format", dest="fmt", choices=("csv", "json"),
                       default=None, help="output format")

    p = sub.add_parser("coeffs", help="single-sheet coefficients and absorbance")
    common(p)

    p = sub.add_parser("twostate", help="two-state diagnostics for one sheet")
    common(p)
    p.add_argument("--overlap", type=float, default=0.0)
    p.add_argument("--energy-unit", type=float, default=1.0)
    p.add_argument("--coeffs", dest="coeffs_json", default=None,
                   help="JSON output of a 'coeffs' run; overrides --cond results")

    p = sub.add_parser("stack", help="transfer-matrix solution of a stack file")
    common(p, with_sheet=False)
    p.add_argument("--stack", dest="stack_file", required=True)
    p.add_argument("--wavelength-nm", type=float, default=None,
                   help="evaluation wavelength (needs wavelength_nm in the file)")

    p = sub.add_parser("sweep", help="parameter sweep, CSV table")
    common(p)
    p.add_argument("--stack", dest="stack_file", default=None)
    p.add_argument("--wavelength-nm", type=float, default=None)
    p.add_argument("--n-layers", type=int, default=1)
    p.add_argument("--sweep", dest="sweep", required=True,
                   help="var:start:stop:steps with var in "
                        "{cond,n_layers,wavelength_nm,thickness}")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel workers; results are order-preserving")

    p = sub.add_parser("decouple", help="t + r = 0 layer-number search")
    common(p)

    p = sub.add_parser("profile", help="field profile and gauge decomposition CSV")
    common(p)
    p.add_argument("--which", choices=("a", "b"), default="a")
    p.add_argument("--b-r", type=float, default=None,
                   help="override right-going emission amplitude")
    p.add_argument("--b-l", type=float, default=None,
                   help="override left-going emission amplitude")
    p.add_argument("--x-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--k", type=float, default=1.0)
    return parser


def _num(z) -> float | list[float]:
    z = complex(z)
    return z.real if z.imag == 0.0 else [z.real, z.imag]


def _json_doc(config: RunConfig, results: dict) -> str:
    doc = {
        "tool_version": __version__,
        "config_echo": {
            "command": config.command,
            "input_path": config.input_path,
            "output_path": config.output_path,
            "format": config.fmt,
            **config.options,
        },
        **results,
    }
    return json.dumps(doc, indent=2) + "\n"


def _write(config: RunConfig, text: str) -> None:
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sheet_params(opts: dict) -> surface.SheetParams:
    return surface.SheetParams(
        cond=opts["cond"], branching=opts["branching"], f_sign=opts["f_sign"]
    )


def _coeffs_results(params: surface.SheetParams) -> dict:
    coeffs = surface.solve_single_sheet(params)
    check = surface.solve_boundary_system(params)
    if abs(check.t - coeffs.t) > 1e-12 or abs(check.r - coeffs.r) > 1e-12:
        raise SheetOpticsError("closed form and boundary system disagree")
    a = surface.absorbance(coeffs, params)
    emission = surface.emission_amplitude(params, coeffs)
    return {
        "t": _num(coeffs.t),
        "r": _num(coeffs.r),
        "A": a,
        "b": _num(emission.b_r),
        "f_mag": emission.f_mag,
    }


def _cmd_coeffs(config: RunConfig) -> str:
    return _json_doc(config, _coeffs_results(_sheet_params(config.options)))


def _as_c(value) -> complex:
    if isinstance(value, list):
        return complex(value[0], value[1])
    return complex(value)


def _cmd_twostate(config: RunConfig) -> str:
    opts = config.options
    params = _sheet_params(opts)
    if opts.get("coeffs_json"):
        with open(opts["coeffs_json"], "r", encoding="utf-8") as fh:
            data = json.load(fh)
        coeffs = surface.ScatterCoeffs(t=_as_c(data["t"]), r=_as_c(data["r"]))
        b = _as_c(data["b"])
    else:
        coeffs = surface.solve_single_sheet(params)
        b = surface.emission_amplitude(params, coeffs).b_r
    sys_ = twostate.TwoStateSystem(
        coeffs=coeffs, b=b, overlap=opts["overlap"], energy_unit=opts["energy_unit"]
    )
    results: dict = {"offdiagonal": _num(twostate.offdiagonal(sys_))}
    try:
        pair = twostate.decouple(sys_)
    except DegenerateDecoupling:
        results.update(
            degenerate=True, theta_plus=None, theta_minus=None,
            e_plus=0.0, e_minus=0.0, r_plus=None, r_minus=None,
        )
    else:
        theta_plus, theta_minus = twostate.decoupling_phase(sys_)
        results.update(
            degenerate=False,
            theta_plus=theta_plus,
            theta_minus=theta_minus,
            e_plus=pair.energy_plus,
            e_minus=pair.energy_minus,
            r_plus=_num(pair.reflection_plus),
            r_minus=_num(pair.reflection_minus),
        )
    return _json_doc(config, results)


def _stack_scale(wavelength_nm, reference_nm) -> float:
    if wavelength_nm is None or reference_nm is None:
        return 1.0
    return wavelength_nm / reference_nm


def _stack_results(stk, scale: float) -> dict:
    coeffs = stack_mod.stack_coeffs(stk, scale)
    fields = stack_mod.local_fields(stk, scale)
    return {
        "t": _num(coeffs.t),
        "r": _num(coeffs.r),
        "R": abs(coeffs.r) ** 2,
        "T": (complex(stk.ambient_out).real / complex(stk.ambient_in).real)
        * abs(coeffs.t) ** 2,
        "A": stack_mod.stack_absorbance(stk, scale),
        "R_emission": stack_mod.reflectance_with_emission(stk, None, scale),
        "sheet_fields": [_num(f) for f in fields],
    }


def _cmd_stack(config: RunConfig) -> str:
    stk, reference_nm = stack_mod.load_stack(config.input_path)
    scale = _stack_scale(config.options.get("wavelength_nm"), reference_nm)
    return _json_doc(config, _stack_results(stk, scale))


def _cmd_decouple(config: RunConfig) -> str:
    found = stack_mod.decoupling_layer_number(config.options["cond"])
    return _json_doc(
        config,
        {"n_exact": found.n_exact, "n_int": found.n_int, "residual": found.residual},
    )


def _sweep_row(config: RunConfig, value: float):
    opts = config.options
    spec = config.sweep
    if spec.variable == "cond":
        params = surface.SheetParams(
            cond=value, branching=opts["branching"], f_sign=opts["f_sign"]
        )
        coeffs = surface.solve_single_sheet(params)
        return [value, coeffs.t.real, coeffs.t.imag, coeffs.r.real, coeffs.r.imag,
                surface.absorbance(coeffs, params), abs(coeffs.t + coeffs.r)]
    if spec.variable == "n_layers":
        n = int(round(value))
        coeffs = stack_mod.nlayer_replacement(n, opts["cond"])
        return [n, coeffs.t.real, coeffs.t.imag, coeffs.r.real, coeffs.r.imag,
                abs(coeffs.t + coeffs.r)]
    stk, reference_nm = opts["_stack"]
    if spec.variable == "wavelength_nm":
        scale = _stack_scale(value, reference_nm)
        res = _stack_results(stk, scale)
    else:  # thickness: rescale the last slab
        slab_idx = [i for i, l in enumerate(stk.layers)
                    if isinstance(l, stack_mod.Slab)]
        if not slab_idx:
            raise CliConfigError("thickness sweep needs a slab in the stack")
        i = slab_idx[-1]
        layers = list(stk.layers)
        layers[i] = stack_mod.Slab(n=layers[i].n, d=value)
        varied = stack_mod.LayerStack(
            layers=tuple(layers),
            ambient_in=stk.ambient_in,
            ambient_out=stk.ambient_out,
        )
        res = _stack_results(varied, _stack_scale(opts.get("wavelength_nm"),
                                                  reference_nm))
    t, r = _as_c(res["t"]), _as_c(res["r"])
    return [value, t.real, t.imag, r.real, r.imag, res["R"], res["T"], res["A"],
            res["R_emission"]]


_SWEEP_HEADERS = {
    "cond": ["cond", "t_re", "t_im", "r_re", "r_im", "A", "abs_t_plus_r"],
    "n_layers": ["n_layers", "t_re", "t_im", "r_re", "r_im", "abs_t_plus_r"],
    "wavelength_nm": ["wavelength_nm", "t_re", "t_im", "r_re", "r_im",
                      "R", "T", "A", "R_emission"],
    "thickness": ["thickness", "t_re", "t_im", "r_re", "r_im",
                  "R", "T", "A", "R_emission"],
}


def _cmd_sweep(config: RunConfig) -> str:
    spec = config.sweep
    if spec.variable in ("wavelength_nm", "thickness"):
        if not config.input_path:
            raise CliConfigError(f"{spec.variable} sweep requires --stack")
        config.options["_stack"] = stack_mod.load_stack(config.input_path)
    values = spec.values()
    jobs = max(1, int(config.options.get("jobs", 1)))
    if jobs == 1:
        rows = [_sweep_row(config, v) for v in values]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda v: _sweep_row(config, v), values))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_SWEEP_HEADERS[spec.variable])
    for row in rows:
        writer.writerow(
            [str(v) if isinstance(v, int) else _FMT.format(v) for v in row]
        )
    return buf.getvalue()


def _cmd_profile(config: RunConfig) -> str:
    opts = config.options
    params = _sheet_params(opts)
    grid_x = np.linspace(-opts["x_max"], opts["x_max"], opts["points"] + 1)
    if opts["which"] == "a":
        coeffs = surface.solve_single_sheet(params)
        profile = fields_mod.eval_a(coeffs.t, coeffs.r, grid_x, k=opts["k"])
    else:
        if opts.get("b_r") is not None or opts.get("b_l") is not None:
            b_r = opts.get("b_r") or 0.0
            b_l = opts.get("b_l") or 0.0
        else:
            coeffs = surface.solve_single_sheet(params)
            emission = surface.emission_amplitude(params, coeffs)
            b_r, b_l = emission.b_r, emission.b_l
        profile = fields_mod.eval_b(b_r, b_l, grid_x, k=opts["k"])
    buf = io.StringIO()
    fields_mod.write_profile_csv(profile, buf)
    return buf.getvalue()


_COMMANDS = {
    "coeffs": _cmd_coeffs,
    "twostate": _cmd_twostate,
    "stack": _cmd_stack,
    "sweep": _cmd_sweep,
    "decouple": _cmd_decouple,
    "profile": _cmd_profile,
}

_DEFAULT_FMT = {
    "coeffs": "json", "twostate": "json", "stack": "json",
    "decouple": "json", "sweep": "csv", "profile": "csv",
}


def _to_config(args: argparse.Namespace) -> RunConfig:
    opts = dict(vars(args))
    command = opts.pop("command")
    out = opts.pop("out", None)
    fmt = opts.pop("fmt", None) or _DEFAULT_FMT[command]
    if _DEFAULT_FMT[command] == "csv" and fmt != "csv":
        raise CliConfigError(f"command {command!r} only emits csv")
    sweep = _parse_sweep(opts.pop("sweep")) if opts.get("sweep") else None
    input_path = opts.pop("stack_file", None)
    return RunConfig(
        command=command,
        input_path=input_path,
        output_path=out,
        fmt=fmt,
        sweep=sweep,
        options=opts,
    )


def _json_to_csv(text: str) -> str:
    """Flatten the scalar results of a JSON document into a one-row CSV."""
    doc = json.loads(text)
    doc.pop("tool_version", None)
    doc.pop("config_echo", None)
    header, row = [], []
    for key, value in doc.items():
        if isinstance(value, list) and len(value) == 2 \
                and all(isinstance(v, float) for v in value):
            header += [f"{key}_re", f"{key}_im"]
            row += [_FMT.format(value[0]), _FMT.format(value[1])]
        elif isinstance(value, (int, float, bool)) or value is None:
            header.append(key)
            row.append("" if value is None else
                       _FMT.format(value) if isinstance(value, float) else str(value))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerow(row)
    return buf.getvalue()


def run(config: RunConfig) -> str:
    """Execute a run configuration and return the produced text artifact."""
    text = _COMMANDS[config.command](config)
    if config.fmt == "csv" and _DEFAULT_FMT[config.command] == "json":
        text = _json_to_csv(text)
    return text


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = _to_config(args)
        _write(config, run(config))
        return 0
    except (CliConfigError, ValueError, json.JSONDecodeError) as exc:
        print(f"sheetoptics: config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"sheetoptics: i/o error: {exc}", file=sys.stderr)
        return 2
    except (SingularStack, SheetOpticsError, np.linalg.LinAlgError) as exc:
        print(f"sheetoptics: numerical error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    raise SystemExit(main())
