"""Command-line front end.

Subcommands: analyze (spectral report for one model), sweep (CSV grid
scan over one or two parameters), oracle (truncated-Fock verification),
transform (one-mode canonical map, generator, and metric check).

Exit codes: 0 success, 1 bad config or failed verification, 2
exceptional-point degeneracy (analysis still printed where possible).
Config files are JSON; complex numbers are two-element [re, im] arrays.
QUADBOSON_WORKERS caps sweep parallelism (default 1, serial).
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .algebra import (
    BosonBasis,
    QuadraticForm,
    adjoint_rep,
    commutator_matrix,
    transform_form,
)
from .fock import FockTruncation, verify_metric, verify_spectrum
from .spectral import (
    ExceptionalPointError,
    Reality,
    classify_reality,
    decompose,
    detect_ep,
    eigenpairs,
    normalize_pairs,
)
from .swanson import (
    OneModeParams,
    TwoModeParams,
    bogoliubov_map,
    generator_coeffs,
    one_mode,
    two_mode,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_EXCEPTIONAL = 2

_SWEEPABLE = {
    "one_mode": ("alpha_re", "alpha_im", "beta_re", "beta_im"),
    "two_mode": ("alpha_re", "alpha_im", "beta_re", "beta_im", "gamma"),
    "custom": (),
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepAxis:
    parameter: str
    start: float
    stop: float
    steps: int


@dataclass(frozen=True)
class ModelConfig:
    kind: str
    alpha: complex = 0.0
    beta: complex = 0.0
    gamma: float = 0.0
    matrix: np.ndarray | None = None
    offset: complex = 0.0
    nmax: int = 40
    levels: int = 5
    tol: float = 1e-6
    sweep: tuple = ()
    raw_bytes: bytes = b""


def _as_complex(value, field):
    if isinstance(value, (int, float)):
        return complex(value)
    if (isinstance(value, (list, tuple)) and len(value) == 2
            and all(isinstance(v, (int, float)) for v in value)):
        return complex(value[0], value[1])
    raise ConfigError(f"field '{field}': expected a number or [re, im] pair, got {value!r}")


def _parse_matrix(entries, field):
    try:
        rows = [[_as_complex(v, field) for v in row] for row in entries]
        mat = np.array(rows, dtype=complex)
    except (TypeError, ConfigError) as exc:
        raise ConfigError(f"field '{field}': malformed matrix ({exc})") from None
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] % 2 or mat.shape[0] < 2:
        raise ConfigError(f"field '{field}': matrix must be square with even size 2K")
    return mat


def load_config(path: str) -> ModelConfig:
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        data = json.loads(raw.decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError("top level must be a JSON object")

    known = {"model", "alpha", "beta", "gamma", "matrix", "offset", "oracle", "sweep"}
    for key in data:
        if key not in known:
            raise ConfigError(f"field '{key}': unknown field")

    kind = data.get("model")
    if kind not in ("one_mode", "two_mode", "custom"):
        raise ConfigError("field 'model': must be one of one_mode, two_mode, custom")

    alpha = _as_complex(data.get("alpha", 0.0), "alpha")
    beta = _as_complex(data.get("beta", 0.0), "beta")
    gamma = data.get("gamma", 0.0)
    if not isinstance(gamma, (int, float)):
        raise ConfigError("field 'gamma': must be a real number")

    matrix = None
    offset = 0.0
    if kind == "custom":
        if "matrix" not in data:
            raise ConfigError("field 'matrix': required for custom models")
        matrix = _parse_matrix(data["matrix"], "matrix")
        offset = _as_complex(data.get("offset", 0.0), "offset")
        asym = np.max(np.abs(matrix - matrix.T))
        if asym > 1e-12 * max(1.0, float(np.max(np.abs(matrix)))):
            raise ConfigError(
                f"field 'matrix': must be symmetric within 1e-12 (asymmetry {asym:.3e})"
            )

    oracle = data.get("oracle", {})
    if not isinstance(oracle, dict):
        raise ConfigError("field 'oracle': must be an object")
    nmax = oracle.get("nmax", 40)
    levels = oracle.get("levels", 5)
    tol = oracle.get("tol", 1e-6)
    if not isinstance(nmax, int) or nmax < 2:
        raise ConfigError("field 'oracle.nmax': must be an integer >= 2")
    if not isinstance(levels, int) or levels < 1:
        raise ConfigError("field 'oracle.levels': must be a positive integer")
    if not isinstance(tol, (int, float)) or tol <= 0:
        raise ConfigError("field 'oracle.tol': must be a positive number")

    axes = []
    for pos, axis in enumerate(data.get("sweep", [])):
        if not isinstance(axis, dict):
            raise ConfigError(f"field 'sweep[{pos}]': must be an object")
        name = axis.get("parameter")
        if name not in _SWEEPABLE[kind]:
            raise ConfigError(
                f"field 'sweep[{pos}].parameter': '{name}' not sweepable for {kind} "
                f"(choose from {', '.join(_SWEEPABLE[kind]) or 'none'})"
            )
        steps = axis.get("steps")
        if not isinstance(steps, int) or steps < 1:
            raise ConfigError(f"field 'sweep[{pos}].steps': must be a positive integer")
        try:
            start = float(axis["start"])
            stop = float(axis["stop"])
        except (KeyError, TypeError, ValueError):
            raise ConfigError(f"field 'sweep[{pos}]': start and stop must be numbers") from None
        axes.append(SweepAxis(name, start, stop, steps))
    if len(axes) > 2:
        raise ConfigError("field 'sweep': at most two swept parameters")

    return ModelConfig(
        kind=kind, alpha=alpha, beta=beta, gamma=float(gamma),
        matrix=matrix, offset=offset, nmax=nmax, levels=levels, tol=float(tol),
        sweep=tuple(axes), raw_bytes=raw,
    )


def _build_form(config: ModelConfig, overrides: dict | None = None) -> QuadraticForm:
    alpha, beta, gamma = config.alpha, config.beta, config.gamma
    for name, value in (overrides or {}).items():
        if name == "alpha_re":
            alpha = complex(value, alpha.imag)
        elif name == "alpha_im":
            alpha = complex(alpha.real, value)
        elif name == "beta_re":
            beta = complex(value, beta.imag)
        elif name == "beta_im":
            beta = complex(beta.real, value)
        elif name == "gamma":
            gamma = value
    if config.kind == "one_mode":
        return one_mode(OneModeParams(alpha, beta))
    if config.kind == "two_mode":
        return two_mode(TwoModeParams(alpha, beta, gamma))
    return QuadraticForm(BosonBasis(config.matrix.shape[0] // 2), config.matrix, config.offset)


def _fmt(x: float, digits: int = 9) -> str:
    return f"{x:.{digits}g}"


def _fmt_c(z: complex, digits: int = 9) -> str:
    return f"{z.real:.{digits}g}{z.imag:+.{digits}g}i"


def _fmt_vector(vec: np.ndarray) -> str:
    return "[" + ", ".join(_fmt_c(z) for z in vec) + "]"


def _print_matrix(label: str, mat: np.ndarray) -> None:
    print(f"{label}:")
    for row in mat:
        print("  [" + ", ".join(_fmt_c(z) for z in row) + "]")


def cmd_analyze(config: ModelConfig) -> int:
    form = _build_form(config)
    print(f"model: {config.kind}")
    rep = adjoint_rep(form)
    report = detect_ep(rep)
    reality = classify_reality(rep)

    if report.defective:
        values = np.linalg.eigvals(rep)
        values = values[np.lexsort((values.imag, values.real))]
        print("eigenvalues: " + ", ".join(_fmt_c(v) for v in values))
        print(f"reality: {reality.value}")
        print("exceptional point: defective adjoint matrix")
        for c in report.clusters:
            print(
                f"  cluster lambda={_fmt_c(c.value)}: algebraic {c.algebraic}, "
                f"geometric {c.geometric}, defective={str(c.defective).lower()}"
            )
        print("ladder construction impossible at an exceptional point")
        return EXIT_EXCEPTIONAL

    ladders = eigenpairs(rep)
    print("eigenvalues: " + ", ".join(_fmt_c(op.eigenvalue) for op in ladders))
    print(f"reality: {reality.value}")
    for c in report.clusters:
        if c.algebraic > 1:
            print(
                f"degenerate cluster lambda={_fmt_c(c.value)}: algebraic {c.algebraic}, "
                f"geometric {c.geometric}"
            )
    try:
        decomp = normalize_pairs(ladders, commutator_matrix(form.basis), offset=form.offset)
    except ExceptionalPointError as exc:
        print(f"exceptional point: {exc}")
        return EXIT_EXCEPTIONAL
    print("frequencies: " + ", ".join(_fmt_c(f) for f in decomp.frequencies))
    print(f"ground energy: {_fmt_c(decomp.ground_energy)}")
    for idx, (low, high) in enumerate(decomp.pairs, start=1):
        print(f"lowering Z{idx} (lambda={_fmt_c(low.eigenvalue)}): {_fmt_vector(low.coeffs)}")
        print(f"raising  Z{idx}' (lambda={_fmt_c(high.eigenvalue)}): {_fmt_vector(high.coeffs)}")
    return EXIT_OK


def _sweep_point(config: ModelConfig, overrides: dict) -> tuple:
    form = _build_form(config, overrides)
    rep = adjoint_rep(form)
    values = np.linalg.eigvals(rep)
    values = values[np.lexsort((values.imag, values.real))]
    report = detect_ep(rep)
    if report.defective:
        reality = Reality.EXCEPTIONAL_POINT
    else:
        reality = classify_reality(rep)
    gaps = [abs(a - b) for i, a in enumerate(values) for b in values[i + 1:]]
    return values, reality, report.defective, min(gaps)


def cmd_sweep(config: ModelConfig, out_path: str | None) -> int:
    if not config.sweep:
        raise ConfigError("field 'sweep': at least one axis is required for the sweep command")
    axes = config.sweep
    grids = [np.linspace(ax.start, ax.stop, ax.steps) for ax in axes]
    points = [dict(zip((ax.parameter for ax in axes), combo))
              for combo in _row_major(grids)]

    workers = max(1, int(os.environ.get("QUADBOSON_WORKERS", "1")))
    if workers == 1:
        results = [_sweep_point(config, p) for p in points]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda p: _sweep_point(config, p), points))

    n_eigs = len(results[0][0])
    columns = [ax.parameter for ax in axes]
    for i in range(1, n_eigs + 1):
        columns += [f"lambda{i}_re", f"lambda{i}_im"]
    columns += ["reality", "defective", "min_gap"]

    lines = [
        f"# tool: quadboson {__version__}",
        f"# config-sha256: {hashlib.sha256(config.raw_bytes).hexdigest()}",
        ",".join(columns),
    ]
    for point, (values, reality, defective, gap) in zip(points, results):
        cells = [_fmt(point[ax.parameter], 17) for ax in axes]
        for v in values:
            cells += [_fmt(v.real, 17), _fmt(v.imag, 17)]
        cells += [reality.value, str(int(defective)), _fmt(gap, 17)]
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"

    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {len(points)} rows to {out_path}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _row_major(grids):
    if len(grids) == 1:
        for x in grids[0]:
            yield (x,)
    else:
        for x in grids[0]:
            for y in grids[1]:
                yield (x, y)


def cmd_oracle(config: ModelConfig, allow_complex: bool) -> int:
    form = _build_form(config)
    try:
        decomp = decompose(form)
    except ExceptionalPointError as exc:
        print(f"exceptional point: {exc}")
        return EXIT_EXCEPTIONAL

    if decomp.reality is not Reality.ALL_REAL and not allow_complex:
        print(
            f"spectrum classified {decomp.reality.value}; oracle comparison needs "
            "--allow-complex (report-only) or an all-real parameter point"
        )
        return EXIT_ERROR

    trunc = FockTruncation(form.basis.n_modes, config.nmax)
    report = verify_spectrum(form, decomp, config.levels, trunc, tol=config.tol)
    print(f"model: {config.kind}  nmax: {config.nmax}  levels: {config.levels}  "
          f"tol: {_fmt(config.tol)}")
    print(f"reality: {decomp.reality.value}")
    print("predicted vs oracle (lowest levels):")
    for predicted, observed, dev in report.matched:
        print(f"  {_fmt_c(predicted)}  {_fmt_c(observed)}  dev={_fmt(dev)}")
    print(f"converged: {str(report.converged).lower()}")
    if not report.comparable:
        print("comparison is informational only for a non-real spectrum")
        return EXIT_OK
    print(f"max deviation: {_fmt(report.max_deviation)}")
    print("result: " + ("pass" if report.passed else "fail"))
    return EXIT_OK if report.passed else EXIT_ERROR


def cmd_transform(config: ModelConfig, s11: float, with_oracle: bool) -> int:
    if config.kind != "one_mode":
        raise ConfigError("field 'model': transform requires a one_mode model")
    params = OneModeParams(config.alpha, config.beta)
    try:
        cmap = bogoliubov_map(params, s11)
    except ExceptionalPointError as exc:
        print(f"exceptional point: {exc}")
        return EXIT_EXCEPTIONAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    s = cmap.matrix
    alpha, beta = params.alpha, params.beta
    conditions = (
        s[0, 0] * s[1, 1] - s[0, 1] * s[1, 0] - 1.0,
        alpha * s[0, 0] ** 2 + beta * s[1, 0] ** 2 + s[0, 0] * s[1, 0],
        alpha * s[0, 1] ** 2 + beta * s[1, 1] ** 2 + s[0, 1] * s[1, 1],
    )
    _print_matrix("canonical map S", s)
    print("determinant: " + _fmt_c(np.linalg.det(s)))
    print("map condition residuals: " + ", ".join(_fmt(abs(c)) for c in conditions))
    transformed = transform_form(one_mode(params), cmap)
    _print_matrix("transformed coefficients", transformed.coeffs)
    print(f"transformed offset: {_fmt_c(transformed.offset)}")
    gen = generator_coeffs(cmap)
    _print_matrix("generator coefficients", gen.coeffs)

    if with_oracle:
        trunc = FockTruncation(1, config.nmax)
        metric = verify_metric(params, cmap, trunc)
        print(f"metric interior size: {metric.interior_size}")
        print(f"quasi-hermiticity residual: {_fmt(metric.residual)}")
        print(f"min metric eigenvalue: {_fmt(metric.min_metric_eigenvalue)}")
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadboson",
        description="Ladder-operator analysis of quadratic boson Hamiltonians",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="JSON model configuration")

    sub.add_parser("analyze", parents=[common],
                   help="spectral report: eigenvalues, ladders, reality, degeneracies")

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="CSV scan over one or two parameters")
    p_sweep.add_argument("--out", help="CSV output path (default stdout)")

    p_oracle = sub.add_parser("oracle", parents=[common],
                              help="truncated-Fock verification of the spectrum")
    p_oracle.add_argument("--nmax", type=int, help="per-mode cutoff override")
    p_oracle.add_argument("--levels", type=int, help="levels to match override")
    p_oracle.add_argument("--tol", type=float, help="match tolerance override")
    p_oracle.add_argument("--allow-complex", action="store_true",
                          help="report-only comparison for non-real spectra")

    p_tr = sub.add_parser("transform", parents=[common],
                          help="one-mode canonical map, generator, metric check")
    p_tr.add_argument("--s11", type=float, default=1.0, help="positive real gauge entry")
    p_tr.add_argument("--nmax", type=int, help="metric-check cutoff override")
    p_tr.add_argument("--oracle", action="store_true",
                      help="also run the Fock-space metric check")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        config = load_config(args.config)
        for field in ("nmax", "levels", "tol"):
            value = getattr(args, field, None)
            if value is not None:
                config = dataclasses.replace(config, **{field: value})

        if args.command == "analyze":
            return cmd_analyze(config)
        if args.command == "sweep":
            return cmd_sweep(config, args.out)
        if args.command == "oracle":
            return cmd_oracle(config, args.allow_complex)
        return cmd_transform(config, args.s11, args.oracle)
    except (ConfigError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
