"""Command-line driver writing deterministic CSV tables.

Subcommands: fields, amplitude-scan, ratios, am-check, gtable. Physical
inputs are given in nm and rad and converted to atomic units here, once.
Every CSV starts with its effective configuration as ``# key=value`` lines,
which :func:`config_from_csv` reads back for a reproducing rerun.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from .beam import PhotonKinematics, angular_momentum, poynting
from .matelem import AtomicState, curly_bracket, reduced_g, transition_energy
from .specfun import ConvergenceError, QuadratureSpec, bessel_j
from .xsec import DegenerateTransitionError, averaged_sigma, f_twisted, plane_wave_sigma, r_twisted

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERIC = 4

# m_gamma used where averaged observables do not depend on it.
AVERAGED_MGAMMA = 3

# Keys never echoed into the CSV header: they do not change the table.
_NOT_ECHOED = {"command", "out", "config", "jobs", "func"}


class UsageError(Exception):
    pass


def fmt(value) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return f"{float(value):.8e}"


def write_csv(path: str, header: list[str], rows: list, config: dict) -> None:
    lines = [f"# {key}={_config_value(val)}" for key, val in config.items()]
    lines.append(",".join(header))
    for row in rows:
        if len(row) != len(header):
            raise ValueError("ragged CSV row")
        lines.append(",".join(fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _config_value(val) -> str:
    if isinstance(val, list):
        return ",".join(str(v) for v in val)
    return str(val)


def read_config(path: str) -> dict[str, str]:
    """Parse ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    config = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = line.split("=", 1)
            config[key.strip().replace("-", "_")] = value.strip()
    return config


def config_from_csv(path: str) -> dict[str, str]:
    """Recover the effective configuration echoed at the top of a CSV."""
    config = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            key, value = line[1:].strip().split("=", 1)
            config[key] = value
    return config


def _map(func, items, jobs: int) -> list:
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(func, items))


def _quad(args) -> QuadratureSpec:
    return QuadratureSpec(
        radial_nodes=args.quad_nodes,
        angular_nodes=max(16, args.quad_nodes // 2),
        rel_tol=args.rel_tol,
    )


def _kin(omega, args, m_gamma=None) -> PhotonKinematics:
    m = args.mgamma if m_gamma is None else m_gamma
    return PhotonKinematics(float(omega), args.pitch, m, args.helicity)


def _effective(args) -> dict:
    return {k.replace("_", "-"): v for k, v in vars(args).items() if k not in _NOT_ECHOED}


# -- fields -----------------------------------------------------------------


def cmd_fields(args) -> int:
    kin = PhotonKinematics.from_wavelength_nm(args.wavelength_nm, args.pitch, args.mgamma, args.helicity)
    if args.grid_n < 1 or args.grid_extent <= 0:
        raise UsageError("grid-n must be >= 1 and grid-extent > 0")
    axis = np.linspace(-args.grid_extent, args.grid_extent, args.grid_n)
    # rows run left to right, top to bottom
    x, y = np.meshgrid(axis, axis[::-1])
    x, y = x.ravel(), y.ravel()
    rho = np.hypot(x, y) * kin.wavelength
    _, s_phi, s_z = poynting(kin, rho)
    columns = (x, y, s_phi, s_z, 2 * math.pi * rho * s_phi, 2 * math.pi * rho * s_z)
    rows = np.column_stack(columns).tolist()
    header = ["x", "y", "S_phi", "S_z", "2piRho_S_phi", "2piRho_S_z"]
    write_csv(args.out, header, rows, _effective(args))
    return EXIT_OK


# -- amplitude-scan ---------------------------------------------------------


def _scan_column(m_f, nf, lf, kin, quad, b_values):
    bracket = curly_bracket(AtomicState(nf, lf, m_f), kin, quad)
    dm = m_f - kin.m_gamma
    return [abs(bracket) * abs(bessel_j(dm, kin.kappa * b)) for b in b_values]


def cmd_amplitude_scan(args) -> int:
    omega = transition_energy(args.nf)
    kin = _kin(omega, args)
    AtomicState(args.nf, args.lf)
    if args.steps < 1 or args.bmax <= 0:
        raise UsageError("steps must be >= 1 and bmax > 0")
    b_over_lambda = np.linspace(0.0, args.bmax, args.steps + 1)
    b_values = b_over_lambda * kin.wavelength
    m_values = list(range(args.lf, -args.lf - 1, -1))
    columns = _map(
        partial(_scan_column, nf=args.nf, lf=args.lf, kin=kin, quad=_quad(args), b_values=tuple(b_values)),
        m_values,
        args.jobs,
    )
    header = ["b_over_lambda"] + [f"M_mf{m}" for m in m_values]
    rows = [[b] + [col[i] for col in columns] for i, b in enumerate(b_over_lambda)]
    write_csv(args.out, header, rows, _effective(args))
    return EXIT_OK


# -- ratios -----------------------------------------------------------------


def _ratio_row(pair, pitch, helicity, quad):
    nf, lf = pair
    kin = PhotonKinematics(float(transition_energy(nf)), pitch, AVERAGED_MGAMMA, helicity)
    total = sum(averaged_sigma(AtomicState(nf, lf, m), kin, quad).value for m in range(-lf, lf + 1))
    plane = plane_wave_sigma(AtomicState(nf, lf, helicity), helicity, kin.omega, quad).value
    return [nf, lf, f_twisted(nf, lf, kin, quad), r_twisted(nf, lf, kin, quad), total, plane]


def cmd_ratios(args) -> int:
    nfs = args.nf or [4, 4, 5]
    lfs = args.lf or [1, 3, 4]
    if len(nfs) != len(lfs):
        raise UsageError("--nf and --lf must be given the same number of times")
    pairs = list(zip(nfs, lfs))
    for nf, lf in pairs:
        if lf < 1:
            raise UsageError("ratios need l_f >= 1")
        AtomicState(nf, lf)
    rows = _map(partial(_ratio_row, pitch=args.pitch, helicity=args.helicity, quad=_quad(args)), pairs, args.jobs)
    config = _effective(args)
    config["nf"], config["lf"] = nfs, lfs
    write_csv(args.out, ["n_f", "l_f", "f_twisted", "r_twisted", "sigma_avg_total", "sigma_pw"], rows, config)
    summary = sys.stderr if args.out == "-" else sys.stdout
    for nf, lf, f, r, _, _ in rows:
        print(f"({nf},{lf}): f_twisted={100 * f:.1f}% r_twisted={r:.4f}", file=summary)
    return EXIT_OK


# -- am-check ---------------------------------------------------------------


def cmd_am_check(args) -> int:
    kin = PhotonKinematics(1.0, args.pitch, args.mgamma, args.helicity)
    spin, oam, total = angular_momentum(kin)
    ok = abs(total - kin.m_gamma) <= 1e-12 * max(1, abs(kin.m_gamma))
    total_str = str(kin.m_gamma) if ok else f"{total:.6f}"
    print(f"spin={spin:.6f} oam={oam:.6f} total={total_str}")
    return EXIT_OK if ok else EXIT_NUMERIC


# -- gtable -----------------------------------------------------------------


def _g_rows(m_f, nf, lf, kin, quad):
    rows = []
    for lam in (1, 0, -1):
        g = reduced_g(AtomicState(nf, lf, m_f), lam, kin, quad)
        rows.append([m_f, lam, g.value.real, g.value.imag, g.error, g.nodes, int(g.is_real_or_imaginary)])
    return rows


def cmd_gtable(args) -> int:
    kin = _kin(transition_energy(args.nf), args, m_gamma=AVERAGED_MGAMMA)
    AtomicState(args.nf, args.lf)
    m_values = list(range(args.lf, -args.lf - 1, -1))
    blocks = _map(partial(_g_rows, nf=args.nf, lf=args.lf, kin=kin, quad=_quad(args)), m_values, args.jobs)
    rows = [row for block in blocks for row in block]
    header = ["m_f", "lambda", "re_g", "im_g", "quad_error", "nodes", "real_or_imag"]
    write_csv(args.out, header, rows, _effective(args))
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    common.add_argument("--config", help="key=value file; command-line flags take precedence")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    common.add_argument("--quad-nodes", type=int, default=256, help="radial Gauss-Legendre nodes")
    common.add_argument("--rel-tol", type=float, default=1e-9)

    parser = argparse.ArgumentParser(prog="twistphoton", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fields", parents=[common], help="Poynting vector on a transverse grid")
    p.add_argument("--wavelength-nm", type=float, default=500.0)
    p.add_argument("--pitch", type=float, default=0.2)
    p.add_argument("--mgamma", type=int, default=4)
    p.add_argument("--helicity", type=int, default=1, choices=(1, -1))
    p.add_argument("--grid-extent", type=float, default=6.0, help="half-width in wavelengths")
    p.add_argument("--grid-n", type=int, default=121)
    p.set_defaults(func=cmd_fields)

    p = sub.add_parser("amplitude-scan", parents=[common], help="|M| versus impact parameter")
    p.add_argument("--nf", type=int, default=4)
    p.add_argument("--lf", type=int, default=3)
    p.add_argument("--mgamma", type=int, default=3)
    p.add_argument("--helicity", type=int, default=1, choices=(1, -1))
    p.add_argument("--pitch", type=float, default=0.2)
    p.add_argument("--bmax", type=float, default=2.0, help="in wavelengths")
    p.add_argument("--steps", type=int, default=200)
    p.set_defaults(func=cmd_amplitude_scan)

    p = sub.add_parser("ratios", parents=[common], help="f_twisted and r_twisted per level")
    p.add_argument("--nf", type=int, action="append")
    p.add_argument("--lf", type=int, action="append")
    p.add_argument("--pitch", type=float, default=0.2)
    p.add_argument("--helicity", type=int, default=1, choices=(1, -1))
    p.set_defaults(func=cmd_ratios)

    p = sub.add_parser("am-check", parents=[common], help="spin/orbital/total projections")
    p.add_argument("--pitch", type=float, default=0.2)
    p.add_argument("--mgamma", type=int, default=4)
    p.add_argument("--helicity", type=int, default=1, choices=(1, -1))
    p.set_defaults(func=cmd_am_check)

    p = sub.add_parser("gtable", parents=[common], help="reduced atomic factors g")
    p.add_argument("--nf", type=int, default=4)
    p.add_argument("--lf", type=int, default=3)
    p.add_argument("--pitch", type=float, default=0.2)
    p.add_argument("--helicity", type=int, default=1, choices=(1, -1))
    p.set_defaults(func=cmd_gtable)
    return parser


def _subparser(parser: argparse.ArgumentParser, command: str) -> argparse.ArgumentParser:
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[command]
    raise KeyError(command)


def _apply_config(parser, argv, args):
    """Fold a --config file under the explicitly given flags."""
    sub = _subparser(parser, args.command)
    actions = {a.dest: a for a in sub._actions if a.option_strings}
    explicit = set()
    for token in argv:
        if token.startswith("--"):
            flag = token.split("=", 1)[0]
            for a in actions.values():
                if flag in a.option_strings:
                    explicit.add(a.dest)
    for key, raw in read_config(args.config).items():
        action = actions.get(key)
        if action is None or key in _NOT_ECHOED:
            raise UsageError(f"unknown config key {key!r} for {args.command}")
        if key in explicit:
            continue
        convert = action.type or str
        try:
            if isinstance(action, argparse._AppendAction):
                value = [convert(v) for v in raw.split(",") if v.strip()]
            else:
                value = convert(raw)
        except ValueError as exc:
            raise UsageError(f"bad value for {key}: {raw!r}") from exc
        if action.choices is not None and value not in action.choices:
            raise UsageError(f"{key} must be one of {list(action.choices)}")
        setattr(args, key, value)
    return args


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.config:
            args = _apply_config(parser, argv, args)
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"twistphoton: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"twistphoton: quadrature failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DegenerateTransitionError as exc:
        print(f"twistphoton: degenerate transition: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"twistphoton: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
