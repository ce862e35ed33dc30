"""Command-line front door.

Every capability is reachable as a subcommand with machine-readable
output: `--format structured` emits one self-describing JSON document per
invocation, and the human format prints the same numbers at full
precision.  Exit codes: 0 success, 1 domain error (named on stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .continuation import InvalidPath, PathSpec, continue_path, enclosed_branch_points, monodromy
from .spectrum import (
    BranchSigns,
    OscillatorParams,
    SpectralFamily,
    branch_points,
    dirac_energy,
    dirac_spinor,
    pt_block,
    pt_is_broken,
    sheet_values,
)
from .surface import sample_surface, write_mesh
from .verify import run_suite, suite_names

FAMILIES = {fam.value: fam for fam in SpectralFamily}


def parse_complex(text: str) -> complex:
    """Accept 're,im' or a bare real part."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're' or 're,im', got {text!r}")


def parse_range(text: str) -> tuple[float, float]:
    parts = text.split(",")
    try:
        lo, hi = (float(t) for t in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}") from None
    return lo, hi


def _cpair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _fmt_c(z: complex) -> str:
    if z.imag == 0:
        return repr(z.real)
    return f"{z.real!r} {'+' if z.imag >= 0 else '-'} {abs(z.imag)!r}i"


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="specmon",
        description="Eigenvalue Riemann surfaces of the 1+1 Dirac oscillator",
    )
    top.add_argument(
        "--format",
        choices=("human", "structured"),
        default="human",
        help="structured = one JSON document on stdout",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_params(p, family=True):
        if family:
            p.add_argument("--family", choices=sorted(FAMILIES), default="dirac-conv")
        p.add_argument("--m", type=float, default=1.0, help="mass (energy units)")
        p.add_argument("--n", type=int, default=1, help="oscillator quantum number")

    p = sub.add_parser("eigen", help="sheet values (or one signed energy) at a frequency")
    add_params(p)
    p.add_argument("--omega", type=parse_complex, default=complex(1.0), metavar="RE[,IM]")
    p.add_argument("--signs", type=BranchSigns.parse, metavar="OUTER,INNER",
                   help="e.g. '+,+'; prints the single nested-root energy instead")

    p = sub.add_parser("branch-points", help="branch points of a family")
    add_params(p)

    p = sub.add_parser("spinor", help="tabulate an eigen-spinor on a grid")
    add_params(p, family=False)
    p.add_argument("--signs", type=BranchSigns.parse, default=BranchSigns(1, 1),
                   metavar="OUTER,INNER")
    p.add_argument("--omega", type=float, default=1.0, help="real positive frequency")
    p.add_argument("--x-max", type=float, default=4.0)
    p.add_argument("--points", type=int, default=9)

    p = sub.add_parser("continue", help="track a sheet along a path file")
    add_params(p)
    p.add_argument("--path", required=True, metavar="FILE", help="path document (JSON)")
    p.add_argument("--start-sheet", type=int, default=0)

    p = sub.add_parser("monodromy", help="sheet permutation around a circle")
    add_params(p)
    p.add_argument("--center", type=parse_complex, default=complex(0.0), metavar="RE[,IM]")
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--turns", type=int, default=1)

    p = sub.add_parser("pt", help="negative-axis 2x2 block, eigenvalues, broken flag")
    add_params(p, family=False)
    p.add_argument("--omega-abs", type=float, required=True, help="|omega| on the negative real axis")
    p.add_argument("--transformed", action="store_true", help="traceless similarity-transformed form")

    p = sub.add_parser("surface", help="sample a family over a rectangle, write mesh CSV")
    add_params(p)
    p.add_argument("--re-range", type=parse_range, default=(-2.0, 2.0), metavar="LO,HI")
    p.add_argument("--im-range", type=parse_range, default=(-2.0, 2.0), metavar="LO,HI")
    p.add_argument("--resolution", type=int, default=201)
    p.add_argument("--output", required=True, metavar="FILE")

    p = sub.add_parser("verify", help="run named verification suites")
    p.add_argument("--suite", choices=suite_names(), default="all")

    return top


def cmd_eigen(args, out):
    params = OscillatorParams(args.m, args.n)
    family = FAMILIES[args.family]
    if args.signs is not None:
        value = dirac_energy(params, args.signs, args.omega)
        out.emit(
            {"energy": _cpair(value), "signs": [args.signs.outer, args.signs.inner]},
            [f"E({'+' if args.signs.outer > 0 else '-'},"
             f"{'+' if args.signs.inner > 0 else '-'}) = {_fmt_c(value)}"],
        )
        return
    values = sheet_values(family, params, args.omega)
    out.emit(
        {"family": family.value, "omega": _cpair(args.omega),
         "sheets": [_cpair(v) for v in values]},
        [f"sheet {i}: {_fmt_c(v)}" for i, v in enumerate(values)],
    )


def cmd_branch_points(args, out):
    params = OscillatorParams(args.m, args.n)
    family = FAMILIES[args.family]
    pts = branch_points(family, params)
    out.emit(
        {"family": family.value,
         "branch_points": [{"location": _cpair(b.location), "multiplicity": b.multiplicity}
                           for b in pts]},
        [f"{_fmt_c(b.location)}  (multiplicity {b.multiplicity})" for b in pts]
        or ["no branch points (single-valued sheets)"],
    )


def cmd_spinor(args, out):
    params = OscillatorParams(args.m, args.n)
    if args.points < 1:
        raise ValueError("need at least one sample point")
    xs = [
        -args.x_max + 2.0 * args.x_max * k / (args.points - 1) if args.points > 1 else 0.0
        for k in range(args.points)
    ]
    rows = []
    for x in xs:
        s = dirac_spinor(params, args.signs, args.omega, x)
        rows.append((x, s.upper, s.lower))
    out.emit(
        {"omega": args.omega,
         "signs": [args.signs.outer, args.signs.inner],
         "rows": [{"x": x, "upper": _cpair(u), "lower": _cpair(l)} for x, u, l in rows]},
        [f"x = {x:+.6g}   upper = {_fmt_c(u)}   lower = {_fmt_c(l)}" for x, u, l in rows],
    )


def cmd_continue(args, out):
    params = OscillatorParams(args.m, args.n)
    family = FAMILIES[args.family]
    with open(args.path, "r", encoding="utf-8") as fh:
        path = PathSpec.from_json(fh.read())
    res = continue_path(family, params, path, args.start_sheet)
    out.emit(
        {
            "family": family.value,
            "start_sheet": res.start_sheet,
            "end_sheet": res.end_sheet,
            "final_value": _cpair(res.final_value),
            "steps_taken": res.steps_taken,
            "min_step_hit": res.min_step_hit,
            "samples": len(res.samples),
        },
        [
            f"tracked sheet {res.start_sheet} -> sheet {res.end_sheet} "
            f"in {res.steps_taken} steps",
            f"final value {_fmt_c(res.final_value)} at omega = {_fmt_c(res.samples[-1][0])}",
        ],
    )


def cmd_monodromy(args, out):
    params = OscillatorParams(args.m, args.n)
    family = FAMILIES[args.family]
    perm = monodromy(family, params, args.center, args.radius, args.turns)
    enclosed = enclosed_branch_points(family, params, args.center, args.radius)
    out.emit(
        {
            "family": family.value,
            "center": _cpair(args.center),
            "radius": args.radius,
            "turns": args.turns,
            "permutation": list(perm.mapping),
            "cycles": perm.cycles(),
            "order": perm.order(),
            "enclosed_branch_points": [_cpair(b) for b in enclosed],
        },
        [
            f"permutation {perm.cycles()}  (mapping {list(perm.mapping)}, order {perm.order()})",
            f"encloses {len(enclosed)} branch point(s)",
        ],
    )


def cmd_pt(args, out):
    params = OscillatorParams(args.m, args.n)
    blk = pt_block(params, args.omega_abs, transformed=args.transformed)
    ev = blk.eigenvalues()
    broken = pt_is_broken(params, args.omega_abs)
    out.emit(
        {
            "omega_abs": args.omega_abs,
            "transformed": args.transformed,
            "block": [[_cpair(blk.a11), _cpair(blk.a12)], [_cpair(blk.a21), _cpair(blk.a22)]],
            "eigenvalues": [_cpair(v) for v in ev],
            "pt_broken": broken,
        },
        [
            f"block [[{_fmt_c(blk.a11)}, {_fmt_c(blk.a12)}], "
            f"[{_fmt_c(blk.a21)}, {_fmt_c(blk.a22)}]]",
            f"eigenvalues {_fmt_c(ev[0])}, {_fmt_c(ev[1])}",
            f"PT symmetry {'broken' if broken else 'unbroken'} "
            f"(threshold |omega| = {params.m / (2 * params.n) if params.n else float('inf')!r})",
        ],
    )


def cmd_surface(args, out):
    params = OscillatorParams(args.m, args.n)
    family = FAMILIES[args.family]
    mesh = sample_surface(family, params, args.re_range, args.im_range, args.resolution)
    count = write_mesh(mesh, args.output)
    out.emit(
        {
            "family": family.value,
            "rows": count,
            "skipped_branch_points": mesh.skipped_points,
            "output": args.output,
        },
        [f"wrote {count} rows to {args.output} "
         f"({mesh.skipped_points} branch-point grid hits skipped)"],
    )


def cmd_verify(args, out):
    results = run_suite(args.suite)
    ok = all(r.passed for r in results)
    out.emit(
        {
            "suite": args.suite,
            "passed": ok,
            "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        },
        [r.line() for r in results]
        + [f"{sum(r.passed for r in results)}/{len(results)} checks passed"],
    )
    return 0 if ok else 1


class _Output:
    def __init__(self, mode, command):
        self.mode = mode
        self.command = command

    def emit(self, doc, lines):
        if self.mode == "structured":
            print(json.dumps({"command": self.command, **doc}))
        else:
            for line in lines:
                print(line)


HANDLERS = {
    "eigen": cmd_eigen,
    "branch-points": cmd_branch_points,
    "spinor": cmd_spinor,
    "continue": cmd_continue,
    "monodromy": cmd_monodromy,
    "pt": cmd_pt,
    "surface": cmd_surface,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = _Output(args.format, args.command)
    try:
        code = HANDLERS[args.command](args, out)
    except (ValueError, InvalidPath, OverflowError, RuntimeError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return int(code or 0)


if __name__ == "__main__":
    sys.exit(main())
