"""Command-line entry point: ``nikishin <command> [options]``.

Exit status: 0 when every certification in the run passes, 1 when one
fails, 2 for invalid input (schema, arguments, support conditions) and 3
for internal errors.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
import traceback
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import __version__
from .errors import DegenerateSystem, NikishinError
from .exactnum import GaussianRational, backend_from_name, bigfloat, format_rational, parse_rational
from .experiments import (Check, balanced_sequence, default_grid, run_identity_suite,
                          stieltjes_convergence, summary_text, write_report)
from .experiments.report import write_text
from .hermitepade import (biorthogonal_sequences, make_pair, normality_check, parse_combined,
                          parse_multiindex, perfectness_scan, solve_mixed, solve_type1, solve_type2,
                          step_line)
from .hermitepade.indices import compositions
from .hermitepade.scan import residual_ok, root_hull
from .hermitepade.solvers import orthogonality_residuals
from .measures import inverse_decomposition, inverse_measure, load_system, triangular_residuals
from .parallel import default_workers, parallel_map
from .rootloc import at_system_zero_bound, zeros_in_hull

__all__ = ["main", "build_parser", "run", "RunConfig", "EXIT_OK", "EXIT_FAIL", "EXIT_SCHEMA",
           "EXIT_INTERNAL"]

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA, EXIT_INTERNAL = 0, 1, 2, 3

RANDOMIZED = {"at-test"}


@dataclass
class RunConfig:
    command: str
    system: str | None = None
    budget: int | None = None
    seed: int | None = None
    backend: str | None = None
    precision: int | None = None
    workers: int = 1
    output: str | None = None
    options: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        known = {"command", "system", "budget", "seed", "backend", "precision", "workers", "output"}
        opts = {k: v for k, v in vars(args).items() if k not in known and k != "func"}
        workers = args.workers if args.workers is not None else default_workers()
        cfg = cls(args.command, getattr(args, "system", None), getattr(args, "budget", None),
                  getattr(args, "seed", None), args.backend, args.precision, workers,
                  args.output, opts)
        if cfg.command in RANDOMIZED and cfg.seed is None:
            raise NikishinError(f"{cfg.command} needs --seed")
        return cfg


# helpers ---------------------------------------------------------------------

def resolve_system_path(name: str) -> Path:
    """A path on disk, or the name of a bundled system file (``d1.json``, ``d1``)."""
    p = Path(name)
    if p.exists():
        return p
    bundled = resources.files("nikishin.data").joinpath("systems")
    for candidate in (name, f"{name}.json"):
        q = bundled.joinpath(candidate)
        if q.is_file():
            return Path(str(q))
    raise FileNotFoundError(f"system file not found: {name}")


def _load(cfg: RunConfig, min_atoms: int = 2):
    if not cfg.system:
        raise NikishinError(f"{cfg.command} needs --system")
    backend = None
    if cfg.backend:
        backend = bigfloat(cfg.precision) if cfg.backend == "bigfloat" and cfg.precision \
            else backend_from_name(cfg.backend)
    elif cfg.precision:
        backend = "precision"
    path = resolve_system_path(cfg.system)
    if backend == "precision":
        sf = load_system(path, min_atoms=min_atoms)
        if sf.backend.exact:
            return sf
        return load_system(path, bigfloat(cfg.precision), min_atoms=min_atoms)
    return load_system(path, backend, min_atoms=min_atoms)


def _poly(p) -> str:
    s = p.to_strings()
    return ", ".join(s) if s else "0"


def parse_point(text: str):
    """``"10"``, ``"3/2+2i"``, ``"1/3-i"`` or ``"-2i"`` as Fraction or GaussianRational."""
    t = text.strip().replace(" ", "")
    if t.endswith("i"):
        m = re.match(r"^([-+]?[0-9./]+)?([-+])([0-9./]*)i$", t)
        if m is None:
            m2 = re.match(r"^([-+]?[0-9./]*)i$", t)
            if m2 is None:
                raise NikishinError(f"cannot parse sample point {text!r}")
            im = m2.group(1)
            im = Fraction(1) if im in ("", "+") else Fraction(-1) if im == "-" else parse_rational(im)
            return GaussianRational(0, im)
        re_part = parse_rational(m.group(1)) if m.group(1) else Fraction(0)
        mag = parse_rational(m.group(3)) if m.group(3) else Fraction(1)
        return GaussianRational(re_part, mag if m.group(2) == "+" else -mag)
    return parse_rational(t)


def _finish(cfg: RunConfig, title: str, checks: list, doc: dict, extra: list | None = None) -> int:
    text = summary_text(title, checks, extra)
    sys.stdout.write(text)
    doc = dict(doc)
    doc["command"] = cfg.command
    doc["checks"] = [c.to_json() for c in checks]
    doc["passed"] = all(c.passed for c in checks)
    doc["version"] = __version__
    if cfg.output:
        path = write_report(doc, cfg.output)
        write_text(text, path.with_suffix(".txt"))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def _pair_dims(cfg: RunConfig, sf):
    m1 = cfg.options.get("m1")
    m2 = cfg.options.get("m2")
    m1 = sf.m1 if m1 is None else m1
    m2 = sf.m2 if m2 is None else m2
    if m1 is None:
        m1 = sf.system.end
    if m2 is None:
        m2 = 0
    return m1, m2


# commands --------------------------------------------------------------------

def cmd_validate(cfg: RunConfig) -> int:
    sf = _load(cfg, min_atoms=1)
    s = sf.system
    labels = list(range(s.start, s.end + 1))
    measures = []
    lines = []
    for j in labels:
        mu = s.measure(j)
        measures.append({"label": j, "atoms": len(mu), "lo": format_rational(mu.lo),
                         "hi": format_rational(mu.hi), "sign": mu.sign,
                         "total_mass": format_rational(mu.total_mass())})
        lines.append(f"  sigma_{j}: {len(mu)} atoms on [{float(mu.lo):.6g}, {float(mu.hi):.6g}], "
                     f"sign {mu.sign:+d}")
    tps = [None if t is None else format_rational(t) for t in s.chain.touch_points]
    doc = {"name": sf.name, "backend": s.backend.name,
           "precision_bits": None if s.backend.exact else s.backend.precision,
           "start": s.start, "measures": measures, "touch_points": tps,
           "atom_budget": s.atom_budget(), "pair": {"m1": sf.m1, "m2": sf.m2},
           "moment_hypotheses": "automatic (finitely many atoms)"}
    lines.append(f"  touch points: {tps}")
    lines.append(f"  atom budget: {s.atom_budget()}")
    title = f"validate {sf.name or cfg.system}: backend {s.backend.name}, {len(labels)} measures"
    text = "\n".join([title] + lines + ["support conditions and weight signs verified"])
    sys.stdout.write(text + "\n")
    doc.update({"command": "validate", "passed": True, "version": __version__})
    if cfg.output:
        write_report(doc, cfg.output)
    return EXIT_OK


def cmd_solve(cfg: RunConfig) -> int:
    sf = _load(cfg, min_atoms=1)
    kind = cfg.options["type"]
    text = cfg.options["index"]
    checks, lines = [], []
    doc: dict = {"type": kind, "index": text}
    if kind == "type2":
        n = parse_multiindex(text)
        sol = solve_type2(sf.system, n)
        rep = normality_check(sol)
        orders_ok = all(o is None or o >= n[k] + 1 for k, o in enumerate(sol.remainder_orders))
        lines.append(f"Q: {_poly(sol.Q)}")
        for k, p in enumerate(sol.P):
            lines.append(f"P_{k}: {_poly(p)}")
        lines.append("remainder orders: " + ", ".join(
            "exact" if o is None else str(o) for o in sol.remainder_orders))
        doc.update({"Q": sol.Q.to_strings(), "P": [p.to_strings() for p in sol.P],
                    "remainder_orders": sol.remainder_orders, "kernel_dim": rep.kernel_dim,
                    "normal": rep.normal})
        checks.append(Check("T3", rep.normal, f"deg Q = {sol.Q.degree}, kernel {rep.kernel_dim}"))
        checks.append(Check("T2", orders_ok, "remainder orders at infinity"))
    elif kind == "type1":
        n = parse_multiindex(text)
        sol = solve_type1(sf.system, n)
        rep = normality_check(sol)
        order_ok = sol.remainder_order is None or sol.remainder_order >= n.norm
        for k, p in enumerate(sol.a):
            lines.append(f"a_{k}: {_poly(p)}")
        lines.append(f"b: {_poly(sol.b)}")
        lines.append(f"remainder order: {'exact' if sol.remainder_order is None else sol.remainder_order}")
        doc.update({"a": [p.to_strings() for p in sol.a], "b": sol.b.to_strings(),
                    "remainder_order": sol.remainder_order, "kernel_dim": rep.kernel_dim,
                    "normal": rep.normal})
        checks.append(Check("T3", rep.normal, f"degrees {rep.degrees}, kernel {rep.kernel_dim}"))
        checks.append(Check("T2", order_ok, "remainder order at infinity"))
    else:
        m1, m2 = _pair_dims(cfg, sf)
        pair = make_pair(sf.system, m1, m2, sf.second)
        n = parse_combined(text)
        sol = solve_mixed(pair, n)
        rep = normality_check(sol)
        resid = orthogonality_residuals(sol)
        orth_ok = all(residual_ok(t, sc, pair.backend) for _, _, t, sc in resid)
        z = zeros_in_hull(sol.linear_form(), root_hull(pair), isolate=False)
        zeros_ok = z.count_in_hull == n.n2.norm and z.all_simple and not z.endpoint_zero
        for k, p in enumerate(sol.a):
            lines.append(f"a_{k}: {_poly(p)}")
        lines.append(f"zeros in root hull: {z.count_in_hull} (expected {n.n2.norm})")
        doc.update({"a": [p.to_strings() for p in sol.a], "kernel_dim": rep.kernel_dim,
                    "normal": rep.normal, "zeros": z.to_json()})
        checks.append(Check("T3", rep.normal, f"degrees {rep.degrees}, kernel {rep.kernel_dim}"))
        checks.append(Check("T2", orth_ok and zeros_ok,
                            f"{z.count_in_hull} zeros, orthogonality {'ok' if orth_ok else 'violated'}"))
    return _finish(cfg, f"solve {kind} {text}", checks, doc, lines)


def _gram_ok(table, backend) -> bool:
    if backend.exact:
        return table.band_ok(backend)
    diag = [abs(table.values[i][j]) for i, a in enumerate(table.lambda1)
            for j, b in enumerate(table.lambda2) if a.norm == b.norm]
    if any(d == 0 for d in diag):
        return False
    scale = max(diag + [backend.one()])
    tol = backend.residual_tolerance() * scale
    return all(abs(table.values[i][j]) <= tol for i, a in enumerate(table.lambda1)
               for j, b in enumerate(table.lambda2) if a.norm != b.norm)


def cmd_scan(cfg: RunConfig) -> int:
    sf = _load(cfg)
    m1, m2 = _pair_dims(cfg, sf)
    pair = make_pair(sf.system, m1, m2, sf.second)
    budget = cfg.budget if cfg.budget is not None else pair.atom_budget()
    report = perfectness_scan(pair, budget, workers=cfg.workers,
                              interlacing=not cfg.options.get("no_interlacing"))
    lam1 = step_line(m1 + 1, budget)
    lam2 = step_line(m2 + 1, budget)
    _, _, gram = biorthogonal_sequences(pair, lam1, lam2)
    gram_ok = _gram_ok(gram, pair.backend)
    n = len(report.entries)
    checks = [
        Check("T3", report.all_normal and report.all_kernel_one, f"{n} indices, |n1| <= {budget}"),
        Check("T2", report.zeros_ok and report.orthogonality_ok,
              "zeros counted exactly; residuals " + ("exact" if pair.backend.exact else
                                                      f"below 2^(16-{pair.backend.precision})")),
        Check("C3", report.interlacing_ok, f"{len(report.interlacing)} consecutive pairs"),
        Check("C1", gram_ok, f"{len(gram.lambda1)}x{len(gram.lambda2)} Gram table"),
    ]
    doc = report.to_json()
    doc["gram"] = gram.to_json()
    doc["system"] = sf.name or cfg.system
    bad = [str(e.index) for e in report.entries
           if not (e.normality.normal and e.zeros_ok and e.residuals_ok)]
    extra = [f"  indices checked: {n}; failing: {', '.join(bad) if bad else 'none'}"]
    return _finish(cfg, f"scan {sf.name or cfg.system}: m1={m1}, m2={m2}, budget {budget}",
                   checks, doc, extra)


def cmd_identities(cfg: RunConfig) -> int:
    sf = _load(cfg, min_atoms=1)
    pts = cfg.options.get("points")
    zs = [parse_point(p) for p in pts.split(";")] if pts else None
    results = run_identity_suite(sf.system, zs)
    ok = all(r.passed for r in results)
    failed = [r.identity for r in results if not r.passed]
    detail = f"{len(results)} checks" + (f", failed: {failed}" if failed else "")
    note = [] if sf.system.backend.exact else ["big-float atoms were converted to their exact "
                                               "dyadic values before evaluation"]
    doc = {"system": sf.name or cfg.system, "results": [r.to_json() for r in results]}
    return _finish(cfg, f"identities {sf.name or cfg.system}", [Check("ID", ok, detail)], doc, note)


def cmd_at_test(cfg: RunConfig) -> int:
    sf = _load(cfg)
    s = sf.system
    tail = s.tail(s.start + 1) if s.start == 0 else s
    if s.start == 0 and s.end < 1:
        raise NikishinError("at-test needs at least sigma_1 in the chain")
    parts = tail.end + 1
    max_norm = cfg.options["max_norm"]
    trials = cfg.options["trials"]
    seed = cfg.seed
    idx = [c for size in range(1, max_norm + 1) for c in compositions(size, parts)]
    reports = parallel_map(lambda n: at_system_zero_bound(tail, n, trials, seed), idx, cfg.workers)
    ok = all(r.certified for r in reports)
    worst = max((r.max_off_delta1 - r.bound for r in reports), default=0)
    detail = f"{len(reports)} indices, {trials} trials each, seed {seed}, worst margin {worst}"
    doc = {"system": sf.name or cfg.system, "seed": seed, "trials": trials, "max_norm": max_norm,
           "reports": [r.to_json() for r in reports]}
    return _finish(cfg, f"at-test {sf.name or cfg.system}", [Check("T1", ok, detail)], doc)


def _parse_segment(text: str):
    parts = [t for t in text.split(",") if t.strip()]
    if len(parts) != 2:
        raise NikishinError(f"grid segment needs two ends 'lo,hi', got {text!r}")
    lo, hi = (parse_rational(p) for p in parts)
    if not lo < hi:
        raise NikishinError("grid segment needs lo < hi")
    return lo, hi


def cmd_converge(cfg: RunConfig) -> int:
    sf = _load(cfg)
    s = sf.system
    root = s.measure(0)
    if cfg.options.get("grid"):
        lo, hi = _parse_segment(cfg.options["grid"])
    else:
        lo0 = math.floor(float(root.lo))
        lo, hi = Fraction(lo0 - 3), Fraction(lo0 - 2)
    grid = default_grid(lo, hi, cfg.options["grid_points"])
    max_norm = cfg.options.get("max_norm") or s.atom_budget()
    seq = balanced_sequence(s.end + 1, max_norm)
    table = stieltjes_convergence(s, seq, grid, workers=cfg.workers)
    start = cfg.options["monotone_from"]
    limit = cfg.options["max_slope"]
    mono = table.non_increasing(start)
    slope_ok = table.slope is not None and table.slope < limit
    slope_txt = "n/a" if table.slope is None else f"{table.slope:.4f}"
    checks = [Check("C2", mono and slope_ok,
                    f"non-increasing from |n|={start}: {mono}; slope {slope_txt} < {limit}")]
    if cfg.options.get("csv"):
        write_text(table.to_csv(), cfg.options["csv"])
    if cfg.options.get("gnuplot"):
        write_text(table.to_gnuplot(), cfg.options["gnuplot"])
    doc = {"system": sf.name or cfg.system, "segment": [format_rational(lo), format_rational(hi)],
           "table": table.to_json(), "monotone_from": start, "max_slope": limit}
    lines = [f"  |n|={r.norm:3d}  sup-error {float(r.sup_error or 0):.3e}" for r in table.rows]
    return _finish(cfg, f"converge {sf.name or cfg.system} on [{lo}, {hi}]", checks, doc, lines)


def cmd_inverse(cfg: RunConfig) -> int:
    checks, lines = [], []
    doc: dict = {}
    moments = cfg.options.get("moments")
    if moments:
        c = [parse_rational(t) for t in moments.split(",") if t.strip()]
        n = cfg.options["n"]
        dec = inverse_decomposition(c, n)
        rows = triangular_residuals(c, dec)
        lines.append(f"d_-2 = {format_rational(dec.d_minus2)}")
        lines.append(f"d_-1 = {format_rational(dec.d_minus1)}")
        for k, d in enumerate(dec.tau_moments):
            lines.append(f"d_{k} = {format_rational(d)}")
        doc["decomposition"] = {"d_minus2": format_rational(dec.d_minus2),
                                "d_minus1": format_rational(dec.d_minus1),
                                "tau_moments": [format_rational(d) for d in dec.tau_moments],
                                "tau_sign": dec.tau_sign,
                                "row_residuals": [format_rational(r) for r in rows]}
        checks.append(Check("L4", all(r == 0 for r in rows), f"{len(rows)} triangular rows exact"))
    if cfg.system:
        sf = _load(cfg, min_atoms=1)
        label = cfg.options.get("label")
        label = sf.system.start if label is None else label
        mu = sf.system.measure(label)
        mu = mu if mu.backend.exact else mu.exact()
        inv = inverse_measure(mu)
        signs = inv.residue_signs()
        ok = all(sg == -mu.sign for sg in signs)
        lines.append(f"l(z): {_poly(inv.ell)}")
        lines.append(f"tau atoms: {len(signs)}, residue signs {sorted(set(signs))}")
        doc["measure"] = {"label": label, "ell": inv.ell.to_strings(),
                          "tau_numerator": inv.R.to_strings(), "tau_denominator": inv.N.to_strings(),
                          "residue_signs": signs}
        checks.append(Check("L4", ok, f"sigma_{label}: every residue has sign {-mu.sign:+d}"))
    if not checks:
        raise NikishinError("inverse needs --moments or --system")
    return _finish(cfg, "inverse", checks, doc, lines)


COMMANDS = {
    "validate": cmd_validate,
    "solve": cmd_solve,
    "scan": cmd_scan,
    "identities": cmd_identities,
    "at-test": cmd_at_test,
    "converge": cmd_converge,
    "inverse": cmd_inverse,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=["rational", "bigfloat"],
                        help="override the backend declared in the system file")
    common.add_argument("--precision", type=int,
                        help="big-float precision in bits (overrides NIKISHIN_PRECISION_BITS)")
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: logical cores)")
    common.add_argument("--output", "-o", help="write the JSON report here (text summary next to it)")

    sysarg = argparse.ArgumentParser(add_help=False)
    sysarg.add_argument("--system", help="system JSON file or bundled name (d1.json, toy.json, ...)")

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("--m1", type=int, help="length of the first system (default from file)")
    pair.add_argument("--m2", type=int, help="length of the second system (default from file)")

    p = argparse.ArgumentParser(
        prog="nikishin",
        description="Exact Hermite-Padé computations and certification scans for Nikishin systems.",
        epilog="exit status: 0 pass, 1 certification failure, 2 invalid input, 3 internal error")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common, sysarg], help="check a system file")

    sp = sub.add_parser("solve", parents=[common, sysarg, pair], help="solve one index")
    sp.add_argument("--type", choices=["type1", "type2", "mixed"], default="mixed")
    sp.add_argument("--index", required=True, help='"2", "1,1" or combined "1,1;1"')

    sp = sub.add_parser("scan", parents=[common, sysarg, pair],
                        help="perfectness, zeros, interlacing and biorthogonality")
    sp.add_argument("--budget", type=int, help="largest |n1| (default: atom budget)")
    sp.add_argument("--no-interlacing", action="store_true")

    sp = sub.add_parser("identities", parents=[common, sysarg], help="exact identity suite")
    sp.add_argument("--points", help='sample points separated by ";", e.g. "10;-5;3/2+2i"')

    sp = sub.add_parser("at-test", parents=[common, sysarg], help="randomized zero bound")
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--max-norm", type=int, default=5)

    sp = sub.add_parser("converge", parents=[common, sysarg], help="type II convergence table")
    sp.add_argument("--grid", help='segment "lo,hi" away from the root hull, written as '
                    '--grid=-3,-2 when lo is negative (default: 2..3 left of the hull)')
    sp.add_argument("--grid-points", type=int, default=21)
    sp.add_argument("--max-norm", type=int, help="largest |n| (default: atom budget)")
    sp.add_argument("--monotone-from", type=int, default=3)
    sp.add_argument("--max-slope", type=float, default=-0.1)
    sp.add_argument("--csv", help="write the table as CSV")
    sp.add_argument("--gnuplot", help="write |n| vs log10 error as a gnuplot data file")

    sp = sub.add_parser("inverse", parents=[common, sysarg], help="inverse-measure decomposition")
    sp.add_argument("--moments", help='comma-separated moments "c0,c1,c2,..."')
    sp.add_argument("--n", type=int, default=0, help="highest tau moment index")
    sp.add_argument("--label", type=int, help="measure label used with --system")
    return p


def run(cfg: RunConfig) -> int:
    return COMMANDS[cfg.command](cfg)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SCHEMA if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = RunConfig.from_args(args)
        return run(cfg)
    except DegenerateSystem:
        traceback.print_exc()
        return EXIT_INTERNAL
    except (NikishinError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
