"""Command-line interface: ``hubbard-ft {bounds,estimate,sweep,verify}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import oracle
from .gate_costs import SO_FFFT_LEGACY_COSTS, SO_FFFT_LEGACY_W, plaq_step_cost, so_ffft_plus_step_cost
from .lattice import LatticeSpec, UnsupportedLatticeError
from .pe_estimator import SCHEMES, ValidityWarning, estimate, sweep_ancilla
from .reference_data import RESOURCE_TABLE, round_sig
from .trotter_bounds import w_plaq, w_so, w_so1, w_so2

OUTPUT_DIR_ENV = "HUBBARD_FT_OUTPUT_DIR"
FORMATS = ("table", "json", "csv")

TABLE1_L = (4, 6, 8, 12, 16)
TABLE2_L = tuple(range(8, 33, 2))

BOUNDS_COLUMNS = ("scheme", "L", "u_over_tau", "W", "n_tof", "n_t", "n_rot")
ESTIMATE_COLUMNS = (
    "scheme", "L", "u_over_tau", "n_q", "hwp_m", "alpha", "W", "x", "t", "n_pe",
    "n_tof", "n_t", "toffoli_equivalent",
)
SWEEP_ALPHA_COLUMNS = ("scheme", "L", "alpha", "hwp_m", "toffoli_equivalent")
SWEEP_L_COLUMNS = ("scheme", "L", "alpha", "toffoli_equivalent")
# columns shown at 2 significant figures in table mode
_ROUNDED = {"W", "t", "x"}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    L: int | None = None
    u_over_tau: float = 4.0
    tau: float = 1.0
    scheme: str = "plaq"
    hwp_m: int | None = None
    fmt: str = "table"
    output: str | None = None
    table: int | None = None
    catalysis: bool = False
    workers: int | None = None

    @property
    def spec(self) -> LatticeSpec:
        return LatticeSpec(self.L, u=self.u_over_tau * self.tau, tau=self.tau)

    def validate(self) -> None:
        if self.table is None and self.command in ("bounds", "estimate") and self.L is None:
            raise UsageError("--L is required unless --table is given")
        if self.L is None:
            return
        if self.L < 4:
            raise UsageError(f"L={self.L}: periodic lattices need L >= 4 (smaller L duplicates edges)")
        if self.scheme == "plaq" and self.L % 2:
            raise UsageError(f"L={self.L}: plaquette Trotterization needs an even side length")
        if self.scheme in ("so-ffft-plus", "so-ffft") and self.L not in (4, 8, 16):
            raise UsageError(f"L={self.L}: {self.scheme} gate counts exist only for L in (4, 8, 16)")
        if self.scheme == "so-ffft" and self.u_over_tau != 4:
            raise UsageError("so-ffft error constants exist only for u/tau = 4")


# -- row builders ----------------------------------------------------------------


def _bounds_rows(L: int, u_over_tau: float, tau: float, scheme: str) -> list[dict]:
    spec = LatticeSpec(L, u=u_over_tau * tau, tau=tau)
    rows = []

    def add(name, W, cost):
        c = cost.as_tuple() if cost is not None else (None, None, None)
        rows.append(dict(zip(BOUNDS_COLUMNS, (name, L, u_over_tau, W, *c))))

    if scheme in ("so-ffft", "all") and L in SO_FFFT_LEGACY_COSTS and u_over_tau == 4:
        add("so-ffft", SO_FFFT_LEGACY_W[L] * tau**3, SO_FFFT_LEGACY_COSTS[L])
    if scheme in ("so1", "all"):
        add("so1", w_so1(spec).W, None)
    if scheme in ("so2", "all"):
        add("so2", w_so2(spec).W, None)
    if scheme in ("so-ffft-plus", "all") and L in (4, 8, 16):
        add("so-ffft-plus", w_so(spec).W, so_ffft_plus_step_cost(L))
    if scheme in ("plaq", "all") and L % 2 == 0:
        add("plaq", w_plaq(spec).W, plaq_step_cost(L))
    return rows


def _estimate_row(L: int, u_over_tau: float, tau: float, scheme: str, hwp_m, catalysis: bool) -> dict:
    spec = LatticeSpec(L, u=u_over_tau * tau, tau=tau)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ValidityWarning)
        est = estimate(spec, scheme, hwp_m, catalysis_qubit=catalysis)
    return {
        "scheme": scheme, "L": L, "u_over_tau": u_over_tau, "n_q": est.n_q, "hwp_m": est.hwp_m,
        "alpha": est.ancilla_qubits, "W": est.W, "x": est.x, "t": est.t, "n_pe": est.n_pe,
        "n_tof": est.total_tof, "n_t": est.total_t, "toffoli_equivalent": est.total_toffoli_equivalent,
        "_estimate": est,
    }


# -- rendering -------------------------------------------------------------------


def _fmt_cell(key, v, human: bool) -> str:
    if v is None:
        return "-"
    if human and key in _ROUNDED and isinstance(v, float):
        return f"{round_sig(v, 2):.2g}"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(rows: list[dict], columns, fmt: str) -> str:
    rows = [{k: r.get(k) for k in columns} for r in rows]
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow(["" if r[k] is None else (repr(r[k]) if isinstance(r[k], float) else r[k]) for k in columns])
        return buf.getvalue()
    cells = [[_fmt_cell(k, r[k], True) for k in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) if cells else len(c) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def resolve_output(path: str | None) -> Path | None:
    """Relative output paths land under ``$HUBBARD_FT_OUTPUT_DIR`` when it is set."""
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def emit(text: str, output: str | None, stdout=None) -> None:
    target = resolve_output(output)
    if target is None:
        (stdout or sys.stdout).write(text)
        return
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text)


def _ordered_map(fn, items, workers):
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda a: fn(*a), items))


# -- commands --------------------------------------------------------------------


def cmd_bounds(cfg: RunConfig) -> list[dict]:
    if cfg.table == 1:
        jobs = [(L, 4.0, cfg.tau, "all") for L in TABLE1_L]
        rows = [r for batch in _ordered_map(_bounds_rows, jobs, cfg.workers) for r in batch]
        rows = [r for r in rows if r["scheme"] in ("so-ffft", "so-ffft-plus", "plaq")]
        order = {"so-ffft": 0, "so-ffft-plus": 1, "plaq": 2}
        return sorted(rows, key=lambda r: (order[r["scheme"]], r["L"]))
    if cfg.table is not None:
        raise UsageError("bounds reproduces --table 1 only")
    rows = _bounds_rows(cfg.L, cfg.u_over_tau, cfg.tau, cfg.scheme)
    if not rows:
        raise UsageError(f"no {cfg.scheme} bound available for L={cfg.L}, u/tau={cfg.u_over_tau}")
    return rows


def cmd_estimate(cfg: RunConfig) -> list[dict]:
    if cfg.table == 2:
        jobs = [(L, float(u), cfg.tau, "plaq", None, cfg.catalysis) for u, L in RESOURCE_TABLE]
        return _ordered_map(_estimate_row, jobs, cfg.workers)
    if cfg.table is not None:
        raise UsageError("estimate reproduces --table 2 only")
    return [_estimate_row(cfg.L, cfg.u_over_tau, cfg.tau, cfg.scheme, cfg.hwp_m, cfg.catalysis)]


def cmd_sweep(cfg: RunConfig, over: str, L_values=None, alphas=None) -> tuple[list[dict], tuple]:
    """Plot-ready data: Toffoli count against ancilla budget or against lattice size."""
    if over == "ancilla":
        L = cfg.L or 8
        spec = LatticeSpec(L, u=cfg.u_over_tau * cfg.tau, tau=cfg.tau)
        alphas = list(range(0, L * L // 2 + 1)) if alphas is None else list(alphas)
        schemes = ["plaq"] + (["so-ffft-plus"] if L in (4, 8, 16) else [])
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ValidityWarning)
            results = _ordered_map(lambda s: sweep_ancilla(spec, s, alphas), [(s,) for s in schemes], cfg.workers)
        rows = [
            dict(zip(SWEEP_ALPHA_COLUMNS, (s, L, a, m, tof)))
            for s, res in zip(schemes, results)
            for a, m, tof in res
        ]
        return rows, SWEEP_ALPHA_COLUMNS
    if over == "size":
        L_values = list(TABLE2_L) if L_values is None else list(L_values)
        jobs = [(L, cfg.u_over_tau, cfg.tau, "plaq", None, False) for L in L_values]
        if cfg.u_over_tau == 4:
            jobs += [(L, 4.0, cfg.tau, s, None, False) for s in ("so-ffft-plus", "so-ffft") for L in L_values if L in (4, 8, 16)]
        est = _ordered_map(_estimate_row, jobs, cfg.workers)
        rows = [dict(zip(SWEEP_L_COLUMNS, (r["scheme"], r["L"], r["alpha"], r["toffoli_equivalent"]))) for r in est]
        return rows, SWEEP_L_COLUMNS
    raise UsageError(f"unknown sweep axis {over!r}; expected ancilla or size")


def cmd_verify(checks=None, workers=None) -> dict:
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return oracle.run_suite(checks, map_fn=pool.map)


# -- argument parsing ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hubbard-ft", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, schemes, default_fmt="table"):
        sp.add_argument("--L", type=int, help="lattice side length")
        sp.add_argument("--u", type=float, default=4.0, help="interaction strength u/tau (default 4)")
        sp.add_argument("--tau", type=float, default=1.0, help="hopping amplitude (default 1)")
        sp.add_argument("--scheme", choices=schemes, default="plaq")
        sp.add_argument("--format", choices=FORMATS, default=default_fmt, dest="fmt")
        sp.add_argument("--output", help=f"write to a file (relative paths go under ${OUTPUT_DIR_ENV})")
        sp.add_argument("--workers", type=int, default=None, help="thread count for table rows")

    b = sub.add_parser("bounds", help="Trotter error constants and per-step gate counts")
    common(b, ("plaq", "so1", "so2", "so-ffft-plus", "so-ffft", "all"))
    b.add_argument("--table", type=int, choices=(1,), help="reproduce the full bounds table")

    e = sub.add_parser("estimate", help="phase-estimation resource estimate")
    common(e, SCHEMES)
    e.add_argument("--table", type=int, choices=(2,), help="reproduce the full resource table")
    e.add_argument("--hwp-m", type=int, default=None, help="Hamming-weight batch size (default L^2/2)")
    e.add_argument("--catalysis", action="store_true", help="count the extra T-catalyst qubit")

    s = sub.add_parser("sweep", help="plot-ready Toffoli counts")
    common(s, ("plaq",), default_fmt="csv")
    s.add_argument("--over", choices=("ancilla", "size"), required=True,
                   help="ancilla: Toffoli vs ancilla budget at fixed L (default 8); size: Toffoli vs L at alpha = L^2/2")
    s.add_argument("--L-values", type=int, nargs="+", dest="L_values")
    s.add_argument("--alphas", type=int, nargs="+")

    v = sub.add_parser("verify", help="run the exact small-instance checks")
    v.add_argument("--check", action="append", choices=oracle.ALL_CHECKS, dest="checks",
                   help="run only this check (repeatable)")
    v.add_argument("--output", help="write the JSON report to a file")
    v.add_argument("--workers", type=int, default=None)
    return p


def main(argv=None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        report = cmd_verify(args.checks, args.workers)
        emit(json.dumps(report, indent=2) + "\n", args.output, stdout)
        return 0 if report["passed"] else 1

    cfg = RunConfig(
        command=args.command, L=args.L, u_over_tau=args.u, tau=args.tau, scheme=args.scheme,
        hwp_m=getattr(args, "hwp_m", None), fmt=args.fmt, output=args.output,
        table=getattr(args, "table", None), catalysis=getattr(args, "catalysis", False), workers=args.workers,
    )
    try:
        cfg.validate()
        if cfg.command == "bounds":
            rows, cols = cmd_bounds(cfg), BOUNDS_COLUMNS
        elif cfg.command == "estimate":
            rows, cols = cmd_estimate(cfg), ESTIMATE_COLUMNS
        else:
            rows, cols = cmd_sweep(cfg, args.over, args.L_values, args.alphas)
    except (UsageError, UnsupportedLatticeError, ValueError) as exc:
        parser.error(str(exc))
    if cfg.command == "estimate" and cfg.fmt == "json":
        # full-precision estimate records, loadable with ResourceEstimate.from_dict
        text = json.dumps([r["_estimate"].to_dict() for r in rows], indent=2) + "\n"
    else:
        text = render(rows, cols, cfg.fmt)
    emit(text, cfg.output, stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
