"""Benchmark sweep comparing the three root algorithms.

For each ``r`` a ``bits``-bit prime ``p = 1 (mod r)`` is generated, ``trials``
random r-th powers ``c = y**r`` are drawn, and one witness is found per
``(p, c)``. Every enabled algorithm then runs on the same ``(p, c, witness)``
triples, interleaved trial by trial. A cell records the mean wall time of the
algorithm call and the mean number of field multiplications it performed.
Witness search and residue testing are excluded from both. Everything except
wall time is a deterministic function of ``seed``.

Cell status mirrors a published results table: ``fail`` when the algorithm
does not apply to ``r``, ``interrupted`` when the cell exceeded its time
budget.
"""
from __future__ import annotations

import csv
import gc
import io
import json
import random
import time
from dataclasses import dataclass, field

from .counting import MulCounter, counting
from .errors import BudgetExceeded, NotApplicableError, UsageError
from .fp import Fe, FieldCtx, gen_prime_1_mod_r
from .roots import ALGORITHMS, AlgoId, RootProblem, RootWitness, check_applicable, find_witness

CSV_FIELDS = ("algo", "r", "bits", "trials", "mean_time_s", "mean_mults", "status")
ALGORITHM_PHASES = ("accumulation", "exponentiation", "assembly")


@dataclass
class BenchConfig:
    bits: int = 512
    r_list: tuple[int, ...] = (3, 4, 43, 101)
    algos: tuple[AlgoId, ...] = (AlgoId.HC, AlgoId.WH, AlgoId.NEW)
    trials: int = 5
    seed: int | str = 0
    format: str = "csv"
    time_budget: float = 600.0

    def __post_init__(self):
        self.r_list = tuple(int(r) for r in self.r_list)
        self.algos = tuple(AlgoId.parse(a) for a in self.algos)
        if self.bits < 64:
            raise UsageError("bench needs bits >= 64")
        if self.trials < 1:
            raise UsageError("trials must be >= 1")
        if any(r < 2 for r in self.r_list):
            raise UsageError("every r must be > 1")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.time_budget <= 0:
            raise UsageError("time budget must be positive")


@dataclass
class BenchCell:
    algo: AlgoId
    r: int
    bits: int
    trials: int
    mean_time: float | None = None
    mean_mults: float | None = None
    status: str = "ok"
    # per-trial detail, not serialized
    times: list[float] = field(default_factory=list, repr=False)
    mults: list[int] = field(default_factory=list, repr=False)

    def row(self) -> dict:
        return {
            "algo": self.algo.value,
            "r": self.r,
            "bits": self.bits,
            "trials": self.trials,
            "mean_time_s": self.mean_time,
            "mean_mults": self.mean_mults,
            "status": self.status,
        }


def make_instances(cfg: BenchConfig, r: int) -> list[tuple[RootProblem, RootWitness]]:
    p = gen_prime_1_mod_r(cfg.bits, r, seed=f"{cfg.seed}:prime:{r}")
    F = FieldCtx.trusted(p)
    rng = random.Random(f"{cfg.seed}:inputs:{r}")
    out = []
    for t in range(cfg.trials):
        y = rng.randrange(1, p)
        prob = RootProblem(F, r, Fe(pow(y, r, p), F))
        w = find_witness(prob, seed=f"{cfg.seed}:witness:{r}:{t}")
        out.append((prob, w))
    return out


def _timed(algo: AlgoId, prob: RootProblem, w: RootWitness, deadline: float) -> tuple[float, int]:
    counter = MulCounter(deadline=deadline)
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        with counting(counter):
            t0 = time.perf_counter()
            ALGORITHMS[algo](prob, w)
            dt = time.perf_counter() - t0
    finally:
        if gc_was_enabled:
            gc.enable()
    return dt, counter.total_of(*ALGORITHM_PHASES)


def run_row(cfg: BenchConfig, r: int, log=None) -> list[BenchCell]:
    cells = {a: BenchCell(a, r, cfg.bits, cfg.trials) for a in cfg.algos}
    live = []
    for a, cell in cells.items():
        try:
            check_applicable(a, r)
            live.append(a)
        except NotApplicableError:
            cell.status = "fail"
    instances = make_instances(cfg, r) if live else []
    spent = {a: 0.0 for a in live}
    for t, (prob, w) in enumerate(instances):
        for a in live:
            cell = cells[a]
            if cell.status != "ok":
                continue
            start = time.monotonic()
            try:
                dt, n = _timed(a, prob, w, start + cfg.time_budget - spent[a])
            except BudgetExceeded:
                cell.status = "interrupted"
                spent[a] += time.monotonic() - start
                continue
            spent[a] += time.monotonic() - start
            cell.times.append(dt)
            cell.mults.append(n)
            if log:
                log(f"r={r} {a.value} trial {t + 1}/{cfg.trials}: {dt:.3f}s, {n} mults")
    for cell in cells.values():
        if cell.status == "ok" and cell.times:
            cell.mean_time = sum(cell.times) / len(cell.times)
            cell.mean_mults = sum(cell.mults) / len(cell.mults)
    return [cells[a] for a in cfg.algos]


def run_bench(cfg: BenchConfig, log=None) -> list[BenchCell]:
    cells = []
    for r in cfg.r_list:
        cells.extend(run_row(cfg, r, log))
    return cells


def to_csv(cells: list[BenchCell]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for c in cells:
        row = c.row()
        if row["mean_time_s"] is not None:
            row["mean_time_s"] = f"{row['mean_time_s']:.6f}"
        if row["mean_mults"] is not None:
            row["mean_mults"] = f"{row['mean_mults']:.1f}"
        writer.writerow(row)
    return buf.getvalue()


def to_json(cells: list[BenchCell]) -> str:
    return json.dumps([c.row() for c in cells], indent=2)


def format_cells(cells: list[BenchCell], fmt: str) -> str:
    return to_csv(cells) if fmt == "csv" else to_json(cells)


def table(cells: list[BenchCell]) -> str:
    """Human-readable grid: one row per algorithm, one column per r."""
    rs = sorted({c.r for c in cells})
    algos = [a for a in AlgoId if any(c.algo is a for c in cells)]
    lookup = {(c.algo, c.r): c for c in cells}
    lines = ["algo".ljust(6) + "".join(f"r={r}".rjust(14) for r in rs)]
    for a in algos:
        row = a.value.ljust(6)
        for r in rs:
            c = lookup.get((a, r))
            if c is None:
                txt = "-"
            elif c.status == "ok":
                txt = f"{c.mean_time:.3f}"
            else:
                txt = {"fail": "fail", "interrupted": "Interr."}[c.status]
            row += txt.rjust(14)
        lines.append(row)
    return "\n".join(lines)
