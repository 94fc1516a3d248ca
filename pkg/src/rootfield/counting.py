"""Field-multiplication counters.

The cost unit throughout the package is one multiplication in F_p; a squaring
counts as one multiplication. Arithmetic routines report their work through
:func:`count_mults`, which charges the counter installed by :func:`counting`
for the current context (thread or asyncio task), under the currently active
phase label. Without an installed counter nothing is recorded.

>>> from rootfield.counting import counting, phase, count_mults
>>> with counting() as c:
...     with phase("setup"):
...         count_mults(3)
...     count_mults(2)
>>> c.phases
{'setup': 3, 'other': 2}
>>> c.total
5
"""
from __future__ import annotations

import time
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator

from .errors import BudgetExceeded

_current: ContextVar["MulCounter | None"] = ContextVar("rootfield_counter", default=None)


class MulCounter:
    """Per-run tally of field multiplications split by phase.

    ``deadline`` is an optional :func:`time.monotonic` timestamp; once passed,
    the next charge raises :class:`BudgetExceeded`, which gives long
    exponentiations a cooperative cancellation point.
    """

    def __init__(self, deadline: float | None = None):
        self.phases: dict[str, int] = {}
        self.iterations: dict[str, int] = {}
        self.inversions = 0
        self.deadline = deadline
        self._phase = "other"

    @property
    def total(self) -> int:
        return sum(self.phases.values())

    def total_of(self, *names: str) -> int:
        return sum(self.phases.get(n, 0) for n in names)

    def add(self, n: int) -> None:
        self.phases[self._phase] = self.phases.get(self._phase, 0) + n
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exceeded")

    def as_dict(self) -> dict:
        return {
            "phases": dict(self.phases),
            "total": self.total,
            "iterations": dict(self.iterations),
            "inversions": self.inversions,
        }

    def __repr__(self) -> str:
        return f"MulCounter(total={self.total}, phases={self.phases})"


@contextmanager
def counting(counter: MulCounter | None = None) -> Iterator[MulCounter]:
    """Install ``counter`` (or a fresh one) for the duration of the block."""
    if counter is None:
        counter = MulCounter()
    token = _current.set(counter)
    try:
        yield counter
    finally:
        _current.reset(token)


@contextmanager
def phase(name: str) -> Iterator[None]:
    c = _current.get()
    if c is None:
        yield
        return
    prev, c._phase = c._phase, name
    try:
        yield
    finally:
        c._phase = prev


def current_counter() -> MulCounter | None:
    return _current.get()


def count_mults(n: int = 1) -> None:
    c = _current.get()
    if c is not None:
        c.add(n)


def count_iteration(name: str) -> None:
    c = _current.get()
    if c is not None:
        c.iterations[name] = c.iterations.get(name, 0) + 1


def count_inversion() -> None:
    c = _current.get()
    if c is not None:
        c.inversions += 1
