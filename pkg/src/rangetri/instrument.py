"""Operation counters shared by solvers and the benchmark harness."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class OpCounters:
    """Nonnegative counters incremented by instrumented solvers."""

    extender_steps: int = 0
    matmul_calls: int = 0
    inner_calls: int = 0

    def reset(self) -> None:
        self.extender_steps = 0
        self.matmul_calls = 0
        self.inner_calls = 0
