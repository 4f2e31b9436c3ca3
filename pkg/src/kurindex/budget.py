"""Wall-clock and node budgets for the exhaustive searches."""
from __future__ import annotations

import time
from dataclasses import dataclass, field


@dataclass
class Budget:
    """Shared allowance for one top-level computation.

    ``ms`` caps wall-clock time, ``nodes`` caps search nodes; ``None`` means
    unlimited. Searches charge nodes as they go and poll :meth:`expired`
    between kernel chunks, so a node budget is deterministic while a
    millisecond budget is not.
    """

    ms: float | None = None
    nodes: int | None = None
    nodes_used: int = 0
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    def elapsed_ms(self) -> float:
        return (time.perf_counter() - self._t0) * 1000.0

    def charge(self, n: int) -> None:
        self.nodes_used += int(n)

    def remaining_nodes(self) -> int | None:
        if self.nodes is None:
            return None
        return max(0, self.nodes - self.nodes_used)

    def expired(self) -> bool:
        if self.nodes is not None and self.nodes_used >= self.nodes:
            return True
        return self.ms is not None and self.elapsed_ms() >= self.ms

    def usage(self) -> dict:
        return {
            "ms_limit": self.ms,
            "nodes_limit": self.nodes,
            "ms_used": round(self.elapsed_ms(), 3),
            "nodes_used": self.nodes_used,
        }


def unlimited() -> Budget:
    return Budget()


def ensure(budget: Budget | None) -> Budget:
    return budget if budget is not None else Budget()
