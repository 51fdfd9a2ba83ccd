"""Search instrumentation shared by the exact solvers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class SearchStats:
    guesses_enumerated: int = 0
    guesses_surviving: int = 0
    steiner_calls: int = 0
    steiner_terminal_counts: list[int] = field(default_factory=list)
    steiner_work: int = 0
    branch_nodes: int = 0
    leaves: int = 0
    elapsed: float = 0.0
    # split solver: sum of 2**|terminals| per clique-side choice
    terminal_sums: dict = field(default_factory=dict)
    # cluster solver: per S' guess, (leaf count, [(depth, terminals), ...])
    leaf_log: dict = field(default_factory=dict)
    rule_counts: dict = field(default_factory=dict)

    def bump(self, rule: str) -> None:
        self.rule_counts[rule] = self.rule_counts.get(rule, 0) + 1

    def merge(self, other: "SearchStats") -> "SearchStats":
        out = SearchStats(
            guesses_enumerated=self.guesses_enumerated + other.guesses_enumerated,
            guesses_surviving=self.guesses_surviving + other.guesses_surviving,
            steiner_calls=self.steiner_calls + other.steiner_calls,
            steiner_terminal_counts=self.steiner_terminal_counts + other.steiner_terminal_counts,
            steiner_work=self.steiner_work + other.steiner_work,
            branch_nodes=self.branch_nodes + other.branch_nodes,
            leaves=self.leaves + other.leaves,
            elapsed=self.elapsed + other.elapsed,
        )
        for src in (self, other):
            for key, val in src.terminal_sums.items():
                out.terminal_sums[key] = out.terminal_sums.get(key, 0) + val
            out.leaf_log.update(src.leaf_log)
            for key, val in src.rule_counts.items():
                out.rule_counts[key] = out.rule_counts.get(key, 0) + val
        return out

    def summary(self) -> dict:
        return {
            "branch_nodes": self.branch_nodes,
            "leaves": self.leaves,
            "steiner_calls": self.steiner_calls,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }


def solution_key(sol) -> tuple[int, tuple[int, ...]]:
    """Deterministic ordering of candidate solutions: size, then sorted ids."""
    return len(sol), tuple(sorted(sol))
