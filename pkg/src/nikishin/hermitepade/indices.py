"""Multi-indices, combined indices and the orderings used by scans."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from ..errors import IncompleteSequence

__all__ = ["MultiIndex", "CombinedIndex", "classify_multiindex", "compositions",
           "combined_indices", "step_line", "diagonal_sequence", "check_complete",
           "parse_multiindex", "parse_combined"]


@dataclass(frozen=True, order=True)
class MultiIndex:
    components: tuple

    def __init__(self, components: Iterable[int]):
        comps = tuple(int(c) for c in components)
        if any(c < 0 for c in comps):
            raise ValueError(f"multi-index components must be >= 0, got {comps}")
        object.__setattr__(self, "components", comps)

    @property
    def norm(self) -> int:
        return sum(self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def bump(self, l: int) -> MultiIndex:
        c = list(self.components)
        c[l] += 1
        return MultiIndex(c)

    def leq(self, other: MultiIndex) -> bool:
        """Componentwise order."""
        return all(a <= b for a, b in zip(self, other))

    def __str__(self):
        return "(" + ",".join(map(str, self.components)) + ")"

    def to_list(self) -> list[int]:
        return list(self.components)


@dataclass(frozen=True)
class CombinedIndex:
    n1: MultiIndex
    n2: MultiIndex

    def __post_init__(self):
        if self.n1.norm != self.n2.norm + 1:
            raise ValueError(f"combined index needs |n1| = |n2| + 1, got {self.n1};{self.n2}")

    @property
    def m1(self) -> int:
        return len(self.n1) - 1

    @property
    def m2(self) -> int:
        return len(self.n2) - 1

    def bump(self, l1: int, l2: int) -> CombinedIndex:
        return CombinedIndex(self.n1.bump(l1), self.n2.bump(l2))

    def __str__(self):
        return f"({','.join(map(str, self.n1))};{','.join(map(str, self.n2))})"

    def to_json(self) -> dict:
        return {"n1": self.n1.to_list(), "n2": self.n2.to_list()}


def parse_multiindex(text: str) -> MultiIndex:
    text = text.strip().strip("()")
    if not text:
        return MultiIndex(())
    return MultiIndex(int(t) for t in text.split(","))


def parse_combined(text: str) -> CombinedIndex:
    """Parse ``"1,1;1"`` or ``"(1,1);(1)"``."""
    if ";" not in text:
        raise ValueError(f"combined index needs ';' between n1 and n2: {text!r}")
    a, b = text.split(";", 1)
    return CombinedIndex(parse_multiindex(a), parse_multiindex(b))


def classify_multiindex(n: MultiIndex | Sequence[int]) -> dict:
    """``decreasing``: n_0 >= ... >= n_m. ``star``: no i<j<k with n_i < n_j <= n_k."""
    c = tuple(n)
    decreasing = all(a >= b for a, b in zip(c, c[1:]))
    star = not any(c[i] < c[j] <= c[k] for i, j, k in combinations(range(len(c)), 3))
    return {"decreasing": decreasing, "star": star}


def compositions(total: int, parts: int) -> Iterator[tuple]:
    """All tuples of ``parts`` non-negative ints summing to ``total``, descending lex."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def combined_indices(m1: int, m2: int, budget: int) -> list[CombinedIndex]:
    """Every combined index with ``1 <= |n1| <= budget``, graded then descending lex."""
    out = []
    for size in range(1, budget + 1):
        for a in compositions(size, m1 + 1):
            for b in compositions(size - 1, m2 + 1):
                out.append(CombinedIndex(MultiIndex(a), MultiIndex(b)))
    return out


def step_line(parts: int, length: int, first: int = 1) -> list[MultiIndex]:
    """Balanced step-line (1,0,..),(1,1,..),...; ``first`` is the norm of the first entry."""
    out = []
    c = [0] * parts
    for step in range(first + length - 1):
        c[step % parts] += 1
        if step + 1 >= first:
            out.append(MultiIndex(c))
    return out


def diagonal_sequence(m1: int, m2: int, budget: int) -> list[CombinedIndex]:
    """((1,0,..);(0,..)), then bump n1 and n2 cyclically until |n1| = budget."""
    seq = []
    n1 = [0] * (m1 + 1)
    n2 = [0] * (m2 + 1)
    n1[0] = 1
    seq.append(CombinedIndex(MultiIndex(n1), MultiIndex(n2)))
    for step in range(1, budget):
        n1[step % (m1 + 1)] += 1
        n2[(step - 1) % (m2 + 1)] += 1
        seq.append(CombinedIndex(MultiIndex(n1), MultiIndex(n2)))
    return seq


def check_complete(seq: Sequence[MultiIndex], start_norm: int = 1) -> None:
    """Raise unless norms run start_norm, start_norm+1, ... and entries increase componentwise."""
    for i, n in enumerate(seq):
        if n.norm != start_norm + i:
            raise IncompleteSequence(f"entry {i} = {n} has norm {n.norm}, expected {start_norm + i}")
        if i and not seq[i - 1].leq(n):
            raise IncompleteSequence(f"{seq[i - 1]} and {n} are not componentwise ordered")
