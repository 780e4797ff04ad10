"""Finite vertex sets: sorted positive integers below a materialized prefix bound."""

from __future__ import annotations

import os
import re
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np


@dataclass(frozen=True)
class VertexSet:
    """A finite set A of positive integers, materialized up to ``prefix_bound``.

    Elements are strictly increasing, all >= 1 and <= prefix_bound.  The
    prefix bound records how much of the ambient graph was inspected, which
    matters for density and sampling semantics.
    """

    elements: tuple[int, ...]
    prefix_bound: int

    def __post_init__(self):
        prev = 0
        for e in self.elements:
            if e <= prev:
                raise ValueError("elements must be strictly increasing and >= 1")
            prev = e
        if self.elements and self.elements[-1] > self.prefix_bound:
            raise ValueError("element %d exceeds prefix bound %d" % (self.elements[-1], self.prefix_bound))
        if self.prefix_bound < 0:
            raise ValueError("prefix bound must be non-negative")

    @classmethod
    def from_iterable(cls, it: Iterable[int], prefix_bound: int | None = None) -> "VertexSet":
        elems = tuple(sorted(set(int(x) for x in it)))
        if prefix_bound is None:
            prefix_bound = elems[-1] if elems else 0
        return cls(elems, prefix_bound)

    @classmethod
    def interval(cls, lo: int, hi: int, prefix_bound: int | None = None) -> "VertexSet":
        """The inclusive interval [lo, hi]."""
        if hi < lo:
            return cls((), prefix_bound if prefix_bound is not None else 0)
        return cls(tuple(range(lo, hi + 1)), prefix_bound if prefix_bound is not None else hi)

    @classmethod
    def empty(cls) -> "VertexSet":
        return cls((), 0)

    @cached_property
    def as_array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, v: int) -> bool:
        i = bisect_left(self.elements, v)
        return i < len(self.elements) and self.elements[i] == v

    def count_upto(self, n: int) -> int:
        """|A ∩ [1, n]|."""
        return bisect_right(self.elements, n)

    def minus(self, other: Iterable[int]) -> "VertexSet":
        drop = set(other)
        return VertexSet(tuple(e for e in self.elements if e not in drop), self.prefix_bound)

    def union(self, other: "VertexSet") -> "VertexSet":
        bound = max(self.prefix_bound, other.prefix_bound)
        return VertexSet.from_iterable(set(self.elements) | set(other.elements), bound)

    def restrict(self, lo: int, hi: int) -> "VertexSet":
        """Elements within the inclusive interval [lo, hi]."""
        i = bisect_left(self.elements, lo)
        j = bisect_right(self.elements, hi)
        return VertexSet(self.elements[i:j], self.prefix_bound)


def format_runs(vs: VertexSet) -> str:
    """Compact run-length notation: "1-4,7,9-12"."""
    parts = []
    elems = vs.elements
    i = 0
    while i < len(elems):
        j = i
        while j + 1 < len(elems) and elems[j + 1] == elems[j] + 1:
            j += 1
        parts.append(str(elems[i]) if i == j else "%d-%d" % (elems[i], elems[j]))
        i = j + 1
    return ",".join(parts)


def parse_runs(text: str, prefix_bound: int | None = None) -> VertexSet:
    """Parse run-length notation "a-b,c,d-e" into a VertexSet."""
    elems: list[int] = []
    text = text.strip()
    if text:
        for part in text.split(","):
            part = part.strip()
            m = re.fullmatch(r"(\d+)-(\d+)", part)
            if m:
                a, b = int(m.group(1)), int(m.group(2))
                if b < a:
                    raise ValueError("descending interval %r" % part)
                elems.extend(range(a, b + 1))
            elif re.fullmatch(r"\d+", part):
                elems.append(int(part))
            else:
                raise ValueError("bad vertex-set token %r" % part)
    return VertexSet.from_iterable(elems, prefix_bound)


def load_vertex_set(path: str) -> VertexSet:
    """Read a set file: newline-separated decimals, or one run-length line."""
    with open(path, "r", encoding="ascii") as fh:
        body = fh.read()
    lines = [ln.strip() for ln in body.splitlines() if ln.strip() and not ln.startswith("#")]
    if len(lines) == 1 and ("," in lines[0] or "-" in lines[0]):
        return parse_runs(lines[0])
    return VertexSet.from_iterable(int(ln) for ln in lines)


def save_vertex_set(vs: VertexSet, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_runs(vs) + os.linesep)


def parse_notation(text: str, prefix_bound: int | None = None) -> VertexSet:
    """Parse host-set notation: all, even, odd, ap:a,d, file:PATH, or runs.

    The unbounded keywords (all/even/odd/ap) require a prefix bound.
    """
    text = text.strip()
    if text.startswith("file:"):
        return load_vertex_set(text[5:])
    if text in ("all", "even", "odd") or text.startswith("ap:"):
        if prefix_bound is None:
            raise ValueError("notation %r needs a prefix bound" % text)
        if text == "all":
            return VertexSet.interval(1, prefix_bound)
        if text == "even":
            return VertexSet(tuple(range(2, prefix_bound + 1, 2)), prefix_bound)
        if text == "odd":
            return VertexSet(tuple(range(1, prefix_bound + 1, 2)), prefix_bound)
        m = re.fullmatch(r"ap:(\d+),(\d+)", text)
        if not m:
            raise ValueError("bad arithmetic-progression notation %r" % text)
        a, d = int(m.group(1)), int(m.group(2))
        if a < 1 or d < 1:
            raise ValueError("ap start and difference must be >= 1")
        return VertexSet(tuple(range(a, prefix_bound + 1, d)), prefix_bound)
    return parse_runs(text, prefix_bound)
