"""Partitions of a finite ambient set, standing in for commutative subalgebras.

A partition P of the ambient set corresponds to the unital subalgebra S_P of
functions constant on its blocks; coarser partition means smaller algebra.
All lattice structure on subalgebras is computed here:

* ``p | q``  (common refinement)  corresponds to the generated algebra S_p v S_q,
* ``p & q``  (overlap join)       corresponds to the intersection S_p n S_q,
* ``p <= q`` (p coarser than q)   corresponds to the inclusion S_p <= S_q.

Partitions are immutable, hashable and kept in canonical form: blocks sorted
by minimal element, elements ascending inside a block.  The canonical form is
the ordering and hashing key for every poset built on top of this module.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import InputError


class AmbientSet:
    """An ordered finite set of distinct point labels."""

    __slots__ = ("points", "index", "_hash")

    def __init__(self, points: Iterable[str]):
        pts = tuple(points)
        if not pts:
            raise InputError("ambient set must be nonempty")
        if any(not isinstance(p, str) or not p for p in pts):
            raise InputError("ambient point labels must be nonempty strings")
        bad = [p for p in pts if any(ch in p for ch in "{},|")]
        if bad:
            raise InputError(f"point labels may not contain '{{', '}}', ',' or '|': {bad}")
        if len(set(pts)) != len(pts):
            raise InputError(f"ambient point labels must be distinct: {pts}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "index", {p: i for i, p in enumerate(pts)})
        object.__setattr__(self, "_hash", hash(pts))

    def __setattr__(self, name, value):
        raise AttributeError("AmbientSet is immutable")

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        return isinstance(other, AmbientSet) and self.points == other.points

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"AmbientSet({list(self.points)!r})"


def _canonical_rgs(labels: Sequence) -> tuple[int, ...]:
    """Relabel an arbitrary point->class assignment by order of first occurrence."""
    seen: dict = {}
    out = []
    for lab in labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return tuple(out)


def _blocks_from_rgs(rgs: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    nblocks = max(rgs) + 1 if rgs else 0
    blocks: list[list[int]] = [[] for _ in range(nblocks)]
    for i, b in enumerate(rgs):
        blocks[b].append(i)
    return tuple(tuple(b) for b in blocks)


class Partition:
    """A partition of an ambient set in canonical form."""

    __slots__ = ("ambient", "rgs", "blocks", "_hash")

    def __init__(self, ambient: AmbientSet, rgs: Sequence[int]):
        rgs = _canonical_rgs(tuple(rgs))
        if len(rgs) != len(ambient):
            raise InputError("partition must assign a block to every ambient point")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "rgs", rgs)
        object.__setattr__(self, "blocks", _blocks_from_rgs(rgs))
        object.__setattr__(self, "_hash", hash((ambient, rgs)))

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @classmethod
    def from_blocks(cls, ambient: AmbientSet, blocks: Iterable[Iterable[str]]) -> "Partition":
        assignment: list[int | None] = [None] * len(ambient)
        for b, block in enumerate(blocks):
            block = tuple(block)
            if not block:
                raise InputError("partition blocks must be nonempty")
            for label in block:
                if label not in ambient.index:
                    raise InputError(f"unknown point label {label!r}")
                i = ambient.index[label]
                if assignment[i] is not None:
                    raise InputError(f"point {label!r} occurs in two blocks")
                assignment[i] = b
        missing = [ambient.points[i] for i, b in enumerate(assignment) if b is None]
        if missing:
            raise InputError(f"partition misses points {missing}")
        return cls(ambient, assignment)  # type: ignore[arg-type]

    @classmethod
    def trivial(cls, ambient: AmbientSet) -> "Partition":
        """One block: the scalar subalgebra C*1."""
        return cls(ambient, (0,) * len(ambient))

    @classmethod
    def discrete(cls, ambient: AmbientSet) -> "Partition":
        """All singletons: the full function algebra on the ambient set."""
        return cls(ambient, tuple(range(len(ambient))))

    # -- structure -----------------------------------------------------------

    @property
    def num_blocks(self) -> int:
        """Also the linear dimension of the corresponding subalgebra."""
        return len(self.blocks)

    def block_of(self, point: int) -> int:
        return self.rgs[point]

    def block_labels(self) -> tuple[str, ...]:
        pts = self.ambient.points
        return tuple("{" + ",".join(pts[i] for i in b) + "}" for b in self.blocks)

    def block_points(self) -> tuple[tuple[str, ...], ...]:
        pts = self.ambient.points
        return tuple(tuple(pts[i] for i in b) for b in self.blocks)

    def to_json(self) -> list[list[str]]:
        return [list(b) for b in self.block_points()]

    def __eq__(self, other):
        return (
            isinstance(other, Partition)
            and self.ambient == other.ambient
            and self.rgs == other.rgs
        )

    def __hash__(self):
        return self._hash

    def __le__(self, other):
        """Subalgebra inclusion S_self <= S_other, i.e. self coarser than other."""
        return is_coarser(self, other)

    def __lt__(self, other):
        return self != other and is_coarser(self, other)

    def __or__(self, other):
        return common_refinement(self, other)

    def __and__(self, other):
        return overlap_join(self, other)

    def __str__(self):
        return "".join(self.block_labels())

    def __repr__(self):
        return f"Partition({self})"


def _check_same_ambient(p: Partition, q: Partition):
    if p.ambient != q.ambient:
        raise InputError(
            f"partitions live over different ambient sets: "
            f"{p.ambient.points} vs {q.ambient.points}"
        )


@lru_cache(maxsize=None)
def common_refinement(p: Partition, q: Partition) -> Partition:
    """The coarsest partition refining both: blocks are nonempty p-block/q-block
    intersections.  Corresponds to the generated subalgebra S_p v S_q."""
    _check_same_ambient(p, q)
    return Partition(p.ambient, _canonical_rgs(tuple(zip(p.rgs, q.rgs))))


@lru_cache(maxsize=None)
def overlap_join(p: Partition, q: Partition) -> Partition:
    """The finest partition coarser than both: connected components of the
    bipartite block-overlap graph.  Corresponds to the intersection S_p n S_q."""
    _check_same_ambient(p, q)
    n = len(p.ambient)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for part in (p, q):
        for block in part.blocks:
            for other in block[1:]:
                union(block[0], other)
    return Partition(p.ambient, tuple(find(i) for i in range(n)))


@lru_cache(maxsize=None)
def is_coarser(p: Partition, q: Partition) -> bool:
    """True iff every block of q is contained in a block of p (S_p <= S_q)."""
    _check_same_ambient(p, q)
    image: dict[int, int] = {}
    for pb, qb in zip(p.rgs, q.rgs):
        if image.setdefault(qb, pb) != pb:
            return False
    return True


# -- enumeration -------------------------------------------------------------

_BELL_ROW = [1]          # current row of the Bell triangle
_BELL = [1]              # Bell numbers computed so far


def bell_number(n: int) -> int:
    """Bell numbers via the Bell triangle."""
    if n < 0:
        raise InputError("Bell numbers are defined for n >= 0")
    global _BELL_ROW
    while len(_BELL) <= n:
        row = [_BELL_ROW[-1]]
        for x in _BELL_ROW:
            row.append(row[-1] + x)
        _BELL_ROW = row
        _BELL.append(row[0])
    return _BELL[n]


def _set_partition_rgs(k: int) -> Iterator[tuple[int, ...]]:
    """All restricted-growth strings of length k, lexicographically."""
    if k == 0:
        yield ()
        return
    rgs = [0] * k

    def rec(i: int, maxval: int):
        if i == k:
            yield tuple(rgs)
            return
        for v in range(maxval + 2):
            rgs[i] = v
            yield from rec(i + 1, max(maxval, v))

    yield from rec(1, 0)


@lru_cache(maxsize=None)
def coarsenings(p: Partition) -> tuple[Partition, ...]:
    """All partitions coarser than p, i.e. the contexts of S_p, in canonical
    order.  There are exactly Bell(#blocks) of them."""
    k = p.num_blocks
    out = []
    for grouping in _set_partition_rgs(k):
        out.append(Partition(p.ambient, tuple(grouping[b] for b in p.rgs)))
    out.sort(key=lambda part: part.rgs)
    return tuple(out)


def all_partitions(ambient: AmbientSet) -> tuple[Partition, ...]:
    """Every partition of the ambient set, in canonical order."""
    return coarsenings(Partition.discrete(ambient))
