"""Finite context posets, monotone maps, and generic adjunction machinery.

The context poset of a partition A is the set of all partitions coarser than
A (equivalently, all unital subalgebras of S_A) ordered by subalgebra
inclusion.  Everything a monotone map can be asked here - left adjoints,
unit/counit strictness, coreflector and thickening diagnostics - is computed
by exhaustive scans over the finite order, never by algebra-specific
formulas, so the algebraic constructions elsewhere can be cross-checked
against these generic answers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Optional, Sequence

from .errors import InputError, SizeGuardError
from .partitions import Partition, bell_number, coarsenings, is_coarser, overlap_join

DEFAULT_MAX_BELL = 115975  # Bell(10)


class FinitePoset:
    """An immutable finite poset with canonical element order.

    The order is materialised as bitmask rows: ``up[i]`` has bit j set iff
    element i <= element j.  Reflexivity, antisymmetry and transitivity are
    checked on construction.
    """

    __slots__ = ("elements", "index", "up", "down")

    def __init__(
        self,
        elements: Sequence[Hashable],
        leq: Optional[Callable[[Hashable, Hashable], bool]] = None,
        *,
        up_masks: Optional[Sequence[int]] = None,
    ):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise InputError("poset elements must be distinct")
        index = {e: i for i, e in enumerate(elements)}
        k = len(elements)
        if up_masks is not None:
            up = list(up_masks)
            if len(up) != k:
                raise InputError("up_masks must cover every element")
        else:
            if leq is None:
                raise InputError("a poset needs either a comparison or its masks")
            up = []
            for i in range(k):
                mask = 0
                for j in range(k):
                    if leq(elements[i], elements[j]):
                        mask |= 1 << j
                up.append(mask)
        down = [0] * k
        for i in range(k):
            m = up[i]
            while m:
                j = (m & -m).bit_length() - 1
                down[j] |= 1 << i
                m &= m - 1
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "up", tuple(up))
        object.__setattr__(self, "down", tuple(down))
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("FinitePoset is immutable")

    def _validate(self):
        for i in range(len(self.elements)):
            if not (self.up[i] >> i) & 1:
                raise InputError(f"order not reflexive at {self.elements[i]}")
            m = self.up[i]
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                if j != i and (self.up[j] >> i) & 1:
                    raise InputError(
                        f"order not antisymmetric at {self.elements[i]}, {self.elements[j]}"
                    )
                if self.up[j] & ~self.up[i]:
                    raise InputError(
                        f"order not transitive at {self.elements[i]} <= {self.elements[j]}"
                    )

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.index

    def leq(self, x, y) -> bool:
        return bool((self.up[self.index[x]] >> self.index[y]) & 1)

    def leq_idx(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    def bottom_idx(self) -> Optional[int]:
        full = (1 << len(self.elements)) - 1
        for i in range(len(self.elements)):
            if self.up[i] == full:
                return i
        return None

    def covers(self) -> tuple[tuple[int, int], ...]:
        """Transitive reduction: pairs (i, j) where j covers i."""
        out = []
        for i in range(len(self.elements)):
            strictly_up = self.up[i] & ~(1 << i)
            m = strictly_up
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                between = strictly_up & self.down[j] & ~(1 << j)
                if not between:
                    out.append((i, j))
        return tuple(out)

    def least_of(self, member_mask: int) -> Optional[int]:
        """Index of the least element of the subset given by a bitmask, if any."""
        if not member_mask:
            return None
        m = member_mask
        cand = (m & -m).bit_length() - 1
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if (self.up[j] >> cand) & 1:
                cand = j
        return cand if (self.up[cand] & member_mask) == member_mask else None


class ContextPoset(FinitePoset):
    """The poset of all contexts (coarsenings) of a partition, bottom = C*1."""

    __slots__ = ("algebra",)

    def __init__(self, algebra: Partition):
        object.__setattr__(self, "algebra", algebra)
        elements = coarsenings(algebra)
        index = {e: i for i, e in enumerate(elements)}
        # p <= q iff p is a coarsening of q, so each column of the order is
        # exactly coarsenings(q); building it that way beats the quadratic
        # comparison sweep by orders of magnitude on large posets.
        up = [0] * len(elements)
        for j, q in enumerate(elements):
            bit = 1 << j
            for p in coarsenings(q):
                up[index[p]] |= bit
        super().__init__(elements, up_masks=up)


def enumerate_contexts(a: Partition, max_bell: int = DEFAULT_MAX_BELL) -> ContextPoset:
    """All unital subalgebras of S_a as a poset; exactly Bell(#blocks) of them."""
    count = bell_number(a.num_blocks)
    if count > max_bell:
        raise SizeGuardError(
            f"context poset of {a} would have Bell({a.num_blocks}) = {count} "
            f"elements, exceeding the guard of {max_bell}",
            bound=max_bell,
            requested=count,
        )
    return ContextPoset(a)


def restrict_context(c: Partition, a: Partition) -> Partition:
    """The context C n S_a: subalgebra intersection, i.e. the overlap join."""
    return overlap_join(c, a)


class MonotoneMap:
    """An order-preserving map between finite posets, stored as an index table."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source: FinitePoset, target: FinitePoset, table: Sequence[int]):
        table = tuple(table)
        if len(table) != len(source):
            raise InputError("monotone map table must cover every source element")
        for i in range(len(source)):
            m = source.up[i]
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                if not target.leq_idx(table[i], table[j]):
                    raise InputError(
                        f"map is not order-preserving: {source.elements[i]} <= "
                        f"{source.elements[j]} but images are not ordered"
                    )
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "table", table)

    def __setattr__(self, name, value):
        raise AttributeError("MonotoneMap is immutable")

    @classmethod
    def from_function(cls, source: FinitePoset, target: FinitePoset, f) -> "MonotoneMap":
        return cls(source, target, [target.index[f(e)] for e in source.elements])

    def __call__(self, x):
        return self.target.elements[self.table[self.source.index[x]]]

    def is_surjective(self) -> bool:
        return len(set(self.table)) == len(self.target)

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.source)


@dataclass(frozen=True)
class AdjunctionReport:
    """Everything the generic left-adjoint computation found out about a map f.

    ``unit_strict[s]`` records g(f(s)) != s per source element and
    ``counit_strict[t]`` records f(g(t)) != t per target element (both None
    when no adjoint exists); f is a coreflector iff its left adjoint is also
    a right inverse, i.e. no counit strictness remains.
    """

    adjoint_exists: bool
    adjoint: Optional[MonotoneMap]
    unit_strict: Optional[tuple[bool, ...]]
    counit_strict: Optional[tuple[bool, ...]]
    is_coreflector: bool
    is_iso: bool
    fiber_minima: tuple[Optional[int], ...]
    missing_least: tuple[int, ...]  # target indices whose upper preimage has no least element


def left_adjoint(f: MonotoneMap) -> AdjunctionReport:
    """Generic finite-poset left adjoint: for each target element q, the least
    element of {p : q <= f(p)}, when every such least element exists."""
    src, tgt = f.source, f.target
    upper_preimage = [0] * len(tgt)
    for i, ti in enumerate(f.table):
        m = tgt.down[ti]  # all q <= f(p_i)
        while m:
            q = (m & -m).bit_length() - 1
            m &= m - 1
            upper_preimage[q] |= 1 << i
    adjoint_table = []
    missing = []
    for q in range(len(tgt)):
        least = src.least_of(upper_preimage[q])
        if least is None:
            missing.append(q)
        adjoint_table.append(least)

    fiber_minima = _fiber_minima(f)

    if missing:
        return AdjunctionReport(
            adjoint_exists=False,
            adjoint=None,
            unit_strict=None,
            counit_strict=None,
            is_coreflector=False,
            is_iso=False,
            fiber_minima=fiber_minima,
            missing_least=tuple(missing),
        )

    g = MonotoneMap(tgt, src, adjoint_table)  # monotonicity is re-verified here
    _assert_adjunction_law(f, g)
    unit_strict = tuple(g.table[f.table[s]] != s for s in range(len(src)))
    counit_strict = tuple(f.table[g.table[t]] != t for t in range(len(tgt)))
    is_coreflector = not any(counit_strict)
    return AdjunctionReport(
        adjoint_exists=True,
        adjoint=g,
        unit_strict=unit_strict,
        counit_strict=counit_strict,
        is_coreflector=is_coreflector,
        is_iso=is_coreflector and not any(unit_strict),
        fiber_minima=fiber_minima,
        missing_least=(),
    )


def _assert_adjunction_law(f: MonotoneMap, g: MonotoneMap):
    from .errors import InternalConsistencyError

    src, tgt = f.source, f.target
    for q in range(len(tgt)):
        for p in range(len(src)):
            if src.leq_idx(g.table[q], p) != tgt.leq_idx(q, f.table[p]):
                raise InternalConsistencyError(
                    "computed adjoint violates the adjunction law",
                    dump={
                        "target": str(tgt.elements[q]),
                        "source": str(src.elements[p]),
                        "g(q)": str(src.elements[g.table[q]]),
                        "f(p)": str(tgt.elements[f.table[p]]),
                    },
                )


def _fiber_minima(f: MonotoneMap) -> tuple[Optional[int], ...]:
    src, tgt = f.source, f.target
    fibers = [0] * len(tgt)
    for i, ti in enumerate(f.table):
        fibers[ti] |= 1 << i
    return tuple(src.least_of(m) for m in fibers)


@dataclass(frozen=True)
class ThickeningReport:
    """Finite-poset reading of an infinitesimal thickening: a surjection all
    of whose fibers have minima, the minima forming a monotone section."""

    surjective: bool
    fiber_nonempty: tuple[bool, ...]
    fiber_has_minimum: tuple[bool, ...]
    section_monotone: Optional[bool]
    overall: bool


def thickening_report(f: MonotoneMap) -> ThickeningReport:
    src, tgt = f.source, f.target
    fibers = [0] * len(tgt)
    for i, ti in enumerate(f.table):
        fibers[ti] |= 1 << i
    nonempty = tuple(bool(m) for m in fibers)
    minima = [src.least_of(m) if m else None for m in fibers]
    has_min = tuple(m is not None for m in minima)
    surjective = all(nonempty)
    section_monotone: Optional[bool] = None
    overall = surjective and all(has_min)
    if overall:
        section_monotone = all(
            src.leq_idx(minima[q], minima[t])
            for q in range(len(tgt))
            for t in range(len(tgt))
            if tgt.leq_idx(q, t)
        )
        overall = section_monotone
        if overall:
            _cross_check_section(f, tuple(minima))
    return ThickeningReport(
        surjective=surjective,
        fiber_nonempty=nonempty,
        fiber_has_minimum=has_min,
        section_monotone=section_monotone,
        overall=overall,
    )


def _cross_check_section(f: MonotoneMap, minima: tuple[int, ...]):
    """A monotone fiber-minimum section forces the left adjoint to exist and
    equal it; anything else is a bug."""
    from .errors import InternalConsistencyError

    report = left_adjoint(f)
    if not report.adjoint_exists or report.adjoint.table != minima:
        raise InternalConsistencyError(
            "thickening section disagrees with the computed left adjoint",
            dump={
                "section": [str(f.source.elements[i]) for i in minima],
                "adjoint_exists": report.adjoint_exists,
                "adjoint": None
                if report.adjoint is None
                else [str(f.source.elements[i]) for i in report.adjoint.table],
            },
        )


# -- DOT export ---------------------------------------------------------------

def _node_label(e) -> str:
    if isinstance(e, tuple):
        return "(" + ", ".join(_node_label(x) for x in e) + ")"
    return str(e).replace("\\", "\\\\").replace('"', '\\"')


def _hasse_lines(p: FinitePoset, prefix: str, indent: str) -> list[str]:
    lines = [
        f'{indent}{prefix}{i} [label="{_node_label(e)}"];' for i, e in enumerate(p.elements)
    ]
    lines += [f"{indent}{prefix}{i} -> {prefix}{j};" for i, j in p.covers()]
    return lines


def dot_export(obj) -> str:
    """Deterministic DOT text: Hasse diagram of a poset, or two clustered
    Hasse diagrams with dashed cross-edges for a monotone map."""
    if isinstance(obj, FinitePoset):
        lines = ["digraph poset {", "  rankdir=BT;", '  node [shape=box, fontsize=10];']
        lines += _hasse_lines(obj, "n", "  ")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if isinstance(obj, MonotoneMap):
        lines = ["digraph monotone_map {", "  rankdir=BT;", '  node [shape=box, fontsize=10];']
        lines.append("  subgraph cluster_source {")
        lines.append('    label="source";')
        lines += _hasse_lines(obj.source, "s", "    ")
        lines.append("  }")
        lines.append("  subgraph cluster_target {")
        lines.append('    label="target";')
        lines += _hasse_lines(obj.target, "t", "    ")
        lines.append("  }")
        lines += [
            f"  s{i} -> t{j} [style=dashed, constraint=false];"
            for i, j in enumerate(obj.table)
        ]
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise InputError(f"cannot export {type(obj).__name__} as DOT")
