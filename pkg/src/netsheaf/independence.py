"""The independence hierarchy for a pair of subalgebras.

Decides microcausality, extended locality, the Schlieder property,
C*-independence, product-sense independence, strong locality and the unit
law, for two engines:

* the partition engine (commutative function algebras on a finite set),
  where every condition is decided exactly;
* the matrix engine (*-subalgebras of M_n over Q[i]), where Schlieder has no
  finite-dimensional decision procedure and is reported as "undetermined"
  unless the injectivity of the multiplication map settles it, and the
  context-quantified conditions are not available at all.

All failures come with witnesses, and every assembled report is checked
against the implication chain

    product sense => C*-independent => strongly local
                  => extended locality => microcausality;

a violation is a bug in this package, never a property of the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

from .contexts import DEFAULT_MAX_BELL
from .errors import EngineError, InputError, InternalConsistencyError, SizeGuardError
from .linalg import mat_str
from .partitions import (
    Partition,
    bell_number,
    coarsenings,
    common_refinement,
    is_coarser,
    overlap_join,
)
from .staralg import (
    StarAlgebra,
    commuting_witness,
    intersection_algebra,
    multiplication_kernel_dim,
)

UNDETERMINED = "undetermined"
Verdict = Union[bool, str]

PARTITION_ENGINE = "partition"
MATRIX_ENGINE = "matrix"

CONDITIONS = (
    "microcausality",
    "extended_locality",
    "schlieder",
    "cstar_independent",
    "product_sense",
    "strong_locality",
    "unit_law",
)

WITNESS_LIMIT = 50  # reports list at most this many failing contexts


class AlgebraPair:
    """Two subalgebras of a common ambient algebra, plus the meet algebra used
    by the descent machinery (defaults to the intersection A n B)."""

    __slots__ = ("engine", "left", "right", "meet_algebra")

    def __init__(self, left, right, meet_algebra: Optional[Partition] = None):
        if isinstance(left, Partition) and isinstance(right, Partition):
            if left.ambient != right.ambient:
                raise InputError("pair members live over different ambient sets")
            engine = PARTITION_ENGINE
            if meet_algebra is None:
                meet_algebra = overlap_join(left, right)
            else:
                if meet_algebra.ambient != left.ambient:
                    raise InputError("meet algebra lives over a different ambient set")
                if not (is_coarser(meet_algebra, left) and is_coarser(meet_algebra, right)):
                    raise InputError(
                        f"meet algebra {meet_algebra} is not contained in both members"
                    )
        elif isinstance(left, StarAlgebra) and isinstance(right, StarAlgebra):
            if left.n != right.n:
                raise InputError(
                    f"pair members have different matrix dimensions: {left.n} vs {right.n}"
                )
            if meet_algebra is not None:
                raise InputError("meet algebras are a partition-engine concept")
            engine = MATRIX_ENGINE
        else:
            raise InputError("pair members must be two Partitions or two StarAlgebras")
        object.__setattr__(self, "engine", engine)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "meet_algebra", meet_algebra)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraPair is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraPair)
            and self.left == other.left
            and self.right == other.right
            and self.meet_algebra == other.meet_algebra
        )

    def __hash__(self):
        return hash((self.left, self.right, self.meet_algebra))

    def require_partition_engine(self, operation: str):
        if self.engine != PARTITION_ENGINE:
            raise EngineError(f"{operation} requires the partition engine")

    def describe(self) -> dict:
        if self.engine == PARTITION_ENGINE:
            return {
                "engine": self.engine,
                "left": str(self.left),
                "right": str(self.right),
                "meet_algebra": str(self.meet_algebra),
            }
        return {
            "engine": self.engine,
            "left": {"n": self.left.n, "dim": self.left.dim},
            "right": {"n": self.right.n, "dim": self.right.dim},
        }


# -- individual conditions ----------------------------------------------------

def microcausality(pair: AlgebraPair) -> bool:
    """[A, B] = {0}.  Automatic in the partition engine; basis-pair
    commutators decide it exactly in the matrix engine."""
    if pair.engine == PARTITION_ENGINE:
        return True
    return commuting_witness(pair.left, pair.right) is None


def microcausality_witness(pair: AlgebraPair) -> Optional[dict]:
    if pair.engine == PARTITION_ENGINE:
        return None
    w = commuting_witness(pair.left, pair.right)
    if w is None:
        return None
    i, j, c = w
    return {"left_basis_index": i, "right_basis_index": j, "commutator": mat_str(c)}


def extended_locality(pair: AlgebraPair) -> bool:
    """Microcausality plus A n B = scalars."""
    if pair.engine == PARTITION_ENGINE:
        return overlap_join(pair.left, pair.right).num_blocks == 1
    return microcausality(pair) and intersection_algebra(pair.left, pair.right).dim == 1


@lru_cache(maxsize=None)
def _schlieder_witness(a: Partition, b: Partition) -> Optional[tuple[int, int]]:
    """First (a-block, b-block) index pair with empty intersection, if any."""
    for i, pblock in enumerate(a.blocks):
        pset = set(pblock)
        for j, qblock in enumerate(b.blocks):
            if pset.isdisjoint(qblock):
                return (i, j)
    return None


def schlieder(pair: AlgebraPair) -> Verdict:
    """The Schlieder property: ab = 0 forces a = 0 or b = 0.

    Partition engine: equivalent (by indicator-function supports) to every
    block of A meeting every block of B.  Matrix engine: injectivity of the
    multiplication map is a sufficient condition; otherwise undetermined.
    """
    if pair.engine == PARTITION_ENGINE:
        return _schlieder_witness(pair.left, pair.right) is None
    if not microcausality(pair):
        return UNDETERMINED
    if multiplication_kernel_dim(pair.left, pair.right) == 0:
        return True
    return UNDETERMINED


def cstar_independent(pair: AlgebraPair) -> Verdict:
    """Microcausality together with the Schlieder property."""
    if not microcausality(pair):
        return False
    return schlieder(pair)


def product_sense(pair: AlgebraPair) -> bool:
    """Microcausality plus injectivity of the multiplication map
    a (x) b -> ab, i.e. A v B isomorphic to A (x) B."""
    if pair.engine == PARTITION_ENGINE:
        joined = common_refinement(pair.left, pair.right)
        return joined.num_blocks == pair.left.num_blocks * pair.right.num_blocks
    if not microcausality(pair):
        return False
    return multiplication_kernel_dim(pair.left, pair.right) == 0


@lru_cache(maxsize=None)
def _strong_locality_witness(a: Partition, b: Partition) -> Optional[tuple]:
    """First (C, D, side, actual) with (C v D) n side-algebra != that context."""
    for c in coarsenings(a):
        for d in coarsenings(b):
            joined = common_refinement(c, d)
            back_left = overlap_join(joined, a)
            if back_left != c:
                return (c, d, "left", back_left)
            back_right = overlap_join(joined, b)
            if back_right != d:
                return (c, d, "right", back_right)
    return None


def strong_locality(pair: AlgebraPair, max_bell: int = DEFAULT_MAX_BELL) -> bool:
    """Microcausality plus (C v D) n A = C and (C v D) n B = D for every
    context C of A and D of B."""
    pair.require_partition_engine("strong locality")
    _guard_context_posets(pair, max_bell)
    return _strong_locality_witness(pair.left, pair.right) is None


@lru_cache(maxsize=None)
def _unit_law_witnesses(a: Partition, b: Partition) -> tuple[Partition, ...]:
    """All contexts C of A v B with (C n A) v (C n B) != C, in canonical order."""
    joined = common_refinement(a, b)
    out = []
    for c in coarsenings(joined):
        if common_refinement(overlap_join(c, a), overlap_join(c, b)) != c:
            out.append(c)
    return tuple(out)


def unit_law(pair: AlgebraPair, max_bell: int = DEFAULT_MAX_BELL) -> bool:
    """Every context of A v B is generated by its restrictions to A and B."""
    pair.require_partition_engine("the unit law")
    _guard_join_contexts(pair, max_bell)
    return not _unit_law_witnesses(pair.left, pair.right)


def _is_scalar_matrix(m) -> bool:
    diag = m[0][0]
    return all(
        m[i][j] == (diag if i == j else type(diag)(0))
        for i in range(len(m))
        for j in range(len(m))
    )


def _guard_context_posets(pair: AlgebraPair, max_bell: int):
    for side in (pair.left, pair.right):
        count = bell_number(side.num_blocks)
        if count > max_bell:
            raise SizeGuardError(
                f"enumerating the contexts of {side} needs Bell({side.num_blocks}) "
                f"= {count} elements, exceeding the guard of {max_bell}",
                bound=max_bell,
                requested=count,
            )


def _guard_join_contexts(pair: AlgebraPair, max_bell: int):
    joined = common_refinement(pair.left, pair.right)
    count = bell_number(joined.num_blocks)
    if count > max_bell:
        raise SizeGuardError(
            f"enumerating the contexts of {joined} needs Bell({joined.num_blocks}) "
            f"= {count} elements, exceeding the guard of {max_bell}",
            bound=max_bell,
            requested=count,
        )


# -- the assembled report -----------------------------------------------------

@dataclass(frozen=True)
class HierarchyReport:
    """All seven conditions for one pair, with witnesses for the failures."""

    engine: str
    microcausality: Verdict
    extended_locality: Verdict
    schlieder: Verdict
    cstar_independent: Verdict
    product_sense: Verdict
    strong_locality: Verdict
    unit_law: Verdict
    witnesses: dict = field(default_factory=dict)

    def value(self, condition: str) -> Verdict:
        if condition not in CONDITIONS:
            raise InputError(
                f"unknown condition {condition!r}; choose from {', '.join(CONDITIONS)}"
            )
        return getattr(self, condition)

    def to_json(self) -> dict:
        out = {"engine": self.engine}
        out.update({name: getattr(self, name) for name in CONDITIONS})
        out["witnesses"] = self.witnesses
        return out


_CHAIN = (
    "product_sense",
    "cstar_independent",
    "strong_locality",
    "extended_locality",
    "microcausality",
)


def _verify_chain(report: HierarchyReport, pair: AlgebraPair):
    values = [(name, report.value(name)) for name in _CHAIN]
    for (stronger, sv), (weaker, wv) in zip(values, values[1:]):
        if sv is True and wv is False:
            raise InternalConsistencyError(
                f"implication chain violated: {stronger} holds but {weaker} fails",
                dump={"pair": pair.describe(), "report": report.to_json()},
            )


def hierarchy_report(pair: AlgebraPair, max_bell: int = DEFAULT_MAX_BELL) -> HierarchyReport:
    """Run every condition, attach witnesses, and trap implication-chain bugs."""
    witnesses: dict = {}
    micro = microcausality(pair)
    if micro is False:
        witnesses["microcausality"] = microcausality_witness(pair)
    ext = extended_locality(pair)
    schl = schlieder(pair)
    cstar = cstar_independent(pair)
    prod = product_sense(pair)

    if pair.engine == PARTITION_ENGINE:
        a, b = pair.left, pair.right
        if ext is False:
            witnesses["extended_locality"] = {"intersection": str(overlap_join(a, b))}
        if schl is False:
            i, j = _schlieder_witness(a, b)
            witnesses["schlieder"] = {
                "left_block": a.block_labels()[i],
                "right_block": b.block_labels()[j],
                "note": "the two block indicator functions multiply to zero",
            }
        if prod is False:
            joined = common_refinement(a, b)
            witnesses["product_sense"] = {
                "join_blocks": joined.num_blocks,
                "expected_blocks": a.num_blocks * b.num_blocks,
            }
        strong = strong_locality(pair, max_bell)
        if strong is False:
            c, d, side, actual = _strong_locality_witness(a, b)
            witnesses["strong_locality"] = {
                "context_of_left": str(c),
                "context_of_right": str(d),
                "failing_side": side,
                "restriction_of_join": str(actual),
            }
        unit = unit_law(pair, max_bell)
        if unit is False:
            failing = _unit_law_witnesses(a, b)
            witnesses["unit_law"] = {
                "count": len(failing),
                "contexts": [str(c) for c in failing[:WITNESS_LIMIT]],
                "truncated": len(failing) > WITNESS_LIMIT,
            }
    else:
        if ext is False and micro is True:
            inter = intersection_algebra(pair.left, pair.right)
            nonscalar = next(
                (m for m in inter.basis if not _is_scalar_matrix(m)), None
            )
            witnesses["extended_locality"] = {
                "intersection_dim": inter.dim,
                "nonscalar_element": None if nonscalar is None else mat_str(nonscalar),
            }
        if prod is False and micro is True:
            witnesses["product_sense"] = {
                "multiplication_kernel_dim": multiplication_kernel_dim(
                    pair.left, pair.right
                )
            }
        strong = UNDETERMINED
        unit = UNDETERMINED
        witnesses["note"] = (
            "strong locality and the unit law quantify over context posets, "
            "which are only enumerable in the partition engine"
        )

    report = HierarchyReport(
        engine=pair.engine,
        microcausality=micro,
        extended_locality=ext,
        schlieder=schl,
        cstar_independent=cstar,
        product_sense=prod,
        strong_locality=strong,
        unit_law=unit,
        witnesses=witnesses,
    )
    _verify_chain(report, pair)
    return report
