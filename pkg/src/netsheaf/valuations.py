"""Finite spectral presheaf: spectra, restriction maps, rational valuations.

The spectrum of a context is its block set; a probability valuation is an
exact rational distribution on those blocks.  Products of valuations decide
C*-independence: the candidate product valuation on C v D exists iff no
empty block intersection carries positive mass, which happens for all
strictly positive inputs exactly when the Schlieder property holds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .contexts import DEFAULT_MAX_BELL
from .errors import InputError, InternalConsistencyError, SizeGuardError
from .independence import AlgebraPair, cstar_independent
from .partitions import Partition, bell_number, coarsenings, common_refinement, is_coarser


@dataclass(frozen=True)
class Spectrum:
    """The Gelfand spectrum of a context: its blocks, in canonical order."""

    context: Partition

    @property
    def points(self) -> tuple[tuple[int, ...], ...]:
        return self.context.blocks

    @property
    def labels(self) -> tuple[str, ...]:
        return self.context.block_labels()

    def __len__(self):
        return self.context.num_blocks


class RestrictionMap:
    """Spectrum map of an inclusion of contexts: finer block -> coarser block."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source: Spectrum, target: Spectrum):
        if not is_coarser(target.context, source.context):
            raise InputError(
                f"{target.context} is not a subalgebra of {source.context}; "
                "no restriction map exists"
            )
        table = tuple(
            target.context.block_of(block[0]) for block in source.context.blocks
        )
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "table", table)

    def __setattr__(self, name, value):
        raise AttributeError("RestrictionMap is immutable")

    @classmethod
    def from_contexts(cls, finer: Partition, coarser: Partition) -> "RestrictionMap":
        return cls(Spectrum(finer), Spectrum(coarser))


def _as_weight(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise InputError(f"valuation weights must be exact rationals, got {x!r}")


class Valuation:
    """A rational probability distribution on a spectrum."""

    __slots__ = ("spectrum", "weights")

    def __init__(self, spectrum: Spectrum, weights: Sequence):
        weights = tuple(_as_weight(w) for w in weights)
        if len(weights) != len(spectrum):
            raise InputError(
                f"expected {len(spectrum)} weights for {spectrum.context}, "
                f"got {len(weights)}"
            )
        if any(w < 0 for w in weights):
            raise InputError("valuation weights must be nonnegative")
        total = sum(weights)
        if total != 1:
            raise InputError(f"valuation weights must sum to 1, got {total}")
        object.__setattr__(self, "spectrum", spectrum)
        object.__setattr__(self, "weights", weights)

    def __setattr__(self, name, value):
        raise AttributeError("Valuation is immutable")

    @classmethod
    def point(cls, spectrum: Spectrum, index: int) -> "Valuation":
        """The point valuation concentrated on one spectrum point."""
        return cls(
            spectrum,
            tuple(Fraction(1 if i == index else 0) for i in range(len(spectrum))),
        )

    @classmethod
    def uniform(cls, spectrum: Spectrum) -> "Valuation":
        k = len(spectrum)
        return cls(spectrum, (Fraction(1, k),) * k)

    @classmethod
    def from_json(cls, spectrum: Spectrum, mapping: dict) -> "Valuation":
        """Parse the wire form: canonical block label -> [num, den]."""
        from .scalars import rational_from_pair

        labels = spectrum.labels
        unknown = sorted(set(mapping) - set(labels))
        if unknown:
            raise InputError(f"unknown block labels {unknown}; expected {list(labels)}")
        missing = [lab for lab in labels if lab not in mapping]
        if missing:
            raise InputError(f"valuation misses blocks {missing}")
        return cls(spectrum, [rational_from_pair(mapping[lab]) for lab in labels])

    def __eq__(self, other):
        return (
            isinstance(other, Valuation)
            and self.spectrum.context == other.spectrum.context
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.spectrum.context, self.weights))

    def __repr__(self):
        pairs = ", ".join(
            f"{label}: {w}" for label, w in zip(self.spectrum.labels, self.weights)
        )
        return f"Valuation({pairs})"

    def to_json(self) -> dict:
        return {
            label: [w.numerator, w.denominator]
            for label, w in zip(self.spectrum.labels, self.weights)
        }


def pushforward(mu: Valuation, r: RestrictionMap) -> Valuation:
    """Push a valuation along a restriction map; total mass is preserved."""
    if mu.spectrum.context != r.source.context:
        raise InputError("valuation is not defined on the source of the restriction map")
    out = [Fraction(0)] * len(r.target)
    for i, w in enumerate(mu.weights):
        out[r.table[i]] += w
    return Valuation(r.target, out)


@dataclass(frozen=True)
class ProductExtensionResult:
    """Outcome of the product-valuation construction on C v D.

    ``valuation`` is set iff the unique candidate with mass
    mu1(b) * mu2(b') on each intersection b n b' exists; otherwise ``witness``
    names the first empty intersection pair carrying positive mass.
    """

    valuation: Optional[Valuation]
    witness: Optional[tuple[str, str]]
    witness_mass: Optional[Fraction] = None

    @property
    def exists(self) -> bool:
        return self.valuation is not None


def product_extension(
    mu1: Valuation, mu2: Valuation, pair: AlgebraPair
) -> ProductExtensionResult:
    """The unique valuation on C v D with phi(ab) = phi1(a) phi2(b), if any.

    Blocks of the join are exactly the nonempty intersections, so the product
    constraint pins every weight; existence only fails when an empty
    intersection pair carries positive mass.
    """
    pair.require_partition_engine("product valuations")
    c, d = mu1.spectrum.context, mu2.spectrum.context
    if not is_coarser(c, pair.left):
        raise InputError(f"{c} is not a context of the left algebra {pair.left}")
    if not is_coarser(d, pair.right):
        raise InputError(f"{d} is not a context of the right algebra {pair.right}")
    joined = common_refinement(c, d)
    spectrum = Spectrum(joined)
    weights = []
    for block in joined.blocks:
        rep = block[0]
        weights.append(mu1.weights[c.block_of(rep)] * mu2.weights[d.block_of(rep)])
    nonempty = {(c.block_of(b[0]), d.block_of(b[0])) for b in joined.blocks}
    for i, bi in enumerate(c.blocks):
        for j, bj in enumerate(d.blocks):
            if (i, j) not in nonempty:
                mass = mu1.weights[i] * mu2.weights[j]
                if mass != 0:
                    return ProductExtensionResult(
                        valuation=None,
                        witness=(c.block_labels()[i], d.block_labels()[j]),
                        witness_mass=mass,
                    )
    return ProductExtensionResult(valuation=Valuation(spectrum, weights), witness=None)


def _positive_samples(
    k: int, rng: random.Random, count: int, max_denominator: int
) -> list[tuple[Fraction, ...]]:
    """Strictly positive rational distributions on k points with a common
    denominator <= max_denominator."""
    if k > max_denominator:
        return []
    out = []
    for _ in range(count):
        den = rng.randint(k, max_denominator)
        extra = [0] * k
        for _ in range(den - k):
            extra[rng.randrange(k)] += 1
        out.append(tuple(Fraction(1 + e, den) for e in extra))
    return out


def valuation_independence_test(
    pair: AlgebraPair,
    seed: int = 0,
    samples: int = 3,
    max_denominator: int = 12,
    max_bell: int = DEFAULT_MAX_BELL,
) -> bool:
    """True iff product extensions exist for all strictly positive valuations
    on all context pairs.

    Decided exactly per context pair by the no-empty-intersections criterion,
    spot-verified on sampled valuations, and required to agree with the
    C*-independence decision of the independence module.
    """
    pair.require_partition_engine("the valuation independence test")
    for side in (pair.left, pair.right):
        count = bell_number(side.num_blocks)
        if count > max_bell:
            raise SizeGuardError(
                f"enumerating the contexts of {side} needs Bell({side.num_blocks}) "
                f"= {count} elements, exceeding the guard of {max_bell}",
                bound=max_bell,
                requested=count,
            )
    rng = random.Random(seed)
    result = True
    for c in coarsenings(pair.left):
        for d in coarsenings(pair.right):
            joined = common_refinement(c, d)
            all_intersect = joined.num_blocks == c.num_blocks * d.num_blocks
            if not all_intersect:
                result = False
            spec_c, spec_d = Spectrum(c), Spectrum(d)
            sampled_1 = _positive_samples(len(spec_c), rng, samples, max_denominator)
            sampled_2 = _positive_samples(len(spec_d), rng, samples, max_denominator)
            for w1, w2 in zip(sampled_1, sampled_2):
                extension = product_extension(
                    Valuation(spec_c, w1), Valuation(spec_d, w2), pair
                )
                if extension.exists != all_intersect:
                    raise InternalConsistencyError(
                        "sampled product extension contradicts the exact criterion",
                        dump={
                            "pair": pair.describe(),
                            "context_pair": [str(c), str(d)],
                            "weights": [str(w1), str(w2)],
                            "extension_exists": extension.exists,
                            "all_blocks_intersect": all_intersect,
                        },
                    )
    expected = cstar_independent(pair)
    if result != expected:
        raise InternalConsistencyError(
            "valuation independence test disagrees with the independence module",
            dump={"pair": pair.describe(), "valuation_route": result, "cstar": expected},
        )
    return result
