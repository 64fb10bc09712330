"""Matrix *-algebras over Q[i]: generation, commutants, multiplication maps.

A StarAlgebra is a linear span of n x n matrices that contains the identity
and is closed under products and adjoints.  The basis is kept in reduced
echelon form of the flattened matrices, so equal algebras have equal bases.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import InputError, PreconditionError
from .linalg import (
    Matrix,
    Span,
    adjoint,
    as_matrix,
    commutator,
    flatten,
    identity,
    is_zero_matrix,
    kernel_basis,
    mat_mul,
    mat_str,
    rank,
    rref,
    span_intersection,
    unflatten,
)
from .partitions import Partition
from .scalars import ONE, ZERO, GaussianRational


class StarAlgebra:
    """A unital *-closed span of n x n matrices in canonical basis form."""

    __slots__ = ("n", "basis", "_span")

    def __init__(self, n: int, basis: Sequence[Matrix], *, _verified: bool = False):
        object.__setattr__(self, "n", n)
        rows, _ = rref([flatten(m) for m in basis])
        object.__setattr__(self, "basis", tuple(unflatten(v, n) for v in rows))
        object.__setattr__(self, "_span", Span(rows, n * n))
        if not _verified:
            self.verify()

    def __setattr__(self, name, value):
        raise AttributeError("StarAlgebra is immutable")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, m: Matrix) -> bool:
        return self._span.contains(flatten(m))

    def coords(self, m: Matrix) -> Optional[tuple[GaussianRational, ...]]:
        """Coefficients of m w.r.t. self.basis, or None if m is outside the span."""
        return self._span.coords(flatten(m))

    def verify(self):
        """Recheck the *-algebra invariants by exact row reduction."""
        if not self.contains(identity(self.n)):
            raise InputError("span does not contain the identity matrix")
        for m in self.basis:
            if not self.contains(adjoint(m)):
                raise InputError(f"span not closed under adjoints at {mat_str(m)}")
        for a in self.basis:
            for b in self.basis:
                if not self.contains(mat_mul(a, b)):
                    raise InputError(
                        f"span not closed under products at {mat_str(a)} * {mat_str(b)}"
                    )

    def __eq__(self, other):
        return (
            isinstance(other, StarAlgebra)
            and self.n == other.n
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.n, self.basis))

    def __repr__(self):
        return f"StarAlgebra(n={self.n}, dim={self.dim})"


def generated_star_algebra(n: int, generators: Sequence) -> StarAlgebra:
    """Smallest span containing the identity and the generators, closed under
    products and adjoints.  Closure by iterated span extension with exact row
    reduction; the dimension is bounded by n^2, so the iteration terminates."""
    if n < 1:
        raise InputError("matrix dimension must be >= 1")
    gens = [as_matrix(g) for g in generators]
    for g in gens:
        if len(g) != n or any(len(row) != n for row in g):
            raise InputError(f"generator is not {n}x{n}: {mat_str(g)}")
    seed = [identity(n)]
    for g in gens:
        seed.append(g)
        seed.append(adjoint(g))
    rows, _ = rref([flatten(m) for m in seed])
    while True:
        mats = [unflatten(v, n) for v in rows]
        products = [flatten(mat_mul(a, b)) for a in mats for b in mats]
        new_rows, _ = rref(list(rows) + products)
        assert len(new_rows) <= n * n
        if len(new_rows) == len(rows):
            break
        rows = new_rows
    return StarAlgebra(n, [unflatten(v, n) for v in rows])


def indicator_algebra(p: Partition) -> StarAlgebra:
    """The subalgebra S_p materialised as diagonal matrices constant on blocks."""
    n = len(p.ambient)
    basis = []
    for block in p.blocks:
        block_set = set(block)
        basis.append(
            tuple(
                tuple(ONE if i == j and i in block_set else ZERO for j in range(n))
                for i in range(n)
            )
        )
    return StarAlgebra(n, basis)


def commutant(s: StarAlgebra, within_n: Optional[int] = None) -> StarAlgebra:
    """All n x n matrices commuting with every basis element of s, computed as
    the exact kernel of the stacked commutator system."""
    n = s.n
    if within_n is not None and within_n != n:
        raise InputError(f"algebra lives in dimension {n}, not {within_n}")
    # Equations in the unknown X: (XB - BX)[i][j] = 0 for each basis element B.
    equations = []
    for b in s.basis:
        for i in range(n):
            for j in range(n):
                row = [ZERO] * (n * n)
                for k in range(n):
                    row[i * n + k] = row[i * n + k] + b[k][j]      # X[i][k] B[k][j]
                    row[k * n + j] = row[k * n + j] - b[i][k]      # B[i][k] X[k][j]
                equations.append(tuple(row))
    solutions = kernel_basis(equations, n * n)
    return StarAlgebra(n, [unflatten(v, n) for v in solutions])


def center(s: StarAlgebra) -> StarAlgebra:
    """S n commutant(S), via exact span intersection."""
    return intersection_algebra(s, commutant(s))


def intersection_algebra(a: StarAlgebra, b: StarAlgebra) -> StarAlgebra:
    if a.n != b.n:
        raise InputError(f"matrix dimensions differ: {a.n} vs {b.n}")
    rows = span_intersection(
        [flatten(m) for m in a.basis], [flatten(m) for m in b.basis], a.n * a.n
    )
    return StarAlgebra(a.n, [unflatten(v, a.n) for v in rows])


def commuting_witness(a: StarAlgebra, b: StarAlgebra) -> Optional[tuple[int, int, Matrix]]:
    """First basis pair with nonvanishing commutator, or None if [A,B] = {0}.

    Checking basis pairs suffices: commutators are bilinear."""
    if a.n != b.n:
        raise InputError(f"matrix dimensions differ: {a.n} vs {b.n}")
    for i, x in enumerate(a.basis):
        for j, y in enumerate(b.basis):
            c = commutator(x, y)
            if not is_zero_matrix(c):
                return (i, j, c)
    return None


def multiplication_kernel_dim(a: StarAlgebra, b: StarAlgebra) -> int:
    """dim(A).dim(B) - rank of the multiplication map x (x) y -> xy on basis
    pairs.  Kernel dimension 0 certifies that A v B is isomorphic to A (x) B."""
    witness = commuting_witness(a, b)
    if witness is not None:
        i, j, c = witness
        raise PreconditionError(
            "multiplication_kernel_dim requires commuting algebras; "
            f"basis pair ({i}, {j}) has commutator {mat_str(c)}"
        )
    products = [flatten(mat_mul(x, y)) for x in a.basis for y in b.basis]
    return a.dim * b.dim - rank(products)


class StarHom:
    """A unit-preserving *-homomorphism given by images of the domain basis.

    Verified exactly on construction: linear well-definedness is automatic
    (images are given on a basis), multiplicativity and adjoint/unit
    preservation are checked on basis products.
    """

    __slots__ = ("domain", "codomain", "images", "matrix")

    def __init__(self, domain: StarAlgebra, codomain: StarAlgebra, images: Sequence):
        images = tuple(as_matrix(m) for m in images)
        if len(images) != domain.dim:
            raise InputError("need exactly one image per domain basis element")
        coord_rows = []
        for m in images:
            c = codomain.coords(m)
            if c is None:
                raise InputError(f"image {mat_str(m)} lies outside the codomain")
            coord_rows.append(c)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "matrix", tuple(coord_rows))
        self._verify()

    def __setattr__(self, name, value):
        raise AttributeError("StarHom is immutable")

    def apply(self, m: Matrix) -> Matrix:
        coords = self.domain.coords(m)
        if coords is None:
            raise InputError("element lies outside the domain")
        out = [[ZERO] * self.codomain.n for _ in range(self.codomain.n)]
        for c, img in zip(coords, self.images):
            if c:
                for i in range(self.codomain.n):
                    for j in range(self.codomain.n):
                        out[i][j] = out[i][j] + c * img[i][j]
        return tuple(tuple(row) for row in out)

    def _verify(self):
        if self.apply(identity(self.domain.n)) != identity(self.codomain.n):
            raise InputError("not unit-preserving")
        for i, x in enumerate(self.domain.basis):
            if self.apply(adjoint(x)) != adjoint(self.images[i]):
                raise InputError(f"not adjoint-preserving at basis element {i}")
            for j, y in enumerate(self.domain.basis):
                if self.apply(mat_mul(x, y)) != mat_mul(self.images[i], self.images[j]):
                    raise InputError(f"not multiplicative at basis pair ({i}, {j})")


def hom_kernel_trivial(f: StarHom) -> bool:
    """True iff ker(f) = {0}; a True result certifies that f reflects
    commutativity.  False means reflection is undetermined, not refuted."""
    return rank(f.matrix) == f.domain.dim
