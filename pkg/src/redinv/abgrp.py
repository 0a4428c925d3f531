"""Finitely generated abelian groups presented as cokernels.

A group is Z^n modulo the lattice spanned by the rows of a relation
matrix.  Elements are row vectors in the ambient Z^n, kept in a canonical
form reduced against the Hermite form of the relation lattice, so
equality is a plain coordinate comparison.  Homomorphisms act on row
vectors: f(x) = x @ matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .intmat import (
    DimensionMismatch,
    IntMatrix,
    block_diag,
    hnf,
    identity,
    invariant_factors,
    kernel_basis,
    mat,
    solve_linear,
    vstack,
    zeros,
)


class IllDefinedHom(ValueError):
    """The matrix does not map the source relations into the target relations."""


class NotComposable(ValueError):
    """target(f) and source(g) differ."""


@dataclass(frozen=True)
class FgAbelianGroup:
    ambient_rank: int
    relations: IntMatrix
    _hnf: IntMatrix = field(init=False, repr=False, compare=False)
    _pivots: tuple[tuple[int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.relations.cols != self.ambient_rank:
            raise DimensionMismatch(
                f"relations of width {self.relations.cols} in ambient Z^{self.ambient_rank}"
            )
        h, _ = hnf(self.relations)
        rows = [r for r in h.data if any(r)]
        h = mat(rows, self.ambient_rank) if rows else zeros(0, self.ambient_rank)
        pivots = []
        for i, row in enumerate(h.data):
            j = next(k for k, a in enumerate(row) if a)
            pivots.append((i, j))
        object.__setattr__(self, "_hnf", h)
        object.__setattr__(self, "_pivots", tuple(pivots))

    def invariants(self) -> tuple[int, tuple[int, ...]]:
        """(free rank, torsion invariants d1 | d2 | ..., each > 1)."""
        factors = invariant_factors(self.relations)
        torsion = tuple(d for d in factors if d > 1)
        return self.ambient_rank - len(factors), torsion

    @property
    def free_rank(self) -> int:
        return self.invariants()[0]

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.invariants()[1]

    def is_trivial(self) -> bool:
        return self.invariants() == (0, ())

    def order(self) -> Optional[int]:
        rank, torsion = self.invariants()
        if rank:
            return None
        n = 1
        for d in torsion:
            n *= d
        return n

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of coords modulo the relation lattice."""
        if len(coords) != self.ambient_rank:
            raise DimensionMismatch(
                f"coords of length {len(coords)} in ambient Z^{self.ambient_rank}"
            )
        x = list(coords)
        for i, j in self._pivots:
            p = self._hnf[i, j]
            q = x[j] // p
            if q:
                row = self._hnf.row(i)
                for k in range(self.ambient_rank):
                    x[k] -= q * row[k]
        return tuple(x)

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, self.reduce(coords))

    def zero(self) -> "GroupElement":
        return self.element([0] * self.ambient_rank)

    def contains_in_relations(self, coords: Sequence[int]) -> bool:
        return not any(self.reduce(coords))

    @staticmethod
    def free(n: int) -> "FgAbelianGroup":
        return FgAbelianGroup(n, zeros(0, n))

    @staticmethod
    def cyclic(n: int) -> "FgAbelianGroup":
        return FgAbelianGroup(1, mat([[n]]))

    @staticmethod
    def trivial() -> "FgAbelianGroup":
        return FgAbelianGroup(0, zeros(0, 0))

    def to_json(self) -> dict:
        return {"ambientRank": self.ambient_rank, "relations": self.relations.to_json()}

    @staticmethod
    def from_json(obj: dict) -> "FgAbelianGroup":
        n = int(obj["ambientRank"])
        return FgAbelianGroup(n, IntMatrix.from_json(obj["relations"], cols=n))


@dataclass(frozen=True)
class GroupElement:
    group: FgAbelianGroup
    coords: tuple[int, ...]

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if self.group != other.group:
            raise ValueError("elements of different groups")
        return self.group.element([a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "GroupElement":
        return self.group.element([-a for a in self.coords])

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scale(self, n: int) -> "GroupElement":
        return self.group.element([n * a for a in self.coords])

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True)
class AbHom:
    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: IntMatrix

    def __post_init__(self) -> None:
        if self.matrix.shape != (self.source.ambient_rank, self.target.ambient_rank):
            raise DimensionMismatch(
                f"hom matrix {self.matrix.shape} between ambients "
                f"{self.source.ambient_rank} -> {self.target.ambient_rank}"
            )

    def is_well_defined(self) -> bool:
        return all(
            member_coords(self.target.relations, zeros(0, self.target.ambient_rank), r)
            is not None
            for r in (self.matrix.apply_to_row(rel) for rel in self.source.relations.data)
        )

    def check_well_defined(self) -> None:
        if not self.is_well_defined():
            raise IllDefinedHom("matrix does not preserve relation lattices")

    def apply(self, x: GroupElement) -> GroupElement:
        if x.group != self.source:
            raise ValueError("element not in the source group")
        return self.target.element(self.matrix.apply_to_row(x.coords))

    def apply_coords(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(self.matrix.apply_to_row(coords))

    def then(self, g: "AbHom") -> "AbHom":
        if g.source != self.target:
            raise NotComposable("target(f) != source(g)")
        return AbHom(self.source, g.target, self.matrix @ g.matrix)

    def is_zero(self) -> bool:
        return all(
            self.target.contains_in_relations(self.matrix.row(i))
            for i in range(self.matrix.rows)
        )

    def is_injective(self) -> bool:
        return kernel(self)[0].is_trivial()

    def is_surjective(self) -> bool:
        return cokernel(self)[0].is_trivial()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    @staticmethod
    def zero(source: FgAbelianGroup, target: FgAbelianGroup) -> "AbHom":
        return AbHom(source, target, zeros(source.ambient_rank, target.ambient_rank))

    @staticmethod
    def identity_on(g: FgAbelianGroup) -> "AbHom":
        return AbHom(g, g, identity(g.ambient_rank))

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "matrix": self.matrix.to_json(),
        }

    @staticmethod
    def from_json(obj: dict) -> "AbHom":
        src = FgAbelianGroup.from_json(obj["source"])
        tgt = FgAbelianGroup.from_json(obj["target"])
        return AbHom(src, tgt, IntMatrix.from_json(obj["matrix"], cols=tgt.ambient_rank))


def compose(f: AbHom, g: AbHom) -> AbHom:
    """g o f (apply f first)."""
    return f.then(g)


def member_coords(
    gens: IntMatrix, rels: IntMatrix, v: Sequence[int]
) -> Optional[tuple[int, ...]]:
    """Coordinates c with c @ gens = v modulo the lattice spanned by rels.

    Returns None when v is not in the subgroup generated by the rows of
    ``gens`` modulo ``rels``.
    """
    stacked = vstack(gens, rels)
    x, _ = solve_linear(stacked.transpose(), v)
    if x is None:
        return None
    return tuple(x[: gens.rows])


def preimage_lattice(a: IntMatrix, target_rels: IntMatrix) -> IntMatrix:
    """Basis of {x : x @ a lies in the lattice spanned by target_rels}."""
    stacked = vstack(a, target_rels)
    full = kernel_basis(stacked.transpose())
    rows = [r[: a.rows] for r in full.data]
    m = mat(rows, a.rows) if rows else zeros(0, a.rows)
    h, _ = hnf(m)
    nz = [r for r in h.data if any(r)]
    return mat(nz, a.rows) if nz else zeros(0, a.rows)


def subgroup(gens: IntMatrix, ambient: FgAbelianGroup) -> tuple[FgAbelianGroup, AbHom]:
    """Subgroup of ``ambient`` generated by the rows of ``gens``.

    Returns the abstract group (one ambient generator per row of gens)
    together with the inclusion homomorphism.
    """
    rels = preimage_lattice(gens, ambient.relations)
    grp = FgAbelianGroup(gens.rows, rels)
    return grp, AbHom(grp, ambient, gens)


def kernel(f: AbHom) -> tuple[FgAbelianGroup, AbHom]:
    gens = preimage_lattice(f.matrix, f.target.relations)
    return subgroup(gens, f.source)


def cokernel(f: AbHom) -> tuple[FgAbelianGroup, AbHom]:
    grp = FgAbelianGroup(
        f.target.ambient_rank, vstack(f.target.relations, f.matrix)
    )
    return grp, AbHom(f.target, grp, identity(f.target.ambient_rank))


def image(f: AbHom) -> tuple[FgAbelianGroup, AbHom]:
    return subgroup(f.matrix, f.target)


def preimage_element(f: AbHom, y: GroupElement) -> Optional[GroupElement]:
    if y.group != f.target:
        raise ValueError("element not in the target group")
    c = member_coords(f.matrix, f.target.relations, y.coords)
    if c is None:
        return None
    x = [0] * f.source.ambient_rank
    for ci, row in zip(c, identity(f.source.ambient_rank).data):
        if ci:
            for k in range(f.source.ambient_rank):
                x[k] += ci * row[k]
    return f.source.element(x)


def subgroups_equal(
    gens_a: IntMatrix, gens_b: IntMatrix, ambient: FgAbelianGroup
) -> bool:
    """Mutual membership of generators modulo the ambient relations."""
    rels = ambient.relations
    for r in gens_a.data:
        if member_coords(gens_b, rels, r) is None:
            return False
    for r in gens_b.data:
        if member_coords(gens_a, rels, r) is None:
            return False
    return True


def is_exact_at(f: AbHom, g: AbHom) -> bool:
    """True iff image(f) = kernel(g) inside target(f) = source(g)."""
    if f.target != g.source:
        raise NotComposable("target(f) != source(g)")
    ker_gens = preimage_lattice(g.matrix, g.target.relations)
    return subgroups_equal(f.matrix, ker_gens, f.target)


@dataclass(frozen=True)
class SubquotientData:
    """A subquotient ker/im with enough data to take classes of elements."""

    group: FgAbelianGroup
    gens: IntMatrix  # rows: lifts of the generators in the middle ambient
    denominator: IntMatrix  # middle relations stacked with the image rows

    def class_coords(self, ambient_vector: Sequence[int]) -> Optional[tuple[int, ...]]:
        return member_coords(self.gens, self.denominator, ambient_vector)


def subquotient(
    ker_gens: IntMatrix, middle_rels: IntMatrix, image_gens: IntMatrix
) -> SubquotientData:
    """Presents (subgroup gen by ker_gens) / (subgroup gen by image_gens)."""
    denom = vstack(middle_rels, image_gens)
    rels = preimage_lattice(ker_gens, denom)
    return SubquotientData(FgAbelianGroup(ker_gens.rows, rels), ker_gens, denom)


def homology_at(d_in: Optional[AbHom], d_out: AbHom) -> SubquotientData:
    """ker(d_out) / im(d_in); d_in may be None for the left edge."""
    ker_gens = preimage_lattice(d_out.matrix, d_out.target.relations)
    img = d_in.matrix if d_in is not None else zeros(0, d_out.source.ambient_rank)
    return subquotient(ker_gens, d_out.source.relations, img)


@dataclass(frozen=True)
class SixTermReport:
    groups: tuple[FgAbelianGroup, ...]  # ker u, ker vu, ker v, cok u, cok vu, cok v
    maps: tuple[AbHom, ...]  # the five connecting homs
    exact: tuple[bool, ...]  # per-spot verdicts, length 6

    @property
    def all_exact(self) -> bool:
        return all(self.exact)


def six_term_sequence(u: AbHom, v: AbHom) -> SixTermReport:
    """The kernel-cokernel exact sequence of the composable pair (u, v).

    0 -> ker u -> ker vu -> ker v -> cok u -> cok vu -> cok v -> 0
    """
    if u.target != v.source:
        raise NotComposable("target(u) != source(v)")
    vu = u.then(v)
    k_u, inc_u = kernel(u)
    k_vu, inc_vu = kernel(vu)
    k_v, inc_v = kernel(v)
    c_u, proj_u = cokernel(u)
    c_vu, proj_vu = cokernel(vu)
    c_v, proj_v = cokernel(v)

    def coords_in(sub_gens: IntMatrix, ambient: FgAbelianGroup, vec) -> tuple[int, ...]:
        c = member_coords(sub_gens, ambient.relations, vec)
        if c is None:
            raise IllDefinedHom("canonical map escapes its target subgroup")
        return c

    # ker u -> ker vu: inclusion, expressed on the chosen generators.
    m1 = mat(
        [coords_in(inc_vu.matrix, u.source, row) for row in inc_u.matrix.data],
        k_vu.ambient_rank,
    ) if k_u.ambient_rank else zeros(0, k_vu.ambient_rank)
    f1 = AbHom(k_u, k_vu, m1)
    # ker vu -> ker v: apply u.
    m2 = mat(
        [coords_in(inc_v.matrix, v.source, u.matrix.apply_to_row(row)) for row in inc_vu.matrix.data],
        k_v.ambient_rank,
    ) if k_vu.ambient_rank else zeros(0, k_v.ambient_rank)
    f2 = AbHom(k_vu, k_v, m2)
    # ker v -> cok u: include into B, then project.
    f3 = AbHom(k_v, c_u, inc_v.matrix)
    # cok u -> cok vu: induced by v (ambients of cokernels are B and C).
    f4 = AbHom(c_u, c_vu, v.matrix)
    # cok vu -> cok v: identity on the ambient of C.
    f5 = AbHom(c_vu, c_v, identity(v.target.ambient_rank))

    exact = (
        f1.is_injective(),
        is_exact_at(f1, f2),
        is_exact_at(f2, f3),
        is_exact_at(f3, f4),
        is_exact_at(f4, f5),
        f5.is_surjective(),
    )
    return SixTermReport((k_u, k_vu, k_v, c_u, c_vu, c_v), (f1, f2, f3, f4, f5), exact)


def direct_sum(*groups: FgAbelianGroup) -> FgAbelianGroup:
    return FgAbelianGroup(
        sum(g.ambient_rank for g in groups),
        block_diag(*(g.relations for g in groups)),
    )


def power(group: FgAbelianGroup, k: int) -> FgAbelianGroup:
    if k == 0:
        return FgAbelianGroup.trivial()
    return direct_sum(*([group] * k))
