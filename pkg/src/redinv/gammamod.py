"""Finite-group actions on finitely generated abelian groups.

A finite group Gamma is given by its full multiplication table.  A
GammaModule is an FgAbelianGroup together with one integer matrix per
group element, acting on row vectors by m -> m @ matrix.  With that
convention the matrices compose in reverse order:

    (g h) . v  =  g . (h . v)  =  (v @ M_h) @ M_g,

so the composition law reads M_{gh} = M_h @ M_g.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .intmat import IntMatrix, block_diag, hstack, identity, mat, vstack, zeros
from .abgrp import (
    AbHom,
    FgAbelianGroup,
    IllDefinedHom,
    SubquotientData,
    homology_at,
    kernel,
    cokernel,
    member_coords,
    power,
)


class InvalidGroupTable(ValueError):
    """The multiplication table is not a group law."""


class InvalidAction(ValueError):
    """The action matrices do not define a Gamma-module structure."""


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.table)

    def __post_init__(self) -> None:
        n = self.order
        for row in self.table:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise InvalidGroupTable("table is not square over valid indices")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @property
    def identity(self) -> int:
        for e in range(self.order):
            if all(self.mul(e, x) == x and self.mul(x, e) == x for x in range(self.order)):
                return e
        raise InvalidGroupTable("no identity element")

    def inverse(self, a: int) -> int:
        e = self.identity
        for b in range(self.order):
            if self.mul(a, b) == e:
                return b
        raise InvalidGroupTable(f"element {a} has no inverse")

    def check(self) -> None:
        n = self.order
        e = self.identity  # raises when missing
        for a in range(n):
            self.inverse(a)  # raises when missing
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        raise InvalidGroupTable("associativity fails")

    def elements(self) -> range:
        return range(self.order)

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table]}

    @staticmethod
    def from_json(obj: dict) -> "FiniteGroup":
        return FiniteGroup(tuple(tuple(int(x) for x in r) for r in obj["table"]))


def trivial_group() -> FiniteGroup:
    return FiniteGroup(((0,),))


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def dihedral_group(n: int) -> FiniteGroup:
    """Order 2n; elements (r, s) with r in Z/n, s in {0, 1}, s = reflection bit."""
    elems = [(r, s) for s in range(2) for r in range(n)]
    index = {x: i for i, x in enumerate(elems)}

    def mul(x, y):
        r1, s1 = x
        r2, s2 = y
        # reflections conjugate rotations to their inverses
        return ((r1 + (r2 if s1 == 0 else -r2)) % n, s1 ^ s2)

    return FiniteGroup(
        tuple(tuple(index[mul(x, y)] for y in elems) for x in elems)
    )


def quaternion_group() -> FiniteGroup:
    """The quaternion group of order 8: {±1, ±i, ±j, ±k}."""
    # encode q = (sign bit, symbol) with symbols 1, i, j, k
    elems = [(s, a) for s in range(2) for a in range(4)]
    index = {x: i for i, x in enumerate(elems)}
    # products of symbols: (result symbol, sign bit)
    prod = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }

    def mul(x, y):
        s1, a = x
        s2, b = y
        c, s3 = prod[(a, b)]
        return ((s1 + s2 + s3) % 2, c)

    return FiniteGroup(
        tuple(tuple(index[mul(x, y)] for y in elems) for x in elems)
    )


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    elems = list(itertools.product(range(a.order), range(b.order)))
    index = {x: i for i, x in enumerate(elems)}
    return FiniteGroup(
        tuple(
            tuple(index[(a.mul(x[0], y[0]), b.mul(x[1], y[1]))] for y in elems)
            for x in elems
        )
    )


@dataclass(frozen=True)
class GammaModule:
    gamma: FiniteGroup
    group: FgAbelianGroup
    actions: tuple[IntMatrix, ...]  # one matrix per element, m -> m @ M_g

    def __post_init__(self) -> None:
        if len(self.actions) != self.gamma.order:
            raise InvalidAction("one action matrix per group element required")
        n = self.group.ambient_rank
        for m in self.actions:
            if m.shape != (n, n):
                raise InvalidAction("action matrices must be square of ambient rank")

    def action_hom(self, g: int) -> AbHom:
        return AbHom(self.group, self.group, self.actions[g])

    def act(self, g: int, coords: Sequence[int]) -> tuple[int, ...]:
        return self.group.reduce(self.actions[g].apply_to_row(coords))

    def check(self) -> None:
        e = self.gamma.identity
        ide = identity(self.group.ambient_rank)
        for i in range(self.group.ambient_rank):
            diff = [a - b for a, b in zip(self.actions[e].row(i), ide.row(i))]
            if not self.group.contains_in_relations(diff):
                raise InvalidAction("identity element does not act trivially")
        for g in self.gamma.elements():
            h = self.action_hom(g)
            if not h.is_well_defined():
                raise InvalidAction(f"action of element {g} breaks the relations")
            if not h.is_isomorphism():
                raise InvalidAction(f"action of element {g} is not invertible")
        n = self.group.ambient_rank
        for g in self.gamma.elements():
            for h in self.gamma.elements():
                lhs = self.actions[h] @ self.actions[g]
                gh = self.gamma.mul(g, h)
                for i in range(n):
                    diff = [a - b for a, b in zip(lhs.row(i), self.actions[gh].row(i))]
                    if not self.group.contains_in_relations(diff):
                        raise InvalidAction("composition law fails")

    def is_trivial_action(self) -> bool:
        n = self.group.ambient_rank
        ide = identity(n)
        for m in self.actions:
            for i in range(n):
                diff = [a - b for a, b in zip(m.row(i), ide.row(i))]
                if not self.group.contains_in_relations(diff):
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma.to_json(),
            "group": self.group.to_json(),
            "action": {str(g): self.actions[g].to_json() for g in self.gamma.elements()},
        }

    @staticmethod
    def from_json(obj: dict) -> "GammaModule":
        gamma = FiniteGroup.from_json(obj["gamma"])
        group = FgAbelianGroup.from_json(obj["group"])
        n = group.ambient_rank
        actions = tuple(
            IntMatrix.from_json(obj["action"][str(g)], cols=n)
            for g in gamma.elements()
        )
        return GammaModule(gamma, group, actions)


def trivial_module(gamma: FiniteGroup, group: FgAbelianGroup) -> GammaModule:
    ide = identity(group.ambient_rank)
    return GammaModule(gamma, group, tuple(ide for _ in gamma.elements()))


def sign_module() -> GammaModule:
    """Z with the order-2 group acting by negation."""
    return GammaModule(
        cyclic_group(2), FgAbelianGroup.free(1), (identity(1), mat([[-1]]))
    )


def induced_module(gamma: FiniteGroup, k: int) -> GammaModule:
    """Z[Gamma]^k with the left-translation action."""
    q = gamma.order
    n = k * q
    actions = []
    for g in gamma.elements():
        rows = []
        for j in range(k):
            for x in gamma.elements():
                row = [0] * n
                row[j * q + gamma.mul(g, x)] = 1
                rows.append(row)
        actions.append(mat(rows, n))
    return GammaModule(gamma, FgAbelianGroup.free(n), tuple(actions))


@dataclass(frozen=True)
class GammaHom:
    source: GammaModule
    target: GammaModule
    hom: AbHom

    def __post_init__(self) -> None:
        if self.hom.source != self.source.group or self.hom.target != self.target.group:
            raise IllDefinedHom("underlying hom does not match the modules")

    def is_equivariant(self) -> bool:
        if self.source.gamma != self.target.gamma:
            return False
        a = self.hom.matrix
        for g in self.source.gamma.elements():
            lhs = self.source.actions[g] @ a
            rhs = a @ self.target.actions[g]
            for i in range(lhs.rows):
                diff = [x - y for x, y in zip(lhs.row(i), rhs.row(i))]
                if not self.target.group.contains_in_relations(diff):
                    return False
        return True

    def check(self) -> None:
        self.hom.check_well_defined()
        if not self.is_equivariant():
            raise IllDefinedHom("hom does not commute with the group action")

    def then(self, g: "GammaHom") -> "GammaHom":
        return GammaHom(self.source, g.target, self.hom.then(g.hom))


def induced_action_on_subgroup(
    module: GammaModule, gens: IntMatrix, sub: FgAbelianGroup
) -> tuple[IntMatrix, ...]:
    """Action matrices on a stable subgroup, written on the given generators."""
    out = []
    for g in module.gamma.elements():
        rows = []
        for i in range(gens.rows):
            moved = module.actions[g].apply_to_row(gens.row(i))
            c = member_coords(gens, module.group.relations, moved)
            if c is None:
                raise InvalidAction("subgroup is not stable under the action")
            rows.append(list(c))
        out.append(mat(rows, gens.rows) if rows else zeros(0, 0))
    return tuple(out)


def equivariant_kernel(f: GammaHom) -> tuple[GammaModule, GammaHom]:
    k, inc = kernel(f.hom)
    actions = induced_action_on_subgroup(f.source, inc.matrix, k)
    km = GammaModule(f.source.gamma, k, actions)
    return km, GammaHom(km, f.source, inc)


def equivariant_cokernel(f: GammaHom) -> tuple[GammaModule, GammaHom]:
    c, proj = cokernel(f.hom)
    cm = GammaModule(f.target.gamma, c, f.target.actions)
    return cm, GammaHom(f.target, cm, proj)


def fixed_points(module: GammaModule) -> tuple[FgAbelianGroup, AbHom]:
    """The subgroup of elements fixed by every group element."""
    n = module.group.ambient_rank
    ide = identity(n)
    blocks = [module.actions[g] - ide for g in module.gamma.elements()]
    stacked = hstack(*blocks)  # n x (n*|Gamma|): column blocks are (M_g - 1)
    f = AbHom(module.group, power(module.group, module.gamma.order), stacked)
    return kernel(f)


def _tuples(q: int, i: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(q), repeat=i))


def cochain_group(module: GammaModule, i: int) -> FgAbelianGroup:
    """Maps Gamma^i -> M as a plain group: one copy of M per tuple."""
    return power(module.group, module.gamma.order ** i)


def bar_differential(module: GammaModule, i: int) -> AbHom:
    """The standard degree-i differential of the inhomogeneous bar complex."""
    gamma = module.gamma
    q = gamma.order
    n = module.group.ambient_rank
    src_tuples = _tuples(q, i)
    tgt_tuples = _tuples(q, i + 1)
    tgt_index = {t: a for a, t in enumerate(tgt_tuples)}
    src_index = {t: a for a, t in enumerate(src_tuples)}
    rows = []
    for t in src_tuples:
        for k in range(n):
            row = [0] * (n * len(tgt_tuples))
            # basis cochain: value e_k at tuple t, zero elsewhere
            for s in tgt_tuples:
                base = n * tgt_index[s]
                # first face: g1 . c(g2..g_{i+1})
                if s[1:] == t:
                    moved = module.actions[s[0]].row(k)
                    for a in range(n):
                        row[base + a] += moved[a]
                # middle faces: (-1)^j c(.., g_j g_{j+1}, ..)
                for j in range(1, i + 1):
                    merged = s[: j - 1] + (gamma.mul(s[j - 1], s[j]),) + s[j + 1 :]
                    if merged == t:
                        row[base + k] += -1 if j % 2 else 1
                # last face: (-1)^{i+1} c(g1..g_i)
                if s[:i] == t:
                    row[base + k] += -1 if (i + 1) % 2 else 1
            rows.append(row)
    src = cochain_group(module, i)
    tgt = cochain_group(module, i + 1)
    m = mat(rows, tgt.ambient_rank) if rows else zeros(0, tgt.ambient_rank)
    return AbHom(src, tgt, m)


def group_cohomology(module: GammaModule, i: int) -> FgAbelianGroup:
    """H^i(Gamma, M) of the bar cochain complex, for i in {0, 1, 2}."""
    if i not in (0, 1, 2):
        raise ValueError(f"unsupported cohomology degree {i}")
    d_out = bar_differential(module, i)
    d_in = bar_differential(module, i - 1) if i > 0 else None
    return homology_at(d_in, d_out).group


def group_cohomology_data(module: GammaModule, i: int) -> SubquotientData:
    """Like group_cohomology, but keeps cocycle lifts for class computations."""
    if i not in (0, 1, 2):
        raise ValueError(f"unsupported cohomology degree {i}")
    d_out = bar_differential(module, i)
    d_in = bar_differential(module, i - 1) if i > 0 else None
    return homology_at(d_in, d_out)
