"""Root data and reductive data.

A root datum lives on X = Z^n with chosen simple roots (vectors in X)
and simple coroots (vectors in the dual lattice, paired with X by the
standard dot product).  The pairing map beta: X -> P sends a character
to its pairings with the simple coroots, written on the basis of P =
Hom(Z Phi-dual, Z) dual to the simple coroots.

A reductive datum adds a finite group acting on X by based
automorphisms: each group element permutes the simple roots, and the
dual (inverse-transpose) action permutes the simple coroots the same
way.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .intmat import (
    IntMatrix,
    identity,
    inverse_unimodular,
    kernel_basis,
    mat,
    zeros,
)
from .abgrp import AbHom, FgAbelianGroup
from .gammamod import (
    FiniteGroup,
    GammaHom,
    GammaModule,
    cyclic_group,
    equivariant_cokernel,
    equivariant_kernel,
    trivial_group,
)


class InvalidDatum(ValueError):
    """The data do not satisfy the root-datum axioms."""


class UnknownGroupSpec(ValueError):
    """The group-spec string does not parse."""


def dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class RootDatum:
    rank: int
    simple_roots: tuple[tuple[int, ...], ...]
    simple_coroots: tuple[tuple[int, ...], ...]

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_roots)

    def cartan_pairing(self) -> IntMatrix:
        """The matrix <alpha_i, alpha_j-dual>."""
        r = self.semisimple_rank
        return mat(
            [[dot(self.simple_roots[i], self.simple_coroots[j]) for j in range(r)]
             for i in range(r)],
            r,
        )


def is_finite_cartan_matrix(c: IntMatrix) -> bool:
    """Diagonal 2, off-diagonal <= 0 with symmetric zero pattern, and all
    leading principal minors positive (finite-type criterion)."""
    r = c.rows
    if c.cols != r:
        return False
    for i in range(r):
        if c[i, i] != 2:
            return False
        for j in range(r):
            if i != j:
                if c[i, j] > 0:
                    return False
                if (c[i, j] == 0) != (c[j, i] == 0):
                    return False
    from .intmat import det

    for k in range(1, r + 1):
        minor = mat([[c[i, j] for j in range(k)] for i in range(k)], k)
        if det(minor) <= 0:
            return False
    return True


@dataclass(frozen=True)
class ReductiveDatum:
    name: str
    datum: RootDatum
    gamma: FiniteGroup
    actions: tuple[IntMatrix, ...]  # one matrix per group element, on X

    @staticmethod
    def untwisted(name: str, datum: RootDatum) -> "ReductiveDatum":
        return ReductiveDatum(name, datum, trivial_group(), (identity(datum.rank),))

    def x_module(self) -> GammaModule:
        return GammaModule(self.gamma, FgAbelianGroup.free(self.datum.rank), self.actions)

    def dual_actions(self) -> tuple[IntMatrix, ...]:
        return tuple(inverse_unimodular(m).transpose() for m in self.actions)

    def root_permutation(self, g: int) -> Optional[tuple[int, ...]]:
        """The permutation sigma with alpha_i . M_g = alpha_{sigma(i)}, or None."""
        roots = self.datum.simple_roots
        perm = []
        for a in roots:
            moved = self.actions[g].apply_to_row(a)
            try:
                perm.append(roots.index(tuple(moved)))
            except ValueError:
                return None
        if sorted(perm) != list(range(len(roots))):
            return None
        return tuple(perm)


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[tuple[str, bool, str], ...]  # (name, verdict, detail)

    @property
    def valid(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [name for name, ok, _ in self.checks if not ok]


def validate(d: ReductiveDatum) -> ValidationReport:
    checks: list[tuple[str, bool, str]] = []
    rd = d.datum
    n, r = rd.rank, rd.semisimple_rank
    ok_len = all(len(a) == n for a in rd.simple_roots) and all(
        len(a) == n for a in rd.simple_coroots
    )
    checks.append(("vector-lengths", ok_len, f"rank {n}"))
    ok_counts = len(rd.simple_roots) == len(rd.simple_coroots)
    checks.append(("root-coroot-count", ok_counts, f"{r} simple roots"))
    if not (ok_len and ok_counts):
        return ValidationReport(tuple(checks))

    c = rd.cartan_pairing()
    ok_diag = all(c[i, i] == 2 for i in range(r))
    checks.append(("pairing-diagonal-two", ok_diag, "<alpha_i, alpha_i-dual> = 2"))
    ok_cartan = is_finite_cartan_matrix(c) if r else True
    checks.append(("finite-cartan-matrix", ok_cartan, "finite-type criterion"))

    roots_m = mat([list(a) for a in rd.simple_roots], n) if r else zeros(0, n)
    coroots_m = mat([list(a) for a in rd.simple_coroots], n) if r else zeros(0, n)
    from .intmat import rank as mat_rank

    checks.append(("roots-independent", mat_rank(roots_m) == r, ""))
    checks.append(("coroots-independent", mat_rank(coroots_m) == r, ""))

    try:
        d.x_module().check()
        checks.append(("action-valid", True, ""))
    except Exception as exc:  # InvalidAction or matrix failures
        checks.append(("action-valid", False, str(exc)))
        return ValidationReport(tuple(checks))

    duals = d.dual_actions()
    for g in d.gamma.elements():
        perm = d.root_permutation(g)
        if perm is None:
            checks.append((f"action-{g}-permutes-roots", False, ""))
            continue
        checks.append((f"action-{g}-permutes-roots", True, str(perm)))
        ok_co = all(
            tuple(duals[g].apply_to_row(rd.simple_coroots[i]))
            == rd.simple_coroots[perm[i]]
            for i in range(r)
        )
        checks.append((f"action-{g}-permutes-coroots", ok_co, str(perm)))
    return ValidationReport(tuple(checks))


def weight_module(d: ReductiveDatum) -> GammaModule:
    """P = Hom(Z Phi-dual, Z) on the fundamental-weight basis, with the
    permutation action induced by the root permutations."""
    r = d.datum.semisimple_rank
    actions = []
    for g in d.gamma.elements():
        perm = d.root_permutation(g)
        if perm is None:
            raise InvalidDatum("action does not permute the simple roots")
        rows = []
        for i in range(r):
            row = [0] * r
            row[perm[i]] = 1
            rows.append(row)
        actions.append(mat(rows, r) if r else zeros(0, 0))
    return GammaModule(d.gamma, FgAbelianGroup.free(r), tuple(actions))


def pairing_map(d: ReductiveDatum) -> GammaHom:
    """beta: X -> P, chi -> (<chi, alpha_j-dual>)_j."""
    n, r = d.datum.rank, d.datum.semisimple_rank
    b = mat(
        [[d.datum.simple_coroots[j][i] for j in range(r)] for i in range(n)], r
    )
    return GammaHom(d.x_module(), weight_module(d), AbHom(
        FgAbelianGroup.free(n), FgAbelianGroup.free(r), b
    ))


def character_group(d: ReductiveDatum) -> GammaModule:
    """X_0 = ker beta, the character group of the datum."""
    module, _ = equivariant_kernel(pairing_map(d))
    return module


def character_inclusion(d: ReductiveDatum) -> GammaHom:
    _, inc = equivariant_kernel(pairing_map(d))
    return inc


def mu_dual(d: ReductiveDatum) -> GammaModule:
    """mu* = coker beta; the Picard group of the datum."""
    module, _ = equivariant_cokernel(pairing_map(d))
    return module


def cocharacter_module(d: ReductiveDatum) -> GammaModule:
    return GammaModule(
        d.gamma, FgAbelianGroup.free(d.datum.rank), d.dual_actions()
    )


def coroot_lattice_map(d: ReductiveDatum) -> GammaHom:
    """The map Z^r -> X-dual sending basis vector j to the j-th coroot."""
    n, r = d.datum.rank, d.datum.semisimple_rank
    src_actions = []
    for g in d.gamma.elements():
        perm = d.root_permutation(g)
        if perm is None:
            raise InvalidDatum("action does not permute the simple roots")
        rows = []
        for i in range(r):
            row = [0] * r
            row[perm[i]] = 1
            rows.append(row)
        src_actions.append(mat(rows, r) if r else zeros(0, 0))
    src = GammaModule(d.gamma, FgAbelianGroup.free(r), tuple(src_actions))
    m = mat([list(a) for a in d.datum.simple_coroots], n) if r else zeros(0, n)
    return GammaHom(src, cocharacter_module(d), AbHom(
        src.group, FgAbelianGroup.free(n), m
    ))


def pi1(d: ReductiveDatum) -> GammaModule:
    """pi_1 = X-dual / (coroot lattice)."""
    module, _ = equivariant_cokernel(coroot_lattice_map(d))
    return module


def saturation(rows: IntMatrix) -> IntMatrix:
    """Basis of the saturation of the row span (double orthogonal complement)."""
    return kernel_basis(kernel_basis(rows))


def radical_characters(d: ReductiveDatum) -> GammaModule:
    """X_rad = X / saturation(root lattice)."""
    n = d.datum.rank
    roots_m = (
        mat([list(a) for a in d.datum.simple_roots], n)
        if d.datum.simple_roots
        else zeros(0, n)
    )
    sat = saturation(roots_m)
    grp = FgAbelianGroup(n, sat)
    return GammaModule(d.gamma, grp, d.actions)


# --- catalog constructors -------------------------------------------------

def cartan_matrix(kind: str, rank: int) -> IntMatrix:
    """The Cartan matrix C[i][j] = <alpha_i, alpha_j-dual> of a finite type."""
    kind = kind.upper()
    if kind == "A":
        links = [(i, i + 1) for i in range(rank - 1)]
        special: dict = {}
    elif kind in ("B", "C"):
        if rank < 2:
            raise InvalidDatum(f"type {kind} needs rank >= 2")
        links = [(i, i + 1) for i in range(rank - 1)]
        special = {}
    elif kind == "D":
        if rank < 3:
            raise InvalidDatum("type D needs rank >= 3")
        links = [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
        special = {}
    elif kind in ("E6", "E7", "E8"):
        rank = int(kind[1])
        # chain 0-2-3-4-... with node 1 attached to node 3 (Bourbaki shape)
        links = [(0, 2), (2, 3), (1, 3)] + [(i, i + 1) for i in range(3, rank - 1)]
        special = {}
        kind = "E"
    elif kind == "F4":
        rank = 4
        links = [(0, 1), (1, 2), (2, 3)]
        special = {(1, 2): -2, (2, 1): -1}
        kind = "F"
    elif kind == "G2":
        rank = 2
        links = [(0, 1)]
        special = {(0, 1): -3, (1, 0): -1}
        kind = "G"
    else:
        raise InvalidDatum(f"unknown type {kind}")
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in links:
        c[i][j] = -1
        c[j][i] = -1
    if kind == "B":
        # alpha_{n-1} long, alpha_n short: <a_{n-1}, a_n-dual> = -2
        c[rank - 2][rank - 1] = -2
    if kind == "C":
        c[rank - 1][rank - 2] = -2
    for (i, j), v in special.items():
        c[i][j] = v
    m = mat(c, rank)
    if not is_finite_cartan_matrix(m):
        raise InvalidDatum(f"constructed Cartan matrix is not finite type: {kind}{rank}")
    return m


def simply_connected_datum(kind: str, rank: int) -> RootDatum:
    """X = weight lattice coordinates: roots are the Cartan rows, coroots
    the standard basis."""
    c = cartan_matrix(kind, rank)
    n = c.rows
    roots = tuple(tuple(c.row(i)) for i in range(n))
    coroots = tuple(tuple(identity(n).row(i)) for i in range(n))
    return RootDatum(n, roots, coroots)


def adjoint_datum(kind: str, rank: int) -> RootDatum:
    """X = root lattice coordinates: roots are the standard basis, coroots
    the Cartan columns."""
    c = cartan_matrix(kind, rank)
    n = c.rows
    roots = tuple(tuple(identity(n).row(i)) for i in range(n))
    coroots = tuple(tuple(c[i, j] for i in range(n)) for j in range(n))
    return RootDatum(n, roots, coroots)


def torus_datum(n: int) -> RootDatum:
    return RootDatum(n, (), ())


def gl_datum(n: int) -> RootDatum:
    """X = Z^n with roots e_i - e_{i+1}; coroots the same vectors in the dual."""
    vecs = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        vecs.append(tuple(v))
    return RootDatum(n, tuple(vecs), tuple(vecs))


def so_even_datum(n: int) -> RootDatum:
    """SO(2n): X = Z^n, alpha_i = e_i - e_{i+1} (i < n), alpha_n = e_{n-1} + e_n."""
    if n < 3:
        raise InvalidDatum("SO(2n) datum needs n >= 3")
    vecs = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        vecs.append(tuple(v))
    w = [0] * n
    w[n - 2], w[n - 1] = 1, 1
    vecs.append(tuple(w))
    return RootDatum(n, tuple(vecs), tuple(vecs))


def _perm_matrix(perm: tuple[int, ...]) -> IntMatrix:
    n = len(perm)
    rows = []
    for i in range(n):
        row = [0] * n
        row[perm[i]] = 1
        rows.append(row)
    return mat(rows, n)


def outer_flip_twist(d: ReductiveDatum) -> ReductiveDatum:
    """The order-2 diagram flip on a rank-2 type A datum (swap coordinates)."""
    if d.datum.rank != 2 or d.datum.semisimple_rank != 2:
        raise InvalidDatum("flip twist needs a rank-2 type A datum")
    swap = _perm_matrix((1, 0))
    return ReductiveDatum(
        d.name + "xflip", d.datum, cyclic_group(2), (identity(2), swap)
    )


def triality_twist(d: ReductiveDatum) -> ReductiveDatum:
    """The order-3 twist on a D4 datum in simply connected or adjoint
    coordinates: cycle the outer nodes 1 -> 3 -> 4 -> 1, fixing node 2."""
    if d.datum.rank != 4:
        raise InvalidDatum("triality twist needs a rank-4 type D datum")
    rho = _perm_matrix((2, 1, 3, 0))  # coordinates 0 -> 2 -> 3 -> 0
    rho2 = rho @ rho
    return ReductiveDatum(
        d.name + "xtriality", d.datum, cyclic_group(3), (identity(4), rho, rho2)
    )


_SPEC_RE = re.compile(r"^([A-Za-z]+)\((\d+)\)$")


def from_catalog(spec: str) -> ReductiveDatum:
    """Parse a group-spec string such as SL(3), PGL(4), Sp(4), SO(8),
    Spin(7), G2, E6sc, E7ad, T(2); an optional suffix names a twist,
    e.g. SL(3)xGamma:flip or Spin(8)xGamma:triality."""
    base = spec
    twist = None
    for sep in ("xGamma:", "xΓ:"):
        if sep in spec:
            base, twist = spec.split(sep, 1)
            break
    d = _parse_base(base)
    if twist is None:
        return d
    if twist == "flip":
        return outer_flip_twist(d)
    if twist == "triality":
        return triality_twist(d)
    raise UnknownGroupSpec(f"unknown twist {twist!r}")


def _parse_base(base: str) -> ReductiveDatum:
    m = _SPEC_RE.match(base)
    if m:
        head, num = m.group(1), int(m.group(2))
        if head == "SL":
            if num < 2:
                raise UnknownGroupSpec("SL(n) needs n >= 2")
            return ReductiveDatum.untwisted(base, simply_connected_datum("A", num - 1))
        if head == "PGL":
            if num < 2:
                raise UnknownGroupSpec("PGL(n) needs n >= 2")
            return ReductiveDatum.untwisted(base, adjoint_datum("A", num - 1))
        if head == "GL":
            return ReductiveDatum.untwisted(base, gl_datum(num))
        if head == "Sp":
            if num < 4 or num % 2:
                raise UnknownGroupSpec("Sp(2n) needs even argument >= 4")
            return ReductiveDatum.untwisted(base, simply_connected_datum("C", num // 2))
        if head == "SO":
            if num % 2:
                if num < 5:
                    raise UnknownGroupSpec("SO(2n+1) needs argument >= 5")
                return ReductiveDatum.untwisted(base, adjoint_datum("B", num // 2))
            if num < 6:
                raise UnknownGroupSpec("SO(2n) needs argument >= 6")
            return ReductiveDatum.untwisted(base, so_even_datum(num // 2))
        if head == "Spin":
            if num % 2 == 0:
                if num < 6:
                    raise UnknownGroupSpec("Spin(2n) needs argument >= 6")
                return ReductiveDatum.untwisted(base, simply_connected_datum("D", num // 2))
            if num < 5:
                raise UnknownGroupSpec("Spin(2n+1) needs argument >= 5")
            return ReductiveDatum.untwisted(base, simply_connected_datum("B", num // 2))
        if head == "PSO":
            if num % 2 or num < 6:
                raise UnknownGroupSpec("PSO(2n) needs even argument >= 6")
            return ReductiveDatum.untwisted(base, adjoint_datum("D", num // 2))
        if head == "T":
            return ReductiveDatum.untwisted(base, torus_datum(num))
        raise UnknownGroupSpec(f"unknown constructor {head!r}")
    exc = re.match(r"^(G2|F4|E6|E7|E8)(sc|ad)?$", base)
    if exc:
        kind, iso = exc.group(1), exc.group(2)
        if iso == "ad":
            return ReductiveDatum.untwisted(base, adjoint_datum(kind, 0))
        return ReductiveDatum.untwisted(base, simply_connected_datum(kind, 0))
    raise UnknownGroupSpec(f"cannot parse group spec {base!r}")
