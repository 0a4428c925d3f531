"""Torus resolutions at the character-lattice level.

A resolution of a reductive datum consists of character modules T* and
R* with a map rho*: R* -> T* whose cone (the two-term complex in
degrees -1, 0) has H^-1 = the character group and H^0 = mu*.  The
canonical resolution is (X --beta--> P); the pushout resolution embeds
the finite group mu' = coker[X -> X_rad (+) P] into an induced torus.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .intmat import IntMatrix, block_diag, hstack, identity, mat, vstack, zeros
from .abgrp import (
    AbHom,
    FgAbelianGroup,
    cokernel,
    direct_sum,
    is_exact_at,
    kernel,
    member_coords,
)
from .gammamod import (
    GammaHom,
    GammaModule,
    fixed_points,
    group_cohomology,
    induced_module,
)
from .homcx import (
    BoundedComplex,
    ChainMap,
    compose_chain_maps,
    direct_sum_modules,
    induced_on_cohomology,
    les_of_ses,
    LongExactReport,
    two_term_complex,
)
from .rootdata import (
    InvalidDatum,
    ReductiveDatum,
    character_group,
    character_inclusion,
    mu_dual,
    pairing_map,
    radical_characters,
    weight_module,
)


@dataclass(frozen=True)
class TResolutionData:
    datum: ReductiveDatum
    Tstar: GammaModule
    Rstar: GammaModule
    rho_star: GammaHom  # R* -> T*
    l_star: GammaHom  # T* -> mu*
    char_map: GammaHom  # character group -> R*
    provenance: str  # "canonical" | "pushout"


def canonical_pi1d(d: ReductiveDatum) -> BoundedComplex:
    """The complex [X --beta--> P] in degrees -1, 0."""
    return two_term_complex(pairing_map(d), lo=-1)


def canonical_tresolution(d: ReductiveDatum) -> TResolutionData:
    beta = pairing_map(d)
    mu = mu_dual(d)
    p = weight_module(d)
    l_star = GammaHom(p, mu, AbHom(
        p.group, mu.group, identity(p.group.ambient_rank)
    ))
    return TResolutionData(
        datum=d,
        Tstar=p,
        Rstar=beta.source,
        rho_star=beta,
        l_star=l_star,
        char_map=character_inclusion(d),
        provenance="canonical",
    )


@dataclass(frozen=True)
class PushoutDiagnostics:
    mu_prime: GammaModule
    embedding_injective: bool
    orbit_representatives: tuple[int, ...]


def pushout_tresolution(d: ReductiveDatum) -> TResolutionData:
    """Resolve through the induced torus covering mu' = coker[X -> X_rad (+) P]."""
    res, _ = pushout_tresolution_with_diagnostics(d)
    return res


def pushout_tresolution_with_diagnostics(
    d: ReductiveDatum,
) -> tuple[TResolutionData, PushoutDiagnostics]:
    n = d.datum.rank
    r = d.datum.semisimple_rank
    gamma = d.gamma
    q = gamma.order
    x_rad = radical_characters(d)
    p = weight_module(d)
    beta = pairing_map(d)
    target = direct_sum_modules(x_rad, p)
    # X -> X_rad (+) P, chi -> (chi mod saturated root span, beta(chi))
    emb_matrix = hstack(identity(n), beta.hom.matrix)
    emb = AbHom(FgAbelianGroup.free(n), target.group, emb_matrix)
    injective = emb.is_injective()
    if not injective:
        raise InvalidDatum("character embedding into X_rad (+) P is not injective")
    mu_prime_grp, proj = cokernel(emb)
    mu_prime_grp = FgAbelianGroup(
        n + r, vstack(target.group.relations, emb_matrix)
    )
    mu_prime = GammaModule(gamma, mu_prime_grp, target.actions)

    # orbit representatives among the classes of the ambient generators
    seen: set[tuple[int, ...]] = set()
    reps: list[int] = []
    for j in range(n + r):
        e_j = [0] * (n + r)
        e_j[j] = 1
        cls = mu_prime_grp.reduce(e_j)
        if cls in seen:
            continue
        if not any(cls):
            seen.add(cls)
            continue
        # record the whole orbit of this generator class
        orbit = {mu_prime_grp.reduce(m.apply_to_row(cls)) for m in mu_prime.actions}
        frontier = set(orbit)
        while frontier:
            new = set()
            for v in frontier:
                for m in mu_prime.actions:
                    w = mu_prime_grp.reduce(m.apply_to_row(v))
                    if w not in orbit:
                        orbit.add(w)
                        new.add(w)
            frontier = new
        seen |= orbit
        reps.append(j)

    k = len(reps)
    t_star = induced_module(gamma, k)
    # s: T* -> mu', basis vector (i, g) -> g . (class of ambient generator reps[i])
    s_rows = []
    for i in range(k):
        e_j = [0] * (n + r)
        e_j[reps[i]] = 1
        for g in gamma.elements():
            s_rows.append(list(mu_prime.actions[g].apply_to_row(e_j)))
    s_matrix = mat(s_rows, n + r) if s_rows else zeros(0, n + r)
    s = GammaHom(t_star, mu_prime, AbHom(t_star.group, mu_prime_grp, s_matrix))

    # R* = ker[(a, b) in X_rad (+) T* -> q(a, 0) + s(b)]
    src = direct_sum_modules(x_rad, t_star)
    top = hstack(identity(n), zeros(n, r))  # X_rad ambient -> mu' ambient
    sum_matrix = vstack(top, s_matrix)
    sum_hom = GammaHom(src, mu_prime, AbHom(src.group, mu_prime_grp, sum_matrix))
    r_grp, r_inc = kernel(sum_hom.hom)
    from .gammamod import induced_action_on_subgroup

    r_actions = induced_action_on_subgroup(src, r_inc.matrix, r_grp)
    r_star = GammaModule(gamma, r_grp, r_actions)

    # rho* = T*-coordinate projection of the kernel inclusion
    rho_matrix = mat(
        [list(r_inc.matrix.row(i))[n:] for i in range(r_inc.matrix.rows)],
        k * q,
    ) if r_inc.matrix.rows else zeros(0, k * q)
    rho_star = GammaHom(r_star, t_star, AbHom(r_grp, t_star.group, rho_matrix))

    # l* = s followed by the projection mu' -> mu (drop the X_rad part)
    mu = mu_dual(d)
    drop = vstack(zeros(n, r), identity(r))
    mu_proj = AbHom(mu_prime_grp, mu.group, drop)
    l_star = GammaHom(t_star, mu, s.hom.then(mu_proj))

    # character group included into R* as chi -> (chi mod rad span, 0)
    chi_inc = character_inclusion(d)
    rows = []
    for i in range(chi_inc.hom.matrix.rows):
        vec = list(chi_inc.hom.matrix.row(i)) + [0] * (k * q)
        c = member_coords(r_inc.matrix, src.group.relations, vec)
        if c is None:
            raise InvalidDatum("character group does not land in R*")
        rows.append(list(c))
    char_matrix = (
        mat(rows, r_grp.ambient_rank) if rows else zeros(0, r_grp.ambient_rank)
    )
    char_map = GammaHom(
        chi_inc.source, r_star, AbHom(chi_inc.source.group, r_grp, char_matrix)
    )

    res = TResolutionData(
        datum=d,
        Tstar=t_star,
        Rstar=r_star,
        rho_star=rho_star,
        l_star=l_star,
        char_map=char_map,
        provenance="pushout",
    )
    return res, PushoutDiagnostics(mu_prime, injective, tuple(reps))


def pi1d_from_resolution(res: TResolutionData) -> BoundedComplex:
    """The two-term complex [R* --rho*--> T*] in degrees -1, 0."""
    return two_term_complex(res.rho_star, lo=-1)


@dataclass(frozen=True)
class FourTermReport:
    checks: tuple[tuple[str, bool], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def failures(self) -> list[str]:
        return [name for name, ok in self.checks if not ok]


def four_term_check(res: TResolutionData) -> FourTermReport:
    """Exactness of 0 -> (G^tor)* -> R* -> T* -> mu* -> 0, and for pushout
    resolutions also of 0 -> R*/(G^tor)* -> T* -> mu* -> 0."""
    checks = []
    cm = res.char_map.hom
    rho = res.rho_star.hom
    l = res.l_star.hom
    checks.append(("char-map-injective", cm.is_injective()))
    checks.append(("char-map-equivariant", res.char_map.is_equivariant()))
    checks.append(("rho-equivariant", res.rho_star.is_equivariant()))
    checks.append(("l-equivariant", res.l_star.is_equivariant()))
    checks.append(("exact-at-Rstar", is_exact_at(cm, rho)))
    checks.append(("exact-at-Tstar", is_exact_at(rho, l)))
    checks.append(("l-star-surjective", l.is_surjective()))
    if res.provenance == "pushout":
        r1_grp, r1_proj = cokernel(cm)
        # induced map R*/(G^tor)* -> T* (rho* kills the character group)
        induced = AbHom(r1_grp, l.source, rho.matrix)
        checks.append(("quotient-map-well-defined", induced.is_well_defined()))
        checks.append(("quotient-injective", induced.is_injective()))
        checks.append(("quotient-exact-at-Tstar", is_exact_at(induced, l)))
    return FourTermReport(tuple(checks))


def canonical_h_maps(res: TResolutionData) -> tuple[AbHom, AbHom, bool, bool]:
    """The comparison maps X_0 -> H^-1(cone) and H^0(cone) -> mu*, with
    equivariance verdicts."""
    cx = pi1d_from_resolution(res)
    hm1_data = cx.cohomology_data(-1)
    hm1 = cx.cohomology(-1)
    h0_data = cx.cohomology_data(0)
    h0 = cx.cohomology(0)
    x0 = character_group(res.datum)
    mu = mu_dual(res.datum)

    rows = []
    ok = True
    for i in range(res.char_map.hom.matrix.rows):
        c = hm1_data.class_coords(res.char_map.hom.matrix.row(i))
        if c is None:
            ok = False
            break
        rows.append(list(c))
    if not ok:
        raise InvalidDatum("character classes are not rho*-cocycles")
    to_hm1 = AbHom(
        x0.group,
        hm1.group,
        mat(rows, hm1.group.ambient_rank)
        if rows
        else zeros(0, hm1.group.ambient_rank),
    )

    rows = []
    for i in range(h0_data.gens.rows):
        rows.append(list(res.l_star.hom.apply_coords(h0_data.gens.row(i))))
    from_h0 = AbHom(
        h0.group,
        mu.group,
        mat(rows, mu.group.ambient_rank)
        if rows
        else zeros(0, mu.group.ambient_rank),
    )
    eq1 = GammaHom(x0, hm1, to_hm1).is_equivariant()
    eq2 = GammaHom(h0, mu, from_h0).is_equivariant()
    return to_hm1, from_h0, eq1, eq2


@dataclass(frozen=True)
class ComparisonVerdict:
    verdict: str  # "certified" | "evidence-only" | "mismatch"
    details: tuple[tuple[str, bool], ...]

    @property
    def agrees(self) -> bool:
        return self.verdict in ("certified", "evidence-only")


def _evidence(module: GammaModule):
    fp, _ = fixed_points(module)
    return (
        fp.invariants(),
        group_cohomology(module, 1).invariants(),
        group_cohomology(module, 2).invariants(),
        module.group.invariants(),
    )


def compare_resolutions(
    d: ReductiveDatum, res1: TResolutionData, res2: TResolutionData
) -> ComparisonVerdict:
    """Certify that two resolutions present the same H^-1 and H^0."""
    if res1.datum != d or res2.datum != d:
        raise InvalidDatum("resolutions belong to different data")
    details = []
    certified = True
    for tag, res in (("first", res1), ("second", res2)):
        try:
            to_hm1, from_h0, eq1, eq2 = canonical_h_maps(res)
            ok1 = to_hm1.is_isomorphism() and eq1
            ok2 = from_h0.is_isomorphism() and eq2
        except InvalidDatum:
            ok1 = ok2 = False
        details.append((f"{tag}-H-1-canonical-iso", ok1))
        details.append((f"{tag}-H0-canonical-iso", ok2))
        certified = certified and ok1 and ok2
    if certified:
        return ComparisonVerdict("certified", tuple(details))
    cx1, cx2 = pi1d_from_resolution(res1), pi1d_from_resolution(res2)
    agree = True
    for deg in (-1, 0):
        e1 = _evidence(cx1.cohomology(deg))
        e2 = _evidence(cx2.cohomology(deg))
        same = e1 == e2
        details.append((f"evidence-degree-{deg}", same))
        agree = agree and same
    return ComparisonVerdict("evidence-only" if agree else "mismatch", tuple(details))


@dataclass(frozen=True)
class SESData:
    g1: ReductiveDatum
    g2: ReductiveDatum
    g3: ReductiveDatum
    x3_to_x2: IntMatrix
    x2_to_x1: IntMatrix
    part1: tuple[int, ...]  # indices of g2's simple roots coming from g1
    part3: tuple[int, ...]  # indices coming from g3


@dataclass(frozen=True)
class SESReport:
    checks: tuple[tuple[str, bool], ...]
    les: Optional[LongExactReport]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks) and (
            self.les is None or self.les.all_exact
        )

    def failures(self) -> list[str]:
        out = [name for name, ok in self.checks if not ok]
        if self.les is not None:
            out += [
                label
                for label, ok in zip(self.les.labels, self.les.exact)
                if not ok
            ]
        return out


def validate_ses_data(s: SESData) -> list[tuple[str, bool]]:
    checks: list[tuple[str, bool]] = []
    n1, n2, n3 = s.g1.datum.rank, s.g2.datum.rank, s.g3.datum.rank
    r1, r2, r3 = (
        s.g1.datum.semisimple_rank,
        s.g2.datum.semisimple_rank,
        s.g3.datum.semisimple_rank,
    )
    checks.append(("shapes", s.x3_to_x2.shape == (n3, n2)
                   and s.x2_to_x1.shape == (n2, n1)))
    checks.append(("partition", sorted(s.part1 + s.part3) == list(range(r2))
                   and len(s.part1) == r1 and len(s.part3) == r3))
    if not all(ok for _, ok in checks):
        return checks
    f32 = AbHom(FgAbelianGroup.free(n3), FgAbelianGroup.free(n2), s.x3_to_x2)
    f21 = AbHom(FgAbelianGroup.free(n2), FgAbelianGroup.free(n1), s.x2_to_x1)
    checks.append(("lattice-injective", f32.is_injective()))
    checks.append(("lattice-surjective", f21.is_surjective()))
    checks.append(("lattice-exact", is_exact_at(f32, f21)))
    # root identifications
    ok_roots3 = all(
        tuple(s.x3_to_x2.apply_to_row(s.g3.datum.simple_roots[j]))
        == s.g2.datum.simple_roots[s.part3[j]]
        for j in range(r3)
    )
    checks.append(("g3-roots-match", ok_roots3))
    ok_roots1 = all(
        tuple(s.x2_to_x1.apply_to_row(s.g2.datum.simple_roots[s.part1[j]]))
        == s.g1.datum.simple_roots[j]
        for j in range(r1)
    )
    checks.append(("g1-roots-match", ok_roots1))
    # part-1 roots die in X1? no: they map to g1's roots; part-3 roots must
    # pair to zero with nothing here.  Coroot identifications:
    ok_co3 = all(
        tuple(s.x3_to_x2.apply_to_column(s.g2.datum.simple_coroots[s.part3[j]]))
        == s.g3.datum.simple_coroots[j]
        for j in range(r3)
    )
    checks.append(("g3-coroots-match", ok_co3))
    ok_co1 = all(
        tuple(s.x2_to_x1.apply_to_column(s.g1.datum.simple_coroots[j]))
        == s.g2.datum.simple_coroots[s.part1[j]]
        for j in range(r1)
    )
    checks.append(("g1-coroots-match", ok_co1))
    # part-1 coroots pair to zero with the image of X3
    ok_orth = all(
        all(
            sum(
                a * b
                for a, b in zip(
                    s.x3_to_x2.row(i), s.g2.datum.simple_coroots[s.part1[j]]
                )
            )
            == 0
            for i in range(n3)
        )
        for j in range(r1)
    )
    checks.append(("part1-coroots-kill-x3", ok_orth))
    # gamma actions commute with the lattice maps
    ok_g = s.g1.gamma == s.g2.gamma == s.g3.gamma
    checks.append(("same-gamma", ok_g))
    if ok_g:
        ok_eq = True
        for g in s.g2.gamma.elements():
            lhs = s.g3.actions[g] @ s.x3_to_x2
            rhs = s.x3_to_x2 @ s.g2.actions[g]
            ok_eq = ok_eq and lhs.data == rhs.data
            lhs = s.g2.actions[g] @ s.x2_to_x1
            rhs = s.x2_to_x1 @ s.g1.actions[g]
            ok_eq = ok_eq and lhs.data == rhs.data
        checks.append(("gamma-equivariant", ok_eq))
    return checks


def ses_to_complex_ses(s: SESData) -> tuple[ChainMap, ChainMap, SESReport]:
    """Build 0 -> pi1D(G3) -> pi1D(G2) -> pi1D(G1) -> 0 and its long
    exact cohomology sequence."""
    checks = validate_ses_data(s)
    if not all(ok for _, ok in checks):
        return None, None, SESReport(tuple(checks), None)  # type: ignore[return-value]
    c3 = canonical_pi1d(s.g3)
    c2 = canonical_pi1d(s.g2)
    c1 = canonical_pi1d(s.g1)
    r1, r2, r3 = (
        s.g1.datum.semisimple_rank,
        s.g2.datum.semisimple_rank,
        s.g3.datum.semisimple_rank,
    )
    # degree 0: P3 -> P2 places the g3 coordinates, P2 -> P1 projects
    p32 = zeros(r3, r2) if r3 == 0 else mat(
        [[1 if j == s.part3[i] else 0 for j in range(r2)] for i in range(r3)], r2
    )
    p21 = zeros(r2, r1) if r2 == 0 else mat(
        [[1 if s.part1[j] == i else 0 for j in range(r1)] for i in range(r2)], r1
    )
    i_map = ChainMap(c3, c2, {
        -1: GammaHom(c3.term(-1), c2.term(-1), AbHom(
            c3.term(-1).group, c2.term(-1).group, s.x3_to_x2)),
        0: GammaHom(c3.term(0), c2.term(0), AbHom(
            c3.term(0).group, c2.term(0).group, p32)),
    })
    p_map = ChainMap(c2, c1, {
        -1: GammaHom(c2.term(-1), c1.term(-1), AbHom(
            c2.term(-1).group, c1.term(-1).group, s.x2_to_x1)),
        0: GammaHom(c2.term(0), c1.term(0), AbHom(
            c2.term(0).group, c1.term(0).group, p21)),
    })
    checks.append(("i-chain-map", i_map.is_valid()))
    checks.append(("p-chain-map", p_map.is_valid()))
    if not all(ok for _, ok in checks):
        return i_map, p_map, SESReport(tuple(checks), None)
    les = les_of_ses(i_map, p_map)
    return i_map, p_map, SESReport(tuple(checks), les)


def ses_gm_gl_pgl(n: int) -> SESData:
    """The central extension of PGL(n) by the scaling torus inside GL(n)."""
    from .rootdata import from_catalog

    g1 = from_catalog("T(1)")
    g2 = from_catalog(f"GL({n})")
    g3 = from_catalog(f"PGL({n})")
    rows = []
    for j in range(n - 1):
        v = [0] * n
        v[j], v[j + 1] = 1, -1
        rows.append(v)
    x3_to_x2 = mat(rows, n)
    x2_to_x1 = mat([[1]] * n, 1)
    return SESData(g1, g2, g3, x3_to_x2, x2_to_x1, (), tuple(range(n - 1)))


def ses_sl_gl_gm(n: int) -> SESData:
    """SL(n) inside GL(n) with determinant quotient."""
    from .rootdata import from_catalog

    g1 = from_catalog(f"SL({n})")
    g2 = from_catalog(f"GL({n})")
    g3 = from_catalog("T(1)")
    x3_to_x2 = mat([[1] * n], n)
    # restrict a diagonal character to the determinant-one torus, written
    # on the fundamental-weight basis of SL(n)
    rows = []
    for i in range(n):
        row = [0] * (n - 1)
        if i < n - 1:
            row[i] += 1
        if i >= 1:
            row[i - 1] -= 1
        rows.append(row)
    x2_to_x1 = mat(rows, n - 1)
    return SESData(g1, g2, g3, x3_to_x2, x2_to_x1, tuple(range(n - 1)), ())


def sl_to_pgl_induced_map(n: int) -> ChainMap:
    """pi1D(PGL(n)) -> pi1D(SL(n)) for the isogeny SL(n) -> PGL(n)."""
    from .rootdata import cartan_matrix, from_catalog

    sl = from_catalog(f"SL({n})")
    pgl = from_catalog(f"PGL({n})")
    return induced_map(pgl, sl, cartan_matrix("A", n - 1), identity(n - 1))


def induced_map(
    d2: ReductiveDatum,
    d1: ReductiveDatum,
    char_pullback: IntMatrix,
    coroot_matrix: IntMatrix,
) -> ChainMap:
    """The chain map pi1D(d2) -> pi1D(d1) of a morphism d1 -> d2.

    char_pullback maps X(d2) to X(d1); coroot_matrix expresses each
    simple coroot of d1 in the simple coroots of d2 (one row per coroot
    of d1).  Compatibility F @ beta_1 = beta_2 @ N^T is required.
    """
    c2 = canonical_pi1d(d2)
    c1 = canonical_pi1d(d1)
    b1 = pairing_map(d1).hom.matrix
    b2 = pairing_map(d2).hom.matrix
    f0 = coroot_matrix.transpose()
    if (char_pullback @ b1).data != (b2 @ f0).data:
        raise InvalidDatum("char pullback and coroot matrix are incompatible")
    u = ChainMap(c2, c1, {
        -1: GammaHom(c2.term(-1), c1.term(-1), AbHom(
            c2.term(-1).group, c1.term(-1).group, char_pullback)),
        0: GammaHom(c2.term(0), c1.term(0), AbHom(
            c2.term(0).group, c1.term(0).group, f0)),
    })
    u.check()
    return u
