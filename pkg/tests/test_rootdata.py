import pytest

from redinv.intmat import det, identity, mat
from redinv.gammamod import fixed_points, group_cohomology
from redinv.rootdata import (
    InvalidDatum,
    ReductiveDatum,
    RootDatum,
    UnknownGroupSpec,
    adjoint_datum,
    cartan_matrix,
    character_group,
    from_catalog,
    gl_datum,
    is_finite_cartan_matrix,
    mu_dual,
    pi1,
    radical_characters,
    simply_connected_datum,
    torus_datum,
    validate,
)

ALL_SPECS = [
    "SL(2)", "SL(3)", "SL(4)", "GL(2)", "GL(3)", "PGL(2)", "PGL(3)", "PGL(4)",
    "Sp(4)", "SO(5)", "SO(8)", "Spin(7)", "Spin(8)", "PSO(8)",
    "G2", "F4", "E6sc", "E6ad", "E7ad", "E8", "T(1)", "T(2)",
    "SL(3)xGamma:flip", "PGL(3)xGamma:flip",
    "Spin(8)xGamma:triality", "PSO(8)xGamma:triality",
]


class TestCartanMatrices:
    # |det| of the Cartan matrix is the order of the center lattice quotient
    DETS = {
        ("A", 1): 2, ("A", 2): 3, ("A", 5): 6,
        ("B", 2): 2, ("B", 4): 2,
        ("C", 3): 2,
        ("D", 4): 4, ("D", 5): 4,
        ("E6", 6): 3, ("E7", 7): 2, ("E8", 8): 1,
        ("F4", 4): 1, ("G2", 2): 1,
    }

    def test_determinants(self):
        for (kind, rank), want in self.DETS.items():
            assert abs(det(cartan_matrix(kind, rank))) == want, (kind, rank)

    def test_recognizer_accepts(self):
        for kind, rank in self.DETS:
            assert is_finite_cartan_matrix(cartan_matrix(kind, rank))

    def test_recognizer_rejects(self):
        # affine A1: determinant 0
        assert not is_finite_cartan_matrix(mat([[2, -2], [-2, 2]]))
        # asymmetric vanishing
        assert not is_finite_cartan_matrix(mat([[2, -1], [0, 2]]))
        # wrong diagonal
        assert not is_finite_cartan_matrix(mat([[1]]))
        # positive off-diagonal entry
        assert not is_finite_cartan_matrix(mat([[2, 1], [1, 2]]))

    def test_pairing_bound_rejected(self):
        # <alpha, alpha_check> = -4 never occurs in a finite Cartan matrix
        assert not is_finite_cartan_matrix(mat([[2, -4], [-1, 2]]))


class TestValidation:
    def test_all_specs_validate(self):
        for spec in ALL_SPECS:
            d = from_catalog(spec)
            rep = validate(d)
            assert rep.valid, (spec, rep.failures())

    def test_bad_pairing_rejected(self):
        # alpha paired with its own coroot must give 2, not 3
        bad = RootDatum(1, ((1,),), ((3,),))
        rep = validate(ReductiveDatum.untwisted("bad", bad))
        assert not rep.valid

    def test_length_mismatch_rejected(self):
        bad = RootDatum(2, ((1, 0),), ((1,),))
        rep = validate(ReductiveDatum.untwisted("bad", bad))
        assert not rep.valid
        assert "vector-lengths" in rep.failures()

    def test_unknown_spec(self):
        with pytest.raises(UnknownGroupSpec):
            from_catalog("Sporadic(1)")
        with pytest.raises(UnknownGroupSpec):
            from_catalog("SL(3)xGamma:unknown-twist")


class TestInvariantsUntwisted:
    def test_sl_n(self):
        for n in (2, 3, 4):
            d = from_catalog(f"SL({n})")
            assert character_group(d).group.is_trivial()
            assert mu_dual(d).group.invariants() == (0, ()) or mu_dual(d).group.is_trivial()
            assert pi1(d).group.is_trivial()

    def test_pgl_n(self):
        for n in (2, 3, 4):
            d = from_catalog(f"PGL({n})")
            assert mu_dual(d).group.invariants() == (0, (n,))
            assert pi1(d).group.invariants() == (0, (n,))

    def test_gl_n(self):
        d = from_catalog("GL(3)")
        assert character_group(d).group.invariants() == (1, ())
        assert mu_dual(d).group.is_trivial()
        assert pi1(d).group.invariants() == (1, ())
        assert radical_characters(d).group.invariants() == (1, ())

    def test_torus(self):
        d = from_catalog("T(2)")
        assert character_group(d).group.invariants() == (2, ())
        assert mu_dual(d).group.is_trivial()
        assert pi1(d).group.invariants() == (2, ())

    def test_adjoint_mu_equals_center_order(self):
        cases = [("A", 3, 4), ("B", 3, 2), ("C", 2, 2), ("D", 4, 4),
                 ("E6", 6, 3), ("E7", 7, 2), ("E8", 8, 1), ("F4", 4, 1), ("G2", 2, 1)]
        for kind, rank, order in cases:
            d = ReductiveDatum.untwisted("x", adjoint_datum(kind, rank))
            assert mu_dual(d).group.order() == order, (kind, rank)
            assert pi1(d).group.order() == order

    def test_simply_connected_mu_trivial(self):
        for kind, rank in [("A", 2), ("B", 3), ("D", 4), ("E6", 6), ("G2", 2)]:
            d = ReductiveDatum.untwisted("x", simply_connected_datum(kind, rank))
            assert mu_dual(d).group.is_trivial()
            assert pi1(d).group.is_trivial()

    def test_spin_vs_so_odd(self):
        spin = from_catalog("Spin(7)")
        so = from_catalog("SO(5)")
        assert mu_dual(spin).group.is_trivial()
        assert mu_dual(so).group.invariants() == (0, (2,))

    def test_so_even(self):
        d = from_catalog("SO(8)")
        assert mu_dual(d).group.invariants() == (0, (2,))
        assert pi1(d).group.invariants() == (0, (2,))

    def test_pso_even(self):
        d = from_catalog("PSO(8)")
        assert mu_dual(d).group.invariants() == (0, (2, 2))

    def test_odd_so_center(self):
        # SO(2n+1) is adjoint type B: mu* = Z/2
        d = ReductiveDatum.untwisted("x", adjoint_datum("B", 4))
        assert mu_dual(d).group.invariants() == (0, (2,))


class TestTwisted:
    def test_flip_fixed_points(self):
        d = from_catalog("PGL(3)xGamma:flip")
        fix, _ = fixed_points(mu_dual(d))
        # the flip inverts Z/3, so nothing nontrivial is fixed
        assert fix.is_trivial()

    def test_flip_character_group_sl(self):
        d = from_catalog("SL(3)xGamma:flip")
        assert character_group(d).group.is_trivial()
        assert mu_dual(d).group.is_trivial()

    def test_triality_on_pso8(self):
        d = from_catalog("PSO(8)xGamma:triality")
        m = mu_dual(d)
        assert m.group.invariants() == (0, (2, 2))
        fix, _ = fixed_points(m)
        assert fix.is_trivial()

    def test_triality_preserves_roots(self):
        d = from_catalog("Spin(8)xGamma:triality")
        for g in d.gamma.elements():
            assert d.root_permutation(g) is not None

    def test_flip_h1_of_characters(self):
        # X(GL2-like torus) with coordinate swap: H^1 vanishes
        d = from_catalog("SL(3)xGamma:flip")
        x = d.x_module()
        x.check()
        assert group_cohomology(x, 1).invariants()[0] == 0


class TestConstructors:
    def test_gl_datum_shape(self):
        rd = gl_datum(3)
        assert rd.rank == 3
        assert len(rd.simple_roots) == 2

    def test_torus_datum(self):
        rd = torus_datum(2)
        assert rd.semisimple_rank == 0

    def test_sc_and_adjoint_are_dual_shapes(self):
        sc = simply_connected_datum("B", 3)
        ad = adjoint_datum("C", 3)
        assert sc.rank == ad.rank == 3

    def test_identity_pairing_sc(self):
        sc = simply_connected_datum("A", 2)
        # coroots are the standard basis in the sc form
        assert sc.simple_coroots == tuple(identity(2).row(i) for i in range(2))
