"""Base-algebra layer: the lifted cocycle, generator presentations, Jacobian
certificates, decomposition witnesses, the grading quotient, evaluation
preimages, and freeness of the evaluation image."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfgen.arith import make_field
from hopfgen.cocycle import trivial_cocycle
from hopfgen.errors import NotDegreeZero, RangeError, UnsupportedFamily
from hopfgen.generic_base import (
    DecompositionWitness,
    GammaPresentation,
    decompose,
    decompose_with_residue,
    gamma_generators,
    generic_cocycle,
    generic_cocycle_inverse,
    jacobian_check,
    niceness_witnesses,
    quotient_presentation_check,
    torus_minor_determinant,
    uprime_relations_check,
    verify_sigma,
)
from hopfgen.groups import character_from_exponents, cyclic, direct_product, symmetric
from hopfgen.hopf import HopfAlgebra, e_algebra, group_algebra, monomial_type_i, taft
from hopfgen.tring import t_ring


def klein_monomial():
    g = direct_product(cyclic(2), cyclic(2))
    f = make_field(2)
    chi = character_from_exponents(g, f, [0, 0, 1, 1])
    return monomial_type_i(g, g.index_of("(a,e)"), chi, f)


# --- the lifted cocycle ----------------------------------------------------


def test_group_cocycle_is_torus_ratio():
    h = group_algebra(symmetric(3))
    group = h.family["group"]
    ring = t_ring(h)
    alpha = trivial_cocycle(h)
    for g, k in itertools.product(range(group.order), repeat=2):
        expected = ring.var(g) * ring.var(k) * ring.var(group.mul(g, k), -1)
        assert generic_cocycle(h, alpha, g, k) == expected


def test_unit_argument_scales_the_unit_generator():
    h = taft(3)
    ring = t_ring(h)
    alpha = trivial_cocycle(h)
    for b in range(h.dim):
        expected = ring.var(h.unit_index) * h.counit[b]
        assert generic_cocycle(h, alpha, h.unit_index, b) == expected
        assert generic_cocycle(h, alpha, b, h.unit_index) == expected


def test_taft2_diagonal_value_and_inverse():
    h = taft(2)
    ring = t_ring(h)
    alpha = trivial_cocycle(h)
    assert generic_cocycle(h, alpha, "x", "x") == ring.var(1, 2) * ring.var(0, -1)
    assert generic_cocycle_inverse(h, alpha, "x", "x") == ring.var(0) * ring.var(1, -2)


def test_cocycle_accepts_labels_and_rejects_bad_index():
    h = taft(2)
    alpha = trivial_cocycle(h)
    assert generic_cocycle(h, alpha, "x", 1) == generic_cocycle(h, alpha, 1, "x")
    with pytest.raises(RangeError):
        generic_cocycle(h, alpha, 99, 0)


@pytest.mark.parametrize(
    "make",
    [
        lambda: taft(2),
        lambda: e_algebra(1),
        klein_monomial,
        lambda: group_algebra(symmetric(3)),
    ],
)
def test_verify_sigma_passes(make):
    rep = verify_sigma(make())
    assert rep.ok, [c.name for c in rep.failures()]


# --- generator presentations -----------------------------------------------


def test_taft2_generator_set_is_the_quadratic_one():
    h = taft(2)
    ring = t_ring(h)
    pres = gamma_generators(h)
    assert pres.special_case
    assert set(pres.invertible_gens) == {ring.var(0), ring.var(1, 2)}
    assert set(pres.plain_gens) == {ring.var(1) * ring.var(2), ring.var(3)}


def test_taft3_generators_pinned():
    h = taft(3)
    ring = t_ring(h)
    pres = gamma_generators(h)
    assert pres.invertible_gens == (
        ring.var(0),
        ring.var(1) * ring.var(2),
        ring.var(2) * ring.var(1, -2),
    )
    assert pres.plain_gens[0] == ring.var(3) * ring.var(2)
    assert pres.plain_gens[2] == ring.var(5) * ring.var(0)
    assert not pres.special_case


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_taft_generator_counts(n):
    pres = gamma_generators(taft(n))
    assert len(pres.invertible_gens) == n
    assert len(pres.plain_gens) == n * (n - 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_e_generator_counts_and_pairing(n):
    h = e_algebra(n)
    ring = t_ring(h)
    pres = gamma_generators(h)
    assert len(pres.generators) == 2 ** (n + 1)
    assert pres.invertible_gens == (ring.var(0), ring.var(1, 2))
    tx = ring.var(1)
    for b, gen in enumerate(pres.plain_gens, start=2):
        assert gen in (ring.var(b), tx * ring.var(b))


def test_e2_plain_generators_pinned():
    h = e_algebra(2)
    ring = t_ring(h)
    i = h.index_of
    pres = gamma_generators(h)
    tx = ring.var(1)
    assert pres.plain_gens == (
        tx * ring.var(i("y_1")),
        tx * ring.var(i("y_2")),
        ring.var(i("x y_1")),
        ring.var(i("x y_2")),
        ring.var(i("y_{1,2}")),
        tx * ring.var(i("x y_{1,2}")),
    )


def test_monomial_generator_counts():
    h = klein_monomial()
    group = h.family["group"]
    pres = gamma_generators(h)
    assert len(pres.invertible_gens) == group.order
    assert len(pres.plain_gens) == (h.family["n"] - 1) * group.order
    assert len(pres.residue_vars) == 2  # the grading group is a product of two cycles


def test_group_presentation_has_torus_generators_only():
    h = group_algebra(symmetric(3))
    pres = gamma_generators(h)
    assert pres.plain_gens == ()
    assert len(pres.invertible_gens) == 6
    assert len(pres.residue_vars) == 1


@pytest.mark.parametrize(
    "make",
    [lambda: taft(4), lambda: e_algebra(3), klein_monomial, lambda: group_algebra(cyclic(6))],
)
def test_generators_have_degree_zero(make):
    h = make()
    ring = t_ring(h)
    zero = ring.grading_group().identity
    for gen in gamma_generators(h).generators:
        (mon,) = gen.terms
        assert ring.hab_degree(mon) == zero


def test_unknown_family_rejected():
    h = taft(2)
    bare = HopfAlgebra(
        h.field,
        list(h.labels),
        h.mult,
        h.comult,
        list(h.counit),
        unit_index=h.unit_index,
        family={},
    )
    with pytest.raises(UnsupportedFamily):
        gamma_generators(bare)


def test_presentation_is_cached_per_instance():
    h = taft(3)
    assert gamma_generators(h) is gamma_generators(h)


# --- Jacobian certificates -------------------------------------------------


def test_taft3_torus_minor_exact():
    h = taft(3)
    ring = t_ring(h)
    assert torus_minor_determinant(h) == ring.var(2) * ring.var(1, -2) * 3


def test_taft4_torus_minor_exact():
    h = taft(4)
    ring = t_ring(h)
    assert torus_minor_determinant(h) == ring.var(3) * ring.var(1, -5) * 4


def test_taft2_symbolic_determinant():
    h = taft(2)
    ring = t_ring(h)
    det, ok = jacobian_check(h)
    assert ok
    assert det == ring.var(1, 2) * 2


def test_taft3_determinant_splits_into_minor_and_diagonal():
    h = taft(3)
    ring = t_ring(h)
    det, ok = jacobian_check(h)
    assert ok
    diagonal = ring.one()
    for gen in gamma_generators(h).plain_gens:
        (mon,) = gen.terms
        partner = [(i, e) for i, e in mon.exps if i in set(h.grouplikes)]
        diagonal = diagonal * ring.element({ring.monomial(partner): ring.field.one})
    assert det == torus_minor_determinant(h) * diagonal
    assert det == ring.var(0, 2) * ring.var(2, 3) * 3


@pytest.mark.parametrize(
    "make",
    [lambda: e_algebra(2), klein_monomial, lambda: group_algebra(symmetric(3))],
)
def test_random_point_certificate_is_nonzero(make):
    h = make()
    det, ok = jacobian_check(h, seed=11)
    assert ok
    assert len(det.terms) == 1 and not next(iter(det.terms.values())).is_zero


def test_random_point_certificate_is_seeded():
    h = e_algebra(2)
    assert jacobian_check(h, seed=7)[0] == jacobian_check(h, seed=7)[0]


# --- decomposition ----------------------------------------------------------


def test_taft3_decomposition_pinned():
    h = taft(3)
    ring = t_ring(h)
    target = ring.var(2) * ring.var(3) * ring.var(1, -3)
    [w] = decompose(h, target)
    assert w.invertible_exps == (0, -1, 1)
    assert w.plain_exps == (1, 0, 0, 0, 0, 0)
    assert w.residue_exps == (0,)
    assert w.remultiply() == target


def test_taft2_residue_decomposition_pinned():
    h = taft(2)
    ring = t_ring(h)
    target = ring.var(3) * ring.var(2) * ring.var(0, -1)
    with pytest.raises(NotDegreeZero):
        decompose(h, target)
    w, residue = decompose_with_residue(h, target)
    assert residue == (1,)
    assert w.invertible_exps == (-1, -1)
    assert w.plain_exps == (1, 1)
    assert w.remultiply() == target


@pytest.mark.parametrize(
    "make",
    [lambda: taft(3), lambda: e_algebra(2), klein_monomial, lambda: group_algebra(symmetric(3))],
)
def test_each_generator_decomposes_to_itself(make):
    h = make()
    pres = gamma_generators(h)
    for p, gen in enumerate(pres.plain_gens):
        [w] = decompose(h, gen)
        assert w.plain_exps[p] == 1 and sum(map(abs, w.plain_exps)) == 1
        assert w.invertible_exps == (0,) * len(pres.invertible_gens)
    for p, gen in enumerate(pres.invertible_gens):
        [w] = decompose(h, gen)
        assert w.invertible_exps[p] == 1 and sum(map(abs, w.invertible_exps)) == 1
        assert w.plain_exps == (0,) * len(pres.plain_gens)


def test_element_input_keeps_coefficients():
    h = taft(3)
    ring = t_ring(h)
    pres = gamma_generators(h)
    elem = pres.plain_gens[0] * 5 + pres.invertible_gens[1] * ring.field.q
    ws = decompose(h, elem)
    assert len(ws) == 2
    total = ring.zero()
    for w in ws:
        total = total + w.remultiply()
    assert total == elem


def test_foreign_element_rejected():
    with pytest.raises(RangeError):
        decompose(taft(3), t_ring(taft(2)).var(0))


def _roundtrip_strategy(num_inv, num_plain):
    return st.tuples(
        st.lists(st.integers(-3, 3), min_size=num_inv, max_size=num_inv),
        st.lists(st.integers(0, 3), min_size=num_plain, max_size=num_plain),
    )


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_taft3_decomposition_roundtrip(data):
    h = taft(3)
    pres = gamma_generators(h)
    inv, plain = data.draw(
        _roundtrip_strategy(len(pres.invertible_gens), len(pres.plain_gens))
    )
    target = t_ring(h).one()
    for gen, e in zip(pres.invertible_gens, inv):
        target = target * gen**e
    for gen, e in zip(pres.plain_gens, plain):
        target = target * gen**e
    [w] = decompose(h, target)
    assert w.invertible_exps == tuple(inv)
    assert w.plain_exps == tuple(plain)
    assert w.remultiply() == target


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_e2_residue_roundtrip_on_arbitrary_monomials(data):
    h = e_algebra(2)
    ring = t_ring(h)
    gl = set(h.grouplikes)
    exps = [
        data.draw(st.integers(-3, 3) if v in gl else st.integers(0, 2))
        for v in range(h.dim)
    ]
    mon = ring.monomial([(v, e) for v, e in enumerate(exps) if e])
    w, residue = decompose_with_residue(h, mon)
    assert all(0 <= k for k in residue)
    assert w.remultiply() == ring.element({mon: ring.field.one})


@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_monomial_family_residue_roundtrip(data):
    h = klein_monomial()
    ring = t_ring(h)
    gl = set(h.grouplikes)
    exps = [
        data.draw(st.integers(-2, 2) if v in gl else st.integers(0, 2))
        for v in range(h.dim)
    ]
    mon = ring.monomial([(v, e) for v, e in enumerate(exps) if e])
    w, residue = decompose_with_residue(h, mon)
    assert w.remultiply() == ring.element({mon: ring.field.one})
    assert len(residue) == 2


# --- the grading quotient ----------------------------------------------------


@pytest.mark.parametrize(
    "make",
    [
        lambda: taft(2),
        lambda: taft(3),
        lambda: taft(4),
        lambda: e_algebra(1),
        lambda: e_algebra(2),
        lambda: e_algebra(3),
        klein_monomial,
        lambda: group_algebra(symmetric(3)),
        lambda: group_algebra(cyclic(6)),
    ],
)
def test_quotient_presentation_check_passes(make):
    rep = quotient_presentation_check(make())
    assert rep.ok, [(c.name, c.details) for c in rep.failures()]


def test_quadratic_instance_is_flagged():
    rep = quotient_presentation_check(taft(2))
    assert any("hand-picked" in c.name for c in rep.checks)
    assert not any("hand-picked" in c.name for c in quotient_presentation_check(taft(3)).checks)


# --- niceness witnesses -------------------------------------------------------


@pytest.mark.parametrize(
    "make",
    [
        lambda: taft(2),
        lambda: taft(3),
        lambda: taft(4),
        lambda: e_algebra(1),
        lambda: e_algebra(2),
        lambda: e_algebra(3),
        klein_monomial,
        lambda: group_algebra(symmetric(3)),
    ],
)
def test_witnesses_cover_generators_and_inverses(make):
    h = make()
    pres = gamma_generators(h)
    wit = niceness_witnesses(h)  # every witness is verified internally
    expected = set(pres.plain_gens)
    for gen in pres.invertible_gens:
        expected.add(gen)
        expected.add(gen.inverse())
    assert set(wit) == expected


def test_taft3_witness_words_pinned():
    h = taft(3)
    ring = t_ring(h)
    one = h.field.one
    wit = niceness_witnesses(h)
    word, dens = wit[ring.var(1) * ring.var(2)]
    assert word.terms == {(1, 2): one}
    assert dens.entries == []
    word, dens = wit[ring.var(0)]
    assert word.terms == {(0, 1, 1, 1): one}
    assert dens.entries == [("grouplike_power", 1)]
    word, dens = wit[ring.var(0).inverse()]
    assert word.terms == {(0, 0): one}
    assert dens.entries == [("unit",)] * 3


def test_taft2_mixed_witness_needs_no_trailing_letter():
    h = taft(2)
    ring = t_ring(h)
    wit = niceness_witnesses(h)
    word, dens = wit[ring.var(3)]
    assert word.terms[(3, 0, 1, 1)] == h.field.one  # head word, no closing letter
    assert dens.entries == [("unit",), ("grouplike_power", 1)]


def test_group_witness_solves_over_product_vectors():
    h = group_algebra(cyclic(6))
    wit = niceness_witnesses(h)
    pres = gamma_generators(h)
    assert len(wit) == 2 * len(pres.invertible_gens)
    for word, dens in wit.values():
        assert len(word.terms) == 1


# --- freeness of the evaluation image ----------------------------------------


@pytest.mark.parametrize(
    "make",
    [
        lambda: taft(2),
        lambda: taft(3),
        lambda: taft(4),
        lambda: e_algebra(1),
        lambda: e_algebra(2),
        lambda: e_algebra(3),
        klein_monomial,
        lambda: group_algebra(symmetric(3)),
        lambda: group_algebra(cyclic(6)),
    ],
)
def test_uprime_relations_pass(make):
    rep = uprime_relations_check(make())
    assert rep.ok, [(c.name, c.details) for c in rep.failures()]


def test_uprime_reports_expected_rank():
    rep = uprime_relations_check(taft(3))
    assert any("rank 9" in c.name for c in rep.checks)
    rep = uprime_relations_check(e_algebra(2))
    assert any("rank 8" in c.name for c in rep.checks)
