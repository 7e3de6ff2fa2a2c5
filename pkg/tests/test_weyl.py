"""Weyl layer: enumeration against closed-form orders, longest elements,
orthogonal subsystems, and the line-preserver search on known data."""

from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from minrep.linalg import identity, matmul, matvec
from minrep.rootsys import KSpace, dot, make_root_system, vec, vscale, weight
from minrep.weyl import (
    BudgetExceededError,
    apply,
    as_element,
    compose,
    enumerate_group,
    equal_elements,
    group_order,
    identity_element,
    inverse,
    line_preservers,
    longest_element,
    orbit_size,
    orthogonal_subsystem,
    space_beta_subsystems,
    space_group_order,
    space_longest_element,
    space_subgroup_longest,
    subgroup_longest,
    word,
)

H = Q(1, 2)
A1D = make_root_system("A1d")


# ---------------------------------------------------------------------------
# orders and enumeration


CLOSED_FORM_ORDERS = {
    "A1": 2, "A2": 6, "A3": 24, "A4": 120,
    "B2": 8, "B3": 48, "B4": 384,
    "C2": 8, "C3": 48, "C4": 384,
    "D3": 24, "D4": 192, "D5": 1920, "D6": 23040,
    "G2": 12, "F4": 1152, "E6": 51840, "E7": 2903040, "E8": 696729600,
    "A1d": 2, "D2": 4,
}


@pytest.mark.parametrize("label,order", sorted(CLOSED_FORM_ORDERS.items()))
def test_group_order_closed_forms(label, order):
    assert group_order(make_root_system(label)) == order


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "A4", "B2", "B3", "B4",
                                   "C2", "C3", "C4", "D2", "D3", "D4", "D5",
                                   "D6", "G2", "F4", "A1d"])
def test_orbit_enumeration_matches_closed_form(label):
    rs = make_root_system(label)
    assert orbit_size(rs) == CLOSED_FORM_ORDERS[label]


def test_orbit_enumeration_e6():
    assert orbit_size(make_root_system("E6")) == 51840


def test_enumeration_budget_refusal_names_the_order():
    rs = make_root_system("E7")
    with pytest.raises(BudgetExceededError) as info:
        next(iter(enumerate_group(rs)))
    assert "2903040" in str(info.value)
    assert info.value.order == 2903040


def test_enumerated_elements_are_distinct_orthogonal_root_permutations():
    rs = make_root_system("B3")
    seen = set()
    eye = identity(3)
    for el in enumerate_group(rs):
        (m,) = el.blocks
        assert m not in seen
        seen.add(m)
        transpose = tuple(zip(*m))
        assert matmul(m, transpose) == eye
        assert {matvec(m, r) for r in rs.roots} == set(rs.roots)
    assert len(seen) == 48


# ---------------------------------------------------------------------------
# words, elements, longest elements


def _single(label):
    rs = make_root_system(label)
    return rs, KSpace((rs,), 0)


def test_empty_word_is_identity():
    rs, sp = _single("C3")
    assert as_element(sp, word(sp, [])) == identity_element(sp)


def test_word_letters_must_lie_on_root_lines():
    rs, sp = _single("C3")
    with pytest.raises(ValueError):
        word(sp, [(0, (1, 1, 1))])
    with pytest.raises(ValueError):
        word(sp, [(1, (1, 0, 0))])
    # any nonzero multiple of a root is accepted as a letter
    sp2 = KSpace((A1D,), 0)
    w = word(sp2, [(0, (1, -1))])
    assert apply(sp2, w, weight(sp2, (5, 3))) == weight(sp2, (3, 5))


def test_apply_word_matches_apply_element():
    rs, sp = _single("B3")
    w = word(sp, [(0, (1, -1, 0)), (0, (0, 0, 1)), (0, (0, 1, 1))])
    lam = weight(sp, (4, 1, -2))
    assert apply(sp, w, lam) == apply(sp, as_element(sp, w), lam)


def test_rightmost_letter_acts_first():
    rs, sp = _single("A2")
    # s(e1-e2) after s(e2-e3): (a,b,c) -> (a,c,b) -> (c,a,b)
    w = word(sp, [(0, (1, -1, 0)), (0, (0, 1, -1))])
    assert apply(sp, w, weight(sp, (1, 2, 3))) == weight(sp, (3, 1, 2))


@pytest.mark.parametrize("label", ["C4", "D6", "B3", "F4"])
def test_longest_element_acts_as_minus_one_when_it_does(label):
    rs, sp = _single(label)
    wl = as_element(sp, longest_element(rs))
    assert matvec(wl.blocks[0], rs.rho) == vscale(-1, rs.rho)
    neg = tuple(tuple(-Q(i == j) for j in range(rs.ambient)) for i in range(rs.ambient))
    assert wl.blocks[0] == neg


def test_longest_element_of_g2_negates_the_root_span():
    rs, sp = _single("G2")
    m = as_element(sp, longest_element(rs)).blocks[0]
    for r in rs.roots:
        assert matvec(m, r) == vscale(-1, r)
    # the direction orthogonal to every root is fixed
    assert matvec(m, vec(1, 1, 1)) == vec(1, 1, 1)


def test_longest_element_of_a_type_is_coordinate_reversal():
    rs, sp = _single("A3")
    wl = as_element(sp, longest_element(rs))
    assert matvec(wl.blocks[0], vec(5, 7, 11, 13)) == vec(13, 11, 7, 5)


@pytest.mark.parametrize("label", ["A2", "A5", "B4", "C3", "D3", "D4", "E6", "E7", "A1d"])
def test_longest_element_properties(label):
    rs, sp = _single(label)
    w = longest_element(rs)
    assert len(w) == len(rs.positive)
    wl = as_element(sp, w)
    m = wl.blocks[0]
    assert matvec(m, rs.rho) == vscale(-1, rs.rho)
    assert matmul(m, m) == identity(rs.ambient)
    for a in rs.simple:
        assert 2 * dot(matvec(m, rs.rho), a) / dot(a, a) == -1


def test_space_longest_element_spans_all_factors():
    sp = KSpace((make_root_system("C3"), A1D), 0)
    wl = as_element(sp, space_longest_element(sp))
    lam = weight(sp, (3, 2, 1), (1, -1))
    assert apply(sp, wl, lam) == weight(sp, (-3, -2, -1), (-1, 1))


# ---------------------------------------------------------------------------
# orthogonal subsystems


def test_orthogonal_subsystem_a3_inside_c4():
    c4 = make_root_system("C4")
    sub = orthogonal_subsystem(c4, vec(1, 1, 1, 1))
    assert len(sub.roots) == 12
    assert sub.components == ("A3",)
    assert sub.order == 24
    assert set(sub.positive) <= set(c4.positive)
    # closed under its own reflections
    for a in sub.roots:
        assert all(
            tuple(r[i] - 2 * dot(r, a) / dot(a, a) * a[i] for i in range(4)) in sub.roots
            for r in sub.roots)


def test_orthogonal_subsystem_e7_inside_e8():
    e8 = make_root_system("E8")
    sub = orthogonal_subsystem(e8, vec(0, 0, 0, 0, 0, 0, 1, 1))
    assert len(sub.roots) == 126
    assert sub.components == ("E7",)
    assert sub.order == 2903040


def test_orthogonal_subsystem_e6_inside_e7():
    e7 = make_root_system("E7")
    sub = orthogonal_subsystem(e7, vec(0, 0, 0, 0, 0, 1, -H, H))
    assert sub.components == ("E6",)
    assert len(sub.roots) == 72


def test_orthogonal_subsystem_can_be_empty_or_everything():
    g2 = make_root_system("G2")
    assert orthogonal_subsystem(g2, g2.rho).system is None
    assert orthogonal_subsystem(g2, g2.rho).order == 1
    everything = orthogonal_subsystem(g2, vec(0, 0, 0))
    assert everything.roots == g2.roots
    assert everything.order == 12


def test_orthogonal_subsystem_splits_into_components():
    a7 = make_root_system("A7")
    beta = vscale(H, vec(1, 1, 1, 1, -1, -1, -1, -1))
    sub = orthogonal_subsystem(a7, beta)
    assert sorted(sub.components) == ["A3", "A3"]
    assert sub.order == 576


def test_subgroup_longest_fixes_beta_and_flips_the_subsystem():
    c4 = make_root_system("C4")
    sp = KSpace((c4,), 0)
    beta = weight(sp, (1, 1, 1, 1))
    subs = space_beta_subsystems(sp, beta)
    wbl = as_element(sp, space_subgroup_longest(sp, subs))
    assert apply(sp, wbl, beta) == beta
    for a in subs[0].positive:
        img = matvec(wbl.blocks[0], a)
        assert vscale(-1, img) in subs[0].positive


def test_subgroup_longest_of_empty_subsystem_is_identity():
    g2 = make_root_system("G2")
    sp = KSpace((g2,), 0)
    sub = orthogonal_subsystem(g2, g2.rho)
    assert subgroup_longest(sp, sub) == word(sp, [])


# ---------------------------------------------------------------------------
# line preservers


def test_line_preservers_doubled_su2_pair():
    sp = KSpace((A1D, A1D), 0)
    beta = weight(sp, (3, -3), (1, -1))
    xi0 = weight(sp, (0, 0), (0, 0))
    w0 = as_element(sp, word(sp, [(0, (1, -1)), (1, (1, -1))]))
    expected = frozenset({identity_element(sp), w0})
    assert line_preservers(sp, beta, xi0, "brute") == expected
    assert line_preservers(sp, beta, xi0, "reduced") == expected
    # the word sends beta to -beta
    assert apply(sp, w0, beta) == weight(sp, (-3, 3), (-1, 1))


def test_line_preservers_c4_record():
    c4 = make_root_system("C4")
    sp = KSpace((c4,), 0)
    beta = weight(sp, (1, 1, 1, 1))
    xi0 = weight(sp, (Q(3, 2), Q(1, 2), Q(-1, 2), Q(-3, 2)))
    w0 = as_element(sp, word(sp, [(0, (1, 0, 0, 1)), (0, (0, 1, 1, 0))]))
    expected = frozenset({identity_element(sp), w0})
    brute = line_preservers(sp, beta, xi0, "brute")
    reduced = line_preservers(sp, beta, xi0, "reduced")
    assert brute == reduced == expected
    # the table word fixes xi0
    assert apply(sp, w0, xi0) == xi0


def test_line_preservers_degenerate_rank_two_cases():
    b2 = make_root_system("B2")
    sp = KSpace((b2,), 0)
    # beta strictly dominant regular: empty stabilizer, -1 flips beta
    beta = weight(sp, (2, 1))
    xi0 = weight(sp, (2, 1))
    wl = as_element(sp, longest_element(b2))
    got = line_preservers(sp, beta, xi0, "reduced")
    assert got == line_preservers(sp, beta, xi0, "brute")
    assert got == frozenset({identity_element(sp), wl})

    a2 = make_root_system("A2")
    spa = KSpace((a2,), 0)
    theta = weight(spa, (1, 0, -1))
    got = line_preservers(spa, theta, weight(spa, (1, 0, -1)), "brute")
    assert got == frozenset({identity_element(spa),
                             as_element(spa, longest_element(a2))})


def test_line_preservers_validates_inputs():
    sp = KSpace((make_root_system("C3"),), 0)
    xi0 = weight(sp, (0, 0, 0))
    with pytest.raises(ValueError):
        line_preservers(sp, weight(sp, (0, 0, 0)), xi0)
    with pytest.raises(ValueError):
        line_preservers(sp, weight(sp, (0, 0, 1)), xi0)  # not dominant
    with pytest.raises(ValueError):
        line_preservers(sp, weight(sp, (1, 1, 1)), xi0, strategy="magic")


def test_line_preservers_brute_over_budget_suggests_reduced():
    d8 = make_root_system("D8")
    sp = KSpace((d8,), 0)
    beta = weight(sp, (H,) * 8)
    with pytest.raises(BudgetExceededError) as info:
        line_preservers(sp, beta, weight(sp, (0,) * 8), "brute")
    assert "reduced" in str(info.value)
    assert info.value.order == space_group_order(sp)


# ---------------------------------------------------------------------------
# properties


@st.composite
def short_word(draw):
    c3 = make_root_system("C3")
    sp = KSpace((c3, A1D), 0)
    roots = sorted(c3.roots) + [None]
    letters = []
    for r in draw(st.lists(st.sampled_from(roots), max_size=5)):
        letters.append((1, (1, -1)) if r is None else (0, r))
    return sp, word(sp, letters)


@given(short_word())
@settings(max_examples=50, deadline=None)
def test_element_inverse_and_composition(sw):
    sp, w = sw
    el = as_element(sp, w)
    assert compose(el, inverse(el)) == identity_element(sp)
    lam = weight(sp, (3, 1, -2), (4, -4))
    assert apply(sp, inverse(el), apply(sp, el, lam)) == lam


@given(short_word())
@settings(max_examples=50, deadline=None)
def test_word_and_element_application_agree(sw):
    sp, w = sw
    lam = weight(sp, (2, 2, -1), (1, -1))
    assert apply(sp, w, lam) == apply(sp, as_element(sp, w), lam)
