from fractions import Fraction

import pytest

from gf2designs.designs import (
    DesignParams,
    admissible_involution_types,
    f7_residue_mod7,
    involution_census,
    is_admissible,
    lambda_s,
    steiner_triple_admissible,
    verify_design,
)
from gf2designs.gf2 import involution_normal_form
from gf2designs.grassmannian import enumerate_subspaces, span
from gf2designs.orbits import fixed_subspaces, group_closure, orbits


def test_params_validation():
    with pytest.raises(ValueError):
        DesignParams(3, 7, 2, 1)
    with pytest.raises(ValueError):
        DesignParams(2, 7, 3, 0)
    with pytest.raises(ValueError):
        DesignParams(2, 7, 3, 1, q=1)


def test_lambda_s_of_the_fano_q_analog():
    p = DesignParams(2, 7, 3, 1)
    assert lambda_s(p, 0) == 381
    assert lambda_s(p, 1) == 21
    assert lambda_s(p, 2) == 1
    with pytest.raises(ValueError):
        lambda_s(p, 3)
    with pytest.raises(ValueError):
        lambda_s(p, -1)


def test_lambda_s_at_t_is_lambda():
    for lam in (1, 2, 7):
        p = DesignParams(2, 8, 3, lam)
        assert lambda_s(p, p.t) == lam


def test_admissibility_matches_congruence_condition():
    # for triple systems the integrality conditions reduce to v = 1,3 mod 6
    for v in range(7, 26):
        assert is_admissible(DesignParams(2, v, 3, 1)) == steiner_triple_admissible(v)
    assert steiner_triple_admissible(7)
    assert steiner_triple_admissible(9)
    assert not steiner_triple_admissible(11)
    assert not steiner_triple_admissible(3)  # below the bound
    with pytest.raises(ValueError):
        steiner_triple_admissible(0)


def test_census_known_values():
    c = involution_census(7, 3)
    assert (c.fixed_points, c.two_orbits) == (15, 56)
    assert c.f3 == 28
    assert c.f7 == 1
    assert c.fixed_blocks == 29
    assert c.admissible

    c = involution_census(7, 1)
    assert (c.fixed_points, c.two_orbits) == (63, 32)

    c = involution_census(7, 2)
    assert c.f7 == Fraction(393, 21)
    assert not c.admissible


def test_census_range_validation():
    with pytest.raises(ValueError):
        involution_census(7, 0)
    with pytest.raises(ValueError):
        involution_census(7, 4)


def test_census_identities():
    for v in range(3, 17):
        for s in range(1, v // 2 + 1):
            c = involution_census(v, s)
            assert c.fixed_points + 2 * c.two_orbits == 2**v - 1
            lhs = 3 * c.f3 + 21 * c.f7
            assert lhs == (2 ** (v - s) - 1) * (2 ** (v - s - 1) - 1)


def test_census_agrees_with_orbit_computation():
    for v in range(4, 9):
        for s in range(1, v // 2 + 1):
            c = involution_census(v, s)
            g = group_closure([involution_normal_form(v, s)])
            part = orbits(g, v, 1)
            assert len(fixed_subspaces(g, v, 1)) == c.fixed_points
            assert part.lengths.count(2) == c.two_orbits


def test_f7_integrality_equals_residue_table():
    for v in range(7, 32):
        if not steiner_triple_admissible(v):
            continue
        for s in range(1, v // 2 + 1):
            residue_zero = f7_residue_mod7(v, s) % 7 == 0
            assert involution_census(v, s).admissible == residue_zero


def test_residue_table_values():
    assert f7_residue_mod7(7, 3) == 0
    assert f7_residue_mod7(7, 1) == 1
    assert f7_residue_mod7(9, 2) == -1
    assert f7_residue_mod7(9, 3) == 0
    with pytest.raises(ValueError):
        f7_residue_mod7(8, 1)


def test_admissible_types_match_integrality():
    for v in range(7, 32):
        if not steiner_triple_admissible(v):
            continue
        expected = {
            s
            for s in range(1, v // 2 + 1)
            if involution_census(v, s).admissible
        }
        assert admissible_involution_types(v) == expected
    assert admissible_involution_types(7) == {3}
    assert admissible_involution_types(13) == {3, 6}
    assert admissible_involution_types(9) == {1, 3, 4}
    with pytest.raises(ValueError):
        admissible_involution_types(8)


SPREAD = [
    (0b0001, 0b0010),
    (0b0100, 0b1000),
    (0b0101, 0b1010),
    (0b0110, 0b1011),
    (0b0111, 0b1001),
]


def test_verify_design_accepts_a_line_spread():
    blocks = {span(pair, 4) for pair in SPREAD}
    assert len(blocks) == 5
    assert verify_design(blocks, DesignParams(1, 4, 2, 1))


def test_verify_design_rejects_wrong_lambda():
    blocks = set(enumerate_subspaces(7, 3))
    assert not verify_design(blocks, DesignParams(2, 7, 3, 1))
    assert verify_design(blocks, DesignParams(2, 7, 3, 31))


def test_verify_design_rejects_empty_and_bad_blocks():
    assert not verify_design(set(), DesignParams(2, 7, 3, 1))
    with pytest.raises(ValueError):
        verify_design({span([1], 7)}, DesignParams(2, 7, 3, 1))
    with pytest.raises(ValueError):
        verify_design(set(), DesignParams(2, 7, 3, 1, q=3))
