import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tiltchar.errors import (
    DatumMismatch,
    NotDivisible,
    NotDominant,
    NotWInvariant,
    TermNotRestricted,
)
from tiltchar import charring as ch
from tiltchar.rootsys import datum, pairing


A1 = datum("A", 1)
A2 = datum("A", 2)
B2 = datum("B", 2)
G2 = datum("G", 2)


def weyl_dimension_formula(d, lam):
    """Independent dimension oracle in exact rational arithmetic."""
    dim = Fraction(1)
    for i in range(len(d.positive_roots)):
        num = pairing(d, tuple(x + 1 for x in lam), i)
        den = pairing(d, d.rho, i)
        dim *= Fraction(num, den)
    assert dim.denominator == 1
    return int(dim)


def dominant_box(rank, top):
    import itertools

    return list(itertools.product(range(top + 1), repeat=rank))


# ---------------------------------------------------------------- ring ops

def test_add_examples():
    phi = ch.e(A1, (1,)) + ch.e(A1, (0,))
    assert phi + ch.zero(A1) == phi
    assert ch.e(A1, (1,)) + ch.scale(ch.e(A1, (1,)), -1) == ch.zero(A1)
    assert ch.orbit_sum(A1, (1,)) + ch.orbit_sum(A1, (0,)) == ch.FormalCharacter(
        A1, {(1,): 1, (0,): 1, (-1,): 1}
    )


def test_mul_examples():
    phi = ch.e(A1, (1,)) + ch.e(A1, (-1,))
    assert ch.char_mul(phi, ch.one(A1)) == phi
    sq = ch.char_mul(phi, phi)
    assert dict(sq.terms) == {(2,): 1, (0,): 2, (-2,): 1}
    # s(lam) * e(mu) translates the orbit
    s = ch.orbit_sum(A2, (1, 0))
    shifted = ch.char_mul(s, ch.e(A2, (2, 2)))
    assert dict(shifted.terms) == {
        tuple(a + b for a, b in zip(mu, (2, 2))): 1 for mu in s.terms
    }


def test_datum_mismatch():
    with pytest.raises(DatumMismatch):
        ch.char_add(ch.one(A1), ch.one(A2))
    with pytest.raises(DatumMismatch):
        ch.char_mul(ch.one(B2), ch.one(G2))


def test_twist_examples():
    phi = ch.e(A1, (1,)) + ch.e(A1, (-1,))
    assert ch.frobenius_twist(phi, 2, 0) == phi
    assert dict(ch.frobenius_twist(phi, 2, 1).terms) == {(2,): 1, (-2,): 1}


# ------------------------------------------------------------- characters

def test_orbit_sum_examples():
    assert ch.orbit_sum(A1, (0,)) == ch.one(A1)
    assert dict(ch.orbit_sum(A1, (4,)).terms) == {(4,): 1, (-4,): 1}
    assert len(ch.orbit_sum(A2, (1, 1)).terms) == 6
    with pytest.raises(NotDominant):
        ch.orbit_sum(A2, (-1, 0))


def test_weyl_character_a1():
    assert ch.weyl_character(A1, (0,)) == ch.one(A1)
    for m in range(1, 8):
        chi = ch.weyl_character(A1, (m,))
        assert dict(chi.terms) == {(k,): 1 for k in range(-m, m + 1, 2)}


def test_weyl_character_a2_adjoint():
    chi = ch.weyl_character(A2, (1, 1))
    assert chi.dimension() == 8
    assert chi.multiplicity((0, 0)) == 2
    assert chi.multiplicity((1, 1)) == 1


@pytest.mark.parametrize("d,top", [(A1, 8), (A2, 4), (B2, 4), (G2, 3)])
def test_weyl_dimension_formula(d, top):
    for lam in dominant_box(d.rank, top):
        assert ch.weyl_character(d, lam).dimension() == weyl_dimension_formula(d, lam)


@pytest.mark.parametrize("series,rank,lam,dim", [
    ("G", 2, (1, 0), 7), ("G", 2, (0, 1), 14), ("G", 2, (1, 1), 64),
    ("B", 3, (0, 0, 1), 8), ("B", 3, (1, 0, 0), 7), ("B", 3, (0, 1, 0), 21),
    ("C", 3, (1, 0, 0), 6), ("C", 3, (0, 1, 0), 14), ("C", 3, (0, 0, 1), 14),
    ("F", 4, (0, 0, 0, 1), 26), ("F", 4, (1, 0, 0, 0), 52),
    ("E", 6, (1, 0, 0, 0, 0, 0), 27), ("E", 6, (0, 1, 0, 0, 0, 0), 78),
    ("D", 4, (0, 1, 0, 0), 28), ("D", 4, (1, 0, 0, 0), 8),
    ("A", 3, (0, 1, 0), 6), ("B", 2, (0, 1), 4), ("C", 2, (1, 0), 4),
])
def test_classical_dimensions(series, rank, lam, dim):
    # textbook values for small fundamental-weight modules
    from tiltchar.rootsys import datum as mk

    assert ch.weyl_character(mk(series, rank), lam).dimension() == dim


@pytest.mark.parametrize("d,top", [(A1, 6), (A2, 3), (B2, 3), (G2, 2)])
def test_freudenthal_vs_alternating_oracle(d, top):
    for lam in dominant_box(d.rank, top):
        assert ch.weyl_character(d, lam) == ch.alternating_character_oracle(d, lam)


def test_straightened_examples():
    assert ch.weyl_character_straightened(A1, (2,)) == ch.weyl_character(A1, (2,))
    assert ch.weyl_character_straightened(A1, (-1,)) == ch.zero(A1)
    assert ch.weyl_character_straightened(A1, (-3,)) == ch.scale(
        ch.weyl_character(A1, (1,)), -1
    )


def test_s_r_examples():
    assert ch.s_r_character(A1, 2, 1, (1,)) == ch.orbit_sum(A1, (1,))
    sr = ch.s_r_character(A1, 2, 2, (3,))
    assert dict(sr.terms) == {(3,): 1, (1,): 1, (-1,): 1, (-3,): 1}
    assert ch.s_r_character(A2, 3, 2, (0, 0)) == ch.one(A2)
    # leading term has multiplicity 1
    sr2 = ch.s_r_character(B2, 2, 2, (3, 2))
    assert sr2.multiplicity((3, 2)) == 1


def test_steinberg_dimensions_rank_le2():
    for d in (A1, A2, B2, G2):
        npos = len(d.positive_roots)
        for p in (2, 3):
            for r in (1, 2):
                lam = tuple((p**r - 1) for _ in range(d.rank))
                assert ch.weyl_character(d, lam).dimension() == p ** (r * npos)


# ------------------------------------------------------------- expansions

def test_expand_orbit_sums_examples():
    assert ch.expand_in_orbit_sums(ch.orbit_sum(A2, (1, 1))) == {(1, 1): 1}
    assert ch.expand_in_orbit_sums(ch.weyl_character(A1, (2,))) == {(2,): 1, (0,): 1}
    assert ch.expand_in_orbit_sums(ch.zero(A1)) == {}


def test_expand_weyl_chars_examples():
    assert ch.expand_in_weyl_chars(ch.weyl_character(A2, (2, 1))) == {(2, 1): 1}
    assert ch.expand_in_weyl_chars(ch.orbit_sum(A1, (2,))) == {(2,): 1, (0,): -1}
    prod = ch.char_mul(ch.weyl_character(A1, (1,)), ch.orbit_sum(A1, (1,)))
    assert ch.expand_in_weyl_chars(prod) == {(2,): 1, (0,): 1}


def test_expand_rejects_non_invariant():
    with pytest.raises(NotWInvariant):
        ch.expand_in_orbit_sums(ch.e(A2, (1, 0)))
    with pytest.raises(NotWInvariant):
        ch.expand_in_weyl_chars(ch.e(A1, (2,)))


def test_expand_in_sr_examples():
    sr = ch.s_r_character(A1, 2, 2, (3,))
    assert ch.expand_in_sr(sr, 2, 2) == {(3,): 1}
    assert ch.expand_in_sr(ch.zero(A1), 2, 2) == {}
    # chi(3) = s_2(3) at p=2, so the expansion is a single carrier
    assert ch.expand_in_sr(ch.weyl_character(A1, (3,)), 2, 2) == {(3,): 1}
    with pytest.raises(TermNotRestricted):
        ch.expand_in_sr(ch.weyl_character(A1, (4,)), 2, 2)


def test_divide_exact_examples():
    st_char = ch.weyl_character(A1, (1,))
    assert ch.divide_exact(st_char, st_char) == ch.one(A1)
    sq = ch.char_mul(st_char, st_char)
    assert ch.divide_exact(sq, st_char) == st_char
    with pytest.raises(NotDivisible):
        ch.divide_exact(ch.e(A1, (1,)) + ch.e(A1, (0,)), st_char)
    with pytest.raises(ZeroDivisionError):
        ch.divide_exact(st_char, ch.zero(A1))


# ------------------------------------------------------- property testing

def weights(rank, lo=-4, hi=4):
    return st.tuples(*(st.integers(lo, hi) for _ in range(rank)))


def sparse_chars(d, max_terms=5):
    return st.dictionaries(
        weights(d.rank), st.integers(-9, 9).filter(bool), max_size=max_terms
    ).map(lambda t: ch.FormalCharacter(d, t))


@given(sparse_chars(A2), sparse_chars(A2), sparse_chars(A2))
@settings(max_examples=60, deadline=None)
def test_ring_laws_a2(a, b, c):
    assert ch.char_add(a, b) == ch.char_add(b, a)
    assert ch.char_mul(a, b) == ch.char_mul(b, a)
    assert ch.char_add(ch.char_add(a, b), c) == ch.char_add(a, ch.char_add(b, c))
    assert ch.char_mul(ch.char_mul(a, b), c) == ch.char_mul(a, ch.char_mul(b, c))
    assert ch.char_mul(a, ch.char_add(b, c)) == ch.char_add(
        ch.char_mul(a, b), ch.char_mul(a, c)
    )
    assert ch.char_mul(a, ch.one(A2)) == a


@given(sparse_chars(B2), sparse_chars(B2), st.sampled_from([2, 3, 5]), st.integers(0, 2))
@settings(max_examples=40, deadline=None)
def test_twist_is_ring_hom(a, b, p, j):
    tw = lambda x: ch.frobenius_twist(x, p, j)
    assert tw(ch.char_mul(a, b)) == ch.char_mul(tw(a), tw(b))
    assert tw(ch.char_add(a, b)) == ch.char_add(tw(a), tw(b))


def dominant_weights(rank, hi=3):
    return st.tuples(*(st.integers(0, hi) for _ in range(rank)))


def invariant_chars(d, hi=3, max_terms=4):
    return st.dictionaries(
        dominant_weights(d.rank, hi),
        st.integers(-5, 5).filter(bool),
        min_size=0,
        max_size=max_terms,
    ).map(
        lambda coeffs: _assemble_orbit_combo(d, coeffs)
    )


def _assemble_orbit_combo(d, coeffs):
    phi = ch.zero(d)
    for nu, c in coeffs.items():
        phi = ch.char_add(phi, ch.scale(ch.orbit_sum(d, nu), c))
    return phi


@given(invariant_chars(B2))
@settings(max_examples=50, deadline=None)
def test_orbit_expansion_roundtrip_b2(phi):
    coeffs = ch.expand_in_orbit_sums(phi)
    back = _assemble_orbit_combo(B2, coeffs)
    assert back == phi


@given(invariant_chars(G2, hi=2, max_terms=3))
@settings(max_examples=40, deadline=None)
def test_weyl_expansion_roundtrip_g2(phi):
    coeffs = ch.expand_in_weyl_chars(phi)
    back = ch.zero(G2)
    for nu, c in coeffs.items():
        back = ch.char_add(back, ch.scale(ch.weyl_character(G2, nu), c))
    assert back == phi
    assert coeffs == ch.expand_in_weyl_chars_subtractive(phi)


@given(invariant_chars(A2, hi=2, max_terms=3))
@settings(max_examples=40, deadline=None)
def test_twist_preserves_w_invariance(phi):
    assert ch.frobenius_twist(phi, 2, 1).is_w_invariant()


@given(st.dictionaries(dominant_weights(1, 3), st.integers(-4, 4).filter(bool), max_size=3))
@settings(max_examples=40, deadline=None)
def test_sr_expansion_roundtrip_a1(coeffs):
    p, r = 2, 2
    phi = ch.zero(A1)
    for nu, c in coeffs.items():
        phi = ch.char_add(phi, ch.scale(ch.s_r_character(A1, p, r, nu), c))
    got = ch.expand_in_sr(phi, p, r)
    assert got == {nu: c for nu, c in coeffs.items()}


# ------------------------------------------------------------------- JSON

def test_json_round_trip():
    phi = ch.char_mul(ch.weyl_character(A2, (1, 1)), ch.orbit_sum(A2, (1, 0)))
    blob = json.dumps(phi.to_json_dict())
    back = ch.from_json_dict(json.loads(blob))
    assert back == phi
    assert json.dumps(back.to_json_dict()) == blob


def test_json_shape():
    obj = ch.orbit_sum(A2, (1, 0)).to_json_dict()
    assert obj["type"] == "A" and obj["rank"] == 2
    assert obj["terms"] == [
        {"w": [-1, 1], "m": 1},
        {"w": [0, -1], "m": 1},
        {"w": [1, 0], "m": 1},
    ]
    with pytest.raises(ValueError):
        ch.from_json_dict({"type": "A", "rank": 1, "terms": [{"w": [1], "m": 0}]})
