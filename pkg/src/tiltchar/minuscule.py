"""Weight classification: restricted, minuscule and digit-wise variants.

A dominant weight is minuscule when all its root pairings lie in
{-1, 0, 1} (equivalently, the weights of its Weyl module form a single
W-orbit), and p-minuscule when its pairing with the highest short
coroot is at most p.  The digit-wise classes apply these tests to the
coordinate-wise base-p digits of a restricted weight.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotDominant, NotPMinuscule, NotRestricted
from .rootsys import RootDatum, Weight, pairing, weyl_orbit
from . import charring


@dataclass(frozen=True)
class MinusculeProfile:
    """Full classification report for one (weight, p, r)."""

    weight: Weight
    p: int
    r: int
    digits: tuple  # r weights, empty when not restricted
    restricted: bool
    minuscule: bool
    p_minuscule: bool
    r_minuscule: bool
    pr_minuscule: bool

    def to_json_dict(self):
        return {
            "weight": list(self.weight),
            "p": self.p,
            "r": self.r,
            "digits": [list(dig) for dig in self.digits],
            "flags": {
                "restricted": self.restricted,
                "minuscule": self.minuscule,
                "p_minuscule": self.p_minuscule,
                "r_minuscule": self.r_minuscule,
                "pr_minuscule": self.pr_minuscule,
            },
        }


def _require_dominant(lam):
    if min(lam) < 0:
        raise NotDominant(f"{lam} is not dominant")


def is_restricted(d: RootDatum, lam, p: int, r: int) -> bool:
    """lam in X_r(T): dominant with all simple pairings < p^r."""
    lam = tuple(lam)
    _require_dominant(lam)
    bound = p**r
    return all(x < bound for x in lam)


def p_digits(d: RootDatum, lam, p: int, r: int):
    """The r coordinate-wise base-p digits of a restricted weight.

    The unique decomposition lam = sum_j p^j lam^j with every digit in
    X_1(T); digit j is returned at index j.
    """
    lam = tuple(lam)
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")
    if not is_restricted(d, lam, p, r):
        raise NotRestricted(f"{lam} is not restricted for p={p}, r={r}")
    digits = []
    rest = lam
    for _ in range(r):
        digits.append(tuple(x % p for x in rest))
        rest = tuple(x // p for x in rest)
    assert all(x == 0 for x in rest)
    return digits


def is_minuscule(d: RootDatum, lam, cross_check: bool = False) -> bool:
    """All root pairings of lam lie in {-1, 0, 1}.

    With cross_check=True also confirms the orbit criterion: the weights
    of the Weyl module of lam form a single W-orbit.
    """
    lam = tuple(lam)
    _require_dominant(lam)
    by_pairing = all(
        pairing(d, lam, i) <= 1 for i in range(len(d.positive_roots))
    )
    if cross_check:
        support = set(charring.weyl_character(d, lam).terms)
        by_orbit = support == set(weyl_orbit(d, lam))
        assert by_pairing == by_orbit, (lam, by_pairing, by_orbit)
    return by_pairing


def is_p_minuscule(d: RootDatum, lam, p: int) -> bool:
    """Pairing with the highest short coroot is at most p."""
    lam = tuple(lam)
    _require_dominant(lam)
    return pairing(d, lam, d.highest_short_root) <= p


def is_pr_minuscule(d: RootDatum, lam, p: int, r: int) -> bool:
    """Restricted with every base-p digit p-minuscule."""
    lam = tuple(lam)
    _require_dominant(lam)
    if not is_restricted(d, lam, p, r):
        return False
    return all(is_p_minuscule(d, dig, p) for dig in p_digits(d, lam, p, r))


def is_r_minuscule(d: RootDatum, lam, p: int, r: int) -> bool:
    """Restricted with every base-p digit minuscule."""
    lam = tuple(lam)
    _require_dominant(lam)
    if not is_restricted(d, lam, p, r):
        return False
    return all(is_minuscule(d, dig) for dig in p_digits(d, lam, p, r))


def classify(d: RootDatum, lam, p: int, r: int) -> MinusculeProfile:
    lam = tuple(lam)
    _require_dominant(lam)
    restricted = is_restricted(d, lam, p, r)
    digits = tuple(p_digits(d, lam, p, r)) if restricted else ()
    return MinusculeProfile(
        weight=lam,
        p=p,
        r=r,
        digits=digits,
        restricted=restricted,
        minuscule=is_minuscule(d, lam),
        p_minuscule=is_p_minuscule(d, lam, p),
        r_minuscule=restricted and all(is_minuscule(d, dig) for dig in digits),
        pr_minuscule=restricted and all(is_p_minuscule(d, dig, p) for dig in digits),
    )


CLASS_NAMES = ("minuscule", "p_minuscule_restricted", "pr_minuscule")


def enumerate_class(d: RootDatum, p: int, r: int, cls: str):
    """Complete lex-ordered list of the dominant weights in a finite class.

    minuscule weights have all coordinates at most 1, and restricted
    classes live in the box of coordinates below p (resp. p^r), so a box
    scan with the defining filter is exhaustive.
    """
    n = d.rank
    if cls == "minuscule":
        box = itertools.product(range(2), repeat=n)
        return [lam for lam in box if is_minuscule(d, lam)]
    if cls == "p_minuscule_restricted":
        box = itertools.product(range(p), repeat=n)
        return [lam for lam in box if is_p_minuscule(d, lam, p)]
    if cls == "pr_minuscule":
        box = itertools.product(range(p**r), repeat=n)
        return [lam for lam in box if is_pr_minuscule(d, lam, p, r)]
    raise ValueError(f"unknown class {cls!r}; expected one of {CLASS_NAMES}")


def lemma2_check(d: RootDatum, lam, p: int):
    """Whether p*rho + mu is dominant for every weight mu of the Weyl module.

    Only claimed for p-minuscule lam; returns (True, None) on success and
    (False, violating mu) otherwise.
    """
    lam = tuple(lam)
    _require_dominant(lam)
    if not is_p_minuscule(d, lam, p):
        raise NotPMinuscule(f"{lam} is not p-minuscule for p={p}")
    for mu in sorted(charring.weyl_character(d, lam).terms):
        shifted = tuple(p + x for x in mu)
        if min(shifted) < 0:
            return False, mu
    return True, None
