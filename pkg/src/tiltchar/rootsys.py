"""Exact root-system data for the simple series A-G.

Weights are plain integer tuples in the fundamental-weight basis, so
``mu[i] == <mu, alpha_i^v>`` for the i-th simple coroot.  Every positive
root carries its coordinates in both the simple-root and simple-coroot
bases, which turns all pairings into integer dot products; no floating
point is used anywhere.

Positive roots are generated by height-graded closure from the simple
roots using root strings, so no per-type root tables are transcribed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import InvalidSpec, NotDominant, OrbitTooLarge, ResourceCap

Weight = tuple  # tuple[int, ...] in the fundamental-weight basis

DEFAULT_ORBIT_CAP = 10**7
DEFAULT_CONE_CAP = 4 * 10**6

_EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


@dataclass(frozen=True)
class RootSystemSpec:
    """A simple type: series letter and rank."""

    series: str
    rank: int

    def __post_init__(self):
        s, n = self.series, self.rank
        if s == "A":
            ok = n >= 1
        elif s in ("B", "C"):
            ok = n >= 2
        elif s == "D":
            if n == 3:
                raise InvalidSpec("D3 is rejected; use A3 (same Dynkin diagram)")
            ok = n >= 4
        elif s in _EXCEPTIONAL_RANKS:
            ok = n in _EXCEPTIONAL_RANKS[s]
        else:
            raise InvalidSpec(f"unknown series {s!r}")
        if not ok:
            raise InvalidSpec(f"rank {n} is not valid for series {s}")

    def __str__(self):
        return f"{self.series}{self.rank}"


class PositiveRoot(NamedTuple):
    root: Weight  # coordinates in the simple-root basis
    coroot: Weight  # coordinates in the simple-coroot basis
    fw: Weight  # coordinates in the fundamental-weight basis
    length: int  # half squared length, normalized so short roots give 1
    height: int


def cartan_matrix(spec: RootSystemSpec) -> tuple:
    """Cartan matrix with C[i][j] = <alpha_j, alpha_i^v>.

    Column j holds the fundamental-weight coordinates of alpha_j.
    Node numbering follows the standard convention for each series
    (for B the last node is short, for C the last node is long, for
    D the fork is at the last two nodes, for E node 2 hangs off node 4,
    for G the first node is short).
    """
    n = spec.rank
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, cij=-1, cji=-1):
        C[i][j] = cij
        C[j][i] = cji

    s = spec.series
    if s == "A":
        for i in range(n - 1):
            bond(i, i + 1)
    elif s == "B":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -1, -2)
    elif s == "C":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -2, -1)
    elif s == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif s == "E":
        bond(0, 2)
        for i in range(2, n - 1):
            bond(i, i + 1)
        bond(1, 3)
    elif s == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif s == "G":
        bond(0, 1, -3, -1)
    return tuple(tuple(row) for row in C)


def _symmetrizer(C, n):
    # d[i]*C[i][j] symmetric; propagate length ratios over the diagram.
    d = [None] * n
    d[0] = Fraction(1)
    queue = [0]
    while queue:
        i = queue.pop()
        for j in range(n):
            if i != j and C[i][j] != 0 and d[j] is None:
                d[j] = d[i] * C[i][j] / C[j][i]
                queue.append(j)
    lo = min(d)
    d = [x / lo for x in d]
    assert all(x.denominator == 1 for x in d)
    return tuple(int(x) for x in d)


def _generate_positive_roots(C, n):
    simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    rootset = set(simples)
    layer = list(simples)
    while layer:
        nxt = []
        for c in layer:
            for i in range(n):
                # alpha_i-string through c: q - r = <c, alpha_i^v>
                q = 0
                down = list(c)
                while True:
                    down[i] -= 1
                    if down[i] < 0 or tuple(down) not in rootset:
                        break
                    q += 1
                pair = sum(c[j] * C[i][j] for j in range(n))
                if q - pair > 0:
                    up = list(c)
                    up[i] += 1
                    up = tuple(up)
                    if up not in rootset:
                        rootset.add(up)
                        nxt.append(up)
        layer = nxt
    return rootset


def _invert_integer_matrix(C, n):
    # Exact inverse via Fractions; returns (det, adjugate) with
    # adjugate = det * C^{-1}, all integers.
    aug = [[Fraction(C[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
            det = -det
        det *= aug[col][col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    assert det.denominator == 1
    det_i = int(det)
    adj = tuple(
        tuple(int(aug[i][n + j] * det_i) for j in range(n)) for i in range(n)
    )
    assert all(isinstance(x, int) for row in adj for x in row)
    return det_i, adj


class RootDatum:
    """Immutable Cartan/root/coroot data for one simple type.

    Built once by :func:`build_root_datum`; all operations treat it as
    read-only, so it is safe for unlimited concurrent readers.  Equality
    and hashing compare series and rank only, since construction is
    deterministic.
    """

    def __init__(self, spec: RootSystemSpec):
        n = spec.rank
        self.spec = spec
        self.rank = n
        self.cartan = cartan_matrix(spec)
        self.symmetrizer = _symmetrizer(self.cartan, n)
        # column i of the Cartan matrix = fw coordinates of alpha_i;
        # simple reflection s_i subtracts mu[i] times this column.
        self.refl_cols = tuple(
            tuple(self.cartan[k][i] for k in range(n)) for i in range(n)
        )
        self.rho = (1,) * n

        roots = []
        for c in _generate_positive_roots(self.cartan, n):
            fw = tuple(sum(self.cartan[k][j] * c[j] for j in range(n)) for k in range(n))
            norm2 = sum(c[i] * self.symmetrizer[i] * fw[i] for i in range(n))
            assert norm2 % 2 == 0
            dalpha = norm2 // 2
            cc = []
            for i in range(n):
                num = c[i] * self.symmetrizer[i]
                assert num % dalpha == 0
                cc.append(num // dalpha)
            roots.append(
                PositiveRoot(c, tuple(cc), fw, dalpha, sum(c))
            )
        roots.sort(key=lambda r: (r.height, r.root))
        self.positive_roots = tuple(roots)

        heights = [r.height for r in roots]
        top = max(heights)
        assert heights.count(top) == 1
        self.highest_root = heights.index(top)
        self.coxeter_number = top + 1

        short = min(r.length for r in roots)
        dominant_short = [
            i for i, r in enumerate(roots)
            if r.length == short and min(r.fw) >= 0
        ]
        assert len(dominant_short) == 1
        self.highest_short_root = dominant_short[0]

        self.det, self.adjugate = _invert_integer_matrix(self.cartan, n)
        assert self.det > 0
        # column sums of the adjugate: scaled_height(v) = hvec . v
        self.hvec = tuple(
            sum(self.adjugate[i][k] for i in range(n)) for k in range(n)
        )

        perm = []
        for i in range(n):
            neg = tuple(-1 if k == i else 0 for k in range(n))
            dom, _ = to_dominant(self, neg)
            assert sum(dom) == 1 and set(dom) <= {0, 1}
            perm.append(dom.index(1))
        self.w0_perm = tuple(perm)
        assert sorted(perm) == list(range(n))
        assert all(perm[perm[i]] == i for i in range(n))

        self._cache = {}

    def __eq__(self, other):
        return isinstance(other, RootDatum) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"RootDatum({self.spec})"


def build_root_datum(spec: RootSystemSpec) -> RootDatum:
    """Construct the full root datum; raises InvalidSpec for bad ranks."""
    return RootDatum(spec)


def datum(series: str, rank: int) -> RootDatum:
    """Shorthand for build_root_datum(RootSystemSpec(series, rank))."""
    return build_root_datum(RootSystemSpec(series, rank))


def pairing(d: RootDatum, lam: Weight, alpha: int) -> int:
    """<lam, alpha^v> for the positive root with index alpha."""
    cc = d.positive_roots[alpha].coroot
    return sum(a * b for a, b in zip(cc, lam))


def reflect(d: RootDatum, mu: Weight, i: int) -> Weight:
    """Simple reflection s_i(mu) = mu - <mu, alpha_i^v> alpha_i."""
    c = mu[i]
    if c == 0:
        return mu
    col = d.refl_cols[i]
    return tuple(x - c * y for x, y in zip(mu, col))


def is_dominant(mu: Weight) -> bool:
    return min(mu) >= 0


def to_dominant(d: RootDatum, mu: Weight, dot: bool = False):
    """Dominant representative of mu under W (plain) or under the dot action.

    Plain mode returns ``(lam, 1)`` with lam the unique dominant conjugate.
    Dot mode returns ``(lam, det(w))`` with ``w . mu = lam`` when mu + rho
    is regular, and sign 0 when mu + rho is singular (meaning the
    straightened Weyl character vanishes).
    """
    n = d.rank
    if not dot:
        v = list(mu)
        while True:
            for i in range(n):
                if v[i] < 0:
                    c = v[i]
                    col = d.refl_cols[i]
                    for k in range(n):
                        v[k] -= c * col[k]
                    break
            else:
                return tuple(v), 1
    v = [x + 1 for x in mu]
    sign = 1
    while True:
        for i in range(n):
            if v[i] < 0:
                c = v[i]
                col = d.refl_cols[i]
                for k in range(n):
                    v[k] -= c * col[k]
                sign = -sign
                break
        else:
            break
    if 0 in v:
        return tuple(x - 1 for x in v), 0
    return tuple(x - 1 for x in v), sign


def minus_w0(d: RootDatum, lam: Weight) -> Weight:
    """-w0(lam), i.e. the highest weight of the dual module.

    -w0 permutes the fundamental weights, so on coordinates it is the
    permutation computed at construction time (valid for all weights,
    dominant or not, since it is a linear map).
    """
    out = [0] * d.rank
    for i, x in enumerate(lam):
        out[d.w0_perm[i]] = x
    return tuple(out)


def weyl_orbit(d: RootDatum, lam: Weight, cap: int = DEFAULT_ORBIT_CAP) -> list:
    """The full W-orbit of lam, deduplicated and lexicographically sorted."""
    start, _ = to_dominant(d, lam)
    seen = {start}
    stack = [start]
    n = d.rank
    while stack:
        mu = stack.pop()
        for i in range(n):
            if mu[i] > 0:
                nu = reflect(d, mu, i)
                if nu not in seen:
                    if len(seen) >= cap:
                        raise OrbitTooLarge(
                            f"orbit of {lam} exceeds cap {cap}"
                        )
                    seen.add(nu)
                    stack.append(nu)
    return sorted(seen)


def orbit_with_dets(d: RootDatum, tau: Weight, cap: int = DEFAULT_ORBIT_CAP):
    """[(w(tau), det(w))] for regular dominant tau, sorted by weight.

    Regularity makes w, and hence det(w), well defined per orbit element.
    """
    if min(tau) <= 0:
        raise NotDominant(f"{tau} is not regular dominant")
    seen = {tau: 1}
    stack = [tau]
    n = d.rank
    while stack:
        mu = stack.pop()
        s = seen[mu]
        for i in range(n):
            if mu[i] > 0:
                nu = reflect(d, mu, i)
                if nu not in seen:
                    if len(seen) >= cap:
                        raise OrbitTooLarge(f"orbit of {tau} exceeds cap {cap}")
                    seen[nu] = -s
                    stack.append(nu)
    return sorted(seen.items())


def root_lattice_coords(d: RootDatum, v: Weight):
    """Coordinates of v in the simple-root basis, or None if not in Q."""
    n = d.rank
    out = []
    for i in range(n):
        num = sum(d.adjugate[i][k] * v[k] for k in range(n))
        q, r = divmod(num, d.det)
        if r != 0:
            return None
        out.append(q)
    return tuple(out)


def dominance_leq(d: RootDatum, mu: Weight, lam: Weight) -> bool:
    """mu <= lam iff lam - mu is a non-negative integer sum of simple roots."""
    diff = tuple(a - b for a, b in zip(lam, mu))
    c = root_lattice_coords(d, diff)
    return c is not None and min(c) >= 0


def scaled_height(d: RootDatum, v: Weight) -> int:
    """det(C) times the sum of root-basis coordinates of v.

    A linear functional that is positive on positive roots; used to refine
    dominance order into a deterministic total order (ties broken lex).
    """
    return sum(a * b for a, b in zip(d.hvec, v))


def term_key(d: RootDatum, v: Weight):
    """Sort key for the canonical term order: (scaled height, lex)."""
    return (scaled_height(d, v), v)


def dominant_below(d: RootDatum, lam: Weight, cap: int = DEFAULT_CONE_CAP):
    """All dominant mu with lam - mu in the non-negative root lattice.

    Ordered by increasing height of lam - mu (so lam itself comes first),
    ties broken lexicographically.  Cached per datum.
    """
    if min(lam) < 0:
        raise NotDominant(f"{lam} is not dominant")
    cache = d._cache.setdefault("dominant_below", {})
    if lam in cache:
        return cache[lam]
    n = d.rank
    # mu dominant and lam - mu = sum c_i alpha_i with c_i >= 0 forces
    # c_i <= (root-basis coordinate i of lam), since dominant weights have
    # non-negative root-basis coordinates.
    bounds = []
    for i in range(n):
        num = sum(d.adjugate[i][k] * lam[k] for k in range(n))
        assert num >= 0
        bounds.append(num // d.det)
    size = 1
    for b in bounds:
        size *= b + 1
        if size > cap:
            raise ResourceCap(
                f"dominant cone below {lam} exceeds cap {cap}"
            )
    cols = d.refl_cols  # column i = fw coords of alpha_i
    found = []
    for c in itertools.product(*(range(b + 1) for b in bounds)):
        mu = list(lam)
        for i in range(n):
            ci = c[i]
            if ci:
                col = cols[i]
                for k in range(n):
                    mu[k] -= ci * col[k]
        if min(mu) >= 0:
            found.append((sum(c), tuple(mu)))
    found.sort()
    result = tuple(mu for _, mu in found)
    cache[lam] = result
    return result


_W_ORDER_E = {6: 51840, 7: 2903040, 8: 696729600}


def weyl_group_order(d: RootDatum) -> int:
    """|W| from the classical order formulas (independent of root generation)."""
    n = d.rank
    s = d.spec.series
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    if s == "A":
        return fact * (n + 1)
    if s in ("B", "C"):
        return fact * 2**n
    if s == "D":
        return fact * 2 ** (n - 1)
    if s == "E":
        return _W_ORDER_E[n]
    if s == "F":
        return 1152
    return 12  # G2


def weyl_group_matrices(d: RootDatum, cap: int = 10**6):
    """All elements of W as matrices on fw coordinates, with determinants.

    Brute-force closure from the simple reflections; intended for oracle
    tests at small rank.  Returns a list of (matrix, det) pairs where
    matrix rows act by ``apply_matrix``.
    """
    n = d.rank
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    gens = []
    for i in range(n):
        rows = []
        for k in range(n):
            row = [int(k == j) for j in range(n)]
            row[i] -= d.cartan[k][i]
            rows.append(tuple(row))
        gens.append(tuple(rows))
    elements = {ident: 1}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            s = elements[m]
            for g in gens:
                prod = tuple(
                    tuple(sum(g[i][k] * m[k][j] for k in range(n)) for j in range(n))
                    for i in range(n)
                )
                if prod not in elements:
                    if len(elements) >= cap:
                        raise OrbitTooLarge(f"Weyl group exceeds cap {cap}")
                    elements[prod] = -s
                    nxt.append(prod)
        frontier = nxt
    return list(elements.items())


def apply_matrix(m, mu: Weight) -> Weight:
    return tuple(sum(row[k] * mu[k] for k in range(len(mu))) for row in m)
