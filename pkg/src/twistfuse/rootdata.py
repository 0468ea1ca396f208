"""Exact structural data for the simple Lie algebras A_n ... G_2.

Weights are tuples of exact rationals in the fundamental-weight (Dynkin)
basis.  Integral weights may be stored as plain ``int`` tuples; since
``Fraction(n) == n`` and they hash alike, both forms are interchangeable as
dict keys.

Node numbering follows Kac, *Infinite dimensional Lie algebras*, Table Fin
(p. 53), shifted to 0-based indices in code.  In particular:

* ``B_n``: node ``n-1`` is the short root; ``C_n``: node ``n-1`` is long.
* ``D_n``: chain ``0 .. n-3``, nodes ``n-2`` and ``n-1`` both attached to
  ``n-3``.
* ``E_r``: chain ``0 .. r-2``, node ``r-1`` attached to node ``2``.
* ``F_4``: nodes 0, 1 long; ``G_2``: node 0 long.

Cartan matrices use Kac's convention ``A[i][j] = <alpha_i^vee, alpha_j>`` so
that simple root ``alpha_j`` has Dynkin labels ``A[:, j]``.  Long roots have
squared length 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Weight = tuple  # tuple[Fraction | int, ...]

SERIES = "ABCDEFG"

# highest root, Dynkin labels in the numbering above
_THETA = {
    "A": lambda n: (2,) if n == 1 else (1,) + (0,) * (n - 2) + (1,),
    "B": lambda n: (0, 2) if n == 2 else (0, 1) + (0,) * (n - 2),
    "C": lambda n: (2,) + (0,) * (n - 1),
    "D": lambda n: (0, 1, 1) if n == 3 else (0, 1) + (0,) * (n - 2),
    "E": lambda n: {6: (0, 0, 0, 0, 0, 1), 7: (1, 0, 0, 0, 0, 0, 0),
                    8: (0, 0, 0, 0, 0, 0, 1, 0)}[n],
    "F": lambda n: (1, 0, 0, 0),
    "G": lambda n: (1, 0),
}

_DUAL_COXETER = {
    "A": lambda n: n + 1,
    "B": lambda n: 2 * n - 1,
    "C": lambda n: n + 1,
    "D": lambda n: 2 * n - 2,
    "E": lambda n: {6: 12, 7: 18, 8: 30}[n],
    "F": lambda n: 9,
    "G": lambda n: 4,
}

_DIMENSION = {
    "A": lambda n: n * (n + 2),
    "B": lambda n: n * (2 * n + 1),
    "C": lambda n: n * (2 * n + 1),
    "D": lambda n: n * (2 * n - 1),
    "E": lambda n: {6: 78, 7: 133, 8: 248}[n],
    "F": lambda n: 52,
    "G": lambda n: 14,
}


class AlgebraError(ValueError):
    """Invalid algebra data or an argument outside the algebra's weight space."""


def as_weight(coords: Iterable) -> Weight:
    """Normalize a coordinate sequence to a tuple of exact rationals."""
    out = []
    for c in coords:
        if isinstance(c, float):
            raise AlgebraError(f"floating point coordinate {c!r} not allowed")
        f = Fraction(c)
        out.append(f.numerator if f.denominator == 1 else f)
    return tuple(out)


def _cartan(series: str, n: int) -> list[list[int]]:
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        A[i][j] = aij
        A[j][i] = aji

    if series in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if series == "B":
            link(n - 2, n - 1, -1, -2)
        elif series == "C":
            link(n - 2, n - 1, -2, -1)
    elif series == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif series == "E":
        for i in range(n - 2):
            link(i, i + 1)
        link(2, n - 1)
    elif series == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif series == "G":
        link(0, 1, -1, -3)
    return A


def _validate_type(series: str, rank: int) -> None:
    if series not in SERIES:
        raise AlgebraError(f"unknown series {series!r}")
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[series]
    if not ok:
        raise AlgebraError(f"no simple Lie algebra {series}{rank}")


def _symmetrizer(A: list[list[int]]) -> list[Fraction]:
    # d_i a_ij = d_j a_ji, propagated along the (connected) diagram
    n = len(A)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and A[i][j] != 0 and d[j] is None:
                d[j] = d[i] * A[i][j] / A[j][i]
                stack.append(j)
    top = max(d)
    return [x / top for x in d]


def _inverse(M: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _positive_roots(A: list[list[int]]) -> list[tuple[int, ...]]:
    """Positive roots in the simple-root basis, by increasing height."""
    n = len(A)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = list(simple)
    known = set(roots)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            labels = [sum(A[m][j] * beta[j] for j in range(n)) for m in range(n)]
            for i in range(n):
                # alpha_i string through beta: p - q = <beta, alpha_i^vee>
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in known:
                        p += 1
                    else:
                        break
                if p - labels[i] > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in known:
                        known.add(up)
                        nxt.append(up)
        roots.extend(nxt)
        layer = nxt
    return roots


@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    """Immutable root data of one simple Lie algebra.

    Equality and hashing go through ``(series, rank)``, which determines
    everything else.
    """

    series: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    qform: tuple[tuple[Fraction, ...], ...]
    simple_roots: tuple[Weight, ...]
    simple_coroots: tuple[Weight, ...]
    theta: Weight
    rho: Weight
    dual_coxeter: int
    # squared half-lengths (alpha_i, alpha_i)/2
    root_halfnorms: tuple[Fraction, ...] = field(repr=False)
    # positive roots: simple-root coefficients and Dynkin labels
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)
    positive_roots_dynkin: tuple[Weight, ...] = field(repr=False)
    # inverse Cartan matrix: Dynkin labels -> simple-root coefficients
    cartan_inverse: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return (self.series, self.rank) == (other.series, other.rank)

    def __hash__(self):
        return hash((self.series, self.rank))

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def dimension(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    def to_root_basis(self, lam: Sequence) -> tuple[Fraction, ...]:
        """Coefficients of ``lam`` in the simple-root basis."""
        return tuple(sum((Ainv_ij * x for Ainv_ij, x in zip(row, lam)), Fraction(0))
                     for row in self.cartan_inverse)


def build_algebra(series: str, rank: int) -> AlgebraSpec:
    """Construct and validate the root data of ``series``\\ ``rank``."""
    return _build_algebra(str(series).upper(), int(rank))


@lru_cache(maxsize=None)
def _build_algebra(series: str, rank: int) -> AlgebraSpec:
    _validate_type(series, rank)
    n = rank
    A = _cartan(series, n)
    d = _symmetrizer(A)
    Ainv = _inverse([[Fraction(x) for x in row] for row in A])
    # F A = D  =>  F = D A^{-1}
    F = [[d[i] * Ainv[i][j] for j in range(n)] for i in range(n)]

    simple_roots = tuple(as_weight(A[m][j] for m in range(n)) for j in range(n))
    simple_coroots = tuple(as_weight(x / d[j] for x in simple_roots[j]) for j in range(n))

    pos = _positive_roots(A)
    if len(pos) != (_DIMENSION[series](n) - n) // 2:
        raise AlgebraError(f"{series}{n}: found {len(pos)} positive roots")
    pos_dynkin = tuple(as_weight(sum(A[m][j] * c[j] for j in range(n)) for m in range(n))
                       for c in pos)

    theta = as_weight(_THETA[series](n))
    if pos_dynkin[-1] != theta:
        raise AlgebraError(f"{series}{n}: tabulated highest root {theta} "
                           f"differs from computed {pos_dynkin[-1]}")
    rho = (1,) * n

    spec = AlgebraSpec(
        series=series,
        rank=n,
        cartan=tuple(tuple(r) for r in A),
        qform=tuple(tuple(r) for r in F),
        simple_roots=simple_roots,
        simple_coroots=simple_coroots,
        theta=theta,
        rho=rho,
        dual_coxeter=_DUAL_COXETER[series](n),
        root_halfnorms=tuple(d),
        positive_roots=tuple(pos),
        positive_roots_dynkin=pos_dynkin,
        cartan_inverse=tuple(tuple(r) for r in Ainv),
    )
    if any(F[i][j] != F[j][i] for i in range(n) for j in range(n)):
        raise AlgebraError(f"{spec.name}: quadratic form not symmetric")
    if inner_product(theta, theta, spec) != 2:
        raise AlgebraError(f"{spec.name}: (theta, theta) != 2")
    if inner_product(theta, rho, spec) != spec.dual_coxeter - 1:
        raise AlgebraError(f"{spec.name}: (theta, rho) != g^vee - 1")
    return spec


def parse_algebra(name: str) -> AlgebraSpec:
    """``"A2"`` -> ``build_algebra("A", 2)``."""
    name = name.strip()
    if len(name) < 2 or not name[1:].isdigit():
        raise AlgebraError(f"cannot parse algebra name {name!r}")
    return build_algebra(name[0], int(name[1:]))


def _check_dim(x: Sequence, spec: AlgebraSpec) -> None:
    if len(x) != spec.rank:
        raise AlgebraError(f"weight {tuple(x)} has length {len(x)}, "
                           f"{spec.name} has rank {spec.rank}")


def inner_product(a: Sequence, b: Sequence, spec: AlgebraSpec) -> Fraction:
    _check_dim(a, spec)
    _check_dim(b, spec)
    F = spec.qform
    return sum((a[i] * F[i][j] * b[j]
                for i in range(spec.rank) if a[i]
                for j in range(spec.rank) if b[j]), Fraction(0))


def simple_reflection(i: int, lam: Sequence, spec: AlgebraSpec) -> Weight:
    """``s_i(lam) = lam - lam_i alpha_i`` (0-based node ``i``)."""
    if not 0 <= i < spec.rank:
        raise AlgebraError(f"node index {i} out of range for {spec.name}")
    _check_dim(lam, spec)
    li = lam[i]
    if li == 0:
        return tuple(lam)
    return tuple(x - li * a for x, a in zip(lam, spec.simple_roots[i]))


def level(lam: Sequence, spec: AlgebraSpec) -> Fraction:
    """``(theta, lam)``."""
    return inner_product(spec.theta, lam, spec)
