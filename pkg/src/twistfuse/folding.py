"""Diagram automorphisms and folding of weights.

An :class:`Automorphism` carries the node permutation together with the data
that the twisted setting needs: orbit lengths ``n_i``, the twisted highest
root ``theta_omega`` (tabulated, then checked) and the fractional Weyl vector
``rho_omega = sum_i Lambda_i / n_i``.

Symmetric weights are folded into the twisted alcove

    {x : x_i >= 0, (theta_omega, x) <= h}

by the generators of ``W_omega`` and the shifted reflection at
``(theta_omega, x) = h``.  Every reflection flips the sign.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

import numpy as np

from .rootdata import AlgebraError, AlgebraSpec, Weight, as_weight, inner_product

MAX_FOLD_STEPS = 10**6
MAX_GROUP_ORDER = 10**6

AUTOMORPHISM_NAMES = ("trivial", "flip", "triality", "triality2")


class FoldingError(RuntimeError):
    """Folding did not terminate or left the expected lattice."""


@dataclass(frozen=True, eq=False)
class Automorphism:
    spec: AlgebraSpec
    perm: tuple[int, ...]
    name: str
    order: int
    orbits: tuple[tuple[int, ...], ...]
    orbit_len: tuple[int, ...]
    theta_omega: Weight
    rho_omega: Weight

    def _key(self):
        return (self.spec, self.perm, self.theta_omega)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def representatives(self) -> tuple[int, ...]:
        """Smallest node of every orbit."""
        return tuple(o[0] for o in self.orbits)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def act(self, lam: Sequence) -> Weight:
        """``omega(Lambda_i) = Lambda_{omega i}``."""
        out = [None] * len(lam)
        for i, x in enumerate(lam):
            out[self.perm[i]] = x
        return tuple(out)

    def is_symmetric(self, lam: Sequence) -> bool:
        return all(lam[self.perm[i]] == lam[i] for i in range(len(lam)))


def _table_perms(spec: AlgebraSpec) -> dict:
    """Supported non-trivial permutations with their tabulated theta_omega."""
    n = spec.rank
    s = spec.series
    out = {}
    if s == "A" and n >= 2:
        perm = tuple(n - 1 - i for i in range(n))
        if n % 2 == 0:
            # A_{2m}: 2(Lambda_1 + Lambda_{2m})
            th = [0] * n
            th[0] = th[-1] = 2
        else:
            # A_{2m+1}: Lambda_2 + Lambda_{2m}  (2 Lambda_2 for A_3)
            th = [0] * n
            th[1] += 1
            th[n - 2] += 1
        out["flip"] = (perm, tuple(th))
    elif s == "D":
        perm = tuple(range(n - 2)) + (n - 1, n - 2)
        out["flip"] = (perm, (2,) + (0,) * (n - 1))
        if n == 4:
            # outer nodes 0, 2, 3 around the centre 1
            out["triality"] = ((2, 1, 3, 0), (1, 0, 1, 1))
            out["triality2"] = ((3, 1, 0, 2), (1, 0, 1, 1))
    elif s == "E" and n == 6:
        out["flip"] = ((4, 3, 2, 1, 0, 5), (1, 0, 0, 0, 1, 0))
    return out


def _orbits(perm: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    seen = set()
    orbits = []
    for i in range(len(perm)):
        if i in seen:
            continue
        orb = [i]
        j = perm[i]
        while j != i:
            orb.append(j)
            j = perm[j]
        seen.update(orb)
        orbits.append(tuple(orb))
    return tuple(orbits)


def _make(spec: AlgebraSpec, perm: tuple[int, ...], name: str, theta_omega) -> Automorphism:
    orbits = _orbits(perm)
    orbit_len = [0] * spec.rank
    for o in orbits:
        for j in o:
            orbit_len[j] = len(o)
    order = lcm(*orbit_len)
    aut = Automorphism(
        spec=spec,
        perm=perm,
        name=name,
        order=order,
        orbits=orbits,
        orbit_len=tuple(orbit_len),
        theta_omega=as_weight(theta_omega),
        rho_omega=as_weight(Fraction(1, m) for m in orbit_len),
    )
    validate_automorphism(aut)
    return aut


def validate_automorphism(aut: Automorphism) -> None:
    """Check the Cartan symmetry, symmetry of the tabulated vectors and
    ``(theta_omega, rho_omega) = g^vee - 1``."""
    spec = aut.spec
    A = spec.cartan
    p = aut.perm
    n = spec.rank
    if any(A[p[i]][p[j]] != A[i][j] for i in range(n) for j in range(n)):
        raise AlgebraError(f"{p} is not a symmetry of the {spec.name} Dynkin diagram")
    if not aut.is_symmetric(aut.theta_omega) or not aut.is_symmetric(aut.rho_omega):
        raise AlgebraError(f"theta_omega {aut.theta_omega} is not omega-symmetric")
    if inner_product(aut.theta_omega, aut.rho_omega, spec) != spec.dual_coxeter - 1:
        raise AlgebraError(f"(theta_omega, rho_omega) != g^vee - 1 for {spec.name} {aut.name}")


def diagram_automorphism(spec: AlgebraSpec, perm: Sequence[int]) -> Automorphism:
    """Automorphism for a node permutation (0-based images of 0..rank-1)."""
    perm = tuple(int(x) for x in perm)
    if sorted(perm) != list(range(spec.rank)):
        raise AlgebraError(f"{perm} is not a permutation of the {spec.name} nodes")
    A = spec.cartan
    if any(A[perm[i]][perm[j]] != A[i][j] for i in range(spec.rank) for j in range(spec.rank)):
        raise AlgebraError(f"{perm} is not a symmetry of the {spec.name} Dynkin diagram")
    if perm == tuple(range(spec.rank)):
        return _make(spec, perm, "trivial", spec.theta)
    for name, (p, th) in _table_perms(spec).items():
        if p == perm:
            return _make(spec, perm, name, th)
    raise AlgebraError(f"unsupported automorphism {perm} of {spec.name}")


def named_automorphism(spec: AlgebraSpec, name: str) -> Automorphism:
    if name == "trivial":
        return _make(spec, tuple(range(spec.rank)), "trivial", spec.theta)
    table = _table_perms(spec)
    if name not in table:
        raise AlgebraError(f"automorphism {name} not defined for {spec.name}")
    perm, th = table[name]
    return _make(spec, perm, name, th)


def supported_automorphisms(spec: AlgebraSpec) -> list[str]:
    return ["trivial"] + list(_table_perms(spec))


def project(lam: Sequence, aut: Automorphism) -> Weight:
    """Orthogonal projection ``(1 + omega + ... + omega^{N-1}) / N``."""
    total = [Fraction(0)] * len(lam)
    cur = tuple(lam)
    for _ in range(aut.order):
        total = [t + x for t, x in zip(total, cur)]
        cur = aut.act(cur)
    return as_weight(t / aut.order for t in total)


# ---------------------------------------------------------------- W_omega

@lru_cache(maxsize=None)
def _generators(aut: Automorphism):
    """Per orbit representative: (P alpha_i, Dynkin vector u_i, word in W).

    On symmetric weights the folded reflection is ``x -> x - x_i u_i``.
    """
    spec = aut.spec
    out = {}
    for orb in aut.orbits:
        i = orb[0]
        pa = project(spec.simple_roots[i], aut)
        coef = 2 * spec.root_halfnorms[i] / inner_product(pa, pa, spec)
        u = as_weight(coef * x for x in pa)
        if len(orb) == 1:
            word = (i,)
        elif len(orb) == 2 and spec.cartan[i][orb[1]] != 0:
            # adjacent middle pair of A_{2n}
            word = (i, orb[1], i)
        else:
            word = orb
        out[i] = (pa, u, word)
    return out


def folded_reflection(i: int, lam: Sequence, aut: Automorphism) -> Weight:
    """Folded simple reflection for the orbit with canonical representative ``i``."""
    if i not in aut.representatives:
        raise AlgebraError(f"node {i} is not a canonical orbit representative")
    if not aut.is_symmetric(lam):
        raise AlgebraError(f"{tuple(lam)} is not omega-symmetric")
    spec = aut.spec
    pa = _generators(aut)[i][0]
    c = 2 * inner_product(lam, pa, spec) / inner_product(pa, pa, spec)
    return as_weight(x - c * y for x, y in zip(lam, pa))


def generator_word(i: int, aut: Automorphism) -> tuple[int, ...]:
    """Word in simple reflections of W representing the folded generator."""
    return _generators(aut)[i][2]


def _reflection_matrix(i: int, spec: AlgebraSpec) -> np.ndarray:
    # s_i(x) = x - x_i alpha_i acting on Dynkin column vectors
    M = np.eye(spec.rank, dtype=np.int64)
    M[:, i] -= np.array(spec.simple_roots[i], dtype=np.int64)
    return M


@lru_cache(maxsize=None)
def folded_weyl_group(aut: Automorphism) -> tuple[np.ndarray, np.ndarray]:
    """All elements of ``W_omega`` as integer matrices, with their signs.

    The sign is ``(-1)^length`` in the folded generators, which differs from
    the restriction of the sign of ``W`` in general.
    """
    spec = aut.spec
    gens = []
    for i in aut.representatives:
        M = np.eye(spec.rank, dtype=np.int64)
        for j in generator_word(i, aut):
            M = _reflection_matrix(j, spec) @ M
        gens.append(M)
    ident = np.eye(spec.rank, dtype=np.int64)
    seen = {ident.tobytes(): 1}
    elems = [ident]
    signs = [1]
    queue = deque([(ident, 1)])
    while queue:
        g, sg = queue.popleft()
        for s in gens:
            h = s @ g
            key = h.tobytes()
            if key not in seen:
                seen[key] = -sg
                elems.append(h)
                signs.append(-sg)
                queue.append((h, -sg))
                if len(elems) > MAX_GROUP_ORDER:
                    raise FoldingError("W_omega closure exceeds size bound")
    return np.array(elems), np.array(signs, dtype=np.int64)


# ---------------------------------------------------------------- domains

def _check_level(k) -> None:
    if k < 0:
        raise AlgebraError(f"level must be non-negative, got {k}")


def _enumerate(steps: list, k, n: int) -> list[Weight]:
    """Points ``sum_o m_o step_o.vec`` with ``sum_o m_o step_o.cost <= k``.

    ``steps`` holds ``(nodes, value_per_unit, cost_per_unit)`` triples.
    """
    out = []

    def rec(idx, remaining, coords):
        if idx == len(steps):
            out.append(as_weight(coords))
            return
        nodes, unit, cost = steps[idx]
        m = 0
        while m * cost <= remaining:
            c = list(coords)
            for j in nodes:
                c[j] = m * unit
            rec(idx + 1, remaining - m * cost, c)
            m += 1

    rec(0, Fraction(k), [0] * n)
    return sorted(out)


def _pairing(vec: Weight, spec: AlgebraSpec) -> list[Fraction]:
    """``[(vec, Lambda_j) for j]``."""
    F = spec.qform
    n = spec.rank
    return [sum((vec[i] * F[i][j] for i in range(n)), Fraction(0)) for j in range(n)]


def enumerate_P(spec: AlgebraSpec, k: int) -> list[Weight]:
    """Integrable highest weights at level ``k``, lexicographic."""
    _check_level(k)
    t = _pairing(spec.theta, spec)
    return _enumerate([((j,), 1, t[j]) for j in range(spec.rank)], k, spec.rank)


def enumerate_S(aut: Automorphism, k: int) -> list[Weight]:
    """Symmetric integrable highest weights at level ``k``."""
    _check_level(k)
    t = _pairing(aut.spec.theta, aut.spec)
    steps = [(o, 1, sum(t[j] for j in o)) for o in aut.orbits]
    return _enumerate(steps, k, aut.spec.rank)


def enumerate_B(aut: Automorphism, k: int) -> list[Weight]:
    """Boundary labels (twisted highest weights) at level ``k``."""
    _check_level(k)
    t = _pairing(aut.theta_omega, aut.spec)
    steps = [(o, Fraction(1, len(o)), Fraction(sum(t[j] for j in o), len(o)))
             for o in aut.orbits]
    return _enumerate(steps, k, aut.spec.rank)


def in_P(lam: Sequence, spec: AlgebraSpec, k: int) -> bool:
    if len(lam) != spec.rank:
        return False
    if any(Fraction(x).denominator != 1 or x < 0 for x in lam):
        return False
    return inner_product(spec.theta, lam, spec) <= k


def in_B(beta: Sequence, aut: Automorphism, k: int) -> bool:
    if len(beta) != aut.spec.rank or not aut.is_symmetric(beta):
        return False
    for x, m in zip(beta, aut.orbit_len):
        mx = m * Fraction(x)
        if mx.denominator != 1 or mx < 0:
            return False
    return inner_product(aut.theta_omega, beta, aut.spec) <= k


def interior_B(aut: Automorphism, h: int) -> list[Weight]:
    """Elements of ``B_h^+`` off every wall."""
    return [b for b in enumerate_B(aut, h)
            if all(x > 0 for x in b) and inner_product(aut.theta_omega, b, aut.spec) < h]


def interior_S(aut: Automorphism, h: int) -> list[Weight]:
    spec = aut.spec
    return [s for s in enumerate_S(aut, h)
            if all(x > 0 for x in s) and inner_product(spec.theta, s, spec) < h]


def lattice_index(aut: Automorphism, h: int) -> int:
    """``|L_omega / h (L^vee)_omega|``.

    The orbit sums of simple coroots, written in the basis of orbit sums of
    fundamental weights, give an integer matrix whose determinant is the
    index at ``h = 1``.
    """
    if h < 1:
        raise AlgebraError(f"shifted level must be positive, got {h}")
    spec = aut.spec
    r = len(aut.orbits)
    M = []
    for orb in aut.orbits:
        c = [sum(spec.simple_coroots[j][m] for j in orb) for m in range(spec.rank)]
        M.append([c[o[0]] for o in aut.orbits])
    det = abs(_det(M))
    if det == 0:
        raise FoldingError("singular coroot matrix")
    if det.denominator != 1:
        raise FoldingError(f"non-integral lattice index {det}")
    return int(det) * h**r


def _det(M) -> Fraction:
    M = [[Fraction(x) for x in row] for row in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


# ---------------------------------------------------------------- folding

@dataclass(frozen=True)
class SignedFold:
    rep: Weight
    sign: int
    boundary: bool
    # generators applied in order; -1 stands for the shifted reflection
    word: tuple[int, ...] = ()


class _Folder:
    """Integer-scaled folding at shifted level ``h``.

    Points are stored as ``N * x`` with ``N`` the automorphism order, which
    keeps every element of the fractional symmetric lattice integral.
    """

    def __init__(self, aut: Automorphism, h: int):
        if h < 1:
            raise AlgebraError(f"shifted level must be positive, got {h}")
        spec = aut.spec
        self.aut = aut
        self.h = h
        self.N = aut.order
        gens = _generators(aut)
        self.reps = aut.representatives
        self.u = {}
        for i in self.reps:
            u = gens[i][1]
            if any(Fraction(x).denominator != 1 for x in u):
                raise FoldingError(f"non-integral folded root vector {u}")
            self.u[i] = tuple(int(x) for x in u)
        t = _pairing(aut.theta_omega, spec)
        self.D = lcm(*(x.denominator for x in t))
        self.T = tuple(int(x * self.D) for x in t)
        self.wall = self.N * self.D * h
        self.theta = tuple(int(x) for x in aut.theta_omega)
        # X -> X - (T.X - wall) * theta * 2 / (D (theta, theta))
        self.shift_den = self.D * inner_product(aut.theta_omega, aut.theta_omega, spec)

    def fold(self, X: list[int], record: bool = False):
        reps = self.reps
        u = self.u
        T = self.T
        sign = 1
        word = []
        for _ in range(MAX_FOLD_STEPS):
            low = 0
            which = None
            for i in reps:
                if X[i] < low:
                    low = X[i]
                    which = i
            if which is not None:
                ui = u[which]
                X = [x - low * a for x, a in zip(X, ui)]
                sign = -sign
                if record:
                    word.append(which)
                continue
            excess = sum(a * b for a, b in zip(T, X)) - self.wall
            if excess > 0:
                q = Fraction(2 * excess) / self.shift_den
                step = [q * t for t in self.theta]
                if any(s.denominator != 1 for s in step):
                    raise FoldingError("shifted reflection left the lattice")
                X = [x - int(s) for x, s in zip(X, step)]
                sign = -sign
                if record:
                    word.append(-1)
                continue
            boundary = any(X[i] == 0 for i in reps) or excess == 0
            return X, sign, boundary, tuple(word)
        raise FoldingError(f"folding did not terminate within {MAX_FOLD_STEPS} steps")


@lru_cache(maxsize=None)
def _folder(aut: Automorphism, h: int) -> _Folder:
    return _Folder(aut, h)


def fold_to_fundamental(lam: Sequence, h: int, aut: Automorphism,
                        record: bool = False) -> SignedFold:
    """Map a fractional symmetric weight into the closed alcove at level ``h``."""
    if len(lam) != aut.spec.rank or not aut.is_symmetric(lam):
        raise AlgebraError(f"{tuple(lam)} is not omega-symmetric")
    N = aut.order
    X = []
    for x, m in zip(lam, aut.orbit_len):
        if (m * Fraction(x)).denominator != 1:
            raise AlgebraError(f"{tuple(lam)} is not in the fractional symmetric lattice")
        X.append(int(Fraction(x) * N))
    X, sign, boundary, word = _folder(aut, h).fold(X, record)
    return SignedFold(as_weight(Fraction(x, N) for x in X), sign, boundary, word)


def unfold(rep: Sequence, word: Sequence[int], h: int, aut: Automorphism) -> Weight:
    """Undo a recorded fold by replaying its reflections in reverse."""
    x = tuple(rep)
    spec = aut.spec
    th = aut.theta_omega
    tt = inner_product(th, th, spec)
    for g in reversed(word):
        if g == -1:
            c = 2 * (inner_product(th, x, spec) - h) / tt
            x = as_weight(a - c * b for a, b in zip(x, th))
        else:
            x = folded_reflection(g, x, aut)
    return x
