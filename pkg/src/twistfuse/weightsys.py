"""Weight systems of finite-dimensional irreducible modules.

Dominant multiplicities come from Freudenthal's recursion; the full multiset
is the union of Weyl orbits of the dominant weights.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .rootdata import AlgebraError, AlgebraSpec, Weight, inner_product


@dataclass(frozen=True)
class WeightSystem:
    highest: Weight
    entries: dict  # Weight -> multiplicity

    @property
    def dimension(self) -> int:
        return sum(self.entries.values())

    def __len__(self):
        return len(self.entries)

    def items(self):
        return self.entries.items()


def _check_dominant_integral(lam: Sequence, spec: AlgebraSpec) -> tuple[int, ...]:
    if len(lam) != spec.rank:
        raise AlgebraError(f"weight {tuple(lam)} does not match rank of {spec.name}")
    out = []
    for x in lam:
        f = Fraction(x)
        if f.denominator != 1 or f < 0:
            raise AlgebraError(f"{tuple(lam)} is not dominant integral")
        out.append(int(f))
    return tuple(out)


def dominant_representative(lam: Sequence, spec: AlgebraSpec) -> tuple[Weight, int]:
    """Reflect ``lam`` into the dominant chamber.

    Returns the dominant weight and the number of simple reflections used.
    """
    lam = list(lam)
    roots = spec.simple_roots
    steps = 0
    while True:
        i = next((j for j, x in enumerate(lam) if x < 0), None)
        if i is None:
            return tuple(lam), steps
        li = lam[i]
        lam = [x - li * a for x, a in zip(lam, roots[i])]
        steps += 1


def weyl_orbit(lam: Sequence, spec: AlgebraSpec) -> set:
    """Full orbit of ``lam`` under the finite Weyl group."""
    start = tuple(lam)
    seen = {start}
    queue = deque([start])
    roots = spec.simple_roots
    while queue:
        mu = queue.popleft()
        for i, mi in enumerate(mu):
            if mi == 0:
                continue
            nu = tuple(x - mi * a for x, a in zip(mu, roots[i]))
            if nu not in seen:
                seen.add(nu)
                queue.append(nu)
    return seen


def weyl_dimension(lam: Sequence, spec: AlgebraSpec) -> int:
    """Weyl dimension formula, prod over positive roots of (lam+rho, a)/(rho, a)."""
    lam = _check_dominant_integral(lam, spec)
    d = spec.root_halfnorms
    num = Fraction(1)
    for c in spec.positive_roots:
        # (mu, alpha) = sum_j c_j d_j mu_j for alpha = sum_j c_j alpha_j
        rho_a = sum(cj * dj for cj, dj in zip(c, d))
        lam_a = sum(cj * dj * lj for cj, dj, lj in zip(c, d, lam))
        num *= (lam_a + rho_a) / rho_a
    if num.denominator != 1:
        raise AlgebraError(f"non-integral Weyl dimension {num} for {lam}")
    return int(num)


def _dominant_weights(top: tuple[int, ...], spec: AlgebraSpec) -> dict:
    """Dominant weights below ``top`` mapped to their depth ``top - mu`` in Q_+.

    Ordered by increasing height of the depth vector.
    """
    roots = list(zip(spec.positive_roots_dynkin, spec.positive_roots))
    zero = (0,) * spec.rank
    seen = {top: zero}
    queue = deque([top])
    while queue:
        mu = queue.popleft()
        depth = seen[mu]
        for a, c in roots:
            nu = tuple(x - y for x, y in zip(mu, a))
            if min(nu) >= 0 and nu not in seen:
                seen[nu] = tuple(x + y for x, y in zip(depth, c))
                queue.append(nu)
    order = sorted(seen, key=lambda mu: (sum(seen[mu]), mu))
    return {mu: seen[mu] for mu in order}


@lru_cache(maxsize=None)
def _dominant_multiplicities(top: tuple[int, ...], spec: AlgebraSpec) -> dict:
    dominant = _dominant_weights(top, spec)
    rho = spec.rho
    # 6 clears every denominator of (alpha_i, alpha_i)/2
    d6 = [int(6 * x) for x in spec.root_halfnorms]
    top_rho = tuple(t + r for t, r in zip(top, rho))
    norm_top = inner_product(top_rho, top_rho, spec)
    mult = {top: 1}
    dom_cache: dict = {}

    def mult_of(mu):
        dom = dom_cache.get(mu)
        if dom is None:
            dom = dom_cache[mu] = dominant_representative(mu, spec)[0]
        return mult.get(dom, 0)

    roots = []
    for c, a in zip(spec.positive_roots, spec.positive_roots_dynkin):
        a_a = sum(cj * dj * aj for cj, dj, aj in zip(c, d6, a))
        roots.append((c, a, a_a))

    for lam, depth in dominant.items():
        if lam == top:
            continue
        lam_rho = tuple(x + r for x, r in zip(lam, rho))
        denom = norm_top - inner_product(lam_rho, lam_rho, spec)
        total = 0
        for c, a, a_a in roots:
            lam_a = sum(cj * dj * lj for cj, dj, lj in zip(c, d6, lam))
            mu = lam
            dep = depth
            k = 1
            while True:
                dep = tuple(x - y for x, y in zip(dep, c))
                # weights outside top - Q_+ carry multiplicity zero
                if min(dep) < 0:
                    break
                mu = tuple(x + y for x, y in zip(mu, a))
                m = mult_of(mu)
                if m:
                    total += m * (lam_a + k * a_a)
                k += 1
        m = Fraction(2 * total, 6) / denom
        if m.denominator != 1:
            raise AlgebraError(f"Freudenthal produced non-integral multiplicity {m}")
        if m:
            mult[lam] = int(m)
    return mult


@lru_cache(maxsize=None)
def _weight_system(top: tuple[int, ...], spec: AlgebraSpec) -> WeightSystem:
    entries = {}
    for dom, m in _dominant_multiplicities(top, spec).items():
        for mu in weyl_orbit(dom, spec):
            entries[mu] = m
    return WeightSystem(highest=top, entries=entries)


def weight_system(lam: Sequence, spec: AlgebraSpec) -> WeightSystem:
    """Weights with multiplicities of the irreducible module of highest weight ``lam``.

    Results are cached per ``(lam, spec)``; treat the returned mapping as
    read-only.
    """
    return _weight_system(_check_dominant_integral(lam, spec), spec)
