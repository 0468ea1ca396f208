"""Twisted fusion rules by signed folding of projected weight systems.

``twisted_fusion(i, alpha)`` projects the weights of the module ``i`` onto
the symmetric subspace, shifts them by ``alpha + rho_omega``, folds into the
alcove at level ``k + g^vee`` and collects signed multiplicities of the
interior points, shifted back by ``rho_omega``.  With the trivial
automorphism this is the Kac-Walton algorithm.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .folding import (Automorphism, FoldingError, _folder, enumerate_B, enumerate_P,
                      in_B, in_P, named_automorphism)
from .rootdata import AlgebraError, AlgebraSpec, Weight, as_weight
from .weightsys import weight_system


class NegativeCoefficientError(ArithmeticError):
    """A fusion coefficient came out negative; never expected for correct data."""


@dataclass(frozen=True)
class NimRepMatrix:
    """``entries[b, a] = N_{i a}^b`` with rows and columns in ``index`` order."""

    rep: Weight
    index: tuple[Weight, ...]
    entries: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.index)


@lru_cache(maxsize=None)
def _projected(i: tuple, aut: Automorphism) -> tuple:
    """``N * P_omega(j)`` over the weight system of ``i``, with multiplicities."""
    acc = Counter()
    for j, m in weight_system(i, aut.spec).items():
        tot = [0] * len(j)
        cur = j
        for _ in range(aut.order):
            tot = [t + x for t, x in zip(tot, cur)]
            cur = aut.act(cur)
        acc[tuple(tot)] += m
    return tuple(acc.items())


def _check_rep(i: Sequence, spec: AlgebraSpec, k: int) -> tuple:
    i = as_weight(i)
    if not in_P(i, spec, k):
        raise AlgebraError(f"{i} is not an integrable weight of {spec.name} at level {k}")
    return i


def twisted_fusion(i: Sequence, alpha: Sequence, k: int, aut: Automorphism,
                   strict: bool = True) -> dict:
    """Coefficients ``{beta: N_{i alpha}^beta}`` of the product ``i * alpha``.

    Only non-zero coefficients are returned.  A negative total raises
    :class:`NegativeCoefficientError` unless ``strict`` is false, in which
    case it is returned as is for the caller to report.
    """
    spec = aut.spec
    i = _check_rep(i, spec, k)
    alpha = as_weight(alpha)
    if not in_B(alpha, aut, k):
        raise AlgebraError(f"{alpha} is not a boundary label of {spec.name} "
                           f"{aut.name} at level {k}")
    N = aut.order
    h = k + spec.dual_coxeter
    folder = _folder(aut, h)
    shift = [int(N * (a + r)) for a, r in zip(alpha, aut.rho_omega)]
    acc = Counter()
    for X, m in _projected(i, aut):
        Y, sign, boundary, _ = folder.fold([x + s for x, s in zip(X, shift)])
        if not boundary:
            acc[tuple(Y)] += sign * m
    out = {}
    for Y, c in acc.items():
        if not c:
            continue
        beta = as_weight(Fraction(y, N) - r for y, r in zip(Y, aut.rho_omega))
        if c < 0 and strict:
            raise NegativeCoefficientError(
                f"N_{{{i},{alpha}}}^{beta} = {c} for {spec.name} {aut.name} level {k}")
        out[beta] = c
    return dict(sorted(out.items()))


def nimrep(i: Sequence, k: int, aut: Automorphism, strict: bool = True) -> NimRepMatrix:
    """Annulus matrix of the representation ``i`` on the boundary labels."""
    index = tuple(enumerate_B(aut, k))
    pos = {b: n for n, b in enumerate(index)}
    M = np.zeros((len(index), len(index)), dtype=np.int64)
    for col, alpha in enumerate(index):
        for beta, c in twisted_fusion(i, alpha, k, aut, strict).items():
            if beta not in pos:
                raise FoldingError(f"folded label {beta} lies outside B_{k}^+")
            M[pos[beta], col] = c
    return NimRepMatrix(rep=as_weight(i), index=index, entries=M)


def ordinary_fusion(i: Sequence, j: Sequence, k: int, spec: AlgebraSpec) -> dict:
    """Kac-Walton fusion ``{l: N_{ij}^l}`` at level ``k``."""
    _check_rep(j, spec, k)
    return twisted_fusion(i, j, k, named_automorphism(spec, "trivial"))


def fusion_tensor(k: int, spec: AlgebraSpec) -> tuple[list, np.ndarray]:
    """All ordinary fusion coefficients, ``T[a, b, c] = N_{ab}^c`` over ``enumerate_P``."""
    reps = enumerate_P(spec, k)
    pos = {r: n for n, r in enumerate(reps)}
    T = np.zeros((len(reps),) * 3, dtype=np.int64)
    for a, i in enumerate(reps):
        for b, j in enumerate(reps):
            for l, c in ordinary_fusion(i, j, k, spec).items():
                T[a, b, pos[l]] = c
    return reps, T
