"""Floating-point reference values from the twisted S-matrix.

Independent of the folding algorithm in :mod:`twistfuse.fusion`: fusion
coefficients are evaluated as

    N_{i a}^b = sum_mu  conj(S^w_{b mu}) * (S_{i mu} / S_{0 mu}) * S^w_{a mu}

with ``S^w`` summed over the full group ``W_omega`` and the character ratio
summed over the weight system of ``i``.  The overall phase of ``S^w`` is
fixed to 1; it cancels in every product used here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .folding import (Automorphism, enumerate_B, enumerate_S, folded_weyl_group,
                      lattice_index)
from .rootdata import AlgebraError, AlgebraSpec, Weight, as_weight
from .weightsys import weight_system

DEFAULT_TOLERANCE = 1e-6
UNITARITY_TOLERANCE = 1e-9


class OracleError(ArithmeticError):
    """A numeric value failed to round to an integer within tolerance."""


@dataclass(frozen=True)
class TwistedSMatrix:
    rows: tuple[Weight, ...]  # B_k^+
    cols: tuple[Weight, ...]  # S_k^+
    entries: np.ndarray

    def unitarity_residual(self) -> float:
        S = self.entries
        return float(np.max(np.abs(S @ S.conj().T - np.eye(len(self.rows)))))


@dataclass(frozen=True)
class NumericCoeff:
    value: complex
    rounded: int
    residual: float


def _fsum_complex(values) -> complex:
    values = np.asarray(values)
    return complex(math.fsum(values.real), math.fsum(values.imag))


def _qform(spec: AlgebraSpec) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in spec.qform])


def s_entry(alpha: Sequence, nu: Sequence, k: int, aut: Automorphism) -> complex:
    """``S^w_{alpha, nu - rho}``: the sum evaluated at an arbitrary symmetric ``nu``."""
    spec = aut.spec
    h = k + spec.dual_coxeter
    W, signs = folded_weyl_group(aut)
    x = np.array([float(a + r) for a, r in zip(alpha, aut.rho_omega)])
    y = _qform(spec) @ np.array([float(v) for v in nu])
    phases = (W @ x) @ y
    terms = signs * np.exp(-2j * np.pi * phases / h)
    return _fsum_complex(terms) / math.sqrt(lattice_index(aut, h))


@lru_cache(maxsize=None)
def twisted_smatrix(k: int, aut: Automorphism) -> TwistedSMatrix:
    spec = aut.spec
    rows = tuple(enumerate_B(aut, k))
    cols = tuple(enumerate_S(aut, k))
    if len(rows) != len(cols):
        raise AlgebraError(f"|B| = {len(rows)} differs from |S| = {len(cols)}")
    h = k + spec.dual_coxeter
    W, signs = folded_weyl_group(aut)
    F = _qform(spec)
    X = np.array([[float(a + r) for a, r in zip(alpha, aut.rho_omega)] for alpha in rows])
    Y = np.array([[float(m + r) for m, r in zip(mu, spec.rho)] for mu in cols]) @ F
    # orbit[w, a, :] = w(alpha_a + rho_omega)
    orbit = np.einsum("wij,aj->wai", W, X)
    phases = np.einsum("wai,mi->wam", orbit, Y)
    terms = signs[:, None, None] * np.exp(-2j * np.pi * phases / h)
    S = np.empty((len(rows), len(cols)), dtype=complex)
    for a in range(len(rows)):
        for m in range(len(cols)):
            S[a, m] = _fsum_complex(terms[:, a, m])
    S /= math.sqrt(lattice_index(aut, h))
    return TwistedSMatrix(rows=rows, cols=cols, entries=S)


def character_ratio(i: Sequence, mu: Sequence, k: int, spec: AlgebraSpec) -> complex:
    """``S_{i mu} / S_{0 mu}`` as a character sum over the weights of ``i``."""
    return _character_row(as_weight(i), (as_weight(mu),), k, spec)[0]


def _character_row(i: tuple, mus: tuple, k: int, spec: AlgebraSpec) -> np.ndarray:
    h = k + spec.dual_coxeter
    ws = weight_system(i, spec)
    J = np.array([[float(x) for x in j] for j in ws.entries], dtype=float)
    mult = np.array(list(ws.entries.values()), dtype=float)
    Y = np.array([[float(m + r) for m, r in zip(mu, spec.rho)] for mu in mus]) @ _qform(spec)
    terms = mult[:, None] * np.exp(-2j * np.pi * (J @ Y.T) / h)
    return np.array([_fsum_complex(terms[:, c]) for c in range(len(mus))])


@lru_cache(maxsize=None)
def _characters(i: tuple, k: int, aut: Automorphism) -> np.ndarray:
    return _character_row(i, twisted_smatrix(k, aut).cols, k, aut.spec)


def fusion_numeric_matrix(i: Sequence, k: int, aut: Automorphism) -> np.ndarray:
    """Complex matrix ``V[b, a]`` of the Verlinde-type sum for all boundary pairs."""
    S = twisted_smatrix(k, aut).entries
    chi = _characters(as_weight(i), k, aut)
    n = S.shape[0]
    V = np.empty((n, n), dtype=complex)
    for b in range(n):
        for a in range(n):
            V[b, a] = _fsum_complex(S[b].conj() * chi * S[a])
    return V


def _round(value: complex) -> NumericCoeff:
    r = round(value.real)
    return NumericCoeff(value=value, rounded=int(r), residual=abs(value - r))


def fusion_numeric(i: Sequence, alpha: Sequence, beta: Sequence, k: int,
                   aut: Automorphism, tolerance: float = DEFAULT_TOLERANCE) -> NumericCoeff:
    """Oracle value of ``N_{i alpha}^beta``."""
    smat = twisted_smatrix(k, aut)
    pos = {b: n for n, b in enumerate(smat.rows)}
    alpha, beta = as_weight(alpha), as_weight(beta)
    if alpha not in pos or beta not in pos:
        raise AlgebraError(f"{alpha} or {beta} is not a boundary label at level {k}")
    S = smat.entries
    chi = _characters(as_weight(i), k, aut)
    value = _fsum_complex(S[pos[beta]].conj() * chi * S[pos[alpha]])
    coeff = _round(value)
    if coeff.residual >= tolerance:
        raise OracleError(f"N_{{{as_weight(i)},{alpha}}}^{beta} = {value} "
                          f"is not an integer within {tolerance}")
    return coeff
