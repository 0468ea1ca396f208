"""Acceptance suite.

Run ``pytest tests/test_acceptance.py`` (or ``python tests/test_acceptance.py``);
the terminal summary prints one PASS/FAIL line per criterion.
"""

import math
import sys
from fractions import Fraction

import numpy as np
import pytest

from twistfuse.folding import (enumerate_B, enumerate_P, enumerate_S, interior_B, interior_S,
                               named_automorphism, supported_automorphisms)
from twistfuse.fusion import fusion_tensor, nimrep, ordinary_fusion, twisted_fusion
from twistfuse.oracle import fusion_numeric, s_entry, twisted_smatrix
from twistfuse.rootdata import build_algebra, inner_product
from twistfuse.weightsys import weight_system, weyl_dimension

TOL = 1e-6
HYGIENE = 1e-9

SWEEP = [("A", 2, "flip", 3), ("A", 3, "flip", 3), ("A", 4, "flip", 2), ("A", 5, "flip", 2),
         ("D", 4, "flip", 2), ("D", 4, "triality", 2), ("D", 5, "flip", 2), ("E", 6, "flip", 2)]
SWEEP_CASES = [(s, r, n, k) for s, r, n, K in SWEEP for k in range(1, K + 1)]

TABLE = ([("A", r) for r in range(2, 9)] + [("D", r) for r in range(4, 9)] + [("E", 6)])
TABLE_AUTS = [(s, r, name) for s, r in TABLE
              for name in supported_automorphisms(build_algebra(s, r)) if name != "trivial"]


def aut_of(series, rank, name):
    return named_automorphism(build_algebra(series, rank), name)


def case_id(case):
    return "".join(str(x) for x in case[:2]) + "-" + "-".join(str(x) for x in case[2:])


def sweep(series, rank, name, k):
    """All triples ``(i, alpha, beta, folded, oracle)`` for one case."""
    a = aut_of(series, rank, name)
    B = enumerate_B(a, k)
    out = []
    for i in enumerate_P(a.spec, k):
        for alpha in B:
            got = twisted_fusion(i, alpha, k, a)
            for beta in B:
                out.append((i, alpha, beta, got.get(beta, 0),
                            fusion_numeric(i, alpha, beta, k, a, tolerance=TOL)))
    return out


_sweeps = {}


def cached_sweep(case):
    if case not in _sweeps:
        _sweeps[case] = sweep(*case)
    return _sweeps[case]


# 1. oracle equivalence

@pytest.mark.criterion(1)
@pytest.mark.parametrize("case", SWEEP_CASES, ids=case_id)
def test_oracle_equivalence(case):
    rows = cached_sweep(case)
    assert rows
    for i, alpha, beta, got, num in rows:
        assert num.residual < TOL, (i, alpha, beta, num.value)
        assert got == num.rounded, (i, alpha, beta, got, num.value)


# 2. non-negativity and integrality

@pytest.mark.criterion(2)
@pytest.mark.parametrize("case", SWEEP_CASES, ids=case_id)
def test_non_negative_integers(case):
    for i, alpha, beta, got, num in cached_sweep(case):
        assert isinstance(got, int) and got >= 0, (i, alpha, beta, got)
        assert num.rounded >= 0


# 3. NIM-rep homomorphism

HOMOMORPHISM = [("A", 2, "flip", k) for k in (1, 2, 3)] + [("A", 3, "flip", k) for k in (1, 2, 3)] \
    + [("D", 4, name, k) for name in ("flip", "triality") for k in (1, 2)]


@pytest.mark.criterion(3)
@pytest.mark.parametrize("case", HOMOMORPHISM, ids=case_id)
def test_nimrep_homomorphism(case):
    series, rank, name, k = case
    a = aut_of(series, rank, name)
    reps, T = fusion_tensor(k, a.spec)
    N = [nimrep(i, k, a).entries for i in reps]
    for x in range(len(reps)):
        for y in range(len(reps)):
            rhs = sum(T[x, y, z] * N[z] for z in range(len(reps)))
            assert np.array_equal(N[x] @ N[y], rhs), (reps[x], reps[y])


# 4. Kac-Walton reduction

@pytest.mark.criterion(4)
@pytest.mark.parametrize("case", [("A", 1, "trivial", k) for k in range(1, 7)]
                         + [("A", 2, "trivial", k) for k in (1, 2, 3)], ids=case_id)
def test_kac_walton_matches_verlinde(case):
    series, rank, _, k = case
    spec = build_algebra(series, rank)
    a = named_automorphism(spec, "trivial")
    P = enumerate_P(spec, k)
    assert enumerate_B(a, k) == P
    for i in P:
        for j in P:
            got = ordinary_fusion(i, j, k, spec)
            for m in P:
                num = fusion_numeric(i, j, m, k, a, tolerance=TOL)
                assert got.get(m, 0) == num.rounded, (i, j, m)


@pytest.mark.criterion(4)
def test_su2_truncation_pattern():
    a1 = build_algebra("A", 1)
    assert ordinary_fusion((1,), (1,), 1, a1) == {(0,): 1}
    assert ordinary_fusion((1,), (1,), 2, a1) == {(0,): 1, (2,): 1}
    assert ordinary_fusion((2,), (2,), 2, a1) == {(0,): 1}
    assert ordinary_fusion((1,), (2,), 2, a1) == {(1,): 1}


# 5. structural identities

@pytest.mark.criterion(5)
@pytest.mark.parametrize("entry", TABLE_AUTS, ids=lambda e: f"{e[0]}{e[1]}-{e[2]}")
def test_rho_pairings(entry):
    a = aut_of(*entry)
    spec = a.spec
    g = spec.dual_coxeter
    assert inner_product(spec.theta, spec.rho, spec) == g - 1
    assert inner_product(a.theta_omega, a.rho_omega, spec) == g - 1


@pytest.mark.criterion(5)
@pytest.mark.parametrize("case", SWEEP_CASES, ids=case_id)
def test_boundary_count_matches_symmetric_count(case):
    series, rank, name, k = case
    a = aut_of(series, rank, name)
    assert len(enumerate_B(a, k)) == len(enumerate_S(a, k))


@pytest.mark.criterion(5)
@pytest.mark.parametrize("entry", sorted({c[:3] for c in SWEEP_CASES}), ids=lambda e: f"{e[0]}{e[1]}-{e[2]}")
def test_rho_shift_is_interior(entry):
    a = aut_of(*entry)
    g = a.spec.dual_coxeter
    for k in range(4):
        shifted = {tuple(x + r for x, r in zip(b, a.rho_omega)) for b in enumerate_B(a, k)}
        assert shifted == set(interior_B(a, k + g)), k


@pytest.mark.criterion(5)
@pytest.mark.parametrize("case", SWEEP_CASES, ids=case_id)
def test_vacuum_is_identity(case):
    series, rank, name, k = case
    M = nimrep((0,) * rank, k, aut_of(series, rank, name))
    assert np.array_equal(M.entries, np.eye(M.dim, dtype=np.int64))


# 6. weight-system gate

def labels_up_to(rank, top):
    if rank == 0:
        yield ()
        return
    for head in range(top + 1):
        for rest in labels_up_to(rank - 1, top):
            yield (head,) + rest


@pytest.mark.criterion(6)
@pytest.mark.parametrize("alg", [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("D", 4)],
                         ids=lambda x: f"{x[0]}{x[1]}")
def test_weight_system_dimension(alg):
    spec = build_algebra(*alg)
    for lam in labels_up_to(spec.rank, 2):
        assert weight_system(lam, spec).dimension == weyl_dimension(lam, spec), lam


@pytest.mark.criterion(6)
@pytest.mark.parametrize("alg", [("A", 1), ("A", 4), ("B", 3), ("C", 3), ("D", 4), ("D", 5),
                                 ("G", 2), ("F", 4), ("E", 6)], ids=lambda x: f"{x[0]}{x[1]}")
def test_adjoint_zero_weight(alg):
    spec = build_algebra(*alg)
    ws = weight_system(spec.theta, spec)
    assert ws.entries[(0,) * spec.rank] == spec.rank
    assert ws.dimension == spec.dimension


# 7. numeric hygiene

@pytest.mark.criterion(7)
@pytest.mark.parametrize("case", SWEEP_CASES, ids=case_id)
def test_unitarity_and_imaginary_parts(case):
    series, rank, name, k = case
    assert twisted_smatrix(k, aut_of(series, rank, name)).unitarity_residual() < HYGIENE
    for i, alpha, beta, _, num in cached_sweep(case):
        assert abs(num.value.imag) < HYGIENE, (i, alpha, beta, num.value)


@pytest.mark.criterion(7)
@pytest.mark.parametrize("case", [c for c in SWEEP_CASES if c[3] <= 2], ids=case_id)
def test_boundary_vanishing(case):
    series, rank, name, k = case
    a = aut_of(series, rank, name)
    h = k + a.spec.dual_coxeter
    interior = set(interior_S(a, h))
    wall = [nu for nu in enumerate_S(a, h) if nu not in interior]
    assert wall
    for alpha in enumerate_B(a, k):
        for nu in wall:
            assert abs(s_entry(alpha, nu, k, a)) < HYGIENE, (alpha, nu)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
