"""Shared fixtures: standard braidings, fields, and small math oracles."""

from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest

from braidrank import GF, RATIONALS, Matrix, make_diagonal, make_flip

F2 = GF(2)
F3 = GF(3)
F7 = GF(7)
F13 = GF(13)

# 2 has order 3 in F_7*, 5 has order 4 in F_13*
ORDER3_F7 = 2
ORDER4_F13 = 5


def diagonal_space(field, qgrid):
    return make_diagonal(field, Matrix.from_scalars(field, qgrid))


def witt(n: int, d: int) -> int:
    """Free Lie algebra dimension via the Witt formula (necklace count)."""
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += moebius(e) * n ** (d // e)
    assert total % d == 0
    return total // d


def moebius(m: int) -> int:
    if m == 1:
        return 1
    out = 1
    k = 2
    while k * k <= m:
        if m % k == 0:
            m //= k
            if m % k == 0:
                return 0
            out = -out
        k += 1
    if m > 1:
        out = -out
    return out


def sym_dim(n: int, d: int) -> int:
    """dim Sym^d of an n-dimensional space."""
    return comb(n + d - 1, d)


def acceptance_braidings(max_n: int = 2):
    """The acceptance test matrix: (name, braided space) pairs, n <= max_n."""
    spaces = []
    for n in range(1, max_n + 1):
        spaces.append((f"flip{n}/QQ", make_flip(n, RATIONALS)))
        spaces.append((f"flip{n}/F2", make_flip(n, F2)))
        spaces.append((f"flip{n}/F3", make_flip(n, F3)))
        qm1 = [[Fraction(-1) if i == j else Fraction(1) for j in range(n)] for i in range(n)]
        spaces.append((f"diag(-1){n}/QQ", diagonal_space(RATIONALS, qm1)))
        q3 = [[ORDER3_F7 if i == j else 1 for j in range(n)] for i in range(n)]
        spaces.append((f"diag(ord3){n}/F7", diagonal_space(F7, q3)))
        q4 = [[ORDER4_F13 if i == j else 1 for j in range(n)] for i in range(n)]
        spaces.append((f"diag(ord4){n}/F13", diagonal_space(F13, q4)))
    return spaces


@pytest.fixture(scope="session")
def flip2q():
    return make_flip(2, RATIONALS)


@pytest.fixture(scope="session")
def flip1q():
    return make_flip(1, RATIONALS)


@pytest.fixture(scope="session")
def qminus1():
    return diagonal_space(RATIONALS, [[Fraction(-1)]])
