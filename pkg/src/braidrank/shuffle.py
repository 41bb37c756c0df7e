"""Braided shuffle coproduct components and the quantum symmetrizer.

The graded coproduct component Delta_{i,j} : V^(x)(i+j) -> V^(x)i (x) V^(x)j
is the sum, over all (i,j)-unshuffles w (permutations increasing on the
position blocks 1..i and i+1..i+j), of the positive braid lift of w^-1.
Summing the lifts of the inverses (rather than of the unshuffles themselves)
is what makes the family coassociative and multiplicative as exact matrix
identities; the property tests in the suite pin this convention down.

The quantum symmetrizer on V^(x)d is the sum of the positive lifts of all
d! permutations; its kernels cut out the Nichols algebra relations and serve
as the independent oracle for the quotient tower.

Monomial braidings (flip, diagonal) use a fast index-permutation path; a
general braiding falls back to dense lift assembly, which is fine at the
small sizes where raw braidings are used.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import gcd

import numpy as np

from .braiding import (
    BraidedSpace,
    check_degree,
    invert_perm,
    lexmin_reduced_word,
)
from .errors import DegreeCap
from .exactlin import FieldSpec, Matrix, Scalar, coerce_scalar


def unshuffles(i: int, j: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (i,j)-unshuffles with their lex-minimal reduced words.

    Returns ``[(perm, word), ...]`` where ``perm`` is a 0-based one-line
    tuple increasing on positions ``0..i-1`` and ``i..i+j-1``, ordered
    lexicographically, and ``word`` multiplies out to ``perm`` under
    :func:`braidrank.braiding.braid_word`.  There are C(i+j, i) of them.
    """
    if i < 0 or j < 0:
        raise DegreeCap("degrees must be nonnegative")
    d = i + j
    check_degree(d)
    perms = []
    for first in combinations(range(d), i):
        rest = [v for v in range(d) if v not in first]
        perms.append(tuple(first) + tuple(rest))
    perms.sort()
    return [(w, lexmin_reduced_word(w)) for w in perms]


# ---------------------------------------------------------------------------
# braid lifts as monomial index maps (fast path) or dense matrices
# ---------------------------------------------------------------------------


def _monomial_lift(space: BraidedSpace, d: int, word):
    """Lift of a braid word as (targets, coefficients) on V^(x)d."""
    n = space.n
    size = n**d
    cperm, ccoeff = space._monomial
    prime = not space.field.is_rationals
    if prime:
        ctab = np.array([c % space.field.p for c in ccoeff], dtype=object)
        if space.field.p < 1 << 31:
            ctab = ctab.astype(np.int64)
        coeff = np.ones(size, dtype=ctab.dtype)
    else:
        ctab = np.array([Fraction(c) for c in ccoeff], dtype=object)
        coeff = np.array([Fraction(1)] * size, dtype=object)
    tgt = np.arange(size, dtype=np.int64)
    nsq = n * n
    for k in reversed(list(word)):
        base = n ** (d - k - 1)
        pairs = (tgt // base) % nsq
        tgt = tgt + (cperm[pairs] - pairs) * base
        coeff = coeff * ctab[pairs]
        if prime:
            coeff = coeff % space.field.p
    return tgt, coeff


def _dense_lift(space: BraidedSpace, d: int, word) -> Matrix:
    """Dense lift via axis contraction; used for non-monomial braidings."""
    n = space.n
    size = n**d
    out = Matrix.identity(space.field, size)
    for k in reversed(list(word)):
        left = n ** (k - 1)
        arr = out.num.reshape(left, n * n, -1)
        cnum = space.c.num
        if arr.dtype != object and cnum.dtype != object:
            bound = int(np.abs(cnum).max(initial=0)) * int(np.abs(arr).max(initial=0)) * n * n
            if bound >= 2**63:
                arr = arr.astype(object)
        if arr.dtype == object or cnum.dtype == object:
            arr = arr.astype(object)
            cnum = cnum.astype(object)
        new = np.tensordot(cnum, arr, axes=([1], [1]))
        new = np.moveaxis(new, 0, 1).reshape(size, size)
        out = Matrix.build(space.field, new, out.den * space.c.den)
    return out


def _assemble_monomial_sum(space: BraidedSpace, d: int, ops) -> Matrix:
    """Sum monomial lifts into a dense matrix (sparse accumulation)."""
    field = space.field
    size = space.n**d
    acc: dict[tuple[int, int], Scalar] = {}
    for tgt, coeff in ops:
        for t in range(size):
            key = (int(tgt[t]), t)
            v = acc.get(key)
            acc[key] = coeff[t] if v is None else v + coeff[t]
    if field.is_rationals:
        den = 1
        for v in acc.values():
            dv = v.denominator
            den = den // gcd(den, dv) * dv
        num = np.zeros((size, size), dtype=object)
        for (r, c), v in acc.items():
            num[r, c] = v.numerator * (den // v.denominator)
        return Matrix.build(field, num, int(den))
    num = np.zeros((size, size), dtype=object)
    for (r, c), v in acc.items():
        num[r, c] = int(v) % field.p
    return Matrix.build(field, num)


def _lift_sum(space: BraidedSpace, d: int, words) -> Matrix:
    if space.is_monomial:
        ops = [_monomial_lift(space, d, w) for w in words]
        return _assemble_monomial_sum(space, d, ops)
    total = Matrix.zeros(space.field, space.n**d, space.n**d)
    for w in words:
        total = total + _dense_lift(space, d, w)
    return total


def delta_component(space: BraidedSpace, i: int, j: int) -> Matrix:
    """The coproduct component Delta_{i,j} on V^(x)(i+j) as a dense matrix.

    Delta_{0,d} = Delta_{d,0} = Id and Delta_{1,1} = Id + c; the codomain
    V^(x)i (x) V^(x)j is indexed by the shared big-endian convention, so the
    matrix is square of size n^(i+j).
    """
    key = (i, j)
    cached = space._delta_cache.get(key)
    if cached is not None:
        return cached
    d = i + j
    check_degree(d)
    if i == 0 or j == 0:
        out = Matrix.identity(space.field, space.n**d)
    else:
        words = [lexmin_reduced_word(invert_perm(w)) for w, _ in unshuffles(i, j)]
        out = _lift_sum(space, d, words)
    space._delta_cache[key] = out
    return out


def symmetrizer(space: BraidedSpace, d: int) -> Matrix:
    """Quantum symmetrizer: sum of positive braid lifts of all of S_d."""
    cached = space._sym_cache.get(d)
    if cached is not None:
        return cached
    check_degree(d)
    words = [lexmin_reduced_word(w) for w in permutations(range(d))]
    out = _lift_sum(space, d, words)
    space._sym_cache[d] = out
    return out


def block_transposition(space: BraidedSpace, a: int, b: int) -> Matrix:
    """Positive braid lift of the block swap V^(x)a (x) V^(x)b -> V^(x)b (x) V^(x)a."""
    d = a + b
    check_degree(d)
    perm = tuple(t + b for t in range(a)) + tuple(range(b))
    if space.is_monomial:
        return _lift_sum(space, d, [lexmin_reduced_word(perm)])
    return _dense_lift(space, d, lexmin_reduced_word(perm))


def gaussian_binomial(d: int, i: int, q: Scalar, field: FieldSpec) -> Scalar:
    """Gaussian binomial coefficient at q, via the q-Pascal recursion."""
    if not 0 <= i <= d:
        raise ValueError(f"need 0 <= i <= d, got i={i}, d={d}")
    q = coerce_scalar(q, field)
    one = coerce_scalar(1, field)
    prime = None if field.is_rationals else field.p

    # row-by-row q-Pascal: [d,i] = [d-1,i-1] + q^i [d-1,i]
    row = [one]
    for m in range(1, d + 1):
        new = [one]
        qpow = q
        for k in range(1, m):
            v = row[k - 1] + qpow * row[k]
            if prime:
                v %= prime
            new.append(v)
            qpow = qpow * q
            if prime:
                qpow %= prime
        new.append(one)
        row = new
    return row[i]
