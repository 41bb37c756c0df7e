"""Hot integer kernels: rational and modular Gauss-Jordan elimination.

Two interchangeable lanes compute bit-identical results:

* ``numba``  -- @njit compiled loops (default when numba imports cleanly),
* ``numpy``  -- vectorised pure-numpy row operations.

Set the environment variable ``BRAIDRANK_NO_NUMBA=1`` before import to force
the numpy lane.  Both lanes operate on int64 arrays and bail out when an
upcoming elimination step could overflow; the caller then re-runs the same
algorithm on an object-dtype (arbitrary precision) copy, so results are exact
for any input.  ``benchmarks/bench_kernels.py`` compares the two lanes.

All kernels are sequential; repeated runs produce identical bytes.
"""

from __future__ import annotations

import os

import numpy as np

# Largest |numerator| or denominator for which one elimination update (two
# products plus a subtraction) provably fits in int64: 2 * LIMIT**2 < 2**63.
LIMIT = 2_000_000_000

_HAS_NUMBA = False
if os.environ.get("BRAIDRANK_NO_NUMBA", "") not in ("1", "true", "yes"):
    try:
        import numba

        _HAS_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _HAS_NUMBA = False

_LANE = "numba" if _HAS_NUMBA else "numpy"


def active_lane() -> str:
    return _LANE


def set_lane(name: str) -> None:
    """Switch between 'numba' and 'numpy' kernels (used by the benchmark)."""
    global _LANE
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown lane {name!r}")
    if name == "numba" and not _HAS_NUMBA:
        raise ValueError("numba is not available")
    _LANE = name


# ---------------------------------------------------------------------------
# rational Gauss-Jordan with per-row denominators and content stripping
#
# State: integer numerator matrix plus one positive denominator per row.
# After each elimination the row is divided by the gcd of its entries and
# its denominator, so entry sizes track the actual reduced-form values
# rather than the exponentially growing Bareiss minors.  Pivot rows are
# normalised immediately (pivot value 1, i.e. num[r, c] == den[r]).
# ---------------------------------------------------------------------------


def gcd_int(a: int, b: int) -> int:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def _rref_frac_generic(num, dens, guarded: bool):
    """Shared numpy implementation; int64 (guarded) or object dtype."""
    rows, cols = num.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(num[r:, c])
        if nz.size == 0:
            continue
        if guarded:
            m = int(np.abs(num).max()) if num.size else 0
            m = max(m, int(dens.max()) if dens.size else 0)
            if m > LIMIT:
                return pivots, False
        i = r + int(nz[0])
        if i != r:
            num[[r, i]] = num[[i, r]]
            dens[[r, i]] = dens[[i, r]]
        piv = num[r, c]
        if piv < 0:
            num[r] = -num[r]
            piv = -piv
        dens[r] = piv
        if num.dtype == object:
            g = 0
            for v in num[r]:
                g = gcd_int(g, int(v))
                if g == 1:
                    break
            g = gcd_int(g, int(dens[r]))
        else:
            g = int(np.gcd.reduce(np.abs(num[r])))
            g = gcd_int(g, int(dens[r]))
        if g > 1:
            num[r] = num[r] // g
            dens[r] = dens[r] // g
        dr = dens[r]
        f = num[:, c].copy()
        rest = np.flatnonzero(f)
        rest = rest[rest != r]
        if rest.size:
            num[rest] = num[rest] * dr - np.outer(f[rest], num[r])
            dens[rest] = dens[rest] * dr
            if num.dtype == object:
                for i2 in rest:
                    g = int(dens[i2])
                    for v in num[i2]:
                        g = gcd_int(g, int(v))
                        if g == 1:
                            break
                    if g > 1:
                        num[i2] = num[i2] // g
                        dens[i2] = dens[i2] // g
            else:
                gs = np.gcd.reduce(np.abs(num[rest]), axis=1)
                gs = np.gcd(gs, dens[rest])
                gs[gs == 0] = 1
                num[rest] //= gs[:, None]
                dens[rest] //= gs
        pivots.append(c)
        r += 1
    return pivots, True


if _HAS_NUMBA:

    @numba.njit(cache=True)
    def _rref_frac_numba(num, dens, limit):  # pragma: no cover
        rows, cols = num.shape
        cap = rows if rows < cols else cols
        pivots = np.empty(cap, dtype=np.int64)
        npiv = 0
        maxabs = np.int64(0)
        for i in range(rows):
            for j in range(cols):
                v = num[i, j]
                if v < 0:
                    v = -v
                if v > maxabs:
                    maxabs = v
        r = 0
        for c in range(cols):
            if r == rows:
                break
            pr = -1
            for i in range(r, rows):
                if num[i, c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if maxabs > limit:
                return pivots[:npiv], False
            if pr != r:
                for j in range(cols):
                    t = num[r, j]
                    num[r, j] = num[pr, j]
                    num[pr, j] = t
                t = dens[r]
                dens[r] = dens[pr]
                dens[pr] = t
            piv = num[r, c]
            if piv < 0:
                piv = -piv
                for j in range(cols):
                    num[r, j] = -num[r, j]
            dens[r] = piv
            g = dens[r]
            for j in range(cols):
                v = num[r, j]
                if v < 0:
                    v = -v
                while v:
                    g, v = v, g % v
                if g == 1:
                    break
            if g > 1:
                for j in range(cols):
                    num[r, j] //= g
                dens[r] //= g
            dr = dens[r]
            newmax = np.int64(0)
            for i in range(rows):
                f = num[i, c] if i != r else np.int64(0)
                if f != 0:
                    for j in range(cols):
                        num[i, j] = num[i, j] * dr - f * num[r, j]
                    dens[i] = dens[i] * dr
                    g = dens[i]
                    for j in range(cols):
                        v = num[i, j]
                        if v < 0:
                            v = -v
                        while v:
                            g, v = v, g % v
                        if g == 1:
                            break
                    if g > 1:
                        for j in range(cols):
                            num[i, j] //= g
                        dens[i] //= g
                for j in range(cols):
                    v = num[i, j]
                    if v < 0:
                        v = -v
                    if v > newmax:
                        newmax = v
                if dens[i] > newmax:
                    newmax = dens[i]
            maxabs = newmax
            pivots[npiv] = c
            npiv += 1
            r += 1
        return pivots[:npiv], True


def rref_frac(num: np.ndarray):
    """Rational rref of an integer matrix (row denominators are internal).

    Returns ``(numerators, row_dens, pivots)`` describing the unique rref:
    row i of the result is ``numerators[i] / row_dens[i]``.  The input is
    not modified; int64 work falls back to exact object arithmetic when an
    elimination step could overflow.
    """
    if num.dtype == object:
        work = num.copy()
        dens = np.ones(num.shape[0], dtype=object)
        pivots, _ = _rref_frac_generic(work, dens, guarded=False)
        return work, dens, pivots
    work = np.ascontiguousarray(num, dtype=np.int64).copy()
    dens = np.ones(num.shape[0], dtype=np.int64)
    if _LANE == "numba" and _HAS_NUMBA:
        piv_arr, ok = _rref_frac_numba(work, dens, LIMIT)
        pivots = [int(c) for c in piv_arr]
    else:
        pivots, ok = _rref_frac_generic(work, dens, guarded=True)
    if ok:
        return work, dens, pivots
    work = num.astype(object)
    dens = np.ones(num.shape[0], dtype=object)
    pivots, _ = _rref_frac_generic(work, dens, guarded=False)
    return work, dens, pivots


# ---------------------------------------------------------------------------
# Gauss-Jordan modulo a prime
# ---------------------------------------------------------------------------

# int64 products stay safe while p < 2**31.
MOD_INT64_MAX = 1 << 31


def _rref_mod_generic(a, p):
    """Vectorised elimination mod p; a is int64 (p < 2**31) or object."""
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        f = a[:, c].copy()
        f[r] = 0
        a -= np.outer(f, a[r])
        a %= p
        pivots.append(c)
        r += 1
    return pivots


if _HAS_NUMBA:

    @numba.njit(cache=True)
    def _rref_mod_numba(a, p):  # pragma: no cover - exercised via dispatch
        rows, cols = a.shape
        cap = rows if rows < cols else cols
        pivots = np.empty(cap, dtype=np.int64)
        npiv = 0
        r = 0
        for c in range(cols):
            if r == rows:
                break
            pr = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(cols):
                    t = a[r, j]
                    a[r, j] = a[pr, j]
                    a[pr, j] = t
            # modular inverse by extended euclid
            t0 = np.int64(0)
            t1 = np.int64(1)
            r0 = p
            r1 = a[r, c]
            while r1 != 0:
                q = r0 // r1
                t0, t1 = t1, t0 - q * t1
                r0, r1 = r1, r0 - q * r1
            inv = t0 % p
            for j in range(cols):
                a[r, j] = a[r, j] * inv % p
            for i in range(rows):
                if i == r:
                    continue
                f = a[i, c]
                if f != 0:
                    for j in range(cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            pivots[npiv] = c
            npiv += 1
            r += 1
        return pivots[:npiv]


def rref_mod(num: np.ndarray, p: int):
    """Reduced row echelon form of ``num`` modulo prime ``p`` (copy).

    Returns ``(reduced, pivots)``; entries canonical in ``0..p-1``.
    """
    if p < MOD_INT64_MAX and num.dtype != object:
        work = np.ascontiguousarray(num, dtype=np.int64).copy()
        if _LANE == "numba" and _HAS_NUMBA:
            pivots = [int(c) for c in _rref_mod_numba(work, p)]
        else:
            pivots = _rref_mod_generic(work, p)
        return work, pivots
    work = num.astype(object)
    pivots = _rref_mod_generic(work, p)
    return work, pivots


# ---------------------------------------------------------------------------
# matrix products
# ---------------------------------------------------------------------------


if _HAS_NUMBA:

    @numba.njit(cache=True)
    def _matmul_mod_numba(a, b, p, chunk):  # pragma: no cover
        m, k = a.shape
        n = b.shape[1]
        out = np.zeros((m, n), dtype=np.int64)
        for i in range(m):
            for j in range(n):
                acc = np.int64(0)
                cnt = 0
                for t in range(k):
                    acc += a[i, t] * b[t, j]
                    cnt += 1
                    if cnt == chunk:
                        acc %= p
                        cnt = 0
                out[i, j] = acc % p
        return out


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact ``a @ b mod p`` for canonical residue matrices."""
    if p < MOD_INT64_MAX and a.dtype != object and b.dtype != object:
        # margin of p keeps the running "partial product plus carry" in int64
        chunk = max(1, (2**63 - 1 - p) // max(1, (p - 1) * (p - 1)))
        if _LANE == "numba" and _HAS_NUMBA:
            return _matmul_mod_numba(
                np.ascontiguousarray(a, dtype=np.int64),
                np.ascontiguousarray(b, dtype=np.int64),
                p,
                chunk,
            )
        k = a.shape[1]
        if k <= chunk:
            return (a @ b) % p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for s in range(0, k, chunk):
            out = (out + a[:, s : s + chunk] @ b[s : s + chunk]) % p
        return out
    return np.dot(a.astype(object), b.astype(object)) % p


def _maxabs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return int(max(abs(x) for x in arr.flat))
    return max(abs(int(arr.min())), abs(int(arr.max())))


def matmul_int(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer product; promotes to object dtype when int64 could wrap."""
    if a.dtype != object and b.dtype != object:
        bound = _maxabs(a) * _maxabs(b) * max(1, a.shape[1])
        if bound < 2**63:
            return a @ b
    return np.dot(a.astype(object), b.astype(object))


def kron_int(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact Kronecker product; promotes to object dtype when needed."""
    if a.dtype != object and b.dtype != object:
        if _maxabs(a) * _maxabs(b) < 2**63:
            return np.kron(a, b)
    return np.kron(a.astype(object), b.astype(object))
