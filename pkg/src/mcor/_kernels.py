"""DBI support kernels over packed index arrays.

Every function here is written in the numba-compatible subset of Python and
operates on the CSR layout of :class:`mcor.seqdb.IndexedDatabase`.  At import
time the functions are compiled with ``numba.njit`` unless the environment
variable ``MCOR_BACKEND=python`` is set (or numba is missing), in which case
the plain interpreted versions are used.  Both variants are always reachable
through :data:`python_kernels` and :data:`jit_kernels` for cross-checks and
benchmarking.
"""
from __future__ import annotations

import os
import types

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_NAMES = ("dbi_sequence", "seq_supports", "db_support", "pair_supports", "dbi_occurrences_seq")


def dbi_sequence(positions, row, pat, a, b, occ_out):
    """Nonoverlapping support of ``pat`` in one sequence.

    ``row`` is that sequence's offsets row.  When ``occ_out`` has rows, found
    occurrences are written into it in discovery order.  Returns
    ``(support, consumed, peeked)`` where ``consumed`` counts index elements
    the cursors moved past and ``peeked`` counts too-far candidates looked at
    without consuming them.
    """
    m = pat.shape[0]
    collect = occ_out.shape[0] > 0
    lo0 = row[pat[0]]
    hi0 = row[pat[0] + 1]
    if m == 1:
        n0 = hi0 - lo0
        if collect:
            for r in range(n0):
                occ_out[r, 0] = positions[lo0 + r]
        return n0, n0, 0

    cur = np.empty(m, dtype=np.int64)
    hi = np.empty(m, dtype=np.int64)
    for j in range(m):
        cur[j] = row[pat[j]]
        hi[j] = row[pat[j] + 1]
    occ = np.empty(m, dtype=np.int64)
    count = 0
    consumed = 0
    peeked = 0
    last = m - 1
    for r in range(lo0, hi0):
        consumed += 1
        occ[0] = positions[r]
        level = 0
        exhausted = False
        while 0 <= level < last:
            nxt = level + 1
            parent = occ[level]
            k = cur[nxt]
            end = hi[nxt]
            while k < end and positions[k] - parent - 1 < a:
                k += 1
                consumed += 1
            if k < end and positions[k] - parent - 1 <= b:
                occ[nxt] = positions[k]
                cur[nxt] = k + 1
                consumed += 1
                level = nxt
            else:
                # too-far candidate stays available for a later parent
                cur[nxt] = k
                if k < end:
                    peeked += 1
                else:
                    exhausted = True
                level -= 1
        if level == last:
            if collect:
                for j in range(m):
                    occ_out[count, j] = occ[j]
            count += 1
        if exhausted:
            # some level ran out of elements: no later root can complete
            for j in range(1, m):
                if cur[j] >= hi[j]:
                    return count, consumed, peeked
    return count, consumed, peeked


def seq_supports(positions, offsets, pat, a, b):
    k = offsets.shape[0]
    out = np.zeros(k, dtype=np.int64)
    empty = np.empty((0, pat.shape[0]), dtype=np.int64)
    for i in range(k):
        out[i] = dbi_sequence(positions, offsets[i], pat, a, b, empty)[0]
    return out


def db_support(positions, offsets, pat, a, b):
    total = 0
    empty = np.empty((0, pat.shape[0]), dtype=np.int64)
    for i in range(offsets.shape[0]):
        total += dbi_sequence(positions, offsets[i], pat, a, b, empty)[0]
    return total


def pair_supports(positions, offsets, codes, a, b):
    """Database support of every length-two pattern ``x[a,b]y`` with ``x, y`` in ``codes``."""
    h = codes.shape[0]
    out = np.zeros((h, h), dtype=np.int64)
    pat = np.empty(2, dtype=np.int64)
    empty = np.empty((0, 2), dtype=np.int64)
    for x in range(h):
        for y in range(h):
            pat[0] = codes[x]
            pat[1] = codes[y]
            total = 0
            for i in range(offsets.shape[0]):
                total += dbi_sequence(positions, offsets[i], pat, a, b, empty)[0]
            out[x, y] = total
    return out


def dbi_occurrences_seq(positions, row, pat, a, b):
    cap = row[pat[0] + 1] - row[pat[0]]
    occ_out = np.empty((max(cap, 1), pat.shape[0]), dtype=np.int64)
    count, consumed, peeked = dbi_sequence(positions, row, pat, a, b, occ_out)
    return occ_out[:count].copy(), consumed, peeked


def _rebuild(decorate):
    """Recreate the kernels in a private namespace so inner calls bind to siblings."""
    ns = {"np": np, "__builtins__": __builtins__, "__name__": __name__}
    src = globals()
    for name in _NAMES:
        f = src[name]
        g = types.FunctionType(f.__code__, ns, name, f.__defaults__, f.__closure__)
        g.__doc__ = f.__doc__
        ns[name] = decorate(g)
    return types.SimpleNamespace(**{n: ns[n] for n in _NAMES})


python_kernels = _rebuild(lambda f: f)

if numba is not None:
    jit_kernels = _rebuild(numba.njit(nogil=True, cache=True))
else:  # pragma: no cover
    jit_kernels = None


def _select():
    want = os.environ.get("MCOR_BACKEND", "numba").strip().lower()
    if want == "python" or jit_kernels is None:
        return "python", python_kernels
    return "numba", jit_kernels


BACKEND, kernels = _select()
