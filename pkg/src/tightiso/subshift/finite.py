"""Finite shifts: translation operators on l2(X) and S_X as a finite table."""

import numpy as np

from ..builders import close_partial_maps, from_partial_maps
from ..errors import InvariantViolation
from .sft import Sft


def finite_shift_operators(X: Sft):
    """{a: S_a} with S_a delta_x = delta_{ax} when ax is in X, else 0.

    Raises NotFinite for infinite X.
    """
    pts = X.points()
    pos = {p: k for k, p in enumerate(pts)}
    n = len(pts)
    ops = {}
    for a in X.alphabet:
        M = np.zeros((n, n))
        for x in pts:
            y = x.prepend(a)
            if X.contains(y):
                M[pos[y], pos[x]] = 1
        ops[a] = M
    total = sum(M @ M.T for M in ops.values())
    if not np.array_equal(total, np.eye(n)):
        raise InvariantViolation("sum of S_a S_a* is not the identity")
    return ops, pts


def _as_partial_map(M):
    n = M.shape[0]
    out = [None] * n
    for i in range(n):
        col = np.flatnonzero(M[:, i])
        if len(col):
            out[i] = int(col[0]) + 1
    return tuple(out)


def _matrix(f):
    n = len(f)
    M = np.zeros((n, n))
    for i, img in enumerate(f):
        if img is not None:
            M[img - 1, i] = 1
    return M


def finite_sx(X: Sft):
    """S_X for finite X as a validated table, with the translation
    representation rho (one matrix per element) and the point list.

    Elements are the partial maps generated by the s_a together with the
    identity; names are ``s_a`` for generators, ``1`` and ``0``.
    """
    ops, pts = finite_shift_operators(X)
    gens = {a: _as_partial_map(M) for a, M in ops.items()}
    ident = tuple(range(1, len(pts) + 1))
    maps = close_partial_maps(list(gens.values()) + [ident])
    names = []
    for f in maps:
        label = None
        if f == ident:
            label = "1"
        elif all(v is None for v in f):
            label = "0"
        else:
            for a, g in gens.items():
                if f == g:
                    label = f"s_{a}"
                    break
        names.append(label or "m" + "".join("-" if v is None else str(v) for v in f))
    # identical generator maps share one element
    S = from_partial_maps(maps, f"S_{X.name}", _dedupe(names))
    rho = [_matrix(f) for f in maps]
    return S, rho, pts, ops


def _dedupe(names):
    seen = {}
    out = []
    for nm in names:
        k = seen.get(nm, 0)
        seen[nm] = k + 1
        out.append(nm if k == 0 else f"{nm}#{k}")
    return out


def span_rank(mats, tol=1e-9):
    if not mats:
        return 0
    A = np.array([np.asarray(M).ravel() for M in mats])
    s = np.linalg.svd(A, compute_uv=False)
    return int((s > tol * max(1.0, s[0])).sum())
