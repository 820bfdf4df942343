"""Table-driven inner loops.

Every kernel has a numba implementation and a pure-numpy one with identical
results.  The numba path is used when numba imports and ``ANNIGRAPH_JIT`` is
not set to ``0``; ``ANNIGRAPH_JIT=0`` forces the numpy path.

Conventions: a ring or module is a set of ``n`` labelled elements ``0..n-1``.
``act[r, m]`` is the index of ``r * m``; ``mul[r, s]`` the index of ``r * s``.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is optional
    numba = None


def _jit_requested():
    return os.environ.get("ANNIGRAPH_JIT", "1").strip().lower() not in ("0", "false", "no", "off")


JIT_AVAILABLE = numba is not None
USE_JIT = JIT_AVAILABLE and _jit_requested()


def backend():
    return "numba" if USE_JIT else "numpy"


# ---------------------------------------------------------------- numpy path


def cyclic_closure_np(act):
    """cyc[x, m] is True iff m lies in the cyclic submodule R*x."""
    n = act.shape[1]
    cyc = np.zeros((n, n), dtype=np.bool_)
    cols = np.arange(n)
    cyc[np.broadcast_to(cols, act.shape), act] = True
    return cyc


def colon_matrix_np(act, cyc, gens):
    """col[x, r] is True iff r*M lies in R*x, i.e. r is in [x : M]."""
    n = act.shape[1]
    col = np.ones((n, act.shape[0]), dtype=np.bool_)
    for g in gens:
        # cyc[:, act[:, g]][x, r] == (r*g in R*x)
        col &= cyc[:, act[:, g]]
    return col


def kills_matrix_np(act, zero):
    """kill[m, r] is True iff r*m == 0."""
    return (act == zero).T.copy()


def adjacency_np(col, killer):
    """adj[x, y] is True iff [x:M][y:M]M == 0.

    ``killer[r, s]`` says whether the product r*s annihilates M.  The test
    is: no pair (r, s) in [x:M] x [y:M] fails to annihilate M.
    """
    colf = col.astype(np.int32)
    bad = (~killer).astype(np.int32)
    # reach[x, s]: some r in [x:M] with r*s not killing M
    reach = (colf @ bad) > 0
    return (reach.astype(np.int32) @ colf.T) == 0


def fraction_labels_np(diff_killed, sub_tab, act, pair_m, pair_s):
    """Assign class ids to pairs (m, s) under (m,s) ~ (m',s') iff t(s'm - sm') = 0 for some t.

    ``diff_killed[d]`` is True iff some denominator annihilates element d;
    ``sub_tab[a, b]`` is the index of a - b.
    """
    npairs = pair_m.shape[0]
    labels = -np.ones(npairs, dtype=np.int64)
    reps = []
    for p in range(npairs):
        m, s = pair_m[p], pair_s[p]
        if reps:
            rep = np.asarray(reps)
            rm, rs = pair_m[rep], pair_s[rep]
            d = sub_tab[act[rs, m], act[s, rm]]
            hit = np.nonzero(diff_killed[d])[0]
            if hit.size:
                labels[p] = hit[0]
                continue
        labels[p] = len(reps)
        reps.append(p)
    return labels


# ---------------------------------------------------------------- numba path

if JIT_AVAILABLE:

    @numba.njit(cache=True)
    def cyclic_closure_nb(act):
        nr, n = act.shape
        cyc = np.zeros((n, n), dtype=np.bool_)
        for x in range(n):
            for r in range(nr):
                cyc[x, act[r, x]] = True
        return cyc

    @numba.njit(cache=True)
    def colon_matrix_nb(act, cyc, gens):
        nr, n = act.shape
        col = np.zeros((n, nr), dtype=np.bool_)
        for x in range(n):
            for r in range(nr):
                ok = True
                for g in gens:
                    if not cyc[x, act[r, g]]:
                        ok = False
                        break
                col[x, r] = ok
        return col

    @numba.njit(cache=True)
    def kills_matrix_nb(act, zero):
        nr, n = act.shape
        kill = np.zeros((n, nr), dtype=np.bool_)
        for r in range(nr):
            for m in range(n):
                kill[m, r] = act[r, m] == zero
        return kill

    @numba.njit(cache=True)
    def adjacency_nb(col, killer):
        n, nr = col.shape
        # ok[x, s]: every r in [x:M] times s kills M
        ok = np.ones((n, nr), dtype=np.bool_)
        for x in range(n):
            for r in range(nr):
                if col[x, r]:
                    for s in range(nr):
                        if not killer[r, s]:
                            ok[x, s] = False
        adj = np.ones((n, n), dtype=np.bool_)
        for x in range(n):
            for y in range(n):
                for s in range(nr):
                    if col[y, s] and not ok[x, s]:
                        adj[x, y] = False
                        break
        return adj

    @numba.njit(cache=True)
    def fraction_labels_nb(diff_killed, sub_tab, act, pair_m, pair_s):
        npairs = pair_m.shape[0]
        labels = -np.ones(npairs, dtype=np.int64)
        reps = np.empty(npairs, dtype=np.int64)
        nrep = 0
        for p in range(npairs):
            m = pair_m[p]
            s = pair_s[p]
            found = -1
            for k in range(nrep):
                q = reps[k]
                d = sub_tab[act[pair_s[q], m], act[s, pair_m[q]]]
                if diff_killed[d]:
                    found = k
                    break
            if found < 0:
                reps[nrep] = p
                labels[p] = nrep
                nrep += 1
            else:
                labels[p] = found
        return labels


def _pick(name):
    if USE_JIT:
        return globals()[name + "_nb"]
    return globals()[name + "_np"]


def cyclic_closure(act):
    return _pick("cyclic_closure")(np.ascontiguousarray(act, dtype=np.int64))


def colon_matrix(act, cyc, gens):
    return _pick("colon_matrix")(
        np.ascontiguousarray(act, dtype=np.int64), cyc, np.asarray(gens, dtype=np.int64)
    )


def kills_matrix(act, zero):
    return _pick("kills_matrix")(np.ascontiguousarray(act, dtype=np.int64), int(zero))


def adjacency(col, killer):
    return _pick("adjacency")(np.ascontiguousarray(col), np.ascontiguousarray(killer))


def fraction_labels(diff_killed, sub_tab, act, pair_m, pair_s):
    return _pick("fraction_labels")(
        np.ascontiguousarray(diff_killed, dtype=np.bool_),
        np.ascontiguousarray(sub_tab, dtype=np.int64),
        np.ascontiguousarray(act, dtype=np.int64),
        np.ascontiguousarray(pair_m, dtype=np.int64),
        np.ascontiguousarray(pair_s, dtype=np.int64),
    )
