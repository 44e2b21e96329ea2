# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled budget DP kernels; mirrors dp_py.py."""

import numpy as np

BACKEND = "cython"


def budget_dp(int n, int b_max, int s,
              int[::1] eu, int[::1] ev, int[::1] ew, double[::1] ec1):
    cost_arr = np.full((n, b_max + 1), np.inf)
    hops_arr = np.full((n, b_max + 1), 2**30, dtype=np.int32)
    pe_arr = np.full((n, b_max + 1), -1, dtype=np.int32)
    pb_arr = np.full((n, b_max + 1), -1, dtype=np.int32)
    cdef double[:, ::1] cost = cost_arr
    cdef int[:, ::1] hops = hops_arr
    cdef int[:, ::1] parent_edge = pe_arr
    cdef int[:, ::1] parent_b = pb_arr
    cost[s, 0] = 0.0
    hops[s, 0] = 0

    cdef int m = eu.shape[0]
    cdef int b, e, u, v, nb, h, pass_i
    cdef double t
    cdef bint changed
    cdef int n_zero = 0
    for e in range(m):
        if ew[e] == 0:
            n_zero += 1

    for b in range(b_max + 1):
        if n_zero > 0:
            for pass_i in range(n):
                changed = False
                for e in range(m):
                    if ew[e] != 0:
                        continue
                    u = eu[e]; v = ev[e]
                    t = cost[u, b] + ec1[e]
                    h = hops[u, b] + 1
                    if t < cost[v, b] or (t == cost[v, b] and h < hops[v, b]):
                        cost[v, b] = t
                        hops[v, b] = h
                        parent_edge[v, b] = e
                        parent_b[v, b] = b
                        changed = True
                if not changed:
                    break
        for e in range(m):
            if ew[e] == 0:
                continue
            nb = b + ew[e]
            if nb > b_max:
                continue
            u = eu[e]; v = ev[e]
            t = cost[u, b] + ec1[e]
            h = hops[u, b] + 1
            if t < cost[v, nb] or (t == cost[v, nb] and h < hops[v, nb]):
                cost[v, nb] = t
                hops[v, nb] = h
                parent_edge[v, nb] = e
                parent_b[v, nb] = b
    return cost_arr, hops_arr, pe_arr, pb_arr


def hop_budget_dp(int n, int b_max, int h_max, int s, int d,
                  int[::1] eu, int[::1] ev, int[::1] ew, double[::1] ec1):
    cur_arr = np.full((n, b_max + 1), np.inf)
    nxt_arr = np.empty((n, b_max + 1))
    dest_arr = np.full((h_max + 1, b_max + 1), np.inf)
    cdef double[:, ::1] cur = cur_arr
    cdef double[:, ::1] nxt = nxt_arr
    cdef double[:, ::1] dest = dest_arr
    cur[s, 0] = 0.0

    cdef int m = eu.shape[0]
    cdef int h, e, u, v, w, b
    cdef double t
    cdef double INF = np.inf
    for h in range(1, h_max + 1):
        nxt_arr.fill(np.inf)
        for e in range(m):
            u = eu[e]; v = ev[e]
            if v == s or u == d:
                continue
            w = ew[e]
            for b in range(w, b_max + 1):
                t = cur[u, b - w]
                if t == INF:
                    continue
                t = t + ec1[e]
                if t < nxt[v, b]:
                    nxt[v, b] = t
        for b in range(b_max + 1):
            dest[h, b] = nxt[d, b]
        cur, nxt = nxt, cur
        cur_arr, nxt_arr = nxt_arr, cur_arr
    return dest_arr


def hop_budget_dp_path(int n, int b_max, int h_target, int s, int d,
                       int[::1] eu, int[::1] ev, int[::1] ew, double[::1] ec1):
    cost_arr = np.full((h_target + 1, n, b_max + 1), np.inf)
    pe_arr = np.full((h_target + 1, n, b_max + 1), -1, dtype=np.int32)
    cdef double[:, :, ::1] cost = cost_arr
    cdef int[:, :, ::1] parent_edge = pe_arr
    cost[0, s, 0] = 0.0

    cdef int m = eu.shape[0]
    cdef int h, e, u, v, w, b
    cdef double t
    cdef double INF = np.inf
    for h in range(1, h_target + 1):
        for e in range(m):
            u = eu[e]; v = ev[e]
            if v == s or u == d:
                continue
            w = ew[e]
            for b in range(w, b_max + 1):
                t = cost[h - 1, u, b - w]
                if t == INF:
                    continue
                t = t + ec1[e]
                if t < cost[h, v, b]:
                    cost[h, v, b] = t
                    parent_edge[h, v, b] = e
    return cost_arr, pe_arr
