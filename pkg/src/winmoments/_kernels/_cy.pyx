# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""C implementations of the O(N^2) matrix-scan kernels."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def summarize(const signed char[:, ::1] entries, const unsigned char[::1] arms):
    """Per-vertex degrees and adjacent cross-arm win counts in one pass."""
    cdef Py_ssize_t n = entries.shape[0]
    indegree_arr = np.zeros(n, dtype=np.int64)
    outdegree_arr = np.zeros(n, dtype=np.int64)
    t_adj_arr = np.zeros(n, dtype=np.int64)
    c_adj_arr = np.zeros(n, dtype=np.int64)
    cdef long long[::1] indegree = indegree_arr
    cdef long long[::1] outdegree = outdegree_arr
    cdef long long[::1] t_adj = t_adj_arr
    cdef long long[::1] c_adj = c_adj_arr
    cdef Py_ssize_t i, j
    cdef long long p, hit, row_out, row_hit
    # branch on the row's arm once, keep the inner loops branch-free
    for i in range(n):
        row_out = 0
        row_hit = 0
        if arms[i] == 1:
            for j in range(n):
                p = entries[i, j] == 1
                hit = p & (arms[j] == 0)
                row_out += p
                row_hit += hit
                indegree[j] += p
                t_adj[j] += hit
            t_adj[i] += row_hit
        else:
            for j in range(n):
                p = entries[i, j] == 1
                hit = p & (arms[j] == 1)
                row_out += p
                row_hit += hit
                indegree[j] += p
                c_adj[j] += hit
            c_adj[i] += row_hit
        outdegree[i] = row_out
    return indegree_arr, outdegree_arr, t_adj_arr, c_adj_arr


def first_violation(const signed char[:, ::1] entries):
    """Row-major index of the first skew or value-domain violation, or None."""
    cdef Py_ssize_t n = entries.shape[0]
    cdef Py_ssize_t i, j
    cdef signed char v
    for i in range(n):
        for j in range(n):
            v = entries[i, j]
            if v < -1 or v > 1 or v != -entries[j, i]:
                return i, j
    return None
