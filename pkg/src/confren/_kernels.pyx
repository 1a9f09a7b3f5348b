# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fraction-free (Bareiss) rank over Python integers."""


def rank(rows):
    """Rank of an integer matrix given as a list of row lists (copied)."""
    cdef Py_ssize_t nr, nc, r, c, p, i, j
    cdef list a = [list(x) for x in rows]
    cdef list row_r, row_i
    cdef object piv, prev, f, v
    nr = len(a)
    if nr == 0:
        return 0
    nc = len(<list>a[0])
    prev = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = r
        while p < nr and (<list>a[p])[c] == 0:
            p += 1
        if p == nr:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
        row_r = <list>a[r]
        piv = row_r[c]
        for i in range(r + 1, nr):
            row_i = <list>a[i]
            f = row_i[c]
            if f == 0:
                if piv != prev:
                    for j in range(c + 1, nc):
                        v = row_i[j]
                        if v:
                            row_i[j] = (v * piv) // prev
            else:
                for j in range(c + 1, nc):
                    row_i[j] = (row_i[j] * piv - f * row_r[j]) // prev
                row_i[c] = 0
        prev = piv
        r += 1
    return r
