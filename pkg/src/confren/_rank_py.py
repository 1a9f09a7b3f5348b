"""Pure-Python fraction-free (Bareiss) elimination."""


def rank(rows):
    """Rank of an integer matrix given as a list of row lists (copied)."""
    a = [list(r) for r in rows]
    nr = len(a)
    if nr == 0:
        return 0
    nc = len(a[0])
    prev = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = r
        while p < nr and a[p][c] == 0:
            p += 1
        if p == nr:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
        piv = a[r][c]
        row_r = a[r]
        for i in range(r + 1, nr):
            row_i = a[i]
            f = row_i[c]
            if f == 0:
                for j in range(c + 1, nc):
                    if row_i[j]:
                        row_i[j] = (row_i[j] * piv) // prev
            else:
                for j in range(c + 1, nc):
                    row_i[j] = (row_i[j] * piv - f * row_r[j]) // prev
                row_i[c] = 0
        prev = piv
        r += 1
    return r
