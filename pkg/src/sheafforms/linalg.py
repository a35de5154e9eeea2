"""Exact linear algebra over a field, on tuples of row tuples.

Vectors are rows. All routines are deterministic: pivots are chosen as the
first row with a non-zero entry in the leftmost unfinished column, so every
subspace has one canonical reduced echelon basis and subspace equality is
plain tuple equality.
"""

from __future__ import annotations


def identity(n, field):
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )


def transpose(m):
    return tuple(zip(*m)) if m else ()


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def dot(u, v):
    assert len(u) == len(v)
    it = iter(zip(u, v))
    x, y = next(it)
    acc = x * y
    for x, y in it:
        acc = acc + x * y
    return acc


def mat_vec(m, v):
    """m times a column vector, returned as a tuple."""
    return tuple(dot(row, v) for row in m)


def vec_mat(v, m):
    """Row vector times m."""
    return tuple(dot(v, col) for col in transpose(m))


def scale(c, v):
    return tuple(c * x for x in v)


def add_vec(u, v):
    return tuple(x + y for x, y in zip(u, v))


def sub_vec(u, v):
    return tuple(x - y for x, y in zip(u, v))


def zero_vec(n, field):
    return (field.zero,) * n


def is_zero_vec(v, field):
    return all(x == field.zero for x in v)


def rref(rows, field):
    """Reduced row echelon form; returns (pivot rows only, pivot columns)."""
    work = [list(r) for r in rows]
    if not work:
        return (), ()
    width = len(work[0])
    pivots = []
    r = 0
    for col in range(width):
        pivot = None
        for i in range(r, len(work)):
            if work[i][col] != field.zero:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = field.one / work[r][col]
        work[r] = [inv * x for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != field.zero:
                c = work[i][col]
                work[i] = [a - c * b for a, b in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def rank(rows, field):
    return len(rref(rows, field)[0])


def nullspace(rows, width, field):
    """Canonical echelon basis of {x in k^width : rows @ x = 0}."""
    ech, pivots = rref(rows, field)
    pivot_set = set(pivots)
    free = [j for j in range(width) if j not in pivot_set]
    basis = []
    for j in free:
        v = [field.zero] * width
        v[j] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -ech[i][j]
        basis.append(tuple(v))
    return rref(basis, field)[0]


def solve(rows, rhs, field):
    """One solution x (tuple) of rows @ x = rhs, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    width = len(rows[0]) if rows else 0
    ech, pivots = rref(aug, field)
    x = [field.zero] * width
    for row, pc in zip(ech, pivots):
        if pc == width:
            return None  # a pivot in the rhs column: inconsistent
        x[pc] = row[width]
    return tuple(x)


def inverse(m, field):
    """Matrix inverse, or None if singular."""
    n = len(m)
    aug = [list(row) + list(ident) for row, ident in zip(m, identity(n, field))]
    ech, pivots = rref(aug, field)
    if tuple(pivots) != tuple(range(n)):
        return None
    return tuple(tuple(row[n:]) for row in ech)


def reduce_against(echelon, v, field):
    """Express v over echelon rows: returns coefficients, or None if outside.

    Requires echelon to be the output of rref. The coefficient of row i is
    just v at row i's pivot column, since pivot columns are elsewhere zero.
    """
    coeffs = []
    rem = list(v)
    for row in echelon:
        pc = next(j for j, x in enumerate(row) if x != field.zero)
        c = rem[pc]
        coeffs.append(c)
        if c != field.zero:
            rem = [a - c * b for a, b in zip(rem, row)]
    if any(x != field.zero for x in rem):
        return None
    return tuple(coeffs)


def complement_rows(sub_rows, big_rows, field):
    """Rows of big_rows completing sub_rows to a basis of their joint span.

    Greedy and deterministic: scan big_rows in order, keep a row iff it
    raises the rank. With sub_rows inside the span of big_rows this returns
    a basis of a complement of the small space inside the big one.
    """
    kept = []
    current = list(sub_rows)
    r = len(rref(current, field)[0])
    for row in big_rows:
        candidate = current + [row]
        r2 = len(rref(candidate, field)[0])
        if r2 > r:
            kept.append(tuple(row))
            current = candidate
            r = r2
    return tuple(kept)


def rowspace_sum(a_rows, b_rows, field):
    return rref(tuple(a_rows) + tuple(b_rows), field)[0]


def rowspace_intersect(a_rows, b_rows, width, field):
    """Intersection of two row spaces via annihilators.

    x lies in rowspace(A) iff x is orthogonal (standard dot) to nullspace(A),
    so the intersection is the nullspace of the stacked annihilator bases.
    """
    na = nullspace(a_rows, width, field)
    nb = nullspace(b_rows, width, field)
    return nullspace(na + nb, width, field)
