"""Exact integer and rational linear algebra.

Everything runs on Python's arbitrary-precision integers and
``fractions.Fraction``; no floating point anywhere.  Matrices are
row-major tuples of equal-length integer row tuples.
"""

from fractions import Fraction


def mat(rows):
    """Freeze a row-major iterable into a matrix tuple, checking shape."""
    frozen = tuple(tuple(int(x) for x in row) for row in rows)
    if frozen:
        width = len(frozen[0])
        if any(len(row) != width for row in frozen):
            raise ValueError("ragged matrix")
    return frozen


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m)) if m else ()


def mat_mul(a, b):
    if a and b and len(a[0]) != len(b):
        raise ValueError("shape mismatch")
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def hermite_normal_form(m):
    """Row-style Hermite normal form: (h, u) with u unimodular and u*m = h.

    Pivots are positive and entries above a pivot are reduced into
    [0, pivot), so the output is canonical for a fixed input.
    """
    m = mat(m)
    if not m:
        raise ValueError("empty matrix")
    rows, cols = len(m), len(m[0])
    h = [list(r) for r in m]
    u = [list(r) for r in identity(rows)]

    def addmul(dst, src, q):
        h[dst] = [a - q * b for a, b in zip(h[dst], h[src])]
        u[dst] = [a - q * b for a, b in zip(u[dst], u[src])]

    row = 0
    for col in range(cols):
        while True:
            live = [i for i in range(row, rows) if h[i][col] != 0]
            if not live:
                break
            i0 = min(live, key=lambda i: (abs(h[i][col]), i))
            if i0 != row:
                h[i0], h[row] = h[row], h[i0]
                u[i0], u[row] = u[row], u[i0]
            clean = True
            for i in range(row + 1, rows):
                if h[i][col] != 0:
                    addmul(i, row, h[i][col] // h[row][col])
                    if h[i][col] != 0:
                        clean = False
            if clean:
                break
        if row < rows and h[row][col] != 0:
            if h[row][col] < 0:
                h[row] = [-x for x in h[row]]
                u[row] = [-x for x in u[row]]
            for i in range(row):
                q = h[i][col] // h[row][col]
                if q:
                    addmul(i, row, q)
            row += 1
            if row == rows:
                break
    return mat(h), mat(u)


def kernel_lattice_basis(m):
    """Basis of the saturated left-kernel lattice {a : a*m = 0}.

    The HNF multiplier u is unimodular, so its rows matching zero rows of
    h are a basis of the kernel that extends to a basis of Z^rows; the
    lattice they span is therefore primitive, never a finite-index
    sublattice of the rational kernel.
    """
    m = mat(m)
    h, u = hermite_normal_form(m)
    return tuple(u[i] for i in range(len(h)) if not any(h[i]))


def solve_rational(m, b):
    """Exact solution x of m*x = b, or None when m is singular.

    m must be square and nonempty; b entries may be ints or Fractions.
    """
    m = mat(m)
    n = len(m)
    if n == 0 or len(m[0]) != n:
        raise ValueError("matrix must be square and nonempty")
    if len(b) != n:
        raise ValueError("dimension mismatch")
    a = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(m, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(row[n] for row in a)


def det(m):
    """Exact determinant via fraction-free Bareiss elimination."""
    m = mat(m)
    n = len(m)
    if n == 0 or len(m[0]) != n:
        raise ValueError("matrix must be square and nonempty")
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]
