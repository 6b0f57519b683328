"""Exact matrix arithmetic and canonical forms over Z and Z/n.

Matrices are immutable (flat row-major tuples of ints), entries over Z/n are
always canonical residues in [0, n), and every operation is a pure function.
Canonical forms:

* howell_form -- the canonical echelon form for row spans over Z/n.  Unlike
  Hermite form it includes annihilator rows, so the row span determines the
  form uniquely even over non-domains.
* smith_form / hermite_form -- over Z.

solve_right(a, b) finds the canonical x with x*a = b (lexicographically
smallest after reduction modulo the Howell form of the left kernel), so
outputs are reproducible across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import NoSolution, RingMismatch
from .rings import ZZ, CoeffRing, same_ring, unit_multiplier, xgcd


@dataclass(frozen=True)
class Mat:
    ring: CoeffRing
    rows: int
    cols: int
    entries: tuple[int, ...]  # row-major, canonically reduced

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_rows(ring: CoeffRing, rows: list[list[int]] | tuple, cols: int | None = None) -> Mat:
        rows = [list(r) for r in rows]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        else:
            ncols = 0 if cols is None else cols
        flat = tuple(ring.reduce(x) for r in rows for x in r)
        return Mat(ring, len(rows), ncols, flat)

    @staticmethod
    def zero(ring: CoeffRing, rows: int, cols: int) -> Mat:
        return Mat(ring, rows, cols, (0,) * (rows * cols))

    @staticmethod
    def identity(ring: CoeffRing, n: int) -> Mat:
        flat = [0] * (n * n)
        for i in range(n):
            flat[i * n + i] = ring.reduce(1)
        return Mat(ring, n, n, tuple(flat))

    # -- access -------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def __repr__(self):
        return f"Mat({self.ring.name()}, {self.to_rows()})"

    # -- arithmetic ----------------------------------------------------------

    def add(self, other: Mat) -> Mat:
        same_ring(self.ring, other.ring)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        red = self.ring.reduce
        return Mat(self.ring, self.rows, self.cols,
                   tuple(red(a + b) for a, b in zip(self.entries, other.entries)))

    def sub(self, other: Mat) -> Mat:
        return self.add(other.scale(-1))

    def scale(self, c: int) -> Mat:
        red = self.ring.reduce
        return Mat(self.ring, self.rows, self.cols, tuple(red(c * a) for a in self.entries))

    def mul(self, other: Mat) -> Mat:
        same_ring(self.ring, other.ring)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch in mul: {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        red = self.ring.reduce
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = [0] * (n * m)
        for i in range(n):
            arow = a[i * k : (i + 1) * k]
            for t, av in enumerate(arow):
                if av == 0:
                    continue
                boff = t * m
                ooff = i * m
                for j in range(m):
                    out[ooff + j] += av * b[boff + j]
        return Mat(self.ring, n, m, tuple(red(x) for x in out))

    def transpose(self) -> Mat:
        out = [0] * (self.rows * self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                out[j * self.rows + i] = self.entries[i * self.cols + j]
        return Mat(self.ring, self.cols, self.rows, tuple(out))

    # -- block operations ----------------------------------------------------

    def stack(self, other: Mat) -> Mat:
        """Vertical stack (rows of self above rows of other)."""
        same_ring(self.ring, other.ring)
        if self.cols != other.cols:
            raise ValueError("column mismatch in stack")
        return Mat(self.ring, self.rows + other.rows, self.cols, self.entries + other.entries)

    def hstack(self, other: Mat) -> Mat:
        same_ring(self.ring, other.ring)
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        out = []
        for i in range(self.rows):
            out.extend(self.row(i))
            out.extend(other.row(i))
        return Mat(self.ring, self.rows, self.cols + other.cols, tuple(out))

    def take_rows(self, indices: list[int]) -> Mat:
        flat = []
        for i in indices:
            flat.extend(self.row(i))
        return Mat(self.ring, len(indices), self.cols, tuple(flat))

    def take_cols(self, indices: list[int]) -> Mat:
        flat = []
        for i in range(self.rows):
            r = self.row(i)
            flat.extend(r[j] for j in indices)
        return Mat(self.ring, self.rows, len(indices), tuple(flat))

    def cast(self, ring: CoeffRing) -> Mat:
        return Mat(ring, self.rows, self.cols, tuple(ring.reduce(x) for x in self.entries))


def diag_stack(a: Mat, b: Mat) -> Mat:
    """Block-diagonal [[a, 0], [0, b]]."""
    same_ring(a.ring, b.ring)
    top = a.hstack(Mat.zero(a.ring, a.rows, b.cols))
    bot = Mat.zero(a.ring, b.rows, a.cols).hstack(b)
    return top.stack(bot)


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product, row/column ordering lexicographic with the left
    factor major: index (i, k) of the product is i*b.rows + k."""
    same_ring(a.ring, b.ring)
    red = a.ring.reduce
    rows, cols = a.rows * b.rows, a.cols * b.cols
    out = [0] * (rows * cols)
    for i in range(a.rows):
        for j in range(a.cols):
            av = a[i, j]
            if av == 0:
                continue
            for k in range(b.rows):
                roff = (i * b.rows + k) * cols + j * b.cols
                boff = k * b.cols
                for l in range(b.cols):
                    out[roff + l] = red(av * b.entries[boff + l])
    return Mat(a.ring, rows, cols, tuple(out))


# ---------------------------------------------------------------------------
# Howell normal form over Z/n
# ---------------------------------------------------------------------------


def _echelonize(n: int, rows: list[list[int]], width: int) -> None:
    """In-place echelon form of augmented rows over Z/n using unimodular 2x2
    transforms; pivots normalized to divisors of n; entries above pivots
    reduced mod the pivot.  `width` is the number of leading columns that
    count for pivoting (the rest is transform bookkeeping)."""
    m = len(rows)
    r = 0
    for j in range(width):
        if r >= m:
            break
        # clear column j below row r against a pivot row
        piv = None
        for i in range(r, m):
            if rows[i][j] % n:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, m):
            a, b = rows[r][j], rows[i][j]
            if b % n == 0:
                continue
            g, s, t = xgcd(a, b)
            u, v = -(b // g), a // g
            ri, rr = rows[i], rows[r]
            for c in range(len(rr)):
                x, y = rr[c], ri[c]
                rr[c] = (s * x + t * y) % n
                ri[c] = (u * x + v * y) % n
        # normalize pivot to gcd(a, n), a divisor of n
        a = rows[r][j] % n
        if a:
            u = unit_multiplier(a, n)
            if u != 1:
                rr = rows[r]
                for c in range(len(rr)):
                    rr[c] = (u * rr[c]) % n
            r += 1
    # reduce entries above each pivot
    for i in range(m):
        j = next((c for c in range(width) if rows[i][c] % n), None)
        if j is None:
            continue
        d = rows[i][j]
        for k in range(i):
            q = rows[k][j] // d
            if q:
                rk, ri_ = rows[k], rows[i]
                for c in range(len(rk)):
                    rk[c] = (rk[c] - q * ri_[c]) % n


def _howell_augmented(a: Mat) -> list[list[int]]:
    """Rows [h | u] with h the Howell form of a and h = u * a."""
    if not a.ring.is_finite:
        raise RingMismatch("howell_form requires Z/n; use smith_form or hermite_form over Z")
    n = a.ring.modulus
    width = a.cols
    rows = [list(a.row(i)) + [1 if k == i else 0 for k in range(a.rows)] for i in range(a.rows)]
    for _ in range(a.cols + 2):
        _echelonize(n, rows, width)
        rows = [r for r in rows if any(x % n for x in r[:width])]
        # append annihilator multiples of each pivot row
        fresh = []
        for r in rows:
            j = next(c for c in range(width) if r[c] % n)
            ann = n // gcd(r[j], n)
            if ann % n == 0:
                continue
            cand = [(ann * x) % n for x in r]
            if any(x for x in cand[:width]):
                fresh.append(cand)
        if not fresh:
            break
        # keep only annihilator rows not already spanned
        new_rows = []
        for cand in fresh:
            red = _reduce_row_against(n, cand, rows, width)
            if any(x for x in red[:width]):
                new_rows.append(red)
        if not new_rows:
            break
        rows.extend(new_rows)
    else:
        raise AssertionError("howell form did not stabilize")
    rows.sort(key=lambda r: next((c for c in range(width) if r[c]), width))
    return rows


def _reduce_row_against(n: int, row: list[int], rows: list[list[int]], width: int) -> list[int]:
    out = list(row)
    for r in rows:
        j = next(c for c in range(width) if r[c] % n)
        d = r[j]
        q = out[j] // d
        if q:
            for c in range(len(out)):
                out[c] = (out[c] - q * r[c]) % n
    return out


def howell_form(a: Mat) -> tuple[Mat, Mat]:
    """Howell normal form h of a together with a transform u with h = u*a.

    h is the unique canonical representative of the row span of a: pivots
    divide the modulus, entries above each pivot are reduced mod the pivot,
    zero rows are dropped, and every element of the span whose leading index
    is >= j lies in the span of the rows with leading index >= j.
    """
    rows = _howell_augmented(a)
    h = Mat.from_rows(a.ring, [r[: a.cols] for r in rows], cols=a.cols)
    u = Mat.from_rows(a.ring, [r[a.cols :] for r in rows], cols=a.rows)
    return h, u


def reduce_mod_span(v: Mat, h: Mat) -> Mat:
    """Canonical coset representative of each row of v modulo the row span of
    the Howell form h.  Returns the zero matrix exactly on span members."""
    same_ring(v.ring, h.ring)
    n = v.ring.modulus
    pivots = []
    for i in range(h.rows):
        j = next(c for c in range(h.cols) if h.row(i)[c])
        pivots.append((i, j, h.row(i)[j]))
    out = []
    for k in range(v.rows):
        row = list(v.row(k))
        for i, j, d in pivots:
            q = row[j] // d
            if q:
                hr = h.row(i)
                for c in range(h.cols):
                    row[c] = (row[c] - q * hr[c]) % n
        out.append(row)
    return Mat.from_rows(v.ring, out, cols=v.cols)


def left_kernel(a: Mat) -> Mat:
    """Generators of {x : x*a = 0} over Z/n, as rows of a Howell-form matrix.

    Computed from the full Howell form of [a | I] (all columns pivotal, so
    annihilator rows of the leading block are retained): rows whose leading
    block vanishes generate the whole kernel, by the Howell span property
    applied at column offset a.cols."""
    if not a.ring.is_finite:
        return _left_kernel_z(a)
    aug = a.hstack(Mat.identity(a.ring, a.rows))
    h, _ = howell_form(aug)
    ker = [list(h.row(i)[a.cols :]) for i in range(h.rows) if not any(h.row(i)[: a.cols])]
    k = Mat.from_rows(a.ring, ker, cols=a.rows)
    if k.rows:
        k, _ = howell_form(k)
    return k


def solve_right(a: Mat, b: Mat) -> Mat:
    """The canonical x with x*a = b (shape b.rows x a.rows).

    Over Z/n: back-substitute against the Howell form, then reduce modulo
    the Howell form of the left kernel so the representative is the
    lexicographically smallest solution.  Raises NoSolution when some row of
    b is outside the row span of a.
    """
    same_ring(a.ring, b.ring)
    if a.cols != b.cols:
        raise ValueError("solve_right: column mismatch")
    if not a.ring.is_finite:
        return _solve_right_z(a, b)
    n = a.ring.modulus
    h, u = howell_form(a)
    pivots = []
    for i in range(h.rows):
        j = next(c for c in range(h.cols) if h.row(i)[c])
        pivots.append((i, j, h.row(i)[j]))
    xs = []
    for k in range(b.rows):
        row = list(b.row(k))
        y = [0] * h.rows
        for i, j, d in pivots:
            c = row[j]
            if c % d:
                raise NoSolution(f"row {k} of b is not in the row span of a")
            q = c // d
            y[i] = q
            if q:
                hr = h.row(i)
                for t in range(h.cols):
                    row[t] = (row[t] - q * hr[t]) % n
        if any(row):
            raise NoSolution(f"row {k} of b is not in the row span of a")
        xs.append(y)
    x = Mat.from_rows(a.ring, xs, cols=h.rows).mul(u)
    ker = left_kernel(a)
    if ker.rows:
        x = reduce_mod_span(x, ker)
    return x


# ---------------------------------------------------------------------------
# Integer forms: Smith and Hermite
# ---------------------------------------------------------------------------


def smith_form(a: Mat) -> tuple[Mat, Mat, Mat]:
    """Smith normal form over Z: returns (d, p, q) with d = p*a*q, d diagonal
    with d_i | d_{i+1} and d_i >= 0, p and q invertible over Z."""
    if a.ring.is_finite:
        raise RingMismatch("smith_form requires ring Z")
    m, k = a.rows, a.cols
    d = [list(a.row(i)) for i in range(m)]
    p = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    q = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    def row_op(i1, i2, s, t, u, v):
        for c in range(k):
            x, y = d[i1][c], d[i2][c]
            d[i1][c], d[i2][c] = s * x + t * y, u * x + v * y
        for c in range(m):
            x, y = p[i1][c], p[i2][c]
            p[i1][c], p[i2][c] = s * x + t * y, u * x + v * y

    def col_op(j1, j2, s, t, u, v):
        for r in range(m):
            x, y = d[r][j1], d[r][j2]
            d[r][j1], d[r][j2] = s * x + t * y, u * x + v * y
        for r in range(k):
            x, y = q[r][j1], q[r][j2]
            q[r][j1], q[r][j2] = s * x + t * y, u * x + v * y

    t = 0
    while t < min(m, k):
        # deterministic pivot: nonzero entry minimizing (|val|, i, j)
        best = None
        for i in range(t, m):
            for j in range(t, k):
                if d[i][j]:
                    key = (abs(d[i][j]), i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_op(t, bi, 0, 1, 1, 0)
        if bj != t:
            col_op(t, bj, 0, 1, 1, 0)
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    # exact division: plain subtraction leaves the pivot row
                    # intact; otherwise the gcd transform strictly shrinks
                    # |pivot|, so the loop terminates.
                    if d[i][t] % d[t][t] == 0:
                        row_op(t, i, 1, 0, -(d[i][t] // d[t][t]), 1)
                    else:
                        g, s, tt = xgcd(d[t][t], d[i][t])
                        row_op(t, i, s, tt, -(d[i][t] // g), d[t][t] // g)
                        dirty = True
            for j in range(t + 1, k):
                if d[t][j]:
                    if d[t][j] % d[t][t] == 0:
                        col_op(t, j, 1, 0, -(d[t][j] // d[t][t]), 1)
                    else:
                        g, s, tt = xgcd(d[t][t], d[t][j])
                        col_op(t, j, s, tt, -(d[t][j] // g), d[t][t] // g)
                        dirty = True
            if not dirty:
                # a column pass may reintroduce entries below the pivot
                if any(d[i][t] for i in range(t + 1, m)) or any(d[t][j] for j in range(t + 1, k)):
                    dirty = True
        t += 1
    # sign-normalize and enforce the divisibility chain
    for i in range(min(m, k)):
        if d[i][i] < 0:
            for c in range(k):
                d[i][c] = -d[i][c]
            for c in range(m):
                p[i][c] = -p[i][c]
    changed = True
    while changed:
        changed = False
        for i in range(min(m, k) - 1):
            x, y = d[i][i], d[i + 1][i + 1]
            if y and (x == 0 or y % x):
                # replace diag(x, y) by diag(gcd, lcm): row_i += row_{i+1},
                # then clear (i, i+1) by a column gcd transform and the
                # resulting (i+1, i) by a row reduction.
                row_op(i, i + 1, 1, 1, 0, 1)
                g, s, tt = xgcd(d[i][i], d[i][i + 1])
                col_op(i, i + 1, s, tt, -(d[i][i + 1] // g), d[i][i] // g)
                quo = d[i + 1][i] // d[i][i]
                row_op(i, i + 1, 1, 0, -quo, 1)
                if d[i][i] < 0:
                    for c in range(k):
                        d[i][c] = -d[i][c]
                    for c in range(m):
                        p[i][c] = -p[i][c]
                if d[i + 1][i + 1] < 0:
                    for c in range(k):
                        d[i + 1][c] = -d[i + 1][c]
                    for c in range(m):
                        p[i + 1][c] = -p[i + 1][c]
                changed = True
    dm = Mat.from_rows(ZZ, d, cols=k)
    return dm, Mat.from_rows(ZZ, p, cols=m), Mat.from_rows(ZZ, q, cols=k)


def hermite_form(a: Mat) -> tuple[Mat, Mat]:
    """Row Hermite normal form over Z: (h, u) with h = u*a, pivots positive,
    entries above pivots reduced into [0, pivot), zero rows dropped."""
    if a.ring.is_finite:
        raise RingMismatch("hermite_form requires ring Z")
    m = a.rows
    rows = [list(a.row(i)) + [1 if k == i else 0 for k in range(m)] for i in range(m)]
    width = a.cols
    r = 0
    for j in range(width):
        if r >= len(rows):
            break
        piv = None
        for i in range(r, len(rows)):
            if rows[i][j]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            while rows[i][j]:
                g, s, t = xgcd(rows[r][j], rows[i][j])
                u, v = -(rows[i][j] // g), rows[r][j] // g
                for c in range(len(rows[r])):
                    x, y = rows[r][c], rows[i][c]
                    rows[r][c], rows[i][c] = s * x + t * y, u * x + v * y
        if rows[r][j] < 0:
            rows[r] = [-x for x in rows[r]]
        r += 1
    rows = [row for row in rows if any(row[:width])]
    rows.sort(key=lambda row: next(c for c in range(width) if row[c]))
    for i in range(len(rows)):
        j = next(c for c in range(width) if rows[i][c])
        d = rows[i][j]
        for kk in range(i):
            qq = rows[kk][j] // d
            if qq:
                for c in range(len(rows[kk])):
                    rows[kk][c] -= qq * rows[i][c]
    h = Mat.from_rows(ZZ, [row[:width] for row in rows], cols=width)
    u = Mat.from_rows(ZZ, [row[width:] for row in rows], cols=m)
    return h, u


def _reduce_mod_lattice(v: list[int], h: Mat) -> list[int]:
    """Reduce an integer row modulo the lattice spanned by Hermite-form h."""
    out = list(v)
    for i in range(h.rows):
        j = next(c for c in range(h.cols) if h.row(i)[c])
        d = h.row(i)[j]
        q = out[j] // d
        if q:
            hr = h.row(i)
            for c in range(h.cols):
                out[c] -= q * hr[c]
    return out


def _left_kernel_z(a: Mat) -> Mat:
    d, p, q = smith_form(a)
    rows = []
    for i in range(a.rows):
        di = d[i, i] if i < min(a.rows, a.cols) else 0
        if di == 0:
            rows.append(list(p.row(i)))
    if not rows:
        return Mat.zero(ZZ, 0, a.rows)
    h, _ = hermite_form(Mat.from_rows(ZZ, rows, cols=a.rows))
    return h


def _solve_right_z(a: Mat, b: Mat) -> Mat:
    d, p, q = smith_form(a)
    c = b.mul(q)
    m, k = a.rows, a.cols
    ys = []
    for r in range(b.rows):
        y = [0] * m
        for j in range(k):
            dj = d[j, j] if j < min(m, k) else 0
            cj = c[r, j]
            if dj == 0:
                if cj != 0:
                    raise NoSolution(f"row {r} of b is not in the row span of a")
            else:
                if cj % dj:
                    raise NoSolution(f"row {r} of b is not in the row span of a")
                if j < m:
                    y[j] = cj // dj
        ys.append(y)
    x = Mat.from_rows(ZZ, ys, cols=m).mul(p)
    ker = _left_kernel_z(a)
    if ker.rows:
        x = Mat.from_rows(ZZ, [_reduce_mod_lattice(list(x.row(i)), ker) for i in range(x.rows)], cols=m)
    return x


def invariant_factors(a: Mat) -> list[int]:
    d, _, _ = smith_form(a)
    out = []
    for i in range(min(a.rows, a.cols)):
        if d[i, i]:
            out.append(d[i, i])
    return out


def integer_inverse(q: Mat) -> Mat:
    """Inverse of a unimodular integer matrix (columns solved exactly)."""
    if q.rows != q.cols:
        raise ValueError("not square")
    return _solve_right_z(q, Mat.identity(ZZ, q.rows))
