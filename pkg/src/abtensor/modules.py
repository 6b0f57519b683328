"""Finitely presented modules over a finite ring Z/n.

A module is Lambda^g / rowspan(rels) with rels kept in Howell form, so the
presentation is canonical per row span.  Isomorphic modules can still have
different canonical presentations; identification is always via find_iso,
never structural equality.

Every module supports element enumeration on demand (used by the oracle
tests), but all operations work on presentations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .errors import CapExceeded, NotAHomomorphism
from .matrices import (Mat, diag_stack, howell_form, integer_inverse, kron,
                       left_kernel, reduce_mod_span, smith_form, solve_right)
from .rings import ZZ, CoeffRing, require_finite, same_ring

DEFAULT_GEN_CAP = 6
DEFAULT_ELEMENT_BUDGET = 10**6


@dataclass(frozen=True)
class FPMod:
    """Lambda^gens / rowspan(rels), rels in Howell form."""

    ring: CoeffRing
    gens: int
    rels: Mat

    def __post_init__(self):
        require_finite(self.ring)
        if self.rels.cols != self.gens or self.rels.ring != self.ring:
            raise ValueError("relation matrix shape/ring mismatch")
        h, _ = howell_form(self.rels)
        if h != self.rels:
            raise ValueError("relations must be in Howell form; use fpmod()")

    def cardinality(self) -> int:
        n = self.ring.modulus
        pivots = {}
        for i in range(self.rels.rows):
            j = next(c for c in range(self.gens) if self.rels.row(i)[c])
            pivots[j] = self.rels.row(i)[j]
        total = 1
        for j in range(self.gens):
            total *= pivots.get(j, n)
        return total

    def is_zero(self) -> bool:
        return self.cardinality() == 1

    def reduce_element(self, v: Mat) -> Mat:
        return reduce_mod_span(v, self.rels) if self.rels.rows else v

    def elements(self, budget: int = DEFAULT_ELEMENT_BUDGET):
        """Canonical coset representatives, deterministic order (rightmost
        coordinate fastest).  Raises CapExceeded past the budget."""
        if self.cardinality() > budget:
            raise CapExceeded(f"module has {self.cardinality()} elements, budget {budget}")
        n = self.ring.modulus
        pivots = {}
        for i in range(self.rels.rows):
            j = next(c for c in range(self.gens) if self.rels.row(i)[c])
            pivots[j] = self.rels.row(i)[j]
        ranges = [range(pivots.get(j, n)) for j in range(self.gens)]
        import itertools
        for tup in itertools.product(*ranges):
            yield Mat(self.ring, 1, self.gens, tup)

    def __repr__(self):
        return f"FPMod({self.ring.name()}, gens={self.gens}, rels={self.rels.to_rows()})"


def fpmod(ring: CoeffRing, gens: int, rels) -> FPMod:
    """Public constructor: Howell-reduces the relations."""
    m = rels if isinstance(rels, Mat) else Mat.from_rows(ring, rels, cols=gens)
    h, _ = howell_form(m)
    return FPMod(ring, gens, h)


def free_module(ring: CoeffRing, k: int) -> FPMod:
    return fpmod(ring, k, Mat.zero(ring, 0, k))


def cyclic_module(ring: CoeffRing, a: int) -> FPMod:
    """Lambda/(a); a = 0 gives the free module of rank 1."""
    a = ring.reduce(a)
    return fpmod(ring, 1, [] if a == 0 else [[a]])


def zero_module(ring: CoeffRing) -> FPMod:
    return free_module(ring, 0)


def direct_sum(m: FPMod, n: FPMod) -> FPMod:
    same_ring(m.ring, n.ring)
    return fpmod(m.ring, m.gens + n.gens, diag_stack(m.rels, n.rels))


@dataclass(frozen=True)
class ModHom:
    """Module homomorphism src -> dst given by a (src.gens x dst.gens)
    matrix of generator images, stored reduced modulo dst relations."""

    src: FPMod
    dst: FPMod
    mat: Mat

    def __post_init__(self):
        same_ring(self.src.ring, self.dst.ring)
        if (self.mat.rows, self.mat.cols) != (self.src.gens, self.dst.gens):
            raise ValueError("hom matrix shape mismatch")
        if self.src.rels.rows:
            image = self.src.rels.mul(self.mat)
            if not self.dst.reduce_element(image).is_zero():
                raise NotAHomomorphism(
                    f"matrix does not respect relations: {self.src!r} -> {self.dst!r} via {self.mat.to_rows()}")
        reduced = self.dst.reduce_element(self.mat)
        if reduced != self.mat:
            object.__setattr__(self, "mat", reduced)

    @property
    def ring(self):
        return self.src.ring

    def apply(self, v: Mat) -> Mat:
        return self.dst.reduce_element(v.mul(self.mat))

    def then(self, other: ModHom) -> ModHom:
        """Diagrammatic composition: self followed by other."""
        if self.dst != other.src:
            raise ValueError("composition mismatch")
        return ModHom(self.src, other.dst, self.mat.mul(other.mat))

    def add(self, other: ModHom) -> ModHom:
        if (self.src, self.dst) != (other.src, other.dst):
            raise ValueError("sum of homs with different endpoints")
        return ModHom(self.src, self.dst, self.mat.add(other.mat))

    def scale(self, c: int) -> ModHom:
        return ModHom(self.src, self.dst, self.mat.scale(c))

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def __repr__(self):
        return f"ModHom({self.src!r} -> {self.dst!r}, {self.mat.to_rows()})"


def identity_hom(m: FPMod) -> ModHom:
    return ModHom(m, m, Mat.identity(m.ring, m.gens))


def zero_hom(m: FPMod, n: FPMod) -> ModHom:
    return ModHom(m, n, Mat.zero(m.ring, m.gens, n.gens))


def hom_tensor(f: ModHom, g: ModHom) -> ModHom:
    """f (x) g on the tensor products, Kronecker on generator grids."""
    return ModHom(tensor_mod(f.src, g.src), tensor_mod(f.dst, g.dst), kron(f.mat, g.mat))


def solve_mod(a: Mat, b: Mat, rels: Mat) -> Mat:
    """Canonical x with x*a == b modulo rowspan(rels): solve against the
    stacked matrix and drop the relation coefficients."""
    stacked = a.stack(rels) if rels.rows else a
    x = solve_right(stacked, b)
    return x.take_cols(list(range(a.rows))) if rels.rows else x


# ---------------------------------------------------------------------------
# canonical form, kernel, cokernel
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    module: FPMod
    to_canonical: ModHom    # original -> canonical
    from_canonical: ModHom  # canonical -> original


def canonical_form(m: FPMod) -> CanonicalForm:
    """Eliminate generators with unit pivots; the witnessing isomorphism
    pair is recorded.  In Howell form a unit pivot's column is zero in all
    other rows, so elimination is a plain deletion plus substitution."""
    cur = m
    fwd = identity_hom(m)
    bwd = identity_hom(m)
    while True:
        unit = None
        for i in range(cur.rels.rows):
            row = cur.rels.row(i)
            j = next(c for c in range(cur.gens) if row[c])
            if row[j] == 1:
                unit = (i, j)
                break
        if unit is None:
            return CanonicalForm(cur, fwd, bwd)
        i, j = unit
        keep = [c for c in range(cur.gens) if c != j]
        rows = [r for t, r in enumerate(cur.rels.to_rows()) if t != i]
        nxt = fpmod(cur.ring, cur.gens - 1, [[r[c] for c in keep] for r in rows])
        # e_j = -sum_{c != j} rels[i][c] e_c in the quotient
        step_fwd_rows = []
        for g in range(cur.gens):
            if g == j:
                step_fwd_rows.append([cur.ring.reduce(-cur.rels.row(i)[c]) for c in keep])
            else:
                step_fwd_rows.append([1 if keep[t] == g else 0 for t in range(len(keep))])
        step_fwd = ModHom(cur, nxt, Mat.from_rows(cur.ring, step_fwd_rows, cols=nxt.gens))
        step_bwd_rows = [[1 if c == keep[t] else 0 for c in range(cur.gens)] for t in range(len(keep))]
        step_bwd = ModHom(nxt, cur, Mat.from_rows(cur.ring, step_bwd_rows, cols=cur.gens))
        fwd = fwd.then(step_fwd)
        bwd = step_bwd.then(bwd)
        cur = nxt


def kernel(h: ModHom) -> tuple[FPMod, ModHom]:
    """Kernel presentation with its embedding.

    {v : v*mat in span(dst.rels)} is the projection of the left kernel of
    [mat; dst.rels]; its relations are again a left-kernel projection.
    """
    g = h.src.gens
    stacked = h.mat.stack(h.dst.rels) if h.dst.rels.rows else h.mat
    full = left_kernel(stacked)
    v = full.take_cols(list(range(g))) if full.rows else Mat.zero(h.ring, 0, g)
    v, _ = howell_form(v)
    ker_rels_full = left_kernel(v.stack(h.src.rels) if h.src.rels.rows else v)
    ker_rels = (ker_rels_full.take_cols(list(range(v.rows)))
                if ker_rels_full.rows else Mat.zero(h.ring, 0, v.rows))
    k0 = fpmod(h.ring, v.rows, ker_rels)
    emb0 = ModHom(k0, h.src, v)
    cf = canonical_form(k0)
    return cf.module, cf.from_canonical.then(emb0)


def cokernel(h: ModHom) -> tuple[FPMod, ModHom]:
    """Cokernel presentation with the projection from dst."""
    c0 = fpmod(h.ring, h.dst.gens, h.mat.stack(h.dst.rels))
    proj0 = ModHom(h.dst, c0, Mat.identity(h.ring, h.dst.gens))
    cf = canonical_form(c0)
    return cf.module, proj0.then(cf.to_canonical)


def image_cardinality(h: ModHom) -> int:
    sub, _ = howell_form(h.mat.stack(h.dst.rels))
    denom = fpmod(h.ring, h.dst.gens, sub).cardinality()
    return h.dst.cardinality() // denom


# ---------------------------------------------------------------------------
# hom groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomGroup:
    """Hom_Lambda(src, dst) as a finitely presented module.

    `module` presents the hom group; generator i corresponds to the
    homomorphism with matrix basis[i].  Coordinates are canonical, so
    membership and equality are decidable.
    """

    src: FPMod
    dst: FPMod
    module: FPMod
    basis: tuple[Mat, ...]

    def hom_from_coords(self, coords: Mat) -> ModHom:
        g, h = self.src.gens, self.dst.gens
        acc = Mat.zero(self.src.ring, g, h)
        for i, b in enumerate(self.basis):
            c = coords[0, i]
            if c:
                acc = acc.add(b.scale(c))
        return ModHom(self.src, self.dst, acc)

    def coords_of(self, hom: ModHom) -> Mat:
        if (hom.src, hom.dst) != (self.src, self.dst):
            raise ValueError("hom does not belong to this group")
        ring = self.src.ring
        flat_basis = Mat.from_rows(
            ring, [list(b.entries) for b in self.basis], cols=self.src.gens * self.dst.gens)
        ambient_rels = kron(Mat.identity(ring, self.src.gens), self.dst.rels)
        target = Mat(ring, 1, len(hom.mat.entries), hom.mat.entries)
        return solve_mod(flat_basis, target, ambient_rels)

    def cardinality(self) -> int:
        return self.module.cardinality()

    def elements(self, budget: int = DEFAULT_ELEMENT_BUDGET):
        for coords in self.module.elements(budget):
            yield self.hom_from_coords(coords)


@lru_cache(maxsize=4096)
def hom_group(m: FPMod, n: FPMod) -> HomGroup:
    """Hom(m, n) = kernel of the induced map n^gens -> n^rels given by the
    relation matrix of m (a hom matrix F is well defined iff R*F vanishes
    in n^rels, and equality of homs is equality in n^gens)."""
    same_ring(m.ring, n.ring)
    ring = m.ring
    g, h = m.gens, n.gens
    r = m.rels.rows
    big_src = fpmod(ring, g * h, kron(Mat.identity(ring, g), n.rels))
    big_dst = fpmod(ring, r * h, kron(Mat.identity(ring, r), n.rels))
    connecting = ModHom(big_src, big_dst, kron(m.rels.transpose(), Mat.identity(ring, h)))
    k, emb = kernel(connecting)
    basis = tuple(Mat(ring, g, h, emb.mat.row(i)) for i in range(k.gens))
    return HomGroup(m, n, k, basis)


def is_surjective(h: ModHom) -> bool:
    sub, _ = howell_form(h.mat.stack(h.dst.rels))
    return fpmod(h.ring, h.dst.gens, sub).is_zero()


def is_iso(h: ModHom) -> bool:
    return h.src.cardinality() == h.dst.cardinality() and is_surjective(h)


def inverse_of_iso(h: ModHom) -> ModHom:
    """Two-sided inverse of an isomorphism (rows solved exactly)."""
    sol = solve_mod(h.mat, Mat.identity(h.ring, h.dst.gens), h.dst.rels)
    inv = ModHom(h.dst, h.src, sol)
    if not _is_identity(h.then(inv)) or not _is_identity(inv.then(h)):
        raise NotAHomomorphism("not invertible")
    return inv


def _is_identity(h: ModHom) -> bool:
    return h.mat == h.src.reduce_element(Mat.identity(h.ring, h.src.gens))


# ---------------------------------------------------------------------------
# tensor product
# ---------------------------------------------------------------------------


def tensor_mod(m: FPMod, n: FPMod) -> FPMod:
    """m (x) n: generator grid of size m.gens*n.gens (left factor major),
    relations (m.rels (x) I) stacked on (I (x) n.rels)."""
    same_ring(m.ring, n.ring)
    ring = m.ring
    rels = kron(m.rels, Mat.identity(ring, n.gens)).stack(
        kron(Mat.identity(ring, m.gens), n.rels))
    return fpmod(ring, m.gens * n.gens, rels)


# ---------------------------------------------------------------------------
# structure: decomposition, isomorphism, indecomposables
# ---------------------------------------------------------------------------


def cyclic_decomposition(m: FPMod) -> tuple[tuple[int, ...], ModHom, ModHom]:
    """Elementary-divisor decomposition via the integer Smith form of the
    relations stacked with n*I.  Returns (divisors, to_diag, from_diag)
    where divisors lists the diagonal presentation (1 entries kept so the
    change of basis is square)."""
    n = m.ring.modulus
    lifted = Mat.from_rows(ZZ, m.rels.to_rows(), cols=m.gens).stack(
        Mat.identity(ZZ, m.gens).scale(n))
    d, p, q = smith_form(lifted)
    divisors = tuple(d[i, i] for i in range(m.gens))
    diag = fpmod(m.ring, m.gens, [[divisors[i] if j == i else 0 for j in range(m.gens)]
                                  for i in range(m.gens)])
    to_diag = ModHom(m, diag, q.cast(m.ring))
    from_diag = ModHom(diag, m, integer_inverse(q).cast(m.ring))
    return divisors, to_diag, from_diag


def invariants(m: FPMod) -> tuple[int, ...]:
    """Iso-invariant: sorted nontrivial elementary divisors."""
    divisors, _, _ = cyclic_decomposition(m)
    return tuple(sorted(d for d in divisors if d != 1))


def find_iso(m: FPMod, n: FPMod) -> ModHom | None:
    """An isomorphism m -> n with verified two-sided inverse, or None.

    Strategy: compare elementary divisors (complete invariant for modules
    over Z/n), then assemble the explicit change-of-basis isomorphism and
    verify it is two-sided invertible.
    """
    if m.ring != n.ring:
        return None
    if m.cardinality() != n.cardinality():
        return None
    if m == n:
        return identity_hom(m)
    dm, to_m, from_m = cyclic_decomposition(m)
    dn, to_n, from_n = cyclic_decomposition(n)
    if tuple(sorted(d for d in dm if d != 1)) != tuple(sorted(d for d in dn if d != 1)):
        return None
    # match diagonal summands: nontrivial divisors in sorted order, trivial
    # (unit) summands are zero and map anywhere
    ring = m.ring

    def slots(divs):
        order = sorted((d, i) for i, d in enumerate(divs) if d != 1)
        return [i for _, i in order]

    sm, sn = slots(dm), slots(dn)
    perm = Mat.zero(ring, m.gens, n.gens).to_rows()
    for a, b in zip(sm, sn):
        perm[a][b] = 1
    bridge = ModHom(to_m.dst, to_n.dst, Mat.from_rows(ring, perm, cols=n.gens))
    iso = to_m.then(bridge).then(from_n)
    if not is_iso(iso):
        raise AssertionError("constructed isomorphism failed verification")
    inverse_of_iso(iso)  # verify two-sidedness
    return iso


def endomorphism_is_unit(e: ModHom) -> bool:
    return is_iso(e)


def has_nontrivial_idempotent(m: FPMod, budget: int = DEFAULT_ELEMENT_BUDGET) -> bool:
    """Exhaustive search for a nontrivial idempotent endomorphism."""
    if m.is_zero():
        return False
    end = hom_group(m, m)
    ident = identity_hom(m)
    for e in end.elements(budget):
        if e.is_zero() or e.mat == ident.mat:
            continue
        if e.then(e).mat == e.mat:
            return True
    return False


def divisors_of(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def enumerate_indec_modules(ring: CoeffRing, cap: int = DEFAULT_GEN_CAP,
                            budget: int = DEFAULT_ELEMENT_BUDGET) -> list[FPMod]:
    """Complete, duplicate-free list of indecomposable modules presentable
    with <= cap generators, ordered by descending cardinality then canonical
    presentation.

    Over Z/n every finitely presented module is a direct sum of cyclic
    modules Lambda/(d) with d | n (integer Smith form of the lifted
    presentation), so all indecomposables are cyclic and any cap >= 1 yields
    the same list.  Indecomposability of each candidate is certified by the
    exhaustive idempotent search, not assumed.
    """
    require_finite(ring)
    if cap < 1:
        return []
    n = ring.modulus
    if n > budget:
        raise CapExceeded(f"ring with {n} elements exceeds enumeration budget {budget}")
    out = []
    for d in divisors_of(n):
        if d == 1:
            continue
        m = cyclic_module(ring, d % n)
        if has_nontrivial_idempotent(m, budget):
            continue
        if any(find_iso(m, other) is not None for other in out):
            continue
        out.append(m)
    out.sort(key=lambda m: (-m.cardinality(), m.rels.entries))
    return out


@lru_cache(maxsize=64)
def test_modules(ring: CoeffRing) -> tuple[FPMod, ...]:
    """The evaluation-oracle test set: all indecomposables over the ring."""
    return tuple(enumerate_indec_modules(ring))
