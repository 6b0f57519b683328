"""Presented objects over a tensor quiver and the induced exact functor.

The free additive hull of the quiver has formal vertex sums as objects and
matrices of path combinations as morphisms.  Copresented objects (a vertex
sum with a constraint matrix into another) are the flat objects, closed
under kernels by pairing constraint matrices; presented functors are
cokernels of maps between their representables.  A checked representation
induces the exact functor realized here:

  value on a flat object   = kernel of the realized constraint matrix
                             (the kernel formula),
  value on a presented functor = cokernel across the presentation layers.

Kernels of presented-functor morphisms follow the representable recipe,
cokernels stack presentations, and the tensor product uses the two-sided
presentation built from the path tensor (Koszul signs in the graded case).
Presentation squares are verified strictly or against an explicit homotopy
witness; nothing is left unchecked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalCheckError
from .modules import FPMod, ModHom, cokernel, kernel
from .functors import _descend, _factor_through_mono
from .quiver import LinComb, Path, TensorQuiverSpec, normal_form, \
    tensor_lincombs
from .reps import AdditiveFunctor


QObj = tuple  # tuple of vertex names


@dataclass(frozen=True)
class QMor:
    """Matrix of path combinations between formal vertex sums; entries are
    kept in rewriting normal form."""

    spec: TensorQuiverSpec = field(repr=False)
    src: QObj
    dst: QObj
    entries: tuple  # row-major LinComb grid

    @staticmethod
    def make(spec, src, dst, grid) -> QMor:
        ents = []
        for i, v in enumerate(src):
            for j, w in enumerate(dst):
                lc = grid[i][j]
                if lc is None:
                    lc = LinComb.make(v, w, [])
                if (lc.src, lc.dst) != (v, w):
                    raise ValueError(f"entry ({i},{j}) endpoints mismatch")
                ents.append(normal_form(spec, lc))
        return QMor(spec, tuple(src), tuple(dst), tuple(ents))

    @staticmethod
    def zero(spec, src, dst) -> QMor:
        return QMor.make(spec, src, dst, [[None] * len(dst) for _ in src])

    @staticmethod
    def identity(spec, obj) -> QMor:
        grid = [[LinComb.make(v, w, [(1, Path(v, ()))]) if i == j else None
                 for j, w in enumerate(obj)] for i, v in enumerate(obj)]
        return QMor.make(spec, obj, obj, grid)

    def entry(self, i, j) -> LinComb:
        return self.entries[i * len(self.dst) + j]

    def then(self, other: QMor) -> QMor:
        if self.dst != other.src:
            raise ValueError("composition mismatch")
        grid = []
        for i, v in enumerate(self.src):
            row = []
            for j, w in enumerate(other.dst):
                acc = LinComb.make(v, w, [])
                for k in range(len(self.dst)):
                    for ca, pa in self.entry(i, k).terms:
                        for cb, pb in other.entry(k, j).terms:
                            acc = acc.add(LinComb.make(
                                v, w, [(ca * cb, Path(v, pa.edges + pb.edges))]))
                row.append(acc)
            grid.append(row)
        return QMor.make(self.spec, self.src, other.dst, grid)

    def add(self, other: QMor) -> QMor:
        grid = [[self.entry(i, j).add(other.entry(i, j))
                 for j in range(len(self.dst))] for i in range(len(self.src))]
        return QMor.make(self.spec, self.src, self.dst, grid)

    def scale(self, c: int) -> QMor:
        grid = [[self.entry(i, j).scale(c) for j in range(len(self.dst))]
                for i in range(len(self.src))]
        return QMor.make(self.spec, self.src, self.dst, grid)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def hstack(self, other: QMor) -> QMor:
        if self.src != other.src:
            raise ValueError("hstack mismatch")
        grid = [[self.entry(i, j) for j in range(len(self.dst))]
                + [other.entry(i, j) for j in range(len(other.dst))]
                for i in range(len(self.src))]
        return QMor.make(self.spec, self.src, self.dst + other.dst, grid)

    def stack(self, other: QMor) -> QMor:
        if self.dst != other.dst:
            raise ValueError("stack mismatch")
        grid = [[self.entry(i, j) for j in range(len(self.dst))]
                for i in range(len(self.src))]
        grid += [[other.entry(i, j) for j in range(len(other.dst))]
                 for i in range(len(other.src))]
        return QMor.make(self.spec, self.src + other.src, self.dst, grid)


def qmor_tensor(a: QMor, b: QMor, signed: bool) -> QMor:
    """Entrywise path tensor (left factor major on objects), with the
    Koszul sign in the signed case."""
    spec = a.spec
    src = tuple(spec.vt(v, w) for v in a.src for w in b.src)
    dst = tuple(spec.vt(v, w) for v in a.dst for w in b.dst)
    grid = []
    for i in range(len(a.src)):
        for k in range(len(b.src)):
            row = []
            for j in range(len(a.dst)):
                for l in range(len(b.dst)):
                    row.append(tensor_lincombs(spec, a.entry(i, j),
                                               b.entry(k, l), signed))
            grid.append(row)
    return QMor.make(spec, src, dst, grid)


# ---------------------------------------------------------------------------
# flat (copresented) objects and their morphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QPres:
    """A vertex sum with a constraint matrix; the object is the kernel of
    the induced map of representables."""

    gen: QObj
    cop: QMor  # gen -> relobj

    @property
    def relobj(self) -> QObj:
        return self.cop.dst

    @property
    def spec(self) -> TensorQuiverSpec:
        return self.cop.spec

    @staticmethod
    def free(spec, obj) -> QPres:
        return QPres(tuple(obj), QMor.zero(spec, tuple(obj), ()))


@dataclass(frozen=True)
class QPresHom:
    """Morphism of flat objects: a lift (phi, psi) with
    phi then cop_dst == cop_src then psi, strictly."""

    src: QPres
    dst: QPres
    phi: QMor  # src.gen -> dst.gen
    psi: QMor  # src.relobj -> dst.relobj

    def __post_init__(self):
        if self.phi.then(self.dst.cop) != self.src.cop.then(self.psi):
            raise InternalCheckError("copresentation square does not commute")

    def then(self, other: QPresHom) -> QPresHom:
        return QPresHom(self.src, other.dst, self.phi.then(other.phi),
                        self.psi.then(other.psi))

    def scale(self, c: int) -> QPresHom:
        return QPresHom(self.src, self.dst, self.phi.scale(c), self.psi.scale(c))


def qpres_identity(m: QPres) -> QPresHom:
    spec = m.spec
    return QPresHom(m, m, QMor.identity(spec, m.gen), QMor.identity(spec, m.relobj))


def qpres_sum(a: QPres, b: QPres) -> QPres:
    spec = a.spec
    cop = a.cop.hstack(QMor.zero(spec, a.gen, b.relobj)).stack(
        QMor.zero(spec, b.gen, a.relobj).hstack(b.cop))
    return QPres(a.gen + b.gen, cop)


def qpres_incl(a: QPres, b: QPres, which: int) -> QPresHom:
    spec = a.spec
    s = qpres_sum(a, b)
    if which == 0:
        phi = QMor.identity(spec, a.gen).hstack(QMor.zero(spec, a.gen, b.gen))
        psi = QMor.identity(spec, a.relobj).hstack(QMor.zero(spec, a.relobj, b.relobj))
        return QPresHom(a, s, phi, psi)
    phi = QMor.zero(spec, b.gen, a.gen).hstack(QMor.identity(spec, b.gen))
    psi = QMor.zero(spec, b.relobj, a.relobj).hstack(QMor.identity(spec, b.relobj))
    return QPresHom(b, s, phi, psi)


def qpres_proj(a: QPres, b: QPres, which: int) -> QPresHom:
    spec = a.spec
    s = qpres_sum(a, b)
    if which == 0:
        phi = QMor.identity(spec, a.gen).stack(QMor.zero(spec, b.gen, a.gen))
        psi = QMor.identity(spec, a.relobj).stack(QMor.zero(spec, b.relobj, a.relobj))
        return QPresHom(s, a, phi, psi)
    phi = QMor.zero(spec, a.gen, b.gen).stack(QMor.identity(spec, b.gen))
    psi = QMor.zero(spec, a.relobj, b.relobj).stack(QMor.identity(spec, b.relobj))
    return QPresHom(s, b, phi, psi)


def qpres_kernel(h: QPresHom) -> tuple[QPres, QPresHom]:
    """Flat objects are closed under kernels: pair the source constraints
    with the morphism's generator matrix."""
    spec = h.src.spec
    m = h.src
    ker = QPres(m.gen, m.cop.hstack(h.phi))
    psi = QMor.identity(spec, m.relobj).stack(QMor.zero(spec, h.dst.gen, m.relobj))
    emb = QPresHom(ker, m, QMor.identity(spec, m.gen), psi)
    return ker, emb


def qpres_tensor(a: QPres, b: QPres, signed: bool) -> QPres:
    """Kernel-formula tensor of flat objects: constraints
    (cop_a (x) id) paired with (id (x) cop_b)."""
    left = qmor_tensor(a.cop, QMor.identity(a.spec, b.gen), signed)
    right = qmor_tensor(QMor.identity(a.spec, a.gen), b.cop, signed)
    return QPres(left.src, left.hstack(right))


def qpreshom_tensor(f: QPresHom, g: QPresHom, signed: bool) -> QPresHom:
    spec = f.src.spec
    src = qpres_tensor(f.src, g.src, signed)
    dst = qpres_tensor(f.dst, g.dst, signed)
    phi = qmor_tensor(f.phi, g.phi, signed)
    tl = qmor_tensor(f.psi, g.phi, signed)
    br = qmor_tensor(f.phi, g.psi, signed)
    psi = tl.hstack(QMor.zero(spec, tl.src, br.dst)).stack(
        QMor.zero(spec, br.src, tl.dst).hstack(br))
    return QPresHom(src, dst, phi, psi)


# ---------------------------------------------------------------------------
# presented functors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QFunctor:
    """Cokernel of the map of representables induced by pres: rel -> gen."""

    pres: QPresHom

    @property
    def gen_side(self) -> QPres:
        return self.pres.dst

    @property
    def rel_side(self) -> QPres:
        return self.pres.src

    @property
    def spec(self) -> TensorQuiverSpec:
        return self.pres.src.spec


def qfun_from_matrix(spec, phi: QMor) -> QFunctor:
    """Presented functor with free copresentation layers: any matrix
    phi: A -> B presents the cokernel of the induced map."""
    return QFunctor(QPresHom(QPres.free(spec, phi.src), QPres.free(spec, phi.dst),
                             phi, QMor.zero(spec, (), ())))


@dataclass(frozen=True)
class QFunHom:
    """Morphism of presented functors: copresentation lifts whose square
    commutes strictly, or up to the explicit homotopy witness
    s: rel_side(src).relobj -> gen_side(dst).gen with difference
    cop then s."""

    src: QFunctor
    dst: QFunctor
    gen_map: QPresHom  # src.gen_side -> dst.gen_side
    rel_map: QPresHom  # src.rel_side -> dst.rel_side
    witness: QMor | None = None

    def __post_init__(self):
        left = self.src.pres.then(self.gen_map).phi
        right = self.rel_map.then(self.dst.pres).phi
        diff = left.add(right.scale(-1))
        if diff.is_zero():
            return
        if self.witness is None:
            raise InternalCheckError("presentation square does not commute")
        via = self.src.rel_side.cop.then(self.witness)
        if diff != via:
            raise InternalCheckError("homotopy witness does not close the square")


def qfun_identity(f: QFunctor) -> QFunHom:
    return QFunHom(f, f, qpres_identity(f.gen_side), qpres_identity(f.rel_side))


def qfun_cokernel(h: QFunHom) -> tuple[QFunctor, QFunHom]:
    """Stack the target presentation with the incoming generator map; the
    projection is the identity on the generator side."""
    g = h.dst
    rel = qpres_sum(g.rel_side, h.src.gen_side)
    phi = g.pres.phi.stack(h.gen_map.phi)
    psi = g.pres.psi.stack(h.gen_map.psi)
    cok = QFunctor(QPresHom(rel, g.gen_side, phi, psi))
    proj = QFunHom(g, cok, qpres_identity(g.gen_side),
                   qpres_incl(g.rel_side, h.src.gen_side, 0))
    return cok, proj


def qfun_kernel(h: QFunHom) -> tuple[QFunctor, QFunHom]:
    """Representable recipe: W is the flat kernel of (u, -pres_G) out of
    gen(F) + rel(G), W2 the flat kernel of (t, -pres_F) out of W + rel(F);
    the kernel is presented by W2 -> W and embeds via the projections, with
    the homotopy witness picking the paired-constraint block."""
    spec = h.src.spec
    f, g = h.src, h.dst
    mf, nf = f.gen_side, f.rel_side
    s1 = qpres_sum(mf, g.rel_side)
    delta1 = QPresHom(s1, g.gen_side,
                      h.gen_map.phi.stack(g.pres.phi.scale(-1)),
                      h.gen_map.psi.stack(g.pres.psi.scale(-1)))
    w, emb_w = qpres_kernel(delta1)
    t = emb_w.then(qpres_proj(mf, g.rel_side, 0))
    s2 = qpres_sum(w, nf)
    delta2 = QPresHom(s2, mf,
                      t.phi.stack(f.pres.phi.scale(-1)),
                      t.psi.stack(f.pres.psi.scale(-1)))
    w2, emb_w2 = qpres_kernel(delta2)
    k_pres = emb_w2.then(qpres_proj(w, nf, 0))
    ker = QFunctor(k_pres)
    rel_map = emb_w2.then(qpres_proj(w, nf, 1))
    witness = QMor.zero(spec, s2.relobj, mf.gen).stack(QMor.identity(spec, mf.gen))
    emb = QFunHom(ker, f, t, rel_map, witness)
    return ker, emb


def qfun_tensor(a: QFunctor, b: QFunctor, signed: bool) -> QFunctor:
    """Two-sided presentation of the tensor product on the flat layers."""
    gen = qpres_tensor(a.gen_side, b.gen_side, signed)
    left = qpreshom_tensor(a.pres, qpres_identity(b.gen_side), signed)
    right = qpreshom_tensor(qpres_identity(a.gen_side), b.pres, signed)
    rel = qpres_sum(left.src, right.src)
    phi = left.phi.stack(right.phi)
    psi = left.psi.stack(right.psi)
    return QFunctor(QPresHom(rel, gen, phi, psi))


# ---------------------------------------------------------------------------
# the induced exact functor
# ---------------------------------------------------------------------------


@dataclass
class InducedExact:
    """Realization of the exact functor induced by a checked representation
    (optionally with Koszul signs)."""

    fun: AdditiveFunctor
    signed: bool = False

    def __post_init__(self):
        self._flat_cache: dict = {}
        self._bundle_cache: dict = {}

    def _mor(self, qm: QMor) -> ModHom:
        grid = [[qm.entry(i, j) for j in range(len(qm.dst))]
                for i in range(len(qm.src))]
        return self.fun.on_matrix(qm.src, qm.dst, grid)

    def flat_value(self, m: QPres) -> tuple[FPMod, ModHom]:
        """Kernel formula: the value with its embedding into the realized
        generator sum."""
        if m not in self._flat_cache:
            self._flat_cache[m] = kernel(self._mor(m.cop))
        return self._flat_cache[m]

    def flat_map(self, h: QPresHom) -> ModHom:
        _, esrc = self.flat_value(h.src)
        _, edst = self.flat_value(h.dst)
        ambient = esrc.then(self._mor(h.phi))
        return _factor_through_mono(edst, ambient)

    def _bundle(self, f: QFunctor):
        if f not in self._bundle_cache:
            self._bundle_cache[f] = cokernel(self.flat_map(f.pres))
        return self._bundle_cache[f]

    def value(self, f: QFunctor) -> FPMod:
        return self._bundle(f)[0]

    def on_hom(self, h: QFunHom) -> ModHom:
        _, proj_src = self._bundle(h.src)
        _, proj_dst = self._bundle(h.dst)
        top = self.flat_map(h.gen_map)
        return _descend(proj_src, proj_dst, top)


# ---------------------------------------------------------------------------
# seeded sampling of presented objects and morphisms
# ---------------------------------------------------------------------------


def _basis_table(spec: TensorQuiverSpec, cap: int = 6) -> dict:
    from .quiver import hom_basis
    table = {}
    for v in spec.vertices:
        for w in spec.vertices:
            table[(v, w)] = hom_basis(spec, v, w, cap)
    return table


def sample_qmor(spec, rng, src: QObj, dst: QObj, table, max_coeff: int = 1) -> QMor:
    grid = []
    for v in src:
        row = []
        for w in dst:
            terms = [(rng.randint(-max_coeff, max_coeff), p)
                     for p in table[(v, w)]]
            row.append(LinComb.make(v, w, terms))
        grid.append(row)
    return QMor.make(spec, src, dst, grid)


def sample_qobj(spec, rng, max_len: int = 2) -> QObj:
    n = rng.randint(1, max_len)
    return tuple(rng.choice(spec.vertices) for _ in range(n))


def sample_qfunctor(spec, rng, table, max_len: int = 2) -> QFunctor:
    a = sample_qobj(spec, rng, max_len)
    b = sample_qobj(spec, rng, max_len)
    return qfun_from_matrix(spec, sample_qmor(spec, rng, a, b, table))


def sample_qfunhom(spec, rng, table, max_len: int = 2) -> QFunHom:
    """A random morphism of presented functors with a strict square, built
    by postcomposition or by restricting the relation layer."""
    if rng.random() < 0.5:
        f = sample_qfunctor(spec, rng, table, max_len)
        b2 = sample_qobj(spec, rng, max_len)
        w = sample_qmor(spec, rng, f.pres.dst.gen, b2, table)
        g = qfun_from_matrix(spec, f.pres.phi.then(w))
        gen_map = QPresHom(f.gen_side, g.gen_side, w, QMor.zero(spec, (), ()))
        rel_map = qpres_identity(f.rel_side)
        return QFunHom(f, g, gen_map, rel_map)
    g = sample_qfunctor(spec, rng, table, max_len)
    a0 = sample_qobj(spec, rng, max_len)
    v = sample_qmor(spec, rng, a0, g.pres.src.gen, table)
    f = qfun_from_matrix(spec, v.then(g.pres.phi))
    gen_map = qpres_identity(g.gen_side)
    rel_map = QPresHom(f.rel_side, g.rel_side, v, QMor.zero(spec, (), ()))
    return QFunHom(f, g, gen_map, rel_map)


# ---------------------------------------------------------------------------
# exactness and tensor-compatibility checks
# ---------------------------------------------------------------------------


def kernel_compat(ind: InducedExact, h: QFunHom) -> bool:
    """The induced functor sends the recipe kernel to the target kernel,
    with the embedding realizing the target embedding's image."""
    from .modules import find_iso, image_cardinality
    ker_q, emb = qfun_kernel(h)
    lhs = ind.value(ker_q)
    rhs, _ = kernel(ind.on_hom(h))
    if find_iso(lhs, rhs) is None:
        return False
    realized = ind.on_hom(emb)
    return image_cardinality(realized) == rhs.cardinality()


def cokernel_compat(ind: InducedExact, h: QFunHom) -> bool:
    from .modules import find_iso
    cok_q, _ = qfun_cokernel(h)
    lhs = ind.value(cok_q)
    rhs, _ = cokernel(ind.on_hom(h))
    return find_iso(lhs, rhs) is not None


def tensor_compat(ind: InducedExact, f: QFunctor, g: QFunctor) -> bool:
    from .modules import find_iso, tensor_mod
    lhs = ind.value(qfun_tensor(f, g, ind.signed))
    rhs = tensor_mod(ind.value(f), ind.value(g))
    return find_iso(lhs, rhs) is not None
