"""Finitely presented functors on the module category of a finite ring.

An object is presented by a module homomorphism g: M -> N; the functor it
denotes is X |-> coker(Hom(N, X) -> Hom(M, X)) where the map precomposes
with g.  Representables yoneda(m) = (m, -) are the projectives, and every
operation below (evaluation, morphisms as presentation squares modulo
homotopy, kernels, cokernels, the right-exact tensor product, induced exact
functors) reduces to exact matrix computations two presentation layers
down.

Kernels are computed by the representable recipe (the kernel of a map of
representables induced by f: A -> B is the representable of coker f)
extended through presentations, and every kernel/cokernel is post-validated
against the pointwise evaluation oracle; a validation failure raises
InternalCheckError and is never returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (CapExceeded, IllFormedFunctor, InternalCheckError,
                     NoSolution, NotLiftable)
from .matrices import Mat, diag_stack, howell_form, kron, reduce_mod_span
from .modules import (DEFAULT_ELEMENT_BUDGET, FPMod, HomGroup, ModHom,
                      canonical_form, cokernel, cyclic_decomposition,
                      direct_sum, fpmod, free_module, hom_group, hom_tensor,
                      identity_hom, invariants, kernel, solve_mod,
                      tensor_mod, test_modules, zero_hom, zero_module)
from .rings import CoeffRing, require_finite, same_ring


@dataclass(frozen=True)
class FPFunctor:
    """Presented by pres: M -> N; denotes X |-> coker(Hom(N,X) -> Hom(M,X))."""

    pres: ModHom

    @property
    def ring(self) -> CoeffRing:
        return self.pres.ring

    @property
    def gen_module(self) -> FPMod:
        return self.pres.src

    @property
    def rel_module(self) -> FPMod:
        return self.pres.dst

    def __repr__(self):
        return (f"FPFunctor({self.gen_module!r} -> {self.rel_module!r} "
                f"via {self.pres.mat.to_rows()})")


def yoneda(m: FPMod) -> FPFunctor:
    """The representable (m, -), presented by the zero map m -> 0."""
    require_finite(m.ring)
    return FPFunctor(zero_hom(m, zero_module(m.ring)))


def zero_functor(ring: CoeffRing) -> FPFunctor:
    z = zero_module(ring)
    return FPFunctor(identity_hom(z))


def unit_functor(ring: CoeffRing) -> FPFunctor:
    """The tensor unit: the representable of the free module of rank 1."""
    return yoneda(free_module(ring, 1))


# ---------------------------------------------------------------------------
# evaluation (the pointwise oracle's substrate)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Evaluation:
    """F(x) together with the coordinate bookkeeping: gen_homs is
    Hom(gen_module, x), and proj maps its presentation onto the value."""

    functor: FPFunctor
    at: FPMod
    value: FPMod
    gen_homs: HomGroup
    proj: ModHom  # gen_homs.module -> value


@lru_cache(maxsize=16384)
def evaluation(f: FPFunctor, x: FPMod) -> Evaluation:
    same_ring(f.ring, x.ring)
    hm = hom_group(f.gen_module, x)
    hn = hom_group(f.rel_module, x)
    rows = []
    for b in hn.basis:
        composed = ModHom(f.gen_module, x, f.pres.mat.mul(b))
        rows.append(list(hm.coords_of(composed).row(0)))
    conn = ModHom(hn.module, hm.module,
                  Mat.from_rows(f.ring, rows, cols=hm.module.gens))
    value, proj = cokernel(conn)
    return Evaluation(f, x, value, hm, proj)


def evaluate(f: FPFunctor, x: FPMod) -> FPMod:
    return evaluation(f, x).value


def _descend(proj_src: ModHom, proj_dst: ModHom, top: ModHom) -> ModHom:
    """Induced map on cokernels: lift generators along the source projection,
    push through top, project.  The ModHom constructor verifies the result
    is well defined."""
    lift = solve_mod(proj_src.mat, Mat.identity(proj_src.ring, proj_src.dst.gens),
                     proj_src.dst.rels)
    return ModHom(proj_src.dst, proj_dst.dst, lift.mul(top.mat).mul(proj_dst.mat))


def _factor_through_mono(emb: ModHom, phi: ModHom) -> ModHom:
    """The map psi with psi.then(emb) == phi, for phi landing in the image
    of the injective emb."""
    x = solve_mod(emb.mat, phi.mat, emb.dst.rels)
    return ModHom(phi.src, emb.src, x)


def evaluate_hom(f: FPFunctor, w: ModHom) -> ModHom:
    """F(w): F(x) -> F(y) for w: x -> y, by post-composition on the
    generating hom coordinates."""
    ev_x = evaluation(f, w.src)
    ev_y = evaluation(f, w.dst)
    rows = []
    for b in ev_x.gen_homs.basis:
        pushed = ModHom(f.gen_module, w.dst, b.mul(w.mat))
        rows.append(list(ev_y.gen_homs.coords_of(pushed).row(0)))
    top = ModHom(ev_x.gen_homs.module, ev_y.gen_homs.module,
                 Mat.from_rows(f.ring, rows, cols=ev_y.gen_homs.module.gens))
    return _descend(ev_x.proj, ev_y.proj, top)


# ---------------------------------------------------------------------------
# morphisms: presentation squares modulo homotopy
# ---------------------------------------------------------------------------


@lru_cache(maxsize=16384)
def _homotopy_lattice(dst_pres: ModHom, m: FPMod) -> Mat:
    """Howell form of the lattice of flattened gen-map matrices that present
    the zero morphism into a functor with presentation dst_pres, for gen
    maps dst_pres.src -> m: spanned by s o dst_pres for s: dst_pres.dst -> m
    together with matrices whose rows lie in the relation span of m."""
    ring = m.ring
    rows_src = dst_pres.src.gens
    homs = hom_group(dst_pres.dst, m)
    rows = [list(dst_pres.mat.mul(s).entries) for s in homs.basis]
    width = rows_src * m.gens
    lattice = Mat.from_rows(ring, rows, cols=width)
    lattice = lattice.stack(kron(Mat.identity(ring, rows_src), m.rels))
    h, _ = howell_form(lattice)
    return h


@dataclass(frozen=True)
class FunHom:
    """Morphism src -> dst of presented functors.

    Data: gen_map u: dst.gen_module -> src.gen_module and rel_map
    v: dst.rel_module -> src.rel_module with
    u.then(src.pres) == dst.pres.then(v) (contravariance of the Yoneda
    embedding reverses the arrows).  Two squares present the same morphism
    iff their gen maps differ by s o dst.pres plus relation rows; `canon` is
    the reduced representative, and equality/hashing use only it.
    """

    src: FPFunctor
    dst: FPFunctor
    gen_map: ModHom = field(compare=False)
    rel_map: ModHom = field(compare=False)
    canon: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        f, g = self.src, self.dst
        if (self.gen_map.src, self.gen_map.dst) != (g.gen_module, f.gen_module):
            raise ValueError("gen_map endpoints do not match presentations")
        if (self.rel_map.src, self.rel_map.dst) != (g.rel_module, f.rel_module):
            raise ValueError("rel_map endpoints do not match presentations")
        if self.gen_map.then(f.pres) != g.pres.then(self.rel_map):
            raise ValueError("presentation square does not commute")
        lattice = _homotopy_lattice(g.pres, f.gen_module)
        flat = Mat(f.ring, 1, g.gen_module.gens * f.gen_module.gens,
                   self.gen_map.mat.entries)
        object.__setattr__(self, "canon", reduce_mod_span(flat, lattice).entries
                           if lattice.rows else flat.entries)

    @property
    def ring(self):
        return self.src.ring

    def then(self, other: FunHom) -> FunHom:
        if self.dst != other.src:
            raise ValueError("composition mismatch")
        return FunHom(self.src, other.dst,
                      other.gen_map.then(self.gen_map),
                      other.rel_map.then(self.rel_map))

    def add(self, other: FunHom) -> FunHom:
        if (self.src, self.dst) != (other.src, other.dst):
            raise ValueError("sum endpoints mismatch")
        return FunHom(self.src, self.dst, self.gen_map.add(other.gen_map),
                      self.rel_map.add(other.rel_map))

    def scale(self, c: int) -> FunHom:
        return FunHom(self.src, self.dst, self.gen_map.scale(c), self.rel_map.scale(c))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.canon)

    def __repr__(self):
        return f"FunHom(u={self.gen_map.mat.to_rows()}, v={self.rel_map.mat.to_rows()})"


def identity_funhom(f: FPFunctor) -> FunHom:
    return FunHom(f, f, identity_hom(f.gen_module), identity_hom(f.rel_module))


def zero_funhom(f: FPFunctor, g: FPFunctor) -> FunHom:
    return FunHom(f, g, zero_hom(g.gen_module, f.gen_module),
                  zero_hom(g.rel_module, f.rel_module))


def is_identity_class(h: FunHom) -> bool:
    return h.src == h.dst and h == identity_funhom(h.src)


def lift_hom(u0: ModHom, src: FPFunctor, dst: FPFunctor) -> FunHom:
    """Complete a generator-level map u0: dst.gen_module -> src.gen_module
    to a presentation square by solving for the relation-level map; raises
    NotLiftable when the linear system has no solution (the input does not
    define a morphism of functors)."""
    if (u0.src, u0.dst) != (dst.gen_module, src.gen_module):
        raise ValueError("u0 endpoints do not match presentations")
    ring = src.ring
    target = u0.then(src.pres)
    homs = hom_group(dst.rel_module, src.rel_module)
    rows = [list(dst.pres.mat.mul(v).entries) for v in homs.basis]
    width = dst.gen_module.gens * src.rel_module.gens
    sys_mat = Mat.from_rows(ring, rows, cols=width)
    ambient = kron(Mat.identity(ring, dst.gen_module.gens), src.rel_module.rels)
    rhs = Mat(ring, 1, width, target.mat.entries)
    try:
        coords = solve_mod(sys_mat, rhs, ambient)
    except NoSolution as exc:
        raise NotLiftable(f"map does not lift to a functor morphism: {exc}") from exc
    v = homs.hom_from_coords(coords)
    return FunHom(src, dst, u0, v)


def funhom_component(h: FunHom, x: FPMod) -> ModHom:
    """The component of h at x: [phi] |-> [gen_map.then(phi)]."""
    ev_f = evaluation(h.src, x)
    ev_g = evaluation(h.dst, x)
    rows = []
    for b in ev_f.gen_homs.basis:
        pulled = ModHom(h.dst.gen_module, x, h.gen_map.mat.mul(b))
        rows.append(list(ev_g.gen_homs.coords_of(pulled).row(0)))
    top = ModHom(ev_f.gen_homs.module, ev_g.gen_homs.module,
                 Mat.from_rows(h.ring, rows, cols=ev_g.gen_homs.module.gens))
    return _descend(ev_f.proj, ev_g.proj, top)


# ---------------------------------------------------------------------------
# hom groups of functors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FunHomGroup:
    """Hom(f, g) as a finite module of homotopy classes.

    Canonically Hom(f, g) = ker(g(pres_f)) inside g(gen_module of f):
    a class is an element xi of g(M_f) killed by the action of pres_f, and
    xi corresponds to the generator-level map presenting the morphism.
    """

    src: FPFunctor
    dst: FPFunctor
    module: FPMod
    emb: ModHom          # module -> value of dst at src.gen_module
    ev: Evaluation       # dst evaluated at src.gen_module

    def cardinality(self) -> int:
        return self.module.cardinality()

    def funhom_from_coords(self, coords: Mat) -> FunHom:
        in_value = ModHom(self.module, self.ev.value, self.emb.mat).apply(coords)
        lifted = solve_mod(self.ev.proj.mat, in_value, self.ev.value.rels)
        u = self.ev.gen_homs.hom_from_coords(lifted)
        return lift_hom(u, self.src, self.dst)

    def coords_of(self, h: FunHom) -> Mat:
        if (h.src, h.dst) != (self.src, self.dst):
            raise ValueError("morphism does not belong to this group")
        c = self.ev.gen_homs.coords_of(h.gen_map)
        in_value = self.ev.proj.apply(c)
        return solve_mod(self.emb.mat, in_value, self.ev.value.rels)

    def elements(self, budget: int = DEFAULT_ELEMENT_BUDGET):
        for coords in self.module.elements(budget):
            yield self.funhom_from_coords(coords)


@lru_cache(maxsize=8192)
def hom_functors(f: FPFunctor, g: FPFunctor) -> FunHomGroup:
    """All morphisms f -> g, as the kernel of g's action on f's presentation."""
    same_ring(f.ring, g.ring)
    theta = evaluate_hom(g, f.pres)
    k, emb = kernel(theta)
    ev = evaluation(g, f.gen_module)
    return FunHomGroup(f, g, k, emb, ev)


# ---------------------------------------------------------------------------
# kernels, cokernels, images
# ---------------------------------------------------------------------------


def _incl(summand: int, a: FPMod, b: FPMod) -> ModHom:
    s = direct_sum(a, b)
    if summand == 0:
        m = Mat.identity(a.ring, a.gens).hstack(Mat.zero(a.ring, a.gens, b.gens))
        return ModHom(a, s, m)
    m = Mat.zero(a.ring, b.gens, a.gens).hstack(Mat.identity(a.ring, b.gens))
    return ModHom(b, s, m)


def _proj(summand: int, a: FPMod, b: FPMod) -> ModHom:
    s = direct_sum(a, b)
    if summand == 0:
        m = Mat.identity(a.ring, a.gens).stack(Mat.zero(a.ring, b.gens, a.gens))
        return ModHom(s, a, m)
    m = Mat.zero(a.ring, a.gens, b.gens).stack(Mat.identity(a.ring, b.gens))
    return ModHom(s, b, m)


def _validate_pointwise(result: FPFunctor, h: FunHom, which: str) -> None:
    """Oracle check: the presented kernel/cokernel evaluates to the
    pointwise kernel/cokernel at every test module."""
    for x in test_modules(h.ring):
        comp = funhom_component(h, x)
        if which == "kernel":
            want, _ = kernel(comp)
        else:
            want, _ = cokernel(comp)
        if invariants(evaluate(result, x)) != invariants(want):
            raise InternalCheckError(
                f"{which} validation failed at {x!r}: "
                f"{invariants(evaluate(result, x))} vs {invariants(want)}")


def kernel_f(h: FunHom) -> tuple[FPFunctor, FunHom]:
    """Kernel via the representable recipe extended through presentations.

    Both pullbacks below are kernels of maps of representables, hence
    representables of cokernels of module maps; the kernel object is the
    quotient of the first by the image of the second.
    """
    f, g = h.src, h.dst
    m, n = f.gen_module, f.rel_module
    mp, np_ = g.gen_module, g.rel_module
    # pullback of (u,-) against (pres_g,-): W = coker(m' -> m + n')
    w_map = ModHom(mp, direct_sum(m, np_), h.gen_map.mat.hstack(g.pres.mat.scale(-1)))
    w, c = cokernel(w_map)
    t = _incl(0, m, np_).then(c)
    # pullback of (t,-) against (pres_f,-): W2 = coker(m -> W + n)
    m2 = ModHom(m, direct_sum(w, n), t.mat.hstack(f.pres.mat.scale(-1)))
    w2, c2 = cokernel(m2)
    t2 = _incl(0, w, n).then(c2)
    s = _incl(1, w, n).then(c2)
    ker = FPFunctor(t2)
    emb = FunHom(ker, f, t, s)
    _validate_pointwise(ker, h, "kernel")
    return ker, emb


def cokernel_f(h: FunHom) -> tuple[FPFunctor, FunHom]:
    """Cokernel by stacking presentations."""
    f, g = h.src, h.dst
    mp, np_ = g.gen_module, g.rel_module
    m = f.gen_module
    pres = ModHom(mp, direct_sum(np_, m), g.pres.mat.hstack(h.gen_map.mat))
    cok = FPFunctor(pres)
    proj = FunHom(g, cok, identity_hom(mp), _proj(0, np_, m))
    _validate_pointwise(cok, h, "cokernel")
    return cok, proj


def image_f(h: FunHom) -> tuple[FPFunctor, FunHom, FunHom]:
    """Image factorization: (image, mono into dst, epi from src)."""
    _, kemb = kernel_f(h)
    im, epi = cokernel_f(kemb)
    mono = lift_hom(h.gen_map, im, h.dst)
    if epi.then(mono) != h:
        raise InternalCheckError("image factorization does not recompose")
    return im, mono, epi


def direct_sum_f(f: FPFunctor, g: FPFunctor) -> FPFunctor:
    pres = ModHom(direct_sum(f.gen_module, g.gen_module),
                  direct_sum(f.rel_module, g.rel_module),
                  diag_stack(f.pres.mat, g.pres.mat))
    return FPFunctor(pres)


def sum_injection(f: FPFunctor, g: FPFunctor, which: int) -> FunHom:
    s = direct_sum_f(f, g)
    part = f if which == 0 else g
    return FunHom(part, s, _proj(which, f.gen_module, g.gen_module),
                  _proj(which, f.rel_module, g.rel_module))


def sum_projection(f: FPFunctor, g: FPFunctor, which: int) -> FunHom:
    s = direct_sum_f(f, g)
    part = f if which == 0 else g
    return FunHom(s, part, _incl(which, f.gen_module, g.gen_module),
                  _incl(which, f.rel_module, g.rel_module))


def from_components(parts: list[FPFunctor], maps: list[FunHom]) -> tuple[FPFunctor, FunHom]:
    """The map (+) parts -> target assembled from components."""
    if not parts:
        raise ValueError("need at least one component")
    target = maps[0].dst
    total = parts[0]
    combined = maps[0]
    for part, m in zip(parts[1:], maps[1:]):
        new_total = direct_sum_f(total, part)
        u = combined.gen_map.mat.hstack(m.gen_map.mat)
        v = combined.rel_map.mat.hstack(m.rel_map.mat)
        combined = FunHom(new_total, target,
                          ModHom(target.gen_module, new_total.gen_module, u),
                          ModHom(target.rel_module, new_total.rel_module, v))
        total = new_total
    return total, combined


# ---------------------------------------------------------------------------
# tensor structure
# ---------------------------------------------------------------------------


def tensor_flat(m: FPMod, n: FPMod,
                pres_m: Mat | None = None, pres_n: Mat | None = None) -> FPFunctor:
    """yoneda(m) (x) yoneda(n), computed as a kernel in the functor
    category: tensor the chosen free presentations and take the kernel of
    the map of representables of free modules built from (id (x) rels_n,
    rels_m (x) id).  Alternative presentations (extra spanning rows) may be
    passed; the result is independent up to canonical isomorphism."""
    same_ring(m.ring, n.ring)
    ring = m.ring
    r1 = pres_m if pres_m is not None else m.rels
    r2 = pres_n if pres_n is not None else n.rels
    a1, a2 = m.gens, n.gens
    w = kron(Mat.identity(ring, a1), r2).stack(kron(r1, Mat.identity(ring, a2)))
    src = yoneda(free_module(ring, a1 * a2))
    dst = yoneda(free_module(ring, w.rows))
    u = ModHom(free_module(ring, w.rows), free_module(ring, a1 * a2), w)
    h = FunHom(src, dst, u, zero_hom(zero_module(ring), zero_module(ring)))
    ker, _ = kernel_f(h)
    return ker


def tensor_general(f: FPFunctor, g: FPFunctor) -> FPFunctor:
    """Right-exact tensor product via the canonical projective presentations:
    coker( (Nf (x) Mg) + (Mf (x) Ng) -> Mf (x) Mg ) on the representable
    level, assembled directly on presentations."""
    same_ring(f.ring, g.ring)
    mf, nf = f.gen_module, f.rel_module
    mg, ng = g.gen_module, g.rel_module
    src = tensor_mod(mf, mg)
    dst = direct_sum(tensor_mod(nf, mg), tensor_mod(mf, ng))
    mat = kron(f.pres.mat, Mat.identity(f.ring, mg.gens)).hstack(
        kron(Mat.identity(f.ring, mf.gens), g.pres.mat))
    return FPFunctor(ModHom(src, dst, mat))


def funhom_tensor(a: FunHom, b: FunHom) -> FunHom:
    """a (x) b: F (x) G -> F' (x) G' on presentation squares."""
    src = tensor_general(a.src, b.src)
    dst = tensor_general(a.dst, b.dst)
    u = hom_tensor(a.gen_map, b.gen_map)
    u = ModHom(dst.gen_module, src.gen_module, u.mat)
    v_mat = diag_stack(kron(a.rel_map.mat, b.gen_map.mat),
                       kron(a.gen_map.mat, b.rel_map.mat))
    v = ModHom(dst.rel_module, src.rel_module, v_mat)
    return FunHom(src, dst, u, v)


# ---------------------------------------------------------------------------
# induced exact functors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ActionSpec:
    """Additive functor out of the source ring's free-module category,
    determined by the value at the rank-1 free module: a module over the
    target ring on which the source modulus acts as zero."""

    source_ring: CoeffRing
    target_ring: CoeffRing
    value: FPMod

    def __post_init__(self):
        require_finite(self.source_ring)
        require_finite(self.target_ring)
        if self.value.ring != self.target_ring:
            raise IllFormedFunctor("value module must live over the target ring")
        n = self.source_ring.modulus
        scaled = Mat.identity(self.target_ring, self.value.gens).scale(n)
        if not self.value.reduce_element(scaled).is_zero():
            raise IllFormedFunctor(
                f"source modulus {n} does not annihilate the value module")


def inclusion_spec(ring: CoeffRing) -> ActionSpec:
    """The identity-like assignment: the ring as a module over itself."""
    return ActionSpec(ring, ring, free_module(ring, 1))


def _power(spec: ActionSpec, k: int) -> FPMod:
    ring = spec.target_ring
    rels = kron(Mat.identity(ring, k), spec.value.rels)
    return fpmod(ring, k * spec.value.gens, rels)


def _free_level_map(spec: ActionSpec, mat: Mat) -> ModHom:
    """The value of the induced functor on the free-module map with the
    given coefficient matrix (entries act as integer scalars)."""
    lifted = Mat.from_rows(spec.target_ring,
                           [[x for x in mat.row(i)] for i in range(mat.rows)],
                           cols=mat.cols)
    big = kron(lifted, Mat.identity(spec.target_ring, spec.value.gens))
    return ModHom(_power(spec, mat.rows), _power(spec, mat.cols), big)


@dataclass(frozen=True)
class _InducedLayer:
    kernel_module: FPMod
    emb: ModHom  # kernel_module -> power at generator count


@lru_cache(maxsize=8192)
def _flat_value(spec: ActionSpec, m: FPMod) -> _InducedLayer:
    """Value on the representable of m: the kernel formula applied to the
    free presentation of m (the transpose realizes the contravariant
    identification of free modules with their duals)."""
    rt = m.rels.transpose()
    conn = _free_level_map(spec, rt)
    k, emb = kernel(conn)
    return _InducedLayer(k, emb)


@dataclass(frozen=True)
class InducedValue:
    value: FPMod
    layer: _InducedLayer      # at the generator module
    proj: ModHom              # layer.kernel_module -> value


@lru_cache(maxsize=8192)
def _induced_bundle(spec: ActionSpec, f: FPFunctor) -> InducedValue:
    if f.ring != spec.source_ring:
        raise IllFormedFunctor("functor ring does not match the action source ring")
    lm = _flat_value(spec, f.gen_module)
    ln = _flat_value(spec, f.rel_module)
    ambient = _free_level_map(spec, f.pres.mat.transpose())
    into_power = ln.emb.then(ambient)
    connecting = _factor_through_mono(lm.emb, into_power)
    value, proj = cokernel(connecting)
    return InducedValue(value, lm, proj)


def induced_functor(spec: ActionSpec, f: FPFunctor) -> FPMod:
    """The induced exact functor's value on f: compute the kernel formula on
    each presentation layer, then the cokernel across the presentation."""
    return _induced_bundle(spec, f).value


def induced_functor_hom(spec: ActionSpec, h: FunHom) -> ModHom:
    """The induced functor's action on a morphism of presented functors."""
    bf = _induced_bundle(spec, h.src)
    bg = _induced_bundle(spec, h.dst)
    ambient = _free_level_map(spec, h.gen_map.mat.transpose())
    top = _factor_through_mono(bg.layer.emb, bf.layer.emb.then(ambient))
    return _descend(bf.proj, bg.proj, top)


# ---------------------------------------------------------------------------
# isomorphism testing
# ---------------------------------------------------------------------------


def table_signature(f: FPFunctor) -> tuple:
    """Cheap iso-invariant: elementary divisors of the values on the test
    modules."""
    return tuple(invariants(evaluate(f, x)) for x in test_modules(f.ring))


def is_zero_functor(f: FPFunctor) -> bool:
    return all(evaluate(f, x).is_zero() for x in test_modules(f.ring))


def find_functor_iso(f: FPFunctor, g: FPFunctor,
                     budget: int = DEFAULT_ELEMENT_BUDGET) -> FunHom | None:
    """An isomorphism f -> g or None: compare value tables first, then
    search Hom(f, g) x Hom(g, f) for a mutually inverse pair."""
    if f.ring != g.ring:
        return None
    if f == g:
        return identity_funhom(f)
    if table_signature(f) != table_signature(g):
        return None
    fwd = hom_functors(f, g)
    bwd = hom_functors(g, f)
    back = [b for b in bwd.elements(budget) if not b.is_zero()] or [zero_funhom(g, f)]
    for a in fwd.elements(budget):
        if a.is_zero() and not is_zero_functor(f):
            continue
        for b in back:
            if a.then(b) == identity_funhom(f) and b.then(a) == identity_funhom(g):
                return a
    return None
