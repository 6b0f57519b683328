"""Structure analysis of presented functors: radicals of representables,
simple objects, socles, composition length, subobject lattices, and the
closure enumeration of indecomposables.

All searches are exhaustive over finite hom sets; nothing is sampled.
Deduplication is always via explicit isomorphism search, and enumeration
budgets fail loudly with CapExceeded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceeded, InternalCheckError
from .matrices import Mat
from .modules import (DEFAULT_ELEMENT_BUDGET, FPMod, ModHom, cokernel,
                      direct_sum, hom_group, identity_hom, is_iso,
                      test_modules, zero_module)
from .functors import (FPFunctor, FunHom, cokernel_f, direct_sum_f, evaluate,
                       find_functor_iso, from_components, hom_functors,
                       identity_funhom, image_f, is_zero_functor, kernel_f,
                       table_signature, yoneda, zero_funhom, zero_functor)
from .rings import CoeffRing


def is_radical_hom(f: ModHom, budget: int = DEFAULT_ELEMENT_BUDGET) -> bool:
    """f: x -> y lies in the radical iff 1_x - g o f is invertible for every
    g: y -> x."""
    x = f.src
    ident = identity_hom(x)
    for g in hom_group(f.dst, x).elements(budget):
        if not is_iso(ident.add(f.then(g).scale(-1))):
            return False
    return True


@lru_cache(maxsize=1024)
def radical_rep(x: FPMod, budget: int = DEFAULT_ELEMENT_BUDGET) -> tuple[FPFunctor, FunHom]:
    """The radical subfunctor of (x, -) with its inclusion.

    Generated by all nonzero radical homs from x into the indecomposable
    test modules; the subfunctor is the image of the induced map from the
    representable of their direct sum, which is representable-recipe
    computable as a cokernel.
    """
    ring = x.ring
    gens: list[ModHom] = []
    for y in test_modules(ring):
        for f in hom_group(x, y).elements(budget):
            if not f.is_zero() and is_radical_hom(f, budget):
                gens.append(f)
    if not gens:
        z = zero_functor(ring)
        return z, zero_funhom(z, yoneda(x))
    w = gens[0].dst
    cmat = gens[0].mat
    for f in gens[1:]:
        w = direct_sum(w, f.dst)
        cmat = cmat.hstack(f.mat)
    c = ModHom(x, w, cmat)
    c2, proj2 = cokernel(c)
    rad = FPFunctor(proj2)
    emb = FunHom(rad, yoneda(x), c, ModHom(zero_module(ring), c2,
                                           Mat.zero(ring, 0, c2.gens)))
    return rad, emb


@lru_cache(maxsize=64)
def simples(ring: CoeffRing) -> tuple[FPFunctor, ...]:
    """One simple object per indecomposable module: the quotient of its
    representable by the radical subfunctor."""
    out = []
    for x in test_modules(ring):
        _, emb = radical_rep(x)
        s, _ = cokernel_f(emb)
        if any(find_functor_iso(s, t) is not None for t in out):
            continue
        out.append(s)
    return tuple(out)


def socle(f: FPFunctor, budget: int = DEFAULT_ELEMENT_BUDGET) -> tuple[FPFunctor, FunHom]:
    """The largest semisimple subobject, as the image of the sum of all
    nonzero maps from the simple objects."""
    parts: list[FPFunctor] = []
    maps: list[FunHom] = []
    for s in simples(f.ring):
        for h in hom_functors(s, f).elements(budget):
            if not h.is_zero():
                parts.append(s)
                maps.append(h)
    if not parts:
        z = zero_functor(f.ring)
        return z, zero_funhom(z, f)
    _, combined = from_components(parts, maps)
    im, mono, _ = image_f(combined)
    return im, mono


def _simple_multiplicity(s: FPFunctor, semisimple: FPFunctor,
                         budget: int = DEFAULT_ELEMENT_BUDGET) -> int:
    hom_count = hom_functors(s, semisimple).cardinality()
    end_count = hom_functors(s, s).cardinality()
    mult = 0
    power = 1
    while power < hom_count:
        power *= end_count
        mult += 1
    if power != hom_count:
        raise InternalCheckError("hom count is not a power of the endomorphism field")
    return mult


def semisimple_length(f: FPFunctor, budget: int = DEFAULT_ELEMENT_BUDGET) -> int:
    return sum(_simple_multiplicity(s, f, budget) for s in simples(f.ring))


def composition_length(f: FPFunctor, budget: int = DEFAULT_ELEMENT_BUDGET,
                       max_layers: int = 64) -> int:
    """Length via socle peeling; exact for the finite objects handled here."""
    total = 0
    cur = f
    for _ in range(max_layers):
        if is_zero_functor(cur):
            return total
        soc, emb = socle(cur, budget)
        cnt = semisimple_length(soc, budget)
        if cnt == 0:
            raise InternalCheckError("nonzero object with zero socle")
        total += cnt
        cur, _ = cokernel_f(emb)
    raise CapExceeded(f"socle peeling did not terminate in {max_layers} layers")


# ---------------------------------------------------------------------------
# subobject lattices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subobject:
    functor: FPFunctor
    mono: FunHom  # into the ambient object


def _same_subobject(a: Subobject, b: Subobject, budget: int) -> bool:
    return (_factors_through(a, b, budget) is not None
            and _factors_through(b, a, budget) is not None)


def _factors_through(a: Subobject, b: Subobject, budget: int) -> FunHom | None:
    """phi with phi.then(b.mono) == a.mono, by exhaustive search of the
    finite hom group."""
    for phi in hom_functors(a.functor, b.functor).elements(budget):
        if phi.then(b.mono) == a.mono:
            return phi
    return None


def subobjects(f: FPFunctor, budget: int = DEFAULT_ELEMENT_BUDGET,
               max_subobjects: int = 256) -> list[Subobject]:
    """The full subobject lattice: cyclic subobjects are images of maps from
    representables of the test modules (by the Yoneda correspondence these
    exhaust the single-element-generated subfunctors), and the lattice is
    their closure under joins."""
    ring = f.ring
    zero_sub = Subobject(zero_functor(ring), zero_funhom(zero_functor(ring), f))
    found: list[Subobject] = [zero_sub]
    cyclics: list[Subobject] = []
    for x in test_modules(ring):
        yx = yoneda(x)
        for h in hom_functors(yx, f).elements(budget):
            if h.is_zero():
                continue
            im, mono, _ = image_f(h)
            cand = Subobject(im, mono)
            if not any(_same_subobject(cand, s, budget) for s in cyclics):
                cyclics.append(cand)
    frontier = list(cyclics)
    for sub in frontier:
        if not any(_same_subobject(sub, s, budget) for s in found):
            found.append(sub)
    while frontier:
        if len(found) > max_subobjects:
            raise CapExceeded(f"more than {max_subobjects} subobjects")
        new: list[Subobject] = []
        for a in frontier:
            for c in cyclics:
                _, combined = from_components([a.functor, c.functor], [a.mono, c.mono])
                im, mono, _ = image_f(combined)
                cand = Subobject(im, mono)
                if not any(_same_subobject(cand, s, budget) for s in found + new):
                    new.append(cand)
        found.extend(new)
        frontier = new
    return found


def quotient_by(sub: Subobject) -> FPFunctor:
    q, _ = cokernel_f(sub.mono)
    return q


# ---------------------------------------------------------------------------
# indecomposables
# ---------------------------------------------------------------------------


def split_by_idempotent(f: FPFunctor, budget: int = DEFAULT_ELEMENT_BUDGET) -> list[FPFunctor]:
    """Split off a nontrivial idempotent endomorphism if one exists."""
    ident = identity_funhom(f)
    for e in hom_functors(f, f).elements(budget):
        if e.is_zero() or e == ident:
            continue
        if e.then(e) == e:
            a, _, _ = image_f(e)
            b, _, _ = image_f(ident.add(e.scale(-1)))
            return [a, b]
    return []


def decompose_functor(f: FPFunctor, budget: int = DEFAULT_ELEMENT_BUDGET) -> list[FPFunctor]:
    """Indecomposable summands, by exhaustive idempotent search."""
    if is_zero_functor(f):
        return []
    parts = split_by_idempotent(f, budget)
    if not parts:
        return [f]
    out = []
    for p in parts:
        out.extend(decompose_functor(p, budget))
    return out


@dataclass(frozen=True)
class IndecCaps:
    max_objects: int = 12
    max_rounds: int = 6
    budget: int = DEFAULT_ELEMENT_BUDGET


def _sort_key(f: FPFunctor):
    sig = table_signature(f)
    return (tuple((len(t),) + t for t in sig), f.pres.mat.entries,
            f.gen_module.rels.entries, f.rel_module.rels.entries)


def list_indec(ring: CoeffRing, caps: IndecCaps = IndecCaps()) -> list[FPFunctor]:
    """All indecomposable objects reachable as subquotients of the
    representables: closure under kernels and cokernels of all homs, with
    idempotent splitting and isomorphism deduplication each round, until a
    fixpoint or CapExceeded."""
    pool: list[FPFunctor] = []

    def push(obj: FPFunctor) -> bool:
        if is_zero_functor(obj):
            return False
        if any(find_functor_iso(obj, p) is not None for p in pool):
            return False
        pool.append(obj)
        return True

    for x in test_modules(ring):
        for piece in decompose_functor(yoneda(x), caps.budget):
            push(piece)

    processed: set[tuple] = set()
    for _ in range(caps.max_rounds):
        added = False
        snapshot = list(pool)
        for f in snapshot:
            for g in snapshot:
                key = (f, g)
                if key in processed:
                    continue
                processed.add(key)
                for h in hom_functors(f, g).elements(caps.budget):
                    if h.is_zero():
                        continue
                    ker, _ = kernel_f(h)
                    cok, _ = cokernel_f(h)
                    for obj in (ker, cok):
                        for piece in decompose_functor(obj, caps.budget):
                            if push(piece):
                                added = True
                    if len(pool) > caps.max_objects:
                        raise CapExceeded(
                            f"more than {caps.max_objects} indecomposables found")
        if not added:
            pool.sort(key=_sort_key)
            return pool
    raise CapExceeded(f"closure did not stabilize in {caps.max_rounds} rounds")
