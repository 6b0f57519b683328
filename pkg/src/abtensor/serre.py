"""Kernel analysis and Serre-quotient data for the quotient by the kernel of
an induced exact functor: membership, closure and tensor-ideal verification
with full witnesses, and quotient hom groups at finite length.

Reports carry the witnessing objects and evaluated images; a failed check is
a result, not an exception.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import CapExceeded
from .modules import DEFAULT_ELEMENT_BUDGET, FPMod, invariants
from .functors import (ActionSpec, FPFunctor, FunHom, cokernel_f,
                       direct_sum_f, find_functor_iso, from_components,
                       hom_functors, image_f, induced_functor,
                       induced_functor_hom, is_zero_functor, kernel_f,
                       table_signature, tensor_general)
from .structure import Subobject, quotient_by, subobjects


@dataclass
class KernelSpec:
    """Membership in the kernel of the exact functor induced by an action
    spec.  Membership is definitional (the induced value vanishes), with an
    append-only verdict cache."""

    spec: ActionSpec
    _cache: dict = field(default_factory=dict, repr=False)

    def member(self, f: FPFunctor) -> bool:
        if f not in self._cache:
            self._cache[f] = induced_functor(self.spec, f).is_zero()
        return self._cache[f]


def kernel_member(f: FPFunctor, k: KernelSpec) -> bool:
    return k.member(f)


@dataclass(frozen=True)
class CheckEntry:
    name: str
    status: str  # "pass" | "fail"
    summary: str
    witness: tuple = ()


@dataclass(frozen=True)
class ClosureReport:
    entries: tuple[CheckEntry, ...]
    lattice_sizes: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return all(e.status == "pass" for e in self.entries)


def serre_closure_check(member: Callable[[FPFunctor], bool] | KernelSpec,
                        objects: list[FPFunctor],
                        budget: int = DEFAULT_ELEMENT_BUDGET) -> ClosureReport:
    """Closure of the membership class under subobjects, quotients and
    extensions within the enumerated universe.

    For each member E and each subobject K of E: K and E/K must be members
    (sub/quotient closure).  For each E in the universe and each subobject
    K with K and E/K members: E must be a member (extension closure).
    Witnesses list the violating object and the member data.
    """
    pred = member.member if isinstance(member, KernelSpec) else member
    entries: list[CheckEntry] = []
    sizes: list[int] = []
    for idx, e in enumerate(objects):
        subs = subobjects(e, budget)
        sizes.append(len(subs))
        e_in = pred(e)
        for s in subs:
            q = quotient_by(s)
            k_in, q_in = pred(s.functor), pred(q)
            if e_in and not (k_in and q_in):
                which = "subobject" if not k_in else "quotient"
                entries.append(CheckEntry(
                    f"object[{idx}]", "fail",
                    f"{which} closure fails: member has a non-member {which}",
                    (table_signature(e), table_signature(s.functor), table_signature(q))))
            if k_in and q_in and not e_in:
                entries.append(CheckEntry(
                    f"object[{idx}]", "fail",
                    "extension closure fails: extension of members is not a member",
                    (table_signature(e), table_signature(s.functor), table_signature(q))))
    if not entries:
        entries.append(CheckEntry("closure", "pass",
                                  f"closed on {len(objects)} objects"))
    return ClosureReport(tuple(entries), tuple(sizes))


@dataclass(frozen=True)
class IdealReport:
    entries: tuple[CheckEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.status == "pass" for e in self.entries)


def tensor_ideal_check(k: KernelSpec, samples: list[tuple[FPFunctor, FPFunctor]]) -> IdealReport:
    """Verify f (x) g stays in the kernel for every sample pair with f a
    member; failures carry the pair and the nonzero induced value."""
    entries = []
    for i, (f, g) in enumerate(samples):
        if not k.member(f):
            entries.append(CheckEntry(f"sample[{i}]", "pass",
                                      "first component not in the kernel; skipped"))
            continue
        prod = tensor_general(f, g)
        value = induced_functor(k.spec, prod)
        if value.is_zero():
            entries.append(CheckEntry(f"sample[{i}]", "pass", "product stays in the kernel"))
        else:
            entries.append(CheckEntry(
                f"sample[{i}]", "fail",
                "kernel is not a tensor ideal: product leaves the kernel",
                (table_signature(f), table_signature(g), invariants(value))))
    return IdealReport(tuple(entries))


def sums_of(simple: FPFunctor, max_copies: int = 6) -> Callable[[FPFunctor], bool]:
    """Membership predicate: isomorphic to a finite direct sum of copies of
    the given object (including the empty sum)."""

    def pred(f: FPFunctor) -> bool:
        if is_zero_functor(f):
            return True
        acc = simple
        for _ in range(max_copies):
            if find_functor_iso(f, acc) is not None:
                return True
            acc = direct_sum_f(acc, simple)
        return False

    return pred


# ---------------------------------------------------------------------------
# quotient homs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientHomGroup:
    """Hom in the Serre quotient, computed at the terminal stage of the
    directed system: the smallest subobject of the source whose quotient is
    in the kernel, mapping to the quotient of the target by its largest
    kernel subobject.  Lattice sizes explored are recorded."""

    src: FPFunctor
    dst: FPFunctor
    stage_src: Subobject          # f' <= f minimal with f/f' in the kernel
    stage_proj: FunHom            # g -> g/g'_max
    group: object                 # FunHomGroup on (stage_src.functor -> g/g'_max)
    src_lattice_size: int
    dst_lattice_size: int

    def cardinality(self) -> int:
        return self.group.module.cardinality()

    def elements(self, budget: int = DEFAULT_ELEMENT_BUDGET):
        return self.group.elements(budget)

    def compare(self, h: FunHom) -> FunHom:
        """The canonical map Hom(f, g) -> Hom_quotient(f, g): restrict to
        the stage subobject and project the target."""
        if (h.src, h.dst) != (self.src, self.dst):
            raise ValueError("morphism endpoints mismatch")
        return self.stage_src.mono.then(h).then(self.stage_proj)


def _meet(a: Subobject, b: Subobject) -> Subobject:
    """Intersection of two subobjects: kernel of a -> ambient -> ambient/b."""
    _, proj = cokernel_f(b.mono)
    ker, kemb = kernel_f(a.mono.then(proj))
    return Subobject(ker, kemb.then(a.mono))


def _join(a: Subobject, b: Subobject) -> Subobject:
    _, combined = from_components([a.functor, b.functor], [a.mono, b.mono])
    im, mono, _ = image_f(combined)
    return Subobject(im, mono)


def quotient_hom(f: FPFunctor, g: FPFunctor, k: KernelSpec,
                 budget: int = DEFAULT_ELEMENT_BUDGET,
                 max_subobjects: int = 256) -> QuotientHomGroup:
    """Hom_{quotient}(f, g) = Hom(f', g/g') at the terminal stage of the
    finite directed system: intersect all subobjects of f with quotient in
    the kernel, join all kernel subobjects of g."""
    subs_f = subobjects(f, budget, max_subobjects)
    subs_g = subobjects(g, budget, max_subobjects)
    admissible = [s for s in subs_f if k.member(quotient_by(s))]
    fmin = admissible[0]
    for s in admissible[1:]:
        fmin = _meet(fmin, s)
    kernel_subs = [s for s in subs_g if k.member(s.functor)]
    gmax = kernel_subs[0]
    for s in kernel_subs[1:]:
        gmax = _join(gmax, s)
    target, proj = cokernel_f(gmax.mono)
    group = hom_functors(fmin.functor, target)
    return QuotientHomGroup(f, g, fmin, proj, group, len(subs_f), len(subs_g))


def induced_is_faithful_on(qh: QuotientHomGroup, k: KernelSpec,
                           budget: int = DEFAULT_ELEMENT_BUDGET) -> bool:
    """The induced functor is faithful on the quotient: distinct quotient
    hom classes have distinct induced module maps."""
    images = set()
    count = 0
    for h in qh.elements(budget):
        m = induced_functor_hom(k.spec, h)
        images.add((m.src, m.dst, m.mat))
        count += 1
    return len(images) == count
