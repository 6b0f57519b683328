"""Representations of tensor quivers in module categories.

A representation assigns a finitely presented module to each vertex, a
module homomorphism to each edge, and invertible comparison maps
kappa: T(u) (x) T(v) -> T(u (x) v) plus kappa0 onto the unit value.
check_representation verifies, with exact matrix identities:

  (a) every relation instance of the quiver,
  (b) the comparison coherence squares: the symmetry square (with the
      Koszul sign on odd-odd vertex pairs), the two edge-companion squares
      (sign (-1)^{|edge||vertex|} on the right companion, none on the
      left), and the associator square,
  (c) unit compatibility of kappa0.

Failures are report entries carrying both evaluated matrices; mathematical
failure never raises.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .matrices import Mat
from .modules import (FPMod, ModHom, direct_sum, free_module, hom_tensor,
                      identity_hom, inverse_of_iso, is_iso, tensor_mod,
                      zero_hom)
from .literals import parse_matrix, parse_module, parse_ring
from .quiver import LinComb, Path, TensorQuiverSpec
from .rings import CoeffRing


@dataclass(frozen=True)
class RepSpec:
    ring: CoeffRing
    vertex_values: dict       # vertex -> FPMod
    edge_values: dict         # edge name -> ModHom
    kappa: dict               # (u, v) -> ModHom  T(u) (x) T(v) -> T(u (x) v)
    kappa0: ModHom            # unit module -> T(unit)

    def value(self, v: str) -> FPMod:
        return self.vertex_values[v]

    def edge(self, e: str) -> ModHom:
        return self.edge_values[e]


def parse_rep(spec: TensorQuiverSpec, text: str) -> RepSpec:
    """Parse the representation DSL against a quiver."""
    ring = None
    vertex_values: dict = {}
    edge_rows: dict = {}
    kappa_rows: dict = {}
    kappa0_rows = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#")[0].strip()
        if not stripped:
            continue
        toks = stripped.split(None)
        try:
            if toks[0] == "ring":
                ring = parse_ring(toks[1])
            elif toks[0] == "rep" and toks[1] == "vertex":
                name = toks[2]
                if name not in spec.grades:
                    raise ParseError(f"unknown vertex {name!r}", ln)
                body = stripped.split("=", 1)[1].strip()
                vertex_values[name] = parse_module(body, ln)
            elif toks[0] == "rep" and toks[1] == "edge":
                name = toks[2]
                if name not in spec.edges:
                    raise ParseError(f"unknown edge {name!r}", ln)
                edge_rows[name] = (stripped.split("=", 1)[1].strip(), ln)
            elif toks[0] == "kappa0":
                kappa0_rows = (stripped.split("=", 1)[1].strip(), ln)
            elif toks[0] == "kappa":
                u, v = toks[1], toks[2]
                kappa_rows[(u, v)] = (stripped.split("=", 1)[1].strip(), ln)
            else:
                raise ParseError(f"unknown directive {toks[0]!r}", ln)
        except IndexError:
            raise ParseError("malformed line", ln)
    if ring is None:
        raise ParseError("missing ring declaration")
    for v in spec.vertices:
        if v not in vertex_values:
            raise ParseError(f"no value assigned to vertex {v!r}")
        if vertex_values[v].ring != ring:
            raise ParseError(f"value of {v!r} is over the wrong ring")
    edge_values = {}
    for v in spec.vertices:
        edge_values[spec.id_edge[v]] = identity_hom(vertex_values[v])
    for name, edge in sorted(spec.edges.items()):
        if name.startswith("id_"):
            continue
        if name not in edge_rows:
            raise ParseError(f"no matrix assigned to edge {name!r}")
        body, ln = edge_rows[name]
        src, dst = vertex_values[edge.src], vertex_values[edge.dst]
        mat = parse_matrix(body, default_ring=ring, cols=dst.gens, line=ln)
        edge_values[name] = ModHom(src, dst, mat)
    kappa = {}
    for u in spec.vertices:
        for v in spec.vertices:
            if (u, v) not in kappa_rows:
                raise ParseError(f"no kappa for ({u}, {v})")
            body, ln = kappa_rows[(u, v)]
            srcm = tensor_mod(vertex_values[u], vertex_values[v])
            dstm = vertex_values[spec.vt(u, v)]
            mat = parse_matrix(body, default_ring=ring, cols=dstm.gens, line=ln)
            kappa[(u, v)] = ModHom(srcm, dstm, mat)
    if kappa0_rows is None:
        raise ParseError("missing kappa0")
    body, ln = kappa0_rows
    unit_val = vertex_values[spec.unit]
    mat = parse_matrix(body, default_ring=ring, cols=unit_val.gens, line=ln)
    kappa0 = ModHom(free_module(ring, 1), unit_val, mat)
    return RepSpec(ring, vertex_values, edge_values, kappa, kappa0)


# ---------------------------------------------------------------------------
# evaluation of paths and linear combinations
# ---------------------------------------------------------------------------


def path_value(rep: RepSpec, spec: TensorQuiverSpec, p: Path) -> ModHom:
    cur = identity_hom(rep.value(p.start))
    for e in p.edges:
        cur = cur.then(rep.edge(e))
    return cur


def lincomb_value(rep: RepSpec, spec: TensorQuiverSpec, lc: LinComb) -> ModHom:
    acc = zero_hom(rep.value(lc.src), rep.value(lc.dst))
    for c, p in lc.terms:
        acc = acc.add(path_value(rep, spec, p).scale(c))
    return acc


def _swap_hom(a: FPMod, b: FPMod) -> ModHom:
    """The symmetry of the module tensor product on generator grids."""
    src = tensor_mod(a, b)
    dst = tensor_mod(b, a)
    rows = []
    for i in range(a.gens):
        for j in range(b.gens):
            row = [0] * (b.gens * a.gens)
            row[j * a.gens + i] = 1
            rows.append(row)
    return ModHom(src, dst, Mat.from_rows(a.ring, rows, cols=b.gens * a.gens))


@dataclass(frozen=True)
class RepCheckEntry:
    name: str
    status: str
    summary: str
    witness: tuple = ()


@dataclass(frozen=True)
class RepCheckReport:
    entries: tuple[RepCheckEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.status == "pass" for e in self.entries)

    def failures(self) -> list[RepCheckEntry]:
        return [e for e in self.entries if e.status != "pass"]


def check_representation(spec: TensorQuiverSpec, rep: RepSpec) -> RepCheckReport:
    """Verify the representation against the quiver; every check is an
    exact matrix identity and failures carry both evaluated matrices."""
    entries: list[RepCheckEntry] = []

    def record(name, ok, left: ModHom, right: ModHom):
        if ok:
            entries.append(RepCheckEntry(name, "pass", "matrices agree"))
        else:
            entries.append(RepCheckEntry(
                name, "fail", "matrices differ",
                (tuple(map(tuple, left.mat.to_rows())),
                 tuple(map(tuple, right.mat.to_rows())))))

    # invertibility of the comparison maps
    for (u, v), h in sorted(rep.kappa.items()):
        if is_iso(h):
            entries.append(RepCheckEntry(f"kappa({u},{v}) invertible", "pass", "iso"))
        else:
            entries.append(RepCheckEntry(f"kappa({u},{v}) invertible", "fail",
                                         "comparison map is not invertible",
                                         (tuple(map(tuple, h.mat.to_rows())),)))
    if is_iso(rep.kappa0):
        entries.append(RepCheckEntry("kappa0 invertible", "pass", "iso"))
    else:
        entries.append(RepCheckEntry("kappa0 invertible", "fail",
                                     "unit comparison is not invertible"))
    if not all(e.status == "pass" for e in entries):
        return RepCheckReport(tuple(entries))

    # (a) relations map to exact matrix identities
    for i, rel in enumerate(spec.relations):
        lv = lincomb_value(rep, spec, rel.lhs)
        rv = lincomb_value(rep, spec, rel.rhs)
        record(f"relation {rel.clause}[{i}]", lv == rv, lv, rv)

    # (b1) symmetry squares, with the Koszul sign on odd-odd pairs
    for u in sorted(spec.vertices):
        for v in sorted(spec.vertices):
            sign = (-1) ** (spec.grade(u) * spec.grade(v))
            left = rep.kappa[(u, v)].then(rep.edge(spec.alpha[(u, v)]))
            right = _swap_hom(rep.value(u), rep.value(v)).scale(sign).then(
                rep.kappa[(v, u)])
            record(f"symmetry square ({u},{v})", left == right, left, right)

    # (b2) right companion squares: sign (-1)^{|edge||vertex|}
    for name, edge in sorted(spec.edges.items()):
        if name.startswith("id_"):
            continue
        for w in sorted(spec.vertices):
            sign = (-1) ** (spec.edge_grade(name) * spec.grade(w))
            left = rep.kappa[(edge.src, w)].then(rep.edge(spec.tr(name, w)))
            right = hom_tensor(rep.edge(name), identity_hom(rep.value(w))).scale(
                sign).then(rep.kappa[(edge.dst, w)])
            record(f"right companion square ({name},{w})", left == right, left, right)
            # (b3) left companion squares carry no sign
            left2 = rep.kappa[(w, edge.src)].then(rep.edge(spec.tl(w, name)))
            right2 = hom_tensor(identity_hom(rep.value(w)), rep.edge(name)).then(
                rep.kappa[(w, edge.dst)])
            record(f"left companion square ({name},{w})", left2 == right2, left2, right2)

    # (b4) associator squares (no signs; module tensor is strictly associative)
    for u in sorted(spec.vertices):
        for v in sorted(spec.vertices):
            for w in sorted(spec.vertices):
                tu, tv, tw = rep.value(u), rep.value(v), rep.value(w)
                left = hom_tensor(identity_hom(tu), rep.kappa[(v, w)]).then(
                    rep.kappa[(u, spec.vt(v, w))]).then(
                    rep.edge(spec.beta[(u, v, w)]))
                right = hom_tensor(rep.kappa[(u, v)], identity_hom(tw)).then(
                    rep.kappa[(spec.vt(u, v), w)])
                record(f"associator square ({u},{v},{w})", left == right, left, right)

    # (c) unit compatibility
    for v in sorted(spec.vertices):
        tv = rep.value(v)
        left = rep.edge(spec.unitor_u[v])
        right = hom_tensor(rep.kappa0, identity_hom(tv)).then(
            rep.kappa[(spec.unit, v)])
        record(f"unit square ({v})", left == right, left, right)

    return RepCheckReport(tuple(entries))


# ---------------------------------------------------------------------------
# the induced additive functor
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdditiveFunctor:
    """The extension of a checked representation to formal sums of vertices
    and integer combinations of paths."""

    spec: TensorQuiverSpec
    rep: RepSpec

    def on_objects(self, vertices: tuple[str, ...]) -> FPMod:
        if not vertices:
            return free_module(self.rep.ring, 0)
        acc = self.rep.value(vertices[0])
        for v in vertices[1:]:
            acc = direct_sum(acc, self.rep.value(v))
        return acc

    def on_matrix(self, src: tuple[str, ...], dst: tuple[str, ...],
                  entries) -> ModHom:
        """entries: row-major LinComb grid, entry (i, j) from src[i] to
        dst[j]; zero entries may be None."""
        src_mod = self.on_objects(src)
        dst_mod = self.on_objects(dst)
        src_mods = [self.rep.value(v) for v in src]
        dst_mods = [self.rep.value(v) for v in dst]
        row_off = [0]
        for m in src_mods:
            row_off.append(row_off[-1] + m.gens)
        col_off = [0]
        for m in dst_mods:
            col_off.append(col_off[-1] + m.gens)
        big = [[0] * dst_mod.gens for _ in range(src_mod.gens)]
        for i in range(len(src)):
            for j in range(len(dst)):
                lc = entries[i][j]
                if lc is None or lc.is_zero():
                    continue
                block = lincomb_value(self.rep, self.spec, lc)
                for a in range(src_mods[i].gens):
                    for b in range(dst_mods[j].gens):
                        big[row_off[i] + a][col_off[j] + b] = block.mat[a, b]
        return ModHom(src_mod, dst_mod,
                      Mat.from_rows(self.rep.ring, big, cols=dst_mod.gens))


def induced_additive_functor(spec: TensorQuiverSpec, rep: RepSpec,
                             report: RepCheckReport | None = None) -> AdditiveFunctor:
    """The unique additive extension of a checked representation;
    factorization through the canonical quiver map is verified on every
    vertex and edge."""
    if report is None:
        report = check_representation(spec, rep)
    if not report.ok:
        raise ParseError("representation fails its checks; cannot extend")
    fun = AdditiveFunctor(spec, rep)
    for v in spec.vertices:
        assert fun.on_objects((v,)) == rep.value(v)
    for name in sorted(spec.edges):
        e = spec.edges[name]
        lc = LinComb.make(e.src, e.dst, [(1, Path(e.src, (name,)))])
        got = fun.on_matrix((e.src,), (e.dst,), [[lc]])
        if got.mat != rep.edge(name).mat:
            raise AssertionError(f"factorization failed on edge {name}")
    return fun
