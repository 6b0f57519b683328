"""Tensor quivers: parser, validator, and rewriting engine.

A tensor quiver is a quiver with relations carrying distinguished data
(identity edges, a vertex product, symmetry and associator edges, a unit
vertex with unitor edges, and product companions e(x)id / id(x)e for every
edge and vertex).  The mandatory relation families (1)-(11) are
auto-instantiated from the data at parse time, each instance tagged with
its clause number; the optional Z/2 grading replaces the interchange
relation (3) by its signed variant (3').

Rewriting orients every relation from the longer side to the shorter one
(ties broken by shortlex on edge names), which terminates for all mandatory
families.  normal_form computes the fixpoint under two different
deterministic strategies and raises NonConfluent when they disagree; it
never guesses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import CapExceeded, MissingData, NonConfluent, ParseError

DEFAULT_STEP_CAP = 20000


@dataclass(frozen=True)
class Edge:
    name: str
    src: str
    dst: str


@dataclass(frozen=True)
class Path:
    """Edges in application order (first applied first); empty = identity."""

    start: str
    edges: tuple[str, ...]

    def key(self):
        return (len(self.edges), self.edges, self.start)

    def display(self) -> str:
        if not self.edges:
            return f"e_{self.start}"
        return ".".join(reversed(self.edges))


@dataclass(frozen=True)
class LinComb:
    """Integer combination of parallel paths, in normal form: coefficients
    nonzero, terms sorted by path key."""

    src: str
    dst: str
    terms: tuple[tuple[int, Path], ...]

    @staticmethod
    def make(src: str, dst: str, terms) -> LinComb:
        acc: dict[Path, int] = {}
        for c, p in terms:
            if c:
                acc[p] = acc.get(p, 0) + c
        cleaned = tuple(sorted(((c, p) for p, c in acc.items() if c),
                               key=lambda t: t[1].key()))
        return LinComb(src, dst, cleaned)

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, c: int) -> LinComb:
        return LinComb.make(self.src, self.dst, [(c * k, p) for k, p in self.terms])

    def add(self, other: LinComb) -> LinComb:
        if (self.src, self.dst) != (other.src, other.dst):
            raise ValueError("adding non-parallel combinations")
        return LinComb.make(self.src, self.dst, self.terms + other.terms)

    def display(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join((f"{c} " if c != 1 else "") + p.display() for c, p in self.terms)


@dataclass(frozen=True)
class Relation:
    clause: str
    lhs: LinComb
    rhs: LinComb


@dataclass(frozen=True)
class TensorQuiverSpec:
    vertices: tuple[str, ...]
    grades: dict  # vertex -> 0|1
    graded: bool
    edges: dict  # name -> Edge
    id_edge: dict  # vertex -> edge name
    vtensor: dict  # (v, w) -> vertex
    unit: str
    alpha: dict  # (v, w) -> edge name
    beta: dict  # (u, v, w) -> edge name
    betainv: dict  # (u, v, w) -> edge name
    unitor_u: dict  # v -> edge name  (v -> 1 (x) v)
    unitor_uprime: dict  # v -> edge name  (1 (x) v -> v)
    tid_right: dict  # (edge, vertex) -> edge name   e (x) id
    tid_left: dict  # (vertex, edge) -> edge name    id (x) e
    relations: tuple[Relation, ...]
    user_relations: tuple[Relation, ...]

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self.edges)), self.relations))

    def __eq__(self, other):
        if not isinstance(other, TensorQuiverSpec):
            return NotImplemented
        return (self.vertices, self.grades, self.edges, self.id_edge,
                self.vtensor, self.unit, self.alpha, self.beta, self.betainv,
                self.unitor_u, self.unitor_uprime, self.tid_right,
                self.tid_left, self.relations) == (
                    other.vertices, other.grades, other.edges, other.id_edge,
                    other.vtensor, other.unit, other.alpha, other.beta,
                    other.betainv, other.unitor_u, other.unitor_uprime,
                    other.tid_right, other.tid_left, other.relations)

    # -- basic structure -----------------------------------------------------

    def grade(self, v: str) -> int:
        return self.grades.get(v, 0)

    def edge_grade(self, e: str) -> int:
        ed = self.edges[e]
        return (self.grade(ed.dst) - self.grade(ed.src)) % 2

    def path_end(self, p: Path) -> str:
        at = p.start
        for e in p.edges:
            ed = self.edges[e]
            if ed.src != at:
                raise ValueError(f"path not composable at {e}")
            at = ed.dst
        return at

    def path_grade(self, p: Path) -> int:
        return (self.grade(self.path_end(p)) - self.grade(p.start)) % 2

    def empty_path(self, v: str) -> Path:
        return Path(v, ())

    def single(self, e: str) -> Path:
        return Path(self.edges[e].src, (e,))

    def lincomb_of(self, p: Path, coeff: int = 1) -> LinComb:
        return LinComb.make(p.start, self.path_end(p), [(coeff, p)])

    # -- tensor structure accessors -------------------------------------------

    def vt(self, v: str, w: str) -> str:
        return self.vtensor[(v, w)]

    def tr(self, e: str, w: str) -> str:
        try:
            return self.tid_right[(e, w)]
        except KeyError:
            raise MissingData(3, f"no edge for {e} (x) id_{w}")

    def tl(self, w: str, e: str) -> str:
        try:
            return self.tid_left[(w, e)]
        except KeyError:
            raise MissingData(3, f"no edge for id_{w} (x) {e}")


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_PATH_RE = re.compile(r"^[A-Za-z0-9_]+(\.[A-Za-z0-9_]+)*$")


def _parse_path(spec_edges, id_edges, token: str, line: int) -> Path:
    """Dot-separated edges in right-to-left composition order; `e_<v>`
    denotes the empty path at v."""
    token = token.strip()
    if token.startswith("e_"):
        return Path(token[2:], ())
    if not _PATH_RE.match(token):
        raise ParseError(f"bad path syntax {token!r}", line)
    names = list(reversed(token.split(".")))  # application order
    for n in names:
        if n not in spec_edges:
            raise ParseError(f"unknown edge {n!r}", line)
    return Path(spec_edges[names[0]].src, tuple(names))


def _parse_lincomb(spec_edges, id_edges, text: str, line: int) -> list[tuple[int, str]]:
    """`k1 p1 + k2 p2`; a term is an optional integer coefficient followed
    by a path token; `0` denotes the zero combination."""
    text = text.strip()
    out = []
    if text == "0":
        return out
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise ParseError("empty term in linear combination", line)
        parts = term.split()
        if len(parts) == 1:
            out.append((1, parts[0]))
        elif len(parts) == 2:
            try:
                c = int(parts[0])
            except ValueError:
                raise ParseError(f"bad coefficient {parts[0]!r}", line)
            out.append((c, parts[1]))
        else:
            raise ParseError(f"bad term {term!r}", line)
    return out


def parse(text: str) -> TensorQuiverSpec:
    """Parse the quiver DSL and auto-instantiate the mandatory relations.

    Identity edges are created automatically (named id_<vertex>) and their
    product companions are forced to identity edges (clause 1).  Raises
    ParseError with position data on bad syntax and MissingData naming the
    clause when required structure is absent.
    """
    vertices: list[str] = []
    grades: dict[str, int] = {}
    graded = False
    edges: dict[str, Edge] = {}
    vtensor: dict = {}
    unit = None
    alpha: dict = {}
    beta: dict = {}
    betainv: dict = {}
    unitor_u: dict = {}
    unitor_uprime: dict = {}
    tid_right: dict = {}
    tid_left: dict = {}
    raw_relations: list[tuple[int, str, str]] = []

    lines = text.splitlines()
    if not any(l.split("#")[0].strip() for l in lines):
        raise ParseError("empty input")

    def need_vertex(name, ln):
        if name not in grades:
            raise ParseError(f"unknown vertex {name!r}", ln)

    def need_edge(name, ln):
        if name not in edges:
            raise ParseError(f"unknown edge {name!r}", ln)

    for ln, raw in enumerate(lines, start=1):
        lineno = ln
        stripped = raw.split("#")[0].strip()
        if not stripped:
            continue
        toks = stripped.split()
        head = toks[0]
        try:
            if head == "vertex":
                name = toks[1]
                g = 0
                if len(toks) == 4 and toks[2] == "grade":
                    g = int(toks[3])
                    graded = graded or g != 0
                    if g not in (0, 1):
                        raise ParseError("grade must be 0 or 1", lineno)
                elif len(toks) != 2:
                    raise ParseError("vertex takes a name and optional grade", lineno)
                if name in grades:
                    raise ParseError(f"duplicate vertex {name!r}", lineno)
                vertices.append(name)
                grades[name] = g
                idn = f"id_{name}"
                edges[idn] = Edge(idn, name, name)
            elif head == "edge":
                m = re.match(r"^edge\s+(\w+)\s*:\s*(\w+)\s*->\s*(\w+)$", stripped)
                if not m:
                    raise ParseError("edge syntax: edge <name> : <v> -> <w>", lineno)
                name, v, w = m.groups()
                need_vertex(v, lineno)
                need_vertex(w, lineno)
                if name in edges:
                    raise ParseError(f"duplicate edge {name!r}", lineno)
                edges[name] = Edge(name, v, w)
            elif head == "tensor":
                _, v, w, eq, name = toks
                need_vertex(v, lineno), need_vertex(w, lineno), need_vertex(name, lineno)
                vtensor[(v, w)] = name
            elif head == "unit":
                unit = toks[2] if toks[1] == "=" else None
                if unit is None:
                    raise ParseError("unit syntax: unit = <vertex>", lineno)
                need_vertex(unit, lineno)
            elif head == "alpha":
                _, v, w, eq, e = toks
                need_vertex(v, lineno), need_vertex(w, lineno), need_edge(e, lineno)
                alpha[(v, w)] = e
            elif head == "beta":
                _, u, v, w, eq, e = toks
                need_edge(e, lineno)
                beta[(u, v, w)] = e
            elif head == "betainv":
                _, u, v, w, eq, e = toks
                need_edge(e, lineno)
                betainv[(u, v, w)] = e
            elif head == "unitor":
                _, v, eq, eu, eup = toks
                need_vertex(v, lineno), need_edge(eu, lineno), need_edge(eup, lineno)
                unitor_u[v] = eu
                unitor_uprime[v] = eup
            elif head == "tid":
                _, e, v, eq, name = toks
                need_edge(e, lineno), need_vertex(v, lineno), need_edge(name, lineno)
                tid_right[(e, v)] = name
            elif head == "idt":
                _, v, e, eq, name = toks
                need_vertex(v, lineno), need_edge(e, lineno), need_edge(name, lineno)
                tid_left[(v, e)] = name
            elif head == "relation":
                body = stripped[len("relation"):]
                if "=" not in body:
                    raise ParseError("relation needs '='", lineno)
                lhs, rhs = body.split("=", 1)
                raw_relations.append((lineno, lhs.strip(), rhs.strip()))
            else:
                raise ParseError(f"unknown directive {head!r}", lineno)
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed {head!r} line", lineno)

    # ---- structural completeness (clauses 1-7) -----------------------------
    if unit is None:
        raise MissingData(6, "no unit vertex declared")
    for v in vertices:
        for w in vertices:
            if (v, w) not in vtensor:
                raise MissingData(2, f"no product vertex for ({v}, {w})")
    for v in vertices:
        for w in vertices:
            if (v, w) not in alpha:
                raise MissingData(4, f"no symmetry edge for ({v}, {w})")
    for u in vertices:
        for v in vertices:
            for w in vertices:
                if (u, v, w) not in beta:
                    raise MissingData(5, f"no associator edge for ({u}, {v}, {w})")
                if (u, v, w) not in betainv:
                    raise MissingData(5, f"no inverse associator edge for ({u}, {v}, {w})")
    for v in vertices:
        if v not in unitor_u or v not in unitor_uprime:
            raise MissingData(7, f"no unitor edges for {v}")

    # auto companions of identity edges (clause 1)
    for v in vertices:
        for w in vertices:
            key = (f"id_{v}", w)
            forced = f"id_{vtensor[(v, w)]}"
            if tid_right.get(key, forced) != forced:
                raise MissingData(1, f"companion of id_{v} with {w} must be {forced}")
            tid_right[key] = forced
            key2 = (w, f"id_{v}")
            forced2 = f"id_{vtensor[(w, v)]}"
            if tid_left.get(key2, forced2) != forced2:
                raise MissingData(1, f"companion of id_{v} under {w} must be {forced2}")
            tid_left[key2] = forced2
    for e in list(edges):
        for w in vertices:
            if (e, w) not in tid_right:
                raise MissingData(3, f"no edge for {e} (x) id_{w}")
            if (w, e) not in tid_left:
                raise MissingData(3, f"no edge for id_{w} (x) {e}")

    # endpoint sanity for the distinguished data
    def check_edge(e, v, w, clause, what):
        ed = edges[e]
        if (ed.src, ed.dst) != (v, w):
            raise MissingData(clause, f"{what} edge {e} has endpoints "
                                      f"{ed.src}->{ed.dst}, expected {v}->{w}")

    for (v, w), e in sorted(alpha.items()):
        check_edge(e, vtensor[(v, w)], vtensor[(w, v)], 4, f"symmetry ({v},{w})")
    for (u, v, w), e in sorted(beta.items()):
        check_edge(e, vtensor[(u, vtensor[(v, w)])], vtensor[(vtensor[(u, v)], w)],
                   5, f"associator ({u},{v},{w})")
    for (u, v, w), e in sorted(betainv.items()):
        check_edge(e, vtensor[(vtensor[(u, v)], w)], vtensor[(u, vtensor[(v, w)])],
                   5, f"inverse associator ({u},{v},{w})")
    for v in vertices:
        check_edge(unitor_u[v], v, vtensor[(unit, v)], 7, f"unitor u_{v}")
        check_edge(unitor_uprime[v], vtensor[(unit, v)], v, 7, f"unitor u'_{v}")
    for (e, w), name in sorted(tid_right.items()):
        ed = edges[e]
        check_edge(name, vtensor[(ed.src, w)], vtensor[(ed.dst, w)], 3,
                   f"{e} (x) id_{w}")
    for (w, e), name in sorted(tid_left.items()):
        ed = edges[e]
        check_edge(name, vtensor[(w, ed.src)], vtensor[(w, ed.dst)], 3,
                   f"id_{w} (x) {e}")

    if graded:
        if grades[unit] != 0:
            raise MissingData(6, "unit vertex must have grade 0")
        for (v, w), t in sorted(vtensor.items()):
            if grades[t] != (grades[v] + grades[w]) % 2:
                raise MissingData(2, f"grade of {t} must be |{v}| + |{w}|")

    spec = TensorQuiverSpec(
        vertices=tuple(vertices), grades=grades, graded=graded, edges=edges,
        id_edge={v: f"id_{v}" for v in vertices}, vtensor=vtensor, unit=unit,
        alpha=alpha, beta=beta, betainv=betainv, unitor_u=unitor_u,
        unitor_uprime=unitor_uprime, tid_right=tid_right, tid_left=tid_left,
        relations=(), user_relations=())

    user: list[Relation] = []
    for lineno, lhs_text, rhs_text in raw_relations:
        lhs_terms = _parse_lincomb(edges, spec.id_edge, lhs_text, lineno)
        rhs_terms = _parse_lincomb(edges, spec.id_edge, rhs_text, lineno)

        def build(terms, other):
            paths = [(c, _parse_path(edges, spec.id_edge, tok, lineno))
                     for c, tok in terms]
            if paths:
                s, d = paths[0][1].start, spec.path_end(paths[0][1])
            else:
                s, d = other
            for _, p in paths:
                if (p.start, spec.path_end(p)) != (s, d):
                    raise ParseError("relation terms are not parallel", lineno)
            return LinComb.make(s, d, paths)

        if lhs_terms:
            first = _parse_path(edges, spec.id_edge, lhs_terms[0][1], lineno)
            ends = (first.start, spec.path_end(first))
        elif rhs_terms:
            first = _parse_path(edges, spec.id_edge, rhs_terms[0][1], lineno)
            ends = (first.start, spec.path_end(first))
        else:
            raise ParseError("relation with two zero sides", lineno)
        lhs = build(lhs_terms, ends)
        rhs = build(rhs_terms, ends)
        user.append(Relation("user", lhs, rhs))

    mandatory = mandatory_relations(spec)
    return TensorQuiverSpec(
        vertices=spec.vertices, grades=spec.grades, graded=spec.graded,
        edges=spec.edges, id_edge=spec.id_edge, vtensor=spec.vtensor,
        unit=spec.unit, alpha=spec.alpha, beta=spec.beta, betainv=spec.betainv,
        unitor_u=spec.unitor_u, unitor_uprime=spec.unitor_uprime,
        tid_right=spec.tid_right, tid_left=spec.tid_left,
        relations=tuple(mandatory) + tuple(user), user_relations=tuple(user))


# ---------------------------------------------------------------------------
# mandatory relation instantiation
# ---------------------------------------------------------------------------


def mandatory_relations(spec: TensorQuiverSpec) -> list[Relation]:
    """All instances of the mandatory relation families, each tagged with
    its clause number.  The graded interchange (3') carries the Koszul
    sign."""
    out: list[Relation] = []
    V = spec.vertices
    real_edges = [e for e in sorted(spec.edges) if not e.startswith("id_")]

    def path(*names):
        return Path(spec.edges[names[0]].src, tuple(names)) if names else None

    def lc(p, c=1):
        return LinComb.make(p.start, spec.path_end(p), [(c, p)])

    # (2) identity edges are empty paths
    for v in V:
        p = spec.single(spec.id_edge[v])
        out.append(Relation("(2)", lc(p), lc(spec.empty_path(v))))
    # (3)/(3') interchange
    for e in real_edges:
        for e2 in real_edges:
            ed, ed2 = spec.edges[e], spec.edges[e2]
            left = path(spec.tl(ed.src, e2), spec.tr(e, ed2.dst))
            right = path(spec.tr(e, ed2.src), spec.tl(ed.dst, e2))
            sign = 1
            clause = "(3)"
            if spec.graded:
                clause = "(3')"
                sign = (-1) ** (spec.edge_grade(e) * spec.edge_grade(e2))
            out.append(Relation(clause, lc(left), lc(right, sign)))
    # (4) symmetry is an involution
    for v in V:
        for w in V:
            p = path(spec.alpha[(w, v)], spec.alpha[(v, w)])
            out.append(Relation("(4)", lc(p), lc(spec.empty_path(spec.vt(w, v)))))
    # (5) naturality of the symmetry
    for e in real_edges:
        ed = spec.edges[e]
        for w in V:
            l1 = path(spec.alpha[(ed.src, w)], spec.tl(w, e))
            r1 = path(spec.tr(e, w), spec.alpha[(ed.dst, w)])
            out.append(Relation("(5)", lc(l1), lc(r1)))
            l2 = path(spec.alpha[(w, ed.src)], spec.tr(e, w))
            r2 = path(spec.tl(w, e), spec.alpha[(w, ed.dst)])
            out.append(Relation("(5)", lc(l2), lc(r2)))
    # (6) associator edges are mutually inverse
    for u in V:
        for v in V:
            for w in V:
                b, bi = spec.beta[(u, v, w)], spec.betainv[(u, v, w)]
                out.append(Relation("(6)", lc(path(bi, b)),
                                    lc(spec.empty_path(spec.vt(spec.vt(u, v), w)))))
                out.append(Relation("(6)", lc(path(b, bi)),
                                    lc(spec.empty_path(spec.vt(u, spec.vt(v, w))))))
    # (7) naturality of the associator in each argument
    for e in real_edges:
        ed = spec.edges[e]
        for v in V:
            for w in V:
                l1 = path(spec.tr(e, spec.vt(v, w)), spec.beta[(ed.dst, v, w)])
                r1 = path(spec.beta[(ed.src, v, w)], spec.tr(spec.tr(e, v), w))
                out.append(Relation("(7)", lc(l1), lc(r1)))
                l2 = path(spec.tl(v, spec.tr(e, w)), spec.beta[(v, ed.dst, w)])
                r2 = path(spec.beta[(v, ed.src, w)], spec.tr(spec.tl(v, e), w))
                out.append(Relation("(7)", lc(l2), lc(r2)))
                l3 = path(spec.tl(v, spec.tl(w, e)), spec.beta[(v, w, ed.dst)])
                r3 = path(spec.beta[(v, w, ed.src)], spec.tl(spec.vt(v, w), e))
                out.append(Relation("(7)", lc(l3), lc(r3)))
    # (8) pentagon
    for x in V:
        for y in V:
            for z in V:
                for t in V:
                    lhs = path(spec.beta[(x, y, spec.vt(z, t))],
                               spec.beta[(spec.vt(x, y), z, t)])
                    rhs = path(spec.tl(x, spec.beta[(y, z, t)]),
                               spec.beta[(x, spec.vt(y, z), t)],
                               spec.tr(spec.beta[(x, y, z)], t))
                    out.append(Relation("(8)", lc(rhs), lc(lhs)))
    # (9) hexagon
    for x in V:
        for y in V:
            for z in V:
                lhs = path(spec.beta[(x, y, z)],
                           spec.alpha[(spec.vt(x, y), z)],
                           spec.beta[(z, x, y)])
                rhs = path(spec.tl(x, spec.alpha[(y, z)]),
                           spec.beta[(x, z, y)],
                           spec.tr(spec.alpha[(x, z)], y))
                out.append(Relation("(9)", lc(lhs), lc(rhs)))
    # (10) unitors are mutually inverse
    for v in V:
        u_, up = spec.unitor_u[v], spec.unitor_uprime[v]
        out.append(Relation("(10)", lc(path(u_, up)), lc(spec.empty_path(v))))
        out.append(Relation("(10)", lc(path(up, u_)),
                            lc(spec.empty_path(spec.vt(spec.unit, v)))))
    # (11) naturality of the unitor
    for e in real_edges:
        ed = spec.edges[e]
        lhs = path(e, spec.unitor_u[ed.dst])
        rhs = path(spec.unitor_u[ed.src], spec.tl(spec.unit, e))
        out.append(Relation("(11)", lc(lhs), lc(rhs)))
    return out


# ---------------------------------------------------------------------------
# validation report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationEntry:
    clause: str
    status: str
    summary: str


@dataclass(frozen=True)
class ValidationReport:
    entries: tuple[ValidationEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.status == "pass" for e in self.entries)


def validate_tensor(spec: TensorQuiverSpec) -> ValidationReport:
    """Recompute the mandatory relation instances and confirm each is
    present and well-typed; graded specs additionally have their sign
    bookkeeping checked (the instances must carry the Koszul sign)."""
    entries: list[ValidationEntry] = []
    have = set()
    for r in spec.relations:
        try:
            for side in (r.lhs, r.rhs):
                for _, p in side.terms:
                    spec.path_end(p)
            have.add((r.clause, r.lhs, r.rhs))
        except (ValueError, KeyError) as exc:
            entries.append(ValidationEntry(r.clause, "fail", f"ill-typed relation: {exc}"))
    try:
        expected = mandatory_relations(spec)
    except MissingData as exc:
        entries.append(ValidationEntry(str(exc.clause), "fail", str(exc)))
        return ValidationReport(tuple(entries))
    missing = 0
    for r in expected:
        if (r.clause, r.lhs, r.rhs) not in have:
            missing += 1
            entries.append(ValidationEntry(
                r.clause, "fail",
                f"missing instance: {r.lhs.display()} = {r.rhs.display()}"))
    if spec.graded and spec.grades.get(spec.unit, 0) != 0:
        entries.append(ValidationEntry("(6)", "fail", "unit vertex must be even"))
    if not entries:
        entries.append(ValidationEntry("all", "pass",
                                       f"{len(expected)} mandatory instances present"))
    return ValidationReport(tuple(entries))


# ---------------------------------------------------------------------------
# rewriting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rule:
    lhs: tuple[str, ...]  # application-order window
    rhs: tuple[tuple[int, tuple[str, ...]], ...]  # parallel replacement terms
    start: str


def _orient(spec: TensorQuiverSpec, rel: Relation) -> Rule | None:
    """Orient a relation into a rewrite rule, longer side to shorter, ties
    by shortlex; requires the leading coefficient to be a unit."""
    terms = ([(c, p, "L") for c, p in rel.lhs.terms]
             + [(c, p, "R") for c, p in rel.rhs.terms])
    if not terms:
        return None
    lead = max(terms, key=lambda t: t[1].key())
    c0, p0, side = lead
    if abs(c0) != 1:
        raise NonConfluent(
            f"cannot orient relation with non-unit leading coefficient {c0}: "
            f"{rel.lhs.display()} = {rel.rhs.display()}")
    rest = []
    for c, p, s in terms:
        if p == p0 and s == side:
            continue
        sign = -1 if s == side else 1
        rest.append((sign * c * c0, p))
    acc: dict[Path, int] = {}
    for c, p in rest:
        acc[p] = acc.get(p, 0) + c
    rhs = tuple(sorted(((c, p.edges) for p, c in acc.items() if c),
                       key=lambda t: (len(t[1]), t[1])))
    if rhs == ((1, p0.edges),) or (not rhs and not p0.edges):
        return None
    for c, es in rhs:
        if es == p0.edges:
            raise NonConfluent(
                f"relation forces torsion on the path {p0.display()}")
    return Rule(p0.edges, rhs, p0.start)


@lru_cache(maxsize=256)
def rewrite_rules(spec: TensorQuiverSpec) -> tuple[Rule, ...]:
    rules = []
    seen = set()
    for rel in spec.relations:
        r = _orient(spec, rel)
        if r is not None and (r.lhs, r.rhs) not in seen:
            seen.add((r.lhs, r.rhs))
            rules.append(r)
    rules.sort(key=lambda r: (len(r.lhs), r.lhs, r.rhs))
    return tuple(rules)


def _find_redex(edges: tuple[str, ...], rules, leftmost: bool):
    positions = range(len(edges)) if leftmost else range(len(edges) - 1, -1, -1)
    rule_iter = rules if leftmost else tuple(reversed(rules))
    for i in positions:
        for r in rule_iter:
            k = len(r.lhs)
            if k and edges[i:i + k] == r.lhs:
                return i, r
    return None


def _nf_with_strategy(spec: TensorQuiverSpec, comb: LinComb, cap: int,
                      leftmost: bool) -> LinComb:
    rules = rewrite_rules(spec)
    work: dict[tuple[str, ...], int] = {}
    for c, p in comb.terms:
        work[p.edges] = work.get(p.edges, 0) + c
    steps = 0
    while True:
        target = None
        for es in sorted(work, key=lambda e: (len(e), e)):
            if work[es] == 0:
                continue
            hit = _find_redex(es, rules, leftmost)
            if hit is not None:
                target = (es, hit)
                break
        if target is None:
            break
        steps += 1
        if steps > cap:
            raise CapExceeded(f"rewriting exceeded {cap} steps")
        es, (i, r) = target
        c = work.pop(es)
        k = len(r.lhs)
        for rc, res in r.rhs:
            new = es[:i] + res + es[i + k:]
            work[new] = work.get(new, 0) + c * rc
            if work[new] == 0:
                del work[new]
    terms = [(c, Path(comb.src, es)) for es, c in work.items() if c]
    return LinComb.make(comb.src, comb.dst, terms)


def normal_form(spec: TensorQuiverSpec, x, cap: int = DEFAULT_STEP_CAP) -> LinComb:
    """Rewrite to the fixpoint under the oriented relations; computed with
    two different deterministic strategies and compared, raising
    NonConfluent on disagreement."""
    if isinstance(x, Path):
        x = spec.lincomb_of(x)
    a = _nf_with_strategy(spec, x, cap, leftmost=True)
    b = _nf_with_strategy(spec, x, cap, leftmost=False)
    if a != b:
        raise NonConfluent(
            f"two maximal rewrites disagree: {a.display()} vs {b.display()}")
    return a


def is_irreducible(spec: TensorQuiverSpec, p: Path) -> bool:
    return _find_redex(p.edges, rewrite_rules(spec), True) is None


# ---------------------------------------------------------------------------
# path tensor and hom bases
# ---------------------------------------------------------------------------


def tensor_paths(spec: TensorQuiverSpec, g: Path, d: Path,
                 signed: bool = False, cap: int = DEFAULT_STEP_CAP) -> LinComb:
    """The product path (g1 (x) id) o ... o (id (x) dm), normal-formed; the
    signed variant multiplies by (-1)^{|g||d|}."""
    w_end = spec.path_end(d)
    edges = tuple(spec.tl(g.start, e) for e in d.edges)
    edges += tuple(spec.tr(e, w_end) for e in g.edges)
    start = spec.vt(g.start, d.start)
    coeff = 1
    if signed:
        coeff = (-1) ** (spec.path_grade(g) * spec.path_grade(d))
    return normal_form(spec, spec.lincomb_of(Path(start, edges), coeff), cap)


def tensor_lincombs(spec: TensorQuiverSpec, a: LinComb, b: LinComb,
                    signed: bool = False, cap: int = DEFAULT_STEP_CAP) -> LinComb:
    src = spec.vt(a.src, b.src)
    dst = spec.vt(a.dst, b.dst)
    total = LinComb.make(src, dst, [])
    for ca, pa in a.terms:
        for cb, pb in b.terms:
            piece = tensor_paths(spec, pa, pb, signed, cap)
            total = total.add(piece.scale(ca * cb))
    return normal_form(spec, total, cap)


@lru_cache(maxsize=256)
def _irreducible_paths(spec: TensorQuiverSpec, cap: int,
                       budget: int = 200000) -> tuple[Path, ...]:
    """All irreducible paths of length <= cap, every endpoint pair.

    Prefixes of irreducible paths are irreducible (a redex is a contiguous
    window), so the search extends only the irreducible frontier."""
    out = []
    frontier = [Path(v, ()) for v in spec.vertices]
    out.extend(frontier)
    by_src: dict[str, list[str]] = {}
    for name in sorted(spec.edges):
        by_src.setdefault(spec.edges[name].src, []).append(name)
    for _ in range(cap):
        new = []
        for p in frontier:
            end = spec.path_end(p)
            for e in by_src.get(end, ()):
                cand = Path(p.start, p.edges + (e,))
                if is_irreducible(spec, cand):
                    new.append(cand)
                if len(out) + len(new) > budget:
                    raise CapExceeded(f"path enumeration exceeded {budget}")
        out.extend(new)
        frontier = new
        if not frontier:
            break
    return tuple(out)


def hom_basis(spec: TensorQuiverSpec, v: str, w: str, cap: int = 6,
              signed: bool = False) -> list[Path]:
    """Basis of the hom group between v and w in the additive hull: the
    irreducible paths.  Raises CapExceeded unless the set of irreducible
    paths provably stops below the cap (no irreducible path of length cap
    exists anywhere, so longer paths always contain a redex)."""
    del signed  # the basis is the same; signs live in coefficients
    irreducible = _irreducible_paths(spec, cap)
    if any(len(p.edges) == cap for p in irreducible):
        raise CapExceeded(
            f"an irreducible path of length {cap} exists; raise the cap")
    return [p for p in irreducible if p.start == v and spec.path_end(p) == w]
