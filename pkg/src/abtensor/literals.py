"""Text formats for matrices, modules, functor expressions and morphisms.

Matrix literal: `Z/4 [[2,2],[2,0]]` (ring tag then bracketed rows); inside
representation files the ring tag may be omitted and defaults to the
declared ring.  Module literals: `mod Z/4 gens 1 rels [[2]]`,
`free(Z/4, k)`, `cyc(Z/4, a)`.  Functor expressions: `yon(<module>)`,
`ker(<funhom>)`, `coker(<funhom>)`, `tensor(<f>,<g>)`, `rad(<module>)`,
`simple(<module>)`, with `hom(<f>, <g>, <mat>, <mat>)` naming a morphism by
its presentation square.
"""

from __future__ import annotations

import ast
import re

from .errors import ParseError
from .matrices import Mat
from .modules import FPMod, ModHom, cyclic_module, fpmod, free_module
from .functors import FPFunctor, FunHom, kernel_f, cokernel_f, lift_hom, \
    tensor_general, yoneda
from .rings import CoeffRing, ZZ, Zmod
from .structure import radical_rep, simples
from .functors import find_functor_iso


def parse_ring(text: str) -> CoeffRing:
    text = text.strip()
    if text == "Z":
        return ZZ
    m = re.fullmatch(r"Z/(\d+)", text)
    if not m:
        raise ParseError(f"bad ring literal {text!r}")
    return Zmod(int(m.group(1)))


def _parse_rows(text: str, line=None):
    try:
        rows = ast.literal_eval(text.strip())
    except (ValueError, SyntaxError):
        raise ParseError(f"bad matrix rows {text!r}", line)
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"matrix rows must be a list of lists: {text!r}", line)
    return rows


def parse_matrix(text: str, default_ring: CoeffRing | None = None,
                 cols: int | None = None, line=None) -> Mat:
    text = text.strip()
    m = re.match(r"^(Z(?:/\d+)?)\s*(\[.*\])$", text)
    if m:
        ring = parse_ring(m.group(1))
        rows = _parse_rows(m.group(2), line)
    else:
        if default_ring is None:
            raise ParseError(f"matrix literal needs a ring tag: {text!r}", line)
        ring = default_ring
        rows = _parse_rows(text, line)
    return Mat.from_rows(ring, rows, cols=cols)


def parse_module(text: str, line=None) -> FPMod:
    text = text.strip()
    m = re.fullmatch(r"free\(\s*([^,]+?)\s*,\s*(\d+)\s*\)", text)
    if m:
        return free_module(parse_ring(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"cyc\(\s*([^,]+?)\s*,\s*(-?\d+)\s*\)", text)
    if m:
        return cyclic_module(parse_ring(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"mod\s+(\S+)\s+gens\s+(\d+)\s+rels\s+(\[.*\])", text)
    if m:
        ring = parse_ring(m.group(1))
        gens = int(m.group(2))
        rows = _parse_rows(m.group(3), line)
        return fpmod(ring, gens, Mat.from_rows(ring, rows, cols=gens))
    raise ParseError(f"bad module literal {text!r}", line)


# functor expression grammar --------------------------------------------------


def _split_args(body: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        out.append("".join(cur))
    return [a.strip() for a in out if a.strip()]


def parse_functor(text: str, ring: CoeffRing | None = None) -> FPFunctor:
    text = text.strip()
    m = re.fullmatch(r"(\w+)\((.*)\)", text, flags=re.DOTALL)
    if not m:
        raise ParseError(f"bad functor expression {text!r}")
    head, body = m.group(1), m.group(2)
    if head == "yon":
        return yoneda(parse_module(body))
    if head == "ker":
        return kernel_f(parse_funhom(body, ring))[0]
    if head == "coker":
        return cokernel_f(parse_funhom(body, ring))[0]
    if head == "tensor":
        args = _split_args(body)
        if len(args) != 2:
            raise ParseError("tensor(...) takes two functor expressions")
        return tensor_general(parse_functor(args[0], ring), parse_functor(args[1], ring))
    if head == "rad":
        return radical_rep(parse_module(body))[0]
    if head == "simple":
        x = parse_module(body)
        _, emb = radical_rep(x)
        return cokernel_f(emb)[0]
    raise ParseError(f"unknown functor constructor {head!r}")


def parse_funhom(text: str, ring: CoeffRing | None = None) -> FunHom:
    """`hom(<src>, <dst>, <gen matrix>[, <rel matrix>])`: the relation-level
    matrix may be omitted, in which case it is solved for."""
    text = text.strip()
    m = re.fullmatch(r"hom\((.*)\)", text, flags=re.DOTALL)
    if not m:
        raise ParseError(f"bad morphism expression {text!r}")
    args = _split_args(m.group(1))
    if len(args) not in (3, 4):
        raise ParseError("hom(...) takes source, target and one or two matrices")
    src = parse_functor(args[0], ring)
    dst = parse_functor(args[1], ring)
    mat = parse_matrix(args[2], default_ring=src.ring, cols=src.gen_module.gens)
    u = ModHom(dst.gen_module, src.gen_module, mat)
    if len(args) == 3:
        return lift_hom(u, src, dst)
    vmat = parse_matrix(args[3], default_ring=src.ring, cols=src.rel_module.gens)
    v = ModHom(dst.rel_module, src.rel_module, vmat)
    return FunHom(src, dst, u, v)
