"""Parsers and renderers for the notation grammars.

* exponent tuples: ``0,1/2,3/2``
* multi-segments:  ``rho a : [3,0;1;+] [3,2;1;?]``
* Langlands data:  ``L(D[-1,-1],D[0,-1]; T(I,1;x=2) o sc)``

Parsers report the offset of the first offending character.
"""

from __future__ import annotations

import re

from .halfint import HalfInt
from .core import Segment, LanglandsData, seed_rep
from .xms import ExtendedSegment, ExtendedMultiSegment
from .tempered import t_construct, NotWellDefined


class ParseError(ValueError):
    def __init__(self, message, text, pos):
        super().__init__(f"{message} at offset {pos}: {text[pos:pos + 25]!r}")
        self.pos = pos


_HALF = r"-?\d+(?:/2)?|-?\.\d+|-?\d+\.\d+"


def parse_halfint(text):
    try:
        return HalfInt.parse(text)
    except ValueError as e:
        raise ParseError(str(e), text, 0)


def parse_exponents(text):
    out = []
    pos = 0
    for part in text.split(","):
        piece = part.strip()
        if not piece:
            raise ParseError("empty exponent", text, pos)
        if not re.fullmatch(_HALF, piece):
            raise ParseError("bad half-integer", text, pos)
        out.append(HalfInt.parse(piece))
        pos += len(part) + 1
    return out


def render_exponents(values):
    return ",".join(str(v) for v in values)


# -- multi-segments ---------------------------------------------------------

_ROW = re.compile(r"\[\s*(" + _HALF + r")\s*,\s*(" + _HALF + r")\s*;\s*(\d+)\s*;\s*([+\-?])\s*\]")


def parse_xms(text):
    """One or more blocks ``rho NAME : [A,B;l;s] ...`` separated by '|'."""
    blocks = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = re.match(r"rho\s+(\S+)\s*:\s*", chunk)
        if not m:
            raise ParseError("expected 'rho NAME :'", text, text.find(chunk))
        name = m.group(1)
        rest = chunk[m.end():]
        rows = []
        pos = 0
        while pos < len(rest):
            if rest[pos].isspace():
                pos += 1
                continue
            rm = _ROW.match(rest, pos)
            if not rm:
                raise ParseError("expected row [A,B;l;s]", text,
                                 text.find(chunk) + m.end() + pos)
            a = HalfInt.parse(rm.group(1))
            b = HalfInt.parse(rm.group(2))
            l = int(rm.group(3))
            eta = {"+": +1, "-": -1, "?": None}[rm.group(4)]
            rows.append(ExtendedSegment(a, b, l, eta))
            pos = rm.end()
        blocks.append((name, tuple(rows)))
    return ExtendedMultiSegment(tuple(blocks))


def render_xms(ems):
    return str(ems)


# -- Langlands data ---------------------------------------------------------

_TSTEP = re.compile(
    r"T\(\s*(I{1,3}|IV|V)\s*,\s*(\d+)\s*"
    r"(?:;\s*x\s*=\s*(" + _HALF + r")\s*)?"
    r"(?:;?\s*,?\s*sign\s*=\s*([+\-])\s*)?\)"
)


def parse_tail(text, cusp, rho=None, strict=False):
    """A constructor chain ``T(..) o T(..) o sc`` applied to the seed."""
    rho = rho or cusp.names()[0]
    parts = [p.strip() for p in text.split(" o ")]
    if not parts or parts[-1] != "sc":
        raise ParseError("tail must end in 'sc'", text, max(0, len(text) - 2))
    rep = seed_rep(cusp)
    for p in reversed(parts[:-1]):
        m = _TSTEP.fullmatch(p)
        if not m:
            raise ParseError("bad constructor step", text, text.find(p))
        kind, mm, xs, sg = m.group(1), int(m.group(2)), m.group(3), m.group(4)
        x = HalfInt.parse(xs) if xs else None
        sign = {"+": 1, "-": -1, None: 0}[sg]
        rep = t_construct(kind, rep, rho=rho, x=x, sign=sign, m=mm,
                          cusp=cusp, strict=strict)
    return rep


def parse_ldata(text, cusp, rho=None, strict=False):
    rho = rho or cusp.names()[0]
    text = text.strip()
    if not (text.startswith("L(") and text.endswith(")")):
        if text == "sc" or text.startswith("T("):
            return LanglandsData((), parse_tail(text, cusp, rho, strict))
        raise ParseError("expected L(...)", text, 0)
    body = text[2:-1]
    depth = 0
    cut = None
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == ";" and depth == 0:
            cut = i
            break
    if cut is None:
        raise ParseError("missing ';' before the tail", text, len(text) - 1)
    seg_text, tail_text = body[:cut], body[cut + 1:].strip()
    segments = []
    pos = 0
    seg_re = re.compile(r"D\[\s*(" + _HALF + r")\s*,\s*(" + _HALF + r")\s*\]")
    while pos < len(seg_text):
        ch = seg_text[pos]
        if ch.isspace() or ch == ",":
            pos += 1
            continue
        m = seg_re.match(seg_text, pos)
        if not m:
            raise ParseError("expected segment D[x,y]", text, 2 + pos)
        top = HalfInt.parse(m.group(1))
        bot = HalfInt.parse(m.group(2))
        try:
            segments.append(Segment(rho, top, bot))
        except ValueError as e:
            raise ParseError(str(e), text, 2 + pos)
        pos = m.end()
    tail = parse_tail(tail_text, cusp, rho, strict)
    try:
        return LanglandsData(tuple(segments), tail)
    except ValueError as e:
        raise ParseError(str(e), text, 0)


def render_ldata(ld):
    if not ld.segments:
        return ld.tail.chain_str()
    segs = ",".join(str(s) for s in ld.segments)
    return f"L({segs}; {ld.tail.chain_str()})"


# -- resolution of printed constructor chains --------------------------------

def _tail_steps(text):
    parts = [p.strip() for p in text.split(" o ")]
    if not parts or parts[-1] != "sc":
        raise ParseError("tail must end in 'sc'", text, max(0, len(text) - 2))
    return parts[:-1]


def _apply_steps(steps, cusp, rho, strict):
    rep = seed_rep(cusp)
    for p in reversed(steps):
        m = _TSTEP.fullmatch(p)
        if not m:
            raise ParseError("bad constructor step", p, 0)
        kind, mm, xs, sg = m.group(1), int(m.group(2)), m.group(3), m.group(4)
        x = HalfInt.parse(xs) if xs else None
        sign = {"+": 1, "-": -1, None: 0}[sg]
        rep = t_construct(kind, rep, rho=rho, x=x, sign=sign, m=mm,
                          cusp=cusp, strict=strict)
    return rep


def resolve_tail(text, cusp, rho=None):
    """Resolve a printed constructor chain to its representation.

    Printed chains occasionally permute the order in which the steps are
    actually well-defined (the papers reuse one name across a family of
    reducibility points), and a few use a name whose gate fails at a
    boundary point even though the target representation exists.  We try,
    in order: the chain as printed (strict), every permutation of its
    steps (strict, demanding a unique outcome), the chain as printed with
    gates relaxed, and finally permutations with gates relaxed.
    """
    import itertools

    rho = rho or cusp.names()[0]
    steps = _tail_steps(text)
    try:
        return _apply_steps(steps, cusp, rho, True)
    except NotWellDefined:
        pass
    for strict in (True, False):
        found = {}
        for perm in itertools.permutations(steps):
            try:
                rep = _apply_steps(list(perm), cusp, rho, strict)
            except (NotWellDefined, ParseError):
                continue
            found[rep.key()] = rep
        if len(found) == 1:
            return next(iter(found.values()))
        if len(found) > 1:
            raise NotWellDefined(
                f"chain {text!r} is ambiguous: {len(found)} distinct outcomes")
    raise NotWellDefined(f"chain {text!r} does not resolve at this seed")


def resolve_ldata(text, cusp, rho=None):
    """parse_ldata with the printed-chain resolution of resolve_tail."""
    rho = rho or cusp.names()[0]
    text = text.strip()
    if not text.startswith("L("):
        return LanglandsData((), resolve_tail(text, cusp, rho))
    # split segments from tail exactly as parse_ldata does
    body = text[2:-1]
    depth = 0
    cut = None
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == ";" and depth == 0:
            cut = i
            break
    if cut is None:
        raise ParseError("missing ';' before the tail", text, len(text) - 1)
    seg_text, tail_text = body[:cut], body[cut + 1:].strip()
    shell = parse_ldata(f"L({seg_text}; sc)", cusp, rho, strict=False)
    tail = resolve_tail(tail_text, cusp, rho)
    return LanglandsData(shell.segments, tail)
