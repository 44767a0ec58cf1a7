"""Arthur parameters, condition (A), and the segment-reduction helpers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..halfint import HalfInt, ZERO, HALF, ONE
from ..core import LanglandsData, NotGoodParity, Segment
from .. import xms as X


class TemperedInput(ValueError):
    """rho_minus asked of an L-data with no segment to remove."""


class NotEligible(ValueError):
    """The multi-segment misses the shape needed for the +1 insertion."""


class ArthurParameter:
    """Multiset of (rho_name, a, b) triples: psi = (+) rho (x) S_a (x) S_b."""

    __slots__ = ("summands",)

    def __init__(self, summands=()):
        c = summands if isinstance(summands, Counter) else Counter(summands)
        self.summands = Counter({k: v for k, v in c.items() if v})
        for (name, a, b), m in self.summands.items():
            if a < 1 or b < 1 or m < 1:
                raise ValueError(f"bad summand {(name, a, b)} x {m}")

    def items(self):
        return sorted(self.summands.items())

    def key(self):
        return tuple(self.items())

    def total_rank(self, dims=None):
        if dims is None:
            return sum(a * b * m for (_, a, b), m in self.summands.items())
        return sum(dims[n] * a * b * m for (n, a, b), m in self.summands.items())

    def swapped(self):
        """(a, b) -> (b, a) on every summand."""
        return ArthurParameter(Counter({(n, b, a): m
                                        for (n, a, b), m in self.summands.items()}))

    def is_good_parity(self, cusp):
        for (name, a, b), _ in self.summands.items():
            alpha = cusp.alpha(name)
            if (HalfInt(twice=a + b) - alpha).twice % 2 != 0:
                return False
        return True

    def __eq__(self, other):
        return isinstance(other, ArthurParameter) and self.summands == other.summands

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        parts = [f"{n}⊗S_{a}⊗S_{b}" + (f"^{m}" if m > 1 else "")
                 for (n, a, b), m in self.items()]
        return " + ".join(parts) if parts else "0"


def condition_A(exponents, alpha):
    """Floor-multiplicity monotonicity for L-data of the shape
    L(D[-x_1,-x_1]^m1, ...; sc).

    ``exponents`` is the positive exponent multiset (iterable of HalfInt);
    all entries must lie in one parity class.
    """
    mult = Counter()
    for x in exponents:
        x = HalfInt(x)
        if x <= ZERO:
            raise ValueError("exponents must be positive")
        mult[x] += 1
    if not mult:
        return True
    pars = {x.twice % 2 for x in mult}
    if len(pars) > 1:
        raise ValueError("exponents from several parity classes")
    alpha = HalfInt(alpha)
    top = max(mult)

    def m(z):
        return mult.get(z, 0) if z > ZERO else 0

    x = HALF if pars.pop() == 1 else ONE
    while x <= top:
        if alpha >= ONE and ONE <= x <= alpha:
            if m(x) // 2 > m(x - 1) // 2:
                return False
        elif x > alpha:
            if m(x) > m(x - 1):
                return False
        x = x + 1
    return True


def rho_minus(ld, rho, cusp=None):
    """Remove all copies of the extremal segment of the rho-part.

    Returns (smaller L-data, removed segment, multiplicity).  The removed
    segment D[x, -y] minimizes x - y first, then x, following the
    reduction that peels the most-negative-exponent segment.
    """
    segs = [s for s in ld.segments if s.rho == rho]
    if not segs:
        raise TemperedInput(f"no {rho}-segment to remove")
    # paper coordinates: segment D[x, -y]; our Segment(a=x top, b=-y bottom).
    least = min((s.a + s.b_end for s in segs))
    pool = [s for s in segs if s.a + s.b_end == least]
    x = min(s.a for s in pool)
    target = next(s for s in pool if s.a == x)
    r = sum(1 for s in ld.segments if s == target)
    rest = [s for s in ld.segments if s != target]
    return LanglandsData(tuple(rest), ld.tail), target, r


def eligible_rows(ems, rho, seg, r):
    """Indices j_1 < ... < j_r of the rows [y-1, x+1] required by the
    y - x > 1 insertion step, if present with the stated extremality."""
    x, y = seg.a, -seg.b_end
    rows = ems.rows(rho)
    idx = [i for i, row in enumerate(rows)
           if row.a == y - 1 and row.b_end == x + 1]
    if len(idx) < r:
        return None
    idx = idx[:r]
    j1 = idx[0]
    if any(rows[i].b_end == rows[j1].b_end for i in range(j1)):
        return None
    width = (rows[j1].a - rows[j1].b_end).as_int() + 3
    for i, row in enumerate(rows):
        w = (row.a - row.b_end).as_int() + 1
        if w > width or (w == width and i < j1):
            return None
    return idx


def xms_plus(ems, seg, r, rho=None):
    """Insert r copies of the removed segment back at the parameter level.

    ``seg`` is the removed Steinberg segment D[x, -y] (x + y > 0 ... the
    L-data stores it with negative exponent sum: top x, bottom -y).  For
    y - x = 1 this inserts rows ([x+1, x], 1, 1) so that the attached
    parameter gains rho (x) S_{x+y+1} (x) S_2; for y - x > 1 it add's the
    designated rows once each.
    """
    rho = rho or seg.rho
    x = seg.a
    y = -seg.b_end
    gap = (y - x).as_int()
    if gap == 1:
        rows = list(ems.rows(rho))
        pos = len([row for row in rows if row.b_end <= x])
        rows[pos:pos] = [X.ExtendedSegment(x + 1, x, 1, +1) for _ in range(r)]
        return ems.replace_block(rho, rows)
    if gap < 1:
        raise NotEligible("removed segment must have y - x >= 1")
    idx = eligible_rows(ems, rho, seg, r)
    if idx is None:
        raise NotEligible("no eligible rows [y-1, x+1] with the extremal width")
    cur = ems
    for j in idx:
        cur = X.add(cur, rho, j, 1)
    return cur
