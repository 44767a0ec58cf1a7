"""Arthur-type verdicts for good-parity Langlands data (corank <= 4)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..halfint import HalfInt, ZERO, HALF, ONE
from ..core import LanglandsData, NotGoodParity, Segment, is_critical_type
from ..tempered import enumerate_tempered
from .params import ArthurParameter, condition_A


class UnclassifiedResidue(ValueError):
    """The rule engine could not decide some L-data at a critical point."""

    def __init__(self, leftovers):
        self.leftovers = leftovers
        super().__init__(f"{len(leftovers)} undecided L-data")


@dataclass(frozen=True)
class Verdict:
    arthur: str  # 'Yes' | 'No' | 'Unclassified'
    critical: bool
    rule_tag: str

    def __bool__(self):
        return self.arthur == "Yes"


def check_good_parity(ld, cusp):
    for (name, z), _ in ld.support(cusp).items():
        alpha = cusp.alpha(name)
        if not (z - alpha).is_integer():
            raise NotGoodParity(f"exponent {z} outside {alpha} + Z for {name}")


def is_arthur_type(ld, cusp):
    """Decide whether the representation with the given L-data is of
    Arthur type, via the encoded shape rules.  See rules.py for the
    dispatch; tempered data and f = corank shapes are decided directly.
    """
    from .rules import decide

    check_good_parity(ld, cusp)
    supp = ld.support(cusp)
    corank = sum(supp.values())
    crit = is_critical_type(list(supp.elements()), cusp)
    if ld.f == 0:
        return Verdict("Yes", crit, "tempered")
    if ld.f == corank:
        exps = []
        for s in ld.segments:
            if s.length() != 1:
                raise AssertionError("f = corank forces singleton segments")
            exps.append(-s.a)
        alpha = cusp.alpha(ld.segments[0].rho)
        ok = condition_A(exps, alpha)
        return Verdict("Yes" if ok else "No", crit, "condition-A")
    return decide(ld, cusp, crit)


def enumerate_critical_points(alpha, corank=4):
    """All nondecreasing exponent tuples of the given size whose support
    set is a 1-spaced segment containing alpha."""
    alpha = alpha if isinstance(alpha, HalfInt) else HalfInt.parse(str(alpha))
    lo_floor = ZERO if alpha.is_integer() else HALF
    out = set()

    def fill(segment):
        """Multisets of size ``corank`` supported exactly on ``segment``."""
        k = len(segment)
        if k > corank:
            return
        import itertools
        for extra in itertools.combinations_with_replacement(range(k), corank - k):
            tup = sorted(list(segment) + [segment[i] for i in extra],
                         key=lambda h: h.twice)
            if set(tup) == set(segment):
                out.add(tuple(tup))

    # segments [lo, hi] (1-spaced) containing alpha, inside the parity class
    span = corank  # support sets have at most `corank` distinct members
    lo = alpha
    while lo >= lo_floor and (alpha - lo).as_int() < span:
        hi = alpha
        while (hi - lo).as_int() < span:
            seg = []
            cur = lo
            while cur <= hi:
                seg.append(cur)
                cur = cur + 1
            fill(seg)
            hi = hi + 1
        lo = lo - 1
    return sorted(out, key=lambda t: tuple(h.twice for h in t))


def _segment_multisets(pool):
    """All multisets of Steinberg segments (negative exponent sums) whose
    absolute supports add up exactly to ``pool`` (a Counter of HalfInt)."""
    pool = Counter(pool)
    results = []

    def candidates(p):
        """Single segments consuming a subset of p."""
        segs = set()
        hi = max((z.twice for z in p), default=0)
        tops = {z for z in p} | {-z for z in p}
        for top in tops:
            for bot_t in range(top.twice, -hi - 1, -2):
                bot = HalfInt(twice=bot_t)
                if top + bot >= ZERO:
                    continue
                seg = Segment("", top, bot)
                need = seg.abs_support()
                if all(p[z] >= c for z, c in need.items()):
                    segs.add((top, bot))
        return segs

    def go(p, chosen, floor_key):
        results.append((tuple(chosen), Counter(p)))
        for top, bot in sorted(candidates(p), key=lambda tb: (tb[0].twice, tb[1].twice)):
            if (top.twice, bot.twice) < floor_key:
                continue
            seg = Segment("", top, bot)
            need = seg.abs_support()
            if not all(p[z] >= c for z, c in need.items()):
                continue
            q = Counter(p)
            q.subtract(need)
            q = Counter({z: c for z, c in q.items() if c})
            go(q, chosen + [(top, bot)], (top.twice, bot.twice))

    go(pool, [], (-(10 ** 9), -(10 ** 9)))
    dedup = {}
    for chosen, rest in results:
        dedup[(chosen, tuple(sorted(rest.items())))] = (chosen, rest)
    return list(dedup.values())


def all_ldata_at_point(point, cusp, rho=None):
    """Every good-parity L-data whose added support equals the point."""
    rho = rho or cusp.names()[0]
    pool = Counter(HalfInt(z) if not isinstance(z, HalfInt) else z for z in point)
    temps = enumerate_tempered(cusp, sum(pool.values()), rho=rho)
    by_support = {}
    for lv, reps in temps.items():
        for rep in reps:
            sup = Counter({z: m for (n, z), m in rep.added_support(cusp).items()})
            by_support.setdefault(tuple(sorted((z.twice, m) for z, m in sup.items())),
                                  []).append(rep)
    out = []
    for segs, rest in _segment_multisets(pool):
        key = tuple(sorted((z.twice, m) for z, m in rest.items()))
        for rep in by_support.get(key, ()):
            out.append(LanglandsData(
                tuple(Segment(rho, top, bot) for top, bot in segs), rep))
    dedup = {}
    for ld in out:
        dedup[ld.key()] = ld
    return list(dedup.values())


def classify_critical_point(point, cusp, rho=None):
    """Split every representation at a critical point into the Arthur and
    non-Arthur lists; raises UnclassifiedResidue if a shape is undecided."""
    rho = rho or cusp.names()[0]
    pts = [HalfInt(z) if not isinstance(z, HalfInt) else z for z in point]
    if not is_critical_type(pts, cusp, rho=rho):
        raise ValueError(f"{point} is not critical")
    yes, no, undecided = [], [], []
    for ld in all_ldata_at_point(pts, cusp, rho=rho):
        v = is_arthur_type(ld, cusp)
        if v.arthur == "Yes":
            yes.append(ld)
        elif v.arthur == "No":
            no.append(ld)
        else:
            undecided.append(ld)
    if undecided:
        raise UnclassifiedResidue(undecided)
    return yes, no
