"""Tempered constructors T_I .. T_V and corank-bounded enumeration.

Each constructor inverts one case of the classification of non-cuspidal
tempered representations of good parity: it rewrites (phi', eps') of a
smaller representation into the (phi, eps) of the bigger one, appending
a provenance step.  ``strict=True`` enforces the exact well-definedness
gates; ``strict=False`` only checks that the rewrite makes structural
sense, which is what resolving a printed constructor chain needs (a few
printed chains use a uniform name whose gate fails at boundary alpha
even though the target representation exists).
"""

from __future__ import annotations

from collections import Counter

from .halfint import HalfInt, ZERO, HALF, ONE
from .core import (
    ConstructorStep,
    SignCharacter,
    TemperedLParam,
    TemperedRep,
    seed_rep,
)


class NotWellDefined(ValueError):
    pass


def _crank_increment(kind, m, x):
    if kind == "I":
        return m
    if kind == "II":
        return m - 1
    if kind == "III":
        return (m - 1) + (2 * x).twice // 2
    if kind == "IV":
        return (m - 1) // 2
    if kind == "V":
        return m // 2
    raise ValueError(kind)


def t_construct(kind, base, rho=None, x=None, sign=0, m=1, cusp=None, strict=True):
    """Apply one constructor to ``base`` and return the bigger TemperedRep.

    kind I/II/III take the positive half-integer exponent ``x``; kind V
    takes ``sign``.  ``cusp`` is needed only to vet good parity of the
    exponent; pass it when available.
    """
    phi, eps = base.phi, base.eps
    if rho is None:
        names = {n for (n, _) in phi.summands} or ({cusp.names()[0]} if cusp else set())
        if len(names) != 1:
            raise ValueError("rho is ambiguous; pass it explicitly")
        rho = names.pop()
    if cusp is not None and kind in ("I", "II", "III"):
        epsr = cusp.rho(rho).parity
        if (x - epsr).twice % 2 != 0:
            raise NotWellDefined(f"exponent {x} breaks good parity (eps={epsr})")
    if cusp is not None and kind in ("IV", "V"):
        if cusp.rho(rho).parity != ZERO:
            raise NotWellDefined("kinds IV/V need an integral reducibility point")

    if kind == "I":
        if m < 1 or x is None or not x > ZERO:
            raise NotWellDefined("kind I needs m >= 1 and x > 0")
        lo = x.twice - 1  # 2x - 1
        hi = x.twice + 1  # 2x + 1
        if strict and phi.mult(rho, hi) != 0:
            raise NotWellDefined(f"m_phi'(S_{hi}) must be 0")
        if phi.mult(rho, lo) < m:
            raise NotWellDefined(f"m_phi'(S_{lo}) must be >= {m}")
        new_phi = phi.remove(rho, lo, m).add(rho, hi, m)
        top_sign = eps.get(rho, lo)
        if top_sign is None:
            raise NotWellDefined(f"no sign recorded for S_{lo}")
        new_eps = eps.set(rho, hi, top_sign) if phi.mult(rho, hi) == 0 else eps
        if not strict and phi.mult(rho, hi) > 0:
            # loose mode tolerates an existing top summand if signs agree
            if eps(rho, hi) != top_sign:
                raise NotWellDefined("sign clash at the new top summand")
            new_eps = eps
        new_eps = new_eps.restrict(new_phi)
    elif kind == "II":
        if m <= 1 or m % 2 == 0 or x is None or not x > ZERO:
            raise NotWellDefined("kind II needs odd m > 1 and x > 0")
        lo, hi = x.twice - 1, x.twice + 1
        if strict:
            if phi.mult(rho, hi) != 1:
                raise NotWellDefined(f"m_phi'(S_{hi}) must be 1")
            if phi.mult(rho, lo) < m:
                raise NotWellDefined(f"m_phi'(S_{lo}) must be >= {m}")
            if eps(rho, hi) * eps(rho, lo) != -1:
                raise NotWellDefined("signs at S_{2x+1}, S_{2x-1} must differ")
        if phi.mult(rho, lo) < m - 1:
            raise NotWellDefined(f"cannot remove {m - 1} copies of S_{lo}")
        low_sign = eps.get(rho, lo)
        new_phi = phi.remove(rho, lo, m - 1).add(rho, hi, m - 1)
        if phi.mult(rho, hi) > 0:
            new_eps = eps
        else:
            if low_sign is None:
                raise NotWellDefined(f"no sign recorded for S_{lo}")
            new_eps = eps.set(rho, hi, -low_sign)
        new_eps = new_eps.restrict(new_phi)
    elif kind == "III":
        if m <= 1 or m % 2 == 1 or x is None or not x > ZERO:
            raise NotWellDefined("kind III needs even m > 1 and x > 0")
        lo, hi = x.twice - 1, x.twice + 1
        if strict and phi.mult(rho, hi) != 0:
            raise NotWellDefined(f"m_phi'(S_{hi}) must be 0")
        if phi.mult(rho, lo) < m - 2:
            raise NotWellDefined(f"m_phi'(S_{lo}) must be >= {m - 2}")
        if lo > 0 and phi.mult(rho, lo) < m - 1:
            # the sign of S_{2x-1} must survive in the result to pin the
            # sign of S_{2x+1}; only the conventional S_0 escapes this
            raise NotWellDefined(f"m_phi'(S_{lo}) must be >= {m - 1} (sign anchor)")
        low_sign = eps.get(rho, lo)
        if low_sign is None:
            raise NotWellDefined(f"no sign recorded for S_{lo}")
        new_phi = phi.remove(rho, lo, m - 2).add(rho, hi, m)
        if phi.mult(rho, hi) > 0:
            if strict or eps(rho, hi) != -low_sign:
                raise NotWellDefined("sign clash at the new top summand")
            new_eps = eps
        else:
            new_eps = eps.set(rho, hi, -low_sign)
        new_eps = new_eps.restrict(new_phi)
    elif kind == "IV":
        if m <= 1 or m % 2 == 0:
            raise NotWellDefined("kind IV needs odd m > 1")
        if strict and phi.mult(rho, 1) != 1:
            raise NotWellDefined("m_phi'(S_1) must be 1")
        if phi.mult(rho, 1) == 0:
            raise NotWellDefined("kind IV needs S_1 present")
        new_phi = phi.add(rho, 1, m - 1)
        new_eps = eps
        x = ZERO
    elif kind == "V":
        if m <= 1 or m % 2 == 1:
            raise NotWellDefined("kind V needs even m > 1")
        if sign not in (+1, -1):
            raise NotWellDefined("kind V needs a sign")
        if strict and phi.mult(rho, 1) != 0:
            raise NotWellDefined("m_phi'(S_1) must be 0")
        if not strict and phi.mult(rho, 1) and eps(rho, 1) != sign:
            raise NotWellDefined("sign clash at S_1")
        new_phi = phi.add(rho, 1, m)
        new_eps = eps.set(rho, 1, sign)
        x = ZERO
    else:
        raise ValueError(f"unknown kind {kind!r}")

    step = ConstructorStep(kind, rho, m, None if kind in ("IV", "V") else x,
                           sign if kind == "V" else 0)
    return TemperedRep(new_phi, new_eps, (step,) + base.provenance)


def _candidate_moves(rep, budget, cusp, rho):
    """All (kind, x, sign, m) with corank increment <= budget."""
    phi = rep.phi
    epsr = cusp.rho(rho).parity
    alpha = cusp.alpha(rho)
    moves = []
    # exponents worth trying: just above every present summand, plus 1/2
    xs = set()
    if epsr == HALF:
        xs.add(HALF)
    for (n, a), _ in phi.summands.items():
        if n == rho:
            xs.add(HalfInt(twice=a + 1))  # x with 2x - 1 = a
    # kind I / II
    for x in xs:
        for m in range(1, budget + 1):
            moves.append(("I", x, 0, m))
        for m in range(3, budget + 2, 2):
            moves.append(("II", x, 0, m))
        for m in range(2, budget + 1, 2):
            if (m - 1) + x.twice <= budget:  # (m-1) + 2x
                moves.append(("III", x, 0, m))
    if epsr == ZERO:
        for m in range(3, 2 * budget + 2, 2):
            moves.append(("IV", None, 0, m))
        for m in range(2, 2 * budget + 1, 2):
            moves.append(("V", None, +1, m))
            moves.append(("V", None, -1, m))
    return moves


def enumerate_tempered(cusp, corank, rho=None, with_chains=False):
    """All good-parity tempered representations over the seed with corank
    at most ``corank`` (single-rho breadth-first search, deduplicated by
    the (phi, eps) key).

    Returns {corank: [TemperedRep, ...]}; with_chains=True instead maps
    keys to (rep, sorted list of provenance chains).
    """
    rho = rho or cusp.names()[0]
    seed = seed_rep(cusp)
    by_key = {seed.key(): seed}
    chains = {seed.key(): {seed.provenance}}
    levels = {lv: [] for lv in range(corank + 1)}
    levels[0] = [seed.key()]
    for level in range(corank):
        for key in list(levels[level]):
            rep = by_key[key]
            budget = corank - level
            for kind, x, sign, m in _candidate_moves(rep, budget, cusp, rho):
                inc = _crank_increment(kind, m, x if x else ZERO)
                if inc > budget:
                    continue
                try:
                    new = t_construct(kind, rep, rho=rho, x=x, sign=sign, m=m,
                                      cusp=cusp, strict=True)
                except NotWellDefined:
                    continue
                k = new.key()
                if k in by_key:
                    chains[k].add(new.provenance)
                    continue
                by_key[k] = new
                chains[k] = {new.provenance}
                levels[level + inc].append(k)
    if with_chains:
        return {lv: [(by_key[k], sorted(chains[k], key=str)) for k in ks]
                for lv, ks in levels.items()}
    return {lv: [by_key[k] for k in ks] for lv, ks in levels.items()}
