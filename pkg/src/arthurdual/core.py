"""Cuspidal data, tempered L-parameters, sign characters, Langlands data.

Conventions used throughout:

* a tempered L-parameter is a multiset of summands ``(rho, a)`` meaning
  rho (x) S_a; multiplicities are explicit;
* the degenerate summand S_0 has infinite multiplicity and sign +1 in
  every parameter (it is the zero space);
* a sign character assigns +-1 to each *distinct* summand; the global
  product over a single rho-block is exposed as a computed value, never
  assumed to be 1 (the block is usually only part of a full parameter).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .halfint import HalfInt, ZERO, HALF


class NotGoodParity(ValueError):
    """An exponent falls outside alpha + Z for its rho."""


@dataclass(frozen=True)
class RhoLabel:
    """A self-dual unitary supercuspidal of some GL_d, identified by name.

    ``parity`` is the half-integer eps in {0, 1/2} fixed by the group kind
    and the bilinear form preserved by rho.
    """

    name: str
    dim: int = 1
    parity: HalfInt = ZERO

    def __post_init__(self):
        if self.parity not in (ZERO, HALF):
            raise ValueError("parity must be 0 or 1/2")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class CuspidalDatum:
    """A supercuspidal seed: for each rho, its reducibility point alpha.

    ``base_signs`` fixes the sign of the bottom summand of each integral
    (parity 0) supercuspidal chain; the abstract Whittaker normalization
    never pins these, so they are a convention knob (default +1).
    """

    rhos: tuple  # tuple of (RhoLabel, HalfInt alpha)
    group_kind: str = "Sp"
    base_signs: tuple = ()  # tuple of (rho_name, +-1); default +1

    def __post_init__(self):
        if self.group_kind not in ("Sp", "SO-odd"):
            raise ValueError("group_kind must be 'Sp' or 'SO-odd'")
        names = [r.name for r, _ in self.rhos]
        if len(set(names)) != len(names):
            raise ValueError("rho names must be unique")
        for rho, alpha in self.rhos:
            diff = alpha - rho.parity
            if not diff.is_integer() or diff.as_int() < 0:
                raise ValueError(
                    f"alpha - eps must be a non-negative integer for {rho.name}"
                )

    def rho(self, name):
        for r, _ in self.rhos:
            if r.name == name:
                return r
        raise KeyError(name)

    def alpha(self, name):
        for r, a in self.rhos:
            if r.name == name:
                return a
        raise KeyError(name)

    def base_sign(self, name):
        for n, s in self.base_signs:
            if n == name:
                return s
        return +1

    def names(self):
        return [r.name for r, _ in self.rhos]


def single_rho_cusp(alpha, *, name="rho", dim=1, group_kind="Sp", base_sign=+1):
    """Convenience builder for the one-rho setting used in all fixtures."""
    alpha = alpha if isinstance(alpha, HalfInt) else HalfInt.parse(str(alpha))
    parity = ZERO if alpha.is_integer() else HALF
    rho = RhoLabel(name, dim, parity)
    return CuspidalDatum(
        rhos=((rho, alpha),),
        group_kind=group_kind,
        base_signs=((name, base_sign),),
    )


@dataclass(frozen=True, order=True)
class Segment:
    """The segment [A, B]_rho = {A, A-1, ..., B}; A = B - 1 is empty."""

    rho: str
    a: HalfInt  # top end
    b: HalfInt  # bottom end

    def __post_init__(self):
        d = self.a - self.b
        if not d.is_integer() or d.as_int() < -1:
            raise ValueError(f"[A,B] needs A - B an integer >= -1, got {self}")

    def length(self):
        return (self.a - self.b).as_int() + 1

    def members(self):
        out, cur = [], self.a
        for _ in range(self.length()):
            out.append(cur)
            cur = cur - 1
        return out

    def exponent_sum(self):
        return self.a + self.b

    def abs_support(self):
        return Counter(abs(z) for z in self.members())

    def contragredient(self):
        return Segment(self.rho, -self.b, -self.a)

    def __str__(self):
        return f"D[{self.a},{self.b}]"


# ---------------------------------------------------------------------------
# tempered parameters and sign characters
# ---------------------------------------------------------------------------

class TemperedLParam:
    """Multiset of summands (rho_name, a), a >= 1."""

    __slots__ = ("summands",)

    def __init__(self, summands=()):
        if isinstance(summands, Counter):
            c = Counter({k: v for k, v in summands.items() if v})
        else:
            c = Counter(summands)
        for (name, a), m in c.items():
            if a < 1 or m < 1:
                raise ValueError(f"bad summand {(name, a)} x {m}")
        self.summands = c

    def mult(self, name, a):
        """Multiplicity of rho (x) S_a; S_0 is infinite by convention."""
        if a == 0:
            return float("inf")
        return self.summands.get((name, a), 0)

    def items(self):
        return sorted(self.summands.items())

    def key(self):
        return tuple(self.items())

    def dim(self, dims):
        return sum(dims[name] * a * m for (name, a), m in self.summands.items())

    def add(self, name, a, m=1):
        c = Counter(self.summands)
        if a == 0:
            return TemperedLParam(c)
        c[(name, a)] += m
        return TemperedLParam(c)

    def remove(self, name, a, m=1):
        if a == 0:
            return TemperedLParam(self.summands)
        c = Counter(self.summands)
        if c[(name, a)] < m:
            raise ValueError(f"cannot remove {m} copies of ({name}, S_{a})")
        c[(name, a)] -= m
        return TemperedLParam(c)

    def is_good_parity(self, cusp):
        for (name, a), _ in self.summands.items():
            eps = cusp.rho(name).parity
            if (a - 1) % 2 != eps.twice % 2:
                return False
        return True

    def signed_support(self, name):
        """Multiset of all exponents (with signs) of the name-block."""
        sup = Counter()
        for (n, a), m in self.summands.items():
            if n != name:
                continue
            top = HalfInt(twice=a - 1)
            for z in Segment(n, top, -top).members():
                sup[z] += m
        return sup

    def __eq__(self, other):
        return isinstance(other, TemperedLParam) and self.summands == other.summands

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        parts = [f"{name}⊗S_{a}" + (f"^{m}" if m > 1 else "")
                 for (name, a), m in self.items()]
        return " + ".join(parts) if parts else "0"


class SignCharacter:
    """Signs on the distinct summands of a companion TemperedLParam.

    The value on the conventional S_0 summand is +1.
    """

    __slots__ = ("signs",)

    def __init__(self, signs=()):
        self.signs = dict(signs)
        for k, v in self.signs.items():
            if v not in (+1, -1):
                raise ValueError(f"sign of {k} must be +-1")

    def __call__(self, name, a):
        if a == 0:
            return +1
        return self.signs[(name, a)]

    def get(self, name, a, default=None):
        if a == 0:
            return +1
        return self.signs.get((name, a), default)

    def set(self, name, a, value):
        d = dict(self.signs)
        d[(name, a)] = value
        return SignCharacter(d)

    def drop(self, name, a):
        d = dict(self.signs)
        d.pop((name, a), None)
        return SignCharacter(d)

    def restrict(self, phi):
        """Keep only the keys actually present in phi."""
        return SignCharacter({k: v for k, v in self.signs.items()
                              if phi.summands.get(k)})

    def product_flag(self, phi):
        """prod eps(rho (x) S_a)^multiplicity over the tracked summands."""
        out = 1
        for (name, a), m in phi.summands.items():
            out *= self.signs[(name, a)] ** m
        return out

    def key(self):
        return tuple(sorted(self.signs.items()))

    def __eq__(self, other):
        return isinstance(other, SignCharacter) and self.signs == other.signs

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "{" + ", ".join(f"{n}⊗S_{a}:{'+' if v > 0 else '-'}"
                               for (n, a), v in sorted(self.signs.items())) + "}"


def sc_parameter(cusp):
    """The (phi, eps) of the seed supercuspidal.

    Per rho the summands are rho (x) S_{2eps+1}, S_{2eps+3}, ...,
    S_{2(alpha-1)+1}; signs alternate up the chain; eps(rho (x) S_2) = -1
    is forced, and the bottom sign of an integral chain is the
    configurable base sign.
    """
    phi = Counter()
    signs = {}
    for rho, alpha in cusp.rhos:
        eps = rho.parity
        bottom = eps.twice + 1   # 2*eps + 1
        top = alpha.twice - 1    # 2*(alpha - 1) + 1
        chain = list(range(bottom, top + 1, 2))
        if not chain:
            continue
        if eps == HALF:
            base = -1  # eps(rho x S_2) = -1 forced
        else:
            base = cusp.base_sign(rho.name)
        s = base
        for k in chain:
            phi[(rho.name, k)] = 1
            signs[(rho.name, k)] = s
            s = -s
    return TemperedLParam(phi), SignCharacter(signs)


def is_supercuspidal(phi, eps):
    """Moeglin's criterion: discrete, without gaps, alternating, eps(S_2) = -1."""
    for (name, a), m in phi.summands.items():
        if m > 1:
            return False
        if a >= 3 and phi.mult(name, a - 2) == 0:
            return False
        if a == 2 and eps(name, 2) != -1:
            return False
        if a >= 3 and phi.mult(name, a - 2) == 1:
            if eps(name, a) * eps(name, a - 2) != -1:
                return False
    return True


# ---------------------------------------------------------------------------
# tempered representations and Langlands data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstructorStep:
    """One application of a tempered constructor (kinds I..V)."""

    kind: str  # 'I', 'II', 'III', 'IV', 'V'
    rho: str
    m: int
    x: HalfInt = None  # for I, II, III
    sign: int = 0      # for V

    def __str__(self):
        if self.kind == "V":
            return f"T(V,{self.m};sign={'+' if self.sign > 0 else '-'})"
        if self.kind == "IV":
            return f"T(IV,{self.m})"
        return f"T({self.kind},{self.m};x={self.x})"


@dataclass(frozen=True)
class TemperedRep:
    """A tempered representation pi(phi, eps) with constructor provenance."""

    phi: TemperedLParam
    eps: SignCharacter
    provenance: tuple = ()  # ConstructorStep chain, outermost first

    def key(self):
        return (self.phi.key(), self.eps.restrict(self.phi).key())

    def added_support(self, cusp):
        """Multiset of non-negative exponents added over the seed.

        Half of the signed-support difference from the seed parameter,
        folded to absolute values.
        """
        sc_phi, _ = sc_parameter(cusp)
        out = Counter()
        for name in cusp.names():
            diff = Counter(self.phi.signed_support(name))
            diff.subtract(sc_phi.signed_support(name))
            pos = Counter()
            zeros = 0
            for z, m in diff.items():
                if m < 0:
                    raise ValueError("parameter does not dominate the seed support")
                if m == 0:
                    continue
                if z > ZERO:
                    pos[z] += m
                elif z == ZERO:
                    zeros += m
            if zeros % 2:
                raise ValueError("unpaired zero exponents")
            neg = Counter()
            for z, m in diff.items():
                if m > 0 and z < ZERO:
                    neg[-z] += m
            if pos != neg:
                raise ValueError("signed support is not symmetric")
            for z, m in pos.items():
                out[(name, z)] += m
            out[(name, ZERO)] += zeros // 2
            if out[(name, ZERO)] == 0:
                del out[(name, ZERO)]
        return out

    def corank(self, cusp):
        return sum(self.added_support(cusp).values())

    def chain_str(self):
        parts = [str(s) for s in self.provenance] + ["sc"]
        return " o ".join(parts)

    def __repr__(self):
        return f"TemperedRep({self.chain_str()})"


def seed_rep(cusp):
    phi, eps = sc_parameter(cusp)
    return TemperedRep(phi, eps, ())


def canonical_segments(segments):
    """Sort by (rho, exponent sum nondecreasing, then top end)."""
    return tuple(sorted(segments, key=lambda s: (s.rho, s.exponent_sum(), s.a)))


@dataclass(frozen=True)
class LanglandsData:
    """L-data: Steinberg segments with negative exponent sums + tempered tail."""

    segments: tuple
    tail: TemperedRep

    def __post_init__(self):
        for s in self.segments:
            if s.length() < 1:
                raise ValueError("empty segment in L-data")
            if not s.exponent_sum() < ZERO:
                raise ValueError(f"segment {s} needs x + y < 0")
        object.__setattr__(self, "segments", canonical_segments(self.segments))

    @property
    def f(self):
        return len(self.segments)

    def key(self):
        return (tuple((s.rho, s.a, s.b) for s in self.segments), self.tail.key())

    def support(self, cusp):
        """Added supercuspidal support over the seed, per (rho, |exponent|)."""
        out = Counter(self.tail.added_support(cusp))
        for s in self.segments:
            for z, m in s.abs_support().items():
                out[(s.rho, z)] += m
        return out

    def corank(self, cusp):
        return sum(self.support(cusp).values())

    def is_tempered(self):
        return self.f == 0

    def __repr__(self):
        segs = ",".join(str(s) for s in self.segments)
        return f"L({segs}; {self.tail.chain_str()})"


@dataclass(frozen=True)
class SpehDescriptor:
    """The unitary generalized Speh u_rho(a, b), optionally twisted by |det|^x."""

    rho: str
    a: int
    b: int
    twist: HalfInt = ZERO

    def segments(self):
        """Langlands segments of u(a, b)|.|^x: b columns of length a."""
        out = []
        lo = HalfInt(twice=self.a - self.b)  # (a - b)/2
        for j in range(1, self.b + 1):
            top = lo + (j - 1) + self.twist
            bot = top - (self.a - 1)
            out.append(Segment(self.rho, top, bot))
        return out

    def gl_rank(self):
        return self.a * self.b


# ---------------------------------------------------------------------------
# predicates over exponent collections
# ---------------------------------------------------------------------------

def is_critical_type(exponents, cusp, rho=None):
    """True iff per rho the set of |exponents| is empty or a 1-spaced
    segment containing alpha.

    ``exponents`` is an iterable of HalfInt (single rho, taken from
    ``rho`` or the unique one in ``cusp``) or of (rho_name, HalfInt).
    Raises NotGoodParity if any exponent falls outside alpha + Z.
    """
    by_rho = {}
    for e in exponents:
        if isinstance(e, tuple):
            name, z = e
        else:
            name = rho or cusp.names()[0]
            z = e
        by_rho.setdefault(name, set()).add(abs(HalfInt(z)))
    for name, vals in by_rho.items():
        alpha = cusp.alpha(name)
        for z in vals:
            if not (z - alpha).is_integer():
                raise NotGoodParity(f"exponent {z} not in {alpha} + Z for {name}")
        twices = sorted(v.twice for v in vals)
        if not twices:
            continue
        consecutive = all(b - a == 2 for a, b in zip(twices, twices[1:]))
        if not consecutive or not (twices[0] <= alpha.twice <= twices[-1]):
            return False
    return True


def support(ld, cusp):
    """Supercuspidal-support multiset added over the seed (see LanglandsData)."""
    return ld.support(cusp)


def weakly_real_split(exponents, self_dual_names):
    """Split (rho_name, x) pairs into the weakly-real part (self-dual rho)
    and the generic remainder, which is reported for exclusion."""
    real, generic = [], []
    for name, x in exponents:
        (real if name in self_dual_names else generic).append((name, x))
    return real, generic
