"""Extended multi-segments and their operator calculus.

Rows are triples ([A,B]_rho, l, eta).  A row with b = 2l has no
determined sign; we store eta = None there (the canonical form) and
operators that must read such a sign evaluate all representative
choices and check the results agree, so no implicit choice is ever
baked in.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .halfint import HalfInt, ZERO, HALF


class InvariantViolation(ValueError):
    pass


class OrderViolation(ValueError):
    pass


class NotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class ExtendedSegment:
    """([A, B]_rho, l, eta); eta is None exactly when b = 2l."""

    a: HalfInt  # top end A
    b_end: HalfInt  # bottom end B
    l: int
    eta: int = None  # +1, -1, or None (undetermined)

    def __post_init__(self):
        if not (self.a - self.b_end).is_integer():
            raise InvariantViolation("A - B must be an integer")
        if self.size() < 1:
            raise InvariantViolation(f"row needs b >= 1: {self}")
        if not (0 <= self.l <= self.size() // 2):
            raise InvariantViolation(f"l out of range in {self}")
        if self.size() == 2 * self.l:
            object.__setattr__(self, "eta", None)
        elif self.eta not in (+1, -1):
            raise InvariantViolation(f"sign required when b > 2l: {self}")

    def size(self):
        """b = A - B + 1."""
        return (self.a - self.b_end).as_int() + 1

    @property
    def arthur_pair(self):
        """(a, b) = (A + B + 1, A - B + 1); both sides of rho (x) S_a (x) S_b."""
        return ((self.a + self.b_end).as_int() + 1, self.size())

    def with_(self, a=None, b_end=None, l=None, eta=0):
        return ExtendedSegment(
            self.a if a is None else a,
            self.b_end if b_end is None else b_end,
            self.l if l is None else l,
            self.eta if eta == 0 else eta,
        )

    def __str__(self):
        s = {+1: "+", -1: "-", None: "?"}[self.eta]
        return f"[{self.a},{self.b_end};{self.l};{s}]"


@dataclass(frozen=True)
class ExtendedMultiSegment:
    """Blocks of extended segments per rho, each in a fixed admissible order."""

    blocks: tuple  # tuple of (rho_name, tuple-of-ExtendedSegment)
    order_kind: str = "P"

    def __post_init__(self):
        if self.order_kind not in ("P", "P'"):
            raise OrderViolation("order_kind must be P or P'")
        for name, rows in self.blocks:
            for r in rows:
                if (r.a + r.b_end) < ZERO:
                    raise InvariantViolation(f"A + B < 0 in row {r} of {name}")
            for i in range(len(rows)):
                for j in range(i + 1, len(rows)):
                    if rows[j].a < rows[i].a and rows[j].b_end < rows[i].b_end:
                        raise OrderViolation(
                            f"rows {i},{j} of {name} violate the admissible order"
                        )
            if self.order_kind == "P'":
                for i in range(len(rows) - 1):
                    if rows[i + 1].b_end < rows[i].b_end:
                        raise OrderViolation(f"block {name} is not in P' order")
        if self.sign_condition() != +1:
            raise InvariantViolation("sign condition fails")

    # -- construction helpers ------------------------------------------

    @staticmethod
    def of_rows(rows, rho="rho", order_kind="P"):
        return ExtendedMultiSegment(((rho, tuple(rows)),), order_kind)

    def rows(self, rho=None):
        if rho is None:
            if len(self.blocks) != 1:
                raise KeyError("rho required for multi-block segments")
            return self.blocks[0][1]
        for name, rows in self.blocks:
            if name == rho:
                return rows
        return ()

    def rho_names(self):
        return [name for name, _ in self.blocks]

    def replace_block(self, rho, rows, order_kind=None):
        blocks = []
        seen = False
        for name, old in self.blocks:
            if name == rho:
                blocks.append((name, tuple(rows)))
                seen = True
            else:
                blocks.append((name, old))
        if not seen:
            blocks.append((rho, tuple(rows)))
        return ExtendedMultiSegment(
            tuple(blocks), self.order_kind if order_kind is None else order_kind
        )

    # -- invariants -----------------------------------------------------

    def sign_condition(self):
        out = 1
        for _, rows in self.blocks:
            for r in rows:
                if r.eta is None:
                    continue  # contributes (+1): b even, floor(b/2) + l even
                b = r.size()
                out *= (-1) ** (b // 2 + r.l) * r.eta**b
        return out

    def check_good_parity(self, cusp):
        for name, rows in self.blocks:
            alpha = cusp.alpha(name)
            for r in rows:
                if not (r.a - alpha).is_integer():
                    raise InvariantViolation(
                        f"row {r} of {name} breaks good parity against alpha={alpha}"
                    )

    def total_rank(self):
        return sum(a * b for _, rows in self.blocks for a, b in
                   (r.arthur_pair for r in rows))

    def key(self):
        return (self.blocks,)

    def __str__(self):
        parts = []
        for name, rows in self.blocks:
            parts.append(f"rho {name} : " + " ".join(str(r) for r in rows))
        return " | ".join(parts)


# ---------------------------------------------------------------------------
# psi extraction
# ---------------------------------------------------------------------------

def psi_of(ems):
    """The attached Arthur parameter as a multiset of (rho, a, b)."""
    from .arthur.params import ArthurParameter

    c = Counter()
    for name, rows in ems.blocks:
        for r in rows:
            a, b = r.arthur_pair
            c[(name, a, b)] += 1
    return ArthurParameter(c)


# ---------------------------------------------------------------------------
# eta resolution for operators that must read undetermined signs
# ---------------------------------------------------------------------------

def _choices(rows, idxs):
    """All ways of fixing representatives for undetermined rows among idxs."""
    free = [i for i in idxs if rows[i].eta is None]
    for combo in itertools.product((+1, -1), repeat=len(free)):
        yield dict(zip(free, combo))


def _eta(rows, i, fix):
    r = rows[i]
    return r.eta if r.eta is not None else fix[i]


def _unanimous(results):
    keys = {r.key() if r is not None else None for r in results}
    if len(keys) != 1:
        raise InvariantViolation("result depends on an undetermined sign")
    return results[0]


# ---------------------------------------------------------------------------
# row exchange
# ---------------------------------------------------------------------------

def row_exchange(ems, rho, k):
    """Swap adjacent rows k, k+1 of the rho-block (identity if the swapped
    order would be inadmissible)."""
    rows = list(ems.rows(rho))
    if not (0 <= k < len(rows) - 1):
        raise IndexError(f"no adjacent pair at {k}")
    u, v = rows[k], rows[k + 1]
    if u.a < v.a and u.b_end < v.b_end:
        return ems  # swapped order inadmissible
    results = []
    for fix in _choices(rows, (k, k + 1)):
        eu, ev = _eta(rows, k, fix), _eta(rows, k + 1, fix)
        new_u, new_v = _exchange_pair(u, v, eu, ev)
        out = rows[:k] + [new_v, new_u] + rows[k + 2:]
        results.append(ems.replace_block(rho, out, order_kind="P"))
    return _unanimous(results)


def _exchange_pair(u, v, eu, ev):
    """(l', eta') for both rows when row u (first) and v (second) swap."""
    du = (u.a - u.b_end).as_int()  # A_k - B_k
    dv = (v.a - v.b_end).as_int()
    eps = (-1) ** du * eu * ev
    bu, bv = u.size(), v.size()
    if u.a >= v.a and u.b_end <= v.b_end:
        # case (1): [A_k,B_k] contains [A_{k+1},B_{k+1}]
        nv = v.with_(eta=(-1) ** du * ev)
        gap = bv - 2 * v.l
        if eps == 1 and bu - 2 * u.l < 2 * gap:
            nu = u.with_(l=bu - (u.l + gap), eta=(-1) ** dv * eu)
        elif eps == 1:
            nu = u.with_(l=u.l + gap, eta=(-1) ** (dv + 1) * eu)
        else:
            nu = u.with_(l=u.l - gap, eta=(-1) ** (dv + 1) * eu)
        return nu, nv
    if u.a <= v.a and u.b_end >= v.b_end:
        # case (2): [A_k,B_k] inside [A_{k+1},B_{k+1}]
        nu = u.with_(eta=(-1) ** dv * eu)
        gap = bu - 2 * u.l
        if eps == 1 and bv - 2 * v.l < 2 * gap:
            nv = v.with_(l=bv - (v.l + gap), eta=(-1) ** du * ev)
        elif eps == 1:
            nv = v.with_(l=v.l + gap, eta=(-1) ** (du + 1) * ev)
        else:
            nv = v.with_(l=v.l - gap, eta=(-1) ** (du + 1) * ev)
        return nu, nv
    raise InvariantViolation("adjacent pair is neither nested nor reversed-nested")


# ---------------------------------------------------------------------------
# shift / add
# ---------------------------------------------------------------------------

def shift(ems, rho, j, d):
    rows = list(ems.rows(rho))
    r = rows[j]
    rows[j] = ExtendedSegment(r.a + d, r.b_end + d, r.l, r.eta)
    return ems.replace_block(rho, rows)


def add(ems, rho, j, d):
    rows = list(ems.rows(rho))
    r = rows[j]
    rows[j] = ExtendedSegment(r.a + d, r.b_end - d, r.l + d, r.eta)
    return ems.replace_block(rho, rows)


# ---------------------------------------------------------------------------
# union-intersection
# ---------------------------------------------------------------------------

def ui_adjacent(ems, rho, k):
    """Apply the union-intersection at the adjacent pair (k, k+1).

    Returns the new multi-segment, or None when no case applies.
    """
    rows = list(ems.rows(rho))
    if not (0 <= k < len(rows) - 1):
        raise IndexError(f"no adjacent pair at {k}")
    u, v = rows[k], rows[k + 1]
    if not (v.a > u.a and v.b_end > u.b_end):
        return None
    results = []
    applicable = []
    for fix in _choices(rows, (k, k + 1)):
        eu, ev = _eta(rows, k, fix), _eta(rows, k + 1, fix)
        pair = _ui_pair(u, v, eu, ev)
        applicable.append(pair is not None)
        if pair is None:
            results.append(None)
            continue
        out = rows[:k] + [r for r in pair if r is not None] + rows[k + 2:]
        results.append(ems.replace_block(rho, out))
    if len(set(applicable)) != 1:
        raise InvariantViolation("ui applicability depends on an undetermined sign")
    if not applicable[0]:
        return None
    return _unanimous(results)


def _ui_pair(u, v, eu, ev):
    du = (u.a - u.b_end).as_int()
    eps = (-1) ** du * eu * ev
    shift_a = (v.a - u.a).as_int()  # A_{k+1} - A_k > 0
    union = (v.a, u.b_end)
    inter = (u.a, v.b_end)
    sign = (-1) ** shift_a * ev
    if eps == 1 and v.a - v.l == u.a - u.l:
        # case 1
        rows = (
            ExtendedSegment(*union, u.l, eu),
            ExtendedSegment(*inter, v.l - shift_a, sign),
        )
        return rows
    if eps == 1 and v.b_end + v.l == u.b_end + u.l:
        # case 2
        if u.size() - 2 * u.l >= shift_a:
            first = ExtendedSegment(*union, u.l + shift_a, eu)
        else:
            first = ExtendedSegment(*union, u.size() - u.l, -eu)
        return (first, ExtendedSegment(*inter, v.l, sign))
    if eps == -1 and v.b_end + v.l == u.a - u.l + 1:
        # case 3 / 3'
        if u.l == 0 and v.l == 0:
            return (ExtendedSegment(*union, 0, eu), None)
        if v.l <= u.l:
            second = ExtendedSegment(*inter, v.l, sign)
        else:
            second = ExtendedSegment(*inter, u.l, -sign)
        return (ExtendedSegment(*union, u.l, eu), second)
    return None


def _admissible_orders(rows):
    """All admissible orderings of the block, as index tuples."""
    n = len(rows)
    for perm in itertools.permutations(range(n)):
        ok = True
        for p in range(n):
            for q in range(p + 1, n):
                i, j = perm[p], perm[q]
                if rows[j].a < rows[i].a and rows[j].b_end < rows[i].b_end:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield perm


def _reorder(ems, rho, target):
    """Reorder the rho-block to the index order ``target`` by admissible
    adjacent exchanges; returns the new multi-segment.

    ``target`` lists current row indices in their desired new order.
    """
    cur = ems
    ident = list(range(len(ems.rows(rho))))  # ident[pos] = original index
    want = list(target)
    while ident != want:
        for p in range(len(ident) - 1):
            a, b = ident[p], ident[p + 1]
            if want.index(a) > want.index(b):
                nxt = row_exchange(cur, rho, p)
                if nxt is cur:
                    raise OrderViolation("target order is not reachable")
                cur = nxt
                ident[p], ident[p + 1] = b, a
                break
        else:
            raise OrderViolation("target order is not reachable")
    return cur


def ui(ems, rho, i, j):
    """Union-intersection of rows i < j, through row exchanges if needed.

    Returns ems itself when not applicable, mirroring the definition.
    """
    rows = ems.rows(rho)
    n = len(rows)
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError((i, j))
    if i == j or not (rows[i].a < rows[j].a and rows[i].b_end < rows[j].b_end):
        return ems
    for perm in _admissible_orders(rows):
        pi, pj = perm.index(i), perm.index(j)
        if pj != pi + 1:
            continue
        try:
            moved = _reorder(ems, rho, list(perm))
        except OrderViolation:
            continue
        res = ui_adjacent(moved, rho, pi)
        if res is None:
            continue
        deleted = len(res.rows(rho)) < n
        # map the result back to the original order
        back = [p for p in perm if not (deleted and p == j)]
        return _reorder(res, rho, [back.index(lbl) for lbl in sorted(back)])
    return ems


def ui_applicable(ems, rho, i, j):
    res = ui(ems, rho, i, j)
    return res.key() != ems.key()


def ui_inverse(ems, rho, i, j):
    """All valid preimages E' with ui(E', rho, i, j) == ems.

    Preimage corners are forced by the union/intersection shape, so the
    search runs over (l, eta) decorations, plus the split position for
    deleted-row (case 3') preimages.
    """
    rows = ems.rows(rho)
    n = len(rows)
    out = []
    seen = set()

    def consider(cand):
        try:
            res = ui(cand, rho, i, j)
        except (InvariantViolation, OrderViolation):
            return
        if res.key() == ems.key() and res.key() != cand.key():
            if cand.key() not in seen:
                seen.add(cand.key())
                out.append(cand)

    if i < n and j < n and i != j:
        ri, rj = rows[i], rows[j]
        # forward ui put the union at i and the intersection at j:
        # preimage rows swap the top ends back.
        ai, bi = rj.a, ri.b_end
        aj, bj = ri.a, rj.b_end
        if ai >= bi - 1 and aj >= bj - 1 and ai > ZERO - aj:
            for cand_rows in _decorations(rows, i, (ai, bi), j, (aj, bj)):
                try:
                    consider(ems.replace_block(rho, cand_rows))
                except (InvariantViolation, OrderViolation):
                    continue
    # case 3' preimages: ems row i is a union whose intersection was deleted
    if i < n and (j == n or j == i + 1):
        r = rows[i]
        for split in _splits(r):
            a1, b1, a2, b2 = split
            for e1 in (+1, -1):
                e2 = -((-1) ** (a1 - b1).as_int()) * e1  # force eps = -1
                try:
                    row1 = ExtendedSegment(a1, b1, 0, e1)
                    row2 = ExtendedSegment(a2, b2, 0, e2)
                except InvariantViolation:
                    continue
                cand_rows = list(rows)
                cand_rows[i:i + 1] = [row1, row2]
                try:
                    cand = ems.replace_block(rho, cand_rows)
                except (InvariantViolation, OrderViolation):
                    continue
                try:
                    res = ui(cand, rho, i, i + 1)
                except (InvariantViolation, OrderViolation):
                    continue
                if res.key() == ems.key() and cand.key() not in seen:
                    seen.add(cand.key())
                    out.append(cand)
    return out


def _splits(row):
    """Splittings [A,B] -> ([A1,B], [A,A1+1]) with empty intersection."""
    a, b = row.a, row.b_end
    cur = b
    while cur < a:
        yield (cur, b, a, cur + 1)
        cur = cur + 1


def _decorations(rows, i, seg_i, j, seg_j):
    ai, bi = seg_i
    aj, bj = seg_j
    size_i = (ai - bi).as_int() + 1
    size_j = (aj - bj).as_int() + 1
    if size_i < 1 or size_j < 1:
        return
    for li in range(0, size_i // 2 + 1):
        etas_i = (None,) if size_i == 2 * li else (+1, -1)
        for ei in etas_i:
            for lj in range(0, size_j // 2 + 1):
                etas_j = (None,) if size_j == 2 * lj else (+1, -1)
                for ej in etas_j:
                    cand = list(rows)
                    try:
                        cand[i] = ExtendedSegment(ai, bi, li, ei)
                        cand[j] = ExtendedSegment(aj, bj, lj, ej)
                    except InvariantViolation:
                        continue
                    yield cand


# ---------------------------------------------------------------------------
# dual and partial dual
# ---------------------------------------------------------------------------

def to_p_prime(ems, rho=None):
    """Reorder every block (or one block) into P' order via row exchanges.

    Returns (new multi-segment, translation) where translation maps each
    rho to the tuple of original indices in their new order.
    """
    cur = ems
    translation = {}
    names = [rho] if rho else cur.rho_names()
    for name in names:
        rows = cur.rows(name)
        order = sorted(range(len(rows)),
                       key=lambda t: (rows[t].b_end.twice, rows[t].a.twice, t))
        cur = _reorder(cur, name, order)
        translation[name] = tuple(order)
    cur = ExtendedMultiSegment(cur.blocks, "P'")
    return cur, translation


def _dual_block(rows):
    """Dual of one rho-block already in P' order; output in its P' order."""
    n = len(rows)
    a_of = [r.arthur_pair[0] for r in rows]
    b_of = [r.arthur_pair[1] for r in rows]
    out = []
    for idx, r in enumerate(rows):
        alpha_i = sum(a_of[:idx])
        beta_i = sum(b_of[idx + 1:])
        if r.b_end.is_integer():
            eta = r.eta
            new_l = r.l + r.b_end.as_int()
            new_eta = None if eta is None else (-1) ** (alpha_i + beta_i) * eta
        else:
            eta = r.eta
            if eta is None:
                eta = (-1) ** (alpha_i + 1)  # the specified preimage choice
            half_term = HALF * ((-1) ** alpha_i * eta)
            lval = r.l + r.b_end + half_term
            if not lval.is_integer():
                raise InvariantViolation("dual produced a fractional l")
            new_l = lval.as_int()
            new_eta = (-1) ** (alpha_i + beta_i + 1) * eta
        if new_l < 0:
            raise InvariantViolation(f"dual undefined on row {r}: l' < 0")
        out.append(ExtendedSegment(r.a, -r.b_end, new_l, new_eta))
    return tuple(reversed(out))


def dual(ems):
    """The involution realizing the Aubert-Zelevinsky dual on multi-segments."""
    cur, _ = to_p_prime(ems)
    blocks = []
    for name, rows in cur.blocks:
        blocks.append((name, _dual_block(rows)))
    return ExtendedMultiSegment(tuple(blocks), "P'")


def _block_alpha(rows, k):
    return sum(r.arthur_pair[0] for r in rows[:k])


def _block_beta(rows, k):
    return sum(r.arthur_pair[1] for r in rows[k + 1:])


def partial_dual(ems, rho, k, sign=+1):
    """dual_k^+ / dual_k^- at row k of the rho-block (P'-ordered input)."""
    cur, _ = to_p_prime(ems)
    if sign == -1:
        # dual reverses each block, so row k of ems sits at the mirrored
        # position of dual(ems); the conditions are checked there.
        inner = dual(cur)
        kk = len(inner.rows(rho)) - 1 - k
        res = partial_dual(inner, rho, kk, +1)
        return dual(res)
    rows = list(cur.rows(rho))
    if not (0 <= k < len(rows)):
        raise IndexError(k)
    r = rows[k]
    if r.b_end != HALF or r.l != 0:
        raise NotApplicable("condition (1): row needs B = 1/2 and l = 0")
    eta_k = r.eta
    if eta_k is None:
        raise NotApplicable("condition (1): row sign undetermined")
    if (-1) ** _block_alpha(rows, k) * eta_k != -1:
        raise NotApplicable("condition (2): (-1)^alpha_k eta_k must be -1")
    for i in range(k):
        if not rows[i].b_end < HALF:
            raise NotApplicable("condition (3): an earlier row has B >= 1/2")
    beta_k = _block_beta(rows, k)
    f2 = [x for x in rows if x.b_end > HALF]
    if any(x.b_end == HALF for t, x in enumerate(rows) if t != k):
        raise NotApplicable("decomposition: another row has B = 1/2")
    d = _dual_block(tuple(rows))
    # dual(F) = ~F2 + {([A_k,-1/2],0,(-1)^{beta_k})} + ~F1
    mid_idx = next(t for t, x in enumerate(d)
                   if x.a == r.a and x.b_end == -HALF and x.l == 0)
    f2_t, f1_t = list(d[:mid_idx]), list(d[mid_idx + 1:])
    fprime = f2_t + [ExtendedSegment(r.a, HALF, 0, (-1) ** (beta_k + 1))] + f1_t
    d2 = _dual_block(tuple(fprime))
    mid2 = next(t for t, x in enumerate(d2)
                if x.a == r.a and x.b_end == -HALF and x.l == 0)
    f1_tt = list(d2[:mid2])
    new_rows = f1_tt + [ExtendedSegment(r.a, -HALF, 0, -eta_k)] + f2
    return cur.replace_block(rho, new_rows, order_kind="P'")


def partial_dual_applicable(ems, rho, k, sign=+1):
    try:
        partial_dual(ems, rho, k, sign)
        return True
    except (NotApplicable, IndexError, InvariantViolation, OrderViolation):
        return False


# ---------------------------------------------------------------------------
# raising operators
# ---------------------------------------------------------------------------

def raising_ops(ems):
    """Descriptors of all applicable raising operators on ems."""
    ops = []
    for name, rows in ems.blocks:
        n = len(rows)
        for i in range(n):
            for j in list(range(n)) + [n]:
                if i == j:
                    continue
                pre = ui_inverse(ems, name, i, j)
                for p in pre:
                    ops.append(("ui_inv", name, i, j, p))
        try:
            d = dual(ems)
        except InvariantViolation:
            d = None
        if d is not None:
            dn = len(d.rows(name))
            for i in range(dn):
                for j in range(dn):
                    if i != j and ui_applicable(d, name, i, j):
                        ops.append(("dual_ui_dual", name, j, i, None))
            for k in range(dn):
                if partial_dual_applicable(d, name, k, +1):
                    ops.append(("dual_minus", name, k, None, None))
    return ops


def is_absolutely_maximal(ems):
    return not raising_ops(ems)


# ---------------------------------------------------------------------------
# symbol rendering
# ---------------------------------------------------------------------------

_UNICODE = {"left": "◁", "right": "▷", "plus": "⊕", "minus": "⊖", "circ": "⊙"}
_ASCII = {"left": "<", "right": ">", "plus": "+", "minus": "-", "circ": "o"}


def render_symbol(ems, ascii_only=False):
    """The triangle/sign grid for each rho-block, one text block per rho."""
    glyphs = _ASCII if ascii_only else _UNICODE
    chunks = []
    for name, rows in ems.blocks:
        if not rows:
            continue
        lo = min(r.b_end for r in rows)
        hi = max(r.a for r in rows)
        ncols = (hi - lo).as_int() + 1
        header = [str(lo + t) for t in range(ncols)]
        width = max(max(len(h) for h in header), 1)
        lines = ["  ".join(h.rjust(width) for h in header)]
        for r in rows:
            cells = [" " * width] * ncols
            pos = (r.b_end - lo).as_int()
            for t in range(r.l):
                cells[pos + t] = glyphs["left"].rjust(width)
            mid = r.size() - 2 * r.l
            for t in range(mid):
                if r.eta is None:
                    g = glyphs["circ"]
                else:
                    sign = r.eta * (-1) ** t
                    g = glyphs["plus"] if sign > 0 else glyphs["minus"]
                cells[pos + r.l + t] = g.rjust(width)
            for t in range(r.l):
                cells[pos + r.l + mid + t] = glyphs["right"].rjust(width)
            lines.append("  ".join(cells))
        chunks.append(f"({name})\n" + "\n".join(lines))
    return "\n".join(chunks)
