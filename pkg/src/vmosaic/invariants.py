"""Bracket polynomial, writhe normalization, 2-cabling, and fingerprints.

The bracket of a c-crossing code is the sum over the 2^c smoothings of
``A^(#A - #B) * (-A^2 - A^-2)^(loops - 1)``.  Smoothings and loop counting
happen on the abstract code, so the computation works on any surface
presentation.  The writhe-normalized polynomial ``f = (-A^3)^(-w) * bracket``
is invariant under the Reidemeister moves on codes; together with the
0-framed 2-cable it forms the identification fingerprint.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ._statesum import state_histogram
from .gausscodes import GaussCode, Passage, canonical, mirror
from .laurent import LOOP_FACTOR, LaurentPolynomial

CROSSING_CAP = 24


class TooManyCrossings(ValueError):
    pass


def _assemble(c: int, hist, extra_loops: int) -> LaurentPolynomial:
    loop_powers: dict[int, LaurentPolynomial] = {0: LaurentPolynomial.one()}

    def loop_pow(k: int) -> LaurentPolynomial:
        if k not in loop_powers:
            loop_powers[k] = loop_pow(k - 1) * LOOP_FACTOR
        return loop_powers[k]

    total = LaurentPolynomial.zero()
    rows, cols = hist.shape
    for b in range(rows):
        for loops in range(cols):
            count = int(hist[b, loops])
            if not count:
                continue
            exponent = c - 2 * b  # (#A - #B)
            term = LaurentPolynomial.monomial(exponent, count) * loop_pow(loops + extra_loops - 1)
            total = total + term
    return total


def kauffman_bracket(code: GaussCode) -> LaurentPolynomial:
    """State-sum bracket with the unknot normalized to 1.

    The empty code (no components at all) is assigned bracket 1 by
    convention.
    """
    if code.component_count == 0:
        return LaurentPolynomial.one()
    if code.crossing_count > CROSSING_CAP:
        raise TooManyCrossings(f"{code.crossing_count} crossings exceed cap {CROSSING_CAP}")
    c, hist, extra = state_histogram(code)
    return _assemble(c, hist, extra)


def naive_bracket(code: GaussCode) -> LaurentPolynomial:
    """Independent brute-force bracket used as an oracle for small codes.

    Smoothings are re-derived from the local compass picture: put the over
    strand on the N-S axis pointing north; a positive crossing has the under
    strand pointing west.  The A-smoothing joins {N, E} and {S, W}, the
    B-smoothing {N, W} and {S, E}.
    """
    from itertools import product

    if code.component_count == 0:
        return LaurentPolynomial.one()
    ids = sorted({p.crossing for comp in code.components for p in comp})
    if len(ids) > 12:
        raise TooManyCrossings("naive oracle capped at 12 crossings")
    sign_of = {p.crossing: p.sign for comp in code.components for p in comp}

    # Compass endpoints per crossing.
    def compass(cid, over, end_in):
        s = sign_of[cid]
        if over:
            return (cid, "S") if end_in else (cid, "N")
        if s > 0:
            return (cid, "E") if end_in else (cid, "W")
        return (cid, "W") if end_in else (cid, "E")

    arcs = []
    for comp in code.components:
        k = len(comp)
        for t, p in enumerate(comp):
            q = comp[(t + 1) % k]
            arcs.append((compass(p.crossing, p.over, False), compass(q.crossing, q.over, True)))

    total = LaurentPolynomial.zero()
    for choice in product("AB", repeat=len(ids)):
        joins = list(arcs)
        for cid, ab in zip(ids, choice):
            if ab == "A":
                joins.append(((cid, "N"), (cid, "E")))
                joins.append(((cid, "S"), (cid, "W")))
            else:
                joins.append(((cid, "N"), (cid, "W")))
                joins.append(((cid, "S"), (cid, "E")))
        adj: dict[tuple, list[tuple]] = {}
        for a, b in joins:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        seen: set[tuple] = set()
        loops = 0
        for node in adj:
            if node in seen:
                continue
            loops += 1
            stack = [node]
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                stack.extend(adj[x])
        loops += code.free_loops
        a_count = choice.count("A")
        term = LaurentPolynomial.monomial(a_count - (len(ids) - a_count), 1)
        total = total + term * LOOP_FACTOR ** (loops - 1)
    return total


def f_polynomial(code: GaussCode, bracket=kauffman_bracket) -> LaurentPolynomial:
    """Writhe-normalized bracket ``(-A^3)^(-w) <code>``."""
    w = code.writhe()
    return LaurentPolynomial.monomial(-3 * w, (-1) ** (w % 2)) * bracket(code)


# ---------------------------------------------------------------------------
# Blackboard 2-cable with 0-framing correction.


def cable2(code: GaussCode, cap: int = 6) -> GaussCode:
    """Double every component and restore the 0-framing.

    Each crossing blows up into four parallel crossings of the same sign; the
    companion copy runs to the left of the original.  The blackboard framing
    of each component equals its self-writhe ``w``, so ``|w|`` full twists of
    the opposite sign are inserted between the two copies of that component
    (two crossings per twist), which is the 0-framing correction.
    """
    if code.crossing_count > cap:
        raise TooManyCrossings(f"cable of {code.crossing_count} crossings exceeds cap {cap}")
    # Which component carries each passage, for self-writhe computation.
    comp_of: dict[int, list[int]] = {}
    for ci, comp in enumerate(code.components):
        for p in comp:
            comp_of.setdefault(p.crossing, []).append(ci)

    fresh = iter(range(1, 10 * (4 * code.crossing_count + 2 * abs(code.writhe()) + 4)))

    quad: dict[tuple[int, str, str], int] = {}

    def qid(cid: int, x: str, y: str) -> int:
        key = (cid, x, y)
        if key not in quad:
            quad[key] = next(fresh)
        return quad[key]

    new_components: list[tuple[Passage, ...]] = []
    for ci, comp in enumerate(code.components):
        copies: dict[str, list[Passage]] = {"a": [], "b": []}
        for p in comp:
            s = p.sign
            cid = p.crossing
            if p.over:
                if s > 0:
                    copies["a"] += [Passage(qid(cid, "a", "b"), True, s), Passage(qid(cid, "a", "a"), True, s)]
                    copies["b"] += [Passage(qid(cid, "b", "b"), True, s), Passage(qid(cid, "b", "a"), True, s)]
                else:
                    copies["a"] += [Passage(qid(cid, "a", "a"), True, s), Passage(qid(cid, "a", "b"), True, s)]
                    copies["b"] += [Passage(qid(cid, "b", "a"), True, s), Passage(qid(cid, "b", "b"), True, s)]
            else:
                if s > 0:
                    copies["a"] += [Passage(qid(cid, "a", "a"), False, s), Passage(qid(cid, "b", "a"), False, s)]
                    copies["b"] += [Passage(qid(cid, "a", "b"), False, s), Passage(qid(cid, "b", "b"), False, s)]
                else:
                    copies["a"] += [Passage(qid(cid, "b", "a"), False, s), Passage(qid(cid, "a", "a"), False, s)]
                    copies["b"] += [Passage(qid(cid, "b", "b"), False, s), Passage(qid(cid, "a", "b"), False, s)]
        self_w = sum(p.sign for p in comp if comp_of[p.crossing] == [ci, ci]) // 2
        twist_sign = -1 if self_w > 0 else 1
        prefix_a: list[Passage] = []
        prefix_b: list[Passage] = []
        for _ in range(abs(self_w)):
            t1, t2 = next(fresh), next(fresh)
            prefix_a += [Passage(t1, True, twist_sign), Passage(t2, False, twist_sign)]
            prefix_b += [Passage(t1, False, twist_sign), Passage(t2, True, twist_sign)]
        new_components.append(tuple(prefix_a + copies["a"]))
        new_components.append(tuple(prefix_b + copies["b"]))
    return GaussCode(tuple(new_components), 2 * code.free_loops)


# ---------------------------------------------------------------------------
# Fingerprints.


@dataclass(frozen=True)
class Fingerprint:
    component_count: int
    f_poly: LaurentPolynomial
    f_poly_2cable: LaurentPolynomial | None = None

    def key(self) -> tuple:
        cab = self.f_poly_2cable.terms if self.f_poly_2cable is not None else None
        return (self.component_count, self.f_poly.terms, cab)

    def __str__(self) -> str:
        cab = "-" if self.f_poly_2cable is None else str(self.f_poly_2cable)
        return f"[{self.component_count}; {self.f_poly}; {cab}]"


def _orientation_writhes(code: GaussCode) -> set[int]:
    """Writhes achievable by reversing subsets of components.

    The bracket does not depend on orientations, so normalizing the
    f-polynomial over these writhes (and the mirror) yields an invariant of
    the unoriented virtual link.  For a knot the set is a single value.
    """
    from itertools import combinations

    comp_of: dict[int, list[int]] = {}
    for ci, comp in enumerate(code.components):
        for p in comp:
            comp_of.setdefault(p.crossing, []).append(ci)
    sign_of = {p.crossing: p.sign for comp in code.components for p in comp}
    k = len(code.components)
    out = set()
    for size in range(k + 1):
        for subset in combinations(range(k), size):
            s = set(subset)
            w = sum(
                sign_of[cid] * (-1 if (cs[0] in s) != (cs[1] in s) else 1)
                for cid, cs in comp_of.items()
            )
            out.add(w)
    return out or {0}


@lru_cache(maxsize=65536)
def _fingerprint_cached(canon_text: str, with_cable: bool) -> Fingerprint:
    from .gausscodes import parse_code

    code = parse_code(canon_text)
    bracket = kauffman_bracket(code)
    bracket2 = None
    twist_sum = 0
    if with_cable:
        cabled = cable2(code)
        bracket2 = kauffman_bracket(cabled)
        twist_sum = cabled.writhe() - 4 * code.writhe()
    comps = code.component_count

    def sign_mono(w: int) -> LaurentPolynomial:
        return LaurentPolynomial.monomial(-3 * w, (-1) ** (w % 2))

    best: tuple | None = None
    best_fp: Fingerprint | None = None
    for w in _orientation_writhes(code):
        f = sign_mono(w) * bracket
        f2 = sign_mono(4 * w + twist_sum) * bracket2 if with_cable else None
        for mirrored in (False, True):
            cf = f.invert_variable() if mirrored else f
            cf2 = None
            if f2 is not None:
                cf2 = f2.invert_variable() if mirrored else f2
            key = (cf.sort_key(), cf2.sort_key() if cf2 is not None else ())
            if best is None or key < best:
                best = key
                best_fp = Fingerprint(comps, cf, cf2)
    assert best_fp is not None
    return best_fp


def fingerprint(code: GaussCode, with_cable: bool = False) -> Fingerprint:
    """Invariant tuple used for identification.

    Normalized over the mirror and, for links, over component orientation
    reversals, so that a diagram and its mirror image share a fingerprint
    and the value does not depend on traversal choices.  The cache key uses
    the same symmetries, so mirror partners share one state-sum.
    """
    from .gausscodes import unoriented_canonical

    key = min(unoriented_canonical(code), unoriented_canonical(mirror(code)))
    return _fingerprint_cached(key.text, with_cable)
