"""Spans, their operations, and the equivalence relations that quotient them.

A span (f, g): A -> B is a pair of morphisms out of a common apex.  The
quotient relations implemented here:

  * iso      -- vertical isomorphism classes (the plain span category);
  * simE     -- the equivalence induced by a stable class E, decided in its
                single-witness form: a middle span with both comparison
                legs in E;
  * factorization-backed simE -- decided by comparing M-parts up to
                vertical iso (sound for any stable factorization system,
                since a comparison e merges the pairings' M-parts);
  * approx   -- two-cells in both directions (the least compatible
                allegorical equivalence).
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import NotParallel
from .finset import FinMor, FinSetCategory
from .verdict import Verdict


@dataclass(frozen=True)
class Span:
    apex: object
    left: object   # apex -> dom
    right: object  # apex -> cod

    @property
    def dom(self):
        return self.left.cod

    @property
    def cod(self):
        return self.right.cod

    def __repr__(self):
        return f"Span({self.left!r}, {self.right!r})"


def identity_span(cat, a):
    i = cat.identity(a)
    return Span(a, i, i)


def graph(cat, f):
    """The graph span (1, f) of a morphism."""
    return Span(f.dom, cat.identity(f.dom), f)


def cograph(cat, f):
    return Span(f.dom, f, cat.identity(f.dom))


def involution(s):
    return Span(s.apex, s.right, s.left)


def span_compose(cat, s1, s2):
    """Horizontal composite s2 o s1 (s1: A -> B first, then s2: B -> C),
    via the chosen pullback of (s1.right, s2.left)."""
    if s1.cod != s2.dom:
        raise NotParallel(f"cod {s1.cod!r} != dom {s2.dom!r}")
    pb = cat.pullback(s1.right, s2.left)
    return Span(pb.apex, cat.compose(s1.left, pb.p1), cat.compose(s2.right, pb.p2))


def pairing(cat, s):
    """The induced morphism <left, right>: apex -> dom x cod."""
    pr = cat.product(s.dom, s.cod)
    return pr, pr.pair(s.left, s.right)


def span_meet(cat, s1, s2):
    """Local meet: pullback of the two pairings into dom x cod."""
    _require_parallel(s1, s2)
    _, p1 = pairing(cat, s1)
    _, p2 = pairing(cat, s2)
    pb = cat.pullback(p1, p2)
    return Span(pb.apex, cat.compose(s1.left, pb.p1), cat.compose(s1.right, pb.p1))


def _require_parallel(s1, s2):
    if s1.dom != s2.dom or s1.cod != s2.cod:
        raise NotParallel(f"{s1!r} and {s2!r} are not parallel")


def two_cells(cat, s1, s2):
    """All u: apex1 -> apex2 commuting with both legs."""
    _require_parallel(s1, s2)
    for u in cat.hom(s1.apex, s2.apex):
        if cat.compose(s2.left, u) == s1.left and cat.compose(s2.right, u) == s1.right:
            yield u


def vertically_isomorphic(cat, s1, s2):
    """A vertical isomorphism s1 -> s2, or None."""
    if s1.dom != s2.dom or s1.cod != s2.cod:
        return None
    for u in two_cells(cat, s1, s2):
        if cat.is_iso(u).holds:
            return u
    return None


def le_E(cat, e_class, s1, s2):
    """(f,g) <=_E (h,k): an E-valued two-cell s1 -> s2."""
    _require_parallel(s1, s2)
    unknown = False
    for u in two_cells(cat, s1, s2):
        v = e_class.membership(u)
        if v.holds:
            return Verdict.yes(u, "E-valued two-cell")
        if v.unknown:
            unknown = True
    if unknown:
        return Verdict.maybe("a two-cell had undecided membership")
    return Verdict.no(reason="hom exhausted without an E-valued two-cell")


def approx(cat, s1, s2):
    """Two-cells in both directions (the least allegorical equivalence)."""
    _require_parallel(s1, s2)
    u = next(two_cells(cat, s1, s2), None)
    if u is None:
        return Verdict.no(reason="no two-cell s1 -> s2")
    v = next(two_cells(cat, s2, s1), None)
    if v is None:
        return Verdict.no(reason="no two-cell s2 -> s1")
    return Verdict.yes((u, v), "two-cells both ways")


# -- relation tags / equivalence deciders -------------------------------------

class SpanEquivalence:
    """Decides whether two parallel spans are related; optionally supplies a
    canonical representative per class."""

    tag = "abstract"

    def __init__(self, cat):
        self.cat = cat

    def equal(self, s1, s2):
        raise NotImplementedError

    def canonical(self, s):
        """A deterministic representative of the class of s, or s itself."""
        return s

    def key(self, s):
        """Hashable canonical key, or None when no canonical form exists."""
        return None


class IsoEquivalence(SpanEquivalence):
    tag = "iso"

    def equal(self, s1, s2):
        u = vertically_isomorphic(self.cat, s1, s2)
        if u is None:
            return Verdict.no(reason="not vertically isomorphic")
        return Verdict.yes(u)


class ApproxEquivalence(SpanEquivalence):
    tag = "approx"

    def equal(self, s1, s2):
        return approx(self.cat, s1, s2)


class FactorizationEquivalence(SpanEquivalence):
    """sim_E for E backed by a stable factorization system: decided by
    comparing M-parts up to vertical isomorphism."""

    tag = "simE"

    def __init__(self, cat, system):
        super().__init__(cat)
        self.system = system

    def m_part(self, s):
        pr, p = pairing(self.cat, s)
        _, m = self.system.factor(p)
        return Span(m.dom, self.cat.compose(pr.pi1, m), self.cat.compose(pr.pi2, m))

    def canonical(self, s):
        return self.m_part(s)

    def key(self, s):
        c = self.m_part(s)
        if isinstance(self.cat, FinSetCategory):
            # sorted row multiset: vertical isos are exactly the
            # row-multiset-preserving bijections, so this is complete
            return (s.dom, s.cod,
                    tuple(sorted(zip(c.left.table, c.right.table))))
        return None

    def equal(self, s1, s2):
        _require_parallel(s1, s2)
        k1, k2 = self.key(s1), self.key(s2)
        if k1 is not None and k2 is not None:
            if k1 == k2:
                return Verdict.yes(reason="equal canonical M-parts")
            return Verdict.no(reason="distinct canonical M-parts")
        c1, c2 = self.m_part(s1), self.m_part(s2)
        u = vertically_isomorphic(self.cat, c1, c2)
        if u is None:
            return Verdict.no(reason="M-parts not vertically isomorphic")
        return Verdict.yes(u)


class StableClassEquivalence(SpanEquivalence):
    """sim_E for a bare stable class E, in single-witness form: search for
    a middle span with both comparison legs in E.

    On FinSet the search enumerates subsets of the comparison pullback
    Q = {(d, e) | <f,g>(d) = <h,k>(e)}; this is complete whenever every
    member of E is monic or membership depends only on the leg's image
    (all builtin classes qualify), and conservative (Unknown) otherwise.
    """

    tag = "simE"
    subset_budget = 1 << 16

    def __init__(self, cat, e_class, complete=None):
        super().__init__(cat)
        self.e_class = e_class
        if complete is None:
            complete = getattr(e_class, "subset_search_complete", False) or \
                e_class.name in ("isos", "monos", "epis", "splitEpis", "all",
                                 "surjective", "injective")
        self.complete = complete

    def equal(self, s1, s2):
        _require_parallel(s1, s2)
        if not isinstance(self.cat, FinSetCategory):
            return self._generic_equal(s1, s2)
        return self._finset_equal(s1, s2)

    def _comparison_pairs(self, s1, s2):
        return [(d, e) for d in range(s1.apex) for e in range(s2.apex)
                if s1.left.table[d] == s2.left.table[e]
                and s1.right.table[d] == s2.right.table[e]]

    def _finset_equal(self, s1, s2):
        pairs = self._comparison_pairs(s1, s2)
        n = len(pairs)
        seen_unknown = False
        budget = self.subset_budget
        for size in range(n + 1):
            for combo in combinations(range(n), size):
                budget -= 1
                if budget < 0:
                    return Verdict.maybe("subset budget exhausted")
                x = FinMor(size, s1.apex, tuple(pairs[i][0] for i in combo))
                y = FinMor(size, s2.apex, tuple(pairs[i][1] for i in combo))
                vx = self.e_class.membership(x)
                if vx.fails:
                    continue
                vy = self.e_class.membership(y)
                if vy.fails:
                    continue
                if vx.holds and vy.holds:
                    return Verdict.yes((x, y), "middle span")
                seen_unknown = True
        if seen_unknown or not self.complete:
            return Verdict.maybe("no certified middle span at the bound")
        return Verdict.no(reason="subset enumeration exhausted")

    def _generic_equal(self, s1, s2):
        _, p1 = pairing(self.cat, s1)
        _, p2 = pairing(self.cat, s2)
        q = self.cat.pullback(p1, p2)
        seen_unknown = False
        for w in self.cat.objects():
            for u in self.cat.hom(w, q.apex):
                x = self.cat.compose(q.p1, u)
                y = self.cat.compose(q.p2, u)
                vx, vy = self.e_class.membership(x), self.e_class.membership(y)
                if vx.holds and vy.holds:
                    return Verdict.yes((x, y), "middle span")
                if vx.unknown or vy.unknown:
                    seen_unknown = True
        if seen_unknown or not self.complete:
            return Verdict.maybe("object stream exhausted without certification")
        return Verdict.no(reason="object stream exhausted")


def make_equivalence(cat, relation_tag, system=None, e_class=None):
    if relation_tag == "iso":
        return IsoEquivalence(cat)
    if relation_tag == "approx":
        return ApproxEquivalence(cat)
    if relation_tag == "simE":
        if system is not None:
            return FactorizationEquivalence(cat, system)
        if e_class is not None:
            return StableClassEquivalence(cat, e_class)
    if relation_tag in ("simEo", "simEbullet"):
        if e_class is None:
            raise ValueError(f"{relation_tag!r} needs the closed morphism class")
        return StableClassEquivalence(cat, e_class)
    raise ValueError(f"cannot build equivalence for tag {relation_tag!r}")


# -- quotient hom enumeration --------------------------------------------------

def enumerate_hom_classes(cat, equiv, a, b, apex_bound=None):
    """Representatives of the hom-classes a -> b.

    For FinSet with a canonical key this is exact (all subsets of a x b for
    an M <= mono system); otherwise representatives are collected from
    spans with apexes in the object stream (bounded) and grouped by the
    decider, flagged possibly-incomplete via the second return value.
    """
    if isinstance(cat, FinSetCategory) and isinstance(equiv, FactorizationEquivalence) \
            and equiv.system.name == "surj-inj":
        reps = []
        pairs_all = [(x, y) for x in range(a) for y in range(b)]
        for r in range(len(pairs_all) + 1):
            for chosen in combinations(pairs_all, r):
                reps.append(relation_span(cat, a, b, chosen))
        return reps, True
    reps = []
    complete = True
    for w in cat.objects():
        if apex_bound is not None and isinstance(w, int) and w > apex_bound:
            complete = False
            continue
        for lf in cat.hom(w, a):
            for rg in cat.hom(w, b):
                s = Span(w, lf, rg)
                matched = False
                for r in reps:
                    v = equiv.equal(s, r)
                    if v.holds:
                        matched = True
                        break
                    if v.unknown:
                        complete = False
                if not matched:
                    reps.append(s)
    return reps, complete


def relation_span(cat, a, b, pairs):
    """The canonical monic span for a set of pairs in a x b (FinSet)."""
    pairs = tuple(sorted(set(pairs)))
    n = len(pairs)
    return Span(n, FinMor(n, a, tuple(x for x, _ in pairs)),
                FinMor(n, b, tuple(y for _, y in pairs)))


def span_pairs(s):
    """FinSet only: the multiset image of a span as a sorted pair tuple."""
    return tuple(sorted(set(zip(s.left.table, s.right.table))))


# -- M-relations and the S/R functors -----------------------------------------

def rel_compose(cat, system, r1, r2):
    """Composite of M-relations: span-compose, then take the M-part."""
    raw = span_compose(cat, r1, r2)
    return FactorizationEquivalence(cat, system).m_part(raw)


def functor_round_trip(cat, system, spans):
    """RS = Id and SR = Id on the sample: S sends an M-relation to its
    span class, R recovers the M-part."""
    eq = FactorizationEquivalence(cat, system)
    for s in spans:
        rel = eq.m_part(s)          # R on the class of s
        back = eq.m_part(rel)       # R after S: must reproduce rel
        if not eq.equal(rel, back).holds:
            return Verdict.no(s, "R(S(r)) != r")
        if not eq.equal(s, rel).holds:
            return Verdict.no(s, "S(R(c)) != c at the class level")
    return Verdict.yes(reason=f"{len(spans)} round trips")


def functoriality_of_R(cat, system, pairs):
    """R([h,k] o [f,g]) = R[h,k] . R[f,g] on sampled composable pairs."""
    eq = FactorizationEquivalence(cat, system)
    for s1, s2 in pairs:
        lhs = eq.m_part(span_compose(cat, s1, s2))
        rhs = rel_compose(cat, system, eq.m_part(s1), eq.m_part(s2))
        if not eq.equal(lhs, rhs).holds:
            return Verdict.no((s1, s2), "R not functorial on this pair")
    return Verdict.yes(reason=f"{len(pairs)} composable pairs")
