"""FinSet: the category of finite initial segments {0..n-1} of the naturals.

Objects are nonnegative ints; a morphism is a total function table.  All
chosen limits are built on canonically ordered tuple encodings, so
pullbacks, products and factorizations are deterministic.
"""

from dataclasses import dataclass
from itertools import product as iproduct

from .category import Category, ProductResult, PullbackResult
from .errors import DomainMismatch
from .verdict import Verdict


@dataclass(frozen=True)
class FinMor:
    dom: int
    cod: int
    table: tuple

    def __call__(self, x):
        return self.table[x]

    def __repr__(self):
        return f"FinMor({self.dom}->{self.cod}, {list(self.table)})"


def fin(dom, cod, table):
    table = tuple(table)
    if len(table) != dom or any(not (0 <= y < cod) for y in table):
        raise ValueError(f"bad table {table} for {dom}->{cod}")
    return FinMor(dom, cod, table)


class FinSetCategory(Category):
    """FinSet restricted to objects of size <= max_size."""

    name = "finset"

    def __init__(self, max_size=3):
        self.max_size = max_size

    def objects(self):
        return range(self.max_size + 1)

    def hom(self, a, b):
        if a == 0:
            return [FinMor(0, b, ())]
        if b == 0:
            return []
        return [FinMor(a, b, t) for t in iproduct(range(b), repeat=a)]

    def hom_iter(self, a, b):
        if a == 0:
            return iter([FinMor(0, b, ())])
        if b == 0:
            return iter(())
        return (FinMor(a, b, t) for t in iproduct(range(b), repeat=a))

    def hom_count(self, a, b):
        return 1 if a == 0 else b ** a

    def identity(self, a):
        return FinMor(a, a, tuple(range(a)))

    def compose(self, g, f):
        self._check_composable(g, f)
        return FinMor(f.dom, g.cod, tuple(g.table[y] for y in f.table))

    # -- limits -----------------------------------------------------------

    def terminal(self):
        return 1, lambda a: FinMor(a, 1, (0,) * a)

    def product(self, a, b):
        # (x, y) encoded as x*b + y
        apex = a * b
        pi1 = FinMor(apex, a, tuple(i // b for i in range(apex))) if b else FinMor(0, a, ())
        pi2 = FinMor(apex, b, tuple(i % b for i in range(apex))) if b else FinMor(0, b, ())

        def pair(f, g):
            if f.dom != g.dom or f.cod != a or g.cod != b:
                raise DomainMismatch("pairing legs must share a domain and hit the factors")
            return FinMor(f.dom, apex, tuple(f.table[x] * b + g.table[x] for x in range(f.dom)))

        return ProductResult(apex, pi1, pi2, pair)

    def pullback(self, f, g):
        self._check_cospan(f, g)
        pairs = [(x, y) for x in range(f.dom) for y in range(g.dom)
                 if f.table[x] == g.table[y]]
        apex = len(pairs)
        index = {p: i for i, p in enumerate(pairs)}
        p1 = FinMor(apex, f.dom, tuple(x for x, _ in pairs))
        p2 = FinMor(apex, g.dom, tuple(y for _, y in pairs))

        def mediate(u, v):
            if u.dom != v.dom or u.cod != f.dom or v.cod != g.dom:
                return None
            try:
                return FinMor(u.dom, apex,
                              tuple(index[(u.table[w], v.table[w])] for w in range(u.dom)))
            except KeyError:
                return None

        return PullbackResult(apex, p1, p2, mediate)

    # -- closed-form predicates ---------------------------------------------

    def is_mono(self, f):
        seen = {}
        for x, y in enumerate(f.table):
            if y in seen:
                return Verdict.no(self._mono_witness(f, seen[y], x), "not injective")
            seen[y] = x
        return Verdict.yes()

    def _mono_witness(self, f, x1, x2):
        u = FinMor(1, f.dom, (x1,))
        v = FinMor(1, f.dom, (x2,))
        return (u, v)

    def is_epi(self, f):
        missing = set(range(f.cod)) - set(f.table)
        if not missing:
            return Verdict.yes()
        b = min(missing)
        # two maps cod -> 2 agreeing on the image but not at b
        u = FinMor(f.cod, 2, tuple(0 for _ in range(f.cod)))
        v = FinMor(f.cod, 2, tuple(1 if y == b else 0 for y in range(f.cod)))
        return Verdict.no((u, v), "not surjective")

    def is_split_epi(self, f):
        # In FinSet, surjections split (any surjection onto a nonempty set
        # has nonempty domain; 0 -> 0 is the identity).
        epi = self.is_epi(f)
        if not epi.holds:
            return Verdict.no(epi.witness, "not surjective")
        section = [0] * f.cod
        for x in range(f.dom - 1, -1, -1):
            section[f.table[x]] = x
        return Verdict.yes(FinMor(f.cod, f.dom, tuple(section)), "section")

    def is_iso(self, f):
        if f.dom == f.cod and len(set(f.table)) == f.dom:
            inv = [0] * f.dom
            for x, y in enumerate(f.table):
                inv[y] = x
            return Verdict.yes(FinMor(f.cod, f.dom, tuple(inv)), "inverse")
        return Verdict.no(reason="not a bijection")

    def inverse(self, f):
        v = self.is_iso(f)
        return v.witness if v.holds else None

    def is_effective_retraction(self, r):
        """(r, r'): K => A is a kernel pair of some f iff <r, r'> is
        injective and its image is an equivalence relation on A.

        Searching r' over hom(K, A) decides effectiveness exactly.
        """
        split = self.is_split_epi(r)
        if not split.holds:
            return Verdict.no(reason="not a split epimorphism")
        a = r.cod
        for rp in self.hom(r.dom, a):
            pairs = list(zip(r.table, rp.table))
            if len(set(pairs)) != len(pairs):
                continue
            rel = set(pairs)
            if not _is_equivalence(rel, a):
                continue
            # recover f as the canonical quotient map of the partition
            f = _quotient_map(rel, a)
            return Verdict.yes((rp, f), "kernel-pair cone")
        return Verdict.no(reason="no r' yields an injective equivalence-relation cone")


def _is_equivalence(rel, n):
    if any((x, x) not in rel for x in range(n)):
        return False
    if any((y, x) not in rel for x, y in rel):
        return False
    return all((x, z) in rel for x, y1 in rel for y2, z in rel if y1 == y2)


def _quotient_map(rel, n):
    cls = {}
    nxt = 0
    for x in range(n):
        rep = min(y for y in range(n) if (x, y) in rel)
        if rep not in cls:
            cls[rep] = nxt
            nxt += 1
    table = tuple(cls[min(y for y in range(n) if (x, y) in rel)] for x in range(n))
    return FinMor(n, nxt, table)
