"""Morphism-class algebra.

MorClass values wrap a decidable membership procedure with provenance.
Closure-provenance classes are computed to fixpoint on a bounded carrier
(all morphisms between a finite set of objects); membership outside the
carrier is Unknown, and Fails inside the carrier is sound only relative
to the bound.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

from .verdict import Verdict


@dataclass
class Carrier:
    """A bounded morphism universe: everything between the given objects."""

    category: object
    objects: tuple

    def __post_init__(self):
        self.objects = tuple(self.objects)
        self._obj_set = set(self.objects)
        self._morphisms = None

    def morphisms(self):
        if self._morphisms is None:
            self._morphisms = [f for a in self.objects for b in self.objects
                               for f in self.category.hom(a, b)]
        return self._morphisms

    def contains_endpoints(self, f):
        return f.dom in self._obj_set and f.cod in self._obj_set


@dataclass
class MorClass:
    name: str
    membership_fn: Callable = None
    provenance: str = "builtin"            # builtin | explicit | closure
    members: Optional[frozenset] = None    # explicit / closure provenance
    carrier: Optional[Carrier] = None
    rules: tuple = ()                      # f -> Verdict; Holds certifies membership
    monic_complete: bool = False           # class provably within the monos and
    subset_search_complete: bool = False   # rules certify every mono (FinSet)

    def membership(self, f):
        for rule in self.rules:
            v = rule(f)
            if v.holds:
                return v
        if self.members is not None:
            if self.carrier is None or self.carrier.contains_endpoints(f):
                if f in self.members:
                    return Verdict.yes()
                if self.carrier is not None and self.carrier.contains_endpoints(f):
                    return Verdict.no(reason=f"not in {self.name} (bound-relative)")
            if self.monic_complete and self.carrier is not None:
                # the class provably consists of monomorphisms and the rules
                # certify every monomorphism, so non-monos are definite Fails
                mono = self.carrier.category.is_mono(f)
                if mono.fails:
                    return Verdict.no(reason=f"not monic, {self.name} <= monos")
            return Verdict.maybe(f"outside carrier of {self.name}")
        return self.membership_fn(f)

    def holds(self, f):
        return self.membership(f).holds


def builtin_class(cat, name):
    """Named builtin classes decided by the instance's predicates."""
    preds = {
        "isos": cat.is_iso,
        "monos": cat.is_mono,
        "epis": cat.is_epi,
        "splitEpis": cat.is_split_epi,
        "all": lambda f: Verdict.yes(),
        "surjective": cat.is_epi,
        "injective": cat.is_mono,
    }
    extra = {
        "bijObj": "is_bijective_on_objects",
        "surjObj": "is_surjective_on_objects",
        "ff": "is_fully_faithful",
        "ffInjObj": None,
    }
    if name in preds:
        return MorClass(name, membership_fn=preds[name])
    if name in extra:
        if name == "ffInjObj":
            def ff_inj(f):
                v = cat.is_fully_faithful(f)
                if not v.holds:
                    return v
                return cat.is_injective_on_objects(f)
            return MorClass(name, membership_fn=ff_inj)
        return MorClass(name, membership_fn=getattr(cat, extra[name]))
    raise ValueError(f"unknown builtin class {name!r}")


def explicit_class(name, morphisms, carrier=None):
    return MorClass(name, provenance="explicit", members=frozenset(morphisms),
                    carrier=carrier)


def union_class(name, *classes):
    def member(f):
        verdicts = [c.membership(f) for c in classes]
        if any(v.holds for v in verdicts):
            return Verdict.yes()
        if any(v.unknown for v in verdicts):
            return Verdict.maybe("some constituent Unknown")
        return Verdict.no(reason=f"in no constituent of {name}")
    return MorClass(name, membership_fn=member, provenance="builtin")


# -- validation ---------------------------------------------------------------

def validate_stable_system(cat, e_class, carrier):
    """Stable system laws on the carrier: isos in E, composition closure,
    pullback stability.  Fails carries the offending morphism or square."""
    mors = carrier.morphisms()
    unknown = None
    for f in mors:
        if cat.is_iso(f).holds:
            v = e_class.membership(f)
            if v.fails:
                return Verdict.no({"law": "isos", "f": f}, "isomorphism not in class")
            if v.unknown:
                unknown = v
    members = [f for f in mors if e_class.membership(f).holds]
    member_set = set(members)
    for f in members:
        for g in members:
            if f.cod == g.dom:
                gf = cat.compose(g, f)
                v = e_class.membership(gf)
                if v.fails:
                    return Verdict.no({"law": "composition", "g": g, "f": f, "gf": gf},
                                      "composite escapes the class")
                if v.unknown:
                    unknown = v
    for e in members:
        for g in mors:
            if g.cod != e.cod:
                continue
            pb = cat.pullback(e, g)
            # the pullback of e along g is the projection to dom(g)
            v = e_class.membership(pb.p2)
            if v.fails:
                return Verdict.no({"law": "pullback-stability", "e": e, "along": g,
                                   "pullback": pb.p2}, "pullback escapes the class")
            if v.unknown:
                unknown = v
    if unknown is not None:
        return Verdict.maybe("some memberships undecided at the bound")
    return Verdict.yes(reason=f"{len(members)} members over {len(mors)} morphisms")


# -- closures -----------------------------------------------------------------

def composition_closure(cat, x_class, carrier, include_isos=True):
    """Least class containing X (and isos) closed under binary composition,
    computed to fixpoint on the carrier."""
    mors = carrier.morphisms()
    members = {f for f in mors if x_class.membership(f).holds}
    if include_isos:
        members |= {f for f in mors if cat.is_iso(f).holds}
    changed = True
    while changed:
        changed = False
        current = list(members)
        for f in current:
            for g in current:
                if f.cod == g.dom:
                    gf = cat.compose(g, f)
                    if gf not in members:
                        members.add(gf)
                        changed = True
    return MorClass(f"({x_class.name})^c", provenance="closure",
                    members=frozenset(members), carrier=carrier)


def split_epi_class(cat):
    return MorClass("splitEpis", membership_fn=cat.is_split_epi)


def _iso_rule(cat):
    def rule(f):
        v = cat.is_iso(f)
        return Verdict.yes(v.witness, "iso") if v.holds else Verdict.no()
    return rule


def _member_rule(base):
    def rule(f):
        v = base.membership(f)
        return v if v.holds else Verdict.no()
    return rule


def _section_of_m_rule(cat, m_class):
    """Certify directly: any s with rs = 1 for some r in M lies in M*.

    FinSet shortcut builds one canonical retraction instead of searching
    hom (which is huge for large codomains)."""
    from .finset import FinMor, FinSetCategory

    def rule(s):
        if isinstance(cat, FinSetCategory):
            if len(set(s.table)) != s.dom or (s.dom == 0 and s.cod > 0):
                return Verdict.no()
            table = [0] * s.cod
            for x, y in enumerate(s.table):
                table[y] = x
            r = FinMor(s.cod, s.dom, tuple(table))
            if m_class.membership(r).holds:
                return Verdict.yes(r, "section of an M-retraction")
            return Verdict.no()
        ident = cat.identity(s.dom)
        for r in cat.hom(s.cod, s.dom):
            if cat.compose(r, s) == ident and m_class.membership(r).holds:
                return Verdict.yes(r, "section of an M-retraction")
        return Verdict.no()

    return rule


def _empty_domain_rule(cat, members):
    """FinSet: 0 -> X is a pullback of any member 0 -> c (c >= 1) along a
    constant map X -> c, hence in the pullback closure."""
    from .finset import FinSetCategory
    if not isinstance(cat, FinSetCategory):
        return lambda f: Verdict.no()
    seeds = [m for m in members if m.dom == 0 and m.cod >= 1]

    def rule(f):
        if f.dom == 0 and seeds:
            return Verdict.yes(seeds[0], "pullback of an initial-domain member")
        return Verdict.no()

    return rule


def e_circ(cat, e_class, carrier):
    """Least stable system containing E and all split epimorphisms."""
    gen = union_class(f"{e_class.name}+splitEpi", e_class, split_epi_class(cat))
    out = composition_closure(cat, gen, carrier)
    out.name = f"({e_class.name})_o"
    out.rules = (_iso_rule(cat), _member_rule(e_class),
                 _member_rule(split_epi_class(cat)))
    return out


def conjugates(cat, m_class, carrier):
    """All conjugates m* arising from commutative cubes over the carrier,
    plus every section whose retraction lies in M (the shortcut that makes
    the key memberships visible at small bounds)."""
    out = set()
    mors = carrier.morphisms()
    m_members = [m for m in mors if m_class.membership(m).holds]
    # sections of M-retractions
    for r in m_members:
        ident = cat.identity(r.cod)
        for s in cat.hom(r.cod, r.dom):
            if cat.compose(r, s) == ident:
                out.add(s)
    # raw cube enumeration: m: B -> Z in M, f: A -> B, s: T -> B
    for m in m_members:
        into_b = [f for f in mors if f.cod == m.dom]
        for f in into_b:
            mf = cat.compose(m, f)
            for s in into_b:
                ms = cat.compose(m, s)
                back = cat.pullback(f, s)
                front = cat.pullback(mf, ms)
                conj = front.mediate(back.p1, back.p2)
                if conj is not None and carrier.contains_endpoints(conj):
                    out.add(conj)
    return out


def m_star(cat, m_class, carrier):
    """Closure under pullback (and iso pre/post-composition, to absorb the
    choice of pullback) of the conjugate class, to fixpoint on the carrier."""
    members = {c for c in conjugates(cat, m_class, carrier)
               if carrier.contains_endpoints(c)}
    mors = carrier.morphisms()
    isos = [f for f in mors if cat.is_iso(f).holds]
    changed = True
    while changed:
        changed = False
        for h in list(members):
            for q in mors:
                if q.cod != h.cod:
                    continue
                pb = cat.pullback(h, q)
                leg = pb.p2  # pullback of h along q
                if carrier.contains_endpoints(leg) and leg not in members:
                    members.add(leg)
                    changed = True
            for i in isos:
                if i.cod == h.dom:
                    hi = cat.compose(h, i)
                    if hi not in members:
                        members.add(hi)
                        changed = True
                if i.dom == h.cod:
                    ih = cat.compose(i, h)
                    if ih not in members:
                        members.add(ih)
                        changed = True
    return MorClass(f"({m_class.name})*", provenance="closure",
                    members=frozenset(members), carrier=carrier)


def e_bullet(cat, system, carrier):
    """Least stable system containing E and M*: the composition closure of
    their union on the carrier.

    On FinSet with E = Iso, every conjugate is an inclusion of pullback
    sets (hence monic), so the whole closure provably consists of
    injections and the certification rules cover all of them; membership
    is then total rather than bound-relative.
    """
    from .finset import FinSetCategory
    mstar = m_star(cat, system.M, carrier)
    gen = union_class(f"{system.E.name}+M*", system.E, mstar)
    out = composition_closure(cat, gen, carrier)
    out.name = f"({system.E.name})_bullet"
    out.rules = (_iso_rule(cat), _member_rule(system.E),
                 _section_of_m_rule(cat, system.M),
                 _empty_domain_rule(cat, out.members))
    if isinstance(cat, FinSetCategory) and system.E.name == "isos":
        mono = cat.is_mono
        if all(mono(f).holds for f in out.members):
            out.monic_complete = True
            out.subset_search_complete = True
    return out


def check_splitepi_mono_agreement(cat, system, carrier):
    """SplitEpi <= E iff M <= Mono, evaluated on the carrier.

    Holds when the two sides agree (both true or both false); Fails with
    the witnesses when they disagree.
    """
    mors = carrier.morphisms()
    split_side = None  # a split epi outside E, if any
    for f in mors:
        if cat.is_split_epi(f).holds and system.E.membership(f).fails:
            split_side = f
            break
    mono_side = None  # a non-mono in M, if any
    for f in mors:
        if system.M.membership(f).holds and cat.is_mono(f).fails:
            mono_side = f
            break
    lhs, rhs = split_side is None, mono_side is None
    detail = {"splitepi_in_E": lhs, "M_in_mono": rhs,
              "splitepi_witness": split_side, "mono_witness": mono_side}
    if lhs == rhs:
        return Verdict.yes(detail, "both sides agree")
    return Verdict.no(detail, "equivalence violated on the carrier")
