"""Named stable factorization systems on the concrete instances.

Each system bundles its E and M classes with a deterministic factorization
procedure; `validate_system` produces the evidence report required before
a system is trusted by downstream modules.
"""

from dataclasses import dataclass, field
from typing import Callable

from .classes import Carrier, MorClass, builtin_class, validate_stable_system
from .errors import ConfigError
from .fincat import FinCatCategory, Functor, make_functor
from .finset import FinMor, FinSetCategory
from .tablecat import make_table
from .thin import ThinCategory
from .verdict import Verdict, combine


@dataclass
class FactSystem:
    name: str
    category: object
    E: MorClass
    M: MorClass
    factor: Callable  # f -> (e, m) with m . e = f
    evidence: Verdict = None


# -- FinSet systems -----------------------------------------------------------

def _finset_image_factor(f):
    image = sorted(set(f.table))
    index = {y: i for i, y in enumerate(image)}
    e = FinMor(f.dom, len(image), tuple(index[y] for y in f.table))
    m = FinMor(len(image), f.cod, tuple(image))
    return e, m


def finset_system(cat, name):
    if name == "surj-inj":
        return FactSystem(name, cat, builtin_class(cat, "surjective"),
                          builtin_class(cat, "injective"), _finset_image_factor)
    if name == "iso-all":
        return FactSystem(name, cat, builtin_class(cat, "isos"),
                          builtin_class(cat, "all"),
                          lambda f: (cat.identity(f.dom), f))
    if name == "all-iso":
        return FactSystem(name, cat, builtin_class(cat, "all"),
                          builtin_class(cat, "isos"),
                          lambda f: (f, cat.identity(f.cod)))
    raise ConfigError(f"unknown FinSet system {name!r}")


# -- thin systems -------------------------------------------------------------

def thin_system(cat, name):
    if name == "iso-all":
        return FactSystem(name, cat, builtin_class(cat, "isos"),
                          builtin_class(cat, "all"),
                          lambda f: (cat.identity(f.dom), f))
    if name == "all-iso":
        return FactSystem(name, cat, builtin_class(cat, "all"),
                          builtin_class(cat, "isos"),
                          lambda f: (f, cat.identity(f.cod)))
    raise ConfigError(f"unknown thin system {name!r}")


# -- FinCat systems -----------------------------------------------------------

def _fincat_bijobj_ff_factor(f):
    """F = m . e with e identity on objects and m fully faithful: the
    intermediate category keeps the domain's objects but borrows the
    codomain's hom-sets between their images."""
    c, d = f.dom, f.cod
    fo, fm = dict(f.omap), dict(f.mmap)
    objs = list(c.objects)
    mors = [((x, y, h), x, y) for x in objs for y in objs
            for h in d.hom(fo[x], fo[y])]
    ids = {x: (x, x, d.identity(fo[x])) for x in objs}
    comp = {}
    for (x, y, h), _, _ in mors:
        for (y2, z, h2), _, _ in mors:
            if y2 == y:
                comp[((y2, z, h2), (x, y, h))] = (x, z, d.compose(h2, h))
    mid = make_table(objs, mors, ids, comp)
    e = make_functor(c, mid, {x: x for x in objs},
                     {u: (c.dom(u), c.cod(u), fm[u]) for u in c.mor_ids()})
    m = make_functor(mid, d, {x: fo[x] for x in objs},
                     {(x, y, h): h for (x, y, h), _, _ in mors})
    return e, m


def _fincat_surjobj_factor(f):
    """F = m . e with e surjective on objects and m a fully faithful
    injective-on-objects inclusion of the full image subcategory."""
    c, d = f.dom, f.cod
    fo, fm = dict(f.omap), dict(f.mmap)
    image_objs = sorted({fo[x] for x in c.objects}, key=repr)
    mors = [(h, x, y) for x in image_objs for y in image_objs for h in d.hom(x, y)]
    ids = {x: d.identity(x) for x in image_objs}
    comp = {}
    for h, _, _ in mors:
        for h2, _, _ in mors:
            if d.cod(h) == d.dom(h2):
                comp[(h2, h)] = d.compose(h2, h)
    mid = make_table(image_objs, mors, ids, comp)
    e = make_functor(c, mid, {x: fo[x] for x in c.objects},
                     {u: fm[u] for u in c.mor_ids()})
    m = make_functor(mid, d, {x: x for x in image_objs},
                     {h: h for h, _, _ in mors})
    return e, m


def fincat_system(cat, name):
    if name == "bijObj-ff":
        return FactSystem(name, cat, builtin_class(cat, "bijObj"),
                          builtin_class(cat, "ff"), _fincat_bijobj_ff_factor)
    if name == "surjObj-ffInjObj":
        return FactSystem(name, cat, builtin_class(cat, "surjObj"),
                          builtin_class(cat, "ffInjObj"), _fincat_surjobj_factor)
    raise ConfigError(f"unknown FinCat system {name!r}")


def named_system(cat, name):
    if isinstance(cat, FinSetCategory):
        return finset_system(cat, name)
    if isinstance(cat, ThinCategory):
        return thin_system(cat, name)
    if isinstance(cat, FinCatCategory):
        return fincat_system(cat, name)
    raise ConfigError(f"no named systems for category {cat.name!r}")


# -- validation ---------------------------------------------------------------

def validate_system(system, carrier):
    """Factorization-system validator: existence and membership of parts,
    stability of E, and uniqueness of factorizations up to iso."""
    cat = system.category
    verdicts = [validate_stable_system(cat, system.E, carrier)]
    for f in carrier.morphisms():
        e, m = system.factor(f)
        if cat.compose(m, e) != f:
            verdicts.append(Verdict.no({"f": f, "e": e, "m": m}, "m.e != f"))
            break
        ve, vm = system.E.membership(e), system.M.membership(m)
        if ve.fails or vm.fails:
            verdicts.append(Verdict.no({"f": f, "e": e, "m": m},
                                       "factor parts escape their classes"))
            break
        if ve.unknown or vm.unknown:
            verdicts.append(Verdict.maybe("membership of a factor part undecided"))
    verdicts.append(_check_uniqueness(system, carrier))
    result = combine(verdicts)
    system.evidence = result
    return result


def _check_uniqueness(system, carrier):
    """Any two (E,M)-factorizations of the same morphism are linked by an
    iso; checked against alternative factorizations found by hom search."""
    cat = system.category
    for f in carrier.morphisms():
        e, m = system.factor(f)
        for mid in carrier.objects:
            for e2 in cat.hom(f.dom, mid):
                if not system.E.membership(e2).holds:
                    continue
                for m2 in cat.hom(mid, f.cod):
                    if cat.compose(m2, e2) != f or not system.M.membership(m2).holds:
                        continue
                    if not _linked_by_iso(cat, e, m, e2, m2):
                        return Verdict.no({"f": f, "alt": (e2, m2)},
                                          "two factorizations not iso-linked")
    return Verdict.yes()


def _linked_by_iso(cat, e, m, e2, m2):
    for j in cat.hom(e.cod, e2.cod):
        if not cat.is_iso(j).holds:
            continue
        if cat.compose(j, e) == e2 and cat.compose(m2, j) == m:
            return True
    return False


def default_carrier(cat):
    if isinstance(cat, FinSetCategory):
        return Carrier(cat, range(min(cat.max_size, 3) + 1))
    return Carrier(cat, tuple(cat.objects()))
