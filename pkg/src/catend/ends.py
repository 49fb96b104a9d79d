"""Ends of bifunctors, computed as limits over a subdivision diagram.

A bifunctor is contravariant in its first argument and covariant in the
second, with an explicit object enumeration so the wedge conditions range
over a definite arrow family.  The subdivision shape has one node per
enumerated object (valued at the diagonal) and one per arrow between them
(valued off-diagonal), with two legs per arrow node; a cone over it is
exactly a wedge, so its limit is the end.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .core import Ambient, Arrow, Diagram, FinCategory, build_category
from .limits import Cone, LimitingCone, limit_brute, limiting_violations, mediator
from .errors import NotAWedge
from .smcc import SmccInstance, exp_contra, exp_cov


@dataclass(frozen=True)
class Bifunctor:
    """B(-,-) on an ambient, contravariant left, covariant right."""

    ambient: Ambient = field(compare=False)
    name: str = ""
    objects: tuple[str, ...] = ()
    ob: Callable[[str, str], str] = field(compare=False, default=None)
    contra: Callable[[Arrow, str], Arrow] = field(compare=False, default=None)
    cov: Callable[[str, Arrow], Arrow] = field(compare=False, default=None)


def domain_arrows(B: Bifunctor) -> list[Arrow]:
    """Every ambient arrow between enumerated objects, identities included."""
    out = []
    for x in B.objects:
        for y in B.objects:
            out.extend(B.ambient.hom(x, y))
    out.sort(key=B.ambient.arrow_label)
    return out


def bifunctor_violations(B: Bifunctor, budget: int | None = None, seed: int = 0) -> list[str]:
    """Functoriality in each argument plus the interchange square."""
    A = B.ambient
    out: list[str] = []
    arrows = domain_arrows(B)
    rng = random.Random(seed)

    def cut(items):
        if budget is None or len(items) <= budget:
            return items
        return rng.sample(items, budget)

    for x in B.objects:
        for z in B.objects:
            idx = A.identity(x)
            if B.contra(idx, z) != A.identity(B.ob(x, z)):
                out.append(f"contra does not preserve identity at ({x}, {z})")
            if B.cov(z, idx) != A.identity(B.ob(z, x)):
                out.append(f"cov does not preserve identity at ({z}, {x})")

    pairs = [(f, g) for f in arrows for g in arrows if f.tgt == g.src]
    for f, g in cut(pairs):
        gf = A.compose(g, f)
        for z in cut(list(B.objects)):
            lhs = B.contra(gf, z)
            rhs = A.compose(B.contra(f, z), B.contra(g, z))
            if lhs != rhs:
                out.append(f"contra not functorial on ({A.arrow_label(g)} . {A.arrow_label(f)}, {z})")
            lhs = B.cov(z, gf)
            rhs = A.compose(B.cov(z, g), B.cov(z, f))
            if lhs != rhs:
                out.append(f"cov not functorial on ({z}, {A.arrow_label(g)} . {A.arrow_label(f)})")

    squares = [(f, g) for f in arrows for g in arrows]
    for f, g in cut(squares):
        lhs = A.compose(B.contra(f, g.tgt), B.cov(f.tgt, g))
        rhs = A.compose(B.cov(f.src, g), B.contra(f, g.src))
        if lhs != rhs:
            out.append(f"interchange fails on ({A.arrow_label(f)}, {A.arrow_label(g)})")
    return out


def subdivision_shape(B: Bifunctor) -> tuple[FinCategory, dict[str, Arrow]]:
    """One node per object, one per arrow, two legs per arrow node."""
    A = B.ambient
    arrows_by_label = {A.arrow_label(f): f for f in domain_arrows(B)}
    assert len(arrows_by_label) == len(domain_arrows(B))
    objs = [f"ob:{x}" for x in B.objects] + [f"ar:{k}" for k in arrows_by_label]
    shape_arrows: dict[str, tuple[str, str]] = {}
    identities: dict[str, str] = {}
    for n in objs:
        shape_arrows[f"id:{n}"] = (n, n)
        identities[n] = f"id:{n}"
    for k, f in arrows_by_label.items():
        shape_arrows[f"s:{k}"] = (f"ob:{f.src}", f"ar:{k}")
        shape_arrows[f"t:{k}"] = (f"ob:{f.tgt}", f"ar:{k}")
    composition: dict[tuple[str, str], str] = {}
    for a, (s, t) in shape_arrows.items():
        composition[(a, identities[s])] = a
        if (identities[t], a) not in composition:
            composition[(identities[t], a)] = a
    return build_category(objs, shape_arrows, composition, identities), arrows_by_label


def subdivision(B: Bifunctor) -> Diagram:
    shape, arrows_by_label = subdivision_shape(B)
    A = B.ambient
    ob: dict[str, str] = {}
    ar: dict[str, Arrow] = {}
    for x in B.objects:
        ob[f"ob:{x}"] = B.ob(x, x)
    for k, f in arrows_by_label.items():
        ob[f"ar:{k}"] = B.ob(f.src, f.tgt)
        ar[f"s:{k}"] = B.cov(f.src, f)
        ar[f"t:{k}"] = B.contra(f, f.tgt)
    for n, target in ob.items():
        ar[f"id:{n}"] = A.identity(target)
    return Diagram(source=shape, target=A, ob=ob, ar=ar)


@dataclass(frozen=True)
class EndCone:
    """Limiting cone over a subdivision diagram, read as a universal wedge."""

    bifunctor: Bifunctor
    limiting: LimitingCone

    @property
    def vertex(self) -> str:
        return self.limiting.vertex

    @property
    def projections(self) -> dict[str, Arrow]:
        return {x: self.limiting.edges[f"ob:{x}"] for x in self.bifunctor.objects}


def end_of(B: Bifunctor) -> EndCone:
    return EndCone(bifunctor=B, limiting=limit_brute(B.ambient, subdivision(B)))


def wedge_violations(B: Bifunctor, projections: Mapping[str, Arrow]) -> list[str]:
    """The defining squares: both routes to B(X, Y) agree for every f: X -> Y."""
    A = B.ambient
    out = []
    for x in B.objects:
        p = projections.get(x)
        if p is None or p.tgt != B.ob(x, x):
            out.append(f"projection at {x} missing or mistyped")
    if out:
        return out
    srcs = {projections[x].src for x in B.objects}
    if len(srcs) > 1:
        return [f"projections have several sources: {sorted(srcs)}"]
    for f in domain_arrows(B):
        if A.is_identity(f):
            continue
        lhs = A.compose(B.cov(f.src, f), projections[f.src])
        rhs = A.compose(B.contra(f, f.tgt), projections[f.tgt])
        if lhs != rhs:
            out.append(f"wedge square fails at {A.arrow_label(f)}: "
                       f"{A.arrow_label(lhs)} != {A.arrow_label(rhs)}")
    return out


def wedge_to_cone(B: Bifunctor, sd: Diagram, family: Mapping[str, Arrow]) -> Cone:
    """Extend a wedge to a cone over the subdivision diagram, checking the squares."""
    A = B.ambient
    if not B.objects:
        raise NotAWedge("empty object family")
    bad = wedge_violations(B, family)
    if bad:
        raise NotAWedge("; ".join(bad))
    edges: dict[str, Arrow] = {}
    for x in B.objects:
        edges[f"ob:{x}"] = family[x]
    for f in domain_arrows(B):
        edges[f"ar:{A.arrow_label(f)}"] = A.compose(B.cov(f.src, f), family[f.src])
    return Cone(sd, family[B.objects[0]].src, edges)


def wedge_cone(E: EndCone, family: Mapping[str, Arrow]) -> Cone:
    return wedge_to_cone(E.bifunctor, E.limiting.cone.diagram, family)


def wedge_mediator(E: EndCone, family: Mapping[str, Arrow]) -> Arrow:
    """The unique arrow through which a wedge factors."""
    return mediator(E.limiting, wedge_cone(E, family))


def end_universal_violations(E: EndCone) -> list[str]:
    """Exhaustive check that the end cone is limiting (enumerable ambients)."""
    out = wedge_violations(E.bifunctor, E.projections)
    out.extend(limiting_violations(E.bifunctor.ambient, E.limiting))
    return out


def hom_bifunctor(A: SmccInstance, objects: list[str] | None = None) -> Bifunctor:
    """B(X, Y) = Y^X with the exponential's two actions."""
    objs = tuple(objects if objects is not None else A.objects())
    return Bifunctor(ambient=A, name="hom", objects=objs,
                     ob=lambda x, y: A.exp_obj(x, y),
                     contra=lambda f, z: exp_contra(A, f, z),
                     cov=lambda x, g: exp_cov(A, g, x))
