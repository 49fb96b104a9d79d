"""Cones, limits, and initial objects by exhaustive search over enumerable ambients.

Limits are found by enumerating every cone and scanning for the terminal one;
the witness cone carries an optional fast mediation closure supplied by
ambients (or transports) that know a direct construction.  Everything returned
as "limiting" has been checked against the universal property by exhaustion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .core import (Ambient, Arrow, Diagram, FinCatAmbient, FinCategory,
                   OppositeAmbient, build_category, opposite_diagram)
from .errors import (InternalCheckFailure, MissingLimit, NoInitial, NoLimit,
                     NonEnumerableAmbient, NotACone)
from .report import CheckEntry


@dataclass(frozen=True)
class Cone:
    """edges[i]: vertex -> d(i), one per shape object, commuting with d."""

    diagram: Diagram
    vertex: str
    edges: Mapping[str, Arrow]


@dataclass(frozen=True)
class Cocone:
    """edges[i]: d(i) -> vertex, one per shape object, commuting with d."""

    diagram: Diagram
    vertex: str
    edges: Mapping[str, Arrow]


def cone_violations(c: Cone) -> list[str]:
    d = c.diagram
    A = d.target
    out: list[str] = []
    for i in d.shape.objects:
        e = c.edges.get(i)
        if e is None:
            out.append(f"no edge at {i}")
        elif e.src != c.vertex or e.tgt != d.ob[i]:
            out.append(f"edge at {i} is {e!r}, expected {c.vertex}->{d.ob[i]}")
    if out:
        return out
    for a in d.shape.arrow_ids():
        i, j = d.shape.src(a), d.shape.tgt(a)
        if A.compose(d.ar[a], c.edges[i]) != c.edges[j]:
            out.append(f"triangle at shape arrow {a} does not commute")
    return out


def cocone_violations(c: Cocone) -> list[str]:
    d = c.diagram
    A = d.target
    out: list[str] = []
    for i in d.shape.objects:
        e = c.edges.get(i)
        if e is None:
            out.append(f"no edge at {i}")
        elif e.src != d.ob[i] or e.tgt != c.vertex:
            out.append(f"edge at {i} is {e!r}, expected {d.ob[i]}->{c.vertex}")
    if out:
        return out
    for a in d.shape.arrow_ids():
        i, j = d.shape.src(a), d.shape.tgt(a)
        if A.compose(c.edges[j], d.ar[a]) != c.edges[i]:
            out.append(f"triangle at shape arrow {a} does not commute")
    return out


@dataclass(frozen=True)
class LimitingCone:
    cone: Cone
    mediate: Callable[[Cone], Arrow] | None = field(default=None, compare=False)

    @property
    def vertex(self) -> str:
        return self.cone.vertex

    @property
    def edges(self) -> Mapping[str, Arrow]:
        return self.cone.edges


@dataclass(frozen=True)
class ColimitingCocone:
    cocone: Cocone
    mediate: Callable[[Cocone], Arrow] | None = field(default=None, compare=False)

    @property
    def vertex(self) -> str:
        return self.cocone.vertex

    @property
    def edges(self) -> Mapping[str, Arrow]:
        return self.cocone.edges


def _cone_key(A: Ambient, c: Cone):
    return (c.vertex, tuple(A.arrow_label(c.edges[i]) for i in c.diagram.shape.objects))


def enumerate_cones(A: Ambient, d: Diagram) -> list[Cone]:
    objs = A.objects()
    if objs is None:
        raise NonEnumerableAmbient("cannot enumerate cones: ambient has no object list")
    shape_objs = list(d.shape.objects)
    out = []
    for v in sorted(objs):
        homs = [A.hom(v, d.ob[i]) for i in shape_objs]
        if any(not h for h in homs):
            continue
        for combo in itertools.product(*homs):
            c = Cone(d, v, dict(zip(shape_objs, combo)))
            if not cone_violations(c):
                out.append(c)
    out.sort(key=lambda c: _cone_key(A, c))
    return out


def mediators_into(A: Ambient, target: Cone, c: Cone) -> list[Arrow]:
    """All arrows c.vertex -> target.vertex commuting with both edge families."""
    shape_objs = target.diagram.shape.objects
    return [m for m in A.hom(c.vertex, target.vertex)
            if all(A.compose(target.edges[i], m) == c.edges[i] for i in shape_objs)]


def mediator(L: LimitingCone, c: Cone) -> Arrow:
    """The unique factorization of cone c through the limiting cone L."""
    A = L.cone.diagram.target
    bad = cone_violations(c)
    if bad:
        raise NotACone("; ".join(bad))
    if L.mediate is not None:
        m = L.mediate(c)
        if m.src != c.vertex or m.tgt != L.vertex:
            raise InternalCheckFailure(f"mediation produced {m!r}, expected {c.vertex}->{L.vertex}")
        for i in c.diagram.shape.objects:
            if A.compose(L.edges[i], m) != c.edges[i]:
                raise InternalCheckFailure(f"mediation does not commute at {i}")
        return m
    ms = mediators_into(A, L.cone, c)
    if len(ms) != 1:
        raise InternalCheckFailure(
            f"{len(ms)} mediators from cone at {c.vertex} into claimed limit at {L.vertex}")
    return ms[0]


def limiting_violations(A: Ambient, L: LimitingCone, cones: list[Cone] | None = None) -> list[str]:
    """Exhaustive universal-property check; empty list means limiting on the nose."""
    out = cone_violations(L.cone)
    if out:
        return [f"not a cone: {v}" for v in out]
    if cones is None:
        cones = enumerate_cones(A, L.cone.diagram)
    if not any(_cone_key(A, c) == _cone_key(A, L.cone) for c in cones):
        out.append("claimed limiting cone is not among the diagram's cones")
    for c in cones:
        n = len(mediators_into(A, L.cone, c))
        if n != 1:
            out.append(f"cone at {c.vertex} has {n} factorizations")
    return out


def _limit_thin(A: Ambient, d: Diagram) -> LimitingCone:
    """In a thin ambient a cone is a lower bound, so the limit is the greatest one."""
    targets = sorted({d.ob[i] for i in d.shape.objects})
    cands = [v for v in sorted(A.objects())
             if all(A.hom(v, t) for t in targets)]
    for v in cands:
        if all(A.hom(c, v) for c in cands):
            edges = {i: A.hom(v, d.ob[i])[0] for i in d.shape.objects}

            def mediate(c: Cone, v=v) -> Arrow:
                return A.hom(c.vertex, v)[0]

            return LimitingCone(cone=Cone(d, v, edges), mediate=mediate)
    raise NoLimit(f"no greatest lower bound for {targets}")


def limit_brute(A: Ambient, d: Diagram) -> LimitingCone:
    """Terminal cone by exhaustion, or the ambient's own construction."""
    if A.objects() is None:
        data = A.limit_data(d)
        if data is None:
            raise NonEnumerableAmbient("ambient provides no limit construction for this diagram")
        return data
    if A.posetal:
        return _limit_thin(A, d)
    cones = enumerate_cones(A, d)
    for cand in cones:
        if all(len(mediators_into(A, cand, c)) == 1 for c in cones):
            return LimitingCone(cone=cand)
    raise NoLimit(f"no terminal cone among {len(cones)} cones "
                  f"over diagram with shape objects {list(d.shape.objects)}")


# -- colimits via the opposite ambient --------------------------------------


def comediators_from(A: Ambient, source: Cocone, c: Cocone) -> list[Arrow]:
    shape_objs = source.diagram.shape.objects
    return [m for m in A.hom(source.vertex, c.vertex)
            if all(A.compose(m, source.edges[i]) == c.edges[i] for i in shape_objs)]


def comediator(L: ColimitingCocone, c: Cocone) -> Arrow:
    A = L.cocone.diagram.target
    bad = cocone_violations(c)
    if bad:
        raise NotACone("; ".join(bad))
    if L.mediate is not None:
        m = L.mediate(c)
        for i in c.diagram.shape.objects:
            if A.compose(m, L.edges[i]) != c.edges[i]:
                raise InternalCheckFailure(f"comediation does not commute at {i}")
        return m
    ms = comediators_from(A, L.cocone, c)
    if len(ms) != 1:
        raise InternalCheckFailure(
            f"{len(ms)} comediators from claimed colimit at {L.vertex} to cocone at {c.vertex}")
    return ms[0]


def colimit_brute(A: Ambient, d: Diagram) -> ColimitingCocone:
    dop = opposite_diagram(d)
    L = limit_brute(dop.target, dop)
    edges = {i: OppositeAmbient.rev(f) for i, f in L.edges.items()}
    cocone = Cocone(d, L.vertex, edges)

    def mediate(c: Cocone) -> Arrow:
        cop = Cone(dop, c.vertex, {i: OppositeAmbient.rev(f) for i, f in c.edges.items()})
        return OppositeAmbient.rev(mediator(L, cop))

    return ColimitingCocone(cocone=cocone, mediate=mediate)


def colimiting_violations(A: Ambient, L: ColimitingCocone) -> list[str]:
    dop = opposite_diagram(L.cocone.diagram)
    cone = Cone(dop, L.vertex, {i: OppositeAmbient.rev(f) for i, f in L.edges.items()})
    return limiting_violations(dop.target, LimitingCone(cone=cone))


# -- initial objects and the weak-initial refinement ------------------------


def initial_object(cat: FinCategory) -> str:
    """Lexicographically first strict initial object, by exhaustive hom counts."""
    for x in cat.objects:
        if all(len(cat.hom_ids(x, y)) == 1 for y in cat.objects):
            return x
    raise NoInitial(f"no initial object among {list(cat.objects)}")


def weak_initiality_violations(cat: FinCategory, w: str) -> list[str]:
    return [f"no arrow {w} -> {y}" for y in cat.objects if not cat.hom_ids(w, y)]


def _endo_family_shape(endos: Sequence[str]) -> FinCategory:
    """Shape a => b with one parallel arrow per listed endo id."""
    arrows: dict[str, tuple[str, str]] = {"id:a": ("a", "a"), "id:b": ("b", "b")}
    for s in endos:
        arrows[f"par:{s}"] = ("a", "b")
    identities = {"a": "id:a", "b": "id:b"}
    composition: dict[tuple[str, str], str] = {}
    for a, (s, t) in arrows.items():
        composition[(a, identities[s])] = a
        composition[(identities[t], a)] = a
    composition[("id:a", "id:a")] = "id:a"
    composition[("id:b", "id:b")] = "id:b"
    return build_category(["a", "b"], arrows, composition, identities)


@dataclass(frozen=True)
class InitialRefinement:
    """Initial object carved out of a weakly initial one by equalizing its endos."""

    vertex: str
    inclusion: Arrow      # vertex -> weak_vertex, the joint-equalizer leg
    retraction: Arrow     # weak_vertex -> vertex with retraction . inclusion = id
    checks: tuple[CheckEntry, ...]


def refine_weak_initial(cat: FinCategory, w: str) -> InitialRefinement:
    """Joint equalizer of all endos of a weakly initial object is initial.

    The refinement needs the ambient to have the one limit it asks for;
    MissingLimit is raised if the joint equalizer does not exist.
    """
    checks: list[CheckEntry] = []
    missing = weak_initiality_violations(cat, w)
    if missing:
        checks.append(CheckEntry("initial.weakly_initial", tag=w, passed=False,
                                 witness=missing[0]))
        return InitialRefinement(w, Arrow(w, w), Arrow(w, w), tuple(checks))
    checks.append(CheckEntry("initial.weakly_initial", tag=w))

    A = FinCatAmbient(cat)
    endos = cat.hom_ids(w, w)
    shape = _endo_family_shape(endos)
    d = Diagram(source=shape, target=A,
                ob={"a": w, "b": w},
                ar={"id:a": A.identity(w), "id:b": A.identity(w),
                    **{f"par:{s}": Arrow(w, w, s) for s in endos}})
    try:
        L = limit_brute(A, d)
    except NoLimit as exc:
        raise MissingLimit(f"joint equalizer of endos of {w} does not exist: {exc}") from exc
    v = L.vertex
    u = L.edges["a"]
    eq_ok = all(A.compose(Arrow(w, w, s), u) == L.edges["b"] and L.edges["b"] == u
                for s in endos)
    checks.append(CheckEntry("initial.equalizes_endos", tag=v, passed=eq_ok,
                             witness="" if eq_ok else f"leg {u!r} fails an endo equation"))

    # any arrow w -> v retracts the inclusion: u is mono and u.(t.u) = u
    ts = cat.hom_ids(w, v)
    r = None
    for t in ts:
        cand = Arrow(w, v, t)
        if A.compose(cand, u) == A.identity(v):
            r = cand
            break
    checks.append(CheckEntry("initial.retraction", tag=v, passed=r is not None,
                             witness="" if r is not None else
                             f"no arrow among {ts} retracts the equalizer leg"))
    if r is None:
        r = Arrow(w, v, ts[0]) if ts else Arrow(w, v)

    init_ok = all(len(cat.hom_ids(v, y)) == 1 for y in cat.objects)
    witness = ""
    if not init_ok:
        bad = [y for y in cat.objects if len(cat.hom_ids(v, y)) != 1][0]
        witness = f"hom({v}, {bad}) has {len(cat.hom_ids(v, bad))} arrows"
    checks.append(CheckEntry("initial.unique_arrows", tag=v, passed=init_ok, witness=witness))
    return InitialRefinement(v, u, r, tuple(checks))


# -- mono certificates -------------------------------------------------------


def mono_violation(A: Ambient, m: Arrow, domains: Sequence[str] | None = None) -> str | None:
    """First left-cancellation counterexample for m, or None if monic."""
    objs = domains if domains is not None else A.objects()
    if objs is None:
        raise NonEnumerableAmbient("mono scan needs a domain enumeration")
    for c in objs:
        arrows = A.hom(c, m.src)
        for f in arrows:
            for g in arrows:
                if A.compose(m, f) == A.compose(m, g) and f != g:
                    return (f"m.{A.arrow_label(f)} = m.{A.arrow_label(g)} "
                            f"but the arrows differ (domain {c})")
    return None


def jointly_monic_violation(A: Ambient, arrows: Sequence[Arrow],
                            domains: Sequence[str] | None = None) -> str | None:
    """First counterexample to joint left-cancellation for a same-source family."""
    if not arrows:
        return "empty family is not jointly monic over a nontrivial ambient"
    src = arrows[0].src
    objs = domains if domains is not None else A.objects()
    if objs is None:
        raise NonEnumerableAmbient("joint mono scan needs a domain enumeration")
    for c in objs:
        cands = A.hom(c, src)
        for f in cands:
            for g in cands:
                if f != g and all(A.compose(m, f) == A.compose(m, g) for m in arrows):
                    return f"{A.arrow_label(f)} and {A.arrow_label(g)} agree under every leg (domain {c})"
    return None
