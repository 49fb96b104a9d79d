"""Transporting limits across equivalences of diagrams.

An equivalence packages back-and-forth shape functors with invertible
comparison data: unit and counit isos inside the shapes, and an ambient
natural iso between the transported diagram and the target one.  A limiting
cone over one diagram then yields a limiting cone over the other with the
very same vertex; the transported cone is re-verified against the universal
property by exhaustion rather than taken on faith.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import (Arrow, Diagram, FinCatAmbient, FinCategory, FunctorData,
                   build_category, functor_violations)
from .errors import ValidationFailure
from .limits import (Cone, LimitingCone, cone_violations, enumerate_cones,
                     mediator, mediators_into)
from .report import CheckEntry


@dataclass(frozen=True)
class DiagramEquivalence:
    """Equivalence data carrying d1 over to d2.

    forward: shape(d1) -> shape(d2);  backward: shape(d2) -> shape(d1).
    gamma[i]: ambient iso d2(forward(i)) -> d1(i), natural in i.
    counit[j]: invertible shape(d2)-arrow forward(backward(j)) -> j, natural.
    unit[i]: invertible shape(d1)-arrow backward(forward(i)) -> i, natural.
    """

    d1: Diagram
    d2: Diagram
    forward: FunctorData
    backward: FunctorData
    gamma: Mapping[str, Arrow]
    counit: Mapping[str, str]
    unit: Mapping[str, str]


def equivalence_violations(E: DiagramEquivalence) -> list[str]:
    A = E.d1.target
    I1, I2 = E.d1.shape, E.d2.shape
    out: list[str] = []
    if E.forward.source != I1:
        out.append("forward functor is not defined on the first shape")
    if E.backward.source != I2:
        out.append("backward functor is not defined on the second shape")
    if not (isinstance(E.forward.target, FinCatAmbient) and E.forward.target.cat == I2):
        out.append("forward functor does not land in the second shape")
    if not (isinstance(E.backward.target, FinCatAmbient) and E.backward.target.cat == I1):
        out.append("backward functor does not land in the first shape")
    if out:
        return out
    out.extend(f"forward: {v}" for v in functor_violations(E.forward))
    out.extend(f"backward: {v}" for v in functor_violations(E.backward))
    if out:
        return out

    for i in I1.objects:
        g = E.gamma.get(i)
        want_src = E.d2.ob[E.forward.ob[i]]
        want_tgt = E.d1.ob[i]
        if g is None or g.src != want_src or g.tgt != want_tgt:
            out.append(f"gamma[{i}] missing or not {want_src} -> {want_tgt}")
        elif A.inverse(g) is None:
            out.append(f"gamma[{i}] is not invertible")
    if not out:
        for a in I1.arrow_ids():
            i, i2 = I1.src(a), I1.tgt(a)
            lhs = A.compose(E.d1.ar[a], E.gamma[i])
            rhs = A.compose(E.gamma[i2], E.d2.ar[E.forward.ar[a].data])
            if lhs != rhs:
                out.append(f"gamma not natural at shape arrow {a}")

    def iso_in(cat: FinCategory, aid: str) -> bool:
        s, t = cat.src(aid), cat.tgt(aid)
        return any(f == aid for f, _ in cat.iso_pairs(s, t))

    bad_counit = False
    for j in I2.objects:
        aid = E.counit.get(j)
        want_src = E.forward.ob[E.backward.ob[j]]
        if aid is None or aid not in I2.arrows or I2.arrows[aid] != (want_src, j):
            out.append(f"counit[{j}] missing or not {want_src} -> {j}")
            bad_counit = True
        elif not iso_in(I2, aid):
            out.append(f"counit[{j}] is not invertible")
    if not bad_counit:
        for a in I2.arrow_ids():
            j, j2 = I2.src(a), I2.tgt(a)
            fwd_bwd = E.forward.ar[E.backward.ar[a].data].data
            if I2.compose_ids(a, E.counit[j]) != I2.compose_ids(E.counit[j2], fwd_bwd):
                out.append(f"counit not natural at shape arrow {a}")

    bad_unit = False
    for i in I1.objects:
        aid = E.unit.get(i)
        want_src = E.backward.ob[E.forward.ob[i]]
        if aid is None or aid not in I1.arrows or I1.arrows[aid] != (want_src, i):
            out.append(f"unit[{i}] missing or not {want_src} -> {i}")
            bad_unit = True
        elif not iso_in(I1, aid):
            out.append(f"unit[{i}] is not invertible")
    if not bad_unit:
        for a in I1.arrow_ids():
            i, i2 = I1.src(a), I1.tgt(a)
            bwd_fwd = E.backward.ar[E.forward.ar[a].data].data
            if I1.compose_ids(a, E.unit[i]) != I1.compose_ids(E.unit[i2], bwd_fwd):
                out.append(f"unit not natural at shape arrow {a}")
    return out


def validate_equivalence(E: DiagramEquivalence) -> DiagramEquivalence:
    bad = equivalence_violations(E)
    if bad:
        raise ValidationFailure("diagram equivalence", bad)
    return E


def pointwise_iso(E: DiagramEquivalence) -> dict[str, Arrow]:
    """delta[j]: d1(backward(j)) -> d2(j), assembled from counit and gamma."""
    A = E.d1.target
    out = {}
    for j in E.d2.shape.objects:
        i = E.backward.ob[j]
        out[j] = A.compose(E.d2.ar[E.counit[j]], A.inverse(E.gamma[i]))
    return out


def pointwise_naturality_violations(E: DiagramEquivalence,
                                    delta: Mapping[str, Arrow]) -> list[str]:
    A = E.d1.target
    out = []
    for a in E.d2.shape.arrow_ids():
        j, j2 = E.d2.shape.src(a), E.d2.shape.tgt(a)
        lhs = A.compose(E.d2.ar[a], delta[j])
        rhs = A.compose(delta[j2], E.d1.ar[E.backward.ar[a].data])
        if lhs != rhs:
            out.append(f"pointwise iso not natural at shape arrow {a}")
    return out


def transport_limit(E: DiagramEquivalence,
                    L1: LimitingCone) -> tuple[LimitingCone, list[CheckEntry]]:
    """Limiting cone over d2 with the same vertex as L1, fully re-verified."""
    A = E.d1.target
    checks: list[CheckEntry] = []
    delta = pointwise_iso(E)
    nat = pointwise_naturality_violations(E, delta)
    checks.append(CheckEntry("transport.pointwise_natural", passed=not nat,
                             witness=nat[0] if nat else ""))

    edges2 = {j: A.compose(delta[j], L1.edges[E.backward.ob[j]])
              for j in E.d2.shape.objects}
    cone2 = Cone(E.d2, L1.vertex, edges2)
    bad = cone_violations(cone2)
    checks.append(CheckEntry("transport.cone_commutes", passed=not bad,
                             witness=bad[0] if bad else ""))
    checks.append(CheckEntry("transport.same_vertex", tag=L1.vertex,
                             passed=cone2.vertex == L1.vertex))

    def pull(c: Cone) -> Cone:
        edges1 = {i: A.compose(E.gamma[i], c.edges[E.forward.ob[i]])
                  for i in E.d1.shape.objects}
        return Cone(E.d1, c.vertex, edges1)

    def mediate(c: Cone) -> Arrow:
        return mediator(L1, pull(c))

    L2 = LimitingCone(cone=cone2, mediate=mediate)

    if A.objects() is not None:
        exist_fail = uniq_fail = replay_fail = ""
        for c in enumerate_cones(A, E.d2):
            ms = mediators_into(A, cone2, c)
            if not ms and not exist_fail:
                exist_fail = f"cone at {c.vertex} does not factor"
            if len(ms) > 1 and not uniq_fail:
                uniq_fail = f"cone at {c.vertex} factors {len(ms)} ways"
            if ms and not replay_fail:
                f = mediate(c)
                if f not in ms:
                    replay_fail = f"pulled-back mediator at {c.vertex} differs"
        checks.append(CheckEntry("transport.existence", passed=not exist_fail, witness=exist_fail))
        checks.append(CheckEntry("transport.uniqueness", passed=not uniq_fail, witness=uniq_fail))
        checks.append(CheckEntry("transport.mediator_replay", passed=not replay_fail,
                                 witness=replay_fail))
    return L2, checks


def reverse_equivalence(E: DiagramEquivalence) -> DiagramEquivalence:
    """The same equivalence read from d2 to d1."""
    delta = pointwise_iso(E)
    return DiagramEquivalence(d1=E.d2, d2=E.d1,
                              forward=E.backward, backward=E.forward,
                              gamma=delta, counit=dict(E.unit), unit=dict(E.counit))


# ---------------------------------------------------------------------------
# Equivalence builders


def _shape_functor(src: FinCategory, tgt: FinCategory,
                   ob: Mapping[str, str], ar: Mapping[str, str]) -> FunctorData:
    amb = FinCatAmbient(tgt)
    return FunctorData(source=src, target=amb, ob=dict(ob),
                       ar={a: Arrow(tgt.src(i), tgt.tgt(i), i) for a, i in ar.items()})


def identity_equivalence(d: Diagram) -> DiagramEquivalence:
    shape = d.shape
    ident = {a: a for a in shape.arrow_ids()}
    obid = {x: x for x in shape.objects}
    f = _shape_functor(shape, shape, obid, ident)
    return DiagramEquivalence(
        d1=d, d2=d, forward=f, backward=f,
        gamma={i: d.target.identity(d.ob[i]) for i in shape.objects},
        counit={j: shape.id_of(j) for j in shape.objects},
        unit={i: shape.id_of(i) for i in shape.objects})


def relabel_equivalence(d: Diagram, prefix: str = "r") -> DiagramEquivalence:
    """Equivalence onto an isomorphic copy of the shape with renamed cells."""
    shape = d.shape
    ob_map = {x: f"{prefix}:{x}" for x in shape.objects}
    ar_map = {a: f"{prefix}:{a}" for a in shape.arrow_ids()}
    arrows = {ar_map[a]: (ob_map[s], ob_map[t]) for a, (s, t) in shape.arrows.items()}
    composition = {(ar_map[g], ar_map[f]): ar_map[r]
                   for (g, f), r in shape.composition.items()}
    identities = {ob_map[x]: ar_map[i] for x, i in shape.identities.items()}
    shape2 = build_category(list(ob_map.values()), arrows, composition, identities)
    d2 = Diagram(source=shape2, target=d.target,
                 ob={ob_map[x]: d.ob[x] for x in shape.objects},
                 ar={ar_map[a]: d.ar[a] for a in shape.arrow_ids()})
    fwd = _shape_functor(shape, shape2, ob_map, ar_map)
    bwd = _shape_functor(shape2, shape,
                         {v: k for k, v in ob_map.items()},
                         {v: k for k, v in ar_map.items()})
    return DiagramEquivalence(
        d1=d, d2=d2, forward=fwd, backward=bwd,
        gamma={i: d.target.identity(d.ob[i]) for i in shape.objects},
        counit={j: shape2.id_of(j) for j in shape2.objects},
        unit={i: shape.id_of(i) for i in shape.objects})


def iso_classes(cat: FinCategory) -> dict[str, str]:
    """Map each object to the lexicographically least object isomorphic to it."""
    rep: dict[str, str] = {}
    for x in cat.objects:
        if x in rep:
            continue
        cls = [y for y in cat.objects if cat.iso_pairs(x, y)]
        r = min(cls)
        for y in cls:
            rep[y] = r
    return rep


def skeletonize(d: Diagram) -> DiagramEquivalence:
    """Equivalence from d onto its restriction to iso-class representatives.

    Chosen isos to the representatives are identities on the representatives
    themselves, so the counit is the identity and naturality is strict there.
    """
    shape = d.shape
    rep = iso_classes(shape)
    reps = sorted(set(rep.values()))
    # chosen iso u[x]: x -> rep(x) with inverse; identity on representatives
    u: dict[str, str] = {}
    u_inv: dict[str, str] = {}
    for x in shape.objects:
        if x == rep[x]:
            u[x] = u_inv[x] = shape.id_of(x)
        else:
            f, g = cat_first_iso(shape, x, rep[x])
            u[x], u_inv[x] = f, g

    sub_arrows = {a: st for a, st in shape.arrows.items()
                  if st[0] in reps and st[1] in reps}
    sub_comp = {(g, f): r for (g, f), r in shape.composition.items()
                if g in sub_arrows and f in sub_arrows}
    sub_ids = {x: shape.identities[x] for x in reps}
    skeletal = build_category(reps, sub_arrows, sub_comp, sub_ids)
    d2 = Diagram(source=skeletal, target=d.target,
                 ob={x: d.ob[x] for x in reps},
                 ar={a: d.ar[a] for a in skeletal.arrow_ids()})

    fwd_ob = {x: rep[x] for x in shape.objects}
    fwd_ar = {}
    for a in shape.arrow_ids():
        x, y = shape.src(a), shape.tgt(a)
        fwd_ar[a] = shape.compose_ids(u[y], shape.compose_ids(a, u_inv[x]))
    fwd = _shape_functor(shape, skeletal, fwd_ob, fwd_ar)
    bwd = _shape_functor(skeletal, shape,
                         {x: x for x in reps},
                         {a: a for a in skeletal.arrow_ids()})
    return DiagramEquivalence(
        d1=d, d2=d2, forward=fwd, backward=bwd,
        gamma={i: d.ar[u_inv[i]] for i in shape.objects},
        counit={j: skeletal.id_of(j) for j in reps},
        unit={i: u_inv[i] for i in shape.objects})


def cat_first_iso(cat: FinCategory, x: str, y: str) -> tuple[str, str]:
    pairs = cat.iso_pairs(x, y)
    assert pairs, f"no iso {x} ~ {y}"
    return pairs[0]
