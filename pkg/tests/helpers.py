"""Shared oracles and generators for the test suite.

Oracles recompute order-theoretic facts directly from the raw relation by
scanning, independently of the tables the engine derives, so agreement is
meaningful.
"""

from __future__ import annotations

import random

from catend.core import (Arrow, Diagram, FinCategory, FunctorData,
                         build_category, discrete_category, poset_category)
from catend.limits import Cocone


# ---------------------------------------------------------------------------
# Order oracles (leq-scan only; never use the instance's meet/join tables)


def lower_bounds(q, xs):
    return [c for c in q.elements if all(q.leq_check(c, x) for x in xs)]


def upper_bounds(q, xs):
    return [c for c in q.elements if all(q.leq_check(x, c) for x in xs)]


def meet_oracle(q, xs):
    lows = lower_bounds(q, xs)
    out = [c for c in lows if all(q.leq_check(d, c) for d in lows)]
    assert len(out) == 1, f"{q.name}: no greatest lower bound for {xs}"
    return out[0]


def join_oracle(q, xs):
    ups = upper_bounds(q, xs)
    out = [c for c in ups if all(q.leq_check(c, d) for d in ups)]
    assert len(out) == 1, f"{q.name}: no least upper bound for {xs}"
    return out[0]


def res_oracle(q, y, z):
    """Greatest x with x . y <= z, scanning the raw tensor table."""
    sat = [x for x in q.elements if q.leq_check(q.tensor_obj(x, y), z)]
    out = [x for x in sat if all(q.leq_check(c, x) for c in sat)]
    assert len(out) == 1, f"{q.name}: residual of ({y}, {z}) has no greatest witness"
    return out[0]


# ---------------------------------------------------------------------------
# Shape and diagram generators


def preorder_category(elements, pairs) -> FinCategory:
    """poset_category on the transitive-reflexive closure; pairs may include cycles."""
    elems = sorted(set(elements))
    rel = {(a, b) for a, b in pairs} | {(x, x) for x in elems}
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c in elems:
                if (b, c) in rel and (a, c) not in rel:
                    rel.add((a, c))
                    changed = True
    return poset_category(elems, rel)


def shape_pool() -> list[FinCategory]:
    """Small shapes (<= 5 objects), including preorders with duplicate objects."""
    return [
        discrete_category([]),
        discrete_category(["s0"]),
        discrete_category(["s0", "s1"]),
        discrete_category(["s0", "s1", "s2", "s3"]),
        preorder_category(["s0", "s1"], [("s0", "s1")]),
        preorder_category(["s0", "s1", "s2"], [("s0", "s1"), ("s1", "s2")]),
        preorder_category(["s0", "s1", "s2"], [("s0", "s1"), ("s0", "s2")]),
        preorder_category(["s0", "s1", "s2", "s3"],
                          [("s0", "s2"), ("s1", "s2"), ("s0", "s3"), ("s1", "s3")]),
        # two isomorphic copies of one node: exercises skeletonization
        preorder_category(["s0", "s0b", "s1"],
                          [("s0", "s0b"), ("s0b", "s0"), ("s0", "s1")]),
        preorder_category(["s0", "s0b", "s1", "s1b", "s2"],
                          [("s0", "s0b"), ("s0b", "s0"),
                           ("s1", "s1b"), ("s1b", "s1"),
                           ("s0", "s1"), ("s1", "s2")]),
    ]


def monotone_diagram(q, shape: FinCategory, rng: random.Random) -> Diagram:
    """Random labeling made monotone by joining over each object's ancestors."""
    seed_val = {i: rng.choice(list(q.elements)) for i in shape.objects}
    ob = {}
    for i in shape.objects:
        below = [seed_val[j] for j in shape.objects if shape.hom_ids(j, i)]
        ob[i] = join_oracle(q, below)
    ar = {}
    for a in shape.arrow_ids():
        hs = q.hom(ob[shape.src(a)], ob[shape.tgt(a)])
        assert hs, "generator produced a non-monotone labeling"
        ar[a] = hs[0]
    return FunctorData(source=shape, target=q, ob=ob, ar=ar)


def thin_diagram(q, shape: FinCategory, ob: dict) -> Diagram:
    """Diagram over a thin instance from an explicit monotone labeling."""
    ar = {}
    for a in shape.arrow_ids():
        hs = q.hom(ob[shape.src(a)], ob[shape.tgt(a)])
        assert hs, f"labeling not monotone along {a}"
        ar[a] = hs[0]
    return FunctorData(source=shape, target=q, ob=dict(ob), ar=ar)


def thin_cocone(q, d: Diagram, vertex: str) -> Cocone:
    edges = {i: q.hom(d.ob[i], vertex)[0] for i in d.shape.objects}
    return Cocone(d, vertex, edges)


# ---------------------------------------------------------------------------
# FinSet pointwise oracle


def fn_table(A, f: Arrow) -> dict:
    return {e: A.apply(f, e) for e in A.elements(f.src)}


def compose_tables(g_table: dict, f_table: dict) -> dict:
    return {e: g_table[v] for e, v in f_table.items()}


# ---------------------------------------------------------------------------
# A non-posetal category where the initial-object refinement does real work:
# e = u . r is a split idempotent on w, and v equalizes {id, e}.


def split_idempotent_category() -> FinCategory:
    arrows = {"id:w": ("w", "w"), "id:v": ("v", "v"), "e": ("w", "w"),
              "u": ("v", "w"), "r": ("w", "v")}
    identities = {"w": "id:w", "v": "id:v"}
    composition = {
        ("id:w", "id:w"): "id:w", ("id:v", "id:v"): "id:v",
        ("e", "id:w"): "e", ("id:w", "e"): "e", ("e", "e"): "e",
        ("u", "id:v"): "u", ("id:w", "u"): "u", ("e", "u"): "u",
        ("r", "id:w"): "r", ("id:v", "r"): "r", ("r", "e"): "r",
        ("u", "r"): "e", ("r", "u"): "id:v",
    }
    return build_category(["w", "v"], arrows, composition, identities)


def involution_category() -> FinCategory:
    """A single object carrying a non-identity involution.

    hom(w, w) = {id, s} with s . s = id; the equalizer of {id, s} does not
    exist (no cone at all), so the refinement must report the missing limit.
    """
    arrows = {"id:w": ("w", "w"), "s": ("w", "w")}
    identities = {"w": "id:w"}
    composition = {("id:w", "id:w"): "id:w", ("s", "id:w"): "s",
                   ("id:w", "s"): "s", ("s", "s"): "id:w"}
    return build_category(["w"], arrows, composition, identities)
