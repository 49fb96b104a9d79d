import random

import pytest

from catend.core import (Diagram, FinCatAmbient, diagram_on_elements,
                         discrete_category, parallel_pair_category,
                         poset_category)
from catend.errors import MissingLimit, NoInitial, NoLimit, NotACone
from catend.finset import FinSetFragment
from catend.limits import (Cone, LimitingCone, colimit_brute, enumerate_cones,
                           initial_object, jointly_monic_violation,
                           limit_brute, limiting_violations, mediator,
                           mono_violation, refine_weak_initial,
                           weak_initiality_violations)
from catend.quantale import (chain_leq, godel_chain, heyting_from_lattice,
                             lukasiewicz_chain)

from helpers import (involution_category, join_oracle, meet_oracle,
                     split_idempotent_category)


def heyting3():
    return heyting_from_lattice("heyting3", ["0", "a", "1"],
                                chain_leq(["0", "a", "1"]))


# ---------------------------------------------------------------------------
# Posetal limits and colimits are meets and joins


def test_quantale_limits_are_meets_and_colimits_joins():
    rng = random.Random(11)
    for q in (heyting3(), godel_chain(5), lukasiewicz_chain(4)):
        elems = list(q.elements)
        for _ in range(15):
            sub = rng.sample(elems, rng.randint(1, len(elems)))
            d = diagram_on_elements(q, sub)
            assert limit_brute(q, d).vertex == meet_oracle(q, sub)
            assert colimit_brute(q, d).vertex == join_oracle(q, sub)


def test_empty_diagram_gives_top_and_bottom():
    for q in (heyting3(), lukasiewicz_chain(4)):
        d = diagram_on_elements(q, [])
        assert limit_brute(q, d).vertex == q.top
        assert colimit_brute(q, d).vertex == q.bottom


def test_limit_is_verified_universal_on_quantale():
    q = heyting3()
    d = diagram_on_elements(q, ["a", "1"])
    L = limit_brute(q, d)
    assert L.vertex == "a"
    assert limiting_violations(q, L) == []


def test_wrong_vertex_is_flagged():
    q = heyting3()
    d = diagram_on_elements(q, ["a", "1"])
    # 0 is a lower bound but not the greatest one
    claimed = Cone(d, "0", {i: q.hom("0", d.ob[i])[0] for i in d.shape.objects})
    bad = limiting_violations(q, LimitingCone(cone=claimed))
    assert bad
    assert any("factorizations" in v for v in bad)


# ---------------------------------------------------------------------------
# Set-workspace limits via the constraint solver


def small_ws():
    return FinSetFragment({"A": ["x", "y"], "B": ["u", "v", "w"], "C": ["c0", "c1"]})


def test_product_of_sets():
    A = small_ws()
    d = diagram_on_elements(A, ["A", "B"])
    L = limit_brute(A, d)
    elems = A.elements(L.vertex)
    assert len(elems) == 6
    seen = {(A.apply(L.edges["n0"], t), A.apply(L.edges["n1"], t)) for t in elems}
    assert seen == {(a, b) for a in A.elements("A") for b in A.elements("B")}


def test_equalizer_of_parallel_pair():
    A = small_ws()
    f0 = A.make_arrow("A", "B", {"x": "u", "y": "v"})
    f1 = A.make_arrow("A", "B", {"x": "u", "y": "u"})
    shape = parallel_pair_category()
    d = Diagram(source=shape, target=A,
                ob={"i": "A", "j": "B"},
                ar={"id:i": A.identity("A"), "id:j": A.identity("B"),
                    "f0": f0, "f1": f1})
    L = limit_brute(A, d)
    elems = A.elements(L.vertex)
    assert len(elems) == 1
    assert A.apply(L.edges["i"], elems[0]) == "x"


def test_equal_parallel_pair_recovers_source():
    A = small_ws()
    f = A.make_arrow("A", "B", {"x": "u", "y": "v"})
    shape = parallel_pair_category()
    d = Diagram(source=shape, target=A,
                ob={"i": "A", "j": "B"},
                ar={"id:i": A.identity("A"), "id:j": A.identity("B"),
                    "f0": f, "f1": f})
    L = limit_brute(A, d)
    leg = L.edges["i"]
    assert sorted(leg.data) == sorted(A.elements("A"))   # bijective onto A


def test_product_mediator_is_tupling():
    A = small_ws()
    d = diagram_on_elements(A, ["A", "B"])
    L = limit_brute(A, d)
    f = A.make_arrow("C", "A", {"c0": "y", "c1": "x"})
    g = A.make_arrow("C", "B", {"c0": "w", "c1": "w"})
    m = mediator(L, Cone(d, "C", {"n0": f, "n1": g}))
    for c in A.elements("C"):
        t = A.apply(m, c)
        assert A.apply(L.edges["n0"], t) == A.apply(f, c)
        assert A.apply(L.edges["n1"], t) == A.apply(g, c)


def test_mediator_rejects_non_cone():
    A = small_ws()
    d = diagram_on_elements(A, ["A", "B"])
    L = limit_brute(A, d)
    f = A.make_arrow("C", "A", {"c0": "y", "c1": "x"})
    with pytest.raises(NotACone):
        mediator(L, Cone(d, "C", {"n0": f}))   # missing an edge


# ---------------------------------------------------------------------------
# Initial objects and the refinement of a weakly initial one


def test_initial_object_is_poset_bottom():
    cat = poset_category(["0", "a", "b", "1"],
                         {("0", "a"), ("0", "b"), ("0", "1"), ("a", "1"), ("b", "1")})
    assert initial_object(cat) == "0"


def test_no_initial_on_discrete_pair():
    with pytest.raises(NoInitial):
        initial_object(discrete_category(["p", "q"]))
    assert weak_initiality_violations(discrete_category(["p", "q"]), "p") == ["no arrow p -> q"]


def test_refine_weak_initial_on_poset_is_identity_like():
    cat = poset_category(["0", "a", "1"], set(chain_leq(["0", "a", "1"])))
    ref = refine_weak_initial(cat, "0")
    assert ref.vertex == "0"
    assert all(c.passed for c in ref.checks)
    A = FinCatAmbient(cat)
    assert A.compose(ref.retraction, ref.inclusion) == A.identity("0")


def test_refinement_splits_an_idempotent():
    cat = split_idempotent_category()
    ref = refine_weak_initial(cat, "w")
    assert ref.vertex == "v"
    assert ref.vertex == initial_object(cat)
    assert all(c.passed for c in ref.checks)
    A = FinCatAmbient(cat)
    assert A.compose(ref.retraction, ref.inclusion) == A.identity("v")
    # the inclusion leg really equalizes both endos of w
    for s in cat.hom_ids("w", "w"):
        from catend.core import Arrow
        assert A.compose(Arrow("w", "w", s), ref.inclusion) == ref.inclusion


def test_refinement_reports_missing_equalizer():
    cat = involution_category()
    with pytest.raises(MissingLimit):
        refine_weak_initial(cat, "w")


def test_refinement_flags_non_weakly_initial_start():
    cat = discrete_category(["p", "q"])
    ref = refine_weak_initial(cat, "p")
    assert not ref.checks[0].passed
    assert "no arrow" in ref.checks[0].witness


def test_no_limit_raised_for_limitless_diagram():
    cat = involution_category()
    A = FinCatAmbient(cat)
    from catend.core import Arrow
    shape = parallel_pair_category()
    d = Diagram(source=shape, target=A,
                ob={"i": "w", "j": "w"},
                ar={"id:i": A.identity("w"), "id:j": A.identity("w"),
                    "f0": A.identity("w"), "f1": Arrow("w", "w", "s")})
    assert enumerate_cones(A, d) == []
    with pytest.raises(NoLimit):
        limit_brute(A, d)


# ---------------------------------------------------------------------------
# Mono certificates


def test_mono_violation_on_set_maps():
    A = small_ws()
    inj = A.make_arrow("A", "B", {"x": "u", "y": "w"})
    assert mono_violation(A, inj, domains=["A", "B", "C", "I"]) is None
    collapse = A.make_arrow("A", "B", {"x": "u", "y": "u"})
    w = mono_violation(A, collapse, domains=["A"])
    assert w is not None and "differ" in w


def test_jointly_monic_projections():
    A = small_ws()
    d = diagram_on_elements(A, ["A", "B"])
    L = limit_brute(A, d)
    legs = [L.edges["n0"], L.edges["n1"]]
    assert jointly_monic_violation(A, legs, domains=["A", "C"]) is None
    consts = [A.make_arrow("A", "B", {"x": "u", "y": "u"}),
              A.make_arrow("A", "B", {"x": "v", "y": "v"})]
    assert jointly_monic_violation(A, consts, domains=["A"]) is not None
    assert jointly_monic_violation(A, [], domains=["A"]) is not None
