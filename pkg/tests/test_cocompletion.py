import random

import pytest

from catend.cocompletion import (LimExpEndofunctor, colimit_via_ends,
                                 constant_endofunctor, double_dual_endofunctor,
                                 end_via_cogenerator, endo_exp_bifunctor,
                                 endofunctor_violations, exp_from_endofunctor,
                                 identity_endofunctor, mediate_weakly,
                                 synthesize_cocone, tensor_endofunctor)
from catend.core import diagram_on_elements
from catend.ends import end_of, wedge_mediator, wedge_violations
from catend.errors import InputError
from catend.finset import FinSetFragment
from catend.limits import Cocone, cocone_violations, colimit_brute, initial_object
from catend.quantale import (chain_leq, godel_chain, heyting_from_lattice,
                             lukasiewicz_chain, powerset_quantale)

from helpers import join_oracle, meet_oracle, preorder_category, thin_cocone


def heyting3():
    return heyting_from_lattice("heyting3", ["0", "a", "1"],
                                chain_leq(["0", "a", "1"]))


# ---------------------------------------------------------------------------
# Endofunctors


def test_endofunctor_builders_are_lawful():
    q = heyting3()
    objs = sorted(q.elements)
    for F in (identity_endofunctor(q), constant_endofunctor(q, "a"),
              tensor_endofunctor(q, "a"), exp_from_endofunctor(q, "a"),
              double_dual_endofunctor(q, "0")):
        assert endofunctor_violations(F, objs) == [], F.name


def test_limexp_endofunctor_values_and_laws():
    q = heyting3()
    d = diagram_on_elements(q, ["a", "0"])
    F = LimExpEndofunctor(q, d)
    for x in q.elements:
        expected = meet_oracle(q, [q.exp_obj("a", x), q.exp_obj("0", x)])
        assert F.ob(x) == expected
    assert F.ob("0") == "0" and F.ob("a") == "1" and F.ob("1") == "1"
    assert endofunctor_violations(F, sorted(q.elements)) == []


def test_broken_endofunctor_detected():
    from catend.cocompletion import Endofunctor
    A = FinSetFragment({"P": ["p0", "p1"]})
    flip = A.make_arrow("P", "P", {"p0": "p1", "p1": "p0"})

    def bad_ar(f):
        if A.is_identity(f):
            return f
        return A.compose(flip, f) if f.tgt == "P" else f

    F = Endofunctor(A, "bad", ob=lambda x: x, ar=bad_ar)
    out = endofunctor_violations(F, ["P"])
    assert any("composition not preserved" in v for v in out)


# ---------------------------------------------------------------------------
# Synthesis


def test_synthesize_cocone_on_pair():
    q = heyting3()
    d = diagram_on_elements(q, ["a", "0"])
    S = synthesize_cocone(q, d)
    assert all(c.passed for c in S.checks), [c for c in S.checks if not c.passed]
    assert cocone_violations(S.cocone) == []
    assert S.cocone.vertex == "a"        # already the least upper bound here
    assert S.end.vertex == "a"


def test_synthesize_cocone_along_chain_shape():
    q = godel_chain(4)
    shape = preorder_category(["i", "j"], {("i", "j")})
    from helpers import thin_diagram
    d = thin_diagram(q, shape, {"i": "c01", "j": "c02"})
    S = synthesize_cocone(q, d)
    assert all(c.passed for c in S.checks)
    assert {c.check for c in S.checks} >= {"synthesis.wedge_square",
                                           "synthesis.end_leg",
                                           "synthesis.swap_triangle",
                                           "synthesis.cocone_triangle",
                                           "synthesis.cocone"}


def test_mediate_weakly_reaches_every_bound():
    q = heyting3()
    d = diagram_on_elements(q, ["a", "0"])
    S = synthesize_cocone(q, d)
    for u in ("a", "1"):
        psi, checks = mediate_weakly(q, S, thin_cocone(q, d, u))
        assert (psi.src, psi.tgt) == (S.cocone.vertex, u)
        assert all(c.passed for c in checks)


def test_mediate_weakly_rejects_bad_input():
    q = heyting3()
    d = diagram_on_elements(q, ["a", "0"])
    S = synthesize_cocone(q, d, objects=["0", "a"])
    with pytest.raises(InputError):
        mediate_weakly(q, S, thin_cocone(q, d, "1"))   # outside the universe
    S2 = synthesize_cocone(q, d)
    with pytest.raises(InputError):
        mediate_weakly(q, S2, Cocone(d, "1", {}))      # no edges at all


def test_unknown_end_route_rejected():
    q = heyting3()
    d = diagram_on_elements(q, ["a"])
    with pytest.raises(InputError):
        synthesize_cocone(q, d, end_route="bogus")


# ---------------------------------------------------------------------------
# Worked colimits


def test_colimit_of_pair_in_heyting3():
    q = heyting3()
    R = colimit_via_ends(q, diagram_on_elements(q, ["a", "0"]))
    assert R.vertex == "a"
    assert all(c.passed for c in R.checks)
    assert sorted(R.cocone_category.objects) == ["1", "a"]
    assert initial_object(R.cocone_category) == "a"


def test_colimit_of_half_in_lukasiewicz3():
    q = lukasiewicz_chain(3)
    R = colimit_via_ends(q, diagram_on_elements(q, ["1/2"]))
    assert R.vertex == "1/2"
    assert all(c.passed for c in R.checks)


def test_colimit_of_empty_diagram_is_bottom():
    q = heyting3()
    R = colimit_via_ends(q, diagram_on_elements(q, []))
    assert R.vertex == q.bottom
    assert all(c.passed for c in R.checks)


def test_expected_check_kinds_present():
    q = heyting3()
    R = colimit_via_ends(q, diagram_on_elements(q, ["a", "0"]))
    names = {c.check for c in R.checks}
    assert names >= {"synthesis.cocone", "cocones.vertex_present",
                     "cocones.weakly_initial", "initial.weakly_initial",
                     "initial.equalizes_endos", "initial.retraction",
                     "initial.unique_arrows", "colimit.cocone",
                     "colimit.matches_brute"}


def test_matches_brute_and_join_on_random_diagrams():
    rng = random.Random(17)
    z2 = {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "e"}
    for q in (godel_chain(4), powerset_quantale("pz2", ["e", "g"], z2, "e")):
        elems = list(q.elements)
        for _ in range(6):
            sub = [rng.choice(elems) for _ in range(rng.randint(0, 3))]
            d = diagram_on_elements(q, sub)
            R = colimit_via_ends(q, d)
            assert R.vertex == colimit_brute(q, d).vertex
            assert R.vertex == join_oracle(q, sub)
            assert all(c.passed for c in R.checks)


def test_nonposetal_ambient_rejected():
    A = FinSetFragment({"P": ["p0"]})
    d = diagram_on_elements(A, ["P"])
    with pytest.raises(InputError):
        colimit_via_ends(A, d)


# ---------------------------------------------------------------------------
# The cogenerating-family route to the end


def test_cogenerator_end_agrees_with_direct():
    q = heyting3()
    d = diagram_on_elements(q, ["a", "0"])
    universe = sorted(q.elements)
    for F in (identity_endofunctor(q), constant_endofunctor(q, "a"),
              tensor_endofunctor(q, "a"), double_dual_endofunctor(q, "a"),
              LimExpEndofunctor(q, d)):
        direct = end_of(endo_exp_bifunctor(q, F, universe))
        via = end_via_cogenerator(q, F, objects=universe)
        assert via.end.vertex == direct.vertex, getattr(F, "name", "?")
        assert all(c.passed for c in via.checks)
        assert wedge_violations(via.end.bifunctor, via.end.projections) == []


def test_cogenerator_end_with_empty_family():
    q = heyting3().with_cogenerators("empty")
    assert q.cogenerating_family == []
    F = identity_endofunctor(q)
    universe = sorted(q.elements)
    via = end_via_cogenerator(q, F, objects=universe)
    assert via.product == q.top            # empty product
    direct = end_of(endo_exp_bifunctor(q, F, universe))
    assert via.end.vertex == direct.vertex
    assert all(c.passed for c in via.checks)


def test_cogenerator_mediate_closure_is_identity_on_projections():
    q = lukasiewicz_chain(3)
    F = identity_endofunctor(q)
    via = end_via_cogenerator(q, F)
    m = wedge_mediator(via.end, via.end.projections)
    assert m == q.identity(via.end.vertex)


def test_colimit_through_cogenerator_route():
    q = heyting3()
    d = diagram_on_elements(q, ["a", "0"])
    R = colimit_via_ends(q, d, end_route="cogenerator")
    assert R.vertex == "a"
    assert all(c.passed for c in R.checks)
    assert any(c.check.startswith("end2.") for c in R.checks)
