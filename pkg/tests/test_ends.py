import pytest

from catend.core import Arrow
from catend.ends import (Bifunctor, bifunctor_violations, domain_arrows,
                         end_of, end_universal_violations, hom_bifunctor,
                         subdivision, wedge_mediator, wedge_to_cone,
                         wedge_violations)
from catend.errors import NotAWedge
from catend.finset import FinSetFragment
from catend.quantale import (chain_leq, heyting_from_lattice,
                             lukasiewicz_chain, quantale_from_tables)
from catend.smcc import exp_contra, exp_cov


def heyting3():
    return heyting_from_lattice("heyting3", ["0", "a", "1"],
                                chain_leq(["0", "a", "1"]))


# ---------------------------------------------------------------------------
# Subdivision shape


def test_subdivision_counts_for_three_chain():
    q = heyting3()
    B = hom_bifunctor(q)
    arrows = domain_arrows(B)
    assert len(arrows) == 6          # 3 identities + 0<=a, 0<=1, a<=1
    sd = subdivision(B)
    obs = [n for n in sd.shape.objects if n.startswith("ob:")]
    ars = [n for n in sd.shape.objects if n.startswith("ar:")]
    assert len(obs) == 3 and len(ars) == 6
    legs = [a for a in sd.shape.arrow_ids()
            if a.startswith("s:") or a.startswith("t:")]
    assert len(legs) == 12           # two per arrow node
    # leg values are the two exponential actions
    for a in legs:
        f = sd.ar[a]
        assert f.src == sd.ob[sd.shape.src(a)]
        assert f.tgt == sd.ob[sd.shape.tgt(a)]


# ---------------------------------------------------------------------------
# Ends in posetal instances


def test_end_of_hom_is_the_unit():
    for q in (heyting3(), lukasiewicz_chain(3)):
        E = end_of(hom_bifunctor(q))
        assert E.vertex == q.unit
        assert end_universal_violations(E) == []


def test_end_of_constant_bifunctor_is_the_constant():
    q = heyting3()
    B = Bifunctor(ambient=q, name="const-a", objects=tuple(sorted(q.elements)),
                  ob=lambda x, y: "a",
                  contra=lambda f, z: q.identity("a"),
                  cov=lambda x, g: q.identity("a"))
    assert bifunctor_violations(B) == []
    E = end_of(B)
    assert E.vertex == "a"
    assert all(p == q.identity("a") for p in E.projections.values())


def test_end_of_second_projection_is_bottom():
    q = heyting3()
    B = Bifunctor(ambient=q, name="snd", objects=tuple(sorted(q.elements)),
                  ob=lambda x, y: y,
                  contra=lambda f, z: q.identity(z),
                  cov=lambda x, g: g)
    assert bifunctor_violations(B) == []
    assert end_of(B).vertex == q.bottom


def test_one_element_instance():
    q = quantale_from_tables("one", ["*"], [("*", "*")], {("*", "*"): "*"}, "*")
    E = end_of(hom_bifunctor(q))
    assert E.vertex == "*"
    assert end_universal_violations(E) == []


def test_end_vertex_ignores_object_order():
    q = heyting3()
    a = end_of(hom_bifunctor(q, ["0", "a", "1"]))
    b = end_of(hom_bifunctor(q, ["1", "0", "a"]))
    assert a.vertex == b.vertex


def test_wedge_mediator_of_own_projections_is_identity():
    q = heyting3()
    E = end_of(hom_bifunctor(q))
    m = wedge_mediator(E, E.projections)
    assert m == q.identity(E.vertex)


# ---------------------------------------------------------------------------
# Ends in the set workspace


def test_end_of_hom_on_one_set_is_the_center():
    A = FinSetFragment({"P": ["p0", "p1"]})
    B = hom_bifunctor(A, ["P"])
    assert bifunctor_violations(B) == []
    E = end_of(B)
    elems = A.elements(E.vertex)
    # only the identity commutes with all four self-maps of a two-point set
    assert len(elems) == 1
    assert A.apply(E.projections["P"], elems[0]) == "f(0,1)"
    assert wedge_violations(B, E.projections) == []


def test_wedge_square_failure_rejected():
    A = FinSetFragment({"P": ["p0", "p1"]})
    B = hom_bifunctor(A, ["P"])
    sd = subdivision(B)
    e = A.exp_obj("P", "P")
    const0 = A.make_arrow("I", e, {"*": "f(0,0)"})
    with pytest.raises(NotAWedge) as err:
        wedge_to_cone(B, sd, {"P": const0})
    assert "wedge square fails" in str(err.value)


def test_empty_family_rejected():
    A = FinSetFragment({"P": ["p0"]})
    B = Bifunctor(ambient=A, name="empty", objects=(),
                  ob=lambda x, y: "P",
                  contra=lambda f, z: A.identity("P"),
                  cov=lambda x, g: A.identity("P"))
    with pytest.raises(NotAWedge):
        wedge_to_cone(B, subdivision(B), {})


def test_mistyped_projection_rejected():
    q = heyting3()
    E = end_of(hom_bifunctor(q))
    fam = dict(E.projections)
    fam["a"] = q.identity("0")     # wrong target
    with pytest.raises(NotAWedge) as err:
        wedge_mediator(E, fam)
    assert "mistyped" in str(err.value)


# ---------------------------------------------------------------------------
# Fault injection: laws of a broken bifunctor are reported


def _flip(A: FinSetFragment, obj: str) -> Arrow:
    elems = A.elements(obj)
    table = {e: e for e in elems}
    table[elems[0]], table[elems[1]] = elems[1], elems[0]
    return A.make_arrow(obj, obj, table)


def test_broken_covariant_action_detected():
    A = FinSetFragment({"P": ["p0", "p1"]})

    def bad_cov(x, g):
        out = exp_cov(A, g, x)
        if A.is_identity(g):
            return out
        return A.compose(_flip(A, out.tgt), out)

    B = Bifunctor(ambient=A, name="bad", objects=("P",),
                  ob=lambda x, y: A.exp_obj(x, y),
                  contra=lambda f, z: exp_contra(A, f, z),
                  cov=bad_cov)
    out = bifunctor_violations(B)
    assert out
    assert any("not functorial" in v or "interchange" in v for v in out)
