"""Finite commutative quantales as posetal closed instances.

A quantale here is a finite lattice with a commutative, monotone, unital
tensor whose residual exists for every pair.  Construction validates every
law against the raw tables and always recomputes the residuation; input
documents never carry one.  Hom-sets have at most one arrow, so the closed
structure is a matter of which arrows exist.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import Arrow
from .errors import NoResiduation, NotALattice, TensorNotMonotone, TypeMismatch
from .smcc import SmccInstance


class QuantaleInstance(SmccInstance):
    """Validated quantale; use quantale_from_tables to build one."""

    posetal = True

    def __init__(self, name: str, elements: tuple[str, ...], leq: frozenset,
                 tensor: Mapping[tuple[str, str], str], unit: str,
                 meet: Mapping[tuple[str, str], str], join: Mapping[tuple[str, str], str],
                 res: Mapping[tuple[str, str], str], top: str, bottom: str,
                 cogenerators: str = "all"):
        self.name = name
        self.elements = elements
        self._leq = leq
        self._tensor = tensor
        self._unit = unit
        self._meet = meet
        self._join = join
        self._res = res
        self.top = top
        self.bottom = bottom
        if cogenerators not in ("all", "empty"):
            raise TypeMismatch(f"unknown cogenerator mode {cogenerators!r}")
        self.cogenerators = cogenerators

    def __repr__(self) -> str:
        return f"QuantaleInstance({self.name}, {len(self.elements)} elements)"

    def with_cogenerators(self, mode: str) -> "QuantaleInstance":
        return QuantaleInstance(self.name, self.elements, self._leq, self._tensor,
                                self._unit, self._meet, self._join, self._res,
                                self.top, self.bottom, cogenerators=mode)

    @property
    def cogenerating_family(self) -> list[str]:
        return list(self.elements) if self.cogenerators == "all" else []

    # -- order and lattice --------------------------------------------------

    def leq_check(self, a: str, b: str) -> bool:
        return (a, b) in self._leq

    def meet(self, a: str, b: str) -> str:
        return self._meet[(a, b)]

    def join(self, a: str, b: str) -> str:
        return self._join[(a, b)]

    def meet_all(self, xs: Iterable[str]) -> str:
        out = self.top
        for x in xs:
            out = self.meet(out, x)
        return out

    def join_all(self, xs: Iterable[str]) -> str:
        out = self.bottom
        for x in xs:
            out = self.join(out, x)
        return out

    # -- ambient ------------------------------------------------------------

    def _arr(self, a: str, b: str) -> Arrow:
        if (a, b) not in self._leq:
            raise TypeMismatch(f"{self.name}: no arrow {a} -> {b} ({a} <= {b} fails)")
        return Arrow(a, b)

    def objects(self):
        return list(self.elements)

    def hom(self, a, b):
        return [Arrow(a, b)] if (a, b) in self._leq else []

    def identity(self, x):
        if x not in self.elements:
            raise TypeMismatch(f"{self.name}: unknown element {x}")
        return Arrow(x, x)

    def compose(self, g, f):
        if f.tgt != g.src:
            raise TypeMismatch(f"cannot compose {g!r} after {f!r}")
        return self._arr(f.src, g.tgt)

    def arrow_label(self, f):
        return f"{f.src}<={f.tgt}"

    # -- closed structure ---------------------------------------------------

    @property
    def unit(self) -> str:
        return self._unit

    def tensor_obj(self, x, y):
        try:
            return self._tensor[(x, y)]
        except KeyError as exc:
            raise TypeMismatch(f"{self.name}: tensor undefined on ({x}, {y})") from exc

    def tensor_arr(self, f, g):
        return self._arr(self.tensor_obj(f.src, g.src), self.tensor_obj(f.tgt, g.tgt))

    def associator(self, x, y, z):
        return self._arr(self.tensor_obj(self.tensor_obj(x, y), z),
                         self.tensor_obj(x, self.tensor_obj(y, z)))

    def associator_inv(self, x, y, z):
        return self._arr(self.tensor_obj(x, self.tensor_obj(y, z)),
                         self.tensor_obj(self.tensor_obj(x, y), z))

    def left_unitor(self, x):
        return self._arr(self.tensor_obj(self._unit, x), x)

    def left_unitor_inv(self, x):
        return self._arr(x, self.tensor_obj(self._unit, x))

    def right_unitor(self, x):
        return self._arr(self.tensor_obj(x, self._unit), x)

    def right_unitor_inv(self, x):
        return self._arr(x, self.tensor_obj(x, self._unit))

    def symmetry(self, x, y):
        return self._arr(self.tensor_obj(x, y), self.tensor_obj(y, x))

    def exp_obj(self, y, z):
        try:
            return self._res[(y, z)]
        except KeyError as exc:
            raise TypeMismatch(f"{self.name}: residual undefined on ({y}, {z})") from exc

    def curry(self, f, x, y):
        if f.src != self.tensor_obj(x, y):
            raise TypeMismatch(f"curry: {f!r} does not start at {x} . {y}")
        return self._arr(x, self.exp_obj(y, f.tgt))

    def uncurry(self, g, y, z):
        if g.tgt != self.exp_obj(y, z):
            raise TypeMismatch(f"uncurry: {g!r} does not end at {z}^{y}")
        return self._arr(self.tensor_obj(g.src, y), z)

    def ev(self, y, z):
        return self._arr(self.tensor_obj(self.exp_obj(y, z), y), z)


# ---------------------------------------------------------------------------
# Construction and validation


def quantale_from_tables(name: str, elements: Sequence[str],
                         leq_pairs: Iterable[tuple[str, str]],
                         tensor: Mapping[tuple[str, str], str], unit: str,
                         cogenerators: str = "all") -> QuantaleInstance:
    """Validate poset, lattice, tensor, and residuation; raise with all violations.

    ``leq_pairs`` is the full order relation (reflexive pairs may be omitted);
    the residuation is always recomputed from the tensor, never supplied.
    """
    elems = tuple(sorted(dict.fromkeys(elements)))
    if len(elems) != len(list(elements)):
        raise NotALattice(name, ["duplicate element names"])
    eset = set(elems)
    leq = {(a, b) for a, b in leq_pairs}
    leq |= {(x, x) for x in elems}

    bad = [f"order mentions unknown element in ({a}, {b})"
           for a, b in sorted(leq) if a not in eset or b not in eset]
    if bad:
        raise NotALattice(name, bad)
    for a, b in sorted(leq):
        if (b, a) in leq and a != b:
            bad.append(f"antisymmetry fails on ({a}, {b})")
    for a, b in sorted(leq):
        for c in elems:
            if (b, c) in leq and (a, c) not in leq:
                bad.append(f"transitivity fails: {a} <= {b} <= {c} but not {a} <= {c}")
    if bad:
        raise NotALattice(name, bad)

    def glb(a: str, b: str) -> str | None:
        lows = [c for c in elems if (c, a) in leq and (c, b) in leq]
        for m in lows:
            if all((c, m) in leq for c in lows):
                return m
        return None

    def lub(a: str, b: str) -> str | None:
        ups = [c for c in elems if (a, c) in leq and (b, c) in leq]
        for j in ups:
            if all((j, c) in leq for c in ups):
                return j
        return None

    meet: dict[tuple[str, str], str] = {}
    join: dict[tuple[str, str], str] = {}
    for a in elems:
        for b in elems:
            m, j = glb(a, b), lub(a, b)
            if m is None:
                bad.append(f"no meet for ({a}, {b})")
            else:
                meet[(a, b)] = m
            if j is None:
                bad.append(f"no join for ({a}, {b})")
            else:
                join[(a, b)] = j
    if bad:
        raise NotALattice(name, bad)
    top = next(x for x in elems if all((c, x) in leq for c in elems))
    bottom = next(x for x in elems if all((x, c) in leq for c in elems))

    if unit not in eset:
        raise TensorNotMonotone(name, [f"unit {unit} is not an element"])
    for a in elems:
        for b in elems:
            v = tensor.get((a, b))
            if v is None:
                bad.append(f"tensor undefined on ({a}, {b})")
            elif v not in eset:
                bad.append(f"tensor({a}, {b}) = {v} is not an element")
    if bad:
        raise TensorNotMonotone(name, bad)
    for a in elems:
        if tensor[(a, unit)] != a:
            bad.append(f"unit law fails: {a} . {unit} = {tensor[(a, unit)]}")
        for b in elems:
            if tensor[(a, b)] != tensor[(b, a)]:
                bad.append(f"commutativity fails on ({a}, {b})")
            for c in elems:
                if tensor[(tensor[(a, b)], c)] != tensor[(a, tensor[(b, c)])]:
                    bad.append(f"associativity fails on ({a}, {b}, {c})")
    for a, b in sorted(leq):
        for c in elems:
            if (tensor[(a, c)], tensor[(b, c)]) not in leq:
                bad.append(f"monotonicity fails: {a} <= {b} but not {a}.{c} <= {b}.{c}")
    if bad:
        raise TensorNotMonotone(name, bad)

    res: dict[tuple[str, str], str] = {}
    for y in elems:
        for z in elems:
            below = [x for x in elems if (tensor[(x, y)], z) in leq]
            r = None
            for cand in below:
                if all((x, cand) in leq for x in below):
                    r = cand
                    break
            if r is None:
                bad.append(f"no residual for ({y}, {z}): "
                           f"{{x : x.{y} <= {z}}} has no greatest element")
            else:
                res[(y, z)] = r
    if bad:
        raise NoResiduation(name, bad)
    for x in elems:
        for y in elems:
            for z in elems:
                if ((tensor[(x, y)], z) in leq) != ((x, res[(y, z)]) in leq):
                    bad.append(f"adjunction fails on ({x}, {y}, {z})")
    if bad:
        raise NoResiduation(name, bad)

    return QuantaleInstance(name, elems, frozenset(leq), dict(tensor), unit,
                            meet, join, res, top, bottom, cogenerators=cogenerators)


# ---------------------------------------------------------------------------
# Generators


def chain_leq(names_in_order: Sequence[str]) -> set[tuple[str, str]]:
    return {(names_in_order[i], names_in_order[j])
            for i in range(len(names_in_order)) for j in range(i, len(names_in_order))}


def heyting_from_lattice(name: str, elements: Sequence[str],
                         leq_pairs: Iterable[tuple[str, str]],
                         cogenerators: str = "all") -> QuantaleInstance:
    """Meet as tensor, top as unit; residuation exists iff the lattice allows it."""
    return quantale_from_tables(name, elements, leq_pairs,
                                _meet_table(elements, leq_pairs),
                                _top_of(elements, leq_pairs), cogenerators=cogenerators)


def _top_of(elements: Sequence[str], leq_pairs: Iterable[tuple[str, str]]) -> str:
    leq = set(leq_pairs) | {(x, x) for x in elements}
    return next(x for x in elements if all((c, x) in leq for c in elements))


def _meet_table(elements: Sequence[str], leq_pairs: Iterable[tuple[str, str]]):
    leq = set(leq_pairs) | {(x, x) for x in elements}
    table = {}
    for a in elements:
        for b in elements:
            lows = [c for c in elements if (c, a) in leq and (c, b) in leq]
            for m in lows:
                if all((c, m) in leq for c in lows):
                    table[(a, b)] = m
                    break
    return table


def godel_chain(n: int, cogenerators: str = "all") -> QuantaleInstance:
    """n-element chain with meet (= min) as tensor."""
    assert n >= 2
    names = [f"c{i:02d}" for i in range(n)]
    tensor = {(names[i], names[j]): names[min(i, j)] for i in range(n) for j in range(n)}
    return quantale_from_tables(f"godel{n}", names, chain_leq(names), tensor,
                                names[-1], cogenerators=cogenerators)


def lukasiewicz_chain(n: int, cogenerators: str = "all") -> QuantaleInstance:
    """n equally spaced truth values with x . y = max(0, x + y - 1)."""
    assert n >= 2
    fracs = [Fraction(i, n - 1) for i in range(n)]
    names = [str(f) for f in fracs]
    leq = {(names[i], names[j]) for i in range(n) for j in range(i, n)}
    tensor = {}
    for i in range(n):
        for j in range(n):
            v = max(Fraction(0), fracs[i] + fracs[j] - 1)
            tensor[(names[i], names[j])] = names[fracs.index(v)]
    q = quantale_from_tables(f"lukasiewicz{n}", names, leq, tensor, "1",
                             cogenerators=cogenerators)
    assert q.top == "1" and q.bottom == "0"
    return q


def drastic_chain(n: int, cogenerators: str = "all") -> QuantaleInstance:
    """n-element chain where x . y collapses to bottom unless an argument is top."""
    assert n >= 2
    names = [f"c{i:02d}" for i in range(n)]
    tensor = {}
    for i in range(n):
        for j in range(n):
            if i == n - 1:
                v = j
            elif j == n - 1:
                v = i
            else:
                v = 0
            tensor[(names[i], names[j])] = names[v]
    return quantale_from_tables(f"drastic{n}", names, chain_leq(names), tensor,
                                names[-1], cogenerators=cogenerators)


def product_quantale(q1: QuantaleInstance, q2: QuantaleInstance,
                     name: str | None = None, cogenerators: str = "all") -> QuantaleInstance:
    name = name or f"{q1.name}x{q2.name}"
    pair = lambda a, b: f"({a},{b})"
    elems = [pair(a, b) for a in q1.elements for b in q2.elements]
    leq = {(pair(a, b), pair(c, d))
           for a in q1.elements for b in q2.elements
           for c in q1.elements for d in q2.elements
           if q1.leq_check(a, c) and q2.leq_check(b, d)}
    tensor = {(pair(a, b), pair(c, d)): pair(q1.tensor_obj(a, c), q2.tensor_obj(b, d))
              for a in q1.elements for b in q2.elements
              for c in q1.elements for d in q2.elements}
    return quantale_from_tables(name, elems, leq, tensor, pair(q1.unit, q2.unit),
                                cogenerators=cogenerators)


def powerset_quantale(name: str, monoid_elements: Sequence[str],
                      op: Mapping[tuple[str, str], str], monoid_unit: str,
                      cogenerators: str = "all") -> QuantaleInstance:
    """Subsets of a finite commutative monoid under inclusion and setwise product."""
    base = sorted(monoid_elements)
    subsets = []
    for mask in range(1 << len(base)):
        subsets.append(frozenset(base[i] for i in range(len(base)) if mask >> i & 1))
    label = lambda s: "{" + ",".join(sorted(s)) + "}"
    elems = [label(s) for s in subsets]
    leq = {(label(s), label(t)) for s in subsets for t in subsets if s <= t}
    tensor = {}
    for s in subsets:
        for t in subsets:
            tensor[(label(s), label(t))] = label(frozenset(op[(a, b)] for a in s for b in t))
    return quantale_from_tables(name, elems, leq, tensor,
                                label(frozenset([monoid_unit])), cogenerators=cogenerators)


def cyclic_monoid(n: int) -> tuple[list[str], dict, str]:
    elems = [f"g{i}" for i in range(n)]
    op = {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)}
    return elems, op, "g0"


_STANDARD_CACHE: dict[str, list[QuantaleInstance]] = {}


def standard_quantales(max_size: int = 16, cogenerators: str = "all") -> list[QuantaleInstance]:
    """A fixed battery of small quantales spanning several construction styles."""
    key = f"{max_size}:{cogenerators}"
    if key in _STANDARD_CACHE:
        return list(_STANDARD_CACHE[key])
    out: list[QuantaleInstance] = []
    g = {n: godel_chain(n, cogenerators) for n in range(2, 10)}
    l = {n: lukasiewicz_chain(n, cogenerators) for n in range(2, 10)}
    dr = {n: drastic_chain(n, cogenerators) for n in range(3, 11)}
    out.extend(g.values())
    out.extend(l.values())
    out.extend(dr.values())

    def prod(a, b):
        out.append(product_quantale(a, b, cogenerators=cogenerators))

    b2 = g[2]
    for n in range(3, 9):
        prod(b2, g[n])
    prod(b2, b2)
    cube8 = product_quantale(b2, product_quantale(b2, b2, cogenerators=cogenerators),
                             name="cube8", cogenerators=cogenerators)
    out.append(cube8)
    out.append(product_quantale(b2, cube8, name="cube16", cogenerators=cogenerators))
    prod(g[3], g[3])
    prod(g[3], g[4])
    prod(g[3], g[5])
    prod(g[4], g[4])
    prod(l[3], b2)
    prod(l[3], l[3])
    prod(l[4], b2)
    prod(l[3], g[3])
    prod(l[4], l[4])
    prod(l[5], b2)
    prod(l[4], g[3])
    prod(l[5], g[3])
    prod(l[3], g[4])
    prod(l[3], g[5])
    prod(dr[3], b2)
    prod(dr[3], g[3])
    prod(dr[3], dr[3])
    prod(l[3], dr[3])
    prod(dr[4], b2)
    prod(dr[4], g[3])

    mins3 = (["m0", "m1", "m2"],
             {(f"m{i}", f"m{j}"): f"m{min(i, j)}" for i in range(3) for j in range(3)}, "m2")
    bool_and = (["0", "1"], {("0", "0"): "0", ("0", "1"): "0",
                             ("1", "0"): "0", ("1", "1"): "1"}, "1")
    bool_or = (["0", "1"], {("0", "0"): "0", ("0", "1"): "1",
                            ("1", "0"): "1", ("1", "1"): "1"}, "0")
    mod4 = (["0", "1", "2", "3"],
            {(str(i), str(j)): str(i * j % 4) for i in range(4) for j in range(4)}, "1")
    v4 = (["e", "x", "y", "z"], None, "e")
    v4_op = {}
    mul = {("e", "e"): "e", ("e", "x"): "x", ("e", "y"): "y", ("e", "z"): "z",
           ("x", "x"): "e", ("x", "y"): "z", ("x", "z"): "y",
           ("y", "y"): "e", ("y", "z"): "x", ("z", "z"): "e"}
    for (a, b), c in list(mul.items()):
        v4_op[(a, b)] = c
        v4_op[(b, a)] = c
    monoids = [("pw-z1", *cyclic_monoid(1)), ("pw-z2", *cyclic_monoid(2)),
               ("pw-z3", *cyclic_monoid(3)), ("pw-z4", *cyclic_monoid(4)),
               ("pw-v4", v4[0], v4_op, "e"), ("pw-min3", *mins3),
               ("pw-and", *bool_and), ("pw-or", *bool_or), ("pw-mod4", *mod4)]
    for mname, elems, op, unit in monoids:
        out.append(powerset_quantale(mname, elems, op, unit, cogenerators=cogenerators))

    out = [q for q in out if len(q.elements) <= max_size]
    _STANDARD_CACHE[key] = out
    return list(out)
