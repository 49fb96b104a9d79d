"""Finitely-presented categories, functors, diagrams, and the ambient-category interface.

Object and arrow ids are plain strings.  Arrow equality is equality of the
``Arrow`` dataclass, so every construction must produce arrows in canonical
form.  All enumerations are sorted to keep brute-force searches deterministic.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InputError, NonEnumerableAmbient, TypeMismatch, ValidationFailure


@dataclass(frozen=True)
class Arrow:
    """An ambient-category arrow with exact, hashable equality.

    ``data`` is the canonical payload: ``None`` for posetal order witnesses,
    the arrow id in a finitely-presented ambient, an image tuple for set maps.
    """

    src: str
    tgt: str
    data: object = None

    def __repr__(self) -> str:  # keep failure witnesses readable
        if self.data is None:
            return f"{self.src}->{self.tgt}"
        return f"{self.src}->{self.tgt}[{self.data!r}]"


# ---------------------------------------------------------------------------
# Finitely-presented categories


@dataclass(frozen=True, eq=True)
class FinCategory:
    """A finite category given by explicit tables.

    ``arrows`` maps arrow id to (src, tgt); ``composition`` maps the
    composable pair (g, f) with tgt(f) = src(g) to the id of g after f;
    ``identities`` maps each object to its identity arrow id.
    """

    objects: tuple[str, ...]
    arrows: Mapping[str, tuple[str, str]]
    composition: Mapping[tuple[str, str], str]
    identities: Mapping[str, str]

    def src(self, a: str) -> str:
        return self.arrows[a][0]

    def tgt(self, a: str) -> str:
        return self.arrows[a][1]

    def id_of(self, x: str) -> str:
        return self.identities[x]

    def is_identity_id(self, a: str) -> bool:
        return self.identities.get(self.src(a)) == a and self.src(a) == self.tgt(a)

    def compose_ids(self, g: str, f: str) -> str:
        if self.tgt(f) != self.src(g):
            raise TypeMismatch(f"cannot compose {g} after {f}: tgt({f})={self.tgt(f)} != src({g})={self.src(g)}")
        try:
            return self.composition[(g, f)]
        except KeyError as exc:
            raise TypeMismatch(f"composition gap ({g}, {f})") from exc

    def arrow_ids(self) -> list[str]:
        return sorted(self.arrows)

    def hom_ids(self, a: str, b: str) -> list[str]:
        return sorted(i for i, (s, t) in self.arrows.items() if s == a and t == b)

    def iso_pairs(self, a: str, b: str) -> list[tuple[str, str]]:
        """All (f, f_inv) with f: a -> b invertible."""
        pairs = []
        for f in self.hom_ids(a, b):
            for g in self.hom_ids(b, a):
                if self.composition.get((g, f)) == self.id_of(a) and self.composition.get((f, g)) == self.id_of(b):
                    pairs.append((f, g))
        return pairs


def category_violations(objects: Iterable[str],
                        arrows: Mapping[str, tuple[str, str]],
                        composition: Mapping[tuple[str, str], str],
                        identities: Mapping[str, str]) -> list[str]:
    """Every violated category law, each naming its witnesses."""
    objs = list(objects)
    out: list[str] = []
    obj_set = set(objs)
    if len(obj_set) != len(objs):
        out.append("duplicate object ids")
    for a, (s, t) in sorted(arrows.items()):
        if s not in obj_set:
            out.append(f"arrow {a} has unknown src {s}")
        if t not in obj_set:
            out.append(f"arrow {a} has unknown tgt {t}")
    for x in sorted(obj_set):
        i = identities.get(x)
        if i is None:
            out.append(f"missing identity for object {x}")
        elif i not in arrows:
            out.append(f"identity of {x} names unknown arrow {i}")
        elif arrows[i] != (x, x):
            out.append(f"identity {i} of {x} is not an endo-arrow of {x}")
    if out:
        return out  # referential integrity first; later scans assume it

    src = {a: st[0] for a, st in arrows.items()}
    tgt = {a: st[1] for a, st in arrows.items()}
    # composition must cover exactly the composable pairs, with correct endpoints
    for g in sorted(arrows):
        for f in sorted(arrows):
            composable = tgt[f] == src[g]
            entry = composition.get((g, f))
            if composable and entry is None:
                out.append(f"composition gap ({g}, {f})")
            elif not composable and entry is not None:
                out.append(f"composition entry for non-composable pair ({g}, {f})")
            elif composable:
                if entry not in arrows:
                    out.append(f"composite ({g}, {f}) names unknown arrow {entry}")
                elif (src[entry], tgt[entry]) != (src[f], tgt[g]):
                    out.append(f"composite {entry} of ({g}, {f}) has endpoints "
                               f"{src[entry]}->{tgt[entry]}, expected {src[f]}->{tgt[g]}")
    if out:
        return out

    for f in sorted(arrows):
        if composition[(identities[tgt[f]], f)] != f:
            out.append(f"identity law fails: id_{tgt[f]} after {f} != {f}")
        if composition[(f, identities[src[f]])] != f:
            out.append(f"identity law fails: {f} after id_{src[f]} != {f}")
    for h in sorted(arrows):
        for g in sorted(arrows):
            if tgt[g] != src[h]:
                continue
            for f in sorted(arrows):
                if tgt[f] != src[g]:
                    continue
                if composition[(h, composition[(g, f)])] != composition[(composition[(h, g)], f)]:
                    out.append(f"non-associative triple (h={h}, g={g}, f={f})")
    return out


def build_category(objects: Iterable[str],
                   arrows: Mapping[str, tuple[str, str]],
                   composition: Mapping[tuple[str, str], str],
                   identities: Mapping[str, str]) -> FinCategory:
    """Validate the tables and return the category, or raise with all violations."""
    violations = category_violations(objects, arrows, composition, identities)
    if violations:
        raise ValidationFailure("category", violations)
    return FinCategory(
        objects=tuple(sorted(objects)),
        arrows=dict(arrows),
        composition=dict(composition),
        identities=dict(identities),
    )


def validate_category(spec: Mapping) -> FinCategory:
    """Build a FinCategory from a parsed ``fincat`` document."""
    try:
        objects = [str(x) for x in spec["objects"]]
        arrows = {str(a): (str(s), str(t)) for a, s, t in spec["arrows"]}
        identities = {str(x): str(i) for x, i in spec["identities"].items()}
        composition = {(str(g), str(f)): str(r) for g, f, r in spec["composition"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed fincat document: {exc!r}") from exc
    if len(arrows) != len(spec["arrows"]):
        raise InputError("duplicate arrow ids in fincat document")
    return build_category(objects, arrows, composition, identities)


def opposite(cat: FinCategory) -> FinCategory:
    """Reverse all arrows; same ids, composition transposed.  An involution."""
    arrows = {a: (t, s) for a, (s, t) in cat.arrows.items()}
    composition = {(f, g): r for (g, f), r in cat.composition.items()}
    return FinCategory(objects=cat.objects, arrows=arrows,
                       composition=composition, identities=dict(cat.identities))


# -- small builders used across the engine ----------------------------------


def discrete_category(objects: Iterable[str]) -> FinCategory:
    objs = sorted(set(objects))
    arrows = {f"id:{x}": (x, x) for x in objs}
    identities = {x: f"id:{x}" for x in objs}
    composition = {(i, i): i for i in arrows}
    return build_category(objs, arrows, composition, identities)


def poset_category(elements: Iterable[str], leq: set[tuple[str, str]]) -> FinCategory:
    """Category of a finite poset; arrow ``le:a:b`` whenever a <= b."""
    objs = sorted(set(elements))
    arrows = {f"le:{a}:{b}": (a, b) for (a, b) in leq}
    for x in objs:
        arrows.setdefault(f"le:{x}:{x}", (x, x))
    identities = {x: f"le:{x}:{x}" for x in objs}
    composition = {}
    for g, (gs, gt) in arrows.items():
        for f, (fs, ft) in arrows.items():
            if ft == gs:
                composition[(g, f)] = f"le:{fs}:{gt}"
    return build_category(objs, arrows, composition, identities)


def chain_category(n: int) -> FinCategory:
    """The poset 0 < 1 < ... < n-1 as a category."""
    elems = [str(i) for i in range(n)]
    leq = {(str(i), str(j)) for i in range(n) for j in range(n) if i <= j}
    return poset_category(elems, leq)


def indiscrete_category(objects: Iterable[str]) -> FinCategory:
    """Chaotic category: exactly one arrow between every ordered pair."""
    objs = sorted(set(objects))
    arrows = {f"u:{a}:{b}": (a, b) for a in objs for b in objs}
    identities = {x: f"u:{x}:{x}" for x in objs}
    composition = {}
    for a in objs:
        for b in objs:
            for c in objs:
                composition[(f"u:{b}:{c}", f"u:{a}:{b}")] = f"u:{a}:{c}"
    return build_category(objs, arrows, composition, identities)


def parallel_pair_category() -> FinCategory:
    """Two objects i, j with a parallel pair f0, f1: i -> j."""
    arrows = {"id:i": ("i", "i"), "id:j": ("j", "j"), "f0": ("i", "j"), "f1": ("i", "j")}
    identities = {"i": "id:i", "j": "id:j"}
    composition = {}
    for a, (s, t) in arrows.items():
        composition[(a, identities[s])] = a
        composition[(identities[t], a)] = a
    composition[("id:i", "id:i")] = "id:i"
    composition[("id:j", "id:j")] = "id:j"
    return build_category(["i", "j"], arrows, composition, identities)


def span_category() -> FinCategory:
    """Three objects with legs i -> k and i -> l (the two-target span shape)."""
    arrows = {"id:i": ("i", "i"), "id:k": ("k", "k"), "id:l": ("l", "l"),
              "f": ("i", "k"), "g": ("i", "l")}
    identities = {"i": "id:i", "k": "id:k", "l": "id:l"}
    composition = {}
    for a, (s, t) in arrows.items():
        composition[(a, identities[s])] = a
        composition[(identities[t], a)] = a
    for x in ("i", "k", "l"):
        composition[(f"id:{x}", f"id:{x}")] = f"id:{x}"
    return build_category(["i", "k", "l"], arrows, composition, identities)


# ---------------------------------------------------------------------------
# Ambient categories


class Ambient(ABC):
    """A category with decidable arrow equality, possibly object-enumerable.

    ``objects()`` returns None when the ambient is not object-enumerable
    (the set-workspace fragment); every other method is total.
    """

    posetal: bool = False

    @abstractmethod
    def objects(self) -> list[str] | None: ...

    @abstractmethod
    def hom(self, a: str, b: str) -> list[Arrow]: ...

    @abstractmethod
    def identity(self, x: str) -> Arrow: ...

    @abstractmethod
    def compose(self, g: Arrow, f: Arrow) -> Arrow: ...

    def arrow_label(self, f: Arrow) -> str:
        """Deterministic printable id, unique among the ambient's arrows."""
        return f"{f.src}->{f.tgt}"

    def is_identity(self, f: Arrow) -> bool:
        return f.src == f.tgt and f == self.identity(f.src)

    def inverse(self, f: Arrow) -> Arrow | None:
        """Two-sided inverse found by hom-set scan, or None."""
        for g in self.hom(f.tgt, f.src):
            if self.compose(g, f) == self.identity(f.src) and self.compose(f, g) == self.identity(f.tgt):
                return g
        return None

    def all_arrows(self) -> list[Arrow]:
        objs = self.objects()
        if objs is None:
            raise NonEnumerableAmbient("ambient has no object enumeration")
        out = []
        for a in objs:
            for b in objs:
                out.extend(self.hom(a, b))
        return out

    def limit_data(self, diagram: "FunctorData"):
        """Hook for ambients with a direct limit construction; see finset."""
        return None


class FinCatAmbient(Ambient):
    """A validated FinCategory viewed as an ambient category."""

    def __init__(self, cat: FinCategory):
        self.cat = cat
        self._hom: dict[tuple[str, str], list[Arrow]] = {}
        for a, (s, t) in cat.arrows.items():
            self._hom.setdefault((s, t), []).append(Arrow(s, t, a))
        for arrows in self._hom.values():
            arrows.sort(key=lambda f: f.data)

    def objects(self):
        return list(self.cat.objects)

    def hom(self, a, b):
        return list(self._hom.get((a, b), []))

    def identity(self, x):
        return Arrow(x, x, self.cat.identities[x])

    def compose(self, g, f):
        return Arrow(f.src, g.tgt, self.cat.compose_ids(g.data, f.data))

    def arrow_label(self, f):
        return str(f.data)


class OppositeAmbient(Ambient):
    """Formal dual of an enumerable ambient; arrows keep their payloads."""

    def __init__(self, base: Ambient):
        self.base = base
        self.posetal = base.posetal

    @staticmethod
    def rev(f: Arrow) -> Arrow:
        return Arrow(f.tgt, f.src, f.data)

    def objects(self):
        return self.base.objects()

    def hom(self, a, b):
        return [self.rev(f) for f in self.base.hom(b, a)]

    def identity(self, x):
        return self.rev(self.base.identity(x))

    def compose(self, g, f):
        return self.rev(self.base.compose(self.rev(f), self.rev(g)))

    def arrow_label(self, f):
        return self.base.arrow_label(self.rev(f))


# ---------------------------------------------------------------------------
# Functors and diagrams


@dataclass(frozen=True)
class FunctorData:
    """A functor from a finite shape into an ambient category.

    ``ob`` maps shape objects to ambient objects, ``ar`` maps shape arrow
    ids to ambient arrows.  A Diagram is exactly such a functor.
    """

    source: FinCategory
    target: Ambient = field(compare=False)
    ob: Mapping[str, str] = field(default_factory=dict)
    ar: Mapping[str, Arrow] = field(default_factory=dict)

    @property
    def shape(self) -> FinCategory:
        return self.source


Diagram = FunctorData


def functor_violations(F: FunctorData) -> list[str]:
    """Exhaustive functor-law scan; each violation names the offending arrows."""
    cat, amb = F.source, F.target
    out: list[str] = []
    for x in cat.objects:
        if x not in F.ob:
            out.append(f"object {x} has no image")
    for a in cat.arrow_ids():
        if a not in F.ar:
            out.append(f"arrow {a} has no image")
    if out:
        return out
    for a in cat.arrow_ids():
        img = F.ar[a]
        if img.src != F.ob[cat.src(a)] or img.tgt != F.ob[cat.tgt(a)]:
            out.append(f"arrow {a}: image {img!r} does not match object images "
                       f"{F.ob[cat.src(a)]}->{F.ob[cat.tgt(a)]}")
    if out:
        return out
    for x in cat.objects:
        if F.ar[cat.id_of(x)] != amb.identity(F.ob[x]):
            out.append(f"identity of {x} not preserved")
    for (g, f), r in cat.composition.items():
        if F.ar[r] != amb.compose(F.ar[g], F.ar[f]):
            out.append(f"composition not preserved on pair (g={g}, f={f})")
    return out


def validate_functor(F: FunctorData) -> FunctorData:
    violations = functor_violations(F)
    if violations:
        raise ValidationFailure("functor", violations)
    return F


def fin_functor(source: FinCategory, target: FinCategory,
                ob: Mapping[str, str], ar_ids: Mapping[str, str]) -> FunctorData:
    """Functor between finite shapes, with arrow images given by id."""
    amb = FinCatAmbient(target)
    ar = {a: Arrow(target.src(i), target.tgt(i), i) for a, i in ar_ids.items()}
    return validate_functor(FunctorData(source=source, target=amb, ob=dict(ob), ar=ar))


def constant_diagram(shape: FinCategory, ambient: Ambient, obj: str) -> Diagram:
    ident = ambient.identity(obj)
    return FunctorData(source=shape, target=ambient,
                       ob={x: obj for x in shape.objects},
                       ar={a: ident for a in shape.arrow_ids()})


def diagram_on_elements(ambient: Ambient, elements: Iterable[str]) -> Diagram:
    """Discrete diagram picking out the given ambient objects."""
    elems = list(elements)
    shape = discrete_category([f"n{k}" for k in range(len(elems))])
    ob = {f"n{k}": e for k, e in enumerate(elems)}
    ar = {f"id:n{k}": ambient.identity(e) for k, e in enumerate(elems)}
    return FunctorData(source=shape, target=ambient, ob=ob, ar=ar)


def opposite_diagram(d: Diagram) -> Diagram:
    """The same functor viewed C^op-wards: reversed shape, reversed arrows."""
    amb = OppositeAmbient(d.target)
    return FunctorData(source=opposite(d.shape), target=amb,
                       ob=dict(d.ob),
                       ar={a: OppositeAmbient.rev(f) for a, f in d.ar.items()})
