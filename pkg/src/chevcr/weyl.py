"""Weyl words, their permutation action on signed root labels, orbits and
closures of finitely generated permutation groups."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .rootsys import RootSystem, simple_root


class UnknownLetter(KeyError):
    pass


class DomainNotStable(ValueError):
    def __init__(self, label, image):
        super().__init__(f"label {label} is sent to {image}, outside the domain")
        self.label = label
        self.image = image


class OrderBound(RuntimeError):
    pass


@dataclass(frozen=True)
class WeylWord:
    """A word n_{x1} n_{x2} ... n_{xk} in simple reflections.

    As an operator it acts right to left: the last letter is applied first.
    In characteristic 2 every n_x is an involution, so the inverse of a word
    is the reversed word.
    """

    letters: Tuple[str, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "WeylWord":
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(x for x in re.split(r"[,\s*]+", text) if x))

    def __mul__(self, other: "WeylWord") -> "WeylWord":
        return WeylWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "WeylWord":
        if k < 0:
            return self.inverse() ** (-k)
        return WeylWord(self.letters * k)

    def inverse(self) -> "WeylWord":
        return WeylWord(tuple(reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(f"n_{x}" for x in self.letters) if self.letters else "1"


class RootPermutation:
    """A permutation of the signed labels of a root system commuting with negation."""

    __slots__ = ("system", "_img", "_key")

    def __init__(self, system: RootSystem, images: Mapping[int, int]):
        self.system = system
        self._img: Dict[int, int] = dict(images)
        for x in list(self._img):
            self._img.setdefault(-x, -self._img[x])
        self._key = tuple(self._img[x] for x in system.positive_labels)

    @classmethod
    def identity(cls, system: RootSystem) -> "RootPermutation":
        return cls(system, {x: x for x in system.positive_labels})

    def __call__(self, label: int) -> int:
        return self._img[label]

    @property
    def images(self) -> Dict[int, int]:
        return dict(self._img)

    def __mul__(self, other: "RootPermutation") -> "RootPermutation":
        """Composition: (p * q)(x) = p(q(x))."""
        return RootPermutation(self.system, {x: self._img[other._img[x]] for x in self.system.positive_labels})

    def inverse(self) -> "RootPermutation":
        return RootPermutation(self.system, {y: x for x, y in self._img.items() if y > 0})

    def __pow__(self, k: int) -> "RootPermutation":
        base = self if k >= 0 else self.inverse()
        result = RootPermutation.identity(self.system)
        for _ in range(abs(k)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(self._img[x] == x for x in self.system.positive_labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootPermutation) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def stabilizes(self, domain: Iterable[int]) -> bool:
        domain = set(domain)
        return all(self._img[x] in domain for x in domain)

    def check_stable(self, domain: Iterable[int]) -> None:
        domain = set(domain)
        for x in sorted(domain):
            if self._img[x] not in domain:
                raise DomainNotStable(x, self._img[x])

    def restrict(self, domain: Iterable[int]) -> Dict[int, int]:
        domain = sorted(domain)
        self.check_stable(domain)
        return {x: self._img[x] for x in domain}

    def cycles(self, domain: Optional[Iterable[int]] = None) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest label, sorted.
        The default domain is every signed label."""
        mapping = self.restrict(domain if domain is not None else self.system.all_labels)
        seen, out = set(), []
        for x in sorted(mapping):
            if x in seen or mapping[x] == x:
                continue
            cyc = [x]
            seen.add(x)
            y = mapping[x]
            while y != x:
                cyc.append(y)
                seen.add(y)
                y = mapping[y]
            out.append(tuple(cyc))
        return out

    def cycle_string(self, domain: Optional[Iterable[int]] = None) -> str:
        cyc = self.cycles(domain)
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) if cyc else "()"

    def order(self) -> int:
        from math import lcm
        result = 1
        for c in self.cycles():
            result = lcm(result, len(c))
        return result

    def preserves_pairing(self) -> bool:
        labs = self.system.all_labels
        return all(self.system.pairing(self._img[x], self._img[y]) == self.system.pairing(x, y)
                   for x in labs for y in labs if x <= y)

    def __repr__(self) -> str:
        return f"RootPermutation({self.cycle_string()})"


def parse_cycles(text: str) -> List[Tuple[int, ...]]:
    """``"(1 2)(3 6)"`` -> ``[(1, 2), (3, 6)]``"""
    return [tuple(int(x) for x in grp.replace(",", " ").split()) for grp in re.findall(r"\(([^()]*)\)", text)
            if grp.strip()]


def permutation_from_cycles(system: RootSystem, text: str) -> RootPermutation:
    """Build a permutation from cycle notation; unlisted labels are fixed."""
    images = {x: x for x in system.positive_labels}
    for cyc in parse_cycles(text):
        for i, x in enumerate(cyc):
            images[x] = cyc[(i + 1) % len(cyc)]
    return RootPermutation(system, images)


def simple_reflection(system: RootSystem, letter: str) -> RootPermutation:
    cache = system._cache.setdefault("simple_reflections", {})
    try:
        i = system.datum.index(letter)
    except KeyError:
        raise UnknownLetter(f"{letter!r} does not name a simple root of rank-{system.rank} datum") from None
    if i not in cache:
        by = system.label(simple_root(system.datum, i))
        cache[i] = RootPermutation(system, {x: system.reflect_label(x, by) for x in system.positive_labels})
    return cache[i]


def word_to_permutation(word: Union[WeylWord, str], system: RootSystem) -> RootPermutation:
    if isinstance(word, str):
        word = WeylWord.parse(word)
    perm = RootPermutation.identity(system)
    for letter in word.letters:
        perm = perm * simple_reflection(system, letter)
    return perm


# --------------------------------------------------------------------------
# orbits

class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            # smaller label becomes the representative
            if y < x:
                x, y = y, x
            self.parent[y] = x


@dataclass(frozen=True)
class OrbitPartition:
    orbits: Tuple[Tuple[int, ...], ...]

    @property
    def keys(self) -> List[int]:
        return [o[0] for o in self.orbits]

    def orbit_of(self, label: int) -> Tuple[int, ...]:
        for o in self.orbits:
            if label in o:
                return o
        raise KeyError(label)

    def as_dict(self) -> Dict[int, Tuple[int, ...]]:
        return {o[0]: o for o in self.orbits}

    def sizes(self) -> List[int]:
        return [len(o) for o in self.orbits]

    def __len__(self) -> int:
        return len(self.orbits)


def orbits(generators: Iterable[RootPermutation], domain: Iterable[int]) -> OrbitPartition:
    domain = sorted(set(domain))
    gens = list(generators)
    for g in gens:
        g.check_stable(domain)
    uf = UnionFind(domain)
    for g in gens:
        for x in domain:
            uf.union(x, g(x))
    groups: Dict[int, List[int]] = {}
    for x in domain:
        groups.setdefault(uf.find(x), []).append(x)
    return OrbitPartition(tuple(tuple(sorted(g)) for _, g in sorted(groups.items())))


# --------------------------------------------------------------------------
# closure

@dataclass
class GroupDescription:
    generators: Dict[str, RootPermutation]
    elements: List[RootPermutation]

    @property
    def order(self) -> int:
        return len(self.elements)

    def evaluate(self, expr: str) -> RootPermutation:
        """Evaluate a product like ``"q1*q2^-1*q1"`` of named generators."""
        system = next(iter(self.generators.values())).system
        result = RootPermutation.identity(system)
        for tok in re.split(r"[\s*]+", expr.strip()):
            if not tok or tok == "1":
                continue
            m = re.fullmatch(r"([A-Za-z_]\w*)(?:\^(-?\d+))?", tok)
            if not m or m.group(1) not in self.generators:
                raise KeyError(f"bad factor {tok!r}")
            result = result * (self.generators[m.group(1)] ** int(m.group(2) or 1))
        return result

    def holds(self, relation: str) -> bool:
        """``"lhs = rhs"``, or ``"word"`` meaning word = 1."""
        lhs, _, rhs = relation.partition("=")
        return self.evaluate(lhs) == self.evaluate(rhs or "1")

    def check_relations(self, relations: Sequence[str]) -> Dict[str, bool]:
        return {r: self.holds(r) for r in relations}


def group_closure(generators: Union[Mapping[str, RootPermutation], Sequence[RootPermutation]],
                  max_order: int = 100_000) -> GroupDescription:
    if not isinstance(generators, Mapping):
        generators = {f"g{i}": g for i, g in enumerate(generators)}
    gens = list(generators.values())
    if not gens:
        raise ValueError("need at least one generator")
    systems = {id(g.system) for g in gens}
    if len(systems) != 1:
        raise ValueError("generators act on different root systems")
    ident = RootPermutation.identity(gens[0].system)
    elements = [ident]
    seen = {ident}
    i = 0
    while i < len(elements):
        x = elements[i]
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if len(elements) > max_order:
                    raise OrderBound(f"group order exceeds {max_order}")
        i += 1
    return GroupDescription(dict(generators), elements)
