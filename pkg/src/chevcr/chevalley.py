"""Unipotent radical elements as normal-ordered products of root elements.

An element of R_u(P) is stored as the map ``label -> coefficient`` of its
unique expression prod_i eps_i(b_i), the product taken in ascending label
order. Products are brought back to this form by collection with the
commutator rule

    eps_x(a) eps_y(b) = eps_y(b) eps_x(a) eps_{x+y}(ab)    if x + y is a root,

and plain exchange otherwise. This is the characteristic-2 form of the
rule for simply-laced types: every structure constant is +-1, hence 1.
Coefficients may be ``SparsePoly`` or ``FieldElem`` values.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .coeffring import ONE, ZERO, SparsePoly
from .parabolic import NotInParabolic, ParabolicDecomposition
from .weyl import RootPermutation, WeylWord, word_to_permutation


class ContextMismatch(ValueError):
    pass


Factor = Tuple[int, object]


def _coerce(c):
    if isinstance(c, int):
        return ONE if c & 1 else ZERO
    return c


def collect(context: ParabolicDecomposition, word: Iterable[Factor]) -> Dict[int, object]:
    """Normal form of the product of root elements ``word`` (left to right)."""
    pos = context.position
    result: List[list] = []
    stack = [(lab, _coerce(c)) for lab, c in word][::-1]
    for lab, _ in stack:
        if lab not in pos:
            raise NotInParabolic(f"label {lab} is not in the radical support")
    while stack:
        lab, c = stack.pop()
        if not c:
            continue
        p = pos[lab]
        tail = []
        while result and pos[result[-1][0]] > p:
            tail.append(result.pop())
        if result and result[-1][0] == lab:
            s = result[-1][1] + c
            if s:
                result[-1][1] = s
            else:
                result.pop()
        else:
            result.append([lab, c])
        if tail:
            # T1..Tk eps_r(c) = eps_r(c) T1 C1 T2 C2 ... Tk Ck with Ci = eps_{li+r}(ni c)
            pending = []
            for l, n in reversed(tail):
                pending.append((l, n))
                s = context.add(l, lab)
                if s is not None:
                    pending.append((s, n * c))
            stack.extend(reversed(pending))
    return {lab: c for lab, c in result}


class UnipotentElement:
    """prod eps_i(coeffs[i]) over the radical support of ``context``, ascending."""

    __slots__ = ("context", "coeffs")

    def __init__(self, context: ParabolicDecomposition, coeffs: Optional[Mapping[int, object]] = None):
        self.context = context
        clean = {}
        for lab, c in (coeffs or {}).items():
            c = _coerce(c)
            if lab not in context.position:
                raise NotInParabolic(f"label {lab} is not in the radical support")
            if c:
                clean[lab] = c
        self.coeffs: Dict[int, object] = dict(sorted(clean.items(), key=lambda kv: context.position[kv[0]]))

    @classmethod
    def identity(cls, context: ParabolicDecomposition) -> "UnipotentElement":
        return cls(context, {})

    @classmethod
    def from_factors(cls, context: ParabolicDecomposition, factors: Iterable[Factor]) -> "UnipotentElement":
        return cls(context, collect(context, factors))

    @classmethod
    def root_element(cls, context: ParabolicDecomposition, label: int, c) -> "UnipotentElement":
        return cls(context, {label: c})

    @classmethod
    def generic(cls, context: ParabolicDecomposition, prefix: str = "b",
                support: Optional[Iterable[int]] = None) -> "UnipotentElement":
        """prod eps_i(b_i) with one indeterminate per label of ``support``."""
        labels = context.radical_labels if support is None else sorted(support)
        return cls(context, {x: SparsePoly.var(f"{prefix}{x}" if x > 0 else f"{prefix}m{-x}") for x in labels})

    def coeff(self, label: int):
        return self.coeffs.get(label, ZERO)

    @property
    def support(self) -> List[int]:
        return list(self.coeffs)

    def factors(self) -> List[Factor]:
        return list(self.coeffs.items())

    def _check(self, other: "UnipotentElement") -> None:
        if other.context is not self.context:
            raise ContextMismatch("elements live in different parabolic contexts")

    def __mul__(self, other: "UnipotentElement") -> "UnipotentElement":
        return collect_product(self, other)

    def inverse(self) -> "UnipotentElement":
        return invert(self)

    def is_identity(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnipotentElement):
            return NotImplemented
        return self.context is other.context and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs.items()))

    def map_coeffs(self, fn) -> "UnipotentElement":
        return UnipotentElement(self.context, {x: fn(c) for x, c in self.coeffs.items()})

    def __str__(self) -> str:
        if not self.coeffs:
            return "1"
        return "*".join(f"e{x}({c})" for x, c in self.coeffs.items())

    def __repr__(self) -> str:
        return f"UnipotentElement({self})"

    def to_json(self) -> Dict[str, str]:
        return {str(x): str(c) for x, c in self.coeffs.items()}


def collect_product(left: UnipotentElement, right: UnipotentElement) -> UnipotentElement:
    left._check(right)
    if not right.coeffs:
        return left
    if not left.coeffs:
        return right
    return UnipotentElement(left.context, collect(left.context, left.factors() + right.factors()))


def invert(u: UnipotentElement) -> UnipotentElement:
    # (prod eps_i(b_i))^-1 = reversed prod eps_i(-b_i), and -b = b
    return UnipotentElement(u.context, collect(u.context, reversed(u.factors())))


def _as_permutation(w: Union[WeylWord, RootPermutation, str], context: ParabolicDecomposition) -> RootPermutation:
    if isinstance(w, RootPermutation):
        return w
    if isinstance(w, str):
        w = WeylWord.parse(w)
    cache = context.system._cache.setdefault("word_perms", {})
    if w.letters not in cache:
        cache[w.letters] = word_to_permutation(w, context.system)
    return cache[w.letters]


def conjugate_by_word(w: Union[WeylWord, RootPermutation, str], u: UnipotentElement) -> UnipotentElement:
    """w u w^-1, using n eps_z(a) n^-1 = eps_{n.z}(a), then re-collecting."""
    perm = _as_permutation(w, u.context)
    perm.check_stable(u.context.radical_labels)
    return UnipotentElement(u.context, collect(u.context, [(perm(x), c) for x, c in u.coeffs.items()]))


class MixedElement:
    """The product w * u of a Levi Weyl word and a radical element."""

    __slots__ = ("weyl", "unip", "_perm")

    def __init__(self, weyl: Union[WeylWord, str], unip: Optional[UnipotentElement] = None,
                 context: Optional[ParabolicDecomposition] = None):
        if isinstance(weyl, str):
            weyl = WeylWord.parse(weyl)
        if unip is None:
            if context is None:
                raise ValueError("need a context or a unipotent part")
            unip = UnipotentElement.identity(context)
        for letter in weyl.letters:
            if not unip.context.is_levi_letter(letter):
                raise NotInParabolic(f"letter {letter!r} is not a Levi simple root")
        self.weyl = weyl
        self.unip = unip
        self._perm = _as_permutation(weyl, unip.context)

    @property
    def context(self) -> ParabolicDecomposition:
        return self.unip.context

    @property
    def permutation(self) -> RootPermutation:
        return self._perm

    def __mul__(self, other: "MixedElement") -> "MixedElement":
        return mixed_multiply(self, other)

    def inverse(self) -> "MixedElement":
        # (w u)^-1 = u^-1 w^-1 = w^-1 (w u^-1 w^-1)
        return MixedElement(self.weyl.inverse(), conjugate_by_word(self._perm, invert(self.unip)))

    def conjugate(self, g: "MixedElement") -> "MixedElement":
        """g * self * g^-1"""
        return g * self * g.inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixedElement):
            return NotImplemented
        return self._perm == other._perm and self.unip == other.unip

    def __hash__(self) -> int:
        return hash((self._perm, self.unip))

    def __str__(self) -> str:
        w = " ".join(self.weyl.letters) if self.weyl.letters else ""
        if self.unip.is_identity():
            return f"[{w}]" if w else "1"
        return f"[{w}] {self.unip}" if w else str(self.unip)

    def __repr__(self) -> str:
        return f"MixedElement({self})"


def mixed_multiply(x: MixedElement, y: MixedElement) -> MixedElement:
    """(w1, u1)(w2, u2) = (w1 w2, (w2^-1 u1 w2) u2)"""
    if x.context is not y.context:
        raise ContextMismatch("elements live in different parabolic contexts")
    moved = conjugate_by_word(y.permutation.inverse(), x.unip)
    return MixedElement(x.weyl * y.weyl, collect_product(moved, y.unip))


def levi(word: Union[WeylWord, str], context: ParabolicDecomposition) -> MixedElement:
    return MixedElement(word, context=context)


def radical(u: UnipotentElement) -> MixedElement:
    return MixedElement(WeylWord(), u)


def center_of_radical(context: ParabolicDecomposition) -> List[int]:
    """Labels z such that z + x is not a root for any x in the radical."""
    labels = context.radical_labels
    return [z for z in labels if all(context.add(z, x) is None for x in labels)]
