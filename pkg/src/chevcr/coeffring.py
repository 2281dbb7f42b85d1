"""Coefficient rings of characteristic 2.

Two kinds of ring elements are used as coefficients of root elements:

* ``FieldElem`` -- an element of a finite field GF(2^m), stored as an int
  whose bits are the coefficients of a polynomial in the generator ``t``.
* ``SparsePoly`` -- a polynomial over GF(2) in named indeterminates, stored
  as the set of its monomials (every coefficient is 1).

Only characteristic 2 is supported. The whole toolkit relies on signs
disappearing (``-1 == 1``), so there is no generic prime-field layer.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple


class RingMismatch(TypeError):
    """Operands belong to different coefficient rings."""


class NotAPerfectSquare(ValueError):
    pass


class MissingVariable(KeyError):
    pass


# Conway polynomials over GF(2), bit i is the coefficient of x^i.
CONWAY_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1011011,
    7: 0b10000011,
    8: 0x11D,
    9: 0x211,
    10: 0x46F,
    11: 0x805,
    12: 0x10EB,
    13: 0x201B,
    14: 0x40A9,
    15: 0x8035,
    16: 0x1002D,
}


def _clmul(x: int, y: int) -> int:
    r = 0
    while y:
        if y & 1:
            r ^= x
        x <<= 1
        y >>= 1
    return r


def _reduce(x: int, modulus: int) -> int:
    deg = modulus.bit_length() - 1
    while x.bit_length() - 1 >= deg:
        x ^= modulus << (x.bit_length() - 1 - deg)
    return x


class GF2m:
    """The finite field GF(2^m) = GF(2)[t] / (modulus)."""

    def __init__(self, m: int, modulus: Optional[int] = None):
        if m < 1:
            raise ValueError("m must be positive")
        if modulus is None:
            if m not in CONWAY_MODULI:
                raise ValueError(f"no bundled modulus for m={m}; pass one explicitly")
            modulus = CONWAY_MODULI[m]
        if modulus.bit_length() - 1 != m:
            raise ValueError(f"modulus {modulus:#b} does not have degree {m}")
        self.m = m
        self.modulus = modulus
        self.order = 1 << m
        # log/antilog tables when the class of t generates the multiplicative group
        self._exp: Optional[list] = None
        self._log: Optional[list] = None
        if m <= 16:
            self._build_tables()

    def _build_tables(self) -> None:
        n = self.order - 1
        exp = [0] * (2 * n)
        log = [0] * self.order
        x = 1
        g = _reduce(0b10, self.modulus)
        for i in range(n):
            if i and x == 1:
                return  # t is not primitive; fall back to slow arithmetic
            exp[i] = x
            log[x] = i
            x = _reduce(_clmul(x, g), self.modulus)
        if x != 1:
            return
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp, self._log = exp, log

    # raw int arithmetic, used by FieldElem and by tight loops elsewhere
    def mul_int(self, x: int, y: int) -> int:
        if not x or not y:
            return 0
        if self._exp is not None:
            return self._exp[self._log[x] + self._log[y]]
        return _reduce(_clmul(x, y), self.modulus)

    def inv_int(self, x: int) -> int:
        if not x:
            raise ZeroDivisionError("inverse of zero in GF(2^m)")
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[x]) % (self.order - 1)]
        return self.pow_int(x, self.order - 2)

    def pow_int(self, x: int, e: int) -> int:
        if e < 0:
            return self.pow_int(self.inv_int(x), -e)
        r = 1
        while e:
            if e & 1:
                r = self.mul_int(r, x)
            x = self.mul_int(x, x)
            e >>= 1
        return r

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field != self:
                raise RingMismatch(f"{value!r} is not in {self!r}")
            return value
        if not isinstance(value, int) or value < 0 or value >= self.order:
            raise ValueError(f"{value!r} is not a valid element code for {self!r}")
        return FieldElem(self, value)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    @property
    def gen(self) -> "FieldElem":
        """The class of t."""
        return FieldElem(self, _reduce(0b10, self.modulus))

    def elements(self) -> Iterator["FieldElem"]:
        for v in range(self.order):
            yield FieldElem(self, v)

    def nonzero_elements(self) -> Iterator["FieldElem"]:
        for v in range(1, self.order):
            yield FieldElem(self, v)

    def is_irreducible_modulus(self) -> bool:
        """Brute-force check that no polynomial of degree 1..m/2 divides the modulus."""
        for d in range(2, 1 << (self.m // 2 + 1)):
            if _poly_mod(self.modulus, d) == 0:
                return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, GF2m) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self) -> int:
        return hash(("GF2m", self.m, self.modulus))

    def __repr__(self) -> str:
        return f"GF(2^{self.m})"


def _poly_mod(x: int, d: int) -> int:
    dd = d.bit_length()
    while x.bit_length() >= dd:
        x ^= d << (x.bit_length() - dd)
    return x


_FIELDS: Dict[str, GF2m] = {}


def field_by_name(name: str) -> GF2m:
    """Look up ``gf2``, ``gf4``, ``gf8``, ... (or ``GF(8)``)."""
    digits = re.sub(r"\D", "", name)
    if not digits:
        raise ValueError(f"cannot parse field name {name!r}")
    q = int(digits)
    m = q.bit_length() - 1
    if q < 2 or (1 << m) != q:
        raise ValueError(f"{name!r} is not a field of characteristic 2")
    if name not in _FIELDS:
        _FIELDS[name] = GF2m(m)
    return _FIELDS[name]


class FieldElem:
    __slots__ = ("field", "value")

    def __init__(self, field: GF2m, value: int):
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field != self.field:
                raise RingMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, int):
            return other & 1
        if isinstance(other, SparsePoly) and other.is_constant():
            # 0 and 1 live in every field
            return other.constant_term()
        raise RingMismatch(f"cannot combine {self.field!r} element with {type(other).__name__}")

    def __add__(self, other) -> "FieldElem":
        return FieldElem(self.field, self.value ^ self._coerce(other))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self) -> "FieldElem":
        return self

    def __mul__(self, other) -> "FieldElem":
        return FieldElem(self.field, self.field.mul_int(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "FieldElem":
        return FieldElem(self.field, self.field.pow_int(self.value, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv_int(self.value))

    def __truediv__(self, other) -> "FieldElem":
        return self * FieldElem(self.field, self._coerce(other)).inverse()

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other and other in (0, 1)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.m, self.value))

    def __str__(self) -> str:
        if self.value == 0:
            return "0"
        terms = []
        for i in range(self.field.m - 1, -1, -1):
            if self.value >> i & 1:
                terms.append("1" if i == 0 else ("t" if i == 1 else f"t^{i}"))
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"FieldElem({self.field!r}, {self})"


# --------------------------------------------------------------------------
# sparse polynomials over GF(2)

Monomial = Tuple[Tuple[str, int], ...]


@lru_cache(maxsize=None)
def var_key(name: str) -> tuple:
    """Natural sort key, so that b4 < b11 < b42."""
    return tuple((1, int(p), "") if p.isdigit() else (0, 0, p) for p in re.findall(r"\d+|\D+", name))


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda item: var_key(item[0])))


def _mono_key(mono: Monomial):
    # graded-lex, larger monomials first
    return (-sum(e for _, e in mono), tuple((var_key(v), -e) for v, e in mono))


def _mono_str(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)


class SparsePoly:
    """Polynomial over GF(2) in named indeterminates.

    The value is the frozenset of monomials with coefficient 1; addition is
    symmetric difference, so ``p + p == 0`` holds by construction.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[Monomial] = ()):
        self.terms = terms if isinstance(terms, frozenset) else frozenset(terms)
        self._hash = None

    @classmethod
    def var(cls, name: str) -> "SparsePoly":
        return cls(frozenset([((name, 1),)]))

    @classmethod
    def const(cls, c: int) -> "SparsePoly":
        return cls(frozenset([()])) if c & 1 else ZERO

    def _coerce(self, other) -> frozenset:
        if isinstance(other, SparsePoly):
            return other.terms
        if isinstance(other, int):
            return frozenset([()]) if other & 1 else frozenset()
        raise RingMismatch(f"cannot combine SparsePoly with {type(other).__name__}")

    def __add__(self, other) -> "SparsePoly":
        if isinstance(other, FieldElem) and self.is_constant():
            return other + self.constant_term()
        return SparsePoly(self.terms ^ self._coerce(other))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self) -> "SparsePoly":
        return self

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, FieldElem) and self.is_constant():
            return other * self.constant_term()
        oterms = self._coerce(other)
        if not self.terms or not oterms:
            return ZERO
        acc = set()
        for m1 in self.terms:
            for m2 in oterms:
                m = _mono_mul(m1, m2)
                if m in acc:
                    acc.remove(m)
                else:
                    acc.add(m)
        return SparsePoly(frozenset(acc))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "SparsePoly":
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base.frobenius()
        return result

    def frobenius(self) -> "SparsePoly":
        """p -> p^2, computed termwise (cross terms vanish in characteristic 2)."""
        return SparsePoly(frozenset(tuple((v, 2 * e) for v, e in m) for m in self.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == self._coerce(other) and other in (0, 1)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    # -- inspection
    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_term(self) -> int:
        return 1 if () in self.terms else 0

    def linear_variables(self) -> set:
        """Variables occurring in a degree-1 monomial."""
        return {m[0][0] for m in self.terms if len(m) == 1 and m[0][1] == 1}

    def nonlinear_variables(self) -> set:
        return {v for m in self.terms if sum(e for _, e in m) > 1 for v, _ in m}

    def is_linear(self) -> bool:
        """Affine-linear: every monomial has degree at most 1."""
        return self.degree() <= 1

    def sorted_terms(self) -> list:
        return sorted(self.terms, key=_mono_key)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(_mono_str(m) for m in self.sorted_terms())

    def __repr__(self) -> str:
        return f"SparsePoly({str(self)!r})"

    # -- transformations
    def substitute(self, assignment: Mapping[str, "SparsePoly"]) -> "SparsePoly":
        """Replace variables by polynomials; unassigned variables are kept."""
        if not assignment or not (self.variables() & assignment.keys()):
            return self
        result = ZERO
        for mono in self.terms:
            term = ONE
            rest = []
            for v, e in mono:
                if v in assignment:
                    term = term * (assignment[v] ** e)
                else:
                    rest.append((v, e))
            if rest:
                term = term * SparsePoly(frozenset([tuple(rest)]))
            result = result + term
        return result

    def evaluate(self, assignment: Mapping[str, object], field: Optional[GF2m] = None):
        return specialize(self, assignment, field)


ZERO = SparsePoly(frozenset())
ONE = SparsePoly(frozenset([()]))


def variables(names: str) -> Tuple[SparsePoly, ...]:
    """``a, b = variables("a b")``"""
    return tuple(SparsePoly.var(n) for n in names.replace(",", " ").split())


def sqrt_linearize(p: SparsePoly) -> SparsePoly:
    """Square root of a polynomial that is a square.

    Over GF(2) the Frobenius map is injective, so ``p`` is a square exactly
    when every exponent is even, and then the root is obtained by halving
    the exponents. For a sum of squares of linear forms this returns the
    (linear) sum of the forms.
    """
    roots = []
    for mono in p.terms:
        if any(e % 2 for _, e in mono):
            raise NotAPerfectSquare(f"{p} has the monomial {_mono_str(mono)} with an odd exponent")
        roots.append(tuple((v, e // 2) for v, e in mono))
    return SparsePoly(frozenset(roots))


def specialize(p: SparsePoly, assignment: Mapping[str, object], field: Optional[GF2m] = None):
    """Evaluate ``p`` at field values; every variable of ``p`` must be assigned."""
    if field is None:
        for value in assignment.values():
            if isinstance(value, FieldElem):
                field = value.field
                break
        else:
            raise ValueError("cannot infer the field from an empty assignment; pass field=")
    missing = p.variables() - assignment.keys()
    if missing:
        raise MissingVariable(", ".join(sorted(missing, key=var_key)))
    total = 0
    cache: Dict[str, int] = {}
    for mono in p.terms:
        t = 1
        for v, e in mono:
            if v not in cache:
                cache[v] = field(assignment[v]).value if isinstance(assignment[v], FieldElem) else field(assignment[v] & 1).value
            t = field.mul_int(t, field.pow_int(cache[v], e))
        total ^= t
    return FieldElem(field, total)


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9']*|\d+|[+*^()])")


def parse_poly(text: str) -> SparsePoly:
    """Parse the display grammar: ``+``-separated monomials, ``*`` products,
    ``^`` integer exponents, integer constants read mod 2. Parentheses are
    accepted around sub-sums."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character at {pos} in {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise ValueError("empty polynomial")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        pos += 1
        return tokens[pos - 1]

    def expr():
        p = term()
        while peek() == "+":
            take()
            p = p + term()
        return p

    def term():
        p = factor()
        while peek() == "*":
            take()
            p = p * factor()
        return p

    def factor():
        tok = take() if peek() is not None else None
        if tok is None:
            raise ValueError(f"unexpected end of input in {text!r}")
        if tok == "(":
            p = expr()
            if take() != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
        elif tok.isdigit():
            p = SparsePoly.const(int(tok))
        elif tok in "+*^)":
            raise ValueError(f"unexpected {tok!r} in {text!r}")
        else:
            p = SparsePoly.var(tok)
        if peek() == "^":
            take()
            e = take()
            if not e.isdigit():
                raise ValueError(f"exponent must be an integer in {text!r}")
            p = p ** int(e)
        return p

    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input {tokens[pos:]} in {text!r}")
    return result
