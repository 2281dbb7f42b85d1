"""Small modular representations: permutation modules, submodule spinning,
and direct-sum decomposition over GF(2^m).

Vectors are rows and a group element g acts by v -> v g. The splitting
strategy is Fitting's lemma: for an endomorphism X of a module W,
W = im(X^d) + ker(X^d) is a decomposition into submodules. Endomorphisms
are found by solving X A_g = A_g X.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence

from . import linalg
from .coeffring import GF2m
from .linalg import Matrix


class FieldTooSmall(ValueError):
    """An irreducible summand does not stay irreducible over a field extension."""


@dataclass
class MatRep:
    field: GF2m
    dim: int
    generators: Dict[str, Matrix]

    def __post_init__(self):
        for name, g in self.generators.items():
            if len(g) != self.dim or any(len(r) != self.dim for r in g):
                raise ValueError(f"generator {name} is not {self.dim}x{self.dim}")
            if linalg.rank(self.field, g) != self.dim:
                raise ValueError(f"generator {name} is singular")

    def act(self, v: Sequence[int], name: str) -> List[int]:
        return linalg.vecmat(self.field, v, self.generators[name])


@dataclass
class Submodule:
    rep: MatRep
    basis: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        return linalg.in_span(self.rep.field, self.basis, v) if self.basis else not any(v)

    def is_stable(self) -> bool:
        return all(self.contains(self.rep.act(b, g)) for b in self.basis for g in self.rep.generators)

    def action(self) -> MatRep:
        """The representation on this submodule in the coordinates of ``basis``."""
        F = self.rep.field
        pivots = linalg.row_reduce(F, self.basis)[1]
        # coordinates w.r.t. the RREF basis are read off the pivot columns
        to_rref = [[row[p] for p in pivots] for row in self.basis]
        from_rref = linalg.inverse(F, to_rref)
        gens = {}
        for name, g in self.rep.generators.items():
            img = linalg.matmul(F, self.basis, g)
            coords_rref = [[row[p] for p in pivots] for row in img]
            gens[name] = linalg.matmul(F, coords_rref, from_rref)
        return MatRep(F, self.dim, gens)

    def embed(self, coords: Matrix) -> Matrix:
        return linalg.matmul(self.rep.field, coords, self.basis) if coords else []


def permutation_module(perms: Mapping[str, Mapping[int, int]], field_: GF2m,
                       points: Optional[Sequence[int]] = None) -> MatRep:
    """e_i g = e_{g(i)} on the given points (sorted union of the domains by default)."""
    if points is None:
        points = sorted(set().union(*(p.keys() for p in perms.values()))) if perms else []
    idx = {x: i for i, x in enumerate(points)}
    n = len(points)
    gens = {}
    for name, p in perms.items():
        M = [[0] * n for _ in range(n)]
        for x in points:
            M[idx[x]][idx[p.get(x, x)]] = 1
        gens[name] = M
    return MatRep(field_, n, gens)


def spin(vectors: Sequence[Sequence[int]], rep: MatRep) -> Submodule:
    """Smallest submodule containing ``vectors``."""
    F = rep.field
    basis, _ = linalg.row_reduce(F, [list(v) for v in vectors if any(v)])
    queue = list(basis)
    while queue:
        v = queue.pop()
        for g in rep.generators:
            w = rep.act(v, g)
            new = not linalg.in_span(F, basis, w) if basis else any(w)
            if new:
                basis, _ = linalg.row_reduce(F, basis + [w])
                queue.append(w)
    return Submodule(rep, basis)


def endomorphisms(rep: MatRep) -> List[Matrix]:
    """Basis of {X : X A_g = A_g X for every generator}."""
    F, d = rep.field, rep.dim
    rows = []
    for A in rep.generators.values():
        for i in range(d):
            for j in range(d):
                row = [0] * (d * d)
                for k in range(d):
                    row[i * d + k] ^= A[k][j]       # (X A)_{ij}
                    row[k * d + j] ^= A[i][k]       # (A X)_{ij}
                rows.append(row)
    if not rows:
        basis = linalg.identity(d * d)
    else:
        basis = linalg.nullspace(F, rows)
    return [[vec[i * d:(i + 1) * d] for i in range(d)] for vec in basis]


def homomorphism_dimension(a: MatRep, b: MatRep) -> int:
    """dim Hom(a, b) for modules with the same generator names."""
    F = a.field
    m, n = a.dim, b.dim
    rows = []
    for name, A in a.generators.items():
        B = b.generators[name]
        # X is m x n; A X = X B
        for i in range(m):
            for j in range(n):
                row = [0] * (m * n)
                for k in range(m):
                    row[k * n + j] ^= A[i][k]
                for k in range(n):
                    row[i * n + k] ^= B[k][j]
                rows.append(row)
    return m * n - (linalg.rank(F, rows) if rows else 0)


def is_irreducible(rep: MatRep) -> bool:
    """Every nonzero vector spins to the whole module (exhaustive)."""
    if rep.dim <= 1:
        return rep.dim == 1
    F = rep.field
    seen: set = set()
    for vec in itertools.product(range(F.order), repeat=rep.dim):
        if not any(vec):
            continue
        # normalize to first nonzero entry 1
        lead = next(x for x in vec if x)
        inv = F.inv_int(lead)
        key = tuple(F.mul_int(inv, x) for x in vec)
        if key in seen:
            continue
        seen.add(key)
        if spin([list(key)], rep).dim < rep.dim:
            return False
    return True


def _fitting_split(F: GF2m, X: Matrix, d: int):
    Y = linalg.power(F, X, d)
    r = linalg.rank(F, Y)
    if 0 < r < d:
        image = linalg.row_reduce(F, Y)[0]
        kernel = linalg.left_nullspace(F, Y)
        return image, kernel
    return None


def _local_exhaustive(F: GF2m, endo: List[Matrix], d: int, bound: int) -> Optional[bool]:
    if F.order ** len(endo) > bound:
        return None
    for coeffs in itertools.product(range(F.order), repeat=len(endo)):
        X = [[0] * d for _ in range(d)]
        for c, E in zip(coeffs, endo):
            if c:
                X = linalg.add(X, linalg.scale(F, c, E))
        r = linalg.rank(F, X)
        if 0 < r < d and _fitting_split(F, X, d):
            return False
    return True


@dataclass
class Summand:
    submodule: Submodule
    irreducible: bool
    endomorphism_dim: int
    indecomposable_certified: bool

    @property
    def dim(self) -> int:
        return self.submodule.dim

    @property
    def absolutely_irreducible(self) -> bool:
        return self.irreducible and self.endomorphism_dim == 1


@dataclass
class Decomposition:
    rep: MatRep
    summands: List[Summand]

    @property
    def dims(self) -> List[int]:
        return [s.dim for s in self.summands]

    @property
    def all_irreducible(self) -> bool:
        return all(s.irreducible for s in self.summands)

    def is_direct_sum(self) -> bool:
        rows = [r for s in self.summands for r in s.submodule.basis]
        return len(rows) == self.rep.dim and linalg.rank(self.rep.field, rows) == self.rep.dim

    def pairwise_nonisomorphic(self, dim: Optional[int] = None) -> bool:
        parts = [s for s in self.summands if dim is None or s.dim == dim]
        acts = [s.submodule.action() for s in parts]
        for i in range(len(acts)):
            for j in range(i + 1, len(acts)):
                if acts[i].dim == acts[j].dim and homomorphism_dimension(acts[i], acts[j]):
                    if parts[i].irreducible and parts[j].irreducible:
                        return False
        return True

    def to_json(self) -> dict:
        return {
            "field": f"GF({self.rep.field.order})",
            "dim": self.rep.dim,
            "dims": self.dims,
            "irreducible": [s.irreducible for s in self.summands],
            "completely_reducible": self.all_irreducible,
            "bases": [[list(r) for r in s.submodule.basis] for s in self.summands],
        }


def decompose(rep: MatRep, seed: int = 0, tries: int = 64, exhaustive_bound: int = 2 ** 16,
              require_absolute: bool = False) -> Decomposition:
    """Split ``rep`` into indecomposable summands.

    Summands are sorted by dimension, then by basis. With
    ``require_absolute`` an irreducible summand whose endomorphism ring is
    larger than the field raises FieldTooSmall.
    """
    if rep.dim > 64:
        raise ValueError("decompose is meant for dimension <= 64")
    F = rep.field
    rng = random.Random(seed)
    done: List[Summand] = []
    stack: List[Submodule] = [Submodule(rep, linalg.identity(rep.dim))] if rep.dim else []
    while stack:
        W = stack.pop()
        act = W.action()
        d = act.dim
        endo = endomorphisms(act)
        split = None
        candidates = list(endo)
        for _ in range(tries):
            X = [[0] * d for _ in range(d)]
            for E in endo:
                c = rng.randrange(F.order)
                if c:
                    X = linalg.add(X, linalg.scale(F, c, E))
            candidates.append(X)
        shifts = range(F.order) if F.order <= 256 else range(2)
        for X in candidates:
            for c in shifts:
                Y = linalg.add(X, linalg.scale(F, c, linalg.identity(d))) if c else X
                split = _fitting_split(F, Y, d)
                if split:
                    break
            if split:
                break
        if split:
            for part in split:
                stack.append(Submodule(rep, linalg.row_reduce(F, W.embed(part))[0]))
            continue
        local = _local_exhaustive(F, endo, d, exhaustive_bound)
        irr = is_irreducible(act)
        if require_absolute and irr and len(endo) > 1:
            raise FieldTooSmall(f"a {d}-dimensional summand has a {len(endo)}-dimensional endomorphism ring")
        done.append(Summand(W, irr, len(endo), local is True))
    done.sort(key=lambda s: (s.dim, s.submodule.basis))
    return Decomposition(rep, done)


@dataclass
class ReducibilityVerdict:
    completely_reducible: bool
    decomposition: Decomposition

    def __bool__(self) -> bool:
        return self.completely_reducible


def is_completely_reducible(rep: MatRep, **kwargs) -> ReducibilityVerdict:
    """Semisimple iff every indecomposable summand is irreducible (Krull-Schmidt)."""
    dec = decompose(rep, **kwargs)
    return ReducibilityVerdict(dec.all_irreducible, dec)


def cyclic_submodules(rep: MatRep) -> List[Matrix]:
    """All distinct cyclic submodules, by spinning every vector (small fields only)."""
    out = set()
    for vec in itertools.product(range(rep.field.order), repeat=rep.dim):
        out.add(tuple(map(tuple, spin([list(vec)], rep).basis)))
    return sorted((list(map(list, b)) for b in out), key=lambda b: (len(b), b))
