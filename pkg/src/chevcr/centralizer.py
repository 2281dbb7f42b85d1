"""Centralizers in R_u(P) of finite groups generated by Levi Weyl words.

The group centralizer is computed symbolically: conjugating a generic
element prod eps_i(b_i) by each generator and comparing coefficients
gives polynomial equations over GF(2). ``solve`` eliminates them. It
pivots on variables that occur linearly, and it replaces an equation
that is a perfect square by its square root. Over a field p^2 = 0 holds
iff p = 0, so the result describes the reduced centralizer. The
infinitesimal centralizer comes from orbit sums, which is valid because
the adjoint action of n_x is a plain permutation of root vectors in
characteristic 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import linalg
from .chevalley import UnipotentElement, conjugate_by_word, collect_product, _as_permutation
from .coeffring import GF2m, ZERO, NotAPerfectSquare, SparsePoly, sqrt_linearize, var_key
from .parabolic import ParabolicDecomposition
from .weyl import OrbitPartition, RootPermutation, WeylWord, orbits

GF2 = GF2m(1)


class SolverIncomplete(RuntimeError):
    """A remaining equation is neither solvable for a variable nor a square."""

    def __init__(self, equation: SparsePoly):
        super().__init__(f"cannot eliminate {equation} = 0 (not linear in a free unknown, not a square)")
        self.equation = equation


class UnsupportedSupport(ValueError):
    pass


WordLike = Union[WeylWord, RootPermutation, str]


@dataclass
class ConstraintSystem:
    equations: List[SparsePoly]
    unknowns: List[str]
    origins: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.equations)

    def max_degree(self) -> int:
        return max((e.degree() for e in self.equations), default=-1)


@dataclass
class CentralizerDescription:
    """Solution set of a ``ConstraintSystem``.

    ``forms`` expresses every unknown through the free parameters (and any
    symbols that were not unknowns). ``conditions`` are the residual
    equations in symbols only; the system is solvable iff they vanish.
    """

    free_params: List[str]
    forms: Dict[str, SparsePoly]
    derived_relations: List[str]
    conditions: List[SparsePoly]
    label_of_var: Dict[str, int] = field(default_factory=dict)
    context: Optional[ParabolicDecomposition] = None
    orbits: Optional[OrbitPartition] = None
    generators: List[RootPermutation] = field(default_factory=list)
    relations: List[SparsePoly] = field(default_factory=list)
    words: List[WeylWord] = field(default_factory=list)

    @property
    def coefficient_forms(self) -> Dict[int, SparsePoly]:
        return {lab: self.forms[v] for v, lab in sorted(self.label_of_var.items(), key=lambda kv: kv[1])}

    @property
    def dimension(self) -> int:
        return len(self.free_params)

    def element(self, assignment: Optional[Mapping[str, object]] = None) -> UnipotentElement:
        """The member of the family with the given parameter values
        (symbolic when ``assignment`` is None)."""
        coeffs = {}
        for lab, form in self.coefficient_forms.items():
            coeffs[lab] = form if assignment is None else form.evaluate(assignment)
        return UnipotentElement(self.context, coeffs)

    def renamed(self, names: Mapping[str, str]) -> "CentralizerDescription":
        sub = {old: SparsePoly.var(new) for old, new in names.items()}
        return CentralizerDescription(
            [names.get(p, p) for p in self.free_params],
            {v: f.substitute(sub) for v, f in self.forms.items()},
            list(self.derived_relations),
            [c.substitute(sub) for c in self.conditions],
            dict(self.label_of_var), self.context, self.orbits, list(self.generators),
            [r.substitute(sub) for r in self.relations], list(self.words))

    def tangent_vectors(self) -> List[List[int]]:
        """Differential at the identity: one GF(2) vector per free parameter,
        indexed by the support labels."""
        labels = sorted(self.label_of_var.values())
        vecs = []
        for p in self.free_params:
            mono = ((p, 1),)
            row = []
            forms = self.coefficient_forms
            for lab in labels:
                row.append(1 if mono in forms[lab].terms else 0)
            vecs.append(row)
        return vecs

    def forms_are_linear(self) -> bool:
        return all(f.is_linear() for f in self.forms.values())


def _pick_pivot(eq: SparsePoly, unknowns: set) -> Optional[str]:
    candidates = (eq.linear_variables() & unknowns) - eq.nonlinear_variables()
    if not candidates:
        return None
    return max(candidates, key=var_key)


def _reduced_condition(e: SparsePoly, derived: List[str]) -> SparsePoly:
    """Strip squares from a residual condition: p^2 = 0 iff p = 0 over a field."""
    while not e.is_constant():
        try:
            root = sqrt_linearize(e)
        except NotAPerfectSquare:
            break
        if root == e:
            break
        derived.append(f"{e} = 0  =>  {root} = 0")
        e = root
    return e


def solve(system: ConstraintSystem) -> CentralizerDescription:
    """Eliminate the equations of ``system``.

    Pivots are taken on the largest unknown (natural name order) occurring
    linearly, so smaller-indexed unknowns survive as parameters. An
    equation without such a variable must be a perfect square, and it is
    replaced by its square root.
    """
    unknowns = set(system.unknowns)
    sub: Dict[str, SparsePoly] = {}
    pending = [e for e in system.equations if e]
    derived: List[str] = []
    relations: List[SparsePoly] = []
    conditions: List[SparsePoly] = []
    while pending:
        pending = [e.substitute(sub) for e in pending]
        pending = [e for e in pending if e]
        if not pending:
            break
        best = None
        for e in pending:
            v = _pick_pivot(e, unknowns)
            if v is not None:
                key = (e.degree(), len(e.terms), [tuple(var_key(x) for x, _ in m) for m in e.sorted_terms()])
                if best is None or key < best[0]:
                    best = (key, e, v)
        if best is not None:
            _, e, v = best
            pending.remove(e)
            rhs = e + SparsePoly.var(v)
            new = {v: rhs}
            sub = {x: f.substitute(new) for x, f in sub.items()}
            sub[v] = rhs
            unknowns.discard(v)
            continue
        for e in sorted(pending, key=str):
            if not e.variables() & unknowns:
                continue
            try:
                root = sqrt_linearize(e)
            except NotAPerfectSquare:
                continue
            if root == e:
                continue
            pending.remove(e)
            derived.append(f"{e} = 0  =>  {root} = 0")
            relations.append(root)
            pending.append(root)
            break
        else:
            rest = [e for e in pending if e.variables() & unknowns]
            if rest:
                raise SolverIncomplete(sorted(rest, key=str)[0])
            conditions.extend(sorted({_reduced_condition(e, derived) for e in pending}, key=str))
            pending = []
    forms = {}
    for v in system.unknowns:
        forms[v] = sub.get(v, SparsePoly.var(v))
    free = sorted((v for v in system.unknowns if v not in sub), key=var_key)
    return CentralizerDescription(free, forms, derived, conditions, relations=relations)


# --------------------------------------------------------------------------
# equations

def _word_perms(words: Iterable[WordLike], context: ParabolicDecomposition) -> List[RootPermutation]:
    return [_as_permutation(w, context) for w in words]


def centralizer_equations(words: Iterable[WordLike], context: ParabolicDecomposition,
                          prefix: str = "b") -> ConstraintSystem:
    """Coefficientwise ``w u w^-1 - u`` for the generic u and each generator w."""
    u = UnipotentElement.generic(context, prefix)
    eqs, origins = [], []
    for k, perm in enumerate(_word_perms(words, context)):
        conj = conjugate_by_word(perm, u)
        for lab in context.radical_labels:
            e = conj.coeff(lab) + u.coeff(lab)
            if e:
                eqs.append(e)
                origins.append(f"generator {k}, label {lab}")
    unknowns = [str(c) for c in u.coeffs.values()]
    return ConstraintSystem(eqs, unknowns, origins)


def centralizer_description(words: Sequence[WordLike], context: ParabolicDecomposition,
                            prefix: str = "b") -> CentralizerDescription:
    perms = _word_perms(words, context)
    system = centralizer_equations(perms, context, prefix)
    desc = solve(system)
    if desc.conditions:
        raise AssertionError(f"homogeneous system produced conditions {desc.conditions}")
    desc.label_of_var = {f"{prefix}{x}": x for x in context.radical_labels}
    desc.context = context
    desc.generators = perms
    desc.words = [WeylWord.parse(w) if isinstance(w, str) else w for w in words
                  if not isinstance(w, RootPermutation)]
    desc.orbits = orbits(perms, context.radical_labels) if perms else \
        OrbitPartition(tuple((x,) for x in context.radical_labels))
    return desc


def is_centralized(u: UnipotentElement, words: Iterable[WordLike]) -> bool:
    return all(conjugate_by_word(w, u) == u for w in words)


# --------------------------------------------------------------------------
# Lie centralizer and separability

@dataclass
class LieCentralizer:
    basis: List[Tuple[int, ...]]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def vectors(self, labels: Sequence[int]) -> List[List[int]]:
        return [[1 if x in set(o) else 0 for x in labels] for o in self.basis]


def lie_centralizer(words: Sequence[WordLike], context: ParabolicDecomposition) -> LieCentralizer:
    """Span of the orbit sums sum_{z in O} e_z."""
    perms = _word_perms(words, context)
    if not perms:
        return LieCentralizer([(x,) for x in context.radical_labels])
    return LieCentralizer(list(orbits(perms, context.radical_labels).orbits))


def fixed_space_dimension(perms: Sequence[RootPermutation], labels: Sequence[int], F: GF2m = GF2) -> int:
    """dim of the common kernel of (P_w - I) on k^labels, by a rank computation."""
    labels = list(labels)
    idx = {x: i for i, x in enumerate(labels)}
    n = len(labels)
    rows = []
    for p in perms:
        M = [[0] * n for _ in range(n)]
        for x in labels:
            M[idx[p(x)]][idx[x]] ^= 1
            M[idx[x]][idx[x]] ^= 1
        rows.extend(M)
    if not rows:
        return n
    return n - linalg.rank(F, rows)


@dataclass
class SeparabilityReport:
    dim_lie_C: int
    dim_inf_c: int
    separable: bool
    witness: Optional[Tuple[int, ...]]
    tangent_rank: int
    description: CentralizerDescription
    lie: LieCentralizer

    def to_json(self) -> dict:
        return {
            "dim_lie_C": self.dim_lie_C,
            "dim_inf_c": self.dim_inf_c,
            "separable": self.separable,
            "witness": list(self.witness) if self.witness else None,
            "witness_text": " + ".join(f"e{x}" for x in self.witness) if self.witness else None,
        }


def separability_report(words: Sequence[WordLike], context: ParabolicDecomposition,
                        desc: Optional[CentralizerDescription] = None) -> SeparabilityReport:
    """Compare Lie C_{R_u(P)}(K) with the infinitesimal centralizer.

    The solved centralizer is the graph of a polynomial map on its free
    coordinates, so it is smooth of dimension ``len(free_params)`` and its
    tangent space at 1 is spanned by the linear parts of the forms.
    """
    if desc is None:
        desc = centralizer_description(words, context)
    lie = lie_centralizer(words, context)
    labels = sorted(desc.label_of_var.values())
    tangent = desc.tangent_vectors()
    t_rank = linalg.rank(GF2, tangent) if tangent else 0
    dim_lie_C = desc.dimension
    if t_rank != dim_lie_C:
        raise AssertionError(f"tangent rank {t_rank} != parameter count {dim_lie_C}")
    witness = None
    for vec, orbit in zip(lie.vectors(labels), lie.basis):
        if not tangent or not linalg.in_span(GF2, tangent, vec):
            witness = orbit
            break
    separable = dim_lie_C == lie.dimension
    return SeparabilityReport(dim_lie_C, lie.dimension, separable, None if separable else witness,
                              t_rank, desc, lie)


# --------------------------------------------------------------------------
# coset invariant

def primitive_labels(context: ParabolicDecomposition) -> List[int]:
    """Radical labels that are not sums of two radical labels (the additive layer)."""
    sums = {context.add(x, y) for x in context.radical_labels for y in context.radical_labels}
    return [x for x in context.radical_labels if x not in sums]


def coset_weight_invariant(v_elem: UnipotentElement, desc: CentralizerDescription) -> SparsePoly:
    """Sum, over the K-orbits in the additive layer, of the orbit
    representative's coefficient in v_elem * z, for z the generic element
    of the centralizer. The sum vanishes on the centralizer itself, so the
    result depends only on the coset v_elem * C."""
    ctx = desc.context
    prim = primitive_labels(ctx)
    outside = [x for x in v_elem.support if x not in prim]
    if outside:
        raise UnsupportedSupport(f"labels {outside} lie outside the additive layer")
    reps = [o[0] for o in desc.orbits.orbits if o[0] in prim]
    z = desc.element()
    base = sum((z.coeff(x) for x in reps), ZERO)
    if base:
        raise UnsupportedSupport(f"orbit-value sum {base} is not constant on the centralizer")
    w = collect_product(v_elem, z)
    return sum((w.coeff(x) for x in reps), ZERO)
