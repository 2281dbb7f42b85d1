"""The limit map c_lambda and conjugacy tests inside P_lambda.

Elements of P_lambda are modeled as Levi Weyl word times radical element,
with no torus part. For such an element the limit of lambda(s) g
lambda(s)^-1 as s -> 0 just forgets the radical factor, because every
radical coefficient is scaled by a positive power of s.

The symbolic decision uses the following reduction. Write the tuples as
source = v_s K v_s^-1 and target = v_t K v_t^-1, where K is the tuple of
Levi generators of a solved centralizer. Then m source m^-1 = target
exactly when v_t^-1 m v_s centralizes K. Membership in the centralizer is
the solved parametrization, so the question becomes a polynomial system
in the coefficients of m and the centralizer parameters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

from .centralizer import CentralizerDescription, primitive_labels, solve, ConstraintSystem
from .chevalley import (MixedElement, UnipotentElement, center_of_radical, collect_product,
                        conjugate_by_word, invert)
from .coeffring import GF2m, ZERO, FieldElem, SparsePoly, specialize
from .parabolic import Cocharacter, NotInParabolic, ParabolicDecomposition, lambda_weights  # noqa: F401
from .weyl import WeylWord

TRUST_BOUNDARY = ("conjugators are restricted to the unipotent radical; conjugators with a "
                  "nontrivial Levi part are outside this decision procedure")


class SupportNotCentralInContext(ValueError):
    """The conjugator support is not central in the radical; use brute force instead."""


class SearchSpaceTooLarge(ValueError):
    pass


class NotInOrbit(ValueError):
    """The tuple is not R_u-conjugate to the generator tuple of the centralizer."""


# --------------------------------------------------------------------------
# c_lambda

def c_lambda(x: MixedElement, decomp: Optional[ParabolicDecomposition] = None) -> MixedElement:
    """lim_{s->0} lambda(s) x lambda(s)^-1: the Levi part of x."""
    ctx = decomp or x.context
    if ctx is not x.context:
        raise NotInParabolic("element lives in a different parabolic context")
    for lab in x.unip.support:
        if ctx.weights[lab] < 0:
            raise NotInParabolic(f"label {lab} has negative weight")
    return MixedElement(x.weyl, context=ctx)


def c_lambda_tuple(xs: Sequence[MixedElement], decomp: Optional[ParabolicDecomposition] = None) -> List[MixedElement]:
    return [c_lambda(x, decomp) for x in xs]


def conjugate_tuple(g: MixedElement, xs: Sequence[MixedElement]) -> List[MixedElement]:
    """g x g^-1 entrywise."""
    gi = g.inverse()
    return [g * x * gi for x in xs]


def specialize_element(x: MixedElement, assignment: Mapping[str, object], field_: GF2m) -> MixedElement:
    def spec(c):
        if isinstance(c, SparsePoly):
            return specialize(c, assignment, field_)
        return c
    return MixedElement(x.weyl, x.unip.map_coeffs(spec))


def specialize_tuple(xs: Sequence[MixedElement], assignment: Mapping[str, object], field_: GF2m) -> List[MixedElement]:
    return [specialize_element(x, assignment, field_) for x in xs]


# --------------------------------------------------------------------------
# verdicts

@dataclass
class Verdict:
    conjugate: bool
    conjugator: Optional[UnipotentElement] = None
    conditions: List[SparsePoly] = field(default_factory=list)
    certificate: Dict[str, object] = field(default_factory=dict)
    search_space: Optional[int] = None
    method: str = "symbolic"

    def holds_at(self, assignment: Mapping[str, object], field_: GF2m) -> bool:
        """Whether a conjugator exists after specializing the source symbols."""
        return all(not specialize(c, assignment, field_) for c in self.conditions)

    def to_json(self) -> dict:
        out = {"conjugate": self.conjugate, "method": self.method}
        if self.conjugator is not None:
            out["witness"] = self.conjugator.to_json()
        if self.conditions:
            out["conditions"] = [f"{c} = 0" for c in self.conditions]
        if self.certificate:
            out["certificate"] = self.certificate
        if self.search_space is not None:
            out["search_space"] = self.search_space
        return out


def _radical_equations(lhs: UnipotentElement, rhs: UnipotentElement) -> List[SparsePoly]:
    labels = sorted(set(lhs.support) | set(rhs.support), key=lambda x: lhs.context.position[x])
    eqs = []
    for lab in labels:
        e = _poly(lhs.coeff(lab)) + _poly(rhs.coeff(lab))
        if e:
            eqs.append(e)
    return eqs


def _poly(c) -> SparsePoly:
    if isinstance(c, SparsePoly):
        return c
    if isinstance(c, FieldElem):
        if c.value > 1:
            raise TypeError("symbolic decision needs GF(2) or polynomial coefficients")
        return SparsePoly.const(c.value)
    return SparsePoly.const(int(c) & 1)


def find_offset(entries: Sequence[MixedElement], desc: CentralizerDescription, prefix: str = "v") -> UnipotentElement:
    """Some v in R_u with entries[i] = v K_i v^-1, K_i the Levi generators of ``desc``."""
    ctx = desc.context
    gens = desc.generators
    if len(entries) != len(gens):
        raise ValueError("need one entry per generator")
    v = UnipotentElement.generic(ctx, prefix)
    g = MixedElement(WeylWord(), v)
    eqs = []
    for x, perm in zip(entries, gens):
        if x.permutation != perm:
            raise NotInOrbit("Weyl part does not match the generator")
        k = MixedElement(x.weyl, context=ctx)
        eqs.extend(_radical_equations(k.conjugate(g).unip, x.unip))
    unknowns = [str(c) for c in v.coeffs.values()]
    sol = solve(ConstraintSystem(eqs, unknowns))
    if sol.conditions:
        raise NotInOrbit(f"no offset unless {', '.join(str(c) for c in sol.conditions)} vanish")
    zero = {p: ZERO for p in sol.free_params}
    return UnipotentElement(ctx, {int(name[len(prefix):]): sol.forms[name].substitute(zero) for name in unknowns})


def ru_conjugacy_decision(source: Sequence[MixedElement], target: Sequence[MixedElement],
                          conj_support: Sequence[int], desc: CentralizerDescription,
                          source_offset: Optional[UnipotentElement] = None,
                          target_offset: Optional[UnipotentElement] = None,
                          orbit_names: Optional[Mapping[int, str]] = None) -> Verdict:
    """Is there m supported on ``conj_support`` with m source m^-1 = target?

    The first len(desc.generators) entries of each tuple are handled via
    the centralizer coset; further entries (e.g. central elements) are
    compared directly. Returns the conjugator with all free values set to
    0, or the residual conditions on the source symbols together with the
    violated centralizer relation.
    """
    ctx = desc.context
    if len(source) != len(target):
        raise ValueError("tuples differ in length")
    support = sorted(conj_support)
    for lab in support:
        if lab not in ctx:
            raise NotInParabolic(f"label {lab} is not in the radical")
    central = set(center_of_radical(ctx))
    if not set(support) <= central:
        raise SupportNotCentralInContext(
            f"labels {sorted(set(support) - central)} are not central in the radical")
    for i, (s, t) in enumerate(zip(source, target)):
        if s.permutation != t.permutation:
            return Verdict(False, certificate={"reason": f"entry {i}: Levi parts differ"})
    k = len(desc.generators)
    vs = source_offset if source_offset is not None else find_offset(source[:k], desc)
    vt = target_offset if target_offset is not None else find_offset(target[:k], desc)

    m = UnipotentElement.generic(ctx, "m", support)
    y = collect_product(collect_product(invert(vt), m), vs)
    param_names = {p: f"z{p}" for p in desc.free_params}
    shifted = desc.renamed(param_names)
    forms = shifted.coefficient_forms
    eqs = []
    for lab in ctx.radical_labels:
        e = _poly(y.coeff(lab)) + forms.get(lab, ZERO)
        if e:
            eqs.append(e)
    gm = MixedElement(WeylWord(), m)
    for s, t in zip(source[k:], target[k:]):
        eqs.extend(_radical_equations(s.conjugate(gm).unip, t.unip))
    unknowns = [str(c) for c in m.coeffs.values()] + list(param_names.values())
    sol = solve(ConstraintSystem(eqs, unknowns))

    if sol.conditions:
        base = collect_product(invert(vt), vs)
        prim = set(primitive_labels(ctx))
        reps = [o[0] for o in desc.orbits.orbits if o[0] in prim]
        names = orbit_names or {}
        cert: Dict[str, object] = {
            "orbit_values": {names.get(r, str(r)): str(_poly(base.coeff(r))) for r in reps},
        }
        values = {var: _poly(base.coeff(lab)) for var, lab in desc.label_of_var.items()}
        for rel in desc.relations:
            if not rel.variables() <= values.keys():
                continue
            val = rel.substitute(values)
            if val:
                shown = rel.substitute({var: SparsePoly.var(names[lab])
                                        for var, lab in desc.label_of_var.items() if lab in names})
                cert["violated_relation"] = f"{shown} = 0"
                cert["relation_value"] = str(val)
                break
        cert["trust_boundary"] = TRUST_BOUNDARY
        return Verdict(False, conditions=list(sol.conditions), certificate=cert)

    zero = {p: ZERO for p in sol.free_params}
    mm = UnipotentElement(ctx, {lab: sol.forms[f"m{lab}"].substitute(zero) for lab in support})
    g = MixedElement(WeylWord(), mm)
    if conjugate_tuple(g, source) != list(target):
        raise AssertionError("solved conjugator fails direct verification")
    return Verdict(True, conjugator=mm, certificate={"trust_boundary": TRUST_BOUNDARY})


def _in_field(u: UnipotentElement, field_: GF2m) -> UnipotentElement:
    """Rewrite constant polynomial coefficients as elements of ``field_``."""
    def conv(c):
        if isinstance(c, SparsePoly):
            if not c.is_constant():
                raise ValueError(f"coefficient {c} is not a constant; specialize first")
            return field_(c.constant_term())
        return c
    return u.map_coeffs(conv)


def brute_force_conjugacy(source: Sequence[MixedElement], target: Sequence[MixedElement],
                          conj_support: Sequence[int], field_: GF2m, max_space: int = 2 ** 24) -> Verdict:
    """Try every m = prod_{i in conj_support} eps_i(c_i) with c_i in ``field_``.

    Candidates are visited in lexicographic order of (c_i) by integer code,
    so the reported conjugator is the least one.
    """
    ctx = source[0].context
    support = sorted(conj_support)
    space = field_.order ** len(support)
    if space > max_space:
        raise SearchSpaceTooLarge(f"{space} candidates exceed the bound {max_space}")
    pairs = []
    for s, t in zip(source, target):
        if s.permutation != t.permutation:
            return Verdict(False, search_space=space, method="brute-force")
        pairs.append((s.permutation.inverse(), _in_field(s.unip, field_), _in_field(t.unip, field_)))
    elems = [field_(i) for i in range(field_.order)]
    for values in itertools.product(elems, repeat=len(support)):
        m = UnipotentElement(ctx, dict(zip(support, values)))
        mi = invert(m)
        # m (w u) m^-1 = w (w^-1 m w) u m^-1
        if all(collect_product(collect_product(conjugate_by_word(winv, m), u), mi) == t
               for winv, u, t in pairs):
            return Verdict(True, conjugator=m, search_space=space, method="brute-force")
    return Verdict(False, search_space=space, method="brute-force")


# --------------------------------------------------------------------------
# infinitely many classes

@dataclass
class ObstructionResult:
    relation: SparsePoly
    coset_conditions: List[SparsePoly]
    direct_conditions: List[SparsePoly]
    trust_boundary: str = TRUST_BOUNDARY

    @property
    def routes_agree(self) -> bool:
        return set(self.coset_conditions) == set(self.direct_conditions)

    def to_json(self) -> dict:
        return {
            "relation": f"{self.relation} = 0",
            "coset_route": [f"{c} = 0" for c in self.coset_conditions],
            "direct_route": [f"{c} = 0" for c in self.direct_conditions],
            "routes_agree": self.routes_agree,
            "trust_boundary": self.trust_boundary,
        }


def curve_tuple(desc: CentralizerDescription, curve_labels: Sequence[int], s,
                finite_set: Sequence[MixedElement]) -> List[MixedElement]:
    """v(s) (K, F) v(s)^-1 where v(s) = prod_{i in curve_labels} eps_i(s)."""
    ctx = desc.context
    v = MixedElement(WeylWord(), UnipotentElement(ctx, {i: s for i in curve_labels}))
    if len(desc.words) != len(desc.generators):
        raise ValueError("the centralizer description does not record its Weyl words")
    gens = [MixedElement(w, context=ctx) for w in desc.words]
    return conjugate_tuple(v, gens + list(finite_set))


def default_finite_set(ctx: ParabolicDecomposition, labels: Sequence[int]) -> List[MixedElement]:
    """z_i = eps_i(1) for the given labels."""
    return [MixedElement(WeylWord(), UnipotentElement(ctx, {i: 1})) for i in labels]


def infinite_classes_obstruction(desc: CentralizerDescription, m_support: Sequence[int],
                                 curve_labels: Sequence[int], a_prime: str = "a'", b_prime: str = "b'",
                                 finite_set: Optional[Sequence[MixedElement]] = None) -> ObstructionResult:
    """Conditions on (a', b') for some m supported on ``m_support`` to
    conjugate the tuple attached to b' onto the tuple attached to a'.

    Two routes: membership of v(a')^-1 m v(b') in the solved centralizer,
    and plain comparison of m x m^-1 with the target entries.
    """
    ctx = desc.context
    if finite_set is None:
        finite_set = default_finite_set(ctx, m_support)
    A, B = SparsePoly.var(a_prime), SparsePoly.var(b_prime)
    source = curve_tuple(desc, curve_labels, B, finite_set)
    target = curve_tuple(desc, curve_labels, A, finite_set)
    va = UnipotentElement(ctx, {i: A for i in curve_labels})
    vb = UnipotentElement(ctx, {i: B for i in curve_labels})
    coset = ru_conjugacy_decision(source, target, m_support, desc, source_offset=vb, target_offset=va)

    m = UnipotentElement.generic(ctx, "m", m_support)
    g = MixedElement(WeylWord(), m)
    eqs = []
    for s, t in zip(source, target):
        eqs.extend(_radical_equations(s.conjugate(g).unip, t.unip))
    direct = solve(ConstraintSystem(eqs, [str(c) for c in m.coeffs.values()]))

    conds = sorted(coset.conditions, key=str)
    relation = ZERO
    if conds:
        relation = conds[0]
    return ObstructionResult(relation, conds, sorted(direct.conditions, key=str))
