"""The E7 instance: labels from the bundled table, the words q1 and q2, the
cocharacter lambda and the curves C1, C8, C15, C29 in R_u(P_lambda)."""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List

from .chevalley import MixedElement, UnipotentElement, levi
from .parabolic import Cocharacter, ParabolicDecomposition
from .rootsys import RootSystem, e7_root_system
from .weyl import WeylWord

Q1 = WeylWord(("epsilon", "beta", "gamma", "alpha", "beta"))
Q2 = WeylWord(("epsilon", "beta", "gamma", "alpha", "beta", "eta", "delta", "beta"))
WORDS = {"q1": Q1, "q2": Q2}

LAMBDA_COEFFS = {"alpha": 3, "beta": 6, "gamma": 9, "delta": 12, "epsilon": 8, "eta": 4, "sigma": 7}

RADICAL = list(range(1, 43))
WEIGHT_ONE = list(range(1, 36))
WEIGHT_TWO = list(range(36, 43))
LEVI_POSITIVE = list(range(43, 64))

# weight-1 orbits of K = <q1, q2>; C_n is the curve prod_{i in O_n} eps_i(s)
CURVES = {1: range(1, 8), 8: range(8, 15), 15: range(15, 29), 29: range(29, 36)}

PI_Q1 = ("(1 2)(3 6)(4 7)(9 10)(11 12)(13 14)(15 20)(16 17)(18 21)(19 23)(22 25)(24 26)"
         "(27 28)(29 32)(31 33)(34 35)(36 38)(37 39)(40 41)")
PI_Q2 = ("(1 6 7 5 4 3 2)(8 10 12 14 13 11 9)(15 16 21 23 26 27 22)(17 20 25 28 24 19 18)"
         "(29 30 32 33 35 34 31)(36 38 39 41 42 40 37)")


def system() -> RootSystem:
    return e7_root_system()


def cocharacter() -> Cocharacter:
    return Cocharacter.from_names(system(), LAMBDA_COEFFS)


@lru_cache(maxsize=None)
def context() -> ParabolicDecomposition:
    """P_lambda with radical {1..42}; the radical of P_lambda(M) is {36..42}."""
    return ParabolicDecomposition(system(), cocharacter(), m_labels=WEIGHT_TWO)


def curve(s, start: int = 1, ctx: ParabolicDecomposition = None) -> UnipotentElement:
    """prod_{i in O_start} eps_i(s); ``curve(s)`` is v(s)."""
    ctx = ctx or context()
    return UnipotentElement(ctx, {i: s for i in CURVES[start]})


def v(s, ctx: ParabolicDecomposition = None) -> UnipotentElement:
    return curve(s, 1, ctx)


def k_generators(ctx: ParabolicDecomposition = None) -> List[MixedElement]:
    ctx = ctx or context()
    return [levi(Q1, ctx), levi(Q2, ctx)]


def central_elements(ctx: ParabolicDecomposition = None) -> List[MixedElement]:
    """z_i = eps_i(1) for i in 36..42, the finite set F used with K."""
    ctx = ctx or context()
    return [MixedElement(WeylWord(), UnipotentElement(ctx, {i: 1})) for i in WEIGHT_TWO]


def conjugated_generators(s, ctx: ParabolicDecomposition = None) -> List[MixedElement]:
    """(h1, h2) = (v(s) q1 v(s)^-1, v(s) q2 v(s)^-1)."""
    ctx = ctx or context()
    g = MixedElement(WeylWord(), v(s, ctx))
    return [k.conjugate(g) for k in k_generators(ctx)]


def m_tuple(s, ctx: ParabolicDecomposition = None) -> List[MixedElement]:
    """v(s) . (q1, q2, z_36, ..., z_42)"""
    ctx = ctx or context()
    g = MixedElement(WeylWord(), v(s, ctx))
    return [x.conjugate(g) for x in k_generators(ctx) + central_elements(ctx)]


def orbit_names() -> Dict[int, str]:
    return {1: "a", 8: "b", 15: "c", 29: "d"}
