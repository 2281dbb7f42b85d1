"""Cocharacters and the parabolic data they define.

A cocharacter is recorded by its coroot coefficients. Its weight on a
root is the pairing <root, lambda>; roots of weight 0 span the Levi
subgroup L_lambda and roots of positive weight the unipotent radical
R_u(P_lambda).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .rootsys import RootSystem, simple_root


class NotInParabolic(ValueError):
    pass


@dataclass(frozen=True)
class Cocharacter:
    coroot_coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coroot_coeffs", tuple(int(c) for c in self.coroot_coeffs))

    @classmethod
    def from_names(cls, system: RootSystem, coeffs: Dict[str, int]) -> "Cocharacter":
        vec = [0] * system.rank
        for name, c in coeffs.items():
            vec[system.datum.index(name)] = c
        return cls(tuple(vec))

    def weight(self, system: RootSystem, label: int) -> int:
        """<root, lambda> = sum_j c_j <root, alpha_j^vee>."""
        coords = system.root(label).coords
        C = system.datum.cartan_matrix
        n = system.rank
        return sum(coords[i] * C[i][j] * self.coroot_coeffs[j] for i in range(n) for j in range(n))


def lambda_weights(lam: Cocharacter, system: RootSystem) -> Dict[int, int]:
    """Weights of all positive labels."""
    if len(lam.coroot_coeffs) != system.rank:
        raise ValueError("cocharacter rank does not match the root system")
    return {x: lam.weight(system, x) for x in system.positive_labels}


class ParabolicDecomposition:
    """Classification of the roots by lambda-weight.

    ``radical_labels`` (positive weight, signed labels allowed) is the
    ordered support of R_u(P_lambda); the normal order of unipotent
    elements is ascending label. ``m_labels`` optionally records the radical
    labels lying in a reductive subgroup M.
    """

    def __init__(self, system: RootSystem, lam: Cocharacter, m_labels: Optional[Iterable[int]] = None):
        self.system = system
        self.lam = lam
        self.weights: Dict[int, int] = {x: lam.weight(system, x) for x in system.all_labels}
        self.levi_labels: List[int] = sorted(x for x, w in self.weights.items() if w == 0)
        self.radical_labels: List[int] = sorted(x for x, w in self.weights.items() if w > 0)
        self.position: Dict[int, int] = {x: i for i, x in enumerate(self.radical_labels)}
        self.m_labels: Optional[List[int]] = sorted(m_labels) if m_labels is not None else None
        if self.m_labels is not None and not set(self.m_labels) <= set(self.radical_labels):
            raise ValueError("m_labels must lie in the radical")
        self._add: Dict[Tuple[int, int], Optional[int]] = {}
        for x in self.radical_labels:
            for y in self.radical_labels:
                s = system.add_labels(x, y)
                if s is not None and s not in self.position:
                    raise ValueError(f"radical not closed: {x} + {y} = {s}")
                self._add[(x, y)] = s

    @property
    def levi_simple_names(self) -> List[str]:
        names = self.system.datum.simple_root_names
        return [n for i, n in enumerate(names)
                if self.weights[self.system.label(simple_root(self.system.datum, i))] == 0]

    def is_levi_letter(self, letter: str) -> bool:
        i = self.system.datum.index(letter)
        return self.weights[self.system.label(simple_root(self.system.datum, i))] == 0

    def add(self, x: int, y: int) -> Optional[int]:
        return self._add[(x, y)]

    def labels_of_weight(self, w: int) -> List[int]:
        return [x for x in self.radical_labels if self.weights[x] == w]

    def __contains__(self, label: int) -> bool:
        return label in self.position

    def __repr__(self) -> str:
        return (f"ParabolicDecomposition(levi={len(self.levi_labels)} roots, "
                f"radical={len(self.radical_labels)} roots)")


def decomposition_for_support(system: RootSystem, lam_coeffs: Sequence[int]) -> ParabolicDecomposition:
    return ParabolicDecomposition(system, Cocharacter(tuple(lam_coeffs)))
