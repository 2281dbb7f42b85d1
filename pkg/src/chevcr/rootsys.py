"""Simply-laced root systems built from Cartan data.

Roots are integer coordinate vectors in the basis of simple roots. A
``RootSystem`` keeps two orders on its positive roots: the internal one
(height, then lexicographic) and a labeling ``1..N`` that may be imported
from an external table, as is done for the bundled E7 data. Negative roots
are addressed by negated labels.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple


class NonSimplyLaced(ValueError):
    pass


class NonFinite(RuntimeError):
    pass


class LabelMismatch(ValueError):
    def __init__(self, label, message):
        super().__init__(f"label {label}: {message}")
        self.label = label


DEFAULT_ROOT_BOUND = 10_000

E7_NAMES = ("alpha", "beta", "gamma", "delta", "epsilon", "eta", "sigma")
GREEK = {
    "alpha": "α", "beta": "β", "gamma": "γ", "delta": "δ",
    "epsilon": "ε", "eta": "η", "sigma": "σ",
}


@dataclass(frozen=True)
class CartanDatum:
    rank: int
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    simple_root_names: Tuple[str, ...]

    def __post_init__(self):
        C = tuple(tuple(int(x) for x in row) for row in self.cartan_matrix)
        object.__setattr__(self, "cartan_matrix", C)
        object.__setattr__(self, "simple_root_names", tuple(self.simple_root_names))
        n = self.rank
        if n < 1 or len(C) != n or any(len(row) != n for row in C):
            raise ValueError(f"Cartan matrix must be {n}x{n}")
        if len(self.simple_root_names) != n or len(set(self.simple_root_names)) != n:
            raise ValueError("need one distinct name per simple root")
        for i in range(n):
            if C[i][i] != 2:
                raise NonSimplyLaced(f"diagonal entry ({i},{i}) is {C[i][i]}, expected 2")
            for j in range(n):
                if i != j and C[i][j] not in (0, -1):
                    raise NonSimplyLaced(f"entry ({i},{j}) is {C[i][j]}; only 0 and -1 allowed")
                if C[i][j] != C[j][i]:
                    raise NonSimplyLaced(f"matrix is not symmetric at ({i},{j})")

    @classmethod
    def from_edges(cls, names: Sequence[str], edges: Iterable[Tuple[str, str]]) -> "CartanDatum":
        """Cartan matrix of the simply-laced Dynkin diagram with the given edges."""
        index = {n: i for i, n in enumerate(names)}
        C = [[2 if i == j else 0 for j in range(len(names))] for i in range(len(names))]
        for x, y in edges:
            C[index[x]][index[y]] = C[index[y]][index[x]] = -1
        return cls(len(names), tuple(map(tuple, C)), tuple(names))

    def index(self, name: str) -> int:
        """Index of a simple root given by name, Greek letter or one-letter alias.

        The alias of the i-th simple root is the i-th letter of the alphabet,
        so for E7 ``a,b,c,d,e,f,g`` stand for alpha..eta, sigma.
        """
        if name in self.simple_root_names:
            return self.simple_root_names.index(name)
        for i, n in enumerate(self.simple_root_names):
            if GREEK.get(n) == name:
                return i
        if len(name) == 1 and name.isalpha():
            i = ord(name.lower()) - ord("a")
            if 0 <= i < self.rank:
                return i
        raise KeyError(name)

    def edges(self) -> List[Tuple[str, str]]:
        names = self.simple_root_names
        return [(names[i], names[j]) for i in range(self.rank) for j in range(i + 1, self.rank)
                if self.cartan_matrix[i][j] == -1]


def e7_datum() -> CartanDatum:
    """E7 with the chain alpha-beta-gamma-delta-epsilon-eta and sigma attached to delta."""
    chain = [("alpha", "beta"), ("beta", "gamma"), ("gamma", "delta"),
             ("delta", "epsilon"), ("epsilon", "eta"), ("delta", "sigma")]
    return CartanDatum.from_edges(E7_NAMES, chain)


def type_a_datum(n: int) -> CartanDatum:
    names = [f"a{i}" for i in range(1, n + 1)]
    return CartanDatum.from_edges(names, zip(names, names[1:]))


def type_d_datum(n: int) -> CartanDatum:
    if n < 4:
        raise ValueError("D_n needs n >= 4")
    names = [f"a{i}" for i in range(1, n + 1)]
    edges = list(zip(names[:-1], names[1:-1])) + [(names[-3], names[-1])]
    return CartanDatum.from_edges(names, edges)


def type_e_datum(n: int) -> CartanDatum:
    """E6, E7, E8 in Bourbaki numbering (a2 is the branch node's neighbour)."""
    if n not in (6, 7, 8):
        raise ValueError("E_n needs n in 6..8")
    names = [f"a{i}" for i in range(1, n + 1)]
    edges = [("a1", "a3"), ("a3", "a4"), ("a2", "a4")] + [(f"a{i}", f"a{i+1}") for i in range(4, n)]
    return CartanDatum.from_edges(names, edges)


def datum_by_type(name: str) -> CartanDatum:
    kind, n = name[0].upper(), int(name[1:])
    if name.upper() == "E7":
        return e7_datum()
    return {"A": type_a_datum, "D": type_d_datum, "E": type_e_datum}[kind](n)


@dataclass(frozen=True, order=True)
class Root:
    coords: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @property
    def height(self) -> int:
        return sum(self.coords)

    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coords) and any(self.coords)

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords))

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def scale(self, k: int) -> "Root":
        return Root(tuple(k * x for x in self.coords))


def simple_root(datum: CartanDatum, i: int) -> Root:
    return Root(tuple(1 if j == i else 0 for j in range(datum.rank)))


def pairing(zeta: Root, xi: Root, datum: CartanDatum) -> int:
    """<zeta, xi^vee> = zeta^T C xi (valid for simply-laced data)."""
    C = datum.cartan_matrix
    z, x = zeta.coords, xi.coords
    return sum(z[i] * C[i][j] * x[j] for i in range(datum.rank) if z[i] for j in range(datum.rank) if x[j])


def reflect(zeta: Root, xi: Root, datum: CartanDatum) -> Root:
    """s_xi . zeta = zeta - <zeta, xi^vee> xi"""
    n = pairing(zeta, xi, datum)
    return zeta - xi.scale(n) if n else zeta


class RootSystem:
    """Positive roots of a datum plus a signed labeling.

    ``label(root)`` and ``root(label)`` convert between coordinate vectors
    and labels; a negative root carries the negated label of its opposite.
    """

    def __init__(self, datum: CartanDatum, positive_roots: Sequence[Root],
                 labels: Optional[Mapping[int, Root]] = None):
        self.datum = datum
        self.positive_roots: Tuple[Root, ...] = tuple(positive_roots)
        if labels is None:
            labels = {i + 1: r for i, r in enumerate(self.positive_roots)}
        self._root_of: Dict[int, Root] = dict(labels)
        self._label_of: Dict[Tuple[int, ...], int] = {}
        for lab, r in self._root_of.items():
            self._label_of[r.coords] = lab
            self._label_of[(-r).coords] = -lab
        if len(self._label_of) != 2 * len(self.positive_roots):
            raise LabelMismatch(None, "labeling is not a bijection onto the positive roots")
        self._sum: Dict[Tuple[int, int], Optional[int]] = {}
        self._cache: Dict[object, object] = {}  # derived data (reflections, ...)

    def __len__(self) -> int:
        return 2 * len(self.positive_roots)

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def positive_labels(self) -> List[int]:
        return sorted(self._root_of)

    @property
    def all_labels(self) -> List[int]:
        pos = self.positive_labels
        return [-x for x in reversed(pos)] + pos

    def root(self, label: int) -> Root:
        if label < 0:
            return -self._root_of[-label]
        return self._root_of[label]

    def label(self, root: Root) -> int:
        try:
            return self._label_of[root.coords]
        except KeyError:
            raise KeyError(f"{root.coords} is not a root") from None

    def is_root(self, root: Root) -> bool:
        return root.coords in self._label_of

    def simple_label(self, name: str) -> int:
        return self.label(simple_root(self.datum, self.datum.index(name)))

    def pairing(self, l1: int, l2: int) -> int:
        return pairing(self.root(l1), self.root(l2), self.datum)

    def reflect_label(self, label: int, by: int) -> int:
        return self.label(reflect(self.root(label), self.root(by), self.datum))

    def add_labels(self, l1: int, l2: int) -> Optional[int]:
        """Label of root(l1) + root(l2) when that is a root, else None."""
        key = (l1, l2)
        if key not in self._sum:
            s = self.root(l1) + self.root(l2)
            self._sum[key] = self._label_of.get(s.coords)
        return self._sum[key]

    def coefficient(self, label: int, name: str) -> int:
        return self.root(label).coords[self.datum.index(name)]

    def relabeled(self, labels: Mapping[int, Root]) -> "RootSystem":
        return RootSystem(self.datum, self.positive_roots, labels)

    def __repr__(self) -> str:
        return f"RootSystem(rank={self.rank}, positive={len(self.positive_roots)})"


def generate_root_system(datum: CartanDatum, bound: int = DEFAULT_ROOT_BOUND) -> RootSystem:
    """Close the simple roots under the simple reflections.

    Only positive images are kept, which yields all positive roots. The
    result is ordered by height and then lexicographically on coordinates.
    """
    simples = [simple_root(datum, i) for i in range(datum.rank)]
    seen = set(r.coords for r in simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for r in frontier:
            for s in simples:
                t = reflect(r, s, datum)
                if t.is_positive() and t.coords not in seen:
                    seen.add(t.coords)
                    nxt.append(t)
                    if 2 * len(seen) > bound:
                        raise NonFinite(f"more than {bound} roots; Cartan datum is not of finite type")
        frontier = nxt
    roots = sorted((Root(c) for c in seen), key=lambda r: (r.height, r.coords))
    return RootSystem(datum, roots)


# --------------------------------------------------------------------------
# Table-1 style label data

TableRow = Tuple[int, Dict[str, int]]


def load_root_table(path: Optional[Path] = None) -> List[TableRow]:
    """Read ``label,<simple root names...>`` rows. Defaults to the bundled E7 table."""
    if path is None:
        text = resources.files("chevcr.data").joinpath("e7_roots.csv").read_text()
    else:
        text = Path(path).read_text()
    reader = csv.DictReader(text.splitlines())
    rows = []
    for rec in reader:
        label = int(rec.pop("label"))
        rows.append((label, {k: int(v) for k, v in rec.items()}))
    return rows


@dataclass
class ValidationReport:
    valid: bool
    matched: int
    total: int
    bands: Dict[int, int] = field(default_factory=dict)

    def __str__(self) -> str:
        return f"{'VALID' if self.valid else 'INVALID'}, {self.matched}/{self.total} matched"


E7_SIGMA_BANDS = {range(1, 36): 1, range(36, 43): 2, range(43, 64): 0}


def _table_root(datum: CartanDatum, coeffs: Mapping[str, int]) -> Root:
    vec = [0] * datum.rank
    for name, c in coeffs.items():
        vec[datum.index(name)] = c
    return Root(tuple(vec))


def validate_labeling(system: RootSystem, table: Sequence[TableRow],
                      bands: Optional[Mapping[range, int]] = None,
                      band_root: str = "sigma") -> ValidationReport:
    """Check that ``table`` labels every positive root of ``system`` exactly once.

    Columns are matched to simple roots by name, so the reading of the table
    does not depend on column order. ``bands`` maps label ranges to the
    required coefficient of ``band_root``. Raises ``LabelMismatch`` at the
    first offending label.
    """
    positives = {r.coords for r in system.positive_roots}
    used: Dict[Tuple[int, ...], int] = {}
    labels_seen = set()
    for label, coeffs in table:
        r = _table_root(system.datum, coeffs)
        if label in labels_seen:
            raise LabelMismatch(label, "label occurs twice")
        labels_seen.add(label)
        if r.coords not in positives:
            raise LabelMismatch(label, f"{coeffs} is not a positive root")
        if r.coords in used:
            raise LabelMismatch(label, f"same vector as label {used[r.coords]}")
        used[r.coords] = label
    if len(used) != len(positives):
        raise LabelMismatch(None, f"table covers {len(used)} of {len(positives)} positive roots")
    expected_labels = set(range(1, len(positives) + 1))
    if labels_seen != expected_labels:
        raise LabelMismatch(min(labels_seen ^ expected_labels), "labels are not 1..N")
    band_counts: Dict[int, int] = {}
    if bands:
        idx = system.datum.index(band_root)
        for label, coeffs in table:
            want = next((w for rng, w in bands.items() if label in rng), None)
            got = _table_root(system.datum, coeffs).coords[idx]
            if want is not None and got != want:
                raise LabelMismatch(label, f"{band_root}-coefficient {got}, expected {want}")
            band_counts[got] = band_counts.get(got, 0) + 1
    return ValidationReport(True, len(used), len(positives), band_counts)


def labeled_system(datum: CartanDatum, table: Sequence[TableRow], **kw) -> RootSystem:
    system = generate_root_system(datum)
    validate_labeling(system, table, **kw)
    return system.relabeled({label: _table_root(datum, coeffs) for label, coeffs in table})


_E7 = None


def e7_root_system() -> RootSystem:
    """E7 with the bundled labels 1..63; built once and shared (it is immutable)."""
    global _E7
    if _E7 is None:
        _E7 = labeled_system(e7_datum(), load_root_table(), bands=E7_SIGMA_BANDS)
    return _E7
