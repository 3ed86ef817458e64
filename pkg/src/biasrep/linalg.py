"""Exact linear algebra over Q and GF(p).

Vectors carry an explicit coordinate index (node ids, optionally the extra
lift coordinate ``"0"``) so that configurations built from graphs line up
without positional bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InputError
from .fields import Field, parse_field
from .oracle import RankOracle

LIFT_INDEX = "0"


@dataclass(frozen=True)
class Vector:
    field: Field
    index: tuple
    coords: tuple

    def __post_init__(self):
        if len(self.index) != len(self.coords):
            raise InputError("vector index and coordinates differ in length")

    @classmethod
    def from_map(cls, field, index: Sequence[str], values: Mapping[str, object]) -> "Vector":
        field = parse_field(field)
        unknown = set(values) - set(index)
        if unknown:
            raise InputError(f"coordinates {sorted(unknown)} not in index")
        coords = tuple(field.parse(values[i]) if i in values else field.zero() for i in index)
        return cls(field, tuple(index), coords)

    @classmethod
    def unit(cls, field, index: Sequence[str], at: str) -> "Vector":
        field = parse_field(field)
        return cls(field, tuple(index), tuple(field.one() if i == at else field.zero() for i in index))

    @classmethod
    def zeros(cls, field, index: Sequence[str]) -> "Vector":
        field = parse_field(field)
        return cls(field, tuple(index), (field.zero(),) * len(index))

    def __getitem__(self, key: str):
        return self.coords[self.index.index(key)]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _check(self, other: "Vector"):
        if self.field != other.field or self.index != other.index:
            raise InputError("vectors over different fields or index sets")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        f = self.field
        return Vector(f, self.index, tuple(f.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        f = self.field
        return Vector(f, self.index, tuple(f.sub(a, b) for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "Vector":
        f = self.field
        c = f.coerce(c)
        return Vector(f, self.index, tuple(f.mul(c, a) for a in self.coords))

    def dot(self, other: "Vector"):
        self._check(other)
        f = self.field
        total = f.zero()
        for a, b in zip(self.coords, other.coords):
            total = f.add(total, f.mul(a, b))
        return total

    def normalized(self) -> tuple:
        """Coordinates scaled so the first nonzero entry is 1."""
        f = self.field
        for c in self.coords:
            if c != 0:
                inv = f.inv(c)
                return tuple(f.mul(inv, a) for a in self.coords)
        return self.coords

    def to_json(self) -> dict:
        return {
            "field": self.field.name,
            "coords": {i: self.field.format(c) for i, c in zip(self.index, self.coords) if c != 0},
        }

    def __repr__(self) -> str:
        body = ", ".join(self.field.format(c) for c in self.coords)
        return f"Vector[{self.field.name}]({body})"


class ProjectivePoint:
    """A nonzero vector up to nonzero scalar multiples."""

    __slots__ = ("vector", "_key")

    def __init__(self, vector: Vector):
        if vector.is_zero():
            raise InputError("the zero vector is not a projective point")
        self.vector = vector
        self._key = (vector.field, vector.index, vector.normalized())

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjectivePoint) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        f = self.vector.field
        return "[" + ", ".join(f.format(c) for c in self._key[2]) + "]"


@dataclass(frozen=True)
class Covector:
    """A linear form; with ``constant`` set, the affine hyperplane form(x) = constant."""

    form: Vector
    constant: object = None

    def __post_init__(self):
        if self.form.is_zero():
            raise InputError("a covector must not vanish identically")

    @property
    def is_affine(self) -> bool:
        return self.constant is not None

    def to_json(self) -> dict:
        out = self.form.to_json()
        if self.constant is not None:
            out["constant"] = self.form.field.format(self.constant)
        return out


def _common(vectors: Sequence[Vector]):
    field = vectors[0].field
    index = vectors[0].index
    for v in vectors[1:]:
        if v.field != field:
            raise InputError(f"mixed fields {field} and {v.field}")
        if v.index != index:
            raise InputError("mixed coordinate index sets")
    return field, index


def rref(rows: Sequence[Sequence], field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form with first-nonzero pivoting.

    Returns the nonzero reduced rows and their pivot columns.
    """
    p = field.characteristic
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        if p:
            inv = pow(m[r][c], -1, p)
            prow = [x * inv % p for x in m[r]]
        else:
            inv = 1 / m[r][c]
            prow = [x * inv for x in m[r]]
        m[r] = prow
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    if p:
                        m[i] = [(a - f * b) % p for a, b in zip(m[i], prow)]
                    else:
                        m[i] = [a - f * b for a, b in zip(m[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def matrix_rank(rows: Sequence[Sequence], field: Field) -> int:
    return len(rref(rows, field)[0])


def rank(vectors: Sequence[Vector]) -> int:
    """Rank of the span of ``vectors`` (0 for the empty list)."""
    vectors = list(vectors)
    if not vectors:
        return 0
    field, _ = _common(vectors)
    return matrix_rank([v.coords for v in vectors], field)


def in_span(v: Vector, basis: Sequence[Vector]) -> bool:
    basis = list(basis)
    if not basis:
        return v.is_zero()
    _common(basis + [v])
    return rank(basis + [v]) == rank(basis)


def span_signature(vectors: Sequence[Vector]) -> tuple:
    """Canonical key of the subspace spanned: its reduced row echelon form."""
    vectors = list(vectors)
    if not vectors:
        return ()
    field, _ = _common(vectors)
    rows, _ = rref([v.coords for v in vectors], field)
    return tuple(tuple(r) for r in rows)


def left_kernel(rows: Sequence[Sequence], field: Field) -> list[list]:
    """Basis of {c : sum_i c_i rows[i] = 0}."""
    k = len(rows)
    if k == 0:
        return []
    ncols = len(rows[0])
    # Columns of the transposed system are the given rows.
    transposed = [[rows[i][j] for i in range(k)] for j in range(ncols)]
    red, pivots = rref(transposed, field) if ncols else ([], [])
    free = [j for j in range(k) if j not in pivots]
    basis = []
    one = field.one()
    for fcol in free:
        sol = [field.zero()] * k
        sol[fcol] = one
        for row, pc in zip(red, pivots):
            sol[pc] = field.neg(row[fcol])
        basis.append(sol)
    return basis


def annihilator(vectors: Sequence[Vector]) -> list[Vector]:
    """Basis of the linear forms vanishing on every vector given."""
    vectors = list(vectors)
    if not vectors:
        raise InputError("annihilator of an empty set needs an ambient space")
    field, index = _common(vectors)
    d = len(index)
    columns = [[v.coords[j] for v in vectors] for j in range(d)]
    return [Vector(field, index, tuple(c)) for c in left_kernel(columns, field)]


def intersect_spans(a: Sequence[Vector], b: Sequence[Vector]) -> list[Vector]:
    """Basis of span(a) ∩ span(b); both lists assumed independent."""
    a, b = list(a), list(b)
    if not a or not b:
        return []
    field, index = _common(a + b)
    rows = [v.coords for v in a] + [v.coords for v in b]
    out = []
    for c in left_kernel(rows, field):
        acc = Vector.zeros(field, index)
        for coef, v in zip(c[: len(a)], a):
            if coef != 0:
                acc = acc + v.scale(coef)
        if not acc.is_zero():
            out.append(acc)
    if not out:
        return []
    red, _ = rref([v.coords for v in out], field)
    return [Vector(field, index, tuple(r)) for r in red]


def affine_consistency(hyperplanes: Sequence[Covector]) -> bool:
    """True iff the system form_i(x) = constant_i has a solution."""
    hyperplanes = list(hyperplanes)
    if not hyperplanes:
        return True
    forms = [h.form for h in hyperplanes]
    field, _ = _common(forms)
    coeff = [h.form.coords for h in hyperplanes]
    aug = [h.form.coords + (field.coerce(h.constant if h.constant is not None else 0),) for h in hyperplanes]
    return matrix_rank(coeff, field) == matrix_rank(aug, field)


class LinearMatroid:
    """Labelled vectors (or covectors) over one field."""

    def __init__(self, elements: Mapping[str, Vector | Covector], field=None):
        vecs = {}
        for label, v in elements.items():
            vecs[label] = v.form if isinstance(v, Covector) else v
        if not vecs:
            if field is None:
                raise InputError("empty linear matroid needs an explicit field")
            self.field = parse_field(field)
            self.index = ()
        else:
            self.field, self.index = _common(list(vecs.values()))
            if field is not None and parse_field(field) != self.field:
                raise InputError("declared field disagrees with the vectors")
        self.labels = tuple(vecs)
        self.vectors = vecs

    def rank(self, labels: Iterable[str]) -> int:
        rows = []
        for label in labels:
            try:
                rows.append(self.vectors[label].coords)
            except KeyError:
                raise InputError(f"unknown label {label!r}") from None
        return matrix_rank(rows, self.field) if rows else 0


def linear_rank_oracle(m: LinearMatroid, kind: str = "linear") -> RankOracle:
    """Rank oracle of a linear matroid.

    For covectors the rank of a set equals the codimension of the common
    kernel, so the same oracle serves hyperplane arrangements.
    """
    return RankOracle(m.labels, m.rank, kind=kind)
