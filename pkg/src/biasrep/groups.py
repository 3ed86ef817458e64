"""Gain groups: finite multiplication tables and the two groups of a field."""

from __future__ import annotations

import itertools
import json
import re
from pathlib import Path

from .errors import DomainError, InputError
from .fields import Field, parse_field


class Group:
    name: str

    def is_finite(self) -> bool:
        return True

    @property
    def order(self) -> int:
        return len(self.elements())

    def __repr__(self) -> str:
        return f"<group {self.name}>"

    def __str__(self) -> str:
        return self.name

    def product(self, values):
        acc = self.identity
        for x in values:
            acc = self.mul(acc, x)
        return acc

    def is_subgroup(self, subset) -> bool:
        h = set(subset)
        if self.identity not in h:
            return False
        return all(self.inv(x) in h for x in h) and all(self.mul(x, y) in h for x in h for y in h)


class TableGroup(Group):
    """A finite group from its Cayley table; axioms are checked on construction."""

    def __init__(self, name: str, elements, table):
        elements = [str(x) for x in elements]
        if len(set(elements)) != len(elements) or not elements:
            raise InputError("group elements must be distinct and nonempty")
        n = len(elements)
        if len(table) != n or any(len(row) != n for row in table):
            raise InputError("multiplication table must be square over the elements")
        pos = {x: i for i, x in enumerate(elements)}
        tab = {}
        for i, row in enumerate(table):
            for j, val in enumerate(row):
                val = str(val)
                if val not in pos:
                    raise InputError(f"table entry {val!r} is not a group element")
                tab[elements[i], elements[j]] = val
        ident = [e for e in elements if all(tab[e, x] == x and tab[x, e] == x for x in elements)]
        if not ident:
            raise InputError(f"{name}: no identity element")
        one = ident[0]
        inverse = {}
        for x in elements:
            inv = [y for y in elements if tab[x, y] == one and tab[y, x] == one]
            if not inv:
                raise InputError(f"{name}: {x} has no inverse")
            inverse[x] = inv[0]
        for a, b, c in itertools.product(elements, repeat=3):
            if tab[tab[a, b], c] != tab[a, tab[b, c]]:
                raise InputError(f"{name}: not associative at ({a},{b},{c})")
        self.name = name
        self._elements = elements
        self._tab = tab
        self._inv = inverse
        self.identity = one

    def elements(self) -> list:
        return list(self._elements)

    def mul(self, a, b):
        return self._tab[a, b]

    def inv(self, a):
        return self._inv[a]

    def parse(self, s):
        s = str(s)
        if s not in self._inv:
            raise InputError(f"{s!r} is not an element of {self.name}")
        return s

    def format(self, x) -> str:
        return str(x)

    def contains(self, x) -> bool:
        return x in self._inv

    def to_json(self) -> dict:
        return {
            "kind": "table",
            "name": self.name,
            "elements": self.elements(),
            "table": [[self.mul(a, b) for b in self._elements] for a in self._elements],
        }


class FieldMultiplicative(Group):
    def __init__(self, field: Field | str):
        self.field = parse_field(field)
        self.name = f"{self.field.name}*"
        self.identity = self.field.one()

    def is_finite(self) -> bool:
        return self.field.is_finite()

    def elements(self) -> list:
        if not self.field.is_finite():
            raise DomainError(f"{self.name} is infinite")
        return [x for x in self.field.elements() if x != 0]

    def mul(self, a, b):
        return self.field.mul(a, b)

    def inv(self, a):
        return self.field.inv(a)

    def parse(self, s):
        x = self.field.parse(s)
        if x == 0:
            raise InputError(f"0 is not in {self.name}")
        return x

    def format(self, x) -> str:
        return self.field.format(x)

    def contains(self, x) -> bool:
        return x != 0

    def to_json(self) -> dict:
        return {"kind": "field*", "field": self.field.name}


class FieldAdditive(Group):
    def __init__(self, field: Field | str):
        self.field = parse_field(field)
        self.name = f"{self.field.name}+"
        self.identity = self.field.zero()

    def is_finite(self) -> bool:
        return self.field.is_finite()

    def elements(self) -> list:
        if not self.field.is_finite():
            raise DomainError(f"{self.name} is infinite")
        return self.field.elements()

    def mul(self, a, b):
        return self.field.add(a, b)

    def inv(self, a):
        return self.field.neg(a)

    def parse(self, s):
        return self.field.parse(s)

    def format(self, x) -> str:
        return self.field.format(x)

    def contains(self, x) -> bool:
        return True

    def to_json(self) -> dict:
        return {"kind": "field+", "field": self.field.name}


def cyclic_group(n: int) -> TableGroup:
    els = [str(i) for i in range(n)]
    return TableGroup(f"Z{n}", els, [[str((i + j) % n) for j in range(n)] for i in range(n)])


def direct_product(g: Group, h: Group, name: str | None = None) -> TableGroup:
    pairs = list(itertools.product(g.elements(), h.elements()))
    label = {p: f"({g.format(p[0])},{h.format(p[1])})" for p in pairs}
    table = [[label[(g.mul(a[0], b[0]), h.mul(a[1], b[1]))] for b in pairs] for a in pairs]
    return TableGroup(name or f"{g.name}x{h.name}", [label[p] for p in pairs], table)


def symmetric_group(n: int) -> TableGroup:
    perms = list(itertools.permutations(range(n)))
    label = {p: "".join(map(str, p)) for p in perms}
    # (p*q)(i) = p(q(i))
    table = [[label[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return TableGroup(f"S{n}", [label[p] for p in perms], table)


_NAMED = re.compile(r"^Z(\d+)$")


def named_group(name: str) -> TableGroup:
    """Z<n>, products such as Z2xZ2, and S<n>."""
    parts = name.split("x")
    if len(parts) > 1:
        groups = [named_group(p) for p in parts]
        out = groups[0]
        for g in groups[1:]:
            out = direct_product(out, g)
        out.name = name
        return out
    m = _NAMED.match(name)
    if m:
        return cyclic_group(int(m.group(1)))
    if name.startswith("S") and name[1:].isdigit():
        return symmetric_group(int(name[1:]))
    raise InputError(f"unknown group name {name!r}")


def group_from_json(d: dict) -> Group:
    kind = d.get("kind")
    if kind == "table":
        if "elements" in d:
            return TableGroup(d.get("name", "G"), d["elements"], d["table"])
        return named_group(d["name"])
    if kind == "field*":
        return FieldMultiplicative(d["field"])
    if kind == "field+":
        return FieldAdditive(d["field"])
    raise InputError(f"unknown group kind {kind!r}")


def parse_group(spec, field: Field | str | None = None) -> Group:
    """Parse the command-line group syntax.

    ``table:<path>`` reads a JSON table group, ``field*`` and ``field+`` use
    ``field`` (or an inline ``field*:GF(5)``), anything else is a group name.
    """
    if isinstance(spec, Group):
        return spec
    if isinstance(spec, dict):
        return group_from_json(spec)
    s = str(spec).strip()
    if s.startswith("table:"):
        path = Path(s[len("table:"):])
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read group table {path}: {exc}") from exc
        return group_from_json({"kind": "table", **data})
    for kind, cls in (("field*", FieldMultiplicative), ("field+", FieldAdditive)):
        if s == kind or s.startswith(kind + ":"):
            f = s[len(kind) + 1:] if ":" in s else field
            if f is None:
                raise InputError(f"{kind} needs a field (--field)")
            return cls(f)
    return named_group(s)
