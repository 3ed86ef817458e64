"""Rank oracles: the common currency for comparing matroids."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import CapExceeded, InputError

DEFAULT_SUBSET_CAP = 1 << 20


class RankOracle:
    """A ground set plus a rank function, memoized on bitmask keys.

    ``rank_fn`` receives a tuple of labels in ground-set order.
    """

    def __init__(self, ground: Sequence[str], rank_fn: Callable[[tuple], int], kind: str = "generic"):
        self.ground = tuple(ground)
        if len(set(self.ground)) != len(self.ground):
            raise InputError("duplicate labels in ground set")
        self.kind = kind
        self._rank_fn = rank_fn
        self._bit = {x: 1 << i for i, x in enumerate(self.ground)}
        self._memo: dict[int, int] = {}
        # Inserted values are deterministic, so a lost race only repeats work.
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.ground)

    def __repr__(self) -> str:
        return f"RankOracle(kind={self.kind!r}, n={len(self.ground)})"

    def mask(self, subset: Iterable[str]) -> int:
        m = 0
        for x in subset:
            try:
                m |= self._bit[x]
            except KeyError:
                raise InputError(f"unknown element {x!r}") from None
        return m

    def labels(self, mask: int) -> tuple:
        return tuple(x for i, x in enumerate(self.ground) if mask >> i & 1)

    def rank_mask(self, mask: int) -> int:
        r = self._memo.get(mask)
        if r is None:
            r = self._rank_fn(self.labels(mask))
            with self._lock:
                self._memo[mask] = r
        return r

    def rank(self, subset: Iterable[str] = None) -> int:
        if subset is None:
            return self.rank_mask((1 << len(self.ground)) - 1)
        return self.rank_mask(self.mask(subset))

    def is_independent(self, subset: Iterable[str]) -> bool:
        subset = list(subset)
        return self.rank(subset) == len(set(subset))

    def closure(self, subset: Iterable[str]) -> frozenset:
        m = self.mask(subset)
        r = self.rank_mask(m)
        out = set(self.labels(m))
        for x in self.ground:
            b = self._bit[x]
            if not m & b and self.rank_mask(m | b) == r:
                out.add(x)
        return frozenset(out)

    def circuits(self, cap: int = DEFAULT_SUBSET_CAP) -> list[frozenset]:
        """Minimal dependent sets, by exhaustive subset enumeration."""
        n = len(self.ground)
        if 1 << n > cap:
            raise CapExceeded(f"2^{n} subsets", cap)
        out = []
        for m in range(1, 1 << n):
            size = bin(m).count("1")
            if self.rank_mask(m) != size - 1:
                continue
            if all(self.rank_mask(m & ~(1 << i)) == size - 1 for i in range(n) if m >> i & 1):
                out.append(frozenset(self.labels(m)))
        return out

    def check_axioms(self, cap: int = DEFAULT_SUBSET_CAP):
        """First violation of normalization, unit increase or submodularity, else None.

        Submodularity is checked in its local form r(S+x)+r(S+y) >= r(S+x+y)+r(S),
        which is equivalent to the global one.
        """
        n = len(self.ground)
        if 1 << n > cap:
            raise CapExceeded(f"2^{n} subsets", cap)
        if self.rank_mask(0) != 0:
            return ("normalization", ())
        for m in range(1 << n):
            r = self.rank_mask(m)
            for i in range(n):
                if m >> i & 1:
                    continue
                ri = self.rank_mask(m | 1 << i)
                if ri not in (r, r + 1):
                    return ("unit increase", self.labels(m | 1 << i))
                for j in range(i + 1, n):
                    if m >> j & 1:
                        continue
                    rj = self.rank_mask(m | 1 << j)
                    rij = self.rank_mask(m | 1 << i | 1 << j)
                    if ri + rj < rij + r:
                        return ("submodularity", self.labels(m | 1 << i | 1 << j))
        return None


def lex_subsets(labels: Sequence[str]) -> Iterator[tuple]:
    """All subsets as sorted tuples, in lexicographic order (empty set first)."""
    labels = sorted(labels)
    n = len(labels)

    def rec(start: int, prefix: tuple):
        yield prefix
        for i in range(start, n):
            yield from rec(i + 1, prefix + (labels[i],))

    yield from rec(0, ())


@dataclass
class Comparison:
    equal: bool
    witness: tuple | None = None
    rank1: int | None = None
    rank2: int | None = None
    checked: int = 0
    sampled: bool = False
    extra: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.equal

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "witness": list(self.witness) if self.witness is not None else None,
            "rank1": self.rank1,
            "rank2": self.rank2,
        }


def rank_oracle_equal(
    m1: RankOracle,
    m2: RankOracle,
    bijection: Mapping[str, str] | None = None,
    cap: int = DEFAULT_SUBSET_CAP,
    subsets: Iterable[Iterable[str]] | None = None,
) -> Comparison:
    """Compare two rank oracles on every subset of ``m1``'s ground set.

    ``bijection`` maps labels of ``m1`` to labels of ``m2`` (identity by
    default). The witness is the lexicographically first disagreeing subset,
    given in ``m1`` labels. Passing ``subsets`` restricts the comparison to
    those subsets, evaluated in the given order.
    """
    if bijection is None:
        bijection = {x: x for x in m1.ground}
    missing = [x for x in m1.ground if x not in bijection]
    if missing:
        raise InputError(f"bijection not total: missing {missing}")
    image = [bijection[x] for x in m1.ground]
    if len(set(image)) != len(image) or set(image) != set(m2.ground):
        raise InputError("bijection is not onto the second ground set")
    if subsets is None:
        n = len(m1.ground)
        if 1 << n > cap:
            raise CapExceeded(f"2^{n} subsets", cap)
        subsets = lex_subsets(m1.ground)
    checked = 0
    for s in subsets:
        s = tuple(s)
        r1 = m1.rank(s)
        r2 = m2.rank(bijection[x] for x in s)
        checked += 1
        if r1 != r2:
            return Comparison(False, s, r1, r2, checked)
    return Comparison(True, None, None, None, checked)
