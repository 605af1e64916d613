"""Ground types: subsets of [n] as bit words, canonically ordered families.

Element ``i`` of the ground set [n] = {1, ..., n} lives at bit ``i - 1`` of a
Python int.  Families are immutable, duplicate free and kept in lex order,
where ``F`` precedes ``G`` iff the smallest element of ``F ^ G`` lies in ``F``.
That rule is total on subsets of any size, so mixed-size families (bases)
share the same canonical order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

#: Largest supported ground-set size.  Raised at construction, never truncated.
MAX_GROUND = 64

_REV_WIDTH = MAX_GROUND


def binomial(m: int, r: int) -> int:
    """C(m, r), with C = 0 whenever r < 0, r > m or m < 0."""
    if m < 0 or r < 0 or r > m:
        return 0
    return math.comb(m, r)


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for x in elements:
        if x < 1 or x > MAX_GROUND:
            raise ValueError(f"element {x} outside 1..{MAX_GROUND}")
        mask |= 1 << (x - 1)
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return mask.bit_count()


@lru_cache(maxsize=1 << 16)
def lex_key(mask: int) -> int:
    """Sort key realising lex order on all subsets of [MAX_GROUND].

    Reversing the bit word puts element 1 in the most significant position, so
    the set holding the smallest element of the symmetric difference has the
    larger reversed word.  Negating turns that into ascending order.
    """
    return -int(format(mask, f"0{_REV_WIDTH}b")[::-1], 2)


def lex_precedes(a: int, b: int) -> bool:
    """True iff ``a`` precedes ``b``: min(a \\ b) < min(b \\ a)."""
    diff = a ^ b
    if not diff:
        return False
    low = diff & -diff
    return bool(a & low)


def full_mask(n: int) -> int:
    return (1 << n) - 1


@lru_cache(maxsize=256)
def kset_masks(n: int, k: int) -> tuple[int, ...]:
    """All k-subsets of [n] as masks, in lex order."""
    if not 0 <= k <= n:
        return ()
    return tuple(mask_of(c) for c in combinations(range(1, n + 1), k))


@dataclass(frozen=True)
class GroundParams:
    n: int
    k: int
    t: int

    def __post_init__(self):
        if not (self.n > self.k > self.t >= 1):
            raise ValueError(f"need n > k > t >= 1, got n={self.n} k={self.k} t={self.t}")
        if self.n > MAX_GROUND:
            raise ValueError(f"n={self.n} exceeds the supported ground size {MAX_GROUND}")


@dataclass(frozen=True)
class SubsetWord:
    """One subset of [n]; ``card`` is the cached population count."""

    bits: int
    card: int = -1

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("negative bit word")
        if self.bits >> MAX_GROUND:
            raise ValueError(f"bit above position {MAX_GROUND}")
        count = self.bits.bit_count()
        if self.card == -1:
            object.__setattr__(self, "card", count)
        elif self.card != count:
            raise ValueError(f"card {self.card} does not match popcount {count}")

    @classmethod
    def of(cls, elements: Iterable[int]) -> "SubsetWord":
        return cls(mask_of(elements))

    @property
    def elements(self) -> tuple[int, ...]:
        return elements_of(self.bits)

    def __len__(self) -> int:
        return self.card

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and x >= 1 and bool(self.bits >> (x - 1) & 1)

    def __lt__(self, other: "SubsetWord") -> bool:
        return lex_precedes(self.bits, other.bits)

    def __le__(self, other: "SubsetWord") -> bool:
        return self.bits == other.bits or lex_precedes(self.bits, other.bits)

    def __and__(self, other: "SubsetWord") -> "SubsetWord":
        return SubsetWord(self.bits & other.bits)

    def __or__(self, other: "SubsetWord") -> "SubsetWord":
        return SubsetWord(self.bits | other.bits)

    def __sub__(self, other: "SubsetWord") -> "SubsetWord":
        return SubsetWord(self.bits & ~other.bits)

    def issubset(self, other: "SubsetWord") -> bool:
        return self.bits & ~other.bits == 0

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def __repr__(self) -> str:
        return f"SubsetWord({self})"


class Family:
    """Duplicate-free, lex-ordered collection of subsets of [n].

    ``k`` is the common member size, or ``None`` for a mixed family.  An empty
    family keeps whatever ``k`` it was declared with.
    """

    __slots__ = ("n", "k", "_masks", "_words", "_set")

    def __init__(self, n: int, members: Iterable[SubsetWord | int] = (), k: int | None = None):
        if not 0 <= n <= MAX_GROUND:
            raise ValueError(f"ground size {n} outside 0..{MAX_GROUND}")
        limit = full_mask(n)
        masks = set()
        for m in members:
            bits = m.bits if isinstance(m, SubsetWord) else int(m)
            if bits < 0 or bits & ~limit:
                raise ValueError(f"member {elements_of(bits)} not inside [{n}]")
            masks.add(bits)
        ordered = tuple(sorted(masks, key=lex_key))
        sizes = {m.bit_count() for m in ordered}
        if len(sizes) > 1:
            if k is not None:
                raise ValueError(f"declared k={k} but member sizes {sorted(sizes)}")
        elif sizes:
            (size,) = sizes
            if k is not None and k != size:
                raise ValueError(f"declared k={k} but members have size {size}")
            k = size
        self.n = n
        self.k = k
        self._masks = ordered
        self._words = None
        self._set = None

    @classmethod
    def of(cls, n: int, sets: Iterable[Iterable[int]], k: int | None = None) -> "Family":
        return cls(n, (mask_of(s) for s in sets), k=k)

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def members(self) -> tuple[SubsetWord, ...]:
        if self._words is None:
            self._words = tuple(SubsetWord(m) for m in self._masks)
        return self._words

    @property
    def uniform(self) -> bool:
        return self.k is not None

    def sets(self) -> list[tuple[int, ...]]:
        return [elements_of(m) for m in self._masks]

    def __len__(self) -> int:
        return len(self._masks)

    def __iter__(self) -> Iterator[SubsetWord]:
        return iter(self.members)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, SubsetWord):
            bits = item.bits
        elif isinstance(item, int):
            bits = item
        else:
            try:
                bits = mask_of(item)  # type: ignore[arg-type]
            except TypeError:
                return False
        return bits in self._mask_set()

    def _mask_set(self) -> frozenset[int]:
        if self._set is None:
            self._set = frozenset(self._masks)
        return self._set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return self.n == other.n and self._masks == other._masks

    def __hash__(self) -> int:
        return hash((self.n, self._masks))

    def __repr__(self) -> str:
        body = ", ".join("".join(map(str, s)) if self.n < 10 else str(s) for s in self.sets())
        return f"Family(n={self.n}, k={self.k}, [{body}])"

    def issubset(self, other: "Family") -> bool:
        return set(self._masks) <= set(other._masks)

    def union(self, other: "Family") -> "Family":
        return Family(max(self.n, other.n), self._masks + other._masks)

    def filter(self, pred) -> "Family":
        return Family(self.n, (m for m in self._masks if pred(m)), k=self.k)

    def layer(self, size: int) -> "Family":
        return Family(self.n, (m for m in self._masks if m.bit_count() == size), k=size)

    def sizes(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for m in self._masks:
            c = m.bit_count()
            out[c] = out.get(c, 0) + 1
        return dict(sorted(out.items()))

    def order_key(self) -> tuple[int, ...]:
        """Key comparing families by their lex-ordered member lists."""
        return tuple(lex_key(m) for m in self._masks)

    def to_text(self) -> str:
        return format_family(self)


def enumerate_ksets(n: int, k: int) -> Iterator[SubsetWord]:
    """Yield all k-subsets of [n] in lex order."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n} k={k}")
    for m in kset_masks(n, k):
        yield SubsetWord(m)


def lex_family(n: int, b: int, m: int) -> Family:
    """The first ``m`` b-subsets of [n] in lex order."""
    total = binomial(n, b)
    if not 0 <= m <= total:
        raise ValueError(f"m={m} outside 0..C({n},{b})={total}")
    return Family(n, kset_masks(n, b)[:m], k=b)


def common_intersection(family: Family | Sequence[int]) -> SubsetWord:
    masks = family.masks if isinstance(family, Family) else tuple(family)
    if not masks:
        raise ValueError("common intersection of an empty family is undefined")
    acc = masks[0]
    for m in masks[1:]:
        acc &= m
    return SubsetWord(acc)


# --- text format -----------------------------------------------------------

def format_family(family: Family) -> str:
    k = "mixed" if family.k is None else str(family.k)
    lines = [f"n={family.n} k={k}"]
    for m in family.masks:
        lines.append(" ".join(map(str, elements_of(m))) if m else "-")
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> Family:
    header = None
    members = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = line
            continue
        if line == "-":
            members.append(0)
        else:
            members.append(mask_of(int(tok) for tok in line.split()))
    if header is None:
        raise ValueError("missing 'n=<int> k=<int|mixed>' header")
    fields = dict(tok.split("=", 1) for tok in header.split())
    try:
        n = int(fields["n"])
        k_field = fields["k"]
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad header {header!r}") from exc
    k = None if k_field == "mixed" else int(k_field)
    return Family(n, members, k=k)


def read_family(path) -> Family:
    with open(path) as fh:
        return parse_family(fh.read())


def write_family(family: Family, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_family(family))
