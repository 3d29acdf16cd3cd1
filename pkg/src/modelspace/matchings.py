"""Matchings of simplex facets and signed matching systems.

A single-simplex matching of the odd-dimensional simplex pairs every even
facet index with an odd one.  A matching system generalises this to several
simplices carrying coefficients +1 or -1: every facet slot ``(i, j)`` (facet
``j`` of simplex ``i``) is paired with another slot so that the two faces
cancel in the boundary of ``sum_i eps_i * sigma_i``.

Both kinds have a canonical ASCII descriptor::

    M:n=3;pi=0:3,2:1
    S:n=3;eps=+-;pairs=(0,0)-(0,3);(0,1)-(1,1);...
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator, Sequence

Slot = tuple[int, int]
Pair = tuple[Slot, Slot]

#: Default cap on the number of simplices in a system.
MAX_SIMPLICES = 2


class MatchingError(ValueError):
    """Raised for inadmissible dimensions, sign types or malformed matchings."""


class DescriptorError(ValueError):
    """Raised when a descriptor string does not follow the grammar."""


class InvalidSystem(ValueError):
    """Raised when an operation requires a valid (perfect, cancelling) system."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class SignType(enum.Enum):
    SAME = "same"
    OPPOSITE = "opp"

    @property
    def coeffs(self) -> tuple[int, int]:
        return (1, 1) if self is SignType.SAME else (1, -1)


@dataclass(frozen=True)
class Matching:
    """Bijection ``{0, 2, ..., n-1} -> {1, 3, ..., n}`` stored as its image tuple.

    ``images[t]`` is the partner of the even index ``2 * t``.
    """

    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.n % 2 == 0:
            raise MatchingError(f"matchings exist only in odd dimension >= 1, got n={self.n}")
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, self.n + 1, 2)):
            raise MatchingError(f"{images} is not a bijection onto the odd indices of {self.n}")

    @classmethod
    def from_dict(cls, n: int, mapping: dict[int, int]) -> Matching:
        evens = list(range(0, n, 2))
        if sorted(mapping) != evens:
            raise MatchingError(f"domain must be {evens}, got {sorted(mapping)}")
        return cls(n, tuple(mapping[e] for e in evens))

    @property
    def pairs(self) -> dict[int, int]:
        return {2 * t: odd for t, odd in enumerate(self.images)}

    def partner(self, j: int) -> int:
        if j % 2 == 0:
            return self.images[j // 2]
        return 2 * self.images.index(j)

    def as_system(self) -> MatchingSystem:
        pairs = tuple(sorted(((0, e), (0, o)) for e, o in self.pairs.items()))
        return MatchingSystem(self.n, (1,), pairs)

    def descriptor(self) -> str:
        body = ",".join(f"{e}:{o}" for e, o in self.pairs.items())
        return f"M:n={self.n};pi={body}"

    def __str__(self):
        return self.descriptor()


def _normalise_pairs(pairs) -> tuple[Pair, ...]:
    out = []
    for a, b in pairs:
        a, b = (int(a[0]), int(a[1])), (int(b[0]), int(b[1]))
        out.append((a, b) if a <= b else (b, a))
    return tuple(sorted(out))


@dataclass(frozen=True)
class MatchingSystem:
    """``k`` simplices of dimension ``n`` with signs and a pairing of facet slots.

    Construction only normalises (pairs sorted, smaller slot first); use
    :func:`validate_system` to check the cycle conditions.
    """

    n: int
    coeffs: tuple[int, ...]
    pairs: tuple[Pair, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "pairs", _normalise_pairs(self.pairs))

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def slot_sign(self, slot: Slot) -> int:
        i, j = slot
        return self.coeffs[i] * (-1) ** j

    def partner_map(self) -> dict[Slot, Slot]:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    def as_matching(self) -> Matching:
        """Single-simplex system with coefficient +1 as a :class:`Matching`."""
        if self.k != 1 or self.coeffs != (1,):
            raise MatchingError("only single-simplex systems with coefficient +1 are matchings")
        report = validate_system(self)
        if not report.valid:
            raise InvalidSystem(report.violations)
        mapping = {}
        for (_, a), (_, b) in self.pairs:
            even, odd = (a, b) if a % 2 == 0 else (b, a)
            mapping[even] = odd
        return Matching.from_dict(self.n, mapping)

    def relabel(self, perm: Sequence[int]) -> MatchingSystem:
        """Rename simplex ``i`` to ``perm[i]``."""
        coeffs = [0] * self.k
        for i, c in enumerate(self.coeffs):
            coeffs[perm[i]] = c
        pairs = [((perm[a[0]], a[1]), (perm[b[0]], b[1])) for a, b in self.pairs]
        return MatchingSystem(self.n, tuple(coeffs), pairs)

    def descriptor(self) -> str:
        return canonical_descriptor(self)

    def __str__(self):
        return self.descriptor()


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    perfect: bool
    cancelling: bool
    violations: tuple[str, ...]
    #: Sum of |coefficients|; must be even for any valid system in even dimension.
    weight: int
    parity_ok: bool


def validate_system(system: MatchingSystem) -> ValidationReport:
    n, k = system.n, system.k
    violations = []
    if n < 1:
        violations.append(f"dimension must be positive, got {n}")
    if k < 1:
        violations.append("a system needs at least one simplex")
    if any(c not in (1, -1) for c in system.coeffs):
        violations.append(f"coefficients must be +1 or -1, got {system.coeffs}")

    slots = {(i, j) for i in range(k) for j in range(n + 1)}
    seen: dict[Slot, int] = {}
    perfect = True
    for a, b in system.pairs:
        for s in (a, b):
            if s not in slots:
                violations.append(f"slot {s} does not exist")
                perfect = False
            seen[s] = seen.get(s, 0) + 1
        if a == b:
            violations.append(f"slot {a} is paired with itself")
            perfect = False
    doubled = sorted(s for s, c in seen.items() if c > 1)
    missing = sorted(slots - set(seen))
    if doubled:
        violations.append(f"slots used more than once: {doubled}")
        perfect = False
    if missing:
        violations.append(f"unpaired slots: {missing}")
        perfect = False
    if len(slots) % 2:
        violations.append(f"{len(slots)} facet slots cannot be perfectly paired")
        perfect = False

    cancelling = True
    if not any(c not in (1, -1) for c in system.coeffs):
        for a, b in system.pairs:
            if a in slots and b in slots and system.slot_sign(a) != -system.slot_sign(b):
                violations.append(f"pair {a}-{b} does not cancel")
                cancelling = False

    weight = sum(abs(c) for c in system.coeffs)
    parity_ok = n % 2 == 1 or weight % 2 == 0
    if not parity_ok:
        violations.append(f"even dimension {n} requires an even coefficient weight, got {weight}")
    valid = perfect and cancelling and parity_ok and not violations
    return ValidationReport(valid, perfect, cancelling, tuple(violations), weight, parity_ok)


def _odd_dimension(n: int) -> None:
    if n < 1 or n % 2 == 0:
        raise MatchingError(f"a single simplex is a cycle only in odd dimension, got n={n}")


def enumerate_single(n: int) -> Iterator[Matching]:
    """All ``n``-matchings, lexicographic in ``(pi(0), pi(2), ...)``."""
    _odd_dimension(n)
    for images in permutations(range(1, n + 1, 2)):
        yield Matching(n, images)


def count_single(n: int) -> int:
    _odd_dimension(n)
    return math.factorial((n + 1) // 2)


def _slot_split(n: int, coeffs: Sequence[int]) -> tuple[list[Slot], list[Slot]]:
    slots = [(i, j) for i in range(len(coeffs)) for j in range(n + 1)]
    pos = [s for s in slots if coeffs[s[0]] * (-1) ** s[1] > 0]
    neg = [s for s in slots if coeffs[s[0]] * (-1) ** s[1] < 0]
    return pos, neg


def enumerate_systems(n: int, coeffs: Sequence[int], max_simplices: int = MAX_SIMPLICES) -> Iterator[MatchingSystem]:
    """Every cancelling perfect pairing for the given signs.

    Positive slots (``eps_i * (-1)**j == +1``) are matched bijectively with the
    negative ones; systems come out lexicographically in the tuple of images
    of the sorted positive slots.
    """
    coeffs = tuple(coeffs)
    if n < 1:
        raise MatchingError(f"dimension must be positive, got {n}")
    if not 1 <= len(coeffs) <= max_simplices:
        raise MatchingError(f"{len(coeffs)} simplices exceeds the configured limit {max_simplices}")
    if any(c not in (1, -1) for c in coeffs):
        raise MatchingError(f"coefficients must be +1 or -1, got {coeffs}")
    pos, neg = _slot_split(n, coeffs)
    if len(pos) != len(neg):
        raise MatchingError(
            f"n={n}, eps={_sign_string(coeffs)}: {len(pos)} positive vs {len(neg)} negative facet slots, "
            "no cancelling pairing exists"
        )
    for images in permutations(neg):
        yield MatchingSystem(n, coeffs, tuple(zip(pos, images)))


def enumerate_two_simplex(n: int, sign_type: SignType | str) -> Iterator[MatchingSystem]:
    return enumerate_systems(n, SignType(sign_type).coeffs)


def count_systems(n: int, coeffs: Sequence[int]) -> int:
    pos, neg = _slot_split(n, coeffs)
    if len(pos) != len(neg):
        raise MatchingError(f"n={n}, eps={_sign_string(coeffs)} admits no cancelling pairing")
    return math.factorial(len(pos))


def standard_matching(n: int) -> Matching:
    _odd_dimension(n)
    return Matching(n, tuple(range(1, n + 1, 2)))


def trivial_extension(m: Matching) -> Matching:
    """The ``(n+2)``-matching agreeing with ``m`` and sending ``n+1`` to ``n+2``."""
    return Matching(m.n + 2, m.images + (m.n + 2,))


# -- catalog -----------------------------------------------------------------

CATALOG_HELP = {
    "dim3-exotic": "3-matching 0->3, 2->1; model space has the homology of S^3",
    "dim5-exotic": "5-matching 0->3, 2->5, 4->1; homology violates Poincare duality",
    "standard-<n>": "0->1, 2->3, ..., n-1->n for odd n; model space is S^n",
    "s1xs-odd-<n>": "two simplices sigma - sigma' for odd n: 0<->n, j<->j', 0'<->n' (cycle on S^1 x S^(n-1))",
    "s1xs-even-<n>": "two simplices sigma - sigma' for even n: 0<->n', j<->j', n<->0' (cycle on S^1 x S^(n-1))",
}


def _s1xs(n: int, odd: bool) -> MatchingSystem:
    if n < 2:
        raise MatchingError(f"S^1 x S^(n-1) systems need n >= 2, got {n}")
    if odd != (n % 2 == 1):
        kind = "odd" if odd else "even"
        raise MatchingError(f"s1xs-{kind}-{n}: dimension parity does not match")
    pairs = [((0, j), (1, j)) for j in range(1, n)]
    if odd:
        pairs += [((0, 0), (0, n)), ((1, 0), (1, n))]
    else:
        pairs += [((0, 0), (1, n)), ((0, n), (1, 0))]
    return MatchingSystem(n, (1, -1), pairs)


def catalog(name: str) -> MatchingSystem:
    if name == "dim3-exotic":
        return Matching.from_dict(3, {0: 3, 2: 1}).as_system()
    if name == "dim5-exotic":
        return Matching.from_dict(5, {0: 3, 2: 5, 4: 1}).as_system()
    m = re.fullmatch(r"(standard|s1xs-odd|s1xs-even)-(\d+)", name)
    if m is None:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG_HELP)}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "standard":
        return standard_matching(n).as_system()
    return _s1xs(n, kind == "s1xs-odd")


# -- descriptors -------------------------------------------------------------

def _sign_string(coeffs: Sequence[int]) -> str:
    return "".join("+" if c > 0 else "-" for c in coeffs)


def _render_system(system: MatchingSystem) -> str:
    pairs = ";".join(f"({a[0]},{a[1]})-({b[0]},{b[1]})" for a, b in system.pairs)
    return f"S:n={system.n};eps={_sign_string(system.coeffs)};pairs={pairs}"


def canonical_descriptor(system: MatchingSystem | Matching, dedup_symmetry: bool = False) -> str:
    """Deterministic text form.

    Valid single-simplex systems with coefficient +1 render in the short
    ``M:`` form.  With ``dedup_symmetry`` the result is minimal over all
    renamings of simplices that carry equal coefficients.
    """
    if isinstance(system, Matching):
        return system.descriptor()
    if system.k == 1 and system.coeffs == (1,) and system.n % 2 == 1 and validate_system(system).valid:
        return system.as_matching().descriptor()
    if not dedup_symmetry:
        return _render_system(system)
    best = None
    for perm in permutations(range(system.k)):
        if any(system.coeffs[i] != system.coeffs[p] for i, p in enumerate(perm)):
            continue
        text = _render_system(system.relabel(perm))
        if best is None or text < best:
            best = text
    return best


_M_RE = re.compile(r"M:n=(\d+);pi=(\d+:\d+(?:,\d+:\d+)*)")
_S_RE = re.compile(r"S:n=(\d+);eps=([+-]+);pairs=((?:\(\d+,\d+\)-\(\d+,\d+\))(?:;\(\d+,\d+\)-\(\d+,\d+\))*)?")
_PAIR_RE = re.compile(r"\((\d+),(\d+)\)-\((\d+),(\d+)\)")


def parse_descriptor(text: str) -> Matching | MatchingSystem:
    text = text.strip()
    m = _M_RE.fullmatch(text)
    if m:
        n = int(m.group(1))
        mapping = {}
        for item in m.group(2).split(","):
            e, o = (int(x) for x in item.split(":"))
            if e in mapping:
                raise DescriptorError(f"index {e} mapped twice in {text!r}")
            mapping[e] = o
        try:
            return Matching.from_dict(n, mapping)
        except MatchingError as exc:
            raise DescriptorError(str(exc)) from exc
    m = _S_RE.fullmatch(text)
    if m:
        n = int(m.group(1))
        coeffs = tuple(1 if c == "+" else -1 for c in m.group(2))
        pairs = [
            ((int(a), int(b)), (int(c), int(d)))
            for a, b, c, d in _PAIR_RE.findall(m.group(3) or "")
        ]
        return MatchingSystem(n, coeffs, pairs)
    raise DescriptorError(f"not a matching descriptor: {text!r}")


def as_system(obj: Matching | MatchingSystem | str) -> MatchingSystem:
    if isinstance(obj, str):
        obj = parse_descriptor(obj)
    if isinstance(obj, Matching):
        return obj.as_system()
    return obj
