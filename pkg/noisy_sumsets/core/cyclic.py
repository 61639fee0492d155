"""
Exact set arithmetic in Z/nZ.

Subsets are stored as Python integer bitmasks (bit i set iff residue i is a
member), so a translate is a rotation of the mask and a general sumset is the
union of rotations over the smaller operand.
"""

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, List, Tuple

from sympy import divisors as _sympy_divisors
from sympy import mod_inverse

from ..production.error_handling import (
    InvalidParametersError,
    ModulusMismatchError,
    NotAUnitError,
)

MAX_MODULUS = 1 << 16


def full_mask(n: int) -> int:
    return (1 << n) - 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def rotate_mask(mask: int, shift: int, n: int) -> int:
    """Translate the set encoded by ``mask`` by ``shift`` in Z/nZ."""
    shift %= n
    if shift == 0 or mask == 0:
        return mask
    return ((mask << shift) | (mask >> (n - shift))) & full_mask(n)


def sumset_mask(a: int, b: int, n: int) -> int:
    """Mask of A + B, rotating the larger operand by each member of the smaller."""
    if a == 0 or b == 0:
        return 0
    if popcount(a) < popcount(b):
        a, b = b, a
    result = 0
    for shift in iter_bits(b):
        result |= rotate_mask(a, shift, n)
    return result


def divisors(n: int) -> List[int]:
    """Positive divisors of n in increasing order."""
    return [int(d) for d in _sympy_divisors(n)]


def units(n: int) -> List[int]:
    """The unit group (Z/nZ)^x as sorted residues; Z/1Z has the single unit 0."""
    if n == 1:
        return [0]
    return [g for g in range(1, n) if gcd(g, n) == 1]


def unit_inverse(g: int, n: int) -> int:
    """Inverse of the unit g modulo n."""
    if gcd(g, n) != 1:
        raise NotAUnitError(f"{g} is not a unit modulo {n}")
    if n == 1:
        return 0
    return int(mod_inverse(g % n, n))


def _check_modulus(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidParametersError(f"modulus must be an integer, got {n!r}")
    if n < 1:
        raise InvalidParametersError(f"modulus must be positive, got {n}")
    if n > MAX_MODULUS:
        raise InvalidParametersError(f"modulus {n} exceeds the ceiling {MAX_MODULUS}")


@dataclass(frozen=True)
class CyclicSet:
    """A subset of Z/nZ.

    Two sets are equal iff their moduli and masks are equal. Iteration and
    ``elements`` are ascending.
    """

    modulus: int
    mask: int = 0

    def __post_init__(self):
        _check_modulus(self.modulus)
        if self.mask < 0 or self.mask >> self.modulus:
            raise InvalidParametersError(
                f"mask has members outside 0..{self.modulus - 1}"
            )

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[int]) -> "CyclicSet":
        _check_modulus(n)
        mask = 0
        for x in elements:
            mask |= 1 << (int(x) % n)
        return cls(n, mask)

    @classmethod
    def from_literal(cls, literal: str, n: int) -> "CyclicSet":
        """Parse a comma-separated residue list such as ``"0,1,5"``."""
        text = literal.strip()
        if not text:
            return cls.from_elements(n, [])
        elements = []
        for token in text.split(","):
            token = token.strip()
            if not token.isdecimal():
                raise InvalidParametersError(f"bad set literal element {token!r}")
            elements.append(int(token))
        return cls.from_elements(n, elements)

    @classmethod
    def empty(cls, n: int) -> "CyclicSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "CyclicSet":
        _check_modulus(n)
        return cls(n, full_mask(n))

    @property
    def elements(self) -> Tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    def to_literal(self) -> str:
        return ",".join(str(x) for x in iter_bits(self.mask))

    def is_empty(self) -> bool:
        return self.mask == 0

    def is_subset(self, other: "CyclicSet") -> bool:
        _same_modulus(self, other)
        return self.mask & ~other.mask == 0

    def union(self, other: "CyclicSet") -> "CyclicSet":
        _same_modulus(self, other)
        return CyclicSet(self.modulus, self.mask | other.mask)

    def intersection(self, other: "CyclicSet") -> "CyclicSet":
        _same_modulus(self, other)
        return CyclicSet(self.modulus, self.mask & other.mask)

    def add(self, x: int) -> "CyclicSet":
        return CyclicSet(self.modulus, self.mask | (1 << (x % self.modulus)))

    def __len__(self) -> int:
        return popcount(self.mask)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, int):
            return False
        return bool(self.mask >> (x % self.modulus) & 1)

    def __repr__(self) -> str:
        return f"CyclicSet({{{self.to_literal()}}} mod {self.modulus})"


@dataclass(frozen=True)
class Subgroup:
    """The subgroup <d> of Z/nZ, d a positive divisor of n.

    d = n is the trivial subgroup {0}; d = 1 is the whole group.
    """

    modulus: int
    generator: int

    def __post_init__(self):
        _check_modulus(self.modulus)
        if self.generator < 1 or self.modulus % self.generator:
            raise InvalidParametersError(
                f"subgroup generator {self.generator} does not divide {self.modulus}"
            )

    @property
    def order(self) -> int:
        return self.modulus // self.generator

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and x % self.generator == 0

    def as_set(self) -> CyclicSet:
        return CyclicSet.from_elements(
            self.modulus, range(0, self.modulus, self.generator)
        )

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        if self.modulus != other.modulus:
            raise ModulusMismatchError(
                f"subgroups of Z/{self.modulus} and Z/{other.modulus}"
            )
        return self.generator % other.generator == 0


def _same_modulus(*sets: CyclicSet) -> int:
    n = sets[0].modulus
    for s in sets[1:]:
        if s.modulus != n:
            raise ModulusMismatchError(f"moduli {n} and {s.modulus} differ")
    return n


def make_set(n: int, elements: Iterable[int]) -> CyclicSet:
    """Reduce elements mod n into a set; duplicates collapse."""
    return CyclicSet.from_elements(n, elements)


def interval(n: int, start: int, length: int) -> CyclicSet:
    """The cyclic interval {start, start+1, ..., start+length-1} mod n."""
    if length < 0:
        raise InvalidParametersError(f"interval length must be non-negative, got {length}")
    _check_modulus(n)
    if length >= n:
        return CyclicSet.full(n)
    return CyclicSet(n, rotate_mask(full_mask(length), start, n))


def minkowski_sum(a: CyclicSet, b: CyclicSet) -> CyclicSet:
    n = _same_modulus(a, b)
    return CyclicSet(n, sumset_mask(a.mask, b.mask, n))


def noisy_sum(a: CyclicSet, b: CyclicSet, c: CyclicSet) -> CyclicSet:
    """A +_C B = A + B + C."""
    n = _same_modulus(a, b, c)
    if c.is_empty():
        raise InvalidParametersError("noise set must be nonempty")
    return CyclicSet(n, sumset_mask(sumset_mask(a.mask, b.mask, n), c.mask, n))


def iterated_noisy(k: int, a: CyclicSet, c: CyclicSet) -> CyclicSet:
    """k *_C A = kA + (k-1)C, built by the recurrence (k *_C A) +_C A."""
    n = _same_modulus(a, c)
    if k < 1:
        raise InvalidParametersError(f"k must be at least 1, got {k}")
    if a.is_empty() or c.is_empty():
        raise InvalidParametersError("iterated noisy sums need nonempty A and C")
    result = a.mask
    for _ in range(k - 1):
        result = sumset_mask(sumset_mask(result, a.mask, n), c.mask, n)
    return CyclicSet(n, result)


def negate(a: CyclicSet) -> CyclicSet:
    return CyclicSet.from_elements(a.modulus, (-x for x in a))


def difference_set(a: CyclicSet, b: CyclicSet) -> CyclicSet:
    n = _same_modulus(a, b)
    return CyclicSet(n, sumset_mask(a.mask, negate(b).mask, n))


def translate(a: CyclicSet, g: int) -> CyclicSet:
    return CyclicSet(a.modulus, rotate_mask(a.mask, g, a.modulus))


def scale(a: CyclicSet, g: int) -> CyclicSet:
    """Multiply every member by the unit g; divide by g via ``scale(a, unit_inverse(g, n))``."""
    n = a.modulus
    if gcd(g, n) != 1:
        raise NotAUnitError(f"{g} is not a unit modulo {n}")
    return CyclicSet.from_elements(n, (g * x for x in a))


def stabilizer(a: CyclicSet) -> Subgroup:
    """Stabilizer {g : g + A = A} as <d> with d the least stabilizing divisor of n.

    The empty set and the whole group are stabilized by everything (d = 1).
    """
    n = a.modulus
    for d in divisors(n):
        if rotate_mask(a.mask, d, n) == a.mask:
            return Subgroup(n, d)
    return Subgroup(n, n)


def project(a: CyclicSet, e: int) -> CyclicSet:
    """Image of A under the canonical projection Z/nZ -> Z/eZ."""
    n = a.modulus
    if e < 1 or n % e:
        raise InvalidParametersError(f"{e} does not divide {n}")
    chunk = full_mask(e)
    mask, result = a.mask, 0
    while mask:
        result |= mask & chunk
        mask >>= e
    return CyclicSet(e, result)


def lift(b: CyclicSet, n: int) -> CyclicSet:
    """Full preimage of B (modulus e) under the projection Z/nZ -> Z/eZ."""
    e = b.modulus
    _check_modulus(n)
    if n % e:
        raise InvalidParametersError(f"{e} does not divide {n}")
    mask = 0
    for block in range(n // e):
        mask |= b.mask << (block * e)
    return CyclicSet(n, mask)
