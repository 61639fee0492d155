"""
Shift-mult equivalence of noise sets.

C and D are equivalent when D = g(C + {h}) for a unit g and any h. The largest
sum-free size depends only on the equivalence class of the noise.
"""

from dataclasses import dataclass
from typing import Tuple

from sympy import isprime

from ..core.cyclic import (
    CyclicSet,
    scale,
    stabilizer,
    translate,
    unit_inverse,
    units,
)
from ..production.error_handling import InvalidParametersError, ModulusMismatchError


@dataclass(frozen=True)
class CanonicalForm:
    """Lexicographically least member of an orbit, with the orbit size.

    ``transform`` is a pair (g, h) with representative = g(C + {h}).
    """

    representative: CyclicSet
    orbit_size: int
    transform: Tuple[int, int] = (1, 0)


def apply_transform(c: CyclicSet, g: int, h: int) -> CyclicSet:
    """g(C + {h}) for a unit g."""
    return scale(translate(c, h), g)


def canonicalize(c: CyclicSet) -> CanonicalForm:
    """Least orbit member under ascending-element order, and the orbit size.

    Every orbit member is a translate of some gC, and each translation class has
    exactly one least member containing 0, so it is enough to anchor each member
    of gC at 0. Each translation class holds n / |stab(C)| sets.
    """
    n = c.modulus
    if c.is_empty():
        return CanonicalForm(representative=c, orbit_size=1)

    best_key = None
    best_transform = (1, 0)
    classes = set()
    for g in units(n):
        scaled = scale(c, g)
        class_key = None
        for e in scaled:
            anchored = translate(scaled, -e).elements
            if class_key is None or anchored < class_key:
                class_key = anchored
            if best_key is None or anchored < best_key:
                best_key = anchored
                # g*C - e = g(C - e*g^-1)
                best_transform = (g, (-e * unit_inverse(g, n)) % n)
        classes.add(class_key)

    translates_per_class = stabilizer(c).generator
    return CanonicalForm(
        representative=CyclicSet.from_elements(n, best_key),
        orbit_size=len(classes) * translates_per_class,
        transform=best_transform,
    )


def are_equivalent(c: CyclicSet, d: CyclicSet) -> bool:
    if c.modulus != d.modulus:
        raise ModulusMismatchError(f"moduli {c.modulus} and {d.modulus} differ")
    if len(c) != len(d):
        return False
    return canonicalize(c).representative == canonicalize(d).representative


def size3_orbit(c: int, p: int) -> CyclicSet:
    """Residues d with {0, 1, d} equivalent to {0, 1, c} modulo a prime p.

    The six candidates are c, 1/c, -(c-1), -1/(c-1), (c-1)/c and c/(c-1).
    """
    if not isprime(p):
        raise InvalidParametersError(f"{p} is not prime")
    c %= p
    if c in (0, 1):
        raise InvalidParametersError(f"c must avoid 0 and 1 modulo {p}, got {c}")
    c_inv = unit_inverse(c, p)
    cm1 = (c - 1) % p
    cm1_inv = unit_inverse(cm1, p)
    return CyclicSet.from_elements(
        p,
        [
            c,
            c_inv,
            -cm1,
            -cm1_inv,
            cm1 * c_inv,
            c * cm1_inv,
        ],
    )
