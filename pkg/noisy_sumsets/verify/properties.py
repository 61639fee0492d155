"""
Seeded property suites.

All randomness comes from one counter-based generator,
``numpy.random.Generator(numpy.random.Philox(seed))``, and every draw is an
integer, so a suite report is a pure function of its arguments.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime

from ..bounds.formulas import kneser_noisy_lower
from ..core.cyclic import (
    CyclicSet,
    divisors,
    interval,
    iterated_noisy,
    lift,
    minkowski_sum,
    noisy_sum,
    project,
    rotate_mask,
    scale,
    stabilizer,
    unit_inverse,
    units,
)
from ..equivalence.orbits import apply_transform, are_equivalent, size3_orbit
from ..production.error_handling import ErrorHandler, ErrorSeverity, get_global_error_handler
from ..search.sumfree import (
    SumFreeKernel,
    SumFreeParams,
    brute_force_mu,
    is_redundant,
    is_sumfree,
    search_mu,
    sumfree_table,
    table_mu,
)

logger = logging.getLogger("noisy_sumsets.verify")

DEFAULT_EQUIVALENCE_PAIRS: Tuple[Tuple[int, int], ...] = ((2, 1), (3, 1), (3, 2))
DEFAULT_TRANSLATION_PAIRS: Tuple[Tuple[int, int], ...] = ((3, 1), (4, 1), (5, 1))


@dataclass
class SuiteReport:
    """Pass counts per check plus the failing instances."""

    name: str
    trials: int = 0
    passes: Dict[str, int] = field(default_factory=dict)
    failures: List[Dict[str, Any]] = field(default_factory=list)
    notes: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, name: str, holds: bool, **context: Any) -> bool:
        if holds:
            self.passes[name] = self.passes.get(name, 0) + 1
        else:
            self.failures.append({"check": name, **context})
        return holds

    def note(self, name: str) -> None:
        self.notes[name] = self.notes.get(name, 0) + 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "trials": self.trials,
            "passes": dict(sorted(self.passes.items())),
            "failures": self.failures,
            "notes": dict(sorted(self.notes.items())),
        }


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def _draw(rng: np.random.Generator, low: int, high: int) -> int:
    """Uniform integer in [low, high]."""
    return int(rng.integers(low, high + 1))


def random_set(rng: np.random.Generator, n: int, max_size: int = 0) -> CyclicSet:
    """Nonempty random subset of Z/nZ with at most ``max_size`` members (default n // 2)."""
    cap = max_size or max(1, n // 2)
    size = _draw(rng, 1, min(n, cap))
    elements = rng.choice(n, size=size, replace=False)
    return CyclicSet.from_elements(n, (int(x) for x in elements))


def _random_unit(rng: np.random.Generator, n: int) -> int:
    pool = units(n)
    return pool[_draw(rng, 0, len(pool) - 1)]


def _finish(report: SuiteReport, handler: ErrorHandler) -> SuiteReport:
    for failure in report.failures:
        handler.record_anomaly(
            "PropertyFailure", f"{report.name}: {failure['check']}", failure, ErrorSeverity.HIGH
        )
    logger.info("%s: %d trials, %d failures", report.name, report.trials, len(report.failures))
    return report


def kneser_suite(trials: int = 1000, n_max: int = 64, seed: int = 0) -> SuiteReport:
    """Kneser's inequality, stabilizer monotonicity and the noisy Kneser bound on random pairs."""
    rng = make_rng(seed)
    report = SuiteReport("kneser", trials=trials)
    for _ in range(trials):
        n = _draw(rng, 1, n_max)
        a = random_set(rng, n)
        b = random_set(rng, n)
        total = minkowski_sum(a, b)
        h = stabilizer(total)
        h_set = h.as_set()

        rhs = len(minkowski_sum(a, h_set)) + len(minkowski_sum(b, h_set)) - h.order
        context = {"n": n, "a": a.to_literal(), "b": b.to_literal()}
        report.check("kneser", len(total) >= rhs, **context)
        if len(total) == rhs:
            report.note("kneser_equality")

        report.check(
            "substab",
            stabilizer(a).is_subgroup_of(h) and stabilizer(b).is_subgroup_of(h),
            **context,
        )
        report.check(
            "size_range",
            max(len(a), len(b)) <= len(total) <= len(a) * len(b),
            **context,
        )

        if n >= 2:
            c = _draw(rng, 2, min(n, 6))
            blurred = noisy_sum(a, b, interval(n, 0, c))
            report.check(
                "noisy_kneser",
                len(blurred) >= kneser_noisy_lower(n, len(a), len(b), c),
                c=c,
                **context,
            )
    return _finish(report, get_global_error_handler())


def equivalence_suite(
    n_max: int = 14,
    seed: int = 0,
    trials: int = 200,
    pairs: Sequence[Tuple[int, int]] = DEFAULT_EQUIVALENCE_PAIRS,
) -> SuiteReport:
    """Oracle mu agrees between C and g(C + {h}) for random noise and transforms."""
    rng = make_rng(seed)
    report = SuiteReport("equivalence", trials=trials)
    for _ in range(trials):
        n = _draw(rng, 2, n_max)
        c = random_set(rng, n, max_size=4)
        g = _random_unit(rng, n)
        h = _draw(rng, 0, n - 1)
        d = apply_transform(c, g, h)
        context = {"n": n, "c": c.to_literal(), "g": g, "h": h}

        report.check("equivalent", are_equivalent(c, d), **context)
        for k, ell in pairs:
            params = SumFreeParams(n, k, ell)
            mu_c = brute_force_mu(params, c, witness_cap=1).mu
            mu_d = brute_force_mu(params, d, witness_cap=1).mu
            report.check("mu_invariant", mu_c == mu_d, k=k, l=ell, mu_c=mu_c, mu_d=mu_d, **context)
    return _finish(report, get_global_error_handler())


def orbit_suite(p_max: int = 13, handler: Optional[ErrorHandler] = None) -> SuiteReport:
    """size3_orbit against orbit enumeration for {0, 1, c} over every prime p <= p_max.

    Disagreements are reported as failures and recorded, never raised.
    """
    handler = handler or get_global_error_handler()
    report = SuiteReport("size3_orbit")
    for p in range(3, p_max + 1):
        if not isprime(p):
            continue
        orbits = {c: size3_orbit(c, p) for c in range(2, p)}
        covered = set()
        for c in range(2, p):
            base = CyclicSet.from_elements(p, [0, 1, c])
            covered.update(orbits[c])
            for d in range(2, p):
                report.trials += 1
                claimed = d in orbits[c]
                actual = are_equivalent(base, CyclicSet.from_elements(p, [0, 1, d]))
                report.check("matches_enumeration", claimed == actual, p=p, c=c, d=d)
                report.check("symmetric", claimed == (c in orbits[d]), p=p, c=c, d=d)
        report.check("covers", covered == set(range(2, p)), p=p)
    for failure in report.failures:
        handler.record_anomaly(
            "OrbitMismatch", f"size-3 orbit disagreement at p={failure['p']}", failure, ErrorSeverity.MEDIUM
        )
    return report


def downward_closure_suite(chains: int = 500, seed: int = 0, n_max: int = 24) -> SuiteReport:
    """Along random increasing chains, no superset of a non-sum-free set is sum-free."""
    rng = make_rng(seed)
    report = SuiteReport("downward_closure", trials=chains)
    for _ in range(chains):
        n = _draw(rng, 3, n_max)
        k = _draw(rng, 2, 4)
        ell = _draw(rng, 1, k - 1)
        c = _draw(rng, 2, 3)
        params = SumFreeParams(n, k, ell)
        noise = interval(n, 0, c)
        order = [int(x) for x in rng.permutation(n)]

        current = CyclicSet.empty(n)
        broken_at = None
        for step, x in enumerate(order):
            current = current.add(x)
            free = is_sumfree(current, noise, params)
            if broken_at is None:
                if not free:
                    broken_at = step
                continue
            report.check(
                "superset_not_free",
                not free,
                n=n, k=k, l=ell, c=c, set=current.to_literal(),
            )
            if step - broken_at >= 3:
                break
    return _finish(report, get_global_error_handler())


def translation_symmetry_suite(
    n_max: int = 16,
    pairs: Sequence[Tuple[int, int]] = DEFAULT_TRANSLATION_PAIRS,
    kernel_check_max: int = 8,
) -> SuiteReport:
    """Exhaustive check that translating by n/gcd(n, k-l) preserves sum-freeness.

    Uses noise {0, 1} and the full sum-free table of each group, which also gives
    an independent value of mu to compare with the search. For small n the table
    is compared with the direct predicate.
    """
    report = SuiteReport("translation_symmetry")
    for n in range(2, n_max + 1):
        noise = CyclicSet.from_elements(n, [0, 1])
        for k, ell in pairs:
            params = SumFreeParams(n, k, ell)
            table = sumfree_table(params, noise)
            report.trials += 1

            if params.delta > 1:
                step = params.translation_step
                broken = [
                    mask
                    for mask in range(1 << n)
                    if table[mask] != table[rotate_mask(mask, step, n)]
                ]
                report.check(
                    "translation_invariant",
                    not broken,
                    n=n, k=k, l=ell, first_mask=broken[0] if broken else None,
                )

            report.check(
                "table_matches_search",
                table_mu(table) == search_mu(params, noise).mu,
                n=n, k=k, l=ell,
            )

            if n <= kernel_check_max:
                disagree = [
                    mask
                    for mask in range(1 << n)
                    if bool(table[mask]) != is_sumfree(CyclicSet(n, mask), noise, params)
                ]
                report.check("kernel_matches_predicate", not disagree, n=n, k=k, l=ell)
    return _finish(report, get_global_error_handler())


def lift_project_suite(trials: int = 500, n_max: int = 64, seed: int = 0) -> SuiteReport:
    """project(lift(B)) = B, lift(project(A)) contains A, and lifts multiply sizes by n/e."""
    rng = make_rng(seed)
    report = SuiteReport("lift_project", trials=trials)
    for _ in range(trials):
        n = _draw(rng, 1, n_max)
        options = divisors(n)
        e = options[_draw(rng, 0, len(options) - 1)]
        b = random_set(rng, e)
        a = random_set(rng, n)
        lifted = lift(b, n)
        context = {"n": n, "e": e, "a": a.to_literal(), "b": b.to_literal()}
        report.check("section", project(lifted, e) == b, **context)
        report.check("preimage_size", len(lifted) == len(b) * (n // e), **context)
        report.check("saturation", a.is_subset(lift(project(a, e), n)), **context)
    return _finish(report, get_global_error_handler())


def scale_suite(trials: int = 500, n_max: int = 64, seed: int = 0) -> SuiteReport:
    """Scaling by a unit and then by its inverse is the identity and keeps sizes."""
    rng = make_rng(seed)
    report = SuiteReport("scale", trials=trials)
    for _ in range(trials):
        n = _draw(rng, 1, n_max)
        a = random_set(rng, n)
        g = _random_unit(rng, n)
        scaled = scale(a, g)
        context = {"n": n, "g": g, "a": a.to_literal()}
        report.check("inverse", scale(scaled, unit_inverse(g, n)) == a, **context)
        report.check("size", len(scaled) == len(a), **context)
    return _finish(report, get_global_error_handler())


def redundancy_suite(n_max: int = 24, c_max: int = 5, k_max: int = 3) -> SuiteReport:
    """Whenever is_redundant holds, adding z leaves k *_C A unchanged.

    A ranges over {0, y} and {0, y, w}; both the predicate and the sumsets
    commute with translation, so anchoring one member at 0 loses nothing.
    """
    report = SuiteReport("redundancy")
    for n in range(2, n_max + 1):
        for c in range(2, min(c_max, n) + 1):
            noise = interval(n, 0, c)
            for k in range(1, k_max + 1):
                for y in range(1, n):
                    for w in [None] + list(range(1, n)):
                        members = [0, y] if w is None else [0, y, w]
                        a = CyclicSet.from_elements(n, members)
                        base = None
                        for z in range(n):
                            report.trials += 1
                            if not is_redundant(a, z, c, k):
                                continue
                            if base is None:
                                base = iterated_noisy(k, a, noise)
                            grown = iterated_noisy(k, a.add(z), noise)
                            report.check(
                                "sumset_unchanged",
                                grown == base,
                                n=n, c=c, k=k, a=a.to_literal(), z=z,
                            )
    return _finish(report, get_global_error_handler())


def kernel_agreement(params: SumFreeParams, noise: CyclicSet, masks: Sequence[int]) -> bool:
    """The incremental kernel and the direct predicate agree on every given mask."""
    kernel = SumFreeKernel(params, noise)
    for mask in masks:
        a = CyclicSet(params.n, mask)
        if kernel.is_free(kernel.state_of(a.elements)) != is_sumfree(a, noise, params):
            return False
    return True


def run_all_suites(seed: int = 0) -> List[SuiteReport]:
    """Every property suite at its default size."""
    return [
        kneser_suite(seed=seed),
        downward_closure_suite(seed=seed),
        translation_symmetry_suite(),
        lift_project_suite(seed=seed),
        scale_suite(seed=seed),
        equivalence_suite(seed=seed),
        orbit_suite(),
        redundancy_suite(),
    ]
