"""
The C-(k, l)-sum-free predicate and the exact optimizer for its largest size.

The optimizer enumerates candidate sets in increasing element order and keeps,
for each partial set A, the plain multiples jA (j = 0..k) as bitmasks:

    j(A + {x}) = jA  |  ((j-1)(A + {x}) + x)

so adding an element costs k rotations. A partial set is sum-free iff

    kA  and  lA + D  are disjoint,   D = (l-1)C - (k-1)C,

which is one sumset against a precomputed D. Sum-freeness is closed under
subsets, so any failing partial set prunes its whole subtree.
"""

import logging
import time
from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Sequence, Tuple

from ..bounds.formulas import bounds_for_noise, bounds_prefix_noise, bounds_two_element
from ..core.cyclic import (
    CyclicSet,
    difference_set,
    divisors,
    interval,
    iterated_noisy,
    lift,
    popcount,
    rotate_mask,
    scale,
    sumset_mask,
    units,
)
from ..production.batch import BatchProcessor
from ..production.cache import OracleCache, get_global_cache, oracle_key
from ..production.error_handling import (
    ConstructionError,
    InvalidParametersError,
    ModulusMismatchError,
    SearchCeilingError,
)

logger = logging.getLogger("noisy_sumsets.search")

DEFAULT_WITNESS_CAP = 8
DEFAULT_SEARCH_CEILING = 64
SUMFREE_TABLE_CEILING = 20
_DEADLINE_CHECK_INTERVAL = 1024


@dataclass(frozen=True)
class SumFreeParams:
    """The modulus n and the multiplicities k > l >= 1."""

    n: int
    k: int
    ell: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParametersError(f"modulus must be positive, got {self.n}")
        if self.ell < 1 or self.k <= self.ell:
            raise InvalidParametersError(
                f"need k > l >= 1, got k={self.k}, l={self.ell}"
            )

    @property
    def delta(self) -> int:
        """gcd(n, k-l)."""
        return gcd(self.n, self.k - self.ell)

    @property
    def translation_step(self) -> int:
        """Generator n/delta of the translations t with (k-l)t = 0 mod n."""
        return self.n // self.delta


@dataclass
class SearchResult:
    """Exact optimum with canonical witnesses and search statistics."""

    mu: int
    witnesses: List[CyclicSet] = field(default_factory=list)
    nodes_explored: int = 0
    exhaustive: bool = True
    start_bound: int = 0

    @property
    def witness_literals(self) -> List[str]:
        return [w.to_literal() for w in self.witnesses]


def _check_noise(params: SumFreeParams, noise: CyclicSet) -> None:
    if noise.modulus != params.n:
        raise ModulusMismatchError(f"noise lives mod {noise.modulus}, not mod {params.n}")
    if noise.is_empty():
        raise InvalidParametersError("noise set must be nonempty")


def is_sumfree(a: CyclicSet, noise: CyclicSet, params: SumFreeParams) -> bool:
    """True iff k *_C A and l *_C A are disjoint; the empty set is sum-free."""
    if a.modulus != noise.modulus:
        raise ModulusMismatchError(f"moduli {a.modulus} and {noise.modulus} differ")
    _check_noise(params, noise)
    if a.is_empty():
        return True
    k_side = iterated_noisy(params.k, a, noise)
    l_side = iterated_noisy(params.ell, a, noise)
    return k_side.mask & l_side.mask == 0


class SumFreeKernel:
    """Incremental sum-free test over bitmask states for fixed (n, k, l, C)."""

    def __init__(self, params: SumFreeParams, noise: CyclicSet):
        _check_noise(params, noise)
        self.params = params
        self.n = params.n
        self.k = params.k
        self.ell = params.ell
        k_noise = _multiple_mask(noise.mask, params.k - 1, params.n)
        l_noise = _multiple_mask(noise.mask, params.ell - 1, params.n)
        self.offsets = difference_set(
            CyclicSet(params.n, l_noise), CyclicSet(params.n, k_noise)
        )
        self._offset_list = self.offsets.elements
        self.empty_state: Tuple[int, ...] = (1,) + (0,) * params.k

    def extend(self, state: Tuple[int, ...], x: int) -> Tuple[int, ...]:
        """State of A + {x} from the state (0A, 1A, ..., kA) of A."""
        n = self.n
        new = [1]
        for j in range(1, self.k + 1):
            new.append(state[j] | rotate_mask(new[j - 1], x, n))
        return tuple(new)

    def is_free(self, state: Tuple[int, ...]) -> bool:
        k_side = state[self.k]
        l_side = state[self.ell]
        if k_side == 0:
            return True
        n = self.n
        for shift in self._offset_list:
            if rotate_mask(l_side, shift, n) & k_side:
                return False
        return True

    def state_of(self, elements: Sequence[int]) -> Tuple[int, ...]:
        state = self.empty_state
        for x in elements:
            state = self.extend(state, x)
        return state


def _multiple_mask(mask: int, times: int, n: int) -> int:
    """Mask of times*X, with 0*X = {0}."""
    result = 1
    for _ in range(times):
        result = sumset_mask(result, mask, n)
    return result


class _DeadlineReached(Exception):
    pass


def _search_level(
    kernel: SumFreeKernel,
    m: int,
    first_elements: Sequence[int],
    witness_cap: int,
    deadline_ns: Optional[int],
) -> Tuple[List[Tuple[int, ...]], int]:
    """Lexicographically first sum-free m-sets with minimum in ``first_elements``.

    Returns at most ``witness_cap`` sets and the number of nodes explored.
    Raises _DeadlineReached once the wall clock passes ``deadline_ns``.
    """
    n = kernel.n
    found: List[Tuple[int, ...]] = []
    nodes = 0

    for first in first_elements:
        if first > n - m:
            break
        nodes += 1
        root = kernel.extend(kernel.empty_state, first)
        if not kernel.is_free(root):
            continue

        path = [first]
        states = [root]
        nexts = [first + 1]
        while path:
            if len(path) == m:
                found.append(tuple(path))
                if len(found) >= witness_cap:
                    return found, nodes
                path.pop()
                states.pop()
                nexts.pop()
                continue

            x = nexts[-1]
            if x > n - (m - len(path)):
                path.pop()
                states.pop()
                nexts.pop()
                continue
            nexts[-1] = x + 1

            nodes += 1
            if deadline_ns is not None and nodes % _DEADLINE_CHECK_INTERVAL == 0:
                if time.time_ns() > deadline_ns:
                    raise _DeadlineReached()

            state = kernel.extend(states[-1], x)
            if kernel.is_free(state):
                path.append(x)
                states.append(state)
                nexts.append(x + 1)

    return found, nodes


def _search_branch(
    task: Tuple[int, int, int, int, int, int, int, Optional[int]]
) -> Tuple[List[Tuple[int, ...]], int, bool]:
    """Worker entry point: one minimum element at one level."""
    n, k, ell, noise_mask, m, first, cap, deadline_ns = task
    kernel = SumFreeKernel(SumFreeParams(n, k, ell), CyclicSet(n, noise_mask))
    try:
        found, nodes = _search_level(kernel, m, [first], cap, deadline_ns)
    except _DeadlineReached:
        return [], 0, True
    return found, nodes, False


def upper_estimate(params: SumFreeParams, noise: CyclicSet) -> int:
    """Starting size for the descent: the best closed-form upper bound, within 0..n."""
    try:
        bound = bounds_for_noise(params.n, params.k, params.ell, noise).upper
    except InvalidParametersError:
        bound = params.n
    return max(0, min(params.n, bound))


class _LevelRunner:
    """Runs one size level either inline or split by minimum element across workers."""

    def __init__(self, kernel, noise, witness_cap, deadline_ns, jobs):
        self.kernel = kernel
        self.noise = noise
        self.witness_cap = witness_cap
        self.deadline_ns = deadline_ns
        self.jobs = jobs
        self.first_elements = range(kernel.params.translation_step)
        self.nodes = 0

    def run(self, m: int) -> List[Tuple[int, ...]]:
        if self.jobs <= 1:
            found, nodes = _search_level(
                self.kernel, m, self.first_elements, self.witness_cap, self.deadline_ns
            )
            self.nodes += nodes
            return found

        p = self.kernel.params
        tasks = [
            (p.n, p.k, p.ell, self.noise.mask, m, first, self.witness_cap, self.deadline_ns)
            for first in self.first_elements
            if first <= p.n - m
        ]
        outcomes = BatchProcessor(max_workers=self.jobs, chunk_size=len(tasks) or 1).map_ordered(
            tasks, _search_branch
        )
        found: List[Tuple[int, ...]] = []
        timed_out = False
        for branch_found, nodes, branch_timed_out in outcomes:
            self.nodes += nodes
            found.extend(branch_found)
            timed_out = timed_out or branch_timed_out
        if timed_out:
            raise _DeadlineReached()
        return found[: self.witness_cap]


def search_mu(
    params: SumFreeParams,
    noise: CyclicSet,
    witness_cap: int = DEFAULT_WITNESS_CAP,
    *,
    time_budget_ms: Optional[int] = None,
    jobs: int = 1,
    start_bound: Optional[int] = None,
) -> SearchResult:
    """Exact maximum size of a C-(k, l)-sum-free set, optionally under a time budget.

    The descent starts at ``start_bound`` (default: the best closed-form upper
    bound) and stops at the first feasible size. If that first feasible size is
    the start itself, sizes above it are tried until one is infeasible, so the
    result never depends on the bound being right. A run cut short by the budget
    comes back with ``exhaustive=False`` and the best size certified so far.
    """
    _check_noise(params, noise)
    if witness_cap < 1:
        raise InvalidParametersError(f"witness cap must be positive, got {witness_cap}")

    estimate = upper_estimate(params, noise) if start_bound is None else start_bound
    estimate = max(0, min(params.n, estimate))
    deadline_ns = None
    if time_budget_ms is not None:
        deadline_ns = time.time_ns() + time_budget_ms * 1_000_000

    kernel = SumFreeKernel(params, noise)
    runner = _LevelRunner(kernel, noise, witness_cap, deadline_ns, jobs)
    best_size, best = 0, []
    exhaustive = True

    try:
        m = estimate
        while m >= 1:
            found = runner.run(m)
            logger.debug("n=%d k=%d l=%d size %d: %d witnesses", params.n, params.k, params.ell, m, len(found))
            if found:
                best_size, best = m, found
                break
            m -= 1

        if best_size == estimate:
            m = estimate + 1
            while m <= params.n:
                found = runner.run(m)
                if not found:
                    break
                logger.warning(
                    "start bound %d undershoots: size %d is feasible for n=%d k=%d l=%d noise=%s",
                    estimate, m, params.n, params.k, params.ell, noise.to_literal(),
                )
                best_size, best = m, found
                m += 1
    except _DeadlineReached:
        exhaustive = False
        logger.info(
            "budget of %s ms reached for n=%d k=%d l=%d noise=%s",
            time_budget_ms, params.n, params.k, params.ell, noise.to_literal(),
        )

    if best_size == 0:
        witnesses = [CyclicSet.empty(params.n)]
    else:
        witnesses = [CyclicSet.from_elements(params.n, w) for w in best]

    return SearchResult(
        mu=best_size,
        witnesses=witnesses,
        nodes_explored=runner.nodes,
        exhaustive=exhaustive,
        start_bound=estimate,
    )


def brute_force_mu(
    params: SumFreeParams,
    noise: CyclicSet,
    witness_cap: int = DEFAULT_WITNESS_CAP,
    *,
    jobs: int = 1,
    search_ceiling: int = DEFAULT_SEARCH_CEILING,
    cache: Optional[OracleCache] = None,
) -> SearchResult:
    """Exhaustive optimum for n within the search ceiling."""
    _check_noise(params, noise)
    if params.n > search_ceiling:
        raise SearchCeilingError(
            f"n={params.n} exceeds the search ceiling {search_ceiling}; "
            "use a budgeted sweep instead"
        )

    key = None
    if cache is not None:
        key = oracle_key(params.n, params.k, params.ell, noise.to_literal()) + f":cap={witness_cap}"
        hit = cache.get(key)
        if hit is not None:
            return SearchResult(
                mu=hit["mu"],
                witnesses=[CyclicSet.from_literal(w, params.n) for w in hit["witnesses"]],
                nodes_explored=hit["nodes_explored"],
                exhaustive=True,
                start_bound=hit["start_bound"],
            )

    result = search_mu(params, noise, witness_cap, jobs=jobs)

    if cache is not None:
        cache.set(
            key,
            {
                "mu": result.mu,
                "witnesses": result.witness_literals,
                "nodes_explored": result.nodes_explored,
                "start_bound": result.start_bound,
            },
        )
    return result


def sumfree_table(params: SumFreeParams, noise: CyclicSet) -> bytearray:
    """is_sumfree for every subset of Z/nZ, indexed by mask (n up to 20).

    Each mask extends the state of the mask without its highest bit, so the whole
    table costs one extension and one test per subset.
    """
    n = params.n
    if n > SUMFREE_TABLE_CEILING:
        raise SearchCeilingError(f"sum-free tables stop at n={SUMFREE_TABLE_CEILING}")
    kernel = SumFreeKernel(params, noise)
    size = 1 << n
    table = bytearray(size)
    states: List[Tuple[int, ...]] = [kernel.empty_state] * size
    table[0] = 1
    for mask in range(1, size):
        top = mask.bit_length() - 1
        state = kernel.extend(states[mask ^ (1 << top)], top)
        states[mask] = state
        table[mask] = 1 if kernel.is_free(state) else 0
    return table


def table_mu(table: bytearray) -> int:
    """Largest popcount among the sum-free masks of a table."""
    return max(popcount(mask) for mask, free in enumerate(table) if free)


def longest_interval(params: SumFreeParams, c: int) -> Tuple[int, CyclicSet]:
    """Length and a witness of the longest sum-free interval for C = {0, ..., c-1}.

    Lengths are tried from the closed-form upper value downwards; every start
    point is checked, so the result is a scan, not a formula.
    """
    if c < 2:
        raise InvalidParametersError(f"prefix noise needs c >= 2, got {c}")
    n = params.n
    noise = interval(n, 0, c)
    top = min(n, max(0, bounds_prefix_noise(n, params.k, params.ell, c).upper + 1))
    for length in range(top, 0, -1):
        for start in range(n):
            candidate = interval(n, start, length)
            if is_sumfree(candidate, noise, params):
                return length, candidate
    return 0, CyclicSet.empty(n)


def interval_sumset_bounds(n: int, k: int, c: int, a: int, m: int) -> Tuple[int, int]:
    """First and last point of k *_C [a, a+m-1] for C = {0, ..., c-1}.

    The noisy multiple of an interval is the interval from ka to
    ka + km + (c-2)k - (c-1), read modulo n; both endpoints come back reduced.
    It wraps onto all of Z/nZ once km + (c-2)k - (c-1) >= n - 1.
    """
    if n < 1:
        raise InvalidParametersError(f"modulus must be positive, got {n}")
    if k < 1 or c < 1 or m < 1:
        raise InvalidParametersError(f"need k, c, m >= 1, got k={k}, c={c}, m={m}")
    first = k * a
    last = first + k * m + (c - 2) * k - (c - 1)
    return first % n, last % n


def build_0s_witness(
    params: SumFreeParams,
    s: int,
    *,
    cache: Optional[OracleCache] = None,
) -> CyclicSet:
    """A {0, s}-sum-free set at least as large as the closed-form lower bound.

    Candidates are coset unions lifted from optimal classical sum-free sets of
    Z/eZ for every e | gcd(s, n), the longest sum-free interval for noise
    {0, ..., s}, and the interval for {0, ..., gcd(s, n)} carried over by a
    unit. The result is checked against ``lower``; it also reaches
    ``refined_lower``. When s is a unit the {0, 1} interval is scaled by s, which
    carries {0, 1} onto {0, s}.
    """
    n = params.n
    if not 1 <= s < n:
        raise InvalidParametersError(f"need 1 <= s < n, got s={s}, n={n}")
    noise = CyclicSet.from_elements(n, [0, s])
    d = gcd(s, n)
    if cache is None:
        cache = get_global_cache()

    candidates: List[CyclicSet] = []
    if d == 1:
        _, base = longest_interval(params, 2)
        candidates.append(scale(base, s))
    else:
        for e in divisors(d):
            if e == 1:
                continue
            local = brute_force_mu(
                SumFreeParams(e, params.k, params.ell),
                CyclicSet.from_elements(e, [0]),
                witness_cap=1,
                search_ceiling=max(e, DEFAULT_SEARCH_CEILING),
                cache=cache,
            )
            candidates.append(lift(local.witnesses[0], n))
        candidates.append(longest_interval(params, s + 1)[1])
        if d != s:
            _, reduced = longest_interval(params, d + 1)
            candidates.append(_map_gap(reduced, d, s, n))

    best = max(candidates, key=lambda w: (len(w), [-x for x in w.elements]))
    target = bounds_two_element(n, params.k, params.ell, s).lower
    if len(best) < target or not is_sumfree(best, noise, params):
        raise ConstructionError(
            f"witness of size {len(best)} for n={n} k={params.k} l={params.ell} s={s} "
            f"misses the lower bound {target}"
        )
    return best


def _map_gap(witness: CyclicSet, d: int, s: int, n: int) -> CyclicSet:
    """Carry a {0, ..., d}-sum-free set to a {0, s}-sum-free one.

    With d = gcd(s, n) there is a unit u with u*d = s mod n; {0, d} lies in
    {0, ..., d}, and multiplying by u sends {0, d} to {0, s}.
    """
    for u in units(n):
        if (u * d - s) % n == 0:
            return scale(witness, u)
    raise ConstructionError(f"no unit carries {d} to {s} modulo {n}")


def is_redundant(a: CyclicSet, z: int, c: int, k: int) -> bool:
    """True when z sits strictly inside a short cyclic gap of A.

    The gap from x to y (both in A) must satisfy 2 <= y - x < c - ceil((c-2)/k);
    adding such a z leaves k *_C A unchanged for C = {0, ..., c-1}.
    """
    if c < 2:
        raise InvalidParametersError(f"prefix noise needs c >= 2, got {c}")
    if k < 1:
        raise InvalidParametersError(f"k must be at least 1, got {k}")
    n = a.modulus
    threshold = c - (-(-(c - 2) // k))
    members = a.elements
    for x in members:
        dz = (z - x) % n
        if dz == 0:
            continue
        for y in members:
            dy = (y - x) % n
            if dz < dy < threshold:
                return True
    return False


