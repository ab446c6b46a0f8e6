# solvers.py
"""
Exact minimum-cardinality solvers for the five domination-type parameters.

solve_min runs a cardinality-staged branch-and-bound: for k = lower bound, lower
bound + 1, ... it asks whether a satisfying set of size at most k exists, so the
first size that succeeds is the optimum. Nodes are pruned with a degree bound, a
2-domination deficiency bound and, on product instances with m >= 3, a column
window bound built from the triple-sum rules

    d_{i-1} + d_i + d_{i+1} >= 2      (dominating)
    s_{i-1} + s_i + s_{i+1} >= 3      (secure / 2-dominating)
    s_1 + s_2 + s_3 >= 4              (secure on paths, m >= 4)

solve_all_min enumerates every satisfying set of one size in lexicographic order
and backs certify; reference_solve is the naive subset oracle.
"""

import logging
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from config_schemas import SolveConfig, get_default_node_budget
from constants import ColumnRules, SolverDefaults
from graph_core import Graph, InvalidSizeError, ProductFamily, iter_bits, mask_of
from verifiers import (
    ContractError, ParamKind, VertexSet, neighbour_columns, satisfies, secure_defender, verify,
)

logger = logging.getLogger("Solvers")

_INFINITY = float('inf')


class BudgetExceededError(RuntimeError):
    """
    Raised when the node budget runs out before the optimum is proved.
    Every size below lower_bound has already been refuted.
    """

    def __init__(self, lower_bound: int, nodes: int, node_budget: int):
        super().__init__(
            f"node budget {node_budget} exhausted after {nodes} nodes; optimum is at least {lower_bound}"
        )
        self.lower_bound = lower_bound
        self.nodes = nodes
        self.node_budget = node_budget


class _OutOfBudget(Exception):
    pass


class _Found(Exception):
    pass


@dataclass
class SearchStats:
    nodes: int = 0
    wall_time: float = 0.0
    start_bound: int = 0


@dataclass
class SolveResult:
    kind: ParamKind
    value: int
    certificate: VertexSet
    stats: SearchStats = field(default_factory=SearchStats)
    canonical: bool = False


class _NodeCounter:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0
        self.level = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget()


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# Column-sum bounds

def _uses_secure_rules(kind: ParamKind) -> bool:
    return kind in (ParamKind.SDOM, ParamKind.TWODOM)


def _center_requirements(g: Graph, kind: ParamKind) -> List[int]:
    """Required count in the window around each column 1..n"""
    coords = g.coords
    n, m = coords.n, coords.m
    base = ColumnRules.SECURE_TRIPLE if _uses_secure_rules(kind) else ColumnRules.DOMINATING_TRIPLE
    reqs = [base] * n
    if (_uses_secure_rules(kind) and g.meta.family == ProductFamily.PATH_CLIQUE
            and m >= ColumnRules.CORNER_MIN_CLIQUE_ORDER and n >= 3):
        reqs[1] = ColumnRules.SECURE_PATH_CORNER
        reqs[n - 2] = ColumnRules.SECURE_PATH_CORNER
    return reqs


def _column_domain(m: int) -> List[int]:
    return sorted({min(x, m) for x in range(ColumnRules.PROFILE_CAP + 1)} | {m})


def lower_bound_columns(g: Graph, kind: ParamKind) -> int:
    """
    Smallest total of a column-count vector meeting every window requirement,
    with the rule that a column whose neighbour columns are empty must be full.
    Returns 0 when g is not a product instance with m >= 3.
    """
    coords = g.coords
    if coords is None or coords.m < ColumnRules.MIN_CLIQUE_ORDER:
        return 0
    kind = ParamKind(kind)
    n, m = coords.n, coords.m
    reqs = _center_requirements(g, kind)
    domain = _column_domain(m)

    def column_ok(left: int, mid: int, right: int, req: int) -> bool:
        if left + right == 0 and mid != m:
            return False
        return left + mid + right >= req

    def advance(states: Dict[Tuple[int, int], int], req: int) -> Dict[Tuple[int, int], int]:
        grown = {}
        for (prev, cur), total in states.items():
            for x in domain:
                if column_ok(prev, cur, x, req):
                    key = (cur, x)
                    if total + x < grown.get(key, _INFINITY):
                        grown[key] = total + x
        return grown

    cyclic = g.meta.family == ProductFamily.CYCLE_CLIQUE
    best = _INFINITY
    if cyclic and n == 2:
        for a in domain:
            for b in domain:
                if a + b >= reqs[0] and (b > 0 or a == m) and (a > 0 or b == m):
                    best = min(best, a + b)
    elif cyclic:
        for d1 in domain:
            for d2 in domain:
                states = {(d1, d2): d1 + d2}
                for i in range(3, n + 1):
                    states = advance(states, reqs[i - 2])
                for (prev, last), total in states.items():
                    if column_ok(prev, last, d1, reqs[n - 1]) and column_ok(last, d1, d2, reqs[0]):
                        best = min(best, total)
    else:
        states = {(0, x): x for x in domain}
        for i in range(2, n + 1):
            states = advance(states, reqs[i - 2])
        for (prev, last), total in states.items():
            if column_ok(prev, last, 0, reqs[n - 1]):
                best = min(best, total)
    return 0 if best == _INFINITY else int(best)


class _ColumnWindows:
    """Column windows of a product instance and their disjoint families"""

    def __init__(self, g: Graph, kind: ParamKind):
        coords = g.coords
        n = coords.n
        reqs = _center_requirements(g, kind)
        self.windows: List[Tuple[int, int]] = []
        for c in range(1, n + 1):
            mask = 0
            for col in set(neighbour_columns(g, c)) | {c}:
                mask |= coords.column_mask(col)
            self.windows.append((mask, reqs[c - 1]))

        if g.meta.family == ProductFamily.CYCLE_CLIQUE and n >= 3:
            centers_per_family = [[(o + 1 + 3 * t) % n for t in range(n // 3)] for o in range(3)]
        elif g.meta.family == ProductFamily.CYCLE_CLIQUE:
            centers_per_family = [[0]]
        else:
            centers_per_family = [list(range(o, n, 3)) for o in range(min(3, n))]
        self.families = [[self.windows[c] for c in centers] for centers in centers_per_family]

    @classmethod
    def for_graph(cls, g: Graph, kind: ParamKind) -> Optional["_ColumnWindows"]:
        coords = g.coords
        if coords is None or coords.m < ColumnRules.MIN_CLIQUE_ORDER:
            return None
        return cls(g, kind)

    def deficit(self, chosen: int) -> int:
        """Vertices still needed to meet every window of the best disjoint family"""
        best = 0
        for family in self.families:
            need = 0
            for mask, req in family:
                have = (chosen & mask).bit_count()
                if have < req:
                    need += req - have
            best = max(best, need)
        return best


# Branch and bound

class _BranchAndBound:
    """
    Depth-first search for a satisfying set of size at most k.

    State is (chosen, dom1, dom2, adj1, adj2, adj3): vertices dominated at least
    once and twice by closed neighbourhoods, and vertices with at least one, two
    and three open neighbours in the chosen set.
    """

    def __init__(self, g: Graph, kind: ParamKind, windows: Optional[_ColumnWindows], counter: _NodeCounter):
        self.g = g
        self.kind = kind
        self.adj = g.adjacency
        self.closed = g.closed_adjacency
        self.full = g.full_mask
        self.max_closed = g.max_degree + 1
        self.windows = windows
        self.counter = counter

    @staticmethod
    def root_state() -> Tuple[int, ...]:
        return (0, 0, 0, 0, 0, 0)

    def add(self, state: Tuple[int, ...], v: int) -> Tuple[int, ...]:
        chosen, d1, d2, a1, a2, a3 = state
        c = self.closed[v]
        o = self.adj[v]
        return (chosen | 1 << v, d1 | c, d2 | (d1 & c), a1 | o, a2 | (a1 & o), a3 | (a2 & o))

    def lower_bound(self, state: Tuple[int, ...]) -> int:
        chosen, d1, _, a1, a2, a3 = state
        need = _ceil_div((self.full & ~d1).bit_count(), self.max_closed)
        if self.kind == ParamKind.TWODOM:
            outside = self.full & ~chosen
            deficiency = 2 * (outside & ~a1).bit_count() + (outside & a1 & ~a2).bit_count()
            need = max(need, _ceil_div(deficiency, self.max_closed + 1))
        elif self.kind == ParamKind.DOM12:
            need = max(need, (a3 & ~chosen).bit_count())
        if self.windows is not None:
            need = max(need, self.windows.deficit(chosen))
        return need

    def branch(self, state: Tuple[int, ...], forbidden: int) -> Optional[List[int]]:
        """Candidates for the next vertex, or None when the chosen set already satisfies"""
        chosen, d1, d2, a1, a2, a3 = state
        free = self.full & ~chosen & ~forbidden

        if self.kind == ParamKind.TWODOM:
            short = self.full & ~chosen & ~a2
            if not short:
                return None
            w = _lowest(short)
            return list(iter_bits(((1 << w) | self.adj[w]) & free))

        if self.kind == ParamKind.DOM12:
            over = a3 & ~chosen
            if over:
                v = _lowest(over)
                return [] if forbidden >> v & 1 else [v]

        undominated = self.full & ~d1
        if undominated:
            u = _lowest(undominated)
            candidates = self.closed[u] & free
            if self.kind == ParamKind.IDOM:
                candidates &= ~a1
            return list(iter_bits(candidates))

        if self.kind != ParamKind.SDOM:
            return None

        for w in iter_bits(self.full & ~chosen):
            if secure_defender(self.g, chosen, w, d2) is not None:
                continue
            candidates = (1 << w) | (self.adj[w] & ~chosen)
            outside_w = ~self.closed[w]
            for v in iter_bits(self.adj[w] & chosen):
                p = _lowest(self.closed[v] & ~d2 & outside_w)
                candidates |= self.closed[p] & ~chosen
            return list(iter_bits(candidates & ~forbidden))
        return None

    def search(self, k: int) -> Optional[int]:
        return self.search_from(self.root_state(), k, 0)

    def search_from(self, state: Tuple[int, ...], remaining: int, forbidden: int) -> Optional[int]:
        self.counter.tick()
        if self.lower_bound(state) > remaining:
            return None
        candidates = self.branch(state, forbidden)
        if candidates is None:
            return state[0]
        if remaining == 0:
            return None
        for v in candidates:
            found = self.search_from(self.add(state, v), remaining - 1, forbidden)
            if found is not None:
                return found
            forbidden |= 1 << v
        return None


def _run_subtree(g: Graph, kind: ParamKind, remaining: int, vertex: int, forbidden: int,
                 use_windows: bool, budget: int) -> Tuple[Optional[int], int, bool]:
    """Worker entry: search below the root branch that picks vertex"""
    counter = _NodeCounter(budget)
    windows = _ColumnWindows.for_graph(g, kind) if use_windows else None
    engine = _BranchAndBound(g, kind, windows, counter)
    try:
        state = engine.add(engine.root_state(), vertex)
        return engine.search_from(state, remaining - 1, forbidden), counter.nodes, False
    except _OutOfBudget:
        return None, counter.nodes, True


def _parallel_level(engine: _BranchAndBound, k: int, cfg: SolveConfig) -> Optional[int]:
    """Fan the root branches of level k out to a process pool"""
    counter = engine.counter
    counter.tick()
    root = engine.root_state()
    if engine.lower_bound(root) > k:
        return None
    candidates = engine.branch(root, 0)
    if candidates is None:
        return 0
    if k == 0:
        return None

    # each root branch gets an equal share of what is left
    share = max(1, (counter.budget - counter.nodes) // max(1, len(candidates)))
    results: Dict[int, Optional[int]] = {}
    exhausted = False
    pool = ProcessPoolExecutor(max_workers=cfg.parallel_width)
    try:
        futures = {}
        forbidden = 0
        for index, v in enumerate(candidates):
            futures[pool.submit(_run_subtree, engine.g, engine.kind, k, v, forbidden,
                                engine.windows is not None, share)] = index
            forbidden |= 1 << v
        for future in as_completed(futures):
            found, nodes, ran_out = future.result()
            counter.nodes += nodes
            exhausted = exhausted or ran_out
            results[futures[future]] = found
            if found is not None:
                break
    finally:
        pool.shutdown(wait=True, cancel_futures=True)

    successes = sorted(index for index, found in results.items() if found is not None)
    if successes:
        return results[successes[0]]
    if exhausted or counter.nodes > counter.budget:
        raise _OutOfBudget()
    return None


def _start_bound(g: Graph, kind: ParamKind, use_column_pruning: bool) -> int:
    n = g.vertex_count
    bound = max(1, _ceil_div(n, g.max_degree + 1))
    if kind == ParamKind.TWODOM:
        bound = max(bound, _ceil_div(2 * n, g.max_degree + 2))
    if use_column_pruning:
        bound = max(bound, lower_bound_columns(g, kind))
    return bound


def _solve_connected(g: Graph, kind: ParamKind, cfg: SolveConfig, counter: _NodeCounter,
                     offset: int) -> Tuple[int, int, int]:
    """Optimum, certificate mask and starting bound for one component"""
    windows = _ColumnWindows.for_graph(g, kind) if cfg.use_column_pruning else None
    engine = _BranchAndBound(g, kind, windows, counter)
    start = _start_bound(g, kind, cfg.use_column_pruning)

    for k in range(start, g.vertex_count + 1):
        counter.level = offset + k
        logger.debug(f"{kind.value}: trying size {k} ({counter.nodes} nodes so far)")
        if cfg.parallel_width > 0:
            found = _parallel_level(engine, k, cfg)
        else:
            found = engine.search(k)
        if found is not None:
            if found.bit_count() != k or not satisfies(g, kind, found):
                raise RuntimeError(f"search returned an invalid {kind.value} set at size {k}")
            return k, found, start
    raise RuntimeError(f"no {kind.value} set found up to {g.vertex_count} vertices")


class _LexicographicSearch:
    """Include/exclude enumeration of satisfying sets of one size, in lexicographic order"""

    def __init__(self, g: Graph, kind: ParamKind, size: int, counter: _NodeCounter,
                 windows: Optional[_ColumnWindows]):
        self.g = g
        self.kind = kind
        self.size = size
        self.counter = counter
        self.windows = windows
        self.n = g.vertex_count
        self.engine = _BranchAndBound(g, kind, windows, counter)

        self.settle = [0] * self.n
        for w in range(self.n):
            self.settle[g.closed_adjacency[w].bit_length() - 1] |= 1 << w
        self.closings = defaultdict(list)
        if windows is not None:
            for mask, req in windows.windows:
                self.closings[mask.bit_length() - 1].append((mask, req))
        self.results: List[int] = []

    def run(self, first_only: bool = False) -> List[int]:
        self.results = []
        self.first_only = first_only
        try:
            self._visit(0, self.engine.root_state(), 0)
        except _Found:
            pass
        return self.results

    def _settled_ok(self, i: int, state: Tuple[int, ...]) -> bool:
        chosen, d1, _, _, a2, _ = state
        settled = self.settle[i]
        if self.kind == ParamKind.TWODOM:
            if settled & ~chosen & ~a2:
                return False
        elif settled & ~d1:
            return False
        for mask, req in self.closings.get(i, ()):
            if (chosen & mask).bit_count() < req:
                return False
        return True

    def _visit(self, i: int, state: Tuple[int, ...], count: int):
        self.counter.tick()
        chosen = state[0]
        remaining = self.size - count
        if remaining == 0:
            if satisfies(self.g, self.kind, chosen):
                self.results.append(chosen)
                if self.first_only:
                    raise _Found()
            return
        if self.n - i < remaining:
            return
        if self.kind == ParamKind.DOM12 and state[5] & ~chosen & ((1 << i) - 1):
            return
        if self.engine.lower_bound(state) > remaining:
            return

        if not (self.kind == ParamKind.IDOM and state[3] >> i & 1):
            included = self.engine.add(state, i)
            if self._settled_ok(i, included):
                self._visit(i + 1, included, count + 1)
        if self._settled_ok(i, state):
            self._visit(i + 1, state, count)


def _enumerate(g: Graph, kind: ParamKind, size: int, counter: _NodeCounter,
               use_column_pruning: bool, first_only: bool) -> List[int]:
    if size < 0 or size > g.vertex_count:
        raise ContractError(f"size {size} outside 0..{g.vertex_count}")
    if use_column_pruning and size < lower_bound_columns(g, kind):
        return []
    windows = _ColumnWindows.for_graph(g, kind) if use_column_pruning else None
    return _LexicographicSearch(g, kind, size, counter, windows).run(first_only)


def _budget_error(counter: _NodeCounter) -> BudgetExceededError:
    logger.warning(f"node budget {counter.budget} exhausted at size {counter.level}")
    return BudgetExceededError(counter.level, counter.nodes, counter.budget)


# Public API

def solve_all_min(g: Graph, kind: ParamKind, size: int, node_budget: Optional[int] = None) -> List[VertexSet]:
    """Every set of exactly `size` vertices satisfying kind, in lexicographic order"""
    kind = ParamKind(kind)
    if g.vertex_count > SolverDefaults.ENUMERATION_WARN_VERTICES:
        logger.warning(f"enumerating {kind.value} sets of size {size} on {g.vertex_count} vertices")
    counter = _NodeCounter(node_budget if node_budget is not None else get_default_node_budget())
    counter.level = size
    try:
        masks = _enumerate(g, kind, size, counter, True, first_only=False)
    except _OutOfBudget:
        raise _budget_error(counter)
    return [VertexSet(g.vertex_count, bits) for bits in masks]


def solve_min(g: Graph, kind: ParamKind, cfg: Optional[SolveConfig] = None) -> SolveResult:
    """
    Exact minimum size of a set satisfying kind, with a certificate.

    Disconnected graphs are solved one component at a time. With
    canonical_certificate the certificate is the lexicographically smallest
    minimum set.
    """
    cfg = cfg or SolveConfig()
    kind = ParamKind(kind)
    if g.vertex_count == 0:
        raise InvalidSizeError("the solver needs a nonempty graph")

    counter = _NodeCounter(cfg.effective_node_budget())
    started = time.perf_counter()
    components = g.components()
    value = 0
    bits = 0
    start_bound = 0

    try:
        if len(components) == 1:
            value, bits, start_bound = _solve_connected(g, kind, cfg, counter, 0)
            if cfg.canonical_certificate:
                bits = _enumerate(g, kind, value, counter, cfg.use_column_pruning, first_only=True)[0]
        else:
            logger.debug(f"solving {len(components)} components separately")
            for comp in components:
                sub, id_map = g.induced_subgraph(comp)
                sub_value, sub_bits, sub_start = _solve_connected(sub, kind, cfg, counter, value)
                if cfg.canonical_certificate:
                    sub_bits = _enumerate(sub, kind, sub_value, counter, False, first_only=True)[0]
                value += sub_value
                start_bound += sub_start
                bits |= mask_of(id_map[x] for x in iter_bits(sub_bits))
    except _OutOfBudget:
        raise _budget_error(counter)

    stats = SearchStats(nodes=counter.nodes, wall_time=time.perf_counter() - started, start_bound=start_bound)
    logger.info(f"{kind.label}({g.describe()}) = {value} [{stats.nodes} nodes, {stats.wall_time:.3f}s]")
    return SolveResult(kind, value, VertexSet(g.vertex_count, bits), stats, cfg.canonical_certificate)


def certify(g: Graph, kind: ParamKind, claimed_value: int, certificate: VertexSet,
            cfg: Optional[SolveConfig] = None) -> bool:
    """
    True iff the certificate passes the verifier, has the claimed size, and no
    smaller satisfying set exists (re-proved by enumeration, not by solve_min).
    """
    cfg = cfg or SolveConfig()
    kind = ParamKind(kind)
    if not verify(g, kind, certificate).ok:
        logger.info(f"certify: set fails the {kind.description} check")
        return False
    if len(certificate) != claimed_value:
        logger.info(f"certify: set has {len(certificate)} vertices, claimed {claimed_value}")
        return False

    counter = _NodeCounter(cfg.effective_node_budget())
    sizes = [claimed_value - 1] if kind.is_monotone else list(range(claimed_value))
    try:
        for size in sizes:
            if size < 0:
                continue
            counter.level = size
            if _enumerate(g, kind, size, counter, cfg.use_column_pruning, first_only=True):
                logger.info(f"certify: a {kind.description} set of size {size} exists")
                return False
    except _OutOfBudget:
        raise _budget_error(counter)
    return True


def reference_solve(g: Graph, kind: ParamKind, max_size: Optional[int] = None,
                    node_budget: Optional[int] = None) -> Optional[SolveResult]:
    """
    Naive oracle: try every subset in size order, each size in lexicographic order.
    The first hit is the lexicographically smallest minimum set. Returns None when
    nothing satisfies up to max_size.
    """
    kind = ParamKind(kind)
    n = g.vertex_count
    if max_size is None and n > SolverDefaults.REFERENCE_MAX_VERTICES:
        raise ContractError(f"reference search over {n} vertices needs a max_size")
    limit = n if max_size is None else min(max_size, n)
    counter = _NodeCounter(node_budget if node_budget is not None else get_default_node_budget())
    started = time.perf_counter()

    try:
        for size in range(limit + 1):
            counter.level = size
            for combo in combinations(range(n), size):
                counter.tick()
                bits = mask_of(combo)
                if satisfies(g, kind, bits):
                    stats = SearchStats(counter.nodes, time.perf_counter() - started, 0)
                    logger.info(f"reference {kind.label}({g.describe()}) = {size} [{counter.nodes} subsets]")
                    return SolveResult(kind, size, VertexSet(n, bits), stats, canonical=True)
    except _OutOfBudget:
        raise _budget_error(counter)
    return None
