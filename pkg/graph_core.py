# graph_core.py
"""
Graph construction for paths, cycles, cliques, edge lists and their direct products.

Adjacency is stored as one Python int bit vector per vertex. Product instances
P_n x K_m and C_n x K_m carry ProductMeta so that callers can translate between
vertex ids and 1-based (column i, row j) coordinates:

    id = (i - 1) * m + (j - 1)

which keeps every column X_i a contiguous run of m bits.
"""

import io
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, List, Optional, TextIO, Tuple, Union

import numpy as np

from constants import CertificateFormat

logger = logging.getLogger("GraphCore")


class GraphError(Exception):
    """Base class for graph construction failures"""
    pass


class InvalidSizeError(GraphError, ValueError):
    """Raised when a generator receives an order outside its domain"""
    pass


class EdgeListParseError(GraphError):
    """Raised on malformed edge-list text; carries the 1-based line number"""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ProductFamily(str, Enum):
    PATH_CLIQUE = "path-clique"
    CYCLE_CLIQUE = "cycle-clique"
    OTHER = "other"


class FactorKind(str, Enum):
    """Tag left by the generators so direct_product can recognise its factors"""
    PATH = "path"
    CYCLE = "cycle"
    CLIQUE = "clique"


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids: Iterable[int]) -> int:
    mask = 0
    for v in ids:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class ProductMeta:
    family: ProductFamily
    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise InvalidSizeError(f"product orders must be positive, got n={self.n}, m={self.m}")


@dataclass(frozen=True)
class ProductCoords:
    """Bijection between vertex ids and 1-based (column, row) pairs of [n] x [m]"""
    n: int
    m: int

    def index(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.m):
            raise InvalidSizeError(f"coordinate ({i} {j}) outside [{self.n}]x[{self.m}]")
        return (i - 1) * self.m + (j - 1)

    def coords(self, v: int) -> Tuple[int, int]:
        if not 0 <= v < self.n * self.m:
            raise InvalidSizeError(f"vertex id {v} outside 0..{self.n * self.m - 1}")
        return v // self.m + 1, v % self.m + 1

    def column_of(self, v: int) -> int:
        return v // self.m + 1

    def row_of(self, v: int) -> int:
        return v % self.m + 1

    def column_mask(self, i: int) -> int:
        """Bit mask of column X_i"""
        if not 1 <= i <= self.n:
            raise InvalidSizeError(f"column {i} outside 1..{self.n}")
        return ((1 << self.m) - 1) << ((i - 1) * self.m)

    def row_mask(self, j: int) -> int:
        """Bit mask of row R_j"""
        if not 1 <= j <= self.m:
            raise InvalidSizeError(f"row {j} outside 1..{self.m}")
        return mask_of(self.index(i, j) for i in range(1, self.n + 1))


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph with bit-vector adjacency"""
    vertex_count: int
    adjacency: Tuple[int, ...]
    meta: Optional[ProductMeta] = None
    factor: Optional[FactorKind] = None

    def __post_init__(self):
        object.__setattr__(self, 'adjacency', tuple(int(a) for a in self.adjacency))
        n = self.vertex_count
        if n < 0:
            raise InvalidSizeError(f"vertex count must be non-negative, got {n}")
        if len(self.adjacency) != n:
            raise GraphError(f"adjacency has {len(self.adjacency)} rows for {n} vertices")
        limit = 1 << n
        for v, row in enumerate(self.adjacency):
            if row < 0 or row >= limit:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adjacency[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        if self.meta is not None and self.meta.family != ProductFamily.OTHER:
            if self.meta.n * self.meta.m != n:
                raise GraphError(f"product meta {self.meta.n}x{self.meta.m} does not match {n} vertices")

    @cached_property
    def closed_adjacency(self) -> Tuple[int, ...]:
        return tuple(row | (1 << v) for v, row in enumerate(self.adjacency))

    @cached_property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    @cached_property
    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adjacency), default=0)

    @property
    def full_mask(self) -> int:
        return (1 << self.vertex_count) - 1

    @property
    def coords(self) -> Optional[ProductCoords]:
        """Coordinate translation, present only on product instances"""
        if self.meta is None or self.meta.family == ProductFamily.OTHER:
            return None
        return ProductCoords(self.meta.n, self.meta.m)

    @property
    def is_product_instance(self) -> bool:
        return self.coords is not None

    def neighbors(self, v: int) -> int:
        return self.adjacency[v]

    def closed_neighborhood(self, v: int) -> int:
        return self.closed_adjacency[v]

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def edges(self) -> List[Tuple[int, int]]:
        """Edges (u, v) with u < v in lexicographic order"""
        return [(u, v) for u in range(self.vertex_count)
                for v in iter_bits(self.adjacency[u] >> (u + 1) << (u + 1))]

    def components(self) -> List[int]:
        """Connected components as bit masks, ordered by smallest vertex"""
        remaining = self.full_mask
        found = []
        while remaining:
            seed = remaining & -remaining
            comp = seed
            frontier = seed
            while frontier:
                grown = 0
                for v in iter_bits(frontier):
                    grown |= self.adjacency[v]
                frontier = grown & ~comp
                comp |= frontier
            found.append(comp)
            remaining &= ~comp
        return found

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def induced_subgraph(self, mask: int) -> Tuple["Graph", List[int]]:
        """
        Subgraph induced by mask plus id_map, where id_map[new_id] = old_id.
        Product metadata is dropped.
        """
        id_map = list(iter_bits(mask & self.full_mask))
        position = {old: new for new, old in enumerate(id_map)}
        rows = []
        for old in id_map:
            row = 0
            for u in iter_bits(self.adjacency[old] & mask):
                row |= 1 << position[u]
            rows.append(row)
        return Graph(len(id_map), tuple(rows)), id_map

    def to_adjacency_matrix(self) -> np.ndarray:
        matrix = np.zeros((self.vertex_count, self.vertex_count), dtype=np.int8)
        for u, v in self.edges():
            matrix[u, v] = 1
            matrix[v, u] = 1
        return matrix

    def describe(self) -> str:
        if self.coords is not None:
            base = "P" if self.meta.family == ProductFamily.PATH_CLIQUE else "C"
            return f"{base}_{self.meta.n} x K_{self.meta.m}"
        return f"graph({self.vertex_count} vertices, {self.edge_count} edges)"


def make_graph(vertex_count: int, edges: Iterable[Tuple[int, int]],
               meta: Optional[ProductMeta] = None) -> Graph:
    """Build a validated graph from an edge iterable"""
    if vertex_count < 0:
        raise InvalidSizeError(f"vertex count must be non-negative, got {vertex_count}")
    rows = [0] * vertex_count
    for u, v in edges:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise GraphError(f"edge ({u}, {v}) outside 0..{vertex_count - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(vertex_count, tuple(rows), meta=meta)


def make_path(n: int) -> Graph:
    if n < 1:
        raise InvalidSizeError(f"path order must be at least 1, got {n}")
    g = make_graph(n, ((k, k + 1) for k in range(n - 1)))
    return Graph(g.vertex_count, g.adjacency, factor=FactorKind.PATH)


def make_cycle(n: int) -> Graph:
    """C_n; C_2 is a single edge"""
    if n < 2:
        raise InvalidSizeError(f"cycle order must be at least 2, got {n}")
    edges = [(k, k + 1) for k in range(n - 1)]
    if n >= 3:
        edges.append((n - 1, 0))
    g = make_graph(n, edges)
    return Graph(g.vertex_count, g.adjacency, factor=FactorKind.CYCLE)


def make_clique(m: int) -> Graph:
    if m < 1:
        raise InvalidSizeError(f"clique order must be at least 1, got {m}")
    full = (1 << m) - 1
    return Graph(m, tuple(full & ~(1 << v) for v in range(m)), factor=FactorKind.CLIQUE)


def direct_product(g: Graph, h: Graph) -> Graph:
    """
    G x H via the Kronecker product of adjacency matrices.

    Vertex (a, b) gets id a * |V(H)| + b. A path or cycle factor paired with a
    clique factor yields a product instance with coordinates attached.
    """
    if g.vertex_count == 0 or h.vertex_count == 0:
        raise InvalidSizeError("direct product needs two nonempty factors")
    product = np.kron(g.to_adjacency_matrix(), h.to_adjacency_matrix())
    rows = tuple(mask_of(int(c) for c in np.flatnonzero(row)) for row in product)

    meta = None
    if h.factor == FactorKind.CLIQUE and g.factor in (FactorKind.PATH, FactorKind.CYCLE):
        family = ProductFamily.PATH_CLIQUE if g.factor == FactorKind.PATH else ProductFamily.CYCLE_CLIQUE
        meta = ProductMeta(family, g.vertex_count, h.vertex_count)
    result = Graph(g.vertex_count * h.vertex_count, rows, meta=meta)
    logger.debug(f"direct product {g.vertex_count}x{h.vertex_count}: {result.edge_count} edges")
    return result


def column_neighbours(family: ProductFamily, n: int, i: int) -> List[int]:
    """Columns adjacent to column i of an n-column instance (cyclically on cycles)"""
    cols = set()
    if i > 1:
        cols.add(i - 1)
    if i < n:
        cols.add(i + 1)
    if family == ProductFamily.CYCLE_CLIQUE and n >= 3:
        cols.add(n if i == 1 else i - 1)
        cols.add(1 if i == n else i + 1)
    return sorted(cols)


def product_instance(family: Union[ProductFamily, str], n: int, m: int) -> Graph:
    """
    P_n x K_m or C_n x K_m built from the adjacency rule: two vertices are adjacent
    iff they lie in different rows and adjacent columns.
    """
    family = ProductFamily(family)
    if family == ProductFamily.OTHER:
        raise InvalidSizeError("product_instance needs the path-clique or cycle-clique family")
    min_n = 1 if family == ProductFamily.PATH_CLIQUE else 2
    if n < min_n:
        raise InvalidSizeError(f"{family.value} needs n >= {min_n}, got {n}")
    if m < 2:
        raise InvalidSizeError(f"{family.value} needs m >= 2, got {m}")

    coords = ProductCoords(n, m)
    rows = []
    for i in range(1, n + 1):
        neighbour_cols = 0
        for c in column_neighbours(family, n, i):
            neighbour_cols |= coords.column_mask(c)
        for j in range(1, m + 1):
            rows.append(neighbour_cols & ~coords.row_mask(j))
    return Graph(n * m, tuple(rows), meta=ProductMeta(family, n, m))


def read_edge_list(source: Union[str, TextIO]) -> Graph:
    """
    Parse edge-list text: a vertex count line, then one "u v" pair per line with
    0-based ids. Lines starting with '#' are comments.
    """
    stream = io.StringIO(source) if isinstance(source, str) else source
    vertex_count = None
    seen = set()
    edges = []
    last_line = 0

    for line_number, raw in enumerate(stream, start=1):
        last_line = line_number
        line = raw.strip()
        if not line or line.startswith(CertificateFormat.COMMENT_PREFIX):
            continue
        tokens = line.split()
        if vertex_count is None:
            if len(tokens) != 1 or not _is_int(tokens[0]) or int(tokens[0]) < 0:
                raise EdgeListParseError(f"expected a vertex count, got {line!r}", line_number)
            vertex_count = int(tokens[0])
            continue
        if len(tokens) != 2 or not all(_is_int(t) for t in tokens):
            raise EdgeListParseError(f"expected 'u v', got {line!r}", line_number)
        u, v = int(tokens[0]), int(tokens[1])
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise EdgeListParseError(f"vertex id out of range 0..{vertex_count - 1}: {line!r}", line_number)
        if u == v:
            raise EdgeListParseError(f"self-loop at vertex {u}", line_number)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListParseError(f"duplicate edge {key[0]} {key[1]}", line_number)
        seen.add(key)
        edges.append(key)

    if vertex_count is None:
        raise EdgeListParseError("missing vertex count", max(last_line, 1))
    return make_graph(vertex_count, edges)


def write_edge_list(g: Graph) -> str:
    """Canonical edge-list text: sorted edges, u < v, 0-based ids"""
    lines = [str(g.vertex_count)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _is_int(token: str) -> bool:
    try:
        int(token)
        return True
    except ValueError:
        return False
