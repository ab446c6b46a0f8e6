# verifiers.py
"""
Polynomial-time predicates for the five domination-type parameters.

Every predicate returns a Verdict carrying either a failure witness (the
smallest offending vertex and a reason) or, for secure domination, the map from
each outside vertex to its smallest-id defender.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from constants import CertificateFormat
from graph_core import Graph, ProductFamily, column_neighbours, iter_bits, mask_of

logger = logging.getLogger("Verifiers")


class ContractError(ValueError):
    """Raised when inputs do not fit the predicate: capacity mismatch, missing product meta, bad column"""
    pass


class CertificateParseError(ValueError):
    """Raised on malformed certificate text; carries the 1-based line number"""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ParamKind(str, Enum):
    DOM = "dom"
    IDOM = "idom"
    DOM12 = "dom12"
    TWODOM = "2dom"
    SDOM = "sdom"

    @property
    def label(self) -> str:
        """Symbol used in reports, e.g. gamma_s"""
        return _LABELS[self]

    @property
    def description(self) -> str:
        return _DESCRIPTIONS[self]

    @property
    def is_monotone(self) -> bool:
        """Supersets of a satisfying set also satisfy"""
        return self in (ParamKind.DOM, ParamKind.TWODOM, ParamKind.SDOM)


_LABELS = {
    ParamKind.DOM: "gamma",
    ParamKind.IDOM: "i",
    ParamKind.DOM12: "gamma_[1,2]",
    ParamKind.TWODOM: "gamma_2",
    ParamKind.SDOM: "gamma_s",
}

_DESCRIPTIONS = {
    ParamKind.DOM: "dominating",
    ParamKind.IDOM: "independent dominating",
    ParamKind.DOM12: "[1,2]-set",
    ParamKind.TWODOM: "2-dominating",
    ParamKind.SDOM: "secure dominating",
}


class FailureReason(str, Enum):
    UNDOMINATED = "UNDOMINATED"
    OVERDOMINATED = "OVERDOMINATED"
    ADJACENT = "ADJACENT"
    UNDERDOMINATED = "UNDERDOMINATED"
    UNDEFENDED = "UNDEFENDED"


@dataclass(frozen=True)
class VertexSet:
    """Fixed-capacity subset of vertex ids stored as a bit vector"""
    capacity: int
    bits: int = 0

    def __post_init__(self):
        if self.capacity < 0:
            raise ContractError(f"capacity must be non-negative, got {self.capacity}")
        if self.bits < 0 or self.bits >> self.capacity:
            raise ContractError(f"vertex set has ids outside 0..{self.capacity - 1}")

    @classmethod
    def from_ids(cls, capacity: int, ids: Iterable[int]) -> "VertexSet":
        ids = list(ids)
        for v in ids:
            if not 0 <= v < capacity:
                raise ContractError(f"vertex id {v} outside 0..{capacity - 1}")
        return cls(capacity, mask_of(ids))

    @classmethod
    def from_coords(cls, g: Graph, pairs: Iterable[Tuple[int, int]]) -> "VertexSet":
        coords = _require_coords(g)
        return cls(g.vertex_count, mask_of(coords.index(i, j) for i, j in pairs))

    def ids(self) -> List[int]:
        return list(iter_bits(self.bits))

    def to_coords(self, g: Graph) -> List[Tuple[int, int]]:
        coords = _require_coords(g)
        return [coords.coords(v) for v in iter_bits(self.bits)]

    def sort_key(self) -> Tuple[int, ...]:
        """Lexicographic key on the sorted id sequence"""
        return tuple(self.ids())

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.capacity and bool(self.bits >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)


@dataclass(frozen=True)
class FailureWitness:
    vertex: int
    reason: FailureReason


@dataclass(frozen=True)
class Verdict:
    ok: bool
    failure_witness: Optional[FailureWitness] = None
    defender_map: Optional[Dict[int, int]] = field(default=None, hash=False)

    def __post_init__(self):
        if self.ok and self.failure_witness is not None:
            raise ContractError("a passing verdict cannot carry a failure witness")
        if not self.ok and self.failure_witness is None:
            raise ContractError("a failing verdict needs a failure witness")

    @classmethod
    def failure(cls, vertex: int, reason: FailureReason) -> "Verdict":
        return cls(False, FailureWitness(vertex, reason))


@dataclass(frozen=True)
class ColumnProfile:
    """Per-column counts d_1..d_n of a set on a product instance"""
    d: Tuple[int, ...]
    cyclic: bool

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def total(self) -> int:
        return sum(self.d)

    def value(self, i: int) -> int:
        """d_i with 1-based i; paths read 0 outside 1..n, cycles wrap"""
        if self.cyclic:
            return self.d[(i - 1) % self.n]
        if 1 <= i <= self.n:
            return self.d[i - 1]
        return 0

    def triple_sum(self, i: int) -> int:
        """Sum over the distinct columns among i-1, i, i+1"""
        if self.cyclic:
            columns = {(c - 1) % self.n for c in (i - 1, i, i + 1)}
            return sum(self.d[c] for c in columns)
        return self.value(i - 1) + self.value(i) + self.value(i + 1)


@dataclass
class Certificate:
    """A vertex set, the parameter it witnesses and the verdicts gathered for it"""
    vertex_set: VertexSet
    kind: ParamKind
    verdicts: Dict[str, Verdict] = field(default_factory=dict)
    source: str = ""

    @property
    def size(self) -> int:
        return len(self.vertex_set)

    @property
    def all_ok(self) -> bool:
        return all(v.ok for v in self.verdicts.values())

    def failed_checks(self) -> List[str]:
        return [name for name, v in self.verdicts.items() if not v.ok]


# Mask helpers shared with the solvers

def dominated_mask(g: Graph, bits: int) -> int:
    closed = g.closed_adjacency
    dom = 0
    for v in iter_bits(bits):
        dom |= closed[v]
    return dom


def neighbour_count_masks(g: Graph, bits: int) -> Tuple[int, int, int]:
    """Masks of vertices with at least 1, 2 and 3 open neighbours in bits"""
    c1 = c2 = c3 = 0
    for v in iter_bits(bits):
        o = g.adjacency[v]
        c3 |= c2 & o
        c2 |= c1 & o
        c1 |= o
    return c1, c2, c3


def _closed_count_masks(g: Graph, bits: int) -> Tuple[int, int]:
    """Masks of vertices with at least 1 and 2 closed-neighbourhood hits in bits"""
    closed = g.closed_adjacency
    d1 = d2 = 0
    for v in iter_bits(bits):
        d2 |= d1 & closed[v]
        d1 |= closed[v]
    return d1, d2


def secure_defender(g: Graph, bits: int, w: int, dom2: int) -> Optional[int]:
    """Smallest v in N(w) ∩ S whose swap with w keeps S dominating, or None"""
    closed = g.closed_adjacency
    outside_w = ~closed[w]
    for v in iter_bits(g.adjacency[w] & bits):
        if closed[v] & ~dom2 & outside_w == 0:
            return v
    return None


def _check_capacity(g: Graph, s: VertexSet):
    if s.capacity != g.vertex_count:
        raise ContractError(f"set capacity {s.capacity} does not match {g.vertex_count} vertices")


def _require_coords(g: Graph):
    coords = g.coords
    if coords is None:
        raise ContractError("operation needs a path-clique or cycle-clique product instance")
    return coords


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# Predicates

def is_dominating(g: Graph, s: VertexSet) -> Verdict:
    _check_capacity(g, s)
    undominated = g.full_mask & ~dominated_mask(g, s.bits)
    if undominated:
        return Verdict.failure(_lowest(undominated), FailureReason.UNDOMINATED)
    return Verdict(True)


def is_independent(g: Graph, s: VertexSet) -> Verdict:
    _check_capacity(g, s)
    for u in iter_bits(s.bits):
        if g.adjacency[u] & s.bits:
            return Verdict.failure(u, FailureReason.ADJACENT)
    return Verdict(True)


def is_12_set(g: Graph, s: VertexSet) -> Verdict:
    """Every outside vertex has one or two neighbours in the set"""
    _check_capacity(g, s)
    c1, _, c3 = neighbour_count_masks(g, s.bits)
    outside = g.full_mask & ~s.bits
    bad = outside & (~c1 | c3)
    if bad:
        w = _lowest(bad)
        reason = FailureReason.OVERDOMINATED if c3 >> w & 1 else FailureReason.UNDOMINATED
        return Verdict.failure(w, reason)
    return Verdict(True)


def is_2_dominating(g: Graph, s: VertexSet) -> Verdict:
    _check_capacity(g, s)
    _, c2, _ = neighbour_count_masks(g, s.bits)
    short = g.full_mask & ~s.bits & ~c2
    if short:
        return Verdict.failure(_lowest(short), FailureReason.UNDERDOMINATED)
    return Verdict(True)


def is_secure_dominating(g: Graph, s: VertexSet) -> Verdict:
    """
    Dominating, and every outside vertex w has a neighbour v in S such that
    (S - {v}) + {w} is dominating. On success the verdict maps each w to its
    smallest-id defender.
    """
    dominating = is_dominating(g, s)
    if not dominating.ok:
        return dominating

    _, dom2 = _closed_count_masks(g, s.bits)
    defenders = {}
    for w in iter_bits(g.full_mask & ~s.bits):
        v = secure_defender(g, s.bits, w, dom2)
        if v is None:
            logger.debug(f"vertex {w} has no defender")
            return Verdict.failure(w, FailureReason.UNDEFENDED)
        defenders[w] = v
    return Verdict(True, defender_map=defenders)


_PREDICATES = {
    ParamKind.DOM: is_dominating,
    ParamKind.TWODOM: is_2_dominating,
    ParamKind.SDOM: is_secure_dominating,
}


def verify(g: Graph, kind: ParamKind, s: VertexSet) -> Verdict:
    """Dispatch to the predicate for kind; IDOM and DOM12 sets must also dominate"""
    kind = ParamKind(kind)
    if kind in _PREDICATES:
        return _PREDICATES[kind](g, s)
    if kind == ParamKind.IDOM:
        verdict = is_dominating(g, s)
        return verdict if not verdict.ok else is_independent(g, s)
    return is_12_set(g, s)


def satisfies(g: Graph, kind: ParamKind, bits: int) -> bool:
    """Boolean predicate on a raw mask, without witnesses"""
    full = g.full_mask
    outside = full & ~bits
    if kind == ParamKind.DOM:
        return dominated_mask(g, bits) == full
    if kind == ParamKind.IDOM:
        if any(g.adjacency[u] & bits for u in iter_bits(bits)):
            return False
        return dominated_mask(g, bits) == full
    if kind == ParamKind.DOM12:
        c1, _, c3 = neighbour_count_masks(g, bits)
        return outside & (~c1 | c3) == 0
    if kind == ParamKind.TWODOM:
        _, c2, _ = neighbour_count_masks(g, bits)
        return outside & ~c2 == 0
    d1, d2 = _closed_count_masks(g, bits)
    if d1 != full:
        return False
    return all(secure_defender(g, bits, w, d2) is not None for w in iter_bits(outside))


def private_neighbors(g: Graph, s: VertexSet, v: int) -> VertexSet:
    """Vertices whose only dominator in S is v (v itself included when applicable)"""
    _check_capacity(g, s)
    if v not in s:
        raise ContractError(f"vertex {v} is not in the set")
    _, dom2 = _closed_count_masks(g, s.bits)
    return VertexSet(g.vertex_count, g.closed_adjacency[v] & ~dom2)


def column_profile(g: Graph, s: VertexSet) -> ColumnProfile:
    _check_capacity(g, s)
    coords = _require_coords(g)
    d = tuple((s.bits & coords.column_mask(i)).bit_count() for i in range(1, coords.n + 1))
    return ColumnProfile(d, cyclic=g.meta.family == ProductFamily.CYCLE_CLIQUE)


def neighbour_columns(g: Graph, i: int) -> List[int]:
    """Columns adjacent to column i (cyclically on cycle instances)"""
    coords = _require_coords(g)
    return column_neighbours(g.meta.family, coords.n, i)


def doubleton_dominates_column(g: Graph, a: int, b: int, i: int) -> bool:
    """
    Whether {a, b} dominates column X_i (m >= 3): both lie in X_i or its neighbour
    columns, not both in X_i, and they share a row exactly when one of them is in X_i.
    """
    coords = _require_coords(g)
    if coords.m < 3:
        raise ContractError(f"column characterization needs m >= 3, got m={coords.m}")
    if not 1 <= i <= coords.n:
        raise ContractError(f"column {i} outside 1..{coords.n}")
    if a == b:
        return False
    (ca, ra), (cb, rb) = coords.coords(a), coords.coords(b)
    window = set(neighbour_columns(g, i)) | {i}
    if ca not in window or cb not in window:
        return False
    inside = (ca == i) + (cb == i)
    if inside == 2:
        return False
    if inside == 1:
        return ra == rb
    return ra != rb


# Certificate text format

def parse_certificate(text: str, g: Graph) -> VertexSet:
    """
    Read a certificate: one "i j" pair (1-based) per line on product instances,
    one 0-based id per line otherwise. Parentheses and commas are ignored.
    """
    coords = g.coords
    expected = 2 if coords is not None else 1
    seen = set()
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(CertificateFormat.COMMENT_PREFIX):
            continue
        for ch in CertificateFormat.STRIP_CHARACTERS:
            line = line.replace(ch, " ")
        tokens = line.split()
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise CertificateParseError(f"expected integers, got {raw.strip()!r}", line_number)
        if len(values) != expected:
            shape = "'i j'" if expected == 2 else "a vertex id"
            raise CertificateParseError(f"expected {shape}, got {raw.strip()!r}", line_number)
        if coords is not None:
            i, j = values
            if not (1 <= i <= coords.n and 1 <= j <= coords.m):
                raise CertificateParseError(f"coordinate ({i} {j}) outside [{coords.n}]x[{coords.m}]", line_number)
            v = coords.index(i, j)
        else:
            v = values[0]
            if not 0 <= v < g.vertex_count:
                raise CertificateParseError(f"vertex id {v} outside 0..{g.vertex_count - 1}", line_number)
        if v in seen:
            raise CertificateParseError(f"duplicate vertex {raw.strip()!r}", line_number)
        seen.add(v)
    return VertexSet.from_ids(g.vertex_count, seen)


def format_certificate(g: Graph, s: VertexSet, parenthesized: bool = False) -> str:
    """One line per vertex in id order: "i j" (or "(i j)") on product instances, the raw id otherwise"""
    _check_capacity(g, s)
    coords = g.coords
    if coords is None:
        lines = [str(v) for v in s]
    else:
        pattern = "({} {})" if parenthesized else "{} {}"
        lines = [pattern.format(*coords.coords(v)) for v in s]
    return "".join(line + "\n" for line in lines)


def format_vertex(g: Graph, v: int) -> str:
    """Human form of one vertex: "(i j)" on product instances, the id otherwise"""
    coords = g.coords
    if coords is None:
        return str(v)
    return "({} {})".format(*coords.coords(v))
