"""
Digraph Core Module
Digraph storage, edge-list parsing, directed distances, n-path enumeration
and the census of vertex pairs at distance two (thin / thick / multisquare).
"""

import logging
import math
from dataclasses import dataclass
from threading import Lock
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .errors import DuplicateArrow, EdgeListSyntaxError, LoopArrow, MultisquarePresent, UnknownVertex

logger = logging.getLogger(__name__)

INFINITY = math.inf

# An n-path is the tuple of dense vertex indices (p_0, ..., p_n).
Path = Tuple[int, ...]
Distance = Union[int, float]
VertexRef = Union[int, str]


# =============================================================================
# DIGRAPH
# =============================================================================

class Digraph:
    """
    Finite simple digraph without loops, on dense vertex indices 0..V-1.

    Vertex names are kept only for reporting; every computation runs on indices.
    Instances are immutable; per-digraph caches (distances, paths, pair census)
    are filled lazily under a lock so a digraph can be shared across threads.
    """

    def __init__(self, vertices: Sequence[str], arrows: Iterable[Tuple[int, int]]):
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        self._index: Dict[str, int] = {name: i for i, name in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise ValueError("vertex names must be unique")

        size = len(self.vertices)
        arrow_set = set()
        for u, v in arrows:
            if not (0 <= u < size):
                raise UnknownVertex(u)
            if not (0 <= v < size):
                raise UnknownVertex(v)
            if u == v:
                raise LoopArrow(self.vertices[u])
            if (u, v) in arrow_set:
                raise DuplicateArrow(self.vertices[u], self.vertices[v])
            arrow_set.add((u, v))
        self.arrows = frozenset(arrow_set)

        out_lists: List[List[int]] = [[] for _ in range(size)]
        in_lists: List[List[int]] = [[] for _ in range(size)]
        for u, v in sorted(arrow_set):
            out_lists[u].append(v)
            in_lists[v].append(u)
        self.out_neighbors: Tuple[Tuple[int, ...], ...] = tuple(tuple(x) for x in out_lists)
        self.in_neighbors: Tuple[Tuple[int, ...], ...] = tuple(tuple(x) for x in in_lists)

        self._lock = Lock()
        self._cache: Dict[Any, Any] = {}

    def __repr__(self) -> str:
        return f"Digraph({self.num_vertices} vertices, {self.num_arrows} arrows)"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_arrows(self) -> int:
        return len(self.arrows)

    def memo(self, key: Any, factory: Callable[[], Any]) -> Any:
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = factory()
        with self._lock:
            return self._cache.setdefault(key, value)

    def index_of(self, vertex: VertexRef) -> int:
        """Dense index of a vertex given by name, or by index when an int is passed."""
        if isinstance(vertex, int) and not isinstance(vertex, bool):
            if 0 <= vertex < self.num_vertices:
                return vertex
            raise UnknownVertex(vertex)
        try:
            return self._index[str(vertex)]
        except KeyError:
            raise UnknownVertex(vertex) from None

    def has_arrow(self, u: int, v: int) -> bool:
        return (u, v) in self.arrows

    def name_path(self, path: Path) -> Tuple[str, ...]:
        return tuple(self.vertices[i] for i in path)

    def format_path(self, path: Path) -> str:
        """'0125' for single-character names, 'x0,x1^0,...' otherwise."""
        names = self.name_path(path)
        if all(len(name) == 1 for name in names):
            return "".join(names)
        return ",".join(names)

    def to_networkx(self) -> nx.DiGraph:
        def build() -> nx.DiGraph:
            graph = nx.DiGraph()
            graph.add_nodes_from(range(self.num_vertices))
            graph.add_edges_from(sorted(self.arrows))
            return graph
        return self.memo("networkx", build)

    def without_arrow(self, u: VertexRef, v: VertexRef) -> "Digraph":
        """Copy of the digraph with one arrow deleted; the vertex set is unchanged."""
        arrow = (self.index_of(u), self.index_of(v))
        if arrow not in self.arrows:
            raise ValueError(f"no arrow {self.vertices[arrow[0]]} -> {self.vertices[arrow[1]]}")
        return Digraph(self.vertices, sorted(self.arrows - {arrow}))

    def edge_list_text(self) -> str:
        return "".join(f"{self.vertices[u]} {self.vertices[v]}\n" for u, v in sorted(self.arrows))


# =============================================================================
# PARSING
# =============================================================================

def parse_digraph(text: str) -> Digraph:
    """
    Parse a line-oriented edge list.

    Each non-empty line is 'SRC DST'; '#' starts a comment; LF and CRLF line
    endings are both accepted. Vertices are numbered in order of first appearance.
    """
    names: List[str] = []
    index: Dict[str, int] = {}
    arrows: List[Tuple[int, int]] = []
    seen = set()

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise EdgeListSyntaxError(raw.strip(), line_number)
        source, target = fields
        if source == target:
            raise LoopArrow(source, line_number)
        for name in fields:
            if name not in index:
                index[name] = len(names)
                names.append(name)
        arrow = (index[source], index[target])
        if arrow in seen:
            raise DuplicateArrow(source, target, line_number)
        seen.add(arrow)
        arrows.append(arrow)

    digraph = Digraph(names, arrows)
    logger.debug(f"Parsed {digraph}")
    return digraph


# =============================================================================
# DISTANCES AND PATHS
# =============================================================================

def _distances_from(g: Digraph, source: int) -> Dict[int, int]:
    return g.memo(("bfs", source),
                  lambda: dict(nx.single_source_shortest_path_length(g.to_networkx(), source)))


def distance(g: Digraph, u: VertexRef, v: VertexRef) -> Distance:
    """Directed BFS distance; 0 iff u == v, INFINITY when v is unreachable."""
    source, target = g.index_of(u), g.index_of(v)
    return _distances_from(g, source).get(target, INFINITY)


def enumerate_paths(g: Digraph, n: int) -> Tuple[Path, ...]:
    """
    All n-paths in lexicographic order of their index sequences.

    Level n is grown from level n-1 by appending sorted out-neighbours, which is
    the depth-first order; no sort pass is needed.
    """
    if n < 0:
        raise ValueError(f"path length must be non-negative, got {n}")

    def build() -> Tuple[Path, ...]:
        if n == 0:
            return tuple((v,) for v in range(g.num_vertices))
        return tuple(path + (w,)
                     for path in enumerate_paths(g, n - 1)
                     for w in g.out_neighbors[path[-1]])

    return g.memo(("paths", n), build)


def path_index(g: Digraph, n: int) -> Dict[Path, int]:
    """Position of each n-path in enumerate_paths(g, n)."""
    return g.memo(("path_index", n),
                  lambda: {path: i for i, path in enumerate(enumerate_paths(g, n))})


def longest_path_length(g: Digraph) -> Distance:
    """Length of the longest path; INFINITY if a directed cycle allows paths of any length."""
    graph = g.to_networkx()
    if not nx.is_directed_acyclic_graph(graph):
        return INFINITY
    return nx.dag_longest_path_length(graph)


def count_triangles(g: Digraph) -> int:
    """Number of triples a->b->c with a shortcut a->c."""
    return sum(1 for a, b in g.arrows for c in g.out_neighbors[b] if g.has_arrow(a, c))


# =============================================================================
# PAIRS AT DISTANCE TWO
# =============================================================================

@dataclass(frozen=True)
class VertexPair:
    source: int
    target: int
    distance: Distance
    midpoints: Tuple[int, ...]

    @property
    def is_thin(self) -> bool:
        return self.distance == 2 and len(self.midpoints) == 1

    @property
    def is_thick(self) -> bool:
        return self.distance == 2 and len(self.midpoints) == 2

    @property
    def is_multisquare(self) -> bool:
        return self.distance == 2 and len(self.midpoints) >= 3

    @property
    def label(self) -> str:
        if self.is_thin:
            return "thin"
        if self.is_thick:
            return "thick"
        return "multi"

    def describe(self, g: Digraph) -> str:
        mids = ", ".join(g.vertices[v] for v in self.midpoints)
        return f"({g.vertices[self.source]}, {g.vertices[self.target]}) {self.label}: {mids}"


def classify_pairs(g: Digraph) -> Tuple[VertexPair, ...]:
    """All pairs at distance exactly two, sorted by (source, target), with their midpoints."""

    def build() -> Tuple[VertexPair, ...]:
        pairs = []
        for x in range(g.num_vertices):
            midpoints: Dict[int, List[int]] = {}
            for v in g.out_neighbors[x]:
                for y in g.out_neighbors[v]:
                    if y != x and not g.has_arrow(x, y):
                        midpoints.setdefault(y, []).append(v)
            for y in sorted(midpoints):
                pairs.append(VertexPair(x, y, 2, tuple(midpoints[y])))
        return tuple(pairs)

    return g.memo("pairs", build)


def pair_lookup(g: Digraph) -> Dict[Tuple[int, int], VertexPair]:
    return g.memo("pair_lookup", lambda: {(p.source, p.target): p for p in classify_pairs(g)})


def is_multisquare_free(g: Digraph) -> Tuple[bool, Optional[VertexPair]]:
    """(True, None) when no pair at distance two has three or more midpoints, else (False, witness)."""
    for pair in classify_pairs(g):
        if pair.is_multisquare:
            return False, pair
    return True, None


def require_multisquare_free(g: Digraph) -> None:
    free, witness = is_multisquare_free(g)
    if not free:
        raise MultisquarePresent(witness.describe(g))


def is_thin_path(g: Digraph, path: Path) -> bool:
    """True if some interior position i has (p_{i-1}, p_{i+1}) a thin pair."""
    lookup = pair_lookup(g)
    for i in range(1, len(path) - 1):
        pair = lookup.get((path[i - 1], path[i + 1]))
        if pair is not None and pair.is_thin:
            return True
    return False
