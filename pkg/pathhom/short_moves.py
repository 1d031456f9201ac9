"""
Short Moves Module
Builds the edge-colored graph of short moves S_n(G) on n-paths, splits it into
classes (connected components) and labels each class thin/thick and
bipartite/non-bipartite, fixing the sign partition used by the dual basis.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import graphviz
import networkx as nx

from .digraph_core import (Digraph, Path, enumerate_paths, is_multisquare_free,
                           is_thin_path, pair_lookup, path_index)
from .schemas import ClassRecord, ShortMoveReport

logger = logging.getLogger(__name__)

# (node, node, color) with node < node; color i is the replaced position.
Edge = Tuple[int, int, int]


@dataclass(frozen=True)
class ShortMoveGraph:
    digraph: Digraph
    level: int
    nodes: Tuple[Path, ...]
    edges: Tuple[Edge, ...]
    adjacency: Tuple[Tuple[int, ...], ...]
    components: Tuple[Tuple[int, ...], ...]

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    def edge_color(self, a: int, b: int) -> Optional[int]:
        key = (min(a, b), max(a, b))
        for u, v, color in self.edges:
            if (u, v) == key:
                return color
        return None

    def label(self, node: int) -> str:
        return self.digraph.format_path(self.nodes[node])


@dataclass(frozen=True)
class SnClass:
    """
    One S_n-class. When bipartite, plus_part holds the representative
    (the lexicographically least member); when not, odd_cycle_witness is a cycle
    (w_0, ..., w_{k-1}) of odd length k, closed by the edge (w_{k-1}, w_0).
    """
    members: Tuple[int, ...]
    is_thin: bool
    is_bipartite: bool
    plus_part: Tuple[int, ...] = ()
    minus_part: Tuple[int, ...] = ()
    odd_cycle_witness: Optional[Tuple[int, ...]] = None
    supported_for_basis: bool = True

    @property
    def representative(self) -> int:
        return self.members[0]

    @property
    def is_thick(self) -> bool:
        return not self.is_thin

    @property
    def parts(self) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        if not self.is_bipartite:
            return None
        return self.plus_part, self.minus_part

    def sign(self, node: int) -> int:
        """+1 on the plus part, -1 on the minus part."""
        return 1 if node in self.plus_part else -1


# =============================================================================
# CONSTRUCTION
# =============================================================================

def build_smoves(g: Digraph, n: int) -> ShortMoveGraph:
    """
    Graph of short moves on n-paths.

    An edge of color i joins two paths that differ only at position i, where
    d(p_{i-1}, p_{i+1}) = 2. For n <= 1 there are no short moves.
    """
    if n < 0:
        raise ValueError(f"level must be non-negative, got {n}")

    def build() -> ShortMoveGraph:
        paths = enumerate_paths(g, n)
        index = path_index(g, n)
        pairs = pair_lookup(g)

        edges = set()
        for a, path in enumerate(paths):
            for i in range(1, n):
                pair = pairs.get((path[i - 1], path[i + 1]))
                if pair is None:
                    continue
                for v in pair.midpoints:
                    if v == path[i]:
                        continue
                    b = index[path[:i] + (v,) + path[i + 1:]]
                    edges.add((min(a, b), max(a, b), i))
        edge_list = tuple(sorted(edges))

        graph = nx.Graph()
        graph.add_nodes_from(range(len(paths)))
        graph.add_edges_from((a, b) for a, b, _ in edge_list)
        adjacency = tuple(tuple(sorted(graph.adj[node])) for node in range(len(paths)))
        components = sorted(tuple(sorted(c)) for c in nx.connected_components(graph))

        logger.info(f"S_{n}: {len(paths)} nodes, {len(edge_list)} edges, "
                    f"{len(components)} classes")
        return ShortMoveGraph(g, n, paths, edge_list, adjacency, tuple(components))

    return g.memo(("smoves", n), build)


# =============================================================================
# CLASSIFICATION
# =============================================================================

def _odd_cycle(u: int, w: int, parent: Dict[int, Optional[int]], depth: Dict[int, int]) -> Tuple[int, ...]:
    """Cycle through the edge (u, w) and the BFS tree paths up to their common ancestor."""
    left, right = [u], [w]
    a, b = u, w
    while a != b:
        if depth[a] >= depth[b]:
            a = parent[a]
            left.append(a)
        else:
            b = parent[b]
            right.append(b)
    return tuple(reversed(left)) + tuple(right[:-1])


def _two_color(members: Sequence[int], adjacency: Sequence[Sequence[int]]):
    """BFS 2-coloring from the least member; returns (colors, None) or (None, odd cycle)."""
    root = members[0]
    color = {root: 0}
    parent: Dict[int, Optional[int]] = {root: None}
    depth = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if w not in color:
                color[w] = 1 - color[u]
                parent[w] = u
                depth[w] = depth[u] + 1
                queue.append(w)
            elif color[w] == color[u]:
                return None, _odd_cycle(u, w, parent, depth)
    return color, None


def classify_components(smg: ShortMoveGraph, g: Optional[Digraph] = None) -> List[SnClass]:
    """Label every S_n-class thin/thick and bipartite/non-bipartite, sorted by representative."""
    g = g if g is not None else smg.digraph

    def build() -> List[SnClass]:
        supported, witness = is_multisquare_free(g)
        if not supported:
            logger.warning(f"S_{smg.level} classes are unsupported for bases: "
                           f"multisquare {witness.describe(g)}")
        classes = []
        for members in smg.components:
            thin = any(is_thin_path(g, smg.nodes[node]) for node in members)
            colors, cycle = _two_color(members, smg.adjacency)
            if colors is None:
                classes.append(SnClass(members, thin, False, odd_cycle_witness=cycle,
                                       supported_for_basis=supported))
            else:
                plus = tuple(node for node in members if colors[node] == 0)
                minus = tuple(node for node in members if colors[node] == 1)
                classes.append(SnClass(members, thin, True, plus, minus,
                                       supported_for_basis=supported))
        return classes

    return list(g.memo(("classes", smg.level), build))


def class_census(classes: Sequence[SnClass]) -> Dict[str, int]:
    return {
        'classes': len(classes),
        'thin': sum(1 for c in classes if c.is_thin),
        'thick_bipartite': sum(1 for c in classes if c.is_thick and c.is_bipartite),
        'thick_non_bipartite': sum(1 for c in classes if c.is_thick and not c.is_bipartite),
    }


# =============================================================================
# EXPORT
# =============================================================================

def export_dot(smg: ShortMoveGraph) -> str:
    """Graphviz undirected graph; edge labels are colors, class flags are node attributes."""
    classes = classify_components(smg)
    owner: Dict[int, Tuple[int, SnClass]] = {}
    for k, cls in enumerate(classes):
        for node in cls.members:
            owner[node] = (k, cls)

    dot = graphviz.Graph(f"S{smg.level}", node_attr={'shape': 'box'})
    for node in range(smg.num_nodes):
        k, cls = owner[node]
        attrs = {
            'component': str(k),
            'thin': str(cls.is_thin).lower(),
            'bipartite': str(cls.is_bipartite).lower(),
        }
        if cls.is_bipartite:
            attrs['part'] = "+" if node in cls.plus_part else "-"
        dot.node(f"n{node}", smg.label(node), **attrs)
    for a, b, color in smg.edges:
        dot.edge(f"n{a}", f"n{b}", label=str(color))
    return dot.source


def smoves_report(smg: ShortMoveGraph) -> ShortMoveReport:
    classes = classify_components(smg)
    return ShortMoveReport(
        level=smg.level,
        nodes=[smg.label(node) for node in range(smg.num_nodes)],
        edges=list(smg.edges),
        classes=[
            ClassRecord(
                members=list(c.members),
                thin=c.is_thin,
                bipartite=c.is_bipartite,
                parts=[list(c.plus_part), list(c.minus_part)] if c.is_bipartite else None,
                representative=c.representative,
                odd_cycle=list(c.odd_cycle_witness) if c.odd_cycle_witness else None,
                supported_for_basis=c.supported_for_basis,
            )
            for c in classes
        ],
    )
