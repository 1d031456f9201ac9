"""
Built-in Digraphs
The worked examples: the grids, the five-branch "star" digraphs, the directed
3-cube, the trapezohedron, and the auxiliary / main counterexample digraphs.
"""

from functools import lru_cache
from typing import List, Tuple

from .digraph_core import Digraph, parse_digraph
from .errors import UnknownFixture

# =============================================================================
# EDGE LISTS
# =============================================================================

# The drawn grid labels two vertices "2"; the lower-left one is called 3 here.
_GRID = """\
# 0 -> 1 -> 2
# |    |    |
# 3 -> 4 -> 5
0 1
1 2
0 3
1 4
2 5
3 4
4 5
"""

_GRID_CHORDS = _GRID + """\
0 2
3 5
"""

# Source s, five branches s -> a_r -> {b_r, b_r+1} -> t.
_STAR6 = """\
s a1
s a2
s a3
s a4
s a5
a1 b1
a1 b2
a2 b2
a2 b3
a3 b3
a3 b4
a4 b4
a4 b5
a5 b5
b1 t
b2 t
b3 t
b4 t
b5 t
"""

_STAR6_CHORDS = _STAR6 + """\
s b1
a5 t
"""

# The same layers closed up cyclically by a5 -> b1.
_TRAPEZOHEDRON = _STAR6.replace("a5 b5\n", "a5 b5\na5 b1\n")

_CUBE = """\
0 1
0 2
0 3
1 4
1 5
2 4
2 6
3 5
3 6
4 7
5 7
6 7
"""

# x0 -> x1^i, x3^i -> x4, x_j^i -> x_{j+1}^i and x_j^i -> x_{j+1}^{i+1} (i mod 3, j = 1, 2)
_G_PRIME = """\
x0 x1^0
x0 x1^1
x0 x1^2
x1^0 x2^0
x1^0 x2^1
x1^1 x2^1
x1^1 x2^2
x1^2 x2^2
x1^2 x2^0
x2^0 x3^0
x2^0 x3^1
x2^1 x3^1
x2^1 x3^2
x2^2 x3^2
x2^2 x3^0
x3^0 x4
x3^1 x4
x3^2 x4
"""

# Arrows joining the thin pairs (x1^i, x3^i) and (x1^i, x3^{i+2}) of g_prime.
CHORD_ARROWS: List[Tuple[str, str]] = [
    ("x1^0", "x3^0"),
    ("x1^0", "x3^2"),
    ("x1^1", "x3^1"),
    ("x1^1", "x3^0"),
    ("x1^2", "x3^2"),
    ("x1^2", "x3^1"),
]

_G_MAIN = _G_PRIME + "".join(f"{u} {v}\n" for u, v in CHORD_ARROWS)

FIXTURES = {
    'grid': _GRID,
    'grid_chords': _GRID_CHORDS,
    'star6': _STAR6,
    'star6_chords': _STAR6_CHORDS,
    'cube': _CUBE,
    'trapezohedron': _TRAPEZOHEDRON,
    'g_prime': _G_PRIME,
    'g_main': _G_MAIN,
}


def fixture_names() -> List[str]:
    return list(FIXTURES)


@lru_cache(maxsize=None)
def builtin_fixture(name: str) -> Digraph:
    """Return the named built-in digraph."""
    if name not in FIXTURES:
        raise UnknownFixture(name, fixture_names())
    return parse_digraph(FIXTURES[name])
