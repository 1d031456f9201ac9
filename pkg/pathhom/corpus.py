"""
Random multisquare-free digraphs for the oracle checks.
Deterministic for a given seed: numpy's default_rng drives every choice.
"""

import logging
from typing import List, Optional

import numpy as np

from .config import settings
from .digraph_core import Digraph, is_multisquare_free

logger = logging.getLogger(__name__)


def remove_multisquares(g: Digraph) -> Digraph:
    """Delete the arrow into y from the last midpoint of each multisquare (x, y) until none is left."""
    while True:
        free, witness = is_multisquare_free(g)
        if free:
            return g
        g = g.without_arrow(witness.midpoints[-1], witness.target)


def random_digraph(rng: np.random.Generator, max_vertices: int, arrow_probability: float) -> Digraph:
    """
    Acyclic random digraph on 2..max_vertices vertices: arrows follow a random
    vertex order, each present with the given probability.
    """
    size = int(rng.integers(2, max_vertices + 1))
    order = rng.permutation(size)
    arrows = [
        (int(order[i]), int(order[j]))
        for i in range(size)
        for j in range(i + 1, size)
        if rng.random() < arrow_probability
    ]
    return Digraph([str(v) for v in range(size)], arrows)


def random_corpus(size: Optional[int] = None, seed: Optional[int] = None,
                  max_vertices: Optional[int] = None,
                  arrow_probability: Optional[float] = None) -> List[Digraph]:
    size = settings.CORPUS_SIZE if size is None else size
    seed = settings.CORPUS_SEED if seed is None else seed
    max_vertices = settings.CORPUS_MAX_VERTICES if max_vertices is None else max_vertices
    arrow_probability = settings.CORPUS_ARROW_PROBABILITY if arrow_probability is None else arrow_probability
    if max_vertices < 2:
        raise ValueError(f"max_vertices must be at least 2, got {max_vertices}")

    rng = np.random.default_rng(seed)
    corpus = [remove_multisquares(random_digraph(rng, max_vertices, arrow_probability))
              for _ in range(size)]
    logger.info(f"Generated {len(corpus)} multisquare-free digraphs (seed {seed})")
    return corpus
