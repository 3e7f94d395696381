"""The cobweb poset of a sequence, as a leveled DAG.

Level ``s`` holds vertices ``<1,s> .. <a_s,s>`` (one root vertex at level
0 regardless of ``a_0``), and every vertex of level ``s`` has an arc to
every vertex of level ``s+1``.  So ``x <= y`` iff ``x`` lies on a strictly
lower level, or ``x == y``.

Regularity and admissibility are checked by explicit reachability, both
for cobweb posets (via level arithmetic) and for arbitrary DAGs given as
:class:`networkx.DiGraph` objects, so hand-built counterexamples can be
fed to the same checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence, Union

import networkx as nx

from .sequences import DegenerateSequenceError, FIBONACCI, SequenceSpec, term

__all__ = [
    "Vertex",
    "CobwebPoset",
    "build",
    "leq_p",
    "chain_x",
    "chain_y",
    "is_regular",
    "is_admissible",
    "is_linear_extension",
    "verify_realizer",
    "export_dot",
    "export_structured",
]


class Vertex(NamedTuple):
    j: int
    s: int

    @property
    def label(self) -> str:
        return f"<{self.j},{self.s}>"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class CobwebPoset:
    spec: SequenceSpec
    max_level: int
    level_sizes: tuple[int, ...]

    def level(self, s: int) -> list[Vertex]:
        return [Vertex(j, s) for j in range(1, self.level_sizes[s] + 1)]

    def vertices(self) -> list[Vertex]:
        return [v for s in range(self.max_level + 1) for v in self.level(s)]

    def __contains__(self, v) -> bool:
        return (
            isinstance(v, tuple)
            and len(v) == 2
            and 0 <= v[1] <= self.max_level
            and 1 <= v[0] <= self.level_sizes[v[1]]
        )

    def __len__(self) -> int:
        return sum(self.level_sizes)

    def edges(self) -> Iterable[tuple[Vertex, Vertex]]:
        for s in range(self.max_level):
            for u in self.level(s):
                for v in self.level(s + 1):
                    yield u, v

    def edge_count(self) -> int:
        sizes = self.level_sizes
        return sum(sizes[s] * sizes[s + 1] for s in range(self.max_level))

    def has_path(self, u: Vertex, v: Vertex) -> bool:
        """A directed path of length >= 1 from ``u`` to ``v``."""
        return u.s < v.s

    def digraph(self) -> nx.DiGraph:
        """Materialize the arcs explicitly."""
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices())
        g.add_edges_from(self.edges())
        return g


def build(spec: SequenceSpec = FIBONACCI, max_level: int = 8) -> CobwebPoset:
    if max_level < 0:
        raise ValueError("max_level must be non-negative")
    sizes = [1]
    for s in range(1, max_level + 1):
        a = term(spec, s)
        if a <= 0:
            raise DegenerateSequenceError(f"level {s} would be empty (term {s} is {a})")
        sizes.append(a)
    return CobwebPoset(spec, max_level, tuple(sizes))


def leq_p(x: Vertex, y: Vertex) -> bool:
    """``<s,t> <= <u,v>`` iff ``t < v`` or (``t == v`` and ``s == u``)."""
    s, t = x
    u, v = y
    return t < v or (t == v and s == u)


def chain_x(p: CobwebPoset) -> list[Vertex]:
    """Level ascending, position ascending."""
    return p.vertices()


def chain_y(p: CobwebPoset) -> list[Vertex]:
    """Level ascending, position descending within each level."""
    return [v for s in range(p.max_level + 1) for v in reversed(p.level(s))]


Graphish = Union[CobwebPoset, nx.DiGraph]


def _path_oracle(g: Graphish) -> Callable[[Vertex, Vertex], bool]:
    if isinstance(g, CobwebPoset):
        return g.has_path
    reach = {v: nx.descendants(g, v) for v in g.nodes}
    return lambda u, v: v in reach[u]


def is_regular(g: Graphish) -> bool:
    """No arc ``(u, v)`` is duplicated by a longer directed path ``u -> w -> ... -> v``."""
    if isinstance(g, CobwebPoset):
        g = g.digraph()
    reach = {v: nx.descendants(g, v) for v in g.nodes}
    for u in g.nodes:
        succ = list(g.successors(u))
        for v in succ:
            if any(v in reach[w] for w in succ if w != v):
                return False
    return True


def _nodes(g: Graphish) -> list:
    return g.vertices() if isinstance(g, CobwebPoset) else list(g.nodes)


def _check_permutation(g: Graphish, chain: Sequence) -> None:
    nodes = _nodes(g)
    if len(chain) != len(nodes) or set(chain) != set(nodes):
        raise ValueError("chain is not a permutation of the vertex set")


def is_admissible(g: Graphish, chain: Sequence) -> bool:
    """No triple ``i1 < i2 < i3`` has a path 1->3 but none of 1->2 and 2->3."""
    _check_permutation(g, chain)
    path = _path_oracle(g)
    chain = list(chain)
    n = len(chain)
    for i1 in range(n):
        a = chain[i1]
        for i3 in range(i1 + 2, n):
            c = chain[i3]
            if not path(a, c):
                continue
            for i2 in range(i1 + 1, i3):
                b = chain[i2]
                if not path(a, b) and not path(b, c):
                    return False
    return True


def _positions(chain: Sequence) -> dict:
    return {v: i for i, v in enumerate(chain)}


def is_linear_extension(p: CobwebPoset, chain: Sequence[Vertex]) -> bool:
    _check_permutation(p, chain)
    pos = _positions(chain)
    verts = p.vertices()
    return all(pos[x] <= pos[y] for x, y in itertools.product(verts, verts) if leq_p(x, y))


def verify_realizer(
    p: CobwebPoset,
    x: Sequence[Vertex] | None = None,
    y: Sequence[Vertex] | None = None,
) -> bool:
    """``x <=_P y`` iff ``x`` precedes-or-equals ``y`` in both chains, for all pairs."""
    x = chain_x(p) if x is None else list(x)
    y = chain_y(p) if y is None else list(y)
    _check_permutation(p, x)
    _check_permutation(p, y)
    px, py = _positions(x), _positions(y)
    verts = p.vertices()
    for u, v in itertools.product(verts, verts):
        if leq_p(u, v) != (px[u] <= px[v] and py[u] <= py[v]):
            return False
    return True


def _dot_name(v: Vertex) -> str:
    return f"v{v.j}_{v.s}"


def export_dot(p: CobwebPoset, name: str = "cobweb") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for s in range(p.max_level + 1):
        members = " ".join(f'{_dot_name(v)} [label="{v.label}"];' for v in p.level(s))
        lines.append(f"  {{ rank=same; {members} }}")
    for u, v in p.edges():
        lines.append(f"  {_dot_name(u)} -> {_dot_name(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_structured(p: CobwebPoset) -> dict:
    return {
        "sequence": p.spec.describe(),
        "max_level": p.max_level,
        "level_sizes": list(p.level_sizes),
        "vertex_count": len(p),
        "edge_count": p.edge_count(),
        "chain_x": [v.label for v in chain_x(p)],
        "chain_y": [v.label for v in chain_y(p)],
    }
