"""Trees with a set of special leaves, their text/JSON spec format and the doubled quiver."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property


class TreeSpecError(ValueError):
    """Base class for everything that can go wrong with a tree spec."""


class SpecSyntaxError(TreeSpecError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DuplicateEdge(TreeSpecError):
    pass


class LabelOutOfRange(TreeSpecError):
    pass


class NotATree(TreeSpecError):
    pass


class SpecialNotLeaf(TreeSpecError):
    pass


class InfiniteDimensional(TreeSpecError):
    pass


@dataclass(frozen=True)
class TreeInstance:
    """A tree on vertices 1..n together with the subset ``special`` of its leaves.

    Edges are stored as sorted pairs ``(i, j)`` with ``i < j``. Construction does
    not check anything beyond types; call :func:`validate` for that.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    special: frozenset[int] = frozenset()

    def __post_init__(self):
        edges = tuple(sorted((min(e), max(e)) for e in self.edges))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "special", frozenset(self.special))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def neighbors(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for i, j in self.edges:
            if i in adj and j in adj:
                adj[i].append(j)
                adj[j].append(i)
        return {v: tuple(sorted(ws)) for v, ws in adj.items()}

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    @cached_property
    def leaves(self) -> frozenset[int]:
        return frozenset(v for v in self.vertices if self.degree(v) == 1)

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[int, ...]
    arrows: tuple[tuple[int, int], ...]


def _parse_int(token: str, line: int, column: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise SpecSyntaxError(f"expected an integer {what}, got {token!r}", line, column) from None


def _tokens(line: str) -> list[tuple[str, int]]:
    """Split a line into tokens with their 1-based columns."""
    out = []
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        out.append((tok, col + 1))
        col += len(tok)
    return out


def parse_tree_spec(text: str) -> TreeInstance:
    """Parse the line-based tree format, or its JSON mirror if the text starts with ``{``.

    Text form, one directive per line, ``#`` starts a comment::

        vertices 4
        edge 1 2
        edge 2 3
        edge 2 4
        special 3 4

    JSON form: ``{"n": 4, "edges": [[1, 2], [2, 3], [2, 4]], "S": [3, 4]}``.

    Only syntax, duplicate edges and label ranges are checked here.
    """
    if text.lstrip().startswith("{"):
        return _parse_json(text)

    n = None
    n_pos = None
    raw_edges: list[tuple[int, int, int, int]] = []  # i, j, line, column
    raw_special: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        word, col = toks[0]
        args = toks[1:]
        if word == "vertices":
            if n is not None:
                raise SpecSyntaxError("'vertices' given twice", lineno, col)
            if len(args) != 1:
                raise SpecSyntaxError("'vertices' takes exactly one argument", lineno, col)
            n = _parse_int(args[0][0], lineno, args[0][1], "vertex count")
            n_pos = (lineno, args[0][1])
        elif word == "edge":
            if len(args) != 2:
                raise SpecSyntaxError("'edge' takes exactly two vertices", lineno, col)
            i = _parse_int(args[0][0], lineno, args[0][1], "vertex")
            j = _parse_int(args[1][0], lineno, args[1][1], "vertex")
            raw_edges.append((i, j, lineno, args[0][1]))
        elif word == "special":
            for tok, c in args:
                raw_special.append((_parse_int(tok, lineno, c, "vertex"), lineno, c))
        else:
            raise SpecSyntaxError(f"unknown directive {word!r}", lineno, col)

    if n is None:
        raise SpecSyntaxError("missing 'vertices' directive", 1, 1)
    if n < 2:
        raise SpecSyntaxError("vertex count must be at least 2", *n_pos)

    seen = set()
    edges = []
    for i, j, lineno, col in raw_edges:
        for v in (i, j):
            if not 1 <= v <= n:
                raise LabelOutOfRange(f"line {lineno}: vertex {v} is not in 1..{n}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DuplicateEdge(f"line {lineno}: edge {{{i},{j}}} listed twice")
        seen.add(key)
        edges.append(key)
    special = set()
    for v, lineno, col in raw_special:
        if not 1 <= v <= n:
            raise LabelOutOfRange(f"line {lineno}: special vertex {v} is not in 1..{n}")
        special.add(v)
    return TreeInstance(n, tuple(edges), frozenset(special))


def _parse_json(text: str) -> TreeInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise SpecSyntaxError("JSON tree spec needs keys 'n' and 'edges'", 1, 1)
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise SpecSyntaxError("'n' must be an integer >= 2", 1, 1)
    edges = []
    seen = set()
    for e in doc["edges"]:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
            raise SpecSyntaxError(f"bad edge {e!r}", 1, 1)
        i, j = e
        for v in (i, j):
            if not 1 <= v <= n:
                raise LabelOutOfRange(f"vertex {v} is not in 1..{n}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DuplicateEdge(f"edge {{{i},{j}}} listed twice")
        seen.add(key)
        edges.append(key)
    special = doc.get("S", [])
    for v in special:
        if not isinstance(v, int) or not 1 <= v <= n:
            raise LabelOutOfRange(f"special vertex {v!r} is not in 1..{n}")
    return TreeInstance(n, tuple(edges), frozenset(special))


def emit_tree_spec(inst: TreeInstance, fmt: str = "text") -> str:
    """Canonical document for ``inst``; ``parse_tree_spec`` inverts it."""
    if fmt == "json":
        doc = {"n": inst.n, "edges": [list(e) for e in inst.edges], "S": sorted(inst.special)}
        return json.dumps(doc) + "\n"
    lines = [f"vertices {inst.n}"]
    lines += [f"edge {i} {j}" for i, j in inst.edges]
    if inst.special:
        lines.append("special " + " ".join(str(v) for v in sorted(inst.special)))
    return "\n".join(lines) + "\n"


def validate(inst: TreeInstance) -> TreeInstance:
    """Return ``inst`` unchanged if it describes an admissible pair (T, S), else raise.

    The n = 2, S = {} case is refused: no relation applies there, so the
    quotient of the path algebra is infinite dimensional.
    """
    n = inst.n
    if n < 2:
        raise NotATree("need at least two vertices")
    for i, j in inst.edges:
        if not (1 <= i <= n and 1 <= j <= n):
            raise LabelOutOfRange(f"edge {{{i},{j}}} leaves 1..{n}")
        if i == j:
            raise NotATree(f"loop at vertex {i}")
    if len(set(inst.edges)) != len(inst.edges):
        raise DuplicateEdge("repeated edge")
    if len(inst.edges) != n - 1:
        raise NotATree(f"a tree on {n} vertices has {n - 1} edges, got {len(inst.edges)}")
    # n - 1 edges plus connected means acyclic
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in inst.neighbors[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        raise NotATree("graph is not connected (so it also has a cycle)")
    for v in sorted(inst.special):
        if not 1 <= v <= n:
            raise LabelOutOfRange(f"special vertex {v} is not in 1..{n}")
        if v not in inst.leaves:
            raise SpecialNotLeaf(f"special vertex {v} has degree {inst.degree(v)}")
    if n == 2 and not inst.special:
        raise InfiniteDimensional("n = 2 with no special leaf gives an infinite dimensional algebra")
    return inst


def doubled_quiver(inst: TreeInstance) -> Quiver:
    """Both orientations of every edge."""
    arrows = sorted([(i, j) for i, j in inst.edges] + [(j, i) for i, j in inst.edges])
    return Quiver(tuple(inst.vertices), tuple(arrows))


def random_instance(rng: random.Random, n_min: int = 2, n_max: int = 8) -> TreeInstance:
    """A uniformly random labelled tree (via a Pruefer sequence) with a random special leaf subset."""
    while True:
        n = rng.randint(n_min, n_max)
        if n == 2:
            edges = [(1, 2)]
        else:
            seq = [rng.randint(1, n) for _ in range(n - 2)]
            degree = [1] * (n + 1)
            for v in seq:
                degree[v] += 1
            edges = []
            for v in seq:
                leaf = min(u for u in range(1, n + 1) if degree[u] == 1)
                edges.append((leaf, v))
                degree[leaf] -= 1
                degree[v] -= 1
            u, w = [x for x in range(1, n + 1) if degree[x] == 1]
            edges.append((u, w))
        tree = TreeInstance(n, tuple(edges))
        special = frozenset(v for v in sorted(tree.leaves) if rng.random() < 0.5)
        inst = TreeInstance(n, tree.edges, special)
        if n == 2 and not special:
            continue
        return inst


def path_instance(n: int, special=None) -> TreeInstance:
    """The path 1 - 2 - ... - n; by default the last vertex is special."""
    special = {n} if special is None else special
    return TreeInstance(n, tuple((i, i + 1) for i in range(1, n)), frozenset(special))
