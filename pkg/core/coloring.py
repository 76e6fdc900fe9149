"""
List colorings.

find_list_coloring is a complete backtracking search (smallest remaining list
first). is_f_choosable quantifies over every list assignment with |L(v)| = f(v);
colorability is invariant under injective renaming of colors, so lists drawn
from the palette {0..sum(f)-1} cover every case.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb, prod
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from config import AUDIT_MAX_ASSIGNMENTS, CHOOSABILITY_MAX_LIST_TOTAL, CHOOSABILITY_MAX_VERTICES
from core.console import log
from core.errors import (
    DomainError, GraphFormatError, InvariantViolation, PreconditionError, check_capacity,
)
from core.graph import Graph, Orientation, members, popcount, require_connected
from core.settings_store import settings
from core.structure import is_complete_or_odd_cycle, is_gallai_tree

DEGREE_RULE = "degree"
DELTA_RULE = "delta"


# === Value types ===

@dataclass(frozen=True)
class ListAssignment:
    """L(v) per vertex; colors are small nonnegative integers below palette_size."""

    lists: Tuple[FrozenSet[int], ...]
    palette_size: int = 0  # 0 means "one past the largest color"

    def __post_init__(self):
        lists = tuple(frozenset(int(c) for c in colors) for colors in self.lists)
        for v, colors in enumerate(lists):
            if not colors:
                raise PreconditionError(f"vertex {v} has an empty list")
            if min(colors) < 0:
                raise PreconditionError(f"vertex {v} has a negative color")
        largest = max((max(colors) for colors in lists), default=-1)
        palette = int(self.palette_size) or largest + 1
        if largest >= palette:
            raise PreconditionError(f"color {largest} lies outside the palette 0..{palette - 1}")
        object.__setattr__(self, "lists", lists)
        object.__setattr__(self, "palette_size", palette)

    @property
    def masks(self) -> Tuple[int, ...]:
        return tuple(sum(1 << c for c in colors) for colors in self.lists)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(colors) for colors in self.lists)

    def to_dict(self) -> dict:
        return {str(v): sorted(colors) for v, colors in enumerate(self.lists)}


@dataclass(frozen=True)
class Coloring:
    colors: Tuple[int, ...]

    def is_proper(self, graph: Graph) -> bool:
        return all(self.colors[u] != self.colors[v] for u, v in graph.edges)

    def respects(self, lists: ListAssignment) -> bool:
        return all(c in allowed for c, allowed in zip(self.colors, lists.lists))

    def to_dict(self) -> dict:
        return {str(v): c for v, c in enumerate(self.colors)}


@dataclass(frozen=True)
class TrialFailure:
    trial: int
    lists: ListAssignment


@dataclass(frozen=True)
class TrialReport:
    rule: str
    seed: int
    palette_size: int
    trial_count: int
    sizes: Tuple[int, ...]
    failures: Tuple[TrialFailure, ...]
    theorem_applies: bool

    @property
    def failure_count(self) -> int:
        return len(self.failures)

    @property
    def fatal(self) -> bool:
        """A failure on a graph the theorem covers means a bug somewhere."""
        return self.theorem_applies and bool(self.failures)

    def to_dict(self, sample: int = 5) -> dict:
        return {
            "rule": self.rule,
            "seed": self.seed,
            "palette_size": self.palette_size,
            "trials": self.trial_count,
            "list_sizes": list(self.sizes),
            "failures": self.failure_count,
            "failed_trials": [
                {"trial": f.trial, "lists": f.lists.to_dict()} for f in self.failures[:sample]
            ],
            "theorem_applies": self.theorem_applies,
            "fatal": self.fatal,
        }


# === Size functions ===

def degree_sizes(graph: Graph) -> Tuple[int, ...]:
    return graph.degrees


def constant_sizes(graph: Graph, k: int) -> Tuple[int, ...]:
    return (int(k),) * graph.vertex_count


def delta_sizes(graph: Graph) -> Tuple[int, ...]:
    return constant_sizes(graph, graph.max_degree)


def indegree_sizes(orientation: Orientation) -> Tuple[int, ...]:
    """|L(v)| = d+(v) + 1, the list sizes an Alon-Tarsi orientation guarantees."""
    return tuple(d + 1 for d in orientation.in_degrees)


def _check_sizes(graph: Graph, sizes: Sequence[int]) -> Tuple[int, ...]:
    sizes = tuple(int(f) for f in sizes)
    if len(sizes) != graph.vertex_count:
        raise PreconditionError(f"expected {graph.vertex_count} list sizes, got {len(sizes)}")
    for v, f in enumerate(sizes):
        if f < 1:
            raise PreconditionError(f"list size of vertex {v} must be positive, got {f}")
    return sizes


# === Lists file ===

def parse_lists(text: str, graph: Graph) -> ListAssignment:
    """One line per vertex: "v: c1,c2,..." (v is an id or a label)."""
    lists: List[Optional[FrozenSet[int]]] = [None] * graph.vertex_count
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise GraphFormatError("expected 'vertex: c1,c2,...'", line_number)
        name, rest = line.split(":", 1)
        try:
            v = graph.vertex_id(name)
        except PreconditionError as e:
            raise GraphFormatError(str(e), line_number)
        try:
            colors = [int(tok) for tok in rest.replace(",", " ").split()]
        except ValueError:
            raise GraphFormatError("colors must be integers", line_number)
        if not colors:
            raise GraphFormatError(f"empty list for vertex {name.strip()}", line_number)
        if lists[v] is not None:
            raise GraphFormatError(f"second list for vertex {name.strip()}", line_number)
        lists[v] = frozenset(colors)

    missing = [graph.vertex_name(v) for v, colors in enumerate(lists) if colors is None]
    if missing:
        raise PreconditionError(f"missing list for vertices {missing}")
    return ListAssignment(tuple(lists))


# === Search ===

def _backtrack(adjacency: Sequence[int], masks: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """Proper coloring from bitmask lists, or None. Smallest remaining list first, ties by id."""
    n = len(masks)
    colors = [-1] * n

    def available(v: int) -> int:
        allowed = masks[v]
        for u in members(adjacency[v]):
            if colors[u] >= 0:
                allowed &= ~(1 << colors[u])
        return allowed

    def solve(remaining: int) -> bool:
        if remaining == 0:
            return True
        best, best_allowed, best_count = -1, 0, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            allowed = available(v)
            count = popcount(allowed)
            if count == 0:
                return False
            if best_count is None or count < best_count:
                best, best_allowed, best_count = v, allowed, count
        for c in members(best_allowed):
            colors[best] = c
            if solve(remaining - 1):
                return True
        colors[best] = -1
        return False

    return tuple(colors) if solve(n) else None


def find_list_coloring(graph: Graph, lists: ListAssignment) -> Optional[Coloring]:
    """A proper coloring with colors from the lists, or None when none exists."""
    if len(lists.lists) != graph.vertex_count:
        raise PreconditionError(
            f"missing list: {len(lists.lists)} lists for {graph.vertex_count} vertices")
    colors = _backtrack(graph.adjacency, lists.masks)
    if colors is None:
        return None
    coloring = Coloring(colors)
    if not (coloring.is_proper(graph) and coloring.respects(lists)):
        raise InvariantViolation(f"search returned an invalid coloring {colors}")
    return coloring


# === Choosability ===

def _connected(graph: Graph, verts: List[int]) -> bool:
    return len(verts) <= 1 or nx.is_connected(graph.nx_view.subgraph(verts))


def _tight_subsets(graph: Graph, sizes: Tuple[int, ...]) -> Iterator[int]:
    """
    Connected vertex sets S with f(v) <= deg_S(v) for all v in S, smallest first.
    A bad assignment restricts to a bad one on some such S: a vertex with more
    colors than neighbours can always be colored last.
    """
    n = graph.vertex_count
    for mask in sorted(range(1, 1 << n), key=lambda m: (popcount(m), m)):
        verts = members(mask)
        if all(sizes[v] <= popcount(graph.adjacency[v] & mask) for v in verts) and _connected(graph, verts):
            yield mask


def _compositions(class_sizes: List[int], total: int) -> Iterator[Tuple[int, ...]]:
    """Counts taken from each class (largest overlap first); the rest are fresh colors."""
    if not class_sizes:
        yield ()
        return
    head, rest = class_sizes[0], class_sizes[1:]
    for take in range(min(head, total), -1, -1):
        for tail in _compositions(rest, total - take):
            yield (take,) + tail


def _neighbourhood_colors(adjacency: Dict[int, int], order: List[int], masks: Dict[int, int],
                          watched: int) -> Iterator[int]:
    """For every proper coloring of `order`, the set of colors used on `watched`."""
    colors: Dict[int, int] = {}

    def dfs(i: int, seen: int) -> Iterator[int]:
        if i == len(order):
            yield seen
            return
        v = order[i]
        allowed = masks[v]
        for u in members(adjacency[v]):
            if u in colors:
                allowed &= ~(1 << colors[u])
        for c in members(allowed):
            colors[v] = c
            yield from dfs(i + 1, seen | (1 << c) if watched >> v & 1 else seen)
        colors.pop(v, None)

    yield from dfs(0, 0)


def _search_subset(graph: Graph, mask: int, sizes: Tuple[int, ...]) -> Optional[Dict[int, FrozenSet[int]]]:
    """
    Bad assignment on G[mask] or None. Only assignments where every color of
    a list also appears in a neighbour's list are needed (a private color lets
    its vertex be colored last), lists are built up to color renaming (colors
    with the same membership signature are interchangeable), and the last
    vertex is decided by intersecting its neighbourhood colors over all
    colorings of the others.
    """
    verts = members(mask)
    adjacency = {v: graph.adjacency[v] & mask for v in verts}
    order = sorted(verts, key=lambda v: (-popcount(adjacency[v]), v))
    last, head = order[-1], order[:-1]
    position = {v: i for i, v in enumerate(order)}

    # Vertex x is checked once x and all its neighbours have lists (the last vertex excluded)
    closes_at: Dict[int, List[int]] = {}
    for x in head:
        nbrs = members(adjacency[x])
        if last in nbrs:
            continue
        closes_at.setdefault(max([position[x]] + [position[u] for u in nbrs]), []).append(x)

    lists: Dict[int, int] = {}

    def supported(x: int) -> bool:
        union = 0
        for u in members(adjacency[x]):
            union |= lists[u]
        return lists[x] & ~union == 0

    def decide_last(used: int) -> Optional[int]:
        need = sizes[last]
        common = None
        for seen in _neighbourhood_colors(adjacency, head, lists, adjacency[last]):
            common = seen if common is None else common & seen
            if popcount(common) < need:
                return None
        if common is None:
            # The other vertices cannot be colored at all
            return sum(1 << c for c in range(used, used + need))
        return sum(1 << c for c in members(common)[:need])

    def assign(i: int, used: int) -> Optional[int]:
        if i == len(head):
            return decide_last(used)
        v = head[i]
        signature: Dict[Tuple[int, ...], List[int]] = {}
        for c in range(used):
            key = tuple(lists[u] >> c & 1 for u in head[:i])
            signature.setdefault(key, []).append(c)
        classes = list(signature.values())
        for counts in _compositions([len(cls) for cls in classes], sizes[v]):
            fresh = sizes[v] - sum(counts)
            chosen = 0
            for cls, take in zip(classes, counts):
                for c in cls[:take]:
                    chosen |= 1 << c
            for c in range(used, used + fresh):
                chosen |= 1 << c
            lists[v] = chosen
            if all(supported(x) for x in closes_at.get(i, [])):
                found = assign(i + 1, used + fresh)
                if found is not None:
                    lists[last] = found
                    return found
        lists.pop(v, None)
        return None

    if assign(0, 0) is None:
        return None
    return {v: frozenset(members(lists[v])) for v in verts}


def _audit_search(graph: Graph, sizes: Tuple[int, ...]) -> Optional[Tuple[FrozenSet[int], ...]]:
    """Literal enumeration of every assignment from the palette {0..sum(f)-1}."""
    palette = sum(sizes)
    total = prod(comb(palette, f) for f in sizes)
    check_capacity("audit list assignments", total,
                   settings.get("capacity.audit_assignments", AUDIT_MAX_ASSIGNMENTS))
    choices = [list(combinations(range(palette), f)) for f in sizes]
    for lists in product(*choices):
        masks = [sum(1 << c for c in colors) for colors in lists]
        if _backtrack(graph.adjacency, masks) is None:
            return tuple(frozenset(colors) for colors in lists)
    return None


@lru_cache(maxsize=4096)
def _find_bad(graph: Graph, sizes: Tuple[int, ...], symmetry_pruning: bool) -> Optional[ListAssignment]:
    if not symmetry_pruning:
        lists = _audit_search(graph, sizes)
        return ListAssignment(lists, sum(sizes)) if lists is not None else None

    for mask in _tight_subsets(graph, sizes):
        partial = _search_subset(graph, mask, sizes)
        if partial is None:
            continue
        # Vertices outside the bad subgraph get fresh private colors
        used = max((max(colors) for colors in partial.values()), default=-1) + 1
        lists = []
        for v in graph.vertices:
            if v in partial:
                lists.append(partial[v])
            else:
                lists.append(frozenset(range(used, used + sizes[v])))
                used += sizes[v]
        return ListAssignment(tuple(lists), max(used, sum(sizes)))
    return None


def find_bad_assignment(graph: Graph, sizes: Sequence[int],
                        symmetry_pruning: bool = True) -> Optional[ListAssignment]:
    """A list assignment with |L(v)| = f(v) admitting no proper coloring, or None."""
    sizes = _check_sizes(graph, sizes)
    check_capacity("choosability vertex count", graph.vertex_count,
                   settings.get("capacity.choosability_vertices", CHOOSABILITY_MAX_VERTICES))
    check_capacity("choosability list total", sum(sizes),
                   settings.get("capacity.choosability_list_total", CHOOSABILITY_MAX_LIST_TOTAL))
    bad = _find_bad(graph, sizes, bool(symmetry_pruning))
    log("Choosability", f"sizes {list(sizes)}: {'bad assignment found' if bad else 'choosable'}")
    return bad


def is_f_choosable(graph: Graph, sizes: Sequence[int], symmetry_pruning: bool = True) -> bool:
    """True iff every assignment with |L(v)| = f(v) admits a proper coloring."""
    return find_bad_assignment(graph, sizes, symmetry_pruning) is None


def is_degree_choosable(graph: Graph) -> bool:
    """f(v) = deg(v); degree-0 vertices are rejected rather than given empty lists."""
    isolated = [v for v in graph.vertices if graph.degree(v) == 0]
    if isolated or graph.vertex_count == 0:
        raise DomainError(f"degree lists need minimum degree >= 1; isolated vertices {isolated}")
    return is_f_choosable(graph, degree_sizes(graph))


def is_delta_choosable(graph: Graph) -> bool:
    """f(v) = maximum degree for every vertex."""
    if graph.max_degree < 1:
        raise DomainError("Δ-lists need at least one edge")
    return is_f_choosable(graph, delta_sizes(graph))


# === Random trials ===

def random_list_assignment(sizes: Sequence[int], palette_size: int,
                           rng: np.random.Generator) -> ListAssignment:
    """Uniform size-f(v) subsets of the palette, independently per vertex."""
    lists = tuple(
        frozenset(int(c) for c in rng.choice(palette_size, size=f, replace=False)) for f in sizes
    )
    return ListAssignment(lists, palette_size)


def random_degree_list_trial(graph: Graph, palette_size: int, trial_count: int, seed: int,
                             rule: str = DEGREE_RULE) -> TrialReport:
    """
    Color `trial_count` random list assignments. Trial i draws from its own
    generator seeded with (seed, i), so reports do not depend on execution order.
    """
    require_connected(graph, "random_degree_list_trial")
    if rule == DEGREE_RULE:
        sizes = degree_sizes(graph)
        theorem_applies = not is_gallai_tree(graph)
    elif rule == DELTA_RULE:
        sizes = delta_sizes(graph)
        theorem_applies = not is_complete_or_odd_cycle(graph)
    else:
        raise PreconditionError(f"unknown list-size rule {rule!r} (use degree or delta)")
    if graph.vertex_count == 0 or min(sizes) < 1:
        raise DomainError("list sizes must be positive; the graph has an isolated vertex")
    if palette_size < max(sizes):
        raise PreconditionError(f"palette of {palette_size} colors cannot hold lists of size {max(sizes)}")
    if seed < 0 or trial_count < 0:
        raise PreconditionError("seed and trial count must be nonnegative")

    failures = []
    for trial in range(trial_count):
        rng = np.random.default_rng([seed, trial])
        lists = random_list_assignment(sizes, palette_size, rng)
        if find_list_coloring(graph, lists) is None:
            failures.append(TrialFailure(trial, lists))

    report = TrialReport(rule, seed, palette_size, trial_count, sizes, tuple(failures), theorem_applies)
    log("Trials", f"{rule} lists, {trial_count} trials, {report.failure_count} failures")
    return report
