"""Spaces: where agents live and how neighbors are found.

A space is anything implementing the five-operation contract in ``Space``;
the engine never touches space internals beyond those five methods plus the
optional emptiness queries.  Three spaces ship here: an N-dimensional grid
(chebyshev or euclidean metric, optionally periodic), a continuous space
with a uniform bucket index, and a mutable directed graph.

Determinism contract shared by all spaces: every id iterator produced by a
neighbor query has an order that depends only on the queried position and
the current id->position mapping (cells are visited in a fixed geometric
order, ids within a cell in ascending order).  Random-position draws consume
the model rng in a documented order.  Both properties are what make
checkpoint restore bit-exact.
"""

from __future__ import annotations

import itertools
import math

from .rng import Rng


class NoEmptyPosition(Exception):
    """Raised when an empty position is required but the space is full."""


class OccupiedNode(Exception):
    """Raised when removing a graph node that still hosts agents."""


class Space:
    """The five operations a space must supply to plug into the engine."""

    def register_agent(self, agent_id: int, pos) -> None:
        raise NotImplementedError

    def unregister_agent(self, agent_id: int, pos) -> None:
        raise NotImplementedError

    def update_position(self, agent_id: int, old, new) -> None:
        raise NotImplementedError

    def neighbor_ids(self, pos, r):
        """Ids of agents within range r of pos (see each space for metric)."""
        raise NotImplementedError

    def random_position(self, rng: Rng):
        raise NotImplementedError

    # --- optional surface used by some engine helpers ---

    def valid_position(self, pos) -> bool:
        raise NotImplementedError

    def describe(self) -> str:
        return type(self).__name__


class GridSpace(Space):
    """N-dimensional lattice of cells, each holding a set of agent ids.

    ``metric`` selects the neighborhood shape: ``chebyshev`` includes all
    cells with max-coordinate offset <= r (the Moore neighborhood at r=1),
    ``euclidean`` those with squared center distance <= r*r (von Neumann at
    r=1).  The boundary is inclusive.  Periodic grids wrap coordinates
    modulo the dimensions.
    """

    def __init__(self, dims, periodic: bool = False, metric: str = "chebyshev"):
        dims = tuple(int(d) for d in dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"grid dims must be positive, got {dims}")
        if metric not in ("chebyshev", "euclidean"):
            raise ValueError(f"unknown metric {metric!r}")
        self.dims = dims
        self.periodic = bool(periodic)
        self.metric = metric
        self.cells: dict[tuple, set[int]] = {}
        self.capacity = math.prod(dims)
        self._offsets_cache: dict[tuple, list[tuple]] = {}

    # -- contract --

    def register_agent(self, agent_id, pos):
        self.cells.setdefault(pos, set()).add(agent_id)

    def unregister_agent(self, agent_id, pos):
        cell = self.cells[pos]
        cell.discard(agent_id)
        if not cell:
            del self.cells[pos]

    def update_position(self, agent_id, old, new):
        if old == new:
            return
        self.unregister_agent(agent_id, old)
        self.register_agent(agent_id, new)

    def neighbor_ids(self, pos, r):
        """Agents within metric distance r of pos, the queried cell included."""
        cells = self.cells
        here = cells.get(pos)
        if here:
            yield from sorted(here)
        for other in self.neighbor_positions(pos, r):
            ids = cells.get(other)
            if ids:
                yield from sorted(ids)

    def random_position(self, rng):
        """Uniform cell: one next_below(capacity) draw, unraveled row-major."""
        idx = rng.next_below(self.capacity)
        pos = []
        for d in reversed(self.dims):
            idx, c = divmod(idx, d)
            pos.append(c)
        return tuple(reversed(pos))

    # -- grid-specific --

    def valid_position(self, pos) -> bool:
        return (
            isinstance(pos, tuple)
            and len(pos) == len(self.dims)
            and all(isinstance(c, int) and 0 <= c < d for c, d in zip(pos, self.dims))
        )

    def _offsets(self, r, metric):
        key = (r, metric)
        cached = self._offsets_cache.get(key)
        if cached is None:
            span = range(-int(r), int(r) + 1)
            offs = itertools.product(*[span] * len(self.dims))
            if metric == "euclidean":
                r2 = r * r
                cached = [o for o in offs if any(o) and sum(c * c for c in o) <= r2]
            else:
                cached = [o for o in offs if any(o)]
            self._offsets_cache[key] = cached
        return cached

    def neighbor_positions(self, pos, r, metric: str | None = None):
        """Cells within distance r of pos, origin excluded, fixed order."""
        if r < 0:
            raise ValueError("range must be non-negative")
        dims = self.dims
        if self.periodic:
            seen = set()
            for off in self._offsets(r, metric or self.metric):
                q = tuple((c + o) % d for c, o, d in zip(pos, off, dims))
                if q != pos and q not in seen:
                    seen.add(q)
                    yield q
        else:
            for off in self._offsets(r, metric or self.metric):
                q = tuple(c + o for c, o in zip(pos, off))
                if all(0 <= c < d for c, d in zip(q, dims)):
                    yield q

    def all_positions(self):
        """Every cell in row-major order."""
        return itertools.product(*[range(d) for d in self.dims])

    def is_empty(self, pos) -> bool:
        return pos not in self.cells

    def empty_positions(self):
        """Empty cells in row-major order."""
        cells = self.cells
        return (p for p in self.all_positions() if p not in cells)

    def n_empty(self) -> int:
        return self.capacity - len(self.cells)

    def random_empty(self, rng):
        """Uniform empty cell by rejection over random_position.

        Rejection keeps the draw independent of any internal ordering, so a
        restored checkpoint replays it exactly.
        """
        if len(self.cells) == self.capacity:
            raise NoEmptyPosition("space is full")
        while True:
            pos = self.random_position(rng)
            if pos not in self.cells:
                return pos

    def ids_at(self, pos):
        return sorted(self.cells.get(pos, ()))

    def position_distance(self, a, b) -> float:
        """Metric distance between two cells (wrapped if periodic)."""
        deltas = []
        for x, y, d in zip(a, b, self.dims):
            delta = abs(x - y)
            if self.periodic:
                delta = min(delta, d - delta)
            deltas.append(delta)
        if self.metric == "euclidean":
            return math.sqrt(sum(d * d for d in deltas))
        return max(deltas)

    def describe(self) -> str:
        flag = "true" if self.periodic else "false"
        return f"GridSpace with size {self.dims}, metric={self.metric} and periodic={flag}"


class ContinuousSpace(Space):
    """Real-valued box with a uniform bucket index for neighbor search.

    ``spacing`` is a performance knob only: query results are exact for any
    spacing.  The index uses n_i = max(1, floor(extent_i / spacing)) buckets
    per axis with width extent_i / n_i, so the buckets tile the box exactly
    and periodic wraparound stays a plain modulo on bucket indices.
    Neighbor queries scan the bucket window covering the ball and filter by
    exact squared distance (boundary inclusive).
    """

    def __init__(self, extent, periodic: bool = True, spacing: float | None = None):
        extent = tuple(float(e) for e in extent)
        if not extent or any(e <= 0 for e in extent):
            raise ValueError(f"extent must be positive, got {extent}")
        if spacing is None:
            spacing = min(extent) / 20.0
        if spacing <= 0:
            raise ValueError("spacing must be positive")
        self.extent = extent
        self.periodic = bool(periodic)
        self.spacing = float(spacing)
        self.nbuckets = tuple(max(1, int(e / spacing)) for e in extent)
        self.widths = tuple(e / n for e, n in zip(extent, self.nbuckets))
        self.buckets: dict[tuple, set[int]] = {}
        self.positions: dict[int, tuple] = {}

    # -- contract --

    def register_agent(self, agent_id, pos):
        self.positions[agent_id] = pos
        self.buckets.setdefault(self._bucket(pos), set()).add(agent_id)

    def unregister_agent(self, agent_id, pos):
        del self.positions[agent_id]
        key = self._bucket(pos)
        cell = self.buckets[key]
        cell.discard(agent_id)
        if not cell:
            del self.buckets[key]

    def update_position(self, agent_id, old, new):
        self.positions[agent_id] = new
        if len(old) == 2:
            wx, wy = self.widths
            nx, ny = self.nbuckets
            ax = int(old[0] / wx)
            ay = int(old[1] / wy)
            bx = int(new[0] / wx)
            by = int(new[1] / wy)
            kold = (ax if ax < nx else nx - 1, ay if ay < ny else ny - 1)
            knew = (bx if bx < nx else nx - 1, by if by < ny else ny - 1)
        else:
            kold, knew = self._bucket(old), self._bucket(new)
        if kold != knew:
            cell = self.buckets[kold]
            cell.discard(agent_id)
            if not cell:
                del self.buckets[kold]
            self.buckets.setdefault(knew, set()).add(agent_id)

    def neighbor_ids(self, pos, r):
        """Ids within euclidean distance r of pos (inclusive), exactly."""
        return [aid for aid, *_ in self.neighbors_with_offsets(pos, r)]

    def neighbors_with_offsets(self, pos, r):
        """(id, offset..., squared distance) for each agent within r of pos.

        One fused pass over the bucket window; the offset components are the
        minimal-image displacement from pos to the neighbor.  This is the
        hot-path query for force-based models.
        """
        if r < 0:
            raise ValueError("range must be non-negative")
        r2 = r * r
        positions = self.positions
        buckets = self.buckets
        out = []
        if len(self.extent) == 2:
            ex, ey = self.extent
            hx, hy = ex / 2.0, ey / 2.0
            px, py = pos
            periodic = self.periodic
            wx, wy = self.widths
            nx, ny = self.nbuckets
            bx = int(px / wx)
            by = int(py / wy)
            bx = bx if bx < nx else nx - 1
            by = by if by < ny else ny - 1
            rx = int(math.ceil(r / wx))
            ry = int(math.ceil(r / wy))
            if periodic:
                xs = range(nx) if 2 * rx + 1 >= nx else [(bx + d) % nx for d in range(-rx, rx + 1)]
                ys = range(ny) if 2 * ry + 1 >= ny else [(by + d) % ny for d in range(-ry, ry + 1)]
            else:
                xs = range(max(0, bx - rx), min(nx, bx + rx + 1))
                ys = range(max(0, by - ry), min(ny, by + ry + 1))
            bucket_get = buckets.get
            for kx in xs:
                for ky in ys:
                    cell = bucket_get((kx, ky))
                    if not cell:
                        continue
                    for aid in sorted(cell):
                        qx, qy = positions[aid]
                        dx = qx - px
                        dy = qy - py
                        if periodic:
                            if dx > hx:
                                dx -= ex
                            elif dx < -hx:
                                dx += ex
                            if dy > hy:
                                dy -= ey
                            elif dy < -hy:
                                dy += ey
                        d2 = dx * dx + dy * dy
                        if d2 <= r2:
                            out.append((aid, dx, dy, d2))
            return out
        for key in self._bucket_window(pos, r):
            cell = buckets.get(key)
            if not cell:
                continue
            for aid in sorted(cell):
                off = self.offset(pos, positions[aid])
                d2 = sum(c * c for c in off)
                if d2 <= r2:
                    out.append((aid, *off, d2))
        return out

    def random_position(self, rng):
        """One next_float draw per axis, scaled to the extent."""
        return tuple(rng.next_float() * e for e in self.extent)

    # -- continuous-specific --

    def valid_position(self, pos) -> bool:
        return (
            isinstance(pos, tuple)
            and len(pos) == len(self.extent)
            and all(0 <= c < e for c, e in zip(pos, self.extent))
        )

    def _bucket(self, pos):
        return tuple(
            min(int(c / w), n - 1)
            for c, w, n in zip(pos, self.widths, self.nbuckets)
        )

    def _bucket_window(self, pos, r):
        """Bucket keys covering the ball of radius r around pos, fixed order."""
        axes = []
        for c, w, n in zip(pos, self.widths, self.nbuckets):
            b = min(int(c / w), n - 1)
            reach = int(math.ceil(r / w))
            if self.periodic and 2 * reach + 1 >= n:
                axes.append(range(n))
            elif self.periodic:
                axes.append([(b + d) % n for d in range(-reach, reach + 1)])
            else:
                axes.append(range(max(0, b - reach), min(n, b + reach + 1)))
        return itertools.product(*axes)

    def neighbor_positions(self, pos, r):
        raise TypeError("continuous space has no discrete positions to enumerate")

    def wrap(self, pos):
        return tuple(c % e for c, e in zip(pos, self.extent))

    def offset(self, a, b):
        """Per-axis displacement from a to b (minimal image if periodic)."""
        out = []
        for x, y, e in zip(a, b, self.extent):
            d = y - x
            if self.periodic:
                d = d % e
                if d > e / 2:
                    d -= e
            out.append(d)
        return tuple(out)

    def squared_distance(self, a, b) -> float:
        s = 0.0
        for x, y, e in zip(a, b, self.extent):
            d = abs(x - y)
            if self.periodic:
                d = min(d, e - d)
            s += d * d
        return s

    def move(self, agent_id, new_pos):
        """Move an agent, wrapping if periodic; out-of-extent otherwise is an error."""
        if self.periodic:
            if len(new_pos) == 2:
                x, y = new_pos
                ex, ey = self.extent
                if x < 0 or x >= ex:
                    x %= ex
                if y < 0 or y >= ey:
                    y %= ey
                new_pos = (x, y)
            else:
                new_pos = self.wrap(new_pos)
        elif not all(0 <= c < e for c, e in zip(new_pos, self.extent)):
            raise ValueError(f"position {new_pos} outside extent {self.extent}")
        self.update_position(agent_id, self.positions[agent_id], new_pos)
        return new_pos

    def describe(self) -> str:
        flag = "true" if self.periodic else "false"
        return (
            f"ContinuousSpace with extent {self.extent}, "
            f"spacing={self.spacing} and periodic={flag}"
        )


class GraphSpace(Space):
    """Mutable directed graph; agents sit on nodes.

    Range-r neighbor queries follow out-edges breadth-first and cover nodes
    at 1..r hops; agents on the queried node itself are not neighbors.
    Undirected graphs are expressed as symmetric edge pairs.
    """

    def __init__(self, n_nodes: int = 0):
        self.nodes: dict[int, set[int]] = {}
        self.out_edges: dict[int, set[int]] = {}
        for n in range(n_nodes):
            self.add_node(n)

    # -- contract --

    def register_agent(self, agent_id, pos):
        self.nodes[pos].add(agent_id)

    def unregister_agent(self, agent_id, pos):
        self.nodes[pos].discard(agent_id)

    def update_position(self, agent_id, old, new):
        self.nodes[old].discard(agent_id)
        self.nodes[new].add(agent_id)

    def neighbor_ids(self, pos, r):
        nodes = self.nodes
        out = []
        for node in self.neighbor_positions(pos, r):
            out.extend(sorted(nodes[node]))
        return out

    def random_position(self, rng):
        """Uniform node: one next_below draw over the sorted node list."""
        ordered = sorted(self.nodes)
        if not ordered:
            raise ValueError("graph has no nodes")
        return ordered[rng.next_below(len(ordered))]

    # -- graph-specific --

    def valid_position(self, pos) -> bool:
        return pos in self.nodes

    def neighbor_positions(self, pos, r):
        """Nodes 1..r out-hops from pos, BFS order, sorted within each level."""
        if r < 0:
            raise ValueError("range must be non-negative")
        visited = {pos}
        frontier = [pos]
        for _ in range(int(r)):
            nxt = []
            for node in frontier:
                for succ in sorted(self.out_edges.get(node, ())):
                    if succ not in visited:
                        visited.add(succ)
                        nxt.append(succ)
            nxt.sort()
            yield from nxt
            if not nxt:
                return
            frontier = nxt

    def add_node(self, node: int):
        if node in self.nodes:
            raise ValueError(f"node {node} already exists")
        self.nodes[node] = set()
        self.out_edges[node] = set()

    def remove_node(self, node: int):
        """Remove an empty node; refuses while agents occupy it."""
        if self.nodes[node]:
            raise OccupiedNode(f"node {node} still hosts agents")
        del self.nodes[node]
        del self.out_edges[node]
        for succs in self.out_edges.values():
            succs.discard(node)

    def add_edge(self, src: int, dst: int):
        if src not in self.nodes or dst not in self.nodes:
            raise ValueError(f"edge ({src}, {dst}) references a missing node")
        self.out_edges[src].add(dst)

    def remove_edge(self, src: int, dst: int):
        self.out_edges[src].discard(dst)

    def edges(self):
        """All directed edges, sorted."""
        return sorted((u, v) for u, succs in self.out_edges.items() for v in succs)

    def is_empty(self, node) -> bool:
        return not self.nodes[node]

    def empty_positions(self):
        return (n for n in sorted(self.nodes) if not self.nodes[n])

    def n_empty(self) -> int:
        return sum(1 for members in self.nodes.values() if not members)

    def random_empty(self, rng):
        if self.n_empty() == 0:
            raise NoEmptyPosition("every node is occupied")
        while True:
            node = self.random_position(rng)
            if not self.nodes[node]:
                return node

    def ids_at(self, node):
        return sorted(self.nodes.get(node, ()))

    def describe(self) -> str:
        n_edges = sum(len(s) for s in self.out_edges.values())
        return f"GraphSpace with {len(self.nodes)} nodes and {n_edges} directed edges"
