"""
Flow networks on acyclic multigraphs, the network ``G_lambda`` whose flow
polytope is integrally equivalent to ``GT(lambda)``, and the overlay networks
of a partition family.

Vertices of ``G_lambda`` are labelled ``(i, j)`` for ``v_ij``. An edge
``(v_ij, v_(i+1,j))`` carries ``a_ij`` and ``(v_ij, v_(i+1,j+1))`` carries
``b_ij``; the two boundary chains (``v_(i,i-1)`` and ``v_(i,n+1)``) close the
network at the sink ``v_(n+2,n+1)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Optional, Sequence

from .combinatorics import ParFamily, Partition
from .gt import gt_points, gt_system
from .lattice import TrianglePoint
from .minkowski import embed, p_d_points

__all__ = [
    "FlowNetwork", "Flow", "build_g_lambda", "integer_flows", "is_flow",
    "gt_to_flow", "flow_to_gt", "flow_to_gt_alt", "flow_vertices", "gwt",
    "check_hypersimplex", "hypersimplex_image", "check_permutahedron", "check_flow_minkowski",
    "random_dag", "overlay", "hat_overlay", "overlay_mu", "check_overlay_inclusions",
    "OverlayReport",
]

Flow = tuple  # one nonnegative value per edge, in edge order


@dataclass(frozen=True)
class FlowNetwork:
    """Vertices listed in a topological order; edges may repeat."""

    vertices: tuple
    edges: tuple
    netflow: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "netflow", tuple(int(a) for a in self.netflow))
        pos = {v: k for k, v in enumerate(self.vertices)}
        if len(pos) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        if len(self.netflow) != len(self.vertices):
            raise ValueError("one netflow value per vertex is required")
        for u, v in self.edges:
            if u not in pos or v not in pos:
                raise ValueError(f"edge {(u, v)} references an unknown vertex")
            if pos[u] >= pos[v]:
                raise ValueError(f"edge {(u, v)} does not follow the vertex order")
        if sum(self.netflow) != 0:
            raise ValueError("netflows must sum to zero")

    @cached_property
    def index(self) -> dict:
        return {v: k for k, v in enumerate(self.vertices)}

    @cached_property
    def _out(self) -> list[list[int]]:
        idx = self.index
        out = [[] for _ in self.vertices]
        for e, (u, _) in enumerate(self.edges):
            out[idx[u]].append(e)
        return out

    @cached_property
    def _in(self) -> list[list[int]]:
        idx = self.index
        inc = [[] for _ in self.vertices]
        for e, (_, v) in enumerate(self.edges):
            inc[idx[v]].append(e)
        return inc

    def out_edges(self) -> list[list[int]]:
        return self._out

    def in_edges(self) -> list[list[int]]:
        return self._in

    def with_netflow(self, netflow: Sequence[int]) -> "FlowNetwork":
        return FlowNetwork(self.vertices, self.edges, tuple(netflow))

    @cached_property
    def _edge_index(self) -> dict:
        out = {}
        for e, uv in enumerate(self.edges):
            out.setdefault(uv, e)
        return out

    def edge_index(self) -> dict:
        """First edge index for each ``(u, v)`` pair."""
        return self._edge_index

    def to_json(self) -> dict:
        lab = _label_json
        return {
            "vertices": [lab(v) for v in self.vertices],
            "edges": [[lab(u), lab(v)] for u, v in self.edges],
            "netflow": list(self.netflow),
        }


def _label_json(v):
    if isinstance(v, tuple):
        return "v" + "_".join(map(str, v))
    return v


def is_flow(net: FlowNetwork, f: Sequence[int]) -> bool:
    if len(f) != len(net.edges) or any(v < 0 for v in f):
        return False
    bal = list(net.netflow)
    idx = net.index
    for (u, v), val in zip(net.edges, f):
        bal[idx[u]] -= val
        bal[idx[v]] += val
    return not any(bal)


def integer_flows(net: FlowNetwork) -> list[Flow]:
    """
    All integer flows, in lexicographic order of the edge-value vector.

    Vertices are visited in order; the outflow at each vertex is its inflow
    plus netflow and is split over its out-edges in every possible way.
    """
    nv = len(net.vertices)
    outs = net.out_edges()
    idx = net.index
    targets = [idx[v] for _, v in net.edges]
    m = len(net.edges)
    f = [0] * m
    inflow = [0] * nv
    results: list[Flow] = []

    def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    def visit(v: int):
        if v == nv:
            results.append(tuple(f))
            return
        total = inflow[v] + net.netflow[v]
        edges = outs[v]
        if total < 0 or (not edges and total != 0):
            return
        if not edges:
            visit(v + 1)
            return
        for split in compositions(total, len(edges)):
            for e, val in zip(edges, split):
                f[e] = val
                inflow[targets[e]] += val
            visit(v + 1)
            for e, val in zip(edges, split):
                inflow[targets[e]] -= val
                f[e] = 0

    visit(0)
    results.sort()
    return results


@lru_cache(maxsize=64)
def _g_graph(n: int) -> tuple[tuple, tuple]:
    if n == 1:
        return ((2, 2),), ()
    verts = {(i, j) for i in range(2, n + 1) for j in range(i, n + 1)}
    verts |= {(i, i - 1) for i in range(3, n + 3)}
    verts |= {(i, n + 1) for i in range(3, n + 2)}
    edges = [((i, j), (i + 1, j)) for i in range(2, n + 1) for j in range(i, n + 1)]
    edges += [((i, n + 1), (i + 1, n + 1)) for i in range(3, n + 2)]
    edges += [((i, j), (i + 1, j + 1)) for i in range(2, n + 1) for j in range(i, n + 1)]
    edges += [((i, i - 1), (i + 1, i)) for i in range(3, n + 2)]
    # the sink v_(n+2,n+1) is also v_(i,i-1) for i = n+2
    return tuple(sorted(verts)), tuple(sorted(edges))


def build_g_lambda(lam: Partition) -> FlowNetwork:
    """
    >>> net = build_g_lambda(Partition((1, 0)))
    >>> net.vertices, net.netflow
    (((2, 2), (3, 2), (3, 3), (4, 3)), (1, 0, 0, -1))
    """
    if not isinstance(lam, Partition):
        lam = Partition(tuple(lam))
    return _build_g_lambda(lam)


@lru_cache(maxsize=512)
def _build_g_lambda(lam: Partition) -> FlowNetwork:
    if not isinstance(lam, Partition):
        lam = Partition(tuple(lam))
    n = lam.n
    if n < 1:
        raise ValueError("G_lambda needs at least one part")
    verts, edges = _g_graph(n)
    if n == 1:
        return FlowNetwork(verts, edges, (0,))
    net = {v: 0 for v in verts}
    for j in range(2, n + 1):
        net[(2, j)] = lam[j - 1] - lam[j]
    net[(n + 2, n + 1)] = lam[n] - lam[1]
    return FlowNetwork(verts, edges, tuple(net[v] for v in verts))


def _n_of(net: FlowNetwork) -> int:
    if len(net.vertices) == 1:
        return 1
    return max(i for i, _ in net.vertices) - 2


def _complete_by_conservation(net: FlowNetwork, f: list) -> None:
    """Fill edges marked None: a vertex with one unknown out-edge passes on its balance."""
    outs, ins = net.out_edges(), net.in_edges()
    for v in range(len(net.vertices)):
        unknown = [e for e in outs[v] if f[e] is None]
        if not unknown:
            continue
        if len(unknown) > 1 or any(f[e] is None for e in ins[v]):
            raise ValueError("conservation does not determine the boundary flows")
        val = net.netflow[v] + sum(f[e] for e in ins[v]) - sum(f[e] for e in outs[v] if f[e] is not None)
        if val < 0:
            raise ValueError("boundary flow would be negative")
        f[unknown[0]] = val


def _flow_from_triangle(x: TrianglePoint, net: FlowNetwork) -> Flow:
    n = x.n
    eidx = net.edge_index()
    f: list = [None] * len(net.edges)
    for i in range(2, n + 1):
        for j in range(i, n + 1):
            f[eidx[((i, j), (i + 1, j))]] = x[i - 1, j - 1] - x[i, j]
            f[eidx[((i, j), (i + 1, j + 1))]] = x[i, j] - x[i - 1, j]
    _complete_by_conservation(net, f)
    return tuple(f)


def gt_to_flow(x: TrianglePoint, lam: Partition) -> Flow:
    """``a_ij = x_(i-1,j-1) - x_ij``, ``b_ij = x_ij - x_(i-1,j)``; chains by conservation."""
    if x.n != lam.n or not gt_system(lam).contains(x.values):
        raise ValueError("point is not in GT(lambda)")
    net = build_g_lambda(lam)
    f = _flow_from_triangle(x, net)
    if not is_flow(net, f):
        raise AssertionError("image is not a flow")
    return f


def flow_to_gt(f: Sequence[int], lam: Partition) -> TrianglePoint:
    """``x_ij = lambda_j + sum_(k=2..i) b_kj``."""
    net = build_g_lambda(lam)
    if not is_flow(net, f):
        raise ValueError("not a flow on G_lambda")
    n = lam.n
    eidx = net.edge_index()
    entries = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            entries[(i, j)] = lam[j] + sum(f[eidx[((k, j), (k + 1, j + 1))]] for k in range(2, i + 1))
    return TrianglePoint.from_dict(n, entries)


def flow_to_gt_alt(f: Sequence[int], lam: Partition) -> TrianglePoint:
    """``x_ij = lambda_(j-i+1) - sum_(k=0..i-2) a_(i-k,j-k)``."""
    net = build_g_lambda(lam)
    if not is_flow(net, f):
        raise ValueError("not a flow on G_lambda")
    n = lam.n
    eidx = net.edge_index()
    entries = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            entries[(i, j)] = lam[j - i + 1] - sum(
                f[eidx[((i - k, j - k), (i - k + 1, j - k))]] for k in range(0, i - 1)
            )
    return TrianglePoint.from_dict(n, entries)


def flow_vertices(net: FlowNetwork) -> list[Flow]:
    """
    Vertices of a single-source single-sink flow polytope: one flow per
    source-to-sink path, carrying the source netflow along the path.
    """
    sources = [k for k, a in enumerate(net.netflow) if a > 0]
    sinks = [k for k, a in enumerate(net.netflow) if a < 0]
    m = len(net.edges)
    if not sources and not sinks:
        return [(0,) * m]
    if len(sources) != 1 or len(sinks) != 1:
        raise ValueError("flow_vertices needs exactly one source and one sink")
    src, dst = sources[0], sinks[0]
    value = net.netflow[src]
    outs = net.out_edges()
    idx = net.index
    found = []

    def walk(v: int, path: list[int]):
        if v == dst:
            f = [0] * m
            for e in path:
                f[e] = value
            found.append(tuple(f))
            return
        for e in outs[v]:
            walk(idx[net.edges[e][1]], path + [e])

    walk(src, [])
    return sorted(found)


def gwt(f: Sequence[int], net: FlowNetwork) -> tuple[int, ...]:
    """Flow on ``(v_ij, v_(i+1,j))`` counts toward coordinate ``i-1``; other edges count 0."""
    n = _n_of(net)
    out = [0] * n
    for ((i, j), (i2, j2)), val in zip(net.edges, f):
        if j2 == j:
            out[i - 2] += val
    return tuple(out)


def hypersimplex_image(k: int, n: int) -> set[tuple[int, ...]]:
    """``gwt`` of the path vertices of ``G_(1^k 0^(n-k))``, shifted by ``lambda_n * 1``."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    lam = Partition((1,) * k + (0,) * (n - k))
    net = build_g_lambda(lam)
    shift = lam[n]
    return {tuple(c + shift for c in gwt(f, net)) for f in flow_vertices(net)}


def check_hypersimplex(k: int, n: int) -> bool:
    """
    Compare the shifted ``gwt`` image of the vertices with the 0/1 vectors of
    coordinate sum ``k``. The shift is zero except when ``k == n``.
    """
    target = {v for v in itertools.product((0, 1), repeat=n) if sum(v) == k}
    return hypersimplex_image(k, n) == target


def check_permutahedron(lam: Partition, trials: int = 100, seed: int = 0) -> bool:
    """
    Support-function test of ``P_lambda = sum_k (lam_k - lam_(k+1)) Delta_(k,n) + lam_n Delta_(n,n)``
    on random integer directions with distinct entries. The hypersimplex
    vertices come from the flow networks ``G_(1^k 0^(n-k))``.
    """
    n = lam.n
    rng = random.Random(seed)
    orbit = set(itertools.permutations(lam.parts))
    simplices = {k: hypersimplex_image(k, n) for k in range(1, n + 1)}
    for _ in range(trials):
        c = rng.sample(range(-10 * n - 10, 10 * n + 11), n)
        lhs = max(sum(ci * vi for ci, vi in zip(c, v)) for v in orbit)
        rhs = 0
        for k in range(1, n + 1):
            mult = lam[k] - lam[k + 1]
            if mult:
                rhs += mult * max(sum(ci * vi for ci, vi in zip(c, v)) for v in simplices[k])
        if lhs != rhs:
            return False
    return True


def _full_netflow(net: FlowNetwork, a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(a)
    if len(a) == len(net.vertices):
        return a
    if len(a) != len(net.vertices) - 1:
        raise ValueError("netflow needs one entry per non-sink vertex")
    return a + (-sum(a),)


def check_flow_minkowski(net: FlowNetwork, a: Sequence[int], b: Sequence[int]) -> bool:
    """Integer flows of ``F(a) + F(b)`` equal those of ``F(a + b)``."""
    fa, fb = _full_netflow(net, a), _full_netflow(net, b)
    if any(v < 0 for v in fa[:-1] + fb[:-1]):
        raise ValueError("netflows must be nonnegative away from the last vertex")
    A = integer_flows(net.with_netflow(fa))
    B = integer_flows(net.with_netflow(fb))
    AB = integer_flows(net.with_netflow(tuple(x + y for x, y in zip(fa, fb))))
    sums = {tuple(p + q for p, q in zip(f, g)) for f in A for g in B}
    return sums == set(AB)


def random_dag(rng: random.Random, nverts: int = 5, extra_edges: int = 4) -> FlowNetwork:
    """Path ``0 -> 1 -> ... -> nverts-1`` plus random forward edges (repeats allowed)."""
    edges = [(v, v + 1) for v in range(nverts - 1)]
    for _ in range(extra_edges):
        u, v = sorted(rng.sample(range(nverts), 2))
        edges.append((u, v))
    return FlowNetwork(tuple(range(nverts)), tuple(sorted(edges)), (0,) * nverts)


# overlays of the summand networks


def _embed_label(v: tuple, k: int, n: int) -> tuple:
    return (v[0], v[1] + n - k)


def overlay(fam: ParFamily) -> FlowNetwork:
    """Overlay ``G_(lambda^(k))`` on ``G_n`` via ``v_ij -> v_(i, j+n-k)`` and add netflows."""
    n = fam.n
    verts, edges = _g_graph(n)
    net = {v: 0 for v in verts}
    for k in range(2, n + 1):
        g = build_g_lambda(fam[k])
        for v, a in zip(g.vertices, g.netflow):
            w = _embed_label(v, k, n)
            if w not in net:
                raise AssertionError(f"embedded vertex {w} missing from G_{n}")
            net[w] += a
    return FlowNetwork(verts, edges, tuple(net[v] for v in verts))


def hat_overlay(fam: ParFamily) -> FlowNetwork:
    """The overlay with every negative netflow moved to ``v_(n+2,n+1)``."""
    base = overlay(fam)
    if fam.n == 1:
        return base
    sink = base.index[(fam.n + 2, fam.n + 1)]
    net = [max(a, 0) for a in base.netflow]
    net[sink] = -sum(net)
    return base.with_netflow(net)


def overlay_mu(fam: ParFamily) -> Partition:
    """``mu_n = 0``, ``mu_k = mu_(k+1) + sum_(j<k) (lambda^(n-j)_(k-j) - lambda^(n-j)_(k-j+1))``."""
    n = fam.n
    mu = [0] * (n + 2)
    for k in range(n - 1, 0, -1):
        mu[k] = mu[k + 1] + sum(fam.lam(n - j, k - j) - fam.lam(n - j, k - j + 1) for j in range(k))
    return Partition(tuple(mu[1 : n + 1]))


def _summand_edge_map(k: int, n: int) -> list[int]:
    small = _g_graph(k)[1]
    big = FlowNetwork(_g_graph(n)[0], _g_graph(n)[1], (0,) * len(_g_graph(n)[0])).edge_index()
    return [big[(_embed_label(u, k, n), _embed_label(v, k, n))] for u, v in small]


def _chain_translation(fam: ParFamily, base: FlowNetwork) -> tuple[int, ...]:
    """Carry every intermediate sink's demand down the right chain to ``v_(n+2,n+1)``."""
    n = fam.n
    t = [0] * len(base.edges)
    if n == 1:
        return tuple(t)
    eidx = base.edge_index()
    final = (n + 2, n + 1)
    for v, a in zip(base.vertices, base.netflow):
        if a < 0 and v != final:
            i, j = v
            if j != n + 1:
                raise AssertionError(f"unexpected negative netflow at {v}")
            for r in range(i, n + 2):
                t[eidx[((r, n + 1), (r + 1, n + 1))]] += -a
    return tuple(t)


@dataclass
class OverlayReport:
    family: ParFamily
    summand_sum_count: int
    overlay_count: int
    hat_count: int
    sum_in_overlay: bool
    overlay_in_hat: bool
    first_equal: bool
    second_equal: bool
    mu: Partition
    hat_is_g_mu: bool
    hat_bijective_with_gt_mu: bool
    minkowski_equivalence: bool
    first_witness: Optional[tuple] = None
    second_witness: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return (self.sum_in_overlay and self.overlay_in_hat and self.hat_is_g_mu
                and self.hat_bijective_with_gt_mu and self.minkowski_equivalence)

    @property
    def strict(self) -> bool:
        return not (self.first_equal and self.second_equal)

    def to_json(self) -> dict:
        return {
            "family": self.family.to_json(),
            "counts": {
                "summandSum": self.summand_sum_count,
                "overlay": self.overlay_count,
                "hat": self.hat_count,
            },
            "sumInOverlay": self.sum_in_overlay,
            "overlayInHat": self.overlay_in_hat,
            "firstEqual": self.first_equal,
            "secondEqual": self.second_equal,
            "mu": self.mu.to_json(),
            "hatIsGmu": self.hat_is_g_mu,
            "hatBijectiveWithGTmu": self.hat_bijective_with_gt_mu,
            "minkowskiEquivalence": self.minkowski_equivalence,
            "firstWitness": list(self.first_witness) if self.first_witness else None,
            "secondWitness": list(self.second_witness) if self.second_witness else None,
        }


def _pd_to_flow_sum(fam: ParFamily, base: FlowNetwork) -> tuple[set, int]:
    """
    Image of the lattice points of ``P_D`` under ``x -> L(x) + shift``, where
    ``L`` is the ``G_n`` coordinate map and ``shift`` corrects the summand
    networks' boundary chains. Returns the image and the number of points.
    """
    n = fam.n
    shift = [0] * len(base.edges)
    for k in range(1, n + 1):
        lam = fam[k]
        emap = _summand_edge_map(k, n)
        shifts = set()
        for y in gt_points(lam).triangle_points():
            own = gt_to_flow(y, lam)
            embedded = [0] * len(base.edges)
            for e, val in zip(emap, own):
                embedded[e] += val
            lin = _linear_part(embed(k, n, y), base)
            shifts.add(tuple(p - q for p, q in zip(embedded, lin)))
        if len(shifts) != 1:
            raise AssertionError(f"summand {k}: the equivalence is not a translate of L")
        shift = [s + d for s, d in zip(shift, shifts.pop())]
    pts = p_d_points(fam)
    image = {tuple(p + s for p, s in zip(_linear_part(x, base), shift)) for x in pts.triangle_points()}
    return image, len(pts)


def _linear_part(x: TrianglePoint, base: FlowNetwork) -> list[int]:
    """The edge values of ``G_n`` as linear functions of ``x`` (boundary chains summed)."""
    n = x.n
    eidx = base.edge_index()
    f = [0] * len(base.edges)
    for i in range(2, n + 1):
        for j in range(i, n + 1):
            f[eidx[((i, j), (i + 1, j))]] = x[i - 1, j - 1] - x[i, j]
            f[eidx[((i, j), (i + 1, j + 1))]] = x[i, j] - x[i - 1, j]
    for i in range(3, n + 2):
        f[eidx[((i, i - 1), (i + 1, i))]] = sum(x[r - 1, r - 1] - x[r, r] for r in range(2, i))
        f[eidx[((i, n + 1), (i + 1, n + 1))]] = sum(x[r, n] - x[r - 1, n] for r in range(2, i))
    return f


def check_overlay_inclusions(fam: ParFamily) -> OverlayReport:
    """
    Lattice-level check of the chain
    ``sum_k F(G_(lambda^(k))) ⊆ F(G(fam)) ⊆ F(Ghat(fam)) - t`` together with
    ``Ghat(fam) = G_mu`` and the equivalence of ``P_D`` with the summed flows.

    Lattice points suffice as witnesses of strictness: the lattice sumset of
    the summands is the full lattice of their Minkowski sum (it equals the
    lattice points of ``P_D`` under the equivalence).
    """
    n = fam.n
    base = overlay(fam)
    hat = hat_overlay(fam)
    m = len(base.edges)

    summed = {(0,) * m}
    for k in range(2, n + 1):
        emap = _summand_edge_map(k, n)
        embedded = []
        for f in integer_flows(build_g_lambda(fam[k])):
            g = [0] * m
            for e, val in zip(emap, f):
                g[e] += val
            embedded.append(tuple(g))
        summed = {tuple(p + q for p, q in zip(s, g)) for s in summed for g in embedded}

    over = set(integer_flows(base))
    t = _chain_translation(fam, base)
    moved = {tuple(p + q for p, q in zip(f, t)) for f in over}
    hat_flows = integer_flows(hat)
    hat_set = set(hat_flows)

    mu = overlay_mu(fam)
    g_mu = build_g_lambda(mu)
    hat_is_g_mu = g_mu == hat
    bij = False
    if hat_is_g_mu:
        images = [flow_to_gt(f, mu).values for f in hat_flows]
        bij = len(set(images)) == len(images) and set(images) == gt_points(mu).as_set()

    image, npts = _pd_to_flow_sum(fam, base) if n >= 2 else ({(0,) * m}, 1)
    ms_ok = image == summed and len(image) == npts

    first_extra = sorted(over - summed)
    second_extra = sorted(hat_set - moved)
    return OverlayReport(
        family=fam,
        summand_sum_count=len(summed),
        overlay_count=len(over),
        hat_count=len(hat_set),
        sum_in_overlay=summed <= over,
        overlay_in_hat=moved <= hat_set,
        first_equal=summed == over,
        second_equal=moved == hat_set,
        mu=mu,
        hat_is_g_mu=hat_is_g_mu,
        hat_bijective_with_gt_mu=bij,
        minkowski_equivalence=ms_ok,
        first_witness=first_extra[0] if first_extra else None,
        second_witness=second_extra[0] if second_extra else None,
    )
