"""Tree recurrences on SAW trees, exact and truncated with certified intervals.

Hard-core occupation ratios satisfy, at a node with child ratios R_i,

    R = lambda * prod_i 1 / (1 + R_i)

with leaf value lambda; a child pinned occupied forces R = 0 and a child
pinned unoccupied contributes a factor of 1 (equivalently R_i = 0).
Monomer probabilities satisfy

    p = 1 / (1 + gamma * sum_i p_i)

with leaf value 1.  Both recurrences are monotone decreasing in every
argument, so pinning all truncated-frontier nodes to the two extreme
values (0 and lambda, resp. 0 and 1) yields two evaluations that bracket
the exact tree value regardless of the truncation parity.  That sandwich
is the sole soundness certificate used here: no decay assumption enters.

The batch evaluator below fuses tree expansion with evaluation (no nodes
are materialized) and computes both extreme evaluations for several
activity values in a single depth-first pass.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph
from .sawtree import (
    FREE,
    OCCUPIED,
    PLAIN,
    UNOCCUPIED,
    WEITZ,
    BoundaryCondition,
    NodeBudgetError,
    SawTree,
)

HARDCORE = "hardcore"
MONOMERDIMER = "monomerdimer"

ALL_ZERO = "all_zero"
ALL_MAX = "all_max"


@dataclass(frozen=True)
class ModelParams:
    """Model selector: hard-core activity lambda or dimer activity gamma."""

    model: str
    activity: float

    def __post_init__(self):
        if self.model not in (HARDCORE, MONOMERDIMER):
            raise ValueError(f"unknown model {self.model!r}")
        if not self.activity > 0:
            raise ValueError("activity must be positive")


def hardcore(lam: float) -> ModelParams:
    return ModelParams(HARDCORE, lam)


def monomerdimer(gamma: float) -> ModelParams:
    return ModelParams(MONOMERDIMER, gamma)


@dataclass
class ApproxResult:
    """A value with a certified enclosing interval and the work performed."""

    value: float
    lo: float
    hi: float
    eps_requested: float
    depth_max_used: int
    nodes_expanded: int
    converged: bool = True
    log_value: float | None = None
    advisory: object = None

    def width(self) -> float:
        return self.hi - self.lo


class AdaptiveBudgetError(RuntimeError):
    """Adaptive evaluation ran out of node budget before reaching tolerance.

    Carries the best certified interval found so far.
    """

    def __init__(self, lo: float, hi: float, depth: int, nodes: int):
        super().__init__(
            f"budget exhausted at depth {depth} after {nodes} nodes; "
            f"best interval [{lo:.6g}, {hi:.6g}]"
        )
        self.lo = lo
        self.hi = hi
        self.depth = depth
        self.nodes_expanded = nodes


# ---------------------------------------------------------------------------
# Fused sandwich evaluation (no tree materialization)
# ---------------------------------------------------------------------------


def sandwich_values(
    g: Graph,
    v: int,
    model: str,
    activities,
    depth: int,
    boundary: BoundaryCondition | None = None,
    budget: int = 10**7,
):
    """Evaluate the truncated recurrence under both extreme frontier pins.

    Returns (pairs, nodes, truncated) where pairs[i] = (lo, hi) brackets
    the exact marginal for activities[i] (ratio R_v for hard-core, monomer
    probability for monomer-dimer), nodes is the number of tree nodes
    visited and truncated says whether any frontier node was pinned
    (False means the tree was fully expanded, so lo == hi).

    All activities share one depth-first pass over the implicit SAW tree,
    in weitz mode for hard-core and plain mode for monomer-dimer.  The
    per-child combination order is the ascending-id child order, so
    results are bit-reproducible.
    """
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if budget <= 0:
        raise ValueError("budget must be positive")
    acts = [float(a) for a in activities]
    for a in acts:
        if not a > 0:
            raise ValueError("activity must be positive")
    if model == HARDCORE:
        return _sandwich_hc(g, v, acts, depth, boundary, budget)
    if model == MONOMERDIMER:
        if boundary is not None:
            raise ValueError("boundary conditions apply to hard-core only")
        return _sandwich_md(g, v, acts, depth, budget)
    raise ValueError(f"unknown model {model!r}")


def _sandwich_hc(g, root, lams, max_depth, boundary, budget):
    adj = g.adjacency
    if boundary is not None:
        boundary.validate(g)
        if root in boundary.assignments:
            raise ValueError("boundary must not pin the root vertex")
        occ = boundary.occupied()
        unocc = boundary.unoccupied()
        forced = {u for w in occ for u in adj[w]}
    else:
        occ = unocc = forced = frozenset()
    m = 2 * len(lams)
    # per-node accumulator: [lo, hi] interleaved per lambda
    b0 = [x for lam in lams for x in (lam, lam)]
    bfrontier = [x for lam in lams for x in (0.0, lam)]
    nodes = 1
    truncated = False

    if root in forced:
        return [(0.0, 0.0)] * len(lams), nodes, False

    def has_ext_weitz(w):
        return len(adj[w]) >= 2

    if not adj[root]:
        return [(lam, lam) for lam in lams], nodes, False
    if max_depth == 0:
        return [(0.0, lam) for lam in lams], nodes, True

    # frame: [vertex, parent, depth, acc list, neighbor tuple, next index, dead]
    stack = [[root, -1, 0, list(b0), adj[root], 0, False]]
    path_pos = {root: 0}
    path = [root]
    result = None

    while stack:
        fr = stack[-1]
        vtx, parent, dep, acc, nbrs, i, dead = fr
        pushed = False
        while i < len(nbrs):
            w = nbrs[i]
            i += 1
            if w == parent:
                continue
            pos = path_pos.get(w)
            if pos is not None:
                nodes += 1
                if nodes > budget:
                    raise NodeBudgetError(nodes)
                if w in occ:
                    fix_occupied = True
                elif w in unocc:
                    fix_occupied = False
                else:
                    fix_occupied = path[pos + 1] < vtx
                if fix_occupied:
                    dead = True
                    fr[6] = True
                    break  # node value is 0; remaining children irrelevant
                continue  # unoccupied copy: factor 1
            nodes += 1
            if nodes > budget:
                raise NodeBudgetError(nodes)
            if w in occ:
                dead = True
                fr[6] = True
                break
            if w in unocc or w in forced:
                continue  # pinned/forced unoccupied: factor 1
            cdep = dep + 1
            if cdep == max_depth:
                if has_ext_weitz(w):
                    truncated = True
                    vals = bfrontier
                else:
                    vals = b0
                for j in range(m):
                    acc[j] *= 1.0 / (1.0 + vals[j])
                continue
            if not has_ext_weitz(w):
                for j in range(m):
                    acc[j] *= 1.0 / (1.0 + b0[j])
                continue
            fr[5] = i
            stack.append([w, vtx, cdep, list(b0), adj[w], 0, False])
            path_pos[w] = len(path)
            path.append(w)
            pushed = True
            break
        if pushed:
            continue
        fr[5] = i
        value = [0.0] * m if dead else acc
        stack.pop()
        if len(path) > 1:
            path.pop()
            del path_pos[vtx]
        if stack:
            pacc = stack[-1][3]
            for j in range(m):
                pacc[j] *= 1.0 / (1.0 + value[j])
        else:
            result = value

    pairs = []
    for k in range(len(lams)):
        a, b = result[2 * k], result[2 * k + 1]
        pairs.append((a, b) if a <= b else (b, a))
    return pairs, nodes, truncated


def _sandwich_md(g, root, gammas, max_depth, budget):
    adj = g.adjacency
    m = 2 * len(gammas)
    nodes = 1
    truncated = False

    def has_ext_plain(w, ppos):
        return any(x not in ppos for x in adj[w])

    path_pos = {root: 0}
    if not any(x not in path_pos for x in adj[root]):
        return [(1.0, 1.0)] * len(gammas), nodes, False
    if max_depth == 0:
        return [(0.0, 1.0)] * len(gammas), nodes, True

    # frame: [vertex, depth, sums list, neighbor tuple, next index]
    stack = [[root, 0, [0.0] * m, adj[root], 0]]
    path = [root]
    result = None

    while stack:
        fr = stack[-1]
        vtx, dep, acc, nbrs, i = fr
        pushed = False
        while i < len(nbrs):
            w = nbrs[i]
            i += 1
            if w in path_pos:
                continue
            nodes += 1
            if nodes > budget:
                raise NodeBudgetError(nodes)
            cdep = dep + 1
            ext = has_ext_plain(w, path_pos)
            if cdep == max_depth:
                if ext:
                    truncated = True
                    for k in range(len(gammas)):
                        acc[2 * k + 1] += 1.0  # all_max pin; all_zero adds 0
                else:
                    for j in range(m):
                        acc[j] += 1.0
                continue
            if not ext:
                for j in range(m):
                    acc[j] += 1.0
                continue
            fr[4] = i
            stack.append([w, cdep, [0.0] * m, adj[w], 0])
            path_pos[w] = len(path)
            path.append(w)
            pushed = True
            break
        if pushed:
            continue
        fr[4] = i
        value = [0.0] * m
        for k, gam in enumerate(gammas):
            value[2 * k] = 1.0 / (1.0 + gam * acc[2 * k])
            value[2 * k + 1] = 1.0 / (1.0 + gam * acc[2 * k + 1])
        stack.pop()
        if len(path) > 1:
            path.pop()
            del path_pos[vtx]
        if stack:
            pacc = stack[-1][2]
            for j in range(m):
                pacc[j] += value[j]
        else:
            result = value

    pairs = []
    for k in range(len(gammas)):
        a, b = result[2 * k], result[2 * k + 1]
        pairs.append((a, b) if a <= b else (b, a))
    return pairs, nodes, truncated


# ---------------------------------------------------------------------------
# Evaluation of materialized trees
# ---------------------------------------------------------------------------


def _init_value(init: str, bmax: float) -> float:
    if init == ALL_ZERO:
        return 0.0
    if init == ALL_MAX:
        return bmax
    raise ValueError(f"unknown initial condition {init!r}")


def eval_hc(tree: SawTree, lam: float, init: str = ALL_MAX) -> float:
    """Occupation ratio at the root of a weitz-mode tree.

    Frontier nodes take the initial-condition value (0 or lambda); other
    leaves take lambda; pinned-unoccupied nodes evaluate to 0 and a
    pinned-occupied child zeroes its parent.
    """
    if tree.mode != WEITZ:
        raise ValueError("eval_hc needs a weitz-mode tree")
    if not lam > 0:
        raise ValueError("lambda must be positive")
    finit = _init_value(init, lam)

    def val(node):
        if node.fix == UNOCCUPIED:
            return 0.0
        if node.is_frontier:
            return finit
        if not node.children:
            return lam
        prod = lam
        for c in node.children:
            if c.fix == OCCUPIED:
                return 0.0
            prod *= 1.0 / (1.0 + val(c))
        return prod

    return val(tree.root)


def eval_md(tree: SawTree, gamma: float, init: str = ALL_MAX) -> float:
    """Monomer probability at the root of a plain-mode tree."""
    if tree.mode != PLAIN:
        raise ValueError("eval_md needs a plain-mode tree")
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    finit = _init_value(init, 1.0)

    def val(node):
        if node.is_frontier:
            return finit
        if not node.children:
            return 1.0
        return 1.0 / (1.0 + gamma * sum(val(c) for c in node.children))

    return val(tree.root)


# ---------------------------------------------------------------------------
# Certified marginals
# ---------------------------------------------------------------------------


def dary_md_gaps(d: int, gamma: float, max_depth: int) -> list:
    """Sandwich gaps |F(0_l) - F(1_l)| at the root of the full d-ary tree.

    On the d-ary tree the monomer recurrence collapses by symmetry to the
    scalar iteration x -> 1/(1 + gamma*d*x), so the depth-l gap is
    computable without materializing the d**l nodes.  Entry l of the
    returned list is the gap for truncation depth l (entry 0 is 1, the
    width of the trivial pin).  Cross-checked against the full evaluator
    on small trees in the test suite.
    """
    if d < 1 or max_depth < 0 or not gamma > 0:
        raise ValueError("need d >= 1, max_depth >= 0, gamma > 0")
    a, b = 0.0, 1.0
    gaps = [1.0]
    for _ in range(max_depth):
        a, b = 1.0 / (1.0 + gamma * d * a), 1.0 / (1.0 + gamma * d * b)
        gaps.append(abs(a - b))
    return gaps


def dary_md_depth_for_tol(d: int, gamma: float, tol: float, depth_cap: int = 10**5) -> int:
    """Smallest truncation depth with d-ary-tree sandwich gap <= 2*tol."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    a, b = 0.0, 1.0
    depth = 0
    while abs(a - b) > 2.0 * tol:
        a, b = 1.0 / (1.0 + gamma * d * a), 1.0 / (1.0 + gamma * d * b)
        depth += 1
        if depth > depth_cap:
            raise ArithmeticError("gap did not reach tolerance")
    return depth


def marginal_interval(
    g: Graph,
    v: int,
    params: ModelParams,
    boundary: BoundaryCondition | None = None,
    depth: int = 0,
    budget: int = 10**7,
) -> tuple[float, float]:
    """Certified bracket for the marginal at v from a depth-`depth` tree.

    For hard-core the bracketed quantity is the occupation ratio R_v; for
    monomer-dimer it is the monomer probability p_v.  The bracket is the
    (min, max) of the two extreme-initial-condition evaluations, sound for
    either truncation parity.
    """
    pairs, _, _ = sandwich_values(
        g, v, params.model, [params.activity], depth, boundary, budget
    )
    return pairs[0]


def marginal_adaptive(
    g: Graph,
    v: int,
    params: ModelParams,
    boundary: BoundaryCondition | None = None,
    tol: float = 1e-6,
    budget: int = 10**7,
) -> ApproxResult:
    """Certified marginal to additive tolerance `tol` by depth doubling.

    Doubles the truncation depth until the sandwich width is at most
    2*tol or the tree is fully expanded, then returns the interval
    midpoint.  The certificate is the sandwich property alone.  Raises
    AdaptiveBudgetError (carrying the best interval found) if the node
    budget runs out first.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    total_nodes = 0
    bmax = params.activity if params.model == HARDCORE else 1.0
    best = None
    depth = 0
    while True:
        remaining = budget - total_nodes
        if remaining <= 0:
            if best is None:
                best = (0.0, bmax, 0)
            raise AdaptiveBudgetError(best[0], best[1], best[2], total_nodes)
        try:
            pairs, nodes, truncated = sandwich_values(
                g, v, params.model, [params.activity], depth, boundary,
                remaining,
            )
        except NodeBudgetError as exc:
            total_nodes += exc.nodes_expanded
            if best is None:
                best = (0.0, bmax, 0)
            raise AdaptiveBudgetError(best[0], best[1], best[2], total_nodes)
        total_nodes += nodes
        lo, hi = pairs[0]
        if best is None or hi - lo < best[1] - best[0]:
            best = (lo, hi, depth)
        if hi - lo <= 2.0 * tol or not truncated:
            return ApproxResult(
                value=0.5 * (lo + hi),
                lo=lo,
                hi=hi,
                eps_requested=tol,
                depth_max_used=depth,
                nodes_expanded=total_nodes,
            )
        depth = 1 if depth == 0 else 2 * depth
