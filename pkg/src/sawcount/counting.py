"""Partition functions: exact oracles for small graphs and certified
approximation via self-reducibility.

The approximation telescopes vertex deletions in ascending-id order.
Writing G_i for the graph with vertices 0..i-1 removed:

  hard-core:     Z(G) = prod_i (1 + R_0(G_i))        (1 - p_v = Z(G-v)/Z(G))
  monomer-dimer: Z(G) = prod_i 1 / p_0(G_i)

Each factor comes from a certified marginal interval, so the product
interval encloses Z regardless of any decay assumption.  Per-vertex
tolerances are calibrated so the final interval ratio is at most e^eps
<= (1+eps)^2, and the reported value (the geometric interval midpoint)
is within a factor 1+-eps of Z.  Accumulation is in log space.
"""

from __future__ import annotations

import math

from .graph import Graph, degree_stats, delete_vertex
from .recurrence import (
    HARDCORE,
    MONOMERDIMER,
    AdaptiveBudgetError,
    ApproxResult,
    ModelParams,
    marginal_adaptive,
)
from .sawtree import UNOCCUPIED, BoundaryCondition, NodeBudgetError

ORACLE_MAX_VERTICES = 28
ORACLE_MAX_EDGES = 40


# ---------------------------------------------------------------------------
# Exact oracles (memoized branching over induced-subgraph bitmasks)
# ---------------------------------------------------------------------------


def _neighbor_masks(g: Graph):
    return tuple(sum(1 << u for u in nbrs) for nbrs in g.adjacency)


def _lowest_bit_index(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _hc_Z(nbr_masks, lam, mask, cache):
    """Weighted independent-set count of the induced subgraph on `mask`."""
    if mask == 0:
        return 1.0
    hit = cache.get(mask)
    if hit is not None:
        return hit
    v = _lowest_bit_index(mask)
    rest = mask & ~(1 << v)
    out = _hc_Z(nbr_masks, lam, rest, cache) + lam * _hc_Z(
        nbr_masks, lam, rest & ~nbr_masks[v], cache
    )
    cache[mask] = out
    return out


def _md_Z(nbr_masks, gamma, mask, cache):
    """Weighted matching count of the induced subgraph on `mask`."""
    if mask == 0:
        return 1.0
    hit = cache.get(mask)
    if hit is not None:
        return hit
    v = _lowest_bit_index(mask)
    rest = mask & ~(1 << v)
    out = _md_Z(nbr_masks, gamma, rest, cache)
    partners = nbr_masks[v] & rest
    while partners:
        u = _lowest_bit_index(partners)
        partners &= partners - 1
        out += gamma * _md_Z(nbr_masks, gamma, rest & ~(1 << u), cache)
    cache[mask] = out
    return out


def _check_oracle_size(g: Graph, params: ModelParams):
    if params.model == HARDCORE and g.n > ORACLE_MAX_VERTICES:
        raise ValueError(f"oracle limited to n <= {ORACLE_MAX_VERTICES}")
    if params.model == MONOMERDIMER and g.num_edges > ORACLE_MAX_EDGES:
        raise ValueError(f"oracle limited to <= {ORACLE_MAX_EDGES} edges")
    if g.n > 63:
        raise ValueError("oracle uses 63-bit vertex masks")


def oracle_Z(g: Graph, params: ModelParams) -> float:
    """Exact partition function by exhaustive weighted enumeration."""
    _check_oracle_size(g, params)
    nbr = _neighbor_masks(g)
    full = (1 << g.n) - 1
    if params.model == HARDCORE:
        return _hc_Z(nbr, params.activity, full, {})
    return _md_Z(nbr, params.activity, full, {})


def oracle_marginal(
    g: Graph,
    v: int,
    params: ModelParams,
    boundary: BoundaryCondition | None = None,
):
    """Exact marginal at v by conditional enumeration.

    Monomer-dimer: returns the monomer probability p_v.
    Hard-core: returns (p_v, R_v); an optional boundary conditions the
    distribution on its pins (occupied pins must be independent and must
    not involve v).
    """
    _check_oracle_size(g, params)
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    nbr = _neighbor_masks(g)
    full = (1 << g.n) - 1
    if params.model == MONOMERDIMER:
        if boundary is not None:
            raise ValueError("boundary conditions apply to hard-core only")
        z = _md_Z(nbr, params.activity, full, {})
        z_without = _md_Z(nbr, params.activity, full & ~(1 << v), {})
        return z_without / z
    lam = params.activity
    mask = full
    if boundary is not None:
        boundary.validate(g)
        if v in boundary.assignments:
            raise ValueError("boundary must not pin the query vertex")
        for w, state in boundary.assignments.items():
            if state == UNOCCUPIED:
                mask &= ~(1 << w)
        for w in boundary.occupied():
            mask &= ~((1 << w) | nbr[w])
        if not mask & (1 << v):
            return 0.0, 0.0  # a neighbor of v is pinned occupied
    cache = {}
    # split Z over the state of v: no cancellation in the ratio
    z_v_out = _hc_Z(nbr, lam, mask & ~(1 << v), cache)
    z_v_in = lam * _hc_Z(nbr, lam, mask & ~((1 << v) | nbr[v]), cache)
    return z_v_in / (z_v_out + z_v_in), z_v_in / z_v_out


# ---------------------------------------------------------------------------
# Certified approximation of log Z
# ---------------------------------------------------------------------------


def _telescope(g, model, activity, eps, budget, factor_logs):
    """Shared driver: walks the deletion sequence, calling factor_logs on
    each shrinking graph to obtain one certified (log_lo, log_hi, result)
    factor; on budget exhaustion, pads with the trivial factor bounds."""
    n = g.n
    log_lo = 0.0
    log_hi = 0.0
    depth_max = 0
    nodes = 0
    converged = True
    h = g
    for i in range(n):
        remaining = n - i
        vertex_budget = max(1, (budget - nodes) // remaining)
        try:
            flo, fhi, res = factor_logs(h, vertex_budget)
        except (AdaptiveBudgetError, NodeBudgetError) as exc:
            converged = False
            nodes += getattr(exc, "nodes_expanded", 0)
            if isinstance(exc, AdaptiveBudgetError):
                flo, fhi = _trivial_factor(model, activity, h, exc.lo, exc.hi)
                log_lo += flo
                log_hi += fhi
                h = delete_vertex(h, 0)
                trailing = remaining - 1
            else:
                trailing = remaining
            for _ in range(trailing):
                flo, fhi = _trivial_factor(model, activity, h, None, None)
                log_lo += flo
                log_hi += fhi
                if h.n:
                    h = delete_vertex(h, 0)
            break
        log_lo += flo
        log_hi += fhi
        depth_max = max(depth_max, res.depth_max_used)
        nodes += res.nodes_expanded
        h = delete_vertex(h, 0)
    log_mid = 0.5 * (log_lo + log_hi)
    # pad the certificate by the accumulated floating-point roundoff of
    # the per-factor logs and the final exp (a few ulps per factor)
    pad = 4e-15 * (n + 4)
    return ApproxResult(
        value=math.exp(log_mid),
        lo=math.exp(log_lo - pad),
        hi=math.exp(log_hi + pad),
        eps_requested=eps,
        depth_max_used=depth_max,
        nodes_expanded=nodes,
        converged=converged,
        log_value=log_mid,
    )


def _trivial_factor(model, activity, h, lo, hi):
    if model == HARDCORE:
        lo_r = 0.0 if lo is None else lo
        hi_r = activity if hi is None else hi
        return math.log1p(lo_r), math.log1p(hi_r)
    maxdeg = degree_stats(h)[0] if h.n else 0
    p_min = 1.0 / (1.0 + activity * maxdeg)
    lo_p = p_min if lo is None else max(lo, p_min)
    hi_p = 1.0 if hi is None else hi
    return -math.log(hi_p), -math.log(lo_p)


def partition_hc(
    g: Graph, lam: float, eps: float, budget: int | None = None
) -> ApproxResult:
    """Certified (1 +- eps) approximation of the hard-core partition function.

    Each deleted vertex contributes the factor 1 + R from its pinned
    walk-tree ratio; an additive tolerance eps/(2n(1+lam)) per ratio makes the full
    product interval ratio at most e^eps.  The budget defaults to 10**7
    nodes per marginal (10**7 * n total).  Inputs with activity above the
    critical value for their degree are attempted anyway (the node budget
    guards runtime) and carry the decay report as an advisory.
    """
    if not (0 < eps <= 1):
        raise ValueError("eps must be in (0, 1]")
    if not lam > 0:
        raise ValueError("lambda must be positive")
    if g.n == 0:
        return ApproxResult(1.0, 1.0, 1.0, eps, 0, 0, log_value=0.0)
    if budget is None:
        budget = 10**7 * g.n
    mu = eps / (2.0 * g.n * (1.0 + lam))
    params = ModelParams(HARDCORE, lam)

    def factor(h, vertex_budget):
        res = marginal_adaptive(h, 0, params, tol=mu, budget=vertex_budget)
        return math.log1p(res.lo), math.log1p(res.hi), res

    out = _telescope(g, HARDCORE, lam, eps, budget, factor)
    maxdeg = degree_stats(g)[0]
    if maxdeg >= 3:
        from .decay import decay_factor_hc

        report = decay_factor_hc(lam, float(maxdeg - 1))
        if report.supercritical:
            out.advisory = report
    return out


def partition_md(
    g: Graph, gamma: float, eps: float, budget: int | None = None
) -> ApproxResult:
    """Certified (1 +- eps) approximation of the matching polynomial.

    Monomer probabilities on the shrinking graphs are bracketed to an
    additive tolerance eps * p_min / (4n), where p_min = 1/(1 + gamma *
    maxdeg) lower-bounds every monomer probability; the per-factor ratio
    is then at most 1 + eps/n and the product interval ratio at most
    e^eps.  The budget defaults to 10**7 nodes per marginal.
    """
    if not (0 < eps <= 1):
        raise ValueError("eps must be in (0, 1]")
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    if g.n == 0:
        return ApproxResult(1.0, 1.0, 1.0, eps, 0, 0, log_value=0.0)
    if budget is None:
        budget = 10**7 * g.n
    n = g.n
    params = ModelParams(MONOMERDIMER, gamma)

    def factor(h, vertex_budget):
        maxdeg = degree_stats(h)[0]
        p_min = 1.0 / (1.0 + gamma * maxdeg)
        tol = eps * p_min / (4.0 * n)
        res = marginal_adaptive(h, 0, params, tol=tol, budget=vertex_budget)
        return -math.log(res.hi), -math.log(max(res.lo, 1e-300)), res

    return _telescope(g, MONOMERDIMER, gamma, eps, budget, factor)
