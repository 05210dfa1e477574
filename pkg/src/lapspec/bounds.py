"""Eigenvalue bounds for the normalized Laplacian.

Every bound is packaged as a :class:`BoundReport` carrying the claimed
interval, the side conditions that make it valid, and the constants it was
computed from.  Six kinds of claims (targets) appear:

``lambda1`` / ``lambda_max``
    the bounds bracket that single eigenvalue;
``sandwich``
    ``lower`` bounds the smallest nonzero eigenvalue from below and
    ``upper`` bounds the largest from above (so all nonzero eigenvalues
    lie in ``[lower, upper]``);
``contains_some``
    the closed interval ``[lower, upper]`` contains at least one eigenvalue;
``gap_around_one``
    the open interval ``(lower, upper)`` contains no eigenvalue;
``branch_or``
    a disjunction: the smallest nonzero eigenvalue is ``<= upper`` *or* the
    largest is ``>= lower`` (both thresholds recorded, only one must hold).

Bounds come in two flavors: constant-level functions take precomputed
isoperimetric constants; graph-level wrappers (suffix ``_of`` or taking a
graph) compute those constants first.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graphs import GraphError, GraphErrorKind, WeightedGraph, require_connected
from .neighborhood import (
    map_eigenvalues,
    neighborhood_cheeger,
    neighborhood_dual_cheeger,
    neighborhood_graph,
)
from .partitions import (
    OddWalkFamily,
    TriPartition,
    xi_product_bound,
)
from .spectral import Spectrum, spectrum

TARGET_LAMBDA1 = "lambda1"
TARGET_LAMBDA_MAX = "lambda_max"
TARGET_SANDWICH = "sandwich"
TARGET_CONTAINS_SOME = "contains_some"
TARGET_GAP_AROUND_ONE = "gap_around_one"
TARGET_BRANCH_OR = "branch_or"

#: Eigenfunction entries at or below this size count as exact zeros when
#: deciding how localized a top eigenfunction is.
SUPPORT_TOL = 1e-10


@dataclass(frozen=True)
class BoundReport:
    name: str
    target: str
    lower: float | None = None
    upper: float | None = None
    conditions: tuple[tuple[str, bool], ...] = ()
    inputs: dict[str, float] = field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return all(ok for _, ok in self.conditions)

    def holds_for(self, s: Spectrum, tol: float = 1e-9) -> bool:
        """Check the claim against an exactly computed spectrum.

        Inapplicable reports hold vacuously.
        """
        if not self.applicable:
            return True
        lam1, lam_max = s.lambda_1, s.lambda_max
        vals = s.eigenvalues
        if self.target == TARGET_LAMBDA1:
            return (self.lower is None or self.lower <= lam1 + tol) and (
                self.upper is None or lam1 <= self.upper + tol
            )
        if self.target == TARGET_LAMBDA_MAX:
            return (self.lower is None or self.lower <= lam_max + tol) and (
                self.upper is None or lam_max <= self.upper + tol
            )
        if self.target == TARGET_SANDWICH:
            return self.lower <= lam1 + tol and lam_max <= self.upper + tol
        if self.target == TARGET_CONTAINS_SOME:
            return bool(
                ((vals >= self.lower - tol) & (vals <= self.upper + tol)).any()
            )
        if self.target == TARGET_GAP_AROUND_ONE:
            return bool(
                ((vals <= self.lower + tol) | (vals >= self.upper - tol)).all()
            )
        if self.target == TARGET_BRANCH_OR:
            return lam1 <= self.upper + tol or lam_max >= self.lower - tol
        raise ValueError(f"unknown target {self.target!r}")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "target": self.target,
            "lower": self.lower,
            "upper": self.upper,
            "conditions": [[label, ok] for label, ok in self.conditions],
            "applicable": self.applicable,
            "inputs": dict(self.inputs),
        }


def _real_odd_root(x: float, l: int) -> float:
    """Real l-th root for odd l, defined for negative arguments as well."""
    return math.copysign(abs(x) ** (1.0 / l), x)


# ---------------------------------------------------------------------------
# direct (l = 1) bounds


def cheeger_bounds(h: float) -> BoundReport:
    """``1 - sqrt(1-h^2) <= lambda_1 <= 2h``."""
    if not 0.0 <= h <= 1.0:
        raise ValueError(f"Cheeger constant must lie in [0, 1], got {h}")
    return BoundReport(
        name="cheeger",
        target=TARGET_LAMBDA1,
        lower=1.0 - math.sqrt(1.0 - h * h),
        upper=2.0 * h,
        inputs={"h": h},
    )


def dual_cheeger_bounds(hbar: float) -> BoundReport:
    """``2 hbar <= lambda_max <= 1 + sqrt(1-(1-hbar)^2)``."""
    if not 0.0 <= hbar <= 1.0:
        raise ValueError(f"dual Cheeger constant must lie in [0, 1], got {hbar}")
    return BoundReport(
        name="dual_cheeger",
        target=TARGET_LAMBDA_MAX,
        lower=2.0 * hbar,
        upper=1.0 + math.sqrt(1.0 - (1.0 - hbar) ** 2),
        inputs={"hbar": hbar},
    )


def cheeger_bounds_of(g: WeightedGraph, *, cap: int | None = None) -> BoundReport:
    from .partitions import cheeger_exact

    return cheeger_bounds(cheeger_exact(g, cap=cap).value)


def dual_cheeger_bounds_of(g: WeightedGraph, *, cap: int | None = None) -> BoundReport:
    from .partitions import dual_cheeger_exact

    return dual_cheeger_bounds(dual_cheeger_exact(g, cap=cap).value)


def combined_lower(g: WeightedGraph, witness: TriPartition, h: float) -> BoundReport:
    """``lambda_max >= 2 hbar + balance(V1,V2) * h``.

    Valid when ``witness`` achieves the dual Cheeger constant and the rest
    of the graph is at least as heavy as the near-bipartite part:
    ``vol(V1 u V2) <= vol(V3)``.
    """
    hbar_val = witness.value(g)
    vol1 = g.subset_volume(witness.v1)
    vol2 = g.subset_volume(witness.v2)
    vol3 = g.subset_volume(witness.v3)
    balance = min(vol1, vol2) / max(vol1, vol2)
    return BoundReport(
        name="combined_lower",
        target=TARGET_LAMBDA_MAX,
        lower=2.0 * hbar_val + balance * h,
        conditions=(("vol(V1 u V2) <= vol(V3)", vol1 + vol2 <= vol3),),
        inputs={"hbar": hbar_val, "h": h, "balance": balance, "vol_v3": vol3},
    )


def localized_upper(g: WeightedGraph, s: Spectrum, h: float) -> BoundReport:
    """``lambda_max <= 1 + sqrt(1-h^2)`` when the top eigenfunction is localized.

    The condition is that the support of the top eigenfunction carries at
    most half the volume; entries of size <= ``SUPPORT_TOL`` count as zero.
    """
    u = s.eigenfunctions[-1]
    support = np.abs(u) > SUPPORT_TOL
    vol_support = float(g.degrees[support].sum())
    cond = vol_support <= g.volume - vol_support
    return BoundReport(
        name="localized_upper",
        target=TARGET_LAMBDA_MAX,
        upper=1.0 + math.sqrt(1.0 - h * h),
        conditions=(("vol(support) <= vol(zero set)", cond),),
        inputs={"h": h, "vol_support": vol_support, "vol_total": g.volume},
    )


def hop_diameter(g: WeightedGraph) -> int:
    """Largest number of edges on a shortest path between any two vertices."""
    require_connected(g)
    nbrs = [np.nonzero(g.weights[i] > 0)[0] for i in range(g.n)]
    diam = 0
    for start in range(g.n):
        dist = np.full(g.n, -1)
        dist[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in nbrs[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(int(u))
        diam = max(diam, int(dist.max()))
    return diam


def diameter_variation_upper(g: WeightedGraph, s: Spectrum) -> BoundReport:
    """``lambda_max <= 2 - w_min (1 - min|u|)^2 / (D vol)``.

    ``u`` is the top eigenfunction rescaled to ``max|u| = 1`` and ``D`` the
    hop diameter; the bound is sharp exactly when ``|u|`` is constant
    (bipartite graphs).
    """
    u = np.abs(s.eigenfunctions[-1])
    u = u / u.max()
    w_min = float(g.weights[g.weights > 0].min())
    diam = hop_diameter(g)
    upper = 2.0 - w_min * (1.0 - float(u.min())) ** 2 / (diam * g.volume)
    return BoundReport(
        name="diameter_variation_upper",
        target=TARGET_LAMBDA_MAX,
        upper=upper,
        inputs={
            "w_min": w_min,
            "diameter": float(diam),
            "min_abs_u": float(u.min()),
        },
    )


# ---------------------------------------------------------------------------
# local clustering


@dataclass(frozen=True)
class ClusteringConstants:
    """Triangle-based constants controlling the distance from bipartiteness.

    ``c0`` is the minimum over non-loop edges of the mean triangle fraction
    of the two endpoints; ``w_tri`` aggregates relative triangle weights;
    ``d_bar`` is the largest degree among triangle vertices; together they
    give ``h_big`` with ``lambda_max <= 2 - h_big``.
    """

    c0: float
    w_tri: float
    d_bar: float

    @property
    def h_big(self) -> float:
        if self.c0 == 0.0 or self.d_bar == 0.0:
            return 0.0
        ratio = self.w_tri / (1.0 + self.w_tri)
        return self.c0 * ratio * ratio / (2.0 * self.d_bar)


def clustering_constants(g: WeightedGraph) -> ClusteringConstants:
    w = g.weights
    adj = w > 0
    np.fill_diagonal(adj, False)
    common = adj.astype(int) @ adj.astype(int)
    tri_edge = adj & (common > 0)  # edge lies in at least one triangle
    in_tri = tri_edge.any(axis=1)

    if not in_tri.any():
        return ClusteringConstants(c0=0.0, w_tri=0.0, d_bar=0.0)

    alpha = (w * tri_edge).sum(axis=1) / g.degrees

    c0 = math.inf
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if adj[i, j]:
                c0 = min(c0, 0.5 * (alpha[i] + alpha[j]))

    w_sq = math.inf
    for i in range(g.n):
        if not in_tri[i]:
            continue
        for k in range(g.n):
            if not tri_edge[i, k]:
                continue
            acc = 0.0
            for l in range(g.n):
                if adj[l, i] and adj[l, k]:
                    acc += (g.degrees[i] / g.degrees[l]) * w[l, i] * w[l, k] / w[i, k]
            w_sq = min(w_sq, acc)

    return ClusteringConstants(
        c0=float(c0),
        w_tri=math.sqrt(w_sq),
        d_bar=float(g.degrees[in_tri].max()),
    )


def clustering_upper(g: WeightedGraph) -> BoundReport:
    """``lambda_max <= 2 - h_big`` from the local clustering constants."""
    cc = clustering_constants(g)
    return BoundReport(
        name="clustering_upper",
        target=TARGET_LAMBDA_MAX,
        upper=2.0 - cc.h_big,
        inputs={"c0": cc.c0, "w_tri": cc.w_tri, "d_bar": cc.d_bar, "h_big": cc.h_big},
    )


# ---------------------------------------------------------------------------
# odd-walk congestion bounds


def hbar_upper_from_xi(xi: float) -> float:
    """``hbar <= 1 - 1/xi`` from a family of odd closed walks."""
    if xi <= 0:
        raise ValueError("congestion must be positive")
    return 1.0 - 1.0 / xi


def odd_walk_upper(g: WeightedGraph, fam: OddWalkFamily) -> BoundReport:
    """``lambda_max <= 1 + sqrt(1 - 1/(d w b)^2)`` via walk congestion."""
    pb = xi_product_bound(g, fam)
    prod = pb.product
    return BoundReport(
        name="odd_walk_upper",
        target=TARGET_LAMBDA_MAX,
        upper=1.0 + math.sqrt(1.0 - (1.0 / prod) ** 2),
        inputs={
            "d_max": pb.d_max,
            "w_inv": pb.w_inv,
            "b_load": float(pb.b_load),
            "product": prod,
        },
    )


def poincare_upper(g: WeightedGraph, fam: OddWalkFamily) -> BoundReport:
    """``lambda_max <= 2 - 2/(d w b sigma)`` (discrete Poincare inequality)."""
    pb = xi_product_bound(g, fam)
    denom = pb.product * pb.sigma_max
    return BoundReport(
        name="poincare_upper",
        target=TARGET_LAMBDA_MAX,
        upper=2.0 - 2.0 / denom,
        inputs={"product": pb.product, "sigma_max": float(pb.sigma_max)},
    )


@dataclass(frozen=True)
class WalkBoundComparison:
    """Which of the two walk-based upper bounds is sharper.

    The congestion bound beats the Poincare bound exactly when
    ``d w b < 1/sigma + sigma/4``.
    """

    product: float
    sigma_max: int
    congestion_upper: float
    poincare_upper: float

    @property
    def congestion_is_better(self) -> bool:
        return self.product < 1.0 / self.sigma_max + self.sigma_max / 4.0


def walk_bound_comparison(g: WeightedGraph, fam: OddWalkFamily) -> WalkBoundComparison:
    pb = xi_product_bound(g, fam)
    return WalkBoundComparison(
        product=pb.product,
        sigma_max=pb.sigma_max,
        congestion_upper=odd_walk_upper(g, fam).upper,
        poincare_upper=poincare_upper(g, fam).upper,
    )


# ---------------------------------------------------------------------------
# neighborhood-graph bounds (constant-level)


def neighborhood_lower_generic(l: int, a_l: float) -> BoundReport:
    """Bounds on the base spectrum from any lower bound ``a_l <= lambda_1[l]``.

    Even l: all nonzero eigenvalues lie in
    ``[1-(1-a_l)^{1/l}, 1+(1-a_l)^{1/l}]``.  Odd l: lower bound only.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    if l % 2 == 0:
        ok = a_l <= 1.0
        r = (1.0 - a_l) ** (1.0 / l) if ok else None
        return BoundReport(
            name="neighborhood_lower_generic",
            target=TARGET_SANDWICH,
            lower=None if r is None else 1.0 - r,
            upper=None if r is None else 1.0 + r,
            conditions=(("A[l] <= 1", ok),),
            inputs={"l": float(l), "a_l": a_l},
        )
    r = _real_odd_root(1.0 - a_l, l)
    return BoundReport(
        name="neighborhood_lower_generic",
        target=TARGET_LAMBDA1,
        lower=1.0 - r,
        inputs={"l": float(l), "a_l": a_l},
    )


def neighborhood_sandwich_from(l: int, h_l: float) -> BoundReport:
    """Apply the Cheeger lower bound on the l-th neighborhood graph.

    Even l: sandwich ``1 -+ (1-h[l]^2)^{1/2l}`` around all nonzero
    eigenvalues; odd l: lower bound for the smallest nonzero eigenvalue.
    Reduces to the plain Cheeger lower bound at ``l = 1``.
    """
    if not 0.0 <= h_l <= 1.0:
        raise ValueError(f"Cheeger constant must lie in [0, 1], got {h_l}")
    r = (1.0 - h_l * h_l) ** (1.0 / (2 * l))
    if l % 2 == 0:
        return BoundReport(
            name="neighborhood_sandwich",
            target=TARGET_SANDWICH,
            lower=1.0 - r,
            upper=1.0 + r,
            inputs={"l": float(l), "h_l": h_l},
        )
    return BoundReport(
        name="neighborhood_sandwich",
        target=TARGET_LAMBDA1,
        lower=1.0 - r,
        inputs={"l": float(l), "h_l": h_l},
    )


def neighborhood_upper_or_from(l: int, h_l: float) -> BoundReport:
    """Apply the Cheeger upper bound ``lambda_1[l] <= 2h[l]`` upstairs.

    Odd l: an unconditional upper bound for the smallest nonzero
    eigenvalue.  Even l (needs ``2h[l] <= 1``): a disjunction - either the
    smallest nonzero eigenvalue is below ``1-(1-2h[l])^{1/l}`` or the
    largest is above ``1+(1-2h[l])^{1/l}``.
    """
    if l % 2 == 1:
        r = _real_odd_root(1.0 - 2.0 * h_l, l)
        return BoundReport(
            name="neighborhood_upper_or",
            target=TARGET_LAMBDA1,
            upper=1.0 - r,
            inputs={"l": float(l), "h_l": h_l},
        )
    ok = 2.0 * h_l <= 1.0
    r = (1.0 - 2.0 * h_l) ** (1.0 / l) if ok else None
    return BoundReport(
        name="neighborhood_upper_or",
        target=TARGET_BRANCH_OR,
        upper=None if r is None else 1.0 - r,  # branch: lambda_1 <= upper
        lower=None if r is None else 1.0 + r,  # branch: lambda_max >= lower
        conditions=(("2 h[l] <= 1", ok),),
        inputs={"l": float(l), "h_l": h_l},
    )


def neighborhood_interval_from(l: int, hbar_l: float) -> BoundReport:
    """Locate an eigenvalue using ``2 hbar[l] <= lambda_max[l]``.

    Even l (needs ``2 hbar[l] <= 1``): the closed interval
    ``1 -+ (1-2 hbar[l])^{1/l}`` contains at least one eigenvalue.
    Odd l: ``lambda_max >= 1 - (1-2 hbar[l])^{1/l}`` with the real odd
    root, which turns into a strong bound precisely when
    ``2 hbar[l] > 1`` (for bipartite graphs it reaches 2 exactly).
    """
    if l % 2 == 1:
        r = _real_odd_root(1.0 - 2.0 * hbar_l, l)
        return BoundReport(
            name="neighborhood_interval",
            target=TARGET_LAMBDA_MAX,
            lower=1.0 - r,
            inputs={"l": float(l), "hbar_l": hbar_l},
        )
    ok = 2.0 * hbar_l <= 1.0
    r = (1.0 - 2.0 * hbar_l) ** (1.0 / l) if ok else None
    return BoundReport(
        name="neighborhood_interval",
        target=TARGET_CONTAINS_SOME,
        lower=None if r is None else 1.0 - r,
        upper=None if r is None else 1.0 + r,
        conditions=(("2 hbar[l] <= 1", ok),),
        inputs={"l": float(l), "hbar_l": hbar_l},
    )


def gap_around_one_from(l: int, h_big_l: float) -> BoundReport:
    """Exclude eigenvalues around 1 using the clustering bound upstairs.

    With ``lambda_max[l] <= 2 - h_big[l]``: for even l (needs
    ``h_big[l] >= 1``) no eigenvalue lies in the open interval
    ``1 -+ (h_big[l]-1)^{1/l}``; for odd l it is an upper bound for the
    largest eigenvalue.
    """
    if l % 2 == 1:
        r = _real_odd_root(h_big_l - 1.0, l)
        return BoundReport(
            name="gap_around_one",
            target=TARGET_LAMBDA_MAX,
            upper=1.0 - r,
            inputs={"l": float(l), "h_big_l": h_big_l},
        )
    ok = h_big_l >= 1.0
    r = (h_big_l - 1.0) ** (1.0 / l) if ok else None
    return BoundReport(
        name="gap_around_one",
        target=TARGET_GAP_AROUND_ONE,
        lower=None if r is None else 1.0 - r,
        upper=None if r is None else 1.0 + r,
        conditions=(("h_big[l] >= 1", ok),),
        inputs={"l": float(l), "h_big_l": h_big_l},
    )


def neighborhood_dual_upper_from(l: int, hbar_l: float) -> BoundReport:
    """``lambda_max <= 1 + (1-(1-hbar[l])^2)^{1/2l}`` for odd l.

    Comes from the dual Cheeger upper bound on the neighborhood graph;
    reduces to the direct dual bound at ``l = 1``.
    """
    if l % 2 == 0:
        raise ValueError("the dual upper bound transfers only for odd l")
    if not 0.0 <= hbar_l <= 1.0:
        raise ValueError(f"dual Cheeger constant must lie in [0, 1], got {hbar_l}")
    r = (1.0 - (1.0 - hbar_l) ** 2) ** (1.0 / (2 * l))
    return BoundReport(
        name="neighborhood_dual_upper",
        target=TARGET_LAMBDA_MAX,
        upper=1.0 + r,
        inputs={"l": float(l), "hbar_l": hbar_l},
    )


# ---------------------------------------------------------------------------
# neighborhood-graph bounds (graph-level)


def neighborhood_sandwich(g: WeightedGraph, l: int, *, cap: int | None = None) -> BoundReport:
    return neighborhood_sandwich_from(l, neighborhood_cheeger(g, l, cap=cap).value)


def neighborhood_upper_or(g: WeightedGraph, l: int, *, cap: int | None = None) -> BoundReport:
    return neighborhood_upper_or_from(l, neighborhood_cheeger(g, l, cap=cap).value)


def neighborhood_interval(g: WeightedGraph, l: int, *, cap: int | None = None) -> BoundReport:
    return neighborhood_interval_from(l, neighborhood_dual_cheeger(g, l, cap=cap).value)


def gap_around_one(g: WeightedGraph, l: int, *, cap: int | None = None) -> BoundReport:
    cc = clustering_constants(neighborhood_graph(g, l))
    return gap_around_one_from(l, cc.h_big)


def neighborhood_dual_upper(g: WeightedGraph, l: int, *, cap: int | None = None) -> BoundReport:
    return neighborhood_dual_upper_from(l, neighborhood_dual_cheeger(g, l, cap=cap).value)


# ---------------------------------------------------------------------------
# eigenvalue identities


@dataclass(frozen=True)
class IdentityReport:
    """Residuals of the two exact identities for ``2 - lambda``.

    For every eigenpair with nonzero eigenvalue, ``2 - lambda`` equals

    * the pair-spread quotient: differences ``u(j) - u(k)`` over pairs of
      neighbors of a common vertex, against the edge-difference energy; and
    * the mean-offset quotient: the deviation of the local average of u
      from the value at each neighbor.
    """

    eigenvalues: tuple[float, ...]
    pair_spread_residuals: tuple[float, ...]
    mean_offset_residuals: tuple[float, ...]

    @property
    def max_residual(self) -> float:
        all_res = self.pair_spread_residuals + self.mean_offset_residuals
        return max(all_res) if all_res else 0.0


def _edge_energy(g: WeightedGraph, u: np.ndarray) -> float:
    diff = u[:, None] - u[None, :]
    return float((g.weights * diff**2).sum())


def pair_spread_quotient(g: WeightedGraph, u: np.ndarray) -> float:
    """``sum_i (1/d_i) sum_{j,k} w_ij w_ik (u(j)-u(k))^2`` over the edge energy."""
    u = np.asarray(u, dtype=float)
    num = 0.0
    for i in range(g.n):
        wi = g.weights[i]
        nz = np.nonzero(wi > 0)[0]
        duj = u[nz]
        pair = (duj[:, None] - duj[None, :]) ** 2
        num += float((wi[nz][:, None] * wi[nz][None, :] * pair).sum()) / g.degrees[i]
    return num / _edge_energy(g, u)


def mean_offset_quotient(g: WeightedGraph, u: np.ndarray) -> float:
    """``2 sum_{i,k} w_ik ((1/d_i) sum_j w_ij (u(j)-u(k)))^2`` over the edge energy."""
    u = np.asarray(u, dtype=float)
    local_mean = (g.weights @ u) / g.degrees
    offset = local_mean[:, None] - u[None, :]  # entry (i, k)
    num = 2.0 * float((g.weights * offset**2).sum())
    return num / _edge_energy(g, u)


def lambda_identity_check(
    g: WeightedGraph, s: Spectrum | None = None, *, zero_tol: float = 1e-9
) -> IdentityReport:
    """Evaluate both identities on every eigenpair with ``lambda > zero_tol``."""
    if s is None:
        s = spectrum(g, check_connected=False)
    lams, pair_res, mean_res = [], [], []
    for lam, u in zip(s.eigenvalues, s.eigenfunctions):
        if lam <= zero_tol:
            continue
        lams.append(float(lam))
        pair_res.append(abs(pair_spread_quotient(g, u) - (2.0 - lam)))
        mean_res.append(abs(mean_offset_quotient(g, u) - (2.0 - lam)))
    return IdentityReport(
        eigenvalues=tuple(lams),
        pair_spread_residuals=tuple(pair_res),
        mean_offset_residuals=tuple(mean_res),
    )


# ---------------------------------------------------------------------------
# improvement predicates


@dataclass(frozen=True)
class ImprovementReport:
    """When do the neighborhood bounds beat the direct Cheeger bounds?

    ``lower_improves`` is the exact comparison
    ``h[l] >= sqrt(1-(1-h^2)^l)`` (the transferred lower bound beats the
    direct one); ``upper_improves`` the analogue
    ``h[l] <= (1-(1-2h)^l)/2`` for the upper bound, which for even l
    additionally needs ``h[l] <= 1/2`` and ``lambda_1 <= 2 - lambda_max``.
    ``sharpness_sufficient_lower`` / ``..._upper`` are the computable
    sufficient criteria expressed through the sharpness ratios of the
    Cheeger bounds on the base and neighborhood graphs.
    ``some_improvement`` records the interval-escape observation: when
    ``h[l]`` avoids ``[(1-(1-2h)^l)/2, sqrt(1-(1-h^2)^l)]``, at least one
    of the two direct bounds is improved (for even l the upper-bound arm
    of that conclusion additionally presumes the parity side conditions).
    """

    l: int
    constants: dict[str, float]
    lower_improves: bool
    upper_improves: bool
    sharpness_sufficient_lower: bool
    sharpness_sufficient_upper: bool
    some_improvement: bool


def improvement_predicates(
    g: WeightedGraph, l: int, *, cap: int | None = None
) -> ImprovementReport:
    from .partitions import cheeger_exact

    s = spectrum(g)
    lam1, lam_max = s.lambda_1, s.lambda_max
    h = cheeger_exact(g, cap=cap).value
    h_l = neighborhood_cheeger(g, l, cap=cap).value
    lam1_l = float(map_eigenvalues(s.eigenvalues, l)[1])

    even = l % 2 == 0
    even_side = lam1 <= 2.0 - lam_max

    lower_threshold = math.sqrt(max(0.0, 1.0 - (1.0 - h * h) ** l))
    # The transferred lower bound needs no parity side condition, so this
    # comparison is exact for every l.
    lower_improves = h_l >= lower_threshold

    upper_threshold = (1.0 - (1.0 - 2.0 * h) ** l) / 2.0
    upper_improves = h_l <= upper_threshold
    if even:
        upper_improves = upper_improves and h_l <= 0.5 and even_side

    # Sharpness of the lower Cheeger bound: S = (1 - sqrt(1-h^2)) / lambda_1.
    big_s = (1.0 - math.sqrt(1.0 - h * h)) / lam1
    if lam1_l > 0:
        big_s_l = (1.0 - math.sqrt(1.0 - h_l * h_l)) / lam1_l
        denom = 1.0 - (1.0 - (1.0 / big_s) * (1.0 - math.sqrt(1.0 - h * h))) ** l
        rhs52 = (1.0 - (1.0 - h * h) ** (l / 2.0)) / denom if denom != 0 else math.inf
        suff_lower = big_s_l >= rhs52
    else:
        big_s_l = math.nan
        suff_lower = False
    if even:
        suff_lower = suff_lower and even_side

    # Sharpness of the upper Cheeger bound: s = lambda_1 / (2h).
    small_s = lam1 / (2.0 * h)
    if h_l > 0:
        small_s_l = lam1_l / (2.0 * h_l)
        denom54 = 1.0 - (1.0 - 2.0 * h) ** l
        rhs54 = (1.0 - (1.0 - small_s * 2.0 * h) ** l) / denom54 if denom54 != 0 else math.inf
        suff_upper = small_s_l >= rhs54
    else:
        small_s_l = math.nan
        suff_upper = False
    if even:
        suff_upper = suff_upper and h_l <= 0.5 and even_side

    escaped = not (upper_threshold <= h_l <= lower_threshold)
    return ImprovementReport(
        l=l,
        constants={
            "h": h,
            "h_l": h_l,
            "lambda1": lam1,
            "lambda_max": lam_max,
            "lambda1_l": lam1_l,
            "sharpness_lower": big_s,
            "sharpness_lower_l": big_s_l,
            "sharpness_upper": small_s,
            "sharpness_upper_l": small_s_l,
            "lower_threshold": lower_threshold,
            "upper_threshold": upper_threshold,
        },
        lower_improves=lower_improves,
        upper_improves=upper_improves,
        sharpness_sufficient_lower=suff_lower,
        sharpness_sufficient_upper=suff_upper,
        some_improvement=escaped,
    )


# ---------------------------------------------------------------------------
# curve tables


@dataclass(frozen=True)
class CurveRow:
    """One (family parameter, l) point of the bound-comparison curves.

    ``lower`` is the transferred Cheeger lower bound
    ``1-(1-h[l]^2)^{1/2l}``; ``upper_from_h`` the upper bound
    ``1-(1-2h[l])^{1/l}`` transferred from h[l] (for even l only meaningful
    when its disjunction resolves to the lambda_1 branch -
    ``upper_from_h_applicable`` records that); ``upper_from_hbar`` the upper
    bound transferred from the dual constant hbar[l], odd l only.
    """

    param: float
    l: int
    lower: float | None
    upper_from_h: float | None
    upper_from_h_applicable: bool
    upper_from_hbar: float | None
    lambda1: float | None
    lambda_max: float | None


_FAMILIES = ("looped_pair", "bridged_triangles", "complete")


def _family_graph(family: str, param: float) -> WeightedGraph:
    from . import graphs

    if family == "looped_pair":
        return graphs.looped_pair(param)
    if family == "bridged_triangles":
        return graphs.bridged_triangles(param)
    if family == "complete":
        return graphs.complete_graph(int(param))
    raise ValueError(f"unknown family {family!r}; choose from {_FAMILIES}")


def bound_curves(family: str, params, l_list) -> list[CurveRow]:
    """Table of transferred bounds vs exact eigenvalues over a graph family.

    Failures at single points (e.g. enumeration caps) leave empty cells;
    the rest of the table is still produced.
    """
    if family not in _FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {_FAMILIES}")
    rows = []
    for param in params:
        try:
            g = _family_graph(family, param)
            s = spectrum(g)
            lam1, lam_max = s.lambda_1, s.lambda_max
        except (GraphError, ValueError):
            for l in l_list:
                rows.append(
                    CurveRow(param, l, None, None, False, None, None, None)
                )
            continue
        for l in l_list:
            try:
                h_l = neighborhood_cheeger(g, l).value
                lower = 1.0 - (1.0 - h_l * h_l) ** (1.0 / (2 * l))
                if l % 2 == 1:
                    up_h = 1.0 - _real_odd_root(1.0 - 2.0 * h_l, l)
                    applicable = True
                else:
                    if 2.0 * h_l <= 1.0:
                        up_h = 1.0 - (1.0 - 2.0 * h_l) ** (1.0 / l)
                        # for even l the claim is a disjunction; it bounds
                        # lambda_1 only when that branch actually holds
                        applicable = lam1 <= up_h + 1e-12
                    else:
                        up_h = None
                        applicable = False
                up_hbar = None
                if l % 2 == 1:
                    hbar_l = neighborhood_dual_cheeger(g, l).value
                    up_hbar = 1.0 + (1.0 - (1.0 - hbar_l) ** 2) ** (1.0 / (2 * l))
                rows.append(
                    CurveRow(param, l, lower, up_h, applicable, up_hbar, lam1, lam_max)
                )
            except (GraphError, ValueError):
                rows.append(
                    CurveRow(param, l, None, None, False, None, lam1, lam_max)
                )
    return rows


def curves_to_csv(rows: list[CurveRow]) -> str:
    def cell(x) -> str:
        if x is None:
            return ""
        if isinstance(x, bool):
            return "true" if x else "false"
        return repr(x)

    lines = [
        "param,l,lower,upper_from_h,upper_from_h_applicable,upper_from_hbar,"
        "lambda1,lambdaMax"
    ]
    for r in rows:
        lines.append(
            ",".join(
                [
                    cell(r.param),
                    str(r.l),
                    cell(r.lower),
                    cell(r.upper_from_h),
                    cell(r.upper_from_h_applicable),
                    cell(r.upper_from_hbar),
                    cell(r.lambda1),
                    cell(r.lambda_max),
                ]
            )
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
#

def all_bound_reports(
    g: WeightedGraph,
    l_list=(2, 3),
    *,
    cap_h: int | None = None,
    cap_hbar: int | None = None,
) -> list[BoundReport]:
    """Every bound report computable for ``g`` at the given orders.

    Reports whose enumerations exceed a size cap are skipped; other errors
    propagate.
    """
    from .graphs import is_bipartite
    from .partitions import cheeger_exact, default_odd_walk_family, dual_cheeger_exact

    reports: list[BoundReport] = []
    s = spectrum(g)

    def _try(fn):
        try:
            reports.append(fn())
        except GraphError as err:
            if err.kind is not GraphErrorKind.SIZE_CAP_EXCEEDED:
                raise

    h_res = None
    try:
        h_res = cheeger_exact(g, cap=cap_h)
    except GraphError as err:
        if err.kind is not GraphErrorKind.SIZE_CAP_EXCEEDED:
            raise
    hbar_res = None
    try:
        hbar_res = dual_cheeger_exact(g, cap=cap_hbar)
    except GraphError as err:
        if err.kind is not GraphErrorKind.SIZE_CAP_EXCEEDED:
            raise

    if h_res is not None:
        reports.append(cheeger_bounds(h_res.value))
    if hbar_res is not None:
        reports.append(dual_cheeger_bounds(hbar_res.value))
        if h_res is not None:
            reports.append(combined_lower(g, hbar_res.witness, h_res.value))
    if h_res is not None:
        reports.append(localized_upper(g, s, h_res.value))
    reports.append(diameter_variation_upper(g, s))
    reports.append(clustering_upper(g))
    if not is_bipartite(g):
        fam = default_odd_walk_family(g)
        reports.append(odd_walk_upper(g, fam))
        reports.append(poincare_upper(g, fam))
    for l in l_list:
        _try(lambda l=l: neighborhood_sandwich(g, l, cap=cap_h))
        _try(lambda l=l: neighborhood_upper_or(g, l, cap=cap_h))
        _try(lambda l=l: neighborhood_interval(g, l, cap=cap_hbar))
        _try(lambda l=l: gap_around_one(g, l))
        if l % 2 == 1:
            _try(lambda l=l: neighborhood_dual_upper(g, l, cap=cap_hbar))
    return reports
