"""Lower and upper Fisher-information bounds for channel tangents.

The lower bound ``g_min`` is exact: the largest output Fisher information over
input letters.  The upper bound ``g_max`` is the cheapest Fisher information of
a program distribution over deterministic channels that reproduces the pair
(channel, tangent).  Eliminating the signed weights in closed form leaves a
convex minimization of a weighted quadratic-over-linear objective over the
fiber polytope {q >= 0, B q = vec(channel)}, solved by conditional-gradient
descent with an exact one- or two-dimensional search on small fibers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np
import scipy.optimize

from .channels import (
    Channel,
    LocalData,
    TangentChannel,
    Distribution,
    TangentDistribution,
    extreme_points,
)

WEIGHT_TOL = 1e-9       # feasibility tolerance on decomposition weights
REPRESENT_TOL = 1e-9    # range test deciding whether a tangent is representable
_RANK_CUTOFF = 1e-12
_VERTEX_ENUM_LIMIT = 3000
_GOLDEN_ITERS = 70
_LINESEARCH_ITERS = 24
_POLISH_PERIOD = 40
_STALL_WINDOW = 60
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SolverConfig:
    """Settings for the g_max solver.

    tol: duality-gap target, relative to 1 + objective value.
    max_iter: conditional-gradient iteration budget.
    grid_fallback_dim: fibers of at most this dimension (capped at 2) are
        solved by direct search instead of conditional gradient.
    svd_cutoff: relative singular-value cutoff for the inner least squares.
    """

    tol: float = 1e-9
    max_iter: int = 10_000
    grid_fallback_dim: int = 2
    svd_cutoff: float = 1e-11


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Program weights over the deterministic channels of C_{k,l}.

    ``q`` mixes the extreme points into the target channel; ``delta`` are the
    signed weights reproducing the target tangent and vanish off the support
    of ``q``.
    """

    q: np.ndarray
    delta: np.ndarray
    k: int
    l: int

    def __post_init__(self):
        q = np.array(self.q, dtype=float)
        d = np.array(self.delta, dtype=float)
        if q.shape != d.shape or q.ndim != 1:
            raise ValueError("q and delta must be vectors of equal length")
        if q.min() < -WEIGHT_TOL:
            raise ValueError(f"negative weight {q.min():g}")
        if abs(q.sum() - 1.0) > WEIGHT_TOL:
            raise ValueError(f"weights sum to {q.sum()!r}, expected 1")
        assert np.all(np.abs(d[q == 0.0]) <= 1e-12), "delta must vanish off the support"
        q.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "delta", d)


@dataclass(frozen=True, eq=False)
class GmaxResult:
    """Solver output: the bound, its witness, and convergence diagnostics."""

    value: float
    decomposition: Decomposition | None
    iterations: int
    converged: bool
    gap: float
    grad_norm: float


@dataclass(frozen=True, eq=False)
class MetricReport:
    """Both bounds for one instance, with the g_max solver diagnostics."""

    gmin: float
    gmin_witness: int
    gmax: float
    gmax_witness: Decomposition | None
    iterations: int
    converged: bool
    gap: float
    grad_norm: float


# --- Fisher information and the lower bound ----------------------------------


def _fisher_vec(p: np.ndarray, d: np.ndarray) -> float:
    dead = p <= 0.0
    if np.any(d[dead] != 0.0):
        return math.inf
    live = ~dead
    return float(np.sum(d[live] ** 2 / p[live]))


def fisher_information(p: Distribution, delta: TangentDistribution) -> float:
    """Sum of delta_x**2 / p_x, with 0**2/0 = 0 and +inf off the support of p."""
    if p.k != delta.k:
        raise ValueError(f"distribution has {p.k} letters, tangent has {delta.k}")
    return _fisher_vec(p.probs, delta.deltas)


def g_min(data: LocalData) -> tuple[float, int]:
    """Largest per-input output Fisher information and the first input achieving it.

    Exact up to floating arithmetic; no optimization is involved.
    """
    P = data.channel.matrix
    D = data.tangent.matrix
    best = -math.inf
    witness = 0
    for x in range(data.channel.k):
        v = _fisher_vec(P[:, x], D[:, x])
        if v > best:
            best, witness = v, x
    return best, witness


# --- fiber geometry -----------------------------------------------------------


@lru_cache(maxsize=None)
def _fiber_basis(k: int, l: int):
    """Vectorized extreme points of C_{k,l} and the fixed fiber geometry.

    Returns (B, rank, null, pinv): B is (l*k) x l**k with column i the
    row-major flattening of the i-th deterministic channel; null is an
    orthonormal basis of ker B; pinv maps vec(channel) to the minimum-norm
    preimage.
    """
    pts = extreme_points(k, l)
    B = np.column_stack([p.matrix.reshape(-1) for p in pts])
    u, sv, vt = np.linalg.svd(B, full_matrices=True)
    rank = int(np.sum(sv > sv[0] * _RANK_CUTOFF))
    null = np.ascontiguousarray(vt[rank:].T)
    pinv = vt[:rank].T @ ((1.0 / sv[:rank])[:, None] * u.T[:rank])
    for arr in (B, null, pinv):
        arr.setflags(write=False)
    return B, rank, null, pinv


class _Oracle:
    """Evaluates the program objective at fixed channel and tangent.

    value(q) solves min over signed weights of sum(delta_i**2 / q_i) subject
    to B delta = d via the normal equations M(q) lam = d, M(q) = B diag(q) B^T;
    the minimum is d . lam and the minimizer is diag(q) B^T lam.
    """

    def __init__(self, B: np.ndarray, d: np.ndarray, svd_cutoff: float):
        self.B = B
        self.d = d
        self.cutoff = svd_cutoff
        self.scale = 1.0 + float(np.max(np.abs(d))) if d.size else 1.0

    def value(self, q: np.ndarray) -> tuple[float, np.ndarray]:
        q = np.maximum(q, 0.0)
        M = (self.B * q) @ self.B.T
        lam = np.linalg.pinv(M, rcond=self.cutoff, hermitian=True) @ self.d
        if np.max(np.abs(M @ lam - self.d)) > REPRESENT_TOL * self.scale:
            return math.inf, lam
        return max(float(self.d @ lam), 0.0), lam


def decomposition_value(q, channel: Channel, tangent: TangentChannel, svd_cutoff: float = 1e-11):
    """Cheapest signed weights on the support of q reproducing the tangent.

    Returns (value, delta, multipliers).  The weights q must be nonnegative
    and reproduce the channel entrywise within 1e-9, else ValueError.  When
    the tangent is outside the span of the supported extreme points the value
    is +inf and delta is None.
    """
    if channel.matrix.shape != tangent.matrix.shape:
        raise ValueError("channel and tangent shapes must agree")
    B, _, _, _ = _fiber_basis(channel.k, channel.l)
    q = np.asarray(q, dtype=float)
    if q.shape != (B.shape[1],):
        raise ValueError(f"expected {B.shape[1]} weights, got shape {q.shape}")
    if float(q.min()) < -WEIGHT_TOL:
        raise ValueError(f"negative weight {q.min():g}")
    q = np.maximum(q, 0.0)
    phi = channel.matrix.reshape(-1)
    miss = float(np.max(np.abs(B @ q - phi)))
    if miss > WEIGHT_TOL:
        raise ValueError(f"weights miss the channel by {miss:g} entrywise")
    oracle = _Oracle(B, tangent.matrix.reshape(-1), svd_cutoff)
    value, lam = oracle.value(q)
    if not math.isfinite(value):
        return value, None, lam
    delta = q * (B.T @ lam)
    # zero column sums of the tangent force sum(delta) = 0; assert, don't impose
    assert abs(float(delta.sum())) <= 1e-8 * (1.0 + float(np.abs(delta).sum()))
    return value, delta, lam


def decomposition_gradient(q, channel: Channel, tangent: TangentChannel, svd_cutoff: float = 1e-11) -> np.ndarray:
    """Gradient of decomposition_value in the weights: -(b_i . lam)**2 per atom.

    Defined where the value is finite.
    """
    value, _, lam = decomposition_value(q, channel, tangent, svd_cutoff)
    if not math.isfinite(value):
        raise ValueError("gradient undefined where the objective is infinite")
    B, _, _, _ = _fiber_basis(channel.k, channel.l)
    return -((B.T @ lam) ** 2)


def feasible_weights(channel: Channel) -> np.ndarray:
    """Nonnegative extreme-point weights reproducing the channel, interior to
    the fiber polytope whenever the polytope has interior."""
    B, rank, null, pinv = _fiber_basis(channel.k, channel.l)
    return _interior_start(B, rank, null, pinv, channel.matrix.reshape(-1))


# --- small-fiber search -------------------------------------------------------


def _golden_min(f, lo: float, hi: float, iters: int):
    """Golden-section minimum of a unimodal (convex, possibly +inf) function.

    Returns (argmin, min, evaluations) over the probed points, endpoints
    included, so exact boundary minimizers are reported exactly.
    """
    best_x, best_v = lo, f(lo)
    evals = 1
    if hi > lo:
        v_hi = f(hi)
        evals += 1
        if v_hi < best_v:
            best_x, best_v = hi, v_hi
        a, b = lo, hi
        x1 = b - _INVPHI * (b - a)
        x2 = a + _INVPHI * (b - a)
        f1, f2 = f(x1), f(x2)
        evals += 2
        for x, v in ((x1, f1), (x2, f2)):
            if v < best_v:
                best_x, best_v = x, v
        for _ in range(iters):
            if f1 <= f2:
                b, x2, f2 = x2, x1, f1
                x1 = b - _INVPHI * (b - a)
                f1 = f(x1)
            else:
                a, x1, f1 = x1, x2, f2
                x2 = a + _INVPHI * (b - a)
                f2 = f(x2)
            evals += 1
            if f1 < best_v:
                best_x, best_v = x1, f1
            if f2 < best_v:
                best_x, best_v = x2, f2
    return best_x, best_v, evals


def _segment_bounds(q_part: np.ndarray, direction: np.ndarray) -> tuple[float, float]:
    """Feasible range of u for q_part + u * direction >= 0."""
    lo, hi = -math.inf, math.inf
    for qi, vi in zip(q_part, direction):
        if vi > 1e-13:
            lo = max(lo, -qi / vi)
        elif vi < -1e-13:
            hi = min(hi, qi / (-vi))
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ArithmeticError("unbounded fiber segment; channel data is inconsistent")
    if lo > hi:
        mid = 0.5 * (lo + hi)
        lo = hi = mid
    return lo, hi


def _polygon_vertices(q_part: np.ndarray, null: np.ndarray) -> np.ndarray:
    """Vertices of the polygon {u in R^2 : q_part + null u >= 0}."""
    n = q_part.size
    verts = []
    for i, j in combinations(range(n), 2):
        A = null[[i, j], :]
        det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
        if abs(det) < 1e-12:
            continue
        u = np.linalg.solve(A, -q_part[[i, j]])
        if np.min(q_part + null @ u) >= -1e-9:
            verts.append(u)
    if not verts:
        return np.zeros((0, 2))
    arr = np.array(verts)
    _, keep = np.unique(np.round(arr, 9), axis=0, return_index=True)
    return arr[np.sort(keep)]


def _minimize_small(B, phi, oracle, null, pinv, fine: bool = True):
    """Direct search over a fiber of dimension 0, 1, or 2.

    Returns (value, q, multipliers, evaluations).  The objective is convex on
    the fiber, so golden-section is exact in one dimension; two dimensions use
    a feasibility-masked grid plus a simplex polish.
    """
    q_part = pinv @ phi
    dim = null.shape[1]
    if dim == 0:
        q = np.maximum(q_part, 0.0)
        val, lam = oracle.value(q)
        return val, q, lam, 1

    if dim == 1:
        nu = null[:, 0]
        lo, hi = _segment_bounds(q_part, nu)

        def f(u):
            return oracle.value(np.maximum(q_part + u * nu, 0.0))[0]

        iters = _GOLDEN_ITERS if fine else 36
        u_best, _, evals = _golden_min(f, lo, hi, iters)
        q = np.maximum(q_part + u_best * nu, 0.0)
        val, lam = oracle.value(q)
        return val, q, lam, evals

    # dim == 2
    verts = _polygon_vertices(q_part, null)
    if verts.shape[0] == 0:
        q = np.maximum(q_part, 0.0)
        val, lam = oracle.value(q)
        return val, q, lam, 1

    def point(u):
        return np.maximum(q_part + null @ u, 0.0)

    def f(u):
        q = q_part + null @ u
        if q.min() < -1e-9:
            return math.inf
        return oracle.value(np.maximum(q, 0.0))[0]

    evals = 0
    best_u, best_v = None, math.inf
    for u in verts:
        v = f(u)
        evals += 1
        if v < best_v:
            best_u, best_v = u, v
    res_pts = 33 if fine else 17
    u1 = np.linspace(verts[:, 0].min(), verts[:, 0].max(), res_pts)
    u2 = np.linspace(verts[:, 1].min(), verts[:, 1].max(), res_pts)
    for a in u1:
        for b in u2:
            u = np.array([a, b])
            v = f(u)
            evals += 1
            if v < best_v:
                best_u, best_v = u, v
    if fine and best_u is not None and math.isfinite(best_v):
        def f_capped(u):
            v = f(np.asarray(u))
            return v if math.isfinite(v) else 1e30

        res = scipy.optimize.minimize(
            f_capped, best_u, method="Nelder-Mead",
            options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 400},
        )
        evals += res.nfev
        if res.fun < best_v:
            best_u, best_v = np.asarray(res.x), res.fun
    q = point(best_u) if best_u is not None else np.maximum(q_part, 0.0)
    val, lam = oracle.value(q)
    return val, q, lam, evals


# --- fiber polytope plumbing ---------------------------------------------------


def _enumerate_vertices(B: np.ndarray, phi: np.ndarray, rank: int):
    """All vertices of {q >= 0, Bq = phi}, or None when enumeration is too big."""
    n = B.shape[1]
    if comb(n, rank) > _VERTEX_ENUM_LIMIT:
        return None
    verts = []
    seen = set()
    for cols in combinations(range(n), rank):
        sub = B[:, cols]
        sol, _, rk, _ = np.linalg.lstsq(sub, phi, rcond=None)
        if rk < rank:
            continue
        if float(np.max(np.abs(sub @ sol - phi))) > WEIGHT_TOL:
            continue
        if float(sol.min()) < -WEIGHT_TOL:
            continue
        q = np.zeros(n)
        q[list(cols)] = np.maximum(sol, 0.0)
        key = tuple(np.round(q, 10))
        if key not in seen:
            seen.add(key)
            verts.append(q)
    return np.array(verts)


def _linprog_vertex(B: np.ndarray, phi: np.ndarray, cost: np.ndarray) -> np.ndarray:
    scale = float(np.max(np.abs(cost)))
    if scale > 0:
        cost = cost / scale
    res = scipy.optimize.linprog(
        cost, A_eq=B, b_eq=phi, bounds=(0, None), method="highs"
    )
    if res.status != 0:
        raise ArithmeticError(f"linear subproblem failed: {res.message}")
    return np.maximum(res.x, 0.0)


def _lp_interior(B: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Feasible point maximizing the smallest weight; on boundary channels the
    support is widened by averaging per-atom maximizers."""
    m, n = B.shape
    cost = np.zeros(n + 1)
    cost[-1] = -1.0
    A_eq = np.hstack([B, np.zeros((m, 1))])
    A_ub = np.hstack([-np.eye(n), np.ones((n, 1))])
    res = scipy.optimize.linprog(
        cost, A_ub=A_ub, b_ub=np.zeros(n), A_eq=A_eq, b_eq=phi,
        bounds=[(0, None)] * n + [(0, 1)], method="highs",
    )
    if res.status != 0:
        raise ArithmeticError(f"interior-point search failed: {res.message}")
    q = np.maximum(res.x[:n], 0.0)
    if res.x[-1] > 1e-12:
        return q
    points = [q]
    for i in range(n):
        ci = np.zeros(n)
        ci[i] = -1.0
        r = scipy.optimize.linprog(ci, A_eq=B, b_eq=phi, bounds=(0, None), method="highs")
        if r.status == 0 and r.x[i] > 1e-10:
            points.append(np.maximum(r.x, 0.0))
    return np.mean(points, axis=0)


def _interior_start(B, rank, null, pinv, phi) -> np.ndarray:
    dim = B.shape[1] - rank
    q_part = pinv @ phi
    if dim == 0:
        return np.maximum(q_part, 0.0)
    if dim == 1:
        lo, hi = _segment_bounds(q_part, null[:, 0])
        return np.maximum(q_part + 0.5 * (lo + hi) * null[:, 0], 0.0)
    if dim == 2:
        verts = _polygon_vertices(q_part, null)
        if verts.shape[0]:
            u = verts.mean(axis=0)
            return np.maximum(q_part + null @ u, 0.0)
        return np.maximum(q_part, 0.0)
    verts = _enumerate_vertices(B, phi, rank)
    if verts is not None and verts.shape[0]:
        return verts.mean(axis=0)
    return _lp_interior(B, phi)


# --- the conditional-gradient solver -------------------------------------------


def _face_minimum(S: np.ndarray, B, phi, oracle):
    """Exact minimum over the face supported on S, when its fiber is small."""
    B_S = B[:, S]
    u, sv, vt = np.linalg.svd(B_S, full_matrices=True)
    rank_S = int(np.sum(sv > sv[0] * _RANK_CUTOFF)) if sv.size else 0
    dim_S = S.size - rank_S
    if dim_S > 2:
        return None
    pinv_S = vt[:rank_S].T @ ((1.0 / sv[:rank_S])[:, None] * u.T[:rank_S])
    q_S = pinv_S @ phi
    if float(np.max(np.abs(B_S @ q_S - phi))) > WEIGHT_TOL:
        return None
    sub_oracle = _Oracle(B_S, oracle.d, oracle.cutoff)
    if dim_S == 0:
        if float(q_S.min()) < -WEIGHT_TOL:
            return None
        q_S = np.maximum(q_S, 0.0)
        val, _ = sub_oracle.value(q_S)
    else:
        null_S = np.ascontiguousarray(vt[rank_S:].T)
        try:
            val, q_S, _, _ = _minimize_small(B_S, phi, sub_oracle, null_S, pinv_S, fine=False)
        except ArithmeticError:
            return None
    if not math.isfinite(val):
        return None
    # the face feasible region may be empty: clipping must not have moved q off the fiber
    q_S = np.maximum(q_S, 0.0)
    if float(np.max(np.abs(B_S @ q_S - phi))) > WEIGHT_TOL:
        return None
    q_full = np.zeros(B.shape[1])
    q_full[S] = q_S
    val_full, lam_full = oracle.value(q_full)
    if not math.isfinite(val_full):
        return None
    return val_full, q_full, lam_full


def _polish(q: np.ndarray, lam: np.ndarray, B, phi, oracle, rank: int):
    """Try exact solves on small faces suggested by the current iterate."""
    maxq = float(q.max())
    if maxq <= 0.0:
        return None
    n = q.size
    supports = set()
    for exp in range(1, 9):
        S = np.nonzero(q > maxq * 10.0 ** (-exp))[0]
        if 1 <= S.size <= rank + 2:
            supports.add(tuple(S))
    weight_order = np.argsort(-q)
    grad_order = np.argsort(-np.abs(B.T @ lam))
    for r in range(1, min(rank + 2, n) + 1):
        supports.add(tuple(sorted(weight_order[:r])))
        supports.add(tuple(sorted(grad_order[:r])))
    best = None
    for S in supports:
        out = _face_minimum(np.array(S, dtype=int), B, phi, oracle)
        if out is not None and (best is None or out[0] < best[0]):
            best = out
    return best


def _frank_wolfe(B, phi, oracle, rank, cfg: SolverConfig, q0: np.ndarray):
    """Conditional gradient over the fiber polytope with exact line search,
    periodic face polishing, and honest duality-gap reporting."""
    verts = _enumerate_vertices(B, phi, rank)
    if verts is not None and verts.shape[0]:
        V = verts

        def lp_min(cost):
            return V[int(np.argmin(V @ cost))]
    else:
        def lp_min(cost):
            return _linprog_vertex(B, phi, cost)

    q = np.asarray(q0, dtype=float)
    val, lam = oracle.value(q)
    if not math.isfinite(val):
        # q0 has maximal support, so the tangent is not representable anywhere
        return math.inf, q, lam, 0, True, 0.0, 0.0
    best_val, best_q, best_lam = val, q.copy(), lam
    tiny = lambda v: 1e-14 * (1.0 + abs(v))
    last_gain = 0
    iterations = 0
    for it in range(1, cfg.max_iter + 1):
        iterations = it
        grad = -((B.T @ lam) ** 2)
        s = lp_min(grad)
        gap = float(grad @ (q - s))
        if gap <= cfg.tol * (1.0 + abs(val)):
            break
        direction = s - q

        def f(g):
            return oracle.value(q + g * direction)[0]

        g_best, v_best, _ = _golden_min(f, 0.0, 1.0, _LINESEARCH_ITERS)
        if v_best < val and g_best > 0.0:
            q = q + g_best * direction
            val, lam = oracle.value(q)
        if val < best_val - tiny(best_val):
            best_val, best_q, best_lam = val, q.copy(), lam
            last_gain = it
        if it % _POLISH_PERIOD == 0:
            out = _polish(q, lam, B, phi, oracle, rank)
            if out is not None and out[0] < best_val - tiny(best_val):
                best_val, best_q, best_lam = out
                last_gain = it
            if best_val < val - tiny(val):
                q, val, lam = best_q.copy(), best_val, best_lam
        if it - last_gain > _STALL_WINDOW:
            break
    out = _polish(best_q, best_lam, B, phi, oracle, rank)
    if out is not None and out[0] < best_val:
        best_val, best_q, best_lam = out
    grad = -((B.T @ best_lam) ** 2)
    s = lp_min(grad)
    gap = max(float(grad @ (best_q - s)), 0.0)
    converged = gap <= cfg.tol * (1.0 + abs(best_val))
    grad_norm = float(np.max(np.abs(grad)))
    return best_val, best_q, best_lam, iterations, converged, gap, grad_norm


def g_max(data: LocalData, config: SolverConfig | None = None) -> GmaxResult:
    """Upper metric bound: the smallest program Fisher information over
    extreme-point decompositions of the channel reproducing the tangent.

    The objective is jointly convex (a perspective function), so the result
    is a global minimum up to solver tolerance; the returned value is always
    attained by the returned feasible decomposition, hence a certified upper
    bound.  Returns +inf with no decomposition when the tangent is not
    representable on any feasible support, which can only happen on the
    boundary of the channel polytope.
    """
    cfg = config or SolverConfig()
    ch, tn = data.channel, data.tangent
    B, rank, null, pinv = _fiber_basis(ch.k, ch.l)
    phi = ch.matrix.reshape(-1)
    d = tn.matrix.reshape(-1)
    oracle = _Oracle(B, d, cfg.svd_cutoff)
    dim = B.shape[1] - rank

    if dim <= min(cfg.grid_fallback_dim, 2):
        val, q, lam, evals = _minimize_small(B, phi, oracle, null, pinv, fine=True)
        if not math.isfinite(val):
            return GmaxResult(math.inf, None, evals, True, 0.0, 0.0)
        # exact gap: the linear subproblem over a small fiber is solved on its vertices
        verts = _enumerate_vertices(B, phi, rank)
        grad = -((B.T @ lam) ** 2)
        if verts is not None and verts.shape[0]:
            s = verts[int(np.argmin(verts @ grad))]
        else:
            s = _linprog_vertex(B, phi, grad)
        gap = max(float(grad @ (q - s)), 0.0)
        converged = gap <= cfg.tol * (1.0 + abs(val))
        grad_norm = float(np.max(np.abs(grad)))
        iterations = evals
    else:
        q0 = _interior_start(B, rank, null, pinv, phi)
        val, q, lam, iterations, converged, gap, grad_norm = _frank_wolfe(
            B, phi, oracle, rank, cfg, q0
        )
        if not math.isfinite(val):
            return GmaxResult(math.inf, None, iterations, converged, gap, grad_norm)

    delta = np.maximum(q, 0.0) * (B.T @ lam)
    dec = Decomposition(q=np.maximum(q, 0.0), delta=delta, k=ch.k, l=ch.l)
    return GmaxResult(float(val), dec, iterations, converged, gap, grad_norm)


def compute_report(data: LocalData, config: SolverConfig | None = None) -> MetricReport:
    """Both bounds plus diagnostics for one instance."""
    gmin, witness = g_min(data)
    res = g_max(data, config)
    return MetricReport(
        gmin=gmin,
        gmin_witness=witness,
        gmax=res.value,
        gmax_witness=res.decomposition,
        iterations=res.iterations,
        converged=res.converged,
        gap=res.gap,
        grad_norm=res.grad_norm,
    )


# --- binary closed forms --------------------------------------------------------


def closed_form_binary(channel: Channel) -> tuple[float, float]:
    """(gmax, gmin) for a binary channel [[a, c], [1-a, 1-c]] with a + c <= 1
    under the output-swap tangent [[-1, 1], [1, -1]].

    gmax = 1/a + 1/c and gmin = max(1/a + 1/(1-a), 1/c + 1/(1-c)).
    """
    if channel.matrix.shape != (2, 2):
        raise ValueError("closed form applies to 2x2 channels only")
    a = float(channel.matrix[0, 0])
    c = float(channel.matrix[0, 1])
    if a <= 0.0 or c <= 0.0:
        raise ValueError(f"need a > 0 and c > 0, got a={a:g}, c={c:g}")
    if a + c > 1.0 + 1e-12:
        raise ValueError(f"need a + c <= 1, got {a + c:g}")
    gmax = 1.0 / a + 1.0 / c
    gmin = max(1.0 / a + 1.0 / (1.0 - a), 1.0 / c + 1.0 / (1.0 - c))
    return gmax, gmin


def mixing_bound(channel: Channel, tangent: TangentChannel, psi_a: Channel, psi_b: Channel) -> float:
    """Fisher cost a**2/b + a**2/(1-b) of simulating the pair by mixing two
    fixed channels, where tangent = a (psi_a - psi_b) and
    channel = b psi_a + (1-b) psi_b.

    Raises when the pair does not sit on the line through psi_a and psi_b.
    """
    v = (psi_a.matrix - psi_b.matrix).reshape(-1)
    vv = float(v @ v)
    if vv <= 1e-18:
        raise ValueError("psi_a and psi_b coincide; no mixing line")
    dvec = tangent.matrix.reshape(-1)
    a = float(dvec @ v) / vv
    if float(np.max(np.abs(dvec - a * v))) > REPRESENT_TOL:
        raise ValueError("tangent is not proportional to psi_a - psi_b")
    w = (channel.matrix - psi_b.matrix).reshape(-1)
    b = float(w @ v) / vv
    if float(np.max(np.abs(w - b * v))) > REPRESENT_TOL:
        raise ValueError("channel is not on the segment between psi_a and psi_b")
    if not (1e-12 < b < 1.0 - 1e-12):
        raise ValueError(f"mixing weight b={b:g} must lie strictly between 0 and 1")
    return a * a / (b * (1.0 - b))
