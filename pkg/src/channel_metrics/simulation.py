"""Channel-simulation programs and their verification.

Two program shapes are supported.  A mixture program draws a letter from a
program distribution and feeds it, together with the original input, to a
fixed processing channel.  A sandwich program routes the input through a fixed
pre-processor, a resource channel tensored with an identity, and a fixed
post-processor.  Verification checks that a program reproduces a target
channel and its tangent entrywise.

For binary channels the module also builds the two-point mixture suggested by
the straight line through the channel in the tangent direction, and tests
whether its endpoints can be told apart with certainty from one input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .channels import (
    Channel,
    Distribution,
    LocalData,
    TangentChannel,
    TangentDistribution,
    channel_from_dict,
    compose,
    extreme_points,
    identity,
    tangent_from_dict,
    tensor,
)
from .metrics import Decomposition

RESIDUAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class MixtureProgram:
    """Program distribution, its tangent, and the processing channel.

    The processor consumes the product alphabet (original input, program
    letter), input x with program letter i sitting in column x * n + i.
    """

    weights: Distribution
    weight_tangent: TangentDistribution
    processor: Channel

    def __post_init__(self):
        n = self.weights.k
        if self.weight_tangent.k != n:
            raise ValueError("program weights and tangent must share one alphabet")
        if self.processor.k % n != 0:
            raise ValueError(
                f"processor input alphabet {self.processor.k} is not a multiple "
                f"of the program alphabet {n}"
            )


@dataclass(frozen=True, eq=False)
class SandwichProgram:
    """Pre-processor, resource channel with its tangent, and post-processor.

    The identity factor size is inferred from the pre-processor output
    alphabet and must match the post-processor input alphabet.
    """

    pre: Channel
    resource: Channel
    resource_tangent: TangentChannel
    post: Channel

    def __post_init__(self):
        if self.resource.matrix.shape != self.resource_tangent.matrix.shape:
            raise ValueError("resource channel and tangent shapes must agree")
        if self.pre.l % self.resource.k != 0:
            raise ValueError(
                f"pre-processor output {self.pre.l} is not a multiple of the "
                f"resource input {self.resource.k}"
            )
        m = self.pre.l // self.resource.k
        if self.post.k != self.resource.l * m:
            raise ValueError(
                f"post-processor input {self.post.k} does not match resource "
                f"output {self.resource.l} times identity size {m}"
            )

    @property
    def identity_size(self) -> int:
        return self.pre.l // self.resource.k


@dataclass(frozen=True)
class ProgramCheck:
    """Outcome of a verification: max-abs residuals against the target pair."""

    passed: bool
    channel_residual: float
    tangent_residual: float
    tol: float


def _max_abs(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)))


def verify_mixture_program(prog: MixtureProgram, target: LocalData, tol: float = RESIDUAL_TOL) -> ProgramCheck:
    """Check that processor(input, program letter) reproduces the target pair."""
    n = prog.weights.k
    k = target.channel.k
    if prog.processor.k != k * n:
        raise ValueError(
            f"processor expects {prog.processor.k} composite letters, target "
            f"input {k} with program alphabet {n} gives {k * n}"
        )
    if prog.processor.l != target.channel.l:
        raise ValueError(
            f"processor outputs {prog.processor.l} letters, target has {target.channel.l}"
        )
    q_col = Channel(prog.weights.probs.reshape(-1, 1))
    d_col = TangentChannel(prog.weight_tangent.deltas.reshape(-1, 1))
    eye = identity(k)
    simulated = compose(prog.processor, tensor(eye, q_col))
    simulated_tangent = compose(prog.processor, tensor(eye, d_col))
    rc = _max_abs(simulated.matrix, target.channel.matrix)
    rt = _max_abs(simulated_tangent.matrix, target.tangent.matrix)
    return ProgramCheck(rc <= tol and rt <= tol, rc, rt, tol)


def verify_sandwich_program(prog: SandwichProgram, target: LocalData, tol: float = RESIDUAL_TOL) -> ProgramCheck:
    """Check that post . (resource x I) . pre reproduces the target pair."""
    if prog.pre.k != target.channel.k:
        raise ValueError(
            f"pre-processor expects {prog.pre.k} letters, target input has {target.channel.k}"
        )
    if prog.post.l != target.channel.l:
        raise ValueError(
            f"post-processor outputs {prog.post.l} letters, target has {target.channel.l}"
        )
    eye = identity(prog.identity_size)
    middle = tensor(prog.resource, eye)
    middle_tangent = tensor(prog.resource_tangent, eye)
    simulated = compose(prog.post, compose(middle, prog.pre))
    simulated_tangent = compose(prog.post, compose(middle_tangent, prog.pre))
    rc = _max_abs(simulated.matrix, target.channel.matrix)
    rt = _max_abs(simulated_tangent.matrix, target.tangent.matrix)
    return ProgramCheck(rc <= tol and rt <= tol, rc, rt, tol)


def mixture_program_from_decomposition(dec: Decomposition) -> MixtureProgram:
    """Mixture program whose processor applies the deterministic channel named
    by the program letter to the original input."""
    pts = extreme_points(dec.k, dec.l)
    n = len(pts)
    processor = np.zeros((dec.l, dec.k * n))
    for x in range(dec.k):
        for i, point in enumerate(pts):
            processor[:, x * n + i] = point.matrix[:, x]
    q = np.maximum(np.asarray(dec.q, dtype=float), 0.0)
    total = float(q.sum())
    if abs(total - 1.0) > RESIDUAL_TOL:
        raise ValueError(f"decomposition weights sum to {total!r}")
    q = q / total
    d = np.asarray(dec.delta, dtype=float)
    d = d - d.mean()
    return MixtureProgram(Distribution(q), TangentDistribution(d), Channel(processor))


class TangentLineMixture(NamedTuple):
    psi_a: Channel
    psi_b: Channel
    a: float
    b: float


def _binary_from_params(t: float, s: float) -> Channel:
    t = min(max(t, 0.0), 1.0)
    s = min(max(s, 0.0), 1.0)
    return Channel(np.array([[1.0 - t, s], [t, 1.0 - s]]))


def tangent_line_mixture(data: LocalData) -> TangentLineMixture:
    """Two-point mixture for a binary pair: the boundary channels hit by the
    line through the channel in the tangent direction, with coefficients a, b
    solving tangent = a (psi_a - psi_b) and channel = b psi_a + (1-b) psi_b.

    psi_a is the crossing in the + tangent direction.  Requires an interior
    channel and a nonzero tangent.
    """
    ch, tn = data.channel, data.tangent
    if ch.matrix.shape != (2, 2):
        raise ValueError("tangent-line mixture applies to binary channels only")
    if float(ch.matrix.min()) <= 0.0:
        raise ValueError("channel must be interior (all entries positive)")
    if float(np.max(np.abs(tn.matrix))) == 0.0:
        raise ValueError("tangent must be nonzero")
    # the square coordinates: t = P(output 2 | input 1), s = P(output 1 | input 2)
    t = float(ch.matrix[1, 0])
    s = float(ch.matrix[0, 1])
    dt = float(tn.matrix[1, 0])
    ds = float(tn.matrix[0, 1])

    def reach(sign: float) -> float:
        u = np.inf
        for z, v in ((t, sign * dt), (s, sign * ds)):
            if v > 0:
                u = min(u, (1.0 - z) / v)
            elif v < 0:
                u = min(u, z / (-v))
        return u

    u_plus = reach(1.0)
    u_minus = reach(-1.0)
    psi_a = _binary_from_params(t + u_plus * dt, s + u_plus * ds)
    psi_b = _binary_from_params(t - u_minus * dt, s - u_minus * ds)
    span = u_plus + u_minus
    return TangentLineMixture(psi_a, psi_b, a=1.0 / span, b=u_minus / span)


def perfectly_discriminable(psi_a: Channel, psi_b: Channel, tol: float = RESIDUAL_TOL):
    """Whether some input letter produces disjoint (deterministic, opposite)
    outputs under the two binary channels.  Returns (flag, witness input)."""
    if psi_a.matrix.shape != (2, 2) or psi_b.matrix.shape != (2, 2):
        raise ValueError("discriminability test applies to binary channels only")
    A, Bm = psi_a.matrix, psi_b.matrix
    for x in range(2):
        if (A[1, x] >= 1.0 - tol and Bm[0, x] >= 1.0 - tol) or (
            A[0, x] >= 1.0 - tol and Bm[1, x] >= 1.0 - tol
        ):
            return True, x
    return False, None


# --- dict / JSON forms ---------------------------------------------------------
#
# {"q": [...], "delta": [...], "lambda": channel-object} for a mixture program;
# {"lambda_a": channel, "psi": channel, "dpsi": tangent, "lambda_b": channel}
# for a sandwich program.


def mixture_program_from_dict(obj: dict) -> MixtureProgram:
    for key in ("q", "delta", "lambda"):
        if key not in obj:
            raise ValueError(f"mixture program is missing field '{key}'")
    return MixtureProgram(
        Distribution(obj["q"]),
        TangentDistribution(obj["delta"]),
        channel_from_dict(obj["lambda"]),
    )


def sandwich_program_from_dict(obj: dict) -> SandwichProgram:
    for key in ("lambda_a", "psi", "dpsi", "lambda_b"):
        if key not in obj:
            raise ValueError(f"sandwich program is missing field '{key}'")
    return SandwichProgram(
        pre=channel_from_dict(obj["lambda_a"]),
        resource=channel_from_dict(obj["psi"]),
        resource_tangent=tangent_from_dict(obj["dpsi"]),
        post=channel_from_dict(obj["lambda_b"]),
    )
