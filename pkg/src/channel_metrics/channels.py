"""Finite-alphabet channel algebra.

A channel is a column-stochastic matrix: column x holds the output
distribution produced by input letter x.  Tangents carry zero column sums so
that first-order perturbations preserve normalization.  All values are
immutable and validated at construction; nothing is silently renormalized.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

SUM_TOL = 1e-12
EXTREME_POINT_CAP = 10**6

# Positions of the four deterministic binary channels in extreme_points(2, 2).
# Enumeration is lexicographic in the input->output map, so the constant map
# onto the first output letter comes first.
BINARY_TO_FIRST = 0
BINARY_IDENTITY = 1
BINARY_FLIP = 2
BINARY_TO_SECOND = 3


def _as_readonly(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must contain only finite values")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability vector over a finite alphabet."""

    probs: np.ndarray

    def __post_init__(self):
        arr = _as_readonly(self.probs, "probs")
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("probs must be a non-empty vector")
        if arr.min() < 0:
            bad = int(np.argmin(arr))
            raise ValueError(f"negative probability {arr[bad]:g} at entry {bad}")
        total = float(arr.sum())
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        object.__setattr__(self, "probs", arr)

    @property
    def k(self) -> int:
        return self.probs.size


@dataclass(frozen=True, eq=False)
class TangentDistribution:
    """Perturbation of a probability vector; entries sum to zero."""

    deltas: np.ndarray

    def __post_init__(self):
        arr = _as_readonly(self.deltas, "deltas")
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("deltas must be a non-empty vector")
        total = float(arr.sum())
        if abs(total) > SUM_TOL:
            raise ValueError(f"tangent entries sum to {total!r}, expected 0")
        object.__setattr__(self, "deltas", arr)

    @property
    def k(self) -> int:
        return self.deltas.size


@dataclass(frozen=True, eq=False)
class Channel:
    """Column-stochastic l x k matrix; entry (y, x) is the chance of output y on input x."""

    matrix: np.ndarray

    def __post_init__(self):
        arr = _as_readonly(self.matrix, "matrix")
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError("channel matrix must be a non-empty 2-d array")
        if arr.min() < 0:
            y, x = np.unravel_index(int(np.argmin(arr)), arr.shape)
            raise ValueError(f"negative entry {arr[y, x]:g} at (output {y}, input {x})")
        sums = arr.sum(axis=0)
        off = np.abs(sums - 1.0)
        if off.max() > SUM_TOL:
            x = int(np.argmax(off))
            raise ValueError(f"column {x} sums to {sums[x]!r}, expected 1")
        object.__setattr__(self, "matrix", arr)

    @property
    def k(self) -> int:
        return self.matrix.shape[1]

    @property
    def l(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class TangentChannel:
    """Perturbation of a channel; every column sums to zero.

    Entries are otherwise unconstrained.  Whether channel + eps * tangent stays
    stochastic for small eps > 0 is a property of the pair and is checked only
    by the operations that need it.
    """

    matrix: np.ndarray

    def __post_init__(self):
        arr = _as_readonly(self.matrix, "matrix")
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError("tangent matrix must be a non-empty 2-d array")
        sums = arr.sum(axis=0)
        off = np.abs(sums)
        if off.max() > SUM_TOL:
            x = int(np.argmax(off))
            raise ValueError(f"tangent column {x} sums to {sums[x]!r}, expected 0")
        object.__setattr__(self, "matrix", arr)

    @property
    def k(self) -> int:
        return self.matrix.shape[1]

    @property
    def l(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class LocalData:
    """A channel together with a tangent of matching shape."""

    channel: Channel
    tangent: TangentChannel

    def __post_init__(self):
        if self.channel.matrix.shape != self.tangent.matrix.shape:
            raise ValueError(
                f"channel is {self.channel.matrix.shape}, tangent is "
                f"{self.tangent.matrix.shape}; shapes must agree"
            )


def identity(n: int) -> Channel:
    if n < 1:
        raise ValueError("identity needs a positive alphabet size")
    return Channel(np.eye(n))


def apply(channel: Channel, p: Distribution) -> Distribution:
    """Push a distribution through a channel."""
    if p.k != channel.k:
        raise ValueError(f"channel expects {channel.k} letters, distribution has {p.k}")
    return Distribution(channel.matrix @ p.probs)


def compose(later, earlier):
    """Chain two maps: inputs pass through `earlier` first, then `later`.

    Either argument may be a TangentChannel, in which case the product has
    zero column sums and a TangentChannel is returned.
    """
    if later.k != earlier.l:
        raise ValueError(
            f"cannot compose: later map expects {later.k} letters, "
            f"earlier map outputs {earlier.l}"
        )
    product = later.matrix @ earlier.matrix
    if isinstance(later, Channel) and isinstance(earlier, Channel):
        return Channel(product)
    return TangentChannel(product)


def tensor(a, b):
    """Kronecker product of two maps acting on independent systems.

    Composite letters are ordered with the first factor most significant:
    input (x_a, x_b) is column x_a * b.k + x_b, and likewise for rows.
    """
    product = np.kron(a.matrix, b.matrix)
    if isinstance(a, Channel) and isinstance(b, Channel):
        return Channel(product)
    return TangentChannel(product)


def extreme_points(k: int, l: int, cap: int = EXTREME_POINT_CAP) -> list[Channel]:
    """All l**k deterministic channels from a k- to an l-letter alphabet.

    Ordered lexicographically by the input->output map (outputs ordered
    within each input slot).  Raises when l**k exceeds `cap`.
    """
    if k < 1 or l < 1:
        raise ValueError("alphabet sizes must be positive")
    count = l**k
    if count > cap:
        raise ValueError(f"l**k = {count} deterministic channels exceed cap {cap}")
    eye = np.eye(l)
    return [Channel(eye[:, list(f)]) for f in itertools.product(range(l), repeat=k)]


def embed_distribution(p, k: int):
    """View a distribution as the channel sending every input letter to it.

    Accepts a TangentDistribution as well, producing the matching constant
    TangentChannel.
    """
    if k < 1:
        raise ValueError("input alphabet size must be positive")
    if isinstance(p, Distribution):
        return Channel(np.tile(p.probs.reshape(-1, 1), (1, k)))
    if isinstance(p, TangentDistribution):
        return TangentChannel(np.tile(p.deltas.reshape(-1, 1), (1, k)))
    raise TypeError(f"expected Distribution or TangentDistribution, got {type(p).__name__}")


# --- dict / JSON forms -------------------------------------------------------
#
# A channel object is {"k": int, "l": int, "channel": [[row 0...], ...]} with
# l rows of k entries; a tangent object uses the key "tangent".  An instance
# combines both under one (k, l) header.


def _matrix_from_dict(obj: dict, key: str, kind: str) -> np.ndarray:
    for field_name in ("k", "l", key):
        if field_name not in obj:
            raise ValueError(f"{kind} object is missing field '{field_name}'")
    k, l = obj["k"], obj["l"]
    if not (isinstance(k, int) and isinstance(l, int)) or k < 1 or l < 1:
        raise ValueError(f"{kind} object fields 'k' and 'l' must be positive integers")
    try:
        arr = np.array(obj[key], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"field '{key}' is not a numeric matrix: {exc}") from exc
    if arr.shape != (l, k):
        raise ValueError(f"field '{key}' has shape {arr.shape}, expected ({l}, {k})")
    return arr


def channel_from_dict(obj: dict) -> Channel:
    return Channel(_matrix_from_dict(obj, "channel", "channel"))


def tangent_from_dict(obj: dict) -> TangentChannel:
    return TangentChannel(_matrix_from_dict(obj, "tangent", "tangent"))


def local_data_from_dict(obj: dict) -> LocalData:
    return LocalData(channel_from_dict(obj), tangent_from_dict(obj))


def local_data_to_dict(data: LocalData) -> dict:
    return {
        "k": data.channel.k,
        "l": data.channel.l,
        "channel": data.channel.matrix.tolist(),
        "tangent": data.tangent.matrix.tolist(),
    }
