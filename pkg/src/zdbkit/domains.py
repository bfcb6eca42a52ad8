"""Finite abelian groups serving as the domain of a balanced function.

Two shapes are used: the additive group of a ring, and the direct
product of a ring's additive group with a multiplicative subgroup.  In
the product shape an element is a pair (ring element, subgroup element)
and its flat index is ring_index * e + group_position, where positions
number the subgroup's elements in ascending index order.  That flat
order is also the codeword coordinate order used throughout.

``shift_rows`` is the bulk form of the group law: given a block of
shift indices it returns the full translation rows, one permutation of
the domain per shift.  The exhaustive verification kernels are built on
it and on nothing else.
"""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from .cosets import Subgroup, subgroup_from_elements
from .rings import Ring, ring_from_json

__all__ = ["AbelianDomain", "RingAdditiveDomain", "RingTimesGroupDomain", "domain_from_json"]


class AbelianDomain:
    """Interface shared by both domain shapes."""

    order: int
    identity: int

    def op(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inverse(self, a: int) -> int:
        raise NotImplementedError

    def elements(self) -> range:
        return range(self.order)

    def shift_rows(self, deltas: Sequence[int]) -> np.ndarray:
        """Array of shape (len(deltas), order): row i is y -> op(delta_i, y)."""
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


class RingAdditiveDomain(AbelianDomain):
    """The additive group (R, +) of a ring."""

    kind = "ring_additive"

    def __init__(self, ring: Ring):
        self.ring = ring
        self.order = ring.order
        self.identity = 0

    def op(self, a: int, b: int) -> int:
        return self.ring.add(a, b)

    def inverse(self, a: int) -> int:
        return self.ring.neg(a)

    def shift_rows(self, deltas) -> np.ndarray:
        d = np.asarray(deltas, dtype=np.int64)
        ys = np.arange(self.order, dtype=np.int64)
        return self.ring.add_vec(d[:, None], ys[None, :])

    def op_vec(self, a, b) -> np.ndarray:
        return self.ring.add_vec(a, b)

    def inverse_vec(self, a) -> np.ndarray:
        return self.ring.neg_vec(a)

    def to_json(self) -> dict:
        return {"kind": self.kind, "ring": self.ring.to_json()}

    def describe(self) -> str:
        return f"additive group of {self.ring!r}"

    def __eq__(self, other) -> bool:
        return isinstance(other, RingAdditiveDomain) and self.ring == other.ring

    def __hash__(self) -> int:
        return hash((self.kind, self.ring))


class RingTimesGroupDomain(AbelianDomain):
    """(R, +) x (G, *) for a multiplicative subgroup G of the units of R.

    Flat element index: ring_index * e + group_position.  The pair form
    (ring index, subgroup element index) is accepted by ``encode`` and
    returned by ``decode``.
    """

    kind = "ring_times_group"

    def __init__(self, ring: Ring, group: Subgroup):
        if group.ring != ring:
            raise ValueError("subgroup belongs to a different ring")
        self.ring = ring
        self.group = group
        self.e = group.order
        self.order = ring.order * self.e
        self.identity = group.identity_pos
        self._mul_pos = np.asarray(group.mul_pos, dtype=np.int64)

    def encode(self, pair: tuple[int, int]) -> int:
        r, g = pair
        return self.ring._check(r) * self.e + self.group.position(g)

    def decode(self, a: int) -> tuple[int, int]:
        r, pos = divmod(a, self.e)
        return r, self.group.elements[pos]

    def op(self, a: int, b: int) -> int:
        ra, pa = divmod(a, self.e)
        rb, pb = divmod(b, self.e)
        return self.ring.add(ra, rb) * self.e + self.group.mul_pos[pa][pb]

    def inverse(self, a: int) -> int:
        r, pos = divmod(a, self.e)
        return self.ring.neg(r) * self.e + self.group.inv_pos[pos]

    def shift_rows(self, deltas) -> np.ndarray:
        d = np.asarray(deltas, dtype=np.int64)
        ys = np.arange(self.order, dtype=np.int64)
        r_all, p_all = ys // self.e, ys % self.e
        dr, dp = d // self.e, d % self.e
        return (
            self.ring.add_vec(dr[:, None], r_all[None, :]) * self.e
            + self._mul_pos[dp[:, None], p_all[None, :]]
        )

    def op_vec(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return (
            self.ring.add_vec(a // self.e, b // self.e) * self.e
            + self._mul_pos[a % self.e, b % self.e]
        )

    def inverse_vec(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        inv_pos = np.asarray(self.group.inv_pos, dtype=np.int64)
        return self.ring.neg_vec(a // self.e) * self.e + inv_pos[a % self.e]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ring": self.ring.to_json(),
            "group": self.group.to_json(),
        }

    def describe(self) -> str:
        return (
            f"additive group of {self.ring!r} times a multiplicative subgroup "
            f"of order {self.e}"
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingTimesGroupDomain)
            and self.ring == other.ring
            and self.group == other.group
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.ring, self.group))


def domain_from_json(data: dict) -> AbelianDomain:
    kind = data.get("kind")
    ring = ring_from_json(data["ring"])
    if kind == "ring_additive":
        return RingAdditiveDomain(ring)
    if kind == "ring_times_group":
        group = subgroup_from_elements(ring, data["group"]["elements"])
        gen = data["group"].get("generator")
        if gen is not None:
            group.generator = gen
        return RingTimesGroupDomain(ring, group)
    raise ValueError(f"unknown domain kind {kind!r}")
