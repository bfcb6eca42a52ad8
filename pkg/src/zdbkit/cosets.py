"""Multiplicative subgroups and the coset partitions they induce.

A subgroup G of the units of a ring R satisfies the unit-difference
condition when g - 1 is a unit for every g in G other than 1.  Under
that condition the left cosets aG partition the nonzero elements of R
into classes of size |G|, and together with {0} they partition R.  Each
nonzero element r then factors uniquely as r = a * g with a the
smallest-index member of its coset; we call a the row indicator and g
the column indicator of r.  Everything downstream (the balanced
functions and the codes derived from them) is built on this partition.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import (
    ConditionNotSatisfiedError,
    DegenerateDoublingError,
    NotAUnitError,
)
from .rings import Ring

__all__ = [
    "Subgroup",
    "CosetPartition",
    "cyclic_subgroup",
    "subgroup_from_elements",
    "doubled_subgroup",
    "check_unit_difference",
    "check_plus_one",
    "coset_partition",
]


class Subgroup:
    """A finite subgroup of the unit group of a ring.

    Elements are stored as a sorted, duplicate-free tuple of ring
    indices.  Position tables (element position -> position) for
    products and inverses are precomputed; group orders at desk scale
    are tiny, so eager tables cost nothing and make the hot paths
    table lookups.
    """

    def __init__(self, ring: Ring, elements: Sequence[int], generator: int | None = None):
        self.ring = ring
        elems = tuple(sorted(set(int(x) for x in elements)))
        if not elems:
            raise ValueError("subgroup cannot be empty")
        one = ring.one()
        if one not in elems:
            raise ValueError("subgroup must contain the multiplicative identity")
        pos = {g: i for i, g in enumerate(elems)}
        mul_pos = []
        for g in elems:
            if ring.try_invert(g) is None:
                raise NotAUnitError(f"subgroup element {g} is not a unit")
            row = []
            for h in elems:
                gh = ring.mul(g, h)
                if gh not in pos:
                    raise ValueError(f"not closed under multiplication: {g}*{h} = {gh}")
                row.append(pos[gh])
            mul_pos.append(tuple(row))
        self.elements = elems
        self.generator = generator
        self.order = len(elems)
        self._pos = pos
        self.identity_pos = pos[one]
        self.mul_pos = tuple(mul_pos)
        inv_pos = [0] * self.order
        for i in range(self.order):
            j = next(j for j in range(self.order) if mul_pos[i][j] == self.identity_pos)
            inv_pos[i] = j
        self.inv_pos = tuple(inv_pos)

    def __contains__(self, x: int) -> bool:
        return x in self._pos

    def position(self, x: int) -> int:
        return self._pos[x]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.ring == other.ring
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.elements))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, elements={list(self.elements)})"

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "generator": self.generator}


def cyclic_subgroup(ring: Ring, b: int) -> Subgroup:
    """The subgroup generated by the powers of a unit b."""
    if ring.try_invert(b) is None:
        raise NotAUnitError(f"generator {b} is not a unit in {ring!r}")
    one = ring.one()
    elems = [one]
    x = b
    while x != one:
        elems.append(x)
        x = ring.mul(x, b)
        if len(elems) > ring.order:
            raise RuntimeError("generator powers failed to cycle")  # unreachable
    return Subgroup(ring, elems, generator=b)


def subgroup_from_elements(ring: Ring, elements: Iterable[int]) -> Subgroup:
    """Validate an explicit element list as a subgroup of the units."""
    return Subgroup(ring, list(elements), generator=None)


def check_unit_difference(ring: Ring, group: Subgroup) -> bool:
    """True when g - 1 is a unit for every g != 1 in the group."""
    one = ring.one()
    for g in group.elements:
        if g == one:
            continue
        if ring.try_invert(ring.sub(g, one)) is None:
            return False
    return True


def check_plus_one(ring: Ring, group: Subgroup) -> bool:
    """True when g + 1 is a unit for every g in the group."""
    one = ring.one()
    for g in group.elements:
        if ring.try_invert(ring.add(g, one)) is None:
            return False
    return True


def doubled_subgroup(ring: Ring, group: Subgroup) -> Subgroup:
    """The union of G and -G, which doubles the order when -1 is not in G."""
    minus_one = ring.neg(ring.one())
    if minus_one in group:
        raise DegenerateDoublingError(
            f"-1 (index {minus_one}) already lies in the subgroup; doubling is degenerate"
        )
    doubled = list(group.elements) + [ring.neg(g) for g in group.elements]
    return Subgroup(ring, doubled, generator=None)


class CosetPartition:
    """The partition of a ring into {0} and left cosets of a subgroup.

    Built by scanning element indices in increasing order, so the
    representative of each coset is its smallest-index member and the
    representative list is ascending.  Row and column indicator tables
    are filled during the scan: for nonzero r = rep * g they give back
    rep and g respectively.
    """

    def __init__(self, ring: Ring, group: Subgroup):
        if not check_unit_difference(ring, group):
            raise ConditionNotSatisfiedError(
                "subgroup fails the unit-difference condition: some g - 1 is not a unit"
            )
        self.ring = ring
        self.subgroup = group
        n = ring.order
        e = group.order
        row = [-1] * n  # representative of the coset of r
        col = [-1] * n  # group element g with r = rep * g
        cosets: list[tuple[int, ...]] = [(0,)]
        reps = [0]
        row[0] = 0
        for a in range(1, n):
            if row[a] >= 0:
                continue
            members = []
            for g in group.elements:
                m = ring.mul(a, g)
                if row[m] >= 0:
                    raise ConditionNotSatisfiedError(
                        f"cosets overlap at element {m}; partition impossible"
                    )
                row[m] = a
                col[m] = g
                members.append(m)
            if len(set(members)) != e:
                raise ConditionNotSatisfiedError(
                    f"coset of {a} has size {len(set(members))}, expected {e}"
                )
            cosets.append(tuple(sorted(members)))
            reps.append(a)
        if (n - 1) % e != 0 or len(cosets) != (n - 1) // e + 1:
            raise ConditionNotSatisfiedError(
                f"{n - 1} nonzero elements do not split into cosets of size {e}"
            )
        self.cosets = tuple(cosets)
        self.reps = tuple(reps)
        self._row = row
        self._col = col

    @property
    def nonzero_reps(self) -> tuple[int, ...]:
        """Representatives of the nonzero cosets, ascending."""
        return self.reps[1:]

    def row_indicator(self, r: int) -> int:
        """The representative a of the coset containing nonzero r."""
        if r == 0:
            raise ValueError("indicators are defined for nonzero elements only")
        return self._row[self.ring._check(r)]

    def column_indicator(self, r: int) -> int:
        """The group element g with r = row_indicator(r) * g."""
        if r == 0:
            raise ValueError("indicators are defined for nonzero elements only")
        return self._col[self.ring._check(r)]

    def __repr__(self) -> str:
        return (
            f"CosetPartition(ring={self.ring!r}, subgroup_order={self.subgroup.order}, "
            f"cosets={len(self.cosets)})"
        )

    def to_json(self) -> dict:
        return {
            "subgroup": self.subgroup.to_json(),
            "cosets": [list(c) for c in self.cosets],
            "reps": list(self.reps),
        }


def coset_partition(ring: Ring, group: Subgroup) -> CosetPartition:
    """Partition the ring by the subgroup, checking the preconditions."""
    return CosetPartition(ring, group)
