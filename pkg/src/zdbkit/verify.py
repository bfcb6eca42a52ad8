"""Exhaustive verification oracles for candidate balanced functions.

Everything in this module is computed from a function's lookup table
and its domain's group law, never from construction provenance, coset
structure, or claimed parameters.  That keeps these routines usable as
independent oracles against the constructions.

The central quantity is the difference spectrum: for every shift a
other than the identity, the number of domain elements y with
f(y + a) = f(y).  A function is zero-difference balanced at level
lambda exactly when the spectrum is constant at lambda.  The scan costs
O(order^2) table lookups; it is vectorized in blocks of shifts and is
practical to a few times 10^4 elements.

Every scan re-checks the counting identity

    sum over shifts of spectrum(a)  ==  sum of squared symbol
    multiplicities  -  order

which ties the spectrum to the composition of the table and catches
table or group-law corruption early.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .construct import ZdbFunction, construct_generic
from .cosets import CosetPartition, Subgroup
from .rings import Ring

__all__ = [
    "DifferenceSpectrum",
    "VerificationResult",
    "CompositionProfile",
    "difference_spectrum",
    "verify_zdb",
    "composition_profile",
    "check_solution_set",
    "check_column_ratios",
]

# spectra are stored shift-by-shift up to this order, sparsely above it
_DENSE_LIMIT = 1000

_CHUNK = 256


@dataclass(frozen=True)
class DifferenceSpectrum:
    """Coincidence counts over all non-identity shifts.

    histogram maps a count value to the number of shifts attaining it.
    per_shift (shift index -> count) is kept only for small domains;
    large spectra are stored in histogram form alone.
    """

    order: int
    histogram: dict[int, int]
    per_shift: dict[int, int] | None

    @property
    def min_count(self) -> int:
        return min(self.histogram)

    @property
    def max_count(self) -> int:
        return max(self.histogram)

    @property
    def is_constant(self) -> bool:
        return len(self.histogram) == 1

    @property
    def constant_value(self) -> int | None:
        return next(iter(self.histogram)) if self.is_constant else None

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "per_shift": None
            if self.per_shift is None
            else [self.per_shift[d] for d in sorted(self.per_shift)],
        }


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of a full spectrum scan against the claimed parameters.

    On success the certified (n, m, lam) are filled in.  On failure the
    first offending shift is the debugging artifact: for a spectrum
    failure it is the smallest shift whose count differs from the
    claim; an image failure (alphabet size mismatch) carries no shift.
    """

    ok: bool
    n: int
    m: int | None = None
    lam: int | None = None
    failure_kind: str | None = None  # spectrum | image
    witness_shift: int | None = None
    expected: int | None = None
    actual: int | None = None

    def certified_parameters(self) -> tuple[int, int, int]:
        if not self.ok:
            raise ValueError("no certified parameters on a failed verification")
        return (self.n, self.m, self.lam)

    def to_json(self) -> dict:
        out: dict = {"ok": self.ok, "n": self.n}
        if self.ok:
            out["m"] = self.m
            out["lambda"] = self.lam
        else:
            out["failure"] = self.failure_kind
            out["witness_shift"] = self.witness_shift
            out["expected"] = self.expected
            out["actual"] = self.actual
        return out


@dataclass(frozen=True)
class CompositionProfile:
    """Symbol multiplicities of a table: counts[b] = |preimage of b|."""

    counts: tuple[int, ...]
    sorted_counts: tuple[int, ...]

    def to_json(self) -> dict:
        return {"counts": list(self.counts), "sorted": list(self.sorted_counts)}


def _scan(fn: ZdbFunction, claimed: int | None):
    """One pass over all non-identity shifts.

    Returns (histogram, per_shift or None, witness) where witness is
    (shift, count) for the first shift whose count differs from the
    claim, if any.
    """
    domain = fn.domain
    n = domain.order
    table = np.asarray(fn.table, dtype=np.int32)
    deltas = [d for d in range(n) if d != domain.identity]
    histogram: dict[int, int] = {}
    per_shift: dict[int, int] | None = {} if n <= _DENSE_LIMIT else None
    witness: tuple[int, int] | None = None
    total = 0
    for start in range(0, len(deltas), _CHUNK):
        block = deltas[start : start + _CHUNK]
        rows = domain.shift_rows(block)
        counts = np.count_nonzero(table[rows] == table[None, :], axis=1)
        total += int(counts.sum())
        for d, c in zip(block, counts.tolist()):
            histogram[c] = histogram.get(c, 0) + 1
            if per_shift is not None:
                per_shift[d] = c
            if witness is None and claimed is not None and c != claimed:
                witness = (d, c)
    w = np.bincount(table, minlength=fn.q)
    expected_total = int((w.astype(np.int64) ** 2).sum()) - n
    if total != expected_total:
        raise RuntimeError(
            f"counting identity violated: spectrum total {total}, "
            f"composition predicts {expected_total}"
        )
    return histogram, per_shift, witness


def difference_spectrum(fn: ZdbFunction) -> DifferenceSpectrum:
    """Exhaustive coincidence counts for every non-identity shift."""
    histogram, per_shift, _ = _scan(fn, None)
    return DifferenceSpectrum(order=fn.n, histogram=histogram, per_shift=per_shift)


def verify_zdb(fn: ZdbFunction) -> VerificationResult:
    """Certify the claimed (n, m, lambda) by exhaustive scan.

    Succeeds iff the spectrum is constant at the claimed lambda and the
    table uses exactly q distinct symbols.
    """
    distinct = len(set(fn.table))
    if distinct != fn.q:
        return VerificationResult(
            ok=False,
            n=fn.n,
            failure_kind="image",
            expected=fn.q,
            actual=distinct,
        )
    claimed = fn.claimed_lambda
    histogram, _, witness = _scan(fn, claimed)
    if witness is not None:
        return VerificationResult(
            ok=False,
            n=fn.n,
            failure_kind="spectrum",
            witness_shift=witness[0],
            expected=claimed,
            actual=witness[1],
        )
    return VerificationResult(ok=True, n=fn.n, m=fn.q, lam=claimed)


def composition_profile(fn: ZdbFunction) -> CompositionProfile:
    counts = np.bincount(np.asarray(fn.table, dtype=np.int64), minlength=fn.q)
    return CompositionProfile(
        counts=tuple(int(c) for c in counts),
        sorted_counts=tuple(sorted(int(c) for c in counts)),
    )


def check_solution_set(ring: Ring, group: Subgroup, a: int) -> bool:
    """Compare the coincidence set of the generic construction at shift a
    against its closed form {a * (g - 1)^-1 : g in G, g != 1}.

    The left side is found by brute force over the table; the right
    side by direct ring arithmetic.  Commutative rings only.
    """
    if a == 0:
        raise ValueError("the shift must be nonzero")
    if not ring.is_commutative():
        raise ValueError("the closed form applies to commutative rings only")
    fn = construct_generic(ring, group)
    table = fn.table
    brute = {x for x in range(ring.order) if table[ring.add(x, a)] == table[x]}
    one = ring.one()
    closed = set()
    for g in group.elements:
        if g == one:
            continue
        inv = ring.try_invert(ring.sub(g, one))
        if inv is None:  # cannot happen once the partition exists
            return False
        closed.add(ring.mul(a, inv))
    return brute == closed


def check_column_ratios(partition: CosetPartition) -> bool:
    """Check that for every nonzero r the map g -> CI(r) * CI(r*g)^-1 is a
    bijection of the subgroup onto itself whose value is 1 only at g = 1.

    CI denotes the column indicator.  This is the combinatorial engine
    behind the balance of the product construction.
    """
    ring = partition.ring
    group = partition.subgroup
    one = ring.one()
    elems = group.elements
    inverse_of = {g: elems[group.inv_pos[i]] for i, g in enumerate(elems)}
    target = set(elems)
    for r in range(1, ring.order):
        ci_r = partition.column_indicator(r)
        ratios = set()
        for g in elems:
            ci_rg = partition.column_indicator(ring.mul(r, g))
            ratio = ring.mul(ci_r, inverse_of[ci_rg])
            if (ratio == one) != (g == one):
                return False
            ratios.add(ratio)
        if ratios != target:
            return False
    return True
