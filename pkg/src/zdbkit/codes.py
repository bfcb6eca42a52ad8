"""Codes and difference systems derived from verified balanced functions.

The shift code of a function f on an abelian group A has one codeword
per group element a, with coordinates c_a(y) = f(y + a) in domain index
order.  Because distances between shifted rows reduce to spectrum
counts, a zero-difference balanced f with parameters (n, m, lambda)
yields an equidistant code of length n, size n, and distance n - lambda
in which every codeword has the same composition (a constant
composition code), and, when symbol 0 has a single preimage, a constant
weight code of weight n - 1.  The preimages of the symbols form a
partitioned difference system whose blocks cover every nonzero group
element the same number of times.

Derivations refuse unverified input: each builder takes the function
plus an optional verification result and re-runs the exhaustive scan
when none is supplied.  Distances are computed by exhaustive pairwise
comparison, never inferred from the construction.  Bound arithmetic is
exact (integers and fractions); no floats are involved anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .construct import ZdbFunction
from .domains import AbelianDomain, domain_from_json
from .errors import NotCwcEligibleError, VerificationError
from .verify import VerificationResult, verify_zdb

__all__ = [
    "CodeBook",
    "DssSystem",
    "BoundReport",
    "PerfectCheck",
    "ccc_from_zdb",
    "cwc_from_zdb",
    "dss_from_zdb",
    "dss_perfect_check",
    "min_distance",
    "distance_range",
    "ccc_bound",
    "cwc_bound",
    "dss_bound",
    "ccc_report",
    "cwc_report",
    "dss_report",
]

_BLOCK = 96


@dataclass
class CodeBook:
    """A block code stored as an M x n symbol matrix.

    kind is "CCC" (constant composition) or "CWC" (constant weight).
    d and d_max are the exhaustively computed minimum and maximum
    pairwise Hamming distances.  composition is the per-symbol count
    vector shared by all codewords; weight is set on CWC books.
    """

    kind: str
    n: int
    M: int
    q: int
    d: int
    d_max: int
    codewords: np.ndarray
    composition: tuple[int, ...] | None = None
    weight: int | None = None

    def to_json(self) -> dict:
        out: dict = {
            "kind": self.kind,
            "n": self.n,
            "M": self.M,
            "q": self.q,
            "d": self.d,
            "d_max": self.d_max,
            "codewords": self.codewords.tolist(),
        }
        if self.composition is not None:
            out["composition"] = list(self.composition)
        if self.weight is not None:
            out["weight"] = self.weight
        return out

    @staticmethod
    def from_json(data: dict) -> "CodeBook":
        words = np.asarray(data["codewords"], dtype=np.int32)
        return CodeBook(
            kind=data["kind"],
            n=data["n"],
            M=data["M"],
            q=data["q"],
            d=data["d"],
            d_max=data.get("d_max", data["d"]),
            codewords=words,
            composition=tuple(data["composition"]) if "composition" in data else None,
            weight=data.get("weight"),
        )

    def to_csv(self) -> str:
        lines = [",".join(str(int(s)) for s in row) for row in self.codewords]
        return "\n".join(lines) + "\n"


@dataclass
class DssSystem:
    """Disjoint difference sets D_0..D_{q-1} inside an abelian group.

    lam is the certified minimum coverage of nonzero elements by
    cross-block differences; perfect means the coverage is exactly lam
    everywhere; partitioned means the blocks cover the whole group.
    tau is the total number of points, the quantity the lower bound
    speaks about.
    """

    domain: AbelianDomain
    blocks: tuple[tuple[int, ...], ...]
    q: int
    tau: int
    lam: int | None
    perfect: bool
    partitioned: bool

    def to_json(self) -> dict:
        return {
            "kind": "DSS",
            "group": self.domain.to_json(),
            "blocks": [list(b) for b in self.blocks],
            "q": self.q,
            "tau": self.tau,
            "lambda": self.lam,
            "perfect": self.perfect,
            "partitioned": self.partitioned,
        }

    @staticmethod
    def from_json(data: dict) -> "DssSystem":
        return DssSystem(
            domain=domain_from_json(data["group"]),
            blocks=tuple(tuple(b) for b in data["blocks"]),
            q=data["q"],
            tau=data["tau"],
            lam=data.get("lambda"),
            perfect=data["perfect"],
            partitioned=data["partitioned"],
        )


class PerfectCheck(NamedTuple):
    lam_min: int
    perfect: bool
    lam: int | None


@dataclass(frozen=True)
class BoundReport:
    """An exact-rational bound next to the size a design achieves.

    bound_num / bound_den is the bound in lowest terms.  For code
    bounds it is an upper limit on the number of codewords and optimal
    means the achieved size equals its floor; for the difference-system
    bound it is an integer lower limit on the point count and optimal
    means equality.
    """

    kind: str
    bound_num: int
    bound_den: int
    achieved: int
    applicable: bool
    optimal: bool
    note: str = ""

    @property
    def bound(self) -> Fraction:
        return Fraction(self.bound_num, self.bound_den)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "bound": {"num": self.bound_num, "den": self.bound_den},
            "achieved": self.achieved,
            "applicable": self.applicable,
            "optimal": self.optimal,
        }
        if self.note:
            out["note"] = self.note
        return out


def _require_verified(fn: ZdbFunction, result: VerificationResult | None) -> VerificationResult:
    if result is None:
        result = verify_zdb(fn)
    if not result.ok:
        raise VerificationError(
            f"refusing to derive from an unverified function: {result.to_json()}"
        )
    if result.n != fn.n:
        raise VerificationError("verification result belongs to a different function")
    return result


def _shift_codewords(fn: ZdbFunction) -> np.ndarray:
    domain = fn.domain
    n = domain.order
    dtype = np.int16 if fn.q < 2**15 else np.int32
    table = np.asarray(fn.table, dtype=dtype)
    out = np.empty((n, n), dtype=dtype)
    for start in range(0, n, 256):
        deltas = range(start, min(start + 256, n))
        out[start : start + 256] = table[domain.shift_rows(deltas)]
    return out


def distance_range(codewords: np.ndarray) -> tuple[int, int]:
    """Minimum and maximum pairwise Hamming distance, all pairs compared."""
    c = np.ascontiguousarray(codewords)
    m = c.shape[0]
    if m < 2:
        raise ValueError("distance needs at least two codewords")
    dmin, dmax = c.shape[1] + 1, -1
    for i in range(0, m, _BLOCK):
        a = c[i : i + _BLOCK]
        for j in range(i, m, _BLOCK):
            b = c[j : j + _BLOCK]
            dist = np.count_nonzero(a[:, None, :] != b[None, :, :], axis=2)
            if i == j:
                iu = np.triu_indices(a.shape[0], k=1, m=b.shape[0])
                vals = dist[iu]
                if vals.size == 0:
                    continue
            else:
                vals = dist.ravel()
            dmin = min(dmin, int(vals.min()))
            dmax = max(dmax, int(vals.max()))
    return dmin, dmax


def min_distance(code: "CodeBook | np.ndarray | Sequence[Sequence[int]]") -> int:
    """Exhaustive minimum pairwise Hamming distance."""
    words = code.codewords if isinstance(code, CodeBook) else np.asarray(code)
    return distance_range(words)[0]


def _row_compositions(words: np.ndarray, q: int) -> np.ndarray:
    m, n = words.shape
    flat = (np.arange(m, dtype=np.int64)[:, None] * q + words).ravel()
    return np.bincount(flat, minlength=m * q).reshape(m, q)


def ccc_from_zdb(fn: ZdbFunction, result: VerificationResult | None = None) -> CodeBook:
    """Constant composition code of all shifted copies of a verified function."""
    _require_verified(fn, result)
    words = _shift_codewords(fn)
    comps = _row_compositions(words, fn.q)
    if not (comps == comps[0]).all():
        raise VerificationError("shifted rows do not share one composition")
    dmin, dmax = distance_range(words)
    return CodeBook(
        kind="CCC",
        n=fn.n,
        M=fn.n,
        q=fn.q,
        d=dmin,
        d_max=dmax,
        codewords=words,
        composition=tuple(int(c) for c in comps[0]),
    )


def cwc_from_zdb(
    fn: ZdbFunction,
    result: VerificationResult | None = None,
    base: CodeBook | None = None,
) -> CodeBook:
    """Constant weight view of the same codeword matrix.

    Requires symbol 0 to have exactly one preimage, so that every
    codeword contains exactly one zero.  Pass the already-built CCC as
    ``base`` to reuse its codeword matrix and distances.
    """
    _require_verified(fn, result)
    zero_count = fn.table.count(0)
    if zero_count != 1:
        raise NotCwcEligibleError(
            f"symbol 0 must have exactly one preimage, found {zero_count}"
        )
    if base is not None and (base.n != fn.n or base.M != fn.n or base.q != fn.q):
        raise ValueError("base codebook does not match the function")
    if base is None:
        words = _shift_codewords(fn)
        dmin, dmax = distance_range(words)
    else:
        words, dmin, dmax = base.codewords, base.d, base.d_max
    weights = np.count_nonzero(words, axis=1)
    if not (weights == fn.n - 1).all():
        raise VerificationError("codewords do not share weight n - 1")
    return CodeBook(
        kind="CWC",
        n=fn.n,
        M=fn.n,
        q=fn.q,
        d=dmin,
        d_max=dmax,
        codewords=words,
        weight=fn.n - 1,
    )


def dss_from_zdb(fn: ZdbFunction, result: VerificationResult | None = None) -> DssSystem:
    """Partitioned difference system from the symbol preimages."""
    _require_verified(fn, result)
    blocks: list[list[int]] = [[] for _ in range(fn.q)]
    for y, s in enumerate(fn.table):
        blocks[s].append(y)
    system = DssSystem(
        domain=fn.domain,
        blocks=tuple(tuple(b) for b in blocks),
        q=fn.q,
        tau=fn.n,
        lam=None,
        perfect=False,
        partitioned=True,
    )
    lam_min, perfect, lam = dss_perfect_check(system)
    system.lam = lam if perfect else lam_min
    system.perfect = perfect
    return system


def dss_perfect_check(system: DssSystem) -> PerfectCheck:
    """Brute-force the multiset of cross-block differences.

    Counts x - y over all ordered pairs taken from distinct blocks and
    reports the minimum coverage of nonzero group elements, whether the
    coverage is uniform, and its level when it is.  A system with fewer
    than two blocks has no cross pairs at all.
    """
    domain = system.domain
    order = domain.order
    if len(system.blocks) < 2:
        return PerfectCheck(0, False, None)
    counts = np.zeros(order, dtype=np.int64)
    universe = np.concatenate(
        [np.asarray(b, dtype=np.int64) for b in system.blocks if len(b) > 0]
    )
    inv_universe = domain.inverse_vec(universe)
    for start in range(0, len(universe), 256):
        chunk = universe[start : start + 256]
        diffs = domain.op_vec(chunk[:, None], inv_universe[None, :])
        counts += np.bincount(diffs.ravel(), minlength=order)
    for b in system.blocks:
        if not b:
            continue
        arr = np.asarray(b, dtype=np.int64)
        diffs = domain.op_vec(arr[:, None], domain.inverse_vec(arr)[None, :])
        counts -= np.bincount(diffs.ravel(), minlength=order)
    if counts[domain.identity] != 0:
        raise RuntimeError("blocks are not disjoint")
    nonzero = np.delete(counts, domain.identity)
    lam_min = int(nonzero.min())
    perfect = bool((nonzero == nonzero[0]).all())
    return PerfectCheck(lam_min, perfect, lam_min if perfect else None)


# -- bound arithmetic (exact rationals only) ------------------------------


def ccc_bound(n: int, d: int, composition: Sequence[int], achieved: int) -> BoundReport:
    """Size limit n*d / (n*d - n^2 + sum of squared composition entries)."""
    wsq = sum(int(w) ** 2 for w in composition)
    den = n * d - n * n + wsq
    if den <= 0:
        return BoundReport("ccc", 0, 1, achieved, applicable=False, optimal=False)
    bound = Fraction(n * d, den)
    return BoundReport(
        "ccc",
        bound.numerator,
        bound.denominator,
        achieved,
        applicable=True,
        optimal=achieved == math.floor(bound),
    )


def cwc_bound(n: int, d: int, w: int, q: int, achieved: int) -> BoundReport:
    """Size limit n*d / (n*d - 2*n*w + (q/(q-1)) * w^2).

    The balance ratio uses the full alphabet size q for the number of
    nonzero symbol classes; that convention is recorded on the report.
    """
    note = "balance ratio computed with the alphabet size q"
    if q < 2:
        return BoundReport("cwc", 0, 1, achieved, applicable=False, optimal=False, note=note)
    den = Fraction(n * d) - 2 * n * w + Fraction(q, q - 1) * w * w
    if den <= 0:
        return BoundReport("cwc", 0, 1, achieved, applicable=False, optimal=False, note=note)
    bound = Fraction(n * d) / den
    return BoundReport(
        "cwc",
        bound.numerator,
        bound.denominator,
        achieved,
        applicable=True,
        optimal=achieved == math.floor(bound),
        note=note,
    )


def dss_bound(n: int, lam: int, q: int, achieved_tau: int) -> BoundReport:
    """Point-count lower limit: the root of the smallest perfect square at or
    above lam*(n-1) + ceil(lam*(n-1) / (q-1)).  Integer arithmetic only."""
    if q < 2 or lam < 1:
        return BoundReport("dss", 0, 1, achieved_tau, applicable=False, optimal=False)
    base = lam * (n - 1)
    x = base + -(-base // (q - 1))
    s = math.isqrt(x)
    if s * s < x:
        s += 1
    return BoundReport(
        "dss",
        s,
        1,
        achieved_tau,
        applicable=True,
        optimal=achieved_tau == s,
    )


def ccc_report(book: CodeBook) -> BoundReport:
    if book.kind != "CCC" or book.composition is None:
        raise ValueError("constant composition bound needs a CCC book")
    return ccc_bound(book.n, book.d, book.composition, book.M)


def cwc_report(book: CodeBook) -> BoundReport:
    if book.kind != "CWC" or book.weight is None:
        raise ValueError("constant weight bound needs a CWC book")
    return cwc_bound(book.n, book.d, book.weight, book.q, book.M)


def dss_report(system: DssSystem) -> BoundReport:
    if system.lam is None or not system.perfect:
        raise ValueError("bound certification needs a perfect system")
    return dss_bound(system.domain.order, system.lam, system.q, system.tau)
