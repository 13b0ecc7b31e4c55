"""Mirzakhani's recursion for Weil-Petersson volume polynomials.

The volume V_{g,n}(L_1, ..., L_n) of the moduli space of genus g
hyperbolic surfaces with n geodesic boundaries satisfies

    d/dL_1 (L_1 V_{g,n}) = A^con + A^dcon + B,

where the three terms integrate kernel moments against volumes of the
surfaces left after removing an embedded pair of pants containing the
first boundary:

* A^con: the pants cuts off two boundaries of one connected surface of
  genus g-1, contributing (1/2) sum over terms x^2a y^2b of V_{g-1,n+1}
  of G_{a,b}(L_1);
* A^dcon: the complement splits into two pieces, an ordered sum over
  stable splittings with the same global 1/2;
* B: the pants contains a second boundary L_j, contributing shifted
  moment sums (F_{2a+1}(L_1+L_j) + F_{2a+1}(L_1-L_j)) / 2 against terms
  of V_{g,n-1}.

Base cases are V_{0,3} = 1 and the *halved* torus value
V_{1,1} = pi^2/12 + L^2/48.  The halving accounts for the elliptic
involution; the recursion consumes the halved value everywhere, and
:meth:`VolumeTable.true_volume` doubles only the (1,1) report.

Every computed entry is validated on the spot: label symmetry, the
pi-homogeneity of each coefficient (a single positive rational multiple
of pi^(2(3g-3+n-|alpha|))), and the degree bound |alpha| <= 3g-3+n.  A
violation aborts; with exact arithmetic any mismatch is a logic bug.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Tuple

from .exact import PiPoly
from .kernels import h_double_moment, h_moment, shift_symmetrize
from .lpoly import LPoly, MultiIndex

__all__ = [
    "is_stable",
    "moduli_dim",
    "base_volume",
    "stable_splittings",
    "a_con_term",
    "a_dcon_term",
    "b_term",
    "VolumeTable",
    "InvariantViolation",
    "validate_volume",
    "iter_signatures",
]

BASE_SIGNATURES = {(0, 3), (1, 1)}

Splitting = Tuple[Tuple[int, Tuple[int, ...]], Tuple[int, Tuple[int, ...]]]


class InvariantViolation(RuntimeError):
    """A computed volume failed a structural invariant (logic bug)."""


def is_stable(g: int, n: int) -> bool:
    """Whether a genus-g surface with n boundaries is hyperbolic: 2g-2+n > 0."""
    return 2 * g - 2 + n > 0


def moduli_dim(g: int, n: int) -> int:
    """Complex dimension 3g - 3 + n of the moduli space."""
    return 3 * g - 3 + n


def base_volume(g: int, n: int) -> LPoly:
    """The recursion's base cases, in the internal convention.

    V_{0,3} = 1 and V_{1,1} = pi^2/12 + L^2/48 (the halved torus value).
    """
    if (g, n) == (0, 3):
        return LPoly.one(3)
    if (g, n) == (1, 1):
        return LPoly(
            1,
            {
                (0,): PiPoly.monomial(1, Fraction(1, 12)),
                (1,): PiPoly.rational(Fraction(1, 48)),
            },
        )
    raise ValueError(f"({g},{n}) is not a base case")


@lru_cache(maxsize=None)
def stable_splittings(g: int, n: int) -> Tuple[Splitting, ...]:
    """Ordered stable splittings for the disconnected term at (g, n).

    Enumerates ordered pairs ((g1, I1), (g2, I2)) with g1 + g2 = g and
    I1, I2 a partition of the labels {2, ..., n}; each piece carries one
    new boundary, and pieces must admit hyperbolic structures:
    2 g_i - 2 + (|I_i| + 1) > 0, which excludes disks and annuli.

    The symmetric splitting (g/2, {}) | (g/2, {}) occurs once; together
    with the recursion's global 1/2 prefactor this reproduces the
    unordered orbit count with its Z/2 symmetry.
    """
    labels = tuple(range(2, n + 1))
    out: list[Splitting] = []
    for g1 in range(g + 1):
        g2 = g - g1
        for mask in range(1 << len(labels)):
            i1 = tuple(lab for b, lab in enumerate(labels) if mask >> b & 1)
            i2 = tuple(lab for b, lab in enumerate(labels) if not mask >> b & 1)
            if is_stable(g1, len(i1) + 1) and is_stable(g2, len(i2) + 1):
                out.append(((g1, i1), (g2, i2)))
    out.sort()
    return tuple(out)


@lru_cache(maxsize=None)
def _shifted_moment(a: int) -> LPoly:
    # (F_{2a+1}(L1 + Lj) + F_{2a+1}(L1 - Lj)) / 2, cached per exponent
    return shift_symmetrize(h_moment(a))


def _accumulate(acc: dict, key: MultiIndex, coeff: PiPoly) -> None:
    prev = acc.get(key)
    acc[key] = coeff if prev is None else prev + coeff


def a_con_term(g: int, n: int, table: "VolumeTable") -> LPoly:
    """Connected pants-removal term (an even polynomial in L_1, ..., L_n).

    Each term x^2a y^2b m(L_2..L_n) of V_{g-1,n+1} contributes
    (1/2) coeff G_{a,b}(L_1) m; absent when (g-1, n+1) is unstable.
    """
    if g < 1 or not is_stable(g - 1, n + 1):
        return LPoly.zero(n)
    w = table.volume(g - 1, n + 1)
    half = Fraction(1, 2)
    acc: dict[MultiIndex, PiPoly] = {}
    for alpha, c in w.items():
        a, b, rest = alpha[0], alpha[1], alpha[2:]
        scaled = c * half
        for (kt,), cg in h_double_moment(a, b).items():
            _accumulate(acc, (kt,) + rest, scaled * cg)
    return LPoly(n, acc)


def a_dcon_term(g: int, n: int, table: "VolumeTable") -> LPoly:
    """Disconnected pants-removal term: ordered stable splittings with the
    global 1/2 prefactor, products taken over disjoint label sets."""
    half = Fraction(1, 2)
    acc: dict[MultiIndex, PiPoly] = {}
    for (g1, i1), (g2, i2) in stable_splittings(g, n):
        w1 = table.volume(g1, len(i1) + 1)
        w2 = table.volume(g2, len(i2) + 1)
        pos1 = [lab - 1 for lab in i1]
        pos2 = [lab - 1 for lab in i2]
        for alpha1, c1 in w1.items():
            a, rest1 = alpha1[0], alpha1[1:]
            c1h = c1 * half
            for alpha2, c2 in w2.items():
                b, rest2 = alpha2[0], alpha2[1:]
                coeff = c1h * c2
                base = [0] * n
                for p, e in zip(pos1, rest1):
                    base[p] = e
                for p, e in zip(pos2, rest2):
                    base[p] = e
                for (kt,), cg in h_double_moment(a, b).items():
                    base[0] = kt
                    _accumulate(acc, tuple(base), coeff * cg)
    return LPoly(n, acc)


def b_term(g: int, n: int, table: "VolumeTable") -> LPoly:
    """Second-boundary term: for each j >= 2, terms x^2a m of V_{g,n-1}
    contribute coeff * shifted F-moment in (L_1, L_j) times m."""
    if n < 2:
        return LPoly.zero(n)
    w = table.volume(g, n - 1)
    acc: dict[MultiIndex, PiPoly] = {}
    for pj in range(1, n):  # slot of L_j, j = 2..n
        others = [p for p in range(1, n) if p != pj]
        for alpha, c in w.items():
            a, rest = alpha[0], alpha[1:]
            base = [0] * n
            for p, e in zip(others, rest):
                base[p] = e
            for (r, s), cs in _shifted_moment(a).items():
                key = list(base)
                key[0] = r
                key[pj] = s
                _accumulate(acc, tuple(key), c * cs)
    return LPoly(n, acc)


def validate_volume(g: int, n: int, p: LPoly) -> None:
    """Check the structural invariants of a volume polynomial.

    Symmetry under label permutations, |alpha| <= 3g-3+n, and each
    coefficient a single strictly positive rational multiple of
    pi^(2(3g-3+n-|alpha|)).  Raises InvariantViolation on any failure.
    """
    d = moduli_dim(g, n)
    if p.n != n:
        raise InvariantViolation(f"V_{{{g},{n}}} has {p.n} variables, expected {n}")
    if p.is_zero():
        raise InvariantViolation(f"V_{{{g},{n}}} is zero")
    for alpha, c in p.items():
        total = sum(alpha)
        if total > d:
            raise InvariantViolation(
                f"V_{{{g},{n}}}: term {alpha} exceeds degree bound {d}"
            )
        mono = c.as_monomial()
        if mono is None:
            raise InvariantViolation(
                f"V_{{{g},{n}}}: coefficient of {alpha} is not a pi-monomial"
            )
        k, q = mono
        if k != d - total:
            raise InvariantViolation(
                f"V_{{{g},{n}}}: coefficient of {alpha} has pi-degree {2 * k}, "
                f"expected {2 * (d - total)}"
            )
        if q <= 0:
            raise InvariantViolation(
                f"V_{{{g},{n}}}: coefficient of {alpha} is not positive"
            )
    if not p.is_symmetric():
        raise InvariantViolation(f"V_{{{g},{n}}} is not label-symmetric")


def iter_signatures(max_dim: int) -> Iterator[Tuple[int, int]]:
    """All stable (g, n) with n >= 1 and 3g - 3 + n <= max_dim, by
    increasing dimension then (g, n)."""
    sigs = []
    g = 0
    while moduli_dim(g, 1) <= max_dim:
        n = 1
        while moduli_dim(g, n) <= max_dim:
            if is_stable(g, n):
                sigs.append((g, n))
            n += 1
        g += 1
    sigs.sort(key=lambda s: (moduli_dim(*s), s))
    return iter(sigs)


class VolumeTable:
    """Memoized map from (g, n) to the internal-convention volume.

    Entries are computed on demand (dependencies first) or in dimension
    waves through :meth:`ensure`.  Completed entries are immutable and
    may be read concurrently; in a threaded build each cell is written
    exactly once by the coordinating thread, so single- and
    multi-threaded builds serialize identically.
    """

    def __init__(self, validate: bool = True):
        self._entries: dict[Tuple[int, int], LPoly] = {}
        self.validate = validate
        # derived-value cache used by the intersection-number layer
        self.psi_cache: dict = {}

    def __contains__(self, sig: Tuple[int, int]) -> bool:
        return sig in self._entries

    def signatures(self) -> list[Tuple[int, int]]:
        return sorted(self._entries, key=lambda s: (moduli_dim(*s), s))

    def volume(self, g: int, n: int) -> LPoly:
        """V_{g,n} in the internal convention (halved at (1,1))."""
        sig = (g, n)
        cached = self._entries.get(sig)
        if cached is not None:
            return cached
        poly = self._compute(g, n)
        self._entries[sig] = poly
        return poly

    def true_volume(self, g: int, n: int) -> LPoly:
        """The geometric Weil-Petersson volume: doubles only V_{1,1}."""
        v = self.volume(g, n)
        if (g, n) == (1, 1):
            return v.scale(2)
        return v

    def _compute(self, g: int, n: int) -> LPoly:
        if n < 1:
            raise ValueError(
                f"({g},{n}): closed-surface volumes come from the boundary "
                "removal relation, not the recursion"
            )
        if not is_stable(g, n):
            raise ValueError(f"({g},{n}) is not a stable signature")
        if (g, n) in BASE_SIGNATURES:
            poly = base_volume(g, n)
        else:
            derivative = (
                a_con_term(g, n, self)
                + a_dcon_term(g, n, self)
                + b_term(g, n, self)
            )
            poly = derivative.integrate_back()
        if self.validate:
            validate_volume(g, n, poly)
        return poly

    def ensure(self, max_dim: int, threads: int = 1) -> None:
        """Compute every stable (g, n), n >= 1, with 3g-3+n <= max_dim.

        Signatures are processed in dimension waves; all dependencies of
        a wave live in strictly smaller dimensions.  With threads > 1 the
        members of a wave are computed concurrently and inserted by this
        thread in sorted order, so results are independent of thread
        count and scheduling.
        """
        waves: dict[int, list[Tuple[int, int]]] = {}
        for sig in iter_signatures(max_dim):
            waves.setdefault(moduli_dim(*sig), []).append(sig)
        for d in sorted(waves):
            todo = [s for s in sorted(waves[d]) if s not in self._entries]
            if not todo:
                continue
            if threads <= 1 or len(todo) == 1:
                for sig in todo:
                    self.volume(*sig)
            else:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    futures = {sig: pool.submit(self._compute, *sig) for sig in todo}
                for sig in sorted(futures):
                    self._entries[sig] = futures[sig].result()

    # ------------------------------------------------------------------
    # serialization

    def to_entries(self) -> dict[str, list[dict]]:
        """Canonically ordered map ``"g,n" -> term records``."""
        return {
            f"{g},{n}": self._entries[(g, n)].to_records()
            for g, n in self.signatures()
        }

    @classmethod
    def from_entries(
        cls, entries: dict[str, list[dict]], validate: bool = True
    ) -> "VolumeTable":
        """Rebuild a table from serialized entries.

        Entries are re-validated before being trusted unless ``validate``
        is disabled.
        """
        table = cls(validate=validate)
        for key, records in entries.items():
            g_str, n_str = key.split(",")
            g, n = int(g_str), int(n_str)
            poly = LPoly.from_records(n, records)
            if validate:
                validate_volume(g, n, poly)
            table._entries[(g, n)] = poly
        return table
