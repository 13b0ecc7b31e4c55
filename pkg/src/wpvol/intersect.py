"""Tautological intersection numbers from volume polynomial coefficients,
and the identity suite built on them.

The coefficient of L^(2 alpha) in the (true) volume V_{g,n} is

    C_alpha = 2^(d11) / (2^|alpha| alpha! (d - |alpha|)!)
              * int_Mbar_{g,n} psi^alpha omega^(d - |alpha|),

with d = 3g - 3 + n and d11 = 1 exactly at (g, n) = (1, 1).  Inverting
this gives intersection numbers in two normalizations: against powers of
the symplectic form omega, and against powers of kappa_1 = omega/(2 pi^2)
where the value is a plain rational.  Top-degree values |alpha| = d are
the psi correlators <tau_{a_1} ... tau_{a_n}>_g.

Verified identities:

* string:   <tau_0 tau_alpha> = sum_i <tau_{alpha - e_i}>,
* dilaton:  <tau_1 tau_alpha> = (2g - 2 + n) <tau_alpha>,
* the coefficient-level Virasoro (DVV) recursion, with genus bookkeeping
  mirroring the three recursion terms,
* Do's boundary-removal equations relating V_{g,n+1} at L_{n+1} = 2 pi i
  to V_{g,n}, which also produce the closed-surface volumes V_{g,0}.

The Do equations compare polynomials in the intersection-normalized
(internal) convention: the forgetful-map identities behind them live on
intersection numbers, so the (1,1) instance needs the halved torus
volume.  The common factor 2 pi i in the dilaton equation is cancelled
symbolically: both sides are compared inside Q[pi^2], keeping the scalar
ring real and exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Optional, Sequence, Tuple

from .exact import PiPoly, Rat, rat_to_str
from .lpoly import LPoly
from .recursion import VolumeTable, is_stable, iter_signatures, moduli_dim

__all__ = [
    "IntersectionValue",
    "volume_coefficient",
    "intersection_number",
    "psi_correlator",
    "genus0_correlator",
    "check_string",
    "check_dilaton",
    "check_dvv",
    "check_do_string",
    "check_do_dilaton",
    "compact_volume",
    "zograf_ratio",
    "CheckRecord",
    "run_relation_suite",
    "RELATIONS",
]


@lru_cache(maxsize=None)
def _double_factorial(m: int) -> int:
    """(m)!! for odd m >= -1, with (-1)!! = 1."""
    if m < -1 or m % 2 == 0:
        raise ValueError("expected an odd integer >= -1")
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


@dataclass(frozen=True)
class IntersectionValue:
    """An intersection number in both normalizations.

    ``omega`` is int psi^alpha omega^m as a single pi-monomial;
    ``kappa`` is the same divided by (2 pi^2)^m, a plain rational; ``m``
    is the complementary power 3g - 3 + n - |alpha|.
    """

    omega: PiPoly
    kappa: Rat
    m: int


def volume_coefficient(
    table: VolumeTable, g: int, n: int, alpha: Sequence[int]
) -> PiPoly:
    """Coefficient of L^(2 alpha) in the true volume V_{g,n}.

    Out-of-range multi-indices give zero rather than an error.
    """
    alpha = tuple(alpha)
    if len(alpha) != n:
        raise ValueError("alpha must have one entry per boundary")
    return table.true_volume(g, n).coefficient(alpha)


def intersection_number(
    table: VolumeTable, g: int, alpha: Sequence[int]
) -> IntersectionValue:
    """<psi^alpha omega^m> over Mbar_{g,n} with m = 3g-3+n-|alpha|.

    The kappa-normalized value must come out a plain rational (pi-degree
    zero after dividing by (2 pi^2)^m); anything else is a logic fault.
    """
    alpha = tuple(alpha)
    n = len(alpha)
    d = moduli_dim(g, n)
    total = sum(alpha)
    if total > d:
        return IntersectionValue(PiPoly.zero(), Fraction(0), 0)
    m = d - total
    c = volume_coefficient(table, g, n, alpha)
    delta = 1 if (g, n) == (1, 1) else 0
    scale = Fraction(
        2**total * prod(factorial(a) for a in alpha) * factorial(m), 2**delta
    )
    omega = c * scale
    if omega.is_zero():
        return IntersectionValue(PiPoly.zero(), Fraction(0), m)
    mono = omega.as_monomial()
    if mono is None or mono[0] != m:
        raise RuntimeError(
            f"intersection number at g={g}, alpha={alpha} is not a rational "
            f"multiple of (2 pi^2)^{m}: {omega!r}"
        )
    kappa = mono[1] / Fraction(2**m)
    return IntersectionValue(omega, kappa, m)


def psi_correlator(table: VolumeTable, g: int, alpha: Sequence[int]) -> Rat:
    """<tau_{a_1} ... tau_{a_n}>_g, zero unless sum(alpha) = 3g - 3 + n
    with (g, n) stable.  Symmetric in alpha; values are cached on the
    table."""
    key = (g, tuple(sorted(alpha)))
    cached = table.psi_cache.get(key)
    if cached is not None:
        return cached
    g, alpha = key
    n = len(alpha)
    if (
        g < 0
        or n < 1
        or not is_stable(g, n)
        or any(a < 0 for a in alpha)
        or sum(alpha) != moduli_dim(g, n)
    ):
        value = Fraction(0)
    else:
        value = intersection_number(table, g, alpha).kappa
    table.psi_cache[key] = value
    return value


def genus0_correlator(alpha: Sequence[int]) -> Rat:
    """Closed form <tau_alpha>_0 = (n-3)! / prod alpha_i!, the multinomial
    coefficient for n - 3; zero off the degree condition |alpha| = n-3."""
    alpha = tuple(alpha)
    n = len(alpha)
    if n < 3 or any(a < 0 for a in alpha) or sum(alpha) != n - 3:
        return Fraction(0)
    return Fraction(factorial(n - 3), prod(factorial(a) for a in alpha))


# ----------------------------------------------------------------------
# relation checks


@dataclass(frozen=True)
class CheckRecord:
    """Outcome of one relation instance, with exact sides for reporting."""

    relation: str
    g: int
    n: int
    alpha: Optional[Tuple[int, ...]]
    passed: bool
    lhs: str
    rhs: str

    def to_json(self) -> dict:
        out = {
            "relation": self.relation,
            "g": self.g,
            "n": self.n,
            "pass": self.passed,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }
        if self.alpha is not None:
            out["alpha"] = list(self.alpha)
        return out


def check_string(table: VolumeTable, g: int, alpha: Sequence[int]) -> CheckRecord:
    """<tau_0 tau_alpha>_g = sum_{alpha_i != 0} <tau_{alpha - e_i}>_g,
    for |alpha| = 3g - 2 + n."""
    alpha = tuple(alpha)
    lhs = psi_correlator(table, g, (0,) + alpha)
    rhs = Fraction(0)
    for i, a in enumerate(alpha):
        if a > 0:
            rhs += psi_correlator(table, g, alpha[:i] + (a - 1,) + alpha[i + 1 :])
    return CheckRecord(
        "string", g, len(alpha), alpha, lhs == rhs, rat_to_str(lhs), rat_to_str(rhs)
    )


def check_dilaton(table: VolumeTable, g: int, alpha: Sequence[int]) -> CheckRecord:
    """<tau_1 tau_alpha>_g = (2g - 2 + n) <tau_alpha>_g,
    for |alpha| = 3g - 3 + n."""
    alpha = tuple(alpha)
    n = len(alpha)
    lhs = psi_correlator(table, g, (1,) + alpha)
    rhs = (2 * g - 2 + n) * psi_correlator(table, g, alpha)
    return CheckRecord(
        "dilaton", g, n, alpha, lhs == rhs, rat_to_str(lhs), rat_to_str(rhs)
    )


def _subsets(labels: Tuple[int, ...]) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    for mask in range(1 << len(labels)):
        left = tuple(v for b, v in enumerate(labels) if mask >> b & 1)
        right = tuple(v for b, v in enumerate(labels) if not mask >> b & 1)
        yield left, right


def check_dvv(table: VolumeTable, g: int, k: Sequence[int]) -> CheckRecord:
    """The coefficient-level Virasoro (DVV) recursion at (g, k).

    (2k_1+1)!! <tau_{k_1} ... tau_{k_n}>_g
      = 1/2 sum_{i+j=k_1-2} (2i+1)!!(2j+1)!! [
            <tau_i tau_j tau_{k_2} ...>_{g-1}
          + sum_{g_1+g_2=g} sum_{I} <tau_i tau_{k_I}>_{g_1}
                                    <tau_j tau_{k_Ic}>_{g_2} ]
      + sum_{j>=2} (2(k_1+k_j)-1)!!/(2k_j-1)!!
                   <tau_{k_1+k_j-1} tau_{k_2} .. omit j ..>_g.

    Genus bookkeeping mirrors the recursion terms: the tau_i tau_j term
    sits at genus g-1, the split term sums over g_1 + g_2 = g, and the
    index-merging term stays at genus g.  Symbols off the stability or
    degree conditions vanish.  The relation instantiates the recursion,
    so the base signatures (0,3) and (1,1) are out of scope.
    """
    k = tuple(k)
    n = len(k)
    k1, rest = k[0], k[1:]
    lhs = _double_factorial(2 * k1 + 1) * psi_correlator(table, g, k)

    rhs = Fraction(0)
    for j, kj in enumerate(rest):
        if k1 + kj == 0:
            continue  # would need tau_{-1}
        merged = (k1 + kj - 1,) + rest[:j] + rest[j + 1 :]
        rhs += Fraction(
            _double_factorial(2 * (k1 + kj) - 1), _double_factorial(2 * kj - 1)
        ) * psi_correlator(table, g, merged)

    half = Fraction(1, 2)
    for i in range(k1 - 1):
        j = k1 - 2 - i
        w = half * _double_factorial(2 * i + 1) * _double_factorial(2 * j + 1)
        if g >= 1:
            rhs += w * psi_correlator(table, g - 1, (i, j) + rest)
        for g1 in range(g + 1):
            g2 = g - g1
            for left, right in _subsets(rest):
                a = psi_correlator(table, g1, (i,) + left)
                if not a:
                    continue
                rhs += w * a * psi_correlator(table, g2, (j,) + right)

    return CheckRecord("dvv", g, n, k, lhs == rhs, rat_to_str(lhs), rat_to_str(rhs))


def _poly_str(p: LPoly) -> str:
    if p.is_zero():
        return "0"
    return "; ".join(
        f"L^{list(alpha)}: {c.as_str()}" for alpha, c in p.sorted_items()
    )


def check_do_string(table: VolumeTable, g: int, n: int) -> CheckRecord:
    """Do's boundary-removal string equation
    V_{g,n+1}(L, 2 pi i) = sum_k int L_k V_{g,n}(L) dL_k,
    compared in the intersection-normalized convention with integration
    constant zero."""
    lhs = table.volume(g, n + 1).subst_two_pi_i(n)
    rhs = LPoly.zero(n)
    v = table.volume(g, n)
    for j in range(n):
        rhs = rhs + v.antiderivative(j)
    return CheckRecord(
        "do-string", g, n, None, lhs == rhs, _poly_str(lhs), _poly_str(rhs)
    )


def check_do_dilaton(table: VolumeTable, g: int, n: int) -> CheckRecord:
    """Do's boundary-removal dilaton equation
    dV_{g,n+1}/dL_{n+1}(L, 2 pi i) = 2 pi i (2g - 2 + n) V_{g,n}(L).

    Both sides are 2 pi i times an element of Q[pi^2]; the factor is
    cancelled symbolically and the Q[pi^2] parts compared exactly.
    """
    q = table.volume(g, n + 1).partial_factor(n)
    lhs = q.subst_two_pi_i(n)
    rhs = table.volume(g, n).scale(2 * g - 2 + n)
    return CheckRecord(
        "do-dilaton", g, n, None, lhs == rhs, _poly_str(lhs), _poly_str(rhs)
    )


def compact_volume(table: VolumeTable, g: int) -> PiPoly:
    """Volume of the moduli space of closed genus-g surfaces, g >= 2.

    The n = 0 instance of the boundary-removal dilaton equation:
    V_{g,0} = Q(-4 pi^2) / (2g - 2) where dV_{g,1}/dL_1 = L_1 Q(L_1^2).
    """
    if g < 2:
        raise ValueError("closed surfaces need genus >= 2")
    q = table.true_volume(g, 1).partial_factor(0)
    return q.subst_two_pi_i(0).as_pipoly() * Fraction(1, 2 * g - 2)


def zograf_ratio(table: VolumeTable, g: int, n: int) -> float:
    """Diagnostic ratio of V_{g,n}(0) to the conjectured large-genus
    asymptotic (4 pi^2)^(2g+n-3) (2g+n-3)! / sqrt(g pi).

    Informational only; the asymptotic regime is far beyond desk scale.
    """
    value = table.true_volume(g, n).coefficient((0,) * n).to_float()
    m = 2 * g + n - 3
    predicted = (4 * math.pi**2) ** m * factorial(m) / math.sqrt(g * math.pi)
    return value / predicted


# ----------------------------------------------------------------------
# suite runners

RELATIONS = ("string", "dilaton", "dvv", "do-string", "do-dilaton")


def _sorted_compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Non-increasing exponent tuples of the given length summing to
    total: one representative per orbit of the symmetric group."""
    def rec(remaining: int, parts_left: int, cap: int) -> Iterator[Tuple[int, ...]]:
        if parts_left == 0:
            if remaining == 0:
                yield ()
            return
        hi = min(cap, remaining)
        lo = -(-remaining // parts_left)  # ceil: keep non-increasing feasible
        for first in range(hi, lo - 1, -1):
            for tail in rec(remaining - first, parts_left - 1, first):
                yield (first,) + tail

    return rec(total, parts, total)


def run_relation_suite(
    table: VolumeTable, relation: str, max_dim: int
) -> list[CheckRecord]:
    """Every instance of one relation whose volumes all lie within
    3g - 3 + n <= max_dim.

    String and dilaton instances are enumerated once per orbit of the
    symmetric group (both sides are symmetric in alpha); DVV instances
    once per orbit fixing the distinguished first index.  DVV applies
    where the recursion does, so the base signatures (0,3) and (1,1)
    carry no instances.
    """
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}")
    records: list[CheckRecord] = []
    for g, n in iter_signatures(max_dim):
        d = moduli_dim(g, n)
        grows = moduli_dim(g, n + 1) <= max_dim
        if relation == "string" and grows:
            for alpha in _sorted_compositions(d + 1, n):
                records.append(check_string(table, g, alpha))
        elif relation == "dilaton" and grows:
            for alpha in _sorted_compositions(d, n):
                records.append(check_dilaton(table, g, alpha))
        elif relation == "dvv" and (g, n) not in {(0, 3), (1, 1)}:
            for k1 in range(d + 1):
                for rest in _sorted_compositions(d - k1, n - 1):
                    records.append(check_dvv(table, g, (k1,) + rest))
        elif relation == "do-string" and grows:
            records.append(check_do_string(table, g, n))
        elif relation == "do-dilaton" and grows:
            records.append(check_do_dilaton(table, g, n))
    return records
