"""Sparse multivariate even polynomials in boundary lengths.

An :class:`LPoly` over n variables represents an even polynomial

    p(L_1, ..., L_n) = sum_alpha  c_alpha * L^(2 alpha),

with multi-index keys alpha = (a_1, ..., a_n) and coefficients in Q[pi^2].
Only even polynomials are representable: an exponent vector alpha always
means ``prod_i L_i^(2 a_i)``, so evenness is an invariant of the
representation.  Odd intermediates such as L_1 * V or dV/dL_j are handled
as (variable * even part) pairs by :meth:`LPoly.integrate_back` and
:meth:`LPoly.partial_factor`.

The canonical term order used for serialization and rendering is graded
lexicographic on alpha.
"""
from __future__ import annotations

from fractions import Fraction
from math import prod
from typing import Iterator, Mapping, Optional, Sequence, Tuple, Union

from .exact import PiPoly, Rat, rat_from_str, rat_to_str

__all__ = ["MultiIndex", "LPoly", "mul_disjoint", "grlex_key"]

MultiIndex = Tuple[int, ...]


def grlex_key(alpha: MultiIndex) -> Tuple[int, MultiIndex]:
    """Sort key for the graded-lexicographic term order."""
    return (sum(alpha), alpha)


class LPoly:
    """Even polynomial in L_1^2, ..., L_n^2 with PiPoly coefficients.

    Instances are immutable after construction; no stored coefficient is
    zero and every key has length ``n``.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Optional[Mapping[MultiIndex, PiPoly]] = None):
        if n < 0:
            raise ValueError("variable count must be non-negative")
        self.n = n
        clean: dict[MultiIndex, PiPoly] = {}
        if terms:
            for alpha, c in terms.items():
                alpha = tuple(int(a) for a in alpha)
                if len(alpha) != n:
                    raise ValueError(
                        f"multi-index {alpha} has length {len(alpha)}, expected {n}"
                    )
                if any(a < 0 for a in alpha):
                    raise ValueError(f"negative exponent in {alpha}")
                if not isinstance(c, PiPoly):
                    c = PiPoly.rational(c)
                if c:
                    clean[alpha] = c
        self._terms = clean

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, n: int) -> "LPoly":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c: Union[PiPoly, Rat, int]) -> "LPoly":
        if not isinstance(c, PiPoly):
            c = PiPoly.rational(c)
        return cls(n, {(0,) * n: c})

    @classmethod
    def one(cls, n: int) -> "LPoly":
        return cls.constant(n, 1)

    @classmethod
    def monomial(cls, n: int, alpha: Sequence[int], c: Union[PiPoly, Rat, int] = 1) -> "LPoly":
        if not isinstance(c, PiPoly):
            c = PiPoly.rational(c)
        return cls(n, {tuple(alpha): c})

    # ------------------------------------------------------------------
    # inspection

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def items(self) -> Iterator[Tuple[MultiIndex, PiPoly]]:
        return iter(self._terms.items())

    def sorted_items(self) -> list[Tuple[MultiIndex, PiPoly]]:
        """Terms in canonical (graded lexicographic) order."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]))

    def coefficient(self, alpha: Sequence[int]) -> PiPoly:
        """Coefficient of L^(2 alpha); zero when the term is absent."""
        return self._terms.get(tuple(alpha), PiPoly.zero())

    def max_total_degree(self) -> int:
        """Largest |alpha| over stored terms; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(a) for a in self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LPoly):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __repr__(self) -> str:
        return f"LPoly(n={self.n}, {len(self._terms)} terms)"

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other: "LPoly") -> "LPoly":
        if not isinstance(other, LPoly):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("cannot add polynomials over different variable counts")
        terms = dict(self._terms)
        for alpha, c in other._terms.items():
            s = terms.get(alpha)
            s = c if s is None else s + c
            if s:
                terms[alpha] = s
            else:
                terms.pop(alpha, None)
        return self._wrap(self.n, terms)

    def __neg__(self) -> "LPoly":
        return self._wrap(self.n, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other: "LPoly") -> "LPoly":
        if not isinstance(other, LPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Union[PiPoly, Rat, int]) -> "LPoly":
        """Multiply every coefficient by the scalar c (rational or Q[pi^2])."""
        if not isinstance(c, PiPoly):
            c = PiPoly.rational(c)
        if not c:
            return LPoly.zero(self.n)
        return self._wrap(self.n, {a: q * c for a, q in self._terms.items()})

    def __mul__(self, other: "LPoly") -> "LPoly":
        """Product of two even polynomials over the same variable list."""
        if not isinstance(other, LPoly):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("cannot multiply polynomials over different variable counts")
        terms: dict[MultiIndex, PiPoly] = {}
        for a1, c1 in self._terms.items():
            for a2, c2 in other._terms.items():
                key = tuple(x + y for x, y in zip(a1, a2))
                s = terms.get(key)
                p = c1 * c2
                s = p if s is None else s + p
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        return self._wrap(self.n, terms)

    @staticmethod
    def _wrap(n: int, terms: dict) -> "LPoly":
        out = LPoly.__new__(LPoly)
        out.n = n
        out._terms = {a: c for a, c in terms.items() if c}
        return out

    # ------------------------------------------------------------------
    # embeddings and relabelling

    def embed(self, n: int, positions: Sequence[int]) -> "LPoly":
        """View this polynomial inside an n-variable ring.

        ``positions[i]`` is the target slot of variable i; the injection
        must be into distinct slots of range(n).
        """
        positions = list(positions)
        if len(positions) != self.n:
            raise ValueError("positions must list a slot for every variable")
        if len(set(positions)) != len(positions):
            raise ValueError("positions must be distinct")
        if any(p < 0 or p >= n for p in positions):
            raise ValueError("position out of range")
        terms: dict[MultiIndex, PiPoly] = {}
        for alpha, c in self._terms.items():
            beta = [0] * n
            for i, a in enumerate(alpha):
                beta[positions[i]] = a
            terms[tuple(beta)] = c
        return self._wrap(n, terms)

    def permute(self, sigma: Sequence[int]) -> "LPoly":
        """Relabel variables: variable i is sent to slot sigma[i].

        Acts as a group action: ``p.permute(s).permute(t) == p.permute(t o s)``.
        """
        sigma = list(sigma)
        if sorted(sigma) != list(range(self.n)):
            raise ValueError("sigma must be a permutation of range(n)")
        terms: dict[MultiIndex, PiPoly] = {}
        for alpha, c in self._terms.items():
            beta = [0] * self.n
            for i, a in enumerate(alpha):
                beta[sigma[i]] = a
            terms[tuple(beta)] = c
        return self._wrap(self.n, terms)

    def is_symmetric(self) -> bool:
        """Invariance under all variable permutations.

        Checked on the adjacent-transposition generators of the symmetric
        group.
        """
        for i in range(self.n - 1):
            sigma = list(range(self.n))
            sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
            if self.permute(sigma) != self:
                return False
        return True

    # ------------------------------------------------------------------
    # calculus

    def integrate_back(self) -> "LPoly":
        """Invert p = d/dL_1 (L_1 q) for even q: divide each L_1^(2k) term
        by (2k + 1).

        L_1 q vanishes at L_1 = 0, so the constant of integration is 0.
        """
        if self.n < 1:
            raise ValueError("integrate_back needs at least one variable")
        terms = {
            alpha: c * Fraction(1, 2 * alpha[0] + 1) for alpha, c in self._terms.items()
        }
        return self._wrap(self.n, terms)

    def partial_factor(self, j: int) -> "LPoly":
        """Return Q with dp/dL_j = L_j * Q.

        Term L_j^(2k) maps to 2k * L_j^(2k-2); the derivative of an even
        polynomial is L_j times an even polynomial.
        """
        self._check_var(j)
        terms: dict[MultiIndex, PiPoly] = {}
        for alpha, c in self._terms.items():
            k = alpha[j]
            if k == 0:
                continue
            beta = list(alpha)
            beta[j] = k - 1
            key = tuple(beta)
            s = terms.get(key)
            p = c * (2 * k)
            terms[key] = p if s is None else s + p
        return self._wrap(self.n, terms)

    def antiderivative(self, j: int) -> "LPoly":
        """The integral of L_j * p with respect to L_j (constant 0):
        L_j^(2a) maps to L_j^(2a+2) / (2a + 2)."""
        self._check_var(j)
        terms: dict[MultiIndex, PiPoly] = {}
        for alpha, c in self._terms.items():
            beta = list(alpha)
            beta[j] = alpha[j] + 1
            terms[tuple(beta)] = c * Fraction(1, 2 * alpha[j] + 2)
        return self._wrap(self.n, terms)

    def subst_two_pi_i(self, j: int) -> "LPoly":
        """Substitute L_j = 2*pi*i exactly, i.e. L_j^2 = -4 pi^2.

        Each L_j^(2k) contributes (-4)^k pi^(2k) to the coefficient; the
        result has one fewer variable.
        """
        self._check_var(j)
        terms: dict[MultiIndex, PiPoly] = {}
        for alpha, c in self._terms.items():
            k = alpha[j]
            key = alpha[:j] + alpha[j + 1 :]
            p = c * PiPoly.monomial(k, Fraction((-4) ** k))
            s = terms.get(key)
            s = p if s is None else s + p
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return self._wrap(self.n - 1, terms)

    def _check_var(self, j: int) -> None:
        if j < 0 or j >= self.n:
            raise ValueError(f"variable index {j} out of range for n={self.n}")

    # ------------------------------------------------------------------
    # evaluation

    def eval_rational(self, values: Sequence[Union[Rat, int]]) -> PiPoly:
        """Exact evaluation at rational boundary lengths."""
        if len(values) != self.n:
            raise ValueError("need one value per variable")
        vals = [Fraction(v) for v in values]
        acc = PiPoly.zero()
        for alpha, c in self._terms.items():
            scalar = prod(
                (v ** (2 * a) for v, a in zip(vals, alpha)), start=Fraction(1)
            )
            acc = acc + c * scalar
        return acc

    def as_pipoly(self) -> PiPoly:
        """Convert a 0-variable polynomial to its constant coefficient."""
        if self.n != 0:
            raise ValueError("only a 0-variable polynomial is a plain constant")
        return self.coefficient(())

    # ------------------------------------------------------------------
    # serialization

    def to_records(self) -> list[dict]:
        """Canonical JSON term list.

        One record per (alpha, pi-power) pair, sorted by graded-lex alpha
        then pi power; round-trips bit-exactly through from_records.
        """
        records = []
        for alpha, c in self.sorted_items():
            for k, q in c.items():
                records.append(
                    {"alpha": list(alpha), "pi_power": 2 * k, "coeff": rat_to_str(q)}
                )
        return records

    @classmethod
    def from_records(cls, n: int, records) -> "LPoly":
        terms: dict[MultiIndex, PiPoly] = {}
        for rec in records:
            alpha = tuple(int(a) for a in rec["alpha"])
            p = int(rec["pi_power"])
            if p % 2 != 0:
                raise ValueError("pi powers must be even")
            c = PiPoly.monomial(p // 2, rat_from_str(rec["coeff"]))
            terms[alpha] = terms.get(alpha, PiPoly.zero()) + c
        return cls(n, terms)


def mul_disjoint(
    a: LPoly,
    pos_a: Sequence[int],
    b: LPoly,
    pos_b: Sequence[int],
    n: int,
) -> LPoly:
    """Product of polynomials over disjoint variable subsets.

    ``pos_a`` and ``pos_b`` inject the variables of a and b into slots of
    an n-variable ring; overlapping slots are rejected.
    """
    if set(pos_a) & set(pos_b):
        raise ValueError("variable sets overlap")
    return a.embed(n, pos_a) * b.embed(n, pos_b)
