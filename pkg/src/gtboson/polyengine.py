"""Exact sparse multivariate polynomial arithmetic over tagged variables.

Variables come in three families: matrix entries z[r,c] and the coupling
parameters x(lam,mu), y(lam,mu).  Each variable additionally carries a slot
index so that three tensor factors can live in one ring without collisions
(slot 0 is used for single-group work, slots 1..3 for coupling).

Coefficients are `fractions.Fraction`; all operations are exact.  Square
roots never enter the ring: they are confined to `SqrtRational`, which is
the carrier for norms and coupling coefficients at the API boundary.

Everything here is immutable value data; all functions are pure and safe to
call from multiple threads.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Mapping, Sequence

__all__ = [
    "VarId",
    "Monomial",
    "ExactPoly",
    "SqrtRational",
    "GaussianRational",
    "zvar",
    "xvar",
    "yvar",
    "mono_from_map",
    "mono_mul",
    "mono_text",
    "minor",
    "symbolic_matrix",
    "bargmann_inner",
    "diagonal_degrees",
    "squarefree_split",
]

# A variable is a plain tuple (kind, slot, a, b) with kind in {"x", "y", "z"}.
# For kind "z": a = row, b = column.  For "x"/"y": a = lambda, b = mu.
# Tuple comparison gives the canonical total order (kind, slot, a, b).
VarId = tuple[str, int, int, int]

# A monomial is a tuple of (VarId, exponent) pairs, sorted by VarId, with all
# exponents positive.  The empty tuple is the constant monomial.
Monomial = tuple[tuple[VarId, int], ...]

ONE: Monomial = ()


def zvar(row: int, col: int, slot: int = 0) -> VarId:
    return ("z", slot, row, col)


def xvar(lam: int, mu: int, slot: int = 0) -> VarId:
    return ("x", slot, lam, mu)


def yvar(lam: int, mu: int, slot: int = 0) -> VarId:
    return ("y", slot, lam, mu)


def mono_from_map(exps: Mapping[VarId, int]) -> Monomial:
    """Build a monomial from a variable -> exponent map, dropping zeros."""
    items = tuple(sorted((v, e) for v, e in exps.items() if e != 0))
    if any(e < 0 for _, e in items):
        raise ValueError("negative exponent in monomial")
    return items


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps: dict[VarId, int] = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def var_text(v: VarId) -> str:
    kind, slot, a, b = v
    tag = "" if slot == 0 else str(slot)
    if kind == "z":
        return f"z{tag}[{a},{b}]"
    return f"{kind}{tag}({a},{b})"


def mono_text(m: Monomial) -> str:
    """Canonical text of a monomial; the constant monomial renders as '1'."""
    if not m:
        return "1"
    parts = []
    for v, e in m:
        parts.append(var_text(v) if e == 1 else f"{var_text(v)}^{e}")
    return "*".join(parts)


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected exact rational coefficient, got {type(c)!r}")


def mono_lex_cmp(m1: Monomial, m2: Monomial) -> int:
    """Lexicographic comparison: walking variables in canonical order, the
    first variable with differing exponents decides, larger exponent first."""
    i = j = 0
    while i < len(m1) and j < len(m2):
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 != v2:
            return 1 if v1 < v2 else -1
        if e1 != e2:
            return 1 if e1 > e2 else -1
        i += 1
        j += 1
    if i < len(m1):
        return 1
    if j < len(m2):
        return -1
    return 0


_MONO_KEY = cmp_to_key(mono_lex_cmp)


class ExactPoly:
    """Sparse polynomial with exact rational coefficients.

    Terms are held in a dict mapping Monomial -> Fraction with no zero
    coefficients stored.  Instances are treated as immutable values.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = _frac(c)
                if c:
                    clean[m] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "ExactPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "ExactPoly":
        c = _frac(c)
        return cls({ONE: c}) if c else cls()

    @classmethod
    def variable(cls, v: VarId) -> "ExactPoly":
        return cls({((v, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "ExactPoly":
        return cls({m: _frac(c)})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "ExactPoly":
        other = self._coerce(other)
        if not other.terms:
            return self
        acc = dict(self.terms)
        for m, c in other.terms.items():
            s = acc.get(m, Fraction(0)) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return ExactPoly.__new_raw(acc)

    __radd__ = __add__

    def __neg__(self) -> "ExactPoly":
        return ExactPoly.__new_raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "ExactPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ExactPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "ExactPoly":
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if not c:
                return ExactPoly()
            return ExactPoly.__new_raw({m: k * c for m, k in self.terms.items()})
        other = self._coerce(other)
        acc: dict[Monomial, Fraction] = {}
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        for m2, c2 in small.items():
            for m1, c1 in big.items():
                m = mono_mul(m1, m2)
                s = acc.get(m, Fraction(0)) + c1 * c2
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        return ExactPoly.__new_raw(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ExactPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial power requires an integer k >= 0")
        result = ExactPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactPoly.const(other)
        if not isinstance(other, ExactPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    @staticmethod
    def _coerce(other) -> "ExactPoly":
        if isinstance(other, ExactPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactPoly.const(other)
        raise TypeError(f"cannot coerce {type(other)!r} to ExactPoly")

    @classmethod
    def __new_raw(cls, terms: dict[Monomial, Fraction]) -> "ExactPoly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[VarId]:
        out: set[VarId] = set()
        for m in self.terms:
            out.update(v for v, _ in m)
        return out

    def leading_monomial(self) -> Monomial:
        """Highest monomial in lexicographic order (earlier variables
        dominate, larger exponents first)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=_MONO_KEY)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e for _, e in m) for m in self.terms)

    def truncate_degree(self, dmax: int) -> "ExactPoly":
        return ExactPoly({m: c for m, c in self.terms.items()
                          if sum(e for _, e in m) <= dmax})

    def map_variables(self, fn: Callable[[VarId], VarId]) -> "ExactPoly":
        """Relabel variables through a map (e.g. retag slots); exponents of
        merged variables accumulate."""
        acc: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            exps: dict[VarId, int] = {}
            for v, e in m:
                w = fn(v)
                exps[w] = exps.get(w, 0) + e
            nm = mono_from_map(exps)
            acc[nm] = acc.get(nm, Fraction(0)) + c
        return ExactPoly(acc)

    def extract_coefficient(self, target: Monomial,
                            subset: Callable[[VarId], bool]) -> "ExactPoly":
        """Coefficient polynomial of `target` with respect to the variables
        selected by `subset`.

        Keeps exactly the terms whose restriction to the selected variables
        equals `target`, and strips those variables from them.  `target` must
        involve only selected variables.
        """
        for v, _ in target:
            if not subset(v):
                raise ValueError(f"target monomial uses non-subset variable {v}")
        acc: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            inside = tuple((v, e) for v, e in m if subset(v))
            if inside == target:
                rest = tuple((v, e) for v, e in m if not subset(v))
                acc[rest] = acc.get(rest, Fraction(0)) + c
        return ExactPoly(acc)

    def split_by(self, subset: Callable[[VarId], bool]) -> dict[Monomial, "ExactPoly"]:
        """Group terms by their monomial in the selected variables."""
        groups: dict[Monomial, dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            inside = tuple((v, e) for v, e in m if subset(v))
            rest = tuple((v, e) for v, e in m if not subset(v))
            groups.setdefault(inside, {})[rest] = c
        return {k: ExactPoly(v) for k, v in groups.items()}

    def text(self) -> str:
        """Canonical text form: terms sorted highest-first, exact coefficients."""
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_MONO_KEY, reverse=True):
            c = self.terms[m]
            if m == ONE:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono_text(m))
            elif c == -1:
                parts.append(f"-{mono_text(m)}")
            else:
                parts.append(f"{c} * {mono_text(m)}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"ExactPoly({self.text()})"


def poly_add(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    return p + q


def poly_mul(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    return p * q


def poly_pow(p: ExactPoly, k: int) -> ExactPoly:
    return p ** k


def extract_coefficient(p: ExactPoly, target: Monomial,
                        subset: Callable[[VarId], bool]) -> ExactPoly:
    return p.extract_coefficient(target, subset)


def symbolic_matrix(n: int, slot: int = 0) -> list[list[ExactPoly]]:
    """The n x n matrix of independent variables z[r,c] (1-indexed)."""
    return [[ExactPoly.variable(zvar(r, c, slot)) for c in range(1, n + 1)]
            for r in range(1, n + 1)]


def minor(mat: Sequence[Sequence[ExactPoly]], rows: Sequence[int],
          cols: Sequence[int]) -> ExactPoly:
    """Determinant of the submatrix on `rows` x `cols` (1-indexed), by
    Laplace expansion along the first selected row.

    Row/column index lists must be strictly increasing and of equal length.
    """
    if len(rows) != len(cols):
        raise ValueError("minor requires equally many rows and columns")
    for idx in (rows, cols):
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("minor indices must be strictly increasing")
        if idx and (idx[0] < 1 or idx[-1] > len(mat)):
            raise ValueError("minor index out of range")
    return _det_expand(mat, tuple(rows), tuple(cols))


def _det_expand(mat, rows: tuple[int, ...], cols: tuple[int, ...]) -> ExactPoly:
    if not rows:
        return ExactPoly.const(1)
    if len(rows) == 1:
        return mat[rows[0] - 1][cols[0] - 1]
    r = rows[0]
    acc = ExactPoly()
    for j, c in enumerate(cols):
        entry = mat[r - 1][c - 1]
        if isinstance(entry, ExactPoly) and entry.is_zero():
            continue
        sub = _det_expand(mat, rows[1:], cols[:j] + cols[j + 1:])
        term = entry * sub
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def bargmann_inner(p: ExactPoly, q: ExactPoly) -> Fraction:
    """Fock-Bargmann pairing of polynomials with rational coefficients.

    Monomials are orthogonal with factorial norms, <v^a, v^b> = delta_ab a!
    per variable; coefficients are rational so conjugation is the identity.
    """
    if len(p.terms) > len(q.terms):
        p, q = q, p
    total = Fraction(0)
    for m, cp in p.terms.items():
        cq = q.terms.get(m)
        if cq is None:
            continue
        w = 1
        for _, e in m:
            w *= math.factorial(e)
        total += cp * cq * w
    return total


def diagonal_degrees(p: ExactPoly, ncols: int | None = None) -> list[int]:
    """Per-column z-degrees of a column-homogeneous polynomial.

    Column j's degree is the total exponent of all z[.,j] variables; it must
    be the same in every term, otherwise a ValueError names the first column
    that fails.
    """
    if p.is_zero():
        return [0] * (ncols or 0)
    if ncols is None:
        ncols = max((v[3] for m in p.terms for v, _ in m if v[0] == "z"),
                    default=0)
    degrees: list[int] | None = None
    for m in p.terms:
        d = [0] * ncols
        for v, e in m:
            if v[0] == "z":
                d[v[3] - 1] += e
        if degrees is None:
            degrees = d
        elif degrees != d:
            bad = next(j for j in range(ncols) if degrees[j] != d[j])
            raise ValueError(f"polynomial is not homogeneous in column {bad + 1}")
    assert degrees is not None
    return degrees


# ---------------------------------------------------------------------------
# Integer factorization helpers for canonical square-free decomposition.
# ---------------------------------------------------------------------------

_SMALL_PRIMES = [p for p in range(2, 1000)
                 if all(p % q for q in range(2, int(p ** 0.5) + 1))]


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # Deterministic for n < 3.3e24 with these witnesses.
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(0xC0FFEE ^ n)
    while True:
        c = rng.randrange(1, n)
        f = lambda v: (v * v + c) % n
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def _factorize(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        if n == 1:
            return
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend((r, r))
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend((d, m // d))


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n >= 1 as a**2 * b with b square-free; returns (a, b)."""
    if n < 1:
        raise ValueError("squarefree_split requires n >= 1")
    factors: dict[int, int] = {}
    _factorize(n, factors)
    a = b = 1
    for p, e in factors.items():
        a *= p ** (e // 2)
        if e % 2:
            b *= p
    return a, b


@dataclass(frozen=True)
class SqrtRational:
    """Exact value q * sqrt(r) with q rational and r >= 0 rational.

    Canonical form: the radicand is 1/m for a square-free positive integer m
    (so 1/sqrt(2) is stored as q = 1, r = 1/2 and sqrt(2) as q = 2, r = 1/2),
    and q = 0 forces r = 1.  Equality is then plain field comparison.  Only
    same-radicand values can be added; products are always defined.
    """

    q: Fraction
    r: Fraction

    def __init__(self, q, r=Fraction(1)):
        q = _frac(q)
        r = _frac(r)
        if r < 0:
            raise ValueError("radicand must be non-negative")
        if q == 0 or r == 0:
            object.__setattr__(self, "q", Fraction(0))
            object.__setattr__(self, "r", Fraction(1))
            return
        # q * sqrt(a/b) = (q a) * sqrt(1/(a b)); peel the square part of a b.
        a, b = r.numerator, r.denominator
        c, m = squarefree_split(a * b)
        object.__setattr__(self, "q", q * Fraction(a, c))
        object.__setattr__(self, "r", Fraction(1, m))

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "SqrtRational":
        return cls(0, 1)

    @classmethod
    def one(cls) -> "SqrtRational":
        return cls(1, 1)

    @classmethod
    def from_rational(cls, q) -> "SqrtRational":
        return cls(_frac(q), Fraction(1))

    @classmethod
    def sqrt(cls, r) -> "SqrtRational":
        """Exact square root of a non-negative rational."""
        return cls(Fraction(1), _frac(r))

    # -- arithmetic ---------------------------------------------------------

    def __mul__(self, other) -> "SqrtRational":
        if isinstance(other, (int, Fraction)):
            return SqrtRational(self.q * _frac(other), self.r)
        if isinstance(other, SqrtRational):
            return SqrtRational(self.q * other.q, self.r * other.r)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SqrtRational":
        if isinstance(other, (int, Fraction)):
            return SqrtRational(self.q / _frac(other), self.r)
        if isinstance(other, SqrtRational):
            if other.is_zero():
                raise ZeroDivisionError("division by zero SqrtRational")
            # q1 sqrt(r1) / (q2 sqrt(r2)) = q1/(q2 r2) * sqrt(r1 r2)
            return SqrtRational(self.q / (other.q * other.r), self.r * other.r)
        return NotImplemented

    def __add__(self, other) -> "SqrtRational":
        if isinstance(other, (int, Fraction)):
            other = SqrtRational.from_rational(other)
        if not isinstance(other, SqrtRational):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.r != other.r:
            raise ValueError("cannot add SqrtRational values with different radicands")
        return SqrtRational(self.q + other.q, self.r)

    __radd__ = __add__

    def __neg__(self) -> "SqrtRational":
        return SqrtRational(-self.q, self.r)

    def __sub__(self, other) -> "SqrtRational":
        return self + (-other)

    def __abs__(self) -> "SqrtRational":
        return SqrtRational(abs(self.q), self.r)

    def is_zero(self) -> bool:
        return self.q == 0

    def squared(self) -> Fraction:
        return self.q * self.q * self.r

    def sign(self) -> int:
        return (self.q > 0) - (self.q < 0)

    def __float__(self) -> float:
        return float(self.q) * math.sqrt(float(self.r))

    # -- text and wire form --------------------------------------------------

    def text(self) -> str:
        """Render as 'p/q*sqrt(a/b)' with explicit denominators."""
        q, r = self.q, self.r
        return (f"{q.numerator}/{q.denominator}"
                f"*sqrt({r.numerator}/{r.denominator})")

    def to_json(self) -> dict:
        return {"q": f"{self.q.numerator}/{self.q.denominator}",
                "r": f"{self.r.numerator}/{self.r.denominator}"}

    @classmethod
    def from_json(cls, obj: dict) -> "SqrtRational":
        return cls(Fraction(obj["q"]), Fraction(obj["r"]))

    def __repr__(self):
        return f"SqrtRational({self.text()})"


@dataclass(frozen=True)
class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    def __add__(self, other) -> "GaussianRational":
        other = self._coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other) -> "GaussianRational":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "GaussianRational":
        other = self._coerce(other)
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GaussianRational":
        if k < 0:
            raise ValueError("negative power of GaussianRational not supported")
        out = GaussianRational(Fraction(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @staticmethod
    def _coerce(other) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(_frac(other))
        raise TypeError(f"cannot coerce {type(other)!r} to GaussianRational")
