"""Boson polynomial bases of U(2), U(3), U(4) and their normalizations.

The generic construction expands a branching kernel, a finite product of
mixed minor/parameter groups, and reads off the coefficient of the lower
pattern's parameter monomial; that coefficient is the Gel'fand basis
polynomial up to normalization.  Closed single-sum (U(3)) and five-index
(U(4)) forms are provided and tested against the kernel extraction, which is
the authoritative oracle.

Normalization constants are exact rationals; the square root appears only in
the SqrtRational values handed to callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .gelfand import (
    DomainError,
    GelfandPattern,
    IrrepLabel,
    _phi_bits,
    as_label,
    as_pattern,
    lr_exponents,
    pattern_phi,
    require_valid,
    semimax_pattern,
)
from .polyengine import (
    ExactPoly,
    GaussianRational,
    Monomial,
    SqrtRational,
    bargmann_inner,
    minor,
    symbolic_matrix,
    zvar,
)

__all__ = [
    "BasisPolynomial",
    "NormConstants",
    "const_A",
    "const_branching_ratio",
    "branching_kernel",
    "basis_from_branching",
    "u2_basis_closed",
    "u3_basis_closed",
    "u3_basis_hypergeometric",
    "u4_basis_closed",
    "norm_sq_u2",
    "norm_sq_u3",
    "norm_sq_u3_hypergeometric",
    "norm_sq_semimax",
    "norm_sq_max",
    "p_n_1",
    "p_n_1_oracle",
    "DSemimaxValue",
    "d_semimax_eval",
    "u4_free_index_count",
    "kernel_phi_support",
    "norm_constants",
]

_fact = math.factorial


@dataclass(frozen=True)
class BasisPolynomial:
    """Unnormalized basis polynomial with its exact Bargmann norm squared.

    The polynomial follows the sign convention that its highest monomial
    (canonical monomial order) has positive coefficient; dividing by
    sqrt(norm_sq) gives the orthonormal Gel'fand vector.
    """

    pattern: GelfandPattern
    poly: ExactPoly
    norm_sq: Fraction

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern.to_json(),
            "poly": self.poly.text(),
            "norm_sq": f"{self.norm_sq.numerator}/{self.norm_sq.denominator}",
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BasisPolynomial":
        """Rebuild from the wire form; the pattern determines the polynomial,
        which is re-derived and checked against the serialized text."""
        b = basis_from_branching(GelfandPattern.from_json(obj["pattern"]))
        if b.poly.text() != obj["poly"] or obj["norm_sq"] != \
                f"{b.norm_sq.numerator}/{b.norm_sq.denominator}":
            raise ValueError("serialized basis polynomial does not match "
                             "its pattern")
        return b


def const_A(label) -> Fraction:
    """Kernel constant of a label: (prod_j p_j!) / (prod_{i<j} (p_i - p_j))
    with p_j = h_j + n - j."""
    label = as_label(label)
    n = label.n
    p = [label.h[j] + n - (j + 1) for j in range(n)]
    num = 1
    for pj in p:
        num *= _fact(pj)
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            den *= p[i] - p[j]
    return Fraction(num, den)


def _check_branching(label: IrrepLabel, branch: IrrepLabel) -> None:
    if branch.n != label.n - 1:
        raise DomainError("branch label must have size n-1")
    for i in range(branch.n):
        if not (label.h[i] >= branch.h[i] >= label.h[i + 1]):
            raise DomainError(
                f"branching violated: need h[{i + 1}]={label.h[i]} >= "
                f"h'[{i + 1}]={branch.h[i]} >= h[{i + 2}]={label.h[i + 1]}")


def norm_sq_semimax(label, branch) -> Fraction:
    """Exact Bargmann norm squared of the unnormalized semi-maximal
    polynomial (principal minors to the interleaving powers, last-column
    minors to the drop powers).

    Closed form: prod_j p_{j,n}! * prod_{i<j<=n} (p'_i - p_j)!/(p_i - p_j)!
    * prod_{i<=j<=n-1} (p_i - p'_j - 1)! / prod_{i<j<=n-1} (p'_i - p'_j)!
    with p_j = h_j + n - j and p'_i = h'_i + n - 1 - i.
    """
    label = as_label(label)
    branch = as_label(branch)
    _check_branching(label, branch)
    n = label.n
    p = [label.h[j] + n - (j + 1) for j in range(n)]
    pp = [branch.h[i] + (n - 1) - (i + 1) for i in range(n - 1)]
    out = Fraction(1)
    for pj in p:
        out *= _fact(pj)
    for i in range(n - 1):
        for j in range(i + 1, n):
            out *= Fraction(_fact(pp[i] - p[j]), _fact(p[i] - p[j]))
    for i in range(n - 1):
        for j in range(i, n - 1):
            out *= _fact(p[i] - pp[j] - 1)
    for i in range(n - 1):
        for j in range(i + 1, n - 1):
            out /= _fact(pp[i] - pp[j])
    return out


def norm_sq_max(label) -> Fraction:
    """Norm squared of the highest-weight polynomial (principal minor powers)."""
    label = as_label(label)
    n = label.n
    if n == 1:
        return Fraction(_fact(label.h[0]))
    return norm_sq_semimax(label, IrrepLabel(label.h[: n - 1]))


def const_branching_ratio(label, branch) -> Fraction:
    """Ratio constant of the branching kernel for a label pair, fixed by the
    requirement that the extracted polynomials have unit norm after the
    normalization chain: A * ||semimax||^2 * ||max of branch||^2."""
    label = as_label(label)
    branch = as_label(branch)
    _check_branching(label, branch)
    return const_A(label) * norm_sq_semimax(label, branch) * norm_sq_max(branch)


def norm_sq_u2(pattern) -> Fraction:
    """Norm squared of the unnormalized U(2) polynomial
    D1^(h11-h22) D2^(h12-h11) D12^(h22)."""
    p = require_valid(as_pattern(pattern))
    if p.n != 2:
        raise DomainError("norm_sq_u2 requires a U(2) pattern")
    h12, h22 = p.row(2)
    h11 = p.row(1)[0]
    return Fraction(
        _fact(h11 - h22) * _fact(h12 - h11) * _fact(h12 + 1) * _fact(h22),
        _fact(h12 - h22 + 1))


def norm_sq_u3(pattern) -> Fraction:
    """Closed-form norm squared of the binomial-sum U(3) polynomial, for any
    valid U(3) pattern.

    Follows from the kernel normalization chain: the semi-maximal norm times
    the norm of the highest-weight polynomial of the middle row's label,
    divided by the norm of the embedded U(2) polynomial.
    """
    p = require_valid(as_pattern(pattern))
    if p.n != 3:
        raise DomainError("norm_sq_u3 requires a U(3) pattern")
    top = IrrepLabel(p.row(3))
    mid = IrrepLabel(p.row(2))
    return (norm_sq_semimax(top, mid) * norm_sq_max(mid)
            / norm_sq_u2(p.lower()))


def norm_sq_u3_hypergeometric(pattern) -> Fraction:
    """Norm squared of the hypergeometric-form U(3) polynomial (whose leading
    series coefficient is one); defined on that form's domain, h33 = 0 and
    h11 >= h23.  Differs from norm_sq_u3 by the square of the binomial
    relating the two leading coefficients."""
    p = require_valid(as_pattern(pattern))
    if p.n != 3:
        raise DomainError("requires a U(3) pattern")
    h13, h23, h33 = p.row(3)
    h12, _h22 = p.row(2)
    h11 = p.row(1)[0]
    if h33 != 0 or h11 < h23:
        raise DomainError("hypergeometric norm requires h33 = 0 and h11 >= h23")
    scale = math.comb(h12 - h23, h11 - h23)
    return norm_sq_u3(p) / (scale * scale)


# ---------------------------------------------------------------------------
# Branching kernel and the generic basis construction.
# ---------------------------------------------------------------------------


def _prefixes(n: int) -> list[tuple[int, ...]]:
    """All 0/1 words of length n-1 (the all-zero prefix included)."""
    return [tuple((i >> (n - 2 - k)) & 1 for k in range(n - 1))
            for i in range(2 ** (n - 1))]


def _phi_of_bits(bits: Sequence[int], slot: int) -> Monomial:
    return _phi_bits(bits, slot)


def _kernel_groups(n: int, z_mat, slot: int):
    """Coefficient groups of the level-n parameters in the generating
    function.  Group X(k) collects words ending in a one with popcount k,
    Y(k) words ending in a zero with popcount k; each word contributes its
    rows-1..k minor times its parameter monomial at levels below n."""
    groups_x: dict[int, ExactPoly] = {k: ExactPoly() for k in range(1, n + 1)}
    groups_y: dict[int, ExactPoly] = {k: ExactPoly() for k in range(1, n)}
    for prefix in _prefixes(n):
        phi = _phi_of_bits(prefix, slot)
        pc = sum(prefix)
        # word = prefix + (1,): minor on columns of ones incl. column n
        cols = tuple(i + 1 for i, b in enumerate(prefix) if b) + (n,)
        m = minor(z_mat, tuple(range(1, pc + 2)), cols)
        groups_x[pc + 1] = groups_x[pc + 1] + m * ExactPoly.monomial(phi)
        if pc >= 1:
            cols0 = tuple(i + 1 for i, b in enumerate(prefix) if b)
            m0 = minor(z_mat, tuple(range(1, pc + 1)), cols0)
            groups_y[pc] = groups_y[pc] + m0 * ExactPoly.monomial(phi)
    return groups_x, groups_y


def branching_kernel(label, branch, z_mat=None, slot: int = 0) -> ExactPoly:
    """Branching kernel of U(n) over U(n-1) for a label pair: the product
    of the X groups to the drop exponents L_k = h_{k,n} - h_{k,n-1} (with
    L_n = h_{nn}) and the Y groups to the interleaving exponents
    R_k = h_{k,n-1} - h_{k+1,n}, as a polynomial in the z entries and the
    level <= n-1 parameters x(.,.), y(.,.) tagged with `slot`."""
    label = as_label(label)
    branch = as_label(branch)
    _check_branching(label, branch)
    n = label.n
    if z_mat is None:
        z_mat = symbolic_matrix(n, slot)
    gx, gy = _kernel_groups(n, z_mat, slot)
    out = ExactPoly.const(1)
    for k in range(1, n):
        lk = label.h[k - 1] - branch.h[k - 1]
        rk = branch.h[k - 1] - label.h[k]
        if lk:
            out = out * gx[k] ** lk
        if rk:
            out = out * gy[k] ** rk
    if label.h[n - 1]:
        out = out * gx[n] ** label.h[n - 1]
    return out


@lru_cache(maxsize=None)
def _kernel_cached(top: tuple[int, ...], row2: tuple[int, ...]) -> ExactPoly:
    return branching_kernel(IrrepLabel(top), IrrepLabel(row2))


def _is_param(v) -> bool:
    return v[0] in ("x", "y")


@lru_cache(maxsize=None)
def _raw_basis(rows: tuple[tuple[int, ...], ...]) -> tuple[ExactPoly, Fraction]:
    """Kernel extraction for a pattern, no sign convention applied."""
    p = require_valid(GelfandPattern(rows))
    if p.n == 1:
        poly = ExactPoly.variable(zvar(1, 1)) ** p.top[0]
        return poly, bargmann_inner(poly, poly)
    kernel = _kernel_cached(p.top, p.row(p.n - 1))
    target = pattern_phi(p.lower())
    poly = kernel.extract_coefficient(target, _is_param)
    if poly.is_zero():
        raise DomainError(f"kernel extraction produced zero for {p!r}")
    return poly, bargmann_inner(poly, poly)


def _sign_fixed(p: GelfandPattern, poly: ExactPoly, norm_sq: Fraction) -> BasisPolynomial:
    if poly.leading_coefficient() < 0:
        poly = -poly
    return BasisPolynomial(p, poly, norm_sq)


def basis_from_branching(pattern) -> BasisPolynomial:
    """Gel'fand basis polynomial by branching-kernel extraction, for any
    valid U(n) pattern with n <= 4 (the generic oracle)."""
    p = require_valid(as_pattern(pattern))
    poly, nsq = _raw_basis(p.rows)
    return _sign_fixed(p, poly, nsq)


def u2_basis_closed(pattern) -> BasisPolynomial:
    """U(2) closed form: D1^(h11-h22) D2^(h12-h11) D12^(h22)."""
    p = require_valid(as_pattern(pattern))
    if p.n != 2:
        raise DomainError("u2_basis_closed requires a U(2) pattern")
    h12, h22 = p.row(2)
    h11 = p.row(1)[0]
    z = symbolic_matrix(2)
    poly = (minor(z, (1,), (1,)) ** (h11 - h22)
            * minor(z, (1,), (2,)) ** (h12 - h11)
            * minor(z, (1, 2), (1, 2)) ** h22)
    return _sign_fixed(p, poly, bargmann_inner(poly, poly))


def u3_basis_closed(pattern) -> BasisPolynomial:
    """U(3) closed form: the single binomial sum over i + j = h11 - h22 of
    C(h12-h23, i) C(h23-h22, j) D1^i D2^(h12-h23-i) D3^(h13-h12)
    D12^(h22-h33) D13^j D23^(h23-h22-j) D123^(h33)."""
    p = require_valid(as_pattern(pattern))
    if p.n != 3:
        raise DomainError("u3_basis_closed requires a U(3) pattern")
    h13, h23, h33 = p.row(3)
    h12, h22 = p.row(2)
    h11 = p.row(1)[0]
    z = symbolic_matrix(3)
    d1 = minor(z, (1,), (1,))
    d2 = minor(z, (1,), (2,))
    d3 = minor(z, (1,), (3,))
    d12 = minor(z, (1, 2), (1, 2))
    d13 = minor(z, (1, 2), (1, 3))
    d23 = minor(z, (1, 2), (2, 3))
    d123 = minor(z, (1, 2, 3), (1, 2, 3))
    r31, l32 = h12 - h23, h23 - h22
    fixed = d3 ** (h13 - h12) * d12 ** (h22 - h33) * d123 ** h33
    acc = ExactPoly()
    for i in range(0, min(r31, h11 - h22) + 1):
        j = h11 - h22 - i
        if not 0 <= j <= l32:
            continue
        c = math.comb(r31, i) * math.comb(l32, j)
        acc = acc + c * (d1 ** i * d2 ** (r31 - i) * d13 ** j * d23 ** (l32 - j))
    poly = acc * fixed
    return _sign_fixed(p, poly, bargmann_inner(poly, poly))


def u3_basis_hypergeometric(pattern) -> BasisPolynomial:
    """U(3) basis via the terminating 2F1 form, valid for h33 = 0 and
    h11 >= h23; other patterns are outside this form's domain."""
    p = require_valid(as_pattern(pattern))
    if p.n != 3:
        raise DomainError("u3_basis_hypergeometric requires a U(3) pattern")
    h13, h23, h33 = p.row(3)
    h12, h22 = p.row(2)
    h11 = p.row(1)[0]
    if h33 != 0 or h11 < h23:
        raise DomainError("hypergeometric form requires h33 = 0 and h11 >= h23")
    z = symbolic_matrix(3)
    d1 = minor(z, (1,), (1,))
    d2 = minor(z, (1,), (2,))
    d3 = minor(z, (1,), (3,))
    d12 = minor(z, (1, 2), (1, 2))
    d13 = minor(z, (1, 2), (1, 3))
    d23 = minor(z, (1, 2), (2, 3))
    a, b, c = h22 - h23, h11 - h12, h11 - h23 + 1
    kmax = min(h23 - h22, h12 - h11)
    acc = ExactPoly()
    coeff = Fraction(1)
    for k in range(kmax + 1):
        if k:
            coeff *= Fraction((a + k - 1) * (b + k - 1), (c + k - 1) * k)
        term = (d1 ** (h11 - h23 + k) * d2 ** (h12 - h11 - k)
                * d13 ** (h23 - h22 - k) * d23 ** k)
        acc = acc + coeff * term
    poly = acc * (d12 ** h22 * d3 ** (h13 - h12))
    return _sign_fixed(p, poly, bargmann_inner(poly, poly))


def _u4_interior(p: GelfandPattern):
    """Exponent data for the five-index U(4) sum: the level-4 group powers
    and the lower-pattern exponent tables."""
    top = p.row(4)
    row3 = p.row(3)
    l4 = [top[k] - row3[k] for k in range(3)] + [top[3]]
    r4 = [row3[k] - top[k + 1] for k in range(3)]
    lr = lr_exponents(p.lower())
    return l4, r4, lr


def u4_basis_closed(pattern) -> BasisPolynomial:
    """U(4) basis as a five-free-index sum of minor products.

    The trinomial groups of the branching kernel are expanded explicitly;
    after matching the lower pattern's parameter exponents, exactly five of
    the twelve trinomial indices remain free (a, c over the first group,
    d over the second, g, i over the third), all others being eliminated by
    the linear constraints.
    """
    p = require_valid(as_pattern(pattern))
    if p.n != 4:
        raise DomainError("u4_basis_closed requires a U(4) pattern")
    l4, r4, lr = _u4_interior(p)
    r31, l31 = lr.R[(3, 1)], lr.L[(3, 1)]
    l32, r32 = lr.L[(3, 2)], lr.R[(3, 2)]
    r21, l21 = lr.R[(2, 1)], lr.L[(2, 1)]
    z = symbolic_matrix(4)
    dm = {
        "1": minor(z, (1,), (1,)), "2": minor(z, (1,), (2,)),
        "3": minor(z, (1,), (3,)), "4": minor(z, (1,), (4,)),
        "12": minor(z, (1, 2), (1, 2)), "13": minor(z, (1, 2), (1, 3)),
        "23": minor(z, (1, 2), (2, 3)), "14": minor(z, (1, 2), (1, 4)),
        "24": minor(z, (1, 2), (2, 4)), "34": minor(z, (1, 2), (3, 4)),
        "123": minor(z, (1, 2, 3), (1, 2, 3)), "124": minor(z, (1, 2, 3), (1, 2, 4)),
        "134": minor(z, (1, 2, 3), (1, 3, 4)), "234": minor(z, (1, 2, 3), (2, 3, 4)),
        "1234": minor(z, (1, 2, 3, 4), (1, 2, 3, 4)),
    }
    fixed = dm["4"] ** l4[0] * dm["123"] ** r4[2] * dm["1234"] ** l4[3]
    acc = ExactPoly()
    for a in range(r4[0] + 1):
        for c in range(r4[0] - a + 1):
            b = r4[0] - a - c
            f = l31 - c
            if f < 0:
                continue
            for d in range(l4[1] + 1):
                e = l4[1] - d - f
                if e < 0:
                    continue
                for g in range(r4[1] + 1):
                    for i in range(r4[1] - g + 1):
                        h = r4[1] - g - i
                        l = r32 - i
                        j = r21 - a - d - g
                        if l < 0 or j < 0:
                            continue
                        k = l4[2] - j - l
                        if k < 0:
                            continue
                        if b + e + h + k != l21 or (a + b) + (d + e) != r31:
                            continue
                        if (g + h) + (j + k) != l32:
                            continue
                        coeff = (_multinom(r4[0], a, b, c) * _multinom(l4[1], d, e, f)
                                 * _multinom(r4[1], g, h, i) * _multinom(l4[2], j, k, l))
                        term = (dm["1"] ** a * dm["2"] ** b * dm["3"] ** c
                                * dm["14"] ** d * dm["24"] ** e * dm["34"] ** f
                                * dm["13"] ** g * dm["23"] ** h * dm["12"] ** i
                                * dm["134"] ** j * dm["234"] ** k * dm["124"] ** l)
                        acc = acc + coeff * term
    poly = acc * fixed
    if poly.is_zero():
        raise DomainError(f"empty five-index sum for {p!r}")
    return _sign_fixed(p, poly, bargmann_inner(poly, poly))


def _multinom(total: int, *parts: int) -> int:
    assert sum(parts) == total
    out = _fact(total)
    for q in parts:
        out //= _fact(q)
    return out


def u4_free_index_count(pattern) -> int:
    """Number of free indices left by the U(4) constraint system: twelve
    trinomial indices minus the rank of the ten linear constraints (four
    group totals and six parameter-matching equations), computed exactly."""
    p = require_valid(as_pattern(pattern))
    if p.n != 4:
        raise DomainError("u4_free_index_count requires a U(4) pattern")
    # Unknowns a..l in order; build constraint matrix rows.
    rows = [
        [1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],  # a+b+c
        [0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0],  # d+e+f
        [0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0],  # g+h+i
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1],  # j+k+l
        [1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0],  # y(3,1)
        [0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0],  # x(3,1)
        [0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0],  # x(3,2)
        [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1],  # y(3,2)
        [1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0],  # y(2,1)
        [0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0],  # x(2,1)
    ]
    mat = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    col = 0
    while rank < len(mat) and col < 12:
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[rank])]
        rank += 1
        col += 1
    return 12 - rank


# ---------------------------------------------------------------------------
# The combinatorial evaluation factors P_n(1).
# ---------------------------------------------------------------------------


def p_n_1(pattern) -> int:
    """Closed-form combinatorial factor of the basis recurrence.

    n=3: C(h12-h22, h11-h22).
    n=4 and n=5: the products of binomial coefficients obtained by expanding
    the parameter mirror of the branching kernel level by level.
    """
    p = require_valid(as_pattern(pattern))
    lr = lr_exponents(p)
    if p.n == 3:
        return math.comb(lr.R[(3, 1)] + lr.L[(3, 2)], lr.R[(2, 1)])
    if p.n == 4:
        low = lr_exponents(p.lower())
        a = lr.R[(4, 1)] + lr.L[(4, 2)]
        b = lr.R[(4, 2)] + lr.L[(4, 3)]
        return (math.comb(a, low.R[(3, 1)]) * math.comb(b, low.L[(3, 2)])
                * math.comb(low.R[(3, 1)] + low.L[(3, 2)], low.R[(2, 1)]))
    if p.n == 5:
        low = lr_exponents(p.lower())
        a1 = lr.R[(5, 1)] + lr.L[(5, 2)]
        a2 = lr.R[(5, 2)] + lr.L[(5, 3)]
        a3 = lr.R[(5, 3)] + lr.L[(5, 4)]
        head = (math.comb(a1, low.R[(4, 1)]) * math.comb(a2, low.R[(4, 2)])
                * math.comb(a3, low.L[(4, 3)]))
        return head * p_n_1(p.lower())
    raise DomainError("p_n_1 is defined for n in {3, 4, 5}")


def _mirror_groups(n: int, slot: int = 0):
    """Parameter mirrors of the kernel groups: the z-minor of each word is
    replaced by 1, leaving the sum of prefix parameter monomials per group."""
    sx: dict[int, ExactPoly] = {k: ExactPoly() for k in range(1, n + 1)}
    sy: dict[int, ExactPoly] = {k: ExactPoly() for k in range(1, n)}
    for prefix in _prefixes(n):
        phi = ExactPoly.monomial(_phi_of_bits(prefix, slot))
        pc = sum(prefix)
        sx[pc + 1] = sx[pc + 1] + phi
        if pc >= 1:
            sy[pc] = sy[pc] + phi
    return sx, sy


def p_n_1_oracle(pattern) -> int:
    """Brute-force evaluation factor: expand the parameter mirror of the
    branching kernel and extract the lower pattern's monomial."""
    p = require_valid(as_pattern(pattern))
    n = p.n
    if n < 3:
        raise DomainError("oracle defined for n >= 3")
    sx, sy = _mirror_groups(n)
    label = as_label(p.top)
    branch = as_label(p.row(n - 1))
    out = ExactPoly.const(1)
    for k in range(1, n):
        lk = label.h[k - 1] - branch.h[k - 1]
        rk = branch.h[k - 1] - label.h[k]
        out = out * sx[k] ** lk * sy[k] ** rk
    # The X(n) mirror is 1 (the all-ones prefix), so the determinant power
    # contributes nothing.
    target = pattern_phi(p.lower())
    val = out.coefficient(target)
    assert val.denominator == 1
    return int(val)


# ---------------------------------------------------------------------------
# Semi-maximal matrix-element evaluation on exact complex rational matrices.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DSemimaxValue:
    """Exact value of a semi-maximal matrix element: (re + i*im) where both
    parts are SqrtRational with a common radicand."""

    re: SqrtRational
    im: SqrtRational


def _gminor(mat: list[list[GaussianRational]], rows, cols) -> GaussianRational:
    if len(rows) == 1:
        return mat[rows[0] - 1][cols[0] - 1]
    acc = GaussianRational(Fraction(0))
    r = rows[0]
    for j, c in enumerate(cols):
        sub = _gminor(mat, rows[1:], cols[:j] + cols[j + 1:])
        term = mat[r - 1][c - 1] * sub
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def d_semimax_eval(label, branch, U) -> DSemimaxValue:
    """Matrix element between the semi-maximal state (row n-1 = branch,
    maximal below) and the highest-weight state, evaluated on an exact
    matrix U of Gaussian rationals.

    Value = prod_k (principal k-minor)^(h'_k - h_{k+1})
          * prod_k (rows 1..k, cols 1..k-1,n minor)^(h_k - h'_k)
          * sqrt(||max||^2 / ||semimax||^2).

    Unitarity of U is the caller's concern and is not enforced.
    """
    label = as_label(label)
    branch = as_label(branch)
    _check_branching(label, branch)
    n = label.n
    mat = [[v if isinstance(v, GaussianRational) else GaussianRational(Fraction(v))
            for v in row] for row in U]
    if len(mat) != n or any(len(row) != n for row in mat):
        raise ValueError(f"U must be {n}x{n}")
    val = GaussianRational(Fraction(1))
    for k in range(1, n):
        rk = branch.h[k - 1] - label.h[k]
        if rk:
            val = val * _gminor(mat, tuple(range(1, k + 1)),
                                tuple(range(1, k + 1))) ** rk
    for k in range(1, n + 1):
        lk = (label.h[k - 1] - branch.h[k - 1]) if k < n else label.h[n - 1]
        if lk:
            cols = tuple(range(1, k)) + (n,)
            val = val * _gminor(mat, tuple(range(1, k + 1)), cols) ** lk
    scale = SqrtRational.sqrt(norm_sq_max(label) / norm_sq_semimax(label, branch))
    return DSemimaxValue(re=scale * val.re, im=scale * val.im)


# ---------------------------------------------------------------------------
# Convenience record of the normalization constants for a label pair.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormConstants:
    A_n: Fraction
    A_ratio: Fraction
    N_semimax: SqrtRational
    N2: SqrtRational | None
    N3: SqrtRational | None


def norm_constants(label, branch) -> NormConstants:
    """Normalization constants attached to a branching pair.  N2/N3 are the
    normalizers of the semi-maximal pattern where the closed norm formulas
    apply (N3 requires h33 = 0 and h11 >= h23), else None."""
    label = as_label(label)
    branch = as_label(branch)
    sm = semimax_pattern(label, branch)
    n2 = n3 = None
    if label.n == 2:
        n2 = SqrtRational.sqrt(1 / norm_sq_u2(sm))
    if label.n == 3:
        try:
            n3 = SqrtRational.sqrt(1 / norm_sq_u3(sm))
        except DomainError:
            n3 = None
    return NormConstants(
        A_n=const_A(label),
        A_ratio=const_branching_ratio(label, branch),
        N_semimax=SqrtRational.sqrt(norm_sq_semimax(label, branch)),
        N2=n2,
        N3=n3,
    )


def kernel_phi_support(label, branch) -> set[Monomial]:
    """Set of parameter monomials occurring in the branching kernel; equals
    {pattern_phi(p) for p in patterns of the branch label} when the kernel is
    complete."""
    kernel = _kernel_cached(as_label(label).h, as_label(branch).h)
    out: set[Monomial] = set()
    for m in kernel.terms:
        out.add(tuple((v, e) for v, e in m if _is_param(v)))
    return out
