"""Exact sparse multivariate polynomials and integer linear forms.

Every equivariant computation in this package happens inside the ring
``R[x1, ..., xk]`` with ``R = Z`` or ``Q``, where ``k`` is the rank of the
acting torus (in affine cases the last slot is the loop-rotation
coordinate).  This module provides that ring with exact rational
arithmetic:

* :class:`Weight` -- an integer linear form, the label type for graph
  edges; weights have polynomial degree 1 (cohomological degree 2).
* :class:`Polynomial` -- sparse polynomial keyed by exponent vectors with
  :class:`fractions.Fraction` coefficients; zero coefficients are never
  stored and printing follows a fixed graded-lexicographic order, so text
  output is deterministic.
* :func:`divide_by_weight` -- exact division by a linear form, the
  primitive that all divisibility (congruence) checks reduce to.
* :func:`solve_congruences` -- the homogeneous Chinese-remainder solver
  used to propagate generator values up a graph.

Z-mode is a certificate layered on Q computation: solving happens over the
rationals and integrality of the result is checked afterwards.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    NoSolutionError,
    NonIntegralError,
    NonUniqueError,
    NotDivisibleError,
    PolynomialParseError,
    ZeroWeightError,
)

__all__ = [
    "Weight",
    "Polynomial",
    "add",
    "mul",
    "scale",
    "divide_by_weight",
    "pairwise_coprime",
    "solve_congruences",
    "monomials",
    "parse_polynomial",
    "solve_linear_system",
    "nullspace_basis",
]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected an int or Fraction coefficient, got {type(c).__name__}")


def _normalize_mode(mode: str) -> str:
    m = str(mode).upper()
    if m not in ("Z", "Q"):
        raise ValueError(f"mode must be 'Z' or 'Q', got {mode!r}")
    return m


@dataclass(frozen=True)
class Weight:
    """An integer linear form ``c1*x1 + ... + ck*xk``.

    Weights are the degree-2 equivariant classes that label graph edges.
    The zero form is representable (so that arithmetic stays total) but is
    rejected by every operation that uses a weight as a divisor.

    >>> str(Weight((1, -2)))
    'x1 - 2*x2'
    >>> Weight((2, 4)).is_primitive()
    False
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def content(self) -> int:
        """gcd of the entries (0 for the zero form)."""
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        return g

    def is_primitive(self) -> bool:
        return self.content() == 1

    def __neg__(self) -> "Weight":
        return Weight(tuple(-c for c in self.coeffs))

    def proportional(self, other: "Weight") -> bool:
        """True when the two forms are parallel over Q (zero counts as parallel)."""
        n = len(self.coeffs)
        if n != len(other.coeffs):
            raise ValueError("weights live in different tori")
        for i in range(n):
            for j in range(i + 1, n):
                if self.coeffs[i] * other.coeffs[j] != self.coeffs[j] * other.coeffs[i]:
                    return False
        return True

    def to_polynomial(self) -> "Polynomial":
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c:
                e = [0] * len(self.coeffs)
                e[i] = 1
                terms[tuple(e)] = Fraction(c)
        return Polynomial(len(self.coeffs), terms)

    def __str__(self) -> str:
        return str(self.to_polynomial())


def _grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients.

    Instances are immutable by convention: no method mutates ``terms``
    after construction, so values may be shared freely across threads.

    >>> x = Polynomial.variable(0, 2)
    >>> y = Polynomial.variable(1, 2)
    >>> str((x - y) * (x + y))
    'x1^2 - x2^2'
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            c = _as_fraction(c)
            if c == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has length != {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            clean[exps] = c
        object.__setattr__(self, "nvars", int(nvars))
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(1)})

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: _as_fraction(c)})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        e = [0] * nvars
        e[index] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_degree(self) -> int | None:
        """The common total degree of all terms, or None if mixed or zero."""
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self, d: int | None = None) -> bool:
        """Zero counts as homogeneous of every degree."""
        if not self.terms:
            return True
        h = self.homogeneous_degree()
        if h is None:
            return False
        return d is None or h == d

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficient(self, exps: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending graded-lexicographic order."""
        return [(e, self.terms[e]) for e in sorted(self.terms, key=_grlex_key, reverse=True)]

    # -- arithmetic -------------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                return Polynomial.zero(self.nvars)
            return Polynomial(self.nvars, {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = Polynomial.one(self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def scale(c, a: Polynomial) -> Polynomial:
    return a * _as_fraction(c)


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given total degree, in descending lex order.

    >>> monomials(2, 2)
    [(2, 0), (1, 1), (0, 2)]
    """
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    return out


# -- division by a linear form -------------------------------------------


def divide_by_weight(p: Polynomial, w: Weight) -> Polynomial:
    """Exact quotient ``p / w`` for a nonzero linear form ``w``.

    Long division with respect to the first variable carrying a nonzero
    coefficient in ``w``; the remainder is free of that variable and must
    vanish for divisibility, which is equivalent to substituting the
    solution of ``w = 0`` into ``p``.

    Raises :class:`NotDivisibleError` when ``w`` does not divide ``p`` and
    :class:`ZeroWeightError` for the zero form.

    >>> x = Polynomial.variable(0, 2); y = Polynomial.variable(1, 2)
    >>> str(divide_by_weight(x * x - y * y, Weight((1, -1))))
    'x1 + x2'
    """
    if w.is_zero():
        raise ZeroWeightError("cannot divide by the zero weight")
    if p.nvars != w.rank:
        raise ValueError("polynomial and weight live in different rings")
    if p.is_zero():
        return p
    j = next(i for i, c in enumerate(w.coeffs) if c != 0)
    cj = Fraction(w.coeffs[j])
    wterms = w.to_polynomial().terms

    rem = dict(p.terms)
    quot: dict[tuple[int, ...], Fraction] = {}
    while True:
        top = max((e[j] for e in rem), default=0)
        if top == 0:
            break
        for e in [e for e in rem if e[j] == top]:
            c = rem[e]
            qe = list(e)
            qe[j] -= 1
            qe = tuple(qe)
            qc = c / cj
            quot[qe] = quot.get(qe, Fraction(0)) + qc
            # subtract (qc * x^qe) * w from the remainder
            for we, wc in wterms.items():
                t = tuple(a + b for a, b in zip(qe, we))
                s = rem.get(t, Fraction(0)) - qc * wc
                if s == 0:
                    rem.pop(t, None)
                else:
                    rem[t] = s
    if rem:
        raise NotDivisibleError(f"{w} does not divide {p}")
    return Polynomial(p.nvars, quot)


def pairwise_coprime(weights, mode: str = "Q") -> bool:
    """Pairwise coprimality of nonzero linear forms in R[x1..xk].

    In Q-mode this is non-collinearity of every pair.  In Z-mode every
    weight must additionally be primitive (content 1): for primitive
    integer forms, coprimality in Z[x1..xk] is exactly non-collinearity.
    """
    mode = _normalize_mode(mode)
    ws = list(weights)
    for w in ws:
        if w.is_zero():
            raise ZeroWeightError("coprimality is undefined for the zero weight")
    if mode == "Z" and any(not w.is_primitive() for w in ws):
        return False
    for i in range(len(ws)):
        for j in range(i + 1, len(ws)):
            if ws[i].proportional(ws[j]):
                return False
    return True


# -- exact linear algebra ------------------------------------------------


class _InconsistentSystem(Exception):
    pass


def _rref(rows: list[list[Fraction]]) -> list[int]:
    """In-place reduced row echelon form; returns the pivot column list."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][col]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots


def solve_linear_system(rows, rhs):
    """Solve ``rows * x = rhs`` exactly over Q.

    Returns ``(particular, nullspace)`` where ``particular`` is one
    solution (free variables set to 0) and ``nullspace`` is a list of
    basis vectors of the homogeneous solution space.  Raises
    ``_InconsistentSystem`` internally when there is no solution.
    """
    if not rows:
        raise ValueError("empty system")
    ncols = len(rows[0])
    aug = [[_as_fraction(v) for v in row] + [_as_fraction(b)] for row, b in zip(rows, rhs)]
    pivots = _rref(aug)
    if ncols in pivots:
        raise _InconsistentSystem()
    particular = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        particular[col] = aug[r][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    null = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, col in enumerate(pivots):
            vec[col] = -aug[r][fc]
        null.append(vec)
    return particular, null


def nullspace_basis(rows, ncols):
    """Deterministic basis of the nullspace of a homogeneous system."""
    if not rows:
        return [
            [Fraction(1) if i == j else Fraction(0) for i in range(ncols)]
            for j in range(ncols)
        ]
    _, null = solve_linear_system(rows, [Fraction(0)] * len(rows))
    return null


# -- congruence solving ----------------------------------------------------


def solve_congruences(constraints, degree: int, mode: str = "Q") -> Polynomial:
    """Unique homogeneous ``h`` of the given degree with ``h == p_i (mod a_i)``.

    ``constraints`` is a list of (Weight, Polynomial) pairs with pairwise
    coprime weights and each polynomial zero or homogeneous of ``degree``.
    The witnesses ``g_i`` with ``h - p_i = a_i * g_i`` are solved for
    alongside ``h`` as one exact linear system over Q in the monomial
    coefficients.  Uniqueness holds whenever the number of constraints
    exceeds ``degree`` (two solutions differ by a multiple of the product
    of the weights, whose degree is then too large); otherwise
    :class:`NonUniqueError` reports the dimension of the solution space.

    In Z-mode the unique solution must have integer coefficients, else
    :class:`NonIntegralError` carries it as witness.
    """
    mode = _normalize_mode(mode)
    constraints = list(constraints)
    if not constraints:
        raise ValueError("at least one congruence is required")
    nvars = constraints[0][0].rank
    for w, p in constraints:
        if w.is_zero():
            raise ZeroWeightError("congruence modulus must be nonzero")
        if w.rank != nvars or p.nvars != nvars:
            raise ValueError("mixed ranks in congruence system")
        if not p.is_homogeneous(degree):
            raise ValueError(f"residue {p} is not homogeneous of degree {degree}")
    if not pairwise_coprime([w for w, _ in constraints], "Q"):
        raise ValueError("congruence moduli must be pairwise coprime")

    mons_h = monomials(nvars, degree)
    mons_g = monomials(nvars, degree - 1)
    h_index = {e: i for i, e in enumerate(mons_h)}
    g_index = {e: i for i, e in enumerate(mons_g)}
    nh, ng = len(mons_h), len(mons_g)
    ncols = nh + ng * len(constraints)

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for ci, (w, p) in enumerate(constraints):
        base = nh + ci * ng
        for e in mons_h:
            row = [Fraction(0)] * ncols
            row[h_index[e]] = Fraction(1)
            # coefficient of monomial e in  w * g_i
            for t, wc in enumerate(w.coeffs):
                if wc == 0 or e[t] == 0:
                    continue
                ge = list(e)
                ge[t] -= 1
                row[base + g_index[tuple(ge)]] = -Fraction(wc)
            rows.append(row)
            rhs.append(p.coefficient(e))

    try:
        particular, null = solve_linear_system(rows, rhs)
    except _InconsistentSystem:
        raise NoSolutionError("congruence system has no homogeneous solution") from None
    if null:
        raise NonUniqueError(
            f"congruence system underdetermined in degree {degree}", dimension=len(null)
        )
    h = Polynomial(nvars, {e: particular[h_index[e]] for e in mons_h})
    if mode == "Z" and not h.is_integral():
        raise NonIntegralError(f"solution {h} is not integral", witness=h)
    return h


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"([+\-*^]|x\d+|\d+(?:/\d+)?)|\s+|(.)")


def _tokenize(text: str) -> list[str]:
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(2) is not None:
            raise PolynomialParseError(f"unexpected character {m.group(2)!r} in {text!r}")
        if m.group(1) is not None:
            tokens.append(m.group(1))
    return tokens


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    """Parse the textual grammar emitted by ``str(Polynomial)``.

    >>> str(parse_polynomial("3*x1^2*x2 - x3", 3))
    '3*x1^2*x2 - x3'
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialParseError("empty polynomial text")
    pos = 0
    terms: dict[tuple[int, ...], Fraction] = {}

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def read_factor(exps: list[int]) -> Fraction | None:
        tok = take()
        if tok.startswith("x"):
            idx = int(tok[1:]) - 1
            if not 0 <= idx < nvars:
                raise PolynomialParseError(f"variable {tok} out of range for rank {nvars}")
            e = 1
            if peek() == "^":
                take()
                nxt = peek()
                if nxt is None or not nxt.isdigit():
                    raise PolynomialParseError("expected integer exponent after '^'")
                e = int(take())
            exps[idx] += e
            return None
        if re.fullmatch(r"\d+(/\d+)?", tok):
            return Fraction(tok)
        raise PolynomialParseError(f"unexpected token {tok!r}")

    while pos < len(tokens):
        sign = Fraction(1)
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        if peek() is None:
            raise PolynomialParseError("dangling sign")
        coeff = Fraction(1)
        exps = [0] * nvars
        while True:
            c = read_factor(exps)
            if c is not None:
                coeff *= c
            if peek() == "*":
                take()
                continue
            break
        e = tuple(exps)
        total = sign * coeff + terms.get(e, Fraction(0))
        if total == 0:
            terms.pop(e, None)
        else:
            terms[e] = total
    return Polynomial(nvars, terms)
