"""Generalized Cartan matrices, real roots, and minimal coset representatives.

The Weyl group of a generalized Cartan matrix acts on two integer lattices:

* root coordinates, ``v`` in the basis of simple roots, where
  ``r_i(v) = v - (A v)_i e_i`` with ``A`` the Cartan matrix;
* dual coordinates, ``mu_j = <mu, alpha_j^vee>``, where
  ``r_i(mu)_j = mu_j - mu_i * a_{ji}``.

Group elements are never normalized by word rewriting.  Instead they are
canonicalized by their action on a generic dominant rational vector whose
stabilizer is exactly the parabolic subgroup ``W_J``: two words land in
the same coset of ``W/W_J`` precisely when they move that vector to the
same place.  This is exact, deterministic, and works uniformly for finite
and affine types.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InvalidParabolicError

__all__ = [
    "GCM",
    "Root",
    "CosetRep",
    "reflect",
    "reflect_dual",
    "classify",
    "marks",
    "real_roots",
    "reflection_word",
    "enumerate_cosets",
    "coset_orbit",
    "generic_dominant_vector",
    "apply_word_dual",
    "reflection_of_root",
    "word_matrix",
]

_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
)


@dataclass(frozen=True)
class GCM:
    """A generalized Cartan matrix: 2 on the diagonal, non-positive integers
    off it, and ``a_ij = 0`` exactly when ``a_ji = 0``."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("Cartan matrix must be square")
        for i in range(n):
            if rows[i][i] != 2:
                raise ValueError(f"diagonal entry a[{i}][{i}] must be 2")
            for j in range(n):
                if i != j:
                    if rows[i][j] > 0:
                        raise ValueError(f"off-diagonal entry a[{i}][{j}] must be <= 0")
                    if (rows[i][j] == 0) != (rows[j][i] == 0):
                        raise ValueError(f"a[{i}][{j}] and a[{j}][{i}] must vanish together")

    @property
    def n(self) -> int:
        return len(self.rows)

    def a(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def submatrix(self, keep) -> "GCM":
        keep = list(keep)
        return GCM(tuple(tuple(self.rows[i][j] for j in keep) for i in keep))


@dataclass(frozen=True)
class Root:
    """A real root in simple-root coordinates; all entries share one sign."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @property
    def height(self) -> int:
        return sum(self.coords)

    def is_positive(self) -> bool:
        return any(self.coords) and all(c >= 0 for c in self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class CosetRep:
    """A minimal-length coset representative as a reduced word of simple
    reflection indices (0-based)."""

    word: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(i) for i in self.word))

    @property
    def length(self) -> int:
        return len(self.word)

    def label(self) -> str:
        if not self.word:
            return "e"
        return " ".join(f"s{i}" for i in self.word)

    def __str__(self) -> str:
        return self.label()


def reflect(gcm: GCM, i: int, v):
    """Simple reflection on root coordinates: ``r_i(v) = v - (A v)_i e_i``.

    >>> a2 = GCM(((2, -1), (-1, 2)))
    >>> reflect(a2, 0, (0, 1))
    (1, 1)
    >>> reflect(a2, 0, reflect(a2, 0, (3, 5)))
    (3, 5)
    """
    if not 0 <= i < gcm.n:
        raise IndexError(f"simple index {i} out of range")
    pairing = sum(gcm.a(i, j) * v[j] for j in range(gcm.n))
    out = list(v)
    out[i] = out[i] - pairing
    return tuple(out)


def reflect_dual(gcm: GCM, i: int, mu):
    """Simple reflection on dual coordinates ``mu_j = <mu, alpha_j^vee>``."""
    if not 0 <= i < gcm.n:
        raise IndexError(f"simple index {i} out of range")
    return tuple(mu[j] - mu[i] * gcm.a(j, i) for j in range(gcm.n))


def apply_word_dual(gcm: GCM, word, mu):
    """Act by ``s_{w1} ... s_{wl}`` on dual coordinates (rightmost first)."""
    for i in reversed(tuple(word)):
        mu = reflect_dual(gcm, i, mu)
    return mu


def _det(rows) -> Fraction:
    m = [[Fraction(v) for v in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def _principal_minors_positive(gcm: GCM, proper_only: bool = False) -> bool:
    n = gcm.n
    for mask in range(1, 2**n):
        keep = [i for i in range(n) if mask >> i & 1]
        if proper_only and len(keep) == n:
            continue
        sub = [[gcm.a(i, j) for j in keep] for i in keep]
        if _det(sub) <= 0:
            return False
    return True


def classify(gcm: GCM) -> str:
    """Sort a Cartan matrix into ``finite``, ``affine`` or ``indefinite``.

    Finite type means all principal minors are positive; affine means the
    full determinant vanishes, every proper principal minor is positive,
    and the kernel is spanned by a strictly positive vector.
    """
    if _principal_minors_positive(gcm):
        return "finite"
    if _det(gcm.rows) == 0 and _principal_minors_positive(gcm, proper_only=True):
        try:
            marks(gcm)
        except ValueError:
            return "indefinite"
        return "affine"
    return "indefinite"


def marks(gcm: GCM) -> tuple[int, ...]:
    """The primitive positive integer vector spanning the kernel of an
    affine Cartan matrix; its entries are the coefficients of the simple
    roots in the null root delta."""
    from .polyring import nullspace_basis

    rows = [[Fraction(v) for v in row] for row in gcm.rows]
    null = nullspace_basis(rows, gcm.n)
    if len(null) != 1:
        raise ValueError("Cartan matrix kernel is not one-dimensional")
    vec = null[0]
    denom = 1
    for v in vec:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    ints = [v // g for v in ints]
    if all(v < 0 for v in ints):
        ints = [-v for v in ints]
    if any(v <= 0 for v in ints):
        raise ValueError("kernel vector is not strictly positive")
    return tuple(ints)


def real_roots(gcm: GCM, height_cutoff: int) -> list[Root]:
    """All positive real roots of height at most ``height_cutoff``.

    Real roots are the Weyl images of simple roots; since the descent chain
    of any positive real root decreases height monotonically, closing the
    set of simple roots under reflections inside the height ball finds
    every one of them exactly once.

    >>> [str(r) for r in real_roots(GCM(((2, -1), (-1, 2))), 2)]
    ['(0,1)', '(1,0)', '(1,1)']
    """
    if height_cutoff < 1:
        return []
    seen: set[tuple[int, ...]] = set()
    frontier: list[tuple[int, ...]] = []
    for i in range(gcm.n):
        e = tuple(1 if j == i else 0 for j in range(gcm.n))
        seen.add(e)
        frontier.append(e)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(gcm.n):
                w = reflect(gcm, i, v)
                if w in seen or any(c < 0 for c in w) or sum(w) > height_cutoff:
                    continue
                seen.add(w)
                nxt.append(w)
        frontier = nxt
    return [Root(c) for c in sorted(seen, key=lambda c: (sum(c), c))]


def reflection_word(gcm: GCM, root: Root) -> tuple[int, ...]:
    """A word for the reflection ``r_beta`` of a positive real root.

    Computed by height descent: if ``beta`` is simple this is ``(i,)``,
    otherwise some simple reflection shortens it and
    ``r_beta = r_i r_{r_i(beta)} r_i``.  Raises ``ValueError`` when the
    input is not a positive real root.
    """
    coords = root.coords
    if any(c < 0 for c in coords) or not any(coords):
        raise ValueError(f"{root} is not a positive root")
    if sum(coords) == 1:
        return (coords.index(1),)
    for i in range(gcm.n):
        image = reflect(gcm, i, coords)
        if sum(image) < sum(coords) and all(c >= 0 for c in image) and any(image):
            inner = reflection_word(gcm, Root(image))
            return (i,) + inner + (i,)
    raise ValueError(f"{root} is not a real root")


def generic_dominant_vector(gcm: GCM, parabolic) -> tuple[Fraction, ...]:
    """A dominant rational vector with stabilizer exactly ``W_J``.

    Entries indexed by ``J`` vanish; the remaining slots carry strictly
    decreasing prime reciprocals.  Dominance makes the stabilizer the
    parabolic generated by the simple reflections that fix it, which is
    exactly ``W_J``; an explicit fix/move check guards the construction.
    """
    J = frozenset(parabolic)
    if not J <= set(range(gcm.n)):
        raise InvalidParabolicError(f"parabolic {sorted(J)} not a subset of 0..{gcm.n - 1}")
    free = [i for i in range(gcm.n) if i not in J]
    if len(free) > len(_PRIMES):
        raise ValueError("rank too large for the built-in prime table")
    mu = [Fraction(0)] * gcm.n
    for slot, i in enumerate(free):
        mu[i] = Fraction(1, _PRIMES[slot])
    mu = tuple(mu)
    for i in range(gcm.n):
        fixed = reflect_dual(gcm, i, mu) == mu
        if fixed != (i in J):
            raise ValueError("generic vector has the wrong stabilizer")
    return mu


def coset_orbit(gcm: GCM, parabolic, length_cutoff: int):
    """Breadth-first orbit of the generic vector under left multiplication.

    Returns ``(reps, table)`` where ``reps`` is the list of
    ``(CosetRep, vector)`` pairs sorted by (length, word) and ``table``
    maps each orbit vector back to its representative.  Words are built by
    prepending the discovering generator, so each is a shortest path in
    the orbit graph and hence a reduced word for a minimal-length coset
    representative.
    """
    if length_cutoff < 0:
        raise ValueError("length cutoff must be non-negative")
    mu = generic_dominant_vector(gcm, parabolic)
    table: dict[tuple[Fraction, ...], CosetRep] = {mu: CosetRep(())}
    reps: list[tuple[CosetRep, tuple[Fraction, ...]]] = [(CosetRep(()), mu)]
    shell: list[tuple[tuple[int, ...], tuple[Fraction, ...]]] = [((), mu)]
    for _ in range(length_cutoff):
        nxt: list[tuple[tuple[int, ...], tuple[Fraction, ...]]] = []
        for word, vec in sorted(shell):
            for i in range(gcm.n):
                v2 = reflect_dual(gcm, i, vec)
                if v2 in table:
                    continue
                rep = CosetRep((i,) + word)
                table[v2] = rep
                reps.append((rep, v2))
                nxt.append((rep.word, v2))
        if not nxt:
            break
        shell = nxt
    reps.sort(key=lambda rv: (rv[0].length, rv[0].word))
    return reps, table


def enumerate_cosets(gcm: GCM, parabolic, length_cutoff: int) -> list[CosetRep]:
    """All minimal-length representatives of ``W/W_J`` up to the cutoff,
    sorted by (length, word).

    >>> [r.label() for r in enumerate_cosets(GCM(((2, -1), (-1, 2))), (), 1)]
    ['e', 's0', 's1']
    """
    reps, _ = coset_orbit(gcm, parabolic, length_cutoff)
    return [r for r, _ in reps]


def reflection_of_root(gcm: GCM, root: Root, w: CosetRep, parabolic) -> CosetRep | None:
    """The minimal representative of ``[r_beta w]``, or None when the
    reflection does not move the coset."""
    mu = generic_dominant_vector(gcm, parabolic)
    vw = apply_word_dual(gcm, w.word, mu)
    rword = reflection_word(gcm, root)
    v2 = apply_word_dual(gcm, rword, vw)
    if v2 == vw:
        return None
    bound = w.length + len(rword)
    _, table = coset_orbit(gcm, parabolic, bound)
    rep = table.get(v2)
    if rep is None:
        raise RuntimeError("reflected coset not found within the length bound")
    return rep


def word_matrix(gcm: GCM, word) -> tuple[tuple[int, ...], ...]:
    """Matrix of a word in the root-coordinate representation (columns are
    the images of the simple roots).  Used to cross-check coset dedup."""
    n = gcm.n
    cols = []
    for j in range(n):
        v = tuple(1 if t == j else 0 for t in range(n))
        for i in reversed(tuple(word)):
            v = reflect(gcm, i, v)
        cols.append(v)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
