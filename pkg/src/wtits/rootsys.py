"""Restricted root systems, Weyl groups, reduced words, Bruhat-Chevalley order.

Roots are rational covectors on the coordinates of a Cartan subspace and
Weyl elements are rational matrices acting on those coordinates, so every
question asked here (length, descent, order) reduces to exact arithmetic.
Simple-root indices are 1-based throughout the public API, matching the
generator labels s1, s2, ... used everywhere else.

The groups handled are tiny (|W| <= a few thousand), so the algorithms
favor transparency over asymptotics: length is an inversion count over the
positive roots, reduced words come from smallest-descent stripping, and the
Bruhat-Chevalley order uses the classical descent recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact import (
    FracMatrix,
    FracVector,
    frac_identity,
    frac_mat_mul,
    frac_matrix,
    frac_vec_mat,
    solve_in_span,
)

Covector = tuple[Fraction, ...]


@dataclass(frozen=True)
class RootDatum:
    """A finite root system presented on explicit Cartan coordinates.

    `dim` is the number of coordinates (which may exceed `rank`, e.g. the n
    diagonal coordinates of sl(n) for a rank n-1 system).  `multiplicities`
    holds, per simple root, the dimension m of the rank-one flag sphere S^m
    attached to it; m > 1 forces the squared generator lift to be trivial.
    """

    rank: int
    dim: int
    simple_roots: tuple[Covector, ...]
    positive_roots: tuple[Covector, ...]
    multiplicities: tuple[int, ...]

    @staticmethod
    def create(
        simple_roots,
        positive_roots=None,
        multiplicities=None,
    ) -> "RootDatum":
        simples = tuple(tuple(Fraction(x) for x in root) for root in simple_roots)
        if not simples:
            raise ValueError("at least one simple root is required")
        dim = len(simples[0])
        if any(len(r) != dim for r in simples):
            raise ValueError("simple roots must share one coordinate dimension")
        if positive_roots is None:
            positives = _positive_closure(simples)
        else:
            positives = tuple(tuple(Fraction(x) for x in r) for r in positive_roots)
        mults = tuple(int(m) for m in (multiplicities or (1,) * len(simples)))
        if len(mults) != len(simples) or any(m < 1 for m in mults):
            raise ValueError("need one positive multiplicity per simple root")
        datum = RootDatum(len(simples), dim, simples, positives, mults)
        datum._validate()
        return datum

    def _validate(self) -> None:
        for root in self.positive_roots:
            coeffs = self.simple_coefficients(root)
            if coeffs is None or any(c < 0 for c in coeffs):
                raise ValueError(
                    f"positive root {root} is not a nonnegative combination of simple roots"
                )
        root_set = set(self.positive_roots) | {_neg(r) for r in self.positive_roots}
        for i in range(1, self.rank + 1):
            refl = _reflection_matrix(self, i)
            for root in root_set:
                if frac_vec_mat(root, refl) not in root_set:
                    raise ValueError(
                        f"reflection r{i} does not permute the root set"
                    )

    def simple_coefficients(self, root: Covector) -> FracVector | None:
        """Expansion of a covector over the simple roots, if one exists."""
        return solve_in_span(self.simple_roots, tuple(Fraction(x) for x in root))

    @property
    def negative_roots(self) -> frozenset[Covector]:
        return frozenset(_neg(r) for r in self.positive_roots)


def _neg(root: Covector) -> Covector:
    return tuple(-x for x in root)


def _positive_closure(simples: tuple[Covector, ...]) -> tuple[Covector, ...]:
    """Orbit of the simple roots under simple reflections, intersected with
    the positive cone."""
    datum_stub = RootDatum(len(simples), len(simples[0]), simples, simples, (1,) * len(simples))
    reflections = [_reflection_matrix(datum_stub, i) for i in range(1, len(simples) + 1)]
    roots = set(simples)
    frontier = set(simples)
    while frontier:
        new = set()
        for root in frontier:
            for refl in reflections:
                image = frac_vec_mat(root, refl)
                if image not in roots and _neg(image) not in roots:
                    coeffs = solve_in_span(simples, image)
                    if coeffs is not None and all(c >= 0 for c in coeffs):
                        new.add(image)
                    elif coeffs is not None and all(c <= 0 for c in coeffs):
                        new.add(_neg(image))
        roots |= new
        frontier = new
    return tuple(sorted(roots))


def _reflection_matrix(datum: RootDatum, i: int) -> FracMatrix:
    """Reflection about the hyperplane of the i-th simple root (1-based),
    H |-> H - alpha(H) * 2 H_alpha / <H_alpha, H_alpha>, with H_alpha the
    coordinate vector of alpha under the standard pairing."""
    alpha = datum.simple_roots[i - 1]
    norm = sum(x * x for x in alpha)
    if norm == 0:
        raise ValueError("simple root has zero length")
    n = datum.dim
    return tuple(
        tuple(
            Fraction(int(r == c)) - 2 * alpha[r] * alpha[c] / norm
            for c in range(n)
        )
        for r in range(n)
    )


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element as an exact linear map on Cartan coordinates."""

    datum: RootDatum
    matrix: FracMatrix
    inverse_matrix: FracMatrix = field(compare=False, repr=False)
    cached_length: int = field(compare=False)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.datum is not other.datum and self.datum != other.datum:
            raise ValueError("cannot multiply Weyl elements over different data")
        return make_weyl_element(
            self.datum,
            frac_mat_mul(self.matrix, other.matrix),
            frac_mat_mul(other.inverse_matrix, self.inverse_matrix),
        )

    def inverse(self) -> "WeylElement":
        return make_weyl_element(self.datum, self.inverse_matrix, self.matrix)

    def act_root(self, root: Covector) -> Covector:
        """Coadjoint action: (w . alpha)(H) = alpha(w^{-1} H)."""
        return frac_vec_mat(root, self.inverse_matrix)

    def is_identity(self) -> bool:
        return self.matrix == frac_identity(self.datum.dim)


def make_weyl_element(datum: RootDatum, matrix: FracMatrix, inverse: FracMatrix) -> WeylElement:
    """Validating constructor: checks that the map permutes the root set and
    counts its inversions once."""
    stub = WeylElement(datum, matrix, inverse, -1)
    negatives = datum.negative_roots
    root_set = set(datum.positive_roots) | negatives
    inversions = 0
    for root in datum.positive_roots:
        image = stub.act_root(root)
        if image not in root_set:
            raise ValueError("matrix does not permute the root set")
        if image in negatives:
            inversions += 1
    return WeylElement(datum, matrix, inverse, inversions)





def weyl_identity(datum: RootDatum) -> WeylElement:
    eye = frac_identity(datum.dim)
    return WeylElement(datum, eye, eye, 0)


@lru_cache(maxsize=None)
def simple_reflection(datum: RootDatum, i: int) -> WeylElement:
    """The reflection r_i attached to the i-th simple root (1-based)."""
    if not 1 <= i <= datum.rank:
        raise IndexError(f"simple root index {i} out of range 1..{datum.rank}")
    refl = _reflection_matrix(datum, i)
    return make_weyl_element(datum, refl, refl)


def length(w: WeylElement) -> int:
    """Number of positive roots sent negative by w."""
    return w.cached_length


def left_descents(w: WeylElement) -> list[int]:
    """Simple indices i with l(r_i w) < l(w), ascending."""
    return [
        i
        for i in range(1, w.datum.rank + 1)
        if length(simple_reflection(w.datum, i) * w) < length(w)
    ]


def reduced_word(w: WeylElement) -> list[int]:
    """Deterministic reduced word: strip the smallest left descent first."""
    word: list[int] = []
    current = w
    while length(current) > 0:
        i = left_descents(current)[0]
        word.append(i)
        current = simple_reflection(current.datum, i) * current
    return word


def evaluate_word(datum: RootDatum, word) -> WeylElement:
    result = weyl_identity(datum)
    for i in word:
        result = result * simple_reflection(datum, i)
    return result


def is_reduced(datum: RootDatum, word) -> bool:
    """True iff the word's product has length equal to the word's length."""
    word = list(word)
    return length(evaluate_word(datum, word)) == len(word)


@lru_cache(maxsize=None)
def bruhat_leq(v: WeylElement, w: WeylElement) -> bool:
    """Bruhat-Chevalley order via the classical descent recursion:
    for a left descent i of w,  v <= w  iff  (r_i v <= r_i w when i is also
    a descent of v, else v <= r_i w)."""
    if v.datum != w.datum:
        raise ValueError("elements live over different root data")
    if length(v) == 0:
        return True
    if length(v) > length(w):
        return False
    i = left_descents(w)[0]
    r = simple_reflection(w.datum, i)
    rv = r * v
    if length(rv) < length(v):
        return bruhat_leq(rv, r * w)
    return bruhat_leq(v, r * w)


@lru_cache(maxsize=None)
def weyl_group(datum: RootDatum) -> tuple[WeylElement, ...]:
    """All elements, enumerated by closure of the simple reflections and
    returned sorted by (length, matrix)."""
    gens = [simple_reflection(datum, i) for i in range(1, datum.rank + 1)]
    seen = {weyl_identity(datum).matrix: weyl_identity(datum)}
    frontier = list(seen.values())
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                prod = w * g
                if prod.matrix not in seen:
                    seen[prod.matrix] = prod
                    new.append(prod)
        frontier = new
    return tuple(sorted(seen.values(), key=lambda w: (length(w), w.matrix)))


def longest_element(datum: RootDatum) -> WeylElement:
    elements = weyl_group(datum)
    top = max(elements, key=length)
    ties = [w for w in elements if length(w) == length(top)]
    if len(ties) != 1:
        raise ValueError("longest element is not unique; not a finite Weyl group?")
    return top


def all_reduced_words(w: WeylElement) -> tuple[tuple[int, ...], ...]:
    """Every reduced word of w (small groups only; used for independence checks)."""
    if length(w) == 0:
        return ((),)
    words = []
    for i in left_descents(w):
        rest = simple_reflection(w.datum, i) * w
        words.extend((i,) + tail for tail in all_reduced_words(rest))
    return tuple(words)


def split_roots_by_H(datum: RootDatum, theta) -> tuple[tuple[Covector, ...], tuple[Covector, ...]]:
    """Partition the positive roots by a chamber-closure direction H encoded
    through Theta = {i : alpha_i(H) = 0}.

    Returns (roots vanishing on H, roots positive on H); the first set is
    exactly the positive roots supported on the simple roots in Theta.
    """
    theta = set(theta)
    if not theta <= set(range(1, datum.rank + 1)):
        raise IndexError(f"Theta {sorted(theta)} not within 1..{datum.rank}")
    zero, positive = [], []
    for root in datum.positive_roots:
        coeffs = datum.simple_coefficients(root)
        assert coeffs is not None
        support = {j + 1 for j, c in enumerate(coeffs) if c != 0}
        (zero if support <= theta else positive).append(root)
    return tuple(zero), tuple(positive)
