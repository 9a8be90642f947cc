"""The extended Bruhat order on U and its quotient orders.

The order is generated by single "drop" covers: write u canonically as
s_1 ... s_d c with the deterministic reduced word of pi(u); every position
whose removal leaves a reduced word contributes two covered elements, with
the dropped letter replaced by the identity or by its square.  Reachability
through such covers is the extended Bruhat order.

Because this order is the load-bearing piece of the whole package, the
down-set of every element is always computed twice: once as the transitive
closure of covers (each step re-derived from a fresh reduced word), and
once by a subset-BFS over the valid drop patterns of one fixed reduced
expression.  The two routes must agree -- a disagreement raises instead of
returning silently wrong data.  This redundancy is permanent, not test
scaffolding.

Quotient orders on right cosets (Morse components, control sets) are
evaluated by brute force over coset members and their partial-order axioms
are verified on the spot.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from typing import Iterable, Sequence

from .errors import InvariantViolation, ReducedLiftUnavailable
from .rootsys import all_reduced_words, is_reduced, length
from .utits import (
    Coset,
    FiniteGroupTable,
    UElement,
    canonical_form,
    cosets,
    lift_word,
    project_to_W,
)


# -- covers and the order ------------------------------------------------------


def down_covers(u: UElement) -> frozenset[UElement]:
    """Elements covered by u: one drop position at a time, the dropped
    letter replaced by 1 or by its square (the two coincide when the
    squared generator is trivial)."""
    word, c = canonical_form(u)
    datum = u.preset.root_datum
    out = set()
    for pos in range(len(word)):
        shorter = word[:pos] + word[pos + 1 :]
        if not is_reduced(datum, shorter):
            continue
        for exponent in (0, 2):
            factors = [
                u.preset.generator(letter) ** (exponent if k == pos else 1)
                for k, letter in enumerate(word)
            ]
            prod = u.preset.identity()
            for f in factors:
                prod = prod * f
            out.add(prod * c)
    return frozenset(out)


def down_set_from_word(u: UElement, word: Sequence[int]) -> frozenset[UElement]:
    """Subset-BFS route: all elements obtained from the given reduced
    expression of pi(u) by dropping positions one at a time (every
    intermediate word reduced) and choosing exponent 0 or 2 at each dropped
    position.  Includes u itself."""
    preset = u.preset
    datum = preset.root_datum
    word = tuple(word)
    d = len(word)
    if not is_reduced(datum, word):
        raise ValueError(f"{word} is not a reduced expression")
    lift = lift_word(preset, word)
    c = lift.inverse() * u
    if not project_to_W(c).is_identity():
        raise ValueError("word does not project to pi(u)")

    full = frozenset(range(d))
    reachable = {full}
    frontier = [full]
    while frontier:
        new = []
        for remaining in frontier:
            for pos in remaining:
                smaller = remaining - {pos}
                if smaller in reachable:
                    continue
                if is_reduced(datum, [word[j] for j in sorted(smaller)]):
                    reachable.add(frozenset(smaller))
                    new.append(frozenset(smaller))
        frontier = new

    elements = set()
    gens = [preset.generator(i) for i in word]
    for remaining in reachable:
        dropped = [j for j in range(d) if j not in remaining]
        for bits in iter_product((0, 2), repeat=len(dropped)):
            exponents = [1] * d
            for j, k in zip(dropped, bits):
                exponents[j] = k
            prod = preset.identity()
            for g, k in zip(gens, exponents):
                prod = prod * (g**k)
            elements.add(prod * c)
    return frozenset(elements)


def down_set(u: UElement) -> frozenset[UElement]:
    """{u' : u' <= u}, computed by both routes and cross-checked."""
    cache = u.preset._caches.setdefault("down_set", {})
    hit = cache.get(u.matrix)
    if hit is not None:
        return hit
    via_covers = {u}
    for v in down_covers(u):
        via_covers |= down_set(v)
    word, _ = canonical_form(u)
    via_bfs = down_set_from_word(u, word)
    if via_covers != via_bfs:
        raise InvariantViolation(
            "down-set routes disagree for "
            f"{u.matrix}: covers give {len(via_covers)} elements, "
            f"drop-pattern BFS gives {len(via_bfs)}"
        )
    result = frozenset(via_covers)
    cache[u.matrix] = result
    return result


def down_set_all_words(u: UElement) -> list[frozenset[UElement]]:
    """The subset-BFS down-set for every reduced word of pi(u); used to
    exercise word-independence of the order."""
    return [down_set_from_word(u, w) for w in all_reduced_words(project_to_W(u))]


def extended_leq(u_lo: UElement, u_hi: UElement) -> bool:
    """The extended Bruhat order (reflexive)."""
    if u_lo.preset is not u_hi.preset:
        raise ValueError("elements come from different presets")
    return u_lo in down_set(u_hi)


# -- Hasse diagrams -----------------------------------------------------------


def transitive_reduction(
    n: int, edges: Iterable[tuple[int, int]]
) -> frozenset[tuple[int, int]]:
    """Minimal edge set with the same reachability; edges are (lower, upper)."""
    edges = set(edges)
    children: dict[int, list[int]] = {i: [] for i in range(n)}
    for lo, hi in edges:
        children[hi].append(lo)
    strictly_below: dict[int, frozenset[int]] = {}

    def descend(i: int) -> frozenset[int]:
        if i not in strictly_below:
            out: set[int] = set()
            for lo in children[i]:
                out.add(lo)
                out |= descend(lo)
            strictly_below[i] = frozenset(out)
        return strictly_below[i]

    reduced = set()
    for lo, hi in edges:
        redundant = any(
            mid != lo and lo in descend(mid) for mid in children[hi]
        )
        if not redundant:
            reduced.add((lo, hi))
    return frozenset(reduced)


class Poset:
    """A finite poset given by elements and covering pairs (lower, upper)."""

    def __init__(self, elements: Sequence, covers: Iterable[tuple[int, int]]):
        self.elements = tuple(elements)
        self.covers = frozenset(covers)
        n = len(self.elements)
        for lo, hi in self.covers:
            if not (0 <= lo < n and 0 <= hi < n) or lo == hi:
                raise ValueError(f"bad cover pair ({lo}, {hi})")
        self._down: dict[int, frozenset[int]] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def _down_map(self) -> dict[int, frozenset[int]]:
        if self._down is None:
            children: dict[int, list[int]] = {i: [] for i in range(len(self.elements))}
            for lo, hi in self.covers:
                children[hi].append(lo)
            memo: dict[int, frozenset[int]] = {}
            state: dict[int, int] = {}

            def visit(i: int) -> frozenset[int]:
                if i in memo:
                    return memo[i]
                if state.get(i) == 1:
                    raise InvariantViolation("cover relation contains a cycle")
                state[i] = 1
                acc = {i}
                for lo in children[i]:
                    acc |= visit(lo)
                state[i] = 2
                memo[i] = frozenset(acc)
                return memo[i]

            for i in range(len(self.elements)):
                visit(i)
            self._down = memo
        return self._down

    def leq(self, i: int, j: int) -> bool:
        """Reflexive order: element i below element j."""
        return i in self._down_map()[j]

    def down_ids(self, i: int) -> frozenset[int]:
        return self._down_map()[i]

    def minimal_elements(self) -> tuple[int, ...]:
        uppers = {hi for _, hi in self.covers}
        return tuple(i for i in range(len(self.elements)) if i not in uppers)

    def maximal_elements(self) -> tuple[int, ...]:
        lowers = {lo for lo, _ in self.covers}
        return tuple(i for i in range(len(self.elements)) if i not in lowers)

    def validate(self) -> None:
        """Covers must be acyclic and equal to the transitive reduction of
        their own closure."""
        self._down_map()
        if transitive_reduction(len(self.elements), self.covers) != self.covers:
            raise InvariantViolation("cover set is not transitively reduced")


def hasse(group: FiniteGroupTable) -> Poset:
    """Hasse diagram of the extended Bruhat order on an enumerated group,
    elements sorted by (projection length, matrix key)."""
    elements = sorted(
        group.elements, key=lambda u: (length(project_to_W(u)), u.matrix)
    )
    pos = {u.matrix: k for k, u in enumerate(elements)}
    edges = set()
    for u in elements:
        for v in down_covers(u):
            edges.add((pos[v.matrix], pos[u.matrix]))
    poset = Poset(elements, transitive_reduction(len(elements), edges))
    poset.validate()
    return poset


# -- quotient orders ----------------------------------------------------------


@dataclass(frozen=True)
class QuotientPoset:
    """Partial order on right cosets.

    `relation` holds the strict pairs (lower index, upper index) of the full
    order; `kind` records which quotient rule produced it ("morse" for the
    Morse-component rule, "control-forward" for the control-set rule).
    """

    kind: str
    cosets: tuple[Coset, ...]
    relation: frozenset[tuple[int, int]]

    def leq(self, i: int, j: int) -> bool:
        return i == j or (i, j) in self.relation

    def covers(self) -> frozenset[tuple[int, int]]:
        return transitive_reduction(len(self.cosets), self.relation)

    def index_of(self, u: UElement) -> int:
        for k, coset in enumerate(self.cosets):
            if u in coset:
                return k
        raise KeyError(f"{u.matrix} lies in no coset")


def _verify_partial_order(pairs: set[tuple[int, int]], what: str) -> None:
    for i, j in pairs:
        if (j, i) in pairs and i != j:
            raise InvariantViolation(f"{what} relation fails antisymmetry on ({i}, {j})")
    for i, j in pairs:
        for k, l in pairs:
            if j == k and (i, l) not in pairs and i != l:
                raise InvariantViolation(f"{what} relation fails transitivity")


def _quotient(
    group: FiniteGroupTable,
    subgroup: FiniteGroupTable,
    rule,
    kind: str,
) -> QuotientPoset:
    classes = cosets(group, subgroup)
    pairs = set()
    for i, lo in enumerate(classes):
        for j, hi in enumerate(classes):
            if i != j and rule(lo, hi):
                pairs.add((i, j))
    _verify_partial_order(pairs, kind)
    return QuotientPoset(kind=kind, cosets=tuple(classes), relation=frozenset(pairs))


def morse_quotient_order(group: FiniteGroupTable, U_H: FiniteGroupTable) -> QuotientPoset:
    """Order on U_H \\ U indexing minimal Morse components: class(u) below
    class(v) iff every member of class(u) sits below some member of
    class(v).  This is the Schubert-inclusion direction; the dynamical
    order of the Morse components themselves is its inverse."""

    def rule(lo: Coset, hi: Coset) -> bool:
        return all(
            any(extended_leq(a, b) for b in hi.members) for a in lo.members
        )

    return _quotient(group, U_H, rule, "morse")


def control_quotient_order(group: FiniteGroupTable, U_S: FiniteGroupTable) -> QuotientPoset:
    """Order on U(S) \\ U indexing control sets: class(u) below class(v) iff
    every member of class(v) sits above some member of class(u)."""

    def rule(lo: Coset, hi: Coset) -> bool:
        return all(
            any(extended_leq(a, b) for a in lo.members) for b in hi.members
        )

    return _quotient(group, U_S, rule, "control-forward")


def control_forward_edges(quotient: QuotientPoset) -> list[tuple[Coset, Coset]]:
    """Control-set order facts implied by the coset order, direction
    reversed: a pair (src, dst) asserts D(src.representative) strictly
    precedes D(dst.representative)."""
    if quotient.kind != "control-forward":
        raise ValueError("forward edges require a control-forward quotient")
    edges = [
        (quotient.cosets[hi], quotient.cosets[lo]) for lo, hi in quotient.covers()
    ]
    edges.sort(
        key=lambda e: (e[0].representative.matrix, e[1].representative.matrix)
    )
    return edges


# -- the partial converse test -------------------------------------------------


def _reduced_lift_of_class(coset: Coset) -> tuple[UElement, tuple[int, ...]]:
    """Some member of the coset that is a plain product of generators along a
    reduced word (no trailing C part), together with that word."""
    for member in coset.members:
        for word in all_reduced_words(project_to_W(member)):
            if lift_word(member.preset, word).matrix == member.matrix:
                return member, word
    raise ReducedLiftUnavailable(
        "no member of the class is a generator product with reduced projection"
    )


def converse_candidates(
    group: FiniteGroupTable,
    U_S: FiniteGroupTable,
    u: UElement,
    v: UElement,
) -> frozenset[UElement]:
    """Necessary-condition candidates for the hypothesis that the control
    set of v's class precedes the control set of u's class.

    Takes a reduced generator product s_1...s_d in the class of v, forms
    every s_1^{k_1}...s_d^{k_d} with k_i in {0,1,2,3}, and returns the ones
    lying in the class of u.  An empty result refutes the hypothesis; a
    nonempty one decides nothing.
    """
    classes = cosets(group, U_S)

    def class_of(x: UElement) -> Coset:
        for c in classes:
            if x in c:
                return c
        raise ValueError(f"{x.matrix} is not an element of the group")

    v_class = class_of(v)
    u_class = class_of(u)
    _, word = _reduced_lift_of_class(v_class)
    preset = u.preset
    found = set()
    for ks in iter_product((0, 1, 2, 3), repeat=len(word)):
        prod = preset.identity()
        for letter, k in zip(word, ks):
            prod = prod * (preset.generator(letter) ** k)
        if prod in u_class:
            found.add(prod)
    return frozenset(found)


@dataclass(frozen=True)
class PairVerdict:
    """Relation status of two control-set classes.

    status is one of "equal", "leq" (D of `a` precedes D of `b`), "geq",
    or "undetermined".  For undetermined pairs the two converse tests are
    reported: None means the test was inapplicable (no reduced lift),
    an empty set means that direction is refuted, a nonempty set lists the
    surviving candidates.
    """

    status: str
    a_before_b_candidates: frozenset[UElement] | None = None
    b_before_a_candidates: frozenset[UElement] | None = None


def pair_status(
    group: FiniteGroupTable,
    U_S: FiniteGroupTable,
    a: UElement,
    b: UElement,
) -> PairVerdict:
    """Decide what the machinery can about the control sets of two classes:
    coset-order comparability settles the question (in reversed direction);
    otherwise both converse tests are run and reported."""
    quotient = control_quotient_order(group, U_S)
    i, j = quotient.index_of(a), quotient.index_of(b)
    if i == j:
        return PairVerdict(status="equal")
    if quotient.leq(i, j):
        # class(a) below class(b) in the coset order reverses for control sets
        return PairVerdict(status="geq")
    if quotient.leq(j, i):
        return PairVerdict(status="leq")

    def run(u: UElement, v: UElement) -> frozenset[UElement] | None:
        try:
            return converse_candidates(group, U_S, u, v)
        except ReducedLiftUnavailable:
            return None

    return PairVerdict(
        status="undetermined",
        a_before_b_candidates=run(b, a),
        b_before_a_candidates=run(a, b),
    )
