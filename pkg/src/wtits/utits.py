"""The extended Weyl group U = M*/M0 as an exact integer matrix group.

A preset packages the generators s_i (one per simple root), the extra C
generators (none for the built-in groups), the restricted root datum, and a
basis of the Cartan subspace realized as matrices.  From those, everything
else is computed: the finite group U by closure, its abelian normal
subgroup C, the projection pi onto the Weyl group by conjugation of the
Cartan basis, canonical reduced lifts, parabolic-type subgroups U_H, and
right-coset partitions.

Canonical element keys are the integer matrices themselves, so equality and
hashing are exact and no word-problem machinery is needed.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

from .errors import ClosureBoundExceeded, InvariantViolation, PresetError
from .exact import (
    IntMatrix,
    as_int_matrix,
    determinant,
    identity_matrix,
    is_signed_permutation,
    mat_inverse,
    mat_mul,
    mat_pow,
    solve_in_span,
)
from .rootsys import (
    RootDatum,
    WeylElement,
    length,
    make_weyl_element,
    reduced_word,
    simple_reflection,
    weyl_group,
)

DEFAULT_CLOSURE_BOUND = 10**6

WordToken = tuple[int, int]  # (1-based generator index, exponent)


@dataclass(frozen=True, eq=False)
class GroupPreset:
    """Full algebraic datum of one concrete group.

    Instances compare by identity; `load_preset` caches them so each named
    preset is a singleton.  The `_caches` dict memoizes derived tables
    (U, C, projections, down-sets) for the preset's lifetime.
    """

    name: str
    n: int
    generators: tuple[IntMatrix, ...]
    c_generators: tuple[IntMatrix, ...]
    root_datum: RootDatum
    a_basis: tuple[IntMatrix, ...]
    label: str = ""
    _caches: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return self.root_datum.rank

    def identity(self) -> "UElement":
        return UElement(identity_matrix(self.n), self)

    def generator(self, i: int) -> "UElement":
        if not 1 <= i <= len(self.generators):
            raise IndexError(f"generator index {i} out of range 1..{len(self.generators)}")
        return UElement(self.generators[i - 1], self, word=((i, 1),))


@dataclass(frozen=True)
class UElement:
    """Element of U, keyed by its exact matrix.

    `word`, when present, records one expression as (generator, exponent)
    tokens; it is bookkeeping only and never participates in equality.
    """

    matrix: IntMatrix
    preset: GroupPreset = field(compare=False, repr=False)
    word: tuple[WordToken, ...] | None = field(default=None, compare=False, repr=False)

    def __mul__(self, other: "UElement") -> "UElement":
        if self.preset is not other.preset:
            raise ValueError("cannot multiply elements of different presets")
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return UElement(mat_mul(self.matrix, other.matrix), self.preset, word=word)

    def __pow__(self, k: int) -> "UElement":
        return UElement(mat_pow(self.matrix, k), self.preset)

    def inverse(self) -> "UElement":
        return UElement(mat_inverse(self.matrix), self.preset)

    def is_identity(self) -> bool:
        return self.matrix == identity_matrix(self.preset.n)


class FiniteGroupTable:
    """An enumerated finite matrix group (or subgroup): elements sorted by
    canonical key, with constant-time membership."""

    def __init__(self, elements: Iterable[UElement]):
        elts = sorted(set(elements), key=lambda u: u.matrix)
        if not elts:
            raise ValueError("a group table cannot be empty")
        self.preset = elts[0].preset
        self.elements: tuple[UElement, ...] = tuple(elts)
        self.index: dict[IntMatrix, int] = {u.matrix: k for k, u in enumerate(elts)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, u: UElement) -> bool:
        return u.matrix in self.index

    def is_subset_of(self, other: "FiniteGroupTable") -> bool:
        return all(m in other.index for m in self.index)

    def validate(self) -> None:
        """Check the group axioms by brute force (identity, closure, inverses)."""
        ident = self.preset.identity()
        if ident not in self:
            raise InvariantViolation("table does not contain the identity")
        for a in self.elements:
            if a.inverse() not in self:
                raise InvariantViolation(f"inverse of {a.matrix} missing from table")
            for b in self.elements:
                if a * b not in self:
                    raise InvariantViolation(
                        f"table not closed: {a.matrix} * {b.matrix} escapes"
                    )


def close_under_products(
    preset: GroupPreset,
    generators: Sequence[UElement],
    bound: int = DEFAULT_CLOSURE_BOUND,
) -> FiniteGroupTable:
    """BFS closure of a generator list inside GL(n, Z)."""
    ident = preset.identity()
    seen: dict[IntMatrix, UElement] = {ident.matrix: ident}
    gens = list(generators)
    frontier = [ident]
    while frontier:
        new = []
        for u in frontier:
            for g in gens:
                prod = u * g
                if prod.matrix not in seen:
                    seen[prod.matrix] = prod
                    new.append(prod)
                    if len(seen) > bound:
                        raise ClosureBoundExceeded(
                            f"closure exceeded {bound} elements; "
                            "the configuration likely does not define the intended finite group"
                        )
        frontier = new
    return FiniteGroupTable(seen.values())


# -- presets ------------------------------------------------------------------


def _rotation_block(n: int, p: int) -> IntMatrix:
    """Identity with the 2x2 block [[0,-1],[1,0]] at rows/cols (p, p+1), 1-based."""
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    i = p - 1
    rows[i][i] = 0
    rows[i][i + 1] = -1
    rows[i + 1][i] = 1
    rows[i + 1][i + 1] = 0
    return as_int_matrix(rows)


def _diag_unit(n: int, p: int) -> IntMatrix:
    rows = [[0] * n for _ in range(n)]
    rows[p - 1][p - 1] = 1
    return as_int_matrix(rows)


def _sl_preset(n: int, block_positions: Sequence[int], name: str, label: str) -> GroupPreset:
    """SL(n, R): a-coordinates are the n diagonal entries; generator i is the
    quarter-turn block at diagonal position block_positions[i-1]."""
    simples = []
    for p in block_positions:
        root = [0] * n
        root[p - 1] = 1
        root[p] = -1
        simples.append(root)
    positives = []
    for i in range(n):
        for j in range(i + 1, n):
            root = [0] * n
            root[i] = 1
            root[j] = -1
            positives.append(root)
    datum = RootDatum.create(simples, positives, multiplicities=(1,) * (n - 1))
    return GroupPreset(
        name=name,
        n=n,
        generators=tuple(_rotation_block(n, p) for p in block_positions),
        c_generators=(),
        root_datum=datum,
        a_basis=tuple(_diag_unit(n, p) for p in range(1, n + 1)),
        label=label,
    )


def _so24_preset() -> GroupPreset:
    k1 = ((0, 1), (-1, 0))
    k2 = ((1, 0), (0, -1))
    eye2 = ((1, 0), (0, 1))

    def block_diag(b1, b2, b3):
        rows = [[0] * 6 for _ in range(6)]
        for off, blk in ((0, b1), (2, b2), (4, b3)):
            for r in range(2):
                for c in range(2):
                    rows[off + r][off + c] = blk[r][c]
        return as_int_matrix(rows)

    s1 = block_diag(k1, k1, eye2)
    s2 = block_diag(eye2, k2, k2)
    h1 = [[0] * 6 for _ in range(6)]
    h1[0][2] = h1[2][0] = 1
    h2 = [[0] * 6 for _ in range(6)]
    h2[1][3] = h2[3][1] = 1
    # simple roots lambda_1 - lambda_2 and lambda_2 on coordinates (a1, a2);
    # lambda_2 carries the multiplicity-2 rank-one sphere, so s2^2 = 1.
    datum = RootDatum.create(
        simple_roots=[(1, -1), (0, 1)],
        positive_roots=[(1, -1), (0, 1), (1, 0), (1, 1)],
        multiplicities=(1, 2),
    )
    return GroupPreset(
        name="so24",
        n=6,
        generators=(s1, s2),
        c_generators=(),
        root_datum=datum,
        a_basis=(as_int_matrix(h1), as_int_matrix(h2)),
        label="SO(2,4)_0",
    )


_SL_NAME = re.compile(r"sl\(?(\d+)\)?$")


@lru_cache(maxsize=None)
def load_preset(name: str) -> GroupPreset:
    """Load and validate a built-in preset.

    Accepted names: "sl3" (generator labeling with s1 acting in coordinates
    (2,3) and s2 in (1,2), so emitted diagrams match the usual SO(3)
    conventions), "sl2"/"sl4"/"sl(n)" (generic labeling, s_i at (i, i+1)),
    and "so24".
    """
    key = name.strip().lower()
    if key == "so24":
        preset = _so24_preset()
    elif key == "sl3":
        preset = _sl_preset(3, (2, 1), "sl3", "SL(3,R)")
    else:
        m = _SL_NAME.match(key)
        if not m:
            raise PresetError(f"unknown preset {name!r}; expected sl<n>, sl(<n>) or so24")
        n = int(m.group(1))
        if n < 2:
            raise PresetError("sl(n) requires n >= 2")
        preset = _sl_preset(n, tuple(range(1, n)), key, f"SL({n},R)")
    validate_preset(preset)
    return preset


def load_config(source) -> GroupPreset:
    """Build a custom group from a JSON config (path, JSON text or dict).

    Schema: {"n": int, "generators": [[..int..]], "c_generators": [[..]],
    "simple_roots": [[rational]], "a_basis": [[..int..]],
    "multiplicities": [int]}, with rationals written either as integers or
    as {"num": p, "den": q}.  Positive roots are derived by reflection
    closure of the simple roots.
    """
    if isinstance(source, dict):
        cfg = source
    else:
        text = None
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except (OSError, TypeError):
            text = source
        cfg = json.loads(text)

    def rational(x):
        if isinstance(x, dict):
            return Fraction(int(x["num"]), int(x["den"]))
        if isinstance(x, int):
            return Fraction(x)
        raise PresetError(f"rationals must be integers or {{num, den}}, got {x!r}")

    try:
        n = int(cfg["n"])
        gens = tuple(as_int_matrix(g) for g in cfg["generators"])
        c_gens = tuple(as_int_matrix(g) for g in cfg.get("c_generators", []))
        simples = [tuple(rational(x) for x in root) for root in cfg["simple_roots"]]
        a_basis = tuple(as_int_matrix(m) for m in cfg["a_basis"])
        mults = tuple(int(m) for m in cfg.get("multiplicities", [1] * len(simples)))
    except (KeyError, ValueError, TypeError) as exc:
        raise PresetError(f"malformed group config: {exc}") from exc
    try:
        datum = RootDatum.create(simples, multiplicities=mults)
    except ValueError as exc:
        raise PresetError(f"invalid root data: {exc}") from exc
    preset = GroupPreset(
        name=str(cfg.get("name", "custom")),
        n=n,
        generators=gens,
        c_generators=c_gens,
        root_datum=datum,
        a_basis=a_basis,
        label=str(cfg.get("name", "custom")),
    )
    validate_preset(preset)
    return preset


def validate_preset(preset: GroupPreset) -> None:
    """Check every load-time invariant, naming the first violation."""
    n = preset.n
    datum = preset.root_datum
    if len(preset.generators) != datum.rank:
        raise PresetError(
            f"need one generator per simple root: {len(preset.generators)} != {datum.rank}"
        )
    for mat in preset.generators + preset.c_generators:
        if len(mat) != n:
            raise PresetError(f"matrix dimension {len(mat)} != n = {n}")
        if determinant(mat) != 1:
            raise PresetError(f"generator {mat} must have determinant +1")
    if preset.name.startswith("sl"):
        for mat in preset.generators + preset.c_generators:
            if not is_signed_permutation(mat):
                raise PresetError(f"sl preset generator {mat} is not a signed permutation")
    if len(preset.a_basis) == 0:
        raise PresetError("a_basis must not be empty")
    for i in range(1, datum.rank + 1):
        s = preset.generator(i)
        if not (s * s * s * s).is_identity():
            raise PresetError(f"s{i}^4 != identity")
        if datum.multiplicities[i - 1] > 1 and not (s * s).is_identity():
            raise PresetError(
                f"s{i}^2 != identity although multiplicity m_{i} > 1"
            )
        w = project_to_W(s)  # raises PresetError if s does not normalize a
        if w.matrix != simple_reflection(datum, i).matrix:
            raise PresetError(f"pi(s{i}) != r{i}")
        s_sq = (s * s).matrix
        for c in preset.c_generators:
            if mat_mul(s_sq, c) != mat_mul(c, s_sq):
                raise PresetError(f"s{i}^2 does not commute with a C generator")
    for a in preset.c_generators:
        for b in preset.c_generators:
            if mat_mul(a, b) != mat_mul(b, a):
                raise PresetError("C generators do not commute")


# -- the group U, its subgroups, and the projection onto W --------------------


def enumerate_U(preset: GroupPreset, bound: int = DEFAULT_CLOSURE_BOUND) -> FiniteGroupTable:
    """The full group U as the closure of the s_i and the C generators.

    Verifies |U| = |W| * |C| and the normality of C inside U.
    """
    cached = preset._caches.get("U")
    if cached is not None:
        return cached
    gens = [preset.generator(i) for i in range(1, preset.rank + 1)]
    gens += [UElement(m, preset) for m in preset.c_generators]
    table = close_under_products(preset, gens, bound)
    c_table = enumerate_C(preset, bound)
    w_count = len(weyl_group(preset.root_datum))
    if len(table) != w_count * len(c_table):
        raise InvariantViolation(
            f"|U| = {len(table)} != |W| * |C| = {w_count} * {len(c_table)}"
        )
    for u in table:
        u_inv = u.inverse()
        for c in c_table:
            if u * c * u_inv not in c_table:
                raise InvariantViolation("C is not normal in U")
    preset._caches["U"] = table
    return table


def enumerate_C(preset: GroupPreset, bound: int = DEFAULT_CLOSURE_BOUND) -> FiniteGroupTable:
    """The subgroup C: closure of the squared generators and the extra C
    generators.  Verified abelian and inside the kernel of pi."""
    cached = preset._caches.get("C")
    if cached is not None:
        return cached
    gens = [preset.generator(i) ** 2 for i in range(1, preset.rank + 1)]
    gens += [UElement(m, preset) for m in preset.c_generators]
    table = close_under_products(preset, gens, bound)
    for a in table:
        if not project_to_W(a).is_identity():
            raise InvariantViolation(f"C element {a.matrix} has nontrivial Weyl projection")
        for b in table:
            if (a * b).matrix != (b * a).matrix:
                raise InvariantViolation("C is not abelian")
    preset._caches["C"] = table
    return table


def _flatten(mat: IntMatrix) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for row in mat for x in row)


def project_to_W(u: UElement) -> WeylElement:
    """The natural projection pi: U -> W, read off by conjugating the Cartan
    basis with u and expressing the result in that basis."""
    preset = u.preset
    cache = preset._caches.setdefault("pi", {})
    hit = cache.get(u.matrix)
    if hit is not None:
        return hit
    basis = [_flatten(h) for h in preset.a_basis]
    u_inv = mat_inverse(u.matrix)

    def conjugation_matrix(g, g_inv):
        cols = []
        for h in preset.a_basis:
            conj = mat_mul(mat_mul(g, h), g_inv)
            coeffs = solve_in_span(basis, _flatten(conj))
            if coeffs is None:
                raise PresetError(
                    "element does not normalize the Cartan subspace"
                )
            cols.append(coeffs)
        return tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(len(cols)))

    forward = conjugation_matrix(u.matrix, u_inv)
    backward = conjugation_matrix(u_inv, u.matrix)
    try:
        w = make_weyl_element(preset.root_datum, forward, backward)
    except ValueError as exc:
        raise PresetError(f"conjugation action is not a Weyl element: {exc}") from exc
    cache[u.matrix] = w
    return w


def lift_word(preset: GroupPreset, word: Iterable[int]) -> UElement:
    """The canonical lift s_{i_1} ... s_{i_d} of a word in simple indices."""
    return reduce(
        lambda acc, i: acc * preset.generator(i),
        word,
        preset.identity(),
    )


def canonical_form(u: UElement) -> tuple[tuple[int, ...], UElement]:
    """Canonical decomposition u = s_{i_1} ... s_{i_d} c: the deterministic
    reduced word of pi(u) and the trailing C factor.  Cached per element."""
    cache = u.preset._caches.setdefault("canonical", {})
    hit = cache.get(u.matrix)
    if hit is None:
        word = tuple(reduced_word(project_to_W(u)))
        lift = lift_word(u.preset, word)
        c = lift.inverse() * u
        if c not in enumerate_C(u.preset):
            raise InvariantViolation(
                f"canonical C part {c.matrix} escapes C; preset data corrupted"
            )
        hit = (word, c)
        cache[u.matrix] = hit
    return hit


def c_part(u: UElement) -> UElement:
    """The trailing C factor of the canonical decomposition
    u = (lift of a reduced word of pi(u)) * c."""
    return canonical_form(u)[1]


def subgroup_U_H(
    preset: GroupPreset,
    theta: Iterable[int],
    extra_gens: Sequence[UElement] = (),
) -> FiniteGroupTable:
    """U_H for a chamber-closure direction H with Theta = {i : alpha_i(H)=0},
    realized as the closure of {s_i : i in Theta} plus any extra generators
    (the escape hatch for groups where U_H exceeds that closure)."""
    theta = sorted(set(theta))
    if any(not 1 <= i <= preset.rank for i in theta):
        raise IndexError(f"Theta {theta} not within 1..{preset.rank}")
    table_U = enumerate_U(preset)
    for extra in extra_gens:
        if extra not in table_U:
            raise ValueError(f"extra generator {extra.matrix} is not an element of U")
    gens = [preset.generator(i) for i in theta] + list(extra_gens)
    return close_under_products(preset, gens)


def subgroup_closure(preset: GroupPreset, gens: Sequence[UElement]) -> FiniteGroupTable:
    """Smallest subgroup of U containing the given elements."""
    table_U = enumerate_U(preset)
    for g in gens:
        if g not in table_U:
            raise ValueError(f"generator {g.matrix} is not an element of U")
    return close_under_products(preset, list(gens))


@dataclass(frozen=True)
class Coset:
    """A right coset: canonical representative (smallest matrix key) plus the
    sorted member tuple."""

    representative: UElement
    members: tuple[UElement, ...]

    def __contains__(self, u: UElement) -> bool:
        return any(u.matrix == m.matrix for m in self.members)

    def __len__(self) -> int:
        return len(self.members)


def cosets(
    group: FiniteGroupTable,
    subgroup: FiniteGroupTable,
    side: str = "right",
) -> list[Coset]:
    """Partition `group` into cosets of `subgroup` (right cosets Hu by
    default), sorted by representative key."""
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    if not subgroup.is_subset_of(group):
        raise ValueError("subgroup is not contained in group")
    remaining = dict(group.index)
    out = []
    for u in group.elements:
        if u.matrix not in remaining:
            continue
        members = sorted(
            ((h * u) if side == "right" else (u * h) for h in subgroup),
            key=lambda x: x.matrix,
        )
        for m in members:
            remaining.pop(m.matrix, None)
        out.append(Coset(representative=members[0], members=tuple(members)))
    out.sort(key=lambda c: c.representative.matrix)
    if len(out) * len(subgroup) != len(group):
        raise InvariantViolation("coset partition has the wrong cardinality")
    return out


@dataclass(frozen=True)
class QuotientReport:
    """Outcome of the U(S)/C(S)/W(S) compatibility check."""

    W_S: tuple[WeylElement, ...]
    C_S: FiniteGroupTable
    classes_in_U: int
    classes_in_W: int
    classes_in_C: int
    identity_holds: bool


def check_quotient_isomorphism(U_S: FiniteGroupTable, C_table: FiniteGroupTable) -> QuotientReport:
    """Compute C(S) = U(S) n C and W(S) = pi(U(S)) and verify that
    |U(S)\\U| = |W(S)\\W| * |C(S)\\C|."""
    preset = U_S.preset
    table_U = enumerate_U(preset)
    c_s = FiniteGroupTable([u for u in U_S if u in C_table])
    w_s = tuple(sorted({project_to_W(u) for u in U_S}, key=lambda w: (length(w), w.matrix)))
    classes_u = len(table_U) // len(U_S)
    classes_w = len(weyl_group(preset.root_datum)) // len(w_s)
    classes_c = len(C_table) // len(c_s)
    return QuotientReport(
        W_S=w_s,
        C_S=c_s,
        classes_in_U=classes_u,
        classes_in_W=classes_w,
        classes_in_C=classes_c,
        identity_holds=(classes_u == classes_w * classes_c),
    )


# -- canonical display words --------------------------------------------------


def _c_factorizations(preset: GroupPreset) -> dict[IntMatrix, tuple[str, ...]]:
    """Shortest token factorization of every C element over the squared
    generators (and extra C generators), lexicographic tie-break."""
    cache = preset._caches.get("c_words")
    if cache is not None:
        return cache
    gens: list[tuple[str, UElement]] = [
        (f"s{i}^2", preset.generator(i) ** 2) for i in range(1, preset.rank + 1)
    ]
    gens += [
        (f"c{j}", UElement(m, preset))
        for j, m in enumerate(preset.c_generators, start=1)
    ]
    table = enumerate_C(preset)
    words: dict[IntMatrix, tuple[str, ...]] = {preset.identity().matrix: ()}
    frontier = [(preset.identity(), ())]
    while len(words) < len(table):
        new = []
        for u, w in frontier:
            for tok, g in gens:
                prod = u * g
                if prod.matrix not in words:
                    words[prod.matrix] = w + (tok,)
                    new.append((prod, w + (tok,)))
        if not new:
            raise InvariantViolation("C generators do not generate C")
        new.sort(key=lambda t: t[1])
        frontier = new
    preset._caches["c_words"] = words
    return words


def display_tokens(u: UElement) -> tuple[str, ...]:
    """Canonical token spelling: the deterministic reduced word of pi(u)
    followed by the shortest squared-generator factorization of the C part,
    e.g. ("s2", "s1", "s1^2", "s2^2")."""
    cache = u.preset._caches.setdefault("display", {})
    hit = cache.get(u.matrix)
    if hit is None:
        word, c = canonical_form(u)
        hit = tuple(f"s{i}" for i in word) + _c_factorizations(u.preset)[c.matrix]
        cache[u.matrix] = hit
    return hit


def display_word(u: UElement) -> str:
    """Human-readable name; parses back to u through the expression grammar."""
    tokens = display_tokens(u)
    return " ".join(tokens) if tokens else "1"


def coset_label(coset: Coset) -> str:
    """Display name of a coset: its member with the shortest canonical word
    (ties by token order), which reproduces the conventional class labels."""
    best = min(coset.members, key=lambda u: (len(display_tokens(u)), display_tokens(u)))
    return display_word(best)
