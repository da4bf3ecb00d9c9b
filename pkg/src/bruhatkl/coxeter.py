"""Finite crystallographic Coxeter (Weyl) groups via the geometric
representation on the root lattice.

Each group element is stored as the integer matrix of its action on
simple-root coordinates: the simple reflection s_i sends a vector x to the
vector y with y[i] = x[i] - sum_j cartan[i][j] * x[j] and y[k] = x[k]
otherwise (row convention cartan[i][j] = 2(a_i, a_j)/(a_i, a_i)).  All
arithmetic is on small integer matrices; nothing is ever approximated.

Elements are enumerated breadth-first by length and interned with stable
integer ids, so pair-keyed memo tables elsewhere can key on id pairs.

Group spec strings are parsed case-insensitively: "A3", "b2", "G2", "F4".
Elements are read and printed as whitespace-separated reduced words over
1-based generator indices ("1 2 1"), with "e" for the identity.

>>> ctx = build_group(parse_group_spec("A2"))
>>> len(ctx.elements), len(ctx.reflections)
(6, 3)
>>> word_of(ctx.longest_element())
'1 2 1'
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

__all__ = [
    "CoxeterDatum",
    "GroupContext",
    "GroupElement",
    "parse_group_spec",
    "build_group",
    "multiply",
    "inverse",
    "right_descents",
    "left_descents",
    "reflection_between",
    "word_of",
    "parse_element",
    "DEFAULT_ORDER_GUARD",
]

DEFAULT_ORDER_GUARD = 10000

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]

# rank ranges accepted per family
_RANK_RANGES = {
    "A": (1, 7),
    "B": (2, 5),
    "C": (2, 5),
    "D": (2, 5),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


@dataclass(frozen=True)
class CoxeterDatum:
    """Named finite type with its integer Cartan matrix."""

    family: str
    rank: int
    cartan: Matrix

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def order(self) -> int:
        """Group order, from the classical closed forms."""
        n = self.rank
        if self.family == "A":
            return factorial(n + 1)
        if self.family in ("B", "C"):
            return 2**n * factorial(n)
        if self.family == "D":
            return 2 ** (n - 1) * factorial(n)
        if self.family == "E":
            return {6: 51840, 7: 2903040, 8: 696729600}[n]
        if self.family == "F":
            return 1152
        return 12  # G2

    def num_positive_roots(self) -> int:
        n = self.rank
        if self.family == "A":
            return n * (n + 1) // 2
        if self.family in ("B", "C"):
            return n * n
        if self.family == "D":
            return n * (n - 1)
        if self.family == "E":
            return {6: 36, 7: 63, 8: 120}[n]
        if self.family == "F":
            return 24
        return 6  # G2


def _cartan_matrix(family: str, n: int) -> Matrix:
    """Cartan matrix for the named family, row convention as above."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
        a[i][j] = cij
        a[j][i] = cji

    if family in ("A", "B", "C"):
        for i in range(n - 1):
            bond(i, i + 1)
        if family == "B" and n >= 2:
            bond(n - 2, n - 1, -1, -2)  # last simple root short
        if family == "C" and n >= 2:
            bond(n - 2, n - 1, -2, -1)  # last simple root long
    elif family == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        if n >= 3:
            bond(n - 3, n - 1)
    elif family == "E":
        # chain 0-2-3-4-... with node 1 attached to node 3 (0-based)
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for i, j in zip(chain, chain[1:]):
            bond(i, j)
        bond(1, 3)
    elif family == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif family == "G":
        bond(0, 1, -3, -1)
    return tuple(tuple(row) for row in a)


def parse_group_spec(spec: str) -> CoxeterDatum:
    """Parse a group spec string such as "A3", "b2", "F4" (case-insensitive)."""
    s = spec.strip().upper()
    if len(s) < 2 or not s[0].isalpha():
        raise ValueError(f"bad group spec {spec!r}: expected a letter then a rank")
    family, digits = s[0], s[1:]
    if family not in _RANK_RANGES:
        raise ValueError(f"unknown family {family!r} in group spec {spec!r}")
    if not digits.isdigit():
        raise ValueError(f"bad rank {digits!r} in group spec {spec!r}")
    rank = int(digits)
    lo, hi = _RANK_RANGES[family]
    if not lo <= rank <= hi:
        raise ValueError(
            f"rank {rank} out of supported range [{lo}, {hi}] for family {family}"
        )
    return CoxeterDatum(family, rank, _cartan_matrix(family, rank))


# -- matrix helpers ----------------------------------------------------


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    cols = list(zip(*b))
    return tuple(
        tuple(sum(ra[k] * cb[k] for k in range(n)) for cb in cols) for ra in a
    )


def _mat_rmul_simple(m: Matrix, s: int, cartan: Matrix) -> Matrix:
    """m times the simple-reflection matrix of generator s."""
    row_s = cartan[s]
    return tuple(
        tuple(row[j] - row_s[j] * row[s] for j in range(len(row))) for row in m
    )


def _apply(m: Matrix, v: Vector) -> Vector:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def _is_positive_vec(v: Vector) -> bool:
    """Sign of a nonzero root vector (all coordinates share a sign)."""
    for c in v:
        if c:
            return c > 0
    raise ValueError("zero vector is not a root")


class GroupElement:
    """Interned element of one GroupContext: matrix, cached length, stable id."""

    __slots__ = ("ctx", "index", "matrix", "length")

    def __init__(self, ctx: "GroupContext", index: int, matrix: Matrix, length: int):
        self.ctx = ctx
        self.index = index
        self.matrix = matrix
        self.length = length

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.ctx is other.ctx and self.index == other.index

    def __hash__(self) -> int:
        return hash((id(self.ctx), self.index))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def __repr__(self) -> str:
        return f"<{self.ctx.name}: {word_of(self)}>"


class GroupContext:
    """A fully enumerated finite Weyl group.

    Immutable after construction; the private ``cache`` dict is used by
    other modules for memo tables keyed on element-id pairs.
    """

    def __init__(self, datum: CoxeterDatum):
        self.datum = datum
        self.name = datum.name
        self.rank = datum.rank
        self.simples_matrices: tuple[Matrix, ...] = tuple(
            _mat_rmul_simple(_identity(datum.rank), s, datum.cartan)
            for s in range(datum.rank)
        )
        self.elements: list[GroupElement] = []
        self.pos_roots: list[Vector] = []
        self.reflections: list[GroupElement] = []
        self.reflection_ids: frozenset[int] = frozenset()
        self.refl_root_index: dict[int, int] = {}
        self.rmult: list[tuple[int, ...]] = []
        self.inv: list[int] = []
        self._index: dict[Matrix, int] = {}
        self._words: dict[int, str] = {}
        self.cache: dict[str, object] = {}

    # populated by build_group
    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> GroupElement:
        return self.elements[0]

    @property
    def simples(self) -> list[GroupElement]:
        return [self.element_by_matrix(m) for m in self.simples_matrices]

    def element_by_matrix(self, m: Matrix) -> GroupElement:
        return self.elements[self._index[m]]

    def longest_element(self) -> GroupElement:
        return max(self.elements, key=lambda g: g.length)

    def __repr__(self) -> str:
        return f"<GroupContext {self.name}, order {self.order}>"


def build_group(
    datum: CoxeterDatum, max_order_guard: int = DEFAULT_ORDER_GUARD
) -> GroupContext:
    """Enumerate the whole group breadth-first and identify reflections.

    Raises ValueError if the expected group order exceeds the guard, and
    RuntimeError if any structural count disagrees with the closed forms.
    """
    expected_order = datum.order()
    if expected_order > max_order_guard:
        raise ValueError(
            f"group {datum.name} has order {expected_order}, above the guard "
            f"{max_order_guard}; raise the guard to build it anyway"
        )
    ctx = GroupContext(datum)
    n = datum.rank
    cartan = datum.cartan

    # breadth-first element enumeration by length; inverses tracked via
    # inv(w s) = s inv(w), which needs only left multiplication by simples
    ident = _identity(n)
    ctx._index[ident] = 0
    ctx.elements.append(GroupElement(ctx, 0, ident, 0))
    inv_matrices = [ident]
    frontier = [0]
    while frontier:
        next_frontier = []
        for wi in frontier:
            w = ctx.elements[wi]
            for s in range(n):
                col = tuple(w.matrix[k][s] for k in range(n))
                if not _is_positive_vec(col):
                    continue  # descent: ws already enumerated
                m = _mat_rmul_simple(w.matrix, s, cartan)
                if m in ctx._index:
                    continue
                idx = len(ctx.elements)
                ctx._index[m] = idx
                ctx.elements.append(GroupElement(ctx, idx, m, w.length + 1))
                inv_matrices.append(
                    _mat_mul(ctx.simples_matrices[s], inv_matrices[wi])
                )
                next_frontier.append(idx)
        frontier = next_frontier
    if ctx.order != expected_order:
        raise RuntimeError(
            f"enumerated {ctx.order} elements of {datum.name}, "
            f"expected {expected_order}"
        )
    ctx.inv = [ctx._index[m] for m in inv_matrices]

    # right-multiplication table by simple generators
    ctx.rmult = [
        tuple(ctx._index[_mat_rmul_simple(w.matrix, s, cartan)] for s in range(n))
        for w in ctx.elements
    ]

    # positive-root closure, simple roots first, discovery order after
    unit = lambda i: tuple(1 if j == i else 0 for j in range(n))
    roots: list[Vector] = [unit(i) for i in range(n)]
    seen = set(roots)
    qi = 0
    while qi < len(roots):
        beta = roots[qi]
        qi += 1
        for s in range(n):
            img = _apply(ctx.simples_matrices[s], beta)
            if _is_positive_vec(img) and img not in seen:
                seen.add(img)
                roots.append(img)
    ctx.pos_roots = roots
    if len(roots) != datum.num_positive_roots():
        raise RuntimeError(
            f"found {len(roots)} positive roots of {datum.name}, "
            f"expected {datum.num_positive_roots()}"
        )

    # reflections: close {s_i} under conjugation, tracking the root;
    # the root of s t s is s(root of t), normalized to the positive side
    root_to_matrix: dict[Vector, Matrix] = {
        unit(i): ctx.simples_matrices[i] for i in range(n)
    }
    queue = list(root_to_matrix)
    while queue:
        beta = queue.pop()
        t = root_to_matrix[beta]
        for s in range(n):
            sm = ctx.simples_matrices[s]
            img = _apply(sm, beta)
            if not _is_positive_vec(img):
                img = tuple(-c for c in img)
            conj = _mat_mul(sm, _mat_mul(t, sm))
            if img in root_to_matrix:
                if root_to_matrix[img] != conj:
                    raise RuntimeError("reflection closure is inconsistent")
            else:
                root_to_matrix[img] = conj
                queue.append(img)
    refl_ids = []
    for ri, beta in enumerate(roots):
        t_id = ctx._index[root_to_matrix[beta]]
        refl_ids.append(t_id)
        ctx.refl_root_index[t_id] = ri
    ctx.reflections = [ctx.elements[i] for i in refl_ids]
    ctx.reflection_ids = frozenset(refl_ids)
    if len(ctx.reflection_ids) != len(roots):
        raise RuntimeError("reflections are not in bijection with positive roots")
    return ctx


def _check_same_context(a: GroupElement, b: GroupElement) -> None:
    if a.ctx is not b.ctx:
        raise ValueError("context mismatch: elements from different groups")


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    _check_same_context(a, b)
    return a.ctx.element_by_matrix(_mat_mul(a.matrix, b.matrix))


def inverse(a: GroupElement) -> GroupElement:
    return a.ctx.elements[a.ctx.inv[a.index]]


def right_descents(w: GroupElement) -> list[int]:
    """Generators s (0-based) with l(ws) < l(w), i.e. w sends a_s negative."""
    m = w.matrix
    n = len(m)
    return [
        s
        for s in range(n)
        if not _is_positive_vec(tuple(m[k][s] for k in range(n)))
    ]


def left_descents(w: GroupElement) -> list[int]:
    return right_descents(inverse(w))


def reflection_between(u: GroupElement, w: GroupElement) -> GroupElement | None:
    """The reflection t with w = u t, if one exists."""
    _check_same_context(u, w)
    t = multiply(inverse(u), w)
    return t if t.index in u.ctx.reflection_ids else None


def word_of(w: GroupElement) -> str:
    """Canonical reduced word: lexicographically smallest, as "1 2 1".

    Obtained by repeatedly stripping the smallest left descent; the identity
    prints as "e".
    """
    ctx = w.ctx
    cached = ctx._words.get(w.index)
    if cached is not None:
        return cached
    letters = []
    cur = w
    while cur.length:
        s = min(left_descents(cur))
        letters.append(str(s + 1))
        cur = multiply(ctx.elements[ctx.rmult[0][s]], cur)
    word = " ".join(letters) if letters else "e"
    ctx._words[w.index] = word
    return word


def parse_element(ctx: GroupContext, text: str) -> GroupElement:
    """Parse a whitespace-separated word over 1-based generator indices.

    "e" (or an empty string) is the identity.  The word need not be reduced;
    the product is returned regardless.
    """
    text = text.strip()
    if text in ("", "e"):
        return ctx.identity
    idx = 0
    for tok in text.split():
        if not tok.isdigit() or not 1 <= int(tok) <= ctx.rank:
            raise ValueError(
                f"bad generator token {tok!r} in element word {text!r} "
                f"(expected 1..{ctx.rank} or 'e')"
            )
        idx = ctx.rmult[idx][int(tok) - 1]
    return ctx.elements[idx]
