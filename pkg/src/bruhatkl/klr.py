"""Memoized exact tables of R-, Rtilde-, and Kazhdan-Lusztig polynomials,
plus the derived machinery: f/h-vectors, interval R-sums, rational
smoothness, and strict edges.

All three families satisfy a recursion that strips the smallest right
descent s of the top element w (fixed deterministically so memo tables
fill in a reproducible order):

    R_uw  = R_{us,ws}           if us < u, else  q R_{us,ws} + (q-1) R_{u,ws}
    Rt_uw = Rt_{us,ws}          if us < u, else  Rt_{us,ws} + q Rt_{u,ws}

KL polynomials are defined by the functional equation

    q^l(u,w) P_uw(1/q) = sum over u <= v <= w of R_uv(q) P_vw(q)

together with the degree bound deg P_uw <= (l(u,w)-1)/2.  Writing D for
l(u,w) and F for the sum restricted to v > u, the degree bound forces
coefficient j of P_uw to equal the coefficient of q^(D-j) in F for all
j <= (D-1)//2, which turns the characterization into an algorithm: fill
P_{., w} by descending length of the lower index, read the top half of F,
then substitute back into the full equation and fail loudly if it does not
hold exactly.  Tables live on the owning GroupContext and are keyed by
element-id pairs; coefficients are Python integers throughout, so nothing
can overflow.

The optional on-disk cache is newline-delimited JSON, one record per table
entry; the loader re-validates the structural invariants of every record
before trusting it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator

from bruhatkl.bruhat import (
    absolute_length,
    bruhat_le,
    iter_bits,
    le_masks,
    neighborhood,
    up_adjacency,
)
from bruhatkl.bruhat import _lengths, _smallest_right_descent
from bruhatkl.coxeter import GroupContext, GroupElement, parse_element, word_of
from bruhatkl.polynomial import Basis, IntPoly, from_shifted, to_shifted

__all__ = [
    "PolyTable",
    "FHDecomposition",
    "r_poly",
    "rtilde_poly",
    "check_r_rtilde_link",
    "kl_poly",
    "kl_at_one",
    "fh_vectors",
    "sum_r_over",
    "is_rationally_smooth",
    "strict_edges",
    "strict_path_to_smooth",
    "fill_tables",
    "poly_table",
    "save_tables",
    "load_tables",
]

Coeffs = tuple[int, ...]

KINDS = ("R", "Rt", "KL")


# -- tuple-level helpers (hot path: avoid IntPoly object churn) ---------


def _addmul_into(acc: list[int], a: Coeffs, b: Coeffs) -> None:
    """acc += a * b (power-basis convolution)."""
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                acc[i + j] += ai * bj


def _trim(cs: list[int]) -> Coeffs:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _table(ctx: GroupContext, kind: str) -> dict[tuple[int, int], Coeffs]:
    return ctx.cache.setdefault(f"poly_{kind}", {})


def _r(ctx: GroupContext, ui: int, wi: int) -> Coeffs:
    table = _table(ctx, "R")
    key = (ui, wi)
    res = table.get(key)
    if res is not None:
        return res
    if ui == wi:
        res = (1,)
    elif not bruhat_le(ctx.elements[ui], ctx.elements[wi]):
        res = ()
    else:
        lengths = _lengths(ctx)
        s = _smallest_right_descent(ctx)[wi]
        usi, wsi = ctx.rmult[ui][s], ctx.rmult[wi][s]
        if lengths[usi] < lengths[ui]:
            res = _r(ctx, usi, wsi)
        else:
            top = _r(ctx, usi, wsi)
            side = _r(ctx, ui, wsi)
            out = [0] * (lengths[wi] - lengths[ui] + 1)
            for i, c in enumerate(top):  # q * R(us, ws)
                out[i + 1] += c
            for i, c in enumerate(side):  # (q-1) * R(u, ws)
                out[i] -= c
                out[i + 1] += c
            res = _trim(out)
    table[key] = res
    return res


def _rt(ctx: GroupContext, ui: int, wi: int) -> Coeffs:
    table = _table(ctx, "Rt")
    key = (ui, wi)
    res = table.get(key)
    if res is not None:
        return res
    if ui == wi:
        res = (1,)
    elif not bruhat_le(ctx.elements[ui], ctx.elements[wi]):
        res = ()
    else:
        lengths = _lengths(ctx)
        s = _smallest_right_descent(ctx)[wi]
        usi, wsi = ctx.rmult[ui][s], ctx.rmult[wi][s]
        if lengths[usi] < lengths[ui]:
            res = _rt(ctx, usi, wsi)
        else:
            top = _rt(ctx, usi, wsi)
            side = _rt(ctx, ui, wsi)
            out = [0] * (lengths[wi] - lengths[ui] + 1)
            for i, c in enumerate(top):
                out[i] += c
            for i, c in enumerate(side):  # q * Rt(u, ws)
                out[i + 1] += c
            res = _trim(out)
    table[key] = res
    return res


def _between(ctx: GroupContext, ui: int, wi: int) -> Iterator[int]:
    """Ids of v with u <= v <= w, in increasing id (hence length) order."""
    masks = le_masks(ctx)
    for vi in iter_bits(masks[wi]):
        if masks[vi] >> ui & 1:
            yield vi


def _kl(ctx: GroupContext, ui: int, wi: int) -> Coeffs:
    table = _table(ctx, "KL")
    key = (ui, wi)
    res = table.get(key)
    if res is not None:
        return res
    if ui == wi:
        res = (1,)
    elif not bruhat_le(ctx.elements[ui], ctx.elements[wi]):
        res = ()
    else:
        lengths = _lengths(ctx)
        D = lengths[wi] - lengths[ui]
        F = [0] * (D + 1)
        for vi in _between(ctx, ui, wi):
            if vi != ui:
                _addmul_into(F, _r(ctx, ui, vi), _kl(ctx, vi, wi))
        res = _trim([F[D - j] for j in range((D - 1) // 2 + 1)])
        # substitute back into the defining equation before trusting it
        lhs = [0] * (D + 1)
        for j, c in enumerate(res):
            lhs[D - j] = c
        rhs = list(F)
        for j, c in enumerate(res):
            rhs[j] += c
        if lhs != rhs or not res or res[0] != 1:
            raise RuntimeError(
                f"KL functional equation failed for "
                f"({word_of(ctx.elements[ui])!r}, {word_of(ctx.elements[wi])!r}) "
                f"in {ctx.name}"
            )
    table[key] = res
    return res


def _kl1(ctx: GroupContext, ui: int, wi: int) -> int:
    """P_uw evaluated at 1, cached (drives strict-edge machinery)."""
    cache: dict[tuple[int, int], int] = ctx.cache.setdefault("kl_at_one", {})
    key = (ui, wi)
    val = cache.get(key)
    if val is None:
        val = sum(_kl(ctx, ui, wi))
        cache[key] = val
    return val


# -- public operations ---------------------------------------------------


def r_poly(u: GroupElement, w: GroupElement) -> IntPoly:
    """R-polynomial of the pair: 0 if incomparable, monic of degree l(u,w)."""
    _same_ctx(u, w)
    return IntPoly(_r(u.ctx, u.index, w.index), Basis.Q)


def rtilde_poly(u: GroupElement, w: GroupElement) -> IntPoly:
    """Rtilde-polynomial of the pair: nonnegative coefficients, monic."""
    _same_ctx(u, w)
    return IntPoly(_rt(u.ctx, u.index, w.index), Basis.Q)


def kl_poly(u: GroupElement, w: GroupElement) -> IntPoly:
    """Kazhdan-Lusztig polynomial of the pair."""
    _same_ctx(u, w)
    return IntPoly(_kl(u.ctx, u.index, w.index), Basis.Q)


def kl_at_one(u: GroupElement, w: GroupElement) -> int:
    """P_uw(1): positive whenever u <= w, and 1 exactly when smooth."""
    _same_ctx(u, w)
    return _kl1(u.ctx, u.index, w.index)


def _same_ctx(u: GroupElement, w: GroupElement) -> None:
    if u.ctx is not w.ctx:
        raise ValueError("context mismatch: elements from different groups")


def check_r_rtilde_link(u: GroupElement, w: GroupElement) -> bool:
    """Verify R against Rtilde through the absolute-length closed form.

    Rtilde_uw must have strictly positive coefficients exactly in degrees
    a(u,w), a(u,w)+2, ..., l(u,w); writing c_n for them,

        R_uw(q) = sum_k c_{a+2k} q^((l-a-2k)/2) (q-1)^(a+2k).

    Returns True iff the rebuilt polynomial equals R_uw.  A coefficient
    pattern violation raises RuntimeError since it breaks the closed form
    itself, not just the equality.
    """
    _same_ctx(u, w)
    ctx = u.ctx
    if u == w or not bruhat_le(u, w):
        raise ValueError("check_r_rtilde_link requires u < w")
    a = absolute_length(u, w)
    ell = w.length - u.length
    rt = _rt(ctx, u.index, w.index)
    for n, c in enumerate(rt):
        expected_support = a <= n <= ell and (ell - n) % 2 == 0
        if expected_support and c <= 0:
            raise RuntimeError(
                f"Rtilde coefficient of q^{n} should be positive for "
                f"({word_of(u)!r}, {word_of(w)!r}) in {ctx.name}"
            )
        if not expected_support and c != 0:
            raise RuntimeError(
                f"Rtilde parity violation at q^{n} for "
                f"({word_of(u)!r}, {word_of(w)!r}) in {ctx.name}"
            )
    rebuilt = IntPoly.zero()
    for k in range((ell - a) // 2 + 1):
        c = rt[a + 2 * k]
        term = IntPoly.monomial((ell - a - 2 * k) // 2, c)
        rebuilt = rebuilt + term * IntPoly.q_minus_one_power(a + 2 * k)
    return rebuilt.coeffs == _r(ctx, u.index, w.index)


@dataclass
class FHDecomposition:
    """R_uw factored through its largest (q-1)-power.

    With a = a(u,w) and d = l(u,w) - a, the quotient R_uw / (q-1)^a is
    written both ways:

        sum_i f_{i-1} (q-1)^(d-i)  =  sum_i h_i q^(d-i)

    ``f`` lists (f_{-1}, ..., f_{d-1}) and ``h`` lists (h_0, ..., h_d);
    f is strictly positive and h palindromic, with f_{-1} = h_0 = 1.
    """

    a: int
    d: int
    f: tuple[int, ...]
    h: tuple[int, ...]


def fh_vectors(u: GroupElement, w: GroupElement) -> FHDecomposition:
    """Extract and validate the f/h-decomposition of R_uw (requires u < w)."""
    _same_ctx(u, w)
    ctx = u.ctx
    if u == w or not bruhat_le(u, w):
        raise ValueError("fh_vectors requires u < w")
    ell = w.length - u.length
    rc = _r(ctx, u.index, w.index)
    # peel off (q-1) factors by exact synthetic division
    a = 0
    cur = list(rc)
    while True:
        quot = [0] * (len(cur) - 1)
        acc = 0
        for k in range(len(cur) - 1, 0, -1):
            acc += cur[k]
            quot[k - 1] = acc
        if acc + cur[0] != 0:
            break
        cur = quot
        a += 1
    if a != absolute_length(u, w):
        raise RuntimeError(
            f"(q-1)-multiplicity {a} of R differs from absolute length for "
            f"({word_of(u)!r}, {word_of(w)!r}) in {ctx.name}"
        )
    quotient = IntPoly(cur, Basis.Q)
    d = ell - a
    h = tuple(reversed(quotient.coeffs))
    f = tuple(reversed(to_shifted(quotient).coeffs))
    ok = (
        len(f) == d + 1
        and len(h) == d + 1
        and f[0] == 1
        and h[0] == 1
        and all(x > 0 for x in f)
        and h == tuple(reversed(h))
    )
    # reconstruct both ways
    shifted_back = from_shifted(IntPoly(tuple(reversed(f)), Basis.QM1))
    ok = ok and shifted_back == quotient
    rebuilt = quotient * IntPoly.q_minus_one_power(a)
    ok = ok and rebuilt.coeffs == rc
    if not ok:
        raise RuntimeError(
            f"f/h-decomposition invariants failed for "
            f"({word_of(u)!r}, {word_of(w)!r}) in {ctx.name}"
        )
    return FHDecomposition(a=a, d=d, f=f, h=h)


def sum_r_over(x: GroupElement, w: GroupElement) -> IntPoly:
    """Sum of R_xv over all v in [x, w]; equals q^l(x,w) iff w is smooth above x."""
    _same_ctx(x, w)
    ctx = x.ctx
    if not bruhat_le(x, w):
        raise ValueError(
            f"elements {word_of(x)!r} and {word_of(w)!r} are incomparable"
        )
    cache: dict[tuple[int, int], Coeffs] = ctx.cache.setdefault("sum_r", {})
    key = (x.index, w.index)
    res = cache.get(key)
    if res is None:
        acc = [0] * (w.length - x.length + 1)
        for vi in _between(ctx, x.index, w.index):
            for i, c in enumerate(_r(ctx, x.index, vi)):
                acc[i] += c
        res = _trim(acc)
        cache[key] = res
    return IntPoly(res, Basis.Q)


def is_rationally_smooth(u: GroupElement, w: GroupElement) -> bool:
    """Whether every x in [u, w) has defect 0 under w."""
    _same_ctx(u, w)
    ctx = u.ctx
    if not bruhat_le(u, w):
        raise ValueError(
            f"elements {word_of(u)!r} and {word_of(w)!r} are incomparable"
        )
    masks = le_masks(ctx)
    up = up_adjacency(ctx)
    lengths = _lengths(ctx)
    wm = masks[w.index]
    for xi in _between(ctx, u.index, w.index):
        if xi == w.index:
            continue
        nbhd_size = sum(1 for vi in up[xi] if wm >> vi & 1)
        if nbhd_size != lengths[w.index] - lengths[xi]:
            return False
    return True


def strict_edges(u: GroupElement, w: GroupElement) -> list[GroupElement]:
    """Neighbors v of u inside [u, w] with P_uw(1) > P_vw(1)."""
    _same_ctx(u, w)
    ctx = u.ctx
    base = _kl1(ctx, u.index, w.index)
    return [
        v for v in neighborhood(u, w) if base > _kl1(ctx, v.index, w.index)
    ]


def strict_path_to_smooth(u: GroupElement, w: GroupElement) -> list[GroupElement]:
    """Greedy strict path from a singular u to a smooth vertex under w.

    At each step take the strict neighbor minimizing P(1), ties broken by
    element id.  Requires P_uw(1) > 1; P(1) strictly decreases along the
    path, so it terminates at a vertex with P(1) = 1.
    """
    _same_ctx(u, w)
    ctx = u.ctx
    if _kl1(ctx, u.index, w.index) <= 1:
        raise ValueError("strict_path_to_smooth requires a singular bottom vertex")
    path = [u]
    cur = u
    while _kl1(ctx, cur.index, w.index) > 1:
        here = _kl1(ctx, cur.index, w.index)
        best = None
        for v in neighborhood(cur, w):
            val = _kl1(ctx, v.index, w.index)
            if val < here and (best is None or (val, v.index) < best[:2]):
                best = (val, v.index, v)
        if best is None:
            raise RuntimeError(
                f"singular vertex {word_of(cur)!r} under {word_of(w)!r} in "
                f"{ctx.name} has no strict edge"
            )
        cur = best[2]
        path.append(cur)
    return path


# -- whole-group tables and the on-disk cache ----------------------------


@dataclass
class PolyTable:
    """One polynomial family over a whole group, keyed by element-id pairs."""

    kind: str
    entries: dict[tuple[int, int], IntPoly]


def fill_tables(ctx: GroupContext, kinds: tuple[str, ...] = KINDS) -> None:
    """Compute every comparable pair's entry for the requested kinds.

    Pairs are filled by increasing length of the top element; within one
    top element the KL entries go by descending length of the bottom
    element, which is the order the functional equation resolves in.
    """
    masks = le_masks(ctx)
    lengths = _lengths(ctx)
    for kind in kinds:
        if kind not in KINDS:
            raise ValueError(f"unknown table kind {kind!r}")
    for wi in range(ctx.order):
        below = list(iter_bits(masks[wi]))
        if "R" in kinds:
            for ui in below:
                _r(ctx, ui, wi)
        if "Rt" in kinds:
            for ui in below:
                _rt(ctx, ui, wi)
        if "KL" in kinds:
            for ui in sorted(below, key=lambda i: -lengths[i]):
                _kl(ctx, ui, wi)


def poly_table(ctx: GroupContext, kind: str) -> PolyTable:
    """Materialize one filled table with IntPoly values."""
    fill_tables(ctx, (kind,))
    raw = _table(ctx, kind)
    return PolyTable(
        kind=kind,
        entries={key: IntPoly(cs, Basis.Q) for key, cs in sorted(raw.items())},
    )


def save_tables(ctx: GroupContext, path, kinds: tuple[str, ...] = KINDS) -> int:
    """Write the currently memoized entries as newline-delimited JSON.

    Dumps whatever has been computed so far (call fill_tables first for
    complete tables); returns the record count.
    """
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for kind in kinds:
            raw = _table(ctx, kind)
            for (ui, wi), cs in sorted(raw.items(), key=lambda kv: (kv[0][1], kv[0][0])):
                if not cs:
                    continue  # incomparable probes carry no information
                rec = {
                    "kind": kind,
                    "group": ctx.name,
                    "u": word_of(ctx.elements[ui]),
                    "w": word_of(ctx.elements[wi]),
                    "coeffs": list(cs),
                }
                fh.write(json.dumps(rec) + "\n")
                n += 1
    return n


def load_tables(ctx: GroupContext, path) -> int:
    """Load and validate cache records; returns the number accepted.

    Every record must belong to this group, name a comparable pair, and
    satisfy the structural invariants of its kind (monic of degree l(u,w)
    for R and Rt, degree bound plus constant term 1 for KL, 1 on the
    diagonal).  Any violation raises ValueError and nothing is kept.
    """
    staged: dict[str, dict[tuple[int, int], Coeffs]] = {k: {} for k in KINDS}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                kind = rec["kind"]
                group = rec["group"]
                u_word, w_word = rec["u"], rec["w"]
                coeffs = tuple(rec["coeffs"])
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ValueError(f"{path}:{lineno}: malformed cache record ({exc})")
            if group != ctx.name:
                raise ValueError(
                    f"{path}:{lineno}: record for group {group!r}, expected {ctx.name!r}"
                )
            if kind not in KINDS:
                raise ValueError(f"{path}:{lineno}: unknown kind {kind!r}")
            if not all(isinstance(c, int) for c in coeffs):
                raise ValueError(f"{path}:{lineno}: non-integer coefficients")
            u = parse_element(ctx, u_word)
            w = parse_element(ctx, w_word)
            if not bruhat_le(u, w):
                raise ValueError(f"{path}:{lineno}: pair is not comparable")
            ell = w.length - u.length
            if u == w and coeffs != (1,):
                raise ValueError(f"{path}:{lineno}: diagonal entry must be 1")
            if kind in ("R", "Rt") and u != w:
                if len(coeffs) != ell + 1 or coeffs[-1] != 1:
                    raise ValueError(
                        f"{path}:{lineno}: {kind} entry must be monic of degree {ell}"
                    )
                if kind == "Rt" and any(c < 0 for c in coeffs):
                    raise ValueError(f"{path}:{lineno}: Rt coefficients must be >= 0")
            if kind == "KL" and u != w:
                if not coeffs or coeffs[0] != 1:
                    raise ValueError(f"{path}:{lineno}: KL constant term must be 1")
                if len(coeffs) - 1 > (ell - 1) // 2:
                    raise ValueError(
                        f"{path}:{lineno}: KL degree exceeds ({ell}-1)/2"
                    )
            staged[kind][(u.index, w.index)] = coeffs
    n = 0
    for kind, entries in staged.items():
        _table(ctx, kind).update(entries)
        n += len(entries)
    return n
