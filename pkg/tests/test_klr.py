"""Tests for R/Rtilde/KL tables, f/h-vectors, smoothness, strict edges."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from kl_oracle import oracle_kl_table  # noqa: E402

from bruhatkl.bruhat import absolute_length, comparable_pairs  # noqa: E402
from bruhatkl.coxeter import (  # noqa: E402
    build_group,
    inverse,
    multiply,
    parse_element,
    parse_group_spec,
    word_of,
)
from bruhatkl.klr import (  # noqa: E402
    check_r_rtilde_link,
    fh_vectors,
    fill_tables,
    is_rationally_smooth,
    kl_at_one,
    kl_poly,
    load_tables,
    poly_table,
    r_poly,
    rtilde_poly,
    save_tables,
    strict_edges,
    strict_path_to_smooth,
    sum_r_over,
)
from bruhatkl.polynomial import Basis, IntPoly, to_shifted  # noqa: E402

_CACHE = {}


def ctx_for(spec):
    if spec not in _CACHE:
        _CACHE[spec] = build_group(parse_group_spec(spec))
    return _CACHE[spec]


def test_r_poly_examples():
    ctx = ctx_for("A2")
    e, w0 = ctx.identity, ctx.longest_element()
    for w in ctx.elements:
        assert r_poly(w, w) == IntPoly([1])
    assert r_poly(e, w0) == IntPoly([-1, 2, -2, 1])
    # boolean pairs: R = (q-1)^l
    s1, s2 = ctx.simples
    assert r_poly(e, multiply(s1, s2)) == IntPoly.q_minus_one_power(2)
    assert r_poly(s1, w0) == IntPoly.q_minus_one_power(2)
    # incomparable pairs give 0
    assert r_poly(s1, s2).is_zero


def test_r_poly_monic_degree_and_value_at_one():
    for spec in ("A3", "B2", "G2"):
        ctx = ctx_for(spec)
        for ui, wi in comparable_pairs(ctx):
            u, w = ctx.elements[ui], ctx.elements[wi]
            p = r_poly(u, w)
            assert p.degree == w.length - u.length
            assert p.coeffs[-1] == 1
            if u != w:
                assert sum(p.coeffs) == 0  # q-1 divides R
            assert r_poly(inverse(u), inverse(w)) == p


def test_rtilde_examples():
    ctx = ctx_for("A2")
    e, w0 = ctx.identity, ctx.longest_element()
    assert rtilde_poly(w0, w0) == IntPoly([1])
    assert rtilde_poly(e, w0) == IntPoly([0, 1, 0, 1])  # q^3 + q
    s1 = ctx.simples[0]
    assert rtilde_poly(e, s1) == IntPoly([0, 1])
    for ui, wi in comparable_pairs(ctx):
        assert all(c >= 0 for c in rtilde_poly(ctx.elements[ui], ctx.elements[wi]).coeffs)


def test_r_rtilde_link():
    ctx = ctx_for("A2")
    e, w0 = ctx.identity, ctx.longest_element()
    assert check_r_rtilde_link(e, w0)
    assert check_r_rtilde_link(e, ctx.simples[0])
    ctx3 = ctx_for("A3")
    for ui, wi in comparable_pairs(ctx3):
        if ui != wi:
            assert check_r_rtilde_link(ctx3.elements[ui], ctx3.elements[wi])
    with pytest.raises(ValueError):
        check_r_rtilde_link(e, e)


def test_kl_examples():
    ctx = ctx_for("A2")
    for ui, wi in comparable_pairs(ctx):
        assert kl_poly(ctx.elements[ui], ctx.elements[wi]) == IntPoly([1])
    ctx3 = ctx_for("A3")
    w = parse_element(ctx3, "2 1 3 2")
    assert kl_poly(ctx3.identity, w) == IntPoly([1, 1])
    assert kl_at_one(ctx3.identity, w) == 2
    s1, s2 = ctx3.simples[0], ctx3.simples[1]
    assert kl_poly(s2, w) == IntPoly([1, 1])
    assert kl_poly(s1, s2).is_zero


def test_kl_degree_bound_and_constant_term():
    for spec in ("A3", "B2"):
        ctx = ctx_for(spec)
        for ui, wi in comparable_pairs(ctx):
            u, w = ctx.elements[ui], ctx.elements[wi]
            p = kl_poly(u, w)
            assert p.coeff(0) == 1
            if u != w:
                assert p.degree <= (w.length - u.length - 1) // 2


def test_kl_matches_oracle_a3_b2():
    for spec in ("A3", "B2"):
        ctx = build_group(parse_group_spec(spec))  # fresh context
        fill_tables(ctx, ("KL",))
        main = {k: v for k, v in ctx.cache["poly_KL"].items() if v}
        assert main == oracle_kl_table(ctx)


def test_fh_vectors():
    ctx = ctx_for("A2")
    e, w0 = ctx.identity, ctx.longest_element()
    fh = fh_vectors(e, w0)
    assert (fh.a, fh.d, fh.f, fh.h) == (1, 2, (1, 1, 1), (1, -1, 1))
    s1, s2 = ctx.simples
    fh = fh_vectors(e, multiply(s1, s2))
    assert (fh.a, fh.d, fh.f, fh.h) == (2, 0, (1,), (1,))
    fh = fh_vectors(e, s1)
    assert (fh.a, fh.d, fh.f, fh.h) == (1, 0, (1,), (1,))
    with pytest.raises(ValueError):
        fh_vectors(w0, w0)


def test_fh_structure_exhaustive_a3():
    ctx = ctx_for("A3")
    for ui, wi in comparable_pairs(ctx):
        if ui == wi:
            continue
        u, w = ctx.elements[ui], ctx.elements[wi]
        fh = fh_vectors(u, w)
        assert fh.a == absolute_length(u, w)
        assert fh.f[0] == 1 and fh.h[0] == 1
        assert all(x > 0 for x in fh.f)
        assert fh.h == tuple(reversed(fh.h))


def test_sum_r_over():
    ctx = ctx_for("A2")
    e, w0 = ctx.identity, ctx.longest_element()
    assert sum_r_over(e, w0) == IntPoly.q_power(3)
    assert sum_r_over(w0, w0) == IntPoly([1])
    ctx3 = ctx_for("A3")
    w = parse_element(ctx3, "2 1 3 2")
    s = sum_r_over(ctx3.identity, w)
    excess = s - IntPoly.q_power(4)
    assert not excess.is_zero
    assert all(c >= 0 for c in to_shifted(excess).coeffs)


def test_is_rationally_smooth():
    ctx = ctx_for("A2")
    for ui, wi in comparable_pairs(ctx):
        assert is_rationally_smooth(ctx.elements[ui], ctx.elements[wi])
    ctx3 = ctx_for("A3")
    w = parse_element(ctx3, "2 1 3 2")
    assert not is_rationally_smooth(ctx3.identity, w)
    assert is_rationally_smooth(w, w)
    # agreement with KL triviality on all of A3
    for ui, wi in comparable_pairs(ctx3):
        u, v = ctx3.elements[ui], ctx3.elements[wi]
        assert is_rationally_smooth(u, v) == (kl_poly(u, v) == IntPoly([1]))


def test_strict_edges():
    ctx = ctx_for("A2")
    assert strict_edges(ctx.identity, ctx.longest_element()) == []
    ctx3 = ctx_for("A3")
    w = parse_element(ctx3, "2 1 3 2")
    edges = strict_edges(ctx3.identity, w)
    assert len(edges) >= 2  # defect + 1
    assert word_of(edges[0]) == "1"
    # the equal-value neighbor s2 is not strict
    assert all(word_of(v) != "2" for v in edges)


def test_strict_path_to_smooth():
    ctx3 = ctx_for("A3")
    w = parse_element(ctx3, "2 1 3 2")
    path = strict_path_to_smooth(ctx3.identity, w)
    assert len(path) >= 2
    assert path[0] == ctx3.identity
    assert kl_at_one(path[-1], w) == 1
    vals = [kl_at_one(v, w) for v in path]
    assert vals == sorted(vals, reverse=True) and len(set(vals)) == len(vals)
    with pytest.raises(ValueError):
        strict_path_to_smooth(w, w)


def test_b2_c2_identical_tables_by_word():
    b2, c2 = ctx_for("B2"), ctx_for("C2")
    for ui, wi in comparable_pairs(b2):
        ub, wb = b2.elements[ui], b2.elements[wi]
        uc = parse_element(c2, word_of(ub))
        wc = parse_element(c2, word_of(wb))
        assert r_poly(ub, wb).coeffs == r_poly(uc, wc).coeffs
        assert kl_poly(ub, wb).coeffs == kl_poly(uc, wc).coeffs


def test_poly_table_invariants():
    ctx = ctx_for("B2")
    table = poly_table(ctx, "R")
    assert table.kind == "R"
    for (ui, wi), p in table.entries.items():
        if ui == wi:
            assert p == IntPoly([1])
        elif not p.is_zero:
            assert p.degree == ctx.elements[wi].length - ctx.elements[ui].length


def test_cache_save_load_round_trip(tmp_path):
    ctx = build_group(parse_group_spec("B2"))
    fill_tables(ctx)
    path = tmp_path / "b2.jsonl"
    n = save_tables(ctx, path)
    assert n > 0
    fresh = build_group(parse_group_spec("B2"))
    assert load_tables(fresh, path) == n
    fill_tables(ctx)
    for kind in ("R", "Rt", "KL"):
        key = f"poly_{kind}"
        lhs = {k: v for k, v in ctx.cache[key].items() if v}
        rhs = {k: v for k, v in fresh.cache[key].items() if v}
        assert lhs == rhs


def test_cache_load_rejects_bad_records(tmp_path):
    ctx = build_group(parse_group_spec("B2"))
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"kind":"R","group":"B2","u":"e","w":"1 2","coeffs":[1,1]}\n')
    with pytest.raises(ValueError):
        load_tables(ctx, bad)  # degree-2 pair, not monic of degree 2
    bad.write_text('{"kind":"KL","group":"B2","u":"e","w":"1 2 1","coeffs":[2,1]}\n')
    with pytest.raises(ValueError):
        load_tables(ctx, bad)  # constant term must be 1
    bad.write_text('{"kind":"R","group":"A2","u":"e","w":"1","coeffs":[-1,1]}\n')
    with pytest.raises(ValueError):
        load_tables(ctx, bad)  # wrong group
    bad.write_text('{"kind":"R","group":"B2","u":"1","w":"2","coeffs":[1]}\n')
    with pytest.raises(ValueError):
        load_tables(ctx, bad)  # incomparable pair
    bad.write_text("not json\n")
    with pytest.raises(ValueError):
        load_tables(ctx, bad)
