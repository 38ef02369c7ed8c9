import random
from fractions import Fraction

import pytest

import pappus.group as gr
from pappus.boxes import apply_word
from pappus.errors import BadLetter, MarkMismatch
from pappus.projective import ProjMap, same_point

F = Fraction


def test_reduce_word():
    assert gr.reduce_word("ii") == ""
    assert gr.reduce_word("1ii2") == "12"
    assert gr.reduce_word("iii") == "i"
    assert gr.reduce_word("i1i") == "i1i"
    with pytest.raises(BadLetter):
        gr.reduce_word("3")


def test_predicted_member():
    assert gr.predicted_member("")
    assert gr.predicted_member("11")
    assert gr.predicted_member("12")
    assert gr.predicted_member("i1i2")
    assert not gr.predicted_member("i")
    assert not gr.predicted_member("1")
    assert not gr.predicted_member("i11")


def test_rho_hat_symmetric_oracles(sym_seed):
    g1 = gr.rho_hat("1", sym_seed)
    assert g1.map == ProjMap(((2, 0, 0), (0, 1, 1), (0, -1, 3)))
    gi = gr.rho_hat("i", sym_seed)
    assert gi.map == ProjMap(((1, 0, 0), (0, 1, 0), (0, 0, -1)))


def test_rho_hat_member_residual_exact_zero(seed):
    for w in ("", "11", "12", "21", "22", "1122", "i1i2"):
        g = gr.rho_hat(w, seed)
        assert g.mark_residual == 0.0
        assert g.member


def test_rho_hat_quarantined_nonzero(seed):
    for w in ("1", "2", "i", "112"):
        g = gr.rho_hat(w, seed)
        assert g.mark_residual > 1e-3
        assert not g.member


def test_rho_hat_require_member(seed):
    with pytest.raises(MarkMismatch):
        gr.rho_hat("1", seed, require_member=True)


def test_rho_hat_maps_box(seed):
    """The word's map carries the seed onto the word's box, frame-wise."""
    for w in ("11", "12", "2112"):
        g = gr.rho_hat(w, seed)
        target = apply_word(seed, w)
        image = seed.transform(g.map)
        assert image == target
        assert same_point(image.t, target.t)


def test_conjugation_exact_any_seed(seed, sym_seed):
    for box in (seed, sym_seed):
        a = gr.rho_hat("i1i", box)
        b = gr.rho_hat("2", box)
        assert gr.compare_maps(a.map, b.map) == 0.0


def test_dedupe_short_words(seed):
    els = gr.enumerate_group(seed, 2)
    assert len(els) == 10
    words = sorted(g.word for g in els)
    # 1i and i2 collapse, 2i and i1 collapse
    assert "1i" not in words or "i2" not in words
    assert "2i" not in words or "i1" not in words


def test_member_census_matches_parity(seed):
    els = gr.enumerate_group(seed, 6)
    for g in els:
        assert g.member == gr.predicted_member(g.word)


def test_member_count_len8(seed):
    els = gr.enumerate_group(seed, 8)
    members = [g for g in els if g.member]
    assert len(members) == 341  # identity plus 4 + 16 + 64 + 256


def test_anti_homomorphism_exact(seed):
    rng = random.Random(5150)
    els = [g for g in gr.enumerate_group(seed, 4) if g.member and g.word]
    for _ in range(40):
        a, b = rng.choice(els), rng.choice(els)
        prod = gr.rho_hat(gr.reduce_word(a.word + b.word), seed)
        composed = b.map.compose(a.map)
        assert gr.compare_maps(prod.map, composed) == 0.0


def test_anti_homomorphism_fails_for_quarantined(seed):
    a = gr.rho_hat("1", seed)
    b = gr.rho_hat("2", seed)
    prod = gr.rho_hat("12", seed)
    composed = b.map.compose(a.map)
    assert gr.compare_maps(prod.map, composed) > 1e-2


def test_find_loxodromics(seed):
    els = [g for g in gr.enumerate_group(seed, 4) if g.member]
    lox = gr.find_loxodromics(els)
    words = [g.word for g, _ in lox]
    assert "12" in words and "21" in words
    assert "11" not in words and "22" not in words
    for g, rep in lox:
        assert rep.spec_class == "loxodromic"


def test_find_disjoint_pair(seed):
    els = [g for g in gr.enumerate_group(seed, 4) if g.member]
    lox = gr.find_loxodromics(els)
    pair = gr.find_disjoint_pair(lox)
    assert pair is not None
    (ga, ra), (gb, rb), sep = pair
    assert sep > 1e-3
    fixed_a = (ra.attracting_point, ra.saddle_point, ra.repelling_point)
    fixed_b = (rb.attracting_point, rb.saddle_point, rb.repelling_point)
    for x in fixed_a:
        for y in fixed_b:
            assert not same_point(x, y)


def test_finite_order_search(seed):
    found = gr.finite_order_search(seed, maxlen=4)
    orders = {w: k for w, k in found}
    assert orders.get("i") == 2
    assert 3 not in set(orders.values())


def test_element_repr_flags_quarantine(seed):
    g = gr.rho_hat("1", seed)
    assert "quarantined" in repr(g)
    h = gr.rho_hat("11", seed)
    assert "quarantined" not in repr(h)
