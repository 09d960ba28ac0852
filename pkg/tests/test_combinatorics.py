# Fredkin Lab - 组合模块测试

from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from combinatorics import (
    Alphabet,
    PathKind,
    area,
    areas_from_codes,
    canonical_path,
    catalan,
    catalan_convolution,
    dyck_area_closed_form,
    dyck_count,
    enumerate_codes,
    enumerate_paths,
    format_word,
    fredkin_neighbors,
    lattice_count,
    matching,
    motzkin_count,
    parse_word,
    peak_displace_targets,
    peaks,
    sample_dyck_areas,
    sample_dyck_uniform,
    word_table,
)
from combinatorics.moves import MoveKind, canonical_paths_from, exchange_at
from combinatorics.sampling import sample_dyck_shapes
from combinatorics.words import height_profile, is_valid
from common.errors import CapExceededError, InvalidPathError, NotAdjacentError
from configs.settings import reset_settings_cache
from storage.cache import EnumerationCache


# ============================================
# 计数
# ============================================

def test_catalan_values():
    assert [catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
    assert catalan(14) == 2674440


@pytest.mark.parametrize("m", range(1, 16))
def test_catalan_convolution(m):
    assert catalan_convolution(m) == catalan(m)


def test_path_counts():
    assert dyck_count(6, 1) == 5
    assert dyck_count(4, 2) == 2**2 * 2
    assert dyck_count(5, 1) == 0
    assert motzkin_count(4, 1) == 9
    assert motzkin_count(2, 2) == 3
    assert lattice_count(4) == 6


@pytest.mark.parametrize("length,colors,kind", [
    (8, 1, PathKind.DYCK),
    (6, 2, PathKind.DYCK),
    (5, 1, PathKind.MOTZKIN),
    (4, 2, PathKind.MOTZKIN),
    (6, 1, PathKind.LATTICE),
])
def test_enumeration_matches_counts(length, colors, kind):
    paths = enumerate_paths(length, colors, kind)
    expected = {
        PathKind.DYCK: dyck_count(length, colors),
        PathKind.MOTZKIN: motzkin_count(length, colors),
        PathKind.LATTICE: lattice_count(length),
    }[kind]
    assert len(paths) == expected
    assert len(set(paths)) == expected
    assert all(is_valid(p.steps, kind) for p in paths)


def test_enumeration_sorted_codes():
    codes = enumerate_codes(10, 1, PathKind.DYCK)
    assert np.all(np.diff(codes) > 0)


def test_enumerate_paths_cap():
    with pytest.raises(CapExceededError) as info:
        enumerate_paths(26, 1, PathKind.DYCK)
    assert info.value.exit_code == 3


def test_enumerate_paths_odd_dyck_length():
    with pytest.raises(InvalidPathError):
        enumerate_paths(5, 1, PathKind.DYCK)


@pytest.mark.parametrize("n", range(1, 9))
def test_area_closed_form_matches_enumeration(n):
    codes = enumerate_codes(2 * n, 1, PathKind.DYCK)
    assert int(areas_from_codes(codes, 2 * n, Alphabet(1)).sum()) == dyck_area_closed_form(n)


# ============================================
# 路径字
# ============================================

def test_parse_compact_and_tokens():
    word = parse_word("u1 u2 d2 d1")
    assert word.tokens == ("u1", "u2", "d2", "d1")
    assert format_word(word) == "u1 u2 d2 d1"
    assert format_word(parse_word("uudd")) == "uudd"


@pytest.mark.parametrize("text", ["dudu", "uud", "u1 d2", "u0d"])
def test_invalid_dyck_words(text):
    with pytest.raises(InvalidPathError):
        parse_word(text)


def test_lattice_allows_negative_prefix():
    word = parse_word("duud", PathKind.LATTICE)
    assert height_profile(word).minimum == -1
    with pytest.raises(InvalidPathError):
        area(word)


def test_height_area_peaks_matching(uudd, udud):
    assert height_profile(uudd).heights == (0, 1, 2, 1, 0)
    assert area(uudd) == 4
    assert area(udud) == 2
    assert peaks(uudd) == [2]
    assert peaks(udud) == [1, 3]
    assert matching(uudd) == [4, 3, 2, 1]


def test_alphabet_token_order():
    assert Alphabet(2).tokens == ("d1", "d2", "u1", "u2")
    assert Alphabet(1, flat=True).tokens[0] == "0"


# ============================================
# Fredkin 移动与峰位移
# ============================================

def test_exchange_at_uud(uudd):
    new, kind, detail = exchange_at(uudd.steps, 1)
    assert kind is MoveKind.EXCHANGE_UP
    assert detail == "uud->udu"
    assert format_word(new) == "udud"


def test_exchange_moves_colored_peak():
    word = parse_word("u1 u2 d2 d1")
    new, _, _ = exchange_at(word.steps, 1)
    assert format_word(new, 2) == "u2 d2 u1 d1"
    assert exchange_at(parse_word("uuuddd").steps, 1) is None


def test_fredkin_neighbors_recolor():
    word = parse_word("u1 d1")
    neighbors = fredkin_neighbors(word, colors=2)
    assert [format_word(w, 2) for w, _ in neighbors] == ["u2 d2"]
    assert neighbors[0][1].kind is MoveKind.RECOLOR


def test_peak_displace_targets_n2(uudd, udud):
    targets = dict(peak_displace_targets(uudd, 1))
    assert sum(targets.values()) == 1
    # 唯一的峰有 3 个插入位置，其中 2 个得到 udud
    assert targets[udud] == Fraction(2, 9)
    assert targets[uudd] == Fraction(7, 9)


def test_canonical_path_is_fredkin_walk():
    x = parse_word("uduudd")
    for y, route in canonical_paths_from(x, 1).items():
        assert route[0] == x and route[-1] == y
        for a, b in zip(route, route[1:]):
            assert b in {w for w, _ in fredkin_neighbors(a, 1)}


def test_canonical_path_not_adjacent():
    x = parse_word("uuuddd")
    y = parse_word("ududud")
    with pytest.raises(NotAdjacentError):
        canonical_path(x, y)


@st.composite
def dyck_words(draw, max_n=7, max_colors=3):
    n = draw(st.integers(1, max_n))
    colors = draw(st.integers(1, max_colors))
    seed = draw(st.integers(0, 2**31 - 1))
    return sample_dyck_uniform(n, colors, seed), colors


@settings(max_examples=60, deadline=None)
@given(dyck_words())
def test_fredkin_moves_preserve_dyck(case):
    word, colors = case
    for neighbor, move in fredkin_neighbors(word, colors):
        assert is_valid(neighbor.steps, PathKind.DYCK)
        delta = area(neighbor) - area(word)
        if move.kind is MoveKind.RECOLOR:
            assert delta == 0
        else:
            assert abs(delta) == 2


@settings(max_examples=40, deadline=None)
@given(dyck_words(max_n=5, max_colors=2))
def test_peak_displace_distribution_sums_to_one(case):
    word, colors = case
    targets = peak_displace_targets(word, colors)
    assert sum(p for _, p in targets) == 1
    assert all(p > 0 for _, p in targets)


@settings(max_examples=60, deadline=None)
@given(dyck_words())
def test_matching_is_involution(case):
    word, _ = case
    partner = matching(word)
    assert all(p is not None for p in partner)
    for i, j in enumerate(partner, start=1):
        assert partner[j - 1] == i
        assert word.steps[i - 1].color == word.steps[j - 1].color


# ============================================
# 采样
# ============================================

def test_cycle_lemma_sampler_uniform():
    rng = np.random.default_rng(2024)
    shapes = sample_dyck_shapes(rng, 3, 10_000)
    heights = np.cumsum(shapes, axis=1)
    assert heights.min() >= 0
    assert np.all(heights[:, -1] == 0)

    counts = Counter(map(bytes, shapes.astype(np.int8)))
    assert len(counts) == catalan(3)
    _, p_value = stats.chisquare(list(counts.values()))
    assert p_value > 1e-3


def test_sample_dyck_uniform_colors():
    word = sample_dyck_uniform(6, colors=3, seed=11)
    assert len(word) == 12
    assert is_valid(word.steps, PathKind.DYCK)
    assert word == sample_dyck_uniform(6, colors=3, seed=11)


def test_sample_areas_reproducible():
    a = sample_dyck_areas(20, 2500, seed=5, batch_size=1000)
    b = sample_dyck_areas(20, 2500, seed=5, batch_size=1000)
    assert a.size == 2500
    assert np.array_equal(a, b)
    assert a.min() >= 20


def test_sample_areas_independent_of_workers():
    serial = sample_dyck_areas(10, 3000, seed=3, batch_size=500, workers=1)
    parallel = sample_dyck_areas(10, 3000, seed=3, batch_size=500, workers=2)
    assert np.array_equal(serial, parallel)


# ============================================
# 枚举缓存
# ============================================

def test_enumeration_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv("FREDKIN_LAB_CACHE", str(tmp_path / "cache"))
    reset_settings_cache()

    first = enumerate_codes(8, 2, PathKind.DYCK)
    second = enumerate_codes(8, 2, PathKind.DYCK)
    assert np.array_equal(first, second)

    records = EnumerationCache(tmp_path / "cache").list_records()
    assert [(r.kind, r.length, r.colors, r.count) for r in records] == [("dyck", 8, 2, first.size)]


def test_word_table_index(udud, uudd):
    table = word_table(4, 1, PathKind.DYCK)
    assert list(table) == [udud, uudd]
    assert table.index(uudd) == 1
    assert parse_word("uduudd") not in table
