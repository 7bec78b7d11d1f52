"""Coderivation extension against a brute-force oracle, plus the relation
and Jacobi-equivalence reports."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopspace.coderivations import (
    CoderivationRep,
    coderivation_relations,
    coproduct,
    front_sign,
    jacobi_coderivation_equiv,
    wedge_sort,
    wedge_words,
)
from loopspace.goldman import goldman_bracket, load_fat_graph
from loopspace.structures import load_structure_file, string_brackets


def sort_oracle(seq, sdegs):
    """Independent wedge sort: the Koszul sign only sees odd letters, so it
    is the inversion parity of the odd subsequence."""
    odd = [x for x in seq if sdegs[x] % 2]
    inv = sum(
        1
        for i in range(len(odd))
        for j in range(i + 1, len(odd))
        if odd[i] > odd[j]
    )
    word = tuple(sorted(seq))
    for p in range(len(word) - 1):
        if word[p] == word[p + 1] and sdegs[word[p]] % 2:
            return None, 0
    return word, (-1) ** inv


def unshuffle_sign_oracle(word, positions, sdegs):
    """Move the chosen positions to the front one adjacent swap at a time,
    paying -1 whenever two odd letters pass each other."""
    perm = list(range(len(word)))
    sign = 1
    target = 0
    for q in positions:
        pos = perm.index(q)
        while pos > target:
            a, b = perm[pos - 1], perm[pos]
            if sdegs[word[a]] % 2 and sdegs[word[b]] % 2:
                sign = -sign
            perm[pos - 1], perm[pos] = b, a
            pos -= 1
        target += 1
    return sign, perm


def extension_oracle(rep, word):
    """Coderivation extension computed from scratch by adjacent swaps."""
    out = {}
    for positions in itertools.combinations(range(len(word)), rep.k):
        sgn, perm = unshuffle_sign_oracle(word, positions, rep.sdegs)
        args = tuple(word[p] for p in positions)  # increasing, so sorted
        rest = tuple(word[p] for p in perm[rep.k:])
        for b, c in rep.comps.get(args, {}).items():
            w2, s2 = sort_oracle((b,) + rest, rep.sdegs)
            if w2 is None:
                continue
            coeff = out.get(w2, Fraction(0)) + sgn * s2 * c
            if coeff:
                out[w2] = coeff
            else:
                out.pop(w2, None)
    return out


SDEGS = (0, 1, 1, 2)  # two even letters, two odd


@given(st.lists(st.integers(min_value=0, max_value=3), max_size=7))
@settings(deadline=None)
def test_wedge_sort_matches_oracle(seq):
    assert wedge_sort(seq, SDEGS) == sort_oracle(seq, SDEGS)


@given(st.data())
@settings(deadline=None)
def test_front_sign_matches_oracle(data):
    word = tuple(
        data.draw(st.lists(st.integers(min_value=0, max_value=3), max_size=7))
    )
    k = data.draw(st.integers(min_value=0, max_value=len(word)))
    positions = tuple(sorted(data.draw(
        st.permutations(range(len(word))))[:k]))
    want, _ = unshuffle_sign_oracle(word, positions, SDEGS)
    assert front_sign(word, positions, SDEGS) == want


def random_rep(rng, k, sdegs=SDEGS):
    comps = {}
    for tup in wedge_words(len(sdegs), sdegs, k):
        if rng.random() < 0.3:
            continue
        combo = {}
        for b in range(len(sdegs)):
            c = rng.randint(-3, 3)
            if c:
                combo[b] = Fraction(c)
        if combo:
            comps[tup] = combo
    return CoderivationRep(sdegs, k, comps)


def test_extension_matches_oracle_random_reps():
    rng = random.Random(23)
    for k in (1, 2, 3):
        rep = random_rep(rng, k)
        for length in range(5):
            for word in wedge_words(len(SDEGS), SDEGS, length):
                assert rep.apply_word(word) == extension_oracle(rep, word), (
                    k,
                    word,
                )


def test_wedge_words_canonical():
    words = list(wedge_words(4, SDEGS, 2))
    assert all(w == tuple(sorted(w)) for w in words)
    assert (1, 1) not in words  # odd letter cannot repeat
    assert (0, 0) in words and (3, 3) in words
    assert len(set(words)) == len(words)


def test_coproduct_counit_and_symmetry():
    word = (0, 1, 2)
    cop = coproduct(word, SDEGS)
    assert cop[((), word)] == 1
    assert cop[(word, ())] == 1
    # each splitting pairs with its flip up to the block-swap Koszul sign
    for (l, r), s in cop.items():
        odd_l = sum(SDEGS[i] for i in l)
        odd_r = sum(SDEGS[i] for i in r)
        flip = -1 if (odd_l % 2) and (odd_r % 2) else 1
        assert cop[(r, l)] == flip * s


@pytest.fixture
def torus_reps(data_path):
    t = load_structure_file(data_path("torus_bracket.struct"))
    out = string_brackets(t, max_arity=3)
    assert out.ok
    return t, out


def test_torus_relations_clean(torus_reps):
    t, out = torus_reps
    lines = coderivation_relations(out.reps, word_len=4, names=t.string_space.names)
    assert all(w is None for _, w in lines), lines
    labels = [l for l, _ in lines]
    assert "m2 squares to zero on words up to length 4" in labels
    assert "m2 and m3 anticommute on words up to length 4" in labels
    assert (
        "total coderivation for arities {2,3} squares to zero "
        "on words up to length 4" in labels
    )
    assert (
        "m2 is a coderivation for the unshuffle coproduct "
        "on words up to length 4" in labels
    )


def test_explicit_lambda_sets(torus_reps):
    t, out = torus_reps
    lines = coderivation_relations(
        out.reps, word_len=3, lambda_sets=[{2}, {3}, {2, 3}]
    )
    totals = [l for l, _ in lines if l.startswith("total coderivation")]
    assert len(totals) == 3
    assert all(w is None for l, w in lines if l.startswith("total"))


def index_bracket(t, out):
    ss = t.string_space
    idx = {n: i for i, n in enumerate(ss.names)}
    degrees = [ss.degree(n) for n in ss.names]
    bracket = {}
    for (a, b), combo in out.bracket.items():
        bracket[(idx[a], idx[b])] = {idx[z]: c for z, c in combo.items()}
    return degrees, bracket


def test_torus_jacobi_equivalence(torus_reps):
    t, out = torus_reps
    degrees, bracket = index_bracket(t, out)
    lines = jacobi_coderivation_equiv(degrees, bracket, 3, names=t.string_space.names)
    assert [l for l, _ in lines] == [
        "bracket satisfies the graded Jacobi identity",
        "arity-2 coderivation squares to zero on words up to length 3",
        "formulations agree",
    ]
    assert all(w is None for _, w in lines), lines


def test_perturbed_bracket_fails_both_ways(torus_reps):
    t, out = torus_reps
    degrees, bracket = index_bracket(t, out)
    # keep antisymmetry (all degrees even here) but break the Jacobi
    # identity with one extra structure constant on [S_1_0, S_0_1]
    names = list(t.string_space.names)
    i, j, z = names.index("S_1_0"), names.index("S_0_1"), names.index("S_0_2")
    bracket.setdefault((i, j), {})[z] = (
        bracket.get((i, j), {}).get(z, Fraction(0)) + 1
    )
    bracket.setdefault((j, i), {})[z] = (
        bracket.get((j, i), {}).get(z, Fraction(0)) - 1
    )
    lines = jacobi_coderivation_equiv(degrees, bracket, 3)
    jac, sq, agree = (w for _, w in lines)
    assert jac is not None
    assert sq is not None
    assert agree is None  # both formulations fail together


def test_jacobi_equiv_on_truncated_surface_bracket(data_path):
    # project the surface bracket onto a few classes; the truncation need
    # not satisfy the Jacobi identity, but the two renderings must agree
    g = load_fat_graph(data_path("torus.fat"))
    classes = [g.word(s) for s in ("", "a", "b", "a b", "a a b")]
    idx = {w: i for i, w in enumerate(classes)}
    bracket = {}
    for i, u in enumerate(classes):
        for j, v in enumerate(classes):
            combo = {}
            for w, c in goldman_bracket(u, v).items():
                if w in idx:
                    combo[idx[w]] = Fraction(c)
            if combo:
                bracket[(i, j)] = combo
    degrees = [0] * len(classes)
    lines = jacobi_coderivation_equiv(degrees, bracket, 3)
    assert lines[2][0] == "formulations agree"
    assert lines[2][1] is None


def test_jacobi_equiv_input_errors():
    with pytest.raises(ValueError, match="length at least 3"):
        jacobi_coderivation_equiv([0], {}, 2)
    with pytest.raises(ValueError, match="not graded antisymmetric"):
        jacobi_coderivation_equiv([0], {(0, 0): {0: Fraction(1)}}, 3)
    with pytest.raises(ValueError, match="no coderivation components"):
        coderivation_relations({}, 3)
    a = CoderivationRep((0,), 1, {})
    b = CoderivationRep((1,), 1, {})
    with pytest.raises(ValueError, match="disagree on shifted degrees"):
        coderivation_relations({1: a, 2: b}, 3)
