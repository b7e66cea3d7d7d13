import math
import random
from fractions import Fraction
from functools import reduce

import pytest

from perdom import weyl
from perdom.errors import ConfigError
from perdom.weyl import (
    ParabolicType,
    act,
    all_perms,
    bruhat_leq,
    compose,
    coset_min,
    double_coset_reps,
    from_cycle,
    identity,
    inverse,
    is_kostant,
    kostant_reps,
    length,
    longest_element,
    simple_reflection,
    stabilizer_type,
)


def frac(xs):
    return tuple(Fraction(x) for x in xs)


# -- reduced words and the subword test oracle --------------------------------


def reduced_word(w):
    """Right-descent peeling; returns indices i with w = s_{i_1}...s_{i_k}."""
    w = list(w)
    peeled = []
    while True:
        i = next((i for i in range(len(w) - 1) if w[i] > w[i + 1]), None)
        if i is None:
            break
        w[i], w[i + 1] = w[i + 1], w[i]
        peeled.append(i + 1)
    return peeled[::-1]


def word_to_perm(word, d):
    return reduce(compose, (simple_reflection(i, d) for i in word), identity(d))


def bruhat_subword_oracle(u, w):
    """u <= w iff u is a product of some subword of a reduced word for w."""
    d = len(w)
    word = reduced_word(w)
    for mask in range(1 << len(word)):
        sub = [word[j] for j in range(len(word)) if mask >> j & 1]
        if word_to_perm(sub, d) == u:
            return True
    return False


def test_reduced_words_are_reduced():
    for w in all_perms(4):
        word = reduced_word(w)
        assert len(word) == length(w)
        assert word_to_perm(word, 4) == w


# -- lengths and composition ---------------------------------------------------


def test_length_examples():
    assert length(identity(5)) == 0
    assert length(from_cycle(5, (2, 3, 4))) == 2
    assert length(from_cycle(5, (2, 3, 4, 5))) == 3


def test_composition_convention():
    u, v = (2, 1, 3), (1, 3, 2)
    uv = compose(u, v)
    for i in range(1, 4):
        assert uv[i - 1] == u[v[i - 1] - 1]


def test_length_subadditive():
    for u in all_perms(4):
        for v in all_perms(4):
            assert length(compose(u, v)) <= length(u) + length(v)


def test_inverse():
    for w in all_perms(4):
        assert compose(w, inverse(w)) == identity(4)
        assert length(inverse(w)) == length(w)


# -- Bruhat order ---------------------------------------------------------------


def test_bruhat_reflexive_and_top():
    for d in (2, 3, 4):
        for w in all_perms(d):
            assert bruhat_leq(w, w)
        assert not bruhat_leq(longest_element(d), identity(d))
        assert bruhat_leq(identity(d), longest_element(d))


def test_bruhat_example_pair_in_rank_five():
    assert bruhat_leq(from_cycle(5, (2, 3, 4)), from_cycle(5, (2, 3, 4, 5)))


@pytest.mark.parametrize("d", [3, 4])
def test_bruhat_matches_subword_oracle(d):
    perms = all_perms(d)
    for u in perms:
        for w in perms:
            assert bruhat_leq(u, w) == bruhat_subword_oracle(u, w)


# -- action on cocharacters ------------------------------------------------------


def test_act_identity_and_examples():
    mu = frac((4, 3, 2, 1, -10))
    assert act(identity(5), mu) == mu
    assert act(from_cycle(5, (2, 3, 4)), mu) == frac((4, 1, 3, 2, -10))
    assert act(from_cycle(5, (2, 3, 4, 5)), mu) == frac((4, -10, 3, 2, 1))


def test_act_is_a_left_action():
    rng = random.Random(3)
    mu = frac((5, 2, 0, -3, -4))
    perms = all_perms(5)
    for _ in range(40):
        u, v = rng.choice(perms), rng.choice(perms)
        assert act(compose(u, v), mu) == act(u, act(v, mu))


# -- parabolic types --------------------------------------------------------------


def test_stabilizer_examples():
    assert stabilizer_type(frac((3, 2, -5))).gens == ()
    assert stabilizer_type(frac((1, 1, -2))).gens == (1,)
    assert stabilizer_type(frac((1, 1, -1, -1))).gens == (1, 3)
    with pytest.raises(ConfigError):
        stabilizer_type(frac((1, 2, -3)))


def test_parabolic_composition():
    assert ParabolicType.from_gens(4, []).composition() == (1, 1, 1, 1)
    assert ParabolicType.from_gens(4, [1, 3]).composition() == (2, 2)
    assert ParabolicType.full(4).composition() == (4,)
    assert ParabolicType.from_gens(4, [1]).complement() == (2, 3)


# -- minimal coset representatives -------------------------------------------------


def test_kostant_counts():
    mu = frac((1, 1, -1, -1))
    reps = kostant_reps(mu)
    assert len(reps) == math.factorial(4) // (2 * 2)
    assert len(kostant_reps(frac((2, 1, -3)))) == 6


def test_kostant_drinfeld_chain():
    mu = frac((3, -1, -1, -1))
    reps = kostant_reps(mu)
    expected = [identity(4)]
    for i in range(1, 4):
        expected.append(compose(simple_reflection(i, 4), expected[-1]))
    assert sorted(reps) == sorted(expected)
    assert [length(w) for w in reps] == [0, 1, 2, 3]


@pytest.mark.parametrize(
    "mu",
    [frac((2, 1, -3)), frac((1, 1, -2)), frac((1, 1, -1, -1)), frac((4, 3, 2, 1, -10)),
     frac((2, 2, 1, -5, -5) )],
)
def test_unique_factorization_with_additive_length(mu):
    d = len(mu)
    reps = set(kostant_reps(mu))
    stab_gens = [simple_reflection(i, d) for i in stabilizer_type(mu).gens]
    stabilizer = {identity(d)}
    frontier = {identity(d)}
    while frontier:
        frontier = {
            compose(u, s) for u in frontier for s in stab_gens
        } - stabilizer
        stabilizer |= frontier
    for w in all_perms(d):
        wdot = coset_min(w, mu)
        assert wdot in reps
        u = compose(inverse(wdot), w)
        assert u in stabilizer
        assert length(w) == length(wdot) + length(u)
        # uniqueness: no other representative reaches w inside the coset
        assert sum(1 for r in reps if compose(inverse(r), w) in stabilizer) == 1


def test_kostant_reps_sorted_and_increasing_on_blocks():
    mu = frac((1, 1, 0, -2))
    reps = kostant_reps(mu)
    assert list(reps) == sorted(reps, key=lambda w: (length(w), w))
    for w in reps:
        assert w[0] < w[1]
        assert is_kostant(w, mu)


# -- double cosets -----------------------------------------------------------------


def test_double_cosets_rank_two():
    mu = frac((1, -1))
    assert double_coset_reps(1, mu) == (identity(2), simple_reflection(1, 2))


def test_double_cosets_regular_rank_three():
    mu = frac((2, 1, -3))
    assert len(double_coset_reps(1, mu)) == 3
    assert len(double_coset_reps(2, mu)) == 3


def test_double_cosets_collapse_with_stabilizer():
    mu = frac((1, 1, -2))
    assert len(double_coset_reps(1, mu)) == 2


def test_double_cosets_partition_the_group():
    mu = frac((1, 1, -1, -1))
    for i in (1, 2, 3):
        classes = weyl._double_coset_classes(i, mu)
        seen = [w for orbit in classes for w in orbit]
        assert sorted(seen) == sorted(all_perms(4))
        reps = double_coset_reps(i, mu)
        assert len(reps) == len(classes)


def test_double_coset_index_range():
    with pytest.raises(ConfigError):
        double_coset_reps(3, frac((1, -1)))
