import copy
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from opsmith import chain as ch
from opsmith.arrow import BOX, TENSOR
from opsmith.operad import (
    Operad,
    OperadError,
    SymSeq,
    block_permutation,
    coinvariants,
    ev_operad,
    lift_operad,
    operads_equal,
    perm_inv,
    perm_mul,
    reduced_word,
    sigma_cofibrancy_check,
    std_operad,
    transposition,
    validate_operad,
)
from opsmith.ratlin import Matrix

perms = st.integers(1, 5).flatmap(lambda n: st.permutations(range(n))).map(tuple)


def test_trivial_operad_is_valid():
    assert validate_operad(std_operad("Triv", 3))


@pytest.mark.parametrize("name", ["As", "Com"])
def test_standard_operads_valid(name):
    assert validate_operad(std_operad(name, 3))


def test_corrupted_associativity_detected():
    o = std_operad("As", 4)
    key = ("*", ("*", "*"), (("*", "*"), ("*",)))
    bad = copy.copy(o)
    bad.gamma = dict(o.gamma)
    bad.gamma[key] = -o.gamma[key]
    chk = validate_operad(bad)
    assert not chk
    assert "associativity" in chk.message


def test_dimensions_of_as_and_com():
    a, c = std_operad("As", 3), std_operad("Com", 3)
    for n in (1, 2, 3):
        cs = ("*",) * n
        assert a.entry(cs, "*").dims == {0: factorial(n)}
        assert c.entry(cs, "*").dims == {0: 1}
        for i in range(n - 1):
            assert c.act_gen(cs, "*", i) == ch.identity_map(c.entry(cs, "*"))
    assert not a.nonzero((), "*") and not c.nonzero((), "*")


def test_lifts_and_evaluations():
    com = std_operad("Com", 3)
    l1 = lift_operad(com, "L1")
    e = l1.entry(("*", "*"), "*")
    assert e.X0.is_zero() and e.X1.dims == {0: 1}
    assert operads_equal(ev_operad(l1, 1), com)
    asop = std_operad("As", 3)
    assert operads_equal(ev_operad(lift_operad(asop, "L0"), 0), asop)
    assert validate_operad(std_operad("As", 3, ground=BOX))
    assert validate_operad(std_operad("As", 3, ground=TENSOR))


def test_lift_preserves_invalidity():
    o = std_operad("As", 4)
    key = ("*", ("*", "*"), (("*", "*"), ("*",)))
    bad = copy.copy(o)
    bad.gamma = dict(o.gamma)
    bad.gamma[key] = -o.gamma[key]
    assert not validate_operad(lift_operad(bad, "L1"))


def test_coinvariant_examples():
    a = std_operad("As", 2)
    x = a.entry(("*", "*"), "*")
    gen = a.act_gen(("*", "*"), "*", 0)
    co = coinvariants(x, [gen])
    assert co.obj.dims == {0: 1}
    assert oracle.coinvariant_dim([gen.at(0)], 2) == 1
    y = ch.sphere(0, 3)
    assert coinvariants(y, [ch.identity_map(y)]).obj == y
    s = ch.sphere(1)
    ss = ch.tensor(s, s)
    assert coinvariants(ss, [ch.symmetry(s, s)]).obj.is_zero()


def test_sigma_cofibrancy_examples():
    assert sigma_cofibrancy_check(std_operad("As", 3)).ok
    assert sigma_cofibrancy_check(std_operad("Com", 3)).ok
    from opsmith.ground import CHAIN
    assert sigma_cofibrancy_check(SymSeq(CHAIN, ("*",), 3)).ok


def test_non_endomorphism_action_rejected():
    with pytest.raises(OperadError):
        coinvariants(ch.sphere(0), [ch.zero_map(ch.sphere(0), ch.sphere(1))])


def test_unknown_operad():
    with pytest.raises(OperadError):
        std_operad("Lie", 3)


@given(perms)
def test_reduced_word_reproduces_permutation(s):
    n = len(s)
    word = reduced_word(s)
    out = tuple(range(n))
    for i in word:
        out = perm_mul(out, transposition(n, i))
    assert out == s
    inversions = sum(s[a] > s[b] for a in range(n) for b in range(a + 1, n))
    assert len(word) == inversions


@given(perms)
def test_inverse_is_two_sided(s):
    e = tuple(range(len(s)))
    assert perm_mul(s, perm_inv(s)) == e == perm_mul(perm_inv(s), s)


@given(st.lists(st.integers(0, 2), min_size=1, max_size=3).flatmap(
    lambda sizes: st.tuples(st.just(sizes), st.permutations(range(len(sizes))).map(tuple))))
def test_block_permutation_is_a_permutation(args):
    sizes, s = args
    b = block_permutation(sizes, s)
    assert sorted(b) == list(range(sum(sizes)))


def test_two_colored_operads_valid():
    for name in ("As", "Com"):
        assert validate_operad(std_operad(name, 3, colors=("a", "b")))
