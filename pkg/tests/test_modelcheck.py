import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from strategies import seeds
from opsmith import chain as ch
from opsmith.arrow import ArrowMap, ArrowObject, identity_arrow_map
from opsmith.gen import (
    make_rng,
    random_action_object,
    random_cofibration,
    random_complex,
    random_equivariant_cofibration,
    small_proj_cofibration,
)
from opsmith.modelcheck import (
    EquivarianceError,
    EquivariantArrow,
    PreconditionError,
    box_power,
    check_arrow_club_instance,
    check_club_instance,
    check_heart_instance,
    check_spade_instance,
    check_strong_comm_instance,
    lift_action_L1,
    pushout_product_axiom_instance,
    regular_representation,
    tensor_power_action,
    trivial_action,
)
from opsmith.ratlin import Matrix

Z = ch.zero_complex()


def from_zero(x):
    return ch.zero_map(Z, x)


def test_regular_representation_relations():
    for n in (1, 2, 3):
        x, gens = regular_representation(n)
        assert x.dims == {0: [1, 1, 2, 6][n]}
        e = lift_action_L1(x, gens)
        assert e.validate()


def test_bad_generators_rejected():
    x = ch.sphere(0, 2)
    bad = ch.ChainMap(x, x, {0: Matrix.from_rows([[1, 1], [0, 1]])})
    with pytest.raises(EquivarianceError):
        check_club_instance(x, [bad], from_zero(ch.sphere(0)), 2)


def test_heart_arity_one_is_pushout_product():
    rng = make_rng(4)
    f, g = random_cofibration(rng), random_cofibration(rng)
    h = check_heart_instance(EquivariantArrow(1, ArrowObject(f), []), EquivariantArrow(1, ArrowObject(g), []))
    p = pushout_product_axiom_instance(f, g)
    assert h.ok and p.ok
    assert h.ranks == {k: v for k, v in p.ranks.items()}


def test_heart_regular_with_sign_swap():
    x, gens = regular_representation(2)
    s = ch.sphere(0)
    sq, swap = tensor_power_action(s, 2)
    r = check_heart_instance(lift_action_L1(x, gens), lift_action_L1(sq, swap))
    assert r.ok
    assert r.ranks["target"] == {0: 1} and r.ranks["source"] == {}


def test_heart_identities():
    x, gens = regular_representation(2)
    a = ArrowObject(ch.identity_map(x))
    e = EquivariantArrow(2, a, [ArrowMap(a, a, s, s) for s in gens])
    r = check_heart_instance(e, e)
    assert r.ok
    assert r.ranks["source"] == r.ranks["target"]


def test_club_examples():
    g = from_zero(ch.sphere(0))
    x, gens = regular_representation(2, side="left")
    r = check_club_instance(x, gens, g, 2)
    assert r.ok and r.ranks["target"] == {0: 1}
    one = ch.sphere(0, 2)
    r1 = check_club_instance(one, [], ch.ChainMap(ch.sphere(0), ch.disk(1), {0: Matrix.from_rows([[1]])}), 1)
    assert r1.ok
    assert r1.ranks["target"] == {1: 2, 0: 2}


def test_spade_acyclic_target():
    d = from_zero(ch.disk(1))
    x, gens = regular_representation(2)
    r = check_spade_instance(x, gens, d, 2)
    assert r.ok
    with pytest.raises(PreconditionError):
        check_spade_instance(x, gens, from_zero(ch.sphere(0)), 2)


def test_strong_comm_examples():
    g = from_zero(ch.sphere(0))
    assert check_strong_comm_instance(g, 1).ranks["target"] == {0: 1}
    r = check_strong_comm_instance(g, 2)
    assert r.ok and r.ranks["target"] == {0: 1}
    r = check_strong_comm_instance(from_zero(ch.sphere(1)), 2)
    assert r.ok and r.ranks["target"] == {}


def test_arrow_club_examples():
    x, gens = regular_representation(2)
    fx = lift_action_L1(x, gens)
    s0 = ch.sphere(0)
    l1 = ArrowObject(from_zero(s0))
    alpha = ArrowMap(ArrowObject(ch.identity_map(Z)), l1, ch.identity_map(Z), from_zero(s0))
    r = check_arrow_club_instance(fx, alpha, 2)
    assert r.flags == {"ev0_cofibration": True, "corner_cofibration": True}
    iso = identity_arrow_map(l1)
    r = check_arrow_club_instance(fx, iso, 2)
    assert r.ok


def test_arrow_club_precondition():
    x, gens = regular_representation(2)
    with pytest.raises(PreconditionError):
        check_arrow_club_instance(lift_action_L1(x, gens), identity_arrow_map(ArrowObject(from_zero(x))), 3)


@settings(max_examples=20)
@given(seeds, st.integers(1, 3))
def test_strong_comm_dims_match_oracle(seed, n):
    rng = make_rng(seed)
    x = random_complex(rng, max_dim=1, span=2)
    if x.total_dim ** n > 8:
        return
    r = check_strong_comm_instance(from_zero(x), n)
    assert r.ok
    power, gens = tensor_power_action(x, n)
    expect = {}
    for deg in power.degrees:
        k = oracle.coinvariant_dim([s.at(deg) for s in gens], power.dim(deg))
        if k:
            expect[deg] = k
    assert r.ranks["target"] == expect


@settings(max_examples=20)
@given(seeds, st.integers(1, 3))
def test_strong_comm_random_cofibrations(seed, n):
    rng = make_rng(seed)
    g = random_cofibration(rng, max_dim=1, degrees=(-1, 1), trivial=seed % 3 == 0)
    if g.target.total_dim ** n > 8:
        return
    assert check_strong_comm_instance(g, n).ok


@settings(max_examples=20)
@given(seeds, st.integers(1, 3))
def test_heart_random(seed, n):
    rng = make_rng(seed)
    assert check_heart_instance(random_equivariant_cofibration(rng, n),
                                random_equivariant_cofibration(rng, n)).ok


@settings(max_examples=20)
@given(seeds, st.integers(1, 3))
def test_club_and_spade_random(seed, n):
    rng = make_rng(seed)
    x, gens = random_action_object(rng, n, max_total=4)
    g = random_cofibration(rng, max_dim=1, degrees=(-1, 1))
    if g.target.total_dim ** n > 8:
        return
    assert check_club_instance(x, gens, g, n).ok
    t = random_cofibration(rng, trivial=True, max_dim=2, degrees=(0, 1))
    if t.target.total_dim ** n <= 8:
        assert check_spade_instance(x, gens, t, n).ok


@settings(max_examples=10)
@given(seeds, st.integers(1, 2))
def test_arrow_club_random(seed, n):
    rng = make_rng(seed)
    fx = random_equivariant_cofibration(rng, n)
    if fx.arrow.X1.total_dim > 4:
        return
    r = check_arrow_club_instance(fx, small_proj_cofibration(rng), n)
    assert r.ok


@given(seeds)
def test_box_power_action_valid(seed):
    g = ArrowObject(random_cofibration(make_rng(seed), max_dim=1, degrees=(-1, 1)))
    p, gens = box_power(g, 2)
    assert EquivariantArrow(2, p, gens).validate()
    x = random_complex(make_rng(seed))
    assert trivial_action(x, 3) == [ch.identity_map(x)] * 2
