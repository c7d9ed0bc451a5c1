from hypothesis import given, settings

import oracle
from strategies import seeds
from opsmith import chain as ch
from opsmith.arrow import (
    BOX,
    TENSOR,
    ArrowMap,
    ArrowObject,
    L0,
    L1,
    adjunction_counit,
    adjunction_unit,
    classify_arrow_map,
    coker_functor,
    identity_arrow_map,
    iterated_pushout_product,
    ker_functor,
    lax_associativity,
    monoidality_witnesses,
    pullback_corner,
    pushout_corner,
    pushout_product,
    tensor_arrow,
    triangle_identities,
    unit_constraints,
    validate_arrow_map,
)
from opsmith.gen import (
    make_rng,
    random_arrow,
    random_arrow_map,
    random_cofibration,
    random_complex,
    random_fibration,
    random_inj_fibration,
    random_proj_cofibration,
)
from opsmith.ratlin import Matrix

Z = ch.zero_complex()
S0 = ch.sphere(0)
ZERO_TO_S0 = ArrowObject(ch.zero_map(Z, S0))
ZERO_ARROW = ArrowObject(ch.zero_map(Z, Z))


def col(*vals):
    return Matrix.from_rows([[v] for v in vals])


def test_tensor_unit_and_zero():
    g = ArrowObject(ch.ChainMap(S0, ch.disk(1), {0: Matrix.from_rows([[1]])}))
    assert TENSOR.is_iso(TENSOR.left_unitor(g))
    assert tensor_arrow(ZERO_ARROW, g) == ZERO_ARROW
    t = tensor_arrow(ZERO_TO_S0, ZERO_TO_S0)
    assert t.X0.is_zero() and t.X1.dims == {0: 1}


def test_box_unit_and_punctured_square():
    g = random_arrow(make_rng(3))
    assert BOX.is_iso(BOX.left_unitor(g))
    assert BOX.is_iso(BOX.right_unitor(g))
    p = pushout_product(ZERO_TO_S0, ZERO_TO_S0)
    assert p.X0.is_zero() and p.X1.dims == {0: 1}


def test_corner_maps_trivial_cases():
    f = random_arrow(make_rng(1))
    a = ArrowMap(ZERO_ARROW, f, ch.zero_map(Z, f.X0), ch.zero_map(Z, f.X1))
    corner = pushout_corner(a)
    assert corner.source == f.X0 and corner.target == f.X1 and corner == f.f
    b = ArrowMap(f, ZERO_ARROW, ch.zero_map(f.X0, Z), ch.zero_map(f.X1, Z))
    assert pullback_corner(b) == f.f
    ident = identity_arrow_map(f)
    assert ch.is_iso(pushout_corner(ident)) and ch.is_iso(pullback_corner(ident))


def test_identity_square_is_everything():
    c = classify_arrow_map(identity_arrow_map(random_arrow(make_rng(5))))
    for flags in (c.proj, c.inj):
        assert flags.cof and flags.fib and flags.weq and flags.trivial_cof and flags.trivial_fib


def test_coker_examples():
    x = ch.sphere(0, 2)
    assert coker_functor(ArrowObject(ch.zero_map(Z, x))).f == ch.identity_map(x)
    assert coker_functor(ArrowObject(ch.identity_map(x))).X1.is_zero()
    c = coker_functor(ArrowObject(ch.ChainMap(S0, x, {0: col(1, 1)})))
    assert c.X1.dims == {0: 1}
    assert (c.f.at(0) @ col(1, 1)).is_zero()


def test_ker_examples():
    x = ch.sphere(0, 2)
    assert ker_functor(ArrowObject(ch.zero_map(x, Z))).f == ch.identity_map(x)
    assert ker_functor(ArrowObject(ch.identity_map(x))).X0.is_zero()
    k = ker_functor(ArrowObject(ch.ChainMap(x, S0, {0: Matrix.from_rows([[1, 1]])})))
    assert k.X0.dims == {0: 1}
    assert oracle.rank(Matrix.from_rows([[1, 1]]) @ k.f.at(0)) == 0


def test_unit_of_zero_arrow_is_identity():
    u = adjunction_unit(ZERO_ARROW)
    assert u.source == ZERO_ARROW and validate_arrow_map(u)


def test_unit_constraints_hold():
    assert unit_constraints()


def test_iterated_small_cases():
    f = random_arrow(make_rng(8))
    one = iterated_pushout_product([f])
    assert one.full_domain == f.X0 and one.result.f == f.f
    two = iterated_pushout_product([f, f])
    assert two.comparison == ch.identity_map(two.full_domain)
    three = iterated_pushout_product([ZERO_TO_S0] * 3)
    assert three.full_domain.is_zero() and three.reduced_domain.is_zero()
    assert three.comparison_is_iso and three.agrees_with_fold


def test_lax_map_for_surjections_is_valid():
    rng = make_rng(2)
    f, g = ArrowObject(random_fibration(rng)), ArrowObject(random_fibration(rng))
    assert monoidality_witnesses(f, g).lax_is_valid


@given(seeds)
def test_levels_are_strict_monoidal(seed):
    rng = make_rng(seed)
    x, y = random_complex(rng), random_complex(rng)
    assert tensor_arrow(L0(x), L0(y)) == L0(ch.tensor(x, y))
    box = pushout_product(L1(x), L1(y))
    assert box.X0.is_zero() and box.X1 == ch.tensor(x, y)


@given(seeds)
def test_triangle_identities_random(seed):
    rng = make_rng(seed)
    assert triangle_identities(random_arrow(rng), random_arrow(rng))


@settings(max_examples=15)
@given(seeds)
def test_unit_and_counit_isos(seed):
    rng = make_rng(seed)
    f = ArrowObject(random_cofibration(rng))
    u = adjunction_unit(f)
    assert ch.is_iso(u.alpha0) and ch.is_iso(u.alpha1)
    g = ArrowObject(random_fibration(rng))
    c = adjunction_counit(g)
    assert ch.is_iso(c.alpha0) and ch.is_iso(c.alpha1)


@settings(max_examples=15)
@given(seeds)
def test_strong_iso_for_injective_arrows(seed):
    rng = make_rng(seed)
    f = ArrowObject(random_cofibration(rng, max_dim=3))
    g = ArrowObject(random_cofibration(rng, max_dim=3))
    w = monoidality_witnesses(f, g)
    assert w.strong_is_iso and w.lax_is_valid


@settings(max_examples=10)
@given(seeds)
def test_lax_associativity_random(seed):
    rng = make_rng(seed)
    assert lax_associativity(*(random_arrow(rng, max_dim=1) for _ in range(3)))


@given(seeds)
def test_classification_implications(seed):
    c = classify_arrow_map(random_arrow_map(make_rng(seed)))
    assert not c.proj.trivial_cof or (c.proj.cof and c.proj.weq)
    assert not c.inj.trivial_fib or (c.inj.fib and c.inj.weq)


@settings(max_examples=15)
@given(seeds)
def test_projective_cofibration_has_injective_bottom(seed):
    a = random_proj_cofibration(make_rng(seed))
    assert classify_arrow_map(a).proj.cof
    assert oracle.is_injective(a.alpha1)


@settings(max_examples=15)
@given(seeds)
def test_injective_fibration_has_surjective_top(seed):
    a = random_inj_fibration(make_rng(seed))
    assert classify_arrow_map(a).inj.fib
    assert oracle.is_surjective(a.alpha0)


@settings(max_examples=10)
@given(seeds)
def test_iterated_comparison_is_iso(seed):
    rng = make_rng(seed)
    n = rng.randint(2, 3)
    it = iterated_pushout_product([random_arrow(rng, max_dim=1, span=2) for _ in range(n)])
    assert it.comparison_is_iso and it.agrees_with_fold
