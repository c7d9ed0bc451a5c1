import pytest
from hypothesis import given, settings

from strategies import seeds
from opsmith import chain as ch
from opsmith.algebra import (
    AlgebraMap,
    OperadAlgebra,
    algebra_from_product,
    algebras_equal,
    bimodules_equal,
    compose_algebra_maps,
    free_algebra,
    identity_algebra_map,
    restrict_bimodule,
    self_bimodule,
    sub_bimodule,
    validate_algebra,
    validate_algebra_map,
    validate_bimodule,
)
from opsmith.gen import _Table, make_rng, random_algebra, random_algebra_map, table, table_product
from opsmith.operad import std_operad
from opsmith.ratlin import Matrix

AS3 = std_operad("As", 3)
COM3 = std_operad("Com", 3)


def algebra_of(o, name):
    a, m = table_product(table(name))
    return algebra_from_product(o, {"*": a}, {"*": m})


def unit_algebra(o):
    q = ch.unit_complex()
    return algebra_from_product(o, {"*": q}, {"*": ch.left_unitor(q)})


def test_dual_numbers_as_algebra():
    assert validate_algebra(algebra_of(AS3, "dual_numbers"))


def test_unit_com_algebra():
    assert validate_algebra(unit_algebra(COM3))


def test_nonassociative_product_rejected():
    t = _Table("anti", {0: 2}, {}, {((0, 0), (0, 1)): {0: 1}, ((0, 1), (0, 0)): {0: -1}}, False)
    a, m = table_product(t)
    chk = validate_algebra(algebra_from_product(AS3, {"*": a}, {"*": m}))
    assert not chk
    assert chk.message


def test_free_triv_algebra_is_input():
    x = ch.disk(1)
    fa = free_algebra(std_operad("Triv", 3), {"*": x})
    assert fa.algebra.carriers["*"] == x
    assert ch.is_iso(fa.generators["*"])


def test_free_as_algebra_on_a_line():
    fa = free_algebra(AS3, {"*": ch.sphere(0)})
    assert fa.algebra.carriers["*"].dims == {0: 3}
    assert validate_algebra(fa.algebra)
    # truncated tensor algebra on x: basis x, x^2, x^3 with x^i x^j = x^(i+j) below the cut
    t = _Table("powers", {0: 3}, {}, {((0, i), (0, j)): {i + j + 1: 1}
                                     for i in range(3) for j in range(3) if i + j + 1 < 3}, True)
    a, m = table_product(t)
    assert algebras_equal(fa.algebra, algebra_from_product(AS3, {"*": a}, {"*": m}))


def test_free_com_on_odd_sphere_kills_square():
    fa = free_algebra(std_operad("Com", 2), {"*": ch.sphere(1)})
    assert fa.algebra.carriers["*"].dims == {1: 1}


def test_restriction_along_identity_is_unchanged():
    a = algebra_of(AS3, "dual_numbers")
    b = self_bimodule(a)
    assert bimodules_equal(restrict_bimodule(b, identity_algebra_map(a)), b)


def test_restrict_ideal_along_unit():
    a = algebra_of(AS3, "dual_numbers")
    eps = ch.ChainMap(ch.sphere(0), a.carriers["*"], {0: Matrix.from_rows([[0], [1]])})
    ideal = sub_bimodule(a, {"*": eps})
    assert validate_bimodule(ideal)
    q = unit_algebra(AS3)
    unit = AlgebraMap(q, a, {"*": ch.ChainMap(q.carriers["*"], a.carriers["*"],
                                              {0: Matrix.from_rows([[1], [0]])})})
    assert validate_algebra_map(unit)
    r = restrict_bimodule(ideal, unit)
    assert r.algebra is q
    assert validate_bimodule(r)


def test_restriction_along_zero_map():
    a = algebra_of(AS3, "dual_numbers")
    z = OperadAlgebra(AS3, {})
    h = AlgebraMap(z, a, {})
    r = restrict_bimodule(self_bimodule(a), h)
    assert validate_bimodule(r)
    for (cs, _, _), m in r.theta.items():
        if len(cs) > 1:
            assert all(m.at(n).is_zero() for n in m.degrees)


def test_colors_must_match_operad():
    a, m = table_product(table("dual_numbers"))
    bad = OperadAlgebra(AS3, {"x": a})
    assert not validate_algebra(bad)


@pytest.mark.parametrize("name", [t for t in ("dual_numbers", "truncated_cubic", "nonunital_square_zero",
                                              "split_pair", "exterior", "acyclic_unit")])
def test_catalogue_algebras_valid_over_both(name):
    assert validate_algebra(algebra_of(AS3, name))
    assert validate_algebra(algebra_of(COM3, name))


def test_noncommutative_table_is_not_com():
    assert validate_algebra(algebra_of(AS3, "upper_triangular"))
    assert not validate_algebra(algebra_of(COM3, "upper_triangular"))


@settings(max_examples=20)
@given(seeds)
def test_random_algebras_valid(seed):
    rng = make_rng(seed)
    for o in (AS3, COM3):
        a = random_algebra(rng, o)
        assert validate_algebra(a)
        assert validate_algebra_map(identity_algebra_map(a))
        assert validate_bimodule(self_bimodule(a))


@settings(max_examples=20)
@given(seeds)
def test_composites_of_algebra_maps_valid(seed):
    rng = make_rng(seed)
    h = random_algebra_map(rng, AS3)
    assert validate_algebra_map(h)
    assert validate_algebra_map(compose_algebra_maps(h, identity_algebra_map(h.source)))
    assert validate_algebra_map(compose_algebra_maps(identity_algebra_map(h.target), h))
