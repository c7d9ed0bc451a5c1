import pytest
from hypothesis import given, settings

from strategies import seeds
from opsmith import chain as ch
from opsmith.acceptance import dual_numbers_ideal, two_colored_com_ideal
from opsmith.algebra import (
    AlgebraMap,
    Bimodule,
    OperadAlgebra,
    algebra_from_product,
    algebra_maps_equal,
    identity_algebra_map,
    self_bimodule,
    validate_algebra,
    validate_algebra_map,
    validate_bimodule,
)
from opsmith.gen import make_rng, random_algebra_map, random_smith_ideal
from opsmith.operad import std_operad
from opsmith.ratlin import Matrix
from opsmith.smith import (
    SmithError,
    SmithIdeal,
    adjunction_unit,
    algebra_map_to_tensor_algebra,
    algmap_ker,
    arrows_of_algebras,
    assemble_box_algebra,
    classify_algmap,
    classify_smith_map,
    cokernel_commutes_with_forgetting,
    derived_unit_check,
    identity_algmap_morphism,
    identity_smith_map,
    is_fibrant_algmap,
    kernel_commutes_with_forgetting,
    operadic_adjunction_witnesses,
    smith_coker,
    smith_ideals_equal,
    to_terminal,
    two_x_check,
    unravel,
    validate_smith_ideal,
    weq_reflection_instance,
)

AS3 = std_operad("As", 3)
COM3 = std_operad("Com", 3)


def unit_algebra(o):
    q = ch.unit_complex()
    return algebra_from_product(o, {"*": q}, {"*": ch.left_unitor(q)})


def zero_ideal(y):
    o = y.operad
    z = ch.zero_complex()
    x = Bimodule(y, {}, {})
    return SmithIdeal(o, y, x, {c: ch.zero_map(z, y.carrier(c)) for c in o.colors})


def whole_ideal(y):
    o = y.operad
    return SmithIdeal(o, y, self_bimodule(y), {c: ch.identity_map(y.carrier(c)) for c in o.colors})


def asymmetric_module():
    """ℚ² over the unit algebra with f = (1, 0): a bimodule map failing two-x."""
    y = unit_algebra(COM3)
    x2 = ch.sphere(0, 2)
    b = Bimodule(y, {"*": x2}, {})
    for (cs, d) in COM3.entries:
        for i in range(len(cs)):
            b.theta[(cs, d, i)] = ch.ChainMap(b.domain(cs, d, i), x2, {0: Matrix.identity(2)})
    f = ch.ChainMap(x2, y.carriers["*"], {0: Matrix.from_rows([[1, 0]])})
    return SmithIdeal(COM3, y, b, {"*": f})


def test_dual_numbers_ideal():
    s = dual_numbers_ideal()
    assert validate_smith_ideal(s)
    assert two_x_check(s)
    a = assemble_box_algebra(s)
    assert validate_algebra(a)
    assert smith_ideals_equal(unravel(a, AS3), s)


def test_zero_and_whole_ideals_assemble():
    y = dual_numbers_ideal().Y
    for s in (zero_ideal(y), whole_ideal(y)):
        assert validate_smith_ideal(s)
        a = assemble_box_algebra(s)
        assert validate_algebra(a)
        assert smith_ideals_equal(unravel(a, AS3), s)


def test_two_x_failure_is_located():
    s = asymmetric_module()
    assert validate_bimodule(s.X)
    chk = validate_smith_ideal(s)
    assert not chk
    assert chk.where == ("two-x", 1, 2, ("*", "*"), "*")
    assert "i=1, j=2" in chk.message and "color *" in chk.message


def test_cokernel_examples():
    s = dual_numbers_ideal()
    q = smith_coker(s)
    assert validate_algebra_map(q)
    assert q.target.carriers["*"].dims == {0: 1}
    assert q.at("*").at(0) == Matrix.from_rows([[1, 0]])
    assert validate_algebra(q.target)
    ident = smith_coker(zero_ideal(s.Y))
    assert ident.at("*") == ch.identity_map(s.Y.carriers["*"])
    assert smith_coker(whole_ideal(s.Y)).target.carrier("*").is_zero()


def test_kernel_examples():
    s = dual_numbers_ideal()
    y = s.Y
    assert algmap_ker(identity_algebra_map(y)).X.carrier("*").is_zero()
    k = algmap_ker(smith_coker(s))
    assert smith_ideals_equal(k, s)
    z = OperadAlgebra(AS3, {})
    to_zero = AlgebraMap(y, z, {})
    w = algmap_ker(to_zero)
    assert ch.is_iso(w.at("*"))
    assert validate_smith_ideal(w)


def test_tensor_side_round_trip():
    s = dual_numbers_ideal()
    y = s.Y
    q = unit_algebra(AS3)
    unit = AlgebraMap(q, y, {"*": ch.ChainMap(q.carriers["*"], y.carriers["*"],
                                              {0: Matrix.from_rows([[1], [0]])})})
    for h in (unit, identity_algebra_map(y)):
        assert validate_algebra_map(h)
        t = algebra_map_to_tensor_algebra(h)
        assert validate_algebra(t)
        assert algebra_maps_equal(arrows_of_algebras(t, AS3), h)


def test_empty_structures_convert():
    z = OperadAlgebra(AS3, {})
    h = AlgebraMap(z, z, {})
    assert algebra_maps_equal(arrows_of_algebras(algebra_map_to_tensor_algebra(h), AS3), h)


def test_adjunction_on_examples():
    s = dual_numbers_ideal()
    r = operadic_adjunction_witnesses(s, smith_coker(s))
    assert r.ok
    u = adjunction_unit(zero_ideal(s.Y))
    for c in AS3.colors:
        assert ch.is_iso(u.at0(c)) and ch.is_iso(u.at1(c))


def test_classification_of_identities():
    s = dual_numbers_ideal()
    f = classify_smith_map(identity_smith_map(s))
    assert f.weq and f.fib
    g = classify_algmap(identity_algmap_morphism(smith_coker(s)))
    assert g.weq and g.fib


def test_fibrancy_means_surjective():
    s = dual_numbers_ideal()
    assert is_fibrant_algmap(smith_coker(s))
    unit_alg = unit_algebra(AS3)
    inc = AlgebraMap(unit_alg, s.Y, {"*": ch.ChainMap(unit_alg.carriers["*"], s.Y.carriers["*"],
                                                       {0: Matrix.from_rows([[1], [0]])})})
    assert not classify_algmap(to_terminal(inc)).fib


def test_derived_unit_examples():
    for s in (dual_numbers_ideal(), two_colored_com_ideal(), zero_ideal(dual_numbers_ideal().Y)):
        r = derived_unit_check(s)
        assert r.ok
    r = derived_unit_check(two_colored_com_ideal())
    assert r.colors["b"]["X"] == {1: 1, 0: 1}


def test_derived_unit_precondition():
    s = asymmetric_module()
    with pytest.raises(SmithError):
        derived_unit_check(s)


def test_acyclic_ideal_inclusion_is_weq_side():
    s = two_colored_com_ideal()
    assert validate_smith_ideal(s)
    assert {n: h for n, h in ch.homology(s.X.carrier("b")).items() if h} == {}


@settings(max_examples=15)
@given(seeds)
def test_random_smith_ideals_round_trip(seed):
    rng = make_rng(seed)
    o = AS3 if seed % 2 else COM3
    s = random_smith_ideal(rng, o)
    assert validate_smith_ideal(s)
    a = assemble_box_algebra(s)
    assert validate_algebra(a)
    assert smith_ideals_equal(unravel(a, o), s)
    assert cokernel_commutes_with_forgetting(s)


@settings(max_examples=15)
@given(seeds)
def test_random_algebra_maps(seed):
    rng = make_rng(seed)
    o = AS3 if seed % 2 else COM3
    phi = random_algebra_map(rng, o)
    k = algmap_ker(phi)
    assert two_x_check(k)
    assert validate_smith_ideal(k)
    assert kernel_commutes_with_forgetting(phi)
    t = algebra_map_to_tensor_algebra(phi)
    assert validate_algebra(t)
    assert algebra_maps_equal(arrows_of_algebras(t, o), phi)


@settings(max_examples=15)
@given(seeds)
def test_adjunction_random(seed):
    rng = make_rng(seed)
    o = AS3 if seed % 2 else COM3
    s = random_smith_ideal(rng, o)
    phi = random_algebra_map(rng, o)
    assert operadic_adjunction_witnesses(s, phi).ok


@settings(max_examples=15)
@given(seeds)
def test_weq_reflection_on_identity_morphisms(seed):
    phi = random_algebra_map(make_rng(seed), AS3)
    if is_fibrant_algmap(phi):
        assert weq_reflection_instance(identity_algmap_morphism(phi)).holds
