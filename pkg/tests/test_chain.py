import pytest
from hypothesis import given, settings

import oracle
from strategies import seeds
from opsmith import chain as ch
from opsmith.chain import ChainComplex, ChainMap, Diagram
from opsmith.gen import make_rng, random_chain_map, random_cofibration, random_complex, random_fibration
from opsmith.ratlin import Matrix


def one(v):
    return Matrix.from_rows([[v]])


def test_validate_reports_degree():
    c = ChainComplex({2: 1, 1: 1, 0: 1}, {2: one(1), 1: one(1)})
    chk = ch.validate_complex(c)
    assert not chk
    assert chk.where == (2,)


def test_sphere_tensor_swap_sign():
    s = ch.sphere(1)
    tau = ch.symmetry(s, s)
    assert tau.at(2) == one(-1)


def test_disk_tensor_disk():
    t = ch.tensor(ch.disk(1), ch.disk(1))
    assert t.dims == {2: 1, 1: 2, 0: 1}
    assert ch.validate_complex(t)
    assert ch.homology(t) == {2: 0, 1: 0, 0: 0}


def test_homology_example():
    # Q in degrees 0, 1, 2 with d_1 = 0 and d_2 = [1] leaves H_1 = 0 and H_0 = Q
    c = ChainComplex({0: 1, 1: 2, 2: 1}, {2: Matrix.from_rows([[1], [0]])})
    assert {n: h for n, h in ch.homology(c).items() if h} == {1: 1, 0: 1}


def test_classify_examples():
    s0 = ch.sphere(0)
    inc = ChainMap(s0, ch.disk(1), {0: one(1)})
    c = ch.classify_map(inc)
    assert c.is_cofibration and not c.is_fibration and not c.is_weak_equivalence
    c = ch.classify_map(ChainMap(ch.disk(1), ch.zero_complex()))
    assert c.is_fibration and c.is_weak_equivalence and not c.is_cofibration
    c = ch.classify_map(ch.identity_map(s0))
    assert c.is_trivial_cofibration and c.is_trivial_fibration


def test_factorize_row():
    x = ch.sphere(0, 2)
    f = ChainMap(x, ch.sphere(0), {0: Matrix.from_rows([[1, 1]])})
    fac = ch.factorize(f)
    assert fac.kernel.dims == {0: 1}
    assert fac.cokernel.is_zero()
    assert fac.image.dims == {0: 1}


def test_colimit_examples():
    x, y = ch.sphere(0), ch.sphere(1)
    z = ch.zero_complex()
    co = ch.colimit(Diagram([x, z, y], [(1, 0, ch.zero_map(z, x)), (1, 2, ch.zero_map(z, y))]))
    assert co.obj.dims == {0: 1, 1: 1}
    q = ch.sphere(0)
    idq = ch.identity_map(q)
    co = ch.colimit(Diagram([q, q, q], [(0, 1, idq), (0, 2, idq)]))
    assert co.obj.dims == {0: 1}
    p, _, _ = ch.pushout(ch.zero_map(z, q), ch.zero_map(z, q))
    assert p.dims == {0: 2}


def test_limit_pullback_of_surjections():
    q = ch.sphere(0)
    two = ch.sphere(0, 2)
    pr = ChainMap(two, q, {0: Matrix.from_rows([[1, 0]])})
    p, _, _ = ch.pullback(pr, pr)
    assert p.dims == {0: 3}


def test_invalid_map_rejected():
    f = ChainMap(ch.disk(1), ch.disk(1), {1: one(1)})
    assert not ch.validate_map(f)
    with pytest.raises(ch.ChainError):
        ch.classify_map(f)


@given(seeds)
def test_random_complex_homology_matches_oracle(seed):
    c = random_complex(make_rng(seed), max_dim=3)
    assert ch.validate_complex(c)
    assert {n: h for n, h in ch.homology(c).items() if h} == oracle.homology_dims(c)


@given(seeds)
def test_tensor_is_a_complex_and_kunneth(seed):
    rng = make_rng(seed)
    x, y = random_complex(rng), random_complex(rng)
    t = ch.tensor(x, y)
    assert ch.validate_complex(t)
    hx, hy = ch.homology(x), ch.homology(y)
    expect = {}
    for i, a in hx.items():
        for j, b in hy.items():
            if a * b:
                expect[i + j] = expect.get(i + j, 0) + a * b
    assert oracle.homology_dims(t) == expect


@given(seeds)
def test_symmetry_squares_to_identity(seed):
    rng = make_rng(seed)
    x, y = random_complex(rng), random_complex(rng)
    assert ch.symmetry(y, x) @ ch.symmetry(x, y) == ch.identity_map(ch.tensor(x, y))
    assert ch.validate_map(ch.symmetry(x, y))


@given(seeds)
def test_random_chain_map_is_valid(seed):
    rng = make_rng(seed)
    x, y = random_complex(rng), random_complex(rng)
    assert ch.validate_map(random_chain_map(rng, x, y))


@settings(max_examples=20)
@given(seeds)
def test_generated_cofibrations_and_fibrations(seed):
    rng = make_rng(seed)
    f = random_cofibration(rng)
    assert ch.validate_map(f) and oracle.is_injective(f)
    t = random_cofibration(rng, trivial=True)
    assert oracle.is_injective(t) and ch.is_quasi_iso(t)
    g = random_fibration(rng)
    assert ch.validate_map(g) and oracle.is_surjective(g)


@given(seeds)
def test_kernel_cokernel_exactness(seed):
    rng = make_rng(seed)
    x, y = random_complex(rng), random_complex(rng)
    f = random_chain_map(rng, x, y)
    k, ki = ch.kernel(f)
    c, cp = ch.cokernel(f)
    assert ch.validate_complex(k) and ch.validate_complex(c)
    assert all((f @ ki).at(n).is_zero() for n in k.degrees)
    assert all((cp @ f).at(n).is_zero() for n in x.degrees)
    for n in x.degrees:
        assert k.dim(n) == x.dim(n) - oracle.rank(f.at(n))
    for n in y.degrees:
        assert c.dim(n) == y.dim(n) - oracle.rank(f.at(n))


@given(seeds)
def test_pushout_square_commutes(seed):
    rng = make_rng(seed)
    a, b, c = (random_complex(rng) for _ in range(3))
    f, g = random_chain_map(rng, a, b), random_chain_map(rng, a, c)
    p, lb, lc = ch.pushout(f, g)
    assert ch.validate_complex(p)
    assert lb @ f == lc @ g
