"""Structure constants, grading and restricted structure of q(2)."""

import numpy as np
import pytest

from qcoh.ff import make_extension
from qcoh.qsuper import (
    BASIS_NAMES,
    PARITIES,
    WEIGHTS,
    abelianization_sdim,
    build_q2,
    even_combo_p_power,
    validate_restrictedness,
    validate_super_jacobi,
    validate_weight_grading,
)


@pytest.fixture(scope="module")
def alg5():
    return build_q2(make_extension(5, 1))


def test_basis_order_and_parities():
    assert BASIS_NAMES == ("h1", "h2", "e", "f", "H1", "H2", "E", "F")
    assert PARITIES == (0, 0, 0, 0, 1, 1, 1, 1)
    assert WEIGHTS[BASIS_NAMES.index("e")] == (1, -1)
    assert WEIGHTS[BASIS_NAMES.index("F")] == (-1, 1)


def bracket(alg, x, y):
    return alg.sc[alg.index(x), alg.index(y)]


def as_combo(alg, **named):
    v = np.zeros(8, dtype=np.int64)
    for name, c in named.items():
        v[alg.index(name)] = alg.ctx.of_int(c)
    return v


def test_key_brackets(alg5):
    a = alg5
    assert np.array_equal(bracket(a, "e", "f"), as_combo(a, h1=1, h2=-1))
    assert np.array_equal(bracket(a, "E", "F"), as_combo(a, h1=1, h2=1))
    assert np.array_equal(bracket(a, "H1", "H1"), as_combo(a, h1=2))
    assert np.array_equal(bracket(a, "H2", "H2"), as_combo(a, h2=2))
    assert np.array_equal(bracket(a, "H1", "F"), as_combo(a, f=1))
    assert np.array_equal(bracket(a, "e", "H1"), as_combo(a, E=-1))
    assert np.array_equal(bracket(a, "e", "H2"), as_combo(a, E=1))
    assert np.array_equal(bracket(a, "H1", "E"), as_combo(a, e=1))
    assert not bracket(a, "e", "E").any()
    assert not bracket(a, "H1", "H2").any()
    assert not bracket(a, "f", "F").any()


@pytest.mark.parametrize("p", [3, 5, 7])
def test_jacobi_grading_restrictedness(p):
    alg = build_q2(make_extension(p, 1))
    ok, viol = validate_super_jacobi(alg)
    assert ok, viol
    ok, viol = validate_weight_grading(alg)
    assert ok, viol
    ok, viol = validate_restrictedness(alg)
    assert ok, viol


def test_jacobi_detects_mutation(alg5):
    import copy

    broken = copy.deepcopy(alg5)
    broken.sc[2, 3, 0] = broken.ctx.add(broken.sc[2, 3, 0], broken.ctx.of_int(1))
    ok, viol = validate_super_jacobi(broken)
    assert not ok and viol is not None


def test_grading_detects_mutation(alg5):
    import copy

    broken = copy.deepcopy(alg5)
    # give [e,f] a component of weight (1,-1)
    broken.sc[2, 3, 2] = broken.ctx.of_int(1)
    ok, _ = validate_weight_grading(broken)
    assert not ok


def test_p_map_values(alg5):
    a = alg5
    # h_i^[p] = h_i, e^[p] = f^[p] = 0
    assert np.array_equal(a.p_map[0], as_combo(a, h1=1))
    assert np.array_equal(a.p_map[1], as_combo(a, h2=1))
    assert not a.p_map[2].any()
    assert not a.p_map[3].any()


def test_even_combo_p_power_semisimple(alg5):
    a = alg5
    # (h1 + 2 h2)^[p] = h1 + 2 h2 since the torus is p-fixed
    combo = as_combo(a, h1=1, h2=2)[:4]
    assert np.array_equal(even_combo_p_power(a, combo), as_combo(a, h1=1, h2=2))


@pytest.mark.parametrize("p", [3, 5])
def test_abelianization_sdim(p):
    alg = build_q2(make_extension(p, 1))
    assert abelianization_sdim(alg) == (0, 1)


def test_extension_field_build():
    alg = build_q2(make_extension(3, 2))
    ok, viol = validate_super_jacobi(alg)
    assert ok, viol
    ok, viol = validate_restrictedness(alg)
    assert ok, viol
