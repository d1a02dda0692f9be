"""Space weights, kernel coefficient tables, and tail bounds."""

import numpy as np
import pytest

from sphquad.kernels import (
    SpaceSpec,
    _coeff_ratio,
    build_coeffs,
    kernel_eval,
    tail_at_one,
    weight,
    weights_arr,
)


def test_space_validation():
    with pytest.raises(ValueError):
        SpaceSpec.sobolev(2, 1.0)  # needs s > d/2
    with pytest.raises(ValueError):
        SpaceSpec.log_sobolev(2, 0.5)  # needs gamma > 1/2
    with pytest.raises(ValueError):
        SpaceSpec(d=1, kind="sobolev", s=3.0)
    with pytest.raises(ValueError):
        SpaceSpec(d=2, kind="weird")


def test_weight_values_frozen():
    # hand-computed: w_0 = (ln 3)^2, w_1 = 3 (ln 5)^2 for d=2, gamma=1
    sp = SpaceSpec.log_sobolev(2, 1.0)
    assert weight(sp, 0) == pytest.approx(1.206948960812582, rel=1e-14)
    assert weight(sp, 1) == pytest.approx(7.770871181940704, rel=1e-14)
    # Sobolev d=2, s=2: w_1 = (1+2)^2 = 9
    assert weight(SpaceSpec.sobolev(2, 2.0), 1) == pytest.approx(9.0)


def test_weights_monotone_increasing():
    for sp in (SpaceSpec.sobolev(3, 2.0), SpaceSpec.log_sobolev(3, 0.75)):
        w = weights_arr(sp, 200)
        assert np.all(np.diff(w) > 0)


def test_labels():
    assert SpaceSpec.sobolev(2, 1.5).label() == "sob:1.5"
    assert SpaceSpec.log_sobolev(3, 1.0).label() == "log:1"


def test_coeff_ratio_matches_direct():
    from sphquad.specfun import dim_harmonics_arr

    sp = SpaceSpec.log_sobolev(2, 1.0)
    ells = np.arange(0, 30, dtype=float)
    direct = dim_harmonics_arr(2, 29) / weights_arr(sp, 29)
    assert np.allclose(_coeff_ratio(sp, ells), direct, rtol=1e-12)


@pytest.mark.parametrize(
    "sp",
    [
        SpaceSpec.sobolev(2, 1.5),
        SpaceSpec.sobolev(3, 2.5),
        SpaceSpec.log_sobolev(2, 1.0),
        SpaceSpec.log_sobolev(4, 0.75),
        SpaceSpec.log_sobolev(2, 2.0),
    ],
)
def test_tail_bound_dominates_brute_force(sp):
    L = 100
    bound = tail_at_one(sp, L)
    ells = np.arange(L + 1, 3_000_000, dtype=float)
    brute = float(_coeff_ratio(sp, ells).sum())
    assert bound >= brute
    # and is not absurdly loose
    assert bound <= 20.0 * brute


def test_tail_bound_decreases_in_L():
    sp = SpaceSpec.sobolev(2, 2.0)
    vals = [tail_at_one(sp, L) for L in (10, 100, 1000)]
    assert vals[0] > vals[1] > vals[2]


def test_build_coeffs_constant_handling():
    sp = SpaceSpec.sobolev(2, 2.0)
    tab = build_coeffs(sp, 10)
    assert tab.c[0] == 0.0
    tab_full = build_coeffs(sp, 10, include_constant=True)
    assert tab_full.c[0] == pytest.approx(1.0)  # Z(d,0)/w_0 = 1/1
    assert np.allclose(tab.c[1:], tab_full.c[1:])


def test_kernel_eval_single_degree_oracle():
    # with only l=1 kept, K(t) = Z(2,1)/w_1 * t = 3 t / 9 for sobolev s=2
    sp = SpaceSpec.sobolev(2, 2.0)
    tab = build_coeffs(sp, 1)
    kv = kernel_eval(tab, 0.4)
    assert kv.value == pytest.approx(3.0 * 0.4 / 9.0, rel=1e-14)
    assert kv.tail_bound > 0


def test_kernel_eval_vector_and_domain():
    sp = SpaceSpec.log_sobolev(2, 1.0)
    tab = build_coeffs(sp, 50)
    t = np.linspace(-1.0, 1.0, 7)
    kv = kernel_eval(tab, t)
    assert kv.value.shape == (7,)
    # kernel is maximal at t = 1 for positive coefficients
    assert np.argmax(kv.value) == 6
    with pytest.raises(ValueError):
        kernel_eval(tab, 1.01)


def test_kernel_value_at_one_is_coefficient_sum():
    sp = SpaceSpec.sobolev(3, 2.0)
    tab = build_coeffs(sp, 80)
    kv = kernel_eval(tab, 1.0)
    assert kv.value == pytest.approx(float(tab.c.sum()), rel=1e-12)
