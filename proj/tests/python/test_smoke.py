import json
import math

import pytest

import fractool as ft


def test_gamma():
    assert ft.gamma_fn(5.0) == pytest.approx(24.0, rel=1e-12)
    assert ft.gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)


def test_power_rule_and_gap():
    # D^a x at a = 1/2: Gamma(2)/Gamma(3/2)
    assert ft.power_rule_coeff(0.5, 1.0) == pytest.approx(2.0 / math.sqrt(math.pi), rel=1e-12)
    assert ft.convention_gap(2, 0.5) == pytest.approx(2.0 / math.pi, rel=1e-12)
    assert ft.convention_gap(2, 1.0) == pytest.approx(1.0, rel=1e-12)


def test_mittag_leffler():
    assert ft.mittag_leffler(1.0, 1.0) == pytest.approx(math.e, rel=1e-12)
    z = 0.7
    assert ft.mittag_leffler(0.5, z) == pytest.approx(
        math.exp(z * z) * math.erfc(-z), rel=1e-10
    )


def test_mrl_derivative_power_rule():
    n = 2048
    step = 1.0 / (n - 1)
    xs = [i * step for i in range(n)]
    deriv = ft.mrl_derivative(xs, step, 0.5)
    coeff = ft.power_rule_coeff(0.5, 1.0)
    for i, x in enumerate(xs):
        if x < 0.25:
            continue
        assert deriv[i] == pytest.approx(coeff * math.sqrt(x), rel=1e-2)


def test_transform_and_residual():
    out = ft.transform(5, 0.3, "1")
    assert out == "exp(-0.3*X+0.09*T)"
    assert ft.heat_residual_max(out) < 1e-12
    assert ft.heat_residual_max("X*T") > 0


def test_iterate_family5():
    iterates = ft.iterate_family5(1.0, 0.4, 3)
    assert len(iterates) == 3
    for expr in iterates:
        assert ft.heat_residual_max(expr) < 1e-12


def test_bracket_table():
    table = ft.bracket_table()
    assert table[(1, 4)] == pytest.approx([1, 0, 0, 0, 0, 0])
    assert table[(2, 6)] == pytest.approx([0, 0, -2, 4, 0, 0])
    for (i, j), coords in table.items():
        assert coords == pytest.approx([-c for c in table[(j, i)]])


def test_eigen_suite_json():
    reports = [json.loads(r) for r in ft.eigen_suite(0.5, 0.5, 1.0, [64, 128])]
    assert reports[1]["rms_rel"] < reports[0]["rms_rel"]
    assert reports[0]["mode"] == "numeric"


def test_to_canonical():
    X, T = ft.to_canonical(1.0, 1.0, 0.5, 0.5)
    g = ft.gamma_fn(1.5)
    assert X == pytest.approx(1.0 / g, rel=1e-12)
    assert T == pytest.approx(1.0 / g, rel=1e-12)


def test_order_validation():
    with pytest.raises(Exception):
        ft.mittag_leffler(1.5, 1.0)
