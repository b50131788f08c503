import json

import numpy as np
import pytest

import psido_lab as pl


def test_partition_sums_to_one():
    p = pl.DyadicPartition(1.0, 6)
    for x in (0.3, 1.0, 1.7, 5.0, 20.0):
        total = sum(p.gamma(i, x) ** 2 for i in range(-6, 7))
        assert total == pytest.approx(1.0, abs=1e-13)


def test_unit_symbol_quantizes_to_identity():
    grid = pl.CircleGrid(16)
    op = pl.t_quantize(pl.Symbol.unit(), 3.0, grid)
    assert op.matrix.shape == (33, 33)
    assert np.allclose(op.matrix, np.eye(33), atol=0.0)


def test_multiplication_by_exponential_shifts_modes():
    grid = pl.CircleGrid(8)
    op = pl.multiplication_operator(pl.TrigLoop.scalar_monomial(1), grid)
    v = np.zeros(grid.dim, dtype=complex)
    v[grid.index(2)] = 1.0
    w = op.apply(v)
    assert abs(w[grid.index(3)] - 1.0) < 1e-15
    assert pl.operator_norm(op) == pytest.approx(1.0)


def test_translation_invariance_is_exact():
    grid = pl.CircleGrid(32)
    a = pl.Symbol.separable(pl.TrigLoop.scalar_monomial(1), pl.Profile.bump(2.0), pl.SymbolClass.CompactSupport)
    for t, s in ((4.0, 0.5), (8.0, 2.0)):
        lhs = pl.t_quantize(a, t, grid).matrix
        rhs = pl.t_quantize(pl.dilate(a, s), t / s, grid).matrix
        assert np.max(np.abs(lhs - rhs)) == 0.0


def test_index_of_exponential_symbol():
    sigma = pl.Symbol.homogeneous(pl.TrigLoop.scalar_monomial(1), pl.TrigLoop.identity())
    assert pl.winding_number(pl.TrigLoop.scalar_monomial(-3)) == -3
    assert pl.analytic_index(sigma) == pl.fredholm_index(sigma, pl.CircleGrid(64))


def test_symbol_parse_and_bad_config():
    s = pl.Symbol.parse(json.dumps({"class": "homogeneous", "plus": [{"trig": [[1, 1, 0]]}],
                                    "minus": [{"trig": [[0, 1, 0]]}]}))
    assert s.k == 1 and s.symbol_class == pl.SymbolClass.HomogeneousZero
    assert pl.analytic_index(s) == -1
    with pytest.raises(ValueError):
        pl.Config.parse("{ not json")


def test_defect_sweep_runner_on_small_grid():
    cfg = pl.Config.default()
    cfg.N = 64
    res = pl.defect_sweep(cfg, threads=1)
    assert res.csv().startswith("t,mult_defect,adjoint_defect,chart_defect,t0_norm\n")
    assert json.loads(res.json())
    assert set(res.checks) and all(isinstance(v[0], bool) for v in res.checks.values())
