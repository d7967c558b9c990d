import math

import pytest

import nbbd


def test_zeta_classical_values():
    assert abs(nbbd.zeta(2.0) - math.pi**2 / 6) < 1e-12
    assert abs(nbbd.zeta(0.0) + 0.5) < 1e-12
    with pytest.raises(nbbd.PoleError):
        nbbd.zeta(1.0)
    with pytest.raises(nbbd.DomainError):
        nbbd.zeta(complex(0.5, 2e5))


def test_constants_and_zero_sum():
    c = nbbd.constants()
    assert c["nbbd_constant"] == 2 + c["euler_gamma"] - c["log_4pi"]
    table = nbbd.load_bundled_table()
    assert len(table) == 10000
    assert abs(nbbd.zero_sum_constant(table)["value"] - c["nbbd_constant"]) < 1e-3


def test_mollifier():
    assert nbbd.moebius(6) == [1, -1, -1, 0, -1, 1]
    v = nbbd.vn_coefficients(3)
    assert v[0] == 1.0 and v[2] == 0.0
    assert abs(v[1] + (1 - math.log(2) / math.log(3))) < 1e-15
    s = complex(0.5, 0.0)
    assert abs(nbbd.eval_vn(3, s) - nbbd.eval_dirichlet([complex(x) for x in v], s)) < 1e-15


def test_quadrature_and_distance():
    assert abs(nbbd.weighted_integral(lambda t: 1.0)["value"] - 1.0) < 1e-10
    r = nbbd.criterion_integral(10)
    assert 0.0 < r["value"] < 1.0
    d1, d2 = nbbd.dn2(1)["d2"], nbbd.dn2(2)["d2"]
    assert d2 <= d1


def test_residues_and_model():
    table = nbbd.load_bundled_table().truncated(2000.0)
    rep = nbbd.lemma23_reconstruct(100, complex(0.45, 3.0), table)
    assert rep["relative_error"] < 1e-2
    assert abs(nbbd.f_series(0.5, 0.1) + 0.1621) < 5e-5

    spec = nbbd.ModelSpec()
    for q in spec.quadruplet():
        assert abs(nbbd.model_zeta(q, spec)) < 1e-8
    s = complex(0.3, 7.0)
    assert abs(nbbd.swap_factor(s, spec) - nbbd.swap_factor(1 - s, spec)) < 1e-12
    with pytest.raises(nbbd.DomainError):
        nbbd.ModelSpec(sigma0=0.5)

    values = [(n, nbbd.main_term_integral(n, spec)) for n in nbbd.geometric_grid(100, 3000, 10)]
    fit = nbbd.fit_theorem_constants(values, spec)
    assert fit["frequency"] == 2 * spec.gamma0
    assert fit["B"] > 0
