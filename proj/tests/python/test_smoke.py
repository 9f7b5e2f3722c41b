import math

import pytest

import asdflow


def test_cylinder_is_stationary():
    assert max(abs(v) for v in asdflow.g_divergence([1.5] * 32)) <= 1e-11


def test_spectrum_values():
    assert asdflow.cylinder_spectrum(2.0, 5) == [-0.75, -15.0, -78.75, -252.0, -618.75]


def test_unduloid():
    assert asdflow.unduloid_H(0.0, 3) == 3.0
    assert asdflow.unduloid_H(0.5) == pytest.approx(0.934215457667694116, abs=1e-10)
    r = asdflow.unduloid_profile(0.2, 1, 128)
    assert len(r) == 128
    assert max(abs(v) for v in asdflow.g_divergence(r)) <= 1e-6
    assert asdflow.leading_eigenvalue(asdflow.unduloid_profile(0.1, 1, 32)) > 0.0


def test_simulate_decays():
    xs = asdflow.nodes(32)
    r0 = [2.0 + 0.01 * math.cos(x) for x in xs]
    out = asdflow.simulate(r0, t_end=0.5)
    assert out["termination"] == "reached_t_end"
    assert out["mode_amps"][0][-1] < out["mode_amps"][0][0]
    assert abs(out["volume"][-1] - out["volume"][0]) <= 1e-7 * out["volume"][0]


def test_pitchfork():
    lam0, dlam, d2lam = asdflow.pitchfork(1, [-0.02, -0.01, 0.0, 0.01, 0.02], 64)
    assert abs(lam0 - 1.0) <= 1e-6
    assert abs(dlam) <= 1e-4
    assert d2lam < 0.0


def test_errors_map_to_python_exceptions():
    assert asdflow.classify(1.0) == "sphere-chain"
    with pytest.raises(asdflow.ClassificationError):
        asdflow.unduloid_H(1.2)
    with pytest.raises(ValueError):
        asdflow.unduloid_H(0.97)
    with pytest.raises(asdflow.DomainError):
        asdflow.g_divergence([1.0, -1.0] * 8)


def test_cli_entry(tmp_path):
    code, out, _ = asdflow.run_cli(["spectrum", "--radius", "2", "--kmax", "2", "--out", str(tmp_path)])
    assert code == 0
    assert out.strip() == "[-0.75,-15.0]"
    assert asdflow.run_cli(["nonsense"])[0] == 2
