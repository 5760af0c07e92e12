"""Compiled vs pure scatter kernels and the multi-index tables."""

import numpy as np
import pytest

from csympl import _scatter_py
from csympl import kernels, multiindex

try:
    from csympl import _fastscatter
except ImportError:
    _fastscatter = None


def test_some_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_merge_sign_examples():
    assert multiindex.merge_sign((0, 2), (1, 3)) == -1
    assert multiindex.merge_sign((0, 1), (2, 3)) == 1
    assert multiindex.merge_sign((), (0, 1)) == 1
    assert multiindex.merge_sign((3,), (0, 1, 2)) == -1


def test_wedge_table_counts():
    ia, ib, iout, sign = multiindex.wedge_table(6, 2, 2)
    # every output 4-set splits into C(4, 2) ordered (a, b) parts
    assert len(ia) == multiindex.coefficient_count(6, 4) * 6
    assert set(iout.tolist()) == set(range(multiindex.coefficient_count(6, 4)))
    assert set(sign.tolist()) <= {-1.0, 1.0}


def test_contraction_table_counts():
    iin, icomp, iout, sign = multiindex.contraction_table(5, 3)
    assert len(iin) == multiindex.coefficient_count(5, 3) * 3


@pytest.mark.skipif(_fastscatter is None, reason="compiled extension unavailable")
def test_backends_agree_on_wedge_scatter():
    rng = np.random.default_rng(0)
    for dim, p, q in ((4, 1, 1), (6, 2, 2), (8, 2, 4), (12, 2, 2)):
        ia, ib, iout, sign = multiindex.wedge_table(dim, p, q)
        a = rng.standard_normal(multiindex.coefficient_count(dim, p)) + 1j * rng.standard_normal(
            multiindex.coefficient_count(dim, p)
        )
        b = rng.standard_normal(multiindex.coefficient_count(dim, q)) + 1j * rng.standard_normal(
            multiindex.coefficient_count(dim, q)
        )
        nout = multiindex.coefficient_count(dim, p + q)
        pure = _scatter_py.wedge_scatter(ia, ib, iout, sign, a, b, nout)
        fast = _fastscatter.wedge_scatter(ia, ib, iout, sign, a, b, nout)
        assert np.allclose(pure, fast, atol=1e-13)


@pytest.mark.skipif(_fastscatter is None, reason="compiled extension unavailable")
def test_backends_agree_on_contract_scatter():
    rng = np.random.default_rng(1)
    for dim, k in ((4, 2), (6, 3), (10, 4)):
        iin, icomp, iout, sign = multiindex.contraction_table(dim, k)
        a = rng.standard_normal(multiindex.coefficient_count(dim, k)) + 0j
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        nout = multiindex.coefficient_count(dim, k - 1)
        pure = _scatter_py.contract_scatter(iin, icomp, iout, sign, v, a, nout)
        fast = _fastscatter.contract_scatter(iin, icomp, iout, sign, v, a, nout)
        assert np.allclose(pure, fast, atol=1e-13)


def test_pure_backend_forced_by_env(tmp_path):
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c", "from csympl import kernels; print(kernels.BACKEND)"],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "CSYMPL_PURE": "1"},
    )
    assert out.stdout.strip() == "python"
