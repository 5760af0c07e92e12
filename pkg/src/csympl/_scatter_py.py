"""Pure-numpy scatter kernels; same interface as the compiled extension."""

import numpy as np


def wedge_scatter(ia, ib, iout, sign, a, b, nout):
    out = np.zeros(nout, dtype=np.complex128)
    np.add.at(out, iout, sign * (a[ia] * b[ib]))
    return out


def contract_scatter(iin, icomp, iout, sign, v, a, nout):
    out = np.zeros(nout, dtype=np.complex128)
    np.add.at(out, iout, sign * (v[icomp] * a[iin]))
    return out
