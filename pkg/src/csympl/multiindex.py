"""Sorted multi-index bookkeeping for dense exterior-algebra storage.

A k-form on R^m is stored as one complex coefficient per strictly
increasing index tuple, ordered as ``itertools.combinations(range(m), k)``
produces them.  The tables built here flatten wedge products and
contractions into gather/scatter index arrays that the numeric kernels
(:mod:`csympl.kernels`) consume; tables are cached per shape since they
only depend on (dim, degrees).
"""

from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np


@lru_cache(maxsize=None)
def index_tuples(dim: int, degree: int) -> tuple:
    """All strictly increasing index tuples of the given length, lex order."""
    return tuple(combinations(range(dim), degree))


@lru_cache(maxsize=None)
def index_positions(dim: int, degree: int) -> dict:
    return {idx: pos for pos, idx in enumerate(index_tuples(dim, degree))}


def merge_sign(left: tuple, right: tuple) -> int:
    """Sign of sorting the concatenation of two disjoint sorted tuples.

    Equals (-1)^inversions where only cross pairs (x in left, y in right,
    x > y) can be inverted.
    """
    inversions = 0
    for x in left:
        for y in right:
            if x > y:
                inversions += 1
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def wedge_table(dim: int, deg_a: int, deg_b: int):
    """Scatter table for the wedge of a deg_a-form with a deg_b-form.

    Returns (ia, ib, iout, sign) flat arrays: every output coefficient is
    the signed sum over splittings of its index set into a deg_a part and
    a deg_b part.
    """
    pos_a = index_positions(dim, deg_a)
    pos_b = index_positions(dim, deg_b)
    ia, ib, iout, sign = [], [], [], []
    for out_pos, union in enumerate(index_tuples(dim, deg_a + deg_b)):
        for part_a in combinations(union, deg_a):
            part_b = tuple(i for i in union if i not in part_a)
            ia.append(pos_a[part_a])
            ib.append(pos_b[part_b])
            iout.append(out_pos)
            sign.append(merge_sign(part_a, part_b))
    return (
        np.asarray(ia, dtype=np.intp),
        np.asarray(ib, dtype=np.intp),
        np.asarray(iout, dtype=np.intp),
        np.asarray(sign, dtype=np.float64),
    )


@lru_cache(maxsize=None)
def contraction_table(dim: int, degree: int):
    """Scatter table for the interior product with a vector.

    (iin, icomp, iout, sign): coefficient iin contributes
    sign * v[icomp] to output coefficient iout, with sign (-1)^r for the
    r-th slot of the input index tuple.
    """
    pos_out = index_positions(dim, degree - 1)
    iin, icomp, iout, sign = [], [], [], []
    for in_pos, idx in enumerate(index_tuples(dim, degree)):
        for slot, component in enumerate(idx):
            rest = idx[:slot] + idx[slot + 1 :]
            iin.append(in_pos)
            icomp.append(component)
            iout.append(pos_out[rest])
            sign.append(-1.0 if slot % 2 else 1.0)
    return (
        np.asarray(iin, dtype=np.intp),
        np.asarray(icomp, dtype=np.intp),
        np.asarray(iout, dtype=np.intp),
        np.asarray(sign, dtype=np.float64),
    )


def coefficient_count(dim: int, degree: int) -> int:
    return comb(dim, degree)


@lru_cache(maxsize=None)
def index_array(dim: int, degree: int) -> np.ndarray:
    """(count, degree) integer array of the index tuples."""
    return np.asarray(index_tuples(dim, degree), dtype=np.intp).reshape(
        coefficient_count(dim, degree), degree
    )
