#!/usr/bin/env python3
"""Convert the PyGSP copy of the Minnesota road network to Matrix Market.

Usage: minnesota_to_mtx.py path/to/minnesota.mat out.mtx

The two bridging edges and weight binarization match PyGSP's
``graphs.Minnesota(connect=True)``.
"""
import sys

import scipy.io
import scipy.sparse as sp


def main(src, dst):
    data = scipy.io.loadmat(src)
    a = sp.lil_matrix(data["A"])
    a[348, 354] = 1
    a[354, 348] = 1
    a = sp.csc_matrix((sp.csc_matrix(a) > 0).astype(float))
    a.setdiag(0)
    a.eliminate_zeros()
    scipy.io.mmwrite(dst, sp.tril(a).tocoo(), symmetry="symmetric",
                     comment="Minnesota road network (MatlabBGL via PyGSP)")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
