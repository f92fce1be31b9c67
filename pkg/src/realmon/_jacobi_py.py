"""Pure-Python cyclic Jacobi kernel for Hermitian matrices.

Fallback twin of the compiled kernel in ``_jacobi.pyx``: the same rotation
sequence with the same operation grouping, so both kernels agree to machine
precision.  The rotations run over plain Python complex scalars (much
faster than per-element numpy arithmetic at these sizes) and the result is
written back into the caller's arrays, preserving the in-place contract.
"""

import math

import numpy as np

OFFDIAG_TOL = 1e-13
MAX_SWEEPS = 100


def _max_offdiag(a, d):
    worst = 0.0
    for p in range(d - 1):
        row = a[p]
        for q in range(p + 1, d):
            m = abs(row[q])
            if m > worst:
                worst = m
    return worst


def jacobi_sweeps(a, v, tol=OFFDIAG_TOL, max_sweeps=MAX_SWEEPS):
    """Diagonalize Hermitian ``a`` in place, accumulating rotations in ``v``.

    Returns the number of full sweeps performed.  Caller is responsible for
    symmetrizing the input; eigenvalues end up on the (real) diagonal.
    """
    d = a.shape[0]
    al = [[complex(a[i, j]) for j in range(d)] for i in range(d)]
    vl = [[complex(v[i, j]) for j in range(d)] for i in range(d)]
    sweeps = max_sweeps
    for sweep in range(max_sweeps):
        if _max_offdiag(al, d) < tol:
            sweeps = sweep
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                b = al[p][q]
                babs = abs(b)
                if babs == 0.0:
                    continue
                app = al[p][p].real
                aqq = al[q][q].real
                tau = (app - aqq) / (2.0 * babs)
                if tau >= 0.0:
                    t = -1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c2 = 1.0 / (1.0 + t * t)
                s2 = 1.0 - c2
                cs = t * c2
                c = math.sqrt(c2)
                s = t * c
                eb = b / babs
                ebs = eb * s
                ebs_c = eb.conjugate() * s
                # Columns p, q of A'=U†AU for rows outside the (p,q) block,
                # mirrored to keep the matrix Hermitian.
                for i in range(d):
                    if i == p or i == q:
                        continue
                    row = al[i]
                    aip = row[p]
                    aiq = row[q]
                    new_p = c * aip - ebs_c * aiq
                    new_q = ebs * aip + c * aiq
                    row[p] = new_p
                    row[q] = new_q
                    al[p][i] = new_p.conjugate()
                    al[q][i] = new_q.conjugate()
                # The 2x2 block is set analytically: real diagonal, zero corner.
                t2 = (2.0 * cs) * babs
                al[p][p] = complex((c2 * app + s2 * aqq) - t2)
                al[q][q] = complex((s2 * app + c2 * aqq) + t2)
                al[p][q] = 0.0
                al[q][p] = 0.0
                for i in range(d):
                    row = vl[i]
                    vip = row[p]
                    viq = row[q]
                    row[p] = c * vip - ebs_c * viq
                    row[q] = ebs * vip + c * viq
    a[:] = np.array(al, dtype=complex)
    v[:] = np.array(vl, dtype=complex)
    return sweeps
