# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi kernel for Hermitian matrices.

Same rotation sequence and operation grouping as ``_jacobi_py`` so both
kernels agree to machine precision; this one exists purely for speed on
the hot eigensolve path.
"""

from libc.math cimport hypot, sqrt


cdef inline double _cabs(double complex z) noexcept:
    return hypot(z.real, z.imag)


cdef double _max_offdiag(double complex[:, ::1] a, Py_ssize_t d) noexcept:
    cdef Py_ssize_t p, q
    cdef double worst = 0.0, m
    for p in range(d - 1):
        for q in range(p + 1, d):
            m = _cabs(a[p, q])
            if m > worst:
                worst = m
    return worst


def jacobi_sweeps(double complex[:, ::1] a, double complex[:, ::1] v,
                  double tol=1e-13, int max_sweeps=100):
    """Diagonalize Hermitian ``a`` in place, accumulating rotations in ``v``.

    Returns the number of full sweeps performed.
    """
    cdef Py_ssize_t d = a.shape[0]
    cdef Py_ssize_t p, q, i
    cdef int sweep
    cdef double app, aqq, tau, t, c, s, c2, s2, cs, babs, t2
    cdef double complex b, eb, ebs, ebs_c, aip, aiq, vip, viq
    for sweep in range(max_sweeps):
        if _max_offdiag(a, d) < tol:
            return sweep
        for p in range(d - 1):
            for q in range(p + 1, d):
                b = a[p, q]
                babs = _cabs(b)
                if babs == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (app - aqq) / (2.0 * babs)
                if tau >= 0.0:
                    t = -1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (-tau + sqrt(1.0 + tau * tau))
                c2 = 1.0 / (1.0 + t * t)
                s2 = 1.0 - c2
                cs = t * c2
                c = sqrt(c2)
                s = t * c
                eb = b / babs
                ebs = eb * s
                ebs_c = eb.conjugate() * s
                for i in range(d):
                    if i == p or i == q:
                        continue
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip - ebs_c * aiq
                    a[i, q] = ebs * aip + c * aiq
                    a[p, i] = a[i, p].conjugate()
                    a[q, i] = a[i, q].conjugate()
                t2 = (2.0 * cs) * babs
                a[p, p] = (c2 * app + s2 * aqq) - t2
                a[q, q] = (s2 * app + c2 * aqq) + t2
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(d):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip - ebs_c * viq
                    v[i, q] = ebs * vip + c * viq
    return max_sweeps
