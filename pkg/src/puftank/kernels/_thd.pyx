# cython: language_level=3
"""Compiled harmonic quadrature kernel.

Twin of kernels/pure.py: expression-for-expression identical arithmetic
(compiled with -ffp-contract=off) so both backends emit bit-identical
doubles. Keep the accumulation order in sync with the pure kernel.
"""

from libc.math cimport sqrt, fabs, NAN


def thd_regions(const double[:, ::1] curves, const long long[::1] idx,
                const double[::1] lo, const double[::1] hi, double v_dd,
                const double[:, ::1] cos_tab, double[::1] out):
    cdef Py_ssize_t n_regions = lo.shape[0]
    cdef Py_ssize_t n_samp = curves.shape[1]
    cdef Py_ssize_t n_probe = cos_tab.shape[1]
    cdef double inv_step = (n_samp - 1) / v_dd
    cdef Py_ssize_t i_max = n_samp - 2
    cdef double scale = 2.0 / n_probe
    cdef Py_ssize_t r, j, i, row
    cdef double center, amp, a1, a2, a3, a4, a5
    cdef double t, frac, si, y, c1, c2, c3, c4, c5, fund
    for r in range(n_regions):
        row = <Py_ssize_t> idx[r]
        center = 0.5 * (lo[r] + hi[r])
        amp = 0.5 * (hi[r] - lo[r])
        a1 = 0.0
        a2 = 0.0
        a3 = 0.0
        a4 = 0.0
        a5 = 0.0
        for j in range(n_probe):
            t = (center + amp * cos_tab[0, j]) * inv_step
            i = <Py_ssize_t> t
            if i < 0:
                i = 0
            elif i > i_max:
                i = i_max
            frac = t - i
            si = curves[row, i]
            y = si + (curves[row, i + 1] - si) * frac
            a1 += y * cos_tab[0, j]
            a2 += y * cos_tab[1, j]
            a3 += y * cos_tab[2, j]
            a4 += y * cos_tab[3, j]
            a5 += y * cos_tab[4, j]
        c1 = a1 * scale
        c2 = a2 * scale
        c3 = a3 * scale
        c4 = a4 * scale
        c5 = a5 * scale
        fund = fabs(c1)
        if fund < 1e-12:
            out[r] = NAN
        else:
            out[r] = sqrt(c2 * c2 + c3 * c3 + c4 * c4 + c5 * c5) / fund
