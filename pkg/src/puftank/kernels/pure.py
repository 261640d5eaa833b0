"""Pure-Python harmonic quadrature kernel.

Fallback twin of the compiled extension. The arithmetic here is the
reference: same interpolation, same accumulation order, same scaling
sequence, so both backends produce bit-identical doubles. Any change
to an expression below must be mirrored in _thd.pyx.
"""

from __future__ import annotations

import math


def thd_regions(curves, idx, lo, hi, v_dd, cos_tab, out) -> None:
    """THD of one tabulated curve per probe region, written into ``out``.

    curves: rows of curve samples tabulated uniformly over [0, v_dd];
            idx[r] selects the row probed by region r = [lo[r], hi[r]].
    cos_tab: five rows cos(k*theta_j), k = 1..5, theta_j = 2*pi*j/N.
    Degenerate regions (|fundamental| < 1e-12) yield NaN.
    """
    n_regions = len(lo)
    n_samp = len(curves[0])
    n_probe = len(cos_tab[0])
    inv_step = (n_samp - 1) / v_dd
    i_max = n_samp - 2
    tab1 = cos_tab[0]
    tab2 = cos_tab[1]
    tab3 = cos_tab[2]
    tab4 = cos_tab[3]
    tab5 = cos_tab[4]
    scale = 2.0 / n_probe
    for r in range(n_regions):
        s = curves[idx[r]]
        center = 0.5 * (lo[r] + hi[r])
        amp = 0.5 * (hi[r] - lo[r])
        a1 = 0.0
        a2 = 0.0
        a3 = 0.0
        a4 = 0.0
        a5 = 0.0
        for j in range(n_probe):
            t = (center + amp * tab1[j]) * inv_step
            i = int(t)
            if i < 0:
                i = 0
            elif i > i_max:
                i = i_max
            frac = t - i
            si = s[i]
            y = si + (s[i + 1] - si) * frac
            a1 += y * tab1[j]
            a2 += y * tab2[j]
            a3 += y * tab3[j]
            a4 += y * tab4[j]
            a5 += y * tab5[j]
        c1 = a1 * scale
        c2 = a2 * scale
        c3 = a3 * scale
        c4 = a4 * scale
        c5 = a5 * scale
        fund = abs(c1)
        if fund < 1e-12:
            out[r] = math.nan
        else:
            out[r] = math.sqrt(c2 * c2 + c3 * c3 + c4 * c4 + c5 * c5) / fund
