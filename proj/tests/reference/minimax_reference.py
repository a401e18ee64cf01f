"""High-precision reference values for the unit tests and embedded partitions.

Everything is computed with mpmath quadrature of the normal CDF, independently
of the C++ implementation. Run: python3 minimax_reference.py (takes a few minutes).
"""

from mpmath import erfinv, findroot, inf, mp, mpf, ncdf, npdf, nstr, quad, sqrt

mp.dps = 40


def closs(x):
    return quad(ncdf, [-inf, x])


def breakpoint_errors(interior):
    a = [-inf] + interior
    b = interior + [inf]
    errors = []
    for lo, hi in zip(a, b):
        p_lo = 0 if lo == -inf else ncdf(lo)
        p_hi = 1 if hi == inf else ncdf(hi)
        f_lo = 0 if lo == -inf else npdf(lo)
        f_hi = 0 if hi == inf else npdf(hi)
        m = (f_lo - f_hi) / (p_hi - p_lo)
        errors.append(closs(m) - (p_hi * m + f_hi))
    return errors


def symmetric(negatives, n_regions):
    out = list(negatives)
    if n_regions % 2 == 0:
        out.append(mpf(0))
    return out + [-x for x in reversed(negatives)]


def solve(n_regions):
    k = (n_regions - 1) // 2
    if k == 0:
        interior = symmetric([], n_regions)
        return interior, breakpoint_errors(interior)

    def residuals(*u):
        e = breakpoint_errors(symmetric(list(u), n_regions))
        return [e[0] - e[j] for j in range(1, k + 1)]

    start = [sqrt(2) * erfinv(2 * mpf(i) / n_regions - 1) for i in range(1, k + 1)]
    root = findroot(residuals, start)
    u = [root[i] for i in range(k)] if k > 1 else [root]
    interior = symmetric(u, n_regions)
    return interior, breakpoint_errors(interior)


if __name__ == "__main__":
    print("phi(1)", npdf(1))
    print("cdf(0.886942)", quad(npdf, [-inf, 0, mpf("0.886942")]))
    print("inv_cdf(0.812445)", findroot(lambda x: ncdf(x) - mpf("0.812445"), 0.9))
    print("loss_std(2)", quad(lambda t: 1 - ncdf(t), [2, inf]))
    print("closs_std(1)", closs(1))
    print("errors for boundaries -2, 0, 2", breakpoint_errors([mpf(-2), mpf(0), mpf(2)]))
    for n in range(1, 13):
        interior, errors = solve(n)
        print(n + 1, "segments:", [nstr(b, 17) for b in interior], "error", nstr(max(errors), 17))
