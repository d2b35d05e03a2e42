"""Pure-Python backend for the numerical hot paths.

Mirrors the compiled extension ``neumannkit._core`` function for function;
``neumannkit._backend`` selects whichever is importable.  All functions
assume their inputs were validated by the public wrappers (``special``,
``kernels``, ``energy``, ``verification``); they do raw arithmetic only,
except for series-convergence failures which raise ``ConvergenceError``.

Domain codes used by the matrix/sampling entry points:
    0 -- unit disk (rows are (x, y) with x+iy inside |z|<1)
    1 -- annulus {mu<|z|<1}, parameter ``p1`` is mu
    2 -- unit ball in R^d, d = row length
"""

import math

from .errors import ConvergenceError

TWO_PI = 2.0 * math.pi
THETA_MAX_TERMS = 64

# Relative s^2/P threshold below which two directions are treated as exactly
# collinear (floating-point noise of the cross term itself).
COLLINEAR_RTOL = 4e-16

# Above the collinear band the direct closed forms lose accuracy near
# collinearity through cancellation of the 1/s^(2i+2) terms; switch to the
# coefficient-series evaluation when s < tau(d) * |x||y|.
def _series_tau(d):
    if d <= 4:
        return 0.0
    if d <= 7:
        return 0.03
    if d <= 9:
        return 0.15
    return 0.35


def sphere_area(d):
    return 2.0 * math.pi ** (0.5 * d) / math.gamma(0.5 * d)


def fundamental(rho, d):
    if d == 2:
        return -math.log(rho)
    return rho ** (2 - d) / (d - 2)


# ---------------------------------------------------------------------------
# Jacobi theta-1 series
# ---------------------------------------------------------------------------

def theta1(zr, zi, q, tol):
    """theta_1(z; q) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1)z).

    Terms are added in increasing n with a geometric tail bound; raises
    ConvergenceError if the bound cannot reach ``tol`` within the budget.
    Returns (re, im).
    """
    lnq = math.log(q)
    ay = abs(zi)
    ltol = math.log(tol)
    re = 0.0
    im = 0.0
    sign = 1.0
    for n in range(THETA_MAX_TERMS):
        k = 2 * n + 1
        lq = (n + 0.5) * (n + 0.5) * lnq
        # scaled sin(k z): e^{lq} sin(k zr) cosh(k zi) + i e^{lq} cos(k zr) sinh(k zi)
        ep = lq + k * zi
        em = lq - k * zi
        if ep > 700.0 or em > 700.0:
            raise ConvergenceError(
                "theta1 term overflow: |Im z| too large for nome %r" % (q,))
        ep = math.exp(ep)
        em = math.exp(em)
        ch = 0.5 * (ep + em)
        sh = 0.5 * (ep - em)
        re += 2.0 * sign * math.sin(k * zr) * ch
        im += 2.0 * sign * math.cos(k * zr) * sh
        lr = (2 * n + 2) * lnq + 2.0 * ay
        if lr < 0.0:
            r = math.exp(lr)
            # |term_n| <= 2 e^{lq + k|Im z|}; tail <= |term_n| r / (1-r)
            lb = math.log(2.0) + lq + k * ay
            if lb + lr - math.log1p(-r) <= ltol:
                return re, im
        sign = -sign
    raise ConvergenceError(
        "theta1 series needs more than %d terms for q=%r, |Im z|=%r, tol=%r"
        % (THETA_MAX_TERMS, q, ay, tol))


def theta1_prime0(q, tol):
    """theta_1'(0; q) = 2 sum_{n>=0} (-1)^n (2n+1) q^{(n+1/2)^2}."""
    total = 0.0
    sign = 1.0
    for n in range(THETA_MAX_TERMS):
        total += 2.0 * sign * (2 * n + 1) * q ** ((n + 0.5) * (n + 0.5))
        if 2.0 * (2 * n + 3) * q ** ((n + 1.5) * (n + 1.5)) <= tol:
            return total
        sign = -sign
    raise ConvergenceError(
        "theta1' series needs more than %d terms for q=%r" % (THETA_MAX_TERMS, q))


# ---------------------------------------------------------------------------
# Disk kernel
# ---------------------------------------------------------------------------

def disk_pair(ax, ay, bx, by):
    dx = ax - bx
    dy = ay - by
    pr = 1.0 - (ax * bx + ay * by)
    pi = ax * by - ay * bx
    return -0.5 * math.log((dx * dx + dy * dy) * (pr * pr + pi * pi)) / TWO_PI


def disk_diag(ax, ay):
    return -math.log1p(-(ax * ax + ay * ay)) / TWO_PI


# ---------------------------------------------------------------------------
# Annulus kernel (theta-1 product form)
# ---------------------------------------------------------------------------

def annulus_pair_raw(ax, ay, bx, by, mu, tol):
    """Theta-1 product form: carries the unit source flux entirely through
    the inner boundary circle (outer normal derivative zero)."""
    # z1 * conj(z2) and z1 / z2 share the same argument
    cr = ax * bx + ay * by
    ci = ay * bx - ax * by
    arg = math.atan2(ci, cr)
    m1 = ax * ax + ay * ay
    m2 = bx * bx + by * by
    # w1 = i log(z1 conj z2)/2, w2 = i log(z1/z2)/2 (principal logarithm)
    re1, im1 = theta1(-0.5 * arg, 0.25 * math.log(m1 * m2), mu, tol)
    re2, im2 = theta1(-0.5 * arg, 0.25 * math.log(m1 / m2), mu, tol)
    return -0.5 * math.log((re1 * re1 + im1 * im1) * (re2 * re2 + im2 * im2)) / TWO_PI


def annulus_pair(ax, ay, bx, by, mu, tol):
    """Classical normalization: the product form minus its separable radial
    part, so the normal derivative is -1/(2 pi (1+mu)) on both circles and
    the boundary mean does not depend on the source point."""
    m1 = ax * ax + ay * ay
    m2 = bx * bx + by * by
    raw = annulus_pair_raw(ax, ay, bx, by, mu, tol)
    return raw - 0.25 * math.log(m1 * m2) / (math.pi * (1.0 + mu))


def annulus_diag_raw(ax, ay, mu, tol):
    r2 = ax * ax + ay * ay
    t = 0.5 * math.log(r2)
    re, im = theta1(0.0, t, mu, tol)
    tp = theta1_prime0(mu, tol)
    num = 4.0 * r2 * math.sinh(abs(t))
    den = (1.0 - r2) * math.hypot(re, im) * abs(tp)
    return math.log(num / den) / TWO_PI


def annulus_diag(ax, ay, mu, tol):
    r2 = ax * ax + ay * ay
    return annulus_diag_raw(ax, ay, mu, tol) \
        - 0.5 * math.log(r2) / (math.pi * (1.0 + mu))


# ---------------------------------------------------------------------------
# Ball kernel: flux-correction series in closed form
# ---------------------------------------------------------------------------

def _dfact(n):
    r = 1.0
    while n > 1:
        r *= n
        n -= 2
    return r


def _fact(n):
    r = 1.0
    for i in range(2, n + 1):
        r *= i
    return r


def _flux_corr_collinear(c, P, d):
    # limit of the correction series for parallel (c>=0) / antiparallel
    # directions; elementary because the generating quadratic degenerates
    t = math.sqrt(P)
    if c >= 0.0:
        val = -math.log1p(-t)
        base = 1.0 - t
    else:
        val = -math.log1p(t)
        base = 1.0 + t
    for j in range(2, d - 1):
        val += (base ** (1 - j) - 1.0) / (j - 1)
    return val


def _flux_corr_series(c, P, d):
    # Gegenbauer-coefficient series sum_{n>=1} C_n^lam(u) t^n / n; stable for
    # every u in [-1, 1], geometric in t = |x||y| < 1
    t = math.sqrt(P)
    u = c / t
    if u > 1.0:
        u = 1.0
    elif u < -1.0:
        u = -1.0
    lam = 0.5 * (d - 2)
    cnm2 = 1.0
    cnm1 = 2.0 * lam * u
    total = cnm1 * t
    tn = t
    binom = 2.0 * lam  # C_n(1), running
    for n in range(2, 100000):
        cn = (2.0 * (n + lam - 1.0) * u * cnm1 - (n + 2.0 * lam - 2.0) * cnm2) / n
        tn *= t
        total += cn * tn / n
        cnm2 = cnm1
        cnm1 = cn
        binom *= (n + 2.0 * lam - 1.0) / n
        r = t * (n + 2.0 * lam) / (n + 1.0)
        if r < 1.0 and binom * tn * t / (n + 1.0) * r / (1.0 - r) <= 1e-15 * (1.0 + abs(total)):
            return total
    raise ConvergenceError("flux-correction series did not converge (t=%r)" % t)


def _flux_corr_direct(c, P, s2, d):
    R2 = 1.0 - 2.0 * c + P
    R = math.sqrt(R2)
    if d == 3:
        return math.log(2.0 / abs(1.0 - c + R))
    s = math.sqrt(s2)
    if d == 4:
        return c / s * math.atan2(s, 1.0 - c) - math.log(R)
    if d % 2 == 1:
        p = (d - 1) // 2
        val = math.log(2.0 / abs(1.0 - c + R))
        for k in range(1, p):
            val += (R ** (1 - 2 * k) - 1.0) / (2 * k - 1)
        for k in range(1, p):
            cf = _dfact(2 * k - 3) / _fact(k - 1)
            br = (P - c) / R ** (2 * k - 1) + c
            for i in range(0, p - k):
                coef = 2.0 ** i * _fact(k + i - 1) * cf / _dfact(2 * k + 2 * i - 1)
                val += coef * c * P ** i / s2 ** (i + 1) * br
        return val
    p = (d - 2) // 2
    val = -math.log(R)
    for k in range(1, p):
        val += (R ** (-2 * k) - 1.0) / (2 * k)
    theta = math.atan2(s, 1.0 - c)
    for k in range(0, p):
        val += c * theta * _dfact(2 * k - 1) / (2.0 ** k * _fact(k)) * P ** k / s ** (2 * k + 1)
    for k in range(1, p):
        cf = _fact(k - 1) / _dfact(2 * k - 1)
        br = (P - c) / R ** (2 * k) + c
        for i in range(0, p - k):
            coef = _dfact(2 * k + 2 * i - 1) * cf / (2.0 ** (i + 1) * _fact(k + i))
            val += coef * c * P ** i / s2 ** (i + 1) * br
    return val


def flux_corr(c, P, d):
    """Harmonic completion of the image construction, as a function of the
    inner product c = (x, y) and the product P = |x|^2 |y|^2."""
    s2 = P - c * c
    if s2 <= COLLINEAR_RTOL * P:
        return _flux_corr_collinear(c, P, d)
    tau = _series_tau(d)
    if s2 < tau * tau * P:
        return _flux_corr_series(c, P, d)
    return _flux_corr_direct(c, P, s2, d)


def eps1(x, y, d):
    c = 0.0
    xx = 0.0
    yy = 0.0
    for i in range(d):
        c += x[i] * y[i]
        xx += x[i] * x[i]
        yy += y[i] * y[i]
    return flux_corr(c, xx * yy, d)


def ball_pair(x, y, d):
    c = 0.0
    xx = 0.0
    yy = 0.0
    dd = 0.0
    for i in range(d):
        c += x[i] * y[i]
        xx += x[i] * x[i]
        yy += y[i] * y[i]
        dd += (x[i] - y[i]) * (x[i] - y[i])
    P = xx * yy
    rstar = math.sqrt(P - 2.0 * c + 1.0)
    val = fundamental(math.sqrt(dd), d) + fundamental(rstar, d) + flux_corr(c, P, d)
    return val / sphere_area(d)


def ball_diag(x, d):
    xx = 0.0
    for i in range(d):
        xx += x[i] * x[i]
    return (fundamental(1.0 - xx, d) + _flux_corr_collinear(xx, xx * xx, d)) / sphere_area(d)


# ---------------------------------------------------------------------------
# Matrix / sampling entry points
# ---------------------------------------------------------------------------

def _row_less(pts, a, b, dim):
    for i in range(dim):
        if pts[a, i] < pts[b, i]:
            return True
        if pts[a, i] > pts[b, i]:
            return False
    return False


def _pair_value(pts, a, b, dim, dom, p1, tol):
    if dom == 0:
        return disk_pair(pts[a, 0], pts[a, 1], pts[b, 0], pts[b, 1])
    if dom == 1:
        return annulus_pair(pts[a, 0], pts[a, 1], pts[b, 0], pts[b, 1], p1, tol)
    return ball_pair(pts[a], pts[b], dim)


def _diag_value(pts, a, dim, dom, p1, tol):
    if dom == 0:
        return disk_diag(pts[a, 0], pts[a, 1])
    if dom == 1:
        return annulus_diag(pts[a, 0], pts[a, 1], p1, tol)
    return ball_diag(pts[a], dim)


def eta_matrix(pts, dom, p1, tol, out):
    """Fill out[k, l] with the kernel at (pts[k], pts[l]) and out[k, k] with
    the diagonal regular part.  Each unordered pair is evaluated once in a
    canonical (lexicographic) orientation so permuting the rows permutes the
    matrix entries bit-for-bit."""
    n = pts.shape[0]
    dim = pts.shape[1]
    for k in range(n):
        out[k, k] = _diag_value(pts, k, dim, dom, p1, tol)
        for l in range(k + 1, n):
            if _row_less(pts, l, k, dim):
                v = _pair_value(pts, l, k, dim, dom, p1, tol)
            else:
                v = _pair_value(pts, k, l, dim, dom, p1, tol)
            out[k, l] = v
            out[l, k] = v


def _potential_at(px, pts, delta, dom, p1, tol):
    n = pts.shape[0]
    dim = pts.shape[1]
    total = 0.0
    for k in range(n):
        if dom == 0:
            v = disk_pair(px[0], px[1], pts[k, 0], pts[k, 1])
        elif dom == 1:
            v = annulus_pair(px[0], px[1], pts[k, 0], pts[k, 1], p1, tol)
        else:
            v = ball_pair(px, pts[k], dim)
        total += delta[k] * v
    return total


def grad_u_sq(x, pts, delta, dom, p1, tol, h):
    """|grad u|^2 at x by central differences of the charge potential."""
    dim = pts.shape[1]
    xs = [x[i] for i in range(dim)]
    total = 0.0
    for i in range(dim):
        orig = xs[i]
        xs[i] = orig + h
        up = _potential_at(xs, pts, delta, dom, p1, tol)
        xs[i] = orig - h
        um = _potential_at(xs, pts, delta, dom, p1, tol)
        xs[i] = orig
        g = (up - um) / (2.0 * h)
        total += g * g
    return total


def dirichlet_block(samples, pts, delta, dom, p1, tol, h, out):
    n = samples.shape[0]
    for i in range(n):
        out[i] = grad_u_sq(samples[i], pts, delta, dom, p1, tol, h)
