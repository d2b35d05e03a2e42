# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled backend for the numerical hot paths.

Function-for-function twin of ``neumannkit._purepy`` (same algorithms,
same summation order); see that module for the documentation.
"""

from libc.math cimport (atan2, cos, cosh, exp, fabs, hypot, log, log1p, pow,
                        sin, sinh, sqrt, tgamma, INFINITY)

import numpy as np

from .errors import ConvergenceError

cdef double TWO_PI = 6.283185307179586476925286766559
cdef double LN2 = 0.69314718055994530941723212145818
cdef int THETA_MAX_TERMS = 64
cdef double COLLINEAR_RTOL = 4e-16


cdef inline double _series_tau(int d) nogil:
    if d <= 4:
        return 0.0
    if d <= 7:
        return 0.03
    if d <= 9:
        return 0.15
    return 0.35


cdef inline double _sphere_area(int d) nogil:
    return 2.0 * pow(3.14159265358979323846264338327950288, 0.5 * d) / tgamma(0.5 * d)


cdef inline double _fundamental(double rho, int d) nogil:
    if d == 2:
        return -log(rho)
    return pow(rho, 2 - d) / (d - 2)


def sphere_area(int d):
    return _sphere_area(d)


def fundamental(double rho, int d):
    return _fundamental(rho, d)


# ---------------------------------------------------------------------------
# Jacobi theta-1 series
# ---------------------------------------------------------------------------

cdef int _theta1(double zr, double zi, double q, double tol,
                 double* out_re, double* out_im) nogil:
    cdef double lnq = log(q)
    cdef double ay = fabs(zi)
    cdef double ltol = log(tol)
    cdef double re = 0.0, im = 0.0, sign = 1.0
    cdef double lq, ep, em, ch, sh, lr, r, lb
    cdef int n, k
    for n in range(THETA_MAX_TERMS):
        k = 2 * n + 1
        lq = (n + 0.5) * (n + 0.5) * lnq
        ep = lq + k * zi
        em = lq - k * zi
        if ep > 700.0 or em > 700.0:
            return 2
        ep = exp(ep)
        em = exp(em)
        ch = 0.5 * (ep + em)
        sh = 0.5 * (ep - em)
        re += 2.0 * sign * sin(k * zr) * ch
        im += 2.0 * sign * cos(k * zr) * sh
        lr = (2 * n + 2) * lnq + 2.0 * ay
        if lr < 0.0:
            r = exp(lr)
            lb = LN2 + lq + k * ay
            if lb + lr - log1p(-r) <= ltol:
                out_re[0] = re
                out_im[0] = im
                return 0
        sign = -sign
    return 1


def theta1(double zr, double zi, double q, double tol):
    cdef double re = 0.0, im = 0.0
    cdef int status = _theta1(zr, zi, q, tol, &re, &im)
    if status == 2:
        raise ConvergenceError(
            "theta1 term overflow: |Im z| too large for nome %r" % (q,))
    if status == 1:
        raise ConvergenceError(
            "theta1 series needs more than %d terms for q=%r, |Im z|=%r, tol=%r"
            % (THETA_MAX_TERMS, q, fabs(zi), tol))
    return re, im


cdef double _theta1_prime0(double q, double tol) except? -1e308:
    cdef double total = 0.0, sign = 1.0
    cdef int n
    for n in range(THETA_MAX_TERMS):
        total += 2.0 * sign * (2 * n + 1) * pow(q, (n + 0.5) * (n + 0.5))
        if 2.0 * (2 * n + 3) * pow(q, (n + 1.5) * (n + 1.5)) <= tol:
            return total
        sign = -sign
    raise ConvergenceError(
        "theta1' series needs more than %d terms for q=%r" % (THETA_MAX_TERMS, q))


def theta1_prime0(double q, double tol):
    return _theta1_prime0(q, tol)


# ---------------------------------------------------------------------------
# Disk kernel
# ---------------------------------------------------------------------------

cdef inline double _disk_pair(double ax, double ay, double bx, double by) nogil:
    cdef double dx = ax - bx
    cdef double dy = ay - by
    cdef double pr = 1.0 - (ax * bx + ay * by)
    cdef double pi = ax * by - ay * bx
    return -0.5 * log((dx * dx + dy * dy) * (pr * pr + pi * pi)) / TWO_PI


cdef inline double _disk_diag(double ax, double ay) nogil:
    return -log1p(-(ax * ax + ay * ay)) / TWO_PI


def disk_pair(double ax, double ay, double bx, double by):
    return _disk_pair(ax, ay, bx, by)


def disk_diag(double ax, double ay):
    return _disk_diag(ax, ay)


# ---------------------------------------------------------------------------
# Annulus kernel
# ---------------------------------------------------------------------------

cdef double PI = 3.14159265358979323846264338327950288


cdef double _annulus_pair_raw(double ax, double ay, double bx, double by,
                              double mu, double tol) except? -1e308:
    cdef double cr = ax * bx + ay * by
    cdef double ci = ay * bx - ax * by
    cdef double arg = atan2(ci, cr)
    cdef double m1 = ax * ax + ay * ay
    cdef double m2 = bx * bx + by * by
    cdef double re1 = 0.0, im1 = 0.0, re2 = 0.0, im2 = 0.0
    if _theta1(-0.5 * arg, 0.25 * log(m1 * m2), mu, tol, &re1, &im1) != 0 or \
       _theta1(-0.5 * arg, 0.25 * log(m1 / m2), mu, tol, &re2, &im2) != 0:
        raise ConvergenceError(
            "theta1 series did not converge for the annulus kernel (mu=%r)" % mu)
    return -0.5 * log((re1 * re1 + im1 * im1) * (re2 * re2 + im2 * im2)) / TWO_PI


cdef double _annulus_pair(double ax, double ay, double bx, double by,
                          double mu, double tol) except? -1e308:
    cdef double m1 = ax * ax + ay * ay
    cdef double m2 = bx * bx + by * by
    cdef double raw = _annulus_pair_raw(ax, ay, bx, by, mu, tol)
    return raw - 0.25 * log(m1 * m2) / (PI * (1.0 + mu))


cdef double _annulus_diag_raw(double ax, double ay, double mu, double tol) except? -1e308:
    cdef double r2 = ax * ax + ay * ay
    cdef double t = 0.5 * log(r2)
    cdef double re = 0.0, im = 0.0
    if _theta1(0.0, t, mu, tol, &re, &im) != 0:
        raise ConvergenceError(
            "theta1 series did not converge for the annulus diagonal (mu=%r)" % mu)
    cdef double tp = _theta1_prime0(mu, tol)
    cdef double num = 4.0 * r2 * sinh(fabs(t))
    cdef double den = (1.0 - r2) * hypot(re, im) * fabs(tp)
    return log(num / den) / TWO_PI


cdef double _annulus_diag(double ax, double ay, double mu, double tol) except? -1e308:
    cdef double r2 = ax * ax + ay * ay
    return _annulus_diag_raw(ax, ay, mu, tol) \
        - 0.5 * log(r2) / (PI * (1.0 + mu))


def annulus_pair_raw(double ax, double ay, double bx, double by, double mu, double tol):
    return _annulus_pair_raw(ax, ay, bx, by, mu, tol)


def annulus_pair(double ax, double ay, double bx, double by, double mu, double tol):
    return _annulus_pair(ax, ay, bx, by, mu, tol)


def annulus_diag_raw(double ax, double ay, double mu, double tol):
    return _annulus_diag_raw(ax, ay, mu, tol)


def annulus_diag(double ax, double ay, double mu, double tol):
    return _annulus_diag(ax, ay, mu, tol)


# ---------------------------------------------------------------------------
# Ball kernel
# ---------------------------------------------------------------------------

cdef inline double _dfact(int n) nogil:
    cdef double r = 1.0
    while n > 1:
        r *= n
        n -= 2
    return r


cdef inline double _fact(int n) nogil:
    cdef double r = 1.0
    cdef int i
    for i in range(2, n + 1):
        r *= i
    return r


cdef double _flux_corr_collinear(double c, double P, int d) nogil:
    cdef double t = sqrt(P)
    cdef double val, base
    cdef int j
    if c >= 0.0:
        val = -log1p(-t)
        base = 1.0 - t
    else:
        val = -log1p(t)
        base = 1.0 + t
    for j in range(2, d - 1):
        val += (pow(base, 1 - j) - 1.0) / (j - 1)
    return val


cdef double _flux_corr_series(double c, double P, int d) except? -1e308:
    cdef double t = sqrt(P)
    cdef double u = c / t
    if u > 1.0:
        u = 1.0
    elif u < -1.0:
        u = -1.0
    cdef double lam = 0.5 * (d - 2)
    cdef double cnm2 = 1.0
    cdef double cnm1 = 2.0 * lam * u
    cdef double total = cnm1 * t
    cdef double tn = t
    cdef double binom = 2.0 * lam
    cdef double cn, r
    cdef int n
    for n in range(2, 100000):
        cn = (2.0 * (n + lam - 1.0) * u * cnm1 - (n + 2.0 * lam - 2.0) * cnm2) / n
        tn *= t
        total += cn * tn / n
        cnm2 = cnm1
        cnm1 = cn
        binom *= (n + 2.0 * lam - 1.0) / n
        r = t * (n + 2.0 * lam) / (n + 1.0)
        if r < 1.0 and binom * tn * t / (n + 1.0) * r / (1.0 - r) <= 1e-15 * (1.0 + fabs(total)):
            return total
    raise ConvergenceError("flux-correction series did not converge (t=%r)" % t)


cdef double _flux_corr_direct(double c, double P, double s2, int d) nogil:
    cdef double R2 = 1.0 - 2.0 * c + P
    cdef double R = sqrt(R2)
    cdef double s, val, theta, cf, br, coef
    cdef int p, k, i
    if d == 3:
        return log(2.0 / fabs(1.0 - c + R))
    s = sqrt(s2)
    if d == 4:
        return c / s * atan2(s, 1.0 - c) - log(R)
    if d % 2 == 1:
        p = (d - 1) // 2
        val = log(2.0 / fabs(1.0 - c + R))
        for k in range(1, p):
            val += (pow(R, 1 - 2 * k) - 1.0) / (2 * k - 1)
        for k in range(1, p):
            cf = _dfact(2 * k - 3) / _fact(k - 1)
            br = (P - c) / pow(R, 2 * k - 1) + c
            for i in range(0, p - k):
                coef = pow(2.0, i) * _fact(k + i - 1) * cf / _dfact(2 * k + 2 * i - 1)
                val += coef * c * pow(P, i) / pow(s2, i + 1) * br
        return val
    p = (d - 2) // 2
    val = -log(R)
    for k in range(1, p):
        val += (pow(R, -2 * k) - 1.0) / (2 * k)
    theta = atan2(s, 1.0 - c)
    for k in range(0, p):
        val += c * theta * _dfact(2 * k - 1) / (pow(2.0, k) * _fact(k)) * pow(P, k) / pow(s, 2 * k + 1)
    for k in range(1, p):
        cf = _fact(k - 1) / _dfact(2 * k - 1)
        br = (P - c) / pow(R, 2 * k) + c
        for i in range(0, p - k):
            coef = _dfact(2 * k + 2 * i - 1) * cf / (pow(2.0, i + 1) * _fact(k + i))
            val += coef * c * pow(P, i) / pow(s2, i + 1) * br
    return val


cdef double _flux_corr(double c, double P, int d) except? -1e308:
    cdef double s2 = P - c * c
    cdef double tau
    if s2 <= COLLINEAR_RTOL * P:
        return _flux_corr_collinear(c, P, d)
    tau = _series_tau(d)
    if s2 < tau * tau * P:
        return _flux_corr_series(c, P, d)
    return _flux_corr_direct(c, P, s2, d)


def flux_corr(double c, double P, int d):
    return _flux_corr(c, P, d)


def eps1(double[::1] x, double[::1] y, int d):
    cdef double c = 0.0, xx = 0.0, yy = 0.0
    cdef int i
    for i in range(d):
        c += x[i] * y[i]
        xx += x[i] * x[i]
        yy += y[i] * y[i]
    return _flux_corr(c, xx * yy, d)


cdef double _ball_pair_rows(double[:, ::1] pts, Py_ssize_t a, Py_ssize_t b,
                            int d) except? -1e308:
    cdef double c = 0.0, xx = 0.0, yy = 0.0, dd = 0.0
    cdef double diff, P, rstar, val
    cdef int i
    for i in range(d):
        c += pts[a, i] * pts[b, i]
        xx += pts[a, i] * pts[a, i]
        yy += pts[b, i] * pts[b, i]
        diff = pts[a, i] - pts[b, i]
        dd += diff * diff
    P = xx * yy
    rstar = sqrt(P - 2.0 * c + 1.0)
    val = _fundamental(sqrt(dd), d) + _fundamental(rstar, d) + _flux_corr(c, P, d)
    return val / _sphere_area(d)


def ball_pair(double[::1] x, double[::1] y, int d):
    cdef double c = 0.0, xx = 0.0, yy = 0.0, dd = 0.0
    cdef double diff, P, rstar, val
    cdef int i
    for i in range(d):
        c += x[i] * y[i]
        xx += x[i] * x[i]
        yy += y[i] * y[i]
        diff = x[i] - y[i]
        dd += diff * diff
    P = xx * yy
    rstar = sqrt(P - 2.0 * c + 1.0)
    val = _fundamental(sqrt(dd), d) + _fundamental(rstar, d) + _flux_corr(c, P, d)
    return val / _sphere_area(d)


cdef double _ball_diag_row(double[:, ::1] pts, Py_ssize_t a, int d) nogil:
    cdef double xx = 0.0
    cdef int i
    for i in range(d):
        xx += pts[a, i] * pts[a, i]
    return (_fundamental(1.0 - xx, d) + _flux_corr_collinear(xx, xx * xx, d)) / _sphere_area(d)


def ball_diag(double[::1] x, int d):
    cdef double xx = 0.0
    cdef int i
    for i in range(d):
        xx += x[i] * x[i]
    return (_fundamental(1.0 - xx, d) + _flux_corr_collinear(xx, xx * xx, d)) / _sphere_area(d)


# ---------------------------------------------------------------------------
# Matrix / sampling entry points
# ---------------------------------------------------------------------------

cdef bint _row_less(double[:, ::1] pts, Py_ssize_t a, Py_ssize_t b, int dim) nogil:
    cdef int i
    for i in range(dim):
        if pts[a, i] < pts[b, i]:
            return True
        if pts[a, i] > pts[b, i]:
            return False
    return False


cdef double _pair_value(double[:, ::1] pts, Py_ssize_t a, Py_ssize_t b,
                        int dim, int dom, double p1, double tol) except? -1e308:
    if dom == 0:
        return _disk_pair(pts[a, 0], pts[a, 1], pts[b, 0], pts[b, 1])
    if dom == 1:
        return _annulus_pair(pts[a, 0], pts[a, 1], pts[b, 0], pts[b, 1], p1, tol)
    return _ball_pair_rows(pts, a, b, dim)


cdef double _diag_value(double[:, ::1] pts, Py_ssize_t a, int dim, int dom,
                        double p1, double tol) except? -1e308:
    if dom == 0:
        return _disk_diag(pts[a, 0], pts[a, 1])
    if dom == 1:
        return _annulus_diag(pts[a, 0], pts[a, 1], p1, tol)
    return _ball_diag_row(pts, a, dim)


def eta_matrix(double[:, ::1] pts, int dom, double p1, double tol,
               double[:, ::1] out):
    cdef Py_ssize_t n = pts.shape[0]
    cdef int dim = <int> pts.shape[1]
    cdef Py_ssize_t k, l
    cdef double v
    for k in range(n):
        out[k, k] = _diag_value(pts, k, dim, dom, p1, tol)
        for l in range(k + 1, n):
            if _row_less(pts, l, k, dim):
                v = _pair_value(pts, l, k, dim, dom, p1, tol)
            else:
                v = _pair_value(pts, k, l, dim, dom, p1, tol)
            out[k, l] = v
            out[l, k] = v


cdef double _potential_at(double[::1] px, double[:, ::1] pts, double[::1] delta,
                          int dim, int dom, double p1, double tol) except? -1e308:
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t k
    cdef int i
    cdef double total = 0.0
    cdef double v, c, xx, yy, dd, diff, P, rstar
    for k in range(n):
        if dom == 0:
            v = _disk_pair(px[0], px[1], pts[k, 0], pts[k, 1])
        elif dom == 1:
            v = _annulus_pair(px[0], px[1], pts[k, 0], pts[k, 1], p1, tol)
        else:
            c = 0.0
            xx = 0.0
            yy = 0.0
            dd = 0.0
            for i in range(dim):
                c += px[i] * pts[k, i]
                xx += px[i] * px[i]
                yy += pts[k, i] * pts[k, i]
                diff = px[i] - pts[k, i]
                dd += diff * diff
            P = xx * yy
            rstar = sqrt(P - 2.0 * c + 1.0)
            v = (_fundamental(sqrt(dd), dim) + _fundamental(rstar, dim)
                 + _flux_corr(c, P, dim)) / _sphere_area(dim)
        total += delta[k] * v
    return total


cdef double _grad_u_sq(double[::1] x, double[::1] scratch, double[:, ::1] pts,
                       double[::1] delta, int dim, int dom, double p1,
                       double tol, double h) except? -1e308:
    cdef int i, j
    cdef double up, um, g
    cdef double total = 0.0
    for j in range(dim):
        scratch[j] = x[j]
    for i in range(dim):
        scratch[i] = x[i] + h
        up = _potential_at(scratch, pts, delta, dim, dom, p1, tol)
        scratch[i] = x[i] - h
        um = _potential_at(scratch, pts, delta, dim, dom, p1, tol)
        scratch[i] = x[i]
        g = (up - um) / (2.0 * h)
        total += g * g
    return total


def grad_u_sq(double[::1] x, double[:, ::1] pts, double[::1] delta, int dom,
              double p1, double tol, double h):
    cdef int dim = <int> pts.shape[1]
    scratch_arr = np.empty(dim)
    cdef double[::1] scratch = scratch_arr
    return _grad_u_sq(x, scratch, pts, delta, dim, dom, p1, tol, h)


def dirichlet_block(double[:, ::1] samples, double[:, ::1] pts,
                    double[::1] delta, int dom, double p1, double tol,
                    double h, double[::1] out):
    cdef Py_ssize_t n = samples.shape[0]
    cdef int dim = <int> pts.shape[1]
    cdef Py_ssize_t i
    scratch_arr = np.empty(dim)
    cdef double[::1] scratch = scratch_arr
    for i in range(n):
        out[i] = _grad_u_sq(samples[i], scratch, pts, delta, dim, dom, p1, tol, h)
