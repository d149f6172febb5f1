"""Smooth interpolation between two functions meeting to first order.

Given b and c with b(R) = c(R) and b'(R) = c'(R), the staged construction
produces a C-infinity function a_eps equal to b below R - delta(eps) and to
c above R, with second derivative controlled by those of b and c at R:

    1. blend the second derivatives:  eta' = b'' (1 - phi_eps) + c'' phi_eps
    2. integrate once from R - eps:   eta  = b'(R - eps) + int eta'
    3. repair the slope with a ramp of width iota = |c'(R) - eta(R)|^(1/2)
    4. integrate again from R - iota: kappa = b(R - iota) + int kappa'
    5. repair the value with a ramp of width omega = |c(R) - kappa(R)|^(1/3)

Collar width: delta(eps) = max(eps, iota(eps), omega(eps)), which tends to 0
with eps.  Applied to the exponential tube extension against (sinh, cosh)
this yields the smoothed negatively-curved metric family whose Ricci lower
bound constant tends to coth(R) coth(2R).

Numerics: every stage integral is memoized on a monotone knot grid; panel
values and point evaluations use one fixed Gauss-Legendre rule in extended
precision, so evaluation is seamless across knots (a requirement for the
value-only finite-difference oracle) and costs O(log n) after construction.
Each cached integral is verified against adaptive quadrature at build time.
The bump function is evaluated in log space with a hard cutoff to 0 below
exp(-700) to avoid denormals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad

from .errors import JunctionError, ParameterError, QuadratureError, WidthError
from .warped import WarpingPair, coth

__all__ = [
    "bump_alpha",
    "ramp_beta",
    "step_phi",
    "JunctionInput",
    "SmoothedJunction",
    "smooth_junction",
    "second_derivative_envelope",
    "SmoothedWarpingFamily",
    "smoothed_metric",
    "k_eps",
]

_GL_NODES_F8, _GL_WEIGHTS_F8 = np.polynomial.legendre.leggauss(24)
_GL_NODES_LD = _GL_NODES_F8.astype(np.longdouble)
_GL_WEIGHTS_LD = _GL_WEIGHTS_F8.astype(np.longdouble)

_EXP_CUTOFF = -700.0

# Finite-difference step hint for table-backed pairs; resolves the collar
# features well below their width while staying above the evaluation noise.
_FD_STEP_HINT = 1e-6


def bump_alpha(r):
    """C-infinity bump exp(-1/r^2) exp(-1/(1-r)^2) on (0, 1), zero outside."""
    r = np.asarray(r)
    dtype = r.dtype if r.dtype.kind == "f" else np.float64
    out = np.zeros(r.shape, dtype=dtype)
    m = (r > 0) & (r < 1)
    rm = r[m]
    expo = -1.0 / rm**2 - 1.0 / (1.0 - rm) ** 2
    out[m] = np.where(expo > _EXP_CUTOFF, np.exp(expo), 0.0)
    return out if out.shape else out[()]


def _bump_alpha_prime(r):
    """Derivative of the bump: alpha(r) (2/r^3 - 2/(1-r)^3) inside (0, 1)."""
    r = np.asarray(r)
    dtype = r.dtype if r.dtype.kind == "f" else np.float64
    out = np.zeros(r.shape, dtype=dtype)
    m = (r > 0) & (r < 1)
    rm = r[m]
    out[m] = bump_alpha(rm) * (2.0 / rm**3 - 2.0 / (1.0 - rm) ** 3)
    return out if out.shape else out[()]


class _Cumulative:
    """Antiderivative of a smooth integrand, memoized on a uniform knot grid.

    The knot values are partial sums of fixed Gauss-Legendre panels computed
    in extended precision, and point evaluation adds the same rule on the
    remainder [knot, x], so crossing a knot never introduces a jump beyond
    extended-precision rounding.  The build is checked against adaptive
    quadrature.
    """

    def __init__(self, fun: Callable, lo: float, hi: float, n_knots: int = 257,
                 check_tol: float = 5e-12, label: str = "integral"):
        self.fun = fun
        self._knots_ld = np.linspace(np.longdouble(lo), np.longdouble(hi), n_knots)
        self._knots_f8 = self._knots_ld.astype(np.float64)
        a, b = self._knots_ld[:-1], self._knots_ld[1:]
        half = 0.5 * (b - a)
        mid = 0.5 * (b + a)
        panels = half * (fun(mid[..., None] + half[..., None] * _GL_NODES_LD) @ _GL_WEIGHTS_LD)
        self._cum = np.concatenate([np.zeros(1, np.longdouble), np.cumsum(panels)])
        self.total = float(self._cum[-1])
        ref, ref_err = quad(lambda t: float(fun(t)), lo, hi, epsabs=1e-13, epsrel=1e-12, limit=400)
        drift = abs(self.total - ref)
        if drift > max(check_tol, 10.0 * ref_err):
            raise QuadratureError(
                f"{label}: panel quadrature disagrees with adaptive reference by "
                f"{drift:.3e} on [{lo}, {hi}] (reference error {ref_err:.1e})"
            )

    def __call__(self, x):
        x = np.asarray(x)
        ld = x.dtype == np.longdouble
        knots = self._knots_ld if ld else self._knots_f8
        nodes = _GL_NODES_LD if ld else _GL_NODES_F8
        weights = _GL_WEIGHTS_LD if ld else _GL_WEIGHTS_F8
        xc = np.clip(x, knots[0], knots[-1])
        idx = np.clip(np.searchsorted(knots, xc, side="right") - 1, 0, len(knots) - 2)
        a = knots[idx]
        half = 0.5 * (xc - a)
        mid = 0.5 * (xc + a)
        vals = self.fun(mid[..., None] + half[..., None] * nodes)
        out = self._cum[idx] + half * (vals @ weights)
        return out if ld else out.astype(np.float64, copy=False)


class _RampTables:
    """Module-wide caches: cumulative of alpha (ramp) and of t*alpha."""

    def __init__(self) -> None:
        self.cum_alpha = _Cumulative(bump_alpha, 0.0, 1.0, n_knots=1025, label="ramp normalization")
        self.cum_talpha = _Cumulative(
            lambda t: np.asarray(t) * bump_alpha(t), 0.0, 1.0, n_knots=1025,
            label="ramp antiderivative",
        )
        self.norm = np.longdouble(self.cum_alpha._cum[-1])


_tables: Optional[_RampTables] = None


def _ramp_tables() -> _RampTables:
    global _tables
    if _tables is None:
        _tables = _RampTables()
    return _tables


def ramp_beta(x):
    """Normalized ramp beta(x) = int_0^x alpha / int_0^1 alpha.

    Monotone from 0 to 1, identically 0 for x <= 0 and 1 for x >= 1.
    """
    t = _ramp_tables()
    x = np.asarray(x)
    one = np.asarray(1.0, dtype=x.dtype) if x.dtype.kind == "f" else 1.0
    xc = np.clip(x, 0.0, 1.0)
    out = np.clip(t.cum_alpha(xc) / np.asarray(t.norm, dtype=np.asarray(xc).dtype), 0.0, one)
    return out if np.asarray(out).shape else np.asarray(out)[()]


def _ramp_beta_prime(x):
    return bump_alpha(x) / np.asarray(_ramp_tables().norm, dtype=np.asarray(x).dtype)


def _ramp_beta_second(x):
    return _bump_alpha_prime(x) / np.asarray(_ramp_tables().norm, dtype=np.asarray(x).dtype)


def _ramp_beta_anti(x):
    """B(x) = int_0^x beta, linear with slope 1 above x = 1."""
    t = _ramp_tables()
    x = np.asarray(x)
    xc = np.clip(x, 0.0, 1.0)
    norm = np.asarray(t.norm, dtype=np.asarray(xc).dtype)
    base = (xc * t.cum_alpha(xc) - t.cum_talpha(xc)) / norm
    return base + np.where(x > 1.0, x - 1.0, np.zeros_like(base))


def step_phi(eps: float, R: float, r):
    """Ramp step beta((r - R)/eps + 1): 0 for r <= R - eps, 1 for r >= R.

    eps = 0 gives the identically-zero step.
    """
    if eps < 0.0:
        raise ParameterError(f"step width must be nonnegative, got {eps}")
    r = np.asarray(r)
    if eps == 0.0:
        out = np.zeros(r.shape, dtype=r.dtype if r.dtype.kind == "f" else np.float64)
        return out if out.shape else out[()]
    return ramp_beta(_step_arg(eps, R, r))


def _step_arg(eps: float, R: float, r):
    dt = r.dtype if r.dtype.kind == "f" else np.float64
    return (r - np.asarray(R, dtype=dt)) / np.asarray(eps, dtype=dt) + np.asarray(1.0, dtype=dt)


def _step_phi_prime(eps: float, R: float, r):
    r = np.asarray(r)
    return _ramp_beta_prime(_step_arg(eps, R, r)) / np.asarray(eps, dtype=r.dtype)


def _step_phi_second(eps: float, R: float, r):
    r = np.asarray(r)
    return _ramp_beta_second(_step_arg(eps, R, r)) / np.asarray(eps, dtype=r.dtype) ** 2


@dataclass(frozen=True)
class JunctionInput:
    """Two functions b, c with derivatives, meeting to first order at R."""

    b: Callable
    bp: Callable
    bpp: Callable
    c: Callable
    cp: Callable
    cpp: Callable
    R: float
    domain: tuple[float, float] = (-math.inf, math.inf)
    name: str = "junction"

    def validate(self) -> None:
        v = abs(float(self.b(self.R)) - float(self.c(self.R)))
        d = abs(float(self.bp(self.R)) - float(self.cp(self.R)))
        if v > 1e-12 or d > 1e-12:
            raise JunctionError(
                f"{self.name}: b and c must match to first order at R={self.R}: "
                f"|b-c|={v:.3e}, |b'-c'|={d:.3e}"
            )


class SmoothedJunction:
    """The staged interpolant for one junction at one smoothing width.

    Exposes the stage functions (eta_prime, eta, kappa_prime, kappa) and the
    final interpolant a with its first two derivatives.  All evaluators
    accept scalars or arrays, preserve extended-precision inputs, and equal
    b / c bit-exactly outside the collar [R - delta, R].
    """

    def __init__(self, inp: JunctionInput, eps: float):
        if not (eps > 0.0) or not np.isfinite(eps):
            raise ParameterError(f"smoothing width must be positive and finite, got {eps}")
        inp.validate()
        self.input = inp
        self.eps = float(eps)
        self.R = float(inp.R)
        R = self.R
        lo_dom = inp.domain[0]
        if R - eps < lo_dom:
            raise WidthError(
                f"{inp.name}: blending window [R-eps, R] leaves the domain (R-eps={R - eps})"
            )

        dpp = self._second_blend_delta
        self._E = _Cumulative(dpp, R - eps, R, label=f"{inp.name}: slope stage")
        self._F = _Cumulative(
            lambda t: (np.asarray(t) - np.asarray(R, dtype=np.asarray(t).dtype)) * dpp(t),
            R - eps, R, label=f"{inp.name}: value stage",
        )
        self.eta_R = float(inp.bp(R)) + self._E.total
        self.slope_gap = float(inp.cp(R)) - self.eta_R
        self.iota = abs(self.slope_gap) ** 0.5
        self.kappa_R = float(inp.b(R)) + float(self._int_d(np.asarray(R)))
        self.value_gap = float(inp.c(R)) - self.kappa_R
        self.omega = abs(self.value_gap) ** (1.0 / 3.0)
        self.delta = max(self.eps, self.iota, self.omega)
        if R - self.delta < lo_dom:
            raise WidthError(
                f"{inp.name}: collar width delta={self.delta:.6g} leaves the domain "
                f"(R-delta={R - self.delta:.6g} < {lo_dom:.6g})"
            )

    # -- stage machinery ----------------------------------------------------

    def _second_blend_delta(self, t):
        """(c'' - b'') phi_eps, the integrand of the slope-stage cache."""
        t = np.asarray(t)
        return (self.input.cpp(t) - self.input.bpp(t)) * step_phi(self.eps, self.R, t)

    def _slope_correction(self, t):
        """E(t) = eta(t) - b'(t), continued analytically above R."""
        t = np.asarray(t)
        Rd = np.asarray(self.R, dtype=t.dtype)
        below = self._E(t)
        above = (
            np.asarray(self._E.total, dtype=t.dtype)
            + (self.input.cp(t) - self.input.bp(t))
            - (self.input.cp(Rd) - self.input.bp(Rd))
        )
        return np.where(t <= Rd, below, above)

    def _slope_correction_anti_kernel(self, t):
        """F(t) = int (s - R) (c'' - b'') phi_eps ds, continued above R."""
        t = np.asarray(t)
        Rd = np.asarray(self.R, dtype=t.dtype)
        below = self._F(t)
        above = (
            np.asarray(self._F.total, dtype=t.dtype)
            + (t - Rd) * (self.input.cp(t) - self.input.bp(t))
            - ((self.input.c(t) - self.input.b(t)) - (self.input.c(Rd) - self.input.b(Rd)))
        )
        return np.where(t <= Rd, below, above)

    def _int_d(self, r):
        """int_{R - iota}^{r} (kappa' - b'), via integration by parts of E."""
        r = np.asarray(r)
        Rd = np.asarray(self.R, dtype=r.dtype)
        a = np.asarray(self.R - self.iota, dtype=r.dtype)
        out = (
            (r - Rd) * self._slope_correction(r)
            - (a - Rd) * self._slope_correction(a)
            - (self._slope_correction_anti_kernel(r) - self._slope_correction_anti_kernel(a))
        )
        if self.iota > 0.0:
            coeff = np.asarray(self.slope_gap * self.iota, dtype=r.dtype)
            out = out + coeff * _ramp_beta_anti(_step_arg(self.iota, self.R, r))
        return out

    # -- stage functions ------------------------------------------------------

    def eta_prime(self, r):
        """Blended second derivative b''(1 - phi_eps) + c'' phi_eps."""
        r = np.asarray(r)
        return self.input.bpp(r) + (self.input.cpp(r) - self.input.bpp(r)) * step_phi(self.eps, self.R, r)

    def eta(self, r):
        """First integral of eta_prime, anchored to b'(R - eps)."""
        r = np.asarray(r)
        return self.input.bp(r) + self._slope_correction(r)

    def kappa_prime(self, r):
        """eta plus the slope-repair ramp."""
        out = self.eta(np.asarray(r))
        if self.iota > 0.0:
            r = np.asarray(r)
            out = out + np.asarray(self.slope_gap, dtype=r.dtype) * step_phi(self.iota, self.R, r)
        return out

    def kappa(self, r):
        """Second integral, anchored to b(R - iota)."""
        r = np.asarray(r)
        return self.input.b(r) + self._int_d(r)

    def a(self, r):
        """The interpolant: kappa plus the value-repair ramp."""
        out = self.kappa(np.asarray(r))
        if self.omega > 0.0:
            r = np.asarray(r)
            out = out + np.asarray(self.value_gap, dtype=r.dtype) * step_phi(self.omega, self.R, r)
        return out

    def a_prime(self, r):
        out = self.kappa_prime(np.asarray(r))
        if self.omega > 0.0:
            r = np.asarray(r)
            out = out + np.asarray(self.value_gap, dtype=r.dtype) * _step_phi_prime(self.omega, self.R, r)
        return out

    def a_second(self, r):
        r = np.asarray(r)
        out = self.eta_prime(r)
        if self.iota > 0.0:
            out = out + np.asarray(self.slope_gap, dtype=r.dtype) * _step_phi_prime(self.iota, self.R, r)
        if self.omega > 0.0:
            out = out + np.asarray(self.value_gap, dtype=r.dtype) * _step_phi_second(self.omega, self.R, r)
        return out

    @property
    def cache(self) -> dict:
        """Summary of the memoized quadrature tables."""
        return {
            "slope_knots": len(self._E._knots_f8),
            "value_knots": len(self._F._knots_f8),
            "slope_total": self._E.total,
            "value_total": self._F.total,
        }

    def __repr__(self) -> str:
        return (
            f"SmoothedJunction({self.input.name}, eps={self.eps:g}, "
            f"iota={self.iota:.6g}, omega={self.omega:.6g}, delta={self.delta:.6g})"
        )


def smooth_junction(inp: JunctionInput, eps: float) -> SmoothedJunction:
    """Build the staged interpolant for ``inp`` at smoothing width ``eps``."""
    return SmoothedJunction(inp, eps)


def second_derivative_envelope(s: SmoothedJunction, grid_n: int = 4096) -> tuple[float, float]:
    """Grid-sampled (inf, sup) of a'' over the collar [R - delta, R]."""
    if grid_n < 16:
        raise ParameterError(f"grid_n must be at least 16, got {grid_n}")
    rs = np.linspace(s.R - s.delta, s.R, grid_n)
    vals = np.asarray(s.a_second(rs), dtype=float)
    return float(vals.min()), float(vals.max())


def _kerckhoff_formulas(R: float):
    """The six exponential-extension callables, valid on the whole line."""
    cth = coth(R)
    tnh = math.tanh(R)
    sh = math.sinh(R)
    ch = math.cosh(R)
    return (
        lambda r: sh * np.exp(cth * (np.asarray(r) - R)),
        lambda r: (sh * cth) * np.exp(cth * (np.asarray(r) - R)),
        lambda r: (sh * cth * cth) * np.exp(cth * (np.asarray(r) - R)),
        lambda r: ch * np.exp(tnh * (np.asarray(r) - R)),
        lambda r: (ch * tnh) * np.exp(tnh * (np.asarray(r) - R)),
        lambda r: (ch * tnh * tnh) * np.exp(tnh * (np.asarray(r) - R)),
    )


@dataclass(frozen=True)
class SmoothedWarpingFamily:
    """One member of the smoothed metric family at tube radius R.

    ``pair`` packages (f_eps, g_eps) as a warping pair on
    (-inf, R + margin]; ``k_eps`` is the sampled Ricci lower bound constant,
    which tends to coth(R) coth(2R) as eps -> 0.
    """

    R: float
    eps: float
    margin: float
    junction_f: SmoothedJunction
    junction_g: SmoothedJunction
    pair: WarpingPair
    delta: float
    k_eps: float


def _golden_max(fun: Callable[[float], float], lo: float, hi: float, iters: int = 60) -> float:
    """Golden-section maximum of a scalar function on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = fun(x1), fun(x2)
    best = max(fun(a), fun(b), f1, f2)
    for _ in range(iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = fun(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = fun(x1)
        best = max(best, f1, f2)
    return best


def _ricci_sup_half(pair: WarpingPair, lo: float, hi: float, grid_n: int) -> float:
    """Grid supremum of max(-Ric)/2 with golden-section refinement at the peak.

    The refinement guards against the uniform grid aliasing the narrow
    collar features where the supremum lives.
    """
    rs = np.linspace(lo, hi, grid_n)
    fv = np.asarray(pair.f(rs), float)
    gv = np.asarray(pair.g(rs), float)
    fp = np.asarray(pair.fp(rs), float)
    gp = np.asarray(pair.gp(rs), float)
    fpp = np.asarray(pair.fpp(rs), float)
    gpp = np.asarray(pair.gpp(rs), float)
    krt = fpp / fv
    krl = gpp / gv
    ktl = fp * gp / (fv * gv)
    neg_ric = 0.5 * np.maximum(np.maximum(krt + krl, krt + ktl), krl + ktl)
    i = int(np.argmax(neg_ric))
    coarse = float(neg_ric[i])

    def point(r: float) -> float:
        fr, gr = float(pair.f(r)), float(pair.g(r))
        a = float(pair.fpp(r)) / fr
        b = float(pair.gpp(r)) / gr
        c = float(pair.fp(r)) * float(pair.gp(r)) / (fr * gr)
        return 0.5 * max(a + b, a + c, b + c)

    w_lo = rs[max(i - 1, 0)]
    w_hi = rs[min(i + 1, grid_n - 1)]
    return max(coarse, _golden_max(point, float(w_lo), float(w_hi)))


def smoothed_metric(
    R: float,
    eps: float,
    margin: float = 1.0,
    k_grid_n: int = 4096,
) -> SmoothedWarpingFamily:
    """Smooth the exponential extension into (sinh, cosh) at radius R.

    Applies the staged construction to both warping functions and packages
    the result as a warping pair on (-inf, R + margin], together with its
    sampled Ricci lower bound constant.
    """
    if not (R > 0.0) or not np.isfinite(R):
        raise ParameterError(f"tube radius must be positive and finite, got {R}")
    bf, bfp, bfpp, bg, bgp, bgpp = _kerckhoff_formulas(R)
    jf = smooth_junction(
        JunctionInput(b=bf, bp=bfp, bpp=bfpp, c=np.sinh, cp=np.cosh, cpp=np.sinh,
                      R=R, name=f"f-junction(R={R:g})"),
        eps,
    )
    jg = smooth_junction(
        JunctionInput(b=bg, bp=bgp, bpp=bgpp, c=np.cosh, cp=np.sinh, cpp=np.cosh,
                      R=R, name=f"g-junction(R={R:g})"),
        eps,
    )
    delta = max(jf.delta, jg.delta)
    if delta >= R:
        raise WidthError(
            f"collar width delta={delta:.6g} reaches the tube core (R={R:g}); use a smaller eps"
        )
    pair = WarpingPair(
        f=jf.a, fp=jf.a_prime, fpp=jf.a_second,
        g=jg.a, gp=jg.a_prime, gpp=jg.a_second,
        domain=(-math.inf, R + margin),
        fd_step=_FD_STEP_HINT,
        name=f"smoothed(R={R:g}, eps={eps:g})",
    )
    k = _ricci_sup_half(pair, R - delta - 1.0, R + margin, k_grid_n)
    return SmoothedWarpingFamily(
        R=R, eps=eps, margin=margin,
        junction_f=jf, junction_g=jg,
        pair=pair, delta=delta, k_eps=k,
    )


def k_eps(R: float, eps: float, grid_n: int = 4096, margin: float = 1.0) -> float:
    """Ricci lower bound constant of the smoothed pair at (R, eps).

    Sampled over [R - delta - 1, R + margin] with golden-section refinement;
    bounded below by the exact constant coth(R) coth(2R) attained on the
    extension region.
    """
    return smoothed_metric(R, eps, margin=margin, k_grid_n=grid_n).k_eps
