"""f-divergence catalogue and practicable divergence constructions.

Three constructions are provided, each mimicking a reference f-divergence
phi on a ratio window [0, H] while keeping the robust counterpart of the
downstream two-stage problem linear (or conic) and solver-neutral:

* ``ls_icv_fit`` -- an infimal convolution of weighted V-shapes
  ``psi_d(r) = pi_d |D r - 1|``; the least-squares optimal weights collapse
  the construction to ``k |z - 1|`` with ``k`` independent of the arity D.
* ``ls_pl_fit`` -- a piecewise-linear divergence fitted segment by segment
  (anchored least squares moving outward from z = 1), L pieces on [0, 1]
  and U pieces on [1, H].
* ``moreau_fit`` -- the Moreau envelope of the piecewise-linear fit with a
  sampled least-squares choice of the regularization weight m, giving a
  differentiable divergence whose conjugate adds a quadratic term.

All integrals go through :mod:`dro_forge.quadrature`.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .quadrature import integrate

__all__ = [
    "DomainError",
    "FDivergence",
    "PiecewiseLinearDivergence",
    "ICVDivergence",
    "RegularizedDivergence",
    "CATALOGUE",
    "get_divergence",
    "eval_phi",
    "eval_conjugate",
    "phi_weighted_integral",
    "ls_icv_fit",
    "ls_pl_fit",
    "moreau_fit",
    "eval_moreau",
    "conjugate_of_pl",
    "ssd",
    "save_fit",
    "load_fit",
]

INF = float("inf")


class DomainError(ValueError):
    """Argument outside a function's stated domain."""


# ---------------------------------------------------------------------------
# catalogue
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FDivergence:
    """A reference f-divergence: phi on z >= 0 together with its conjugate."""

    name: str
    phi: Callable[[np.ndarray], np.ndarray]
    conjugate: Callable[[float], float]
    conjugate_domain_upper: float
    # value of phi* exactly at the domain edge (+inf when the domain is open)
    conjugate_at_upper: float = INF
    phi_at_zero: float = INF
    recession: float = INF        # lim_{z->inf} phi(z)/z
    singular_left: bool = False   # integrands need open-endpoint quadrature

    def phi_vec(self, z: np.ndarray) -> np.ndarray:
        """phi evaluated elementwise with the z = 0 limit convention."""
        z = np.asarray(z, dtype=float)
        out = np.empty_like(z)
        pos = z > 0
        out[pos] = self.phi(z[pos])
        out[~pos] = self.phi_at_zero
        return out

    def evaluate(self, z: np.ndarray) -> np.ndarray:  # uniform fit interface
        return self.phi_vec(z)


def _kl_phi(z):
    z = np.asarray(z, dtype=float)
    return z * np.log(z) - z + 1.0


def _kl_conj(s: float) -> float:
    return math.exp(s) - 1.0


def _burg_phi(z):
    z = np.asarray(z, dtype=float)
    return -np.log(z) + z - 1.0


def _burg_conj(s: float) -> float:
    return -math.log(1.0 - s) if s < 1.0 else INF


def _chi2_phi(z):
    z = np.asarray(z, dtype=float)
    return (z - 1.0) ** 2 / z


def _chi2_conj(s: float) -> float:
    return 2.0 - 2.0 * math.sqrt(1.0 - s) if s <= 1.0 else INF


def _hellinger_phi(z):
    z = np.asarray(z, dtype=float)
    return (np.sqrt(z) - 1.0) ** 2


def _hellinger_conj(s: float) -> float:
    return s / (1.0 - s) if s < 1.0 else INF


def _variation_phi(z):
    z = np.asarray(z, dtype=float)
    return np.abs(z - 1.0)


def _variation_conj(s: float) -> float:
    if s > 1.0:
        return INF
    return max(s, -1.0)


CATALOGUE: dict[str, FDivergence] = {
    "kullback_leibler": FDivergence(
        "kullback_leibler", _kl_phi, _kl_conj, INF,
        phi_at_zero=1.0, recession=INF),
    "burg_entropy": FDivergence(
        "burg_entropy", _burg_phi, _burg_conj, 1.0,
        phi_at_zero=INF, recession=1.0, singular_left=True),
    "chi_squared": FDivergence(
        "chi_squared", _chi2_phi, _chi2_conj, 1.0, conjugate_at_upper=2.0,
        phi_at_zero=INF, recession=1.0, singular_left=True),
    "hellinger": FDivergence(
        "hellinger", _hellinger_phi, _hellinger_conj, 1.0,
        phi_at_zero=1.0, recession=1.0),
    "variation": FDivergence(
        "variation", _variation_phi, _variation_conj, 1.0,
        conjugate_at_upper=1.0, phi_at_zero=1.0, recession=1.0),
}

_ALIASES = {
    "kl": "kullback_leibler",
    "burg": "burg_entropy",
    "chi2": "chi_squared",
    "chi-squared": "chi_squared",
    "hellinger": "hellinger",
    "variation": "variation",
    "tv": "variation",
}


def get_divergence(name: str) -> FDivergence:
    key = _ALIASES.get(name.lower(), name.lower())
    try:
        return CATALOGUE[key]
    except KeyError:
        raise DomainError(f"unknown divergence {name!r}; "
                          f"known: {sorted(CATALOGUE)}") from None


def eval_phi(div: FDivergence, z: float) -> float:
    if z < 0:
        raise DomainError(f"phi is defined on z >= 0, got {z}")
    if z == 0:
        return div.phi_at_zero
    return float(div.phi(np.asarray(z, dtype=float)))


def eval_conjugate(div: FDivergence, s: float) -> float:
    if s > div.conjugate_domain_upper:
        return INF
    if s == div.conjugate_domain_upper:
        return div.conjugate_at_upper if math.isfinite(s) else INF
    return float(div.conjugate(s))


# ---------------------------------------------------------------------------
# fitted divergence types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PiecewiseLinearDivergence:
    """max-of-affine divergence g(z) = max_p (a_p z - b_p) on [0, H]."""

    pieces: tuple[tuple[float, float], ...]   # (a_p, b_p), slopes increasing
    breakpoints: tuple[float, ...]            # l_p between pieces p, p+1
    H: float
    L: int
    U: int
    reference: str = "custom"

    def __post_init__(self):
        a = [p[0] for p in self.pieces]
        if any(a2 <= a1 for a1, a2 in zip(a, a[1:])):
            raise DomainError("piece slopes must be strictly increasing")

    @property
    def slopes(self) -> np.ndarray:
        return np.array([p[0] for p in self.pieces])

    @property
    def intercepts(self) -> np.ndarray:
        return np.array([p[1] for p in self.pieces])

    @property
    def phi_at_zero(self) -> float:
        return float(max(-b for _, b in self.pieces))

    @property
    def recession(self) -> float:
        return self.pieces[-1][0]

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        out = np.full(z.shape, -INF)
        for a, b in self.pieces:
            np.maximum(out, a * z - b, out=out)
        return out

    def conjugate(self, s: float) -> float:
        return conjugate_of_pl(self, s)

    @property
    def conjugate_domain_upper(self) -> float:
        return self.pieces[-1][0]


@dataclass(frozen=True)
class ICVDivergence:
    """Infimal convolution of D weighted V-shapes pi_d |D r - 1|.

    With the weights free to split the ratio optimally the value collapses
    to ``D * min(pi) * |z - 1|``; ``k`` is that collapsed coefficient.
    """

    weights: tuple[float, ...]
    D: int
    H: float = INF
    reference: str = "custom"

    def __post_init__(self):
        if len(self.weights) != self.D:
            raise DomainError("need one weight per convolution component")
        if any(w <= 0 for w in self.weights):
            raise DomainError("ICV weights must be positive")

    @property
    def k(self) -> float:
        return self.D * min(self.weights)

    @property
    def phi_at_zero(self) -> float:
        return self.k

    @property
    def recession(self) -> float:
        return self.k

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        return self.k * np.abs(z - 1.0)

    def evaluate_by_minimization(self, z: float) -> float:
        """Solve the defining minimization numerically (test oracle route).

        min sum_d pi_d |D r_d - 1|  s.t.  sum_d r_d = z, via LP.
        """
        from scipy.optimize import linprog
        D = self.D
        # variables: r_d (free, split) and t_d >= |D r_d - 1|
        # order: rp (D), rn (D), t (D)
        c = np.concatenate([np.zeros(2 * D), np.asarray(self.weights)])
        a_ub = []
        b_ub = []
        for d in range(D):
            row = np.zeros(3 * D)
            row[d], row[D + d], row[2 * D + d] = D, -D, -1.0   # D r - 1 <= t
            a_ub.append(row.copy())
            b_ub.append(1.0)
            row[d], row[D + d] = -D, D                         # 1 - D r <= t
            a_ub.append(row)
            b_ub.append(-1.0)
        a_eq = np.zeros((1, 3 * D))
        a_eq[0, :D], a_eq[0, D:2 * D] = 1.0, -1.0
        res = linprog(c, A_ub=np.array(a_ub), b_ub=np.array(b_ub),
                      A_eq=a_eq, b_eq=[float(z)], method="highs")
        if not res.success:
            raise RuntimeError(f"ICV minimization failed: {res.message}")
        return float(res.fun)


@dataclass(frozen=True)
class RegularizedDivergence:
    """Moreau envelope of a piecewise-linear divergence with weight m."""

    base: PiecewiseLinearDivergence
    m: float
    epsilon: float
    sample_count: int
    extended_breakpoints: tuple[float, ...]   # l'_0 = 0 ... l'_P = H
    seed: int = 0
    m_from_fallback: bool = False

    def __post_init__(self):
        if self.m <= 0:
            raise DomainError("regularization weight m must be positive")

    @property
    def H(self) -> float:
        return self.base.H

    @property
    def reference(self) -> str:
        return self.base.reference

    def _branches(self):
        """Interval edges and branch descriptors for the closed form.

        Branch 2k   (k = 0..P-1): affine piece k+1 shifted by a/m.
        Branch 2k+1 (k = 0..P-2): quadratic blend around breakpoint l_{k+1}.
        """
        a = self.base.slopes
        b = self.base.intercepts
        l = np.asarray(self.base.breakpoints)
        m = self.m
        edges = np.empty(2 * len(l))
        edges[0::2] = l + a[:-1] / m   # end of affine piece p
        edges[1::2] = l + a[1:] / m    # end of blend at l_p
        return a, b, l, edges

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        scalar = z.ndim == 0
        z = np.atleast_1d(z)
        a, b, l, edges = self._branches()
        idx = np.searchsorted(edges, z)
        out = np.empty_like(z)
        aff = idx % 2 == 0
        p = idx[aff] // 2
        out[aff] = a[p] * z[aff] - b[p] - a[p] ** 2 / (2.0 * self.m)
        bl = ~aff
        k = (idx[bl] - 1) // 2
        lp = l[k]
        # blend: prox sits exactly at the breakpoint
        out[bl] = (a[k] * lp - b[k]) + 0.5 * self.m * (z[bl] - lp) ** 2
        return out[0] if scalar else out

    def evaluate_direct(self, z: float, grid: int = 20001) -> float:
        """min_s base(s) + m/2 (z-s)^2 by dense search + local refine."""
        lo = min(0.0, z - 5.0)
        hi = max(self.base.H, z + 5.0)
        s = np.linspace(lo, hi, grid)
        vals = self.base.evaluate(s) + 0.5 * self.m * (z - s) ** 2
        i = int(np.argmin(vals))
        from scipy.optimize import minimize_scalar
        res = minimize_scalar(
            lambda t: float(self.base.evaluate(np.asarray(t))
                            + 0.5 * self.m * (z - t) ** 2),
            bounds=(s[max(i - 1, 0)], s[min(i + 1, grid - 1)]),
            method="bounded", options={"xatol": 1e-12})
        return float(res.fun)

    def conjugate(self, s: float) -> float:
        if s > self.base.pieces[-1][0]:
            return INF
        return conjugate_of_pl(self.base, s) + s * s / (2.0 * self.m)

    @property
    def conjugate_domain_upper(self) -> float:
        return self.base.pieces[-1][0]

    @property
    def phi_at_zero(self) -> float:
        return float(self.evaluate(np.asarray(0.0)))

    @property
    def recession(self) -> float:
        return self.base.pieces[-1][0]


def eval_moreau(reg: RegularizedDivergence, z: float) -> float:
    if not 0.0 <= z <= reg.base.H:
        raise DomainError(f"z={z} outside [0, {reg.base.H}]")
    return float(reg.evaluate(np.asarray(z, dtype=float)))


# ---------------------------------------------------------------------------
# integrals
# ---------------------------------------------------------------------------

def _phi_scalar(div: FDivergence) -> Callable[[float], float]:
    def f(z: float) -> float:
        if z <= 0.0:
            return div.phi_at_zero
        return float(div.phi(np.asarray(z, dtype=float)))
    return f


def phi_weighted_integral(div: FDivergence, H: float) -> float:
    """Phi = integral_0^H phi(z) |z - 1| dz."""
    if H <= 1.0:
        raise DomainError("H must exceed 1")
    phi = _phi_scalar(div)
    return integrate(lambda z: phi(z) * abs(z - 1.0), 0.0, H,
                     abs_tol=1e-10, singular_left=div.singular_left)


def ssd(fit, div: FDivergence, H: float) -> float:
    """Integral of the squared gap between a fitted divergence and phi."""
    phi = _phi_scalar(div)
    ev = fit.evaluate

    def gap2(z: float) -> float:
        g = float(ev(np.asarray(z, dtype=float))) - phi(z)
        return g * g

    return integrate(gap2, 0.0, H, abs_tol=1e-10,
                     singular_left=div.singular_left)


# ---------------------------------------------------------------------------
# LS-ICV fit
# ---------------------------------------------------------------------------

def ls_icv_fit(div: FDivergence, H: float, D: int) -> ICVDivergence:
    """Least-squares V-shape weights: designated weight pi* = 3 Phi / (D ((H-1)^3 + 1)).

    Non-designated weights are fixed at 2 pi* (any larger-than-pi* value is
    optimal); the collapsed coefficient k = D pi* is what downstream
    consumers use, so the choice is observationally irrelevant.
    """
    if H <= 1.0:
        raise DomainError("H must exceed 1")
    if D < 1:
        raise DomainError("D must be a positive integer")
    Phi = phi_weighted_integral(div, H)
    denom = (H - 1.0) ** 3 + 1.0
    pi_star = 3.0 * Phi / (D * denom)
    weights = (pi_star,) + (2.0 * pi_star,) * (D - 1)
    return ICVDivergence(weights=weights, D=D, H=H, reference=div.name)


# ---------------------------------------------------------------------------
# LS-PL fit
# ---------------------------------------------------------------------------

def _canonicalize(raw: Sequence[tuple[float, float]], H: float
                  ) -> tuple[tuple[tuple[float, float], ...], tuple[float, ...]]:
    """Sort by slope, merge duplicate slopes, keep the upper envelope on [0, H]."""
    ps = sorted(raw, key=lambda ab: (ab[0], ab[1]))
    dedup: list[tuple[float, float]] = []
    for a, b in ps:
        if dedup and abs(a - dedup[-1][0]) < 1e-12:
            if b < dedup[-1][1]:     # same slope, higher line wins
                dedup[-1] = (a, b)
        else:
            dedup.append((a, b))

    hull: list[tuple[float, float]] = []
    brk: list[float] = []
    for a, b in dedup:
        while hull:
            a0, b0 = hull[-1]
            x = (b - b0) / (a - a0)  # intersection with current top piece
            if brk and x <= brk[-1] + 1e-13:
                hull.pop()
                brk.pop()
            else:
                brk.append(x)
                break
        hull.append((a, b))

    # trim pieces never active inside [0, H]
    while brk and brk[0] <= 1e-12:
        hull.pop(0)
        brk.pop(0)
    while brk and brk[-1] >= H - 1e-12:
        hull.pop()
        brk.pop()
    return tuple(hull), tuple(brk)


def ls_pl_fit(div: FDivergence, H: float, L: int, U: int
              ) -> PiecewiseLinearDivergence:
    """Anchored segmentwise least-squares piecewise-linear fit of phi.

    Left block: L segments of [0, 1], fitted right-to-left, each segment's
    line anchored to the previous value at its right endpoint.  Right
    block: U segments of [1, H] fitted left-to-right, anchored at the left
    endpoint.  Both blocks anchor at (1, 0).
    """
    if H <= 1.0:
        raise DomainError("H must exceed 1")
    if L < 1 or U < 1:
        raise DomainError("L and U must be positive integers")
    phi = _phi_scalar(div)
    raw: list[tuple[float, float]] = []

    # left block: segment l covers [(l-1)/L, l/L]; slope -A_l
    value_right = 0.0        # fitted value at the segment's right endpoint
    w = 1.0 / L
    for l in range(L, 0, -1):
        zr = l / L
        za = zr - w
        psi = integrate(lambda z: phi(z) * (zr - z), za, zr, abs_tol=1e-10,
                        singular_left=div.singular_left and l == 1)
        A = 3.0 * L ** 3 * psi - 1.5 * L * value_right
        # f(z) = A (zr - z) + value_right  ->  a = -A, b = -(A zr + value_right)
        raw.append((-A, -(A * zr + value_right)))
        value_right = A * w + value_right

    # right block: segment u covers [1+(u-1)D, 1+uD]; slope +B_u
    delta = (H - 1.0) / U
    value_left = 0.0
    for u in range(1, U + 1):
        zl = 1.0 + (u - 1) * delta
        psi = integrate(lambda z: phi(z) * (z - zl), zl, zl + delta,
                        abs_tol=1e-10)
        B = 3.0 / delta ** 3 * psi - 1.5 / delta * value_left
        # f(z) = B (z - zl) + value_left  ->  a = B, b = B zl - value_left
        raw.append((B, B * zl - value_left))
        value_left = B * delta + value_left

    pieces, brk = _canonicalize(raw, H)
    if len(pieces) < 2:
        raise DomainError("degenerate piecewise-linear fit (fewer than 2 pieces)")
    return PiecewiseLinearDivergence(pieces=pieces, breakpoints=brk, H=H,
                                     L=L, U=U, reference=div.name)


def conjugate_of_pl(pl: PiecewiseLinearDivergence, s: float) -> float:
    """Conjugate of a max-of-affine divergence.

    Piecewise linear with knots at the slopes: constant b_1 below a_1
    (the supremizer drops to z = 0), +inf above a_P, and the chord
    interpolation max_p { l_p (s - a_p) + b_p } in between.
    """
    if len(pl.pieces) < 2:
        raise DomainError("conjugate needs at least 2 pieces")
    a = pl.slopes
    b = pl.intercepts
    if s > a[-1]:
        return INF
    if s <= a[0]:
        return float(b[0])
    l = np.asarray(pl.breakpoints)
    return float(np.max(l * (s - a[:-1]) + b[:-1]))


# ---------------------------------------------------------------------------
# Moreau-Yosida regularized fit
# ---------------------------------------------------------------------------

def _sample_segments(ext: np.ndarray, eps: float, Z: int,
                     rng: np.random.Generator) -> list[np.ndarray]:
    pts = []
    for lo, hi in zip(ext[:-1], ext[1:]):
        a, b = lo + eps, hi - eps
        if b <= a:       # margin swallowed the segment; sample its midpoint
            pts.append(np.full(Z, 0.5 * (lo + hi)))
        else:
            pts.append(rng.uniform(a, b, size=Z))
    return pts


def _sampled_m_star(base: PiecewiseLinearDivergence, phi, ext: np.ndarray,
                    samples: list[np.ndarray], Z: int
                    ) -> tuple[float, bool]:
    """Closed-form minimizer of the sampled SSD over m (t = 1/2m is quadratic).

    Falls back to a bounded scalar search when the critical point is not a
    minimizer with m > 0 (denominator <= 0).
    """
    a = base.slopes
    b = base.intercepts
    lens = np.diff(ext)
    num = 0.0     # Z * sum_p len_p a_p^4
    den = 0.0     # 2 * sum_p len_p a_p^2 sum_i e_ip
    for p, z in enumerate(samples):
        e = a[p] * z - b[p] - phi(z)
        num += lens[p] * a[p] ** 4 * Z
        den += 2.0 * lens[p] * a[p] ** 2 * float(np.sum(e))
    if den > 0:
        return num / den, False

    from scipy.optimize import minimize_scalar

    def sampled_ssd(m: float) -> float:
        tot = 0.0
        for p, z in enumerate(samples):
            r = a[p] * z - b[p] - a[p] ** 2 / (2.0 * m) - phi(z)
            tot += lens[p] / Z * float(np.sum(r * r))
        return tot

    res = minimize_scalar(sampled_ssd, bounds=(1e-8, 1e12), method="bounded")
    return float(res.x), True


def moreau_fit(base: PiecewiseLinearDivergence, div: FDivergence,
               Z: int = 200, eps0: float | None = None, seed: int = 0
               ) -> RegularizedDivergence:
    """Fit the Moreau regularization weight m by segment-stratified sampling.

    epsilon starts at ``eps0`` (default 5% of the shortest segment) and is
    halved while the exclusion condition eps >= max_p a_p / m* still holds
    for the recomputed m*; samples are redrawn at every trial epsilon from
    the seeded generator.  The condition uses the signed slope maximum (the
    steepest ascending piece): requiring max|a_p| instead is infeasible for
    coarse fits whose optimal m is small.
    """
    ext = np.concatenate([[0.0], np.asarray(base.breakpoints), [base.H]])
    if np.any(np.diff(ext) <= 0):
        raise DomainError("extended breakpoints must be increasing")
    min_len = float(np.min(np.diff(ext)))
    if eps0 is None:
        eps0 = 0.05 * min_len
    cap = 0.45 * min_len
    eps0 = min(eps0, cap)
    phi = div.phi_vec
    a_max = float(np.max(base.slopes))
    rng = np.random.default_rng(seed)

    eps = eps0
    samples = _sample_segments(ext, eps, Z, rng)
    m, fb = _sampled_m_star(base, phi, ext, samples, Z)
    # heavily regularized fits (small m*) can make the default margin
    # infeasible; grow it until the exclusion condition holds
    while eps * m < a_max:
        if eps >= cap:
            raise DomainError(
                f"cannot satisfy eps*m >= max_p a_p within segments "
                f"(m*={m:g}, max a={a_max:g}, min segment {min_len:g})")
        eps = min(eps * 2.0, cap)
        samples = _sample_segments(ext, eps, Z, rng)
        m, fb = _sampled_m_star(base, phi, ext, samples, Z)
    best = (eps, m, fb)
    while True:
        trial = best[0] / 2.0
        samples = _sample_segments(ext, trial, Z, rng)
        m, fb = _sampled_m_star(base, phi, ext, samples, Z)
        if trial * m < a_max:
            break
        best = (trial, m, fb)
    eps, m, fb = best
    return RegularizedDivergence(base=base, m=m, epsilon=eps, sample_count=Z,
                                 extended_breakpoints=tuple(ext), seed=seed,
                                 m_from_fallback=fb)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def fit_to_dict(fit) -> dict:
    if isinstance(fit, RegularizedDivergence):
        d = fit_to_dict(fit.base)
        d["type"] = "regularized"
        d["m"] = fit.m
        d["eps"] = fit.epsilon
        d["seed"] = fit.seed
        d["provenance"]["Z"] = fit.sample_count
        d["m_from_fallback"] = fit.m_from_fallback
        return d
    if isinstance(fit, PiecewiseLinearDivergence):
        return {
            "type": "ls_pl",
            "H": fit.H,
            "pieces": [{"a": a, "b": b} for a, b in fit.pieces],
            "provenance": {"reference_divergence": fit.reference,
                           "L": fit.L, "U": fit.U},
        }
    if isinstance(fit, ICVDivergence):
        k = fit.k
        return {
            "type": "ls_icv",
            "H": fit.H,
            "pieces": [{"a": -k, "b": -k}, {"a": k, "b": k}],
            "k": k,
            "weights": list(fit.weights),
            "D": fit.D,
            "provenance": {"reference_divergence": fit.reference},
        }
    raise TypeError(f"cannot serialize fit of type {type(fit).__name__}")


def fit_from_dict(d: dict):
    t = d.get("type")
    prov = d.get("provenance", {})
    ref = prov.get("reference_divergence", "custom")
    if t == "ls_icv":
        return ICVDivergence(weights=tuple(d["weights"]), D=int(d["D"]),
                             H=float(d["H"]), reference=ref)
    pieces = tuple((float(p["a"]), float(p["b"])) for p in d["pieces"])
    brk = tuple(
        (p2["b"] - p1["b"]) / (p2["a"] - p1["a"])
        for p1, p2 in zip(d["pieces"][:-1], d["pieces"][1:]))
    pl = PiecewiseLinearDivergence(
        pieces=pieces, breakpoints=brk, H=float(d["H"]),
        L=int(prov.get("L", 0)), U=int(prov.get("U", 0)), reference=ref)
    if t == "ls_pl":
        return pl
    if t == "regularized":
        ext = (0.0,) + brk + (float(d["H"]),)
        return RegularizedDivergence(
            base=pl, m=float(d["m"]), epsilon=float(d["eps"]),
            sample_count=int(prov.get("Z", 0)), extended_breakpoints=ext,
            seed=int(d.get("seed", 0)),
            m_from_fallback=bool(d.get("m_from_fallback", False)))
    raise ValueError(f"unknown fit type {t!r}")


def save_fit(fit, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(fit_to_dict(fit), fh, indent=2)
        fh.write("\n")


def load_fit(path: str):
    with open(path) as fh:
        return fit_from_dict(json.load(fh))
