"""Direct pairwise lattice sums of the resonant and off-resonant shifts.

The resonant shift per site is

    pref_R * Re[ gpair(e0, en, v_n, 1)^2 ],   pref_R = (9/8) rho mu / ((1-mu)(1+mu))

and the off-resonant shift per site is the imaginary-frequency quadrature

    pref_OR * int_0^inf dxi  xi^4 gpair(e0, en, v_n, i xi)^2
                             / ((xi^2+1)(xi^2+mu^2)),
    pref_OR = 9 rho mu / (8 pi),

both in units of gamma0. For the two principal orientations (probe z with
array z or array x) the projections collapse to radial brackets and the sum
runs over one octant with dihedral orbit weights (8 interior / 4 axis /
4 diagonal / origin); rows are accumulated in fixed order n_x = 0..M with
compensated row sums, so results are bit-identical for any worker count.
General orientations lack the reflection parity needed for folding and fall
back to the full grid through greens.pair_coupling.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import kernels
from .greens import pair_coupling, scalar_coefficients
from .model import ValidatedBundle, validate


class QuadratureFailure(RuntimeError):
    """Adaptive quadrature could not reach the requested tolerance."""


class SiteBudgetExceeded(RuntimeError):
    """(2M+1)^2 exceeds the configured direct-summation budget."""


@dataclass(frozen=True)
class ShiftResult:
    """One direct-sum evaluation; only the requested component is filled."""

    resonant: float | None
    off_resonant: float | None
    terms_summed: int


def resonant_prefactor(bundle: ValidatedBundle) -> float:
    mu = bundle.mu
    return 1.125 * bundle.rho * mu / ((1.0 - mu) * (1.0 + mu))


def offresonant_prefactor(bundle: ValidatedBundle) -> float:
    return 9.0 * bundle.rho * bundle.mu / (8.0 * math.pi)


# ---------------------------------------------------------------------------
# single-site terms

def _site_displacement(nx: int, ny: int, bundle: ValidatedBundle):
    a = bundle.a_tilde
    return np.array([nx * a, ny * a, -bundle.z_tilde])


def resonant_pair_term(nx: int, ny: int, bundle: ValidatedBundle) -> float:
    """Contribution of site (nx, ny) to the resonant shift, in gamma0 units."""
    bundle = validate(bundle)
    label = bundle.orientation_label()
    pref = resonant_prefactor(bundle)
    z2 = bundle.z_tilde ** 2
    a2 = bundle.a_tilde ** 2
    d2 = (nx * nx + ny * ny) * a2
    if label == "zz":
        r2 = d2 + z2
        r = math.sqrt(r2)
        c = z2 / r2
        bre = (r2 - 1.0) + (3.0 - r2) * c
        bim = r * (1.0 - 3.0 * c)
        h = math.cos(2.0 * r) * (bre * bre - bim * bim) - math.sin(2.0 * r) * (2.0 * bre * bim)
        return pref * h / (r2 * r2 * r2)
    if label == "zx":
        x2 = nx * nx * a2
        if x2 == 0.0:
            return 0.0
        r2 = d2 + z2
        r = math.sqrt(r2)
        q = 3.0 - r2
        h = math.cos(2.0 * r) * (q * q - 9.0 * r2) + math.sin(2.0 * r) * (6.0 * r * q)
        return pref * h * z2 * x2 / r2 ** 5
    pc = pair_coupling(bundle.params.test_dipole, bundle.params.array_dipole,
                       _site_displacement(nx, ny, bundle), 1.0)
    return pref * (pc * pc).real


def _quad_checked(f, lo, hi, epsrel, epsabs=1e-300):
    out = quad(f, lo, hi, epsabs=epsabs, epsrel=epsrel, full_output=True, limit=200)
    value, abserr = out[0], out[1]
    if len(out) > 3 and abserr > 10.0 * (epsabs + epsrel * abs(value)):
        raise QuadratureFailure(out[3])
    return value


def _semi_infinite_quad(f, epsrel):
    """int_0^inf f, split [0,1] + [1,inf) with xi = 1/t on the tail."""
    head = _quad_checked(f, 0.0, 1.0, epsrel)
    tail = _quad_checked(lambda t: f(1.0 / t) / (t * t), 0.0, 1.0, epsrel)
    return head + tail


def _or_radial_zz(r: float, z: float, mu: float, epsrel: float) -> float:
    """int dxi W(xi) e^{-2 xi r} Gzz(xi r, z^2/r^2)^2 / r^6."""
    c = z * z / (r * r)
    mu2 = mu * mu
    r6 = r ** 6

    def f(xi):
        u = xi * r
        g = (u * u + u + 1.0) - (u * u + 3.0 * u + 3.0) * c
        return math.exp(-2.0 * u) * g * g / ((xi * xi + 1.0) * (xi * xi + mu2) * r6)

    return _semi_infinite_quad(f, epsrel)


def _or_radial_zx(r: float, mu: float, epsrel: float) -> float:
    """int dxi W(xi) e^{-2 xi r} (u^2+3u+3)^2 / r^10  (x^2 z^2 factored out)."""
    mu2 = mu * mu
    r10 = r ** 10

    def f(xi):
        u = xi * r
        b = u * u + 3.0 * u + 3.0
        return math.exp(-2.0 * u) * b * b / ((xi * xi + 1.0) * (xi * xi + mu2) * r10)

    return _semi_infinite_quad(f, epsrel)


def offresonant_pair_term(nx: int, ny: int, bundle: ValidatedBundle, *,
                          epsrel: float = 1e-10) -> float:
    """Contribution of site (nx, ny) to the off-resonant shift (gamma0 units)."""
    bundle = validate(bundle)
    label = bundle.orientation_label()
    pref = offresonant_prefactor(bundle)
    z = bundle.z_tilde
    a = bundle.a_tilde
    r = math.sqrt((nx * nx + ny * ny) * a * a + z * z)
    if label == "zz":
        return pref * _or_radial_zz(r, z, bundle.mu, epsrel)
    if label == "zx":
        x2 = (nx * a) ** 2
        if x2 == 0.0:
            return 0.0
        return pref * z * z * x2 * _or_radial_zx(r, bundle.mu, epsrel)
    e0 = bundle.params.test_dipole
    en = bundle.params.array_dipole
    v = _site_displacement(nx, ny, bundle)
    mu2 = bundle.mu ** 2

    def f(xi):
        pc = pair_coupling(e0, en, v, complex(0.0, xi))
        return xi ** 4 * (pc.real ** 2) / ((xi * xi + 1.0) * (xi * xi + mu2))

    return pref * _semi_infinite_quad(f, epsrel)


# ---------------------------------------------------------------------------
# whole-lattice sums

def _map_rows(fn, rows, threads):
    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, rows, chunksize=64))
    return [fn(nx) for nx in rows]


def _resonant_octant(bundle: ValidatedBundle, threads) -> float:
    a2 = bundle.a_tilde ** 2
    z2 = bundle.z_tilde ** 2
    row = kernels.res_row_zz if bundle.orientation_label() == "zz" else kernels.res_row_zx
    vals = _map_rows(lambda nx: row(a2, z2, nx), range(bundle.half_extent + 1), threads)
    return resonant_prefactor(bundle) * math.fsum(vals)


def _resonant_custom(bundle: ValidatedBundle, threads) -> float:
    M = bundle.half_extent
    a = bundle.a_tilde
    z = bundle.z_tilde
    e0 = np.asarray(bundle.params.test_dipole)
    en = np.asarray(bundle.params.array_dipole)
    e0n = float(e0 @ en)
    ny = np.arange(-M, M + 1, dtype=np.float64)
    y = ny * a

    def row(nx):
        x = nx * a
        r = np.sqrt(x * x + y * y + z * z)
        t1, t2 = scalar_coefficients(r, 1.0)
        p0 = (e0[0] * x + e0[1] * y - e0[2] * z) / r
        pn = (en[0] * x + en[1] * y - en[2] * z) / r
        pc = t1 * e0n + t2 * p0 * pn
        return float(np.sum((pc * pc).real))

    vals = _map_rows(row, range(-M, M + 1), threads)
    return resonant_prefactor(bundle) * math.fsum(vals)


def _offres_octant(bundle: ValidatedBundle, threads, epsrel) -> float:
    M = bundle.half_extent
    a = bundle.a_tilde
    z = bundle.z_tilde
    mu = bundle.mu
    zx = bundle.orientation_label() == "zx"
    cache: dict[int, float] = {}

    def radial(s: int) -> float:
        v = cache.get(s)
        if v is None:
            r = math.sqrt(s * a * a + z * z)
            v = _or_radial_zx(r, mu, epsrel) if zx else _or_radial_zz(r, z, mu, epsrel)
            cache[s] = v
        return v

    z2 = z * z
    a2 = a * a

    def row(nx):
        terms = []
        for j in range(nx + 1):
            s = nx * nx + j * j
            if zx:
                if nx == 0:
                    return 0.0
                if j == 0:
                    w = 2.0 * nx * nx * a2
                elif j == nx:
                    w = 4.0 * nx * nx * a2
                else:
                    w = 4.0 * s * a2
                terms.append(w * z2 * radial(s))
            else:
                w = 1.0 if nx == 0 else (4.0 if (j == 0 or j == nx) else 8.0)
                terms.append(w * radial(s))
        return math.fsum(terms)

    vals = _map_rows(row, range(M + 1), threads)
    return offresonant_prefactor(bundle) * math.fsum(vals)


def _offres_custom(bundle: ValidatedBundle, epsrel) -> float:
    M = bundle.half_extent
    vals = []
    for nx in range(-M, M + 1):
        for ny in range(-M, M + 1):
            vals.append(offresonant_pair_term(nx, ny, bundle, epsrel=epsrel))
    return math.fsum(vals)


def sum_lattice(bundle: ValidatedBundle, kind: str, *, threads: int | None = None,
                site_budget: int | None = None, epsrel: float = 1e-10) -> ShiftResult:
    """Sum the pair terms over all (2M+1)^2 sites.

    kind is 'resonant' or 'off_resonant'. Results are deterministic for any
    thread count: row values are independent and the cross-row reduction is
    exact (math.fsum) in fixed row order.
    """
    bundle = validate(bundle)
    count = bundle.lattice.atom_count
    if site_budget is not None and count > site_budget:
        raise SiteBudgetExceeded(f"{count} sites exceed budget {site_budget}")
    label = bundle.orientation_label()
    if kind == "resonant":
        value = (_resonant_octant(bundle, threads) if label in ("zz", "zx")
                 else _resonant_custom(bundle, threads))
        return ShiftResult(resonant=value, off_resonant=None, terms_summed=count)
    if kind == "off_resonant":
        value = (_offres_octant(bundle, threads, epsrel) if label in ("zz", "zx")
                 else _offres_custom(bundle, epsrel))
        return ShiftResult(resonant=None, off_resonant=value, terms_summed=count)
    raise ValueError(f"kind must be 'resonant' or 'off_resonant', got {kind!r}")
