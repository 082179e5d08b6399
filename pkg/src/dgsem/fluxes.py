"""Two-point numerical fluxes for the Euler equations on axis-aligned faces.

Seven interface flux kinds are provided:

    llf, hll, hllc, roe      classic approximate Riemann solvers
    eckep                    entropy-conservative / kinetic-energy-preserving
                             two-point flux (logarithmic-mean based)
    eckep-llf, eckep-roe     eckep plus entropy-scaled matrix dissipation,
                             scalar (max wave speed) or wave-by-wave

All functions take left/right conservative states of shape (..., 5) and an
axis index in 0..2, broadcast over leading axes, and return the numerical
flux with the same shape.  `eckep` doubles as the split-form volume flux.

The eckep flux satisfies the entropy-conservation condition
[[w]] . F = [[rho v_d]] exactly; the matrix dissipation term is
-1/2 R |Lambda| T R^T [[w]] with Barth's entropy scaling T, so that the
combined fluxes are entropy stable by construction and the wave-by-wave
variant is transparent to stationary contacts.
"""

import numpy as np

from .euler import EN, MX, RHO, GasParams, physical_flux, primitives, entropy_variables

LLF = "llf"
HLL = "hll"
HLLC = "hllc"
ROE = "roe"
ECKEP = "eckep"
ECKEP_LLF = "eckep-llf"
ECKEP_ROE = "eckep-roe"

FLUX_KINDS = (LLF, HLL, HLLC, ROE, ECKEP, ECKEP_LLF, ECKEP_ROE)

_MOM = slice(MX, EN)  # momentum components 1..3

# Kinds that resolve the contact wave (zero mass flux across a stationary
# contact); the rest smear it, which is what drives the even-degree order
# loss at low Mach numbers.
CONTACT_PRESERVING = (HLLC, ROE, ECKEP_ROE)
DISSIPATIVE_KINDS = (LLF, HLL, HLLC, ROE, ECKEP_LLF, ECKEP_ROE)

_LOGMEAN_SERIES_CUT = 1.0e-4


def log_mean(a, b):
    """Logarithmic mean (a - b)/(ln a - ln b) for positive a, b.

    Uses the series of 2 atanh(f)/f, f = (a-b)/(a+b), when the arguments
    are close, which keeps full precision where the direct quotient would
    cancel.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(a <= 0.0) or np.any(b <= 0.0):
        raise ValueError("log_mean requires positive arguments")
    f = (a - b) / (a + b)
    u = f * f
    series = (a + b) / (2.0 * (1.0 + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u / 7.0))))
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = (a - b) / np.log(np.where(u < _LOGMEAN_SERIES_CUT, 2.0, a / b))
    return np.where(u < _LOGMEAN_SERIES_CUT, series, direct)


def _split(u, gas):
    rho, v, p = primitives(u, gas)
    return rho, v, p, np.sqrt(gas.gamma * p / rho)


def llf_flux(uL, uR, axis, gas: GasParams):
    """Local Lax-Friedrichs: central flux minus lambda_max/2 times the jump."""
    rL, vL, pL, cL = _split(uL, gas)
    rR, vR, pR, cR = _split(uR, gas)
    lam = np.maximum(np.abs(vL[..., axis]) + cL, np.abs(vR[..., axis]) + cR)
    fL = physical_flux(uL, axis, gas)
    fR = physical_flux(uR, axis, gas)
    return 0.5 * (fL + fR) - 0.5 * lam[..., None] * (uR - uL)


def _hll_speeds(uL, uR, axis, gas):
    rL, vL, pL, cL = _split(uL, gas)
    rR, vR, pR, cR = _split(uR, gas)
    sL = np.minimum(vL[..., axis] - cL, vR[..., axis] - cR)
    sR = np.maximum(vL[..., axis] + cL, vR[..., axis] + cR)
    return sL, sR


def hll_flux(uL, uR, axis, gas: GasParams):
    """Two-wave HLL flux with direct wave-speed bounds."""
    sL, sR = _hll_speeds(uL, uR, axis, gas)
    fL = physical_flux(uL, axis, gas)
    fR = physical_flux(uR, axis, gas)
    sLc = np.minimum(sL, 0.0)[..., None]
    sRc = np.maximum(sR, 0.0)[..., None]
    return (sRc * fL - sLc * fR + sLc * sRc * (uR - uL)) / (sRc - sLc)


def hllc_flux(uL, uR, axis, gas: GasParams):
    """Three-wave HLLC flux; restores the contact wave that HLL averages out."""
    rL, vL, pL, cL = _split(uL, gas)
    rR, vR, pR, cR = _split(uR, gas)
    vnL = vL[..., axis]
    vnR = vR[..., axis]
    sL = np.minimum(vnL - cL, vnR - cR)
    sR = np.maximum(vnL + cL, vnR + cR)
    s_star = (pR - pL + rL * vnL * (sL - vnL) - rR * vnR * (sR - vnR)) / (
        rL * (sL - vnL) - rR * (sR - vnR)
    )

    def star_state(u, rho, vn, p, s):
        factor = rho * (s - vn) / (s - s_star)
        ustar = u * (factor / rho)[..., None]
        ustar[..., MX + axis] = factor * s_star
        ustar[..., EN] = factor * (
            u[..., EN] / rho + (s_star - vn) * (s_star + p / (rho * (s - vn)))
        )
        return ustar

    fL = physical_flux(uL, axis, gas)
    fR = physical_flux(uR, axis, gas)
    fstarL = fL + sL[..., None] * (star_state(uL, rL, vnL, pL, sL) - uL)
    fstarR = fR + sR[..., None] * (star_state(uR, rR, vnR, pR, sR) - uR)

    out = np.where((s_star >= 0.0)[..., None], fstarL, fstarR)
    out = np.where((sL >= 0.0)[..., None], fL, out)
    out = np.where((sR <= 0.0)[..., None], fR, out)
    return out


def roe_flux(uL, uR, axis, gas: GasParams):
    """Roe's flux-difference splitting (no entropy fix).

    Dissipation is assembled from the wave strengths of the Roe-averaged
    eigensystem; the two lambda = v_n waves carry density/shear jumps
    without mass flux, which preserves stationary contacts exactly.
    """
    gm1 = gas.gamma - 1.0
    rL, vL, pL, cL = _split(uL, gas)
    rR, vR, pR, cR = _split(uR, gas)
    hL = (uL[..., EN] + pL) / rL
    hR = (uR[..., EN] + pR) / rR

    sqL = np.sqrt(rL)
    sqR = np.sqrt(rR)
    wsum = sqL + sqR
    v = (sqL[..., None] * vL + sqR[..., None] * vR) / wsum[..., None]
    h = (sqL * hL + sqR * hR) / wsum
    v2 = np.sum(v * v, axis=-1)
    a = np.sqrt(gm1 * (h - 0.5 * v2))
    vn = v[..., axis]

    t1 = (axis + 1) % 3
    t2 = (axis + 2) % 3
    du = uR - uL
    drho = du[..., RHO]
    dE = du[..., EN]

    # shear-wave strengths, then project the rest onto the acoustic /
    # entropy waves (Toro's 3D decomposition)
    a3 = du[..., MX + t1] - v[..., t1] * drho
    a4 = du[..., MX + t2] - v[..., t2] * drho
    dE_red = dE - a3 * v[..., t1] - a4 * v[..., t2]
    dmn = du[..., MX + axis]
    a2 = gm1 / (a * a) * (drho * (h - vn * vn) + vn * dmn - dE_red)
    a1 = (drho * (vn + a) - dmn - a * a2) / (2.0 * a)
    a5 = drho - (a1 + a2)

    l1 = np.abs(vn - a)
    l2 = np.abs(vn)
    l5 = np.abs(vn + a)

    carried = l1 * a1 + l2 * a2 + l5 * a5
    diss = np.empty_like(du)
    diss[..., RHO] = carried
    diss[..., _MOM] = carried[..., None] * v
    diss[..., MX + axis] += a * (l5 * a5 - l1 * a1)
    diss[..., MX + t1] += l2 * a3
    diss[..., MX + t2] += l2 * a4
    diss[..., EN] = (
        l1 * a1 * (h - vn * a)
        + l2 * a2 * 0.5 * v2
        + l2 * (a3 * v[..., t1] + a4 * v[..., t2])
        + l5 * a5 * (h + vn * a)
    )

    fL = physical_flux(uL, axis, gas)
    fR = physical_flux(uR, axis, gas)
    return 0.5 * (fL + fR) - 0.5 * diss


def eckep_flux(uL, uR, axis, gas: GasParams):
    """Entropy-conservative, kinetic-energy-preserving two-point flux.

    Logarithmic means of density and beta = rho/(2p) enter the mass and
    energy channels; arithmetic means carry velocity and pressure.  The
    flux satisfies [[w]] . F = [[rho v_d]] identically.
    """
    gm1 = gas.gamma - 1.0
    rL, vL, pL = primitives(uL, gas)
    rR, vR, pR = primitives(uR, gas)
    betaL = rL / (2.0 * pL)
    betaR = rR / (2.0 * pR)

    rho_ln = log_mean(rL, rR)
    beta_ln = log_mean(betaL, betaR)
    vbar = 0.5 * (vL + vR)
    p_tilde = 0.5 * (rL + rR) / (betaL + betaR)
    v2bar = 0.5 * np.sum(vL * vL + vR * vR, axis=-1)

    f = np.empty(np.broadcast(np.asarray(uL, dtype=float), np.asarray(uR, dtype=float)).shape)
    f_rho = rho_ln * vbar[..., axis]
    f[..., RHO] = f_rho
    f[..., _MOM] = vbar * f_rho[..., None]
    f[..., MX + axis] += p_tilde
    f[..., EN] = f_rho * (0.5 / (gm1 * beta_ln) - 0.5 * v2bar) + np.sum(
        vbar * f[..., _MOM], axis=-1
    )
    return f


def _dissipation_averages(uL, uR, axis, gas: GasParams):
    """Averaged state entering the entropy-scaled dissipation operator."""
    rL, vL, pL = primitives(uL, gas)
    rR, vR, pR = primitives(uR, gas)
    betaL = rL / (2.0 * pL)
    betaR = rR / (2.0 * pR)
    rho_ln = log_mean(rL, rR)
    beta_ln = log_mean(betaL, betaR)
    vbar = 0.5 * (vL + vR)
    p_bar = 0.5 * (rL + rR) / (betaL + betaR)
    a_bar = np.sqrt(gas.gamma * p_bar / rho_ln)
    h_bar = gas.gamma / (2.0 * beta_ln * (gas.gamma - 1.0)) + 0.5 * np.sum(
        vbar * vbar, axis=-1
    )
    return rho_ln, vbar, p_bar, a_bar, h_bar


def matrix_dissipation(uL, uR, axis, gas: GasParams, mode: str):
    """Entropy-scaled dissipation -1/2 R Lambda_diss T R^T [[w]].

    R holds the right eigenvectors of the directional flux Jacobian at
    the averaged state and T is the diagonal scaling with R T R^T = du/dw,
    so the quadratic form in [[w]] is positive semidefinite for any
    nonnegative Lambda_diss.  mode 'roe' uses |Lambda| wave by wave; mode
    'llf' uses the scalar max wave speed on every wave.
    """
    if mode not in ("roe", "llf"):
        raise ValueError(f"dissipation mode must be 'roe' or 'llf', got {mode!r}")
    gamma = gas.gamma
    rho, v, p, a, h = _dissipation_averages(uL, uR, axis, gas)
    vn = v[..., axis]
    t1 = (axis + 1) % 3
    t2 = (axis + 2) % 3

    jw = entropy_variables(uR, gas) - entropy_variables(uL, gas)

    # R^T [[w]] per wave (columns of R written out)
    v2h = 0.5 * np.sum(v * v, axis=-1)
    proj_minus = (
        jw[..., RHO]
        + np.sum(v * jw[..., _MOM], axis=-1)
        - a * jw[..., MX + axis]
        + (h - a * vn) * jw[..., EN]
    )
    proj_ent = jw[..., RHO] + np.sum(v * jw[..., _MOM], axis=-1) + v2h * jw[..., EN]
    proj_t1 = jw[..., MX + t1] + v[..., t1] * jw[..., EN]
    proj_t2 = jw[..., MX + t2] + v[..., t2] * jw[..., EN]
    proj_plus = (
        jw[..., RHO]
        + np.sum(v * jw[..., _MOM], axis=-1)
        + a * jw[..., MX + axis]
        + (h + a * vn) * jw[..., EN]
    )

    if mode == "roe":
        lam_minus = np.abs(vn - a)
        lam_mid = np.abs(vn)
        lam_plus = np.abs(vn + a)
    else:
        lam = np.abs(vn) + a
        lam_minus = lam_mid = lam_plus = lam

    t_acoustic = rho / (2.0 * gamma)
    t_entropy = rho * (gamma - 1.0) / gamma
    t_shear = p

    c_minus = lam_minus * t_acoustic * proj_minus
    c_ent = lam_mid * t_entropy * proj_ent
    c_t1 = lam_mid * t_shear * proj_t1
    c_t2 = lam_mid * t_shear * proj_t2
    c_plus = lam_plus * t_acoustic * proj_plus

    d = np.empty_like(jw)
    d[..., RHO] = c_minus + c_ent + c_plus
    d[..., _MOM] = (c_minus + c_ent + c_plus)[..., None] * v
    d[..., MX + axis] += a * (c_plus - c_minus)
    d[..., MX + t1] += c_t1
    d[..., MX + t2] += c_t2
    d[..., EN] = (
        c_minus * (h - a * vn)
        + c_ent * v2h
        + c_t1 * v[..., t1]
        + c_t2 * v[..., t2]
        + c_plus * (h + a * vn)
    )
    return -0.5 * d


def surface_flux(kind: str, uL, uR, axis: int, gas: GasParams):
    """Dispatch an interface flux by kind."""
    if kind == LLF:
        return llf_flux(uL, uR, axis, gas)
    if kind == HLL:
        return hll_flux(uL, uR, axis, gas)
    if kind == HLLC:
        return hllc_flux(uL, uR, axis, gas)
    if kind == ROE:
        return roe_flux(uL, uR, axis, gas)
    if kind == ECKEP:
        return eckep_flux(uL, uR, axis, gas)
    if kind == ECKEP_LLF:
        return eckep_flux(uL, uR, axis, gas) + matrix_dissipation(uL, uR, axis, gas, "llf")
    if kind == ECKEP_ROE:
        return eckep_flux(uL, uR, axis, gas) + matrix_dissipation(uL, uR, axis, gas, "roe")
    raise ValueError(f"unknown flux kind {kind!r}; expected one of {FLUX_KINDS}")


def central_flux(uL, uR, axis, gas: GasParams):
    """Arithmetic mean of the physical fluxes (split-form algebra checks)."""
    return 0.5 * (physical_flux(uL, axis, gas) + physical_flux(uR, axis, gas))
