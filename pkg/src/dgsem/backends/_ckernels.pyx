# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled DGSEM kernels: fused volume + interface RHS evaluation.

Semantics mirror numpy_backend exactly (same discretization, same flux
formulas); only the evaluation strategy differs.  Solution and rate arrive
as (n_elements, n^3, 5) flat views of the (e, i, j, k, c) layout.  The
entry point returns -1 on success or the flat index of the first invalid
node, which the wrapper turns into an exception with node context.
"""

import numpy as np

from libc.math cimport fabs, log, sqrt

DEF NMAX = 16  # max nodes per direction (degree 15), checked by the wrapper

# flux kind ids (keep in sync with compiled_backend.FLUX_IDS)
DEF F_LLF = 0
DEF F_HLL = 1
DEF F_HLLC = 2
DEF F_ROE = 3
DEF F_ECKEP = 4
DEF F_ECKEP_LLF = 5
DEF F_ECKEP_ROE = 6

DEF V_ECKEP = 0
DEF V_CENTRAL = 1


cdef inline double _log_mean(double a, double b) noexcept nogil:
    cdef double f = (a - b) / (a + b)
    cdef double u = f * f
    if u < 1e-4:
        return (a + b) / (2.0 * (1.0 + u * (1.0 / 3.0 + u * (0.2 + u / 7.0))))
    return (a - b) / log(a / b)


cdef inline int _prims(const double* u, double gamma, double* rho,
                       double* v, double* p) noexcept nogil:
    """Extract (rho, v, p); returns nonzero on an unphysical state."""
    rho[0] = u[0]
    if not (rho[0] > 0.0):
        return 1
    cdef double inv = 1.0 / rho[0]
    v[0] = u[1] * inv
    v[1] = u[2] * inv
    v[2] = u[3] * inv
    p[0] = (gamma - 1.0) * (u[4] - 0.5 * rho[0] * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]))
    if not (p[0] > 0.0):
        return 1
    return 0


cdef inline void _phys_flux_prim(double rho, const double* v, double p, double E,
                                 int d, double* f) noexcept nogil:
    cdef double vn = v[d]
    f[0] = rho * vn
    f[1] = rho * v[0] * vn
    f[2] = rho * v[1] * vn
    f[3] = rho * v[2] * vn
    f[1 + d] += p
    f[4] = (E + p) * vn


cdef inline void _entropy_vars_prim(double rho, const double* v, double p,
                                    double gamma, double* w) noexcept nogil:
    cdef double s = log(p) - gamma * log(rho)
    cdef double beta = rho / (2.0 * p)
    w[0] = (gamma - s) / (gamma - 1.0) - beta * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
    w[1] = 2.0 * beta * v[0]
    w[2] = 2.0 * beta * v[1]
    w[3] = 2.0 * beta * v[2]
    w[4] = -2.0 * beta


cdef inline void _eckep_prim(double rL, const double* vL, double pL,
                             double rR, const double* vR, double pR,
                             int d, double gamma, double* f) noexcept nogil:
    """Entropy-conservative / kinetic-energy-preserving two-point flux."""
    cdef double betaL = rL / (2.0 * pL)
    cdef double betaR = rR / (2.0 * pR)
    cdef double rho_ln = _log_mean(rL, rR)
    cdef double beta_ln = _log_mean(betaL, betaR)
    cdef double vb0 = 0.5 * (vL[0] + vR[0])
    cdef double vb1 = 0.5 * (vL[1] + vR[1])
    cdef double vb2 = 0.5 * (vL[2] + vR[2])
    cdef double p_tilde = 0.5 * (rL + rR) / (betaL + betaR)
    cdef double v2bar = 0.5 * (vL[0] * vL[0] + vL[1] * vL[1] + vL[2] * vL[2]
                               + vR[0] * vR[0] + vR[1] * vR[1] + vR[2] * vR[2])
    cdef double vbn = vb0 if d == 0 else (vb1 if d == 1 else vb2)
    cdef double f_rho = rho_ln * vbn
    f[0] = f_rho
    f[1] = vb0 * f_rho
    f[2] = vb1 * f_rho
    f[3] = vb2 * f_rho
    f[1 + d] += p_tilde
    f[4] = f_rho * (0.5 / ((gamma - 1.0) * beta_ln) - 0.5 * v2bar) \
        + vb0 * f[1] + vb1 * f[2] + vb2 * f[3]


cdef inline void _central_prim(double rL, const double* vL, double pL, double EL,
                               double rR, const double* vR, double pR, double ER,
                               int d, double* f) noexcept nogil:
    cdef double fL[5]
    cdef double fR[5]
    _phys_flux_prim(rL, vL, pL, EL, d, fL)
    _phys_flux_prim(rR, vR, pR, ER, d, fR)
    cdef int c
    for c in range(5):
        f[c] = 0.5 * (fL[c] + fR[c])


cdef inline void _matrix_dissipation(double rL, const double* vL, double pL,
                                     double rR, const double* vR, double pR,
                                     int d, double gamma, bint roe_type,
                                     double* out) noexcept nogil:
    """-1/2 R Lambda_diss T R^T [[w]] with entropy-scaled eigenvectors."""
    cdef double betaL = rL / (2.0 * pL)
    cdef double betaR = rR / (2.0 * pR)
    cdef double rho = _log_mean(rL, rR)
    cdef double beta_ln = _log_mean(betaL, betaR)
    cdef double v[3]
    v[0] = 0.5 * (vL[0] + vR[0])
    v[1] = 0.5 * (vL[1] + vR[1])
    v[2] = 0.5 * (vL[2] + vR[2])
    cdef double p_bar = 0.5 * (rL + rR) / (betaL + betaR)
    cdef double a = sqrt(gamma * p_bar / rho)
    cdef double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
    cdef double h = gamma / (2.0 * beta_ln * (gamma - 1.0)) + 0.5 * v2
    cdef double vn = v[d]
    cdef int t1 = (d + 1) % 3
    cdef int t2 = (d + 2) % 3

    cdef double wL[5]
    cdef double wR[5]
    cdef double jw[5]
    _entropy_vars_prim(rL, vL, pL, gamma, wL)
    _entropy_vars_prim(rR, vR, pR, gamma, wR)
    cdef int c
    for c in range(5):
        jw[c] = wR[c] - wL[c]

    cdef double vdotjm = v[0] * jw[1] + v[1] * jw[2] + v[2] * jw[3]
    cdef double proj_minus = jw[0] + vdotjm - a * jw[1 + d] + (h - a * vn) * jw[4]
    cdef double proj_ent = jw[0] + vdotjm + 0.5 * v2 * jw[4]
    cdef double proj_t1 = jw[1 + t1] + v[t1] * jw[4]
    cdef double proj_t2 = jw[1 + t2] + v[t2] * jw[4]
    cdef double proj_plus = jw[0] + vdotjm + a * jw[1 + d] + (h + a * vn) * jw[4]

    cdef double lam_minus, lam_mid, lam_plus
    if roe_type:
        lam_minus = fabs(vn - a)
        lam_mid = fabs(vn)
        lam_plus = fabs(vn + a)
    else:
        lam_minus = lam_mid = lam_plus = fabs(vn) + a

    cdef double c_minus = lam_minus * (rho / (2.0 * gamma)) * proj_minus
    cdef double c_ent = lam_mid * (rho * (gamma - 1.0) / gamma) * proj_ent
    cdef double c_t1 = lam_mid * p_bar * proj_t1
    cdef double c_t2 = lam_mid * p_bar * proj_t2
    cdef double c_plus = lam_plus * (rho / (2.0 * gamma)) * proj_plus
    cdef double carried = c_minus + c_ent + c_plus

    out[0] = -0.5 * carried
    out[1] = -0.5 * carried * v[0]
    out[2] = -0.5 * carried * v[1]
    out[3] = -0.5 * carried * v[2]
    out[1 + d] += -0.5 * a * (c_plus - c_minus)
    out[1 + t1] += -0.5 * c_t1
    out[1 + t2] += -0.5 * c_t2
    out[4] = -0.5 * (c_minus * (h - a * vn) + c_ent * 0.5 * v2
                     + c_t1 * v[t1] + c_t2 * v[t2] + c_plus * (h + a * vn))


cdef inline int _hllc_star(const double* u, const double* f, double r,
                           const double* v, double p, double s, double s_star,
                           int d, double* out) noexcept nogil:
    cdef double factor = r * (s - v[d]) / (s - s_star)
    cdef double ustar[5]
    cdef int c
    for c in range(5):
        ustar[c] = u[c] * factor / r
    ustar[1 + d] = factor * s_star
    ustar[4] = factor * (u[4] / r + (s_star - v[d]) * (s_star + p / (r * (s - v[d]))))
    for c in range(5):
        out[c] = f[c] + s * (ustar[c] - u[c])
    return 0


cdef inline void _roe_diss(const double* uL, const double* uR,
                           double rL, const double* vL, double pL,
                           double rR, const double* vR, double pR,
                           int d, double gamma, double* diss) noexcept nogil:
    cdef double hL = (uL[4] + pL) / rL
    cdef double hR = (uR[4] + pR) / rR
    cdef double sqL = sqrt(rL)
    cdef double sqR = sqrt(rR)
    cdef double inv = 1.0 / (sqL + sqR)
    cdef double v[3]
    cdef double du[5]
    cdef int c
    for c in range(3):
        v[c] = (sqL * vL[c] + sqR * vR[c]) * inv
    cdef double h = (sqL * hL + sqR * hR) * inv
    cdef double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
    cdef double a = sqrt((gamma - 1.0) * (h - 0.5 * v2))
    cdef double vn = v[d]
    cdef int t1 = (d + 1) % 3
    cdef int t2 = (d + 2) % 3
    for c in range(5):
        du[c] = uR[c] - uL[c]
    cdef double drho = du[0]
    cdef double dmn = du[1 + d]
    cdef double a3 = du[1 + t1] - v[t1] * drho
    cdef double a4 = du[1 + t2] - v[t2] * drho
    cdef double dE_red = du[4] - a3 * v[t1] - a4 * v[t2]
    cdef double a2 = (gamma - 1.0) / (a * a) * (drho * (h - vn * vn) + vn * dmn - dE_red)
    cdef double a1 = (drho * (vn + a) - dmn - a * a2) / (2.0 * a)
    cdef double a5 = drho - a1 - a2
    cdef double l1 = fabs(vn - a)
    cdef double l2 = fabs(vn)
    cdef double l5 = fabs(vn + a)
    cdef double carried = l1 * a1 + l2 * a2 + l5 * a5
    diss[0] = carried
    diss[1] = carried * v[0]
    diss[2] = carried * v[1]
    diss[3] = carried * v[2]
    diss[1 + d] += a * (l5 * a5 - l1 * a1)
    diss[1 + t1] += l2 * a3
    diss[1 + t2] += l2 * a4
    diss[4] = (l1 * a1 * (h - vn * a) + l2 * a2 * 0.5 * v2
               + l2 * (a3 * v[t1] + a4 * v[t2]) + l5 * a5 * (h + vn * a))


cdef inline int _surface_flux(int kind, const double* uL, const double* uR,
                              int d, double gamma, double* out) noexcept nogil:
    cdef double rL, pL, rR, pR
    cdef double vL[3]
    cdef double vR[3]
    cdef double fL[5]
    cdef double fR[5]
    cdef double diss[5]
    cdef double cL, cR, lam, sL, sR, sLc, sRc, s_star
    cdef int c

    if _prims(uL, gamma, &rL, vL, &pL) or _prims(uR, gamma, &rR, vR, &pR):
        return 1

    if kind == F_ECKEP:
        _eckep_prim(rL, vL, pL, rR, vR, pR, d, gamma, out)
        return 0
    if kind == F_ECKEP_LLF or kind == F_ECKEP_ROE:
        _eckep_prim(rL, vL, pL, rR, vR, pR, d, gamma, out)
        _matrix_dissipation(rL, vL, pL, rR, vR, pR, d, gamma,
                            kind == F_ECKEP_ROE, diss)
        for c in range(5):
            out[c] += diss[c]
        return 0

    cL = sqrt(gamma * pL / rL)
    cR = sqrt(gamma * pR / rR)
    _phys_flux_prim(rL, vL, pL, uL[4], d, fL)
    _phys_flux_prim(rR, vR, pR, uR[4], d, fR)

    if kind == F_LLF:
        lam = fabs(vL[d]) + cL
        if fabs(vR[d]) + cR > lam:
            lam = fabs(vR[d]) + cR
        for c in range(5):
            out[c] = 0.5 * (fL[c] + fR[c]) - 0.5 * lam * (uR[c] - uL[c])
        return 0

    if kind == F_HLL or kind == F_HLLC:
        sL = vL[d] - cL
        if vR[d] - cR < sL:
            sL = vR[d] - cR
        sR = vL[d] + cL
        if vR[d] + cR > sR:
            sR = vR[d] + cR
        if kind == F_HLL:
            sLc = sL if sL < 0.0 else 0.0
            sRc = sR if sR > 0.0 else 0.0
            for c in range(5):
                out[c] = (sRc * fL[c] - sLc * fR[c] + sLc * sRc * (uR[c] - uL[c])) / (sRc - sLc)
            return 0
        # HLLC
        if sL >= 0.0:
            for c in range(5):
                out[c] = fL[c]
            return 0
        if sR <= 0.0:
            for c in range(5):
                out[c] = fR[c]
            return 0
        s_star = (pR - pL + rL * vL[d] * (sL - vL[d]) - rR * vR[d] * (sR - vR[d])) \
            / (rL * (sL - vL[d]) - rR * (sR - vR[d]))
        if s_star >= 0.0:
            return _hllc_star(uL, fL, rL, vL, pL, sL, s_star, d, out)
        return _hllc_star(uR, fR, rR, vR, pR, sR, s_star, d, out)

    if kind == F_ROE:
        _roe_diss(uL, uR, rL, vL, pL, rR, vR, pR, d, gamma, diss)
        for c in range(5):
            out[c] = 0.5 * (fL[c] + fR[c]) - 0.5 * diss[c]
        return 0

    return 2  # unknown kind


def rhs_kernel(const double[:, :, ::1] U, double[:, :, ::1] R,
               const double[:, ::1] D, const double[::1] lm, const double[::1] lp,
               const double[::1] w, const long[:, ::1] neighbors,
               double hx, double hy, double hz,
               double gamma, int flux_id, bint split, int vol_flux_id, bint is_gauss,
               Py_ssize_t n):
    """Accumulate the DGSEM rate into R (must arrive zeroed); -1 on success.

    U and R are (n_elements, n^3, 5) flat views; on an invalid state the
    return value is e * n^3 + node of the first bad node.
    """
    cdef Py_ssize_t nelem = U.shape[0]
    cdef Py_ssize_t n3 = n * n * n
    cdef Py_ssize_t e, i, m, node, base, a, b, en
    cdef int ax, c
    cdef double scale, acc, coef
    cdef double h[3]
    h[0] = hx
    h[1] = hy
    h[2] = hz

    prim_np = np.empty((n3, 6), dtype=np.float64)
    flux_np = np.empty((n3, 5), dtype=np.float64)
    cdef double[:, ::1] prim = prim_np
    cdef double[:, ::1] F = flux_np

    # face traces: solution and interior-flux trace, per axis and side
    tr_u_np = np.empty((3, 2, nelem, n * n, 5), dtype=np.float64)
    tr_f_np = np.empty((3, 2, nelem, n * n, 5), dtype=np.float64)
    cdef double[:, :, :, :, ::1] tr_u = tr_u_np
    cdef double[:, :, :, :, ::1] tr_f = tr_f_np

    cdef Py_ssize_t strides[3]
    strides[0] = n * n
    strides[1] = n
    strides[2] = 1

    cdef double uLbuf[5]
    cdef double uRbuf[5]
    cdef double floc[5]
    cdef double fstar[5]
    cdef double vA[3]
    cdef double vB[3]
    cdef double lineacc[NMAX][5]
    cdef Py_ssize_t sA, sB, sC, nodeA, nodeB, face
    cdef double rA, pA, rB, pB
    cdef long status = -1

    with nogil:
        for e in range(nelem):
            # --- primitive cache (also validates states) ---
            for node in range(n3):
                for c in range(5):
                    uLbuf[c] = U[e, node, c]
                if _prims(uLbuf, gamma, &rA, vA, &pA):
                    status = e * n3 + node
                    break
                prim[node, 0] = rA
                prim[node, 1] = vA[0]
                prim[node, 2] = vA[1]
                prim[node, 3] = vA[2]
                prim[node, 4] = pA
                prim[node, 5] = uLbuf[4]
            if status != -1:
                break

            for ax in range(3):
                sA = strides[ax]
                sB = strides[(ax + 1) % 3]
                sC = strides[(ax + 2) % 3]
                scale = 2.0 / h[ax]

                if not split:
                    # nodal fluxes for this axis, then R -= 2/h * D F per line
                    for node in range(n3):
                        vA[0] = prim[node, 1]
                        vA[1] = prim[node, 2]
                        vA[2] = prim[node, 3]
                        _phys_flux_prim(prim[node, 0], vA, prim[node, 4],
                                        prim[node, 5], ax, floc)
                        for c in range(5):
                            F[node, c] = floc[c]
                    for a in range(n):
                        for b in range(n):
                            base = a * sB + b * sC
                            for i in range(n):
                                node = base + i * sA
                                for c in range(5):
                                    acc = 0.0
                                    for m in range(n):
                                        acc += D[i, m] * F[base + m * sA, c]
                                    R[e, node, c] -= scale * acc
                else:
                    # flux differencing: R_i -= 2/h * 2 sum_m D_im F#(u_i, u_m)
                    for a in range(n):
                        for b in range(n):
                            base = a * sB + b * sC
                            for i in range(n):
                                nodeA = base + i * sA
                                vA[0] = prim[nodeA, 1]
                                vA[1] = prim[nodeA, 2]
                                vA[2] = prim[nodeA, 3]
                                _phys_flux_prim(prim[nodeA, 0], vA, prim[nodeA, 4],
                                                prim[nodeA, 5], ax, floc)
                                coef = 2.0 * D[i, i]
                                for c in range(5):
                                    lineacc[i][c] = coef * floc[c]
                            for i in range(n):
                                nodeA = base + i * sA
                                rA = prim[nodeA, 0]
                                vA[0] = prim[nodeA, 1]
                                vA[1] = prim[nodeA, 2]
                                vA[2] = prim[nodeA, 3]
                                pA = prim[nodeA, 4]
                                for m in range(i + 1, n):
                                    nodeB = base + m * sA
                                    rB = prim[nodeB, 0]
                                    vB[0] = prim[nodeB, 1]
                                    vB[1] = prim[nodeB, 2]
                                    vB[2] = prim[nodeB, 3]
                                    pB = prim[nodeB, 4]
                                    if vol_flux_id == V_ECKEP:
                                        _eckep_prim(rA, vA, pA, rB, vB, pB, ax, gamma, floc)
                                    else:
                                        _central_prim(rA, vA, pA, prim[nodeA, 5],
                                                      rB, vB, pB, prim[nodeB, 5], ax, floc)
                                    for c in range(5):
                                        lineacc[i][c] += 2.0 * D[i, m] * floc[c]
                                        lineacc[m][c] += 2.0 * D[m, i] * floc[c]
                            for i in range(n):
                                node = base + i * sA
                                for c in range(5):
                                    R[e, node, c] -= scale * lineacc[i][c]

                # --- face traces for this axis ---
                for a in range(n):
                    for b in range(n):
                        base = a * sB + b * sC
                        face = a * n + b
                        if is_gauss:
                            for c in range(5):
                                tr_u[ax, 0, e, face, c] = 0.0
                                tr_u[ax, 1, e, face, c] = 0.0
                                tr_f[ax, 0, e, face, c] = 0.0
                                tr_f[ax, 1, e, face, c] = 0.0
                            for i in range(n):
                                node = base + i * sA
                                for c in range(5):
                                    tr_u[ax, 0, e, face, c] += lm[i] * U[e, node, c]
                                    tr_u[ax, 1, e, face, c] += lp[i] * U[e, node, c]
                                    tr_f[ax, 0, e, face, c] += lm[i] * F[node, c]
                                    tr_f[ax, 1, e, face, c] += lp[i] * F[node, c]
                        else:
                            node = base  # i = 0 boundary node
                            vA[0] = prim[node, 1]
                            vA[1] = prim[node, 2]
                            vA[2] = prim[node, 3]
                            _phys_flux_prim(prim[node, 0], vA, prim[node, 4],
                                            prim[node, 5], ax, floc)
                            for c in range(5):
                                tr_u[ax, 0, e, face, c] = U[e, node, c]
                                tr_f[ax, 0, e, face, c] = floc[c]
                            node = base + (n - 1) * sA
                            vA[0] = prim[node, 1]
                            vA[1] = prim[node, 2]
                            vA[2] = prim[node, 3]
                            _phys_flux_prim(prim[node, 0], vA, prim[node, 4],
                                            prim[node, 5], ax, floc)
                            for c in range(5):
                                tr_u[ax, 1, e, face, c] = U[e, node, c]
                                tr_f[ax, 1, e, face, c] = floc[c]

        # --- interface fluxes and lifting ---
        if status == -1:
            for ax in range(3):
                sA = strides[ax]
                sB = strides[(ax + 1) % 3]
                sC = strides[(ax + 2) % 3]
                scale = 2.0 / h[ax]
                for e in range(nelem):
                    en = neighbors[e, 2 * ax + 1]
                    for a in range(n):
                        for b in range(n):
                            face = a * n + b
                            for c in range(5):
                                uLbuf[c] = tr_u[ax, 1, e, face, c]
                                uRbuf[c] = tr_u[ax, 0, en, face, c]
                            if _surface_flux(flux_id, uLbuf, uRbuf, ax, gamma, fstar):
                                status = e * n3
                                break
                            base = a * sB + b * sC
                            for i in range(n):
                                node = base + i * sA
                                coef = scale * lp[i] / w[i]
                                if coef != 0.0:
                                    for c in range(5):
                                        R[e, node, c] -= coef * (fstar[c] - tr_f[ax, 1, e, face, c])
                                coef = scale * lm[i] / w[i]
                                if coef != 0.0:
                                    for c in range(5):
                                        R[en, node, c] += coef * (fstar[c] - tr_f[ax, 0, en, face, c])
                        if status != -1:
                            break
                    if status != -1:
                        break
                if status != -1:
                    break

    return status


def max_wave_speeds_kernel(const double[:, :, ::1] U, double gamma, double[::1] out):
    """Per-axis maxima of |v_d| + c over all nodes; returns 0, or 1 on bad state."""
    cdef Py_ssize_t nelem = U.shape[0]
    cdef Py_ssize_t n3 = U.shape[1]
    cdef Py_ssize_t e, node
    cdef double rho, p, cs
    cdef double v[3]
    cdef double u[5]
    cdef int c
    cdef int status = 0
    out[0] = out[1] = out[2] = 0.0
    with nogil:
        for e in range(nelem):
            for node in range(n3):
                for c in range(5):
                    u[c] = U[e, node, c]
                if _prims(u, gamma, &rho, v, &p):
                    status = 1
                    break
                cs = sqrt(gamma * p / rho)
                for c in range(3):
                    if fabs(v[c]) + cs > out[c]:
                        out[c] = fabs(v[c]) + cs
            if status != 0:
                break
    return status
