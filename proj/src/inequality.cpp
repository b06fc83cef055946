#include "rarewave/inequality.hpp"

#include "rarewave/eos.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace rarewave::ineq {

namespace {

EosParams params_for(double Ztilde) {
    EosParams par;
    par.Ztilde = Ztilde;
    par.a_eps = 0.0;
    par.eps = 1.0;
    return par;
}

// P(Z) Z^{-5/3} Ztilde^{2/3} in cancellation-free form: (Zt/Z)^{2/3} on the
// Boyle-Mariotte branch, 3/5 + (2/5)(Zt/Z)^{5/3} beyond; equals 1 at Z = Zt.
double pressure_ratio(double Z, double Ztilde) {
    const double zr = Ztilde / Z;
    const double zr23 = std::cbrt(zr * zr);
    if (Z <= Ztilde) return zr23;
    return 0.6 + 0.4 * zr * zr23;
}

void require_positive(double y, double Z, const char* who) {
    if (!(y > 0.0) || !(Z > 0.0))
        throw IneqDomainError(std::string(who) + ": need y > 0 and Z > 0");
}

std::string point(double a, double b) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", a, b);
    return buf;
}

} // namespace

void IneqGrid::validate() const {
    if (!(y_min > 0.0) || !(y_min < y_max) || !(Z_factor_min > 0.0) ||
        !(Z_factor_min < Z_factor_max) || !(Y_min > 0.0) || !(Y_min < 1.0))
        throw IneqDomainError("IneqGrid: ranges must be positive and ordered");
    if (n_y < 101 || n_Z < 101 || n_Y < 101)
        throw IneqDomainError("IneqGrid: point counts must be >= 101");
    if (n_y % 2 == 0 || n_Z % 2 == 0)
        throw IneqDomainError("IneqGrid: odd point counts keep (1, Ztilde) on the grid");
}

double F(double y, double Z, double Ztilde) {
    require_positive(y, Z, "F");
    const auto par = params_for(Ztilde);
    const double dS = structural_entropy(Z, par) - 1.0;  // S(Ztilde) = 1
    return dS + 2.5 - 1.0 / y - 1.5 * pressure_ratio(Z, Ztilde) * std::cbrt(y * y) +
           0.1 * dS * dS;
}

GradF grad_F(double y, double Z, double Ztilde) {
    require_positive(y, Z, "grad_F");
    const auto par = params_for(Ztilde);
    const double dS = structural_entropy(Z, par) - 1.0;
    const double Sp = structural_entropy_deriv(Z, par);
    const double zr = Ztilde / Z;
    const double zr23 = std::cbrt(zr * zr);
    const double y23 = std::cbrt(y * y);
    GradF g;
    g.dy = 1.0 / (y * y) - pressure_ratio(Z, Ztilde) / std::cbrt(y);
    g.dZ = Sp * (1.0 - y23 * zr23 + 0.2 * dS);
    return g;
}

HessianF hessian_F(double y, double Z, double Ztilde) {
    require_positive(y, Z, "hessian_F");
    const auto par = params_for(Ztilde);
    const double dS = structural_entropy(Z, par) - 1.0;
    const double Sp = structural_entropy_deriv(Z, par);
    const double Spp = structural_entropy_deriv2(Z, par);
    const double zr = Ztilde / Z;
    const double zr23 = std::cbrt(zr * zr);
    const double y23 = std::cbrt(y * y);
    HessianF h;
    h.yy = -2.0 / (y * y * y) +
           pressure_ratio(Z, Ztilde) / (3.0 * y * std::cbrt(y));
    h.ZZ = Spp * (1.0 - y23 * zr23 + 0.2 * dS) +
           Sp * (0.2 * Sp + (2.0 / 3.0) * y23 * zr23 / Z);
    h.yZ = -(2.0 / 3.0) * zr23 / std::cbrt(y) * Sp;
    return h;
}

double ybar(double Z, double Ztilde) {
    if (!(Z >= Ztilde))
        throw IneqDomainError("ybar: formula derived for Z >= Ztilde");
    return std::pow(pressure_ratio(Z, Ztilde), -0.6);
}

double Fmax(double Z, double Ztilde) {
    if (!(Z >= Ztilde))
        throw IneqDomainError("Fmax: formula derived for Z >= Ztilde");
    const auto par = params_for(Ztilde);
    const double dS = structural_entropy(Z, par) - 1.0;
    return dS + 2.5 - 2.5 * std::pow(pressure_ratio(Z, Ztilde), 0.6) + 0.1 * dS * dS;
}

double G(double Y) {
    if (!(Y > 0.0) || Y > 1.0) throw IneqDomainError("G: Y must lie in (0, 1]");
    const double A = 0.6 + 0.4 * Y * std::cbrt(Y * Y);
    return Y + 1.5 - 2.5 * std::pow(A, 0.6) + 0.1 * (Y - 1.0) * (Y - 1.0);
}

double G_second(double Y) {
    if (!(Y > 0.0) || Y > 1.0) throw IneqDomainError("G_second: Y must lie in (0, 1]");
    const double A = 0.6 + 0.4 * Y * std::cbrt(Y * Y);
    const double y13 = std::cbrt(Y);
    return 0.2 + (4.0 / 15.0) * std::pow(A, -1.4) * Y * y13 -
           (2.0 / 3.0) * std::pow(A, -0.4) / y13;
}

VerificationReport certify(const IneqGrid& grid, double Ztilde) {
    grid.validate();
    if (!(Ztilde > 0.0)) throw IneqDomainError("certify: Ztilde must be > 0");

    VerificationReport rep;
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "inequality certification, Ztilde = %g", Ztilde);
        rep.title = buf;
    }
    const auto par = params_for(Ztilde);

    // ---- (y, Z) sweep -------------------------------------------------------
    const int ny = grid.n_y, nz = grid.n_Z;
    const int i0 = ny / 2, j0 = nz / 2;  // exact location of y = 1, Z = Ztilde
    const double ly0 = std::log10(grid.y_min), ly1 = std::log10(grid.y_max);
    const double lz0 = std::log10(grid.Z_factor_min), lz1 = std::log10(grid.Z_factor_max);

    std::vector<double> y(ny), inv_y(ny), y23(ny), ym13(ny);
    for (int i = 0; i < ny; ++i) {
        y[i] = std::pow(10.0, ly0 + (ly1 - ly0) * i / (ny - 1));
        inv_y[i] = 1.0 / y[i];
        y23[i] = std::cbrt(y[i] * y[i]);
        ym13[i] = 1.0 / std::cbrt(y[i]);
    }
    std::vector<double> Z(nz), dS(nz), Sp(nz), R(nz), zr23(nz);
    for (int j = 0; j < nz; ++j) {
        Z[j] = Ztilde * std::pow(10.0, lz0 + (lz1 - lz0) * j / (nz - 1));
        dS[j] = structural_entropy(Z[j], par) - 1.0;
        Sp[j] = structural_entropy_deriv(Z[j], par);
        R[j] = pressure_ratio(Z[j], Ztilde);
        const double zr = Ztilde / Z[j];
        zr23[j] = std::cbrt(zr * zr);
    }

    auto F_at = [&](int i, int j) {
        return dS[j] + 2.5 - inv_y[i] - 1.5 * R[j] * y23[i] + 0.1 * dS[j] * dS[j];
    };
    auto grad_y_at = [&](int i, int j) {
        return std::abs(inv_y[i] * inv_y[i] - R[j] * ym13[i]);
    };
    auto grad_z_at = [&](int i, int j) {
        return std::abs(Sp[j] * (1.0 - y23[i] * zr23[j] + 0.2 * dS[j]));
    };

    double maxF = -std::numeric_limits<double>::infinity();
    int maxF_i = 0, maxF_j = 0;
    long stray_points = 0;  // F > -1e-12 further than one cell from the center
    int stray_i = -1, stray_j = -1;
    double boundary_max = -std::numeric_limits<double>::infinity();
    double ablated_max = -std::numeric_limits<double>::infinity();

    // Cells failing the excursion screen must stay within this index radius of
    // the stationary point.  The screen necessarily fails where |F| shrinks
    // quadratically while the gradient bound shrinks linearly; with Hessian
    // eigenvalues -0.17 and -1.96 that soft region extends to roughly
    // a 9-cell radius in practice (the bound 2 sqrt(2) lambda_max/lambda_min ~ 33 is
    // attained only along an eigendirection no grid line follows).  Within the
    // neighborhood the certified negative-definite Hessian (e) carries the
    // argument instead.
    constexpr int kScreenNeighborhood = 16;

    std::vector<double> Fcol_prev(nz), Fcol(nz);
    std::vector<double> Gycol_prev(nz), Gycol(nz);
    std::vector<double> Gzcol_prev(nz), Gzcol(nz);
    long screen_failures = 0;
    int screen_worst_dist = 0;
    int screen_i = -1, screen_j = -1;

    for (int i = 0; i < ny; ++i) {
        for (int j = 0; j < nz; ++j) {
            const double f = F_at(i, j);
            Fcol[j] = f;
            Gycol[j] = grad_y_at(i, j);
            Gzcol[j] = grad_z_at(i, j);
            if (f > maxF) {
                maxF = f;
                maxF_i = i;
                maxF_j = j;
            }
            if (f > -1e-12 && (std::abs(i - i0) > 1 || std::abs(j - j0) > 1)) {
                ++stray_points;
                stray_i = i;
                stray_j = j;
            }
            if ((i == 0 || i == ny - 1) && Z[j] >= Ztilde)
                boundary_max = std::max(boundary_max, f);
            ablated_max = std::max(ablated_max, f - 0.1 * dS[j] * dS[j]);
        }
        if (i > 0) {
            // per-axis excursion bound on the cell column between i-1 and i:
            // no sign change can hide inside a cell whose corner values plus
            // the Lagrange bound |dF/dy| dy + |dF/dZ| dZ stay negative
            const double dy = y[i] - y[i - 1];
            for (int j = 0; j + 1 < nz; ++j) {
                const double fc = std::max({Fcol_prev[j], Fcol_prev[j + 1], Fcol[j],
                                            Fcol[j + 1]});
                const double gy = std::max({Gycol_prev[j], Gycol_prev[j + 1], Gycol[j],
                                            Gycol[j + 1]});
                const double gz = std::max({Gzcol_prev[j], Gzcol_prev[j + 1], Gzcol[j],
                                            Gzcol[j + 1]});
                const double dz = Z[j + 1] - Z[j];
                if (fc + gy * dy + gz * dz >= 0.0) {
                    const int dist = std::max(std::abs(i - 1 - i0), std::abs(j - j0));
                    screen_worst_dist = std::max(screen_worst_dist, dist);
                    if (dist > kScreenNeighborhood) {
                        ++screen_failures;
                        screen_i = i - 1;
                        screen_j = j;
                    }
                }
            }
        }
        std::swap(Fcol_prev, Fcol);
        std::swap(Gycol_prev, Gycol);
        std::swap(Gzcol_prev, Gzcol);
    }

    rep.add({"(a) max F over the (y, Z) grid <= 1e-12",
             maxF <= 1e-12, true, maxF, 1e-12, point(y[maxF_i], Z[maxF_j]), ""});
    rep.add({"(a') near-zero F only within one grid cell of (1, Ztilde)",
             stray_points == 0, true, double(stray_points), 0.0,
             stray_points ? point(y[stray_i], Z[stray_j]) : "", ""});

    // ---- Y sweep ------------------------------------------------------------
    const int nY = grid.n_Y;
    const double lY0 = std::log10(grid.Y_min);
    double maxG = -std::numeric_limits<double>::infinity();
    double maxG_arg = 0.0;
    long strayG = 0;
    double strayG_arg = 0.0;
    double maxGpp = -std::numeric_limits<double>::infinity();
    double maxGpp_arg = 0.0;
    double maxQ = -std::numeric_limits<double>::infinity();
    double maxQ_arg = 0.0;
    for (int k = 0; k < nY; ++k) {
        const double Y = std::pow(10.0, lY0 * (1.0 - double(k) / (nY - 1)));
        const double g = G(Y);
        if (g > maxG) {
            maxG = g;
            maxG_arg = Y;
        }
        if (g > -1e-12 && k != nY - 1) {
            ++strayG;
            strayG_arg = Y;
        }
        const double gpp = G_second(Y);
        if (gpp > maxGpp) {
            maxGpp = gpp;
            maxGpp_arg = Y;
        }
        const double A = 0.6 + 0.4 * Y * std::cbrt(Y * Y);
        const double q = std::pow(A, -1.4) * Y * std::cbrt(Y);
        if (q > maxQ) {
            maxQ = q;
            maxQ_arg = Y;
        }
    }

    rep.add({"(b) max G over (0, 1] <= 1e-12, attained only at Y = 1",
             maxG <= 1e-12 && strayG == 0, true, maxG, 1e-12,
             strayG ? point(strayG_arg, G(strayG_arg)) : point(maxG_arg, maxG), ""});
    rep.add({"(c) max G'' over (0, 1] <= -1/6 + 1e-9",
             maxGpp <= -1.0 / 6.0 + 1e-9, true, maxGpp, -1.0 / 6.0 + 1e-9,
             point(maxGpp_arg, maxGpp), ""});
    rep.add({"(d) max (3/5 + (2/5) Y^{5/3})^{-7/5} Y^{4/3} <= 1.08",
             maxQ <= 1.08, true, maxQ, 1.08, point(maxQ_arg, maxQ), ""});

    // ---- Hessian at the stationary point ------------------------------------
    const auto H = hessian_F(1.0, Ztilde, Ztilde);
    const double ref_yy = -5.0 / 3.0;
    const double ref_yZ = 2.0 / (3.0 * Ztilde);
    const double ref_ZZ = -(7.0 / 15.0) / (Ztilde * Ztilde);
    const double hess_err = std::max(
        {std::abs(H.yy - ref_yy) / std::max(1.0, std::abs(ref_yy)),
         std::abs(H.yZ - ref_yZ) / std::max(1.0, std::abs(ref_yZ)),
         std::abs(H.ZZ - ref_ZZ) / std::max(1.0, std::abs(ref_ZZ))});
    const double trace = H.yy + H.ZZ;
    const double det = H.yy * H.ZZ - H.yZ * H.yZ;
    rep.add({"(e) Hessian at (1, Ztilde) matches the closed form and is negative definite",
             hess_err <= 1e-12 && trace < 0.0 && det > 0.0, true, hess_err, 1e-12,
             point(trace, det), "witness carries (trace, det)"});

    // ---- supplementary entries ----------------------------------------------
    {
        char note[96];
        std::snprintf(note, sizeof note, "worst failing cell at index distance %d",
                      screen_worst_dist);
        rep.add({"gap screening: per-axis gradient bound excludes hidden sign "
                 "changes outside the stationary-point neighborhood",
                 screen_failures == 0, true, double(screen_failures), 0.0,
                 screen_failures ? point(y[screen_i], Z[screen_j]) : "", note});
    }
    rep.add({"boundary decay: F < -10 on the y-grid edges for Z >= Ztilde",
             boundary_max < -10.0, true, boundary_max, -10.0, "", ""});
    rep.add({"ablation (informational): max F without the |S - S~|^2/10 term",
             true, false, ablated_max, 1e-12, "",
             ablated_max <= 1e-12 ? "still passes (a); the quadratic term has slack"
                                  : "quadratic term is load-bearing at this resolution"});
    rep.add({"prefactor-bound note (informational)", true, false,
             std::pow(0.6, -1.4), 1.08, "",
             "(3/5)^{-7/5} ~= 2.0448 exceeds 1.08, so bounding that prefactor alone "
             "cannot close the concavity estimate; the full quantity "
             "(3/5 + (2/5) Y^{5/3})^{-7/5} Y^{4/3} is what (d) certifies <= 1.08, "
             "which does close it"});
    return rep;
}

} // namespace rarewave::ineq
