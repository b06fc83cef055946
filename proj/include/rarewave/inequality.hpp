#pragma once

#include "rarewave/verification.hpp"

#include <stdexcept>

namespace rarewave::ineq {

/// Grid of the certification sweep (all log-spaced, odd point counts so the
/// stationary point (y, Z) = (1, Ztilde) is hit exactly).
struct IneqGrid {
    double y_min = 1e-3, y_max = 1e3;
    int n_y = 2001;
    double Z_factor_min = 1e-3, Z_factor_max = 1e3;  ///< Z range = factor * Ztilde
    int n_Z = 2001;
    double Y_min = 1e-4;  ///< Y range (Y_min, 1]
    int n_Y = 2001;
    void validate() const;
};

struct IneqDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// F(y, Z) = S(Z) - S(Zt) + 5/2 - 1/y - (3/2) (P(Z)/Z^{5/3}) y^{2/3} Zt^{2/3}
///           + |S(Z) - S(Zt)|^2 / 10,
/// with P, S the hybrid-EOS structural functions (both branches).
double F(double y, double Z, double Ztilde);

struct GradF {
    double dy;
    double dZ;
};
GradF grad_F(double y, double Z, double Ztilde);

struct HessianF {
    double yy;
    double yZ;
    double ZZ;
};
/// Second derivatives; at the junction Z == Ztilde the S''-carrying term uses
/// the Boyle-Mariotte side (S is C^1 only, callers probe one-sided there).
HessianF hessian_F(double y, double Z, double Ztilde);

/// Stationary point of y -> F(y, Z) for Z >= Ztilde:
/// ybar = (P(Z) Z^{-5/3} Zt^{2/3})^{-3/5}.
double ybar(double Z, double Ztilde);

/// Closed-form max_y F(y, Z) for Z >= Ztilde.
double Fmax(double Z, double Ztilde);

/// G(Y) = Y + 3/2 - (5/2)(3/5 + (2/5) Y^{5/3})^{3/5} + (Y - 1)^2 / 10 on (0, 1];
/// Ztilde-free by the change of variables Y = Ztilde/Z.
double G(double Y);
double G_second(double Y);

/// Full grid certification: (a) max F <= 1e-12 attained only within one grid
/// cell of (1, Ztilde); (b) max G <= 1e-12 attained only at Y = 1;
/// (c) max G'' <= -1/6 + 1e-9; (d) max (3/5 + (2/5) Y^{5/3})^{-7/5} Y^{4/3}
/// <= 1.08; (e) Hessian at (1, Ztilde) equals
/// [[-5/3, 2/(3 Zt)], [2/(3 Zt), -(7/15)/Zt^2]] and is negative definite.
/// Supplementary entries: cell-gap screening via gradient bounds, boundary
/// decay of F, the quadratic-term ablation, and an erratum note.  Failures are
/// report entries with witness points, never exceptions.
VerificationReport certify(const IneqGrid& grid, double Ztilde);

} // namespace rarewave::ineq
