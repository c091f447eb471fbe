#include "isl/shape.hpp"

#include <cmath>
#include <string>

namespace isl {

namespace {

Vec project_with_frame(const PointFrame& f, const Vec& v) {
    Vec out = v;
    for (int a = 0; a < f.r(); ++a) {
        Vec na = f.N.col(a);
        out -= na * dot(na, v);
    }
    return out;
}

// h_a(T_i, T_j) = <A_a T_i, T_j>.
Mat bilinear_from_operator(const Mat& a) { return transpose(a); }

} // namespace

ShapeData shape_at(const ImplicitSubmanifold& M, const PointFrame& f, const FdConfig& cfg) {
    const int n = f.n(), r = f.r();
    const Mat Tt = transpose(f.T);
    ShapeData sh;
    sh.frame = f;
    sh.A.assign(r, Mat(n, n));
    sh.l.assign(r, Mat(r, n));

    for (int k = 0; k < n; ++k) {
        Vec ek(n);
        ek[k] = 1.0;
        PointFrame fp = frames_at(M, curve_point(M, f, ek, cfg.step));
        PointFrame fm = frames_at(M, curve_point(M, f, ek, -cfg.step));
        for (int a = 0; a < r; ++a) {
            Vec dn = (fp.N.col(a) - fm.N.col(a)) * (1.0 / (2.0 * cfg.step));
            sh.A[a].set_col(k, -(Tt * dn));
            for (int b = 0; b < r; ++b) sh.l[a](b, k) = dot(dn, f.N.col(b));
        }
    }
    sh.h.clear();
    for (int a = 0; a < r; ++a) sh.h.push_back(bilinear_from_operator(sh.A[a]));
    return sh;
}

FdBundle analyze_point(const AmbientStructure& s, const ImplicitSubmanifold& M,
                       const PointFrame& f, const InducedStructureData& ind,
                       const FdConfig& cfg) {
    const int n = f.n(), r = f.r();
    const double h = cfg.step;
    const Mat Tt = transpose(f.T);
    const double eps = s.epsilon();

    FdBundle out;
    out.shape.frame = f;
    out.shape.A.assign(r, Mat(n, n));
    out.shape.l.assign(r, Mat(r, n));
    out.cov.dP.assign(n, Mat(n, n));
    out.cov.du.assign(n, Mat(r, n));
    out.cov.du_raw.assign(n, Mat(r, n));
    out.cov.dxi.assign(n, Mat(n, r));
    out.cov.da.assign(n, Mat(r, r));
    out.cov.nablaY.assign(n, std::vector<Vec>(n));
    out.cov.dPY.assign(n, std::vector<Vec>(n));
    out.cov.bracket.assign(n, std::vector<Vec>(n));

    // Values of the induced fields at a nearby point, with tangent test
    // fields extended by orthogonal projection.
    struct SideValues {
        Mat N;                    // m x r
        std::vector<Vec> Y;       // projected basis extensions, ambient
        std::vector<Vec> PY;      // tangential Q-image of each extension
        std::vector<Vec> xi;      // ambient xi_a
        Mat uY;                   // r x n, u_a of each extension
        Mat a;                    // r x r
    };
    auto evaluate = [&](const Vec& y) {
        PointFrame fy = frames_at(M, y);
        SideValues v;
        v.N = fy.N;
        v.Y.resize(n);
        v.PY.resize(n);
        v.xi.resize(r);
        v.uY = Mat(r, n);
        v.a = Mat(r, r);
        for (int j = 0; j < n; ++j) {
            v.Y[j] = project_with_frame(fy, f.T.col(j));
            Vec qy = s.apply(v.Y[j]);
            v.PY[j] = project_with_frame(fy, qy);
            for (int a0 = 0; a0 < r; ++a0) v.uY(a0, j) = dot(qy, fy.N.col(a0));
        }
        for (int a0 = 0; a0 < r; ++a0) {
            Vec qn = s.apply(fy.N.col(a0));
            v.xi[a0] = project_with_frame(fy, qn) * eps;
            for (int b = 0; b < r; ++b) v.a(a0, b) = dot(qn, fy.N.col(b));
        }
        return v;
    };

    for (int k = 0; k < n; ++k) {
        Vec ek(n);
        ek[k] = 1.0;
        const Vec yp = curve_point(M, f, ek, h);
        const Vec ym = curve_point(M, f, ek, -h);
        SideValues plus = evaluate(yp);
        SideValues minus = evaluate(ym);
        const double inv2h = 1.0 / (2.0 * h);

        for (int a = 0; a < r; ++a) {
            Vec dn = (plus.N.col(a) - minus.N.col(a)) * inv2h;
            out.shape.A[a].set_col(k, -(Tt * dn));
            for (int b = 0; b < r; ++b) out.shape.l[a](b, k) = dot(dn, f.N.col(b));
            out.cov.dxi[k].set_col(a, Tt * ((plus.xi[a] - minus.xi[a]) * inv2h));
        }
        out.cov.da[k] = (plus.a - minus.a) * inv2h;

        for (int j = 0; j < n; ++j) {
            Vec nabla_y = Tt * ((plus.Y[j] - minus.Y[j]) * inv2h);
            out.cov.nablaY[k][j] = nabla_y;
            Vec dpy = Tt * ((plus.PY[j] - minus.PY[j]) * inv2h);
            out.cov.dPY[k][j] = dpy;
            out.cov.dP[k].set_col(j, dpy - ind.P_tan * nabla_y);
            for (int a = 0; a < r; ++a) {
                const double raw = (plus.uY(a, j) - minus.uY(a, j)) * inv2h;
                out.cov.du_raw[k](a, j) = raw;
                out.cov.du[k](a, j) = raw - dot(ind.u.row(a), nabla_y);
            }
        }
    }
    for (int a = 0; a < r; ++a) out.shape.h.push_back(bilinear_from_operator(out.shape.A[a]));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.cov.bracket[i][j] = out.cov.nablaY[i][j] - out.cov.nablaY[j][i];
    return out;
}

ResidualReport covariant_identity_suite(const InducedStructureData& ind, const ShapeData& sh,
                                        const CovariantCache& cov, double tol) {
    const int n = ind.n(), r = ind.r();
    const double eps = ind.epsilon;
    double res_p = 0, res_u = 0, res_xi = 0, res_a = 0;

    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            Vec rhs(n);
            for (int a = 0; a < r; ++a)
                rhs += ind.xi.col(a) * (eps * sh.h[a](k, j)) + sh.A[a].col(k) * ind.u(a, j);
            res_p = std::max(res_p, max_abs(cov.dP[k].col(j) - rhs));

            for (int a = 0; a < r; ++a) {
                double rhs_u = -dot(sh.A[a].col(k), ind.P_tan.col(j));
                for (int b = 0; b < r; ++b)
                    rhs_u += ind.u(b, j) * sh.l[a](b, k) + sh.h[b](k, j) * ind.A_mat(b, a);
                res_u = std::max(res_u, std::abs(cov.du[k](a, j) - rhs_u));
            }
        }
        for (int a = 0; a < r; ++a) {
            Vec rhs = ind.P_tan * sh.A[a].col(k) * (-eps);
            for (int b = 0; b < r; ++b)
                rhs += sh.A[b].col(k) * (eps * ind.A_mat(a, b)) + ind.xi.col(b) * sh.l[a](b, k);
            res_xi = std::max(res_xi, max_abs(cov.dxi[k].col(a) - rhs));

            for (int b = 0; b < r; ++b) {
                double rhs_a = -eps * dot(ind.u.row(a), sh.A[b].col(k)) -
                               dot(ind.u.row(b), sh.A[a].col(k));
                for (int g = 0; g < r; ++g)
                    rhs_a += sh.l[a](g, k) * ind.A_mat(g, b) + sh.l[b](g, k) * ind.A_mat(a, g);
                res_a = std::max(res_a, std::abs(cov.da[k](a, b) - rhs_a));
            }
        }
    }
    ResidualReport rep;
    rep.add("thm2_1", "2.6.i", res_p, tol);
    rep.add("thm2_1", "2.6.ii", res_u, tol);
    rep.add("thm2_1", "2.6.iii", res_xi, tol);
    rep.add("thm2_1", "2.6.iv", res_a, tol);
    return rep;
}

ResidualReport defect_suite(const AmbientStructure& s, const ImplicitSubmanifold& M,
                            const PointFrame& f, const InducedStructureData& ind,
                            const ShapeData& sh, const CovariantCache& cov,
                            const FdConfig& cfg, double tol,
                            const AmbientMatrixField& field_override) {
    const int n = f.n(), r = f.r();
    const double h_step = cfg.step;
    const Mat Tt = transpose(f.T);
    const double eps = s.epsilon();
    const bool injected = static_cast<bool>(field_override);
    auto field = [&](const Vec& y) -> Mat {
        return injected ? field_override(y) : s.matrix();
    };
    const Mat q0 = field(f.x);

    // Defect values by central differences of the field application along
    // the same projected extensions used for the covariant cache.
    std::vector<std::vector<Vec>> def_y(n, std::vector<Vec>(n));  // ambient
    std::vector<std::vector<Vec>> def_n(n, std::vector<Vec>(r));
    for (int k = 0; k < n; ++k) {
        Vec ek(n);
        ek[k] = 1.0;
        const Vec yp = curve_point(M, f, ek, h_step);
        const Vec ym = curve_point(M, f, ek, -h_step);
        PointFrame fp = frames_at(M, yp), fm = frames_at(M, ym);
        const Mat qp = field(yp), qm = field(ym);
        const double inv2h = 1.0 / (2.0 * h_step);
        for (int j = 0; j < n; ++j) {
            Vec yj_p = project_with_frame(fp, f.T.col(j));
            Vec yj_m = project_with_frame(fm, f.T.col(j));
            Vec d_qy = (qp * yj_p - qm * yj_m) * inv2h;
            Vec d_y = (yj_p - yj_m) * inv2h;
            def_y[k][j] = d_qy - q0 * d_y;
        }
        for (int a = 0; a < r; ++a) {
            Vec d_qn = (qp * fp.N.col(a) - qm * fm.N.col(a)) * inv2h;
            Vec d_n = (fp.N.col(a) - fm.N.col(a)) * inv2h;
            def_n[k][a] = d_qn - q0 * d_n;
        }
    }

    double def_y_norm = 0, def_n_norm = 0;
    double res_p = 0, res_u = 0, res_xi = 0, res_a = 0;
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            def_y_norm = std::max(def_y_norm, max_abs(def_y[k][j]));
            Vec rhs = Tt * def_y[k][j];
            for (int a = 0; a < r; ++a)
                rhs += ind.xi.col(a) * (eps * sh.h[a](k, j)) + sh.A[a].col(k) * ind.u(a, j);
            res_p = std::max(res_p, max_abs(cov.dP[k].col(j) - rhs));
            for (int a = 0; a < r; ++a) {
                double rhs_u = dot(def_y[k][j], f.N.col(a)) -
                               dot(sh.A[a].col(k), ind.P_tan.col(j));
                for (int b = 0; b < r; ++b)
                    rhs_u += ind.u(b, j) * sh.l[a](b, k) + sh.h[b](k, j) * ind.A_mat(b, a);
                res_u = std::max(res_u, std::abs(cov.du[k](a, j) - rhs_u));
            }
        }
        for (int a = 0; a < r; ++a) {
            def_n_norm = std::max(def_n_norm, max_abs(def_n[k][a]));
            Vec rhs = Tt * def_n[k][a] - ind.P_tan * sh.A[a].col(k) * eps;
            for (int b = 0; b < r; ++b)
                rhs += sh.A[b].col(k) * (eps * ind.A_mat(a, b)) + ind.xi.col(b) * sh.l[a](b, k);
            res_xi = std::max(res_xi, max_abs(cov.dxi[k].col(a) - rhs));
            for (int b = 0; b < r; ++b) {
                double rhs_a = dot(def_n[k][a], f.N.col(b)) -
                               eps * dot(ind.u.row(a), sh.A[b].col(k)) -
                               dot(ind.u.row(b), sh.A[a].col(k));
                for (int g = 0; g < r; ++g)
                    rhs_a += sh.l[a](g, k) * ind.A_mat(g, b) + sh.l[b](g, k) * ind.A_mat(a, g);
                res_a = std::max(res_a, std::abs(cov.da[k](a, b) - rhs_a));
            }
        }
    }

    ResidualReport rep;
    const std::string suite = "defect";
    if (injected) {
        auto& r30 = rep.add_gated(suite, "2.30", "field override active: defect reported only");
        r30.details.push_back({"defect_norm", def_y_norm});
        auto& r31 = rep.add_gated(suite, "2.31", "field override active: defect reported only");
        r31.details.push_back({"defect_norm", def_n_norm});
        rep.add_gated(suite, "2.32.i", "field override inconsistent with induced data");
        rep.add_gated(suite, "2.32.ii", "field override inconsistent with induced data");
        rep.add_gated(suite, "2.32.iii", "field override inconsistent with induced data");
        rep.add_gated(suite, "2.32.iv", "field override inconsistent with induced data");
        return rep;
    }
    // Constant coefficients: the defect itself must vanish.
    rep.add(suite, "2.30", def_y_norm, 1e-6);
    rep.add(suite, "2.31", def_n_norm, 1e-6);
    rep.add(suite, "2.32.i", res_p, tol);
    rep.add(suite, "2.32.ii", res_u, tol);
    rep.add(suite, "2.32.iii", res_xi, tol);
    rep.add(suite, "2.32.iv", res_a, tol);
    return rep;
}

ResidualReport hypersurface_suite(const InducedStructureData& ind, const ShapeData& sh,
                                  const CovariantCache& cov, double alg_tol, double fd_tol) {
    if (ind.r() != 1) throw WrongCodimensionError("hypersurface suite requires codimension 1");
    ResidualReport rep;
    const std::string suite = "codim1";
    if (ind.epsilon != 1) {
        rep.add_gated(suite, "6.3", "requires epsilon = +1");
        return rep;
    }
    const int n = ind.n();
    const double a = ind.A_mat(0, 0);
    const Vec u = ind.u.row(0);
    const Vec xi = ind.xi.col(0);
    const Mat& P = ind.P_tan;
    const Mat& A = sh.A[0];
    const Mat In = Mat::identity(n);

    rep.add(suite, "6.3.i", max_abs(P * P - (In - outer(xi, u))), alg_tol);
    {
        Vec up(n);
        for (int j = 0; j < n; ++j) up[j] = dot(u, P.col(j)) + a * u[j];
        rep.add(suite, "6.3.ii", max_abs(up), alg_tol);
    }
    rep.add(suite, "6.3.iii", std::abs(dot(u, xi) - (1.0 - a * a)), alg_tol);
    rep.add(suite, "6.3.iv", max_abs(P * xi + xi * a), alg_tol);
    rep.add(suite, "6.4.i", max_abs(ind.u - transpose(ind.xi)), alg_tol);
    rep.add(suite, "6.4.ii", max_abs(transpose(P) * P - In + outer(u, u)), alg_tol);

    // Covariant identities in hypersurface form.
    double r_i = 0, r_ii = 0, r_iii = 0, r_iv = 0, r_kill = 0;
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            Vec ek(n);
            ek[k] = 1.0;
            Vec rhs = A.col(k) * u[j] + xi * sh.h[0](k, j);
            r_i = std::max(r_i, max_abs(cov.dP[k].col(j) - rhs));
            const double rhs_u = -dot(A.col(k), P.col(j)) + a * sh.h[0](k, j);
            r_ii = std::max(r_ii, std::abs(cov.du[k](0, j) - rhs_u));
        }
        Vec rhs_xi = P * A.col(k) * (-1.0) + A.col(k) * a;
        r_iii = std::max(r_iii, max_abs(cov.dxi[k].col(0) - rhs_xi));
        r_iv = std::max(r_iv, std::abs(cov.da[k](0, 0) + 2.0 * dot(u, A.col(k))));
    }
    const Mat killing_op = A * (2.0 * a) - P * A - A * P;
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            const double lhs = cov.dxi[j](l, 0) + cov.dxi[l](j, 0);
            r_kill = std::max(r_kill, std::abs(lhs - killing_op(l, j)));
        }
    rep.add(suite, "6.7.i", r_i, fd_tol);
    rep.add(suite, "6.7.ii", r_ii, fd_tol);
    rep.add(suite, "6.7.iii", r_iii, fd_tol);
    rep.add(suite, "6.7.iv", r_iv, fd_tol);
    rep.add(suite, "6.10", r_kill, fd_tol);

    const double killing_defect = max_abs(killing_op);
    const bool is_killing = killing_defect <= 10.0 * fd_tol;
    {
        auto& rec = rep.add_gated(suite, "6.9", "predicate");
        rec.details.push_back({"killing_defect", killing_defect});
        rec.details.push_back({"is_killing", is_killing ? 1.0 : 0.0});
    }

    // Umbilical fit and its consequences.
    const double lambda = trace(A) / n;
    const double umb_dev = max_abs(A - In * lambda);
    const bool umbilical = umb_dev <= 10.0 * fd_tol;
    {
        auto& rec = rep.add_gated(suite, "umbilical", "diagnostic");
        rec.details.push_back({"lambda", lambda});
        rec.details.push_back({"deviation", umb_dev});
    }
    if (umbilical) {
        double u_i = 0, u_ii = 0, u_iii = 0, u_iv = 0;
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) {
                Vec ek(n);
                ek[k] = 1.0;
                Vec rhs = ek * (lambda * u[j]) + xi * (lambda * (k == j ? 1.0 : 0.0));
                u_i = std::max(u_i, max_abs(cov.dP[k].col(j) - rhs));
                const double rhs_u = -lambda * P(k, j) + a * lambda * (k == j ? 1.0 : 0.0);
                u_ii = std::max(u_ii, std::abs(cov.du[k](0, j) - rhs_u));
            }
            Vec ek(n);
            ek[k] = 1.0;
            u_iii = std::max(u_iii,
                             max_abs(cov.dxi[k].col(0) + P.col(k) * lambda - ek * (a * lambda)));
            u_iv = std::max(u_iv, std::abs(cov.da[k](0, 0) + 2.0 * lambda * u[k]));
        }
        // nabla_xi xi = 2 a lambda xi
        Vec nxx(n);
        for (int k = 0; k < n; ++k) nxx += cov.dxi[k].col(0) * xi[k];
        u_iii = std::max(u_iii, max_abs(nxx - xi * (2.0 * a * lambda)));
        rep.add(suite, "6.19.i", u_i, fd_tol);
        rep.add(suite, "6.19.ii", u_ii, fd_tol);
        rep.add(suite, "6.19.iii", u_iii, fd_tol);
        rep.add(suite, "6.19.iv", u_iv, fd_tol);

        double c_i = 0, c_ii = 0, c_iii = 0;
        for (int k = 0; k < n; ++k) {
            Vec ek(n);
            ek[k] = 1.0;
            Vec dpxi(n);  // (nabla_{T_k} P)(xi)
            for (int j = 0; j < n; ++j) dpxi += cov.dP[k].col(j) * xi[j];
            // lambda (1 - a^2) X + lambda u(X) xi; the u(X) term drops
            // exactly on the orthogonal complement of xi
            c_i = std::max(c_i,
                           max_abs(dpxi - ek * (lambda * (1.0 - a * a)) - xi * (lambda * u[k])));
            Vec dxiP(n);  // (nabla_xi P)(T_k)
            for (int j = 0; j < n; ++j) dxiP += cov.dP[j].col(k) * xi[j];
            c_ii = std::max(c_ii, max_abs(dxiP - xi * (2.0 * lambda * u[k])));
            double duxi = 0;  // (nabla_{T_k} u)(xi)
            for (int j = 0; j < n; ++j) duxi += cov.du[k](0, j) * xi[j];
            c_iii = std::max(c_iii, std::abs(duxi - 2.0 * a * lambda * u[k]));
        }
        rep.add(suite, "6.20.i", c_i, fd_tol);
        rep.add(suite, "6.20.ii", c_ii, fd_tol);
        rep.add(suite, "6.20.iii", c_iii, fd_tol);

        if (norm(xi) > 1e-9) {
            // Directions orthogonal to xi.
            SplitBasis perp = split_space({xi}, n);
            double o_i = 0, o_ii = 0, o_iii = 0;
            for (const Vec& w : perp.complement) {
                Vec dxiP(n);
                for (int k = 0; k < n; ++k)
                    for (int j = 0; j < n; ++j) dxiP += cov.dP[k].col(j) * (xi[k] * w[j]);
                o_i = std::max(o_i, max_abs(dxiP));
                double duxi = 0;
                for (int k = 0; k < n; ++k)
                    for (int j = 0; j < n; ++j) duxi += cov.du[k](0, j) * w[k] * xi[j];
                o_ii = std::max(o_ii, std::abs(duxi));
                double wa = 0;
                for (int k = 0; k < n; ++k) wa += cov.da[k](0, 0) * w[k];
                o_iii = std::max(o_iii, std::abs(wa));
            }
            rep.add(suite, "6.21.i", o_i, fd_tol);
            rep.add(suite, "6.21.ii", o_ii, fd_tol);
            rep.add(suite, "6.21.iii", o_iii, fd_tol);
        } else {
            rep.add_gated(suite, "6.21.i", "xi vanishes at this point");
            rep.add_gated(suite, "6.21.ii", "xi vanishes at this point");
            rep.add_gated(suite, "6.21.iii", "xi vanishes at this point");
        }

        double div_xi = 0;
        for (int k = 0; k < n; ++k) div_xi += cov.dxi[k](k, 0);
        auto& r22 = rep.add(suite, "6.22", std::abs(div_xi - lambda * (n * a - trace(P))),
                            fd_tol);
        r22.details.push_back({"div_xi", div_xi});
    } else {
        for (const char* id : {"6.19.i", "6.19.ii", "6.19.iii", "6.19.iv", "6.20.i", "6.20.ii",
                               "6.20.iii", "6.21.i", "6.21.ii", "6.21.iii", "6.22"})
            rep.add_gated(suite, id, "not umbilical");
    }

    // Conditional eigen-structure diagnostics: need a normal structure,
    // a Killing xi and a nondegenerate a.
    const double commute_defect = max_abs(P * A - A * P);
    const bool commutes = commute_defect <= 10.0 * fd_tol;
    const bool nondegenerate = std::abs(a * a - 1.0) > 1e-8;
    double xi_a = 0;  // xi(a)
    for (int k = 0; k < n; ++k) xi_a += cov.da[k](0, 0) * xi[k];
    if (is_killing && commutes && nondegenerate) {
        const double kappa = xi_a / (2.0 * (a * a - 1.0));
        rep.add(suite, "6.14", max_abs(A * xi - xi * kappa), fd_tol);
        auto& r16 = rep.add(suite, "6.16", std::abs(lambda * n - kappa), fd_tol);
        r16.details.push_back({"k1", kappa});
        rep.add(suite, "6.18", std::abs(trace(A) / n - xi_a / (2.0 * n * (a * a - 1.0))),
                fd_tol);
    } else {
        std::string why;
        if (!is_killing) why += "xi not Killing; ";
        if (!commutes) why += "P and A do not commute; ";
        if (!nondegenerate) why += "degenerate: a^2 = 1; ";
        for (const char* id : {"6.14", "6.16", "6.18"}) {
            auto& rec = rep.add_gated(suite, id, why);
            rec.details.push_back({"xi_a", xi_a});
        }
    }
    {
        auto e = sym_eigen(transpose(A) * A);
        int rank = 0;
        for (std::size_t i = 0; i < e.values.size(); ++i)
            if (std::sqrt(std::max(0.0, e.values[i])) > 10.0 * fd_tol) ++rank;
        auto& rec = rep.add_gated(suite, "rankA", "diagnostic");
        rec.details.push_back({"rank", double(rank)});
    }
    return rep;
}

ResidualReport codim2_suite(const InducedStructureData& ind, const ShapeData& sh,
                            const CovariantCache& cov, double alg_tol, double fd_tol) {
    if (ind.r() != 2) throw WrongCodimensionError("codim2 suite requires codimension 2");
    ResidualReport rep;
    const std::string suite = "codim2";
    if (ind.epsilon != 1) {
        rep.add_gated(suite, "6.23", "requires epsilon = +1");
        return rep;
    }
    const int n = ind.n();
    const Mat& P = ind.P_tan;
    const Mat In = Mat::identity(n);
    const Vec u1 = ind.u.row(0), u2 = ind.u.row(1);
    const Vec xi1 = ind.xi.col(0), xi2 = ind.xi.col(1);
    const double a11 = ind.A_mat(0, 0), a12 = ind.A_mat(0, 1), a22 = ind.A_mat(1, 1);

    rep.add(suite, "6.23.i", max_abs(P * P - (In - outer(xi1, u1) - outer(xi2, u2))), alg_tol);
    {
        Vec e1(n), e2(n);
        for (int j = 0; j < n; ++j) {
            e1[j] = dot(u1, P.col(j)) + a11 * u1[j] + a12 * u2[j];
            e2[j] = dot(u2, P.col(j)) + a12 * u1[j] + a22 * u2[j];
        }
        rep.add(suite, "6.23.ii", max_abs(e1), alg_tol);
        rep.add(suite, "6.23.iii", max_abs(e2), alg_tol);
    }
    rep.add(suite, "6.23.iv", std::abs(dot(u1, xi1) - (1.0 - a11 * a11 - a12 * a12)), alg_tol);
    rep.add(suite, "6.23.v", std::abs(dot(u2, xi2) - (1.0 - a12 * a12 - a22 * a22)), alg_tol);
    rep.add(suite, "6.23.vi",
            std::max(std::abs(dot(u1, xi2) + a12 * (a11 + a22)),
                     std::abs(dot(u2, xi1) + a12 * (a11 + a22))),
            alg_tol);
    rep.add(suite, "6.23.vii", max_abs(P * xi1 + xi1 * a11 + xi2 * a12), alg_tol);
    rep.add(suite, "6.23.viii", max_abs(P * xi2 + xi1 * a12 + xi2 * a22), alg_tol);
    rep.add(suite, "6.23.ix",
            max_abs(transpose(P) * P - In + outer(u1, u1) + outer(u2, u2)), alg_tol);

    double l_norm = 0;
    for (const Mat& lm : sh.l) l_norm = std::max(l_norm, max_abs(lm));
    {
        auto& rec = rep.add_gated(suite, "l_zero", "hypothesis flag");
        rec.details.push_back({"l_norm", l_norm});
        rec.details.push_back({"holds", l_norm <= fd_tol ? 1.0 : 0.0});
    }
    const double tr = a11 + a22;
    {
        auto& rec = rep.add_gated(suite, "trace_A", "hypothesis flag");
        rec.details.push_back({"trace", tr});
    }
    if (std::abs(tr) > alg_tol) {
        for (const char* id : {"6.24.i", "6.24.ii", "6.24.iii", "6.24.iv", "6.24.v", "6.24.vi",
                               "6.25", "6.26.i", "6.26.ii", "6.27.i", "6.27.ii", "6.28.i",
                               "6.28.ii"})
            rep.add_gated(suite, id, "trace of the a-matrix is not zero");
        return rep;
    }

    const double a = a11, b = a12;
    const double sigma_len = 1.0 - a * a - b * b;
    {
        auto& rec = rep.add_gated(suite, "sigma_len", "value");
        rec.details.push_back({"sigma_len", sigma_len});
    }
    rep.add(suite, "6.24.i",
            std::max({std::abs(dot(u1, xi1) - sigma_len), std::abs(dot(u2, xi2) - sigma_len),
                      std::abs(dot(xi1, xi1) - sigma_len), std::abs(dot(xi2, xi2) - sigma_len)}),
            alg_tol);
    rep.add(suite, "6.24.ii",
            std::max({std::abs(dot(u2, xi1)), std::abs(dot(u1, xi2)),
                      std::abs(dot(xi1, xi2))}),
            alg_tol);
    {
        Vec e3(n), e4(n);
        for (int j = 0; j < n; ++j) {
            e3[j] = dot(u1, P.col(j)) + a * u1[j] + b * u2[j];
            e4[j] = dot(u2, P.col(j)) + b * u1[j] - a * u2[j];
        }
        rep.add(suite, "6.24.iii", max_abs(e3), alg_tol);
        rep.add(suite, "6.24.iv", max_abs(e4), alg_tol);
    }
    rep.add(suite, "6.24.v", max_abs(P * xi1 + xi1 * a + xi2 * b), alg_tol);
    rep.add(suite, "6.24.vi", max_abs(P * xi2 + xi1 * b - xi2 * a), alg_tol);

    if (l_norm > fd_tol) {
        for (const char* id : {"6.25", "6.26.i", "6.26.ii", "6.27.i", "6.27.ii", "6.28.i",
                               "6.28.ii"})
            rep.add_gated(suite, id, "normal connection does not vanish");
        return rep;
    }
    const Mat& A1 = sh.A[0];
    const Mat& A2 = sh.A[1];
    double r25 = 0, r26a = 0, r26b = 0, r27a = 0, r27b = 0, r28a = 0, r28b = 0;
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            Vec rhs = xi1 * sh.h[0](k, j) + xi2 * sh.h[1](k, j) + A1.col(k) * u1[j] +
                      A2.col(k) * u2[j];
            r25 = std::max(r25, max_abs(cov.dP[k].col(j) - rhs));
            const double rhs1 = -dot(A1.col(k), P.col(j)) + a * sh.h[0](k, j) +
                                b * sh.h[1](k, j);
            const double rhs2 = -dot(A2.col(k), P.col(j)) + b * sh.h[0](k, j) -
                                a * sh.h[1](k, j);
            r26a = std::max(r26a, std::abs(cov.du[k](0, j) - rhs1));
            r26b = std::max(r26b, std::abs(cov.du[k](1, j) - rhs2));
        }
        r27a = std::max(r27a, max_abs(cov.dxi[k].col(0) -
                                      (P * A1.col(k) * (-1.0) + A1.col(k) * a +
                                       A2.col(k) * b)));
        r27b = std::max(r27b, max_abs(cov.dxi[k].col(1) -
                                      (P * A2.col(k) * (-1.0) + A1.col(k) * b -
                                       A2.col(k) * a)));
        r28a = std::max(r28a, std::abs(cov.da[k](0, 0) + 2.0 * dot(A1.col(k), xi1)));
        r28b = std::max(r28b, std::abs(cov.da[k](0, 1) + dot(A1.col(k), xi2) +
                                       dot(A2.col(k), xi1)));
    }
    rep.add(suite, "6.25", r25, fd_tol);
    rep.add(suite, "6.26.i", r26a, fd_tol);
    rep.add(suite, "6.26.ii", r26b, fd_tol);
    rep.add(suite, "6.27.i", r27a, fd_tol);
    rep.add(suite, "6.27.ii", r27b, fd_tol);
    rep.add(suite, "6.28.i", r28a, fd_tol);
    rep.add(suite, "6.28.ii", r28b, fd_tol);
    return rep;
}

} // namespace isl
