#include "isl/induced.hpp"

#include <cmath>

namespace isl {

InducedStructureData compute_induced(const AmbientStructure& s, const PointFrame& f) {
    if (s.dim() != f.m()) throw DimensionError("ambient and frame dimensions differ");
    const int n = f.n(), r = f.r();
    const Mat Tt = transpose(f.T);
    const Mat Nt = transpose(f.N);

    InducedStructureData d;
    d.frame = f;
    d.epsilon = s.epsilon();
    d.P_tan = Mat(n, n);
    d.u = Mat(r, n);
    d.xi = Mat(n, r);
    d.A_mat = Mat(r, r);

    for (int i = 0; i < n; ++i) {
        Vec qt = s.apply(f.T.col(i));
        d.P_tan.set_col(i, Tt * qt);
        Vec nor = Nt * qt;
        for (int a = 0; a < r; ++a) d.u(a, i) = nor[a];
    }
    for (int a = 0; a < r; ++a) {
        Vec qn = s.apply(f.N.col(a));
        d.xi.set_col(a, (Tt * qn) * double(s.epsilon()));
        Vec nor = Nt * qn;
        for (int b = 0; b < r; ++b) d.A_mat(a, b) = nor[b];
    }
    return d;
}

ResidualReport induced_identity_suite(const InducedStructureData& d, double tol) {
    const int n = d.n(), r = d.r();
    const double eps = d.epsilon;
    const Mat In = Mat::identity(n);
    const Mat Ir = Mat::identity(r);
    ResidualReport rep;
    const std::string suite = "thm1_1";

    // P^2 = eps (I - sum_a xi_a u_a)
    rep.add(suite, "1.6.i", max_abs(d.P_tan * d.P_tan - (In - d.xi * d.u) * eps), tol);
    // u_a(P X) = -sum_b a_ba u_b(X)
    rep.add(suite, "1.6.ii", max_abs(d.u * d.P_tan + transpose(d.A_mat) * d.u), tol);
    // a_ab = eps a_ba
    rep.add(suite, "1.6.iii", max_abs(d.A_mat - transpose(d.A_mat) * eps), tol);
    // u_a(xi_b) = <xi_a, xi_b> = delta_ab - eps sum_g a_ag a_gb
    const Mat gram_target = Ir - d.A_mat * d.A_mat * eps;
    rep.add(suite, "1.6.iv.u", max_abs(d.u * d.xi - gram_target), tol);
    rep.add(suite, "1.6.iv.g", max_abs(transpose(d.xi) * d.xi - gram_target), tol);
    // P xi_a = -sum_b a_ab xi_b
    rep.add(suite, "1.6.v", max_abs(d.P_tan * d.xi + d.xi * transpose(d.A_mat)), tol);
    // u_a(X) = <X, xi_a>
    rep.add(suite, "1.7.i", max_abs(d.u - transpose(d.xi)), tol);
    // <P X, Y> = eps <X, P Y>
    rep.add(suite, "1.7.ii", max_abs(transpose(d.P_tan) - d.P_tan * eps), tol);
    // <P X, P Y> = <X, Y> - sum_a u_a(X) u_a(Y)
    rep.add(suite, "1.7.iii",
            max_abs(transpose(d.P_tan) * d.P_tan - In + transpose(d.u) * d.u), tol);
    return rep;
}

namespace {

void require_orthogonal(const Mat& k, double tol) {
    if (k.rows() != k.cols()) throw NotOrthogonalError("rotation matrix must be square");
    if (max_abs(transpose(k) * k - Mat::identity(k.rows())) > tol)
        throw NotOrthogonalError("frame rotation is not orthogonal");
}

} // namespace

InducedStructureData rotate_normal_frame(const AmbientStructure& s,
                                         const InducedStructureData& d, const Mat& K) {
    require_orthogonal(K, 1e-10);
    if (static_cast<int>(K.rows()) != d.r())
        throw DimensionError("rotation size must match codimension");
    PointFrame f = d.frame;
    f.N = d.frame.N * transpose(K);  // N'_a = sum_g K(a,g) N_g
    return compute_induced(s, f);
}

InducedStructureData transform_components(const InducedStructureData& d, const Mat& K) {
    require_orthogonal(K, 1e-10);
    InducedStructureData out = d;
    out.frame.N = d.frame.N * transpose(K);
    out.u = K * d.u;
    out.xi = d.xi * transpose(K);
    out.A_mat = K * d.A_mat * transpose(K);
    return out;
}

InducedStructureData align_to_frame(const InducedStructureData& d, const PointFrame& target,
                                    double tol) {
    if (target.m() != d.frame.m() || target.n() != d.n() || target.r() != d.r())
        throw DimensionError("alignment frames differ in shape");
    if (max_abs(target.x - d.frame.x) > 1e-9)
        throw InvalidParamsError("alignment frames sit at different points");
    // Normal change of basis and tangent change of basis.
    Mat K = transpose(target.N) * d.frame.N;
    Mat R = transpose(target.T) * d.frame.T;
    if (max_abs(transpose(K) * K - Mat::identity(d.r())) > tol ||
        max_abs(transpose(R) * R - Mat::identity(d.n())) > tol)
        throw NotOrthogonalError("frames do not span the same spaces");
    InducedStructureData out = d;
    out.frame = target;
    out.P_tan = R * d.P_tan * transpose(R);
    out.u = K * d.u * transpose(R);
    out.xi = R * d.xi * transpose(K);
    out.A_mat = K * d.A_mat * transpose(K);
    return out;
}

Classification classify_structure(const InducedStructureData& d, double tol) {
    Classification c;
    c.a_norm = max_abs(d.A_mat);
    c.cubic_residual = 0.0;
    const Mat p3 = d.P_tan * d.P_tan * d.P_tan;
    if (c.a_norm <= tol) {
        if (d.epsilon == 1) {
            c.tag = StructureClass::AlmostRParacontact;
            c.name = d.r() == 1 ? "almost paracontact" : "almost r-paracontact";
            c.cubic_residual = max_abs(p3 - d.P_tan);
        } else {
            c.tag = StructureClass::AlmostRContact;
            c.name = d.r() == 1 ? "almost contact" : "almost r-contact";
            c.cubic_residual = max_abs(p3 + d.P_tan);
        }
    } else {
        c.tag = StructureClass::GeneralAEF;
        c.name = d.epsilon == 1 ? "(a,1)f structure" : "(a,-1)f structure";
    }
    return c;
}

ResidualReport distribution_check(const InducedStructureData& d, double tol) {
    const int n = d.n(), r = d.r();
    ResidualReport rep;
    const std::string suite = "thm1_1";

    // D = common kernel of the u_a, computed as the orthogonal complement
    // of the span of the u rows (u_a is dual to xi_a).
    std::vector<Vec> urows;
    int degenerate = 0;
    for (int a = 0; a < r; ++a) {
        Vec row = d.u.row(a);
        if (norm(row) <= 1e-9)
            ++degenerate;
        else
            urows.push_back(row);
    }
    SplitBasis basis = split_space(urows, n, 1e-10);
    const int dim_d = static_cast<int>(basis.complement.size());

    double inv_res = 0.0, square_res = 0.0, metric_res = 0.0, orth_res = 0.0;
    for (const Vec& xc : basis.complement) {
        Vec px = d.P_tan * xc;
        inv_res = std::max(inv_res, max_abs(d.u * px));
        square_res = std::max(square_res, max_abs(d.P_tan * px - xc * double(d.epsilon)));
        for (int a = 0; a < r; ++a)
            orth_res = std::max(orth_res, std::abs(dot(d.xi.col(a), xc)));
        for (const Vec& yc : basis.complement) {
            Vec py = d.P_tan * yc;
            metric_res = std::max(metric_res, std::abs(dot(px, py) - dot(xc, yc)));
        }
    }
    auto& r1 = rep.add(suite, "1.14", inv_res, tol);
    r1.details.push_back({"dim_D", double(dim_d)});
    r1.details.push_back({"degenerate_xi", double(degenerate)});
    if (degenerate > 0 && r1.note.empty()) r1.note = "vanishing xi directions present";
    rep.add(suite, "1.16", square_res, tol);
    rep.add(suite, "1.17", metric_res, tol);
    rep.add(suite, "1.15", orth_res, tol);  // xi_a orthogonal to D
    return rep;
}

} // namespace isl
