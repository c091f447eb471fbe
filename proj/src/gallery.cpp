#include "isl/gallery.hpp"

#include <cmath>

namespace isl {

GalleryExample GalleryExample::ex1(int p, double R) {
    if (p < 2) throw InvalidParamsError("ex1 requires p >= 2");
    return GalleryExample{GalleryId::Ex1SphereSwap, p,  0, R, 0, 0,
                          AmbientStructure::swap(p), ImplicitSubmanifold::sphere(2 * p, R)};
}

GalleryExample GalleryExample::ex2(int p, double r1, double r2) {
    if (std::abs(r1 * r1 + r2 * r2 - 1.0) > 1e-12)
        throw InvalidParamsError("ex2 requires r1^2 + r2^2 = 1");
    return GalleryExample{GalleryId::Ex2ProductSpheres,
                          p,
                          0,
                          1.0,
                          r1,
                          r2,
                          AmbientStructure::swap(p),
                          ImplicitSubmanifold::product_spheres(p, r1, r2)};
}

GalleryExample GalleryExample::ex3(int p, double R) {
    return GalleryExample{GalleryId::Ex3OddSphere,
                          p,
                          0,
                          R,
                          0,
                          0,
                          AmbientStructure::fixed_axis_swap(p),
                          ImplicitSubmanifold::sphere(2 * p + 1, R)};
}

GalleryExample GalleryExample::ex4(int p, int q, double R) {
    return GalleryExample{GalleryId::Ex4ReflectionSphere,
                          p,
                          q,
                          R,
                          0,
                          0,
                          AmbientStructure::reflection(p, q),
                          ImplicitSubmanifold::sphere(p + q, R)};
}

GalleryExample GalleryExample::from_name(const std::string& name) {
    if (name == "ex1") return ex1();
    if (name == "ex2") return ex2();
    if (name == "ex3") return ex3();
    if (name == "ex4") return ex4();
    throw InvalidParamsError("unknown gallery id: " + name);
}

std::string GalleryExample::name() const {
    switch (id) {
        case GalleryId::Ex1SphereSwap: return "ex1";
        case GalleryId::Ex2ProductSpheres: return "ex2";
        case GalleryId::Ex3OddSphere: return "ex3";
        case GalleryId::Ex4ReflectionSphere: return "ex4";
    }
    return "?";
}

namespace {

// Assembles structure data from ambient-coordinate formulas by
// contracting with the canonical frame.
InducedStructureData assemble(const PointFrame& f, int epsilon,
                              const std::vector<Vec>& p_of_tangent_cols,
                              const std::vector<Vec>& u_ambient,
                              const std::vector<Vec>& xi_ambient, const Mat& a_mat) {
    const Mat Tt = transpose(f.T);
    InducedStructureData d;
    d.frame = f;
    d.epsilon = epsilon;
    d.P_tan = Mat(f.n(), f.n());
    for (int j = 0; j < f.n(); ++j) d.P_tan.set_col(j, Tt * p_of_tangent_cols[j]);
    d.u = Mat(f.r(), f.n());
    for (int a = 0; a < f.r(); ++a) {
        Vec row = Tt * u_ambient[a];
        for (int j = 0; j < f.n(); ++j) d.u(a, j) = row[j];
    }
    d.xi = Mat(f.n(), f.r());
    for (int a = 0; a < f.r(); ++a) d.xi.set_col(a, Tt * xi_ambient[a]);
    d.A_mat = a_mat;
    return d;
}

} // namespace

InducedStructureData closed_form_structure(const GalleryExample& ex, const Vec& x) {
    ex.manifold.require_on_manifold(x);
    const PointFrame f = frames_at(ex.manifold, x);
    const int p = ex.p;
    const double R = ex.R;

    switch (ex.id) {
        case GalleryId::Ex1SphereSwap: {
            double sig = 0.0;
            for (int i = 0; i < p; ++i) sig += x[i] * x[p + i];
            const double a = 2.0 * sig / (R * R);
            Vec xi(2 * p), u(2 * p);
            for (int i = 0; i < p; ++i) {
                xi[i] = (x[p + i] - a * x[i]) / R;
                xi[p + i] = (x[i] - a * x[p + i]) / R;
                u[i] = x[p + i] / R;
                u[p + i] = x[i] / R;
            }
            std::vector<Vec> pcols;
            for (int j = 0; j < f.n(); ++j) {
                Vec X = f.T.col(j);
                Vec px(2 * p);
                const double ux = dot(u, X);
                for (int i = 0; i < p; ++i) {
                    px[i] = X[p + i] - ux * x[i] / R;
                    px[p + i] = X[i] - ux * x[p + i] / R;
                }
                pcols.push_back(px);
            }
            Mat a_mat(1, 1);
            a_mat(0, 0) = a;
            return assemble(f, +1, pcols, {u}, {xi}, a_mat);
        }
        case GalleryId::Ex3OddSphere: {
            const int ti = p;  // index of the fixed axis
            double sig = 0.0;
            for (int i = 0; i < p; ++i) sig += x[i] * x[p + 1 + i];
            const double t = x[ti];
            const double a = (2.0 * sig + t * t) / (R * R);
            Vec xi(2 * p + 1), u(2 * p + 1);
            for (int i = 0; i < p; ++i) {
                xi[i] = (x[p + 1 + i] - a * x[i]) / R;
                xi[p + 1 + i] = (x[i] - a * x[p + 1 + i]) / R;
                u[i] = x[p + 1 + i] / R;
                u[p + 1 + i] = x[i] / R;
            }
            xi[ti] = t * (1.0 - a) / R;
            u[ti] = t / R;
            std::vector<Vec> pcols;
            for (int j = 0; j < f.n(); ++j) {
                Vec X = f.T.col(j);
                Vec px(2 * p + 1);
                const double ux = dot(u, X);
                for (int i = 0; i < p; ++i) {
                    px[i] = X[p + 1 + i] - ux * x[i] / R;
                    px[p + 1 + i] = X[i] - ux * x[p + 1 + i] / R;
                }
                px[ti] = X[ti] - ux * t / R;
                pcols.push_back(px);
            }
            Mat a_mat(1, 1);
            a_mat(0, 0) = a;
            return assemble(f, +1, pcols, {u}, {xi}, a_mat);
        }
        case GalleryId::Ex4ReflectionSphere: {
            const int q = ex.q;
            double a = 0.0;
            for (int i = 0; i < p; ++i) a += x[i] * x[i];
            for (int j = 0; j < q; ++j) a -= x[p + j] * x[p + j];
            a /= R * R;
            Vec xi(p + q), u(p + q);
            for (int i = 0; i < p; ++i) {
                xi[i] = (1.0 - a) * x[i] / R;
                u[i] = x[i] / R;
            }
            for (int j = 0; j < q; ++j) {
                xi[p + j] = -(1.0 + a) * x[p + j] / R;
                u[p + j] = -x[p + j] / R;
            }
            std::vector<Vec> pcols;
            for (int j = 0; j < f.n(); ++j) {
                Vec X = f.T.col(j);
                Vec px(p + q);
                const double ux = dot(u, X);
                for (int i = 0; i < p; ++i) px[i] = X[i] - ux * x[i] / R;
                for (int k = 0; k < q; ++k) px[p + k] = -X[p + k] - ux * x[p + k] / R;
                pcols.push_back(px);
            }
            Mat a_mat(1, 1);
            a_mat(0, 0) = a;
            return assemble(f, +1, pcols, {u}, {xi}, a_mat);
        }
        case GalleryId::Ex2ProductSpheres: {
            const double r1 = ex.r1, r2 = ex.r2;
            const double lam = r2 / r1 - r1 / r2;
            double sig = 0.0;
            for (int i = 0; i < p; ++i) sig += x[i] * x[p + i];
            Mat a_mat(2, 2);
            a_mat(0, 0) = 2.0 * sig;
            a_mat(0, 1) = lam * sig;
            a_mat(1, 0) = lam * sig;
            a_mat(1, 1) = -2.0 * sig;

            // xi for the radial normal is the tangential part of the
            // hypersphere field; xi for the second normal comes from the
            // inner decomposition.
            Vec xi_top(2 * p), xi_zero(2 * p), u_sphere(2 * p), u_zero(2 * p);
            for (int i = 0; i < p; ++i) {
                xi_top[i] = x[p + i] - sig / (r1 * r1) * x[i];
                xi_top[p + i] = x[i] - sig / (r2 * r2) * x[p + i];
                xi_zero[i] = sig / (r1 * r2) * x[i] - (r1 / r2) * x[p + i];
                xi_zero[p + i] = (r2 / r1) * x[i] - sig / (r1 * r2) * x[p + i];
                u_sphere[i] = x[p + i];
                u_sphere[p + i] = x[i];
                u_zero[i] = -(r1 / r2) * x[p + i];
                u_zero[p + i] = (r2 / r1) * x[i];
            }
            std::vector<Vec> pcols;
            for (int j = 0; j < f.n(); ++j) {
                Vec X = f.T.col(j);
                double xv = 0.0, uy = 0.0;
                for (int i = 0; i < p; ++i) {
                    xv += x[i] * X[p + i];       // <x-block, V>
                    uy += X[i] * x[p + i];       // <U, y-block>
                }
                Vec px(2 * p);
                for (int i = 0; i < p; ++i) {
                    px[i] = X[p + i] - xv / (r1 * r1) * x[i];
                    px[p + i] = X[i] - uy / (r2 * r2) * x[p + i];
                }
                pcols.push_back(px);
            }
            return assemble(f, +1, pcols, {u_sphere, u_zero}, {xi_top, xi_zero}, a_mat);
        }
    }
    throw InvalidParamsError("unhandled gallery id");
}

ImmersionChain ex2_chain(const GalleryExample& ex) {
    if (ex.id != GalleryId::Ex2ProductSpheres)
        throw InvalidParamsError("chain construction is bound to ex2");
    ImmersionChain chain{ex.ambient, 2 * ex.p, {}};
    chain.links.push_back(sphere_polynomial(2 * ex.p, 1.0));
    chain.links.push_back(block_sphere_polynomial(2 * ex.p, 0, ex.p, ex.r1));
    return chain;
}

InducedStructureData compose_immersions(const ImmersionChain& chain, const Vec& x) {
    if (chain.links.empty()) throw ChainError("chain has no links");
    if (static_cast<int>(x.size()) != chain.m) throw DimensionError("chain point dimension");
    if (chain.ambient.dim() != chain.m) throw DimensionError("chain ambient dimension");
    for (const Polynomial& link : chain.links)
        if (std::abs(poly_eval(link, x)) > 1e-10)
            throw NotOnManifoldError("point violates a chain constraint");

    const int m = chain.m;
    const int r = static_cast<int>(chain.links.size());

    // Processed outermost first: normals[k] is the unit normal of stage
    // k+1 inside stage k; xis[k] is the stage tensor's tangent part,
    // re-projected as the chain descends.
    std::vector<Vec> normals;
    std::vector<Vec> xis;
    Mat a_mat(r, r);

    auto project_off_normals = [&](Vec v) {
        for (const Vec& nrm : normals) v -= nrm * dot(nrm, v);
        return v;
    };

    for (int k = 0; k < r; ++k) {
        Vec grad = poly_gradient(chain.links[k], x);
        Vec nrm = project_off_normals(grad);
        const double len = norm(nrm);
        if (len < 1e-10)
            throw ChainError("link " + std::to_string(k) + " is not codimension 1 in its "
                             "successor at this point");
        nrm *= 1.0 / len;

        // Previous-stage operator applied to the new normal.
        Vec pn = project_off_normals(chain.ambient.apply(nrm));
        a_mat(k, k) = dot(pn, nrm);
        Vec xi_new = pn - nrm * a_mat(k, k);

        for (int b = 0; b < k; ++b) {
            a_mat(k, b) = dot(xis[b], nrm);
            a_mat(b, k) = a_mat(k, b);
            xis[b] -= nrm * a_mat(k, b);
        }
        normals.push_back(nrm);
        xis.push_back(xi_new);
    }

    // Final labels: index 1 is the innermost link.
    std::vector<Vec> n_rev(normals.rbegin(), normals.rend());
    std::vector<Vec> xi_rev(xis.rbegin(), xis.rend());
    Mat a_rev(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) a_rev(i, j) = a_mat(r - 1 - i, r - 1 - j);

    PointFrame f;
    f.x = x;
    f.N = Mat::from_cols(n_rev, m);
    f.T = Mat::from_cols(split_space(n_rev, m).complement, m);

    const Mat Tt = transpose(f.T);
    InducedStructureData d;
    d.frame = f;
    d.epsilon = chain.ambient.epsilon();
    d.A_mat = a_rev;
    d.xi = Mat(f.n(), r);
    d.u = Mat(r, f.n());
    for (int a = 0; a < r; ++a) {
        Vec coords = Tt * xi_rev[a];
        d.xi.set_col(a, coords);
        for (int j = 0; j < f.n(); ++j) d.u(a, j) = coords[j];
    }
    d.P_tan = Mat(f.n(), f.n());
    for (int j = 0; j < f.n(); ++j) d.P_tan.set_col(j, Tt * chain.ambient.apply(f.T.col(j)));
    return d;
}

namespace {

void hypersurface_identity_records(ResidualReport& rep, const std::string& suite,
                                   const InducedStructureData& d, double tol) {
    const int n = d.n();
    const double a = d.A_mat(0, 0);
    const Vec u = d.u.row(0);
    const Vec xi = d.xi.col(0);
    const Mat& P = d.P_tan;
    const Mat In = Mat::identity(n);
    rep.add(suite, "6.3.i", max_abs(P * P - (In - outer(xi, u))), tol);
    Vec up(n);
    for (int j = 0; j < n; ++j) up[j] = dot(u, P.col(j)) + a * u[j];
    rep.add(suite, "6.3.ii", max_abs(up), tol);
    rep.add(suite, "6.3.iii", std::abs(dot(u, xi) - (1.0 - a * a)), tol);
    rep.add(suite, "6.3.iv", max_abs(P * xi + xi * a), tol);
    rep.add(suite, "6.4.i", max_abs(d.u - transpose(d.xi)), tol);
    rep.add(suite, "6.4.ii", max_abs(transpose(P) * P - In + outer(u, u)), tol);
}

void ex2_identity_records(ResidualReport& rep, const std::string& suite,
                          const InducedStructureData& d, double tol) {
    const int n = d.n();
    const Mat& P = d.P_tan;
    const Mat In = Mat::identity(n);
    const Vec u1 = d.u.row(0), u2 = d.u.row(1);
    const Vec xi1 = d.xi.col(0), xi2 = d.xi.col(1);
    const double a11 = d.A_mat(0, 0), a12 = d.A_mat(0, 1), a22 = d.A_mat(1, 1);
    rep.add(suite, "5.12.i", max_abs(P * P - (In - outer(xi1, u1) - outer(xi2, u2))), tol);
    Vec e1(n), e2(n);
    for (int j = 0; j < n; ++j) {
        e1[j] = dot(u1, P.col(j)) + a11 * u1[j] + a12 * u2[j];
        e2[j] = dot(u2, P.col(j)) + a12 * u1[j] + a22 * u2[j];
    }
    rep.add(suite, "5.12.ii", max_abs(e1), tol);
    rep.add(suite, "5.12.iii", max_abs(e2), tol);
    rep.add(suite, "5.12.iv", std::abs(dot(u1, xi1) - (1.0 - a11 * a11 - a12 * a12)), tol);
    rep.add(suite, "5.12.v", std::abs(dot(u2, xi1) + a12 * (a11 + a22)), tol);
    rep.add(suite, "5.12.vi", std::abs(dot(u1, xi2) + a12 * (a11 + a22)), tol);
    rep.add(suite, "5.12.vii", std::abs(dot(u2, xi2) - (1.0 - a12 * a12 - a22 * a22)), tol);
    rep.add(suite, "5.12.viii", max_abs(P * xi1 + xi1 * a11 + xi2 * a12), tol);
    rep.add(suite, "5.12.ix", max_abs(P * xi2 + xi1 * a12 + xi2 * a22), tol);
    rep.add(suite, "5.13.i", max_abs(d.u.row(0) - Vec(transpose(d.xi).row(0))), tol);
    rep.add(suite, "5.13.ii", max_abs(d.u.row(1) - Vec(transpose(d.xi).row(1))), tol);
    rep.add(suite, "5.13.iii", max_abs(transpose(P) - P), tol);
    rep.add(suite, "5.13.iv",
            max_abs(transpose(P) * P - In + outer(u1, u1) + outer(u2, u2)), tol);
}

} // namespace

ResidualReport oracle_crosscheck(const GalleryExample& ex, const std::vector<Vec>& points,
                                 double tol) {
    ResidualReport rep;
    const std::string suite = "crosscheck";
    double dP = 0, dU = 0, dXi = 0, dA = 0, tangency = 0, a12_two = 0;
    ResidualReport identity;
    int index = 0;
    for (const Vec& x : points) {
        InducedStructureData closed = closed_form_structure(ex, x);
        InducedStructureData generic = compute_induced(ex.ambient, closed.frame);
        dP = std::max(dP, max_abs(closed.P_tan - generic.P_tan));
        dU = std::max(dU, max_abs(closed.u - generic.u));
        dXi = std::max(dXi, max_abs(closed.xi - generic.xi));
        dA = std::max(dA, max_abs(closed.A_mat - generic.A_mat));

        // closed-form xi must be tangent to the level set
        Mat j = ex.manifold.jacobian(x);
        for (int a = 0; a < closed.r(); ++a)
            tangency = std::max(tangency, max_abs(j * (closed.frame.T * closed.xi.col(a))));

        ResidualReport per_point;
        if (ex.id == GalleryId::Ex2ProductSpheres) {
            ex2_identity_records(per_point, suite, closed, tol);
            // two routes to the off-diagonal entry
            double sig = 0.0;
            for (int i = 0; i < ex.p; ++i) sig += x[i] * x[ex.p + i];
            const double lam = ex.r2 / ex.r1 - ex.r1 / ex.r2;
            Vec u_amb(2 * ex.p), shear(2 * ex.p);
            for (int i = 0; i < ex.p; ++i) {
                u_amb[i] = x[ex.p + i];
                u_amb[ex.p + i] = x[i];
                shear[i] = (ex.r2 / ex.r1) * x[i];
                shear[ex.p + i] = -(ex.r1 / ex.r2) * x[ex.p + i];
            }
            a12_two = std::max(a12_two, std::abs(dot(u_amb, shear) - lam * sig));
        } else {
            hypersurface_identity_records(per_point, suite, closed, tol);
        }
        identity.merge_point(per_point, index++);
    }
    rep.add(suite, "oracle.P", dP, tol);
    rep.add(suite, "oracle.u", dU, tol);
    rep.add(suite, "oracle.xi", dXi, tol);
    rep.add(suite, "oracle.A", dA, tol);
    rep.add(suite, "oracle.xi-tangency", tangency, 1e-10);
    if (ex.id == GalleryId::Ex2ProductSpheres)
        rep.add(suite, "7.35-7.23", a12_two, 1e-10);
    rep.append(identity);
    return rep;
}

ResidualReport composition_crosscheck(const GalleryExample& ex, const std::vector<Vec>& points,
                                      double tol) {
    ResidualReport rep;
    const std::string suite = "composition";
    const ImmersionChain chain = ex2_chain(ex);
    const double lam = ex.r2 / ex.r1 - ex.r1 / ex.r2;
    double two_path = 0, pattern = 0;
    for (const Vec& x : points) {
        InducedStructureData composed = compose_immersions(chain, x);
        PointFrame canonical = frames_at(ex.manifold, x);
        InducedStructureData direct = compute_induced(ex.ambient, canonical);
        InducedStructureData aligned = align_to_frame(composed, canonical);
        two_path = std::max(two_path, max_abs(aligned.P_tan - direct.P_tan));
        two_path = std::max(two_path, max_abs(aligned.u - direct.u));
        two_path = std::max(two_path, max_abs(aligned.xi - direct.xi));
        two_path = std::max(two_path, max_abs(aligned.A_mat - direct.A_mat));

        double sig = 0.0;
        for (int i = 0; i < ex.p; ++i) sig += x[i] * x[ex.p + i];
        Mat expected(2, 2);
        expected(0, 0) = 2.0 * sig;
        expected(0, 1) = lam * sig;
        expected(1, 0) = lam * sig;
        expected(1, 1) = -2.0 * sig;
        pattern = std::max(pattern, max_abs(direct.A_mat - expected));
        pattern = std::max(pattern, max_abs(aligned.A_mat - expected));
    }
    rep.add(suite, "5.8.two-path", two_path, tol);
    rep.add(suite, "7.36", pattern, tol);
    return rep;
}

} // namespace isl
