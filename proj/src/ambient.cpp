#include "isl/ambient.hpp"

namespace isl {

namespace {
constexpr double kStructureTol = 1e-12;
}

AmbientStructure AmbientStructure::swap(int p) {
    if (p < 1) throw InvalidParamsError("swap requires p >= 1");
    const int m = 2 * p;
    Mat q(m, m);
    for (int i = 0; i < p; ++i) {
        q(i, p + i) = 1.0;
        q(p + i, i) = 1.0;
    }
    AmbientStructure s(AmbientKind::Swap, std::move(q), +1);
    s.validate();
    return s;
}

AmbientStructure AmbientStructure::fixed_axis_swap(int p) {
    if (p < 1) throw InvalidParamsError("fixed_axis_swap requires p >= 1");
    const int m = 2 * p + 1;
    Mat q(m, m);
    for (int i = 0; i < p; ++i) {
        q(i, p + 1 + i) = 1.0;
        q(p + 1 + i, i) = 1.0;
    }
    q(p, p) = 1.0;  // the fixed middle axis
    AmbientStructure s(AmbientKind::FixedAxisSwap, std::move(q), +1);
    s.validate();
    return s;
}

AmbientStructure AmbientStructure::reflection(int p, int q_dim) {
    if (p < 1 || q_dim < 1) throw InvalidParamsError("reflection requires p, q >= 1");
    const int m = p + q_dim;
    Mat q(m, m);
    for (int i = 0; i < p; ++i) q(i, i) = 1.0;
    for (int i = p; i < m; ++i) q(i, i) = -1.0;
    AmbientStructure s(AmbientKind::Reflection, std::move(q), +1);
    s.validate();
    return s;
}

AmbientStructure AmbientStructure::custom(Mat m, int epsilon) {
    AmbientStructure s = custom_unchecked(std::move(m), epsilon);
    s.validate();
    return s;
}

AmbientStructure AmbientStructure::custom_unchecked(Mat m, int epsilon) {
    if (m.rows() != m.cols()) throw InvalidParamsError("structure matrix must be square");
    if (epsilon != 1 && epsilon != -1) throw InvalidParamsError("epsilon must be +1 or -1");
    return AmbientStructure(AmbientKind::Custom, std::move(m), epsilon);
}

void AmbientStructure::validate() const {
    ResidualReport rep = check_compatibility();
    if (!rep.all_passed()) {
        std::string what = "ambient structure invariant violated:";
        for (const auto& r : rep.records)
            if (!r.passed()) what += " " + r.id;
        throw InvalidStructureError(what);
    }
}

Vec AmbientStructure::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != dim())
        throw DimensionError("apply: vector dimension mismatch");
    return p_tilde_ * v;
}

ResidualReport AmbientStructure::check_compatibility() const {
    const std::size_t m = p_tilde_.rows();
    const Mat eye = Mat::identity(m);
    const Mat pt = transpose(p_tilde_);
    ResidualReport rep;
    rep.add("compat", "1.1", max_abs(p_tilde_ * p_tilde_ - eye * double(epsilon_)),
            kStructureTol);
    rep.add("compat", "1.2", max_abs(pt * p_tilde_ - eye), kStructureTol);
    rep.add("compat", "1.3", max_abs(pt - p_tilde_ * double(epsilon_)), kStructureTol);
    return rep;
}

} // namespace isl
