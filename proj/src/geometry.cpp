#include "neutral4/geometry.hpp"

namespace neutral4 {

GeometrySpec::GeometrySpec(GeometryDocument doc, const ParamBindings& overrides)
    : doc_(std::move(doc)) {
    params_ = doc_.default_params();
    for (const auto& [k, v] : overrides) {
        if (!params_.count(k))
            throw std::runtime_error("override for undeclared parameter `" + k + "`");
        params_[k] = v;
    }
    if (doc_.backend == Backend::InvariantFrame) {
        const Vec4d origin{0, 0, 0, 0};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                frame_metric_[i][j] =
                    evaluate<double>(doc_.metric[static_cast<size_t>(i)][static_cast<size_t>(j)], origin, params_);
        // Jacobi identity, exact for shipped geometries
        for (int n = 0; n < 4; ++n)
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    for (int k = j + 1; k < 4; ++k) {
                        double sum = 0.0;
                        for (int m = 0; m < 4; ++m)
                            sum += doc_.structure[m][i][j] * doc_.structure[n][m][k] +
                                   doc_.structure[m][j][k] * doc_.structure[n][m][i] +
                                   doc_.structure[m][k][i] * doc_.structure[n][m][j];
                        if (std::fabs(sum) >= 1e-12)
                            throw std::runtime_error("structure constants violate the Jacobi identity (residual " +
                                                     format_double(sum) + ")");
                    }
    }
}

std::vector<Vec4d> GeometrySpec::sample_points(int n, uint64_t seed) const {
    Xoshiro256pp rng(seed);
    std::vector<Vec4d> pts(static_cast<size_t>(n));
    for (auto& p : pts)
        for (int i = 0; i < 4; ++i)
            p[static_cast<size_t>(i)] =
                rng.uniform(doc_.domain[static_cast<size_t>(i)].first, doc_.domain[static_cast<size_t>(i)].second);
    return pts;
}

Vec4d GeometrySpec::domain_center() const {
    Vec4d c;
    for (int i = 0; i < 4; ++i)
        c[static_cast<size_t>(i)] =
            0.5 * (doc_.domain[static_cast<size_t>(i)].first + doc_.domain[static_cast<size_t>(i)].second);
    return c;
}

double GeometrySpec::domain_extent(int axis) const {
    return doc_.domain[static_cast<size_t>(axis)].second - doc_.domain[static_cast<size_t>(axis)].first;
}

Mat4d metric_at(const GeometrySpec& geom, const Vec4d& p) {
    return geom.metric_jets<double>(p);
}

Mat4d inverse_metric_at(const GeometrySpec& geom, const Vec4d& p) {
    const Mat4d g = metric_at(geom, p);
    Mat4d inv;
    try {
        inv = invert(g);
    } catch (const SingularMatrixError& e) {
        const double pivot = std::max(e.pivot_magnitude, 1e-300);
        throw SingularMetricError(max_abs(g) / pivot);
    }
    // contract: product is the identity to < 1e-12
    const Mat4d prod = inv * g;
    double err = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            err = std::max(err, std::fabs(prod[i][j] - (i == j ? 1.0 : 0.0)));
    if (err >= 1e-8) throw SingularMetricError(max_abs(g) * max_abs(inv));
    return inv;
}

VectorField lie_bracket(const GeometrySpec& geom, const VectorField& x, const VectorField& y) {
    if (x.backend != y.backend || x.backend != geom.backend()) throw BackendMismatchError();
    VectorField out;
    out.backend = x.backend;
    for (int k = 0; k < 4; ++k) {
        Expr acc = Expr::constant(0.0);
        for (int i = 0; i < 4; ++i) {
            acc = fold_add(acc, fold_mul(x.components[static_cast<size_t>(i)],
                                         derivative(y.components[static_cast<size_t>(k)], i)));
            acc = fold_sub(acc, fold_mul(y.components[static_cast<size_t>(i)],
                                         derivative(x.components[static_cast<size_t>(k)], i)));
        }
        if (geom.backend() == Backend::InvariantFrame) {
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    const double c = geom.structure_constant(k, i, j);
                    if (c == 0.0) continue;
                    acc = fold_add(acc, fold_mul(Expr::constant(c),
                                                 fold_mul(x.components[static_cast<size_t>(i)],
                                                          y.components[static_cast<size_t>(j)])));
                }
        }
        out.components[static_cast<size_t>(k)] = acc;
    }
    return out;
}

Vec4d apply_map(const GeometrySpec& geom, const DiffeoMap& map, const Vec4d& p) {
    Vec4d q;
    for (int i = 0; i < 4; ++i)
        q[static_cast<size_t>(i)] = evaluate<double>(map.components[static_cast<size_t>(i)], p, geom.params());
    return q;
}

Mat4d map_jacobian(const GeometrySpec& geom, const DiffeoMap& map, const Vec4d& p) {
    Mat4d jac;
    for (int k = 0; k < 4; ++k) {
        const Jet1 comp = evaluate<Jet1>(map.components[static_cast<size_t>(k)], p, geom.params());
        for (int i = 0; i < 4; ++i) jac[k][i] = comp.g[static_cast<size_t>(i)];
    }
    const double det = det4(jac);
    if (std::fabs(det) <= 1e-12)
        throw std::runtime_error("map Jacobian is singular (|det| = " + format_double(std::fabs(det)) + ")");
    return jac;
}

Mat4d pullback_metric(const GeometrySpec& geom, const DiffeoMap& map, const Vec4d& p) {
    const Vec4d q = apply_map(geom, map, p);
    const Mat4d jac = map_jacobian(geom, map, p);
    Mat4d g_image;
    try {
        g_image = metric_at(geom, q);
    } catch (const ExprDomainError& e) {
        throw ImageOutOfDomainError(e.what());
    }
    Mat4d out = mat4_zero<double>();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) out[i][j] += g_image[k][l] * jac[k][i] * jac[l][j];
    return out;
}

Vec4d pullback_oneform(const GeometrySpec& geom, const OneFormField& form, const DiffeoMap& map,
                       const Vec4d& p) {
    const Vec4d q = apply_map(geom, map, p);
    const Mat4d jac = map_jacobian(geom, map, p);
    Vec4d alpha;
    try {
        alpha = field_at<double>(geom, form, q);
    } catch (const ExprDomainError& e) {
        throw ImageOutOfDomainError(e.what());
    }
    Vec4d out{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] += alpha[static_cast<size_t>(j)] * jac[j][i];
    return out;
}

CheckReport check_signature(const GeometrySpec& geom, int samples, uint64_t seed) {
    CheckReport report;
    report.name = "signature(2,2)";
    const auto points = geom.sample_points(samples, seed);
    report.per_point.reserve(points.size());
    bool noted = false;
    for (const auto& p : points) {
        const auto eig = symmetric_eigenvalues(metric_at(geom, p));
        int pos = 0, neg = 0, null = 0;
        for (double lambda : eig) {
            if (lambda > 1e-10) ++pos;
            else if (lambda < -1e-10) ++neg;
            else ++null;
        }
        const bool ok = pos == 2 && neg == 2;
        report.per_point.push_back(ok ? 0.0 : 1.0);
        if (!ok && !noted) {
            noted = true;
            report.note("violation_point", "(" + format_double(p[0]) + ", " + format_double(p[1]) + ", " +
                                               format_double(p[2]) + ", " + format_double(p[3]) + ")");
            report.note("found_signature",
                        "(" + std::to_string(pos) + "," + std::to_string(neg) +
                            (null ? ",null:" + std::to_string(null) : "") + ")");
        }
    }
    report.finish(0.5);
    return report;
}

} // namespace neutral4
