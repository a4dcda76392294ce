#pragma once

#include <cstdint>
#include <stdexcept>

#include "neutral4/linalg.hpp"
#include "neutral4/parse.hpp"
#include "neutral4/report.hpp"
#include "neutral4/rng.hpp"

namespace neutral4 {

// A vector field (or 1-form, by covariance of storage) over either backend.
// Coordinate backend: components w.r.t. the chart basis; frame backend:
// components w.r.t. the invariant frame, Exprs in the sampling coordinates
// (constant for the invariant fields the shipped models use).
struct VectorField {
    Backend backend = Backend::Coordinate;
    std::array<Expr, 4> components;

    static VectorField constant(Backend b, const Vec4d& v) {
        VectorField f;
        f.backend = b;
        for (int i = 0; i < 4; ++i) f.components[static_cast<size_t>(i)] = Expr::constant(v[static_cast<size_t>(i)]);
        return f;
    }
};

using OneFormField = VectorField;  // lower-index counterpart, same storage

struct DiffeoMap {
    std::array<Expr, 4> components;  // (x0..x3) -> (x0'..x3')
};

struct SingularMetricError : std::runtime_error {
    SingularMetricError(double cond)
        : std::runtime_error("singular metric (condition estimate " + format_double(cond) + ")"),
          condition_estimate(cond) {}
    double condition_estimate;
};

struct BackendMismatchError : std::runtime_error {
    BackendMismatchError() : std::runtime_error("fields belong to different backends") {}
};

struct ImageOutOfDomainError : std::runtime_error {
    explicit ImageOutOfDomainError(const std::string& why)
        : std::runtime_error("map image outside the domain of definition: " + why) {}
};

class GeometrySpec {
public:
    GeometrySpec() = default;
    // Resolves parameters (document defaults overlaid with `overrides`),
    // evaluates the frame metric, and validates the Jacobi identity.
    explicit GeometrySpec(GeometryDocument doc, const ParamBindings& overrides = {});

    Backend backend() const { return doc_.backend; }
    const GeometryDocument& document() const { return doc_; }
    const ParamBindings& params() const { return params_; }
    const std::string& name() const { return doc_.name; }

    double structure_constant(int k, int i, int j) const { return doc_.structure[k][i][j]; }

    template <typename T>
    Mat4<T> metric_jets(const Vec4d& p) const {
        Mat4<T> g;
        if (doc_.backend == Backend::InvariantFrame) {
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) g[i][j] = T(frame_metric_[i][j]);
            return g;
        }
        for (int i = 0; i < 4; ++i) {
            for (int j = i; j < 4; ++j) {
                g[i][j] = evaluate<T>(doc_.metric[static_cast<size_t>(i)][static_cast<size_t>(j)], p, params_);
                if (j != i) g[j][i] = g[i][j];
            }
        }
        return g;
    }

    Mat4d frame_metric() const { return frame_metric_; }

    std::vector<Vec4d> sample_points(int n, uint64_t seed) const;
    Vec4d domain_center() const;
    double domain_extent(int axis) const;

private:
    GeometryDocument doc_;
    ParamBindings params_;
    Mat4d frame_metric_{};
};

Mat4d metric_at(const GeometrySpec& geom, const Vec4d& p);
Mat4d inverse_metric_at(const GeometrySpec& geom, const Vec4d& p);

template <typename T>
Vec4<T> field_at(const GeometrySpec& geom, const VectorField& field, const Vec4d& p) {
    Vec4<T> out;
    for (int i = 0; i < 4; ++i)
        out[static_cast<size_t>(i)] = evaluate<T>(field.components[static_cast<size_t>(i)], p, geom.params());
    return out;
}

inline Vec4d field_values(const GeometrySpec& geom, const VectorField& field, const Vec4d& p) {
    return field_at<double>(geom, field, p);
}

// Coordinate backend: [X,Y]^k = X^i d_i Y^k - Y^i d_i X^k. Frame backend adds
// the structure-constant term c^k_{ij} X^i Y^j; the directional derivatives
// act on the sampling coordinates (see docs/conventions.md).
VectorField lie_bracket(const GeometrySpec& geom, const VectorField& x, const VectorField& y);

Vec4d apply_map(const GeometrySpec& geom, const DiffeoMap& map, const Vec4d& p);
Mat4d map_jacobian(const GeometrySpec& geom, const DiffeoMap& map, const Vec4d& p);
Mat4d pullback_metric(const GeometrySpec& geom, const DiffeoMap& map, const Vec4d& p);
Vec4d pullback_oneform(const GeometrySpec& geom, const OneFormField& form, const DiffeoMap& map,
                       const Vec4d& p);

CheckReport check_signature(const GeometrySpec& geom, int samples, uint64_t seed);

} // namespace neutral4
