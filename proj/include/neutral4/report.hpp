#pragma once

#include <string>
#include <vector>

namespace neutral4 {

// One named property checked at sampled points. `per_point` holds the
// per-point worst residual in sample order; notes carry pinned scalars and
// flags that golden files compare field-by-field.
struct CheckReport {
    std::string name;
    double tolerance = 0.0;
    int samples = 0;
    double max_residual = 0.0;
    bool pass = false;
    std::vector<double> per_point;
    std::vector<std::pair<std::string, std::string>> notes;

    void note(const std::string& key, double value);
    void note(const std::string& key, const std::string& value);
    void finish(double tol);  // sets max_residual from per_point (if any) and verdict
};

struct RunReport {
    std::string tool_version;
    int schema = 1;
    std::string suite;
    std::string geometry;
    int samples = 0;
    unsigned long long seed = 0;
    bool seeded = true;  // false when drawn from entropy (interactive, unseeded)
    std::vector<std::pair<std::string, std::string>> resolved_params;
    std::vector<std::pair<std::string, std::string>> tolerances;
    std::vector<CheckReport> checks;
    bool pass = false;
    double wall_seconds = 0.0;  // text output only, never serialized to JSON

    void finalize();  // overall verdict
};

std::string format_double(double v);  // canonical %.17g

// Deterministic JSON bytes: fixed field order, %.17g floats, no wall time.
std::string to_json(const RunReport& report);

// Human-readable text (includes wall time).
std::string to_text(const RunReport& report);

} // namespace neutral4
