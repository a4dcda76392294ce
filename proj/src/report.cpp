#include "neutral4/report.hpp"

#include <algorithm>
#include <cstdio>

namespace neutral4 {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CheckReport::note(const std::string& key, double value) {
    notes.emplace_back(key, format_double(value));
}

void CheckReport::note(const std::string& key, const std::string& value) {
    notes.emplace_back(key, value);
}

void CheckReport::finish(double tol) {
    tolerance = tol;
    if (!per_point.empty()) {
        max_residual = 0.0;
        for (double r : per_point) max_residual = std::max(max_residual, r);
        samples = static_cast<int>(per_point.size());
    }
    pass = max_residual < tol;
}

void RunReport::finalize() {
    pass = true;
    for (const auto& c : checks) pass = pass && c.pass;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
}

void append_kv_list(std::string& out, const std::vector<std::pair<std::string, std::string>>& kvs) {
    out += '{';
    bool first = true;
    for (const auto& [k, v] : kvs) {
        if (!first) out += ',';
        first = false;
        append_escaped(out, k);
        out += ':';
        append_escaped(out, v);
    }
    out += '}';
}

} // namespace

std::string to_json(const RunReport& report) {
    std::string out;
    out.reserve(4096);
    out += "{\"schema\":" + std::to_string(report.schema);
    out += ",\"tool_version\":";
    append_escaped(out, report.tool_version);
    out += ",\"suite\":";
    append_escaped(out, report.suite);
    out += ",\"geometry\":";
    append_escaped(out, report.geometry);
    out += ",\"samples\":" + std::to_string(report.samples);
    out += ",\"seed\":" + std::to_string(report.seed);
    out += ",\"seeded\":" + std::string(report.seeded ? "true" : "false");
    out += ",\"params\":";
    append_kv_list(out, report.resolved_params);
    out += ",\"tolerances\":";
    append_kv_list(out, report.tolerances);
    out += ",\"checks\":[";
    bool first = true;
    for (const auto& c : report.checks) {
        if (!first) out += ',';
        first = false;
        out += "{\"name\":";
        append_escaped(out, c.name);
        out += ",\"tolerance\":" + format_double(c.tolerance);
        out += ",\"samples\":" + std::to_string(c.samples);
        out += ",\"max_residual\":" + format_double(c.max_residual);
        out += ",\"pass\":" + std::string(c.pass ? "true" : "false");
        out += ",\"per_point\":[";
        for (size_t i = 0; i < c.per_point.size(); ++i) {
            if (i) out += ',';
            out += format_double(c.per_point[i]);
        }
        out += "],\"notes\":";
        append_kv_list(out, c.notes);
        out += '}';
    }
    out += "],\"pass\":" + std::string(report.pass ? "true" : "false");
    out += "}\n";
    return out;
}

std::string to_text(const RunReport& report) {
    std::string out;
    out += "suite " + report.suite + " on " + report.geometry;
    out += " (samples=" + std::to_string(report.samples) + ", seed=" + std::to_string(report.seed);
    if (!report.seeded) out += " [entropy-drawn]";
    out += ")\n";
    for (const auto& c : report.checks) {
        char line[256];
        std::snprintf(line, sizeof(line), "  [%s] %-48s max residual %.3e (tol %.1e)\n",
                      c.pass ? "PASS" : "FAIL", c.name.c_str(), c.max_residual, c.tolerance);
        out += line;
        for (const auto& [k, v] : c.notes) out += "         " + k + " = " + v + "\n";
    }
    char tail[128];
    std::snprintf(tail, sizeof(tail), "overall: %s (%.3f s)\n", report.pass ? "PASS" : "FAIL",
                  report.wall_seconds);
    out += tail;
    return out;
}

} // namespace neutral4
