#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "neutral4/expr.hpp"

namespace neutral4 {

struct ParseError : std::runtime_error {
    ParseError(std::string msg, size_t at)
        : std::runtime_error(msg + " (byte offset " + std::to_string(at) + ")"),
          offset(at) {}
    size_t offset;
};

struct UnknownSymbolError : ParseError {
    UnknownSymbolError(const std::string& sym, size_t at)
        : ParseError("unknown symbol `" + sym + "`", at), symbol(sym) {}
    std::string symbol;
};

// Legal names for an expression: up to four coordinates plus named parameters.
struct SymbolTable {
    std::array<std::string, 4> coords{};  // empty string = coordinate unavailable
    std::set<std::string> params;

    int coord_index(const std::string& name) const {
        for (int i = 0; i < 4; ++i)
            if (!coords[static_cast<size_t>(i)].empty() && coords[static_cast<size_t>(i)] == name) return i;
        return -1;
    }
};

Expr parse_expression(const std::string& text, const SymbolTable& symbols);

enum class Backend { Coordinate, InvariantFrame };

struct FieldDecl {
    std::string name;
    std::array<Expr, 4> components;
};

struct GeometryDocument {
    std::string name;
    Backend backend = Backend::Coordinate;
    std::array<std::string, 4> coords{};   // declared coordinates (defaults q0..q3 for frame docs)
    std::array<std::string, 4> frame{};    // frame names (frame backend only)
    std::array<std::pair<double, double>, 4> domain;  // open sampling box per coordinate
    std::vector<std::pair<std::string, double>> params;  // declaration order
    std::array<std::array<Expr, 4>, 4> metric;           // symmetric by construction
    double structure[4][4][4] = {};                      // c^k_{ij}, frame backend
    std::vector<FieldDecl> fields;
    std::vector<FieldDecl> forms;   // 1-forms

    ParamBindings default_params() const {
        ParamBindings b;
        for (const auto& [k, v] : params) b[k] = v;
        return b;
    }
    const FieldDecl* find_field(const std::string& field_name) const {
        for (const auto& f : fields)
            if (f.name == field_name) return &f;
        return nullptr;
    }
    const FieldDecl* find_form(const std::string& form_name) const {
        for (const auto& f : forms)
            if (f.name == form_name) return &f;
        return nullptr;
    }
    SymbolTable symbols() const;
};

GeometryDocument parse_geometry(const std::string& document);

// Serialize back to DSL text (used by the corpus round-trip tests).
std::string render_geometry(const GeometryDocument& doc);

} // namespace neutral4
