#include "neutral4/parse.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace neutral4 {

namespace {

bool is_function_name(const std::string& s, UnaryOp* op) {
    if (s == "exp") { *op = UnaryOp::Exp; return true; }
    if (s == "log") { *op = UnaryOp::Log; return true; }
    if (s == "sin") { *op = UnaryOp::Sin; return true; }
    if (s == "cos") { *op = UnaryOp::Cos; return true; }
    if (s == "sqrt") { *op = UnaryOp::Sqrt; return true; }
    if (s == "recip") { *op = UnaryOp::Recip; return true; }
    return false;
}

// ---- expression parser (recursive descent over raw text) ----

class ExprParser {
public:
    ExprParser(const std::string& text, const SymbolTable& symbols)
        : text_(text), symbols_(symbols) {}

    Expr parse() {
        skip_ws();
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("trailing input after expression", pos_);
        return e;
    }

private:
    Expr parse_sum() {
        Expr lhs = parse_product();
        for (;;) {
            skip_ws();
            if (peek() == '+') { ++pos_; lhs = lhs + parse_product(); }
            else if (peek() == '-') { ++pos_; lhs = lhs - parse_product(); }
            else return lhs;
        }
    }

    Expr parse_product() {
        Expr lhs = parse_unary();
        for (;;) {
            skip_ws();
            if (peek() == '*') { ++pos_; lhs = lhs * parse_unary(); }
            else if (peek() == '/') { ++pos_; lhs = lhs / parse_unary(); }
            else return lhs;
        }
    }

    Expr parse_unary() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return -parse_unary();
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            bool parens = false;
            if (peek() == '(') { parens = true; ++pos_; skip_ws(); }
            bool negative = false;
            if (peek() == '-') { negative = true; ++pos_; }
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw ParseError("integer exponent expected after ^", pos_);
            long n = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                n = n * 10 + (peek() - '0');
                ++pos_;
            }
            if (parens) {
                skip_ws();
                expect(')');
            }
            return Expr::pow_int(base, static_cast<int>(negative ? -n : n));
        }
        return base;
    }

    Expr parse_atom() {
        skip_ws();
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            skip_ws();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const size_t start = pos_;
            std::string id = parse_ident();
            UnaryOp op;
            skip_ws();
            if (is_function_name(id, &op)) {
                if (peek() != '(') throw ParseError("`" + id + "` must be called as a function", start);
                ++pos_;
                Expr arg = parse_sum();
                skip_ws();
                expect(')');
                return Expr::unary(op, arg);
            }
            const int axis = symbols_.coord_index(id);
            if (axis >= 0) return Expr::coordinate(axis);
            if (symbols_.params.count(id)) return Expr::parameter(id);
            throw UnknownSymbolError(id, start);
        }
        throw ParseError("unexpected character in expression", pos_);
    }

    Expr parse_number() {
        const size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '.') {
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        if (peek() == 'e' || peek() == 'E') {
            size_t mark = pos_;
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            } else {
                pos_ = mark;  // not an exponent; `e` belongs to the next token
            }
        }
        if (pos_ == start) throw ParseError("number expected", start);
        return Expr::constant(std::strtod(text_.c_str() + start, nullptr));
    }

    std::string parse_ident() {
        const size_t start = pos_;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
        return text_.substr(start, pos_ - start);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void expect(char c) {
        if (peek() != c) throw ParseError(std::string("expected `") + c + "`", pos_);
        ++pos_;
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    const std::string& text_;
    const SymbolTable& symbols_;
    size_t pos_ = 0;
};

} // namespace

Expr parse_expression(const std::string& text, const SymbolTable& symbols) {
    return ExprParser(text, symbols).parse();
}

SymbolTable GeometryDocument::symbols() const {
    SymbolTable t;
    t.coords = coords;
    for (const auto& [k, v] : params) {
        (void)v;
        t.params.insert(k);
    }
    return t;
}

// ---- geometry document parser ----

namespace {

struct Token {
    enum class Kind { Ident, String, Number, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    double number = 0.0;
    size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& current() const { return tok_; }

    void advance() {
        skip_ws_and_comments();
        tok_.offset = pos_;
        if (pos_ >= src_.size()) { tok_.kind = Token::Kind::End; tok_.text.clear(); return; }
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            tok_.kind = Token::Kind::Ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
            ((c == '-' || c == '+') && pos_ + 1 < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) || src_[pos_ + 1] == '.'))) {
            const size_t start = pos_;
            if (c == '-' || c == '+') ++pos_;
            while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E' ||
                                          ((src_[pos_] == '+' || src_[pos_] == '-') &&
                                           (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E'))))
                ++pos_;
            tok_.kind = Token::Kind::Number;
            tok_.text = src_.substr(start, pos_ - start);
            tok_.number = std::strtod(tok_.text.c_str(), nullptr);
            return;
        }
        if (c == '"') {
            const size_t start = ++pos_;
            while (pos_ < src_.size() && src_[pos_] != '"') ++pos_;
            if (pos_ >= src_.size()) throw ParseError("unterminated string literal", start - 1);
            tok_.kind = Token::Kind::String;
            tok_.text = src_.substr(start, pos_ - start);
            ++pos_;
            return;
        }
        tok_.kind = Token::Kind::Punct;
        tok_.text = std::string(1, c);
        ++pos_;
    }

private:
    void skip_ws_and_comments() {
        for (;;) {
            while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (pos_ < src_.size() && src_[pos_] == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
                continue;
            }
            return;
        }
    }

    const std::string& src_;
    size_t pos_ = 0;
    Token tok_;
};

class DocParser {
public:
    explicit DocParser(const std::string& src) : lex_(src), src_(src) {}

    GeometryDocument parse() {
        expect_ident("geometry");
        doc_.name = expect_string();
        expect_punct("{");
        // defaults
        for (int i = 0; i < 4; ++i) doc_.domain[static_cast<size_t>(i)] = {-10.0, 10.0};
        bool saw_backend = false;
        while (!at_punct("}")) {
            const Token tok = lex_.current();
            if (tok.kind != Token::Kind::Ident)
                throw ParseError("statement keyword expected", tok.offset);
            const std::string& kw = tok.text;
            if (kw == "backend") { parse_backend(); saw_backend = true; }
            else if (kw == "coords") parse_coords();
            else if (kw == "frame") parse_frame();
            else if (kw == "domain") parse_domain();
            else if (kw == "param") parse_param();
            else if (kw == "metric") parse_metric();
            else if (kw == "bracket") parse_bracket();
            else if (kw == "field") parse_field(doc_.fields, "field");
            else if (kw == "form") parse_field(doc_.forms, "form");
            else throw ParseError("unknown statement `" + kw + "`", tok.offset);
        }
        expect_punct("}");
        if (!saw_backend) throw ParseError("document lacks a backend statement", 0);
        finalize();
        return doc_;
    }

private:
    void parse_backend() {
        lex_.advance();
        const Token t = lex_.current();
        if (t.kind != Token::Kind::Ident) throw ParseError("backend kind expected", t.offset);
        if (t.text == "coordinate") doc_.backend = Backend::Coordinate;
        else if (t.text == "frame") doc_.backend = Backend::InvariantFrame;
        else throw ParseError("backend must be `coordinate` or `frame`", t.offset);
        lex_.advance();
        expect_punct(";");
    }

    void parse_coords() {
        lex_.advance();
        for (int i = 0; i < 4; ++i) doc_.coords[static_cast<size_t>(i)] = expect_name("coordinate name");
        expect_punct(";");
        has_coords_ = true;
    }

    void parse_frame() {
        lex_.advance();
        for (int i = 0; i < 4; ++i) doc_.frame[static_cast<size_t>(i)] = expect_name("frame name");
        expect_punct(";");
        has_frame_ = true;
    }

    void parse_domain() {
        lex_.advance();
        const size_t at = lex_.current().offset;
        const std::string coord = expect_name("coordinate name");
        pending_domains_.emplace_back(coord, at);
        expect_punct("(");
        const double lo = expect_number();
        expect_punct(",");
        const double hi = expect_number();
        expect_punct(")");
        expect_punct(";");
        if (lo >= hi) throw ParseError("empty domain interval for `" + coord + "`", at);
        pending_domain_values_.push_back({lo, hi});
    }

    void parse_param() {
        lex_.advance();
        const size_t at = lex_.current().offset;
        const std::string name = expect_name("parameter name");
        for (const auto& [k, v] : doc_.params) {
            (void)v;
            if (k == name) throw ParseError("duplicate parameter `" + name + "`", at);
        }
        UnaryOp op;
        if (is_function_name(name, &op)) throw ParseError("`" + name + "` is reserved", at);
        expect_punct("=");
        const double value = expect_number();
        expect_punct(";");
        doc_.params.emplace_back(name, value);
    }

    void parse_metric() {
        lex_.advance();
        if (at_punct("{")) {
            lex_.advance();
            while (!at_punct("}")) {
                expect_punct("[");
                const size_t at_i = lex_.current().offset;
                const int i = static_cast<int>(expect_number());
                expect_punct("]");
                expect_punct("[");
                const int j = static_cast<int>(expect_number());
                expect_punct("]");
                if (i < 0 || i > 3 || j < 0 || j > 3)
                    throw ParseError("metric index out of range (metric is 4x4)", at_i);
                expect_punct("=");
                const Token t = lex_.current();
                if (t.kind != Token::Kind::String)
                    throw ParseError("metric entry must be a quoted expression", t.offset);
                metric_entries_.push_back({i, j, t.text, t.offset});
                lex_.advance();
                expect_punct(";");
            }
            expect_punct("}");
        } else if (lex_.current().kind == Token::Kind::Ident && lex_.current().text == "diag") {
            lex_.advance();
            expect_punct("(");
            for (int i = 0; i < 4; ++i) {
                const double v = expect_number();
                char buf[40];
                std::snprintf(buf, sizeof(buf), "%.17g", v);
                metric_entries_.push_back({i, i, buf, lex_.current().offset});
                if (i < 3) expect_punct(",");
            }
            expect_punct(")");
        } else {
            throw ParseError("metric block or `diag(...)` expected", lex_.current().offset);
        }
        if (at_punct(";")) lex_.advance();
    }

    void parse_bracket() {
        lex_.advance();
        const size_t at = lex_.current().offset;
        expect_punct("[");
        const std::string lhs_i = expect_name("frame name");
        expect_punct(",");
        const std::string lhs_j = expect_name("frame name");
        expect_punct("]");
        expect_punct("=");
        std::array<double, 4> combo = parse_frame_combo();
        expect_punct(";");
        brackets_.push_back({lhs_i, lhs_j, combo, at});
    }

    // `X1 + X3`, `2*X1 - X2`, `-X4`, or a single `0`
    std::array<double, 4> parse_frame_combo() {
        std::array<double, 4> combo{0, 0, 0, 0};
        bool first = true;
        for (;;) {
            double sign = 1.0;
            if (at_punct("+")) { lex_.advance(); }
            else if (at_punct("-")) { sign = -1.0; lex_.advance(); }
            else if (!first) break;
            const Token t = lex_.current();
            if (t.kind == Token::Kind::Number) {
                if (first && t.number == 0.0) {
                    // a lone `0` is the zero combination
                    lex_.advance();
                    return combo;
                }
                const double coeff = t.number;
                lex_.advance();
                expect_punct("*");
                const size_t at = lex_.current().offset;
                const std::string name = expect_name("frame name");
                combo[frame_index(name, at)] += sign * coeff;
            } else if (t.kind == Token::Kind::Ident) {
                const std::string name = t.text;
                lex_.advance();
                combo[frame_index(name, t.offset)] += sign;
            } else {
                throw ParseError("frame combination term expected", t.offset);
            }
            first = false;
            if (!at_punct("+") && !at_punct("-")) break;
        }
        return combo;
    }

    void parse_field(std::vector<FieldDecl>& into, const char* what) {
        lex_.advance();
        const size_t at = lex_.current().offset;
        const std::string name = expect_name("name");
        for (const auto& f : into)
            if (f.name == name)
                throw ParseError(std::string("duplicate ") + what + " `" + name + "`", at);
        expect_punct("=");
        FieldDecl decl;
        decl.name = name;
        if (at_punct("(")) {
            lex_.advance();
            for (int i = 0; i < 4; ++i) {
                const Token t = lex_.current();
                if (t.kind != Token::Kind::String)
                    throw ParseError(std::string(what) + " component must be a quoted expression (4 required)",
                                     t.offset);
                component_texts_.push_back({&into, into.size(), i, t.text, t.offset});
                lex_.advance();
                if (i < 3) expect_punct(",");
            }
            expect_punct(")");
        } else {
            pending_combos_.push_back({&into, into.size(), parse_frame_combo(), at});
        }
        expect_punct(";");
        into.push_back(std::move(decl));
    }

    size_t frame_index(const std::string& name, size_t at) {
        for (size_t i = 0; i < 4; ++i)
            if (doc_.frame[i] == name) return i;
        throw UnknownSymbolError(name, at);
    }

    void finalize() {
        if (doc_.backend == Backend::InvariantFrame && !has_frame_)
            throw ParseError("frame backend requires a frame statement", 0);
        if (doc_.backend == Backend::Coordinate && !has_coords_)
            throw ParseError("coordinate backend requires a coords statement", 0);
        if (!has_coords_)
            doc_.coords = {"q0", "q1", "q2", "q3"};
        // domain statements can name coordinates declared after them
        for (size_t k = 0; k < pending_domains_.size(); ++k) {
            const auto& [coord, at] = pending_domains_[k];
            int idx = -1;
            for (int i = 0; i < 4; ++i)
                if (doc_.coords[static_cast<size_t>(i)] == coord) idx = i;
            if (idx < 0) throw UnknownSymbolError(coord, at);
            doc_.domain[static_cast<size_t>(idx)] = pending_domain_values_[k];
        }
        const SymbolTable table = doc_.symbols();
        // metric entries: parse, enforce symmetry
        std::array<std::array<bool, 4>, 4> given{};
        for (auto& row : doc_.metric)
            for (auto& e : row) e = Expr::constant(0.0);
        for (const auto& me : metric_entries_) {
            Expr e = parse_entry(me.text, table, me.offset);
            const size_t i = static_cast<size_t>(me.i), j = static_cast<size_t>(me.j);
            if (given[i][j] && !structurally_equal(doc_.metric[i][j], e))
                throw ParseError("metric entry [" + std::to_string(me.i) + "][" + std::to_string(me.j) +
                                     "] conflicts with an earlier entry (metric must be symmetric)",
                                 me.offset);
            doc_.metric[i][j] = e;
            given[i][j] = true;
            if (i != j) {
                if (given[j][i] && !structurally_equal(doc_.metric[j][i], e))
                    throw ParseError("metric entries [" + std::to_string(me.i) + "][" + std::to_string(me.j) +
                                         "] and [" + std::to_string(me.j) + "][" + std::to_string(me.i) +
                                         "] are not structurally identical",
                                     me.offset);
                doc_.metric[j][i] = e;
                given[j][i] = true;
            }
        }
        if (doc_.backend == Backend::InvariantFrame) {
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    if (doc_.metric[static_cast<size_t>(i)][static_cast<size_t>(j)].depends_on_coord(0) ||
                        doc_.metric[static_cast<size_t>(i)][static_cast<size_t>(j)].depends_on_coord(1) ||
                        doc_.metric[static_cast<size_t>(i)][static_cast<size_t>(j)].depends_on_coord(2) ||
                        doc_.metric[static_cast<size_t>(i)][static_cast<size_t>(j)].depends_on_coord(3))
                        throw ParseError("frame metric entries must be constant", 0);
        }
        // brackets -> structure constants
        for (const auto& br : brackets_) {
            const size_t i = frame_index(br.i, br.at);
            const size_t j = frame_index(br.j, br.at);
            if (i == j) throw ParseError("bracket of a frame field with itself", br.at);
            for (size_t k = 0; k < 4; ++k) {
                if (bracket_given_[i][j] && doc_.structure[k][i][j] != br.combo[k])
                    throw ParseError("conflicting bracket declarations", br.at);
                doc_.structure[k][i][j] = br.combo[k];
                doc_.structure[k][j][i] = -br.combo[k];
            }
            bracket_given_[i][j] = bracket_given_[j][i] = true;
        }
        // field/form component expressions
        for (const auto& ct : component_texts_) {
            Expr e = parse_entry(ct.text, table, ct.offset);
            (*ct.target)[ct.index].components[static_cast<size_t>(ct.comp)] = e;
        }
        for (const auto& pc : pending_combos_) {
            if (doc_.backend != Backend::InvariantFrame)
                throw ParseError("frame combination used in a coordinate-backend document", pc.at);
            for (int i = 0; i < 4; ++i)
                (*pc.target)[pc.index].components[static_cast<size_t>(i)] =
                    Expr::constant(pc.combo[static_cast<size_t>(i)]);
        }
        // every component must be populated
        for (const auto* group : {&doc_.fields, &doc_.forms})
            for (const auto& f : *group)
                for (const auto& c : f.components)
                    if (!c.valid())
                        throw ParseError("declaration `" + f.name + "` lacks 4 components", 0);
        // names must not collide across coords/frame/params/fields
        check_name_collisions();
    }

    Expr parse_entry(const std::string& text, const SymbolTable& table, size_t at) {
        try {
            return parse_expression(text, table);
        } catch (const UnknownSymbolError& e) {
            throw UnknownSymbolError(e.symbol, at);
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()), at);
        }
    }

    void check_name_collisions() {
        std::set<std::string> seen;
        auto add = [&](const std::string& n, const char* what) {
            if (n.empty()) return;
            if (!seen.insert(n).second)
                throw ParseError(std::string("duplicate name `") + n + "` (" + what + ")", 0);
        };
        for (const auto& c : doc_.coords) add(c, "coordinate");
        if (doc_.backend == Backend::InvariantFrame)
            for (const auto& f : doc_.frame) add(f, "frame");
        for (const auto& [k, v] : doc_.params) { (void)v; add(k, "parameter"); }
        for (const auto& f : doc_.fields) add(f.name, "field");
        for (const auto& f : doc_.forms) add(f.name, "form");
    }

    bool at_punct(const char* p) {
        return lex_.current().kind == Token::Kind::Punct && lex_.current().text == p;
    }
    void expect_punct(const char* p) {
        if (!at_punct(p))
            throw ParseError(std::string("expected `") + p + "`", lex_.current().offset);
        lex_.advance();
    }
    void expect_ident(const char* kw) {
        if (lex_.current().kind != Token::Kind::Ident || lex_.current().text != kw)
            throw ParseError(std::string("expected `") + kw + "`", lex_.current().offset);
        lex_.advance();
    }
    std::string expect_string() {
        if (lex_.current().kind != Token::Kind::String)
            throw ParseError("string literal expected", lex_.current().offset);
        std::string s = lex_.current().text;
        lex_.advance();
        return s;
    }
    std::string expect_name(const char* what) {
        if (lex_.current().kind != Token::Kind::Ident)
            throw ParseError(std::string(what) + " expected", lex_.current().offset);
        std::string s = lex_.current().text;
        lex_.advance();
        return s;
    }
    double expect_number() {
        if (lex_.current().kind != Token::Kind::Number)
            throw ParseError("number expected", lex_.current().offset);
        const double v = lex_.current().number;
        lex_.advance();
        return v;
    }

    struct MetricEntry { int i, j; std::string text; size_t offset; };
    struct BracketDecl { std::string i, j; std::array<double, 4> combo; size_t at; };
    struct ComponentText { std::vector<FieldDecl>* target; size_t index; int comp; std::string text; size_t offset; };
    struct PendingCombo { std::vector<FieldDecl>* target; size_t index; std::array<double, 4> combo; size_t at; };

    Lexer lex_;
    const std::string& src_;
    GeometryDocument doc_;
    bool has_coords_ = false;
    bool has_frame_ = false;
    std::vector<MetricEntry> metric_entries_;
    std::vector<BracketDecl> brackets_;
    std::vector<ComponentText> component_texts_;
    std::vector<PendingCombo> pending_combos_;
    std::vector<std::pair<std::string, size_t>> pending_domains_;
    std::vector<std::pair<double, double>> pending_domain_values_;
    bool bracket_given_[4][4] = {};
};

} // namespace

GeometryDocument parse_geometry(const std::string& document) {
    return DocParser(document).parse();
}

std::string render_geometry(const GeometryDocument& doc) {
    std::string out = "geometry \"" + doc.name + "\" {\n";
    out += doc.backend == Backend::Coordinate ? "  backend coordinate;\n" : "  backend frame;\n";
    out += "  coords";
    for (const auto& c : doc.coords) out += " " + c;
    out += ";\n";
    if (doc.backend == Backend::InvariantFrame) {
        out += "  frame";
        for (const auto& f : doc.frame) out += " " + f;
        out += ";\n";
    }
    char buf[64];
    for (int i = 0; i < 4; ++i) {
        std::snprintf(buf, sizeof(buf), "  domain %s (%.17g, %.17g);\n",
                      doc.coords[static_cast<size_t>(i)].c_str(),
                      doc.domain[static_cast<size_t>(i)].first, doc.domain[static_cast<size_t>(i)].second);
        out += buf;
    }
    for (const auto& [k, v] : doc.params) {
        std::snprintf(buf, sizeof(buf), "  param %s = %.17g;\n", k.c_str(), v);
        out += buf;
    }
    out += "  metric {\n";
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            out += "    [" + std::to_string(i) + "][" + std::to_string(j) + "] = \"" +
                   pretty_print_with_coords(doc.metric[static_cast<size_t>(i)][static_cast<size_t>(j)], doc.coords) +
                   "\";\n";
        }
    out += "  };\n";
    if (doc.backend == Backend::InvariantFrame) {
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                bool any = false;
                for (int k = 0; k < 4; ++k)
                    if (doc.structure[k][i][j] != 0.0) any = true;
                if (!any) continue;
                out += "  bracket [" + doc.frame[static_cast<size_t>(i)] + "," + doc.frame[static_cast<size_t>(j)] + "] =";
                bool first = true;
                for (int k = 0; k < 4; ++k) {
                    const double c = doc.structure[k][i][j];
                    if (c == 0.0) continue;
                    if (c == 1.0) out += (first ? " " : " + ") + doc.frame[static_cast<size_t>(k)];
                    else if (c == -1.0) out += (first ? " -" : " - ") + doc.frame[static_cast<size_t>(k)];
                    else {
                        std::snprintf(buf, sizeof(buf), "%s%.17g*", first ? " " : (c > 0 ? " + " : " - "),
                                      first ? c : std::fabs(c));
                        out += buf;
                        out += doc.frame[static_cast<size_t>(k)];
                    }
                    first = false;
                }
                out += ";\n";
            }
    }
    auto render_group = [&](const std::vector<FieldDecl>& group, const char* kw) {
        for (const auto& f : group) {
            out += std::string("  ") + kw + " " + f.name + " = (";
            for (int i = 0; i < 4; ++i) {
                out += "\"" + pretty_print_with_coords(f.components[static_cast<size_t>(i)], doc.coords) + "\"";
                if (i < 3) out += ", ";
            }
            out += ");\n";
        }
    };
    render_group(doc.fields, "field");
    render_group(doc.forms, "form");
    out += "}\n";
    return out;
}

} // namespace neutral4
