#pragma once

#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qgraph/coloring.hpp"

namespace qgraph::io {

// Fixed float formatting for every emitted report and file: 12 significant
// digits, negative zero normalized, so identical inputs produce byte-identical
// output and emit -> parse -> emit is the identity.
inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    if (buf[0] == '-' && buf[1] == '0' && buf[2] == '\0') return "0";
    return buf;
}

inline std::string format_complex_pair(const Complex& z) {
    return format_real(z.real()) + " " + format_real(z.imag());
}

// Text form of a quantum graph: a `blocks:` line followed by exactly one of an
// `adjacency:` section (dim^2 row-major complex entries on the canonical GNS
// basis) or an `sbasis:` section (k spanning operators on L^2(M), row-major),
// plus an optional `name:` line.
struct QGraphFile {
    std::string name;
    std::vector<int> blocks;
    std::optional<Matrix> adjacency;
    std::optional<std::vector<Matrix>> sbasis;
};

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

inline void parse_numbers(const std::string& text, std::vector<double>& out) {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw ParseError("expected a number, got '" + tok + "'");
        }
        if (used != tok.size()) throw ParseError("expected a number, got '" + tok + "'");
        out.push_back(v);
    }
}

inline Matrix matrix_from_rowmajor(const std::vector<double>& nums, std::size_t offset,
                                   int dim) {
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            std::size_t at = offset + 2 * (static_cast<std::size_t>(r) * dim + c);
            m(r, c) = Complex(nums[at], nums[at + 1]);
        }
    return m;
}

inline void write_rowmajor(std::ostream& out, const Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out << ' ';
            out << format_complex_pair(m(r, c));
        }
        out << '\n';
    }
}

}  // namespace detail

inline QGraphFile parse_qgraph(std::istream& in) {
    QGraphFile file;
    bool saw_blocks = false, saw_adjacency = false, saw_sbasis = false;
    int sbasis_count = 0;
    std::vector<double> nums;
    bool collecting = false;

    std::string line;
    while (std::getline(in, line)) {
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        if (detail::starts_with(t, "name:")) {
            file.name = detail::trim(t.substr(5));
            collecting = false;
        } else if (detail::starts_with(t, "blocks:")) {
            if (saw_blocks) throw ParseError("duplicate blocks section");
            saw_blocks = true;
            collecting = false;
            std::istringstream bs(t.substr(7));
            int n;
            while (bs >> n) file.blocks.push_back(n);
            if (!bs.eof()) throw ParseError("blocks line must contain integers");
            if (file.blocks.empty()) throw ParseError("blocks line is empty");
            for (int b : file.blocks)
                if (b < 1) throw ParseError("block sizes must be positive");
        } else if (detail::starts_with(t, "adjacency:")) {
            if (saw_adjacency || saw_sbasis) throw ParseError("duplicate matrix section");
            saw_adjacency = true;
            collecting = true;
            detail::parse_numbers(t.substr(10), nums);
        } else if (detail::starts_with(t, "sbasis:")) {
            if (saw_adjacency || saw_sbasis) throw ParseError("duplicate matrix section");
            saw_sbasis = true;
            collecting = true;
            std::istringstream hs(t.substr(7));
            if (!(hs >> sbasis_count) || sbasis_count < 1)
                throw ParseError("sbasis: expects a positive operator count");
            std::string rest;
            std::getline(hs, rest);
            detail::parse_numbers(rest, nums);
        } else if (collecting) {
            detail::parse_numbers(t, nums);
        } else {
            throw ParseError("unknown section: '" + t + "'");
        }
    }

    if (!saw_blocks) throw ParseError("missing blocks section");
    if (saw_adjacency == saw_sbasis)
        throw ParseError("expected exactly one of adjacency or sbasis");

    int dim = AlgebraSpec(file.blocks).dim();
    std::size_t per_matrix = 2 * static_cast<std::size_t>(dim) * dim;
    if (saw_adjacency) {
        if (nums.size() != per_matrix)
            throw ParseError("adjacency entry count does not match the block structure");
        file.adjacency = detail::matrix_from_rowmajor(nums, 0, dim);
    } else {
        if (nums.size() != per_matrix * static_cast<std::size_t>(sbasis_count))
            throw ParseError("sbasis entry count does not match the declared count");
        std::vector<Matrix> basis;
        for (int k = 0; k < sbasis_count; ++k)
            basis.push_back(detail::matrix_from_rowmajor(nums, per_matrix * k, dim));
        file.sbasis = std::move(basis);
    }
    return file;
}

inline void write_qgraph(std::ostream& out, const QGraphFile& file) {
    if (!file.name.empty()) out << "name: " << file.name << '\n';
    out << "blocks:";
    for (int b : file.blocks) out << ' ' << b;
    out << '\n';
    if (file.adjacency) {
        out << "adjacency:\n";
        detail::write_rowmajor(out, *file.adjacency);
    } else if (file.sbasis) {
        out << "sbasis: " << file.sbasis->size() << '\n';
        for (const Matrix& m : *file.sbasis) detail::write_rowmajor(out, m);
    }
}

// Certificate files: `colors:` and `aux:` headers, then one row-major
// (dim*aux)^2 complex matrix per color.
inline ColoringCertificate parse_certificate(std::istream& in) {
    int colors = -1, aux = -1;
    std::vector<double> nums;
    bool collecting = false;

    std::string line;
    while (std::getline(in, line)) {
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        if (detail::starts_with(t, "colors:")) {
            std::istringstream cs(t.substr(7));
            if (!(cs >> colors) || colors < 1)
                throw ParseError("colors: expects a positive integer");
        } else if (detail::starts_with(t, "aux:")) {
            std::istringstream as(t.substr(4));
            if (!(as >> aux) || aux < 1) throw ParseError("aux: expects a positive integer");
            collecting = true;
        } else if (collecting) {
            detail::parse_numbers(t, nums);
        } else {
            throw ParseError("unknown section: '" + t + "'");
        }
    }
    if (colors < 1 || aux < 1) throw ParseError("certificate needs colors and aux headers");
    if (nums.empty() || nums.size() % (2 * static_cast<std::size_t>(colors)) != 0)
        throw ParseError("certificate entry count does not match the headers");
    std::size_t per_matrix = nums.size() / static_cast<std::size_t>(colors);
    auto side = static_cast<std::size_t>(std::llround(std::sqrt(double(per_matrix / 2))));
    if (2 * side * side != per_matrix || side % static_cast<std::size_t>(aux) != 0)
        throw ParseError("certificate matrices are not square over dim * aux");

    ColoringCertificate cert;
    cert.colors = colors;
    cert.aux_dim = aux;
    for (int a = 0; a < colors; ++a)
        cert.projections.push_back(
            detail::matrix_from_rowmajor(nums, per_matrix * a, static_cast<int>(side)));
    return cert;
}

inline void write_certificate(std::ostream& out, const ColoringCertificate& cert) {
    out << "colors: " << cert.colors << '\n';
    out << "aux: " << cert.aux_dim << '\n';
    for (const Matrix& P : cert.projections) detail::write_rowmajor(out, P);
}

// DIMACS edge format: `c` comments, one `p edge n m` header, `e i j` edges
// with 1-based vertices. Duplicate edges collapse; self-loops are rejected
// (graphs here are irreflexive).
inline Eigen::MatrixXi parse_dimacs(std::istream& in) {
    int n = -1;
    Eigen::MatrixXi adj;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        std::istringstream ls(t);
        std::string tag;
        ls >> tag;
        if (tag == "c") continue;
        if (tag == "p") {
            if (n >= 0) throw MalformedHeader("duplicate problem line");
            std::string kind;
            int m;
            if (!(ls >> kind >> n >> m) || kind != "edge" || n < 1)
                throw MalformedHeader("expected 'p edge <n> <m>'");
            adj = Eigen::MatrixXi::Zero(n, n);
        } else if (tag == "e") {
            if (n < 0) throw MalformedHeader("edge before problem line");
            int u, v;
            if (!(ls >> u >> v)) throw MalformedHeader("expected 'e <u> <v>'");
            if (u < 1 || u > n || v < 1 || v > n)
                throw VertexOutOfRange("edge endpoint out of range");
            if (u == v) throw SelfLoop("self-loops are not allowed");
            adj(u - 1, v - 1) = adj(v - 1, u - 1) = 1;
        } else {
            throw MalformedHeader("unknown line type '" + tag + "'");
        }
    }
    if (n < 0) throw MalformedHeader("missing problem line");
    return adj;
}

}  // namespace qgraph::io
