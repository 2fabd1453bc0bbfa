#include "rrp/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace rrp {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string read_file(const std::string& filename) {
    std::ifstream in(filename, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + filename);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& filename, const std::string& text) {
    std::ofstream out(filename, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + filename);
    out << text;
}

json vec_to_json(const Vec& v) {
    json a = json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(v[i]);
    return a;
}

Vec vec_from_json(const json& a) {
    Vec v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i].get<double>();
    return v;
}

json matrix_to_json(std::size_t rows, std::size_t cols,
                    const std::function<double(std::size_t, std::size_t)>& at) {
    json m = json::array();
    for (std::size_t i = 0; i < rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < cols; ++j) row.push_back(at(i, j));
        m.push_back(std::move(row));
    }
    return m;
}

SymTensor2 sym_from_json(const json& m, double tol) {
    const std::size_t d = m.size();
    Tensor2 t(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (m[i].size() != d) throw ParseError("second level: ragged matrix");
        for (std::size_t j = 0; j < d; ++j) t.at(i, j) = m[i][j].get<double>();
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (std::abs(t.at(i, j) - t.at(j, i)) > tol)
                throw ParseError("second level: step not symmetric within 1e-12");
    return symmetrize(t);
}

std::uint64_t fnv1a_bytes(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

// ---- CSV ----

std::string path_to_csv(const GridPath<Vec>& p) {
    const std::size_t d = p.value(0).dim();
    std::ostringstream out;
    out << "t";
    for (std::size_t k = 0; k < d; ++k) out << ",x" << k;
    out << "\n";
    for (std::size_t i = 0; i < p.points(); ++i) {
        out << format_double(p.grid().time(i));
        for (std::size_t k = 0; k < d; ++k) out << "," << format_double(p.value(i)[k]);
        out << "\n";
    }
    return out.str();
}

GridPath<Vec> path_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("csv: empty input");
    std::size_t d = 0;
    for (char c : line)
        if (c == ',') ++d;
    if (d == 0) throw ParseError("csv: expected header t,x0,...");

    std::vector<double> times;
    std::vector<Vec> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        if (!std::getline(row, cell, ',')) throw ParseError("csv: bad row");
        times.push_back(std::stod(cell));
        Vec v(d);
        for (std::size_t k = 0; k < d; ++k) {
            if (!std::getline(row, cell, ',')) throw ParseError("csv: short row");
            v[k] = std::stod(cell);
        }
        values.push_back(std::move(v));
    }
    return GridPath<Vec>(Grid::make(std::move(times)), std::move(values));
}

void save_path_csv(const GridPath<Vec>& p, const std::string& filename) {
    write_file(filename, path_to_csv(p));
}

GridPath<Vec> load_path_csv(const std::string& filename) {
    return path_from_csv(read_file(filename));
}

// ---- rough paths ----

std::string rough_path_to_json(const ReducedRoughPath& r) {
    json doc;
    doc["schema"] = "rrp.reduced_rough_path.v1";
    doc["alpha"] = r.alpha();
    json grid = json::array();
    for (double t : r.grid().times()) grid.push_back(t);
    doc["grid"] = std::move(grid);
    json path = json::array();
    for (std::size_t i = 0; i < r.path().points(); ++i)
        path.push_back(vec_to_json(r.path().value(i)));
    doc["path"] = std::move(path);
    json steps = json::array();
    for (const SymTensor2& s : r.second_level_steps())
        steps.push_back(matrix_to_json(s.dim(), s.dim(),
                                       [&s](std::size_t i, std::size_t j) { return s.at(i, j); }));
    doc["second_level_steps"] = std::move(steps);
    return doc.dump();
}

ReducedRoughPath rough_path_from_json(const std::string& text) {
    json doc = json::parse(text, nullptr, true);
    if (doc.value("schema", "") != "rrp.reduced_rough_path.v1")
        throw ParseError("rough path: unknown schema");
    const double alpha = doc.at("alpha").get<double>();
    std::vector<double> times;
    for (const auto& t : doc.at("grid")) times.push_back(t.get<double>());
    auto grid = Grid::make(std::move(times));
    std::vector<Vec> values;
    for (const auto& v : doc.at("path")) values.push_back(vec_from_json(v));
    std::vector<SymTensor2> steps;
    for (const auto& s : doc.at("second_level_steps")) steps.push_back(sym_from_json(s, 1e-12));
    return ReducedRoughPath(alpha, GridPath<Vec>(grid, std::move(values)), std::move(steps));
}

void save_rough_path(const ReducedRoughPath& r, const std::string& filename) {
    write_file(filename, rough_path_to_json(r));
}

ReducedRoughPath load_rough_path(const std::string& filename) {
    return rough_path_from_json(read_file(filename));
}

std::string content_hash(const ReducedRoughPath& r) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a_bytes(rough_path_to_json(r))));
    return buf;
}

// ---- controlled paths ----

std::string controlled_to_json(const SolutionPath& c) {
    json doc;
    doc["schema"] = "rrp.controlled_path.v1";
    doc["base_hash"] = content_hash(*c.base());
    json y = json::array();
    for (std::size_t i = 0; i < c.points(); ++i) y.push_back(vec_to_json(c.y().value(i)));
    doc["y"] = std::move(y);
    json yp = json::array();
    for (std::size_t i = 0; i < c.points(); ++i) {
        const LinMap& m = c.y_prime().value(i);
        yp.push_back(matrix_to_json(m.rows(), m.cols(), [&m](std::size_t r, std::size_t col) {
            return m.at(r, col);
        }));
    }
    doc["y_prime"] = std::move(yp);
    return doc.dump();
}

SolutionPath controlled_from_json(const std::string& text,
                                  const std::shared_ptr<const ReducedRoughPath>& base) {
    json doc = json::parse(text, nullptr, true);
    if (doc.value("schema", "") != "rrp.controlled_path.v1")
        throw ParseError("controlled path: unknown schema");
    if (doc.at("base_hash").get<std::string>() != content_hash(*base))
        throw BaseMismatch("controlled path: stored base hash does not match the given base");
    std::vector<Vec> values;
    for (const auto& v : doc.at("y")) values.push_back(vec_from_json(v));
    std::vector<LinMap> derivs;
    for (const auto& m : doc.at("y_prime")) {
        const std::size_t rows = m.size();
        const std::size_t cols = rows ? m[0].size() : 0;
        LinMap lm(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t col = 0; col < cols; ++col) lm.at(r, col) = m[r][col].get<double>();
        derivs.push_back(std::move(lm));
    }
    return SolutionPath(base, GridPath<Vec>(base->grid_ptr(), std::move(values)),
                        GridPath<LinMap>(base->grid_ptr(), std::move(derivs)));
}

// ---- dense second-level table validation ----

ChenValidation validate_dense_second_level(const std::string& json_text, double tol) {
    json doc = json::parse(json_text, nullptr, true);
    if (doc.value("schema", "") != "rrp.second_level_table.v1")
        throw ParseError("second level table: unknown schema");
    std::vector<double> times;
    for (const auto& t : doc.at("grid")) times.push_back(t.get<double>());
    auto grid = Grid::make(std::move(times));
    std::vector<Vec> values;
    for (const auto& v : doc.at("path")) values.push_back(vec_from_json(v));
    GridPath<Vec> x(grid, std::move(values));

    std::map<std::pair<std::size_t, std::size_t>, SymTensor2> table;
    for (const auto& entry : doc.at("pairs")) {
        const std::size_t i = entry.at("i").get<std::size_t>();
        const std::size_t j = entry.at("j").get<std::size_t>();
        if (!(i < j) || j >= x.points()) throw ParseError("second level table: bad pair index");
        table.emplace(std::make_pair(i, j), sym_from_json(entry.at("s"), 1e-12));
    }

    // Accumulation roundoff grows with the magnitude of the compared terms,
    // so the tolerance is scaled up for large paths (absolute for O(1) data).
    ChenValidation out;
    double scale = 1.0;
    for (const auto& [ij, s_ij] : table) {
        const auto [i, j] = ij;
        for (std::size_t u = i + 1; u < j; ++u) {
            auto left = table.find({i, u});
            auto right = table.find({u, j});
            if (left == table.end() || right == table.end()) continue;
            const SymTensor2 cross = sym_outer(x.increment(i, u), x.increment(u, j));
            const double defect = (s_ij - left->second - right->second - cross).norm();
            ++out.triples_checked;
            if (defect > out.max_defect) {
                out.max_defect = defect;
                out.arg_i = i;
                out.arg_u = u;
                out.arg_j = j;
            }
            scale = std::max({scale, s_ij.norm(), cross.norm()});
        }
    }
    out.ok = out.max_defect <= tol * scale;
    if (!out.ok) {
        std::ostringstream msg;
        msg << "Chen defect " << format_double(out.max_defect) << " at triple (" << out.arg_i
            << ", " << out.arg_u << ", " << out.arg_j << ") exceeds " << format_double(tol);
        out.message = msg.str();
    }
    return out;
}

// ---- solve reports ----

std::string solve_report_to_json(const SolveReport& report) {
    json doc;
    doc["schema"] = "rrp.solve_report.v1";
    doc["alpha"] = report.alpha;
    doc["beta"] = report.beta;
    doc["global"] = report.global;
    doc["residual_norm"] = report.residual_norm;
    doc["tau_theory"] = report.tau_theory;
    json steps = json::array();
    for (const StepRecord& s : report.steps) {
        json row;
        row["begin_index"] = s.begin_index;
        row["end_index"] = s.end_index;
        row["t0"] = s.t0;
        row["t1"] = s.t1;
        row["tau_used"] = s.tau_used;
        row["picard_iterations"] = s.picard_iterations;
        row["final_contraction_ratio"] = s.final_contraction_ratio;
        json ratios = json::array();
        for (double v : s.contraction_ratios) ratios.push_back(v);
        row["contraction_ratios"] = std::move(ratios);
        row["seminorm"] = s.seminorm;
        row["ball_ok"] = s.ball_ok;
        steps.push_back(std::move(row));
    }
    doc["steps"] = std::move(steps);
    return doc.dump();
}

}  // namespace rrp
