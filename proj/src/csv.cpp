#include "mcg/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mcg {

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    return in;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_double(const std::string& field, const std::string& path, int line_no) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0') {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": expected a number, got '" + field + "'");
    }
    return v;
}

std::optional<double> parse_optional(const std::string& field, const std::string& path,
                                     int line_no) {
    if (field.empty()) return std::nullopt;
    return parse_double(field, path, line_no);
}

// Strips a trailing \r so files survive CRLF round trips.
bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

void expect_header(std::istream& in, const std::string& want, const std::string& path) {
    std::string line;
    if (!next_line(in, line) || line != want) {
        throw std::runtime_error(path + ": expected header '" + want + "'");
    }
}

}  // namespace

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out = open_for_write(path);
    out << "t,x,y,z\n";
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        const State& s = traj.states[i];
        out << g17(traj.t[i]) << ',' << g17(s.x) << ',' << g17(s.y) << ',' << g17(s.z) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_bifurcation_csv(std::span<const SweepRow> rows, const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
    std::ofstream out = open_for_write(path);
    out << "alpha,zmax\n";
    for (const SweepRow& row : rows) {
        if (row.diverged) {
            out << g17(row.alpha) << ",diverged=1\n";
            continue;
        }
        for (const double zmax : row.z_maxima) {
            out << g17(row.alpha) << ',' << g17(zmax) << '\n';
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_analysis_csv(std::span<const SweepRow> rows, const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
    std::ofstream out = open_for_write(path);
    out << "alpha,l1,l2,l3,ky_dim,class,period,double_spiral\n";
    for (const SweepRow& row : rows) {
        out << g17(row.alpha) << ',';
        if (row.diverged) {
            out << ",,,,Diverged,,\n";
            continue;
        }
        if (row.spectrum) {
            const auto& e = row.spectrum->exponents;
            out << g17(e[0]) << ',' << g17(e[1]) << ',' << g17(e[2]);
        } else {
            out << ",,";
        }
        out << ',';
        if (row.ky_dim) out << g17(*row.ky_dim);
        out << ',';
        if (row.attractor) {
            out << to_string(row.attractor->kind) << ',' << row.attractor->period << ','
                << (row.attractor->double_spiral ? 1 : 0);
        } else {
            out << ",,";
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

Trajectory parse_trajectory_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);
    expect_header(in, "t,x,y,z", path);
    Trajectory traj;
    std::string line;
    int line_no = 1;
    while (next_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> f = split_fields(line);
        if (f.size() != 4) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 4 fields");
        }
        traj.t.push_back(parse_double(f[0], path, line_no));
        traj.states.push_back({parse_double(f[1], path, line_no),
                               parse_double(f[2], path, line_no),
                               parse_double(f[3], path, line_no)});
    }
    return traj;
}

BifurcationFile parse_bifurcation_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);
    expect_header(in, "alpha,zmax", path);
    BifurcationFile out;
    std::string line;
    int line_no = 1;
    while (next_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> f = split_fields(line);
        if (f.size() != 2) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 2 fields");
        }
        const double alpha = parse_double(f[0], path, line_no);
        if (f[1] == "diverged=1") {
            out.diverged_alphas.push_back(alpha);
        } else {
            out.points.emplace_back(alpha, parse_double(f[1], path, line_no));
        }
    }
    return out;
}

std::vector<AnalysisRecord> parse_analysis_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);
    expect_header(in, "alpha,l1,l2,l3,ky_dim,class,period,double_spiral", path);
    std::vector<AnalysisRecord> out;
    std::string line;
    int line_no = 1;
    while (next_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> f = split_fields(line);
        if (f.size() != 8) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 8 fields");
        }
        AnalysisRecord rec;
        rec.alpha = parse_double(f[0], path, line_no);
        rec.l1 = parse_optional(f[1], path, line_no);
        rec.l2 = parse_optional(f[2], path, line_no);
        rec.l3 = parse_optional(f[3], path, line_no);
        rec.ky_dim = parse_optional(f[4], path, line_no);
        rec.cls = f[5];
        if (const auto p = parse_optional(f[6], path, line_no)) rec.period = static_cast<int>(*p);
        if (const auto d = parse_optional(f[7], path, line_no)) rec.double_spiral = (*d != 0.0);
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace mcg
