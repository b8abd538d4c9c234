#include "tidalsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tidalsim/error.hpp"

namespace tidalsim {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_signal_csv(const VolumeSignal& sig, const PressureProfile& pp,
                      const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t,v,v1,v2,p\n";
    const bool has_compartments = sig.v1.size() == sig.v.size();
    for (std::size_t i = 0; i < sig.v.size(); ++i) {
        const double t = sig.grid.time_at(i);
        out << format_double(t) << ',' << format_double(sig.v[i]) << ','
            << format_double(has_compartments ? sig.v1[i] : 0.0) << ','
            << format_double(has_compartments ? sig.v2[i] : 0.0) << ','
            << format_double(sample_pressure(pp, t)) << '\n';
    }
    finish(out, path);
}

void write_cohort_csv(const std::vector<Subject>& subjects, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "id,label,r_eq,e_eq\n";
    for (const Subject& s : subjects) {
        out << s.id << ',' << label_name(s.label) << ',' << format_double(s.eq.r_eq) << ','
            << format_double(s.eq.e_eq) << '\n';
    }
    finish(out, path);
}

void write_features_csv(const std::vector<Subject>& subjects,
                        const std::vector<FeatureVector>& features,
                        const std::string& path) {
    if (subjects.size() != features.size()) {
        throw std::invalid_argument("subject and feature counts differ");
    }
    std::ofstream out = open_out(path);
    out << "id,label,mu,sigma\n";
    for (std::size_t i = 0; i < subjects.size(); ++i) {
        out << subjects[i].id << ',' << label_name(subjects[i].label) << ','
            << format_double(features[i].mu) << ',' << format_double(features[i].sigma)
            << '\n';
    }
    finish(out, path);
}

void write_loop_csv(const LoopCurve& loop, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "# " << loop.kind << " loop\n";
    out << "x,y\n";
    for (const auto& [x, y] : loop.points) {
        out << format_double(x) << ',' << format_double(y) << '\n';
    }
    finish(out, path);
}

void write_polygon_csv(const FeaturePolygon& poly, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "mu,sigma\n";
    for (const FeatureVector& v : poly.vertices) {
        out << format_double(v.mu) << ',' << format_double(v.sigma) << '\n';
    }
    finish(out, path);
}

void write_roc_csv(const RocCurve& roc, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "class,fpr,tpr\n";
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        const char* name = label_name(static_cast<Label>(c));
        for (const auto& [fpr, tpr] : roc.points[c]) {
            out << name << ',' << format_double(fpr) << ',' << format_double(tpr) << '\n';
        }
    }
    for (std::size_t g = 0; g < roc.macro_fpr.size(); ++g) {
        out << "macro," << format_double(roc.macro_fpr[g]) << ','
            << format_double(roc.macro_tpr[g]) << '\n';
    }
    finish(out, path);
}

void write_region_csv(const RegionGrid& grid, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "x,y,label\n";
    for (std::size_t row = 0; row < grid.resolution; ++row) {
        for (std::size_t col = 0; col < grid.resolution; ++col) {
            out << format_double(grid.x_center(col)) << ',' << format_double(grid.y_center(row))
                << ',' << label_name(static_cast<Label>(grid.labels[row * grid.resolution + col]))
                << '\n';
        }
    }
    finish(out, path);
}

void write_grid_csv(const GridSearchResult& grid, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "gamma";
    for (const double c : grid.cs) out << ',' << format_double(c);
    out << '\n';
    for (std::size_t gi = 0; gi < grid.gammas.size(); ++gi) {
        out << format_double(grid.gammas[gi]);
        for (std::size_t ci = 0; ci < grid.cs.size(); ++ci) {
            out << ',' << format_double(grid.at(gi, ci));
        }
        out << '\n';
    }
    finish(out, path);
}

std::vector<FeatureVector> read_measurements_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path + "' is empty");
    if (line == "mu,sigma\r") line = "mu,sigma";
    if (line != "mu,sigma") {
        throw std::invalid_argument("'" + path + "' must start with header 'mu,sigma'");
    }
    std::vector<FeatureVector> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        FeatureVector f;
        char comma = 0;
        if (!(ss >> f.mu >> comma >> f.sigma) || comma != ',') {
            throw std::invalid_argument("'" + path + "' line " + std::to_string(line_no) +
                                        " is not 'mu,sigma'");
        }
        rows.push_back(f);
    }
    if (in.bad()) throw IoError("failed while reading '" + path + "'");
    return rows;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("failed while reading '" + path + "'");
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out = open_out(path);
    out << content;
    finish(out, path);
}

}  // namespace tidalsim
