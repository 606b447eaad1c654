#include "symflat/measure_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "symflat/error.hpp"

namespace symflat {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_field(const std::string& raw, std::size_t row, const char* name) {
    const std::string f = trim(raw);
    double v = 0.0;
    const char* first = f.data();
    const char* last = f.data() + f.size();
    if (!f.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (f.empty() || res.ec != std::errc() || res.ptr != last)
        throw Error(Errc::parse_error, "line " + std::to_string(row) + ": cannot parse " + name + " '" + f + "'");
    if (!std::isfinite(v))
        throw Error(Errc::parse_error, "line " + std::to_string(row) + ": non-finite " + name);
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[400];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    if (res.ec != std::errc() || res.ptr - buf > 40) res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

DiscreteMeasure read_measure_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::optional<double> spacing;
    std::vector<Point2> pts;
    std::vector<double> w;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line = line.substr(3);
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const auto pos = t.find("spacing=");
            if (pos != std::string::npos) spacing = parse_field(t.substr(pos + 8), 0, "spacing");
            continue;
        }
        if (!header) {
            std::string h;
            for (char c : t) if (c != ' ') h += c;
            if (h != "x,y,w") throw Error(Errc::parse_error, "missing header x,y,w");
            header = true;
            continue;
        }
        row = lineno;
        std::stringstream ss(t);
        std::string fx, fy, fw, extra;
        if (!std::getline(ss, fx, ',') || !std::getline(ss, fy, ',') || !std::getline(ss, fw, ',') ||
            std::getline(ss, extra, ','))
            throw Error(Errc::parse_error, "line " + std::to_string(row) + ": expected 3 fields");
        const double x = parse_field(fx, row, "x");
        const double y = parse_field(fy, row, "y");
        const double wt = parse_field(fw, row, "w");
        if (!(wt > 0.0)) throw Error(Errc::parse_error, "line " + std::to_string(row) + ": weight must be positive");
        pts.push_back({x, y});
        w.push_back(wt);
    }
    if (!header) throw Error(Errc::parse_error, "missing header x,y,w");
    if (pts.empty()) throw Error(Errc::parse_error, "no data rows");
    return DiscreteMeasure(std::move(pts), std::move(w), spacing);
}

DiscreteMeasure load_measure_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open " + path);
    return read_measure_csv(in);
}

void write_measure_csv(std::ostream& out, const DiscreteMeasure& mu) {
    if (mu.spacing()) out << "# spacing=" << format_double(*mu.spacing()) << '\n';
    out << "x,y,w\n";
    for (std::size_t i = 0; i < mu.size(); ++i) {
        out << format_double(mu.point(i).x) << ',' << format_double(mu.point(i).y) << ','
            << format_double(mu.weight(i)) << '\n';
    }
}

void save_measure_csv(const std::string& path, const DiscreteMeasure& mu) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io_error, "cannot write " + path);
    write_measure_csv(out, mu);
    if (!out) throw Error(Errc::io_error, "write failed for " + path);
}

}  // namespace symflat
