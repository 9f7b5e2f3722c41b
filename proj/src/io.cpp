#include "asdflow/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "asdflow/errors.hpp"

namespace asdflow {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t line) {
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    while (first < last && *first == ' ') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw IoError(path.string() + ":" + std::to_string(line) + ": not a number: '" + s + "'");
    return v;
}

// Header plus numeric rows with a fixed column count.
std::vector<std::vector<double>> read_table(const std::filesystem::path& path,
                                            std::vector<std::string>& header) {
    std::istringstream in(read_text(path));
    std::string line;
    if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
    header = split(line, ',');
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = split(line, ',');
        if (cells.size() != header.size())
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                          std::to_string(header.size()) + " columns");
        std::vector<double> row;
        for (const auto& c : cells) row.push_back(parse_double(c, path, lineno));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_profile_csv(const PeriodicProfile& r) {
    std::string out = "x,r\n";
    for (std::size_t j = 0; j < r.size(); ++j)
        out += format_double(r.grid().node(j)) + "," + format_double(r[j]) + "\n";
    return out;
}

void write_profile_csv(const std::filesystem::path& path, const PeriodicProfile& r) {
    write_text(path, format_profile_csv(r));
}

PeriodicProfile read_profile_csv(const std::filesystem::path& path) {
    std::vector<std::string> header;
    const auto rows = read_table(path, header);
    if (header != std::vector<std::string>{"x", "r"})
        throw IoError(path.string() + ": expected header 'x,r'");
    if (rows.size() < 8 || rows.size() % 2 != 0)
        throw IoError(path.string() + ": row count must be even and at least 8");
    const TorusGrid grid(rows.size());
    PeriodicProfile r(grid);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (std::abs(rows[j][0] - grid.node(j)) > 1e-12)
            throw IoError(path.string() + ": x column is not the uniform grid on [-pi, pi)");
        r[j] = rows[j][1];
    }
    return r;
}

std::string format_trajectory_csv(const TrajectoryRecord& traj) {
    std::string out = "t,volume,area,min_r,max_r";
    for (std::size_t k = 1; k <= traj.mode_amps.size(); ++k) out += ",amp_k" + std::to_string(k);
    out += "\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out += format_double(traj.times[i]) + "," + format_double(traj.volume[i]) + "," +
               format_double(traj.area[i]) + "," + format_double(traj.min_r[i]) + "," +
               format_double(traj.max_r[i]);
        for (const auto& amps : traj.mode_amps) out += "," + format_double(amps[i]);
        out += "\n";
    }
    return out;
}

void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryRecord& traj) {
    write_text(path, format_trajectory_csv(traj));
}

TrajectoryRecord read_trajectory_csv(const std::filesystem::path& path) {
    std::vector<std::string> header;
    const auto rows = read_table(path, header);
    const std::vector<std::string> fixed{"t", "volume", "area", "min_r", "max_r"};
    if (header.size() < fixed.size() || !std::equal(fixed.begin(), fixed.end(), header.begin()))
        throw IoError(path.string() + ": expected header starting with 't,volume,area,min_r,max_r'");
    for (std::size_t c = fixed.size(); c < header.size(); ++c) {
        if (header[c] != "amp_k" + std::to_string(c - fixed.size() + 1))
            throw IoError(path.string() + ": unexpected column '" + header[c] + "'");
    }
    TrajectoryRecord t;
    t.mode_amps.resize(header.size() - fixed.size());
    for (const auto& row : rows) {
        t.times.push_back(row[0]);
        t.volume.push_back(row[1]);
        t.area.push_back(row[2]);
        t.min_r.push_back(row[3]);
        t.max_r.push_back(row[4]);
        for (std::size_t k = 0; k < t.mode_amps.size(); ++k) t.mode_amps[k].push_back(row[5 + k]);
    }
    return t;
}

std::string format_branch_csv(const std::vector<BranchSample>& samples) {
    std::string out = "B,lambda,amplitude,residual,leading_mu\n";
    for (const auto& s : samples) {
        out += format_double(s.B) + "," + format_double(s.lambda) + "," + format_double(s.amplitude) +
               "," + format_double(s.residual) + "," + format_double(s.leading_mu) + "\n";
    }
    return out;
}

std::string spectrum_json(const SpectrumReport& report) {
    nlohmann::ordered_json j;
    j["source"] = to_string(report.source);
    j["radius"] = report.radius;
    auto entries = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        nlohmann::ordered_json row;
        row["index"] = e.index;
        row["re"] = e.mu.real();
        row["im"] = e.mu.imag();
        row["multiplicity"] = e.multiplicity;
        entries.push_back(row);
    }
    j["entries"] = entries;
    return j.dump(2) + "\n";
}

std::string spectrum_values_json(const SpectrumReport& report) {
    auto arr = nlohmann::json::array();
    for (const auto& e : report.entries) arr.push_back(e.mu.real());
    return arr.dump();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
    return ss.str();
}

}  // namespace asdflow
