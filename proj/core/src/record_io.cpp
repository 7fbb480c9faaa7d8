#include "dmi/record_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dmi/errors.hpp"

namespace dmi {

using json = nlohmann::json;

namespace {

json vec_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vector json_vec(const json& j)
{
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json population_json(const Population& p)
{
    json arr = json::array();
    for (const auto& s : p) {
        arr.push_back({{"x", vec_json(s.x().coords())},
                       {"f", vec_json(s.f().values())},
                       {"source", s.source() == Source::TrueEvaluation ? "true" : "surrogate"}});
    }
    return arr;
}

Population json_population(const json& arr)
{
    Population p;
    for (const auto& s : arr) {
        const Source source = s.value("source", "true") == "true" ? Source::TrueEvaluation : Source::SurrogatePrediction;
        p.push_back(EvaluatedSolution(DecisionVector(json_vec(s.at("x"))), ObjectiveVector(json_vec(s.at("f"))), source));
    }
    return p;
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (ch != '\r' && ch != ' ' && ch != '\t') {
            cell += ch;
        }
    }
    cells.push_back(cell);
    return cells;
}

bool parse_double(const std::string& cell, double& out)
{
    if (cell.empty()) {
        return false;
    }
    const auto* begin = cell.data();
    const auto* end = cell.data() + cell.size();
    if (*begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

} // namespace

std::string record_to_json(const RunRecord& record)
{
    json j;
    j["config"] = json::parse(experiment_config_json(record.config));
    j["status"] = record.status;
    j["wall_seconds"] = record.wall_seconds;
    j["fes"] = record.fes;
    j["initial_hv"] = record.initial_hv;
    j["final_hv"] = record.final_hv;
    j["reference"] = vec_json(record.reference);
    j["segments_covered"] = record.coverage.covered;
    j["segments_total"] = record.coverage.total;
    j["archive"] = population_json(record.archive);
    j["front"] = population_json(record.front);
    json iterations = json::array();
    for (const auto& it : record.iterations) {
        json log;
        log["iteration"] = it.iteration;
        log["fes"] = it.fes;
        log["archive_hv"] = it.archive_hv;
        log["candidates"] = it.candidates;
        log["interpolated"] = it.interpolated;
        log["filled"] = it.filled;
        log["wall_seconds"] = it.wall_seconds;
        json batch = json::array();
        for (std::size_t k = 0; k < it.batch_x.size(); ++k) {
            batch.push_back({{"x", vec_json(it.batch_x[k])}, {"f", vec_json(it.batch_f[k])}});
        }
        log["batch"] = batch;
        json kernels = json::array();
        for (const auto& kp : it.kernels) {
            kernels.push_back({{"amplitude", kp.amplitude}, {"length_scale", kp.length_scale}, {"jitter", kp.jitter}});
        }
        log["kernels"] = kernels;
        iterations.push_back(std::move(log));
    }
    j["iterations"] = iterations;
    return j.dump(1);
}

RunRecord record_from_json(std::string_view text)
{
    try {
        const json j = json::parse(text);
        RunRecord r;
        r.config = parse_experiment_config(j.at("config").dump());
        r.status = j.at("status").get<std::string>();
        r.wall_seconds = j.value("wall_seconds", 0.0);
        r.fes = j.at("fes").get<std::size_t>();
        r.initial_hv = j.at("initial_hv").get<double>();
        r.final_hv = j.at("final_hv").get<double>();
        r.reference = json_vec(j.at("reference"));
        r.coverage.covered = j.at("segments_covered").get<int>();
        r.coverage.total = j.at("segments_total").get<int>();
        r.archive = json_population(j.at("archive"));
        r.front = json_population(j.at("front"));
        for (const auto& log : j.at("iterations")) {
            IterationLog it;
            it.iteration = log.at("iteration").get<std::size_t>();
            it.fes = log.at("fes").get<std::size_t>();
            it.archive_hv = log.at("archive_hv").get<double>();
            it.candidates = log.at("candidates").get<std::size_t>();
            it.interpolated = log.at("interpolated").get<std::size_t>();
            it.filled = log.at("filled").get<std::size_t>();
            it.wall_seconds = log.at("wall_seconds").get<double>();
            for (const auto& b : log.at("batch")) {
                it.batch_x.push_back(json_vec(b.at("x")));
                it.batch_f.push_back(json_vec(b.at("f")));
            }
            for (const auto& k : log.at("kernels")) {
                it.kernels.push_back(KernelParams{k.at("amplitude").get<double>(), k.at("length_scale").get<double>(),
                                                  k.at("jitter").get<double>()});
            }
            r.iterations.push_back(std::move(it));
        }
        return r;
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed run record: ") + e.what());
    }
}

void write_record(const RunRecord& record, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << record_to_json(record) << '\n';
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

RunRecord read_record(const std::filesystem::path& path) { return record_from_json(read_text(path)); }

std::vector<Vector> read_csv_rows(const std::filesystem::path& path)
{
    std::istringstream in(read_text(path));
    std::vector<Vector> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto cells = split_csv(line);
        if (cells.size() == 1 && cells.front().empty()) {
            continue;
        }
        Vector row(static_cast<Eigen::Index>(cells.size()));
        bool numeric = true;
        for (std::size_t k = 0; k < cells.size() && numeric; ++k) {
            numeric = parse_double(cells[k], row[static_cast<Eigen::Index>(k)]);
        }
        if (!numeric) {
            if (line_no == 1) {
                continue;  // header
            }
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": non-numeric value");
        }
        if (!rows.empty() && rows.front().size() != row.size()) {
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": inconsistent column count");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> read_csv_column(const std::filesystem::path& path)
{
    const auto rows = read_csv_rows(path);
    std::vector<double> column;
    for (const auto& r : rows) {
        if (r.size() != 1) {
            throw IoError(path.string() + ": expected a single column");
        }
        column.push_back(r[0]);
    }
    return column;
}

std::vector<double> read_csv_column(const std::filesystem::path& path, const std::string& name)
{
    std::istringstream in(read_text(path));
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError(path.string() + ": empty file");
    }
    const auto header = split_csv(line);
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw IoError(path.string() + ": no column named '" + name + "'");
    }
    const auto col = static_cast<std::size_t>(it - header.begin());
    std::vector<double> column;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto cells = split_csv(line);
        if (cells.size() == 1 && cells.front().empty()) {
            continue;
        }
        double v = 0.0;
        if (col >= cells.size() || !parse_double(cells[col], v)) {
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": non-numeric value in '" + name + "'");
        }
        column.push_back(v);
    }
    return column;
}

void write_csv_rows(const std::filesystem::path& path, const std::vector<std::string>& header,
                    const std::vector<Vector>& rows)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    for (std::size_t k = 0; k < header.size(); ++k) {
        out << (k ? "," : "") << header[k];
    }
    out << '\n';
    char buf[40];
    for (const auto& r : rows) {
        for (Eigen::Index k = 0; k < r.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", r[k]);
            out << (k ? "," : "") << buf;
        }
        out << '\n';
    }
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

} // namespace dmi
