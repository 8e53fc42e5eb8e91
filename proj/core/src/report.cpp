#include "greedylab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "greedylab/errors.hpp"

namespace greedylab {
namespace {

using json = nlohmann::json;

json vector_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

json number_json(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

json witness_json(const Witness& w) {
    json j = json::object();
    if (!w.A.empty()) j["A"] = w.A;
    if (!w.B.empty()) j["B"] = w.B;
    if (!w.signs.empty()) j["signs"] = w.signs;
    if (w.coef.size() > 0) j["coef"] = vector_json(w.coef);
    if (w.ambient.size() > 0) j["ambient"] = vector_json(w.ambient);
    if (w.approx.size() > 0) j["approx"] = vector_json(w.approx);
    if (w.m >= 0) j["m"] = w.m;
    if (!std::isnan(w.a)) j["a"] = w.a;
    return j;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string WitnessStore::add(const std::string& quantity, const std::string& index, double value,
                              const Witness& witness) {
    std::string ref = quantity + ":" + index;
    entries_.push_back(Entry{ref, quantity, index, value, witness});
    return ref;
}

bool WitnessStore::contains(const std::string& ref) const {
    for (const auto& e : entries_) {
        if (e.ref == ref) return true;
    }
    return false;
}

std::string WitnessStore::to_json_text(const std::string& basis_id) const {
    json list = json::array();
    for (const auto& e : entries_) {
        list.push_back({{"ref", e.ref},
                        {"quantity", e.quantity},
                        {"index", e.index},
                        {"value", number_json(e.value)},
                        {"witness", witness_json(e.witness)}});
    }
    return json{{"basis", basis_id}, {"indices", "0-based"}, {"witnesses", list}}.dump(2) + "\n";
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw UsageError("csv: row width does not match header");
    rows_.push_back(std::move(row));
}

std::string CsvTable::text() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_escape(cells[i]);
        os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return os.str();
}

std::string plot_csv(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw UsageError("plot: x and y lengths differ");
    CsvTable t({"x", "y"});
    for (std::size_t i = 0; i < x.size(); ++i) t.add_row({format_double(x[i]), format_double(y[i])});
    return t.text();
}

std::string check_results_to_json_text(const std::vector<CheckResult>& results) {
    json list = json::array();
    for (const auto& r : results) {
        json details = json::object();
        for (const auto& [k, v] : r.details) details[k] = number_json(v);
        json constants = json::object();
        for (const auto& [k, c] : r.constants_used) constants[k] = {{"value", number_json(c.value)}, {"formula", c.formula}};
        list.push_back({{"check_id", r.check_id},
                        {"basis_id", r.basis_id},
                        {"verdict", to_string(r.verdict)},
                        {"details", details},
                        {"constants_used", constants},
                        {"notes", r.notes}});
    }
    return list.dump(2) + "\n";
}

std::string summary_table(const std::vector<CheckResult>& results) {
    std::ostringstream os;
    std::size_t width = 8;
    for (const auto& r : results) width = std::max(width, r.check_id.size());
    int pass = 0, fail = 0, recorded = 0;
    for (const auto& r : results) {
        const std::string verdict = to_string(r.verdict);
        os << verdict << std::string(10 - verdict.size(), ' ') << r.check_id
           << std::string(width + 2 - r.check_id.size(), ' ') << r.basis_id << '\n';
        pass += r.verdict == Verdict::pass;
        fail += r.verdict == Verdict::fail;
        recorded += r.verdict == Verdict::recorded;
    }
    os << "checks: " << results.size() << "  pass: " << pass << "  fail: " << fail << "  recorded: " << recorded
       << '\n';
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw UsageError("cannot create directory '" + p.parent_path().string() + "': " + ec.message());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
    if (!out) throw UsageError("write failed for '" + path + "'");
}

}  // namespace greedylab
