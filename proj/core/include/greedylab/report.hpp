#pragma once

#include <string>
#include <vector>

#include "greedylab/estimate.hpp"
#include "greedylab/harness.hpp"

namespace greedylab {

// 17 significant digits, '.' decimal separator; "nan", "inf", "-inf" otherwise.
std::string format_double(double v);

// Sidecar of witnesses referenced from CSV rows.
class WitnessStore {
public:
    // Returns the reference written into the CSV row.
    std::string add(const std::string& quantity, const std::string& index, double value, const Witness& witness);
    std::string to_json_text(const std::string& basis_id) const;
    bool contains(const std::string& ref) const;
    std::size_t size() const noexcept { return entries_.size(); }

private:
    struct Entry {
        std::string ref;
        std::string quantity;
        std::string index;
        double value;
        Witness witness;
    };
    std::vector<Entry> entries_;
};

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add_row(std::vector<std::string> row);
    std::string text() const;
    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// x,y data file for one figure.
std::string plot_csv(const std::vector<double>& x, const std::vector<double>& y);

std::string check_results_to_json_text(const std::vector<CheckResult>& results);

// One line per check: verdict, check id, basis id.
std::string summary_table(const std::vector<CheckResult>& results);

// Creates missing parent directories. Throws UsageError when writing fails.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace greedylab
