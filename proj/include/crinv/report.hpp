#pragma once

#include "crinv/corpus.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace crinv {

enum class Format { json, table, csv };

// Throws std::invalid_argument for anything but json, table or csv.
Format parse_format(const std::string& name);

// Generic key/value result of a single-verb command.
struct Row {
    std::string key;
    std::string value;
    std::string detail;
};

struct VerbReport {
    std::string verb;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<Row> rows;
    std::vector<std::string> notes;
    bool ok = true;
};

void emit(std::ostream& os, const VerbReport& r, Format f);
void emit(std::ostream& os, const RunReport& r, Format f);
void emit(std::ostream& os, const ScanReport& r, Format f);

std::string csv_field(const std::string& s);

}  // namespace crinv
