#include "crinv/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <iomanip>

namespace crinv {

using ojson = nlohmann::ordered_json;

namespace {

std::size_t display_width(const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

void table(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = display_width(header[c]);
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], display_width(r[c]));
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            os << r[c];
            if (c + 1 < r.size()) os << std::string(width[c] - display_width(r[c]) + 2, ' ');
        }
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

void csv(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << csv_field(r[c]);
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

}  // namespace

Format parse_format(const std::string& name) {
    if (name == "json") return Format::json;
    if (name == "table") return Format::table;
    if (name == "csv") return Format::csv;
    throw std::invalid_argument("unknown format '" + name + "'");
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

void emit(std::ostream& os, const VerbReport& r, Format f) {
    if (f == Format::json) {
        ojson j;
        j["schema"] = kReportSchema;
        j["verb"] = r.verb;
        j["status"] = r.ok ? "pass" : "mismatch";
        ojson in = ojson::object();
        for (const auto& [k, v] : r.inputs) in[k] = v;
        j["inputs"] = in;
        ojson res = ojson::array();
        for (const auto& row : r.rows) {
            ojson x;
            x["key"] = row.key;
            x["value"] = row.value;
            if (!row.detail.empty()) x["detail"] = row.detail;
            res.push_back(x);
        }
        j["results"] = res;
        j["notes"] = r.notes;
        os << j.dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : r.rows) rows.push_back({row.key, row.value, row.detail});
    if (f == Format::csv) {
        csv(os, {"key", "value", "detail"}, rows);
        return;
    }
    for (const auto& [k, v] : r.inputs) os << k << ": " << v << '\n';
    table(os, {"invariant", "value", "detail"}, rows);
    for (const auto& n : r.notes) os << "note: " << n << '\n';
}

void emit(std::ostream& os, const RunReport& r, Format f) {
    if (f == Format::json) {
        ojson j;
        j["schema"] = kReportSchema;
        j["status"] = r.ok() ? "pass" : "mismatch";
        ojson checks = ojson::array();
        for (const auto& c : r.checks) {
            ojson x;
            x["entry"] = c.entry;
            x["where"] = c.where;
            x["invariant"] = c.invariant;
            x["expected"] = c.expected;
            x["computed"] = c.computed;
            x["source"] = c.source;
            x["verdict"] = to_string(c.verdict);
            x["bounds"] = {{"order", c.bounds.order}, {"word_bound", c.bounds.word_bound}};
            if (!c.detail.empty()) x["detail"] = c.detail;
            checks.push_back(x);
        }
        j["checks"] = checks;
        j["notes"] = r.notes;
        os << j.dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : r.checks)
        rows.push_back({c.entry, c.where, c.invariant, c.expected, c.computed, c.source, to_string(c.verdict),
                        "N=" + std::to_string(c.bounds.order) + " W=" + std::to_string(c.bounds.word_bound)});
    std::vector<std::string> header{"entry", "where", "invariant", "expected", "computed", "source", "verdict", "bounds"};
    if (f == Format::csv) {
        csv(os, header, rows);
        return;
    }
    table(os, header, rows);
    for (const auto& n : r.notes) os << "note: " << n << '\n';
    std::size_t bad = std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.verdict == Verdict::mismatch; });
    os << r.checks.size() << " checks, " << bad << " mismatches\n";
}

void emit(std::ostream& os, const ScanReport& r, Format f) {
    if (f == Format::json) {
        ojson j;
        j["schema"] = kReportSchema;
        j["q"] = r.q;
        ojson pts = ojson::array();
        for (const auto& p : r.points) {
            ojson x;
            x["point"] = point_str(p.point);
            if (p.error.empty()) {
                x["multitype"] = p.multitype;
                x["stratum"] = p.stratum;
                x["q_finite"] = p.q_finite;
            } else {
                x["error"] = p.error;
            }
            pts.push_back(x);
        }
        j["points"] = pts;
        j["strata"] = r.strata;
        ojson audit;
        audit["performed"] = r.audited;
        audit["points_compared"] = r.audit.multitype_checked;
        audit["containments_checked"] = r.audit.containment_checked;
        audit["violations"] = r.audit.violations;
        j["audit"] = audit;
        j["status"] = r.audit.violations.empty() ? "pass" : "mismatch";
        os << j.dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : r.points)
        rows.push_back({point_str(p.point), p.error.empty() ? p.multitype : "error: " + p.error,
                        p.error.empty() ? std::to_string(p.stratum) : "", p.error.empty() ? (p.q_finite ? "yes" : "no") : ""});
    std::vector<std::string> header{"point", "multitype", "stratum", "q_finite"};
    if (f == Format::csv) {
        csv(os, header, rows);
        return;
    }
    table(os, header, rows);
    for (std::size_t s = 0; s < r.strata.size(); ++s) os << "stratum " << s << ": " << r.strata[s] << '\n';
    os << "audit: " << r.audit.multitype_checked << " points compared, " << r.audit.containment_checked
       << " containments checked, " << r.audit.violations.size() << " violations\n";
    for (const auto& v : r.audit.violations) os << "violation: " << v << '\n';
}

}  // namespace crinv
