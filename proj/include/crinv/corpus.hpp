#pragma once

#include "crinv/parser.hpp"
#include "crinv/tower.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crinv {

inline constexpr const char* kCorpusSchema = "crinv-corpus/1";
inline constexpr const char* kReportSchema = "crinv-report/1";

enum class Provenance { paper, derived, trivial };
const char* to_string(Provenance p);

// Expected value: integer, "inf", boolean, a list of those, or a list of
// generator expressions.
struct Expectation {
    std::string key;
    std::string value;  // canonical text
    Provenance source = Provenance::derived;
};

struct PointSpec {
    std::vector<std::string> coords;  // holomorphic coordinates; w may be empty (solved on S)
    std::vector<Expectation> expect;
};

struct SubbundleSpec {
    std::vector<Vec> covectors;  // E = kernel of these on H10 at the base point
    std::vector<Expectation> expect;
};

struct PairSpec {
    std::vector<std::string> O, V;  // generators in complexified coordinates
    bool pseudoconvex = false;
    std::vector<Expectation> expect;
};

struct ScanSpec {
    std::vector<std::string> grid;
    int q = 1;
    std::vector<Expectation> expect;
};

struct CorpusEntry {
    std::string id;
    std::string r;
    int dimension = 0;
    int order = 10;
    int word_bound = 6;
    std::vector<PointSpec> points;
    std::vector<SubbundleSpec> subbundles;
    std::vector<PairSpec> pairs;
    std::optional<ScanSpec> scan;
};

struct Corpus {
    std::string schema;
    std::vector<CorpusEntry> entries;
};

// Throws std::invalid_argument on schema violations, including untagged expectations.
Corpus load_corpus_text(const std::string& json_text);
Corpus load_corpus(const std::string& path);

enum class Verdict { match, mismatch, inconclusive, computed };
const char* to_string(Verdict v);

struct Bounds {
    int order = 10;
    int word_bound = 6;
};

struct Check {
    std::string entry;
    std::string where;
    std::string invariant;
    std::string expected;
    std::string computed;
    std::string source;
    Verdict verdict = Verdict::computed;
    std::string detail;  // certificate or note
    Bounds bounds;
};

struct RunReport {
    std::vector<Check> checks;
    std::vector<std::string> notes;
    bool ok() const;
};

// Compares a computed Bounded against an expectation ("inf" or an integer).
Verdict compare_bounded(const std::string& expected, const Bounded& computed);
Verdict compare_multitype(const std::string& expected, const Multitype& computed);

// Point in holomorphic coordinates; an empty last coordinate is solved on S.
Vec resolve_point(const Series& r, const std::vector<std::string>& coords);
// "z1=...,z2=...,w=..."; missing z coordinates are 0 and a missing w is solved on S.
Vec parse_point_flag(const std::string& text, const Series& r);

// Tower certificate as text, one stage per item.
std::vector<std::string> certificate_lines(const Multitype& m);

RunReport run_entry(const CorpusEntry& e, const std::optional<Bounds>& override_bounds = std::nullopt);
RunReport run_corpus(const Corpus& c, const std::optional<Bounds>& override_bounds = std::nullopt);

struct ScanPoint {
    Vec point;
    std::string multitype;
    int stratum = -1;
    bool q_finite = false;
    std::string error;
};

struct ScanReport {
    std::vector<ScanPoint> points;
    std::vector<std::string> strata;
    StructureReport audit;
    int q = 1;
    bool audited = false;
};

// Multitype at each grid point (all combinations of grid values for the z
// coordinates, w solved on S), computed in parallel and reported in grid order.
ScanReport scan_stratification(const Series& r, const std::vector<Gaussian>& grid, int q, const Bounds& b,
                               unsigned threads = 0);

std::string point_str(const Vec& p);

}  // namespace crinv
