#include "doctest.h"
#include "helpers.hpp"

#include "crinv/corpus.hpp"
#include "crinv/report.hpp"

#include <sstream>

using namespace crinv;

namespace {

std::string entry(const std::string& expect) {
    return R"J({"schema": "crinv-corpus/1", "entries": [{"id": "h", "r": "-2*Re(w) + abs2(z1)",
               "points": [{"at": ["0", "0"], "expect": )J" +
           expect + "}]}]}";
}

}  // namespace

TEST_CASE("untagged expectations are rejected") {
    CHECK_THROWS_AS(load_corpus_text(entry(R"J({"multitype": [2]})J")), std::invalid_argument);
    CHECK_THROWS_AS(load_corpus_text(entry(R"J({"multitype": {"value": [2]}})J")), std::invalid_argument);
    CHECK_THROWS_AS(load_corpus_text(entry(R"J({"multitype": {"value": [2], "source": "folklore"}})J")),
                    std::invalid_argument);
    auto c = load_corpus_text(entry(R"J({"multitype": {"value": [2], "source": "derived"}})J"));
    REQUIRE(c.entries.size() == 1);
    REQUIRE(c.entries[0].points[0].expect.size() == 1);
    CHECK(c.entries[0].points[0].expect[0].value == "(2)");
    CHECK(c.entries[0].points[0].expect[0].source == Provenance::derived);
}

TEST_CASE("schema and syntax errors") {
    CHECK_THROWS_AS(load_corpus_text("{"), std::invalid_argument);
    CHECK_THROWS_AS(load_corpus_text(R"J({"schema": "other", "entries": []})J"), std::invalid_argument);
    CHECK_THROWS_AS(load_corpus_text(R"J({"schema": "crinv-corpus/1", "entries": [{"id": "a", "r": "0"}, {"id": "a", "r": "0"}]})J"),
                    std::invalid_argument);
}

TEST_CASE("bounded comparison") {
    CHECK(compare_bounded("4", Bounded::finite(4)) == Verdict::match);
    CHECK(compare_bounded("4", Bounded::finite(3)) == Verdict::mismatch);
    CHECK(compare_bounded("inf", Bounded::lower(6)) == Verdict::match);
    CHECK(compare_bounded("inf", Bounded::finite(6)) == Verdict::mismatch);
    CHECK(compare_bounded("8", Bounded::lower(6)) == Verdict::inconclusive);
    CHECK(compare_bounded("4", Bounded::lower(6)) == Verdict::mismatch);
    Multitype m;
    m.entries = {Bounded::finite(2), Bounded::lower(6)};
    CHECK(compare_multitype("(2, inf)", m) == Verdict::match);
    CHECK(compare_multitype("(2, 9)", m) == Verdict::inconclusive);
    CHECK(compare_multitype("(2)", m) == Verdict::mismatch);
}

TEST_CASE("run an entry") {
    auto c = load_corpus_text(entry(R"J({"multitype": {"value": [2], "source": "derived"},
                                        "levi_type": {"value": 3, "source": "derived"}})J"));
    auto rep = run_corpus(c);
    REQUIRE(rep.checks.size() == 2);
    CHECK_FALSE(rep.ok());
    int mismatches = 0;
    for (const auto& ch : rep.checks) mismatches += ch.verdict == Verdict::mismatch;
    CHECK(mismatches == 1);
}

TEST_CASE("points are resolved on S") {
    auto d = parse_defining_function("-2*Re(w) + abs2(z1)");
    Vec p = parse_point_flag("z1=1", d.series);
    REQUIRE(p.size() == 2);
    CHECK(p[1] == Gaussian::frac(1, 2));
    CHECK(parse_point_flag("z1=1, w=1/2+3*i", d.series)[1] == Gaussian(mpq_class(1, 2), 3));
    CHECK_THROWS(parse_point_flag("z9=1", d.series));
}

TEST_CASE("reports") {
    RunReport empty;
    for (auto f : {Format::json, Format::table, Format::csv}) {
        std::ostringstream os;
        emit(os, empty, f);
        CHECK(!os.str().empty());
    }
    std::ostringstream js;
    emit(js, empty, Format::json);
    CHECK(js.str().find("\"checks\": []") != std::string::npos);
    CHECK(js.str().find(kReportSchema) != std::string::npos);

    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("x\"y") == "\"x\"\"y\"");
    CHECK_THROWS(parse_format("xml"));
}

TEST_CASE("json report carries the multitype and its certificate") {
    auto c = load_corpus_text(R"J({"schema": "crinv-corpus/1", "entries": [{"id": "e", "r": "-2*Re(w) + abs2(z1*z2)",
        "bounds": {"order": 8, "word_bound": 4},
        "points": [{"at": ["0", "0", "0"], "expect": {"multitype": {"value": [4, 4], "source": "paper"}}}]}]})J");
    auto rep = run_corpus(c);
    CHECK(rep.ok());
    std::ostringstream os;
    emit(os, rep, Format::json);
    CHECK(os.str().find("\"(4,4)\"") != std::string::npos);
    CHECK(os.str().find("word=[") != std::string::npos);
}

TEST_CASE("scan output is deterministic and grouped") {
    auto d = parse_defining_function("-2*Re(w) + abs2(z1*z2)");
    std::vector<Gaussian> grid{Gaussian(0), Gaussian(1), Gaussian::frac(-1, 2)};
    Bounds b{8, 4};
    auto a = scan_stratification(d.series, grid, 1, b, 1);
    auto bb = scan_stratification(d.series, grid, 1, b, 3);
    std::ostringstream s1, s2;
    emit(s1, a, Format::csv);
    emit(s2, bb, Format::csv);
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().rfind("point,multitype,stratum,q_finite\n", 0) == 0);
    CHECK(a.points.size() == 9);
    REQUIRE(a.strata.size() == 2);
    CHECK(a.audited);
    CHECK(a.audit.violations.empty());
}
