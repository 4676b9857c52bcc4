#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>

#include "quermass/harness/checks.hpp"
#include "quermass/harness/corpus.hpp"
#include "quermass/harness/io.hpp"
#include "quermass/harness/suite.hpp"
#include "quermass/mixed_volumes.hpp"

using namespace quermass;
using namespace quermass::harness;
using nlohmann::json;

namespace {

const Tolerances kTol;

bool throws_config_containing(const std::function<void()>& f, const std::string& needle)
{
    try {
        f();
    } catch (const ConfigError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

} // namespace

TEST(Decide, Inequality)
{
    // Clear excess passes; violation beyond 3 stderr fails.
    EXPECT_EQ(inequality(2.0, 1.0, 0.01, 0.0, kTol).status, Status::Pass);
    EXPECT_EQ(inequality(1.0, 2.0, 0.01, 0.0, kTol).status, Status::Fail);
    // Inside the band with a small stderr: pass.
    EXPECT_EQ(inequality(0.99, 1.0, 0.005, 0.0, kTol).status, Status::Pass);
    // Inside the band only because the stderr is large: inconclusive.
    EXPECT_EQ(inequality(0.9, 1.0, 0.2, 0.0, kTol).status, Status::Inconclusive);
    // A margin far beyond 3 stderr settles the sign even when noisy.
    EXPECT_EQ(inequality(3000.0, 15.0, 500.0, 0.0, kTol).status, Status::Pass);
    EXPECT_EQ(inequality(1.0, 30.0, 5.0, 0.0, kTol).status, Status::Fail);
    // Deterministic tolerance.
    EXPECT_EQ(inequality(1.0 - 1e-12, 1.0, 0.0, 1e-9, kTol).status, Status::Pass);
    EXPECT_EQ(inequality(1.0 - 1e-6, 1.0, 0.0, 1e-9, kTol).status, Status::Fail);
    EXPECT_EQ(inequality(std::nan(""), 1.0, 0.0, 1e-9, kTol).status, Status::Fail);
    EXPECT_EQ(inequality(1.0, 1.0, std::numeric_limits<double>::infinity(), 0.0, kTol).status, Status::Fail);
}

TEST(Decide, Identity)
{
    EXPECT_EQ(identity(1.0, 1.0 + 1e-12, 0.0, 1e-9, kTol).status, Status::Pass);
    EXPECT_EQ(identity(1.0, 1.1, 0.0, 1e-9, kTol).status, Status::Fail);
    EXPECT_EQ(identity(1.0, 1.02, 0.01, 0.0, kTol).status, Status::Pass);
    EXPECT_EQ(identity(1.0, 1.2, 0.05, 0.0, kTol).status, Status::Fail);
    EXPECT_EQ(identity(1.0, 1.2, 0.5, 0.0, kTol).status, Status::Inconclusive);
}

TEST(Decide, ProbeNeverFails)
{
    const CheckResult ok = probe(0.1, 0.01, 0.0, kTol);
    EXPECT_EQ(ok.status, Status::Pass);
    EXPECT_FALSE(ok.candidate);
    const CheckResult within = probe(-0.02, 0.01, 0.0, kTol);
    EXPECT_EQ(within.status, Status::Pass);
    const CheckResult weak = probe(-0.04, 0.01, 0.0, kTol);
    EXPECT_EQ(weak.status, Status::Inconclusive);
    EXPECT_FALSE(weak.candidate);
    const CheckResult strong = probe(-0.2, 0.01, 0.0, kTol);
    EXPECT_EQ(strong.status, Status::Inconclusive);
    EXPECT_TRUE(strong.candidate);
}

TEST(Decide, AsIdentityKeepsConfig)
{
    CheckResult r = inequality(2.0, 2.0 + 1e-12, 0.0, 1e-9, kTol);
    r.config["phi"] = "t";
    const CheckResult e = as_identity(r, kTol);
    EXPECT_EQ(e.kind, CheckKind::Identity);
    EXPECT_EQ(e.status, Status::Pass);
    EXPECT_EQ(e.config["phi"], "t");
    EXPECT_EQ(as_identity(inequality(3.0, 2.0, 0.0, 1e-9, kTol), kTol).status, Status::Fail);
}

TEST(CheckJson, RoundTripAndOfflineDecision)
{
    const std::vector<CheckResult> cases = {
        inequality(2.0, 1.0, 0.01, 0.0, kTol), inequality(0.9, 1.0, 0.2, 0.0, kTol),
        identity(1.0, 1.2, 0.05, 0.0, kTol), probe(-0.2, 0.01, 0.0, kTol),
        identity(1.0, 1.0, std::nan(""), 0.0, kTol)};
    for (const auto& r : cases) {
        const json j = to_json(r);
        ASSERT_TRUE(j.contains("stderr"));
        const CheckResult back = check_result_from_json(json::parse(j.dump()));
        EXPECT_EQ(back.kind, r.kind);
        EXPECT_EQ(back.status, r.status);
        EXPECT_EQ(decide(back), r.status);
        EXPECT_EQ(is_candidate(back), r.candidate);
    }
    EXPECT_TRUE(to_json(cases.back())["stderr"].is_null());
    EXPECT_EQ(to_json(cases[0])["status"], "pass");
    EXPECT_EQ(to_json(cases[1])["status"], "inconclusive");
}

TEST(Io, JsonSyntaxErrorsNameLineAndColumn)
{
    EXPECT_TRUE(throws_config_containing([] { parse_json("{\n  \"a\": 1,\n  \"b\": ]\n}", "cfg.json"); },
                                         "cfg.json:3:"));
    EXPECT_TRUE(throws_config_containing([] { read_json_file("/nonexistent/body.json"); }, "cannot open"));
}

TEST(Io, Bodies)
{
    const ConvexBody sq = body_from_json(json::parse(R"({"type":"polytope","vertices":[[1,1],[-1,1],[-1,-1],[1,-1]]})"),
                                         "sq");
    EXPECT_TRUE(sq.is_polytope());
    EXPECT_NEAR(volume(sq), 4.0, 1e-12);
    const ConvexBody e = body_from_json(json::parse(R"({"type":"ellipsoid","shape":[[4,0],[0,1]]})"), "e");
    EXPECT_NEAR(volume(e), 2.0 * M_PI, 1e-12);
    const ConvexBody b = body_from_json(json::parse(R"({"type":"ball","radius":2,"dim":3})"), "b");
    EXPECT_NEAR(volume(b), 32.0 * M_PI / 3.0, 1e-12);
    EXPECT_NEAR(volume(body_from_json(body_to_json(sq), "rt")), 4.0, 1e-12);

    EXPECT_TRUE(throws_config_containing([] { body_from_json(json::parse(R"({"type":"cone"})"), "f.json"); },
                                         "f.json: field 'type'"));
    EXPECT_TRUE(throws_config_containing(
        [] { body_from_json(json::parse(R"({"type":"polytope","vertices":[[1,0],[0,1,2]]})"), "f.json"); },
        "vertices[1]"));
    EXPECT_TRUE(throws_config_containing(
        [] { body_from_json(json::parse(R"({"type":"ball","radius":"big","dim":2})"), "f.json"); }, "radius"));
    // Origin outside the body.
    EXPECT_TRUE(throws_config_containing(
        [] { body_from_json(json::parse(R"({"type":"polytope","vertices":[[1,1],[2,1],[1,2]]})"), "f.json"); },
        "f.json"));
    EXPECT_THROW(body_from_json(json::parse(R"({"type":"ellipsoid","shape":[[1,2],[2,1]]})"), "f"), ConfigError);
}

TEST(Io, Phi)
{
    EXPECT_DOUBLE_EQ(parse_phi("power:2")(3.0), 9.0);
    EXPECT_NEAR(parse_phi("exp:1")(1.0), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(parse_phi(R"({"family":"power","p":3})")(2.0), 8.0);
    EXPECT_DOUBLE_EQ(parse_phi(R"({"phi":{"family":"power","p":1}})")(2.5), 2.5);
    const OrliczFunction e = phi_from_json(phi_to_json(make_normalized_exp(1.5)), "rt");
    EXPECT_NEAR(e(2.0), make_normalized_exp(1.5)(2.0), 1e-15);
    EXPECT_THROW(parse_phi("power:0.5"), ConfigError);
    EXPECT_THROW(parse_phi("exp:-1"), ConfigError);
    EXPECT_THROW(parse_phi("cosh:1"), ConfigError);
}

TEST(Corpus, BundledBodies)
{
    for (int n = 2; n <= 4; ++n) {
        const auto bodies = bundled_corpus(n);
        EXPECT_EQ(bodies.size(), n <= 3 ? 10u : 9u);
        std::set<std::string> names;
        for (const auto& b : bodies) {
            names.insert(b.name);
            EXPECT_EQ(b.body.dim(), n);
            EXPECT_GT(b.body.inradius(), 0.0) << b.name;
        }
        EXPECT_EQ(names.size(), bodies.size());
        EXPECT_EQ(bodies.front().name, "cube");
        EXPECT_NEAR(volume(bodies.front().body), std::pow(2.0, n), 1e-12);
    }
    // Seeded: two constructions agree.
    EXPECT_NEAR(volume(random_polytope(3, 20, 7)), volume(random_polytope(3, 20, 7)), 0.0);
    EXPECT_NEAR(volume(centered_simplex(3)), 1.0 / 6.0, 1e-12);
    EXPECT_NEAR(volume(cross_polytope(4)), 16.0 / 24.0, 1e-12);
}

TEST(Config, ParseAndValidate)
{
    const SuiteConfig c = config_from_json(json::parse(R"({"suite":"quermass","n":3,"j":[1,2],"samples":500,
        "phi":[{"family":"power","p":2}],"tolerances":{"sigmas":4}})"), "cfg.json");
    EXPECT_EQ(c.suite, "quermass");
    EXPECT_EQ(c.dims, std::vector<int>{3});
    EXPECT_EQ(c.js, (std::vector<int>{1, 2}));
    EXPECT_EQ(c.samples, 500u);
    EXPECT_EQ(c.phis.size(), 1u);
    EXPECT_EQ(c.tol.sigmas, 4.0);
    EXPECT_NO_THROW(validate(c));

    const SuiteConfig back = config_from_json(config_to_json(c), "rt");
    EXPECT_EQ(config_to_json(back), config_to_json(c));

    EXPECT_TRUE(throws_config_containing([] { config_from_json(json::parse(R"({"sample":10})"), "cfg.json"); },
                                         "unknown field 'sample'"));
    EXPECT_TRUE(throws_config_containing([] { config_from_json(json::parse(R"({"samples":"many"})"), "cfg.json"); },
                                         "samples"));
    EXPECT_TRUE(throws_config_containing(
        [] { validate(config_from_json(json::parse(R"({"n":3,"j":4})"), "cfg.json")); }, "exceeds n = 3"));
    EXPECT_THROW(validate(config_from_json(json::parse(R"({"n":5})"), "c")), ConfigError);
    EXPECT_THROW(validate(config_from_json(json::parse(R"({"eps":[0.01,0.02]})"), "c")), ConfigError);
    EXPECT_THROW(validate(config_from_json(json::parse(R"({"suite":"everything"})"), "c")), ConfigError);
    EXPECT_THROW(validate(config_from_json(json::parse(R"({"samples":0})"), "c")), ConfigError);
    EXPECT_THROW(run_suite(config_from_json(json::parse(R"({"n":2,"j":3})"), "c")), ConfigError);
}

TEST(Suite, SmallRunIsDeterministicAndSorted)
{
    SuiteConfig c;
    c.suite = "quermass";
    c.dims = {2};
    c.samples = 300;
    c.samples_outer = 100;
    c.samples_sl = 300;
    c.phis = {make_power(2.0)};
    const SuiteReport a = run_suite(c);
    const SuiteReport b = run_suite(c);
    EXPECT_EQ(a.json.dump(), b.json.dump());
    EXPECT_EQ(a.json["schema"], kReportSchema);
    EXPECT_EQ(a.json["summary"]["total"], a.checks.size());
    EXPECT_EQ(a.passed + a.failed + a.inconclusive, a.checks.size());
    EXPECT_EQ(a.failed, 0u);
    for (std::size_t i = 1; i < a.checks.size(); ++i) EXPECT_LT(a.checks[i - 1].check_id, a.checks[i].check_id);
    for (const auto& r : a.checks) EXPECT_EQ(decide(r), r.status) << r.check_id;

    const std::string csv = report_csv(a.checks);
    EXPECT_EQ(csv.rfind("check_id,kind,status,lhs,rhs,margin,stderr,abs_tol,candidate\n", 0), 0u);
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), a.checks.size() + 1);
}

TEST(Suite, FormatNumber)
{
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(1e-300), "1e-300");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(std::stod(format_number(M_PI)), M_PI);
}
