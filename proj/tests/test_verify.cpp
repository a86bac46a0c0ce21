#include "hermgeo/verify.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace hermgeo;

namespace {

int count_status(const SuiteReport& r, const std::string& check, const std::string& status) {
    int c = 0;
    for (const CheckRecord& rec : r.records)
        if (rec.check == check && rec.status == status) ++c;
    return c;
}

const CheckRecord* find_record(const SuiteReport& r, const std::string& check,
                               const std::string& metric) {
    for (const CheckRecord& rec : r.records)
        if (rec.check == check && rec.metric == metric) return &rec;
    return nullptr;
}

TEST(Suites, unknown_name_is_rejected_with_the_valid_list) {
    try {
        run_suite("no-such-suite");
        FAIL() << "expected a DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("key-identity"), std::string::npos);
    }
}

TEST(Suites, names_match_the_published_list) {
    const auto& names = suite_names();
    ASSERT_EQ(names.size(), 10u);
    EXPECT_NE(std::find(names.begin(), names.end(), "all"), names.end());
    EXPECT_NE(std::find(names.begin(), names.end(), "gauduchon-balanced"), names.end());
}

TEST(Suites, key_identity_sweep_passes_with_seeded_partners) {
    CheckOptions opts;
    opts.points = 40;
    const SuiteReport r = run_suite("key-identity", opts);
    // two checks over six stock metrics plus five seeded conformal partners
    EXPECT_EQ(r.records.size(), 22u);
    EXPECT_TRUE(r.overall_pass);
    int conformal_seen = 0;
    for (const CheckRecord& rec : r.records) {
        EXPECT_EQ(rec.status, "ran");
        if (rec.metric.rfind("conformal(", 0) == 0) ++conformal_seen;
    }
    EXPECT_EQ(conformal_seen, 12);  // (1 stock + 5 seeded) x 2 checks
}

TEST(Suites, scalar_identity_passes) {
    CheckOptions opts;
    opts.points = 30;
    const SuiteReport r = run_suite("scalar-identity", opts);
    EXPECT_TRUE(r.overall_pass);
    for (const CheckRecord& rec : r.records) EXPECT_TRUE(rec.pass) << rec.check << " " << rec.metric;
}

TEST(Suites, adjoint_agreement_passes_in_both_modes) {
    CheckOptions opts;
    opts.points = 25;
    EXPECT_TRUE(run_suite("adjoint-agreement", opts).overall_pass);
    opts.mode = DerivSource::FiniteDifference;
    EXPECT_TRUE(run_suite("adjoint-agreement", opts).overall_pass);
}

TEST(Suites, conformal_lemma_runs_on_conformal_members_only) {
    CheckOptions opts;
    opts.points = 25;
    const SuiteReport r = run_suite("conformal-lemma", opts);
    EXPECT_TRUE(r.overall_pass);
    // stock factor + five seeded factors over two bases = eleven conformal members
    EXPECT_EQ(count_status(r, "conformal-adjoint-shift", "ran"), 11);
    EXPECT_EQ(count_status(r, "conformal-adjoint-shift", "not-applicable"), 5);
    EXPECT_EQ(count_status(r, "conformal-second-order-shift", "ran"), 11);
}

TEST(Suites, kahler_degeneracy_applies_to_kahler_families_only) {
    CheckOptions opts;
    opts.points = 30;
    const SuiteReport r = run_suite("kahler-degeneracy", opts);
    EXPECT_TRUE(r.overall_pass);
    EXPECT_EQ(count_status(r, "kahler-mixed-connection", "ran"), 2);           // flat, fs
    EXPECT_EQ(count_status(r, "kahler-mixed-connection", "not-applicable"), 4);
    const CheckRecord* na = find_record(r, "kahler-torsion", "hopf0:n=2");
    ASSERT_NE(na, nullptr);
    EXPECT_EQ(na->status, "not-applicable");
    EXPECT_TRUE(na->pass);
    EXPECT_FALSE(na->note.empty());
}

TEST(Suites, hopf_closed_forms_pass) {
    CheckOptions opts;
    opts.points = 30;
    const SuiteReport r = run_suite("hopf-closed-forms", opts);
    EXPECT_TRUE(r.overall_pass);
    // the flatness check applies only to the perturbed family
    EXPECT_EQ(count_status(r, "hopf-lc-ricci-flat", "ran"), 2);  // n = 2 and n = 3
    EXPECT_EQ(count_status(r, "hopf-lc-ricci-flat", "not-applicable"), 4);
    const CheckRecord* flat3 = find_record(r, "hopf-lc-ricci-flat", "hopfp:n=3");
    ASSERT_NE(flat3, nullptr);
    EXPECT_TRUE(flat3->pass);
    EXPECT_LT(flat3->max_residual, 1e-6);
}

TEST(Suites, gauduchon_balanced_passes_and_records_the_defect_witness) {
    CheckOptions opts;
    opts.points = 25;
    const SuiteReport r = run_suite("gauduchon-balanced", opts);
    EXPECT_TRUE(r.overall_pass);
    const CheckRecord* defect = find_record(r, "balanced-defect", "hopf0:n=2");
    ASSERT_NE(defect, nullptr);
    EXPECT_EQ(defect->status, "ran");
    EXPECT_TRUE(defect->pass);
    EXPECT_GT(defect->max_residual, 0.05);
    EXPECT_FALSE(defect->note.empty());
    const CheckRecord* kahler = find_record(r, "balanced-defect", "flat:n=2");
    ASSERT_NE(kahler, nullptr);
    EXPECT_LT(kahler->max_residual, 1e-8);
}

TEST(Suites, integral_identities_pass_on_standard_family) {
    CheckOptions opts;
    opts.points = 20;
    opts.grid_resolution = 4;
    const SuiteReport r = run_suite("integral-identities", opts);
    EXPECT_TRUE(r.overall_pass);
    // n = 3 stays out of the integral sweep; flat has no annulus chart at all
    const CheckRecord* n3 = find_record(r, "integral-total-scalar", "hopfp:n=3");
    ASSERT_NE(n3, nullptr);
    EXPECT_EQ(n3->status, "not-applicable");
    const CheckRecord* adj = find_record(r, "integral-adjoint-norm", "hopf0:n=2");
    ASSERT_NE(adj, nullptr);
    EXPECT_EQ(adj->status, "not-applicable");  // flatness hypothesis fails there
    const CheckRecord* ref = find_record(r, "integral-refinement", "hopfp:n=2");
    ASSERT_NE(ref, nullptr);
    EXPECT_TRUE(ref->pass);
    EXPECT_NE(ref->note.find("R=16"), std::string::npos);
}

TEST(Suites, inoue_suite_appends_the_strip_model) {
    CheckOptions opts;
    opts.points = 10;
    const SuiteReport r = run_suite("inoue-curvature", opts);
    EXPECT_TRUE(r.overall_pass);
    EXPECT_EQ(count_status(r, "inoue-weight-profile", "ran"), 1);
    EXPECT_EQ(count_status(r, "inoue-weight-profile", "not-applicable"), 6);
}

TEST(Driver, per_check_errors_are_captured_not_fatal) {
    CheckOptions opts;
    opts.points = 3;
    opts.step = 0.5;  // stencil margin exceeds the annulus: every point throws
    opts.augment = false;
    const SuiteReport r = run_suite("key-identity", {make_hopf_standard(2)}, opts);
    EXPECT_FALSE(r.overall_pass);
    for (const CheckRecord& rec : r.records) {
        EXPECT_FALSE(rec.pass);
        EXPECT_EQ(rec.note.rfind("error: ", 0), 0u) << rec.note;
    }
}

TEST(Driver, tolerance_override_applies_to_every_check) {
    CheckOptions opts;
    opts.points = 5;
    opts.tol_override = 1e-30;
    opts.augment = false;
    const SuiteReport r = run_suite("scalar-identity", {make_fubini_study(2)}, opts);
    EXPECT_FALSE(r.overall_pass);
    for (const CheckRecord& rec : r.records) EXPECT_EQ(rec.tolerance, 1e-30);
}

TEST(Report, json_shape_and_environment) {
    CheckOptions opts;
    opts.points = 10;
    const SuiteReport r = run_suite("kahler-degeneracy", opts);
    const nlohmann::json j = to_json(r);
    EXPECT_EQ(j["suite"], "kahler-degeneracy");
    EXPECT_EQ(j["environment"]["version"], kVersion);
    EXPECT_EQ(j["environment"]["mode"], "analytic");
    EXPECT_EQ(j["environment"]["step"], "default");
    EXPECT_EQ(j["environment"]["seed"], 2024u);
    EXPECT_FALSE(j["environment"].contains("timestamp"));
    EXPECT_EQ(j["checks"].size(), r.records.size());
    EXPECT_TRUE(j["overall_pass"].is_boolean());
    for (const auto& c : j["checks"]) {
        EXPECT_TRUE(c.contains("check"));
        EXPECT_TRUE(c.contains("identity"));
        EXPECT_TRUE(c.contains("metric"));
        EXPECT_TRUE(c.contains("max_residual"));
        EXPECT_TRUE(c.contains("tolerance"));
        EXPECT_TRUE(c.contains("status"));
        EXPECT_TRUE(c.contains("pass"));
    }
}

TEST(Report, serialization_is_byte_identical_across_runs) {
    CheckOptions opts;
    opts.points = 15;
    const std::string a = to_json(run_suite("scalar-identity", opts)).dump(2);
    const std::string b = to_json(run_suite("scalar-identity", opts)).dump(2);
    EXPECT_EQ(a, b);
}

TEST(Report, table_renders_every_record) {
    CheckOptions opts;
    opts.points = 10;
    const SuiteReport r = run_suite("kahler-degeneracy", opts);
    const std::string t = render_table(r);
    EXPECT_NE(t.find("overall: PASS"), std::string::npos);
    EXPECT_NE(t.find("kahler-mixed-connection"), std::string::npos);
    EXPECT_NE(t.find("n/a"), std::string::npos);
    EXPECT_NE(t.find("fs:n=2"), std::string::npos);
}

TEST(Report, coverage_table_lists_every_check_once) {
    const auto rows = coverage_table();
    EXPECT_GE(rows.size(), 20u);
    int hits = 0;
    for (const auto& [id, identity] : rows) {
        EXPECT_FALSE(identity.empty());
        if (id == "ricci-identity" || id == "inoue-weight-profile") ++hits;
    }
    EXPECT_EQ(hits, 2);
}

}  // namespace
