#include "rfuowc/validation.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace rfuowc::validation;

TEST_CASE("group catalogue")
{
    for (int id = 1; id <= kGroupCount; ++id) {
        CHECK_FALSE(group_name(id).empty());
    }
    CHECK_THROWS_AS(group_name(0), std::out_of_range);
    CHECK_THROWS_AS(group_name(kGroupCount + 1), std::out_of_range);
    CHECK(default_mc_samples(Level::fast) == 100000);
    CHECK(default_mc_samples(Level::full) == 10000000);
    REQUIRE(pointing_pairs().size() == 2);
    CHECK(pointing_pairs()[0].params.a0 == 0.5076);
    CHECK(pointing_pairs()[1].params.xi == 0.5244);
}

TEST_CASE("deterministic groups pass")
{
    for (int id : {3, 4, 5, 7}) {
        const GroupResult r = run_group(id, {});
        INFO(r.name << ": " << r.summary);
        for (const auto& f : r.failures) {
            INFO(f);
        }
        CHECK(r.id == id);
        CHECK(r.passed);
        CHECK(r.seconds >= 0.0);
    }
}

TEST_CASE("moment group passes at a small sample size")
{
    Options o;
    o.mc_samples = 20000;
    const GroupResult r = run_group(2, o);
    INFO(r.summary);
    CHECK(r.passed);
}

TEST_CASE("flooring gap report lists every preset and pointing pair")
{
    const GroupResult r = run_group(7, {});
    CHECK(r.notes.size() == 12);
}
