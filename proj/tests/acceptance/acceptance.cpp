// Runs every check group at the full level (1e7 Monte Carlo samples) and
// prints one line per acceptance criterion. Exit status is the number of
// failed criteria.

#include "rfuowc/validation.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

using namespace rfuowc::validation;

int main(int argc, char** argv)
{
    Options o;
    o.level = Level::full;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--fast") {
            o.level = Level::fast;
        } else if (arg.starts_with("--mc-samples=")) {
            o.mc_samples = std::strtoull(arg.c_str() + 13, nullptr, 10);
        } else {
            std::fprintf(stderr, "usage: %s [--fast] [--mc-samples=N]\n", argv[0]);
            return 64;
        }
    }

    int failed = 0;
    run_all(o, [&](const GroupResult& r) {
        failed += r.passed ? 0 : 1;
        std::printf("criterion %d %-36s %s  (%.1f s) %s\n", r.id, r.name.c_str(), r.passed ? "PASS" : "FAIL",
                    r.seconds, r.summary.c_str());
        for (const auto& f : r.failures) {
            std::printf("    %s\n", f.c_str());
        }
        for (const auto& n : r.notes) {
            std::printf("    | %s\n", n.c_str());
        }
        std::fflush(stdout);
    });
    std::printf("%d of %d criteria passed\n", kGroupCount - failed, kGroupCount);
    return failed;
}
