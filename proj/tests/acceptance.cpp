// Runs every acceptance criterion over seeds 1..100 and prints one line each.
// Optional argument: a seed range such as 1..20.

#include "invlip/suite.hpp"

#include <cstdio>
#include <exception>

int main(int argc, char** argv) {
    try {
        invlip::SuiteOptions options;
        if (argc > 1) options = invlip::parse_seed_range(argv[1]);
        int failed = 0;
        for (const auto& r : invlip::run_suite(options)) {
            std::printf("%s criterion %d (%s): %s [%.2fs]\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                        r.detail.c_str(), r.seconds);
            if (!r.pass) ++failed;
        }
        std::printf("%d criteria failed\n", failed);
        return failed == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance: %s\n", e.what());
        return 3;
    }
}
