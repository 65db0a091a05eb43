// Acceptance gate: runs the eleven pinned criteria and prints one
// pass/fail line each. Exit code 0 only when every criterion passes.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "ich/verify.hpp"

int main(int argc, char** argv) {
    ich::verify::Options opts;
    if (const char* env = std::getenv("ICH_VERIFY_TOL_SCALE")) {
        double v = std::atof(env);
        if (v > 0.0) opts.tol_scale = v;
    }
    if (argc > 1) opts.only_id = std::atoi(argv[1]);

    auto t0 = std::chrono::steady_clock::now();
    auto results = ich::verify::run_all(opts);
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fputs(ich::verify::format_table(results, total).c_str(), stdout);

    if (!ich::verify::all_passed(results)) return 1;
    if (opts.only_id == 0 && total >= 300.0) {
        std::fprintf(stderr, "acceptance suite exceeded the 5 minute budget\n");
        return 1;
    }
    return 0;
}
