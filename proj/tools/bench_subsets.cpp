// Times the parallel subset scan and the averaging sweep against their
// serial reference twins, and checks that both sides agree exactly.
// Build with -DNDEBUG off if you want the internal assertions too.

#include "resroot/averaging.hpp"
#include "resroot/parabolic.hpp"

#include <chrono>
#include <cstdio>

using namespace resroot;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

std::string label(RootSystemType t) {
    std::string name = family_name(t.family);
    if (name.back() < '0' || name.back() > '9') name += std::to_string(t.rank);
    return name;
}

} // namespace

int main() {
    bool all_equal = true;

    std::printf("%-6s %10s %12s %12s %8s %6s\n", "system", "subsets", "serial_s",
                "parallel_s", "speedup", "equal");
    for (RootSystemType ty : std::vector<RootSystemType>{{Family::A, 3},
                                                         {Family::B, 3},
                                                         {Family::C, 3},
                                                         {Family::BC, 3},
                                                         {Family::G2, 2}}) {
        RootSystem rs = build_root_system(ty);
        auto t0 = std::chrono::steady_clock::now();
        CriterionReport s = verify_parabolicity_criterion_serial(rs);
        auto t1 = std::chrono::steady_clock::now();
        CriterionReport p = verify_parabolicity_criterion(rs);
        auto t2 = std::chrono::steady_clock::now();
        bool eq = s.examined == p.examined && s.closed == p.closed &&
                  s.candidates == p.candidates && s.confirmed == p.confirmed &&
                  s.failures == p.failures;
        all_equal = all_equal && eq && s.ok() && p.ok();
        double ts = seconds(t0, t1), tp = seconds(t1, t2);
        std::printf("%-6s %10llu %12.4f %12.4f %7.2fx %6s\n", label(ty).c_str(),
                    static_cast<unsigned long long>(s.examined), ts, tp,
                    tp > 0 ? ts / tp : 0.0, eq ? "yes" : "NO");
    }

    const std::vector<RootSystemType> sweep_types = {
        {Family::A, 4}, {Family::B, 4}, {Family::C, 4}, {Family::BC, 4},
        {Family::D, 5}, {Family::F4, 4}, {Family::E6, 6}};
    const int trials = 40;
    auto t0 = std::chrono::steady_clock::now();
    SweepResult s = averaging_sweep_serial(sweep_types, trials, 2026);
    auto t1 = std::chrono::steady_clock::now();
    SweepResult p = averaging_sweep(sweep_types, trials, 2026);
    auto t2 = std::chrono::steady_clock::now();
    bool eq = s == p;
    all_equal = all_equal && eq && s.runs == s.full;
    double ts = seconds(t0, t1), tp = seconds(t1, t2);
    std::printf("\nsweep  %10llu %12.4f %12.4f %7.2fx %6s\n",
                static_cast<unsigned long long>(s.runs), ts, tp,
                tp > 0 ? ts / tp : 0.0, eq ? "yes" : "NO");

    if (!all_equal) {
        std::printf("MISMATCH between serial and parallel results\n");
        return 1;
    }
    return 0;
}
