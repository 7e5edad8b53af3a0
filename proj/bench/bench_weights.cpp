// Compares the serial reference enumerator against the OpenMP kernel, on one
// codeword enumeration and on a whole-field scan.

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "recur2code/catalog.hpp"

using namespace recur2code;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(int repeats, const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = Clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    }
    return best;
}

int max_workers() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"enumeration kernel benchmark: serial reference vs OpenMP"};
    uint64_t q = 49;
    std::string a_text, b_text;
    int repeats = 3;
    bool scan = false;
    app.add_option("--q", q, "Field size (default 49)");
    app.add_option("--a", a_text, "Coefficient a (default: heaviest pair of the field)");
    app.add_option("--b", b_text, "Coefficient b");
    app.add_option("--repeat", repeats, "Repetitions per measurement (min is reported)");
    app.add_flag("--scan", scan, "Also benchmark the whole-field scan");
    CLI11_PARSE(app, argc, argv);

    try {
        const FieldPtr field = Field::build_from_q(q);
        FieldElement a, b;
        if (!a_text.empty() && !b_text.empty()) {
            a = field->parse(a_text);
            b = field->parse(b_text);
        } else {
            // pick the pair with the largest period
            uint64_t best_n = 0;
            for (uint64_t ai = 0; ai < q; ++ai) {
                for (uint64_t bi = 0; bi + 1 < q; ++bi) {
                    const auto ca = ai == 0 ? field->zero() : field->from_log(static_cast<int64_t>(ai - 1));
                    const auto cb = field->from_log(static_cast<int64_t>(bi));
                    const uint64_t n = period(*field, RecurrenceParams(*field, ca, cb));
                    if (n > best_n) {
                        best_n = n;
                        a = ca;
                        b = cb;
                    }
                }
            }
        }
        const RecurrenceParams params(*field, a, b);
        const auto code = build_code(field, params);
        std::cout << "pair: q=" << q << " a=" << field->str(a) << " b=" << field->str(b)
                  << "  N=" << code.length << "  (" << (q * q - 1) << " codewords, "
                  << q * q * code.length << " symbol ops per enumeration)\n";

        const auto reference = weights_bruteforce_serial(code);
        const double serial_ms =
            time_ms(repeats, [&] { (void)weights_bruteforce_serial(code); });
        std::cout << std::fixed << std::setprecision(2);
        std::cout << "  serial reference   " << std::setw(10) << serial_ms << " ms\n";
        for (int w = 1; w <= max_workers(); w *= 2) {
            EnumerationOptions opts;
            opts.workers = w;
            if (weights_bruteforce(code, opts) != reference) {
                std::cerr << "kernel mismatch against the serial reference\n";
                return 2;
            }
            const double ms = time_ms(repeats, [&] { (void)weights_bruteforce(code, opts); });
            std::cout << "  openmp x" << w << "         " << std::setw(10) << ms
                      << " ms   speedup " << serial_ms / ms << "\n";
        }

        if (scan) {
            std::cout << "scan: all " << q * (q - 1) << " pairs of F_" << q << "\n";
            ScanOptions one;
            one.workers = 1;
            const auto serial_records = scan_field(q, one);
            const double scan1 = time_ms(1, [&] { (void)scan_field(q, one); });
            std::cout << "  workers=1          " << std::setw(10) << scan1 << " ms\n";
            ScanOptions full;
            full.workers = max_workers();
            if (scan_field(q, full) != serial_records) {
                std::cerr << "parallel scan mismatch against workers=1\n";
                return 2;
            }
            const double scanN = time_ms(1, [&] { (void)scan_field(q, full); });
            std::cout << "  workers=" << max_workers() << "          " << std::setw(10) << scanN
                      << " ms   speedup " << scan1 / scanN << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
