#pragma once

// Report emission and the subcommand dispatcher behind the CLI.  Output is
// deterministic for a fixed configuration except for the elapsed fields.

#include <iosfwd>
#include <string>
#include <vector>

#include "manin/counting.hpp"
#include "manin/densities.hpp"
#include "manin/divisor.hpp"
#include "manin/fan.hpp"

namespace manin {

// plain-text fan format: one "a b" ray per line, '#' starts a comment
Fan2D parse_fan_text(std::istream& in);
void write_fan_text(std::ostream& out, const Fan2D& f);

std::string fan_report_json(const Fan2D& input_fan);
std::string cox_report_json();
std::string density_report_json(u64 p, unsigned k);
std::string predict_report_json(u64 cutoff, double tol);

struct RunConfig {
    std::string subcommand;          // count | predict | compare | fan | density | cox
    u64 max_height = 0;
    std::vector<u64> heights;        // explicit B list (count/compare)
    unsigned k_lo = 0, k_hi = 0;     // compare: B = 2^k for k in [k_lo, k_hi]
    std::string method = "fast";     // brute | fast | descent | all
    u64 p = 2;
    unsigned k = 1;
    u64 cutoff = 1000000;
    double tol = 1e-4;
    std::string fan_file;
    std::string output;              // empty = stdout
    std::string fit_output;          // compare: empty = append to main output
    std::string format;              // csv | json (defaulted per subcommand)
    unsigned workers = 0;            // 0 = MANIN_CUBIC_WORKERS env or 1
};

// Executes one subcommand; returns the process exit status.  Errors and
// method disagreements emit a one-line JSON record on `err` and exit nonzero.
int run(const RunConfig& cfg, std::ostream& err);

unsigned resolve_workers(unsigned requested);

extern const int kSchemaVersion;

} // namespace manin
