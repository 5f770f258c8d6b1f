#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "treeitp/oracle.hpp"
#include "treeitp/validator.hpp"

namespace treeitp {

enum class ColouringSource { Heuristic, File, Random };

struct RunConfig {
    ColouringSource colouring = ColouringSource::Heuristic;
    std::optional<std::uint64_t> seed;  // required for Random
    ValidationLevel validate = ValidationLevel::Full;
    bool simplify = false;
    bool dump_partials = false;
    OracleBudget budget;
    bool parallel = true;
};

enum ExitCode : int {
    kExitOk = 0,
    kExitProofRejected = 1,
    kExitObligationFailed = 2,
    kExitInputError = 3,
};

// Reads the problem and proof texts, interpolates and validates. Results go to `out`,
// diagnostics to `err`; the return value is one of the exit codes.
int run(const RunConfig& config, const std::vector<std::string>& texts, std::ostream& out,
        std::ostream& err);

}  // namespace treeitp
