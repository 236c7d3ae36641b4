#pragma once

#include "twistcoh/errors.hpp"
#include "twistcoh/model.hpp"
#include "twistcoh/scalar.hpp"

#include <exception>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace twistcoh::cli {

/// Bad flags, grids or other command-line input.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The loaded model failed a required validation check.
class ValidationFailure : public ModelError {
public:
    using ModelError::ModelError;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"mn", "dolbeault", "bc", "frolicher", "spectrum", "hopf", "jets"};
    return names;
}

struct RunConfig {
    std::string command;
    std::string model = "hopf_surface";  ///< builtin name or path
    std::string alpha = "1";             ///< list "a,b,c" or range "a:b:step"
    std::string format = "json";
    std::string out;                     ///< empty: standard output
    int jet_degree = 8;
    int monoid_bound = 6;
    std::optional<std::pair<int, int>> pq;
    std::optional<std::string> theta;    ///< overrides the model's Lee form
    std::string beta = "1/2,1/3";        ///< hopf contraction eigenvalues
    std::string subst = "X1/2; X2/3";    ///< jets substitution, one series per variable
    std::string rhs = "X1*X2";           ///< jets right-hand side
};

/// Exact grid: comma-separated scalars, or "a:b:step" with b included when hit.
std::vector<Scalar> parse_grid(const std::string& text);
std::pair<int, int> parse_pq(const std::string& text);

/// Builtin or file model with the optional Lee-form override applied.
Model load_model(const RunConfig& config);

/// Runs the command and returns the formatted report.
std::string run(const RunConfig& config);

/// Distinct nonzero exit status per failure class.
int exit_code(const std::exception& e);
/// One-line JSON error record.
std::string error_record(const std::exception& e);

/// Worker count from TWISTCOH_THREADS (at least 1).
unsigned thread_count();

}  // namespace twistcoh::cli
