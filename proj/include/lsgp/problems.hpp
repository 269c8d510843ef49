#pragma once

#include <filesystem>

#include "lsgp/core.hpp"
#include "lsgp/rng.hpp"

namespace lsgp {

struct ParitySpec {
  int k = 3;  // number of boolean arguments, 1..20
};

// Full truth table of the even-k-parity function: 2^k rows in ascending
// binary order (x1 is the most significant bit), target 1 iff an even number
// of inputs are 1.
FitnessCaseTable make_parity(ParitySpec spec);

// Loads a comma-separated regression table: n input columns then one target
// column per row, optional header line (detected by a non-numeric first
// field), LF or CRLF endings. Throws std::runtime_error with the offending
// row number on malformed or non-finite data.
FitnessCaseTable load_regression_csv(const std::filesystem::path& path, int n_inputs);

inline Value quartic_poly(Value x) { return x * x * x * x + x * x * x + x * x + x; }

// Desk-scale regression instance: inputs uniform in [-1, 1], target
// x^4 + x^3 + x^2 + x.
FitnessCaseTable make_quartic(int points, Rng& rng);

}  // namespace lsgp
