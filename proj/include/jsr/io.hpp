#pragma once

#include <optional>
#include <string>

#include "jsr/engine.hpp"

namespace jsr {

// Problem files: { "scalar": "real"|"complex", "n": int,
//                  "matrices": [ [[...row...], ...], ... ],
//                  "labels": optional [strings] }
// Real entries are plain numbers; complex entries are [re, im] pairs.
MatrixSet parse_problem(const std::string& path);
MatrixSet parse_problem_text(const std::string& json_text);
std::string emit_problem(const MatrixSet& set);

// Reports: bounds, exactness, SMP, per-iteration history, tolerances and the
// certificate (inline).  All numbers round-trip at 17 significant digits.
std::string emit_report(const RunResult& result, double runtime_ms);

std::string emit_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& path);
Certificate parse_certificate_text(const std::string& json_text);

// Lifted-operator dump for `jsr lift`: the dense svec-coordinate matrices.
std::string emit_lifted_operators(const MatrixSet& set);

// One-line human summary: JSR in [<lower>, <upper>] exact=<bool> smp=<word> steps=<k>
std::string summary_line(const RunResult& result);

}  // namespace jsr
