#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "afl/decision.hpp"

namespace afl::cli {

enum ExitCode : int { kYes = 0, kNo = 1, kUsage = 2, kBudget = 3 };

/// Algebra spellings:
///   free | free:<n> | farey | chain:<k> | behncke-leptin:<m>,<n>
///   effros-shen:golden | effros-shen:inv-e | effros-shen:surd:<P>,<D>,<Q>
///   effros-shen:cf:<pre>;<per> | effros-shen:stream:<path>
Backend parse_backend(const std::string& spec, std::size_t cf_budget = kDefaultCfBudget);

/// Documented Behncke-Leptin preset: X1 ↦ (1,0), X2 ↦ (0,1).
Assignment behncke_leptin_preset(const GammaAlgebra& algebra);

/// Applies a named formula transformer (order->zero, word->zero, ecc->zero,
/// central->zero, zero->central[:n]) and returns the canonical rendering.
std::string transpile(const std::string& reduction, std::span<const Term> terms);

/// Runs the command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace afl::cli
