#ifndef FLAGOPS_VERIFY_HPP
#define FLAGOPS_VERIFY_HPP

#include <string>
#include <vector>

#include "flagops/operations.hpp"

namespace flagops {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Structure checks for one (datum, law) pair: law axioms, regularity,
/// triangularity and diagonals of C and D, duality pairing, GKM membership of
/// the basis classes, elimination round trips.
std::vector<CheckResult> verify_structure(const RootDatum& datum, const std::string& law_name,
                                          const LawFactory& law, int precision);

/// Operation-level checks: morphism identity, GKM preservation, the
/// forgetful-restriction diagram consistency, multiplicativity on sampled
/// GKM classes.
std::vector<CheckResult> verify_operation(const OperationSpec& spec);

} // namespace flagops

#endif
