#ifndef FLAGOPS_CLI_HPP
#define FLAGOPS_CLI_HPP

#include <iosfwd>
#include <string>

#include "flagops/series.hpp"

namespace flagops {

/// Exit codes: 0 success, 2 config error, 3 regularity/divisibility failure,
/// 4 verification failure.
int run_job(const std::string& config_json, std::ostream& out, std::ostream& err);

/// Small expression parser for config-supplied coefficients and series,
/// e.g. "x - 2*t1*x^2 + 1/2*x^3".
RingElement parse_ring_element(const RingSpecPtr& spec, const std::string& text);
TruncatedSeries parse_series(const SeriesCtxPtr& ctx, const std::string& text);

} // namespace flagops

#endif
