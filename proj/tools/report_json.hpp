#pragma once

#include <json.hpp>

#include "casaskit/casearch.hpp"
#include "casaskit/localize.hpp"
#include "casaskit/polycore.hpp"
#include "casaskit/roots.hpp"

namespace casaskit::report {

using Json = nlohmann::ordered_json;

/// Exact values travel as strings ("p/q", "(re,im)"); doubles as numbers,
/// with NaN and infinities written as null.
Json exact(const GaussianRational& z);
Json number(double x);
Json complex_number(std::complex<double> z);

Json roots(const RootMultiset& rm);
Json identity(const IdentityReport& r);
Json bound(const BoundReport& b);
Json extremal(const ExtremalStats& s);
Json certificate(const CACertificate& c);
Json shared_counts(const SharedRootCounts& c);
Json search_config(const SearchConfig& c);
Json search_report(const SearchReport& r);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace casaskit::report
