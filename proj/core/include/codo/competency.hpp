#pragma once

#include <string>
#include <vector>

#include "codo/query.hpp"

namespace codo {

struct CqParams {
    std::string place = "Bangalore-Urban"; // CQ I: city or state label
    std::string untilDate = "2020-03-31";  // CQ I: inclusive cutoff (date part)
    std::string patient = "p000001";       // CQ III: codo local name
};

struct CqResult {
    std::string id;        // "I" .. "VIII"
    std::string question;
    std::string queryText;
    SolutionTable table;
};

// Figure 6, verbatim.
const std::string& figure6QueryText();

// Runs the eight canned competency questions over an already-materialized
// graph. Empty answers are valid answers.
std::vector<CqResult> competencySuite(const Graph& graph, const CqParams& params = {});

} // namespace codo
