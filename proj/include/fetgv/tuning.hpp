#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fetgv {

/// Search interval of one parameter on the log10 scale.
struct LogRange
{
    double lo = -3.0;
    double hi = 0.0;
};

struct TuneSpec
{
    LogRange alpha1{-3.0, 0.0};
    LogRange alpha0{-3.0, 1.0};
    /// Maximum number of score evaluations.
    int budget = 20;
    /// A coordinate stops once its interval is narrower than this (log10 units).
    double width = 0.05;
    /// False for first-order TV, where alpha0 is not searched.
    bool search_alpha0 = true;

    void validate() const;
};

struct TuneEval
{
    double alpha1 = 0.0;
    double alpha0 = 0.0;
    double score = 0.0;
    bool ok = true;
    std::string error;
};

struct TuneResult
{
    double alpha1 = 0.0;
    double alpha0 = 0.0;
    double best_score = 0.0;
    std::vector<TuneEval> trace;
};

/// Score of one parameter pair; larger is better.
using TuneScore = std::function<double(double alpha1, double alpha0)>;

///
/// Coordinate-wise golden-section maximization of `score` over log10 alpha.
///
/// Starts at the interval midpoints, then alternates between the searched
/// coordinates, shrinking one interval per step. Exceptions thrown by the
/// score are recorded in the trace and treated as -inf. The result is the
/// best of all evaluations.
///
TuneResult tune_parameters(const TuneScore& score, const TuneSpec& spec);

} // namespace fetgv
