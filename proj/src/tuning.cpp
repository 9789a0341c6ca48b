#include <fetgv/tuning.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fetgv {

void TuneSpec::validate() const
{
    if (!(alpha1.lo < alpha1.hi) || (search_alpha0 && !(alpha0.lo < alpha0.hi))) {
        throw std::invalid_argument("parameter ranges need lo < hi");
    }
    if (budget < 1) throw std::invalid_argument("tuning budget must be at least 1");
    if (!(width > 0.0)) throw std::invalid_argument("tuning width must be positive");
}

namespace {

struct Golden
{
    double lo = 0.0;
    double hi = 0.0;
    double c = 0.0;
    double d = 0.0;
    double fc = 0.0;
    double fd = 0.0;
    bool have_c = false;
    bool have_d = false;
};

const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;

} // namespace

TuneResult tune_parameters(const TuneScore& score, const TuneSpec& spec)
{
    spec.validate();
    const double ninf = -std::numeric_limits<double>::infinity();

    // x[0] = log10 alpha1, x[1] = log10 alpha0
    std::array<double, 2> x{0.5 * (spec.alpha1.lo + spec.alpha1.hi), 0.5 * (spec.alpha0.lo + spec.alpha0.hi)};
    std::array<Golden, 2> state;
    const std::array<LogRange, 2> ranges{spec.alpha1, spec.alpha0};
    for (std::size_t k = 0; k < 2; ++k) {
        state[k].lo = ranges[k].lo;
        state[k].hi = ranges[k].hi;
        state[k].c = state[k].hi - ratio * (state[k].hi - state[k].lo);
        state[k].d = state[k].lo + ratio * (state[k].hi - state[k].lo);
    }

    TuneResult result;
    result.best_score = ninf;
    const int coords = spec.search_alpha0 ? 2 : 1;

    auto budget_left = [&] { return static_cast<int>(result.trace.size()) < spec.budget; };
    auto evaluate = [&](std::size_t k, double value) {
        std::array<double, 2> p = x;
        p[k] = value;
        TuneEval e;
        e.alpha1 = std::pow(10.0, p[0]);
        e.alpha0 = std::pow(10.0, p[1]);
        try {
            e.score = score(e.alpha1, e.alpha0);
            if (std::isnan(e.score)) throw std::runtime_error("score is NaN");
        } catch (const std::exception& ex) {
            e.ok = false;
            e.error = ex.what();
            e.score = ninf;
        }
        result.trace.push_back(e);
        if (e.ok && e.score > result.best_score) {
            result.best_score = e.score;
            result.alpha1 = e.alpha1;
            result.alpha0 = e.alpha0;
            if (p[k] != x[k]) {
                x = p;
                // Cached scores of the other coordinate were taken at the old point.
                for (std::size_t o = 0; o < 2; ++o) {
                    if (o != k) state[o].have_c = state[o].have_d = false;
                }
            }
        }
        return e.score;
    };

    evaluate(0, x[0]);
    if (result.trace.front().ok == false) {
        result.alpha1 = result.trace.front().alpha1;
        result.alpha0 = result.trace.front().alpha0;
    }

    bool progress = true;
    while (progress && budget_left()) {
        progress = false;
        for (std::size_t k = 0; k < static_cast<std::size_t>(coords) && budget_left(); ++k) {
            Golden& s = state[k];
            if (s.hi - s.lo < spec.width) continue;
            progress = true;
            if (!s.have_c) {
                s.fc = evaluate(k, s.c);
                s.have_c = true;
                if (!budget_left()) break;
            }
            if (!s.have_d) {
                s.fd = evaluate(k, s.d);
                s.have_d = true;
                if (!budget_left()) break;
            }
            if (s.fc >= s.fd) {
                s.hi = s.d;
                s.d = s.c;
                s.fd = s.fc;
                s.c = s.hi - ratio * (s.hi - s.lo);
                s.fc = evaluate(k, s.c);
            } else {
                s.lo = s.c;
                s.c = s.d;
                s.fc = s.fd;
                s.d = s.lo + ratio * (s.hi - s.lo);
                s.fd = evaluate(k, s.d);
            }
        }
    }
    return result;
}

} // namespace fetgv
