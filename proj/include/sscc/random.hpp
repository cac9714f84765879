#pragma once

#include "sscc/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace sscc {

// Deterministic sampling position. Every random draw in a run is a pure
// function of (seed, index); replaying a run with the same seed replays the
// identical sequence because each rule advances the index by a fixed amount.
struct SampleCounter {
    std::uint64_t seed = 0;
    std::uint64_t index = 0;

    bool operator==(const SampleCounter&) const = default;
};

// Raw counter-based generator: uniform double in the open interval (0, 1),
// a pure function of (seed, index). Consecutive seeds give decorrelated
// streams (the seed is hashed before the per-index stream word is formed).
double uniform01(std::uint64_t seed, std::uint64_t index);

// One uniform(0,1) probability draw; advances the counter by exactly one.
std::pair<double, SampleCounter> sample_prob(SampleCounter c);

enum class DistKind {
    Constant, // exact rational, consumes no index
    Norm,     // mean, stdev
    Exp,      // rate
    Unif,     // lo, hi
    Gam,      // shape, scale
    Weib,     // scale, shape
    Chi,      // degrees of freedom
    Log,      // log-space mean, log-space stdev
};

// A duration law attached to an agent and rule kind. Parameters are
// validated at construction; sampling any non-constant law consumes exactly
// one counter index (rejection methods run on an internal substream derived
// from that index) and clamps negative draws to zero.
class StochasticExpression {
public:
    static StochasticExpression constant(mpq_class value);
    static StochasticExpression norm(double mean, double stdev);
    static StochasticExpression exponential(double rate);
    static StochasticExpression unif(double lo, double hi);
    static StochasticExpression gam(double shape, double scale);
    static StochasticExpression weib(double scale, double shape);
    static StochasticExpression chi(double df);
    static StochasticExpression log_norm(double mean, double stdev);

    DistKind kind() const { return kind_; }
    const mpq_class& constant_value() const { return const_; }
    double param1() const { return a_; }
    double param2() const { return b_; }

    bool operator==(const StochasticExpression& o) const;

    std::string str() const; // canonical spec-file form, e.g. "Norm(1, 0.2)"

private:
    StochasticExpression(DistKind k, mpq_class c, double a, double b)
        : kind_(k), const_(std::move(c)), a_(a), b_(b) {}

    DistKind kind_;
    mpq_class const_;
    double a_ = 0;
    double b_ = 0;
};

// Draws one duration. Constants return their value with the counter
// untouched; every distribution consumes exactly one index.
std::pair<TimeValue, SampleCounter> sample_time(const StochasticExpression& e,
                                                SampleCounter c);

} // namespace sscc
