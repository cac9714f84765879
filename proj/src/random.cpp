#include "sscc/random.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sscc {
namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull; // 2^64 / golden ratio

// splitmix64 output function: a strong 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) {
    x += kGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t stream_word(std::uint64_t seed, std::uint64_t index) {
    // Hash the seed first so consecutive seeds (SMC uses seed, seed+1, ...)
    // land in unrelated regions of the counter sequence.
    return mix64(mix64(seed ^ 0x5851F42D4C957F2Dull) + index * kGamma);
}

double word_to_unit(std::uint64_t w) {
    // 53-bit mantissa, centered: value in the open interval (0, 1). An open
    // interval keeps "probability <= 0" impossible and normalization sums
    // positive.
    return (static_cast<double>(w >> 11) + 0.5) * 0x1p-53;
}

// Substream used by rejection samplers: a fresh deterministic sequence of
// uniforms derived from the single consumed (seed, index) position.
class Substream {
public:
    Substream(std::uint64_t seed, std::uint64_t index)
        : base_(mix64(stream_word(seed, index) ^ 0xA0761D6478BD642Full)) {}

    double next() { return word_to_unit(mix64(base_ + (n_++) * kGamma)); }

private:
    std::uint64_t base_;
    std::uint64_t n_ = 0;
};

double draw_standard_normal(Substream& s) {
    // Marsaglia polar method.
    for (;;) {
        double u = 2.0 * s.next() - 1.0;
        double v = 2.0 * s.next() - 1.0;
        double r = u * u + v * v;
        if (r > 0.0 && r < 1.0)
            return u * std::sqrt(-2.0 * std::log(r) / r);
    }
}

// Marsaglia-Tsang for shape >= 1; shapes below 1 are boosted and corrected
// with the standard u^(1/shape) factor.
double draw_gamma(Substream& s, double shape, double scale) {
    double boost = 1.0;
    if (shape < 1.0) {
        boost = std::pow(s.next(), 1.0 / shape);
        shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = draw_standard_normal(s);
        double t = 1.0 + c * x;
        if (t <= 0.0)
            continue;
        double v = t * t * t;
        double u = s.next();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2 ||
            std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
            return boost * d * v * scale;
    }
}

std::string fmt(double d) {
    std::ostringstream os;
    os << d;
    return os.str();
}

void require(bool ok, const char* what) {
    if (!ok)
        throw std::invalid_argument(std::string("StochasticExpression: ") + what);
}

} // namespace

double uniform01(std::uint64_t seed, std::uint64_t index) {
    return word_to_unit(stream_word(seed, index));
}

std::pair<double, SampleCounter> sample_prob(SampleCounter c) {
    double u = uniform01(c.seed, c.index);
    c.index += 1;
    return {u, c};
}

StochasticExpression StochasticExpression::constant(mpq_class value) {
    value.canonicalize();
    require(value >= 0, "Const value must be nonnegative");
    return StochasticExpression(DistKind::Constant, std::move(value), 0, 0);
}

StochasticExpression StochasticExpression::norm(double mean, double stdev) {
    require(stdev > 0, "Norm stdev must be positive");
    return StochasticExpression(DistKind::Norm, 0, mean, stdev);
}

StochasticExpression StochasticExpression::exponential(double rate) {
    require(rate > 0, "Exp rate must be positive");
    return StochasticExpression(DistKind::Exp, 0, rate, 0);
}

StochasticExpression StochasticExpression::unif(double lo, double hi) {
    require(lo < hi, "Unif requires lo < hi");
    return StochasticExpression(DistKind::Unif, 0, lo, hi);
}

StochasticExpression StochasticExpression::gam(double shape, double scale) {
    require(shape > 0, "Gam shape must be positive");
    require(scale > 0, "Gam scale must be positive");
    return StochasticExpression(DistKind::Gam, 0, shape, scale);
}

StochasticExpression StochasticExpression::weib(double scale, double shape) {
    require(scale > 0, "Weib scale must be positive");
    require(shape > 0, "Weib shape must be positive");
    return StochasticExpression(DistKind::Weib, 0, scale, shape);
}

StochasticExpression StochasticExpression::chi(double df) {
    require(df > 0, "Chi degrees of freedom must be positive");
    return StochasticExpression(DistKind::Chi, 0, df, 0);
}

StochasticExpression StochasticExpression::log_norm(double mean, double stdev) {
    require(stdev > 0, "Log stdev must be positive");
    return StochasticExpression(DistKind::Log, 0, mean, stdev);
}

bool StochasticExpression::operator==(const StochasticExpression& o) const {
    return kind_ == o.kind_ && const_ == o.const_ && a_ == o.a_ && b_ == o.b_;
}

std::string StochasticExpression::str() const {
    switch (kind_) {
    case DistKind::Constant:
        return "Const(" + rational_str(const_) + ")";
    case DistKind::Norm:
        return "Norm(" + fmt(a_) + ", " + fmt(b_) + ")";
    case DistKind::Exp:
        return "Exp(" + fmt(a_) + ")";
    case DistKind::Unif:
        return "Unif(" + fmt(a_) + ", " + fmt(b_) + ")";
    case DistKind::Gam:
        return "Gam(" + fmt(a_) + ", " + fmt(b_) + ")";
    case DistKind::Weib:
        return "Weib(" + fmt(a_) + ", " + fmt(b_) + ")";
    case DistKind::Chi:
        return "Chi(" + fmt(a_) + ")";
    case DistKind::Log:
        return "Log(" + fmt(a_) + ", " + fmt(b_) + ")";
    }
    return "?";
}

std::pair<TimeValue, SampleCounter> sample_time(const StochasticExpression& e,
                                                SampleCounter c) {
    if (e.kind() == DistKind::Constant)
        return {TimeValue(e.constant_value()), c};

    double draw = 0;
    switch (e.kind()) {
    case DistKind::Norm: {
        Substream s(c.seed, c.index);
        draw = e.param1() + e.param2() * draw_standard_normal(s);
        break;
    }
    case DistKind::Exp: {
        double u = uniform01(c.seed, c.index);
        draw = -std::log1p(-u) / e.param1();
        break;
    }
    case DistKind::Unif: {
        double u = uniform01(c.seed, c.index);
        draw = e.param1() + u * (e.param2() - e.param1());
        break;
    }
    case DistKind::Gam: {
        Substream s(c.seed, c.index);
        draw = draw_gamma(s, e.param1(), e.param2());
        break;
    }
    case DistKind::Weib: {
        double u = uniform01(c.seed, c.index);
        draw = e.param1() * std::pow(-std::log1p(-u), 1.0 / e.param2());
        break;
    }
    case DistKind::Chi: {
        Substream s(c.seed, c.index);
        draw = draw_gamma(s, e.param1() / 2.0, 2.0);
        break;
    }
    case DistKind::Log: {
        Substream s(c.seed, c.index);
        draw = std::exp(e.param1() + e.param2() * draw_standard_normal(s));
        break;
    }
    case DistKind::Constant:
        break; // handled above
    }
    c.index += 1;
    if (!(draw > 0.0))
        return {TimeValue::zero(), c}; // negative draws clamp to zero
    return {TimeValue::from_double(draw), c};
}

mpq_class parse_rational(const std::string& text) {
    if (text.empty())
        throw std::invalid_argument("empty rational literal");
    std::string t = text;
    bool negative = false;
    if (t[0] == '-') {
        negative = true;
        t = t.substr(1);
    }
    mpq_class q;
    auto dot = t.find('.');
    auto slash = t.find('/');
    if (dot != std::string::npos && slash != std::string::npos)
        throw std::invalid_argument("malformed rational: " + text);
    try {
        if (slash != std::string::npos) {
            q = mpq_class(t, 10);
        } else if (dot != std::string::npos) {
            std::string whole = t.substr(0, dot);
            std::string frac = t.substr(dot + 1);
            if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument("malformed rational: " + text);
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
            mpz_class num(whole.empty() ? "0" : whole);
            num = num * scale + mpz_class(frac);
            q = mpq_class(num, scale);
        } else {
            q = mpq_class(mpz_class(t));
        }
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational: " + text);
    }
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

std::string rational_str(const mpq_class& q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_str();
}

} // namespace sscc
