#include "pcsa/approximation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace pcsa {

BoundaryVector::BoundaryVector(double a, double b, std::vector<double> boundaries)
    : a_(a), b_(b), boundaries_(std::move(boundaries))
{
    if (!(b > a))
        throw std::invalid_argument("BoundaryVector: domain requires b > a");
}

BoundaryVector BoundaryVector::uniform(double a, double b, std::size_t segments)
{
    if (segments == 0)
        throw std::invalid_argument("BoundaryVector::uniform: need at least one segment");
    std::vector<double> xs(segments - 1);
    for (std::size_t i = 1; i < segments; ++i)
        xs[i - 1] = a + static_cast<double>(i) * (b - a) / static_cast<double>(segments);
    return BoundaryVector(a, b, std::move(xs));
}

bool BoundaryVector::is_sorted() const noexcept
{
    return std::is_sorted(boundaries_.begin(), boundaries_.end());
}

BoundaryVector BoundaryVector::sorted() const
{
    auto xs = boundaries_;
    std::sort(xs.begin(), xs.end());
    return BoundaryVector(a_, b_, std::move(xs));
}

std::vector<double> BoundaryVector::knots() const
{
    std::vector<double> out;
    out.reserve(boundaries_.size() + 2);
    out.push_back(a_);
    out.insert(out.end(), boundaries_.begin(), boundaries_.end());
    out.push_back(b_);
    return out;
}

namespace {

void check_domain(const DiscretizedSignal& signal, const BoundaryVector& x)
{
    if (x.a() != signal.a() || x.b() != signal.b())
        throw std::invalid_argument("boundary vector domain differs from signal domain");
    for (double xi : x.boundaries()) {
        if (!(xi >= x.a() && xi <= x.b()))
            throw std::invalid_argument("boundary " + format_real(xi) + " outside [a, b]");
    }
}

} // namespace

PiecewiseApprox build_approximation(const DiscretizedSignal& signal, const BoundaryVector& x)
{
    check_domain(signal, x);
    PiecewiseApprox out{x.sorted(), {}, {}, 0.0};
    const auto knots = out.boundaries.knots();
    const auto segments = knots.size() - 1;
    out.segment_values.resize(segments);
    out.segment_errors.resize(segments);

    double total = 0.0;
    for (std::size_t i = 0; i < segments; ++i) {
        const auto in = signal.interval_integrals(knots[i], knots[i + 1]);
        if (in.length > 0.0) {
            out.segment_values[i] = in.i1 / in.length;
            out.segment_errors[i] = segment_error(in);
        } else {
            out.segment_values[i] = signal.values()[signal.cell_index(knots[i])];
            out.segment_errors[i] = 0.0;
        }
        total += out.segment_errors[i];
    }
    out.mse = total / signal.width();
    return out;
}

double energy_sorted(const DiscretizedSignal& signal, std::span<const double> sorted_boundaries) noexcept
{
    double total = 0.0;
    double left_x = signal.a();
    Cumulative left{};
    for (double x : sorted_boundaries) {
        const auto right = signal.cumulative(x);
        total += segment_error({right.f1 - left.f1, right.f2 - left.f2, x - left_x});
        left = right;
        left_x = x;
    }
    const auto right = signal.cumulative(signal.b());
    total += segment_error({right.f1 - left.f1, right.f2 - left.f2, signal.b() - left_x});
    return total / signal.width();
}

double energy(const DiscretizedSignal& signal, const BoundaryVector& x)
{
    check_domain(signal, x);
    const auto sorted = x.sorted();
    return energy_sorted(signal, sorted.boundaries());
}

ErrorBalance segment_error_report(const PiecewiseApprox& approx)
{
    const auto knots = approx.boundaries.knots();
    ErrorBalance out;
    bool first = true;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        if (!(knots[i + 1] > knots[i]))
            continue;
        const double e = approx.segment_errors[i];
        if (first) {
            out.min_error = out.max_error = e;
            first = false;
        } else {
            out.min_error = std::min(out.min_error, e);
            out.max_error = std::max(out.max_error, e);
        }
    }
    out.ratio = out.min_error > 0.0 ? out.max_error / out.min_error
                                    : std::numeric_limits<double>::infinity();
    return out;
}

double linearized_error(double h, double slope)
{
    if (!(h > 0.0))
        throw std::invalid_argument("linearized_error: segment width must be positive");
    return h * h * h * slope * slope / 12.0;
}

double exact_error_factor(double eta)
{
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::invalid_argument("exact_error_factor: eta must lie in [0, 1]");
    return (1.0 - 3.0 * eta + 3.0 * eta * eta) / 3.0;
}

std::string format_real(double value)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{})
        return "nan";
    return std::string(buf, ptr);
}

void write_step_table(std::ostream& out, const PiecewiseApprox& approx)
{
    const auto knots = approx.boundaries.knots();
    out << "x fx\n";
    for (std::size_t i = 0; i < approx.segment_values.size(); ++i)
        out << format_real(knots[i]) << ' ' << format_real(approx.segment_values[i]) << '\n';
    out << format_real(knots.back()) << ' ' << format_real(approx.segment_values.back()) << '\n';
}

} // namespace pcsa
