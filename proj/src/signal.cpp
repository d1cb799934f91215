#include "pcsa/signal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string_view>

namespace pcsa {

DiscretizedSignal::DiscretizedSignal(std::vector<double> values, double a, double b)
    : a_(a), b_(b), values_(std::move(values))
{
    if (values_.empty())
        throw std::invalid_argument("signal needs at least one cell");
    if (!(b > a))
        throw std::invalid_argument("signal domain requires b > a");

    const auto m = values_.size();
    delta_ = (b_ - a_) / static_cast<double>(m);
    inv_delta_ = static_cast<double>(m) / (b_ - a_);

    prefix1_.resize(m + 1);
    prefix2_.resize(m + 1);
    prefix1_[0] = 0.0;
    prefix2_[0] = 0.0;
    // long double accumulation keeps differences of large prefixes accurate
    long double s1 = 0.0L;
    long double s2 = 0.0L;
    for (std::size_t j = 0; j < m; ++j) {
        const long double v = values_[j];
        s1 += v;
        s2 += v * v;
        prefix1_[j + 1] = static_cast<double>(s1 * delta_);
        prefix2_[j + 1] = static_cast<double>(s2 * delta_);
    }

    table_.resize(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        const double v = j < m ? values_[j] : 0.0;
        table_[j] = {prefix1_[j], prefix2_[j], v, v * v};
    }
}

double DiscretizedSignal::cell_edge(std::size_t k) const noexcept
{
    if (k >= values_.size())
        return b_;
    return a_ + static_cast<double>(k) * delta_;
}

std::size_t DiscretizedSignal::cell_index(double x) const noexcept
{
    const double t = (x - a_) * inv_delta_;
    if (!(t > 0.0))
        return 0;
    const auto m = values_.size();
    if (t >= static_cast<double>(m))
        return m - 1;
    return std::min(static_cast<std::size_t>(t), m - 1);
}

Cumulative DiscretizedSignal::cumulative(double x) const noexcept
{
    const double t = (x - a_) * inv_delta_;
    if (!(t > 0.0))
        return {};
    const auto m = values_.size();
    if (t >= static_cast<double>(m))
        return {table_[m].f1, table_[m].f2};

    const auto k = static_cast<std::size_t>(t);
    const auto& cell = table_[k];
    const double part = (t - static_cast<double>(k)) * delta_;
    if (part == 0.0)
        return {cell.f1, cell.f2};
    return {cell.f1 + part * cell.value, cell.f2 + part * cell.value2};
}

IntervalIntegrals DiscretizedSignal::interval_integrals(double xl, double xr) const
{
    if (!(xl <= xr))
        throw std::invalid_argument("interval_integrals: xl > xr");
    if (xl < a_ || xr > b_)
        throw std::invalid_argument("interval_integrals: interval outside the signal domain");
    if (xl == xr)
        return {};
    const auto left = cumulative(xl);
    const auto right = cumulative(xr);
    return {right.f1 - left.f1, right.f2 - left.f2, xr - xl};
}

DiscretizedSignal make_chirp(std::size_t cells)
{
    if (cells == 0)
        throw std::invalid_argument("make_chirp: cell count must be positive");
    std::vector<double> values(cells);
    const double delta = 1.0 / static_cast<double>(cells);
    for (std::size_t j = 0; j < cells; ++j) {
        const double x = (static_cast<double>(j) + 0.5) * delta;
        values[j] = 255.0 * std::cos(2.0 * std::numbers::pi * x * (1.0 + 5.0 * x));
    }
    return DiscretizedSignal(std::move(values), 0.0, 1.0);
}

DiscretizedSignal make_ramp(std::size_t cells, double slope, double a, double b)
{
    if (cells == 0)
        throw std::invalid_argument("make_ramp: cell count must be positive");
    if (!(b > a))
        throw std::invalid_argument("make_ramp: domain requires b > a");
    std::vector<double> values(cells);
    const double delta = (b - a) / static_cast<double>(cells);
    for (std::size_t j = 0; j < cells; ++j)
        values[j] = slope * (a + (static_cast<double>(j) + 0.5) * delta);
    return DiscretizedSignal(std::move(values), a, b);
}

DiscretizedSignal make_step_signal(std::size_t cells, std::size_t segments, std::uint64_t seed)
{
    if (cells == 0 || segments == 0 || segments > cells)
        throw std::invalid_argument("make_step_signal: need 1 <= segments <= cells");

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> edges(cells - 1);
    std::iota(edges.begin(), edges.end(), std::size_t{1});
    std::shuffle(edges.begin(), edges.end(), rng);
    edges.resize(segments - 1);
    std::sort(edges.begin(), edges.end());
    edges.push_back(cells);

    std::uniform_int_distribution<int> level(16, 240);
    std::vector<double> values(cells);
    std::size_t start = 0;
    int previous = -1;
    for (auto end : edges) {
        int v = level(rng);
        while (v == previous)
            v = level(rng);
        std::fill(values.begin() + static_cast<std::ptrdiff_t>(start),
                  values.begin() + static_cast<std::ptrdiff_t>(end), static_cast<double>(v));
        previous = v;
        start = end;
    }
    return DiscretizedSignal(std::move(values), 0.0, static_cast<double>(cells));
}

DiscretizedSignal from_values(std::vector<double> values, double a, double b)
{
    return DiscretizedSignal(std::move(values), a, b);
}

DiscretizedSignal add_gaussian_noise(const DiscretizedSignal& signal, const NoiseSpec& spec)
{
    if (!(spec.sigma >= 0.0))
        throw std::invalid_argument("add_gaussian_noise: sigma must be nonnegative");
    std::vector<double> values(signal.values().begin(), signal.values().end());
    if (spec.sigma > 0.0) {
        std::mt19937_64 rng(spec.seed);
        std::normal_distribution<double> noise(0.0, spec.sigma);
        for (auto& v : values)
            v += noise(rng);
    }
    return DiscretizedSignal(std::move(values), signal.a(), signal.b());
}

namespace {

class PgmReader
{
public:
    explicit PgmReader(std::string data) : data_(std::move(data)) {}

    void skip_space_and_comments()
    {
        while (pos_ < data_.size()) {
            const char c = data_[pos_];
            if (c == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::size_t read_unsigned(const char* what)
    {
        skip_space_and_comments();
        std::size_t value = 0;
        const char* first = data_.data() + pos_;
        const char* last = data_.data() + data_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first)
            throw PgmError(PgmError::Kind::parse, std::string("PGM: cannot read ") + what);
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    std::string_view take(std::size_t n)
    {
        if (data_.size() - pos_ < n)
            throw PgmError(PgmError::Kind::parse, "PGM: truncated pixel data");
        std::string_view out(data_.data() + pos_, n);
        pos_ += n;
        return out;
    }

    std::size_t pos_ = 0;
    std::string data_;
};

} // namespace

DiscretizedSignal load_pgm_row(const std::filesystem::path& path, std::size_t row)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw PgmError(PgmError::Kind::io, "PGM: cannot open " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (data.size() < 2 || data[0] != 'P' || (data[1] != '2' && data[1] != '5'))
        throw PgmError(PgmError::Kind::parse, "PGM: expected magic P2 or P5 in " + path.string());
    const bool binary = data[1] == '5';

    PgmReader reader(std::move(data));
    reader.pos_ = 2;
    const auto width = reader.read_unsigned("width");
    const auto height = reader.read_unsigned("height");
    const auto maxval = reader.read_unsigned("maxval");
    if (width == 0 || height == 0)
        throw PgmError(PgmError::Kind::parse, "PGM: empty image");
    if (maxval == 0 || maxval > 255)
        throw PgmError(PgmError::Kind::unsupported_maxval,
                       "PGM: unsupported maxval " + std::to_string(maxval) + " (only 1..255)");
    if (row >= height)
        throw PgmError(PgmError::Kind::row_out_of_range,
                       "PGM: row " + std::to_string(row) + " outside image of height " +
                           std::to_string(height));

    std::vector<double> values(width);
    if (binary) {
        // exactly one whitespace byte separates the header from the raster
        if (reader.pos_ >= reader.data_.size() ||
            !std::isspace(static_cast<unsigned char>(reader.data_[reader.pos_])))
            throw PgmError(PgmError::Kind::parse, "PGM: missing raster separator");
        ++reader.pos_;
        reader.take(row * width);
        const auto pixels = reader.take(width);
        for (std::size_t i = 0; i < width; ++i)
            values[i] = static_cast<double>(static_cast<unsigned char>(pixels[i]));
    } else {
        for (std::size_t i = 0; i < row * width; ++i)
            reader.read_unsigned("pixel");
        for (std::size_t i = 0; i < width; ++i) {
            const auto v = reader.read_unsigned("pixel");
            if (v > maxval)
                throw PgmError(PgmError::Kind::parse, "PGM: pixel exceeds maxval");
            values[i] = static_cast<double>(v);
        }
    }
    return DiscretizedSignal(std::move(values), 0.0, static_cast<double>(width));
}

std::vector<double> load_csv_values(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("CSV: cannot open " + path.string());

    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool seen_data_line = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        while (!view.empty() && std::isspace(static_cast<unsigned char>(view.front())))
            view.remove_prefix(1);
        while (!view.empty() && std::isspace(static_cast<unsigned char>(view.back())))
            view.remove_suffix(1);
        if (view.empty())
            continue;

        double v = 0.0;
        auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), v);
        if (ec != std::errc{} || ptr != view.data() + view.size()) {
            if (!seen_data_line && values.empty()) {
                seen_data_line = true;
                continue;
            }
            throw std::runtime_error("CSV: " + path.string() + ":" + std::to_string(line_no) +
                                     ": not a number");
        }
        seen_data_line = true;
        values.push_back(v);
    }
    if (values.empty())
        throw std::runtime_error("CSV: no values in " + path.string());
    return values;
}

} // namespace pcsa
