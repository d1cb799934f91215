#include "pcsa/experiments.hpp"

#include "pcsa/dar_bruckstein.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <string_view>

namespace pcsa {

Method parse_method(const std::string& name)
{
    if (name == "db")
        return Method::db;
    if (name == "pso")
        return Method::pso;
    if (name == "dp")
        return Method::dp;
    throw UsageError("unknown method '" + name + "' (expected db, pso or dp)");
}

const char* method_name(Method method) noexcept
{
    switch (method) {
    case Method::db:
        return "db";
    case Method::pso:
        return "pso";
    case Method::dp:
        return "dp";
    }
    return "?";
}

namespace {

template <typename T>
T parse_number(std::string_view text, const char* what)
{
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw UsageError(std::string("cannot parse ") + what + " '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

DiscretizedSignal base_source(const std::string& source, const SourceOptions& options)
{
    if (source == "chirp")
        return make_chirp(options.cells.value_or(100000));
    if (source == "ramp")
        return make_ramp(options.cells.value_or(1000));

    const auto colon = source.find(':');
    const std::string_view kind = std::string_view(source).substr(0, colon);
    const std::string_view rest =
        colon == std::string::npos ? std::string_view{} : std::string_view(source).substr(colon + 1);

    if (kind == "steps") {
        const auto parts = split(rest, ':');
        if (parts.size() != 2)
            throw UsageError("steps source expects steps:<count>:<seed>");
        const auto count = parse_number<std::size_t>(parts[0], "step count");
        const auto seed = parse_number<std::uint64_t>(parts[1], "step seed");
        const auto cells = options.cells.value_or(256);
        if (count == 0 || count > cells)
            throw UsageError("step count must lie in [1, cells]");
        return make_step_signal(cells, count, seed);
    }
    if (kind == "csv") {
        if (rest.empty())
            throw UsageError("csv source expects csv:<path>");
        auto values = load_csv_values(std::string(rest));
        const auto [a, b] = options.domain.value_or(std::pair{0.0, static_cast<double>(values.size())});
        return from_values(std::move(values), a, b);
    }
    if (kind == "pgm") {
        const auto last = rest.rfind(':');
        if (last == std::string_view::npos)
            throw UsageError("pgm source expects pgm:<path>:<row>");
        const auto row = parse_number<std::size_t>(rest.substr(last + 1), "pgm row");
        return load_pgm_row(std::string(rest.substr(0, last)), row);
    }
    throw UsageError("unknown source '" + source + "'");
}

} // namespace

DiscretizedSignal make_source(const std::string& source, const SourceOptions& options)
{
    auto signal = base_source(source, options);
    if (options.noise_sigma > 0.0)
        return add_gaussian_noise(signal, {options.noise_sigma, options.noise_seed});
    return signal;
}

std::vector<std::size_t> parse_n_list(const std::string& text)
{
    std::vector<std::size_t> out;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            throw UsageError("range list expects first:last:step");
        const auto first = parse_number<std::size_t>(parts[0], "N");
        const auto last = parse_number<std::size_t>(parts[1], "N");
        const auto stride = parse_number<std::size_t>(parts[2], "step");
        if (stride == 0 || first > last)
            throw UsageError("range list needs first <= last and a positive step");
        for (auto n = first; n <= last; n += stride)
            out.push_back(n);
    } else {
        for (auto part : split(text, ','))
            out.push_back(parse_number<std::size_t>(part, "N"));
    }
    if (out.empty())
        throw UsageError("empty N list");
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] == 0)
            throw UsageError("N must be positive");
        if (i > 0 && out[i] <= out[i - 1])
            throw UsageError("N list must be strictly ascending");
    }
    return out;
}

Solution solve(const DiscretizedSignal& signal, std::size_t segments, Method method, const SolveOptions& options)
{
    if (segments == 0)
        throw UsageError("N must be positive");
    switch (method) {
    case Method::db: {
        // a single cell carries no derivative information; split it uniformly
        auto x = signal.cells() < 2 ? BoundaryVector::uniform(signal.a(), signal.b(), segments)
                                    : db_boundaries(derivative_density(signal), segments);
        const double e = energy(signal, x);
        return {std::move(x), e, std::nullopt};
    }
    case Method::pso: {
        auto stats = multi_run(signal, segments, options.swarm, options.runs, options.jobs);
        auto x = stats.best_boundaries;
        const double e = stats.min;
        return {std::move(x), e, std::move(stats)};
    }
    case Method::dp: {
        auto r = dp_optimal(signal, segments, options.grid);
        return {std::move(r.boundaries), r.energy, std::nullopt};
    }
    }
    throw UsageError("unknown method");
}

std::vector<ExperimentRow> sweep(const DiscretizedSignal& signal, const std::vector<std::size_t>& n_list,
                                 const SolveOptions& options, bool with_oracle)
{
    std::optional<DerivativeDensity> density;
    if (signal.cells() >= 2)
        density = derivative_density(signal);

    std::vector<ExperimentRow> rows;
    rows.reserve(n_list.size());
    for (auto n : n_list) {
        ExperimentRow row;
        row.segments = n;
        const auto db = density ? db_boundaries(*density, n) : BoundaryVector::uniform(signal.a(), signal.b(), n);
        row.db_mse = energy(signal, db);

        const auto stats = multi_run(signal, n, options.swarm, options.runs, options.jobs);
        row.mu = stats.mu;
        row.sigma = stats.sigma;
        row.min = stats.min;
        row.max = stats.max;

        if (with_oracle)
            row.dp_mse = dp_optimal(signal, n, options.grid).energy;
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_table(std::ostream& out, const std::vector<ExperimentRow>& rows)
{
    const bool oracle = !rows.empty() && rows.front().dp_mse.has_value();
    out << "N db_mse mu sigma min max" << (oracle ? " dp_mse" : "") << '\n';
    for (const auto& r : rows) {
        out << r.segments << ' ' << format_real(r.db_mse) << ' ' << format_real(r.mu) << ' '
            << format_real(r.sigma) << ' ' << format_real(r.min) << ' ' << format_real(r.max);
        if (oracle)
            out << ' ' << format_real(r.dp_mse.value_or(std::nan("")));
        out << '\n';
    }
}

void write_db_log_table(std::ostream& out, const std::vector<ExperimentRow>& rows)
{
    out << "N log10E\n";
    for (const auto& r : rows)
        out << r.segments << ' ' << format_real(std::log10(r.db_mse)) << '\n';
}

void write_pso_log_table(std::ostream& out, const std::vector<ExperimentRow>& rows)
{
    out << "N log10Min\n";
    for (const auto& r : rows)
        out << r.segments << ' ' << format_real(std::log10(r.min)) << '\n';
}

void write_approximation(std::ostream& out, const PiecewiseApprox& approx, Method method)
{
    out << "# method " << method_name(method) << " N " << approx.segment_values.size() << '\n';
    out << "# mse " << format_real(approx.mse) << '\n';
    out << "# boundaries";
    for (double x : approx.boundaries.boundaries())
        out << ' ' << format_real(x);
    out << '\n';
    write_step_table(out, approx);
}

void write_balance(std::ostream& out, const PiecewiseApprox& approx, Method method)
{
    const auto knots = approx.boundaries.knots();
    out << "# method " << method_name(method) << " N " << approx.segment_values.size() << '\n';
    out << "segment start end value error\n";
    for (std::size_t i = 0; i < approx.segment_values.size(); ++i) {
        out << i << ' ' << format_real(knots[i]) << ' ' << format_real(knots[i + 1]) << ' '
            << format_real(approx.segment_values[i]) << ' ' << format_real(approx.segment_errors[i]) << '\n';
    }
    const auto balance = segment_error_report(approx);
    out << "# min_error " << format_real(balance.min_error) << " max_error " << format_real(balance.max_error)
        << " ratio " << format_real(balance.ratio) << '\n';
}

void write_trace(std::ostream& out, const std::vector<double>& trace)
{
    out << "iter energy\n";
    for (std::size_t i = 0; i < trace.size(); ++i)
        out << i << ' ' << format_real(trace[i]) << '\n';
}

} // namespace pcsa
