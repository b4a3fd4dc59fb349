#include "riskstat/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <utility>

namespace riskstat {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            return fields;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

double parse_field(std::string_view token, std::size_t line_no) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw std::runtime_error("non-numeric field '" + std::string(token) +
                                 "' at line " + std::to_string(line_no));
    return v;
}

constexpr int kMaxSpecDepth = 32;

RiskStatisticSpec spec_from_json_impl(const nlohmann::json& j, int depth) {
    if (depth > kMaxSpecDepth)
        throw std::runtime_error("statistic spec nesting is too deep");
    if (!j.is_object())
        throw std::runtime_error("statistic spec must be a JSON object");
    const StatKind kind = parse_kind(j.at("kind").get<std::string>());
    const nlohmann::json params =
        j.contains("params") ? j.at("params") : nlohmann::json::object();
    if (!params.is_object())
        throw std::runtime_error("spec params must be a JSON object");

    auto weights_of = [&](const char* key) {
        return params.at(key).get<std::vector<double>>();
    };

    RiskStatisticSpec spec = [&] {
        switch (kind) {
            case StatKind::worst_case:
                return RiskStatisticSpec::worst_case();
            case StatKind::neg_expectation:
                return RiskStatisticSpec::neg_expectation(weights_of("weights"));
            case StatKind::entropic:
                return RiskStatisticSpec::entropic(
                    params.at("rate").get<double>(), weights_of("weights"));
            case StatKind::discounted:
                return RiskStatisticSpec::discounted(
                    DiscountVector(weights_of("discount")),
                    spec_from_json_impl(params.at("base"), depth + 1));
            case StatKind::loss_based:
                return RiskStatisticSpec::loss_based(weights_of("weights"));
            case StatKind::scaled_worst_case:
                return RiskStatisticSpec::scaled_worst_case(
                    params.at("scale").get<double>());
        }
        throw std::runtime_error("unknown statistic kind");
    }();

    if (j.contains("claimed_axioms")) {
        std::set<Axiom> claims;
        for (const auto& name : j.at("claimed_axioms"))
            claims.insert(parse_axiom(name.get<std::string>()));
        spec.set_claimed_axioms(std::move(claims));
    }
    return spec;
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{})
        throw std::runtime_error("failed to format a double");
    return {buf.data(), ptr};
}

std::vector<ScenarioVector> parse_scenarios(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw std::runtime_error("scenario file is empty");

    const auto header = split_fields(lines[0]);
    if (header.empty() || header[0].empty())
        throw std::runtime_error("scenario header must name columns s1,...,sN");
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string expected = "s" + std::to_string(i + 1);
        if (header[i] != expected)
            throw std::runtime_error("scenario header column " +
                                     std::to_string(i + 1) + " must be '" +
                                     expected + "', got '" +
                                     std::string(header[i]) + "'");
    }
    const std::size_t n = header.size();

    std::vector<ScenarioVector> out;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t line_no = li + 1;
        const auto fields = split_fields(lines[li]);
        if (fields.size() != n)
            throw std::runtime_error(
                "ragged row at line " + std::to_string(line_no) +
                ": expected " + std::to_string(n) + " fields, got " +
                std::to_string(fields.size()));
        std::vector<double> values(n);
        for (std::size_t k = 0; k < n; ++k)
            values[k] = parse_field(fields[k], line_no);
        try {
            out.emplace_back(std::move(values));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("invalid scenario row at line " +
                                     std::to_string(line_no) + ": " + e.what());
        }
    }
    if (out.empty()) throw std::runtime_error("scenario file has no data rows");
    return out;
}

std::vector<ScenarioVector> load_scenarios(const std::filesystem::path& path) {
    return parse_scenarios(read_text_file(path));
}

RiskStatisticSpec spec_from_json(const nlohmann::json& j) {
    try {
        return spec_from_json_impl(j, 0);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed statistic spec: ") +
                                 e.what());
    }
}

nlohmann::ordered_json spec_to_json(const RiskStatisticSpec& spec) {
    nlohmann::ordered_json j;
    j["kind"] = std::string(kind_name(spec.kind()));
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, NegExpectationParams>) {
                params["weights"] = p.weights;
            } else if constexpr (std::is_same_v<T, EntropicParams>) {
                params["rate"] = p.rate;
                params["weights"] = p.weights;
            } else if constexpr (std::is_same_v<T, DiscountedParams>) {
                params["discount"] = std::vector<double>(
                    p.discount.factors().begin(), p.discount.factors().end());
                params["base"] = spec_to_json(*p.base);
            } else if constexpr (std::is_same_v<T, LossBasedParams>) {
                params["weights"] = p.weights;
            } else if constexpr (std::is_same_v<T, ScaledWorstCaseParams>) {
                params["scale"] = p.scale;
            }
        },
        spec.params());
    j["params"] = std::move(params);
    nlohmann::ordered_json claims = nlohmann::ordered_json::array();
    for (Axiom a : spec.claimed_axioms())
        claims.push_back(std::string(axiom_name(a)));
    j["claimed_axioms"] = std::move(claims);
    return j;
}

RiskStatisticSpec load_spec(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("failed to parse spec file '" +
                                 path.string() + "': " + e.what());
    }
    return spec_from_json(j);
}

void save_spec(const RiskStatisticSpec& spec,
               const std::filesystem::path& path) {
    write_text_file(path, spec_to_json(spec).dump(2) + "\n");
}

std::string penalty_table_csv(const PenaltySurface& surface) {
    std::ostringstream out;
    for (std::size_t i = 0; i < surface.dimension; ++i)
        out << 'p' << (i + 1) << ',';
    out << "value,boundary,mode\n";
    for (const PenaltyEntry& e : surface.grid) {
        for (double w : e.weight.values()) out << format_double(w) << ',';
        out << format_double(e.value) << ','
            << (e.attained_on_boundary ? '1' : '0') << ','
            << penalty_mode_name(surface.mode) << '\n';
    }
    return out.str();
}

PenaltySurface parse_penalty_table(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw std::runtime_error("penalty table is empty");
    const auto header = split_fields(lines[0]);
    if (header.size() < 4)
        throw std::runtime_error(
            "penalty table header must be p1,...,pN,value,boundary,mode");
    const std::size_t n = header.size() - 3;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string expected = "p" + std::to_string(i + 1);
        if (header[i] != expected)
            throw std::runtime_error("penalty table column " +
                                     std::to_string(i + 1) + " must be '" +
                                     expected + "'");
    }
    if (header[n] != "value" || header[n + 1] != "boundary" ||
        header[n + 2] != "mode")
        throw std::runtime_error(
            "penalty table header must end with value,boundary,mode");

    PenaltySurface surface;
    surface.dimension = n;
    bool mode_set = false;
    bool all_simplex = true;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t line_no = li + 1;
        const auto fields = split_fields(lines[li]);
        if (fields.size() != n + 3)
            throw std::runtime_error("ragged penalty row at line " +
                                     std::to_string(line_no));
        std::vector<double> w(n);
        for (std::size_t k = 0; k < n; ++k)
            w[k] = parse_field(fields[k], line_no);
        const double value = parse_field(fields[n], line_no);
        bool boundary;
        if (fields[n + 1] == "0") {
            boundary = false;
        } else if (fields[n + 1] == "1") {
            boundary = true;
        } else {
            throw std::runtime_error("boundary flag must be 0 or 1 at line " +
                                     std::to_string(line_no));
        }
        const PenaltyMode mode = parse_penalty_mode(fields[n + 2]);
        if (mode_set && mode != surface.mode)
            throw std::runtime_error("penalty table mixes modes at line " +
                                     std::to_string(line_no));
        surface.mode = mode;
        mode_set = true;
        try {
            SubProbabilityWeight weight(std::move(w));
            all_simplex = all_simplex && weight.on_simplex();
            surface.grid.push_back({std::move(weight), value, boundary});
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("invalid weight at line " +
                                     std::to_string(line_no) + ": " + e.what());
        }
    }
    if (surface.grid.empty())
        throw std::runtime_error("penalty table has no rows");
    surface.weight_set =
        all_simplex ? WeightSet::simplex : WeightSet::sub_probability;
    return surface;
}

void save_penalty_table(const PenaltySurface& surface,
                        const std::filesystem::path& path) {
    write_text_file(path, penalty_table_csv(surface));
}

PenaltySurface load_penalty_table(const std::filesystem::path& path) {
    return parse_penalty_table(read_text_file(path));
}

nlohmann::ordered_json counterexample_json(const Counterexample& ce) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json vectors = nlohmann::ordered_json::object();
    for (const auto& [name, values] : ce.vectors) vectors[name] = values;
    j["vectors"] = std::move(vectors);
    nlohmann::ordered_json scalars = nlohmann::ordered_json::object();
    for (const auto& [name, value] : ce.scalars) scalars[name] = value;
    j["scalars"] = std::move(scalars);
    j["lhs"] = ce.lhs;
    j["rhs"] = ce.rhs;
    j["violation"] = ce.violation;
    return j;
}

nlohmann::ordered_json axiom_report_json(const AxiomReport& report) {
    nlohmann::ordered_json j;
    j["axiom"] = report.axiom;
    j["passed"] = report.passed;
    j["trials"] = report.trials;
    j["tolerance"] = report.tolerance;
    j["seed"] = report.seed;
    j["counterexample"] = report.counterexample
                              ? counterexample_json(*report.counterexample)
                              : nlohmann::ordered_json(nullptr);
    return j;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw std::runtime_error("failed reading file: " + path.string());
    return std::move(buf).str();
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open file for writing: " +
                                 path.string());
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out)
        throw std::runtime_error("failed writing file: " + path.string());
}

}  // namespace riskstat
