#include "esc/io.hpp"

#include "esc/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace esc::io {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write to '" + path.string() + "' failed");
}

std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

std::string json_quote(std::string_view s) { return '"' + json_escape(s) + '"'; }

double parse_csv_number(std::string_view field, std::size_t line) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value))
        throw ParseError("line " + std::to_string(line) + ": malformed number '" +
                         std::string(field) + "'");
    return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            return fields;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

// --- strict JSON helpers -------------------------------------------------

json parse_json(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
    require_object(obj, where);
    for (const char* key : required)
        if (!obj.contains(key))
            throw ParseError(where + ": missing field '" + key + "'");
    for (const auto& [key, ignored] : obj.items()) {
        bool known = false;
        for (const char* k : required) known = known || key == k;
        for (const char* k : optional) known = known || key == k;
        if (!known) throw ParseError(where + ": unknown field '" + key + "'");
    }
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_string())
        throw ParseError(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

double get_number(const json& obj, const char* key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number())
        throw ParseError(where + ": field '" + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw ParseError(where + ": field '" + key + "' must be finite");
    return d;
}

double get_number_or(const json& obj, const char* key, const std::string& where,
                     double fallback) {
    return obj.contains(key) ? get_number(obj, key, where) : fallback;
}

// --- shared JSON fragments ------------------------------------------------

std::string source_spec_to_json(const SourceSpec& spec) {
    std::string out = "{\"id\":" + json_quote(spec.id) + ",\"label\":" + json_quote(spec.label);
    out += ",\"c_amu_per_gwy\":" + render_number(spec.c_amu_per_gwy);
    out += ",\"window_years\":" + render_number(spec.window.years()) + "}";
    return out;
}

SourceSpec source_spec_from_json(const json& j, const std::string& where) {
    check_keys(j, where, {"id", "label", "c_amu_per_gwy", "window_years"});
    SourceSpec spec;
    spec.id = get_string(j, "id", where);
    spec.label = get_string(j, "label", where);
    spec.c_amu_per_gwy = get_number(j, "c_amu_per_gwy", where);
    if (spec.c_amu_per_gwy < 0.0)
        throw ParseError(where + ": c_amu_per_gwy out of range (must be >= 0)");
    const double window_years = get_number(j, "window_years", where);
    spec.window = Duration::from_years(window_years);
    if (!spec.window.positive())
        throw ParseError(where + ": window_years out of range (must be > 0)");
    return spec;
}

SeasonalProfile profile_from_json(const json& j, const std::string& where) {
    check_keys(j, where, {"base_gwy"},
               {"trend_gwy_per_year", "amplitude_gwy", "period_years", "phase_rad",
                "noise_sigma_gwy", "seed"});
    SeasonalProfile p;
    p.base_gwy = get_number(j, "base_gwy", where);
    p.trend_gwy_per_year = get_number_or(j, "trend_gwy_per_year", where, 0.0);
    p.amplitude_gwy = get_number_or(j, "amplitude_gwy", where, 0.0);
    p.period = Duration::from_years(get_number_or(j, "period_years", where, 0.0));
    p.phase_rad = get_number_or(j, "phase_rad", where, 0.0);
    p.noise_sigma_gwy = get_number_or(j, "noise_sigma_gwy", where, 0.0);
    if (j.contains("seed")) {
        const auto& v = j.at("seed");
        if (!v.is_number_unsigned())
            throw ParseError(where + ": field 'seed' must be a non-negative integer");
        p.seed = v.get<std::uint64_t>();
    }
    return p;
}

std::string violations_cell(const GrowthAssessment& a) {
    std::string out;
    for (const auto& entry : a.compensation) {
        if (entry.satisfied) continue;
        if (!out.empty()) out += ';';
        out += entry.source_id;
    }
    return out;
}

} // namespace

std::string render_number(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
    return {buf, res.ptr};
}

// --- capacity series CSV ---------------------------------------------------

std::map<std::string, CapacitySeries> parse_series_csv(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    const auto next_line = [&](std::string_view& line) {
        if (pos >= text.size()) return false;
        const std::size_t nl = text.find('\n', pos);
        line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        return true;
    };

    std::string_view header;
    if (!next_line(header) || header != series_csv_header)
        throw ParseError("header mismatch: expected '" + std::string(series_csv_header) + "'");

    struct Accumulator {
        std::string unit_tag;
        std::vector<CapacitySample> samples;
    };
    std::map<std::string, Accumulator> acc;

    std::string_view line;
    std::size_t rows = 0;
    while (next_line(line)) {
        if (line.empty() && pos >= text.size()) break; // trailing newline
        const auto fields = split_fields(line);
        if (fields.size() != 4)
            throw ParseError("line " + std::to_string(line_no) + ": expected 4 fields, got " +
                             std::to_string(fields.size()));
        Timestamp t;
        try {
            t = parse_timestamp(fields[0]);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        const std::string id(fields[1]);
        if (id.empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty source_id");
        const double capacity = parse_csv_number(fields[2], line_no);
        if (capacity < 0.0)
            throw ParseError("line " + std::to_string(line_no) + ": negative capacity for '" +
                             id + "'");
        EnergyUnit unit;
        try {
            unit = parse_unit(fields[3]);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        auto& a = acc[id];
        if (a.samples.empty()) {
            a.unit_tag = std::string(fields[3]);
        } else {
            if (a.unit_tag != fields[3])
                throw ParseError("line " + std::to_string(line_no) + ": mixed units for '" + id +
                                 "' (" + a.unit_tag + " then " + std::string(fields[3]) + ")");
            if (t <= a.samples.back().t)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": non-increasing timestamp for '" + id + "'");
        }
        a.samples.push_back({t, {capacity, unit}});
        ++rows;
    }
    if (rows == 0) throw ParseError("no samples");

    std::map<std::string, CapacitySeries> out;
    for (auto& [id, a] : acc) out.emplace(id, CapacitySeries(id, std::move(a.samples)));
    return out;
}

std::map<std::string, CapacitySeries> load_series(const std::filesystem::path& path) {
    try {
        return parse_series_csv(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string series_to_csv(const std::map<std::string, CapacitySeries>& series) {
    std::string out(series_csv_header);
    out += '\n';
    for (const auto& [id, ser] : series) {
        for (const auto& sample : ser.samples()) {
            out += format_timestamp(sample.t);
            out += ',';
            out += id;
            out += ',';
            out += render_number(sample.capacity.magnitude);
            out += ',';
            out += unit_tag(sample.capacity.unit);
            out += '\n';
        }
    }
    return out;
}

void write_series(const std::map<std::string, CapacitySeries>& series,
                  const std::filesystem::path& path) {
    write_file(path, series_to_csv(series));
}

// --- matrix configuration JSON ----------------------------------------------

std::vector<SourceSpec> parse_matrix_config(std::string_view json_text) {
    const json root = parse_json(json_text, "matrix config");
    check_keys(root, "matrix config", {"sources"});
    const auto& sources = root.at("sources");
    if (!sources.is_array())
        throw ParseError("matrix config: 'sources' must be an array");
    std::vector<SourceSpec> specs;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const std::string where = "matrix config: sources[" + std::to_string(i) + "]";
        specs.push_back(source_spec_from_json(sources[i], where));
        if (!seen.insert(specs.back().id).second)
            throw ParseError("matrix config: duplicate id \"" + specs.back().id + "\"");
    }
    return specs;
}

std::vector<SourceSpec> load_matrix_config(const std::filesystem::path& path) {
    try {
        return parse_matrix_config(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

// --- scenario JSON -----------------------------------------------------------

Scenario parse_scenario(std::string_view json_text) {
    const json root = parse_json(json_text, "scenario");
    check_keys(root, "scenario",
               {"start", "horizon_years", "eval_step_years", "sample_step_years", "initial"},
               {"events", "derivative_step_years"});
    Scenario sc;
    sc.start = parse_timestamp(get_string(root, "start", "scenario"));
    sc.horizon = Duration::from_years(get_number(root, "horizon_years", "scenario"));
    sc.eval_step = Duration::from_years(get_number(root, "eval_step_years", "scenario"));
    sc.sample_step = Duration::from_years(get_number(root, "sample_step_years", "scenario"));
    if (root.contains("derivative_step_years"))
        sc.derivative_step =
            Duration::from_years(get_number(root, "derivative_step_years", "scenario"));

    const auto& initial = root.at("initial");
    if (!initial.is_array()) throw ParseError("scenario: 'initial' must be an array");
    for (std::size_t i = 0; i < initial.size(); ++i) {
        const std::string where = "scenario: initial[" + std::to_string(i) + "]";
        const auto& entry = initial[i];
        check_keys(entry, where, {"id", "label", "c_amu_per_gwy", "window_years", "profile"});
        json spec_part = entry;
        spec_part.erase("profile");
        sc.initial.push_back({source_spec_from_json(spec_part, where),
                              profile_from_json(entry.at("profile"), where + ".profile")});
    }

    if (root.contains("events")) {
        const auto& events = root.at("events");
        if (!events.is_array()) throw ParseError("scenario: 'events' must be an array");
        for (std::size_t i = 0; i < events.size(); ++i) {
            const std::string where = "scenario: events[" + std::to_string(i) + "]";
            const auto& ev = events[i];
            require_object(ev, where);
            if (!ev.contains("at") || !ev.contains("kind"))
                throw ParseError(where + ": missing field 'at' or 'kind'");
            MatrixEvent event;
            event.at = parse_timestamp(get_string(ev, "at", where));
            const std::string kind = get_string(ev, "kind", where);
            if (kind == "commission") {
                check_keys(ev, where, {"at", "kind", "source", "profile"});
                event.action = CommissionAction{
                    source_spec_from_json(ev.at("source"), where + ".source"),
                    profile_from_json(ev.at("profile"), where + ".profile")};
            } else if (kind == "retire") {
                check_keys(ev, where, {"at", "kind", "id"});
                event.action = RetireAction{get_string(ev, "id", where)};
            } else if (kind == "set_coefficient") {
                check_keys(ev, where, {"at", "kind", "id", "c_amu_per_gwy"});
                const double c = get_number(ev, "c_amu_per_gwy", where);
                if (c < 0.0)
                    throw ParseError(where + ": c_amu_per_gwy out of range (must be >= 0)");
                event.action = SetCoefficientAction{get_string(ev, "id", where), c};
            } else {
                throw ParseError(where + ": unknown event kind '" + kind + "'");
            }
            sc.events.push_back(std::move(event));
        }
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    try {
        return parse_scenario(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

// --- reports -----------------------------------------------------------------

std::string snapshot_to_json(const MonetarySnapshot& snapshot) {
    std::string out = "{\"t\":" + json_quote(format_timestamp(snapshot.t));
    out += ",\"M_amu\":" + render_number(snapshot.money.amu);
    out += ",\"A_total_gwy\":" + render_number(snapshot.abundance.magnitude);
    out += ",\"per_source\":[";
    for (std::size_t i = 0; i < snapshot.per_source.size(); ++i) {
        const auto& s = snapshot.per_source[i];
        if (i) out += ',';
        out += "{\"id\":" + json_quote(s.source_id);
        out += ",\"avg_gwy\":" + render_number(s.average_gwy);
        out += ",\"contribution_amu\":" + render_number(s.contribution_amu) + "}";
    }
    out += "]}";
    return out;
}

std::string assessment_to_json(const GrowthAssessment& a) {
    std::string out = "{\"t\":" + json_quote(format_timestamp(a.t));
    out += ",\"per_source_rate\":[";
    for (std::size_t i = 0; i < a.per_source_rate.size(); ++i) {
        if (i) out += ',';
        out += "{\"id\":" + json_quote(a.per_source_rate[i].source_id);
        out += ",\"gwy_per_year\":" + render_number(a.per_source_rate[i].gwy_per_year) + "}";
    }
    out += "],\"dM_dt_amu_per_y\":" + render_number(a.money_rate_amu_per_year);
    out += ",\"declining\":[";
    for (std::size_t i = 0; i < a.declining.size(); ++i) {
        if (i) out += ',';
        out += json_quote(a.declining[i]);
    }
    out += "],\"compensation\":[";
    for (std::size_t i = 0; i < a.compensation.size(); ++i) {
        const auto& c = a.compensation[i];
        if (i) out += ',';
        out += "{\"id\":" + json_quote(c.source_id);
        out += ",\"lhs_amu_per_y\":" + render_number(c.lhs_amu_per_year);
        out += ",\"rhs_amu_per_y\":" + render_number(c.rhs_amu_per_year);
        out += ",\"satisfied\":";
        out += c.satisfied ? "true" : "false";
        out += "}";
    }
    out += "],\"overall_growth\":";
    out += a.overall_growth ? "true" : "false";
    out += "}";
    return out;
}

std::string report_to_csv(const SimulationResult& result) {
    std::string out(report_csv_header);
    out += '\n';
    for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
        const auto& snap = result.snapshots[i];
        out += format_timestamp(snap.t);
        out += ',';
        out += render_number(snap.money.amu);
        out += ',';
        out += render_number(snap.abundance.magnitude);
        out += ',';
        if (i < result.assessments.size() && result.assessments[i]) {
            const auto& a = *result.assessments[i];
            out += render_number(a.money_rate_amu_per_year);
            out += ',';
            out += a.overall_growth ? "true" : "false";
            out += ',';
            out += violations_cell(a);
        } else {
            out += ",,";
        }
        out += '\n';
    }
    return out;
}

std::string report_to_json(const SimulationResult& result) {
    std::string out = "{\"snapshots\":[";
    for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
        if (i) out += ',';
        out += snapshot_to_json(result.snapshots[i]);
    }
    out += "],\"assessments\":[";
    for (std::size_t i = 0; i < result.assessments.size(); ++i) {
        if (i) out += ',';
        out += result.assessments[i] ? assessment_to_json(*result.assessments[i]) : "null";
    }
    out += "],\"skipped\":[";
    for (std::size_t i = 0; i < result.skipped.size(); ++i) {
        if (i) out += ',';
        out += json_quote(format_timestamp(result.skipped[i]));
    }
    out += "],\"violations\":[";
    for (std::size_t i = 0; i < result.violations.size(); ++i) {
        const auto& v = result.violations[i];
        if (i) out += ',';
        out += "{\"t\":" + json_quote(format_timestamp(v.t)) + ",\"source_ids\":[";
        for (std::size_t s = 0; s < v.source_ids.size(); ++s) {
            if (s) out += ',';
            out += json_quote(v.source_ids[s]);
        }
        out += "]}";
    }
    out += "],\"epochs\":[";
    for (std::size_t i = 0; i < result.epochs.size(); ++i) {
        const auto& e = result.epochs[i];
        if (i) out += ',';
        out += "{\"from\":" + json_quote(format_timestamp(e.from));
        out += ",\"to\":" + json_quote(format_timestamp(e.to));
        out += ",\"sources\":[";
        for (std::size_t s = 0; s < e.sources.size(); ++s) {
            if (s) out += ',';
            out += source_spec_to_json(e.sources[s]);
        }
        out += "]}";
    }
    out += "]}";
    return out;
}

void write_report(const SimulationResult& result, const std::filesystem::path& path,
                  ReportFormat format) {
    write_file(path, format == ReportFormat::csv ? report_to_csv(result)
                                                 : report_to_json(result));
}

namespace {

MonetarySnapshot snapshot_from_json(const json& j, const std::string& where) {
    check_keys(j, where, {"t", "M_amu", "A_total_gwy", "per_source"});
    MonetarySnapshot snap;
    snap.t = parse_timestamp(get_string(j, "t", where));
    snap.money.amu = get_number(j, "M_amu", where);
    snap.abundance = {get_number(j, "A_total_gwy", where), EnergyUnit::GWy};
    for (const auto& s : j.at("per_source")) {
        check_keys(s, where + ".per_source[]", {"id", "avg_gwy", "contribution_amu"});
        snap.per_source.push_back({get_string(s, "id", where),
                                   get_number(s, "avg_gwy", where),
                                   get_number(s, "contribution_amu", where)});
    }
    return snap;
}

GrowthAssessment assessment_from_json(const json& j, const std::string& where) {
    check_keys(j, where,
               {"t", "per_source_rate", "dM_dt_amu_per_y", "declining", "compensation",
                "overall_growth"});
    GrowthAssessment a;
    a.t = parse_timestamp(get_string(j, "t", where));
    for (const auto& r : j.at("per_source_rate")) {
        check_keys(r, where + ".per_source_rate[]", {"id", "gwy_per_year"});
        a.per_source_rate.push_back(
            {get_string(r, "id", where), get_number(r, "gwy_per_year", where)});
    }
    a.money_rate_amu_per_year = get_number(j, "dM_dt_amu_per_y", where);
    for (const auto& d : j.at("declining")) a.declining.push_back(d.get<std::string>());
    for (const auto& c : j.at("compensation")) {
        check_keys(c, where + ".compensation[]",
                   {"id", "lhs_amu_per_y", "rhs_amu_per_y", "satisfied"});
        a.compensation.push_back({get_string(c, "id", where),
                                  get_number(c, "lhs_amu_per_y", where),
                                  get_number(c, "rhs_amu_per_y", where),
                                  c.at("satisfied").get<bool>()});
    }
    a.overall_growth = j.at("overall_growth").get<bool>();
    return a;
}

} // namespace

SimulationResult parse_report_json(std::string_view text) {
    const json root = parse_json(text, "report");
    check_keys(root, "report", {"snapshots", "assessments", "skipped", "violations", "epochs"});
    SimulationResult result;
    for (const auto& s : root.at("snapshots"))
        result.snapshots.push_back(snapshot_from_json(s, "report.snapshots[]"));
    for (const auto& a : root.at("assessments")) {
        if (a.is_null())
            result.assessments.push_back(std::nullopt);
        else
            result.assessments.push_back(assessment_from_json(a, "report.assessments[]"));
    }
    for (const auto& t : root.at("skipped"))
        result.skipped.push_back(parse_timestamp(t.get<std::string>()));
    for (const auto& v : root.at("violations")) {
        check_keys(v, "report.violations[]", {"t", "source_ids"});
        Violation violation{parse_timestamp(get_string(v, "t", "report.violations[]")), {}};
        for (const auto& id : v.at("source_ids"))
            violation.source_ids.push_back(id.get<std::string>());
        result.violations.push_back(std::move(violation));
    }
    for (const auto& e : root.at("epochs")) {
        check_keys(e, "report.epochs[]", {"from", "to", "sources"});
        EpochInfo epoch{parse_timestamp(get_string(e, "from", "report.epochs[]")),
                        parse_timestamp(get_string(e, "to", "report.epochs[]")),
                        {}};
        for (const auto& s : e.at("sources"))
            epoch.sources.push_back(source_spec_from_json(s, "report.epochs[].sources[]"));
        result.epochs.push_back(std::move(epoch));
    }
    return result;
}

SimulationResult load_report_json(const std::filesystem::path& path) {
    try {
        return parse_report_json(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

} // namespace esc::io
