#include "echkit/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace echkit::report {

ReportRow make_row(long long k, double value, std::optional<double> reference,
                   std::string label) {
    ReportRow row;
    row.k = k;
    row.value = value;
    row.reference = reference;
    row.label = std::move(label);
    if (!reference)
        row.status = RowStatus::no_reference;
    else
        row.status = std::abs(value - *reference) <= kMatchTol ? RowStatus::match
                                                               : RowStatus::mismatch;
    return row;
}

const char* status_name(RowStatus s) {
    switch (s) {
    case RowStatus::match: return "match";
    case RowStatus::mismatch: return "mismatch";
    default: return "no-reference";
    }
}

Format parse_format(const std::string& name) {
    if (name == "text") return Format::text;
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw usage_error("unknown format \"" + name + "\" (expected json|csv|text)");
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_fixed(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

namespace {

std::string status_cell(const ReportRow& row) {
    switch (row.status) {
    case RowStatus::match:
        return "OK";
    case RowStatus::mismatch: {
        char buf[48];
        std::snprintf(buf, sizeof buf, "MISMATCH(\xce\xb4=%.2e)",
                      std::abs(row.value - *row.reference));
        return buf;
    }
    default:
        return "-";
    }
}

} // namespace

std::string emit_table(const std::vector<ReportRow>& rows, Format format, int precision) {
    if (rows.empty())
        throw usage_error("emit_table: rows must be nonempty");

    if (format == Format::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const ReportRow& row : rows) {
            nlohmann::json obj;
            obj["k"] = row.k;
            if (!row.label.empty())
                obj["label"] = row.label;
            obj["value"] = row.value;
            if (row.reference)
                obj["reference"] = *row.reference;
            obj["status"] = status_name(row.status);
            arr.push_back(std::move(obj));
        }
        return arr.dump(2) + "\n";
    }

    if (format == Format::csv) {
        std::string out = "k,label,value,reference,status\n";
        for (const ReportRow& row : rows) {
            out += std::to_string(row.k);
            out += ',';
            out += row.label;
            out += ',';
            out += format_full(row.value);
            out += ',';
            if (row.reference)
                out += format_full(*row.reference);
            out += ',';
            out += status_name(row.status);
            out += '\n';
        }
        return out;
    }

    // Text: fixed-width columns, stable ordering.
    const bool any_ref = std::any_of(rows.begin(), rows.end(),
                                     [](const ReportRow& r) { return r.reference.has_value(); });
    std::size_t label_w = 0;
    for (const ReportRow& row : rows)
        label_w = std::max(label_w, row.label.size());
    std::string out;
    for (const ReportRow& row : rows) {
        char head[32];
        std::snprintf(head, sizeof head, "%4lld  ", row.k);
        out += head;
        if (label_w > 0) {
            out += row.label;
            out.append(label_w - row.label.size() + 2, ' ');
        }
        out += format_fixed(row.value, precision);
        if (any_ref) {
            out += "  ";
            out += row.reference ? format_fixed(*row.reference, precision)
                                 : std::string(std::size_t(precision) + 2, '-');
            out += "  ";
            out += status_cell(row);
        }
        out += '\n';
    }
    return out;
}

} // namespace echkit::report
