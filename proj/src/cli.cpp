#include "echkit/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "echkit/capacity.hpp"
#include "echkit/ctd.hpp"
#include "echkit/errors.hpp"
#include "echkit/rkp.hpp"
#include "echkit/table.hpp"
#include "echkit/tree.hpp"

#ifndef ECHKIT_DATA_DIR
#define ECHKIT_DATA_DIR "data"
#endif

namespace echkit::cli {

namespace {

using nlohmann::json;
using report::Format;

int print_precision() {
    if (const char* env = std::getenv("ECHKIT_PRECISION")) {
        char* end = nullptr;
        const long p = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || p < 1 || p > 17)
            throw usage_error("ECHKIT_PRECISION must be an integer in [1, 17]");
        return static_cast<int>(p);
    }
    return 6;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos])))
                ++pos;
            if (pos != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw usage_error(std::string(what) + ": cannot parse number \"" + item + "\"");
        }
    }
    if (out.empty())
        throw usage_error(std::string(what) + ": empty list");
    return out;
}

ctd::ConcaveDomain parse_vertices(const std::string& text) {
    std::vector<ctd::Point> pts;
    std::stringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
        const auto comma = pair.find(',');
        if (comma == std::string::npos)
            throw usage_error("vertices: expected \"x,y\" pairs separated by ';'");
        pts.push_back(ctd::Point{ctd::parse_rational(pair.substr(0, comma)),
                                 ctd::parse_rational(pair.substr(comma + 1))});
    }
    if (pts.empty())
        throw usage_error("vertices: empty list");
    return ctd::ConcaveDomain(std::move(pts));
}

struct TableRefRow {
    long long k;
    std::string label;
    double value;
};

std::string default_table_ref() {
    if (const char* env = std::getenv("ECHKIT_TABLE_REF"))
        return env;
    return std::string(ECHKIT_DATA_DIR) + "/rkp_reference_capacities.json";
}

std::vector<TableRefRow> load_table_ref(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw usage_error("cannot open reference table \"" + path + "\"");
    json doc = json::parse(in);
    std::vector<TableRefRow> rows;
    for (const auto& r : doc.at("rows"))
        rows.push_back(TableRefRow{r.at("k").get<long long>(),
                                   r.at("label").get<std::string>(),
                                   r.at("value").get<double>()});
    if (rows.empty())
        throw usage_error("reference table \"" + path + "\" has no rows");
    return rows;
}

const char* branch_name(rkp::WeightBranch b) {
    switch (b) {
    case rkp::WeightBranch::zero: return "zero";
    case rkp::WeightBranch::corner: return "corner";
    case rkp::WeightBranch::tangent: return "tangent";
    default: return "smooth";
    }
}

void emit_capacity_rows(const cap::CapacitySequence& seq, Format fmt, int prec,
                        std::ostream& out) {
    std::vector<report::ReportRow> rows;
    for (std::size_t k = 0; k < seq.values.size(); ++k)
        rows.push_back(report::make_row(static_cast<long long>(k), seq.values[k]));
    out << report::emit_table(rows, fmt, prec);
}

// ---- subcommand handlers ----

void cmd_tree(int depth, int depth_cap, Format fmt, int prec, std::ostream& out) {
    const auto nodes = tree::enumerate_tree(depth, depth_cap);
    if (fmt == Format::json) {
        json arr = json::array();
        for (const auto& n : nodes)
            arr.push_back(json{{"index", n.index.bits()}, {"sb", n.sb.str()},
                               {"slope", n.slope.str()}});
        out << arr.dump(2) << "\n";
        return;
    }
    if (fmt == Format::csv) {
        out << "index,sb,slope\n";
        for (const auto& n : nodes)
            out << n.index.bits() << ',' << n.sb.str() << ',' << n.slope.str() << '\n';
        return;
    }
    (void)prec;
    for (const auto& n : nodes)
        out << n.index.bits() << "  " << n.sb.str() << "  " << n.slope.str() << '\n';
}

void cmd_capacities(const std::string& weights, std::size_t kmax, Format fmt, int prec,
                    std::ostream& out) {
    const cap::WeightList wl(parse_double_list(weights, "capacities"));
    emit_capacity_rows(cap::union_capacities(wl, kmax), fmt, prec, out);
}

void cmd_embed(const std::string& source, const std::string& target, std::size_t kmax,
               Format fmt, int prec, std::ostream& out) {
    const auto s = parse_double_list(source, "embed --source");
    const auto t = parse_double_list(target, "embed --target");
    if (s.size() != 2 || t.size() != 2)
        throw usage_error("embed: --source and --target expect \"a,b\"");
    if (kmax < 1)
        throw usage_error("embed: kmax must be >= 1");
    const cap::Verdict v = cap::embed_ellipsoid_check(s[0], s[1], t[0], t[1], kmax);
    if (fmt == Format::json) {
        json obj{{"source", s}, {"target", t}, {"checked_kmax", v.checked_kmax},
                 {"obstructed", !v.ok}};
        if (!v.ok)
            obj["first_violation"] = v.first_violation;
        out << obj.dump(2) << "\n";
        return;
    }
    if (fmt == Format::csv) {
        out << "obstructed,first_violation,checked_kmax\n"
            << (v.ok ? "false" : "true") << ','
            << (v.ok ? "" : std::to_string(v.first_violation)) << ',' << v.checked_kmax << '\n';
        return;
    }
    (void)prec;
    if (v.ok)
        out << "no obstruction up to k=" << v.checked_kmax << "\n";
    else
        out << "obstructed at k=" << v.first_violation << "\n";
}

void cmd_ctd_weights(const std::string& vertices, int depth_cap, Format fmt, int prec,
                     std::ostream& out) {
    const auto domain = parse_vertices(vertices);
    const auto expansion = ctd::weight_expansion(domain, depth_cap);
    if (fmt == Format::json) {
        json arr = json::array();
        for (const auto& pw : expansion)
            arr.push_back(json{{"index", pw.index.bits()}, {"value", ctd::to_string(pw.value)},
                               {"approx", pw.value.convert_to<double>()}});
        json obj{{"area", ctd::to_string(domain_area(domain))}, {"weights", arr}};
        out << obj.dump(2) << "\n";
        return;
    }
    if (fmt == Format::csv) {
        out << "index,value,approx\n";
        for (const auto& pw : expansion)
            out << pw.index.bits() << ',' << ctd::to_string(pw.value) << ','
                << report::format_full(pw.value.convert_to<double>()) << '\n';
        return;
    }
    for (const auto& pw : expansion)
        out << pw.index.bits() << "  " << ctd::to_string(pw.value) << "  "
            << report::format_fixed(pw.value.convert_to<double>(), prec) << '\n';
}

void cmd_ctd_capacities(const std::string& vertices, std::size_t kmax, int depth_cap,
                        Format fmt, int prec, std::ostream& out) {
    const auto domain = parse_vertices(vertices);
    emit_capacity_rows(ctd::ctd_capacities(domain, kmax, depth_cap), fmt, prec, out);
}

void cmd_rkp_weights(double energy, Format fmt, int prec, std::ostream& out) {
    const rkp::Energy c(energy);
    const rkp::OrderedWeights ow = rkp::weights_all(c);
    const rkp::Roots r = rkp::roots(c);
    const rkp::AreaDiagnostic diag = rkp::area_diagnostic(c);
    const rkp::WeightValue vals[] = {ow.raw.w1, ow.raw.w2, ow.raw.w3, ow.raw.w4, ow.raw.w5};
    if (fmt == Format::json) {
        json ws;
        for (int i = 0; i < 5; ++i)
            ws["w" + std::to_string(i + 1)] =
                json{{"value", vals[i].value}, {"branch", branch_name(vals[i].branch)}};
        json obj{{"energy", energy},
                 {"r1", r.r1},
                 {"r2", r.r2},
                 {"weights", ws},
                 {"ordered", ow.list.entries()},
                 {"area", json{{"sum_half_squares", diag.sum_half_squares},
                               {"total_area", diag.total_area},
                               {"excess", diag.excess}}}};
        out << obj.dump(2) << "\n";
        return;
    }
    if (fmt == Format::csv) {
        out << "weight,value,branch\n";
        for (int i = 0; i < 5; ++i)
            out << 'W' << (i + 1) << ',' << report::format_full(vals[i].value) << ','
                << branch_name(vals[i].branch) << '\n';
        return;
    }
    for (int i = 0; i < 5; ++i)
        out << 'W' << (i + 1) << "  " << report::format_fixed(vals[i].value, prec) << "  ("
            << branch_name(vals[i].branch) << ")\n";
    out << "ordered:";
    for (double w : ow.list.entries())
        out << ' ' << report::format_fixed(w, prec);
    out << "\nsum w^2/2 = " << report::format_fixed(diag.sum_half_squares, prec)
        << "  total area = " << report::format_fixed(diag.total_area, prec)
        << "  excess = " << report::format_fixed(diag.excess, prec) << "\n";
}

void cmd_rkp_capacities(double energy, std::size_t kmax, bool verify_oracle, int samples,
                        std::int64_t denom_bound, Format fmt, int prec, std::ostream& out) {
    const rkp::Energy c(energy);
    const cap::CapacitySequence seq = rkp::rkp_capacities(c, kmax);
    if (!verify_oracle) {
        emit_capacity_rows(seq, fmt, prec, out);
        return;
    }
    // Polygonal cross-check; retry with finer rounding if the rounded chain
    // is rejected.
    std::optional<ctd::ConcaveDomain> domain;
    for (std::int64_t d = denom_bound; !domain; d *= 100) {
        try {
            domain = rkp::sctd_to_ctd(c, samples, d);
        } catch (const discretization_error&) {
            if (d > 1'000'000'000'000LL)
                throw;
        }
    }
    const cap::CapacitySequence oracle = ctd::ctd_capacities(*domain, kmax);
    std::vector<report::ReportRow> rows;
    for (std::size_t k = 0; k <= kmax; ++k)
        rows.push_back(report::make_row(static_cast<long long>(k), seq.values[k],
                                        oracle.values[k]));
    out << report::emit_table(rows, fmt, prec);
}

void cmd_rkp_table(const std::string& ref_path, Format fmt, int prec, std::ostream& out) {
    const auto ref = load_table_ref(ref_path);
    long long max_k = 0;
    for (const auto& row : ref)
        max_k = std::max(max_k, row.k);
    const cap::CapacitySequence seq =
        rkp::rkp_capacities(rkp::Energy(rkp::kCriticalEnergy), static_cast<std::size_t>(max_k));
    std::vector<report::ReportRow> rows;
    for (const auto& row : ref)
        rows.push_back(report::make_row(row.k, seq.values[static_cast<std::size_t>(row.k)],
                                        row.value, row.label));
    out << report::emit_table(rows, fmt, prec);
}

void cmd_rkp_thresholds(int depth, Format fmt, int prec, std::ostream& out) {
    const auto nodes = tree::enumerate_tree(depth);
    struct Row {
        std::string index;
        std::string slope;
        double entry;
    };
    std::vector<Row> rows;
    for (const auto& n : nodes) {
        if (n.slope.is_infinite() || n.slope.num >= 0)
            continue;
        rows.push_back(Row{n.index.bits(), n.slope.str(),
                           tree::entry_energy(n.slope.to_double())});
    }
    const double j4 = rkp::threshold_jump(4);
    const double j5 = rkp::threshold_jump(5);
    if (fmt == Format::json) {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back(json{{"index", r.index}, {"slope", r.slope},
                               {"entry_energy", r.entry}});
        json obj{{"thresholds", arr},
                 {"branch_jumps", json{{"w4", j4}, {"w5", j5}}}};
        out << obj.dump(2) << "\n";
        return;
    }
    if (fmt == Format::csv) {
        out << "index,slope,entry_energy\n";
        for (const auto& r : rows)
            out << r.index << ',' << r.slope << ',' << report::format_full(r.entry) << '\n';
        return;
    }
    for (const auto& r : rows)
        out << r.index << "  " << r.slope << "  " << report::format_fixed(r.entry, prec)
            << '\n';
    out << "branch jump at threshold: W4 " << report::format_fixed(j4, prec) << ", W5 "
        << report::format_fixed(j5, prec) << "\n";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ECH capacities of concave toric domains and the rotating Kepler problem"};
    app.name("echkit");
    app.require_subcommand(1);

    std::string format_name = "text";
    app.add_option("--format", format_name, "Output format: json|csv|text")
        ->capture_default_str();

    // tree
    auto* sc_tree = app.add_subcommand("tree", "Emit the mediant tree and its slope tree");
    int tree_depth = 4;
    int tree_cap = tree::kDefaultDepthCap;
    sc_tree->add_option("--depth", tree_depth, "Tree depth to enumerate")->required();
    sc_tree->add_option("--depth-cap", tree_cap, "Enumeration depth cap")
        ->capture_default_str();

    // capacities
    auto* sc_cap = app.add_subcommand("capacities", "Disjoint-union capacities of balls");
    std::string cap_weights;
    std::size_t cap_kmax = 0;
    sc_cap->add_option("--weights", cap_weights, "Comma-separated ball sizes")->required();
    sc_cap->add_option("--kmax", cap_kmax, "Largest index k")->required();

    // embed
    auto* sc_embed = app.add_subcommand("embed", "Ellipsoid embedding obstruction check");
    std::string embed_source, embed_target;
    std::size_t embed_kmax = 0;
    sc_embed->add_option("--source", embed_source, "Source ellipsoid \"a,b\"")->required();
    sc_embed->add_option("--target", embed_target, "Target ellipsoid \"a,b\"")->required();
    sc_embed->add_option("--kmax", embed_kmax, "Largest index k to check")->required();

    // ctd-weights
    auto* sc_cw = app.add_subcommand("ctd-weights", "Exact weight expansion of a domain");
    std::string cw_vertices;
    int cw_cap = ctd::kDefaultExpansionDepthCap;
    sc_cw->add_option("--vertices", cw_vertices, "Boundary vertices \"x,y;x,y;...\"")
        ->required();
    sc_cw->add_option("--depth-cap", cw_cap, "Recursion depth cap")->capture_default_str();

    // ctd-capacities
    auto* sc_cc = app.add_subcommand("ctd-capacities", "Capacities of a rational domain");
    std::string cc_vertices;
    std::size_t cc_kmax = 0;
    int cc_cap = ctd::kDefaultExpansionDepthCap;
    sc_cc->add_option("--vertices", cc_vertices, "Boundary vertices \"x,y;x,y;...\"")
        ->required();
    sc_cc->add_option("--kmax", cc_kmax, "Largest index k")->required();
    sc_cc->add_option("--depth-cap", cc_cap, "Recursion depth cap")->capture_default_str();

    // rkp
    auto* sc_rkp = app.add_subcommand("rkp", "Rotating Kepler problem");
    sc_rkp->require_subcommand(1);

    auto* sc_rw = sc_rkp->add_subcommand("weights", "Closed-form weights at an energy");
    double rw_energy = rkp::kCriticalEnergy;
    sc_rw->add_option("--energy", rw_energy, "Energy c <= -3/2")->required();

    auto* sc_rc = sc_rkp->add_subcommand("capacities", "Capacities at an energy");
    double rc_energy = rkp::kCriticalEnergy;
    std::size_t rc_kmax = 0;
    bool rc_verify = false;
    int rc_samples = 512;
    std::int64_t rc_denom = 1'000'000;
    sc_rc->add_option("--energy", rc_energy, "Energy c <= -3/2")->required();
    sc_rc->add_option("--kmax", rc_kmax, "Largest index k")->required();
    sc_rc->add_flag("--verify-oracle", rc_verify, "Compare against the polygonal engine");
    sc_rc->add_option("--samples", rc_samples, "Boundary samples for the oracle")
        ->capture_default_str();
    sc_rc->add_option("--denom-bound", rc_denom, "Rounding denominator for the oracle")
        ->capture_default_str();

    auto* sc_rt = sc_rkp->add_subcommand("table", "Critical-energy capacities vs reference");
    std::string rt_ref = default_table_ref();
    sc_rt->add_option("--table-ref", rt_ref, "Reference table JSON path")
        ->capture_default_str();

    auto* sc_rth = sc_rkp->add_subcommand("thresholds", "Entry energies of the tree slopes");
    int rth_depth = 4;
    sc_rth->add_option("--depth", rth_depth, "Tree depth")->capture_default_str();

    for (auto* sc : {sc_tree, sc_cap, sc_embed, sc_cw, sc_cc, sc_rkp})
        sc->fallthrough();
    for (auto* sc : {sc_rw, sc_rc, sc_rt, sc_rth})
        sc->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        const Format fmt = report::parse_format(format_name);
        const int prec = print_precision();

        if (*sc_tree)
            cmd_tree(tree_depth, tree_cap, fmt, prec, out);
        else if (*sc_cap)
            cmd_capacities(cap_weights, cap_kmax, fmt, prec, out);
        else if (*sc_embed)
            cmd_embed(embed_source, embed_target, embed_kmax, fmt, prec, out);
        else if (*sc_cw)
            cmd_ctd_weights(cw_vertices, cw_cap, fmt, prec, out);
        else if (*sc_cc)
            cmd_ctd_capacities(cc_vertices, cc_kmax, cc_cap, fmt, prec, out);
        else if (*sc_rw)
            cmd_rkp_weights(rw_energy, fmt, prec, out);
        else if (*sc_rc)
            cmd_rkp_capacities(rc_energy, rc_kmax, rc_verify, rc_samples, rc_denom, fmt, prec,
                               out);
        else if (*sc_rt)
            cmd_rkp_table(rt_ref, fmt, prec, out);
        else if (*sc_rth)
            cmd_rkp_thresholds(rth_depth, fmt, prec, out);
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

} // namespace echkit::cli
