#include "echkit/ctd.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace echkit::ctd {

using boost::multiprecision::cpp_int;

ConcaveDomain::ConcaveDomain(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2)
        throw domain_error("ConcaveDomain: need at least two vertices");
    if (vertices_.front().x != 0)
        throw domain_error("ConcaveDomain: first vertex must sit on the y-axis");
    if (vertices_.back().y != 0)
        throw domain_error("ConcaveDomain: last vertex must sit on the x-axis");
    if (vertices_.front().y <= 0 || vertices_.back().x <= 0)
        throw domain_error("ConcaveDomain: width and height must be positive");
    for (const Point& p : vertices_)
        if (p.x < 0 || p.y < 0)
            throw domain_error("ConcaveDomain: coordinates must be nonnegative");
    Rational prev_slope;
    bool have_prev = false;
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
        const Rational dx = vertices_[i + 1].x - vertices_[i].x;
        if (dx <= 0)
            throw domain_error("ConcaveDomain: x-coordinates must be strictly increasing");
        const Rational slope = (vertices_[i + 1].y - vertices_[i].y) / dx;
        if (slope >= 0)
            throw domain_error("ConcaveDomain: boundary must be strictly decreasing");
        if (have_prev && slope < prev_slope)
            throw domain_error("ConcaveDomain: boundary must be convex (slopes nondecreasing)");
        prev_slope = slope;
        have_prev = true;
    }
}

ConcaveDomain ConcaveDomain::scaled(const Rational& r) const {
    if (r <= 0)
        throw domain_error("ConcaveDomain::scaled: factor must be positive");
    std::vector<Point> vs = vertices_;
    for (Point& p : vs) {
        p.x *= r;
        p.y *= r;
    }
    return ConcaveDomain(std::move(vs));
}

Rational domain_area(const ConcaveDomain& d) {
    Rational area = 0;
    const auto& vs = d.vertices();
    for (std::size_t i = 0; i + 1 < vs.size(); ++i)
        area += (vs[i].y + vs[i + 1].y) * (vs[i + 1].x - vs[i].x) / 2;
    return area;
}

FirstTriangle first_triangle(const ConcaveDomain& d) {
    const auto& vs = d.vertices();
    std::size_t best = 0;
    Rational best_sum = vs[0].x + vs[0].y;
    for (std::size_t i = 1; i < vs.size(); ++i) {
        const Rational s = vs[i].x + vs[i].y;
        if (s < best_sum) {
            best_sum = s;
            best = i;
        }
    }
    return FirstTriangle{best_sum, vs[best]};
}

namespace {

std::optional<ConcaveDomain> build_portion(std::vector<Point> pts) {
    if (pts.size() < 2)
        return std::nullopt;
    if (pts.front().y == 0 || pts.back().x == 0)
        return std::nullopt;
    return ConcaveDomain(std::move(pts));
}

} // namespace

SplitResult split_portions(const ConcaveDomain& d, const Rational& a, const Point& t) {
    const auto& vs = d.vertices();
    const bool t_is_vertex = std::find(vs.begin(), vs.end(), t) != vs.end();
    if (!t_is_vertex || t.x + t.y != a || first_triangle(d).a != a)
        throw usage_error("split_portions: (a, t) is not a first_triangle result for this domain");

    SplitResult out;

    // Upper portion: x <= t.x, sheared down onto the axes, then transposed so
    // the tangent vertex becomes the x-axis endpoint.
    if (t.x > 0) {
        std::vector<Point> pts;
        for (const Point& p : vs) {
            if (p.x > t.x)
                break;
            pts.push_back(Point{p.x + p.y - a, p.x});
        }
        std::reverse(pts.begin(), pts.end());
        out.upper = build_portion(std::move(pts));
    }

    // Lower portion: x >= t.x, sheared left onto the axes. A leading run of
    // slope -1 segments collapses onto the y-axis; keep the lowest point.
    {
        std::vector<Point> pts;
        for (const Point& p : vs) {
            if (p.x < t.x)
                continue;
            Point q{p.x + p.y - a, p.y};
            if (!pts.empty() && pts.back().x == q.x)
                pts.back() = q;
            else
                pts.push_back(std::move(q));
        }
        out.lower = build_portion(std::move(pts));
    }

    return out;
}

namespace {

void expand_recursive(const ConcaveDomain& d, const tree::TreeIndex& index, int depth_cap,
                      std::vector<PortionWeight>& out) {
    if (static_cast<int>(index.depth()) > depth_cap)
        throw resource_error("weight_expansion: recursion exceeded depth cap " +
                             std::to_string(depth_cap));
    const FirstTriangle ft = first_triangle(d);
    out.push_back(PortionWeight{index, ft.a});
    const SplitResult parts = split_portions(d, ft.a, ft.tangent_vertex);

    // The shears are unimodular, so the carve must conserve area exactly.
    Rational acc = ft.a * ft.a / 2;
    if (parts.upper)
        acc += domain_area(*parts.upper);
    if (parts.lower)
        acc += domain_area(*parts.lower);
    if (acc != domain_area(d))
        throw consistency_error("weight_expansion: area not conserved at index " + index.bits());

    if (parts.upper)
        expand_recursive(*parts.upper, index.child('1'), depth_cap, out);
    if (parts.lower)
        expand_recursive(*parts.lower, index.child('0'), depth_cap, out);
}

} // namespace

std::vector<PortionWeight> weight_expansion(const ConcaveDomain& d, int depth_cap) {
    std::vector<PortionWeight> out;
    expand_recursive(d, tree::TreeIndex("1"), depth_cap, out);
    return out;
}

std::vector<Rational> order_weights(std::vector<Rational> w) {
    std::erase_if(w, [](const Rational& x) { return x == 0; });
    std::stable_sort(w.begin(), w.end(), std::greater<>());
    return w;
}

std::vector<double> order_weights(std::vector<double> w) {
    std::erase_if(w, [](double x) { return x == 0.0; });
    std::stable_sort(w.begin(), w.end(), std::greater<>());
    return w;
}

cap::CapacitySequence ctd_capacities(const ConcaveDomain& d, std::size_t kmax, int depth_cap) {
    std::vector<double> ws;
    for (const PortionWeight& pw : weight_expansion(d, depth_cap))
        ws.push_back(pw.value.convert_to<double>());
    cap::CapacitySequence seq = cap::union_capacities(cap::WeightList(std::move(ws)), kmax);
    seq.provenance = cap::Provenance::domain;
    return seq;
}

Rational parse_rational(std::string_view text) {
    auto fail = [&] {
        throw usage_error("parse_rational: cannot parse \"" + std::string(text) + "\"");
    };
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty())
        fail();
    try {
        if (auto pos = s.find('/'); pos != std::string::npos) {
            const cpp_int num(s.substr(0, pos));
            const cpp_int den(s.substr(pos + 1));
            if (den == 0)
                fail();
            return Rational(num, den);
        }
        if (auto pos = s.find('.'); pos != std::string::npos) {
            std::string digits = s.substr(0, pos) + s.substr(pos + 1);
            if (digits.empty() || digits == "-" || digits == "+")
                fail();
            cpp_int den = 1;
            for (std::size_t i = 0; i < s.size() - pos - 1; ++i)
                den *= 10;
            return Rational(cpp_int(digits), den);
        }
        return Rational(cpp_int(s));
    } catch (const std::runtime_error&) {
        fail();
    }
    return Rational();  // unreachable
}

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

} // namespace echkit::ctd
