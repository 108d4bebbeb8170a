#include "cutseq/svg.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <vector>

namespace cutseq {

namespace {

constexpr double SCALE = 160.0;  // pixels per half-plane unit

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string tri_key(const FareyTriangle& t) {
    return t.a.str() + " " + t.b.str() + " " + t.c.str();
}

std::string edge_key(const FareyEdge& e) { return e.left.str() + "|" + e.right.str(); }

double frac_val(const Frac& f) { return f.p.get_d() / f.q.get_d(); }

// An edge or geodesic as drawable geometry: a vertical ray or a semicircle.
struct Arc {
    bool vertical;
    double x = 0;              // vertical: position
    double cx = 0, r = 0;      // semicircle: center and radius
};

Arc arc_of_edge(const FareyEdge& e) {
    if (e.right.infinite()) return {true, frac_val(e.left)};
    double u = frac_val(e.left), v = frac_val(e.right);
    return {false, 0, (u + v) / 2, (v - u) / 2};
}

Arc arc_of_feet(double p, double f) {
    double u = std::min(p, f), v = std::max(p, f);
    return {false, 0, (u + v) / 2, (v - u) / 2};
}

struct Pt {
    double x, y;
};

// Intersection of a non-vertical geodesic with an edge; both are circles
// centered on the real axis, or the edge is a vertical line.
Pt cross_point(const Arc& g, const Arc& e) {
    if (e.vertical) {
        double dx = e.x - g.cx;
        return {e.x, std::sqrt(std::max(0.0, g.r * g.r - dx * dx))};
    }
    double x = (g.r * g.r - e.r * e.r - g.cx * g.cx + e.cx * e.cx) / (2.0 * (e.cx - g.cx));
    double dx = x - g.cx;
    return {x, std::sqrt(std::max(0.0, g.r * g.r - dx * dx))};
}

// Point halfway between a and b along the geodesic, in hyperbolic distance.
Pt hyp_midpoint(const Arc& g, const Pt& a, const Pt& b) {
    double ta = std::tan(std::atan2(a.y, a.x - g.cx) / 2.0);
    double tb = std::tan(std::atan2(b.y, b.x - g.cx) / 2.0);
    double theta = 2.0 * std::atan(std::sqrt(ta * tb));
    return {g.cx + g.r * std::cos(theta), g.r * std::sin(theta)};
}

struct Canvas {
    double xmin, ymax;

    double X(double x) const { return SCALE * (x - xmin); }
    double Y(double y) const { return SCALE * (ymax - y); }

    std::string path(const Arc& a, const std::string& cls) const {
        std::string d;
        if (a.vertical) {
            d = "M " + fmt(X(a.x)) + " " + fmt(Y(0)) + " L " + fmt(X(a.x)) + " " + fmt(Y(ymax));
        } else {
            double rr = SCALE * a.r;
            d = "M " + fmt(X(a.cx - a.r)) + " " + fmt(Y(0)) + " A " + fmt(rr) + " " + fmt(rr) +
                " 0 0 1 " + fmt(X(a.cx + a.r)) + " " + fmt(Y(0));
        }
        return "  <path class=\"" + cls + "\" d=\"" + d + "\"/>\n";
    }
};

}  // namespace

DrawResult render_tessellation(const DrawOptions& opts) {
    if (opts.depth < 0 || opts.depth > 16) throw domain_error("depth must be between 0 and 16");
    if (!(opts.xmin < opts.xmax)) throw domain_error("window must have xmin < xmax");
    if (!(opts.ymax > 0)) throw domain_error("window height must be positive");

    // breadth-first ball of triangles around the base triangle
    std::set<std::string> ball;
    std::map<std::string, FareyEdge> edges;
    std::vector<FareyTriangle> frontier{base_triangle()};
    ball.insert(tri_key(frontier.front()));
    auto visit_edges = [&](const FareyTriangle& t) {
        for (const FareyEdge& e : {farey_edge(t.a, t.b), farey_edge(t.b, t.c), farey_edge(t.a, t.c)})
            edges.emplace(edge_key(e), e);
    };
    visit_edges(frontier.front());
    for (int level = 0; level < opts.depth; ++level) {
        std::vector<FareyTriangle> next;
        for (const FareyTriangle& t : frontier) {
            for (const FareyEdge& e :
                 {farey_edge(t.a, t.b), farey_edge(t.b, t.c), farey_edge(t.a, t.c)}) {
                Frac med = mediant(e);
                Frac third = (med == t.a || med == t.b || med == t.c) ? outer_vertex(e) : med;
                FareyTriangle n = farey_triangle(e.left, e.right, third);
                if (ball.insert(tri_key(n)).second) {
                    visit_edges(n);
                    next.push_back(n);
                }
            }
        }
        frontier = std::move(next);
    }

    Canvas canvas{opts.xmin, opts.ymax};
    std::string body;
    size_t edge_count = 0;
    for (const auto& [key, e] : edges) {
        Arc a = arc_of_edge(e);
        if (a.vertical) {
            if (a.x < opts.xmin || a.x > opts.xmax) continue;
        } else {
            if (a.cx + a.r <= opts.xmin || a.cx - a.r >= opts.xmax) continue;
        }
        body += canvas.path(a, "edge");
        ++edge_count;
    }

    std::string letters;
    if (opts.geodesic) {
        const Geodesic& g = *opts.geodesic;
        Arc ga;
        if (g.past.is_infinity())
            ga = {true, to_double(g.future.real())};
        else if (g.future.is_infinity())
            ga = {true, to_double(g.past.real())};
        else
            ga = arc_of_feet(to_double(g.past.real()), to_double(g.future.real()));
        body += canvas.path(ga, "geodesic");

        bool finite_feet = !g.past.is_infinity() && !g.future.is_infinity();
        if (finite_feet && is_in_A(g)) {
            Real f = g.future.real();
            bool mirror = real_sign(f) < 0;
            Real fa = mirror ? real_neg(f) : f;
            auto true_frac = [&](const Frac& v) {
                if (!mirror || v.infinite()) return v;
                return Frac{-v.p, v.q};
            };
            Frac l{0, 1}, r{1, 0};
            Arc entry = arc_of_edge(farey_edge(true_frac(l), true_frac(r)));
            while (true) {
                Frac md{l.p + r.p, l.q + r.q};
                std::strong_ordering c = compare(fa, Real(make_rat(md.p, md.q)));
                if (c == std::strong_ordering::equal) break;  // heading into a cusp
                FareyTriangle t = farey_triangle(true_frac(l), true_frac(md), true_frac(r));
                if (!ball.count(tri_key(t))) break;
                Letter letter;
                if (c == std::strong_ordering::greater) {
                    letter = Letter::L;
                    l = md;
                } else {
                    letter = Letter::R;
                    r = md;
                }
                Arc exit = arc_of_edge(farey_edge(true_frac(l), true_frac(r)));
                Pt mid = hyp_midpoint(ga, cross_point(ga, entry), cross_point(ga, exit));
                if (mirror) letter = (letter == Letter::L) ? Letter::R : Letter::L;
                char ch = (letter == Letter::L) ? 'L' : 'R';
                letters += ch;
                body += "  <text class=\"letter\" x=\"" + fmt(canvas.X(mid.x)) + "\" y=\"" +
                        fmt(canvas.Y(mid.y)) + "\">" + ch + "</text>\n";
                entry = exit;
            }
        }
    }

    double w = SCALE * (opts.xmax - opts.xmin), h = SCALE * opts.ymax;
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) +
           "\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) + "\">\n";
    svg += "<defs><clipPath id=\"window\"><rect x=\"0\" y=\"0\" width=\"" + fmt(w) +
           "\" height=\"" + fmt(h) + "\"/></clipPath></defs>\n";
    svg += "<style>\n"
           ".edge { fill: none; stroke: #888; stroke-width: 1.2; }\n"
           ".geodesic { fill: none; stroke: #c0392b; stroke-width: 2; }\n"
           ".letter { font: 16px sans-serif; fill: #1a4d8f; text-anchor: middle; }\n"
           "</style>\n";
    svg += "<g clip-path=\"url(#window)\">\n" + body + "</g>\n</svg>\n";

    DrawResult out;
    out.svg = std::move(svg);
    out.edge_count = edge_count;
    out.letters = std::move(letters);
    return out;
}

}  // namespace cutseq
