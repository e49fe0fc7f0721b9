#include "chdecomp/report.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace chd {

using nlohmann::json;

namespace {

json cplx_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json point_json(const ProjectivePoint& p) {
    json coords = json::array();
    for (int i = 0; i < 3; ++i)
        coords.push_back(cplx_json(p.v(i)));
    return json{{"coords", coords}, {"sig", p.sig}};
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << std::fixed << v;
    return os.str();
}

} // namespace

json classify_report(const Mat3& m) {
    ClassInfo c = classify(m);
    json j;
    j["kind"] = kind_name(c.key.kind, c.key.orient);
    j["trace"] = cplx_json(c.trace);
    j["canonical_trace"] = cplx_json(omega_pow(c.canon_delta) * c.trace);
    j["canonical_lift_omega_pow"] = c.canon_delta;
    j["deltoid_f"] = c.f_value;
    json eig = json::array();
    for (auto& l : c.eig) eig.push_back(cplx_json(l));
    j["eigenvalues"] = eig;
    switch (c.key.kind) {
        case IsoKind::identity:
            j["angle_pair"] = json::array({0.0, 0.0});
            break;
        case IsoKind::regular_elliptic:
        case IsoKind::special_elliptic_neg:
        case IsoKind::special_elliptic_pos:
        case IsoKind::ellipto_parabolic:
            j["angle_pair"] = json::array({c.key.th1, c.key.th2});
            break;
        default:
            break;
    }
    if (c.neg_index >= 0)
        j["negative_type_eigenvalue"] = cplx_json(c.eig[c.neg_index]);
    if (c.key.kind == IsoKind::ellipto_parabolic || c.key.kind == IsoKind::unipotent_2step)
        j["orientation"] = c.key.orient;
    return j;
}

json atlas_report(const Atlas& at) {
    json j;
    j["schema"] = 1;
    j["alpha_pi"] = json{{"num", at.a.num}, {"den", at.a.den}};
    json walls = json::array();
    int id = 0;
    for (const auto& w : at.wall_segs) {
        walls.push_back(json{{"seg_id", id++},
                             {"line_label", w.label},
                             {"x1", {{"num", w.a.x.num}, {"den", w.a.x.den}}},
                             {"y1", {{"num", w.a.y.num}, {"den", w.a.y.den}}},
                             {"x2", {{"num", w.b.x.num}, {"den", w.b.x.den}}},
                             {"y2", {{"num", w.b.y.num}, {"den", w.b.y.den}}}});
    }
    j["walls"] = walls;
    json chs = json::array();
    for (const auto& c : at.chambers) {
        json poly = json::array();
        for (const auto& v : c.poly)
            poly.push_back(json{{"x", {{"num", v.x.num}, {"den", v.x.den}}},
                                {"y", {{"num", v.y.num}, {"den", v.y.den}}}});
        chs.push_back(json{{"polygon", poly},
                           {"status", c.status == ChamberStatus::full    ? "full"
                                      : c.status == ChamberStatus::empty ? "empty"
                                                                         : "unknown"},
                           {"criterion", c.criterion},
                           {"witness", {{"x", {{"num", c.sample.x.num}, {"den", c.sample.x.den}}},
                                        {"y", {{"num", c.sample.y.num}, {"den", c.sample.y.den}}}}}});
    }
    j["chambers"] = chs;
    return j;
}

std::string atlas_walls_csv(const Atlas& at) {
    std::ostringstream os;
    os << "seg_id,line_label,x1_num,x1_den,y1_num,y1_den,x2_num,x2_den,y2_num,y2_den\n";
    int id = 0;
    for (const auto& w : at.wall_segs) {
        os << id++ << ',' << w.label << ',' << w.a.x.num << ',' << w.a.x.den << ',' << w.a.y.num
           << ',' << w.a.y.den << ',' << w.b.x.num << ',' << w.b.x.den << ',' << w.b.y.num << ','
           << w.b.y.den << '\n';
    }
    return os.str();
}

std::string atlas_svg(const Atlas& at) {
    // T drawn with theta1 horizontal, theta2 vertical; full chambers gray
    const double scale = 240.0; // pixels per pi
    const double W = 2.0 * scale + 40.0, H = 2.0 * scale + 40.0;
    auto X = [&](const Rat& x) { return 20.0 + x.to_double() * scale; };
    auto Y = [&](const Rat& y) { return H - 20.0 - y.to_double() * scale; };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << int(W) << "\" height=\""
       << int(H) << "\" viewBox=\"0 0 " << int(W) << ' ' << int(H) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& c : at.chambers) {
        os << "<polygon points=\"";
        for (const auto& v : c.poly)
            os << fmt(X(v.x)) << ',' << fmt(Y(v.y)) << ' ';
        const char* fill = c.status == ChamberStatus::full    ? "#cccccc"
                           : c.status == ChamberStatus::empty ? "#ffffff"
                                                              : "#f3e29a";
        os << "\" fill=\"" << fill << "\" stroke=\"#888888\" stroke-width=\"0.6\"/>\n";
    }
    const char* wall_colors[3] = {"#3366cc", "#33a02c", "#e31a1c"};
    for (const auto& w : at.wall_segs) {
        os << "<line x1=\"" << fmt(X(w.a.x)) << "\" y1=\"" << fmt(Y(w.a.y)) << "\" x2=\""
           << fmt(X(w.b.x)) << "\" y2=\"" << fmt(Y(w.b.y)) << "\" stroke=\""
           << wall_colors[w.label % 3] << "\" stroke-width=\"1.6\"/>\n";
    }
    // triangle outline
    os << "<polygon points=\"" << fmt(X(Rat(0))) << ',' << fmt(Y(Rat(0))) << ' ' << fmt(X(Rat(2)))
       << ',' << fmt(Y(Rat(0))) << ' ' << fmt(X(Rat(2))) << ',' << fmt(Y(Rat(2)))
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
    os << "<text x=\"" << fmt(W - 60.0) << "\" y=\"" << fmt(H - 4.0)
       << "\" font-size=\"12\">a = " << at.a.str() << " pi</text>\n";
    os << "</svg>\n";
    return os.str();
}

json decomposition_report(const Mat3& F, const LengthResult& lr) {
    json j;
    j["n"] = lr.n;
    j["exact_length"] = lr.exact;
    j["delta"] = "omega^" + std::to_string(lr.dec.delta_pow);
    j["alpha"] = cplx_json(lr.dec.alpha.value);
    json centers = json::array();
    for (const auto& p : lr.dec.centers)
        centers.push_back(point_json(p));
    j["centers"] = centers;
    j["residual"] = lr.dec.residual;
    (void)F;
    return j;
}

Mat3 matrix_from_json(const json& j) {
    Mat3 m;
    const auto& re = j.at("re");
    const bool has_im = j.contains("im");
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            double rr = re.at(r).at(c).get<double>();
            double ii = has_im ? j.at("im").at(r).at(c).get<double>() : 0.0;
            m(r, c) = cplx(rr, ii);
        }
    return m;
}

json matrix_to_json(const Mat3& m) {
    json re = json::array(), im = json::array();
    for (int r = 0; r < 3; ++r) {
        json rr = json::array(), ri = json::array();
        for (int c = 0; c < 3; ++c) {
            rr.push_back(m(r, c).real());
            ri.push_back(m(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ri);
    }
    return json{{"re", re}, {"im", im}};
}

Rat parse_pi_fraction(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

} // namespace chd
