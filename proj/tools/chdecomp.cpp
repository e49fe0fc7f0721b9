// chdecomp: classify SU(2,1) isometries, draw alpha-decomposition atlases, and
// synthesize decompositions into special elliptic factors with certificates.
//
// Exit codes: 0 ok, 2 invalid input, 3 transition parameter, 4 not decomposable
// within the requested length, 5 open-problem case (2-step unipotent gap).

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "chdecomp/decomposer.hpp"
#include "chdecomp/report.hpp"

using nlohmann::json;
using namespace chd;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

Mat3 load_matrix(const std::string& path) {
    json j = read_json_file(path);
    Mat3 raw = matrix_from_json(j);
    auto [m, k] = normalize_lift(raw);
    (void)k;
    return m;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"special elliptic decompositions of PU(2,1) isometries"};
    app.require_subcommand(1);

    double tol = 1e-8;
    app.add_option("--tol", tol, "residual bound for certificates");
    int budget = 10000;
    app.add_option("--budget", budget, "search sample budget");
    unsigned seed = 0;
    app.add_option("--seed", seed, "search determinism seed");

    // classify
    auto* c_cmd = app.add_subcommand("classify", "classify an isometry given as matrix JSON");
    std::string c_matrix;
    c_cmd->add_option("matrix", c_matrix, "path to {\"re\":[[..]],\"im\":[[..]]} JSON")
        ->required();

    // atlas
    auto* a_cmd = app.add_subcommand("atlas", "chamber atlas for a parameter a = p/q of pi");
    std::string a_angle, a_out = "atlas";
    a_cmd->add_option("angle", a_angle, "parameter angle as p/q (units of pi), 0 < a < 2/3")
        ->required();
    a_cmd->add_option("--out", a_out, "output path prefix (.svg/.json/.csv)");

    // decompose
    auto* d_cmd = app.add_subcommand("decompose", "decompose an isometry into reflections");
    std::string d_matrix, d_angle;
    int d_max_len = 4;
    d_cmd->add_option("matrix", d_matrix, "path to matrix JSON")->required();
    d_cmd->add_option("angle", d_angle, "parameter angle as p/q (units of pi)")->required();
    d_cmd->add_option("--max-length", d_max_len, "largest number of factors to accept");

    // sweep
    auto* s_cmd = app.add_subcommand("sweep", "status sweep over a parameter range");
    std::string s_from = "0", s_to = "2/3", s_out = "sweep";
    int s_steps = 144;
    s_cmd->add_option("--from", s_from, "range start, p/q of pi");
    s_cmd->add_option("--to", s_to, "range end, p/q of pi");
    s_cmd->add_option("--steps", s_steps, "number of grid intervals");
    s_cmd->add_option("--out", s_out, "output path prefix (.csv/.json)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_cmd) {
            Mat3 m;
            try {
                m = load_matrix(c_matrix);
            } catch (const std::exception& e) {
                std::cerr << "invalid input: " << e.what() << "\n";
                return 2;
            }
            std::cout << classify_report(m).dump(2) << "\n";
            return 0;
        }

        if (*a_cmd) {
            Rat a;
            try {
                a = parse_pi_fraction(a_angle);
            } catch (const std::exception& e) {
                std::cerr << "invalid angle: " << e.what() << "\n";
                return 2;
            }
            if (!(Rat(0) < a && a < Rat(2, 3))) {
                std::cerr << "ParameterOutOfRange: need 0 < a < 2/3 (units of pi)\n";
                return 2;
            }
            try {
                Atlas at = chambers(a);
                write_file(a_out + ".json", atlas_report(at).dump(2) + "\n");
                write_file(a_out + ".csv", atlas_walls_csv(at));
                write_file(a_out + ".svg", atlas_svg(at));
                int full = 0, empty = 0, unknown = 0;
                for (auto& c : at.chambers) {
                    if (c.status == ChamberStatus::full) ++full;
                    else if (c.status == ChamberStatus::empty) ++empty;
                    else ++unknown;
                }
                std::cout << "chambers: " << at.chambers.size() << " (full " << full << ", empty "
                          << empty << ", unknown " << unknown << ") -> " << a_out
                          << ".{svg,json,csv}\n";
                return 0;
            } catch (const TransitionParameter& e) {
                std::cerr << "TransitionParameter: " << e.what()
                          << " (perturb a away from multiples of 2/27)\n";
                return 3;
            }
        }

        if (*d_cmd) {
            Mat3 m;
            Rat a;
            try {
                m = load_matrix(d_matrix);
                a = parse_pi_fraction(d_angle);
            } catch (const std::exception& e) {
                std::cerr << "invalid input: " << e.what() << "\n";
                return 2;
            }
            Parameter alpha = Parameter::from_pi_units(a);
            std::optional<LengthResult> lr_opt;
            try {
                lr_opt = alpha_length(m, alpha);
            } catch (const SearchExhausted& e) {
                std::cerr << "search exhausted: " << e.what() << "\n";
                return 4;
            }
            LengthResult& lr = *lr_opt;
            if (!lr.exact && lr.n > d_max_len) {
                std::cerr << "unknown: open-problem case (2-step unipotent, alpha^3 outside "
                             "±Omega); certificate has "
                          << lr.n << " factors\n";
                return 5;
            }
            if (lr.n > d_max_len) {
                std::cerr << "not decomposable with at most " << d_max_len << " factors (needs "
                          << lr.n << ")\n";
                return 4;
            }
            // independent re-verification through Eq. (1) before emission
            int delta = 0;
            double res = certify_residual(m, lr.dec.alpha, lr.dec.centers, &delta);
            if (res > tol) {
                std::cerr << "internal certificate check failed: residual " << res << "\n";
                return 4;
            }
            json out = decomposition_report(m, lr);
            out["verified_residual"] = res;
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (*s_cmd) {
            Rat from = parse_pi_fraction(s_from), to = parse_pi_fraction(s_to);
            SweepResult sr = sweep(from, to, s_steps);
            std::ostringstream csv;
            csv << "a_num,a_den,transition,empty_count,fingerprint\n";
            for (const auto& r : sr.records)
                csv << r.a.num << ',' << r.a.den << ',' << (r.transition ? 1 : 0) << ','
                    << r.empty_count << ',' << r.fingerprint << '\n';
            write_file(s_out + ".csv", csv.str());
            json j;
            j["schema"] = 1;
            json trans = json::array();
            for (const auto& t : sr.detected_transitions) {
                // nearest multiple of 2/27
                double k = t.to_double() * 27.0 / 2.0;
                long kk = std::lround(k);
                trans.push_back(json{{"a", {{"num", t.num}, {"den", t.den}}},
                                     {"nearest_transition", {{"num", 2 * kk}, {"den", 27}}}});
            }
            j["transitions"] = trans;
            write_file(s_out + ".json", j.dump(2) + "\n");
            std::cout << "sweep: " << sr.records.size() << " grid points, "
                      << sr.detected_transitions.size() << " transition marks -> " << s_out
                      << ".{csv,json}\n";
            return 0;
        }
    } catch (const TransitionParameter& e) {
        std::cerr << "TransitionParameter: " << e.what() << "\n";
        return 3;
    } catch (const chd_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
