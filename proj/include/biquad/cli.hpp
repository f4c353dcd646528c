#pragma once

// Command-line surface.  Six subcommands:
//
//   classify   canonicalize a field, print class tag and integral basis
//   unit       fundamental unit of a real quadratic ring (Pell solver)
//   decompose  write an element (or four times it) as a sum of squares
//   verify     re-check a stored representation, report the residual
//   survey     sweep fields, compare minus-one lengths, emit CSV
//   s-number   minus-one data for one imaginary quadratic ring
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 capability limit (wrong class / search bound), 4 internal error.

#include "serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace biquad {

namespace detail {

struct cli_exit {
    int code;
};

inline std::array<Rat, 4> parse_coords(const std::string& s) {
    std::array<Rat, 4> out;
    std::stringstream ss(s);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= 4) throw std::invalid_argument("expected exactly four comma-separated coordinates");
        const auto a = part.find_first_not_of(" \t");
        const auto b = part.find_last_not_of(" \t");
        if (a == std::string::npos)
            throw std::invalid_argument("empty coordinate in --coords");
        out[i++] = parse_rat(part.substr(a, b - a + 1));
    }
    if (i != 4) throw std::invalid_argument("expected exactly four comma-separated coordinates");
    return out;
}

inline void print_field_header(std::ostream& os, const Field& K) {
    os << "field Q(sqrt(" << K->r1 << "), sqrt(" << K->r2 << "))  class " << K->tag
       << "  d = " << K->d << "  subfield radicands: " << K->r1 << ", " << K->r2 << ", " << K->r3
       << "\n";
}

inline json classify_to_json(const Field& K) {
    json basis = json::array();
    json pretty = json::array();
    for (int i = 0; i < 4; ++i) {
        basis.push_back(elem_to_json(basis_elem(K, i)));
        pretty.push_back(to_string(basis_elem(K, i)));
    }
    return json{{"field", field_to_json(K)}, {"class", K->tag},      {"d", K->d},
                {"r3", K->r3},               {"basis", std::move(basis)}, {"pretty", std::move(pretty)}};
}

inline std::string read_all(const std::string& path) {
    if (path == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace detail

inline int cli_main(int argc, const char* const* argv) {
    CLI::App app{"integral bases and sums of squares in complex biquadratic fields"};
    app.require_subcommand(1);

    std::vector<long long> field_pair;
    std::string coords_str, in_path, out_path = "-";
    long long unit_d = 0, rmax = 20;
    int samples = 25;
    std::uint64_t seed = 0;
    bool as_json = false, times_four = false;

    auto* classify = app.add_subcommand("classify", "canonical generators, class tag, integral basis");
    classify->add_option("--radicands", field_pair, "generator radicands r1 r2")->required()->expected(2);
    classify->add_flag("--json", as_json, "emit JSON");
    classify->callback([&] {
        auto K = classify_field(field_pair[0], field_pair[1]);
        if (as_json) {
            std::cout << detail::classify_to_json(K).dump(2) << "\n";
            return;
        }
        detail::print_field_header(std::cout, K);
        std::cout << "integral basis:\n";
        for (int i = 0; i < 4; ++i)
            std::cout << "  B" << i << " = " << to_string(basis_elem(K, i)) << "\n";
    });

    auto* unit = app.add_subcommand("unit", "fundamental unit of Z + Z[(1+sqrt(d))/2] resp. Z[sqrt(d)]");
    unit->add_option("d", unit_d, "positive squarefree radicand")->required();
    unit->add_flag("--json", as_json, "emit JSON");
    unit->callback([&] {
        auto u = pell_fundamental_unit(Int(unit_d));
        QuadElem e = u.halved ? make_quad(unit_d, Rat(u.t, 2), Rat(u.u, 2))
                              : make_quad(unit_d, Rat(u.t), Rat(u.u));
        if (as_json) {
            std::cout << json{{"d", unit_d},
                              {"t", to_string(u.t)},
                              {"u", to_string(u.u)},
                              {"halved", u.halved},
                              {"norm", u.norm},
                              {"pretty", to_string(e)}}
                             .dump(2)
                      << "\n";
            return;
        }
        std::cout << "fundamental unit of Q(sqrt(" << unit_d << ")): " << to_string(e)
                  << "\nnorm: " << u.norm << (u.halved ? "  (half-integer coordinates)" : "")
                  << "\n";
    });

    auto* dec = app.add_subcommand("decompose", "sum-of-squares decomposition over the integral basis");
    dec->add_option("--field", field_pair, "generator radicands r1 r2")->required()->expected(2);
    dec->add_option("--coords", coords_str, "basis coordinates x0,x1,x2,x3 (rationals allowed)")
        ->required();
    dec->add_flag("--times-four", times_four, "decompose 4*alpha (works in every class)");
    dec->add_flag("--json", as_json, "emit JSON");
    dec->callback([&] {
        auto K = classify_field(field_pair[0], field_pair[1]);
        auto alpha = from_basis_coords(K, detail::parse_coords(coords_str));
        if (!times_four && !K->is_class_one()) {
            std::cerr << "error: field (" << K->r1 << ", " << K->r2 << ") is class " << K->tag
                      << ", where not every integer is a sum of squares; pass --times-four to "
                         "decompose 4*alpha instead\n";
            throw detail::cli_exit{3};
        }
        SosRep rep = times_four ? decompose_4(alpha) : decompose_any(alpha);
        if (!sos_verify(rep)) throw std::logic_error("decomposition failed self-verification");
        if (as_json) {
            json j = rep_to_json(rep);
            j["length"] = rep.squares.size();
            std::cout << j.dump(2) << "\n";
            return;
        }
        detail::print_field_header(std::cout, K);
        std::cout << "target = " << to_string(rep.target) << "\n";
        for (const auto& s : rep.squares) std::cout << "  square of: " << to_string(s) << "\n";
        std::cout << "sum of " << rep.squares.size() << " squares, verified exactly\n";
    });

    auto* ver = app.add_subcommand("verify", "re-check a stored representation");
    ver->add_option("--json-file", in_path, "JSON file (\"-\" for stdin)")->required();
    ver->callback([&] {
        SosRep rep = rep_from_json(json::parse(detail::read_all(in_path)));
        if (sos_verify(rep)) {
            std::cout << "verified: " << to_string(rep.target) << " is a sum of "
                      << rep.squares.size() << " squares\n";
            return;
        }
        BiquadElem sum = integer_elem(rep.K, 0);
        for (const auto& s : rep.squares) sum = sum + s * s;
        std::cout << "verification FAILED\nresidual (target - sum of squares) = "
                  << to_string(rep.target - sum) << "\n";
        throw detail::cli_exit{1};
    });

    auto* sur = app.add_subcommand("survey", "sweep all fields with |radicand| <= rmax");
    sur->add_option("--rmax", rmax, "radicand bound (2..200)")->required();
    sur->add_option("--samples", samples, "random decompose-4 samples per field (default 25)");
    sur->add_option("--seed", seed, "stream seed (default 0)");
    sur->add_option("--out", out_path, "CSV destination (default stdout)");
    sur->callback([&] {
        auto rows = run_survey(rmax, samples, seed);
        for (const auto& r : rows)
            if (r.max_decomp4_len > 5) {
                std::cerr << "five-square bound violated at (" << r.r1 << ", " << r.r2 << ")\n";
                throw detail::cli_exit{1};
            }
        std::string csv = survey_csv(rows);
        int flagged = 0;
        for (const auto& r : rows) flagged += r.discrepancy_flag;
        if (out_path == "-") {
            std::cout << csv;
            return;
        }
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open " + out_path);
        out << csv;
        std::cout << "wrote " << rows.size() << " fields (" << flagged << " flagged) to "
                  << out_path << "\n";
    });

    auto* sn = app.add_subcommand("s-number", "minus-one lengths in Q(sqrt(-d)): both rules and a witness");
    sn->add_option("d", unit_d, "positive squarefree d")->required();
    sn->add_flag("--json", as_json, "emit JSON");
    sn->callback([&] {
        int sf = moser_s_field(unit_d);
        int sr = moser_s_ring(unit_d);
        const auto& eps = minus_one_rep_quad(unit_d);
        if (as_json) {
            json terms = json::array();
            for (const auto& e : eps) terms.push_back(to_string(e));
            std::cout << json{{"d", unit_d},
                              {"s_field", sf},
                              {"s_ring", sr},
                              {"s_oracle", eps.size()},
                              {"discrepancy", sr != (int)eps.size()},
                              {"minus_one", std::move(terms)}}
                             .dump(2)
                      << "\n";
            return;
        }
        std::cout << "Q(sqrt(" << -unit_d << "))\ns_field (genus rule): " << sf
                  << "\ns_ring (unit-norm rule): " << sr << "\ns_oracle (constructed): " << eps.size()
                  << "\ndiscrepancy: " << (sr != (int)eps.size() ? "yes" : "no") << "\n-1 =";
        for (std::size_t i = 0; i < eps.size(); ++i)
            std::cout << (i ? " + (" : " (") << to_string(eps[i]) << ")^2";
        std::cout << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e); // prints help or the parse message
        return rc == 0 ? 0 : 2;
    } catch (const detail::cli_exit& e) {
        return e.code;
    } catch (const wrong_class_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const search_limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

} // namespace biquad
