#ifndef EQK_CLI_HPP
#define EQK_CLI_HPP

// Command implementations behind the eqk executable. Each command writes its
// report to `out`, diagnostics to `err`, and returns the process exit code:
//
//   0  success
//   1  invalid input (parse/validation error, missing inputs)
//   2  LocalizationLeak
//   3  oracle disagreement
//   4  verification failure

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <eqk/checks.hpp>
#include <eqk/completion.hpp>
#include <eqk/demazure.hpp>
#include <eqk/error.hpp>
#include <eqk/io.hpp>
#include <eqk/localization.hpp>

namespace eqk::cli
{

enum exit_code : int {
    ok = 0,
    invalid_input = 1,
    localization_leak = 2,
    oracle_disagreement = 3,
    verification_failed = 4,
};

inline std::vector<std::int64_t> parse_int_list(const std::string &s)
{
    std::vector<std::int64_t> out;
    if (s.empty()) {
        return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (tok.empty() || used != tok.size()) {
            throw error(errc::parse_error, "'" + s + "' is not a comma-separated integer list");
        }
        out.push_back(v);
    }
    return out;
}

inline io::json check_json(const std::string &name, const std::string &status)
{
    return io::json{{"name", name}, {"status", status}};
}

struct chi_options {
    std::string fan_path;
    std::optional<std::string> divisor; // comma list overriding the file's divisor
    bool oracle = false;
    bool json = false;
    std::size_t threads = 1;
};

inline int cmd_chi(const chi_options &opt, std::ostream &out, std::ostream &err)
{
    io::fan_input in;
    try {
        in = io::read_fan_file(opt.fan_path);
        if (opt.divisor) {
            const auto a = parse_int_list(*opt.divisor);
            if (a.size() != in.toric_fan.rays().size()) {
                throw error(errc::parse_error, "--divisor needs one coefficient per ray");
            }
            in.div = divisor{a};
            in.document = io::fan_to_json(in.toric_fan, in.div);
        }
    } catch (const error &e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
    }

    laurent chi(in.toric_fan.rank());
    try {
        chi = equivariant_euler_char(in.toric_fan, in.div, opt.threads);
    } catch (const error &e) {
        err << "error: " << e.what() << '\n';
        return e.code() == errc::localization_leak ? localization_leak : invalid_input;
    }

    io::json checks = io::json::array();
    std::vector<std::string> lines{chi.to_text()};
    int code = ok;
    if (opt.oracle) {
        try {
            const auto cech = cech_oracle(in.toric_fan, in.div);
            lines.push_back("cech: " + cech.to_text());
            checks.push_back(check_json("cech", cech == chi ? "AGREE" : "DISAGREE"));
            bool agree = cech == chi;
            if (is_nef(in.toric_fan, in.div)) {
                const auto nef = nef_oracle(in.toric_fan, in.div);
                lines.push_back("nef: " + nef.to_text());
                checks.push_back(check_json("nef", nef == chi ? "AGREE" : "DISAGREE"));
                agree = agree && nef == chi;
            } else {
                lines.push_back("nef: n/a (divisor is not nef)");
            }
            lines.emplace_back(agree ? "AGREE" : "DISAGREE");
            code = agree ? ok : oracle_disagreement;
        } catch (const error &e) {
            err << "error: " << e.what() << '\n';
            return invalid_input;
        }
    }

    if (opt.json) {
        io::json doc{{"command", "chi"},
                     {"result_terms", io::terms_to_json(chi)},
                     {"checks", checks},
                     {"input", in.document}};
        out << doc.dump(2) << '\n';
    } else {
        for (const auto &l : lines) {
            out << l << '\n';
        }
    }
    return code;
}

struct demazure_options {
    std::string type;
    std::string word;
    std::string weight;
    bool verify = false;
    bool json = false;
    std::int64_t max_coord = 2;
    std::size_t threads = 1;
};

inline int cmd_demazure(const demazure_options &opt, std::ostream &out, std::ostream &err)
{
    laurent chi;
    std::vector<check_result> rows;
    try {
        const auto rd = root_datum::of_type(opt.type);
        weyl_word word;
        for (auto v : parse_int_list(opt.word)) {
            if (v < 1) {
                throw error(errc::bad_index, "letter " + std::to_string(v));
            }
            word.push_back(static_cast<std::size_t>(v));
        }
        const auto coords = parse_int_list(opt.weight);
        if (coords.size() != rd.rank()) {
            throw error(errc::rank_mismatch, "--weight needs " + std::to_string(rd.rank()) + " coordinates");
        }
        chi = demazure_character(rd, word, weight(std::span<const std::int64_t>(coords)));
        if (opt.verify) {
            demazure_sweep_options so;
            so.max_coord = opt.max_coord;
            so.random_trials = 1000;
            so.threads = opt.threads;
            rows = demazure_checks(rd, so);
        }
    } catch (const error &e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
    }
    const bool all_pass = std::all_of(rows.begin(), rows.end(), [](const check_result &r) { return r.passed(); });
    if (opt.json) {
        io::json checks = io::json::array();
        for (const auto &r : rows) {
            checks.push_back(check_json(r.name, r.passed() ? "PASS" : "FAIL"));
        }
        out << io::json{{"command", "demazure"}, {"result_terms", io::terms_to_json(chi)}, {"checks", checks}}.dump(2)
            << '\n';
    } else {
        out << chi.to_text() << '\n';
        for (const auto &r : rows) {
            out << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases, " << r.failures
                << " failures)\n";
        }
    }
    return all_pass ? ok : verification_failed;
}

struct grr_options {
    std::string fan_path;
    std::optional<std::size_t> order;
    std::string xi;
    bool json = false;
};

inline int cmd_grr(const grr_options &opt, std::ostream &out, std::ostream &err)
{
    io::fan_input in;
    weight xi;
    std::size_t order = 0;
    laurent chi;
    try {
        in = io::read_fan_file(opt.fan_path);
        const auto coords = parse_int_list(opt.xi);
        xi = weight(std::span<const std::int64_t>(coords));
        order = opt.order.value_or(in.toric_fan.rank() + 2);
        chi = equivariant_euler_char(in.toric_fan, in.div);
    } catch (const error &e) {
        err << "error: " << e.what() << '\n';
        return e.code() == errc::localization_leak ? localization_leak : invalid_input;
    }
    std::string value = "n/a";
    std::string neg_status = "PASS";
    std::string match_status = "FAIL";
    int code = ok;
    try {
        const auto c0 = todd_grr_check(in.toric_fan, in.div, xi, order);
        value = c0.str();
        match_status = c0 == augment(chi) ? "PASS" : "FAIL";
        code = c0 == augment(chi) ? ok : oracle_disagreement;
    } catch (const error &e) {
        switch (e.code()) {
            case errc::negative_powers_survive:
                neg_status = "FAIL";
                code = oracle_disagreement;
                break;
            case errc::non_integral_constant_term:
                code = oracle_disagreement;
                break;
            default:
                err << "error: " << e.what() << '\n';
                return invalid_input;
        }
        err << "error: " << e.what() << '\n';
    }
    if (opt.json) {
        io::json checks = io::json::array({check_json("negative-powers-cancel", neg_status),
                                           check_json("euler-characteristic", match_status)});
        io::json doc{{"command", "grr"},
                     {"result_terms", io::json::array({io::json::array({value, io::json::array()})})},
                     {"checks", checks},
                     {"input", in.document}};
        out << doc.dump(2) << '\n';
    } else {
        out << value << '\n';
        out << neg_status << " negative powers cancel\n";
        out << match_status << " constant term equals augment(chi) = " << augment(chi) << '\n';
    }
    return code;
}

struct verify_options {
    std::string corpus_dir;
    std::int64_t range = 3;
    std::size_t threads = 1;
    bool json = false;
};

// Runs the toric sweep on every fan document (*.json with "rays") and the
// Demazure sweep on every root-datum document (*.json with "root_datum") in
// the corpus directory, in file-name order.
inline int cmd_verify(const verify_options &opt, std::ostream &out, std::ostream &err)
{
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    std::error_code ec;
    if (!fs::is_directory(opt.corpus_dir, ec)) {
        err << "error: " << opt.corpus_dir << " is not a directory\n";
        return invalid_input;
    }
    for (const auto &entry : fs::directory_iterator(opt.corpus_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        err << "error: no inputs in " << opt.corpus_dir << '\n';
        return invalid_input;
    }

    struct row {
        std::string name;
        bool pass;
        std::string note;
    };
    std::vector<row> table;
    for (const auto &path : files) {
        const auto label = path.filename().string();
        try {
            const auto doc = io::read_json_file(path.string());
            if (doc.contains("root_datum")) {
                const auto rd = root_datum::of_type(doc.at("root_datum").get<std::string>());
                demazure_sweep_options so;
                so.max_coord = doc.value("max_coord", std::int64_t{3});
                so.random_trials = doc.value("random_trials", std::size_t{10000});
                so.threads = opt.threads;
                for (const auto &r : demazure_checks(rd, so)) {
                    table.push_back({label + "/" + r.name, r.passed(),
                                     std::to_string(r.cases) + " cases, " + std::to_string(r.failures) + " failures"});
                }
            } else {
                const auto in = io::fan_from_json(doc);
                table.push_back({label + "/validate", validate_fan(in.toric_fan) == in.toric_fan, "idempotent"});
                toric_sweep_options so;
                so.range = doc.value("range", opt.range);
                so.threads = opt.threads;
                for (const auto &r : toric_checks(in.toric_fan, so)) {
                    std::string note = std::to_string(r.cases) + " cases, " + std::to_string(r.failures) + " failures";
                    if (!r.passed() && !r.first_failure.empty()) {
                        note += "; first: " + r.first_failure;
                    }
                    table.push_back({label + "/" + r.name, r.passed(), note});
                }
            }
        } catch (const std::exception &e) {
            table.push_back({label + "/load", false, e.what()});
        }
    }

    const bool all_pass = std::all_of(table.begin(), table.end(), [](const row &r) { return r.pass; });
    if (opt.json) {
        io::json checks = io::json::array();
        for (const auto &r : table) {
            checks.push_back(check_json(r.name, r.pass ? "PASS" : "FAIL"));
        }
        out << io::json{{"command", "verify"}, {"result_terms", io::json::array()}, {"checks", checks}}.dump(2)
            << '\n';
    } else {
        for (const auto &r : table) {
            out << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.note << ")\n";
        }
        out << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << '\n';
    }
    return all_pass ? ok : verification_failed;
}

} // namespace eqk::cli

#endif
