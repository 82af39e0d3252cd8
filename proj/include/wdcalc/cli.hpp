#ifndef WDCALC_CLI_HPP
#define WDCALC_CLI_HPP

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "error.hpp"
#include "json_io.hpp"
#include "modp_gl2.hpp"
#include "multisegment.hpp"
#include "specialization.hpp"
#include "weil_deligne.hpp"

namespace wdcalc::cli
{

using json = nlohmann::json;

enum exit_code : int { ok = 0, usage = 1, invalid = 2, internal = 3 };

namespace detail
{

using Handler = std::function<json(const json&)>;

inline json fss_command(const json& in)
{
    if (in.is_object() && in.contains("phi")) {
        return json_io::encode(frobenius_semisimplify(from_galois_sample(json_io::decode_galois_sample(in))));
    }
    return json_io::encode(frobenius_semisimplify(json_io::decode_rep(in)));
}

inline json bs_command(const json& in)
{
    const TwistedMultisegment tm = breuil_schneider(json_io::decode_rep(in));
    return {{"half_twist", tm.half_twist}, {"segments", json_io::encode_segments(order_multisegment(tm.ms))}};
}

inline json downset_command(const json& in)
{
    std::int64_t bound = default_search_bound;
    if (in.contains("bound")) {
        bound = json_io::require_int(in, "bound");
    }
    json out = json::array();
    for (const auto& m : down_set(json_io::decode_multisegment(in), bound)) {
        out.push_back(json_io::encode(m));
    }
    return {{"down_set", std::move(out)}};
}

inline json generic_support_command(const json& in)
{
    std::vector<CuspidalLabel> support;
    for (const auto& label : json_io::require_array(in, "support")) {
        support.push_back(json_io::decode_label(label));
    }
    return json_io::encode(generic_multisegment(support));
}

inline const std::map<std::string, std::pair<std::string, Handler>>& commands()
{
    static const std::map<std::string, std::pair<std::string, Handler>> table = {
        {"fss", {"Frobenius-semisimplify a representation or Galois sample", fss_command}},
        {"to-multisegment",
         {"multisegment of a split representation",
          [](const json& in) { return json_io::encode(wd_to_multisegment(json_io::decode_rep(in))); }}},
        {"bs", {"ordered multisegment of the attached induced representation", bs_command}},
        {"specialize",
         {"generic fiber, reduction and special fiber of a p-integral representation",
          [](const json& in) {
              return json_io::encode(
                  specialize(json_io::decode_rep(json_io::require(in, "rep")), json_io::require_positive(in, "p")));
          }}},
        {"leq",
         {"decide lhs <= rhs in the Zelevinski order",
          [](const json& in) {
              return json{{"leq", leq(json_io::decode_multisegment(json_io::require(in, "lhs")),
                                      json_io::decode_multisegment(json_io::require(in, "rhs")))}};
          }}},
        {"downset", {"all multisegments below the input", downset_command}},
        {"generic-support", {"generic multisegment with a given support", generic_support_command}},
        {"gl2-modp",
         {"GL2 mod-p constituent table",
          [](const json& in) { return json_io::encode(gl2_modp_table(json_io::decode_gl2_input(in))); }}},
        {"length-bound",
         {"length bound for parabolic inductions",
          [](const json& in) {
              return json{{"bound", length_bound(json_io::require_positive(in, "n"))}};
          }}},
    };
    return table;
}

inline json error_json(const std::string& kind, const std::string& message)
{
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

} // namespace detail

/// Runs one command. args excludes the program name. Reads JSON from
/// --input (or `in`) and writes JSON to --output (or `out`).
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Weil-Deligne and multisegment calculator", "wdcalc"};
    app.require_subcommand(1, 1);
    std::string input_path;
    std::string output_path;
    for (const auto& [name, entry] : detail::commands()) {
        auto* sub = app.add_subcommand(name, entry.first);
        sub->add_option("--input,-i", input_path, "input JSON file (default: standard input)");
        sub->add_option("--output,-o", output_path, "output file (default: standard output)");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "wdcalc: " << e.what() << "\n" << app.help();
        return exit_code::usage;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    std::ofstream file_out;
    if (!output_path.empty()) {
        file_out.open(output_path, std::ios::binary);
        if (!file_out) {
            err << "wdcalc: cannot open " << output_path << " for writing\n";
            return exit_code::usage;
        }
    }
    std::ostream& sink = output_path.empty() ? out : file_out;

    auto emit = [&](const json& j) { sink << j.dump(2) << "\n"; };
    auto fail = [&](int code, const std::string& kind, const std::string& message) {
        emit(detail::error_json(kind, message));
        err << "wdcalc " << command << ": " << message << "\n";
        return code;
    };

    std::string text;
    if (input_path.empty()) {
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        std::ifstream file_in(input_path, std::ios::binary);
        if (!file_in) {
            return fail(exit_code::invalid, "io", "cannot open " + input_path);
        }
        text.assign(std::istreambuf_iterator<char>(file_in), std::istreambuf_iterator<char>());
    }

    try {
        const json input = json::parse(text);
        emit(detail::commands().at(command).second(input));
        return exit_code::ok;
    } catch (const json::parse_error& e) {
        return fail(exit_code::invalid, "malformed_json", e.what());
    } catch (const json::exception& e) {
        return fail(exit_code::invalid, "schema", e.what());
    } catch (const json_io::schema_error& e) {
        return fail(exit_code::invalid, "schema", e.what());
    } catch (const not_p_integral& e) {
        return fail(exit_code::invalid, "not_p_integral", e.what());
    } catch (const non_split_spectrum& e) {
        return fail(exit_code::invalid, "non_split_spectrum", e.what());
    } catch (const characteristic_too_small& e) {
        return fail(exit_code::invalid, "characteristic_too_small", e.what());
    } catch (const invalid_input& e) {
        return fail(exit_code::invalid, "invalid_input", e.what());
    } catch (const internal_error& e) {
        return fail(exit_code::internal, "internal_error", e.what());
    }
}

} // namespace wdcalc::cli

#endif // WDCALC_CLI_HPP
