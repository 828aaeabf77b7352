// shiftlab: symbolic-dynamics experiments on hereditary shift spaces —
// rotation-coded interpolation arcs, d-bar ladders, entropy estimates and
// family checkers, with reproducible CSV/JSON artifacts.

#include <CLI11.hpp>

#include "shiftlab/arc.hpp"
#include "shiftlab/block_dist.hpp"
#include "shiftlab/entropy.hpp"
#include "shiftlab/errors.hpp"
#include "shiftlab/families.hpp"
#include "shiftlab/manifest.hpp"
#include "shiftlab/sources.hpp"
#include "shiftlab/transport.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace shiftlab;

namespace {

// Exit codes: 0 success/holds, 1 property fails with witness, 2 invalid
// input, 3 internal consistency violation, 4 non-convergence.
constexpr int kExitWitness = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitViolation = 3;
constexpr int kExitNonConverged = 4;

std::string resolve_out(const std::string& path) {
    if (path.empty()) return path;
    if (std::filesystem::path(path).is_absolute()) return path;
    const char* dir = std::getenv("SHIFTLAB_OUT_DIR");
    if (!dir || !*dir) return path;
    return (std::filesystem::path(dir) / path).string();
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, sep)) out.push_back(token);
    return out;
}

Window load_window(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open window file: " + path);
    return Window::read(in);
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

Rational json_rational(const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw std::invalid_argument("probabilities must be strings (exact) or integers");
}

GenericSource parse_source(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("malformed source: " + text);
    const std::string kind = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    if (kind == "bernoulli") {
        auto parts = split(arg, ',');
        std::vector<Rational> probs;
        if (parts.size() == 1) {
            Rational p1 = parse_rational(parts[0]);
            probs = {Rational(1) - p1, p1};
        } else {
            for (const auto& p : parts) probs.push_back(parse_rational(p));
        }
        return BernoulliSource{std::move(probs)};
    }
    if (kind == "markov") {
        if (arg.empty() || arg[0] != '@')
            throw std::invalid_argument("markov source needs @file with a rows matrix");
        auto j = load_json(arg.substr(1));
        std::vector<std::vector<Rational>> rows;
        for (const auto& row : j.at("rows")) {
            std::vector<Rational> r;
            for (const auto& v : row) r.push_back(json_rational(v));
            rows.push_back(std::move(r));
        }
        return MarkovSource{std::move(rows)};
    }
    if (kind == "parry") {
        if (arg.empty() || arg[0] != '@')
            throw std::invalid_argument("parry source needs @file with an adjacency matrix");
        auto j = load_json(arg.substr(1));
        std::vector<std::vector<int>> adjacency = j.at("adjacency");
        return SftParrySource{std::move(adjacency)};
    }
    if (kind == "file") return FileSource{arg};
    throw std::invalid_argument("unknown source kind: " + kind);
}

FixedFraction parse_alpha(const std::string& text, int precision_bits) {
    FixedFraction alpha;
    if (text == "default") {
        alpha = select_alpha_default().quantized(precision_bits);
    } else if (text.rfind("rand:", 0) == 0) {
        alpha = select_alpha_randomized(std::stoull(text.substr(5))).quantized(precision_bits);
    } else if (text.rfind("hex:", 0) == 0) {
        alpha = select_alpha_explicit(FixedFraction::from_hex(text.substr(4)).quantized(precision_bits));
    } else {
        alpha = select_alpha_explicit(FixedFraction::from_decimal(text).quantized(precision_bits));
    }
    return alpha;
}

std::vector<UnitValue> parse_grid(const std::string& text) {
    std::vector<UnitValue> betas;
    auto colons = split(text, ':');
    if (colons.size() == 3) {
        Rational start = parse_rational(colons[0]);
        Rational stop = parse_rational(colons[1]);
        Rational step = parse_rational(colons[2]);
        if (step <= 0) throw std::invalid_argument("grid step must be positive");
        for (Rational v = start; v <= stop; v += step) betas.push_back(unit_from_rational(v));
    } else {
        for (const auto& part : split(text, ',')) betas.push_back(unit_from_rational(parse_rational(part)));
    }
    if (betas.empty()) throw std::invalid_argument("empty beta grid: " + text);
    return betas;
}

void write_manifest_file(const std::string& out_path, const RunManifest& manifest) {
    nlohmann::json wrapper;
    wrapper["hash"] = manifest.hash_hex();
    wrapper["manifest"] = manifest.fields;
    atomic_write_file(out_path + ".manifest.json", wrapper.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

int cmd_gen(const std::string& source_text_arg, const std::string& family,
            const std::string& b_list, const std::string& range, std::uint64_t n,
            std::optional<std::uint64_t> seed, std::int64_t base, const std::string& out) {
    RunManifest manifest;
    manifest.fields["command"] = "gen";
    Window w = [&]() -> Window {
        if (!family.empty()) {
            if (family != "bfree")
                throw std::invalid_argument("gen supports --family bfree only (use --source otherwise)");
            auto parts = split(range, ':');
            if (parts.size() != 2) throw std::invalid_argument("range must be lo:hi");
            std::vector<std::int64_t> B;
            for (const auto& b : split(b_list, ',')) B.push_back(std::stoll(b));
            manifest.fields["family"] = "bfree";
            manifest.fields["B"] = B;
            manifest.fields["range"] = range;
            return bfree_characteristic(B, std::stoll(parts[0]), std::stoll(parts[1]));
        }
        if (source_text_arg.empty())
            throw std::invalid_argument("gen needs --source or --family");
        GenericSource source = parse_source(source_text_arg);
        const bool sampling = !std::holds_alternative<FileSource>(source);
        if (sampling && !seed)
            throw std::invalid_argument("sampling sources require --seed (no silent nondeterminism)");
        if (n == 0) throw std::invalid_argument("gen needs --n >= 1");
        manifest.fields["source"] = source_text(source);
        manifest.fields["n"] = n;
        if (seed) manifest.fields["seed"] = *seed;
        manifest.fields["base"] = base;
        return sample_generic(source, n, seed.value_or(0), base);
    }();

    std::ostringstream body;
    body << "# manifest=" << manifest.hash_hex() << "\n";
    w.write(body);
    atomic_write_file(out, body.str());
    write_manifest_file(out, manifest);
    return 0;
}

int cmd_arc(const std::string& x_path, const std::string& alpha_text, const std::string& grid,
            int k, const std::string& spec_path, int precision_bits, const std::string& out) {
    Window x = load_window(x_path);
    FixedFraction alpha = parse_alpha(alpha_text, precision_bits);
    auto betas = parse_grid(grid);

    RunManifest manifest;
    manifest.fields["command"] = "arc";
    manifest.fields["x"] = x_path;
    manifest.fields["alpha_hex"] = alpha.hex();
    manifest.fields["precision_bits"] = precision_bits;
    manifest.fields["grid"] = grid;
    manifest.fields["k"] = k;
    if (!spec_path.empty()) manifest.fields["spec"] = spec_path;

    std::optional<ShiftFamilySpec> family;
    if (!spec_path.empty()) family = load_spec_file(spec_path);

    auto samples = arc_sweep(x, alpha, betas, k, family ? &*family : nullptr);

    std::ostringstream csv;
    csv << "# manifest=" << manifest.hash_hex() << "\n";
    csv << "beta,entropy,dbar_to_x,dbar_to_zero,dbar_to_x_exact,dbar_to_zero_exact\n";
    for (const auto& s : samples) {
        csv << decimal12(s.beta.to_double()) << "," << decimal12(s.entropy.chosen_estimate) << ","
            << decimal12(to_double(s.dbar_to_x)) << "," << decimal12(to_double(s.dbar_to_zero))
            << "," << rational_string(s.dbar_to_x) << "," << rational_string(s.dbar_to_zero)
            << "\n";
    }
    atomic_write_file(out, csv.str());
    write_manifest_file(out, manifest);
    return 0;
}

int cmd_bisect(const std::string& x_path, const std::string& alpha_text, double target,
               double tolerance, int max_iter, int k, int grid_points, int precision_bits,
               const std::string& out) {
    Window x = load_window(x_path);
    FixedFraction alpha = parse_alpha(alpha_text, precision_bits);

    RunManifest manifest;
    manifest.fields["command"] = "bisect";
    manifest.fields["x"] = x_path;
    manifest.fields["alpha_hex"] = alpha.hex();
    manifest.fields["precision_bits"] = precision_bits;
    manifest.fields["target"] = target;
    manifest.fields["tol"] = tolerance;
    manifest.fields["max_iter"] = max_iter;
    manifest.fields["k"] = k;
    manifest.fields["grid_points"] = grid_points;

    auto result = bisect_entropy(x, alpha, target, tolerance, max_iter, k, grid_points);

    nlohmann::json j;
    j["beta_star"] = result.beta_star;
    j["achieved"] = result.achieved;
    j["iterations"] = result.iterations;
    j["converged"] = result.converged;
    j["manifest_hash"] = manifest.hash_hex();
    std::string text = j.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        atomic_write_file(out, text);
        write_manifest_file(out, manifest);
    }
    return result.converged ? 0 : kExitNonConverged;
}

int cmd_check(const std::string& spec_path, int max_len, const std::string& mode,
              const std::string& out) {
    auto spec = load_spec_file(spec_path);
    RunManifest manifest;
    manifest.fields["command"] = "check";
    manifest.fields["spec"] = spec_path;
    manifest.fields["max_len"] = max_len;
    manifest.fields["mode"] = mode;

    Verdict verdict;
    if (mode == "hereditary") {
        verdict = heredity_check(spec, max_len);
    } else if (mode.rfind("safe:", 0) == 0) {
        int symbol = std::stoi(mode.substr(5));
        verdict = safe_symbol_check(spec, static_cast<std::uint8_t>(symbol), max_len);
    } else {
        throw std::invalid_argument("mode must be 'hereditary' or 'safe:<symbol>'");
    }

    nlohmann::json j;
    j["family"] = family_name(spec);
    j["mode"] = mode;
    j["max_len"] = max_len;
    j["holds"] = verdict.holds;
    if (verdict.witness) {
        j["witness"] = {{"word", verdict.witness->first.symbols_text()},
                        {"smaller", verdict.witness->second.symbols_text()}};
    } else {
        j["witness"] = nullptr;
    }
    j["manifest_hash"] = manifest.hash_hex();
    std::string text = j.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        atomic_write_file(out, text);
        write_manifest_file(out, manifest);
    }
    return verdict.holds ? 0 : kExitWitness;
}

int cmd_dbar(const std::string& x_path, const std::string& y_path, const std::string& ks_text,
             const std::string& out) {
    Window x = load_window(x_path);
    Window y = load_window(y_path);
    std::vector<int> ks;
    for (const auto& k : split(ks_text, ',')) ks.push_back(std::stoi(k));

    RunManifest manifest;
    manifest.fields["command"] = "dbar";
    manifest.fields["x"] = x_path;
    manifest.fields["y"] = y_path;
    manifest.fields["ks"] = ks;

    auto ladder = dbar_ladder(x, y, ks);

    std::ostringstream csv;
    csv << "# manifest=" << manifest.hash_hex() << "\n";
    csv << "k,cost,cost_exact\n";
    for (const auto& [k, cost] : ladder)
        csv << k << "," << decimal12(to_double(cost)) << "," << rational_string(cost) << "\n";
    if (out.empty()) {
        std::cout << csv.str();
    } else {
        atomic_write_file(out, csv.str());
        write_manifest_file(out, manifest);
    }
    return 0;
}

int cmd_entropy(const std::string& x_path, int k, bool bits, const std::string& out,
                const std::string& json_out) {
    Window x = load_window(x_path);
    RunManifest manifest;
    manifest.fields["command"] = "entropy";
    manifest.fields["x"] = x_path;
    manifest.fields["k"] = k;
    manifest.fields["bits"] = bits;

    auto profile = entropy_estimate(x, k);
    const double unit = bits ? std::log(2.0) : 1.0;

    std::ostringstream csv;
    csv << "# manifest=" << manifest.hash_hex() << "\n";
    csv << "k,H_k,h_k\n";
    for (std::size_t i = 0; i < profile.k_values.size(); ++i)
        csv << profile.k_values[i] << "," << decimal12(profile.block_entropies[i] / unit) << ","
            << decimal12(profile.conditional[i] / unit) << "\n";

    nlohmann::json j;
    j["k_values"] = profile.k_values;
    std::vector<double> h_scaled, c_scaled;
    for (double v : profile.block_entropies) h_scaled.push_back(v / unit);
    for (double v : profile.conditional) c_scaled.push_back(v / unit);
    j["block_entropies"] = h_scaled;
    j["conditional"] = c_scaled;
    j["chosen_estimate"] = profile.chosen_estimate / unit;
    j["unit"] = bits ? "bits" : "nats";
    j["method"] = profile.method;
    j["adequacy_factor"] = profile.adequacy_factor;
    j["manifest_hash"] = manifest.hash_hex();

    if (out.empty() && json_out.empty()) {
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (!out.empty()) {
        atomic_write_file(out, csv.str());
        write_manifest_file(out, manifest);
    }
    if (!json_out.empty()) atomic_write_file(json_out, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic-dynamics toolkit: rotation-coded arcs, d-bar ladders, "
                 "entropy estimates, shift-family checkers"};
    app.require_subcommand(1);
    app.set_config("--config");

    int exit_code = 0;

    // gen
    auto* gen = app.add_subcommand("gen", "sample a window or generate a b-free characteristic");
    std::string gen_source, gen_family, gen_b, gen_range, gen_out;
    std::uint64_t gen_n = 0;
    std::int64_t gen_base = 0;
    std::optional<std::uint64_t> gen_seed;
    gen->add_option("--source", gen_source, "bernoulli:p | markov:@file | parry:@file | file:path");
    gen->add_option("--family", gen_family, "bfree");
    gen->add_option("--B", gen_b, "comma-separated divisors for --family bfree");
    gen->add_option("--range", gen_range, "lo:hi coordinate range for --family bfree");
    gen->add_option("--n", gen_n, "window length");
    gen->add_option("--seed", gen_seed, "64-bit seed (required for sampling sources)");
    gen->add_option("--base", gen_base, "absolute coordinate of the first entry");
    gen->add_option("--out", gen_out, "output window file")->required();
    gen->callback([&] {
        exit_code = cmd_gen(gen_source, gen_family, gen_b, gen_range, gen_n, gen_seed, gen_base,
                            resolve_out(gen_out));
    });

    // arc
    auto* arc = app.add_subcommand("arc", "sweep the interpolation arc and write a CSV profile");
    std::string arc_x, arc_alpha = "default", arc_grid = "0:1:0.05", arc_spec, arc_out;
    int arc_k = 8, arc_bits = 128;
    arc->add_option("--x", arc_x, "input window file")->required();
    arc->add_option("--alpha", arc_alpha, "default | rand:SEED | hex:... | decimal in (0,1)");
    arc->add_option("--grid", arc_grid, "start:stop:step or comma list of betas");
    arc->add_option("--k", arc_k, "entropy block length");
    arc->add_option("--spec", arc_spec, "family spec file for admissibility spot-checks");
    arc->add_option("--precision-bits", arc_bits, "alpha lattice precision (96..128)");
    arc->add_option("--out", arc_out, "output CSV")->required();
    arc->callback([&] {
        exit_code = cmd_arc(arc_x, arc_alpha, arc_grid, arc_k, arc_spec, arc_bits,
                            resolve_out(arc_out));
    });

    // bisect
    auto* bisect = app.add_subcommand("bisect", "search the arc for a target entropy");
    std::string bi_x, bi_alpha = "default", bi_out;
    double bi_target = 0, bi_tol = 0.02;
    int bi_iter = 20, bi_k = 8, bi_grid = 41, bi_bits = 128;
    bisect->add_option("--x", bi_x, "input window file")->required();
    bisect->add_option("--alpha", bi_alpha, "alpha policy");
    bisect->add_option("--target", bi_target, "target entropy in nats")->required();
    bisect->add_option("--tol", bi_tol, "tolerance in nats");
    bisect->add_option("--max-iter", bi_iter, "maximum bisection refinements");
    bisect->add_option("--k", bi_k, "entropy block length");
    bisect->add_option("--grid-points", bi_grid, "coarse grid size");
    bisect->add_option("--precision-bits", bi_bits, "alpha lattice precision (96..128)");
    bisect->add_option("--out", bi_out, "output JSON (stdout when omitted)");
    bisect->callback([&] {
        exit_code = cmd_bisect(bi_x, bi_alpha, bi_target, bi_tol, bi_iter, bi_k, bi_grid, bi_bits,
                               resolve_out(bi_out));
    });

    // check
    auto* check = app.add_subcommand("check", "heredity / safe-symbol verdicts for a family spec");
    std::string ck_spec, ck_mode = "hereditary", ck_out;
    int ck_len = 8;
    check->add_option("--spec", ck_spec, "family spec file")->required();
    check->add_option("--max-len", ck_len, "maximum word length");
    check->add_option("--mode", ck_mode, "hereditary | safe:<symbol>");
    check->add_option("--out", ck_out, "output JSON (stdout when omitted)");
    check->callback([&] { exit_code = cmd_check(ck_spec, ck_len, ck_mode, resolve_out(ck_out)); });

    // dbar
    auto* dbar = app.add_subcommand("dbar", "d-bar ladder between two windows");
    std::string db_x, db_y, db_ks = "1,2,4,8", db_out;
    dbar->add_option("--x", db_x, "first window file")->required();
    dbar->add_option("--y", db_y, "second window file")->required();
    dbar->add_option("--ks", db_ks, "comma-separated block lengths (ascending)");
    dbar->add_option("--out", db_out, "output CSV (stdout when omitted)");
    dbar->callback([&] { exit_code = cmd_dbar(db_x, db_y, db_ks, resolve_out(db_out)); });

    // entropy
    auto* entropy = app.add_subcommand("entropy", "block/conditional entropy profile of a window");
    std::string en_x, en_out, en_json;
    int en_k = 8;
    bool en_bits = false;
    entropy->add_option("--x", en_x, "input window file")->required();
    entropy->add_option("--k", en_k, "largest block length");
    entropy->add_flag("--bits", en_bits, "display in bits instead of nats");
    entropy->add_option("--out", en_out, "output CSV");
    entropy->add_option("--json", en_json, "output JSON");
    entropy->callback([&] {
        exit_code = cmd_entropy(en_x, en_k, en_bits, resolve_out(en_out), resolve_out(en_json));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << e.what() << "\n";
        return kExitInvalid;
    } catch (const AdmissibilityViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return exit_code;
}
