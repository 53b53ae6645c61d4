#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "regioncert/certificates.hpp"
#include "regioncert/error.hpp"
#include "regioncert/fuzz.hpp"
#include "regioncert/grid.hpp"
#include "regioncert/lemma_campaign.hpp"
#include "regioncert/network_io.hpp"
#include "regioncert/output_scan.hpp"
#include "regioncert/region_export.hpp"
#include "regioncert/report_io.hpp"
#include "regioncert/synthesis.hpp"

namespace regioncert::cli {

namespace {

double parse_real(std::string_view text, const std::string& what) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw InvalidInput(what + ": cannot parse '" + std::string(text) + "'");
    return v;
}

Vector parse_list(std::string_view text, const std::string& what) {
    Vector out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_real(text.substr(0, comma), what));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot open " + path.string() + " for writing");
    f << data;
    if (!f) throw InvalidInput("failed writing " + path.string());
}

struct GridArgs {
    std::vector<std::string> box;
    std::vector<std::size_t> res{256};
    std::string slice;
    std::vector<std::string> dirs;

    void add_to(CLI::App* sub, std::size_t default_res) {
        res = {default_res};
        sub->add_option("--box", box, "Scan window per axis as lo:hi (one value applies to every axis)")
            ->required();
        sub->add_option("--res", res, "Cells per axis (one value applies to every axis)")->capture_default_str();
        sub->add_option("--slice", slice, "Slice origin x1,x2,... for inputs of dimension > 3");
        sub->add_option("--dir", dirs, "Slice direction v1,v2,... (repeat once per scan axis)");
    }

    GridSpec build(std::size_t input_dim) const {
        GridSpec spec;
        std::size_t k = input_dim;
        if (!slice.empty() || !dirs.empty()) {
            if (slice.empty() || dirs.empty()) throw InvalidInput("--slice and --dir must be given together");
            Slice s;
            s.origin = parse_list(slice, "--slice");
            for (const auto& d : dirs) s.directions.push_back(parse_list(d, "--dir"));
            k = s.directions.size();
            spec.slice = std::move(s);
        }
        if (box.size() != 1 && box.size() != k) {
            throw InvalidInput("--box: expected 1 or " + std::to_string(k) + " intervals, got " +
                               std::to_string(box.size()));
        }
        if (res.size() != 1 && res.size() != k) {
            throw InvalidInput("--res: expected 1 or " + std::to_string(k) + " values, got " +
                               std::to_string(res.size()));
        }
        spec.box.closed = true;
        for (std::size_t a = 0; a < k; ++a) {
            const std::string& b = box.size() == 1 ? box[0] : box[a];
            // the separator is the first ':' after a leading sign
            const auto colon = b.find(':', 1);
            if (colon == std::string::npos) throw InvalidInput("--box: expected lo:hi, got '" + b + "'");
            spec.box.lower.push_back(parse_real(std::string_view(b).substr(0, colon), "--box"));
            spec.box.upper.push_back(parse_real(std::string_view(b).substr(colon + 1), "--box"));
            spec.resolution.push_back(res.size() == 1 ? res[0] : res[a]);
        }
        validate_grid(spec, input_dim);
        return spec;
    }
};

std::string format_point(std::span<const double> p) {
    std::ostringstream os;
    os << std::setprecision(10);
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
    return os.str();
}

Activation default_activation(TheoremId id) {
    switch (id) {
        case TheoremId::SurjectiveBijective: return Activation::leaky_relu(0.1);
        case TheoremId::HalfBounded: return Activation::softplus();
        case TheoremId::Bounded: return Activation::sigmoid();
        case TheoremId::ReluDeep:
        case TheoremId::ReluOneLayer: return Activation::relu();
    }
    return Activation::relu();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certify, scan, and synthesize classifiers with connected decision regions", "regioncert"};
    app.require_subcommand(1, 1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = REGIONCERT_THREADS or all cores)");

    // check
    auto* check = app.add_subcommand("check", "Run every certificate checker on a network file");
    std::string check_net, check_format = "table", check_split = "greedy", check_out;
    CertifyOptions copts;
    check->add_option("network", check_net, "Network file")->required();
    check->add_option("--tol", copts.rank_tol, "Relative rank tolerance")->capture_default_str();
    check->add_option("--slack", copts.slack, "Slack on element-wise inequalities")->capture_default_str();
    check->add_option("--split", check_split, "Column split search")
        ->check(CLI::IsMember({"greedy", "exhaustive"}))
        ->capture_default_str();
    check->add_option("--budget", copts.split.budget, "Candidate limit for --split exhaustive")
        ->capture_default_str();
    check->add_option("--include-output-layer", copts.include_output_layer,
                      "Constrain the output layer in the bounded/half-bounded checks")
        ->capture_default_str();
    check->add_flag("--basis-only-nonneg", copts.basis_only_nonneg,
                    "Require only the basis block to be non-negative");
    check->add_option("--format", check_format, "Report format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
    check->add_option("--out", check_out, "Also write the report to this file");

    // scan
    auto* scan = app.add_subcommand("scan", "Rasterize decision regions and count components");
    std::string scan_net, scan_out, scan_format, scan_summary;
    GridArgs scan_grid;
    double tie_eps = 0.0;
    bool scan_output_space = false;
    scan->add_option("network", scan_net, "Network file")->required();
    scan_grid.add_to(scan, 256);
    scan->add_option("--out", scan_out, "Region image path");
    scan->add_option("--format", scan_format, "Image format (default: from --out extension, else pgm)")
        ->check(CLI::IsMember({"pgm", "svg"}));
    scan->add_option("--summary", scan_summary, "Write the per-class JSON summary to this file");
    scan->add_option("--tie-eps", tie_eps, "Margin below which the top two outputs count as a tie");
    scan->add_flag("--output-space", scan_output_space, "Also report the output-space component estimate");

    // path
    auto* path = app.add_subcommand("path", "Find an in-region cell path between two inputs");
    std::string path_net;
    std::vector<double> from, to;
    GridArgs path_grid;
    path->add_option("network", path_net, "Network file")->required();
    path->add_option("--from", from, "Start point")->required()->delimiter(',');
    path->add_option("--to", to, "End point")->required()->delimiter(',');
    path_grid.add_to(path, 256);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a certified or counterexample network");
    std::vector<std::size_t> widths;
    std::string activation, theorem, counterexample, synth_out;
    SynthSpec sspec;
    synth->add_option("--widths", widths, "n0,n1,...,nL")->delimiter(',');
    synth->add_option("--activation", activation, "Hidden activation, e.g. relu or leaky_relu:0.2");
    synth->add_option("--theorem", theorem, "Target certificate")
        ->check(CLI::IsMember({"surjective-bijective", "half-bounded", "bounded", "relu-deep", "relu-one-layer"}));
    synth->add_option("--counterexample", counterexample, "Emit a disconnected example instead")
        ->check(CLI::IsMember({"relu-absolute", "wide-xor"}));
    synth->add_option("--seed", sspec.seed, "Generator seed")->capture_default_str();
    synth->add_option("--scale", sspec.weight_scale, "Weight scale")->capture_default_str();
    synth->add_flag("--nonzero-rest", sspec.nonzero_rest, "Populate non-basis columns");
    synth->add_option("--out", synth_out, "Network file to write (default: stdout)");

    // fuzz
    auto* fuzz = app.add_subcommand("fuzz", "Cross-check certificates against the grid oracle");
    std::size_t trials = 100;
    std::uint64_t fuzz_seed = 0;
    FuzzOptions fopts;
    std::string fuzz_out;
    fuzz->add_option("--trials", trials, "Number of sampled networks")->capture_default_str();
    fuzz->add_option("--seed", fuzz_seed, "Campaign seed")->capture_default_str();
    fuzz->add_option("--res", fopts.resolution, "Cells per axis")->capture_default_str();
    fuzz->add_option("--box-scale", fopts.box_scale, "Half-width of the scan box in weight scales")
        ->capture_default_str();
    fuzz->add_option("--out", fuzz_out, "Write the JSON report to this file");

    // lemma
    auto* lemma = app.add_subcommand("lemma", "Run a constructive-preimage property campaign");
    std::string which;
    std::size_t lemma_trials = 1000;
    std::uint64_t lemma_seed = 0;
    lemma->add_option("--which", which, "rect-halfopen | rect-bounded | relu-preimage | relu-segment")->required();
    lemma->add_option("--trials", lemma_trials, "Number of cases")->capture_default_str();
    lemma->add_option("--seed", lemma_seed, "Campaign seed")->capture_default_str();

    std::vector<const char*> argv{"regioncert"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (check->parsed()) {
            copts.split = check_split == "exhaustive" ? SplitMode::exhaustive(copts.split.budget) : SplitMode::greedy();
            const Network net = load_network(check_net);
            const auto reports = certify_all(net, copts);
            const std::string text = check_format == "json" ? reports_to_json(reports) : reports_to_table(reports);
            out << text;
            if (!check_out.empty()) write_file(check_out, text);
            return any_certified(reports) ? kExitOk : kExitNegative;
        }

        if (scan->parsed()) {
            const Network net = load_network(scan_net);
            const GridSpec spec = scan_grid.build(net.input_dim());
            const RegionMap map = grid_scan(net, spec, {tie_eps, threads});
            out << region_summary_text(map);
            if (scan_output_space) {
                for (std::size_t m = 0; m < net.class_count(); ++m) {
                    const auto r = output_space_scan(net, spec, m, {0, threads});
                    out << "class " << m << " output-space estimate: " << r.components
                        << (r.projected ? " (max over 2-D projections)" : "") << "\n";
                }
            }
            if (!scan_summary.empty()) write_file(scan_summary, region_summary_json(map));
            if (!scan_out.empty()) {
                std::string fmt = scan_format;
                if (fmt.empty()) fmt = std::filesystem::path(scan_out).extension() == ".svg" ? "svg" : "pgm";
                write_file(scan_out, fmt == "svg" ? region_svg(map) : region_pgm(map));
            }
            return kExitOk;
        }

        if (path->parsed()) {
            const Network net = load_network(path_net);
            const GridSpec spec = path_grid.build(net.input_dim());
            if (spec.slice) throw InvalidInput("path: slices are not supported; give points in input space");
            const RegionMap map = grid_scan(net, spec, {0.0, threads});
            const auto outcome = find_path(map, from, to);
            switch (outcome.status) {
                case PathStatus::Found:
                    for (const auto& w : outcome.path->waypoints) out << format_point(w) << "\n";
                    return kExitOk;
                case PathStatus::Disconnected: out << "disconnected\n"; break;
                case PathStatus::DifferentClasses: out << "different classes\n"; break;
                case PathStatus::OnBoundary: out << "endpoint on a decision boundary\n"; break;
            }
            return kExitNegative;
        }

        if (synth->parsed()) {
            Network net = [&] {
                if (!counterexample.empty()) {
                    if (!theorem.empty()) throw InvalidInput("synth: give either --theorem or --counterexample");
                    return gen_counterexample(*parse_counterexample(counterexample));
                }
                if (theorem.empty()) throw InvalidInput("synth: --theorem or --counterexample is required");
                if (widths.empty()) throw InvalidInput("synth: --widths is required with --theorem");
                sspec.target_theorem = *parse_theorem(theorem);
                sspec.widths = widths;
                sspec.activation = activation.empty() ? default_activation(sspec.target_theorem)
                                                      : Activation::parse(activation);
                return gen_certified(sspec);
            }();
            const std::string text = serialize_network(net);
            if (synth_out.empty()) {
                out << text;
            } else {
                write_file(synth_out, text);
            }
            return kExitOk;
        }

        if (fuzz->parsed()) {
            if (trials == 0) throw InvalidInput("fuzz: --trials must be at least 1");
            fopts.threads = threads;
            const FuzzReport report = fuzz_campaign(trials, fuzz_seed, fopts);
            out << fuzz_report_to_text(report);
            if (!fuzz_out.empty()) write_file(fuzz_out, fuzz_report_to_json(report));
            return report.violations.empty() ? kExitOk : kExitNegative;
        }

        if (lemma->parsed()) {
            const auto kind = parse_lemma(which);
            if (!kind) throw InvalidInput("lemma: unknown campaign '" + which + "'");
            const LemmaReport report = run_lemma_campaign(*kind, lemma_trials, lemma_seed);
            out << lemma_report_to_text(report);
            return report.pass() ? kExitOk : kExitNegative;
        }
    } catch (const Infeasible& e) {
        err << "infeasible: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace regioncert::cli
