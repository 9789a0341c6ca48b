#include <fetgv/experiments.hpp>
#include <fetgv/functionals.hpp>
#include <fetgv/grid.hpp>
#include <fetgv/image_io.hpp>
#include <fetgv/mesh_io.hpp>
#include <fetgv/pixel_mesh.hpp>
#include <fetgv/quality.hpp>
#include <fetgv/solver.hpp>
#include <fetgv/tuning.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace fetgv;
using json = nlohmann::ordered_json;

namespace {

/// Raised for invalid command-line combinations that CLI11 cannot express.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string hex64(std::uint64_t x)
{
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

/// FNV-1a, used to tag reports with a short configuration hash.
std::uint64_t fnv1a(const std::string& text)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

bool has_extension(const std::string& path, const char* ext)
{
    const std::string e(ext);
    return path.size() >= e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0;
}

bool is_image_path(const std::string& path)
{
    return has_extension(path, ".pgm") || has_extension(path, ".ppm") || has_extension(path, ".pnm");
}

/// Mesh signal from a PLY file or a PGM/PPM image (pixel-split on the fly).
MeshSignal load_signal(const std::string& path)
{
    if (is_image_path(path)) return image_to_signal(read_pnm(path).channels);
    return read_mesh_signal(path);
}

void save_signal(const std::string& path, const MeshSignal& signal, bool ascii = false, int maxval = 255)
{
    if (is_image_path(path)) {
        PnmImage img;
        img.maxval = maxval;
        img.channels = signal_to_image(signal);
        write_pnm(path, img, ascii);
    } else {
        write_mesh_signal(path, signal);
    }
}

void require_values(const MeshSignal& s, const std::string& what)
{
    if (s.payload != Payload::scalar && s.payload != Payload::rgb) {
        throw UsageError(what + " carries no scalar or RGB payload");
    }
}

std::vector<bool> load_mask(const std::string& path, std::size_t triangles)
{
    std::vector<bool> mask;
    if (is_image_path(path)) {
        const PnmImage img = read_pnm(path);
        std::vector<bool> pixels;
        for (Eigen::Index p = 0; p < img.channels[0].pixels(); ++p) pixels.push_back(img.channels[0].values[p] > 0.0);
        mask = pixel_mask_to_triangles(pixels);
    } else {
        mask = read_mesh_signal(path).mask();
    }
    if (mask.size() != triangles) throw UsageError("mask does not match the input mesh");
    return mask;
}

std::vector<double> parse_list(const std::string& text, std::size_t count, const std::string& flag)
{
    std::vector<double> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(flag + ": cannot parse '" + item + "'");
        }
    }
    if (out.size() != count) throw UsageError(flag + " expects " + std::to_string(count) + " comma-separated values");
    return out;
}

json history(const std::vector<double>& v)
{
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

json report_json(const SolveReport& r)
{
    json j;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["primal_residual"] = r.primal_residual;
    j["dual_residual"] = r.dual_residual;
    j["objective"] = r.objective;
    j["seconds"] = r.seconds;
    j["primal_history"] = history(r.primal_history);
    j["dual_history"] = history(r.dual_history);
    j["objective_history"] = history(r.objective_history);
    return j;
}

void write_json(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return json::parse(in);
}

// ---------------------------------------------------------------------------
// Shared solver options

struct SolveOptions
{
    std::string regularizer = "fetgv";
    double alpha1 = 0.0;
    std::optional<double> alpha0;
    std::optional<double> lambda0, lambda1, lambda2;
    double tol = 1e-4;
    int max_iter = 2000;
};

void add_solve_options(CLI::App* cmd, SolveOptions& o, bool penalties)
{
    cmd->add_option("--regularizer", o.regularizer, "tv | fetgv | lapfetgv | gridtgv")
        ->required()
        ->check(CLI::IsMember({"tv", "fetgv", "lapfetgv", "gridtgv"}));
    cmd->add_option("--alpha1", o.alpha1, "weight of the first-order term")->required()->check(CLI::NonNegativeNumber);
    cmd->add_option("--alpha0", o.alpha0, "weight of the second-order term")->check(CLI::NonNegativeNumber);
    if (penalties) {
        cmd->add_option("--lambda0", o.lambda0, "penalty of the first block")->check(CLI::PositiveNumber);
        cmd->add_option("--lambda1", o.lambda1, "penalty of the second block")->check(CLI::PositiveNumber);
        cmd->add_option("--lambda2", o.lambda2, "penalty of the third block")->check(CLI::PositiveNumber);
    }
    cmd->add_option("--tol", o.tol, "residual tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", o.max_iter, "iteration limit")->check(CLI::PositiveNumber);
}

TgvParams tgv_params(const SolveOptions& o)
{
    if (o.regularizer != "tv" && !o.alpha0) throw UsageError("--alpha0 is required for " + o.regularizer);
    return {o.alpha0.value_or(0.0), o.alpha1};
}

PenaltyParams penalties_for(const SolveOptions& o, bool surface)
{
    const double fallback = surface ? 1.0 : 10.0;
    return {o.lambda0.value_or(fallback), o.lambda1.value_or(fallback), o.lambda2.value_or(fallback)};
}

std::string config_string(const std::string& command, const SolveOptions& o, const PenaltyParams& pp)
{
    return command + ";regularizer=" + o.regularizer + ";alpha1=" + fmt(o.alpha1) +
           ";alpha0=" + fmt(o.alpha0.value_or(0.0)) + ";lambda=" + fmt(pp.lambda0) + "," + fmt(pp.lambda1) + "," +
           fmt(pp.lambda2) + ";tol=" + fmt(o.tol) + ";max_iter=" + std::to_string(o.max_iter);
}

struct ChannelSolve
{
    Eigen::VectorXd u;
    SolveReport report;
};

/// Denoise (or inpaint) every channel of `input` with shared parameters.
std::vector<ChannelSolve> solve_channels(const MeshSignal& input, const SolveOptions& o, const TgvParams& p,
                                         const PenaltyParams& pp, const std::vector<bool>* mask)
{
    const TriMesh mesh = input.build();
    const StopCriteria stop{o.tol, o.tol, o.max_iter};
    std::vector<ChannelSolve> out;
    if (o.regularizer == "gridtgv") {
        if (!input.pixel_grid) throw UsageError("gridtgv needs a pixel-split mesh or an image input");
        const auto [width, height] = *input.pixel_grid;
        std::optional<std::vector<bool>> pixel_mask;
        if (mask) {
            pixel_mask.emplace();
            for (std::size_t k = 0; k < mask->size(); k += 2) {
                if ((*mask)[k] != (*mask)[k + 1]) throw UsageError("gridtgv masks must cover whole pixels");
                pixel_mask->push_back((*mask)[k]);
            }
        }
        for (std::size_t c = 0; c < input.channel_count(); ++c) {
            const GridImage f = mesh_to_image(mesh, input.channel(c), width, height);
            GridDenoiseResult r = solve_grid_denoise(f, p, pp, stop, pixel_mask ? &*pixel_mask : nullptr);
            Eigen::VectorXd u(2 * r.u.pixels());
            for (Eigen::Index k = 0; k < r.u.pixels(); ++k) u[2 * k] = u[2 * k + 1] = r.u.values[k];
            out.push_back({u, std::move(r.report)});
        }
        return out;
    }
    const Regularizer kind = parse_regularizer(o.regularizer);
    const FeSpace space(mesh);
    for (std::size_t c = 0; c < input.channel_count(); ++c) {
        DenoiseResult r = solve_denoise(space, input.channel(c), p, pp, kind, stop, mask);
        out.push_back({r.u.values, std::move(r.report)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Commands

struct DenoiseArgs
{
    std::string in, out, report, mask;
    SolveOptions solve;
};

int run_denoise(const DenoiseArgs& a, const std::string& command)
{
    const auto start = std::chrono::steady_clock::now();
    const MeshSignal input = load_signal(a.in);
    require_values(input, a.in);
    const TgvParams p = tgv_params(a.solve);
    const PenaltyParams pp = penalties_for(a.solve, input.dimension == 3);
    std::optional<std::vector<bool>> mask;
    if (!a.mask.empty()) mask = load_mask(a.mask, input.triangles.size());

    const auto results = solve_channels(input, a.solve, p, pp, mask ? &*mask : nullptr);
    std::vector<Eigen::VectorXd> channels;
    bool converged = true;
    for (const auto& r : results) {
        channels.push_back(r.u);
        converged = converged && r.report.converged;
    }
    save_signal(a.out, input.with_channels(input.payload, channels));
    if (!converged) {
        std::cerr << "fetgv: warning: no convergence within " << a.solve.max_iter
                  << " iterations; wrote the iterate of lowest objective\n";
    }

    if (!a.report.empty()) {
        const std::string config = config_string(command, a.solve, pp);
        json j;
        j["command"] = command;
        j["input"] = a.in;
        j["regularizer"] = a.solve.regularizer;
        j["alpha1"] = p.alpha1;
        j["alpha0"] = p.alpha0;
        j["lambda"] = {pp.lambda0, pp.lambda1, pp.lambda2};
        j["tol"] = a.solve.tol;
        j["max_iter"] = a.solve.max_iter;
        j["config"] = config;
        j["fingerprint"] = hex64(fnv1a(config));
        j["converged"] = converged;
        json ch = json::array();
        for (const auto& r : results) ch.push_back(report_json(r.report));
        j["channels"] = ch;
        j["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_json(a.report, j);
    }
    return 0;
}

struct EvalArgs
{
    std::string in;
    SolveOptions solve;
    double lambda = 1.0;
};

int run_eval(const EvalArgs& a)
{
    const MeshSignal input = load_signal(a.in);
    require_values(input, a.in);
    const TgvParams p = tgv_params(a.solve);
    const TriMesh mesh = input.build();
    const FeSpace space(mesh);
    const ValueSettings settings{a.lambda, a.solve.max_iter};
    std::string line;
    for (std::size_t c = 0; c < input.channel_count(); ++c) {
        double value = 0.0;
        try {
            if (a.solve.regularizer == "gridtgv") {
                if (!input.pixel_grid) throw UsageError("gridtgv needs a pixel-split mesh or an image input");
                const auto [width, height] = *input.pixel_grid;
                value = grid_tgv_value(mesh_to_image(mesh, input.channel(c), width, height), p, a.solve.tol,
                                       a.lambda, a.solve.max_iter);
            } else {
                value = regularizer_value(space, parse_regularizer(a.solve.regularizer), input.channel(c), p,
                                          a.solve.tol, settings);
            }
        } catch (const NoConvergence& e) {
            std::cerr << "fetgv: error: " << e.what() << " (best value " << fmt(e.best_value()) << ")\n";
            return 2;
        }
        line += (c ? " " : "") + fmt(value);
    }
    std::cout << line << "\n";
    return 0;
}

struct MssimArgs
{
    std::string a, b;
    std::optional<int> radius, window;
    double c1 = 0.01;
    double c2 = 0.03;
    bool show_config = false;
};

SsimConfig ssim_config(std::optional<int> radius, std::optional<int> window, double c1, double c2)
{
    SsimConfig cfg;
    cfg.c1 = c1;
    cfg.c2 = c2;
    if (radius) cfg.radius = *radius;
    if (window) cfg.window = *window;
    cfg.validate();
    return cfg;
}

/// Channel-mean MSSIM of two signals on the same mesh, in mesh or grid mode.
double signal_mssim(const MeshSignal& a, const MeshSignal& b, const SsimConfig& cfg, bool grid_mode)
{
    if (a.channel_count() != b.channel_count()) throw UsageError("inputs differ in channel count");
    if (a.triangles != b.triangles) throw MeshMismatch("inputs live on different meshes");
    double sum = 0.0;
    if (grid_mode) {
        const auto ia = signal_to_image(a);
        const auto ib = signal_to_image(b);
        for (std::size_t c = 0; c < ia.size(); ++c) sum += mssim(ia[c], ib[c], cfg);
    } else {
        const TriMesh mesh = a.build();
        for (std::size_t c = 0; c < a.channel_count(); ++c) sum += mssim(mesh, a.channel(c), b.channel(c), cfg);
    }
    return sum / static_cast<double>(a.channel_count());
}

int run_mssim(const MssimArgs& m)
{
    const MeshSignal a = load_signal(m.a);
    const MeshSignal b = load_signal(m.b);
    require_values(a, m.a);
    require_values(b, m.b);
    const SsimConfig cfg = ssim_config(m.radius, m.window, m.c1, m.c2);
    const bool grid_mode = m.window.has_value();
    std::cout << fmt(signal_mssim(a, b, cfg, grid_mode)) << "\n";
    if (m.show_config) std::cout << (grid_mode ? cfg.grid_fingerprint() : cfg.mesh_fingerprint()) << "\n";
    return 0;
}

struct NoiseArgs
{
    std::string in, out;
    double sigma = 0.1;
    std::uint64_t seed = 0;
};

int run_noise(const NoiseArgs& a)
{
    const MeshSignal input = load_signal(a.in);
    require_values(input, a.in);
    std::vector<Eigen::VectorXd> channels;
    for (std::size_t c = 0; c < input.channel_count(); ++c) {
        channels.push_back(add_gaussian_noise(input.channels[c], a.sigma, a.seed + c));
    }
    save_signal(a.out, input.with_channels(input.payload, channels));
    return 0;
}

struct ConvertArgs
{
    std::string image, mesh, out;
    bool ascii = false;
    int maxval = 255;
};

int run_convert(const ConvertArgs& a)
{
    if (a.image.empty() == a.mesh.empty()) throw UsageError("give exactly one of --image and --mesh");
    if (!a.image.empty()) {
        write_mesh_signal(a.out, image_to_signal(read_pnm(a.image).channels));
        return 0;
    }
    if (!is_image_path(a.out)) throw UsageError("--out must name a .pgm or .ppm file when converting a mesh");
    const MeshSignal s = read_mesh_signal(a.mesh);
    require_values(s, a.mesh);
    save_signal(a.out, s, a.ascii, a.maxval);
    return 0;
}

struct KernelArgs
{
    std::string mesh, abc, out;
};

int run_kernel(const KernelArgs& a)
{
    const std::vector<double> abc = parse_list(a.abc, 3, "--abc");
    const MeshSignal input = load_signal(a.mesh);
    const TriMesh mesh = input.build();
    const FeSpace space(mesh);
    const auto [u, w] = make_kernel_element(space, abc[0], abc[1], abc[2]);
    save_signal(a.out, input.with_channels(Payload::scalar, {u.values}));
    return 0;
}

struct TuneArgs
{
    std::string noisy, truth, out, baseline, result;
    SolveOptions solve;
    int budget = 20;
    std::string alpha1_range = "-3,0";
    std::string alpha0_range = "-3,1";
    std::optional<int> radius, window;
    double c1 = 0.01;
    double c2 = 0.03;
};

int run_tune(TuneArgs a)
{
    const MeshSignal noisy = load_signal(a.noisy);
    const MeshSignal truth = load_signal(a.truth);
    require_values(noisy, a.noisy);
    require_values(truth, a.truth);
    if (noisy.triangles != truth.triangles) throw MeshMismatch("noisy and truth inputs live on different meshes");
    const SsimConfig cfg = ssim_config(a.radius, a.window, a.c1, a.c2);
    const bool grid_mode = a.window.has_value();
    const std::string fingerprint = grid_mode ? cfg.grid_fingerprint() : cfg.mesh_fingerprint();

    std::optional<json> baseline;
    if (!a.baseline.empty()) {
        baseline = read_json(a.baseline);
        if (baseline->value("fingerprint", std::string()) != fingerprint) {
            throw UsageError("refusing to compare MSSIM scores computed with different windows (baseline '" +
                             baseline->value("fingerprint", std::string("?")) + "', this run '" + fingerprint + "')");
        }
    }

    TuneSpec spec;
    const auto r1 = parse_list(a.alpha1_range, 2, "--alpha1-range");
    const auto r0 = parse_list(a.alpha0_range, 2, "--alpha0-range");
    spec.alpha1 = {r1[0], r1[1]};
    spec.alpha0 = {r0[0], r0[1]};
    spec.budget = a.budget;
    spec.search_alpha0 = a.solve.regularizer != "tv";
    const PenaltyParams pp = penalties_for(a.solve, noisy.dimension == 3);

    const auto score = [&](double alpha1, double alpha0) {
        SolveOptions o = a.solve;
        o.alpha1 = alpha1;
        o.alpha0 = alpha0;
        const auto results = solve_channels(noisy, o, {alpha0, alpha1}, pp, nullptr);
        std::vector<Eigen::VectorXd> channels;
        for (const auto& r : results) channels.push_back(r.u);
        return signal_mssim(noisy.with_channels(noisy.payload, channels), truth, cfg, grid_mode);
    };
    const TuneResult best = tune_parameters(score, spec);

    json j;
    j["regularizer"] = a.solve.regularizer;
    j["alpha1"] = best.alpha1;
    j["alpha0"] = spec.search_alpha0 ? json(best.alpha0) : json(nullptr);
    j["best_mssim"] = best.best_score;
    j["fingerprint"] = fingerprint;
    j["budget"] = spec.budget;
    if (baseline) {
        j["baseline_mssim"] = (*baseline)["best_mssim"];
        j["delta_mssim"] = best.best_score - (*baseline)["best_mssim"].get<double>();
    }
    json trace = json::array();
    for (const TuneEval& e : best.trace) {
        json t;
        t["alpha1"] = e.alpha1;
        t["alpha0"] = e.alpha0;
        t["mssim"] = e.ok ? json(e.score) : json(nullptr);
        if (!e.ok) t["error"] = e.error;
        trace.push_back(t);
    }
    j["trace"] = trace;
    write_json(a.out, j);

    if (!a.result.empty()) {
        SolveOptions o = a.solve;
        const auto results = solve_channels(noisy, o, {best.alpha0, best.alpha1}, pp, nullptr);
        std::vector<Eigen::VectorXd> channels;
        for (const auto& r : results) channels.push_back(r.u);
        save_signal(a.result, noisy.with_channels(noisy.payload, channels));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Total generalized variation regularization on triangle meshes"};
    app.require_subcommand(1);

    DenoiseArgs denoise;
    auto* cmd_denoise = app.add_subcommand("denoise", "L2 denoising of a mesh signal or image");
    cmd_denoise->add_option("--in", denoise.in, "input mesh signal or PGM/PPM image")->required();
    cmd_denoise->add_option("--out", denoise.out, "output file (.ply or .pgm/.ppm)")->required();
    cmd_denoise->add_option("--report", denoise.report, "JSON solver report");
    add_solve_options(cmd_denoise, denoise.solve, true);

    DenoiseArgs inpaint;
    auto* cmd_inpaint = app.add_subcommand("inpaint", "joint inpainting and denoising");
    cmd_inpaint->add_option("--in", inpaint.in, "input mesh signal or PGM/PPM image")->required();
    cmd_inpaint->add_option("--mask", inpaint.mask, "observed triangles (mask payload) or pixels (nonzero)")->required();
    cmd_inpaint->add_option("--out", inpaint.out, "output file")->required();
    cmd_inpaint->add_option("--report", inpaint.report, "JSON solver report");
    add_solve_options(cmd_inpaint, inpaint.solve, true);

    EvalArgs eval;
    eval.solve.tol = 1e-6;
    eval.solve.max_iter = 5000;
    auto* cmd_eval = app.add_subcommand("eval", "print the regularizer value of a signal");
    cmd_eval->add_option("--in", eval.in, "input mesh signal or image")->required();
    add_solve_options(cmd_eval, eval.solve, false);
    cmd_eval->add_option("--lambda", eval.lambda, "penalty of the inner minimization")->check(CLI::PositiveNumber);

    MssimArgs ms;
    auto* cmd_mssim = app.add_subcommand("mssim", "mean structural similarity of two signals");
    cmd_mssim->add_option("--a", ms.a, "first signal")->required();
    cmd_mssim->add_option("--b", ms.b, "second signal")->required();
    auto* opt_radius = cmd_mssim->add_option("--radius", ms.radius, "dual-graph hop radius")->check(CLI::NonNegativeNumber);
    auto* opt_window = cmd_mssim->add_option("--window", ms.window, "square pixel window (grid mode)");
    opt_radius->excludes(opt_window);
    cmd_mssim->add_option("--c1", ms.c1, "luminance constant")->check(CLI::PositiveNumber);
    cmd_mssim->add_option("--c2", ms.c2, "contrast constant")->check(CLI::PositiveNumber);
    cmd_mssim->add_flag("--show-config", ms.show_config, "also print the window fingerprint");

    NoiseArgs noise;
    auto* cmd_noise = app.add_subcommand("noise", "add Gaussian noise");
    cmd_noise->add_option("--in", noise.in, "input")->required();
    cmd_noise->add_option("--sigma", noise.sigma, "standard deviation")->required()->check(CLI::NonNegativeNumber);
    cmd_noise->add_option("--seed", noise.seed, "random seed (channel k uses seed + k)")->required();
    cmd_noise->add_option("--out", noise.out, "output")->required();

    ConvertArgs conv;
    auto* cmd_convert = app.add_subcommand("convert", "convert between PGM/PPM images and pixel-split meshes");
    auto* opt_image = cmd_convert->add_option("--image", conv.image, "PGM/PPM input");
    auto* opt_mesh = cmd_convert->add_option("--mesh", conv.mesh, "pixel-split mesh input");
    opt_image->excludes(opt_mesh);
    cmd_convert->add_option("--out", conv.out, "output")->required();
    cmd_convert->add_flag("--ascii", conv.ascii, "write P2/P3 instead of P5/P6");
    cmd_convert->add_option("--maxval", conv.maxval, "output sample range")->check(CLI::Range(1, 65535));

    KernelArgs kernel;
    auto* cmd_kernel = app.add_subcommand("kernel", "circumcenter interpolant of a + b x + c y");
    cmd_kernel->add_option("--mesh", kernel.mesh, "mesh file")->required();
    cmd_kernel->add_option("--abc", kernel.abc, "coefficients a,b,c")->required();
    cmd_kernel->add_option("--out", kernel.out, "output mesh signal")->required();

    TuneArgs tune;
    tune.solve.alpha1 = 1.0;
    auto* cmd_tune = app.add_subcommand("tune", "search alpha1 / alpha0 maximizing MSSIM against a reference");
    cmd_tune->add_option("--noisy", tune.noisy, "noisy input")->required();
    cmd_tune->add_option("--truth", tune.truth, "reference signal")->required();
    cmd_tune->add_option("--regularizer", tune.solve.regularizer, "tv | fetgv | lapfetgv | gridtgv")
        ->required()
        ->check(CLI::IsMember({"tv", "fetgv", "lapfetgv", "gridtgv"}));
    cmd_tune->add_option("--out", tune.out, "JSON result with the evaluation trace")->required();
    cmd_tune->add_option("--result", tune.result, "also write the reconstruction at the best parameters");
    cmd_tune->add_option("--budget", tune.budget, "maximum number of solves")->check(CLI::PositiveNumber);
    cmd_tune->add_option("--alpha1-range", tune.alpha1_range, "log10 bounds lo,hi");
    cmd_tune->add_option("--alpha0-range", tune.alpha0_range, "log10 bounds lo,hi");
    auto* opt_tr = cmd_tune->add_option("--radius", tune.radius, "dual-graph hop radius")->check(CLI::NonNegativeNumber);
    auto* opt_tw = cmd_tune->add_option("--window", tune.window, "square pixel window (grid mode)");
    opt_tr->excludes(opt_tw);
    cmd_tune->add_option("--c1", tune.c1, "luminance constant")->check(CLI::PositiveNumber);
    cmd_tune->add_option("--c2", tune.c2, "contrast constant")->check(CLI::PositiveNumber);
    cmd_tune->add_option("--lambda0", tune.solve.lambda0, "penalty of the first block")->check(CLI::PositiveNumber);
    cmd_tune->add_option("--lambda1", tune.solve.lambda1, "penalty of the second block")->check(CLI::PositiveNumber);
    cmd_tune->add_option("--lambda2", tune.solve.lambda2, "penalty of the third block")->check(CLI::PositiveNumber);
    cmd_tune->add_option("--tol", tune.solve.tol, "residual tolerance of each solve")->check(CLI::PositiveNumber);
    cmd_tune->add_option("--max-iter", tune.solve.max_iter, "iteration limit of each solve")->check(CLI::PositiveNumber);
    cmd_tune->add_option("--baseline", tune.baseline, "earlier tune JSON to compare against");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*cmd_denoise) return run_denoise(denoise, "denoise");
        if (*cmd_inpaint) return run_denoise(inpaint, "inpaint");
        if (*cmd_eval) return run_eval(eval);
        if (*cmd_mssim) return run_mssim(ms);
        if (*cmd_noise) return run_noise(noise);
        if (*cmd_convert) return run_convert(conv);
        if (*cmd_kernel) return run_kernel(kernel);
        if (*cmd_tune) return run_tune(tune);
    } catch (const std::exception& e) {
        std::cerr << "fetgv: error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
