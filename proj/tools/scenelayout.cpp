// scenelayout command-line tool.
//
// Machine-readable JSON goes to stdout unless --pretty asks for a short
// human summary. Exit status: 0 success, 1 input/parse/evaluation errors,
// 2 provider errors.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "scenelayout/bench/faults.hpp"
#include "scenelayout/config.hpp"
#include "scenelayout/corrector.hpp"
#include "scenelayout/declarative/parser.hpp"
#include "scenelayout/declarative/solver.hpp"
#include "scenelayout/eval/compare.hpp"
#include "scenelayout/eval/error_report.hpp"
#include "scenelayout/eval/render.hpp"
#include "scenelayout/io.hpp"
#include "scenelayout/lang/evaluator.hpp"
#include "scenelayout/lang/parser.hpp"
#include "scenelayout/lang/printer.hpp"
#include "scenelayout/loss.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace scenelayout;

namespace {

struct ProviderFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    bool pretty = false;

    std::string template_path, program_path, layout_path, relations_path, output_path, trace_path;
    std::optional<double> epsilon;
    std::optional<int> max_steps;
    std::optional<unsigned> threads;
    std::optional<double> tau;
    std::optional<std::uint64_t> seed;
    std::optional<int> restarts;
    std::optional<int> iterations;
    double scale = 50.0;
    bool highlight = false;

    std::string batch_path, provider = "mock", mode = "with_pros_cons", endpoint, model, api_key_env = "SCENELAYOUT_API_KEY";
    unsigned max_in_flight = 4;

    std::string corpus_dir;
    std::size_t generate = 0;
    std::uint64_t corpus_seed = 1;
};

EngineConfig engine_config(const Options& o) {
    EngineConfig cfg = o.config_path.empty() ? EngineConfig{} : load_config(o.config_path);
    if (o.epsilon) cfg.corrector.epsilon = *o.epsilon;
    if (o.max_steps) cfg.corrector.max_steps = *o.max_steps;
    if (o.threads) cfg.corrector.threads = cfg.solver.threads = *o.threads;
    if (o.tau) cfg.tau = *o.tau;
    if (o.seed) cfg.solver.seed = *o.seed;
    if (o.restarts) cfg.solver.restarts = *o.restarts;
    if (o.iterations) cfg.solver.iterations = *o.iterations;
    cfg.corrector.validate();
    cfg.solver.validate();
    return cfg;
}

void emit(const Options& o, const json& j, const std::string& human) {
    if (o.pretty) {
        std::cout << human;
    } else {
        std::cout << j.dump() << "\n";
    }
}

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_text_file(path, text);
    }
}

std::string fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

int cmd_eval(const Options& o) {
    const SceneTemplate scene = load_template(o.template_path);
    const Layout layout = lang::evaluate(lang::parse(read_text_file(o.program_path)), scene);
    const std::string text = to_json(layout).dump(2) + "\n";
    if (o.output_path.empty()) {
        std::cout << text;
    } else {
        write_text_file(o.output_path, text);
        if (o.pretty) std::cout << "wrote " << layout.placements.size() << " placements to " << o.output_path << "\n";
    }
    return 0;
}

int cmd_loss(const Options& o) {
    const EngineConfig cfg = engine_config(o);
    const LossReport r = total_loss(load_layout(o.layout_path), cfg.corrector.loss);
    emit(o, to_json(r),
         "oob " + fixed(r.oob) + "\noverlap " + fixed(r.overlap) + "\nstanding " + fixed(r.standing) + "\nmounted " +
             fixed(r.mounted) + "\ntotal " + fixed(r.total) + "\n");
    return 0;
}

int cmd_correct(const Options& o) {
    const EngineConfig cfg = engine_config(o);
    const SceneTemplate scene = load_template(o.template_path);
    const CorrectionTrace trace = correct(lang::parse(read_text_file(o.program_path)), scene, cfg.corrector);
    if (!o.trace_path.empty()) write_text_file(o.trace_path, trace_to_json(trace).dump(2) + "\n");
    const std::string fixed_source = lang::pretty_print(trace.final_program);
    if (!o.output_path.empty()) write_text_file(o.output_path, fixed_source);

    json summary{{"initial_loss", to_json(trace.initial_loss)},
                 {"final_loss", to_json(trace.final_loss)},
                 {"steps", trace.steps.size()}};
    if (o.output_path.empty() && !o.pretty) summary["program"] = fixed_source;
    std::string human = "loss " + fixed(trace.initial_loss.total) + " -> " + fixed(trace.final_loss.total) + " in " +
                        std::to_string(trace.steps.size()) + " steps\n";
    for (const auto& s : trace.steps) {
        human += "  param " + std::to_string(s.edit.param) + " " + lang::action_label(s.edit) + ": " +
                 fixed(s.loss_before) + " -> " + fixed(s.loss_after) + "\n";
    }
    if (o.output_path.empty() && o.pretty) human += "\n" + fixed_source;
    emit(o, summary, human);
    return 0;
}

int cmd_solve(const Options& o) {
    const EngineConfig cfg = engine_config(o);
    const SceneTemplate scene = load_template(o.template_path);
    const decl::ConstraintSet cs = decl::parse_relations(read_text_file(o.relations_path), scene);
    const decl::SolveResult result = decl::solve_detailed(cs, cfg.solver);
    const std::string text = to_json(result.layout).dump(2) + "\n";

    json sat = json::array();
    std::string human = "objective " + fixed(result.objective) + " (relations " + fixed(result.relation_loss) +
                        ", hard " + fixed(result.hard_loss) + ")\n";
    for (std::size_t i = 0; i < cs.relations.size(); ++i) {
        const bool ok = result.satisfied[i];
        sat.push_back({{"line", cs.relations[i].line}, {"relation", decl::to_string(cs.relations[i].kind)}, {"satisfied", ok}});
        human += "  line " + std::to_string(cs.relations[i].line) + " " + std::string(decl::to_string(cs.relations[i].kind)) +
                 (ok ? " ok\n" : " violated\n");
    }
    if (o.output_path.empty()) {
        std::cout << text;
        return 0;
    }
    write_text_file(o.output_path, text);
    emit(o,
         {{"objective", result.objective},
          {"relation_loss", result.relation_loss},
          {"hard_loss", result.hard_loss},
          {"restart", result.best_restart},
          {"relations", sat}},
         human);
    return 0;
}

int cmd_render(const Options& o) {
    const EngineConfig cfg = engine_config(o);
    eval::RenderOptions ro;
    ro.scale = o.scale;
    ro.highlight_violations = o.highlight;
    ro.errors.tau = cfg.tau;
    ro.errors.loss = cfg.corrector.loss;
    write_or_print(o.output_path, eval::render_topdown(load_layout(o.layout_path), ro));
    return 0;
}

int cmd_report(const Options& o) {
    const EngineConfig cfg = engine_config(o);
    eval::ErrorReportOptions eo;
    eo.tau = cfg.tau;
    eo.loss = cfg.corrector.loss;
    const eval::ErrorReport r = eval::error_report(load_layout(o.layout_path), eo);
    emit(o, eval::to_json(r),
         "all " + std::to_string(r.all_count) + "\nbound " + std::to_string(r.bound_count) + "\novl " +
             std::to_string(r.overlap_count) + "\nstanding " + std::to_string(r.standing_count) + "\nmounted " +
             std::to_string(r.mounted_count) + "\n");
    return 0;
}

int cmd_compare(const Options& o) {
    const EngineConfig cfg = engine_config(o);
    const auto mode = eval::parse_compare_mode(o.mode);
    if (!mode) throw std::invalid_argument("unknown --mode '" + o.mode + "'");
    const auto items =
        eval::parse_batch(read_text_file(o.batch_path), fs::path(o.batch_path).parent_path());

    std::unique_ptr<eval::Provider> provider;
    eval::BatchOptions bo;
    bo.mode = *mode;
    bo.max_in_flight = std::max(1U, o.max_in_flight);
    bo.render.errors.tau = cfg.tau;
    bo.render.errors.loss = cfg.corrector.loss;
    bo.render.highlight_violations = o.highlight;
    if (o.provider == "mock") {
        provider = eval::MockProvider::fewest_violations();
        bo.render.highlight_violations = true;
    } else if (o.provider == "remote") {
        if (o.endpoint.empty()) throw std::invalid_argument("--provider remote requires --endpoint");
        try {
            provider = std::make_unique<eval::RemoteProvider>(eval::RemoteConfig{o.endpoint, o.model, o.api_key_env});
        } catch (const eval::ProviderError& e) {
            throw ProviderFailure(e.what());
        }
    } else {
        throw std::invalid_argument("unknown --provider '" + o.provider + "'");
    }

    const auto results = eval::run_batch(items, *provider, bo);
    json out = json::array();
    std::string human;
    int status = 0;
    for (const auto& r : results) {
        json j{{"index", r.index}};
        switch (r.status) {
            case eval::BatchStatus::Ok:
                j["winner"] = eval::to_string(r.verdict->winner);
                j["swapped"] = r.verdict->swapped;
                human += std::to_string(r.index) + ": " + std::string(eval::to_string(r.verdict->winner)) + "\n";
                break;
            case eval::BatchStatus::InputError:
                j["error"] = r.error;
                status = std::max(status, 1);
                break;
            case eval::BatchStatus::ProviderFailure:
            case eval::BatchStatus::Unparseable:
                j["error"] = r.error;
                status = 2;
                break;
        }
        if (j.contains("error")) {
            std::cerr << "item " << r.index << ": " << r.error << "\n";
            human += std::to_string(r.index) + ": error\n";
        }
        out.push_back(std::move(j));
    }
    emit(o, out, human);
    return status;
}

int cmd_bench(const Options& o) {
    EngineConfig cfg = engine_config(o);
    if (!o.max_steps) cfg.corrector.max_steps = 50;
    if (o.generate > 0) bench::write_corpus(o.corpus_dir, bench::generate_corpus(o.generate, o.corpus_seed, cfg.corrector.epsilon));
    const auto cases = bench::load_corpus(o.corpus_dir);
    if (cases.empty()) throw std::invalid_argument("no name.scn + name.json pairs in " + o.corpus_dir);
    const bench::BenchSummary s = bench::run_bench(cases, cfg.corrector);
    const double n = static_cast<double>(s.outcomes.size());
    char line[256];
    std::snprintf(line, sizeof line,
                  "cases %zu\nconverged %zu (%.1f%%)\nstrictly decreasing %zu\nstructure preserved %zu\nfailed %zu\n"
                  "mean steps %.2f\ntime %.2f s\n",
                  s.outcomes.size(), s.converged, 100.0 * static_cast<double>(s.converged) / n, s.strictly_decreasing,
                  s.structure_preserved, s.failed, s.mean_steps, s.total_seconds);
    emit(o, bench::to_json(s), line);
    return s.failed > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scenelayout: scene layout programs, loss, correction and evaluation"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--config", o.config_path, "engine config file (key = value)")->check(CLI::ExistingFile);
    app.add_flag("--pretty", o.pretty, "human-readable summary instead of JSON");

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a program against a template");
    eval_cmd->add_option("-t,--template", o.template_path)->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("-p,--program", o.program_path)->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("-o,--output", o.output_path, "layout JSON (stdout when omitted)");

    auto* loss_cmd = app.add_subcommand("loss", "loss components of a layout");
    loss_cmd->add_option("-l,--layout", o.layout_path)->required()->check(CLI::ExistingFile);

    auto* correct_cmd = app.add_subcommand("correct", "repair a program by coordinate descent");
    correct_cmd->add_option("-t,--template", o.template_path)->required()->check(CLI::ExistingFile);
    correct_cmd->add_option("-p,--program", o.program_path)->required()->check(CLI::ExistingFile);
    correct_cmd->add_option("--epsilon", o.epsilon);
    correct_cmd->add_option("--max-steps", o.max_steps);
    correct_cmd->add_option("--threads", o.threads);
    correct_cmd->add_option("--trace", o.trace_path, "trace JSON output");
    correct_cmd->add_option("-o,--output", o.output_path, "corrected program");

    auto* solve_cmd = app.add_subcommand("solve", "solve a declarative relation file");
    solve_cmd->add_option("-t,--template", o.template_path)->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("-r,--relations", o.relations_path)->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("-o,--output", o.output_path, "layout JSON (stdout when omitted)");
    solve_cmd->add_option("--seed", o.seed);
    solve_cmd->add_option("--restarts", o.restarts);
    solve_cmd->add_option("--iterations", o.iterations);
    solve_cmd->add_option("--threads", o.threads);

    auto* render_cmd = app.add_subcommand("render", "top-down SVG of a layout");
    render_cmd->add_option("-l,--layout", o.layout_path)->required()->check(CLI::ExistingFile);
    render_cmd->add_option("-o,--output", o.output_path, "SVG file (stdout when omitted)");
    render_cmd->add_option("--scale", o.scale, "pixels per meter")->check(CLI::PositiveNumber);
    render_cmd->add_flag("--highlight", o.highlight, "outline objects with violations");
    render_cmd->add_option("--tau", o.tau);

    auto* report_cmd = app.add_subcommand("report", "thresholded error counts");
    report_cmd->add_option("-l,--layout", o.layout_path)->required()->check(CLI::ExistingFile);
    report_cmd->add_option("--tau", o.tau);

    auto* compare_cmd = app.add_subcommand("compare", "pairwise layout comparison");
    compare_cmd->add_option("--batch", o.batch_path, "JSON lines of {prompt, layout_a_path, layout_b_path, seed}")
        ->required()
        ->check(CLI::ExistingFile);
    compare_cmd->add_option("--provider", o.provider)->check(CLI::IsMember({"mock", "remote"}));
    compare_cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"with_pros_cons", "direct"}));
    compare_cmd->add_option("--endpoint", o.endpoint, "remote provider URL (http://host:port/path)");
    compare_cmd->add_option("--model", o.model);
    compare_cmd->add_option("--api-key-env", o.api_key_env);
    compare_cmd->add_option("--max-in-flight", o.max_in_flight);
    compare_cmd->add_flag("--highlight", o.highlight, "outline violations in the images (always on for mock)");
    compare_cmd->add_option("--tau", o.tau);

    auto* bench_cmd = app.add_subcommand("bench", "fault-injection convergence suite");
    bench_cmd->add_option("--corpus", o.corpus_dir, "directory of name.scn + name.json pairs")->required();
    bench_cmd->add_option("--generate", o.generate, "write N generated cases into the corpus first");
    bench_cmd->add_option("--seed", o.corpus_seed, "generator seed");
    bench_cmd->add_option("--epsilon", o.epsilon);
    bench_cmd->add_option("--max-steps", o.max_steps, "default 50");
    bench_cmd->add_option("--threads", o.threads);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (*eval_cmd) return cmd_eval(o);
        if (*loss_cmd) return cmd_loss(o);
        if (*correct_cmd) return cmd_correct(o);
        if (*solve_cmd) return cmd_solve(o);
        if (*render_cmd) return cmd_render(o);
        if (*report_cmd) return cmd_report(o);
        if (*compare_cmd) return cmd_compare(o);
        if (*bench_cmd) return cmd_bench(o);
    } catch (const ProviderFailure& e) {
        std::cerr << "provider error: " << e.what() << "\n";
        return 2;
    } catch (const eval::ProviderError& e) {
        std::cerr << "provider error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help();
    return 1;
}
