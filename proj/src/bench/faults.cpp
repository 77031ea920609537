#include "scenelayout/bench/faults.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <random>

#include "scenelayout/io.hpp"
#include "scenelayout/lang/evaluator.hpp"
#include "scenelayout/lang/parser.hpp"
#include "scenelayout/lang/printer.hpp"

namespace scenelayout::bench {

namespace {

using lang::format_number;

double cm(double v) { return std::round(v * 100.0) / 100.0; }

class Rng {
public:
    explicit Rng(std::seed_seq& seq) : engine_(seq) {}
    double uniform(double lo, double hi) { return cm(std::uniform_real_distribution<double>(lo, hi)(engine_)); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

private:
    std::mt19937_64 engine_;
};

ObjectSpec spec(std::string name, Vec3 dims, SupportType support = SupportType::Standing) {
    ObjectSpec s;
    s.name = std::move(name);
    s.dims = dims;
    s.support = support;
    return s;
}

struct Row {
    std::string prefix;  // objects are <prefix>_1 .. <prefix>_n
    std::size_t count = 0;
    double width = 0.0;
    double pitch = 0.0;
    double x0 = 0.0;
    double y = 0.0;

    void add_objects(SceneTemplate& t) const {
        for (std::size_t i = 0; i < count; ++i) {
            t.objects.push_back(spec(prefix + "_" + std::to_string(i + 1), {width, width, 2.0}));
        }
    }

    std::string source(const std::string& var, double pitch_value, std::optional<double> start = {}) const {
        std::string s;
        s += var + " = " + format_number(pitch_value) + "\n";
        s += prefix + "s = group(\"" + prefix + "_*\")\n";
        s += "for i, c in enumerate(" + prefix + "s):\n";
        s += "    c.min.x = " + format_number(start.value_or(x0)) + " + i * " + var + "\n";
        s += "    c.min.y = " + format_number(y) + "\n";
        return s;
    }

    double span() const { return x0 + static_cast<double>(count - 1) * pitch + width; }
};

struct TableSet {
    double table_w, table_d, table_x, table_y, gap_south, gap_north;

    void add_objects(SceneTemplate& t) const {
        t.objects.push_back(spec("table", {table_w, table_d, 0.75}));
        t.objects.push_back(spec("chair_1", {0.5, 0.5, 0.9}));
        t.objects.push_back(spec("chair_2", {0.5, 0.5, 0.9}));
    }

    std::string source(double y) const {
        std::string s;
        s += "table.min.x = " + format_number(table_x) + "\n";
        s += "table.min.y = " + format_number(y) + "\n";
        s += "chair_1.max.y = table.min.y - " + format_number(gap_south) + "\n";
        s += "chair_1.center.x = table.center.x\n";
        s += "chair_1.facing = table\n";
        s += "chair_2.min.y = table.max.y + " + format_number(gap_north) + "\n";
        s += "chair_2.center.x = table.center.x\n";
        s += "chair_2.facing = table\n";
        return s;
    }
};

struct WallSet {
    double screen_x, wardrobe_y, desk_gap;

    void add_objects(SceneTemplate& t) const {
        t.objects.push_back(spec("screen", {1.2, 0.08, 0.7}, SupportType::WallMounted));
        t.objects.push_back(spec("wardrobe", {1.4, 0.6, 2.0}));
        t.objects.push_back(spec("desk", {1.2, 0.6, 0.75}));
    }

    std::string source(const std::string& screen_facing, const std::string& wardrobe_facing) const {
        std::string s;
        s += "screen.max.y = scene.max.y\n";
        s += "screen.center.x = " + format_number(screen_x) + "\n";
        s += "screen.min.z = 1.2\n";
        s += "screen.facing = " + screen_facing + "\n";
        s += "wardrobe.min.x = scene.min.x\n";
        s += "wardrobe.min.y = " + format_number(wardrobe_y) + "\n";
        s += "wardrobe.facing = " + wardrobe_facing + "\n";
        s += "desk.min.x = " + format_number(0.6 + desk_gap) + "\n";
        s += "desk.min.y = " + format_number(wardrobe_y + 0.2) + "\n";
        return s;
    }
};

double total(const std::string& source, const SceneTemplate& scene) {
    return total_loss(lang::evaluate(lang::parse(source), scene)).total;
}

BenchCase make_case(std::size_t index, std::uint64_t seed, std::size_t attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt)};
    Rng rng(seq);

    Row row;
    row.prefix = "column";
    row.width = rng.uniform(0.3, 0.6);
    row.pitch = cm(row.width + rng.uniform(0.1, std::min(0.4, row.width - 0.05)));
    row.x0 = 0.5;
    row.y = 0.5;
    row.count = static_cast<std::size_t>(std::clamp(
        static_cast<int>(std::ceil((4.6 - row.x0 - row.width) / row.pitch)) + 1, 3, 12));

    SceneTemplate scene;
    scene.prompt = "a hall with a row of columns";
    const double width = cm(row.span() + rng.uniform(0.2, 0.6));
    scene.bounds = Cuboid{{0.0, 0.0, 0.0}, {width, 6.5, 3.0}};
    row.add_objects(scene);

    static const char* kFaults[] = {"halve", "double", "offset", "flip"};
    const std::string fault = kFaults[index % 4];
    const bool table_module = fault == "offset" || (fault != "flip" && rng.integer(0, 1) == 0);

    BenchCase c;
    c.name = "case_" + std::string(index < 10 ? "0" : "") + std::to_string(index);
    c.fault = fault;

    std::string north_valid, north_faulty;
    if (table_module) {
        TableSet t{rng.uniform(1.2, 1.6), rng.uniform(0.8, 1.0), 0.0, 4.0, rng.uniform(0.05, 0.25),
                   rng.uniform(0.05, 0.25)};
        t.table_x = rng.uniform(0.8, width - t.table_w - 0.8);
        t.add_objects(scene);
        scene.prompt += " and a small dining table";
        north_valid = t.source(t.table_y);
        north_faulty = north_valid;
        if (fault == "offset" && rng.integer(0, 1) == 0) {
            const double push = rng.uniform(0.8, 1.4);
            north_faulty = t.source(cm(t.table_y + push));
            c.fault = "offset table.min.y by +" + format_number(push);
        }
    } else {
        WallSet w{0.0, rng.uniform(3.4, 4.2), rng.uniform(0.1, 0.3)};
        w.screen_x = rng.uniform(2.2, width - 0.8);
        w.add_objects(scene);
        scene.prompt += ", a wall screen and a wardrobe";
        north_valid = w.source("SOUTH", "EAST");
        north_faulty = north_valid;
        if (fault == "flip") {
            const int which = rng.integer(0, 2);
            if (which == 0) {
                north_faulty = w.source("NORTH", "EAST");
                c.fault = "flip screen to NORTH";
            } else {
                const std::string turned = which == 1 ? "NORTH" : "SOUTH";
                north_faulty = w.source("SOUTH", turned);
                c.fault = "flip wardrobe to " + turned;
            }
        }
    }

    double pitch = row.pitch;
    std::optional<double> start;
    if (fault == "halve") pitch = row.pitch * 0.5;
    if (fault == "double") pitch = row.pitch * 2.0;
    if (fault == "halve" || fault == "double") c.fault = fault + " column pitch";
    if (fault == "offset" && north_faulty == north_valid) {
        const double push = rng.uniform(0.6, 1.0);
        start = cm(row.x0 - push);
        c.fault = "offset column row start by -" + format_number(push);
    }

    c.scene = scene;
    c.valid_source = row.source("d", row.pitch) + north_valid;
    c.faulty_source = row.source("d", pitch, start) + north_faulty;
    return c;
}

}  // namespace

std::vector<BenchCase> generate_corpus(std::size_t count, std::uint64_t seed, double epsilon) {
    std::vector<BenchCase> out;
    std::size_t attempt = 0;
    while (out.size() < count) {
        if (attempt > 100 * (count + 1)) throw std::runtime_error("fault corpus generation did not converge");
        BenchCase c = make_case(out.size(), seed, attempt++);
        try {
            if (total(c.valid_source, c.scene) != 0.0) continue;
            if (!(total(c.faulty_source, c.scene) > epsilon)) continue;
        } catch (const std::exception&) {
            continue;
        }
        out.push_back(std::move(c));
    }
    return out;
}

BenchCase generate_row_scene(std::size_t columns, std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(columns)};
    Rng rng(seq);
    constexpr std::size_t kPerRow = 10;
    const std::size_t rows = (columns + kPerRow - 1) / kPerRow;

    SceneTemplate scene;
    scene.prompt = "a storage hall with rows of crates";
    std::string valid, faulty;
    double width = 0.0;
    std::vector<Row> all;
    for (std::size_t r = 0; r < rows; ++r) {
        Row row;
        row.prefix = "crate" + std::to_string(r + 1);
        row.count = std::min(kPerRow, columns - r * kPerRow);
        row.width = rng.uniform(0.3, 0.5);
        row.pitch = cm(row.width + rng.uniform(0.1, 0.25));
        row.x0 = 0.5;
        row.y = cm(0.5 + static_cast<double>(r) * 1.0);
        row.add_objects(scene);
        width = std::max(width, row.span());
        const std::string var = "d" + std::to_string(r + 1);
        valid += row.source(var, row.pitch);
        // Every third row is packed too tightly.
        faulty += row.source(var, r % 3 == 0 ? cm(row.pitch * 0.5) : row.pitch);
        all.push_back(row);
    }
    scene.bounds = Cuboid{{0.0, 0.0, 0.0}, {cm(width + 0.5), cm(static_cast<double>(rows) * 1.0 + 0.5), 3.0}};

    BenchCase c;
    c.name = "rows_" + std::to_string(columns);
    c.scene = std::move(scene);
    c.valid_source = std::move(valid);
    c.faulty_source = std::move(faulty);
    c.fault = "halve pitch in every third row";
    return c;
}

void write_corpus(const std::filesystem::path& dir, const std::vector<BenchCase>& cases) {
    std::filesystem::create_directories(dir);
    for (const auto& c : cases) {
        write_text_file(dir / (c.name + ".scn"), "# fault: " + c.fault + "\n" + c.faulty_source);
        write_text_file(dir / (c.name + ".json"), to_json(c.scene).dump(2) + "\n");
    }
}

std::vector<BenchCase> load_corpus(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> programs;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() == ".scn") programs.push_back(entry.path());
    }
    std::sort(programs.begin(), programs.end());
    std::vector<BenchCase> out;
    for (const auto& p : programs) {
        auto json_path = p;
        json_path.replace_extension(".json");
        if (!std::filesystem::exists(json_path)) continue;
        BenchCase c;
        c.name = p.stem().string();
        c.scene = load_template(json_path);
        c.faulty_source = read_text_file(p);
        const std::string tag = "# fault: ";
        if (c.faulty_source.rfind(tag, 0) == 0) {
            c.fault = c.faulty_source.substr(tag.size(), c.faulty_source.find('\n') - tag.size());
        }
        out.push_back(std::move(c));
    }
    return out;
}

BenchSummary run_bench(const std::vector<BenchCase>& cases, const CorrectorConfig& config) {
    BenchSummary s;
    double step_sum = 0.0;
    for (const auto& c : cases) {
        BenchOutcome o;
        o.name = c.name;
        o.fault = c.fault;
        const auto start = std::chrono::steady_clock::now();
        try {
            const lang::Program program = lang::parse(c.faulty_source);
            const CorrectionTrace trace = correct(program, c.scene, config);
            o.initial_loss = trace.initial_loss.total;
            o.final_loss = trace.final_loss.total;
            o.steps = trace.steps.size();
            o.converged = o.final_loss <= config.epsilon;
            o.strictly_decreasing = true;
            double prev = o.initial_loss;
            for (const auto& step : trace.steps) {
                if (step.loss_before != prev || !(step.loss_before - step.loss_after >= config.epsilon)) {
                    o.strictly_decreasing = false;
                }
                prev = step.loss_after;
            }
            o.structure_preserved = lang::structurally_equal(trace.initial_program, trace.final_program,
                                                             lang::CompareMode::IgnoreParameterValues);
        } catch (const std::exception& e) {
            o.error = e.what();
        }
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        s.converged += o.converged ? 1 : 0;
        s.strictly_decreasing += o.strictly_decreasing ? 1 : 0;
        s.structure_preserved += o.structure_preserved ? 1 : 0;
        s.failed += o.error.empty() ? 0 : 1;
        step_sum += static_cast<double>(o.steps);
        s.total_seconds += o.seconds;
        s.outcomes.push_back(std::move(o));
    }
    s.mean_steps = cases.empty() ? 0.0 : step_sum / static_cast<double>(cases.size());
    return s;
}

nlohmann::json to_json(const BenchSummary& s) {
    auto cases = nlohmann::json::array();
    for (const auto& o : s.outcomes) {
        nlohmann::json j{{"name", o.name},
                         {"fault", o.fault},
                         {"initial_loss", o.initial_loss},
                         {"final_loss", o.final_loss},
                         {"steps", o.steps},
                         {"converged", o.converged},
                         {"strictly_decreasing", o.strictly_decreasing},
                         {"structure_preserved", o.structure_preserved},
                         {"seconds", o.seconds}};
        if (!o.error.empty()) j["error"] = o.error;
        cases.push_back(std::move(j));
    }
    const double n = s.outcomes.empty() ? 1.0 : static_cast<double>(s.outcomes.size());
    return {{"cases", s.outcomes.size()},
            {"converged", s.converged},
            {"converged_rate", static_cast<double>(s.converged) / n},
            {"strictly_decreasing", s.strictly_decreasing},
            {"structure_preserved", s.structure_preserved},
            {"failed", s.failed},
            {"mean_steps", s.mean_steps},
            {"total_seconds", s.total_seconds},
            {"outcomes", cases}};
}

}  // namespace scenelayout::bench
