#include "gmg/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "gmg/errors.hpp"
#include "gmg/parallel.hpp"

namespace gmg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::size_t> class_members(const DatasetDescriptor& dataset, const std::string& cls)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dataset.graphs.size(); ++i)
        if (dataset.graphs[i].class_label == cls)
            out.push_back(i);
    return out;
}

std::vector<std::size_t> shuffled(std::vector<std::size_t> items, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::shuffle(items.begin(), items.end(), rng);
    return items;
}

DescentConfig seeded(const DescentConfig& base, std::uint64_t seed)
{
    DescentConfig c = base;
    c.phase1.rng_seed = mix_seed(base.phase1.rng_seed ^ seed, 1);
    c.phase2.rng_seed = mix_seed(base.phase2.rng_seed ^ seed, 2);
    return c;
}

std::uint64_t task_seed(std::uint64_t seed, std::size_t cls, std::size_t repeat)
{
    return mix_seed(mix_seed(seed, cls), repeat);
}

} // namespace

SampleSize SampleSize::fraction(double f)
{
    if (!(f > 0.0 && f <= 1.0))
        throw std::invalid_argument("sample fraction must lie in (0, 1]");
    return SampleSize(f);
}

SampleSize SampleSize::parse(std::string_view text)
{
    std::string s(text);
    try {
        std::size_t used = 0;
        if (s.find_first_of(".eE") != std::string::npos) {
            double f = std::stod(s, &used);
            if (used == s.size())
                return fraction(f);
        } else {
            long long n = std::stoll(s, &used);
            if (used == s.size() && n >= 1)
                return count(static_cast<std::size_t>(n));
        }
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    throw std::invalid_argument("sample '" + s + "' is neither a positive count nor a fraction in (0, 1]");
}

std::string SampleSize::to_string() const
{
    if (const auto* n = std::get_if<std::size_t>(&value_))
        return std::to_string(*n);
    return format_real(std::get<double>(value_)) + (std::get<double>(value_) == 1.0 ? ".0" : "");
}

std::size_t SampleSize::resolve(std::size_t class_size) const
{
    if (const auto* n = std::get_if<std::size_t>(&value_))
        return std::max<std::size_t>(1, *n);
    double f = std::get<double>(value_);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(f * static_cast<double>(class_size))));
}

SodReport run_sod_experiment(const DatasetDescriptor& dataset, const ExperimentConfig& config)
{
    const auto classes = dataset.classes();
    if (classes.empty())
        throw ConfigError("sod experiment: dataset has no graphs");
    std::vector<std::vector<std::size_t>> members;
    for (const auto& cls : classes) {
        members.push_back(class_members(dataset, cls));
        std::size_t k = config.per_class_sample.resolve(members.back().size());
        if (k > members.back().size())
            throw ConfigError("sod experiment: class '" + cls + "' has " + std::to_string(members.back().size()) +
                              " graphs, fewer than the sample size " + std::to_string(k));
    }

    const std::size_t tasks = classes.size() * config.repeats;
    SodReport report;
    report.rows.resize(tasks);
    parallel_for(tasks, [&](std::size_t task) {
        std::size_t c = task / config.repeats;
        std::size_t r = task % config.repeats;
        std::uint64_t seed = task_seed(config.rng_seed, c, r);
        auto order = shuffled(members[c], seed);
        order.resize(config.per_class_sample.resolve(members[c].size()));
        std::vector<AttributedGraph> sample;
        for (std::size_t idx : order)
            sample.push_back(dataset.graphs[idx].graph);

        MedianResult m = compute_median(config.model, sample, seeded(config.descent, seed));
        report.rows[task] = {classes[c], r,         m.set_median_sod,    m.phase1_seconds,
                             m.sod(),    m.phase2_seconds, m.iterations.size(), m.converged};
    });

    const double count = static_cast<double>(report.rows.size());
    for (const SodRow& row : report.rows) {
        report.mean_sod_sm += row.sod_sm / count;
        report.mean_t_sm += row.t_sm / count;
        report.mean_sod_gm += row.sod_gm / count;
        report.mean_t_gm += row.t_gm / count;
    }
    return report;
}

std::string_view to_string(TrainingMode mode)
{
    switch (mode) {
    case TrainingMode::SetMedian: return "SM";
    case TrainingMode::GeneralizedMedian: return "GM";
    case TrainingMode::TrainSet: return "TS";
    }
    return "?";
}

namespace {

struct Reference {
    const AttributedGraph* graph;
    std::size_t class_index;
};

ModeResult classify(const CostModel& model, const GedSolverConfig& solver, const std::vector<Reference>& references,
                    const std::vector<std::pair<const AttributedGraph*, std::size_t>>& tests, std::uint64_t seed)
{
    auto start = Clock::now();
    std::vector<char> correct(tests.size(), 0);
    parallel_for(tests.size(), [&](std::size_t t) {
        double best = 0.0;
        std::size_t best_class = 0;
        for (std::size_t r = 0; r < references.size(); ++r) {
            GedSolverConfig local = solver;
            local.rng_seed = mix_seed(seed, t * references.size() + r);
            double d = compute_ged(model, *references[r].graph, *tests[t].first, local).cost;
            std::size_t cls = references[r].class_index;
            if (r == 0 || d < best || (d == best && cls < best_class)) {
                best = d;
                best_class = cls;
            }
        }
        correct[t] = best_class == tests[t].second;
    });
    ModeResult out;
    out.time_s = seconds_since(start);
    out.test_count = tests.size();
    out.distance_evaluations = tests.size() * references.size();
    out.correct = static_cast<std::size_t>(std::count(correct.begin(), correct.end(), 1));
    out.accuracy_pct = tests.empty() ? 0.0 : 100.0 * static_cast<double>(out.correct) / static_cast<double>(tests.size());
    return out;
}

} // namespace

ClassifReport run_classification(const DatasetDescriptor& dataset, const ExperimentConfig& config)
{
    const auto classes = dataset.classes();
    if (classes.size() < 2)
        throw ConfigError("classification: at least two classes are required");
    std::vector<std::vector<std::size_t>> members;
    for (const auto& cls : classes)
        members.push_back(class_members(dataset, cls));

    ClassifReport report;
    for (std::size_t r = 0; r < config.repeats; ++r) {
        std::vector<std::vector<AttributedGraph>> train(classes.size());
        std::vector<std::pair<const AttributedGraph*, std::size_t>> tests;
        for (std::size_t c = 0; c < classes.size(); ++c) {
            auto order = shuffled(members[c], task_seed(config.rng_seed, c, r));
            std::size_t k = std::min(config.per_class_sample.resolve(order.size()), order.size());
            for (std::size_t i = 0; i < order.size(); ++i) {
                if (i < k)
                    train[c].push_back(dataset.graphs[order[i]].graph);
                else
                    tests.emplace_back(&dataset.graphs[order[i]].graph, c);
            }
        }
        if (tests.empty())
            throw ConfigError("classification: the split leaves no test graphs");

        ClassifRepeat rep;
        rep.class_count = classes.size();
        auto start = Clock::now();
        std::vector<MedianResult> medians(classes.size());
        parallel_for(classes.size(), [&](std::size_t c) {
            medians[c] = compute_median(config.model, train[c], seeded(config.descent, task_seed(config.rng_seed, c, r)));
        });
        rep.pt = seconds_since(start);

        std::vector<Reference> sm, gm, ts;
        for (std::size_t c = 0; c < classes.size(); ++c) {
            sm.push_back({&train[c][medians[c].set_median_index], c});
            gm.push_back({&medians[c].median, c});
            for (const auto& g : train[c])
                ts.push_back({&g, c});
            rep.train_count += train[c].size();
        }
        std::uint64_t seed = mix_seed(config.rng_seed ^ 0x5eedULL, r);
        rep.modes[0] = classify(config.model, config.descent.phase2, sm, tests, seed);
        rep.modes[1] = classify(config.model, config.descent.phase2, gm, tests, seed);
        rep.modes[2] = classify(config.model, config.descent.phase2, ts, tests, seed);
        report.repeats.push_back(rep);
    }

    const double count = static_cast<double>(report.repeats.size());
    for (const ClassifRepeat& rep : report.repeats) {
        report.pt += rep.pt / count;
        for (std::size_t m = 0; m < 3; ++m) {
            report.modes[m].accuracy_pct += rep.modes[m].accuracy_pct / count;
            report.modes[m].time_s += rep.modes[m].time_s / count;
            report.modes[m].distance_evaluations += rep.modes[m].distance_evaluations;
            report.modes[m].test_count += rep.modes[m].test_count;
            report.modes[m].correct += rep.modes[m].correct;
        }
    }
    return report;
}

void write_sod_csv(std::ostream& out, const SodReport& report, bool timings)
{
    out << "class,repeat,sod_sm,t_sm,sod_gm,t_gm\n";
    for (const SodRow& row : report.rows) {
        out << row.class_label << ',' << row.repeat << ',' << format_real(row.sod_sm) << ','
            << format_real(timings ? row.t_sm : 0.0) << ',' << format_real(row.sod_gm) << ','
            << format_real(timings ? row.t_gm : 0.0) << '\n';
    }
}

void print_sod_table(std::ostream& out, const SodReport& report)
{
    auto old_flags = out.flags();
    out << std::left << std::setw(12) << "class" << std::right << std::setw(8) << "repeat" << std::setw(14) << "SOD SM"
        << std::setw(12) << "t(SM)" << std::setw(14) << "SOD GM" << std::setw(12) << "t(GM)" << std::setw(7)
        << "iters" << '\n';
    out << std::fixed;
    for (const SodRow& row : report.rows) {
        out << std::left << std::setw(12) << row.class_label << std::right << std::setw(8) << row.repeat
            << std::setprecision(3) << std::setw(14) << row.sod_sm << std::setprecision(4) << std::setw(12)
            << row.t_sm << std::setprecision(3) << std::setw(14) << row.sod_gm << std::setprecision(4)
            << std::setw(12) << row.t_gm << std::setw(7) << row.iterations << '\n';
    }
    out << std::left << std::setw(20) << "mean" << std::right << std::setprecision(3) << std::setw(14)
        << report.mean_sod_sm << std::setprecision(4) << std::setw(12) << report.mean_t_sm << std::setprecision(3)
        << std::setw(14) << report.mean_sod_gm << std::setprecision(4) << std::setw(12) << report.mean_t_gm << '\n';
    out.flags(old_flags);
}

void write_classif_csv(std::ostream& out, const ClassifReport& report, bool timings)
{
    out << "mode,accuracy_pct,time_s,pt\n";
    for (std::size_t m = 0; m < kTrainingModes.size(); ++m) {
        out << to_string(kTrainingModes[m]) << ',' << format_real(report.modes[m].accuracy_pct) << ','
            << format_real(timings ? report.modes[m].time_s : 0.0) << ',' << format_real(timings ? report.pt : 0.0)
            << '\n';
    }
}

void print_classif_table(std::ostream& out, const ClassifReport& report)
{
    auto old_flags = out.flags();
    out << std::fixed << "pt " << std::setprecision(4) << report.pt << " s\n";
    out << std::left << std::setw(6) << "mode" << std::right << std::setw(12) << "accuracy %" << std::setw(12)
        << "time (s)" << std::setw(12) << "distances" << '\n';
    for (std::size_t m = 0; m < kTrainingModes.size(); ++m) {
        out << std::left << std::setw(6) << to_string(kTrainingModes[m]) << std::right << std::setprecision(2)
            << std::setw(12) << report.modes[m].accuracy_pct << std::setprecision(4) << std::setw(12)
            << report.modes[m].time_s << std::setw(12) << report.modes[m].distance_evaluations << '\n';
    }
    out.flags(old_flags);
}

} // namespace gmg
