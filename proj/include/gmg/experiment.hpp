#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gmg/dataset.hpp"
#include "gmg/edit_cost.hpp"
#include "gmg/median.hpp"

namespace gmg {

/// Per-class sample: an absolute count ("50") or a fraction of the class ("0.3").
class SampleSize {
public:
    SampleSize() = default;
    static SampleSize count(std::size_t n) { return SampleSize(n); }
    static SampleSize fraction(double f);

    // Integers are counts, values with a decimal point are fractions in (0, 1].
    static SampleSize parse(std::string_view text);
    std::string to_string() const;

    // Rounded to nearest, at least 1.
    std::size_t resolve(std::size_t class_size) const;

    friend bool operator==(const SampleSize&, const SampleSize&) = default;

private:
    explicit SampleSize(std::size_t n) : value_(n) {}
    explicit SampleSize(double f) : value_(f) {}
    std::variant<std::size_t, double> value_{std::size_t{10}};
};

struct ExperimentConfig {
    SampleSize per_class_sample;
    std::size_t repeats = 1;
    std::uint64_t rng_seed = 0;
    CostModel model;
    DescentConfig descent;
};

struct SodRow {
    std::string class_label;
    std::size_t repeat = 0;
    double sod_sm = 0.0;
    double t_sm = 0.0;
    double sod_gm = 0.0;
    double t_gm = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

struct SodReport {
    std::vector<SodRow> rows;
    double mean_sod_sm = 0.0;
    double mean_t_sm = 0.0;
    double mean_sod_gm = 0.0;
    double mean_t_gm = 0.0;
};

/**
 * For every class and repeat, samples the configured number of graphs without
 * replacement and runs the median descent. t_sm covers the set-median phase,
 * t_gm the descent phase only; parsing is not timed. Throws ConfigError when a
 * class is smaller than the sample.
 */
SodReport run_sod_experiment(const DatasetDescriptor& dataset, const ExperimentConfig& config);

enum class TrainingMode { SetMedian, GeneralizedMedian, TrainSet };
inline constexpr std::array<TrainingMode, 3> kTrainingModes = {TrainingMode::SetMedian,
                                                                 TrainingMode::GeneralizedMedian,
                                                                 TrainingMode::TrainSet};
std::string_view to_string(TrainingMode mode); // SM, GM, TS

struct ModeResult {
    double accuracy_pct = 0.0;
    double time_s = 0.0;
    std::size_t distance_evaluations = 0;
    std::size_t test_count = 0;
    std::size_t correct = 0;
};

struct ClassifRepeat {
    double pt = 0.0; // set-median + generalized-median computation time
    std::size_t train_count = 0;
    std::size_t class_count = 0;
    std::array<ModeResult, 3> modes;
};

struct ClassifReport {
    std::vector<ClassifRepeat> repeats;
    double pt = 0.0;
    std::array<ModeResult, 3> modes; // accuracy and time averaged over repeats
};

/**
 * Splits each class into a train sample (per_class_sample) and a test rest,
 * computes per-class set and generalized medians on the train part, and
 * classifies every test graph by its nearest neighbour under the phase-2
 * solver with the medians or the full train set as references. Ties go to the
 * smallest class index. Throws ConfigError with fewer than two classes or
 * without test graphs.
 */
ClassifReport run_classification(const DatasetDescriptor& dataset, const ExperimentConfig& config);

// CSV columns: class,repeat,sod_sm,t_sm,sod_gm,t_gm. Times are written as 0 when `timings` is false.
void write_sod_csv(std::ostream& out, const SodReport& report, bool timings = true);
void print_sod_table(std::ostream& out, const SodReport& report);

// CSV columns: mode,accuracy_pct,time_s,pt.
void write_classif_csv(std::ostream& out, const ClassifReport& report, bool timings = true);
void print_classif_table(std::ostream& out, const ClassifReport& report);

} // namespace gmg
