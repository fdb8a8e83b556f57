#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "agreeloss/vector_stats.hpp"

namespace agreeloss {

/// Aligned predictions z and observations y.
class SeriesPair {
public:
    /// Throws DimensionError when the lengths differ.
    SeriesPair(RealVector z, RealVector y);
    SeriesPair(std::vector<double> z, std::vector<double> y);
    SeriesPair(std::initializer_list<double> z, std::initializer_list<double> y);

    const RealVector& z() const noexcept { return z_; }
    const RealVector& y() const noexcept { return y_; }
    std::size_t size() const noexcept { return y_.size(); }

    bool y_nonconstant() const noexcept { return y_nonconstant_; }
    bool z_differs() const noexcept { return z_differs_; }

    /// The agreement losses need a non-constant y or a z that differs from y.
    bool agreement_defined() const noexcept { return y_nonconstant_ || z_differs_; }

private:
    RealVector z_;
    RealVector y_;
    bool y_nonconstant_;
    bool z_differs_;
};

enum class Orientation { negative, positive };

/// Ordered (name, value, orientation) entries with unique names.
class MetricReport {
public:
    struct Entry {
        std::string name;
        double value;
        Orientation orientation;
        bool agreement_family;
    };

    /// Throws InvalidInput on duplicate names, or on an agreement-family value
    /// outside [0, 1].
    void add(std::string name, double value, Orientation orientation, bool agreement_family = false);

    /// Records a metric that is mathematically undefined for the data (value NaN).
    void add_undefined(std::string name, Orientation orientation, bool agreement_family = false);

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    const Entry* find(std::string_view name) const noexcept;

private:
    std::vector<Entry> entries_;
};

// Average losses. All throw DimensionError on mismatched lengths via SeriesPair.

double mae(const SeriesPair& pair);
double mse(const SeriesPair& pair);

/// 1 - MSE(z, y) / MSE(mean(y), y). Throws UndefinedError for constant y.
double nse(const SeriesPair& pair);

/// 1 - loss_avg_z / loss_avg_ref for a loss with minimum 0.
double skill_score(double loss_avg_z, double loss_avg_ref);

/// Index-of-agreement loss (1 - d):
///   ||z - y||^2 / || |z - mean(y)| + |mean(y) - y| ||^2
double l_w(const SeriesPair& pair);

/// Norm-ratio loss:
///   ||z - y||^2 / (||z - mean(y)|| + ||mean(y) - y||)^2
double l_nr2(const SeriesPair& pair);

/// ||z - y||_1 / (||z - f||_1 + ||f - y||_1) for a caller-chosen benchmark scalar f.
double l_lmc(const SeriesPair& pair, double benchmark);
double l_lmc_mean(const SeriesPair& pair);
double l_lmc_median(const SeriesPair& pair);

/// Element-wise generalisation of l_w to exponent p (finite, >= 1). p == 2 is l_w.
double l_kbb(const SeriesPair& pair, double p);

/// Norm-ratio loss in L_p with the L_p-mean as benchmark. p == 2 is l_nr2.
/// For p == infinity the power is dropped and the plain ratio
/// ||z - y||_inf / (||z - m||_inf + ||m - y||_inf) is returned.
double l_nrp(const SeriesPair& pair, double p);

/// Mean error (1/n) sum (z_i - y_i).
double v_mean_avg(const SeriesPair& pair);

/// (1/n) sum (1[z_i >= y_i] - 1/2), in [-1/2, 1/2].
double v_median_avg(const SeriesPair& pair);

}  // namespace agreeloss
