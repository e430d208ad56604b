#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fmq {

// Uniform time grid starting at t = 0. One grid object is shared by every
// trajectory of a run so the channels never need interpolation between them.
class TimeGrid {
  public:
    TimeGrid(double t_max, int n_samples) : t_max_(t_max), n_(n_samples) {
        if (!(t_max > 0.0) || n_samples < 2)
            throw std::invalid_argument("TimeGrid: need t_max > 0, n_samples >= 2");
        times_.resize(n_);
        const double dt = t_max_ / (n_ - 1);
        for (int i = 0; i < n_; ++i) times_[i] = i * dt;
        times_.back() = t_max_;
    }

    std::size_t size() const { return times_.size(); }
    double t_max() const { return t_max_; }
    double dt() const { return t_max_ / (n_ - 1); }
    double operator[](std::size_t i) const { return times_[i]; }
    const std::vector<double>& times() const { return times_; }

    bool operator==(const TimeGrid& other) const {
        return t_max_ == other.t_max_ && n_ == other.n_;
    }

  private:
    double t_max_;
    int n_;
    std::vector<double> times_;
};

}  // namespace fmq
