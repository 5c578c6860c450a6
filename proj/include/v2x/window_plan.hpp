#pragma once

#include <vector>

#include "v2x/resource_grid.hpp"

namespace v2x {

// Transmission assignments of the whole fleet for one window. Vehicle
// indices are dense [0, n); every vehicle gets exactly one subchannel per
// sub-band (the CAM replicas). finalize() freezes the plan and builds the
// per-subframe index used by sensing and reception.
class WindowPlan {
 public:
  struct Tx {
    int vehicle;
    int sub_band;
  };

  WindowPlan(int num_vehicles, const GridConfig& grid);

  void assign(int vehicle, SubchannelId sc);
  SubchannelId slot(int vehicle, int sub_band) const;

  // All transmissions scheduled in the given subframe. Only valid after
  // finalize().
  const std::vector<Tx>& transmissions_in_subframe(int subframe) const;

  // True if the vehicle transmits on any sub-band in this subframe (the
  // half-duplex test).
  bool transmits_in_subframe(int vehicle, int subframe) const;

  void finalize();
  bool finalized() const { return finalized_; }

  int num_vehicles() const { return num_vehicles_; }
  const GridConfig& grid() const { return grid_; }

 private:
  int slot_index(int vehicle, int sub_band) const;

  int num_vehicles_;
  GridConfig grid_;
  bool finalized_ = false;
  std::vector<SubchannelId> slots_;          // n * F, subframe 0 = unassigned
  std::vector<std::vector<Tx>> by_subframe_;  // indexed subframe - 1
};

// Dense symmetric matrix of linear link gains for one window. Diagonal is
// zero (a vehicle has no link to itself).
class GainMatrix {
 public:
  explicit GainMatrix(int n) : n_(n), g_(static_cast<std::size_t>(n) * n, 0.0) {}

  void set(int i, int j, double gain) {
    g_[index(i, j)] = gain;
    g_[index(j, i)] = gain;
  }
  double at(int i, int j) const { return g_[index(i, j)]; }

  // Row pointer for tight interference loops.
  const double* row(int i) const { return g_.data() + static_cast<std::size_t>(i) * n_; }

  int size() const { return n_; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ + j;
  }

  int n_;
  std::vector<double> g_;
};

}  // namespace v2x
