#include "v2x/window_plan.hpp"

#include <stdexcept>

namespace v2x {

WindowPlan::WindowPlan(int num_vehicles, const GridConfig& grid)
    : num_vehicles_(num_vehicles), grid_(grid) {
  if (num_vehicles < 0)
    throw std::invalid_argument("WindowPlan: negative vehicle count");
  grid_.validate();
  slots_.assign(
      static_cast<std::size_t>(num_vehicles) * grid_.num_sub_bands,
      SubchannelId{0, 0});
}

int WindowPlan::slot_index(int vehicle, int sub_band) const {
  if (vehicle < 0 || vehicle >= num_vehicles_)
    throw std::out_of_range("WindowPlan: vehicle index out of range");
  if (sub_band < 1 || sub_band > grid_.num_sub_bands)
    throw std::out_of_range("WindowPlan: sub-band out of range");
  return vehicle * grid_.num_sub_bands + (sub_band - 1);
}

void WindowPlan::assign(int vehicle, SubchannelId sc) {
  if (finalized_)
    throw std::logic_error("WindowPlan: assign after finalize");
  if (sc.subframe < 1 || sc.subframe > grid_.subchannels_per_band)
    throw std::out_of_range("WindowPlan: subframe out of range");
  slots_[static_cast<std::size_t>(slot_index(vehicle, sc.sub_band))] = sc;
}

SubchannelId WindowPlan::slot(int vehicle, int sub_band) const {
  return slots_[static_cast<std::size_t>(slot_index(vehicle, sub_band))];
}

bool WindowPlan::transmits_in_subframe(int vehicle, int subframe) const {
  for (int f = 1; f <= grid_.num_sub_bands; ++f)
    if (slot(vehicle, f).subframe == subframe) return true;
  return false;
}

const std::vector<WindowPlan::Tx>& WindowPlan::transmissions_in_subframe(
    int subframe) const {
  if (!finalized_)
    throw std::logic_error("WindowPlan: subframe index needs finalize");
  if (subframe < 1 || subframe > grid_.subchannels_per_band)
    throw std::out_of_range("WindowPlan: subframe out of range");
  return by_subframe_[static_cast<std::size_t>(subframe - 1)];
}

void WindowPlan::finalize() {
  if (finalized_) return;
  by_subframe_.assign(static_cast<std::size_t>(grid_.subchannels_per_band),
                      {});
  for (int v = 0; v < num_vehicles_; ++v) {
    for (int f = 1; f <= grid_.num_sub_bands; ++f) {
      const SubchannelId sc = slot(v, f);
      if (sc.subframe == 0)
        throw std::logic_error("WindowPlan: vehicle missing an assignment");
      by_subframe_[static_cast<std::size_t>(sc.subframe - 1)].push_back(
          Tx{v, f});
    }
  }
  finalized_ = true;
}

}  // namespace v2x
