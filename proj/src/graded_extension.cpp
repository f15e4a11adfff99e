#include <cmath>

#include "dualitykit/center_channels.hpp"
#include "dualitykit/fusion_ring.hpp"

namespace dualitykit {

FusionRing z_graded_extension(const FiniteAbelianGroup& group, const Bicharacter& chi, int window, std::uint64_t seed) {
  if (window < 0) throw DomainError("z_graded_extension: window must be >= 0");
  if (!(chi.group() == group)) throw DomainError("z_graded_extension: bicharacter belongs to another group");
  if (!is_nondegenerate(chi)) throw PreconditionError("z_graded_extension: bicharacter is degenerate");
  const ChannelCatalog catalog(chi, -window, window, seed);

  // Labels run over grades -window..window, channels in catalog order.
  struct Slot {
    int grade;
    int index;
  };
  std::vector<Slot> slots;
  std::vector<std::string> labels;
  std::vector<int> grades;
  std::vector<double> dims;
  for (int g = -window; g <= window; ++g)
    for (const auto& ch : catalog.channels(g)) {
      slots.push_back({g, ch.index});
      labels.push_back(ch.name);
      grades.push_back(g);
      dims.push_back(ch.qdim);
    }
  const int r = static_cast<int>(slots.size());
  auto slot_of = [&](int g, int index) {
    for (int i = 0; i < r; ++i)
      if (slots[static_cast<std::size_t>(i)].grade == g && slots[static_cast<std::size_t>(i)].index == index) return i;
    throw ConsistencyError("z_graded_extension: missing channel");
  };

  // N^Z_{XY} = w_Z d_X d_Y / d_Z for the composition weights w_Z.
  std::vector<int> tensor(static_cast<std::size_t>(r) * r * r, 0);
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y) {
      const auto& sx = slots[static_cast<std::size_t>(x)];
      const auto& sy = slots[static_cast<std::size_t>(y)];
      const auto result = catalog.compose(sx.grade, sx.index, sy.grade, sy.index);
      if (std::holds_alternative<OutOfWindow>(result)) continue;
      for (const auto& term : std::get<std::vector<CompositionTerm>>(result)) {
        const int z = slot_of(sx.grade + sy.grade, term.index);
        const double n = term.weight * dims[static_cast<std::size_t>(x)] * dims[static_cast<std::size_t>(y)] /
                         dims[static_cast<std::size_t>(z)];
        const double rounded = std::round(n);
        if (std::abs(n - rounded) > 1e-8 || rounded < 1.0)
          throw ConsistencyError("z_graded_extension: non-integral fusion coefficient " + std::to_string(n) + " for " +
                                 labels[static_cast<std::size_t>(x)] + "⊗" + labels[static_cast<std::size_t>(y)]);
        tensor[(static_cast<std::size_t>(x) * r + y) * r + z] = static_cast<int>(rounded);
      }
    }

  const int unit = slot_of(0, catalog.unit_index());
  std::vector<int> dual(static_cast<std::size_t>(r), -1);
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y)
      if (grades[static_cast<std::size_t>(x)] + grades[static_cast<std::size_t>(y)] == 0 &&
          tensor[(static_cast<std::size_t>(x) * r + y) * r + unit] > 0)
        dual[static_cast<std::size_t>(x)] = y;
  for (int x = 0; x < r; ++x)
    if (dual[static_cast<std::size_t>(x)] < 0) throw ConsistencyError("z_graded_extension: no dual for " + labels[static_cast<std::size_t>(x)]);

  FusionRing ring("graded(" + group.to_string() + ",w=" + std::to_string(window) + ")", std::move(labels), unit,
                  std::move(dual), std::move(tensor), std::move(grades), window);
  return ring.with_dims(std::move(dims));
}

}  // namespace dualitykit
