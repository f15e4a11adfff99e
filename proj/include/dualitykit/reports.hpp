#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dualitykit/center_channels.hpp"
#include "dualitykit/fusion_ring.hpp"
#include "dualitykit/verify.hpp"

namespace dualitykit {

inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { json, csv, text };

OutputFormat parse_output_format(const std::string& name);

nlohmann::json fusion_ring_json(const FusionRing& ring);
std::string fusion_ring_csv(const FusionRing& ring);
std::string fusion_ring_text(const FusionRing& ring);

/// Per-grade counts, channel names, qdims and the composition table of all
/// pairs whose product grade is in range.
nlohmann::json channel_report_json(const ChannelCatalog& catalog);
std::string channel_report_csv(const ChannelCatalog& catalog);
std::string channel_report_text(const ChannelCatalog& catalog);

nlohmann::json identity_report_json(const IdentityReport& report);
nlohmann::json verify_report_json(const std::vector<IdentityReport>& reports);
std::string verify_report_csv(const std::vector<IdentityReport>& reports);
std::string verify_report_text(const std::vector<IdentityReport>& reports);

struct WeakIntegralityEntry {
  std::string label;
  double dim = 0.0;
  double dim_squared = 0.0;
  /// Distance of dim_squared to the nearest integer.
  double distance = 0.0;
};

struct WeakIntegralityReport {
  std::string ring;
  std::vector<WeakIntegralityEntry> entries;
  bool weakly_integral = false;
};

WeakIntegralityReport weak_integrality(const FusionRing& ring, double tol = 1e-9);
nlohmann::json weak_integrality_json(const WeakIntegralityReport& report);
std::string weak_integrality_csv(const WeakIntegralityReport& report);
std::string weak_integrality_text(const WeakIntegralityReport& report);

/// Ring from JSON:
///   {"name": "...", "labels": ["1", "t"], "unit": "1",
///    "rules": [["t", "t", "1", 1], ["t", "t", "t", 1]]}
/// Unlisted coefficients are zero; duals are read off N^unit_{xy}.
/// Throws DomainError on malformed input.
FusionRing parse_ring_json(const std::string& text);
FusionRing load_ring_file(const std::string& path);

/// Fitted scalars keyed by "group/L=n/identity".
using GoldenScales = std::map<std::string, cplx>;

std::string golden_key(const IdentityReport& report);
GoldenScales read_golden(const std::string& path);
void write_golden(const std::string& path, const GoldenScales& scales);

}  // namespace dualitykit
