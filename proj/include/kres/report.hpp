#pragma once

#include <json.hpp>
#include <string>

#include "kres/verifier.hpp"

namespace kres {

inline constexpr int kSchemaVersion = 1;

// int64 when it fits, decimal string otherwise
nlohmann::json big_json(const BigInt& v);
nlohmann::json series_json(const PowerSeries& s);

struct ReportOptions {
  bool timestamp = true;
  bool emit_matrices = false;
};

nlohmann::json ring_json(const RingFile& rf);
nlohmann::json pack_json(const SequencePack& p);
nlohmann::json u_json(const UTable& u);
nlohmann::json assembly_json(const ResolutionAssembly& F, bool emit_matrices);
nlohmann::json section_json(const CheckSection& s);
nlohmann::json cycle_matrix_json(const CycleMatrix& m);

nlohmann::json report_json(const RingFile& rf, const VerificationReport& rep, const ReportOptions& opt);
nlohmann::json betti_json(const std::string& mode, long n, long c, long a1, long a2, long a3, const PowerSeries& PR,
                          const UTable* u, bool timestamp);

// header fields shared by every document
nlohmann::json document(const std::string& kind, bool timestamp);

}  // namespace kres
