#pragma once

// Registry of the transcribed facts about the knotted sphere K^n in
// S^n x S^2, its complement and the contractible manifold X built from it,
// together with the suite that checks all of them.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "fpcheck/abelian.hpp"
#include "fpcheck/coset.hpp"
#include "fpcheck/derivation.hpp"
#include "fpcheck/presentation.hpp"

namespace fpcheck {

inline constexpr char const* toolkit_version = "1.0.0";

struct Citation {
  std::string location;
  std::string quote;
};

struct IntersectionData {
  std::uint64_t geometric = 0;
  std::int64_t algebraic = 0;

  // |algebraic| <= geometric and both have the same parity.
  bool consistent() const noexcept;
};

struct HandleTableFamily {
  std::string name;
  std::function<HandleCountTable(int n)> build;
};

struct PaperFact {
  std::string id;
  Citation citation;
  std::variant<Presentation, DerivationScript, HandleTableFamily, IntersectionData> payload;
};

// Combinatorial handle picture sufficient for the fundamental group: the
// 1-handles (dotted spheres) and the attaching words of the 2-handles read
// off as they pass the 1-handles. Handles of index >= 3 are listed by index
// only; they do not change the fundamental group.
struct HandleDiagram {
  std::vector<std::string> one_handles;
  std::vector<std::vector<std::pair<std::string, int>>> two_handle_words;
  std::vector<int> higher_handles;
};

Presentation presentation_from_diagram(HandleDiagram const& d);

Presentation complement_presentation();
Presentation target_presentation();
DerivationScript derivation_script();
IntersectionData intersection_data();

// Keys "SnxS2", "Kn", "complement", "X", "boundaryX". Requires n >= 2.
std::map<std::string, HandleCountTable> handle_tables(int n);

// 1- and 2-handles of the complement, as used for its fundamental group.
HandleDiagram complement_diagram();
// The complement's diagram plus the (n+1)- and (n+2)-handle that close it
// up into the boundary of X.
HandleDiagram boundary_diagram(int n);

std::vector<PaperFact> registry();
// Every quote any registry fact may cite.
std::vector<std::string> const& bundled_quotes();

// Inputs to verify_paper; the bundled values unless a caller overrides them
// (negative controls swap in corrupted data).
struct PaperData {
  Presentation complement;
  Presentation target;
  DerivationScript script;
  IntersectionData intersection;

  static PaperData bundled();
};

struct NRange {
  int lo = 2;
  int hi = 10;
};

struct VerifyLimits {
  std::size_t max_cosets = default_max_cosets;
  Strategy strategy = Strategy::Felsch;
  std::uint64_t search_cap = 50'000'000;
  bool parallel = true;
};

enum class CheckOutcome { Pass, Fail, Inconclusive };
char const* to_string(CheckOutcome o) noexcept;

struct CheckEntry {
  std::string id;
  Citation citation;
  CheckOutcome outcome = CheckOutcome::Fail;
  std::string details;
  double elapsed_ms = 0;
};

struct VerificationReport {
  std::string toolkit_version;
  NRange n_range;
  std::vector<CheckEntry> checks;
  std::optional<std::size_t> complement_order;

  // Fail if any check failed, else Inconclusive if any was, else Pass.
  CheckOutcome overall() const noexcept;
  CheckEntry const* find(std::string const& id) const noexcept;
};

// Runs, in this order: derivation-replay, target-order,
// complement-epimorphism, complement-perfect, complement-order,
// euler-characteristics, intersection-parity.
VerificationReport verify_paper(PaperData const& data, NRange range, VerifyLimits const& limits = {});

nlohmann::json to_json(VerificationReport const& report);

}  // namespace fpcheck
