#pragma once

// Text format for DG algebras and Koszul-Sullivan models.
//
//   algebra cp2 {
//     gen v2 : 2
//     gen v5 : 5
//     d v5 = v2^3
//   }
//
//   fibration twisted {
//     base  { gen w4 : 4  gen w7 : 7  d w7 = w4^2 }
//     fibre { gen v2 : 2  gen v5 : 5  d v5 = v2^3 }
//     total { d v5 = v2^3 + w4*v2 }
//   }
//
// Omitted `d g` lines mean d(g) = 0. In the total block only fibre
// generators may be listed; the rest inherit d_B / d_X. `#` starts a comment.

#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "gottlieb/algebra.hpp"
#include "gottlieb/error.hpp"
#include "gottlieb/fibration.hpp"

namespace gottlieb {

struct ModelDocument {
  std::string source;
  std::variant<DgAlgebra, KsModel> payload;
  /// Declaration span of every generator, by name.
  std::map<std::string, SourceSpan> spans;

  bool is_fibration() const noexcept { return std::holds_alternative<KsModel>(payload); }
};

/// Parses either document kind, selected by the leading keyword.
ModelDocument parse_document(std::string_view text);
DgAlgebra parse_dga(std::string_view text);
KsModel parse_ks(std::string_view text);

std::string render_dga(const DgAlgebra& algebra);
std::string render_ks(const KsModel& model);
std::string render(const ModelDocument& doc);

}  // namespace gottlieb
