#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "convexstate/jb.hpp"
#include "convexstate/protocols.hpp"
#include "convexstate/transition.hpp"

namespace convexstate {

/// Reports keep insertion order so identical inputs give byte-identical output.
using Json = nlohmann::ordered_json;

enum class OutputFormat { Json, Csv, Text };

/// "json", "csv" or "text"; throws ParseError otherwise.
OutputFormat parse_output_format(const std::string& s);

Json to_json(const Rational& r);  ///< "p/q" string
Json to_json(const RationalVector& v);
Json to_json(const ComplexMatrix& m);  ///< {"re": [[..]], "im": [[..]]}
Json to_json(const HermitianMatrix& m);
Json to_json(const DensityMatrix& m);
Json to_json(const Vec3& v);
Json to_json(const Ket& k);

Json face_json(const VPolytope& k, const Face& f);
Json ratio_json(const RatioResult& r);
/// Exact pairwise ratio matrix of a polytope, rows indexed by x.
Json ratio_matrix_json(const VPolytope& k);
Json superposability_json(const SuperposabilityCertificate& c, const VPolytope* k = nullptr);
Json path_json(const ProductPath& p);
/// `k` supplies vertex labels for polytope verdicts.
Json verdict_json(const JBVerdict& v, const VPolytope* k = nullptr);
Json cloning_json(const CloningCheckReport& r);
Json bit_commitment_json(const BitCommitmentReport& r);

/// JSON pretty-printed with two-space indent; csv as "path,value" rows of the
/// flattened document; text as "path: value" lines.
std::string render(const Json& j, OutputFormat format);

}  // namespace convexstate
