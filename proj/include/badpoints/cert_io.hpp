#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "badpoints/certificates.hpp"

namespace badpoints {

// Generators and f as polynomials in x, y, z, developed in hat coordinates
// when the document is read.
struct HatSource {
  VarsPtr vars;
  std::vector<Poly> gens;
  Poly f;
};

// Cone check together with the data it runs on.
struct ConeCertFile {
  VarsPtr vars;
  std::vector<TruncSeries> gens;
  TruncSeries f;
  ConeObstruction cert;
  std::optional<HatSource> source;
};

// Develops a hat-source cone document; products are filled in by make_cone_obstruction.
ConeCertFile hat_cone_certificate(const HatSource& src, std::uint64_t trunc, const Monomial& target);

using AnyCert = std::variant<SosCert, AmGmCert, NonSosObstruction, ConeCertFile, BadPointCert>;

// Parses and validates a certificate document against the rules of
// docs/certificate.schema.json. Violations raise Error("schema_error") with
// the offending JSON pointer.
AnyCert parse_certificate(std::string_view json_text);

std::string certificate_kind(const AnyCert& c);
std::string write_certificate(const AnyCert& c);

struct CertOutcome {
  bool ok = false;
  std::vector<std::string> lines;  // human-readable detail, one fact per line
};

CertOutcome verify_certificate(const AnyCert& c, const GroebnerOptions& options = default_groebner_options());

}  // namespace badpoints
