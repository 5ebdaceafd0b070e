#ifndef CQSC_IO_HPP
#define CQSC_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cqsc/channel.hpp"
#include "cqsc/verify.hpp"

namespace cqsc {

/// Matrix literal: {"dim": d, "re": [[...]], "im": [[...]]}, row-major; "im"
/// may be omitted for real matrices. Unknown keys are rejected, and entries
/// must be Hermitian within 1e-12 before the constructor symmetrizes.
HermitianMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const HermitianMatrix& m);

struct ChannelFile {
    CqChannel channel;
    std::vector<std::string> labels; ///< empty when the file has none
};

/// {"dim": d, "states": [matrix-literal, ...], "labels": optional}
ChannelFile load_channel(const std::string& path);

/// {"n": n, "words": [[i, ...], ...]} with 1-based letters
Codebook load_codebook(const std::string& path);

/// A JSON array of matrix literals; POVM invariants validated on load.
Povm load_povm(const std::string& path);

nlohmann::json verdict_to_json(const VerdictReport& rep);

/// 12 significant digits, '.' decimal separator, locale independent.
std::string format_number(double v);

/// Writes via temp file + rename so interrupted runs leave no partial files.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace cqsc

#endif
