#ifndef PATCHKPP_IO_HPP
#define PATCHKPP_IO_HPP

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "patchkpp/errors.hpp"

namespace patchkpp {

using json = nlohmann::json;

/** CSV writer with reproducible formatting: every double is printed with
 *  %.17g, so re-running the same build yields bit-identical files. */
class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::string& header);
    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);

  private:
    std::ofstream out_;
};

std::string format_double(double v);

void save_json(const std::filesystem::path& path, const json& j);
json load_json(const std::filesystem::path& path);

/** Two-column CSV (x, u) loaded for file-based initial data. */
std::vector<std::pair<double, double>> load_xy_csv(const std::filesystem::path& path);

} // namespace patchkpp

#endif
