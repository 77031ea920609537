#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "scenelayout/geometry.hpp"

namespace scenelayout {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// {"prompt", "bounds": [x,y,z], "objects": [{"name","dims","support","opening"}]}
nlohmann::json to_json(const SceneTemplate& t);
SceneTemplate template_from_json(const nlohmann::json& j);

// Same shape as the template, each object also carrying "position" and
// "orientation".
nlohmann::json to_json(const Layout& layout);
Layout layout_from_json(const nlohmann::json& j);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

nlohmann::json read_json_file(const std::filesystem::path& path);
SceneTemplate load_template(const std::filesystem::path& path);
Layout load_layout(const std::filesystem::path& path);

}  // namespace scenelayout
