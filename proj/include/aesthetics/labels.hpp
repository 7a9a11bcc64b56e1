#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace aesthetics {

enum class Label { professional, snapshot };

enum class Category { animal, architecture, human, landscape, night, plant, still };

inline constexpr std::array<Category, 7> kAllCategories = {
    Category::animal, Category::architecture, Category::human, Category::landscape,
    Category::night,  Category::plant,        Category::still};

std::string_view to_string(Label label);
std::string_view to_string(Category category);

std::optional<Label> parse_label(std::string_view token);
/// Accepts the canonical lowercase tokens; "static" maps to Category::still.
std::optional<Category> parse_category(std::string_view token);

}  // namespace aesthetics
