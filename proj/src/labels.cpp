#include "aesthetics/labels.hpp"

namespace aesthetics {

std::string_view to_string(Label label) {
    return label == Label::professional ? "professional" : "snapshot";
}

std::string_view to_string(Category category) {
    switch (category) {
        case Category::animal: return "animal";
        case Category::architecture: return "architecture";
        case Category::human: return "human";
        case Category::landscape: return "landscape";
        case Category::night: return "night";
        case Category::plant: return "plant";
        case Category::still: return "static";
    }
    return "unknown";
}

std::optional<Label> parse_label(std::string_view token) {
    if (token == "professional") return Label::professional;
    if (token == "snapshot") return Label::snapshot;
    return std::nullopt;
}

std::optional<Category> parse_category(std::string_view token) {
    for (Category c : kAllCategories) {
        if (to_string(c) == token) return c;
    }
    return std::nullopt;
}

}  // namespace aesthetics
