#include "aesthetics/features.hpp"
#include "aesthetics/imaging.hpp"

namespace aesthetics {

ExtractedFeatures extract_features(const RgbImage& img, const FeatureContext& ctx,
                                   std::optional<std::size_t> self_index) {
    if (img.width() < 3 || img.height() < 3) throw InvalidArgument("extract_features: image must be at least 3x3");

    const GrayImage energy = edge_energy(img);
    const SubjectRegion subject = energy_bounding_box(energy, ctx.delta);
    const EdgeMap map = edge_map_from_energy(energy);
    const ColorHist hist = color_histogram(img);

    ExtractedFeatures out;
    out.features.q_l = edge_quality(map, ctx.templates);
    out.features.q_cd = color_quality_knn(hist, ctx.exemplars, ctx.k, self_index);
    out.features.q_h = hue_count_quality(img, ctx.hue_alpha);
    out.features.q_f = blur_quality(crop(img, subject), ctx.power_threshold);
    out.features.b = brightness_quality(img, subject);
    out.features.q_dark = dark_channel_quality(img, subject);

    out.diagnostics.bbox_area = edge_bounding_area(map, ctx.delta);
    out.diagnostics.contrast_width = contrast_width(combined_gray_histogram(img));
    return out;
}

}  // namespace aesthetics
