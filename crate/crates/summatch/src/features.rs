//! Hue-histogram frame features and the inter-frame distances built on
//! them.
//!
//! Each frame is reduced to a 16-bin histogram of pixel hues (bin width
//! 22.5 degrees over [0, 360)), normalized by pixel count. Achromatic
//! pixels carry no hue information and are assigned hue 0 by convention.

use std::fmt;
use std::str::FromStr;

use image::RgbImage;

use crate::core::{FeatureVector, Summary};
use crate::error::{Error, Result};

/// Number of hue bins produced by [`hue_histogram`].
pub const HUE_BINS: usize = 16;

const BIN_WIDTH_DEGREES: f64 = 360.0 / HUE_BINS as f64;

/// Distance applied to feature vectors. L1 is bounded by 2 on normalized
/// histograms, L2 by sqrt(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MetricKind {
    #[default]
    L1,
    L2,
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricKind::L1 => write!(f, "l1"),
            MetricKind::L2 => write!(f, "l2"),
        }
    }
}

impl FromStr for MetricKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(MetricKind::L1),
            "l2" => Ok(MetricKind::L2),
            other => Err(format!("unknown metric {other:?}, expected l1 or l2")),
        }
    }
}

/// Hue of one RGB pixel in degrees, in [0, 360). Achromatic pixels
/// (max channel == min channel) map to 0.
fn pixel_hue(r: u8, g: u8, b: u8) -> f64 {
    let (r, g, b) = (f64::from(r), f64::from(g), f64::from(b));
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;
    if delta == 0.0 {
        return 0.0;
    }
    let hue = if max == r {
        60.0 * ((g - b) / delta).rem_euclid(6.0)
    } else if max == g {
        60.0 * ((b - r) / delta + 2.0)
    } else {
        60.0 * ((r - g) / delta + 4.0)
    };
    // 360 is unreachable by construction; guard the comparison anyway.
    if hue >= 360.0 {
        0.0
    } else {
        hue
    }
}

/// Builds the 16-bin hue histogram of an image, normalized by pixel count.
pub fn hue_histogram(image: &RgbImage) -> Result<FeatureVector> {
    let pixel_count = image.pixels().len();
    if pixel_count == 0 {
        return Err(Error::EmptyImage);
    }
    let mut counts = [0u64; HUE_BINS];
    for p in image.pixels() {
        let hue = pixel_hue(p.0[0], p.0[1], p.0[2]);
        let bin = ((hue / BIN_WIDTH_DEGREES) as usize).min(HUE_BINS - 1);
        counts[bin] += 1;
    }
    let bins = counts
        .iter()
        .map(|&c| c as f64 / pixel_count as f64)
        .collect();
    FeatureVector::new(bins)
}

/// Distance between two feature vectors under the given metric.
pub fn frame_distance(f: &FeatureVector, g: &FeatureVector, metric: MetricKind) -> Result<f64> {
    if f.dim() != g.dim() {
        return Err(Error::FeatureDimensionMismatch {
            left: f.dim(),
            right: g.dim(),
        });
    }
    let diffs = f.bins().iter().zip(g.bins()).map(|(a, b)| a - b);
    Ok(match metric {
        MetricKind::L1 => diffs.map(f64::abs).sum(),
        MetricKind::L2 => diffs.map(|d| d * d).sum::<f64>().sqrt(),
    })
}

/// Extracts hue features from decoded images and assembles a summary in
/// the given order. `images` and `labels` must have equal length.
pub fn summarize_frames(
    name: impl Into<String>,
    images: &[RgbImage],
    labels: &[String],
) -> Result<Summary> {
    if images.is_empty() {
        return Err(Error::EmptySummary);
    }
    if images.len() != labels.len() {
        return Err(Error::InvalidSummary(format!(
            "{} images but {} labels",
            images.len(),
            labels.len()
        )));
    }
    let mut labeled = Vec::with_capacity(images.len());
    for (image, label) in images.iter().zip(labels) {
        labeled.push((label.clone(), hue_histogram(image)?));
    }
    Summary::from_features(name, labeled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use image::Rgb;
    use proptest::prelude::*;

    fn uniform_image(color: [u8; 3]) -> RgbImage {
        RgbImage::from_pixel(4, 4, Rgb(color))
    }

    #[test]
    fn pure_red_lands_in_bin_zero() {
        let h = hue_histogram(&uniform_image([255, 0, 0])).unwrap();
        assert_eq!(h.bins()[0], 1.0);
        assert!(h.bins()[1..].iter().all(|&b| b == 0.0));
    }

    #[test]
    fn pure_green_lands_in_bin_five() {
        // hue 120 -> floor(120 / 22.5) = 5
        let h = hue_histogram(&uniform_image([0, 255, 0])).unwrap();
        assert_eq!(h.bins()[5], 1.0);
    }

    #[test]
    fn pure_blue_lands_in_bin_ten() {
        // hue 240 -> floor(240 / 22.5) = 10
        let h = hue_histogram(&uniform_image([0, 0, 255])).unwrap();
        assert_eq!(h.bins()[10], 1.0);
    }

    #[test]
    fn achromatic_pixels_map_to_bin_zero() {
        for c in [[0, 0, 0], [128, 128, 128], [255, 255, 255]] {
            let h = hue_histogram(&uniform_image(c)).unwrap();
            assert_eq!(h.bins()[0], 1.0, "color {c:?}");
        }
    }

    #[test]
    fn two_pixel_image_splits_mass() {
        let mut img = RgbImage::new(2, 1);
        img.put_pixel(0, 0, Rgb([255, 0, 0]));
        img.put_pixel(1, 0, Rgb([0, 255, 0]));
        let h = hue_histogram(&img).unwrap();
        assert_eq!(h.bins()[0], 0.5);
        assert_eq!(h.bins()[5], 0.5);
    }

    #[test]
    fn empty_image_is_an_error() {
        let img = RgbImage::new(0, 0);
        assert!(matches!(hue_histogram(&img), Err(Error::EmptyImage)));
    }

    #[test]
    fn identical_vectors_have_zero_distance() {
        let f = super::super::core::tests::indicator(3);
        assert_eq!(frame_distance(&f, &f, MetricKind::L1).unwrap(), 0.0);
        assert_eq!(frame_distance(&f, &f, MetricKind::L2).unwrap(), 0.0);
    }

    #[test]
    fn disjoint_indicators_reach_metric_extremes() {
        let f = super::super::core::tests::indicator(0);
        let g = super::super::core::tests::indicator(5);
        assert_eq!(frame_distance(&f, &g, MetricKind::L1).unwrap(), 2.0);
        assert_eq!(
            frame_distance(&f, &g, MetricKind::L2).unwrap(),
            2.0_f64.sqrt()
        );
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let f = super::super::core::tests::indicator(0);
        let g = FeatureVector::new(vec![0.25; 4]).unwrap();
        assert!(frame_distance(&f, &g, MetricKind::L1).is_err());
    }

    #[test]
    fn summarize_frames_preserves_order_and_features() {
        let images = vec![
            uniform_image([255, 0, 0]),
            uniform_image([0, 255, 0]),
            uniform_image([0, 0, 255]),
        ];
        let labels: Vec<String> = ["r.png", "g.png", "b.png"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let s = summarize_frames("rgb", &images, &labels).unwrap();
        assert_eq!(s.len(), 3);
        for (i, frame) in s.frames().iter().enumerate() {
            assert_eq!(frame.index, i);
            assert_eq!(frame.label, labels[i]);
            let direct = hue_histogram(&images[i]).unwrap();
            assert_eq!(frame.features, direct);
        }
    }

    #[test]
    fn summarize_frames_rejects_empty_input() {
        assert!(matches!(
            summarize_frames("s", &[], &[]),
            Err(Error::EmptySummary)
        ));
    }

    fn arbitrary_histogram() -> impl Strategy<Value = FeatureVector> {
        prop::collection::vec(0.0_f64..1.0, HUE_BINS)
            .prop_filter("needs positive mass", |v| v.iter().sum::<f64>() > 1e-3)
            .prop_map(|v| {
                let sum: f64 = v.iter().sum();
                FeatureVector::new(v.into_iter().map(|x| x / sum).collect()).unwrap()
            })
    }

    fn arbitrary_image() -> impl Strategy<Value = RgbImage> {
        (1u32..6, 1u32..6, prop::collection::vec(any::<[u8; 3]>(), 1..36)).prop_map(
            |(w, h, px)| {
                RgbImage::from_fn(w, h, |x, y| {
                    Rgb(px[(y * w + x) as usize % px.len()])
                })
            },
        )
    }

    proptest! {
        #[test]
        fn extracted_histograms_sum_to_one(img in arbitrary_image()) {
            let h = hue_histogram(&img).unwrap();
            let sum: f64 = h.bins().iter().sum();
            prop_assert!((sum - 1.0).abs() <= 1e-9);
        }

        #[test]
        fn distance_is_symmetric_and_bounded(
            f in arbitrary_histogram(),
            g in arbitrary_histogram(),
        ) {
            let l1 = frame_distance(&f, &g, MetricKind::L1).unwrap();
            let l2 = frame_distance(&f, &g, MetricKind::L2).unwrap();
            prop_assert_eq!(l1, frame_distance(&g, &f, MetricKind::L1).unwrap());
            prop_assert_eq!(l2, frame_distance(&g, &f, MetricKind::L2).unwrap());
            prop_assert!((0.0..=2.0 + 1e-9).contains(&l1));
            prop_assert!((0.0..=2.0_f64.sqrt() + 1e-9).contains(&l2));
        }

        #[test]
        fn distance_satisfies_triangle_inequality(
            f in arbitrary_histogram(),
            g in arbitrary_histogram(),
            h in arbitrary_histogram(),
        ) {
            for metric in [MetricKind::L1, MetricKind::L2] {
                let fg = frame_distance(&f, &g, metric).unwrap();
                let gh = frame_distance(&g, &h, metric).unwrap();
                let fh = frame_distance(&f, &h, metric).unwrap();
                prop_assert!(fh <= fg + gh + 1e-9);
            }
        }
    }
}
