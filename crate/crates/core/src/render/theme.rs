use alloc::string::String;

use serde::{Deserialize, Serialize};

use super::color::{hue_distance, ColorParseError, Rgb};
use super::model::ChartId;
use crate::ema::{Facet, HueRole};

/// Base hues of the facet colour families, in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FacetHues {
    pub green: f64,
    pub red: f64,
    pub blue: f64,
    pub purple: f64,
}

impl Default for FacetHues {
    fn default() -> Self {
        FacetHues { green: 140.0, red: 5.0, blue: 215.0, purple: 275.0 }
    }
}

/// Lengths in SVG user units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Geometry {
    pub margin_left: f64,
    pub margin_right: f64,
    pub day_width: f64,
    pub header_height: f64,
    pub title_height: f64,
    pub footer_height: f64,
    pub facet_gap: f64,
    /// Height of the data area of each chart, in [`ChartId::ALL`] order.
    pub chart_heights: [f64; 10],
    pub bar_width: f64,
    pub tile_width: f64,
}

impl Default for Geometry {
    fn default() -> Self {
        Geometry {
            margin_left: 40.0,
            margin_right: 20.0,
            day_width: 60.0,
            header_height: 40.0,
            title_height: 28.0,
            footer_height: 20.0,
            facet_gap: 10.0,
            chart_heights: [160.0, 150.0, 144.0, 160.0, 150.0, 150.0, 150.0, 130.0, 150.0, 160.0],
            bar_width: 14.0,
            tile_width: 16.0,
        }
    }
}

impl Geometry {
    pub fn canvas_width(&self) -> f64 {
        self.margin_left + 7.0 * self.day_width + self.margin_right
    }

    pub fn plot_height(&self, chart: ChartId) -> f64 {
        self.chart_heights[chart.index()]
    }

    pub fn block_height(&self, chart: ChartId) -> f64 {
        self.title_height + self.plot_height(chart) + self.footer_height
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Theme {
    pub hues: FacetHues,
    /// Worried, angry, happy, sad.
    pub emotion_hues: [f64; 4],
    /// Four saturation steps, lowest first.
    pub ramp_saturation: [f64; 4],
    pub ramp_lightness: f64,
    /// Alternating day stripes, starting with the first day.
    pub stripe_shades: [String; 2],
    pub absence_grey: String,
    pub missing_grey: String,
    pub no_interaction_grey: String,
    pub interaction_grey: String,
    pub text: String,
    pub font_family: String,
    pub title_size: f64,
    pub label_size: f64,
    pub glyph_size: f64,
    pub min_stripe_contrast: f64,
    pub min_emotion_hue_separation: f64,
    pub geometry: Geometry,
}

impl Default for Theme {
    fn default() -> Self {
        Theme {
            hues: FacetHues::default(),
            emotion_hues: [175.0, 45.0, 255.0, 330.0],
            ramp_saturation: [0.25, 0.5, 0.75, 1.0],
            ramp_lightness: 0.45,
            stripe_shades: ["#e8e8e8".into(), "#ffffff".into()],
            absence_grey: "#a8a8a8".into(),
            missing_grey: "#8c8c8c".into(),
            no_interaction_grey: "#6b6b6b".into(),
            interaction_grey: "#d6d6d6".into(),
            text: "#333333".into(),
            font_family: "Helvetica, Arial, sans-serif".into(),
            title_size: 12.0,
            label_size: 8.0,
            glyph_size: 14.0,
            min_stripe_contrast: 1.2,
            min_emotion_hue_separation: 30.0,
            geometry: Geometry::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ThemeError {
    #[error(transparent)]
    Color(#[from] ColorParseError),
    #[error("saturation ramp must be strictly increasing within (0, 1]")]
    Ramp,
    #[error("contrast {found:.3} between {a} and {b} is below {min}")]
    Contrast { a: String, b: String, found: f64, min: f64 },
    #[error("emotion hues {0} and {1} are too close")]
    EmotionHues(usize, usize),
    #[error("chart {chart:?} is {ratio:.2}x wider than tall, outside 2..=3")]
    BlockRatio { chart: ChartId, ratio: f64 },
    #[error("dashboard is {0:.2}x taller than wide, outside 4..=6")]
    DocumentRatio(f64),
    #[error("geometry lengths must be positive")]
    Geometry,
}

impl Theme {
    pub fn hue(&self, role: HueRole) -> f64 {
        match role {
            HueRole::Green => self.hues.green,
            HueRole::Red => self.hues.red,
            HueRole::Blue => self.hues.blue,
            HueRole::Purple | HueRole::Multicolour => self.hues.purple,
        }
    }

    /// Saturation step 1..=4 of a hue.
    pub fn ramp(&self, hue: f64, step: u8) -> String {
        let i = usize::from(step.clamp(1, 4)) - 1;
        Rgb::from_hsl(hue, self.ramp_saturation[i], self.ramp_lightness).hex()
    }

    pub fn facet_color(&self, facet: Facet) -> String {
        self.ramp(self.hue(facet.hue_role()), 4)
    }

    pub fn emotion_color(&self, index: usize) -> String {
        self.ramp(self.emotion_hues[index], 4)
    }

    pub fn dashboard_height(&self) -> f64 {
        let g = &self.geometry;
        let blocks: f64 = ChartId::ALL.iter().map(|c| g.block_height(*c)).sum();
        g.header_height + blocks + g.facet_gap * (Facet::ALL.len() - 1) as f64
    }

    pub fn check(&self) -> Result<(), ThemeError> {
        let g = &self.geometry;
        let lengths = [g.day_width, g.title_height, g.bar_width, g.tile_width];
        if lengths.iter().chain(g.chart_heights.iter()).any(|v| v.partial_cmp(&0.0) != Some(core::cmp::Ordering::Greater)) {
            return Err(ThemeError::Geometry);
        }

        let s = &self.ramp_saturation;
        if !(s[0] > 0.0 && s.windows(2).all(|w| w[0] < w[1]) && s[3] <= 1.0) {
            return Err(ThemeError::Ramp);
        }

        let greys = [&self.stripe_shades[0], &self.stripe_shades[1], &self.absence_grey];
        for (i, a) in greys.iter().enumerate() {
            for b in &greys[i + 1..] {
                let found = Rgb::parse_hex(a)?.contrast(Rgb::parse_hex(b)?);
                if found < self.min_stripe_contrast {
                    return Err(ThemeError::Contrast {
                        a: (*a).clone(),
                        b: (*b).clone(),
                        found,
                        min: self.min_stripe_contrast,
                    });
                }
            }
        }
        for c in [&self.missing_grey, &self.no_interaction_grey, &self.interaction_grey, &self.text] {
            Rgb::parse_hex(c)?;
        }

        let e = &self.emotion_hues;
        for i in 0..4 {
            for j in i + 1..4 {
                if hue_distance(e[i], e[j]) < self.min_emotion_hue_separation {
                    return Err(ThemeError::EmotionHues(i, j));
                }
            }
        }

        let width = g.canvas_width();
        for chart in ChartId::ALL {
            let ratio = width / g.block_height(chart);
            if !(2.0..=3.0).contains(&ratio) {
                return Err(ThemeError::BlockRatio { chart, ratio });
            }
        }
        let ratio = self.dashboard_height() / width;
        if !(4.0..=6.0).contains(&ratio) {
            return Err(ThemeError::DocumentRatio(ratio));
        }
        Ok(())
    }
}
