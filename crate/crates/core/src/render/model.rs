use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::ema::{Facet, SurveyWindow};

/// The ten dashboard charts, in top-to-bottom order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartId {
    MySleep,
    SymptomIntensity,
    SymptomOccurrence,
    /// Four small-multiple panels in one block.
    Emotions,
    WorryTarget,
    WorryLevels,
    ExpectVsReality,
    School,
    PeerWorry,
    PeerQuality,
}

impl ChartId {
    pub const ALL: [ChartId; 10] = [
        ChartId::MySleep,
        ChartId::SymptomIntensity,
        ChartId::SymptomOccurrence,
        ChartId::Emotions,
        ChartId::WorryTarget,
        ChartId::WorryLevels,
        ChartId::ExpectVsReality,
        ChartId::School,
        ChartId::PeerWorry,
        ChartId::PeerQuality,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn facet(self) -> Facet {
        match self {
            ChartId::MySleep => Facet::Sleep,
            ChartId::SymptomIntensity | ChartId::SymptomOccurrence => Facet::Symptoms,
            ChartId::Emotions => Facet::Emotions,
            ChartId::WorryTarget | ChartId::WorryLevels | ChartId::ExpectVsReality => {
                Facet::Worries
            }
            ChartId::School => Facet::School,
            ChartId::PeerWorry | ChartId::PeerQuality => Facet::Peers,
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            ChartId::MySleep => "My sleep",
            ChartId::SymptomIntensity => "Intensity of symptoms",
            ChartId::SymptomOccurrence => "When symptoms occurred",
            ChartId::Emotions => "My emotions",
            ChartId::WorryTarget => "What I was worried about",
            ChartId::WorryLevels => "How worried",
            ChartId::ExpectVsReality => "Problems: expected vs. reality",
            ChartId::School => "Going to school",
            ChartId::PeerWorry => "My worry about interacting with friends",
            ChartId::PeerQuality => "Getting along with my friends",
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            ChartId::MySleep => "my-sleep",
            ChartId::SymptomIntensity => "symptom-intensity",
            ChartId::SymptomOccurrence => "symptom-occurrence",
            ChartId::Emotions => "emotions",
            ChartId::WorryTarget => "worry-target",
            ChartId::WorryLevels => "worry-levels",
            ChartId::ExpectVsReality => "expect-vs-reality",
            ChartId::School => "school",
            ChartId::PeerWorry => "peer-worry",
            ChartId::PeerQuality => "peer-quality",
        }
    }

    pub fn from_slug(slug: &str) -> Option<ChartId> {
        ChartId::ALL.into_iter().find(|c| c.slug() == slug)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Anchor {
    Start,
    Middle,
    End,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "shape")]
pub enum Shape {
    Rect { x: f64, y: f64, width: f64, height: f64, fill: String, stroke: Option<String> },
    Circle { cx: f64, cy: f64, r: f64, fill: String, stroke: Option<String> },
    Text { x: f64, y: f64, text: String, size: f64, fill: String, anchor: Anchor },
    /// Reference to a symbol in the document's `<defs>`, drawn in a
    /// `size`-square box with its top-left corner at (x, y).
    Icon { symbol: String, x: f64, y: f64, size: f64, fill: String },
    Polygon { points: Vec<(f64, f64)>, fill: String },
    Line { x1: f64, y1: f64, x2: f64, y2: f64, stroke: String, width: f64 },
}

impl Shape {
    /// Horizontal extent; text counts as its anchor point.
    pub fn x_extent(&self) -> (f64, f64) {
        match self {
            Shape::Rect { x, width, .. } => (*x, x + width),
            Shape::Circle { cx, r, .. } => (cx - r, cx + r),
            Shape::Text { x, .. } => (*x, *x),
            Shape::Icon { x, size, .. } => (*x, x + size),
            Shape::Polygon { points, .. } => points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p.0), hi.max(p.0))
            }),
            Shape::Line { x1, x2, .. } => (x1.min(*x2), x1.max(*x2)),
        }
    }

    pub fn y_extent(&self) -> (f64, f64) {
        match self {
            Shape::Rect { y, height, .. } => (*y, y + height),
            Shape::Circle { cy, r, .. } => (cy - r, cy + r),
            Shape::Text { y, .. } => (*y, *y),
            Shape::Icon { y, size, .. } => (*y, y + size),
            Shape::Polygon { points, .. } => points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p.1), hi.max(p.1))
            }),
            Shape::Line { y1, y2, .. } => (y1.min(*y2), y1.max(*y2)),
        }
    }
}

/// What a data mark stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "role")]
pub enum Role {
    /// Bar for a supplied magnitude; signed for diverging charts.
    Bar { value: i8 },
    SleepBar { clipped_start: bool, clipped_end: bool },
    ClipFlag,
    DurationLabel { minutes: u16 },
    /// Saturation-coded tile; `row` 0 is the top tile.
    Tile { row: u8, value: u8 },
    Presence { row: u8 },
    Absence { row: u8 },
    Medication,
    Avoided,
    Happened,
    Expectation { value: u8 },
    Icon { label: String },
    Label,
    Caption,
    Interaction { occurred: bool },
    /// The grey '?' for a missed answer.
    Missing,
}

/// A mark bound to a day column, or to one sub-slot of it when `window` is
/// set. Coordinates are relative to the block's top-left corner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mark {
    pub day: u8,
    pub window: Option<SurveyWindow>,
    /// Small-multiple panel, 0 for single-panel charts.
    pub panel: u8,
    #[serde(flatten)]
    pub role: Role,
    pub shape: Shape,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Swatch {
    Fill { color: String },
    Icon { symbol: String, color: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LegendItem {
    pub label: String,
    pub swatch: Swatch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Legend {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
    pub items: Vec<LegendItem>,
}

/// One positioned chart of the dashboard.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartBlock {
    pub id: ChartId,
    pub facet: Facet,
    pub title: String,
    /// Offset of the block in the document.
    pub y: f64,
    pub width: f64,
    pub height: f64,
    /// Data area, block-relative.
    pub plot_top: f64,
    pub plot_bottom: f64,
    /// Units of height per unit of magnitude, for bar charts.
    pub value_scale: Option<f64>,
    pub column_centers: [f64; 7],
    pub legend: Legend,
    pub marks: Vec<Mark>,
    /// Axes, ticks, titles and other marks not tied to a slot.
    pub furniture: Vec<Shape>,
}

impl ChartBlock {
    pub fn missing_count(&self) -> usize {
        self.marks.iter().filter(|m| m.role == Role::Missing).count()
    }

    pub fn marks_with<'a>(&'a self, pred: impl Fn(&Role) -> bool + 'a) -> impl Iterator<Item = &'a Mark> {
        self.marks.iter().filter(move |m| pred(&m.role))
    }
}
