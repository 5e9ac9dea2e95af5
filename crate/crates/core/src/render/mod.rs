//! Deterministic layout and SVG rendering of the one-week dashboard.
//!
//! Ten charts share one horizontal grid of 7 day columns × 3 sub-slots and
//! are stacked top to bottom in facet order. Missed answers are drawn as a
//! grey `?`; a supplied zero is drawn as a zero-height bar or empty frame;
//! slots whose window has not closed yet are left blank.

mod charts;
mod color;
mod dashboard;
mod grid;
pub mod icons;
mod model;
mod sleep;
mod svg;
mod theme;

pub use charts::{render_chart, CAPTION_MAX_CHARS, SYMPTOM_ROWS};
pub use color::{hue_distance, ColorParseError, Rgb};
pub use dashboard::{render_dashboard, Dashboard, DashboardLayout};
pub use grid::{layout_grid, DayColumn, LayoutGrid};
pub use model::{Anchor, ChartBlock, ChartId, Legend, LegendItem, Mark, Role, Shape, Swatch};
pub use sleep::{sleep_bar_geometry, SleepSpan};
pub use theme::{FacetHues, Geometry, Theme, ThemeError};
