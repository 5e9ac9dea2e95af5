use serde::{Deserialize, Serialize};

use super::theme::Theme;
use crate::ema::SurveyWindow;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DayColumn {
    pub left: f64,
    pub right: f64,
    pub center: f64,
    pub sub_centers: [f64; 3],
    /// Index into the theme's stripe shades.
    pub stripe: u8,
}

/// The shared horizontal time axis: 7 day columns of 3 sub-slots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LayoutGrid {
    pub canvas_width: f64,
    pub day_width: f64,
    pub sub_width: f64,
    pub columns: [DayColumn; 7],
}

impl LayoutGrid {
    pub fn column(&self, day: u8) -> &DayColumn {
        &self.columns[usize::from(day)]
    }

    pub fn center(&self, day: u8) -> f64 {
        self.column(day).center
    }

    pub fn sub_center(&self, day: u8, window: SurveyWindow) -> f64 {
        self.column(day).sub_centers[window.index()]
    }

    /// Horizontal bounds of a day column or one of its sub-slots.
    pub fn bounds(&self, day: u8, window: Option<SurveyWindow>) -> (f64, f64) {
        let col = self.column(day);
        match window {
            None => (col.left, col.right),
            Some(w) => {
                let left = col.left + w.index() as f64 * self.sub_width;
                (left, left + self.sub_width)
            }
        }
    }

    pub fn centers(&self) -> [f64; 7] {
        core::array::from_fn(|d| self.columns[d].center)
    }
}

/// Day `d` is centred at `margin + (d + 0.5) * day_width`; stripes alternate
/// starting with the first shade.
pub fn layout_grid(theme: &Theme) -> LayoutGrid {
    let g = &theme.geometry;
    let sub_width = g.day_width / 3.0;
    let columns = core::array::from_fn(|d| {
        let left = g.margin_left + d as f64 * g.day_width;
        DayColumn {
            left,
            right: left + g.day_width,
            center: g.margin_left + (d as f64 + 0.5) * g.day_width,
            sub_centers: core::array::from_fn(|w| left + (w as f64 + 0.5) * sub_width),
            stripe: (d % 2) as u8,
        }
    });
    LayoutGrid { canvas_width: g.canvas_width(), day_width: g.day_width, sub_width, columns }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_centres() {
        let grid = layout_grid(&Theme::default());
        assert_eq!(grid.center(0), 70.0);
        assert_eq!(grid.center(6), 430.0);
        assert_eq!(grid.canvas_width, 480.0);
    }

    #[test]
    fn stripes_alternate() {
        let grid = layout_grid(&Theme::default());
        let first = grid.columns.iter().filter(|c| c.stripe == 0).count();
        assert_eq!((first, 7 - first), (4, 3));
        assert!(grid.columns.windows(2).all(|w| w[0].stripe != w[1].stripe));
    }

    #[test]
    fn nested_and_equally_spaced() {
        let grid = layout_grid(&Theme::default());
        let gaps: alloc::vec::Vec<f64> = grid.columns.windows(2).map(|w| w[1].center - w[0].center).collect();
        assert!(gaps.iter().all(|g| *g == 60.0));
        for col in &grid.columns {
            assert!(col.sub_centers.iter().all(|c| *c > col.left && *c < col.right));
            assert!(col.sub_centers.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
