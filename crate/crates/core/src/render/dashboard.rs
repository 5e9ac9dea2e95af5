use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use chrono::{Datelike, Days};
use serde::{Deserialize, Serialize};

use super::charts::render_chart;
use super::grid::{layout_grid, LayoutGrid};
use super::icons;
use super::model::{ChartBlock, ChartId, Role};
use super::svg::{write_legend, write_shape, Escaped, Num};
use super::theme::Theme;
use crate::ema::WeekDataset;

/// Geometry of a rendered dashboard, suitable for JSON export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DashboardLayout {
    pub width: f64,
    pub height: f64,
    pub grid: LayoutGrid,
    pub blocks: Vec<ChartBlock>,
}

impl DashboardLayout {
    pub fn missing_count(&self) -> usize {
        self.blocks.iter().map(ChartBlock::missing_count).sum()
    }

    pub fn block(&self, id: ChartId) -> Option<&ChartBlock> {
        self.blocks.iter().find(|b| b.id == id)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dashboard {
    pub svg: String,
    pub layout: DashboardLayout,
}

/// Stacks the ten charts in facet order and serializes them as a static
/// SVG 1.1 document. Pure and deterministic.
pub fn render_dashboard(week: &WeekDataset, theme: &Theme) -> Dashboard {
    let grid = layout_grid(theme);
    let g = &theme.geometry;
    let mut y = g.header_height;
    let mut blocks = Vec::with_capacity(ChartId::ALL.len());
    for chart in ChartId::ALL {
        if let Some(prev) = blocks.last().map(|b: &ChartBlock| b.facet) {
            if prev != chart.facet() {
                y += g.facet_gap;
            }
        }
        let mut block = render_chart(chart, week, &grid, theme);
        block.y = y;
        y += block.height;
        blocks.push(block);
    }
    let layout = DashboardLayout { width: grid.canvas_width, height: y, grid, blocks };
    let svg = write_document(week, theme, &layout);
    Dashboard { svg, layout }
}

fn write_document(week: &WeekDataset, theme: &Theme, layout: &DashboardLayout) -> String {
    let mut out = String::with_capacity(64 * 1024);
    // Writing into a String cannot fail.
    let _ = write_document_into(&mut out, week, theme, layout);
    out
}

fn write_document_into(
    out: &mut String,
    week: &WeekDataset,
    theme: &Theme,
    layout: &DashboardLayout,
) -> core::fmt::Result {
    let (w, h) = (Num(layout.width), Num(layout.height));
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" xmlns:xlink="http://www.w3.org/1999/xlink" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="{}">"#,
        Escaped(&theme.font_family)
    )?;
    let last = week.date_of(6);
    writeln!(out, "<title>Week of {} to {}</title>", week.week_start, last)?;

    out.push_str("<defs>\n");
    for (id, path) in icons::SYMBOLS {
        writeln!(out, r#"<symbol id="{id}" viewBox="0 0 24 24"><path d="{path}" fill-rule="evenodd"/></symbol>"#)?;
    }
    out.push_str("</defs>\n");

    writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="{}"/>"#, Escaped(&theme.stripe_shades[1]))?;
    out.push_str("<g id=\"stripes\">\n");
    for col in &layout.grid.columns {
        let fill = &theme.stripe_shades[usize::from(col.stripe)];
        writeln!(
            out,
            r#"<rect x="{}" y="0" width="{}" height="{h}" fill="{}"/>"#,
            Num(col.left),
            Num(layout.grid.day_width),
            Escaped(fill)
        )?;
    }
    out.push_str("</g>\n");

    out.push_str("<g id=\"header\">\n");
    writeln!(
        out,
        r#"<text x="8" y="16" font-size="{}" fill="{}">My week: {} – {}</text>"#,
        Num(theme.title_size + 2.0),
        Escaped(&theme.text),
        week.week_start.format("%b %-d"),
        last.format("%b %-d")
    )?;
    for (d, col) in layout.grid.columns.iter().enumerate() {
        let date = week.week_start + Days::new(d as u64);
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="{}" fill="{}" text-anchor="middle">{} {}</text>"#,
            Num(col.center),
            Num(theme.geometry.header_height - 6.0),
            Num(theme.label_size + 1.0),
            Escaped(&theme.text),
            date.weekday(),
            date.day()
        )?;
    }
    out.push_str("</g>\n");

    for block in &layout.blocks {
        writeln!(
            out,
            r#"<g id="chart-{}" class="chart facet-{}" transform="translate(0,{})">"#,
            block.id.slug(),
            block.facet.name(),
            Num(block.y)
        )?;
        for shape in &block.furniture {
            write_shape(out, shape, None)?;
        }
        write_legend(out, &block.legend, theme.label_size, &theme.text)?;
        for mark in &block.marks {
            let class = if mark.role == Role::Missing { Some("missing") } else { None };
            write_shape(out, &mark.shape, class)?;
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(())
}
