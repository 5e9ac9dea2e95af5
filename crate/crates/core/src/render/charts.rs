use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::grid::LayoutGrid;
use super::icons;
use super::model::{Anchor, ChartBlock, ChartId, Legend, LegendItem, Mark, Role, Shape, Swatch};
use super::sleep::sleep_bar_geometry;
use super::theme::Theme;
use crate::ema::{
    likert_to_diverging, qid, EmaResponse, SleepRecord, SlotIndex, SurveyWindow, WeekDataset,
    SYMPTOM_CATEGORIES,
};

/// Symptom rows drawn in the occurrence heatmap; "other" is free text.
pub const SYMPTOM_ROWS: [&str; 8] = [
    SYMPTOM_CATEGORIES[0],
    SYMPTOM_CATEGORIES[1],
    SYMPTOM_CATEGORIES[2],
    SYMPTOM_CATEGORIES[3],
    SYMPTOM_CATEGORIES[4],
    SYMPTOM_CATEGORIES[5],
    SYMPTOM_CATEGORIES[6],
    SYMPTOM_CATEGORIES[7],
];

const SYMPTOM_SHORT: [&str; 8] = ["stomach", "head", "back", "dizzy", "limbs", "heart", "nausea", "weak"];
const EMOTION_NAMES: [&str; 4] = ["worried", "angry", "happy", "sad"];

pub const CAPTION_MAX_CHARS: usize = 24;
const CAPTION_LINE_CHARS: usize = 12;
const BASELINE_GREY: &str = "#b4b4b4";
const WHITE: &str = "#ffffff";

/// State of one slot as seen by a chart.
enum View<'a> {
    Pending,
    Missed,
    Answered(&'a EmaResponse),
}

struct Builder<'a> {
    theme: &'a Theme,
    grid: &'a LayoutGrid,
    week: &'a WeekDataset,
    top: f64,
    bottom: f64,
    marks: Vec<Mark>,
    furniture: Vec<Shape>,
    legend: Vec<LegendItem>,
    value_scale: Option<f64>,
}

impl<'a> Builder<'a> {
    fn view(&self, day: u8, window: SurveyWindow) -> View<'a> {
        match self.week.slot(SlotIndex { day, window }) {
            crate::ema::SlotStatus::Completed(r) => View::Answered(r),
            crate::ema::SlotStatus::Missed => View::Missed,
            crate::ema::SlotStatus::Pending => View::Pending,
        }
    }

    /// Answers of the later windows of a day.
    fn later_answers(&self, day: u8) -> impl Iterator<Item = &'a EmaResponse> + 'a {
        let week = self.week;
        [SurveyWindow::Afternoon, SurveyWindow::Evening]
            .into_iter()
            .filter_map(move |window| week.slot(SlotIndex { day, window }).response())
    }

    fn day_answers(&self, day: u8) -> impl Iterator<Item = &'a EmaResponse> + 'a {
        let week = self.week;
        SurveyWindow::ALL.into_iter().filter_map(move |window| week.slot(SlotIndex { day, window }).response())
    }

    fn x_of(&self, day: u8, window: Option<SurveyWindow>) -> f64 {
        match window {
            Some(w) => self.grid.sub_center(day, w),
            None => self.grid.center(day),
        }
    }

    fn push(&mut self, day: u8, window: Option<SurveyWindow>, panel: u8, role: Role, shape: Shape) {
        self.marks.push(Mark { day, window, panel, role, shape });
    }

    fn missing(&mut self, day: u8, window: Option<SurveyWindow>, panel: u8, cy: f64) {
        let size = self.theme.glyph_size;
        let shape = Shape::Text {
            x: self.x_of(day, window),
            y: cy + size * 0.35,
            text: "?".into(),
            size,
            fill: self.theme.missing_grey.clone(),
            anchor: Anchor::Middle,
        };
        self.push(day, window, panel, Role::Missing, shape);
    }

    fn text(&mut self, x: f64, y: f64, text: impl Into<String>, anchor: Anchor) {
        self.furniture.push(Shape::Text {
            x,
            y,
            text: text.into(),
            size: self.theme.label_size,
            fill: self.theme.text.clone(),
            anchor,
        });
    }

    fn baseline(&mut self, y: f64) {
        let left = self.grid.columns[0].left;
        let right = self.grid.columns[6].right;
        self.furniture.push(Shape::Line { x1: left, y1: y, x2: right, y2: y, stroke: BASELINE_GREY.into(), width: 0.5 });
    }

    fn legend_fill(&mut self, label: &str, color: String) {
        self.legend.push(LegendItem { label: label.into(), swatch: Swatch::Fill { color } });
    }

    fn legend_icon(&mut self, label: &str, symbol: &str, color: String) {
        self.legend.push(LegendItem { label: label.into(), swatch: Swatch::Icon { symbol: symbol.into(), color } });
    }

    /// Magnitude bars, three per day, growing up from `bottom`.
    fn bar_series(&mut self, question: &str, panel: u8, top: f64, bottom: f64, fill: &str) {
        let scale = (bottom - top) / 10.0;
        self.value_scale = Some(scale);
        let width = self.theme.geometry.bar_width;
        for slot in SlotIndex::all() {
            let (day, window) = (slot.day, slot.window);
            match self.view(day, window) {
                View::Pending => {}
                View::Missed => self.missing(day, Some(window), panel, (top + bottom) / 2.0),
                View::Answered(r) => match r.answer(question).and_then(|v| v.magnitude()) {
                    None => self.missing(day, Some(window), panel, (top + bottom) / 2.0),
                    Some(value) => {
                        let height = f64::from(value) * scale;
                        let shape = Shape::Rect {
                            x: self.grid.sub_center(day, window) - width / 2.0,
                            y: bottom - height,
                            width,
                            height,
                            fill: fill.into(),
                            stroke: None,
                        };
                        self.push(day, Some(window), panel, Role::Bar { value: value as i8 }, shape);
                    }
                },
            }
        }
        self.baseline(bottom);
    }

    fn magnitude_ticks(&mut self, top: f64, bottom: f64) {
        let x = self.grid.columns[0].left - 4.0;
        let size = self.theme.label_size;
        self.text(x, top + size * 0.35, "10", Anchor::End);
        self.text(x, bottom, "0", Anchor::End);
    }

    fn finish(self, id: ChartId) -> ChartBlock {
        let g = &self.theme.geometry;
        let width = self.grid.canvas_width;
        let height = g.block_height(id);
        let size = self.theme.label_size;
        let item_width = |item: &LegendItem| 8.0 + 3.0 + item.label.chars().count() as f64 * size * 0.55 + 8.0;
        let legend_width: f64 = self.legend.iter().map(item_width).sum();
        let legend = Legend {
            x: (width - g.margin_right - legend_width).max(0.0),
            y: g.title_height * 0.55,
            width: legend_width,
            height: g.title_height * 0.4,
            items: self.legend,
        };
        let mut furniture = vec![Shape::Text {
            x: 8.0,
            y: self.theme.title_size + 1.0,
            text: id.title().into(),
            size: self.theme.title_size,
            fill: match id {
                ChartId::Emotions => self.theme.text.clone(),
                _ => self.theme.facet_color(id.facet()),
            },
            anchor: Anchor::Start,
        }];
        furniture.extend(self.furniture);
        ChartBlock {
            id,
            facet: id.facet(),
            title: id.title().into(),
            y: 0.0,
            width,
            height,
            plot_top: self.top,
            plot_bottom: self.bottom,
            value_scale: self.value_scale,
            column_centers: self.grid.centers(),
            legend,
            marks: self.marks,
            furniture,
        }
    }
}

/// Magnitude 0..=10 to saturation step 0..=4; 0 draws an empty frame.
fn magnitude_step(value: u8) -> u8 {
    (u16::from(value.min(10)) * 4).div_ceil(10) as u8
}

/// Splits at most [`CAPTION_MAX_CHARS`] characters into short lines.
fn caption_lines(text: &str) -> Vec<String> {
    let mut chars: Vec<char> = text.trim().chars().collect();
    if chars.len() > CAPTION_MAX_CHARS {
        chars.truncate(CAPTION_MAX_CHARS - 1);
        chars.push('…');
    }
    chars.chunks(CAPTION_LINE_CHARS).map(|c| c.iter().collect::<String>().trim().to_string()).collect()
}

fn school_label(reason: &str) -> &str {
    match reason {
        "medical appointment" => "appt.",
        "home-schooled" => "home",
        other => other,
    }
}

/// Lays out one chart of the dashboard at the top of a block.
pub fn render_chart(kind: ChartId, week: &WeekDataset, grid: &LayoutGrid, theme: &Theme) -> ChartBlock {
    let g = &theme.geometry;
    let top = g.title_height;
    let bottom = top + g.plot_height(kind);
    let mut b = Builder {
        theme,
        grid,
        week,
        top,
        bottom,
        marks: Vec::new(),
        furniture: Vec::new(),
        legend: Vec::new(),
        value_scale: None,
    };
    match kind {
        ChartId::MySleep => my_sleep(&mut b),
        ChartId::SymptomIntensity => {
            let fill = theme.facet_color(kind.facet());
            b.legend_fill("intensity", fill.clone());
            b.magnitude_ticks(top, bottom);
            b.bar_series(qid::SYMPTOM_INTENSITY, 0, top, bottom, &fill);
        }
        ChartId::SymptomOccurrence => symptom_occurrence(&mut b),
        ChartId::Emotions => emotions(&mut b),
        ChartId::WorryTarget => worry_target(&mut b),
        ChartId::WorryLevels => worry_levels(&mut b),
        ChartId::ExpectVsReality => expect_vs_reality(&mut b),
        ChartId::School => school(&mut b),
        ChartId::PeerWorry => {
            let fill = theme.ramp(theme.hues.purple, 3);
            b.legend_fill("worry", fill.clone());
            b.magnitude_ticks(top, bottom);
            b.bar_series(qid::PEER_WORRY, 0, top, bottom, &fill);
        }
        ChartId::PeerQuality => peer_quality(&mut b),
    }
    b.finish(kind)
}

fn my_sleep(b: &mut Builder<'_>) {
    let theme = b.theme;
    let hue = theme.hues.green;
    for (i, name) in crate::ema::SLEEP_QUALITY_LEVELS.iter().enumerate() {
        b.legend_fill(name, theme.ramp(hue, i as u8 + 1));
    }
    let label_row = 14.0;
    let axis_top = b.top + label_row;
    let axis_height = b.bottom - axis_top;
    let x = b.grid.columns[0].left - 4.0;
    for (i, name) in ["noon", "6pm", "mid", "6am", "noon"].iter().enumerate() {
        let y = axis_top + axis_height * i as f64 / 4.0;
        b.text(x, y + theme.label_size * 0.35, *name, Anchor::End);
    }
    b.baseline(axis_top + axis_height / 2.0);
    let width = theme.geometry.bar_width * 1.6;
    let glyph_y = axis_top + axis_height / 2.0;

    for day in 0..7u8 {
        let r = match b.view(day, SurveyWindow::Morning) {
            View::Pending => continue,
            View::Missed => {
                b.missing(day, None, 0, glyph_y);
                continue;
            }
            View::Answered(r) => r,
        };
        let answered = r.answer(qid::SLEEP_BED).and_then(|v| v.clock()).is_some()
            && r.answer(qid::SLEEP_WAKE).and_then(|v| v.clock()).is_some();
        if !answered {
            b.missing(day, None, 0, glyph_y);
            continue;
        }
        // Equal bed and wake times are rejected upstream; nothing to draw.
        let Some(rec) = SleepRecord::from_response(r) else { continue };
        let span = sleep_bar_geometry(&rec);
        let cx = b.grid.center(day);
        let y0 = axis_top + span.start_fraction() * axis_height;
        let y1 = axis_top + span.end_fraction() * axis_height;
        let (fill, stroke) = match rec.quality {
            Some(q) => (theme.ramp(hue, q.level() + 1), None),
            None => (WHITE.into(), Some(theme.ramp(hue, 4))),
        };
        let bar = Shape::Rect { x: cx - width / 2.0, y: y0, width, height: y1 - y0, fill, stroke };
        b.push(day, None, 0, Role::SleepBar { clipped_start: span.clipped_start, clipped_end: span.clipped_end }, bar);
        let label = Shape::Text {
            x: cx,
            y: b.top + label_row - 4.0,
            text: span.label.clone(),
            size: theme.label_size,
            fill: theme.text.clone(),
            anchor: Anchor::Middle,
        };
        b.push(day, None, 0, Role::DurationLabel { minutes: span.duration_minutes }, label);
        let flag_color = theme.ramp(hue, 4);
        if span.clipped_start {
            let points = vec![(cx - 5.0, y0 + 5.0), (cx + 5.0, y0 + 5.0), (cx, y0)];
            b.push(day, None, 0, Role::ClipFlag, Shape::Polygon { points, fill: flag_color.clone() });
        }
        if span.clipped_end {
            let points = vec![(cx - 5.0, y1 - 5.0), (cx + 5.0, y1 - 5.0), (cx, y1)];
            b.push(day, None, 0, Role::ClipFlag, Shape::Polygon { points, fill: flag_color });
        }
    }
}

fn symptom_occurrence(b: &mut Builder<'_>) {
    let theme = b.theme;
    let present = theme.facet_color(crate::ema::Facet::Symptoms);
    b.legend_fill("present", present.clone());
    b.legend_fill("absent", theme.absence_grey.clone());
    b.legend_icon("medication", icons::CHECK, theme.text.clone());

    let med_row = 16.0;
    let rows_top = b.top + med_row;
    let row_height = (b.bottom - rows_top) / SYMPTOM_ROWS.len() as f64;
    let x = b.grid.columns[0].left - 4.0;
    for (i, short) in SYMPTOM_SHORT.iter().enumerate() {
        let y = rows_top + (i as f64 + 0.5) * row_height + theme.label_size * 0.35;
        b.text(x, y, *short, Anchor::End);
    }

    for day in 0..7u8 {
        let took = b
            .day_answers(day)
            .any(|r| r.answer(qid::MEDICATION).and_then(|v| v.flag()) == Some(true));
        if took {
            let size = 12.0;
            let icon = Shape::Icon {
                symbol: icons::CHECK.into(),
                x: b.grid.center(day) - size / 2.0,
                y: b.top + 1.0,
                size,
                fill: theme.text.clone(),
            };
            b.push(day, None, 0, Role::Medication, icon);
        }
    }

    let tile_w = theme.geometry.tile_width;
    let glyph_y = rows_top + (b.bottom - rows_top) / 2.0;
    for slot in SlotIndex::all() {
        let (day, window) = (slot.day, slot.window);
        let chosen = match b.view(day, window) {
            View::Pending => continue,
            View::Missed => None,
            View::Answered(r) => r.answer(qid::SYMPTOM_TYPES).and_then(|v| v.categories()),
        };
        let Some(chosen) = chosen else {
            b.missing(day, Some(window), 0, glyph_y);
            continue;
        };
        let cx = b.grid.sub_center(day, window);
        for (row, name) in SYMPTOM_ROWS.iter().enumerate() {
            let row = row as u8;
            let has = chosen.iter().any(|c| c == name);
            let (role, fill) = if has {
                (Role::Presence { row }, present.clone())
            } else {
                (Role::Absence { row }, theme.absence_grey.clone())
            };
            let tile = Shape::Rect {
                x: cx - tile_w / 2.0,
                y: rows_top + f64::from(row) * row_height + 1.0,
                width: tile_w,
                height: row_height - 2.0,
                fill,
                stroke: None,
            };
            b.push(day, Some(window), 0, role, tile);
        }
    }
}

fn emotions(b: &mut Builder<'_>) {
    let theme = b.theme;
    let panel_height = (b.bottom - b.top) / 4.0;
    for (i, name) in EMOTION_NAMES.iter().enumerate() {
        let color = theme.emotion_color(i);
        b.legend_fill(name, color.clone());
        let top = b.top + i as f64 * panel_height + 4.0;
        let bottom = b.top + (i + 1) as f64 * panel_height;
        let x = b.grid.columns[0].left - 4.0;
        b.furniture.push(Shape::Text {
            x,
            y: (top + bottom) / 2.0 + theme.label_size * 0.35,
            text: (*name).into(),
            size: theme.label_size * 0.9,
            fill: color.clone(),
            anchor: Anchor::End,
        });
        b.bar_series(qid::EMOTIONS[i], i as u8, top, bottom, &color);
    }
}

fn worry_target(b: &mut Builder<'_>) {
    let theme = b.theme;
    let color = theme.facet_color(crate::ema::Facet::Worries);
    let icon_size = 26.0;
    let glyph_y = (b.top + b.bottom) / 2.0;
    for day in 0..7u8 {
        let r = match b.view(day, SurveyWindow::Morning) {
            View::Pending => continue,
            View::Missed => {
                b.missing(day, None, 0, glyph_y);
                continue;
            }
            View::Answered(r) => r,
        };
        let target = r.answer(qid::WORRY_TARGET).and_then(|v| v.categories()).and_then(|c| c.first());
        let Some(target) = target else {
            b.missing(day, None, 0, glyph_y);
            continue;
        };
        let cx = b.grid.center(day);
        let icon = Shape::Icon {
            symbol: icons::worry_target(target),
            x: cx - icon_size / 2.0,
            y: b.top + 16.0,
            size: icon_size,
            fill: color.clone(),
        };
        b.push(day, None, 0, Role::Icon { label: target.clone() }, icon);
        let label = Shape::Text {
            x: cx,
            y: b.top + 16.0 + icon_size + 14.0,
            text: target.clone(),
            size: theme.label_size,
            fill: theme.text.clone(),
            anchor: Anchor::Middle,
        };
        b.push(day, None, 0, Role::Label, label);
        if let Some(note) = r.answer(qid::WORRY_NOTE).and_then(|v| v.text()) {
            let mut y = b.top + 16.0 + icon_size + 30.0;
            for line in caption_lines(note) {
                let caption = Shape::Text {
                    x: cx,
                    y,
                    text: line,
                    size: theme.label_size * 0.8,
                    fill: theme.text.clone(),
                    anchor: Anchor::Middle,
                };
                b.push(day, None, 0, Role::Caption, caption);
                y += theme.label_size;
            }
        }
    }
}

fn worry_levels(b: &mut Builder<'_>) {
    let theme = b.theme;
    let hue = theme.hues.blue;
    b.legend_fill("worried (top)", theme.ramp(hue, 4));
    b.legend_fill("certain (bottom)", theme.ramp(hue, 2));
    b.legend_icon("avoided", icons::AVOID, theme.text.clone());
    b.legend_icon("happened", icons::CHECK, theme.text.clone());

    let deco_row = 26.0;
    let tiles_top = b.top + deco_row;
    let tile_h = (b.bottom - tiles_top - 6.0) / 2.0;
    let tile_w = 36.0;
    let x = b.grid.columns[0].left - 4.0;
    b.text(x, tiles_top + tile_h / 2.0 + theme.label_size * 0.35, "worried", Anchor::End);
    b.text(x, tiles_top + 6.0 + tile_h * 1.5 + theme.label_size * 0.35, "certain", Anchor::End);

    for day in 0..7u8 {
        let cx = b.grid.center(day);
        let avoided = b.later_answers(day).any(|r| r.answer(qid::WORRY_AVOIDED).and_then(|v| v.flag()) == Some(true));
        let happened = b.later_answers(day).any(|r| r.answer(qid::WORRY_HAPPENED).and_then(|v| v.flag()) == Some(true));
        let size = 14.0;
        if avoided {
            let icon = Shape::Icon { symbol: icons::AVOID.into(), x: cx - size - 1.0, y: b.top + 6.0, size, fill: theme.text.clone() };
            b.push(day, None, 0, Role::Avoided, icon);
        }
        if happened {
            let icon = Shape::Icon { symbol: icons::CHECK.into(), x: cx + 1.0, y: b.top + 6.0, size, fill: theme.text.clone() };
            b.push(day, None, 0, Role::Happened, icon);
        }

        let glyph_y = tiles_top + tile_h + 3.0;
        let r = match b.view(day, SurveyWindow::Morning) {
            View::Pending => continue,
            View::Missed => {
                b.missing(day, None, 0, glyph_y);
                continue;
            }
            View::Answered(r) => r,
        };
        let values = [qid::WORRY_LEVEL, qid::WORRY_CERTAINTY].map(|q| r.answer(q).and_then(|v| v.magnitude()));
        if values.iter().all(Option::is_none) {
            b.missing(day, None, 0, glyph_y);
            continue;
        }
        for (row, value) in values.into_iter().enumerate() {
            let Some(value) = value else { continue };
            let step = magnitude_step(value);
            let (fill, stroke) = if step == 0 { (WHITE.into(), Some(theme.ramp(hue, 2))) } else { (theme.ramp(hue, step), None) };
            let tile = Shape::Rect {
                x: cx - tile_w / 2.0,
                y: tiles_top + row as f64 * (tile_h + 6.0),
                width: tile_w,
                height: tile_h,
                fill,
                stroke,
            };
            b.push(day, None, 0, Role::Tile { row: row as u8, value }, tile);
        }
    }
}

fn expect_vs_reality(b: &mut Builder<'_>) {
    let theme = b.theme;
    let hue = theme.hues.blue;
    let expected = theme.ramp(hue, 4);
    let actual = theme.ramp(hue, 3);
    b.legend_fill("expected (morning)", expected.clone());
    b.legend_fill("actual", actual.clone());
    let top = b.top + 6.0;
    let bottom = b.bottom;
    let scale = (bottom - top) / 10.0;
    b.value_scale = Some(scale);
    b.magnitude_ticks(top, bottom);
    let width = theme.geometry.bar_width;
    for slot in SlotIndex::all() {
        let (day, window) = (slot.day, slot.window);
        let question = if window == SurveyWindow::Morning { qid::WORRY_EXPECTED } else { qid::WORRY_ACTUAL };
        let value = match b.view(day, window) {
            View::Pending => continue,
            View::Missed => None,
            View::Answered(r) => r.answer(question).and_then(|v| v.magnitude()),
        };
        let Some(value) = value else {
            b.missing(day, Some(window), 0, (top + bottom) / 2.0);
            continue;
        };
        let cx = b.grid.sub_center(day, window);
        let h = f64::from(value) * scale;
        if window == SurveyWindow::Morning {
            let dot = Shape::Circle { cx, cy: bottom - h, r: 5.0, fill: expected.clone(), stroke: None };
            b.push(day, Some(window), 0, Role::Expectation { value }, dot);
        } else {
            let bar = Shape::Rect { x: cx - width / 2.0, y: bottom - h, width, height: h, fill: actual.clone(), stroke: None };
            b.push(day, Some(window), 0, Role::Bar { value: value as i8 }, bar);
        }
    }
    b.baseline(bottom);
}

fn school(b: &mut Builder<'_>) {
    let theme = b.theme;
    let color = theme.facet_color(crate::ema::Facet::School);
    b.legend_icon("at school", icons::SCHOOL_ATTENDED, color.clone());
    let icon_size = 28.0;
    let glyph_y = (b.top + b.bottom) / 2.0;
    for day in 0..7u8 {
        let r = match b.view(day, SurveyWindow::Afternoon) {
            View::Pending => continue,
            View::Missed => {
                b.missing(day, None, 0, glyph_y);
                continue;
            }
            View::Answered(r) => r,
        };
        let attended = r.answer(qid::SCHOOL_ATTENDED).and_then(|v| v.flag());
        let reason = r.answer(qid::SCHOOL_REASON).and_then(|v| v.categories()).and_then(|c| c.first());
        let (symbol, label) = match (attended, reason) {
            (None, None) => {
                b.missing(day, None, 0, glyph_y);
                continue;
            }
            (Some(true), _) => (String::from(icons::SCHOOL_ATTENDED), String::from("school")),
            (_, Some(reason)) => (icons::school_reason(reason), String::from(school_label(reason))),
            (Some(false), None) => (String::from(icons::SCHOOL_ABSENT), String::from("missed")),
        };
        let cx = b.grid.center(day);
        let icon = Shape::Icon { symbol, x: cx - icon_size / 2.0, y: b.top + 24.0, size: icon_size, fill: color.clone() };
        b.push(day, None, 0, Role::Icon { label: label.clone() }, icon);
        let text = Shape::Text {
            x: cx,
            y: b.top + 24.0 + icon_size + 16.0,
            text: label,
            size: theme.label_size,
            fill: theme.text.clone(),
            anchor: Anchor::Middle,
        };
        b.push(day, None, 0, Role::Label, text);
    }
}

fn peer_quality(b: &mut Builder<'_>) {
    let theme = b.theme;
    let fill = theme.facet_color(crate::ema::Facet::Peers);
    b.legend_fill("getting along", fill.clone());
    b.legend_fill("no time with friends", theme.no_interaction_grey.clone());
    b.legend_fill("time with friends", theme.interaction_grey.clone());

    let row_h = 14.0;
    let row_top = b.bottom - row_h - 2.0;
    let area_top = b.top + 4.0;
    let area_bottom = row_top - 6.0;
    let zero = (area_top + area_bottom) / 2.0;
    let scale = (zero - area_top) / 2.0;
    b.value_scale = Some(scale);
    let x = b.grid.columns[0].left - 4.0;
    b.text(x, area_top + theme.label_size * 0.7, "better", Anchor::End);
    b.text(x, area_bottom, "worse", Anchor::End);
    b.baseline(zero);
    let width = theme.geometry.bar_width;
    let tile_w = theme.geometry.tile_width;

    for slot in SlotIndex::all() {
        let (day, window) = (slot.day, slot.window);
        let r = match b.view(day, window) {
            View::Pending => continue,
            View::Missed => {
                b.missing(day, Some(window), 0, zero);
                continue;
            }
            View::Answered(r) => r,
        };
        let cx = b.grid.sub_center(day, window);
        let interacted = r.answer(qid::PEER_INTERACTED).and_then(|v| v.flag());
        if let Some(occurred) = interacted {
            let fill = if occurred { theme.interaction_grey.clone() } else { theme.no_interaction_grey.clone() };
            let tile = Shape::Rect { x: cx - tile_w / 2.0, y: row_top, width: tile_w, height: row_h, fill, stroke: None };
            b.push(day, Some(window), 0, Role::Interaction { occurred }, tile);
        }
        let value = r
            .answer(qid::PEER_QUALITY)
            .and_then(|v| v.level())
            .and_then(|level| likert_to_diverging(level + 1).ok());
        match value {
            Some(v) => {
                let h = f64::from(v.unsigned_abs()) * scale;
                let y = if v > 0 { zero - h } else { zero };
                let bar = Shape::Rect { x: cx - width / 2.0, y, width, height: h, fill: fill.clone(), stroke: None };
                b.push(day, Some(window), 0, Role::Bar { value: v }, bar);
            }
            None if interacted == Some(false) => {}
            None => b.missing(day, Some(window), 0, zero),
        }
    }
}
